//! Dense exact matrices: row reduction over a field, Smith invariant factors over
//! the integers, and a word-size rank routine modulo a runtime prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T> {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone + Zero + std::ops::Add<Output = T> + std::ops::Mul<Output = T>> Matrix<T> {
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for c in col..m.cols {
                let v = m[(row, c)].clone() * inv.clone();
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - factor.clone() * m[(row, c)].clone();
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        // forward elimination only; cheaper than a full rref
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pivot.clone();
                for c in col..m.cols {
                    let v = m[(r, c)].clone() - factor.clone() * m[(rank, c)].clone();
                    m[(r, c)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row of the result.
    pub fn nullspace(&self) -> Matrix<T> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(i, f)].clone();
            }
            basis.push(v);
        }
        Matrix::from_rows(self.cols, basis)
    }
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &Matrix<i64>, p: u64) -> usize {
    let modulus = p as u128;
    let mut a: Vec<Vec<u64>> = (0..m.nrows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|&v| v.rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect();
    let inv = |x: u64| -> u64 {
        let mut base = x as u128;
        let mut exp = p - 2;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc as u64
    };
    let mut rank = 0;
    for col in 0..m.ncols() {
        if rank == a.len() {
            break;
        }
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let pinv = inv(a[rank][col]) as u128;
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let factor = row[col] as u128 * pinv % modulus;
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let sub = factor * p as u128 % modulus;
                *x = ((*x as u128 + modulus - sub) % modulus) as u64;
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors (Smith normal form diagonal) of an integer matrix,
/// each positive and dividing the next.
pub fn invariant_factors(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[(r, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| a[(r, c)].abs() < a[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..rows {
            if a[(r, t)].is_zero() {
                continue;
            }
            let q = a[(r, t)].div_floor(&a[(t, t)]);
            for c in t..cols {
                let v = &a[(r, c)] - &q * &a[(t, c)];
                a[(r, c)] = v;
            }
            if !a[(r, t)].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            if a[(t, c)].is_zero() {
                continue;
            }
            let q = a[(t, c)].div_floor(&a[(t, t)]);
            for r in t..rows {
                let v = &a[(r, c)] - &q * &a[(r, t)];
                a[(r, c)] = v;
            }
            if !a[(t, c)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let pivot = a[(t, t)].clone();
        let mut offender = None;
        'search: for r in t + 1..rows {
            for c in t + 1..cols {
                if !(&a[(r, c)] % &pivot).is_zero() {
                    offender = Some(r);
                    break 'search;
                }
            }
        }
        if let Some(r) = offender {
            for c in t..cols {
                let v = &a[(t, c)] + &a[(r, c)];
                a[(t, c)] = v;
            }
            continue;
        }
        out.push(pivot.abs());
        t += 1;
    }
    out
}

/// Integer matrix helper for the exact kernels above.
pub fn to_bigint(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.map(|&v| BigInt::from(v))
}

pub fn is_unit(v: &BigInt) -> bool {
    v.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Fp};
    use num_rational::BigRational;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.nrows(), 1);
        assert!(m.mul(&ns.transpose()).is_zero());
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<BigRational> = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.nullspace().nrows(), 3);
        let m: Matrix<BigRational> = Matrix::zeros(4, 0);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn prime_field_rank_agrees_with_word_routine() {
        let ints = Matrix::from_rows(3, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        // determinant 2: full rank over Q and F_3, rank 2 over F_2
        assert_eq!(rank_mod_p(&ints, 2), 2);
        assert_eq!(rank_mod_p(&ints, 3), 3);
        assert_eq!(ints.map(|&v| Fp::<2>::new(v)).rank(), 2);
        assert_eq!(ints.map(|&v| Fp::<3>::new(v)).rank(), 3);
        assert_eq!(ints.map(|&v| rational(v)).rank(), 3);
    }

    #[test]
    fn smith_factors() {
        let m = to_bigint(&Matrix::from_rows(2, vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(invariant_factors(&m), vec![BigInt::from(2), BigInt::from(4)]);
        let m = to_bigint(&Matrix::from_rows(3, vec![vec![2, 0, 0], vec![0, 3, 0]]));
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
        let m: Matrix<BigInt> = Matrix::zeros(2, 2);
        assert!(invariant_factors(&m).is_empty());
    }
}
