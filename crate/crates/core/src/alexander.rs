//! Presentation matrices for the Alexander invariant of `G_Γ` over the Laurent
//! ring `Z[t_v^{±1}]`, and for the infinitesimal Alexander invariant over `Z[x_v]`.
//!
//! Rows are vertex triples that are not cliques, columns are non-edges.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::Rational;

/// A pair `e` of a triple, its opposite vertex `v_e`, and the sign of `(v_e, e)`.
pub type SignedPair = ((usize, usize), usize, i64);

/// The three signed pairs of a sorted triple `a < b < c`.
pub fn triple_signs(t: [usize; 3]) -> Result<[SignedPair; 3]> {
    let [a, b, c] = t;
    if !(a < b && b < c) {
        return Err(Error::UnsortedTriple);
    }
    Ok([((b, c), a, 1), ((a, c), b, -1), ((a, b), c, 1)])
}

/// Sparse Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exponents: Vec<i64>, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponents, coeff);
        p
    }

    /// `c (x_v - 1)` in `n` variables.
    pub fn shifted_variable(n: usize, v: usize, c: i64) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        let mut p = LaurentPoly::monomial(e, c);
        p.add_term(vec![0; n], -c);
        p
    }

    /// `c x_v` in `n` variables.
    pub fn variable(n: usize, v: usize, c: i64) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        LaurentPoly::monomial(e, c)
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, coeff: i64) {
        let slot = self.terms.entry(exponents).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Exact evaluation; every variable with a negative exponent must be nonzero.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, &c) in &self.terms {
            let mut m = Rational::from_integer(c.into());
            for (x, &k) in point.iter().zip(e) {
                m *= num_traits::pow::pow(if k < 0 { x.recip() } else { x.clone() }, k.unsigned_abs() as usize);
            }
            acc += m;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<(&Vec<i64>, &i64)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<i64>().cmp(&a.0.iter().sum::<i64>()).then(b.0.cmp(a.0)));
        for (i, (e, &c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, k) })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Laurent,
    Polynomial,
}

/// Sparse presentation matrix over `Z[t^{±1}]` or `Z[x]` in one variable per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    ring: Ring,
    n_vars: usize,
    rows: Vec<[usize; 3]>,
    cols: Vec<(usize, usize)>,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PresentationMatrix {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_triples(&self) -> &[[usize; 3]] {
        &self.rows
    }

    pub fn col_pairs(&self) -> &[(usize, usize)] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&LaurentPoly> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols.len());
        for (&(r, c), p) in &self.entries {
            m[(r, c)] = p.evaluate(point);
        }
        m
    }

    /// One `row col polynomial` line per nonzero entry, 0-based indices,
    /// variables `x1..xn` in vertex order.
    pub fn to_sparse_text(&self) -> String {
        let mut out = String::new();
        for (&(r, c), p) in &self.entries {
            out.push_str(&format!("{r} {c} {p}\n"));
        }
        out
    }
}

fn build(g: &Graph, ring: Ring) -> PresentationMatrix {
    let n = g.n();
    let cols = g.non_edges();
    let col_of: BTreeMap<(usize, usize), usize> = cols.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut rows = Vec::new();
    let mut entries = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    continue;
                }
                let r = rows.len();
                rows.push([a, b, c]);
                for (e, v, sign) in triple_signs([a, b, c]).expect("sorted") {
                    if let Some(&col) = col_of.get(&e) {
                        let p = match ring {
                            Ring::Laurent => LaurentPoly::shifted_variable(n, v, sign),
                            Ring::Polynomial => LaurentPoly::variable(n, v, sign),
                        };
                        entries.insert((r, col), p);
                    }
                }
            }
        }
    }
    PresentationMatrix {
        ring,
        n_vars: n,
        rows,
        cols,
        entries,
    }
}

/// Entries `ε_e (t_{v_e} - 1)`.
pub fn alexander_presentation(g: &Graph) -> PresentationMatrix {
    build(g, Ring::Laurent)
}

/// Entries `ε_e x_{v_e}`.
pub fn infinitesimal_presentation(g: &Graph) -> PresentationMatrix {
    build(g, Ring::Polynomial)
}

/// Whether the module presented by `m` has a nonzero fiber at `point`, i.e. the
/// evaluated matrix has rank below its column count.
///
/// Laurent points must have nonzero coordinates and differ from the identity.
pub fn evaluate_support(m: &PresentationMatrix, point: &[Rational]) -> Result<bool> {
    if point.len() != m.n_vars {
        return Err(Error::DimensionMismatch {
            expected: m.n_vars,
            got: point.len(),
        });
    }
    if m.ring == Ring::Laurent {
        if point.iter().any(Zero::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        if point.iter().all(One::is_one) {
            return Err(Error::TrivialCharacter);
        }
    }
    Ok(m.evaluate(point).rank() < m.ncols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn signs_of_triples() {
        let s = triple_signs([0, 1, 2]).unwrap();
        assert_eq!(s[0], ((1, 2), 0, 1));
        assert_eq!(s[1], ((0, 2), 1, -1));
        assert_eq!(s[2], ((0, 1), 2, 1));
        assert_eq!(triple_signs([1, 0, 2]), Err(Error::UnsortedTriple));
    }

    #[test]
    fn shapes() {
        let p3 = alexander_presentation(&Graph::path(3));
        assert_eq!((p3.nrows(), p3.ncols()), (1, 1));
        assert_eq!(p3.entry(0, 0).unwrap().to_string(), "-x2 + 1");
        assert_eq!(infinitesimal_presentation(&Graph::path(3)).to_sparse_text(), "0 0 -x2\n");
        let k4 = alexander_presentation(&Graph::complete(4));
        assert_eq!((k4.nrows(), k4.ncols()), (0, 0));
        let c4 = infinitesimal_presentation(&Graph::cycle(4));
        assert_eq!((c4.nrows(), c4.ncols()), (4, 2));
        for (_, _, p) in c4.entries() {
            assert_eq!(p.terms().count(), 1);
        }
    }

    #[test]
    fn support_examples() {
        let p3 = Graph::path(3);
        let lau = alexander_presentation(&p3);
        assert!(evaluate_support(&lau, &pt(&[2, 1, 3])).unwrap());
        assert!(!evaluate_support(&lau, &pt(&[2, 2, 3])).unwrap());
        assert_eq!(evaluate_support(&lau, &pt(&[0, 2, 3])), Err(Error::ZeroCoordinate));
        assert_eq!(evaluate_support(&lau, &pt(&[1, 1, 1])), Err(Error::TrivialCharacter));
        let lin = infinitesimal_presentation(&p3);
        assert!(evaluate_support(&lin, &pt(&[1, 0, 5])).unwrap());
        assert!(!evaluate_support(&lin, &pt(&[1, 2, 5])).unwrap());
    }

    #[test]
    fn laurent_evaluation_with_negative_exponents() {
        let p = LaurentPoly::monomial(vec![-2, 1], 3);
        assert_eq!(p.evaluate(&pt(&[2, 5])), crate::scalar::ratio(15, 4));
        assert_eq!(p.to_string(), "3*x1^-2*x2");
    }
}
