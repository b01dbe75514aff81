//! Flag complexes, their signed chain complexes and homology over exact fields.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{invariant_factors, rank_mod_p, to_bigint, Matrix};
use crate::scalar::{rational, FieldKind};

/// The flag complex `Δ_Γ`: `simplices[d]` lists the `(d + 1)`-cliques as sorted
/// vertex tuples in lexicographic order.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    graph: Graph,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl FlagComplex {
    pub fn new(g: &Graph) -> Self {
        let mut cliques = g.cliques();
        cliques.remove(0);
        FlagComplex {
            graph: g.clone(),
            simplices: cliques,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Top dimension, or `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |s| s.as_slice())
    }

    /// `f`-vector `(f_0, f_1, …)` with `f_d` the number of `d`-simplices.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Augmented chain complex with integer boundary matrices.
    pub fn chain_complex(&self) -> ChainComplex {
        let mut boundaries = Vec::with_capacity(self.simplices.len());
        // d_0: C_0 -> C_{-1} = Z, the augmentation
        if !self.simplices.is_empty() {
            boundaries.push(Matrix::from_fn(1, self.simplices(0).len(), |_, _| 1i64));
        }
        for d in 1..self.simplices.len() {
            let faces: HashMap<&[usize], usize> = self.simplices[d - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let mut m = Matrix::zeros(self.simplices[d - 1].len(), self.simplices[d].len());
            for (col, s) in self.simplices[d].iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let row = faces[face.as_slice()];
                    m[(row, col)] = if i % 2 == 0 { 1 } else { -1 };
                }
            }
            boundaries.push(m);
        }
        ChainComplex { boundaries }
    }
}

/// Augmented simplicial chain complex. `boundary(d)` maps `C_d -> C_{d-1}`, with
/// `C_{-1}` one-dimensional; omitting the `i`-th vertex (0-based) carries sign `(-1)^i`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    boundaries: Vec<Matrix<i64>>,
}

impl ChainComplex {
    pub fn top_degree(&self) -> isize {
        self.boundaries.len() as isize - 1
    }

    pub fn boundary(&self, d: usize) -> &Matrix<i64> {
        &self.boundaries[d]
    }

    pub fn boundaries(&self) -> &[Matrix<i64>] {
        &self.boundaries
    }

    /// Dimension of `C_d` for `d >= -1`.
    pub fn chain_dim(&self, d: isize) -> usize {
        match d {
            -1 => 1,
            d if d >= 0 && (d as usize) < self.boundaries.len() => self.boundaries[d as usize].ncols(),
            _ => 0,
        }
    }

    /// Checks `d_{k-1} ∘ d_k = 0` in every degree over the integers.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    fn boundary_rank(&self, d: isize, field: FieldKind) -> usize {
        if d < 0 || d as usize >= self.boundaries.len() {
            return 0;
        }
        rank_over(&self.boundaries[d as usize], field)
    }

    /// Reduced homology table for degrees `-1..=top`.
    pub fn homology(&self, field: FieldKind) -> Vec<HomologyDegree> {
        let top = self.top_degree();
        let ranks: Vec<usize> = (0..=top + 1).map(|d| self.boundary_rank(d, field)).collect();
        (-1..=top)
            .map(|d| {
                let chains = self.chain_dim(d);
                let out_rank = if d >= 0 { ranks[d as usize] } else { 0 };
                let in_rank = ranks[(d + 1) as usize];
                let cycles = chains - out_rank;
                HomologyDegree {
                    degree: d,
                    chains,
                    cycles,
                    boundaries: in_rank,
                    betti: cycles - in_rank,
                }
            })
            .collect()
    }
}

/// Rank of an integer matrix over `Q` or `F_p`.
pub fn rank_over(m: &Matrix<i64>, field: FieldKind) -> usize {
    match field {
        FieldKind::Rational => m.map(|&v| rational(v)).rank(),
        FieldKind::Prime(p) => rank_mod_p(m, p),
    }
}

/// Dimensions of `C_d`, `Z_d`, `B_d` and reduced `H̃_d` in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyDegree {
    pub degree: isize,
    pub chains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub betti: usize,
}

/// Reduced homology of `Δ_Γ` over the given field, degrees `-1..=dim`.
pub fn homology_ranks(k: &FlagComplex, field: FieldKind) -> Vec<HomologyDegree> {
    k.chain_complex().homology(field)
}

/// `H_r(N_Γ; k) ≅ (kZ)^{free_rank} ⊕ (εk)^{trivial_rank}` as a module over the
/// group ring of `Z = G_Γ / N_Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BbHomologyModule {
    pub degree: usize,
    pub free_rank: usize,
    pub trivial_rank: usize,
}

impl BbHomologyModule {
    /// `H_r(N_Γ; k)` is finite dimensional iff there is no free summand.
    pub fn is_finitely_generated(&self) -> bool {
        self.free_rank == 0
    }
}

/// Module structure of `H_r(N_Γ; k)`: free part `H̃_{r-1}(Δ_Γ)`, trivial part
/// `B_{r-1}(Δ_Γ)`.
pub fn bb_homology_module(g: &Graph, field: FieldKind, r: usize) -> Result<BbHomologyModule> {
    assert!(r >= 1, "module structure is defined for r >= 1");
    if !g.is_connected() {
        return Err(Error::Disconnected("N_Γ is finitely generated only for connected Γ"));
    }
    let table = homology_ranks(&FlagComplex::new(g), field);
    let row = table.iter().find(|h| h.degree == r as isize - 1);
    Ok(BbHomologyModule {
        degree: r,
        free_rank: row.map_or(0, |h| h.betti),
        trivial_rank: row.map_or(0, |h| h.boundaries),
    })
}

/// Every `H_r(N_Γ; k)` for `1 <= r <= dim Δ_Γ + 1`.
pub fn bb_homology_modules(g: &Graph, field: FieldKind) -> Result<Vec<BbHomologyModule>> {
    if !g.is_connected() {
        return Err(Error::Disconnected("N_Γ is finitely generated only for connected Γ"));
    }
    let table = homology_ranks(&FlagComplex::new(g), field);
    Ok(table
        .iter()
        .filter(|h| h.degree >= 0)
        .map(|h| BbHomologyModule {
            degree: h.degree as usize + 1,
            free_rank: h.betti,
            trivial_rank: h.boundaries,
        })
        .collect())
}

/// Finitely generated abelian group `Z^rank ⊕ ⨁ Z/t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel of an integer relation matrix whose rows are relations among
    /// `ncols` generators.
    pub fn from_relations(relations: &Matrix<BigInt>) -> Self {
        let factors = invariant_factors(relations);
        AbelianGroup {
            rank: relations.ncols() - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_1(Δ_Γ; Z)` from the Smith forms of `d_1` and `d_2`.
pub fn integral_h1(k: &FlagComplex) -> AbelianGroup {
    let cc = k.chain_complex();
    let edges = k.simplices(1).len();
    if edges == 0 {
        return AbelianGroup { rank: 0, torsion: Vec::new() };
    }
    let d1 = to_bigint(cc.boundary(1));
    let rank_d1 = invariant_factors(&d1).len();
    let factors = if cc.boundaries().len() > 2 {
        invariant_factors(&to_bigint(cc.boundary(2)))
    } else {
        Vec::new()
    };
    AbelianGroup {
        rank: edges - rank_d1 - factors.len(),
        torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

/// Three-valued answer to "is `Δ_Γ` simply connected", with the test that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplyConnected {
    pub status: Status,
    pub reason: String,
}

impl SimplyConnected {
    fn new(status: Status, reason: impl Into<String>) -> Self {
        SimplyConnected {
            status,
            reason: reason.into(),
        }
    }

    /// Enforces the `π_1(Δ_Γ) = 0` hypothesis. `Unknown` passes only with an override.
    pub fn require(&self, assume_simply_connected: bool) -> Result<()> {
        match self.status {
            Status::Yes => Ok(()),
            Status::Unknown if assume_simply_connected => Ok(()),
            Status::Unknown => Err(Error::SimpleConnectivityUnknown),
            Status::No => Err(Error::NotSimplyConnected),
        }
    }
}

/// Decides simple connectivity of `Δ_Γ` where a cheap sufficient test applies.
pub fn simply_connected_status(k: &FlagComplex) -> SimplyConnected {
    let g = k.graph();
    if g.n() == 0 {
        return SimplyConnected::new(Status::No, "empty complex");
    }
    if !g.is_connected() {
        return SimplyConnected::new(Status::No, "complex is disconnected");
    }
    let h1 = integral_h1(k);
    if !h1.is_trivial() {
        return SimplyConnected::new(Status::No, format!("H_1 = {h1} is nonzero"));
    }
    if g.cone_point().is_some() {
        return SimplyConnected::new(Status::Yes, "graph is a cone");
    }
    if collapses_to_point(k, usize::MAX) {
        return SimplyConnected::new(Status::Yes, "complex collapses to a point");
    }
    if collapses_to_point(k, 2) {
        return SimplyConnected::new(Status::Yes, "2-skeleton collapses to a point");
    }
    if edge_path_group_trivial(k) {
        return SimplyConnected::new(Status::Yes, "edge-path group relations kill every generator");
    }
    if crate::triangulation::is_disk_triangulation(g) {
        return SimplyConnected::new(Status::Yes, "graph is a validated disk triangulation");
    }
    SimplyConnected::new(Status::Unknown, "no sufficient test applied")
}

fn faces_of(s: u64) -> impl Iterator<Item = u64> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        Some(s & !bit)
    })
}

/// Greedy elementary collapses of the `max_dim`-skeleton; true if a single vertex remains.
fn collapses_to_point(k: &FlagComplex, max_dim: usize) -> bool {
    const LIMIT: usize = 200_000;
    let mut alive: HashSet<u64> = HashSet::new();
    for (d, level) in k.simplices.iter().enumerate() {
        if d > max_dim {
            break;
        }
        for s in level {
            alive.insert(s.iter().fold(0u64, |m, &v| m | 1 << v));
            if alive.len() > LIMIT {
                return false;
            }
        }
    }
    let mut cofaces: HashMap<u64, usize> = alive.iter().map(|&s| (s, 0)).collect();
    for &s in &alive {
        if s.count_ones() > 1 {
            for f in faces_of(s) {
                *cofaces.get_mut(&f).expect("closed under faces") += 1;
            }
        }
    }
    let mut queue: Vec<u64> = cofaces.iter().filter(|(_, &c)| c == 1).map(|(&s, _)| s).collect();
    queue.sort_unstable();
    while let Some(sigma) = queue.pop() {
        if !alive.contains(&sigma) || cofaces[&sigma] != 1 {
            continue;
        }
        let Some(tau) = faces_free_partner(sigma, &alive, k.graph().n()) else {
            continue;
        };
        alive.remove(&sigma);
        alive.remove(&tau);
        for f in faces_of(tau).chain(faces_of(sigma)) {
            if f == 0 || f == sigma {
                continue;
            }
            if let Some(c) = cofaces.get_mut(&f) {
                *c -= 1;
                if *c == 1 {
                    queue.push(f);
                }
            }
        }
        cofaces.insert(sigma, 0);
    }
    alive.len() == 1
}

fn faces_free_partner(sigma: u64, alive: &HashSet<u64>, n: usize) -> Option<u64> {
    (0..n)
        .filter(|v| sigma & (1 << v) == 0)
        .map(|v| sigma | 1 << v)
        .find(|t| alive.contains(t))
}

/// Sufficient test for a trivial edge-path group: tree edges are trivial, and
/// each triangle relation `[uv][vw] = [uw]` either kills a generator or identifies two.
fn edge_path_group_trivial(k: &FlagComplex) -> bool {
    let g = k.graph();
    let edges = g.edges();
    let mut uf = SignedUnionFind::new(edges.len());
    // BFS tree edges are trivial
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        for w in g.neighbors(v).iter() {
            if !seen[w] {
                seen[w] = true;
                frontier.push(w);
                uf.kill(g.edge_index(v, w).expect("edge"));
            }
        }
    }
    let triangles: Vec<[usize; 3]> = k
        .simplices(2)
        .iter()
        .map(|t| {
            [
                g.edge_index(t[0], t[1]).expect("edge"),
                g.edge_index(t[1], t[2]).expect("edge"),
                g.edge_index(t[0], t[2]).expect("edge"),
            ]
        })
        .collect();
    loop {
        let mut progress = false;
        for &[e, f, h] in &triangles {
            // e f h^{-1} = 1
            let letters: Vec<(usize, i8)> = [(e, 1i8), (f, 1), (h, -1)]
                .into_iter()
                .filter_map(|(x, s)| uf.find(x).map(|(root, sign)| (root, s * sign)))
                .collect();
            match letters.as_slice() {
                [(a, _)] => {
                    uf.kill(*a);
                    progress = true;
                }
                [(a, sa), (b, sb)] if a != b => {
                    // a^{sa} b^{sb} = 1, so a = b^{-sb/sa}
                    uf.union(*a, *b, -sa * sb);
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    (0..edges.len()).all(|e| uf.find(e).is_none())
}

/// Union-find over group elements where each element is trivial or equal to
/// `root^{±1}`.
struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i8>,
    dead: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind {
            parent: (0..n).collect(),
            sign: vec![1; n],
            dead: vec![false; n],
        }
    }

    /// `None` if trivial, else `(root, s)` with `x = root^s`.
    fn find(&mut self, x: usize) -> Option<(usize, i8)> {
        let mut s = 1i8;
        let mut r = x;
        while self.parent[r] != r {
            s *= self.sign[r];
            r = self.parent[r];
        }
        // path compression
        let mut y = x;
        let mut sy = s;
        while self.parent[y] != y {
            let next = self.parent[y];
            let step = self.sign[y];
            self.parent[y] = r;
            self.sign[y] = sy;
            sy *= step;
            y = next;
        }
        if self.dead[r] {
            None
        } else {
            Some((r, s))
        }
    }

    fn kill(&mut self, x: usize) {
        if let Some((r, _)) = self.find(x) {
            self.dead[r] = true;
        }
    }

    /// Records `a = b^s` for roots `a != b`.
    fn union(&mut self, a: usize, b: usize, s: i8) {
        self.parent[a] = b;
        self.sign[a] = s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F2;

    fn betti(g: &Graph, field: FieldKind) -> Vec<usize> {
        homology_ranks(&FlagComplex::new(g), field)
            .iter()
            .map(|h| h.betti)
            .collect()
    }

    #[test]
    fn flag_complex_shapes() {
        let k3 = FlagComplex::new(&Graph::complete(3));
        assert_eq!(k3.f_vector(), vec![3, 3, 1]);
        let c4 = FlagComplex::new(&Graph::cycle(4));
        assert_eq!(c4.f_vector(), vec![4, 4]);
        assert_eq!(FlagComplex::new(&Graph::empty(0)).dim(), -1);
    }

    #[test]
    fn boundary_signs() {
        let cc = FlagComplex::new(&Graph::complete(3)).chain_complex();
        // ∂[0,1,2] = [1,2] - [0,2] + [0,1], faces ordered [0,1],[0,2],[1,2]
        let d2 = cc.boundary(2);
        assert_eq!((d2[(0, 0)], d2[(1, 0)], d2[(2, 0)]), (1, -1, 1));
        assert!(cc.is_complex());
    }

    #[test]
    fn reduced_homology_examples() {
        assert_eq!(betti(&Graph::cycle(4), FieldKind::Rational), vec![0, 0, 1]);
        assert_eq!(betti(&Graph::complete(4), FieldKind::Rational), vec![0; 5]);
        let oct = Graph::complete_multipartite(&[2, 2, 2]);
        assert_eq!(betti(&oct, FieldKind::Rational), vec![0, 0, 0, 1]);
        assert_eq!(betti(&oct, FieldKind::Prime(2)), vec![0, 0, 0, 1]);
        assert_eq!(betti(&Graph::empty(3), FieldKind::Rational), vec![0, 2]);
        assert_eq!(betti(&Graph::empty(0), FieldKind::Rational), vec![1]);
    }

    #[test]
    fn bb_modules() {
        let p3 = bb_homology_module(&Graph::path(3), FieldKind::Rational, 1).unwrap();
        assert_eq!((p3.free_rank, p3.trivial_rank), (0, 2));
        let c4 = bb_homology_module(&Graph::cycle(4), FieldKind::Rational, 2).unwrap();
        assert_eq!((c4.free_rank, c4.trivial_rank), (1, 0));
        assert!(!c4.is_finitely_generated());
        assert!(bb_homology_module(&Graph::empty(2), FieldKind::Rational, 1).is_err());
        let beyond = bb_homology_module(&Graph::path(3), FieldKind::Rational, 5).unwrap();
        assert_eq!((beyond.free_rank, beyond.trivial_rank), (0, 0));
    }

    #[test]
    fn integral_first_homology() {
        let c4 = integral_h1(&FlagComplex::new(&Graph::cycle(4)));
        assert_eq!((c4.rank, c4.torsion.len()), (1, 0));
        assert!(integral_h1(&FlagComplex::new(&Graph::complete(4))).is_trivial());
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let k = FlagComplex::new(&two_triangles);
        assert!(integral_h1(&k).is_trivial());
        assert_eq!(simply_connected_status(&k).status, Status::No);
    }

    #[test]
    fn simple_connectivity_gate() {
        let k4 = simply_connected_status(&FlagComplex::new(&Graph::complete(4)));
        assert_eq!(k4.status, Status::Yes);
        let c4 = simply_connected_status(&FlagComplex::new(&Graph::cycle(4)));
        assert_eq!(c4.status, Status::No);
        assert_eq!(c4.require(true), Err(Error::NotSimplyConnected));
        let p5 = simply_connected_status(&FlagComplex::new(&Graph::path(5)));
        assert_eq!(p5.status, Status::Yes);
        let unknown = SimplyConnected::new(Status::Unknown, "");
        assert!(unknown.require(false).is_err());
        assert!(unknown.require(true).is_ok());
    }

    #[test]
    fn octahedron_boundary_is_simply_connected_but_not_collapsible() {
        let oct = FlagComplex::new(&Graph::complete_multipartite(&[2, 2, 2]));
        assert!(!collapses_to_point(&oct, usize::MAX));
        assert!(edge_path_group_trivial(&oct));
        assert_eq!(simply_connected_status(&oct).status, Status::Yes);
    }

    #[test]
    fn generic_rank_agrees_with_word_rank() {
        let cc = FlagComplex::new(&Graph::complete_multipartite(&[2, 2, 2])).chain_complex();
        for d in cc.boundaries() {
            assert_eq!(d.map(|&v| F2::new(v)).rank(), rank_mod_p(d, 2));
            let smith = invariant_factors(&to_bigint(d)).len();
            assert_eq!(rank_over(d, FieldKind::Rational), smith);
        }
    }
}
