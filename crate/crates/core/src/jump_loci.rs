//! First resonance and characteristic varieties of `G_Γ` and `N_Γ`: component
//! lists, membership oracles, and the certificates built from their geometry.
//!
//! Coordinates on `N_Γ` use the last vertex as reference: a class in
//! `H¹(N_Γ, C) = C^V / diagonal` is recorded as `x_v - x_last` for `v != last`,
//! a character of `N_Γ` as `t_v / t_last`.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alexander::{alexander_presentation, evaluate_support, infinitesimal_presentation, PresentationMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::homology::{simply_connected_status, FlagComplex, SimplyConnected};
use crate::linalg::Matrix;
use crate::presentation::{
    default_spanning_tree, fox_h1_dimension, raag_presentation, spanning_tree_reduction, Character,
    GroupPresentation,
};
use crate::scalar::ratio;
use crate::triangulation::recognize_extra_special;
use crate::{GroupKind, Rational};

fn ambient_dim(target: GroupKind, n: usize) -> usize {
    match target {
        GroupKind::Raag => n,
        GroupKind::Bb => n.saturating_sub(1),
    }
}

/// `(x, 0)` or `(t, 1)`: the representative in `C^V` of an `N_Γ` coordinate vector.
fn lift(point: &[Rational], pad: Rational) -> Vec<Rational> {
    let mut v = point.to_vec();
    v.push(pad);
    v
}

fn constant_off(v: &[Rational], w: VertexSet) -> bool {
    let mut off = (0..v.len()).filter(|&i| !w.contains(i)).map(|i| &v[i]);
    match off.next() {
        Some(first) => off.all(|x| x == first),
        None => true,
    }
}

/// Basis of `H'_W = ι*(H_W)` in the reference-vertex coordinates of `C^{n-1}`.
pub fn iota_pushforward_basis(w: VertexSet, n_vertices: usize) -> Result<Matrix<Rational>> {
    if w.len() >= n_vertices {
        return Err(Error::FullVertexSet);
    }
    let last = n_vertices - 1;
    let rows = w
        .iter()
        .map(|v| {
            (0..last)
                .map(|i| {
                    if v == last {
                        -Rational::one()
                    } else if i == v {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(last, rows))
}

/// The linear subspace `H_W` (in `H¹(G_Γ)`) or `H'_W` (in `H¹(N_Γ)`).
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceComponent {
    pub subset: VertexSet,
    pub target: GroupKind,
    pub n_vertices: usize,
    basis: Matrix<Rational>,
}

impl SubspaceComponent {
    pub fn new(subset: VertexSet, target: GroupKind, n_vertices: usize) -> Result<Self> {
        let basis = match target {
            GroupKind::Raag => Matrix::from_rows(
                n_vertices,
                subset
                    .iter()
                    .map(|v| (0..n_vertices).map(|i| if i == v { Rational::one() } else { Rational::zero() }).collect())
                    .collect(),
            ),
            GroupKind::Bb => iota_pushforward_basis(subset, n_vertices)?,
        };
        Ok(SubspaceComponent {
            subset,
            target,
            n_vertices,
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        ambient_dim(self.target, self.n_vertices)
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Basis vectors as rows.
    pub fn basis(&self) -> &Matrix<Rational> {
        &self.basis
    }

    pub fn contains(&self, a: &[Rational]) -> bool {
        match self.target {
            GroupKind::Raag => (0..self.n_vertices).all(|v| self.subset.contains(v) || a[v].is_zero()),
            GroupKind::Bb => constant_off(&lift(a, Rational::zero()), self.subset),
        }
    }
}

/// The subtorus `T_W` or `T'_W`, stored by its parameterization: free
/// coordinates on `W`, `1` elsewhere (then pushed to `N_Γ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusComponent {
    pub subset: VertexSet,
    pub target: GroupKind,
    pub n_vertices: usize,
}

impl TorusComponent {
    pub fn dim(&self) -> usize {
        self.subset.len()
    }

    pub fn contains(&self, t: &[Rational]) -> bool {
        match self.target {
            GroupKind::Raag => (0..self.n_vertices).all(|v| self.subset.contains(v) || t[v].is_one()),
            GroupKind::Bb => constant_off(&lift(t, Rational::one()), self.subset),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResonanceVariety {
    /// All of `H¹`.
    Full { dim: usize },
    Components(Vec<SubspaceComponent>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CharacteristicVariety {
    /// The whole character torus.
    Full { dim: usize },
    Components(Vec<TorusComponent>),
}

impl ResonanceVariety {
    /// Membership of a nonzero point in the claimed union.
    pub fn contains(&self, a: &[Rational]) -> bool {
        match self {
            ResonanceVariety::Full { .. } => true,
            ResonanceVariety::Components(cs) => cs.iter().any(|c| c.contains(a)),
        }
    }
}

impl CharacteristicVariety {
    /// Membership of a nontrivial character in the claimed union.
    pub fn contains(&self, t: &[Rational]) -> bool {
        match self {
            CharacteristicVariety::Full { .. } => true,
            CharacteristicVariety::Components(cs) => cs.iter().any(|c| c.contains(t)),
        }
    }
}

fn gate(g: &Graph, assume_simply_connected: bool) -> Result<SimplyConnected> {
    let status = simply_connected_status(&FlagComplex::new(g));
    status.require(assume_simply_connected)?;
    Ok(status)
}

/// Maximal disconnected subsets, or `None` when one of them misses a single
/// vertex (a cut point), in which case the `N_Γ` variety is everything.
fn bb_subsets(g: &Graph) -> Option<Vec<VertexSet>> {
    let subsets = g.maximal_disconnected_subsets();
    if subsets.iter().any(|w| w.len() + 1 == g.n()) {
        None
    } else {
        Some(subsets)
    }
}

/// Components of `R_1`: one `H_W` per maximal disconnected `W`.
///
/// For `Bb` the flag complex must be simply connected (or the override given).
pub fn resonance_components(g: &Graph, target: GroupKind, assume_simply_connected: bool) -> Result<ResonanceVariety> {
    let n = g.n();
    let subsets = match target {
        GroupKind::Raag => g.maximal_disconnected_subsets(),
        GroupKind::Bb => {
            gate(g, assume_simply_connected)?;
            if n <= 1 {
                return Ok(ResonanceVariety::Components(Vec::new()));
            }
            match bb_subsets(g) {
                Some(s) => s,
                None => return Ok(ResonanceVariety::Full { dim: n - 1 }),
            }
        }
    };
    Ok(ResonanceVariety::Components(
        subsets
            .into_iter()
            .map(|w| SubspaceComponent::new(w, target, n))
            .collect::<Result<_>>()?,
    ))
}

/// Components of `V_1`: one `T_W` per maximal disconnected `W`.
pub fn characteristic_components(
    g: &Graph,
    target: GroupKind,
    assume_simply_connected: bool,
) -> Result<CharacteristicVariety> {
    let n = g.n();
    let subsets = match target {
        GroupKind::Raag => g.maximal_disconnected_subsets(),
        GroupKind::Bb => {
            gate(g, assume_simply_connected)?;
            if n <= 1 {
                return Ok(CharacteristicVariety::Components(Vec::new()));
            }
            match bb_subsets(g) {
                Some(s) => s,
                None => return Ok(CharacteristicVariety::Full { dim: n - 1 }),
            }
        }
    };
    Ok(CharacteristicVariety::Components(
        subsets
            .into_iter()
            .map(|subset| TorusComponent {
                subset,
                target,
                n_vertices: n,
            })
            .collect(),
    ))
}

/// Dimension of the intersection of subspaces sharing one ambient space.
pub fn subspace_intersection_dim(components: &[&SubspaceComponent]) -> Result<usize> {
    let first = components.first().ok_or(Error::AmbientMismatch)?;
    let d = first.ambient_dim();
    if components.iter().any(|c| c.target != first.target || c.n_vertices != first.n_vertices) {
        return Err(Error::AmbientMismatch);
    }
    let mut constraints: Matrix<Rational> = Matrix::zeros(0, d);
    for c in components {
        constraints = constraints.vstack(&c.basis.nullspace());
    }
    Ok(d - constraints.rank())
}

/// `x ↦ (a_u x_w - a_w x_u)` over the edges `{u, w}`: multiplication by `a` from
/// degree one to degree two of the exterior face ring.
fn wedge_matrix(g: &Graph, a: &[Rational]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(g.edge_count(), g.n());
    for (row, &(u, w)) in g.edges().iter().enumerate() {
        m[(row, w)] = a[u].clone();
        m[(row, u)] = -a[w].clone();
    }
    m
}

/// Membership oracles for one graph, with presentations and matrices prepared once.
pub struct Oracles<'g> {
    graph: &'g Graph,
    raag: GroupPresentation,
    laurent: PresentationMatrix,
    linear: PresentationMatrix,
    bb: Option<GroupPresentation>,
    diagonal_wedge: Matrix<Rational>,
}

impl<'g> Oracles<'g> {
    /// `Bb` oracles are available only when the flag complex passes the gate.
    pub fn new(g: &'g Graph, assume_simply_connected: bool) -> Self {
        let bb = gate(g, assume_simply_connected)
            .ok()
            .and_then(|_| default_spanning_tree(g).ok())
            .and_then(|tree| spanning_tree_reduction(g, &tree, true).ok());
        Oracles {
            graph: g,
            raag: raag_presentation(g),
            laurent: alexander_presentation(g),
            linear: infinitesimal_presentation(g),
            bb,
            diagonal_wedge: wedge_matrix(g, &vec![Rational::one(); g.n()]),
        }
    }

    pub fn has_bb(&self) -> bool {
        self.bb.is_some()
    }

    fn check_len(&self, target: GroupKind, len: usize) -> Result<()> {
        let expected = ambient_dim(target, self.graph.n());
        if len != expected {
            return Err(Error::DimensionMismatch { expected, got: len });
        }
        Ok(())
    }

    /// `H¹(A, a) != 0` computed in the cohomology ring: the exterior face ring for
    /// `Raag`, its quotient by the diagonal class for `Bb`.
    pub fn resonance(&self, target: GroupKind, a: &[Rational]) -> Result<bool> {
        self.check_len(target, a.len())?;
        let n = self.graph.n();
        if a.iter().all(Zero::is_zero) {
            return Ok(ambient_dim(target, n) > 0);
        }
        match target {
            GroupKind::Raag => Ok(wedge_matrix(self.graph, a).nullity() > 1),
            GroupKind::Bb => {
                if self.bb.is_none() {
                    return Err(Error::NotSimplyConnected);
                }
                // L = {x : ã ∧ x ∈ ν ∧ C^V} contains ν and ã; resonance iff dim L > 2
                let lifted = lift(a, Rational::zero());
                let ma = wedge_matrix(self.graph, &lifted);
                let mnu = &self.diagonal_wedge;
                let stacked = Matrix::from_fn(ma.nrows(), 2 * n, |r, c| {
                    if c < n {
                        ma[(r, c)].clone()
                    } else {
                        -mnu[(r, c - n)].clone()
                    }
                });
                let dim_l = stacked.nullity() - mnu.nullity();
                Ok(dim_l > 2)
            }
        }
    }

    /// Support of the infinitesimal Alexander invariant of `G_Γ`.
    pub fn resonance_alexander(&self, a: &[Rational]) -> Result<bool> {
        self.check_len(GroupKind::Raag, a.len())?;
        evaluate_support(&self.linear, a)
    }

    /// `H¹(π, ρ) != 0` by Fox calculus on the Artin presentation or the
    /// tree-reduced presentation of `N_Γ`.
    pub fn characteristic_fox(&self, rho: &Character) -> Result<bool> {
        let p = match rho.target() {
            GroupKind::Raag => &self.raag,
            GroupKind::Bb => self.bb.as_ref().ok_or(Error::NotSimplyConnected)?,
        };
        if rho.is_trivial() {
            return Err(Error::TrivialCharacter);
        }
        let values = rho.generator_values(p)?;
        if p.generator_count() == 0 {
            return Ok(false);
        }
        if values.iter().all(One::is_one) {
            // ρ restricted to N_Γ can be trivial on every generator only if ρ is trivial
            return Err(Error::TrivialCharacter);
        }
        Ok(fox_h1_dimension(p, &values)? > 0)
    }

    /// Support of the Alexander invariant of `G_Γ`.
    pub fn characteristic_alexander(&self, t: &[Rational]) -> Result<bool> {
        self.check_len(GroupKind::Raag, t.len())?;
        evaluate_support(&self.laurent, t)
    }
}

/// Resonance of `a` by the cohomology-ring computation.
pub fn resonance_membership_oracle(
    g: &Graph,
    target: GroupKind,
    a: &[Rational],
    assume_simply_connected: bool,
) -> Result<bool> {
    if target == GroupKind::Bb {
        gate(g, assume_simply_connected)?;
    }
    Oracles::new(g, assume_simply_connected).resonance(target, a)
}

/// `ρ ∈ V_1` by Fox calculus; for `Raag` also checked against the Alexander
/// invariant, returning an error if the two disagree.
pub fn characteristic_membership_oracle(g: &Graph, rho: &Character, assume_simply_connected: bool) -> Result<bool> {
    if rho.target() == GroupKind::Bb {
        gate(g, assume_simply_connected)?;
    }
    let oracles = Oracles::new(g, assume_simply_connected);
    let fox = oracles.characteristic_fox(rho)?;
    if rho.target() == GroupKind::Raag {
        let alex = oracles.characteristic_alexander(rho.values())?;
        if alex != fox {
            return Err(Error::OracleDisagreement(format!(
                "Fox calculus says {fox}, Alexander invariant says {alex}"
            )));
        }
    }
    Ok(fox)
}

/// Graph on the components of the odd-weight subgraph, two joined when some
/// edge of the input runs between them. Component labels join member labels with `+`.
pub fn odd_contraction(wg: &WeightedGraph) -> Graph {
    let g = wg.graph();
    let odd_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .zip(wg.weights())
        .filter(|(_, &m)| m % 2 == 1)
        .map(|(&e, _)| e)
        .collect();
    let odd = Graph::new(g.labels().to_vec(), odd_edges).expect("subgraph of a valid graph");
    let mut comps = odd.connected_components();
    comps.sort_by_key(|c| c.iter().next());
    let mut comp_of = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for v in c.iter() {
            comp_of[v] = i;
        }
    }
    let labels = comps
        .iter()
        .map(|c| c.iter().map(|v| g.label(v)).collect::<Vec<_>>().join("+"))
        .collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, w)| (comp_of[u], comp_of[w]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::new(labels, edges).expect("contraction is simple")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    NotArrangement,
    NotArtin,
    Inconclusive,
}

/// Numbers backing a certificate; every field is recomputable from the graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_prime: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Which question was asked: `not_artin` or `not_arrangement`.
    pub test: &'static str,
    pub kind: CertificateKind,
    pub witness: Witness,
    pub justification: String,
}

impl Certificate {
    fn inconclusive(test: &'static str, why: impl Into<String>) -> Self {
        Certificate {
            test,
            kind: CertificateKind::Inconclusive,
            witness: Witness::default(),
            justification: why.into(),
        }
    }
}

fn labels_of(g: &Graph, w: VertexSet) -> Vec<String> {
    w.iter().map(|v| g.label(v).to_string()).collect()
}

/// Searches for two resonance components of `N_Γ` meeting away from the origin.
/// The resonance components of an arrangement group meet only at 0.
pub fn not_arrangement_certificate(g: &Graph, assume_simply_connected: bool) -> Result<Certificate> {
    const TEST: &str = "not_arrangement";
    let variety = resonance_components(g, GroupKind::Bb, assume_simply_connected)?;
    if g.connectivity() <= 1 {
        return Ok(Certificate::inconclusive(TEST, "graph has connectivity at most 1; the test is vacuous"));
    }
    let comps = match variety {
        ResonanceVariety::Full { .. } => {
            return Ok(Certificate::inconclusive(TEST, "resonance variety is the whole space"))
        }
        ResonanceVariety::Components(c) => c,
    };
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let d = subspace_intersection_dim(&[&comps[i], &comps[j]])?;
            if best.is_none_or(|(_, _, b)| d > b) {
                best = Some((i, j, d));
            }
        }
    }
    match best {
        Some((i, j, d)) if d > 0 => Ok(Certificate {
            test: TEST,
            kind: CertificateKind::NotArrangement,
            witness: Witness {
                components: vec![labels_of(g, comps[i].subset), labels_of(g, comps[j].subset)],
                ambient_dim: Some(comps[i].ambient_dim()),
                intersection_dim: Some(d),
                ..Witness::default()
            },
            justification: format!(
                "resonance components H'_W for W = {{{}}} and W = {{{}}} meet in a subspace of dimension {d} > 0",
                labels_of(g, comps[i].subset).join(", "),
                labels_of(g, comps[j].subset).join(", ")
            ),
        }),
        _ => Ok(Certificate::inconclusive(
            TEST,
            format!("{} resonance components, pairwise meeting only at 0", comps.len()),
        )),
    }
}

/// For the 1-skeleton of an extra-special triangulation: the boundary components
/// `H'_{V∖e_i}` are not in general position, which rules out every Artin group.
pub fn not_artin_certificate(g: &Graph, assume_simply_connected: bool) -> Result<Certificate> {
    const TEST: &str = "not_artin";
    let Some(tri) = recognize_extra_special(g) else {
        return Ok(Certificate::inconclusive(TEST, "graph is not recognized as an extra-special triangulation"));
    };
    gate(g, assume_simply_connected)?;
    let kappa = g.connectivity();
    if kappa <= 1 {
        return Ok(Certificate::inconclusive(TEST, format!("connectivity {kappa}; resonance variety is not proper")));
    }
    let n = g.n();
    let v_prime = n - 1;
    let non_edges = n * (n - 1) / 2 - g.edge_count();
    let e_prime = (v_prime * (v_prime - 1) / 2).checked_sub(non_edges);
    if e_prime.map(|e| e + 1) != Some(v_prime) {
        return Ok(Certificate::inconclusive(TEST, format!("v' = {v_prime} but e' + 1 = {:?}", e_prime.map(|e| e + 1))));
    }
    let e_prime = e_prime.expect("checked");
    let maximal = g.maximal_disconnected_subsets();
    let mut comps = Vec::new();
    for &(a, b) in tri.core_boundary() {
        let w = g.vertex_set().difference(VertexSet::from_indices([a, b]));
        if !maximal.contains(&w) {
            return Ok(Certificate::inconclusive(
                TEST,
                format!("V minus {{{}, {}}} is not a maximal disconnected subset", g.label(a), g.label(b)),
            ));
        }
        comps.push(SubspaceComponent::new(w, GroupKind::Bb, n)?);
    }
    let r = comps.len();
    let refs: Vec<&SubspaceComponent> = comps.iter().collect();
    let dim = subspace_intersection_dim(&refs)?;
    let codim = v_prime - dim;
    let witness = Witness {
        components: comps.iter().map(|c| labels_of(g, c.subset)).collect(),
        ambient_dim: Some(v_prime),
        intersection_dim: Some(dim),
        codim: Some(codim),
        r: Some(r),
        v_prime: Some(v_prime),
        e_prime: Some(e_prime),
    };
    if codim + 1 == r {
        Ok(Certificate {
            test: TEST,
            kind: CertificateKind::NotArtin,
            witness,
            justification: format!(
                "v' = {v_prime} = e' + 1 forces any candidate odd contraction to be a tree, whose {r} resonance \
                 components would be in general position; here they meet in codimension {codim} < {r}"
            ),
        })
    } else {
        Ok(Certificate {
            witness,
            ..Certificate::inconclusive(TEST, format!("boundary components meet in codimension {codim}, expected {}", r - 1))
        })
    }
}

/// Random nonzero rational `p/q` with `p ∈ [-9, 9] ∖ {0}`, `q ∈ [1, 5]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9..=9);
    }
    ratio(p, rng.gen_range(1..=5))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleTally {
    pub target: GroupKind,
    pub variety: &'static str,
    pub oracle: &'static str,
    pub agreed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub target: GroupKind,
    pub oracle: &'static str,
    pub point: Vec<String>,
    pub claimed: bool,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckSummary {
    pub seed: u64,
    pub points_per_component: usize,
    pub tallies: Vec<OracleTally>,
    pub disagreements: Vec<Disagreement>,
    pub skipped: Vec<String>,
}

impl CrosscheckSummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.tallies.iter().map(|t| t.total).sum()
    }
}

struct Tally<'a> {
    summary: &'a mut CrosscheckSummary,
}

impl Tally<'_> {
    fn record(&mut self, target: GroupKind, variety: &'static str, oracle: &'static str, point: &[Rational], claimed: bool, observed: bool) {
        let slot = match self
            .summary
            .tallies
            .iter()
            .position(|t| t.target == target && t.variety == variety && t.oracle == oracle)
        {
            Some(i) => i,
            None => {
                self.summary.tallies.push(OracleTally {
                    target,
                    variety,
                    oracle,
                    agreed: 0,
                    total: 0,
                });
                self.summary.tallies.len() - 1
            }
        };
        let t = &mut self.summary.tallies[slot];
        t.total += 1;
        if claimed == observed {
            t.agreed += 1;
        } else {
            self.summary.disagreements.push(Disagreement {
                target,
                oracle,
                point: point.iter().map(|x| x.to_string()).collect(),
                claimed,
                observed,
            });
        }
    }
}

const RESAMPLE_LIMIT: usize = 1000;

fn sample_subspace_point(rng: &mut ChaCha8Rng, target: GroupKind, n: usize, w: Option<VertexSet>) -> Vec<Rational> {
    loop {
        let full: Vec<Rational> = (0..n)
            .map(|v| if w.is_none_or(|w| w.contains(v)) { random_rational(rng) } else { Rational::zero() })
            .collect();
        let p = match target {
            GroupKind::Raag => full,
            GroupKind::Bb => full[..n - 1].iter().map(|x| x - &full[n - 1]).collect(),
        };
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

fn sample_torus_point(rng: &mut ChaCha8Rng, target: GroupKind, n: usize, w: Option<VertexSet>) -> Vec<Rational> {
    loop {
        let full: Vec<Rational> = (0..n)
            .map(|v| if w.is_none_or(|w| w.contains(v)) { random_rational(rng) } else { Rational::one() })
            .collect();
        let p = match target {
            GroupKind::Raag => full,
            GroupKind::Bb => full[..n - 1].iter().map(|x| x / &full[n - 1]).collect(),
        };
        if p.iter().any(|x| !x.is_one()) {
            return p;
        }
    }
}

/// Samples `points` seeded points on every claimed component plus `points`
/// generic points off all components, and compares the claimed membership with
/// each independent oracle.
pub fn crosscheck(g: &Graph, seed: u64, points: usize, assume_simply_connected: bool) -> CrosscheckSummary {
    let mut summary = CrosscheckSummary {
        seed,
        points_per_component: points,
        tallies: Vec::new(),
        disagreements: Vec::new(),
        skipped: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    if n == 0 {
        summary.skipped.push("empty graph".into());
        return summary;
    }
    let oracles = Oracles::new(g, assume_simply_connected);
    let mut targets = vec![GroupKind::Raag];
    if n <= 1 {
        summary.skipped.push("bb: N_Γ is trivial for a single vertex".into());
    } else if oracles.has_bb() {
        targets.push(GroupKind::Bb);
    } else {
        let status = simply_connected_status(&FlagComplex::new(g));
        summary.skipped.push(format!("bb: simple connectivity gate ({:?}: {})", status.status, status.reason));
    }
    for target in targets {
        let res = resonance_components(g, target, true).expect("gate handled above");
        let chars = characteristic_components(g, target, true).expect("gate handled above");

        let mut res_points: Vec<Vec<Rational>> = Vec::new();
        let subsets: Vec<Option<VertexSet>> = match &res {
            ResonanceVariety::Full { .. } => vec![None],
            ResonanceVariety::Components(cs) => cs.iter().map(|c| Some(c.subset)).collect(),
        };
        for w in &subsets {
            for _ in 0..points {
                res_points.push(sample_subspace_point(&mut rng, target, n, *w));
            }
        }
        for _ in 0..points {
            let mut tries = 0;
            let p = loop {
                let p = sample_subspace_point(&mut rng, target, n, None);
                tries += 1;
                if !res.contains(&p) || tries > RESAMPLE_LIMIT {
                    break p;
                }
            };
            res_points.push(p);
        }
        let mut tally = Tally { summary: &mut summary };
        for p in &res_points {
            let claimed = res.contains(p);
            if let Ok(obs) = oracles.resonance(target, p) {
                tally.record(target, "resonance", "cohomology_ring", p, claimed, obs);
            }
            if target == GroupKind::Raag {
                if let Ok(obs) = oracles.resonance_alexander(p) {
                    tally.record(target, "resonance", "infinitesimal_alexander", p, claimed, obs);
                }
            }
        }

        let mut char_points: Vec<Vec<Rational>> = Vec::new();
        let subsets: Vec<Option<VertexSet>> = match &chars {
            CharacteristicVariety::Full { .. } => vec![None],
            CharacteristicVariety::Components(cs) => cs.iter().map(|c| Some(c.subset)).collect(),
        };
        for w in &subsets {
            for _ in 0..points {
                char_points.push(sample_torus_point(&mut rng, target, n, *w));
            }
        }
        for _ in 0..points {
            let mut tries = 0;
            let p = loop {
                let p = sample_torus_point(&mut rng, target, n, None);
                tries += 1;
                if !chars.contains(&p) || tries > RESAMPLE_LIMIT {
                    break p;
                }
            };
            char_points.push(p);
        }
        for p in &char_points {
            let claimed = chars.contains(p);
            let rho = Character::new(target, n, p.clone()).expect("nonzero sample");
            if let Ok(obs) = oracles.characteristic_fox(&rho) {
                tally.record(target, "characteristic", "fox_calculus", p, claimed, obs);
            }
            if target == GroupKind::Raag {
                if let Ok(obs) = oracles.characteristic_alexander(p) {
                    tally.record(target, "characteristic", "alexander", p, claimed, obs);
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::triangulation::{build_special, extend_extra_special, BuildScript, ScriptStep};

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    pub(crate) fn extra_special_8() -> Graph {
        let square = build_special(&BuildScript {
            initial: None,
            steps: vec![ScriptStep { edge: ["1".into(), "3".into()], apex: None }],
        })
        .unwrap();
        extend_extra_special(&square).unwrap().graph().clone()
    }

    #[test]
    fn pushforward_bases() {
        let b = iota_pushforward_basis(VertexSet::from_indices([0, 2]), 3).unwrap();
        assert_eq!((b.nrows(), b.ncols(), b.rank()), (2, 2, 2));
        let b = iota_pushforward_basis(VertexSet::from_indices([4]), 6).unwrap();
        assert_eq!(b.rank(), 1);
        let b = iota_pushforward_basis(VertexSet::from_indices([0]), 2).unwrap();
        assert_eq!((b.ncols(), b.rank()), (1, 1));
        assert_eq!(iota_pushforward_basis(VertexSet::full(3), 3), Err(Error::FullVertexSet));
    }

    #[test]
    fn component_lists() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        match resonance_components(&tree, GroupKind::Raag, false).unwrap() {
            ResonanceVariety::Components(cs) => {
                assert_eq!(cs.len(), 2);
                assert!(cs.iter().all(|c| c.dim() == 4));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            resonance_components(&Graph::path(3), GroupKind::Bb, false).unwrap(),
            ResonanceVariety::Full { dim: 2 }
        );
        assert_eq!(
            characteristic_components(&Graph::path(3), GroupKind::Bb, false).unwrap(),
            CharacteristicVariety::Full { dim: 2 }
        );
        match characteristic_components(&Graph::path(3), GroupKind::Raag, false).unwrap() {
            CharacteristicVariety::Components(cs) => {
                assert_eq!(cs.len(), 1);
                assert_eq!(cs[0].subset, VertexSet::from_indices([0, 2]));
            }
            other => panic!("{other:?}"),
        }
        for target in [GroupKind::Raag, GroupKind::Bb] {
            assert_eq!(
                characteristic_components(&Graph::complete(4), target, false).unwrap(),
                CharacteristicVariety::Components(vec![])
            );
        }
        assert_eq!(
            resonance_components(&Graph::complete(1), GroupKind::Bb, false).unwrap(),
            ResonanceVariety::Components(vec![])
        );
        assert_eq!(
            resonance_components(&Graph::cycle(4), GroupKind::Bb, true),
            Err(Error::NotSimplyConnected)
        );
    }

    #[test]
    fn extra_special_boundary_components() {
        let g = extra_special_8();
        let ResonanceVariety::Components(cs) = resonance_components(&g, GroupKind::Bb, false).unwrap() else {
            panic!("expected components");
        };
        // four core boundary edges and the diagonal
        assert_eq!(cs.iter().filter(|c| c.subset.len() == 6).count(), 5);
        let tri = recognize_extra_special(&g).unwrap();
        let boundary: Vec<&SubspaceComponent> = tri
            .core_boundary()
            .iter()
            .map(|&(a, b)| {
                let w = g.vertex_set().difference(VertexSet::from_indices([a, b]));
                cs.iter().find(|c| c.subset == w).unwrap()
            })
            .collect();
        assert_eq!(boundary.len(), 4);
        assert!(boundary.iter().all(|c| c.dim() == 6 && c.ambient_dim() == 7));
        assert_eq!(subspace_intersection_dim(&boundary).unwrap(), 4);
    }

    #[test]
    fn ring_oracle_examples() {
        let p3 = Graph::path(3);
        assert!(resonance_membership_oracle(&p3, GroupKind::Raag, &pt(&[1, 0, 0]), false).unwrap());
        assert!(!resonance_membership_oracle(&p3, GroupKind::Raag, &pt(&[0, 1, 0]), false).unwrap());
        assert!(!resonance_membership_oracle(&Graph::complete(4), GroupKind::Raag, &pt(&[1, 2, 3, 5]), false).unwrap());
        assert!(resonance_membership_oracle(&p3, GroupKind::Bb, &pt(&[3, -2]), false).unwrap());
    }

    #[test]
    fn character_oracle_examples() {
        let p3 = Graph::path(3);
        let on = Character::new(GroupKind::Raag, 3, pt(&[2, 1, 3])).unwrap();
        assert!(characteristic_membership_oracle(&p3, &on, false).unwrap());
        let off = Character::new(GroupKind::Raag, 3, pt(&[2, 5, 3])).unwrap();
        assert!(!characteristic_membership_oracle(&p3, &off, false).unwrap());
        let bb = Character::new(GroupKind::Bb, 3, pt(&[7, -2])).unwrap();
        assert!(characteristic_membership_oracle(&p3, &bb, false).unwrap());
        let trivial = Character::new(GroupKind::Raag, 3, pt(&[1, 1, 1])).unwrap();
        assert_eq!(characteristic_membership_oracle(&p3, &trivial, false), Err(Error::TrivialCharacter));
    }

    #[test]
    fn odd_contractions() {
        let p3 = Graph::path(3);
        let even = WeightedGraph::new(p3.clone(), vec![2, 4]).unwrap();
        assert_eq!(odd_contraction(&even).edges(), p3.edges());
        let mixed = odd_contraction(&WeightedGraph::new(p3.clone(), vec![3, 2]).unwrap());
        assert_eq!((mixed.n(), mixed.edge_count()), (2, 1));
        assert_eq!(mixed.labels(), ["1+2", "3"]);
        let odd = odd_contraction(&WeightedGraph::new(p3, vec![3, 3]).unwrap());
        assert_eq!((odd.n(), odd.edge_count()), (1, 0));
    }

    #[test]
    fn certificates() {
        let g = extra_special_8();
        let artin = not_artin_certificate(&g, false).unwrap();
        assert_eq!(artin.kind, CertificateKind::NotArtin);
        assert_eq!(
            (artin.witness.v_prime, artin.witness.e_prime, artin.witness.codim, artin.witness.r),
            (Some(7), Some(6), Some(3), Some(4))
        );
        let arr = not_arrangement_certificate(&g, false).unwrap();
        assert_eq!(arr.kind, CertificateKind::NotArrangement);
        assert_eq!(arr.witness.intersection_dim, Some(5));
        for h in [Graph::complete(4), Graph::path(3)] {
            assert_eq!(not_arrangement_certificate(&h, false).unwrap().kind, CertificateKind::Inconclusive);
            assert_eq!(not_artin_certificate(&h, false).unwrap().kind, CertificateKind::Inconclusive);
        }
    }

    #[test]
    fn crosscheck_small_graphs() {
        for g in [Graph::path(3), Graph::complete(4), Graph::cycle(5), extra_special_8()] {
            let s = crosscheck(&g, 11, 4, false);
            assert!(s.all_agree(), "{g:?}: {:?}", s.disagreements);
            assert!(s.total_checks() > 0);
        }
        let c4 = crosscheck(&Graph::cycle(4), 1, 3, false);
        assert_eq!(c4.skipped.len(), 1);
        assert_eq!(crosscheck(&Graph::path(4), 5, 3, false), crosscheck(&Graph::path(4), 5, 3, false));
    }
}
