//! Finite presentations of `G_Γ` and `N_Γ`, free-group words, and Fox calculus.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{simply_connected_status, AbelianGroup, FlagComplex};
use crate::linalg::Matrix;
use crate::{GroupKind, Rational};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in a free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Replaces each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        Word::new(self.0.iter().flat_map(|l| {
            let w = &images[l.generator];
            let w = if l.inverse { w.inverse() } else { w.clone() };
            w.0
        }))
    }

    /// Exponent sum of every generator among the first `n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0; n];
        for l in &self.0 {
            sums[l.generator] += l.exponent();
        }
        sums
    }
}

/// A relator word, with its commutator structure `[a, b]` when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub commutator: Option<(Word, Word)>,
}

impl Relator {
    pub fn plain(word: Word) -> Self {
        Relator { word, commutator: None }
    }

    pub fn commutator(a: Word, b: Word) -> Self {
        Relator {
            word: Word::commutator(&a, &b),
            commutator: Some((a, b)),
        }
    }

    pub fn is_commutator(&self) -> bool {
        self.commutator.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Raag,
    DicksLeary,
    TreeReduced,
    /// Read from the text format; carries no graph data.
    Parsed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
    kind: PresentationKind,
    /// Number of vertices of the underlying graph, if any.
    n_vertices: usize,
    /// For edge generators: the endpoints `(u, v)`, `u < v`, so that the
    /// generator maps to `u v⁻¹` in `G_Γ`.
    edge_endpoints: Vec<(usize, usize)>,
}

impl GroupPresentation {
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn edge_endpoints(&self) -> &[(usize, usize)] {
        &self.edge_endpoints
    }

    /// Serializes to `gen a b; rel a b A B;`, capital first letter meaning inverse.
    pub fn to_text(&self) -> String {
        let mut out = String::from("gen");
        for g in &self.generators {
            out.push(' ');
            out.push_str(g);
        }
        out.push(';');
        for r in &self.relators {
            out.push_str(" rel");
            for l in r.word.letters() {
                out.push(' ');
                let name = &self.generators[l.generator];
                if l.inverse {
                    out.push_str(&capitalize(name));
                } else {
                    out.push_str(name);
                }
            }
            out.push(';');
        }
        out
    }

    /// Parses the text format. Generator names must start with a lowercase letter.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |m: String| Error::PresentationSyntax(m);
        let mut statements = text.split(';').map(str::trim).filter(|s| !s.is_empty());
        let header = statements.next().ok_or_else(|| syntax("missing gen statement".into()))?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("gen") {
            return Err(syntax(format!("expected gen, found {header:?}")));
        }
        let generators: Vec<String> = tokens.map(str::to_string).collect();
        for (i, g) in generators.iter().enumerate() {
            if !g.chars().next().is_some_and(|c| c.is_lowercase()) || !g.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(syntax(format!("invalid generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(syntax(format!("duplicate generator {g:?}")));
            }
        }
        let mut relators = Vec::new();
        for stmt in statements {
            let mut tokens = stmt.split_whitespace();
            if tokens.next() != Some("rel") {
                return Err(syntax(format!("expected rel, found {stmt:?}")));
            }
            let mut letters = Vec::new();
            for t in tokens {
                if let Some(i) = generators.iter().position(|g| g == t) {
                    letters.push(Letter::new(i, false));
                } else if let Some(i) = generators.iter().position(|g| capitalize(g) == t) {
                    letters.push(Letter::new(i, true));
                } else {
                    return Err(syntax(format!("unknown generator {t:?}")));
                }
            }
            relators.push(Relator::plain(Word::new(letters)));
        }
        Ok(GroupPresentation {
            generators,
            relators,
            kind: PresentationKind::Parsed,
            n_vertices: 0,
            edge_endpoints: Vec::new(),
        })
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Matrix<BigInt> {
        let n = self.generators.len();
        Matrix::from_rows(
            n,
            self.relators
                .iter()
                .map(|r| r.word.exponent_sums(n).into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn capitalize(name: &str) -> String {
    let mut c = name.chars();
    match c.next() {
        Some(first) => first.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn edge_names(g: &Graph) -> Vec<String> {
    (1..=g.edge_count()).map(|k| format!("e{k}")).collect()
}

/// `⟨x_v | [x_u, x_w] for {u, w} ∈ E⟩`.
pub fn raag_presentation(g: &Graph) -> GroupPresentation {
    GroupPresentation {
        generators: (1..=g.n()).map(|i| format!("x{i}")).collect(),
        relators: g
            .edges()
            .iter()
            .map(|&(u, w)| Relator::commutator(Word::generator(u), Word::generator(w)))
            .collect(),
        kind: PresentationKind::Raag,
        n_vertices: g.n(),
        edge_endpoints: Vec::new(),
    }
}

/// A 3-clique `u < v < w` with `e = {u, v}`, `f = {v, w}`, `g = {u, w}`, stored
/// as edge indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedTriangle {
    pub vertices: [usize; 3],
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

pub fn directed_triangles(g: &Graph) -> Vec<DirectedTriangle> {
    g.cliques()
        .get(3)
        .map(|ts| {
            ts.iter()
                .map(|t| DirectedTriangle {
                    vertices: [t[0], t[1], t[2]],
                    e: g.edge_index(t[0], t[1]).expect("clique edge"),
                    f: g.edge_index(t[1], t[2]).expect("clique edge"),
                    g: g.edge_index(t[0], t[2]).expect("clique edge"),
                })
                .collect()
        })
        .unwrap_or_default()
}

fn gate(g: &Graph, assume_simply_connected: bool) -> Result<()> {
    simply_connected_status(&FlagComplex::new(g)).require(assume_simply_connected)
}

/// Edge generators; per directed triangle `(e, f, g)` the relators `[e, f]` and `e f g⁻¹`.
///
/// Valid only when the flag complex is simply connected; `Unknown` passes with the override.
pub fn dicks_leary_presentation(g: &Graph, assume_simply_connected: bool) -> Result<GroupPresentation> {
    gate(g, assume_simply_connected)?;
    let mut relators = Vec::new();
    for t in directed_triangles(g) {
        let (e, f, h) = (Word::generator(t.e), Word::generator(t.f), Word::generator(t.g));
        relators.push(Relator::commutator(e.clone(), f.clone()));
        relators.push(Relator::plain(e.concat(&f).concat(&h.inverse())));
    }
    Ok(GroupPresentation {
        generators: edge_names(g),
        relators,
        kind: PresentationKind::DicksLeary,
        n_vertices: g.n(),
        edge_endpoints: g.edges().to_vec(),
    })
}

/// Breadth-first spanning tree from the first vertex, neighbours in index order.
pub fn default_spanning_tree(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::Disconnected("a spanning tree needs a connected graph"));
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut tree = Vec::new();
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).iter() {
            if !seen[w] {
                seen[w] = true;
                tree.push((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    tree.sort_unstable();
    Ok(tree)
}

/// Eliminates every non-tree edge generator of the Dicks-Leary presentation by
/// its tree-path word, keeping the nontrivial relators. Tree edges are the
/// generators, in edge order.
pub fn spanning_tree_reduction(
    g: &Graph,
    tree: &[(usize, usize)],
    assume_simply_connected: bool,
) -> Result<GroupPresentation> {
    let n = g.n();
    let mut tree_edges: Vec<usize> = Vec::with_capacity(tree.len());
    for &(a, b) in tree {
        let e = g
            .edge_index(a, b)
            .ok_or_else(|| Error::NotSpanningTree(format!("{{{}, {}}} is not an edge", g.label(a.min(n - 1)), g.label(b.min(n - 1)))))?;
        tree_edges.push(e);
    }
    tree_edges.sort_unstable();
    tree_edges.dedup();
    if n == 0 || tree_edges.len() != n - 1 {
        return Err(Error::NotSpanningTree(format!("{} edges for {} vertices", tree_edges.len(), n)));
    }
    let tree_graph = Graph::new(g.labels().to_vec(), tree_edges.iter().map(|&e| g.edges()[e]))?;
    if !tree_graph.is_connected() {
        return Err(Error::NotSpanningTree("edges do not connect every vertex".into()));
    }
    let dl = dicks_leary_presentation(g, assume_simply_connected)?;

    // up[x] represents x r⁻¹ in G_Γ for the root r = 0, as a word in tree generators
    let position: Vec<Option<usize>> = (0..g.edge_count())
        .map(|e| tree_edges.iter().position(|&t| t == e))
        .collect();
    let mut up = vec![Word::empty(); n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(p) = stack.pop() {
        for x in tree_graph.neighbors(p).iter() {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let gen = position[g.edge_index(x, p).expect("tree edge")].expect("tree generator");
            // x p⁻¹ is the edge generator when x < p, its inverse otherwise
            let step = Word::new([Letter::new(gen, x > p)]);
            up[x] = step.concat(&up[p]);
            stack.push(x);
        }
    }
    let images: Vec<Word> = g.edges().iter().map(|&(u, v)| up[u].concat(&up[v].inverse())).collect();

    let mut relators = Vec::new();
    for r in dl.relators() {
        let word = r.word.substitute(&images);
        if word.is_empty() {
            continue;
        }
        relators.push(match &r.commutator {
            Some((a, b)) => Relator {
                word,
                commutator: Some((a.substitute(&images), b.substitute(&images))),
            },
            None => Relator::plain(word),
        });
    }
    Ok(GroupPresentation {
        generators: tree_edges.iter().map(|&e| dl.generators[e].clone()).collect(),
        relators,
        kind: PresentationKind::TreeReduced,
        n_vertices: n,
        edge_endpoints: tree_edges.iter().map(|&e| g.edges()[e]).collect(),
    })
}

/// `H_1` of the presented group from the Smith form of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    AbelianGroup::from_relations(&p.exponent_matrix())
}

/// Rank-one local system on `G_Γ` (`|V|` coordinates) or `N_Γ` (`|V| - 1`
/// coordinates `t_v / t_last`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    target: GroupKind,
    values: Vec<Rational>,
}

impl Character {
    pub fn new(target: GroupKind, n_vertices: usize, values: Vec<Rational>) -> Result<Self> {
        let expected = match target {
            GroupKind::Raag => n_vertices,
            GroupKind::Bb => n_vertices.saturating_sub(1),
        };
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: values.len(),
            });
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(Character { target, values })
    }

    pub fn target(&self) -> GroupKind {
        self.target
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// Coordinates on `G_Γ`: unchanged for `Raag`, `(values, 1)` for `Bb`.
    pub fn lift(&self) -> Vec<Rational> {
        let mut t = self.values.clone();
        if self.target == GroupKind::Bb {
            t.push(Rational::one());
        }
        t
    }

    /// Value on each generator of a presentation built from the same graph.
    pub fn generator_values(&self, p: &GroupPresentation) -> Result<Vec<Rational>> {
        let t = self.lift();
        match p.kind {
            PresentationKind::Raag => {
                if self.target != GroupKind::Raag || t.len() != p.generator_count() {
                    return Err(Error::DimensionMismatch {
                        expected: p.generator_count(),
                        got: t.len(),
                    });
                }
                Ok(t)
            }
            PresentationKind::DicksLeary | PresentationKind::TreeReduced => {
                if t.len() != p.n_vertices {
                    return Err(Error::DimensionMismatch {
                        expected: p.n_vertices,
                        got: t.len(),
                    });
                }
                Ok(p.edge_endpoints.iter().map(|&(u, v)| &t[u] / &t[v]).collect())
            }
            PresentationKind::Parsed => Ok(self.values.clone()),
        }
    }
}

/// Fox Jacobian `(∂r_i / ∂x_j)` evaluated at the given generator values.
pub fn fox_jacobian(p: &GroupPresentation, values: &[Rational]) -> Matrix<Rational> {
    let n = p.generator_count();
    assert_eq!(values.len(), n, "one value per generator");
    let inverses: Vec<Rational> = values.iter().map(|v| v.recip()).collect();
    let mut rows = Vec::with_capacity(p.relator_count());
    for r in p.relators() {
        let mut row = vec![Rational::zero(); n];
        let mut prefix = Rational::one();
        for l in r.word.letters() {
            let j = l.generator;
            if l.inverse {
                prefix *= &inverses[j];
                row[j] -= &prefix;
            } else {
                row[j] += &prefix;
                prefix *= &values[j];
            }
        }
        rows.push(row);
    }
    Matrix::from_rows(n, rows)
}

/// `dim H¹(π; ρ) = n - 1 - rank J(ρ)` for a nontrivial character given by its
/// generator values.
pub fn fox_h1_dimension(p: &GroupPresentation, values: &[Rational]) -> Result<usize> {
    if values.len() != p.generator_count() {
        return Err(Error::DimensionMismatch {
            expected: p.generator_count(),
            got: values.len(),
        });
    }
    if values.iter().any(Zero::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    if values.iter().all(One::is_one) {
        return Err(Error::TrivialCharacter);
    }
    Ok(p.generator_count() - 1 - fox_jacobian(p, values).rank())
}

/// `dim H¹(π; ρ)` for a character of the presented group's graph.
pub fn fox_h1_at(p: &GroupPresentation, rho: &Character) -> Result<usize> {
    if rho.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    fox_h1_dimension(p, &rho.generator_values(p)?)
}
