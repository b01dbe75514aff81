//! Special and extra-special triangulations of the 2-disk.
//!
//! A special triangulation starts from one triangle and repeatedly glues a new
//! triangle along a boundary edge, adding one vertex each time. An extra-special
//! one glues a triangle on every boundary edge of a special one.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangulationKind {
    Special,
    ExtraSpecial,
}

/// One gluing: a new apex joined to both ends of a boundary edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStep {
    pub edge: [String; 2],
    pub apex: String,
}

/// Replayable description of a special build.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BuildScript {
    /// Labels of the starting triangle; `["1", "2", "3"]` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<[String; 3]>,
    pub steps: Vec<ScriptStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub edge: [String; 2],
    /// Label of the new vertex; the smallest unused positive integer when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DiskTriangulation {
    graph: Graph,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
    initial: [String; 3],
    log: Vec<BuildStep>,
    kind: TriangulationKind,
    core_boundary: Vec<(usize, usize)>,
}

impl DiskTriangulation {
    /// Assembles a triangulation from raw parts without any checking; see [`validate`].
    pub fn from_parts(graph: Graph, triangles: Vec<[usize; 3]>, boundary: Vec<usize>) -> Self {
        let initial = match triangles.first() {
            Some(t) => t.map(|v| graph.label(v).to_string()),
            None => ["".into(), "".into(), "".into()],
        };
        DiskTriangulation {
            graph,
            triangles,
            boundary,
            initial,
            log: Vec::new(),
            kind: TriangulationKind::Special,
            core_boundary: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Triangles as sorted vertex-index triples.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Boundary circuit as a cyclic vertex sequence.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        cyclic_pairs(&self.boundary)
    }

    pub fn log(&self) -> &[BuildStep] {
        &self.log
    }

    pub fn kind(&self) -> TriangulationKind {
        self.kind
    }

    /// Boundary circuit `(e_1, …, e_r)` of the special core of an extra-special
    /// triangulation; empty for special ones.
    pub fn core_boundary(&self) -> &[(usize, usize)] {
        &self.core_boundary
    }

    /// Script that rebuilds this triangulation's special part.
    pub fn script(&self) -> BuildScript {
        BuildScript {
            initial: Some(self.initial.clone()),
            steps: self
                .log
                .iter()
                .map(|s| ScriptStep {
                    edge: s.edge.clone(),
                    apex: Some(s.apex.clone()),
                })
                .collect(),
        }
    }
}

fn cyclic_pairs(cycle: &[usize]) -> Vec<(usize, usize)> {
    (0..cycle.len())
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<usize>,
    initial: [String; 3],
    log: Vec<BuildStep>,
}

impl Builder {
    fn new(initial: [String; 3]) -> Result<Self> {
        let mut b = Builder {
            labels: Vec::new(),
            index: HashMap::new(),
            edges: vec![(0, 1), (1, 2), (0, 2)],
            triangles: vec![[0, 1, 2]],
            boundary: vec![0, 1, 2],
            initial: initial.clone(),
            log: Vec::new(),
        };
        for l in initial {
            if b.index.contains_key(&l) {
                return Err(Error::DuplicateLabel(l));
            }
            b.push_label(l);
        }
        Ok(b)
    }

    fn from_triangulation(d: &DiskTriangulation) -> Self {
        let g = &d.graph;
        Builder {
            labels: g.labels().to_vec(),
            index: g.labels().iter().cloned().enumerate().map(|(i, l)| (l, i)).collect(),
            edges: g.edges().to_vec(),
            triangles: d.triangles.clone(),
            boundary: d.boundary.clone(),
            initial: d.initial.clone(),
            log: d.log.clone(),
        }
    }

    fn push_label(&mut self, l: String) -> usize {
        let i = self.labels.len();
        self.index.insert(l.clone(), i);
        self.labels.push(l);
        i
    }

    fn fresh_label(&self) -> String {
        (self.labels.len() + 1..)
            .map(|k| k.to_string())
            .find(|l| !self.index.contains_key(l))
            .expect("unbounded range")
    }

    fn attach(&mut self, step: usize, a: &str, b: &str, apex: Option<String>) -> Result<()> {
        let lookup = |l: &str| {
            self.index.get(l).copied().ok_or_else(|| Error::UnknownStepVertex {
                step,
                label: l.to_string(),
            })
        };
        let (u, v) = (lookup(a)?, lookup(b)?);
        let len = self.boundary.len();
        let pos = (0..len).find(|&i| {
            let (x, y) = (self.boundary[i], self.boundary[(i + 1) % len]);
            (x, y) == (u, v) || (x, y) == (v, u)
        });
        let Some(pos) = pos else {
            return Err(Error::NotBoundaryEdge {
                step,
                a: a.to_string(),
                b: b.to_string(),
            });
        };
        let apex = match apex {
            Some(l) if self.index.contains_key(&l) => return Err(Error::ApexInUse { step, label: l }),
            Some(l) => l,
            None => self.fresh_label(),
        };
        let x = self.push_label(apex.clone());
        self.edges.push((u.min(x), u.max(x)));
        self.edges.push((v.min(x), v.max(x)));
        let mut t = [u, v, x];
        t.sort_unstable();
        self.triangles.push(t);
        self.boundary.insert(pos + 1, x);
        self.log.push(BuildStep {
            edge: [a.to_string(), b.to_string()],
            apex,
        });
        Ok(())
    }

    /// Freezes the build. Vertices are ordered numerically when every label is an
    /// integer, in creation order otherwise, unless `order` is given.
    fn finish(self, kind: TriangulationKind, core: &[(usize, usize)], order: Option<&[String]>) -> Result<DiskTriangulation> {
        let perm: Vec<usize> = match order {
            Some(order) => order
                .iter()
                .map(|l| self.index[l.as_str()])
                .collect(),
            None => {
                let mut p: Vec<usize> = (0..self.labels.len()).collect();
                let numeric: Option<Vec<u64>> = self.labels.iter().map(|l| l.parse().ok()).collect();
                if let Some(keys) = numeric {
                    p.sort_by_key(|&i| keys[i]);
                }
                p
            }
        };
        let mut new_of = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let labels = perm.iter().map(|&i| self.labels[i].clone()).collect();
        let graph = Graph::new(labels, self.edges.iter().map(|&(a, b)| (new_of[a], new_of[b])))?;
        let mut triangles: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .map(|t| {
                let mut s = t.map(|v| new_of[v]);
                s.sort_unstable();
                s
            })
            .collect();
        triangles.sort_unstable();
        let core_boundary = core
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (new_of[a], new_of[b]);
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(DiskTriangulation {
            graph,
            triangles,
            boundary: self.boundary.iter().map(|&v| new_of[v]).collect(),
            initial: self.initial,
            log: self.log,
            kind,
            core_boundary,
        })
    }
}

fn default_initial() -> [String; 3] {
    ["1".into(), "2".into(), "3".into()]
}

/// Replays a build script. Errors name the offending step (0-based).
pub fn build_special(script: &BuildScript) -> Result<DiskTriangulation> {
    let mut b = Builder::new(script.initial.clone().unwrap_or_else(default_initial))?;
    for (i, s) in script.steps.iter().enumerate() {
        b.attach(i, &s.edge[0], &s.edge[1], s.apex.clone())?;
    }
    b.finish(TriangulationKind::Special, &[], None)
}

/// Random special build with `count` steps, each gluing along a boundary edge
/// chosen uniformly by a ChaCha8 generator seeded with `seed`.
pub fn build_special_random(seed: u64, count: usize) -> DiskTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(default_initial()).expect("distinct labels");
    for step in 0..count {
        let i = rng.gen_range(0..b.boundary.len());
        let u = b.boundary[i];
        let v = b.boundary[(i + 1) % b.boundary.len()];
        let (a, c) = (b.labels[u].clone(), b.labels[v].clone());
        b.attach(step, &a, &c, None).expect("boundary edge");
    }
    b.finish(TriangulationKind::Special, &[], None).expect("valid build")
}

/// Glues one new triangle on each boundary edge of a validated special triangulation.
pub fn extend_extra_special(d: &DiskTriangulation) -> Result<DiskTriangulation> {
    extend_with_labels(d, None, None)
}

fn extend_with_labels(
    d: &DiskTriangulation,
    apexes: Option<&[String]>,
    order: Option<&[String]>,
) -> Result<DiskTriangulation> {
    if d.kind != TriangulationKind::Special {
        return Err(Error::InvalidTriangulation("input is already extra-special".into()));
    }
    let report = validate(d);
    if !report.is_valid() {
        return Err(Error::InvalidTriangulation(report.failures().join("; ")));
    }
    let mut b = Builder::from_triangulation(d);
    let circuit: Vec<(usize, usize)> = {
        let c = &d.boundary;
        (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect()
    };
    let start = b.log.len();
    for (i, &(u, v)) in circuit.iter().enumerate() {
        let (a, c) = (b.labels[u].clone(), b.labels[v].clone());
        let apex = apexes.map(|l| l[i].clone());
        b.attach(start + i, &a, &c, apex)?;
    }
    b.finish(TriangulationKind::ExtraSpecial, &circuit, order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

/// Itemized structural checks; never errors.
pub fn validate(d: &DiskTriangulation) -> ValidationReport {
    let g = &d.graph;
    let mut checks = Vec::new();

    let count = 2 * g.n() as i64 - g.edge_count() as i64;
    checks.push(ValidationCheck {
        name: "vertex-edge count",
        passed: count == 3,
        detail: format!("2|V| - |E| = {count}"),
    });

    let listed: BTreeSet<[usize; 3]> = d.triangles.iter().copied().collect();
    let cliques: BTreeSet<[usize; 3]> = g
        .cliques()
        .get(3)
        .map(|c| c.iter().map(|t| [t[0], t[1], t[2]]).collect())
        .unwrap_or_default();
    let flag = listed == cliques && listed.len() == d.triangles.len();
    checks.push(ValidationCheck {
        name: "flag",
        passed: flag,
        detail: format!("{} listed triangles, {} triangles in the graph", d.triangles.len(), cliques.len()),
    });

    let distinct: BTreeSet<usize> = d.boundary.iter().copied().collect();
    let mut simple = d.boundary.len() >= 3 && distinct.len() == d.boundary.len();
    let mut detail = format!("circuit of length {}", d.boundary.len());
    if simple {
        let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &d.triangles {
            for e in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                *multiplicity.entry(e).or_default() += 1;
            }
        }
        let boundary: BTreeSet<(usize, usize)> = d.boundary_edges().into_iter().collect();
        for &(a, b) in g.edges() {
            let m = multiplicity.get(&(a, b)).copied().unwrap_or(0);
            let want = if boundary.contains(&(a, b)) { 1 } else { 2 };
            if m != want {
                simple = false;
                detail = format!(
                    "edge {{{}, {}}} lies in {m} triangles, expected {want}",
                    g.label(a),
                    g.label(b)
                );
                break;
            }
        }
        if boundary.iter().any(|&(a, b)| !g.has_edge(a, b)) {
            simple = false;
            detail = "circuit uses a non-edge".into();
        }
    } else if d.boundary.len() >= 3 {
        detail = "circuit repeats a vertex".into();
    }
    checks.push(ValidationCheck {
        name: "boundary circuit",
        passed: simple,
        detail,
    });

    if d.kind == TriangulationKind::ExtraSpecial {
        let kappa = g.connectivity();
        checks.push(ValidationCheck {
            name: "no cut points",
            passed: kappa > 1,
            detail: format!("connectivity {kappa}"),
        });
    }
    ValidationReport { checks }
}

/// Recognizes the 1-skeleton of a special triangulation by peeling degree-2
/// vertices with adjacent neighbours, then replaying the build in reverse.
/// The returned triangulation keeps the vertex order of `g`.
pub fn recognize_special(g: &Graph) -> Option<DiskTriangulation> {
    if g.n() < 3 || 2 * g.n() != g.edge_count() + 3 {
        return None;
    }
    let mut alive = g.vertex_set();
    let mut peeled = Vec::new();
    while alive.len() > 3 {
        let ear = alive.iter().find(|&x| {
            let nb = g.neighbors(x).intersection(alive);
            if nb.len() != 2 {
                return false;
            }
            let v = nb.to_vec();
            g.has_edge(v[0], v[1])
        })?;
        let nb = g.neighbors(ear).intersection(alive).to_vec();
        peeled.push((nb[0], nb[1], ear));
        alive.remove(ear);
    }
    let base = alive.to_vec();
    if base.len() != 3 || !(g.has_edge(base[0], base[1]) && g.has_edge(base[1], base[2]) && g.has_edge(base[0], base[2])) {
        return None;
    }
    let label = |v: usize| g.label(v).to_string();
    let script = BuildScript {
        initial: Some([label(base[0]), label(base[1]), label(base[2])]),
        steps: peeled
            .iter()
            .rev()
            .map(|&(a, b, x)| ScriptStep {
                edge: [label(a), label(b)],
                apex: Some(label(x)),
            })
            .collect(),
    };
    let mut b = Builder::new(script.initial.clone()?).ok()?;
    for (i, s) in script.steps.iter().enumerate() {
        b.attach(i, &s.edge[0], &s.edge[1], s.apex.clone()).ok()?;
    }
    let d = b.finish(TriangulationKind::Special, &[], Some(g.labels())).ok()?;
    (d.graph.edges() == g.edges() && validate(&d).is_valid()).then_some(d)
}

/// Recognizes the 1-skeleton of an extra-special triangulation: the apexes are
/// exactly the degree-2 vertices, they sit one per boundary edge of a special core.
pub fn recognize_extra_special(g: &Graph) -> Option<DiskTriangulation> {
    let apexes: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
    let core_set = g.vertex_set().difference(crate::graph::VertexSet::from_indices(apexes.iter().copied()));
    if core_set.len() < 3 {
        return None;
    }
    let core_graph = g.induced_subgraph(core_set).ok()?;
    let core = recognize_special(&core_graph)?;
    let circuit = core.boundary();
    if circuit.len() != apexes.len() {
        return None;
    }
    let mut labels = Vec::with_capacity(circuit.len());
    for i in 0..circuit.len() {
        let a = g.index_of(core_graph.label(circuit[i]))?;
        let b = g.index_of(core_graph.label(circuit[(i + 1) % circuit.len()]))?;
        let mut owners = apexes.iter().filter(|&&x| g.has_edge(x, a) && g.has_edge(x, b));
        let x = *owners.next()?;
        if owners.next().is_some() {
            return None;
        }
        labels.push(g.label(x).to_string());
    }
    let d = extend_with_labels(&core, Some(&labels), Some(g.labels())).ok()?;
    (d.graph.edges() == g.edges() && validate(&d).is_valid()).then_some(d)
}

/// True when `g` is the 1-skeleton of a special (hence also of any extra-special)
/// triangulation of the disk.
pub fn is_disk_triangulation(g: &Graph) -> bool {
    recognize_special(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(a: &str, b: &str, x: &str) -> ScriptStep {
        ScriptStep {
            edge: [a.into(), b.into()],
            apex: Some(x.into()),
        }
    }

    pub(crate) fn six_vertex_disk_script() -> BuildScript {
        BuildScript {
            initial: Some(["1".into(), "2".into(), "4".into()]),
            steps: vec![step("2", "4", "5"), step("2", "5", "3"), step("4", "5", "6")],
        }
    }

    #[test]
    fn zero_and_one_step_builds() {
        let d = build_special(&BuildScript::default()).unwrap();
        assert_eq!((d.graph().n(), d.graph().edge_count()), (3, 3));
        assert_eq!(d.boundary().len(), 3);
        let d = build_special(&BuildScript {
            initial: None,
            steps: vec![ScriptStep { edge: ["1".into(), "3".into()], apex: None }],
        })
        .unwrap();
        assert_eq!((d.graph().n(), d.graph().edge_count()), (4, 5));
        assert_eq!(d.log()[0].apex, "4");
        assert!(validate(&d).is_valid());
    }

    #[test]
    fn six_vertex_disk_build() {
        let d = build_special(&six_vertex_disk_script()).unwrap();
        let g = d.graph();
        assert_eq!((g.n(), g.edge_count(), d.triangles().len()), (6, 9, 4));
        assert_eq!(g.labels(), ["1", "2", "3", "4", "5", "6"]);
        assert!(validate(&d).is_valid());
    }

    #[test]
    fn script_errors_name_the_step() {
        let mut s = six_vertex_disk_script();
        s.steps[1] = step("1", "5", "3");
        assert!(matches!(build_special(&s), Err(Error::NotBoundaryEdge { step: 1, .. })));
        s.steps[1] = step("2", "9", "3");
        assert!(matches!(build_special(&s), Err(Error::UnknownStepVertex { step: 1, .. })));
        s.steps[1] = step("2", "5", "4");
        assert!(matches!(build_special(&s), Err(Error::ApexInUse { step: 1, .. })));
        // an interior edge after the second step
        let mut s = six_vertex_disk_script();
        s.steps.push(step("2", "4", "7"));
        assert!(matches!(build_special(&s), Err(Error::NotBoundaryEdge { step: 3, .. })));
    }

    #[test]
    fn extra_special_counts() {
        let square = build_special(&BuildScript {
            initial: None,
            steps: vec![ScriptStep { edge: ["1".into(), "3".into()], apex: None }],
        })
        .unwrap();
        let x = extend_extra_special(&square).unwrap();
        assert_eq!((x.graph().n(), x.graph().edge_count(), x.triangles().len()), (8, 13, 6));
        assert_eq!(x.core_boundary().len(), 4);
        assert!(validate(&x).is_valid());
        let tri = extend_extra_special(&build_special(&BuildScript::default()).unwrap()).unwrap();
        assert_eq!((tri.graph().n(), tri.graph().edge_count()), (6, 9));
        let six_vertex_disk = extend_extra_special(&build_special(&six_vertex_disk_script()).unwrap()).unwrap();
        assert_eq!((six_vertex_disk.graph().n(), six_vertex_disk.graph().edge_count()), (12, 21));
        assert!(extend_extra_special(&x).is_err());
    }

    #[test]
    fn fake_triangulation_fails_validation() {
        let c4 = Graph::cycle(4);
        let fake = DiskTriangulation::from_parts(c4, vec![[0, 1, 2]], vec![0, 1, 2, 3]);
        let report = validate(&fake);
        assert!(!report.is_valid());
        assert_eq!(report.failures().len(), 3);
    }

    #[test]
    fn random_builds_validate_and_replay() {
        for seed in 0..20 {
            let d = build_special_random(seed, 7);
            assert!(validate(&d).is_valid());
            let replay = build_special(&d.script()).unwrap();
            assert_eq!(replay.graph().edges(), d.graph().edges());
            assert_eq!(build_special_random(seed, 7).graph().edges(), d.graph().edges());
            let x = extend_extra_special(&d).unwrap();
            assert!(validate(&x).is_valid());
            assert!(recognize_extra_special(x.graph()).is_some());
        }
    }

    #[test]
    fn recognition() {
        let six_vertex_disk = build_special(&six_vertex_disk_script()).unwrap();
        assert!(recognize_special(six_vertex_disk.graph()).is_some());
        let as_extra = recognize_extra_special(six_vertex_disk.graph()).unwrap();
        assert_eq!(as_extra.core_boundary().len(), 3);
        assert!(recognize_special(&Graph::cycle(4)).is_none());
        assert!(recognize_special(&Graph::complete(4)).is_none());
        assert!(recognize_extra_special(&Graph::complete(3)).is_none());
        let square = recognize_special(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap());
        assert!(square.is_some());
        assert!(recognize_extra_special(square.unwrap().graph()).is_none());
    }
}
