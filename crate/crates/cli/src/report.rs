//! The schema-versioned invariant report.

use bbgroups::homology::{
    bb_homology_modules, homology_ranks, integral_h1, simply_connected_status, BbHomologyModule, FlagComplex,
    HomologyDegree, SimplyConnected, Status,
};
use bbgroups::jump_loci::{
    characteristic_components, crosscheck, not_arrangement_certificate, not_artin_certificate, resonance_components,
    Certificate, CharacteristicVariety, CrosscheckSummary, ResonanceVariety,
};
use bbgroups::presentation::{
    abelianization, default_spanning_tree, dicks_leary_presentation, raag_presentation, spanning_tree_reduction,
    GroupPresentation,
};
use bbgroups::series::{clique_polynomial, cut_polynomial, graph_chen_ranks, graph_lcs_ranks, IntPolynomial, RankVector};
use bbgroups::{FieldKind, Graph, GroupKind, VertexSet};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::document::GraphDocument;
use crate::CliError;

pub const SCHEMA: &str = "bbgroups/invariant-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Integers that fit in `i64` serialize as JSON numbers, larger ones as decimal strings.
fn big<T: ToPrimitive + ToString>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn field_name(field: FieldKind) -> String {
    match field {
        FieldKind::Rational => "q".into(),
        FieldKind::Prime(p) => format!("p{p}"),
    }
}

/// A section that is either computed or omitted with a reason.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Present(T),
    Omitted { omitted: String },
}

impl<T> Section<T> {
    fn omitted(reason: impl Into<String>) -> Self {
        Section::Omitted { omitted: reason.into() }
    }

    pub fn present(&self) -> Option<&T> {
        match self {
            Section::Present(t) => Some(t),
            Section::Omitted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub order: usize,
    pub field: String,
    pub seed: u64,
    pub points: usize,
    pub max_subset_size: Option<usize>,
    pub assume_simply_connected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Structure {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub connectivity: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub cone_point: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Gates {
    pub connected: bool,
    pub simply_connected: SimplyConnected,
    pub bb_allowed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Polynomial {
    pub coeffs: Vec<Value>,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<bool>,
}

impl Polynomial {
    fn new(p: &IntPolynomial, truncated: Option<bool>) -> Self {
        Polynomial {
            coeffs: p.coeffs().iter().map(big).collect(),
            text: p.to_string(),
            truncated,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Polynomials {
    pub clique: Polynomial,
    pub cut: Polynomial,
}

#[derive(Debug, Clone, Serialize)]
pub struct Ranks {
    pub values: Vec<Value>,
    pub requested: usize,
    pub truncated: bool,
}

impl Ranks {
    fn new(r: &RankVector, requested: usize) -> Self {
        Ranks {
            values: r.values.iter().map(big).collect(),
            requested,
            truncated: r.truncated,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupRanks {
    pub lcs: Ranks,
    pub chen: Ranks,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankSections {
    pub raag: GroupRanks,
    pub bb: Section<GroupRanks>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Homology {
    pub field: String,
    pub flag_complex: Vec<HomologyDegree>,
    pub integral_h1: String,
    pub bb_modules: Section<Vec<BbHomologyModule>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationSummary {
    pub generators: usize,
    pub relators: usize,
    pub text: String,
}

impl PresentationSummary {
    fn new(p: &GroupPresentation) -> Self {
        PresentationSummary {
            generators: p.generator_count(),
            relators: p.relator_count(),
            text: p.to_text(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeReduced {
    pub tree: Vec<[String; 2]>,
    #[serde(flatten)]
    pub presentation: PresentationSummary,
    pub abelianization: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Presentations {
    pub raag: PresentationSummary,
    pub dicks_leary: Section<PresentationSummary>,
    pub tree_reduced: Section<TreeReduced>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentEntry {
    pub subset: Vec<String>,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Variety {
    Full { dim: usize },
    Components { components: Vec<ComponentEntry> },
}

fn entries(g: &Graph, subsets: impl Iterator<Item = VertexSet>) -> Vec<ComponentEntry> {
    subsets
        .map(|w| ComponentEntry {
            subset: w.iter().map(|v| g.label(v).to_string()).collect(),
            dim: w.len(),
        })
        .collect()
}

impl Variety {
    pub fn from_resonance(g: &Graph, v: &ResonanceVariety) -> Self {
        match v {
            ResonanceVariety::Full { dim } => Variety::Full { dim: *dim },
            ResonanceVariety::Components(cs) => Variety::Components {
                components: entries(g, cs.iter().map(|c| c.subset)),
            },
        }
    }

    pub fn from_characteristic(g: &Graph, v: &CharacteristicVariety) -> Self {
        match v {
            CharacteristicVariety::Full { dim } => Variety::Full { dim: *dim },
            CharacteristicVariety::Components(cs) => Variety::Components {
                components: entries(g, cs.iter().map(|c| c.subset)),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Loci {
    pub resonance: Variety,
    pub characteristic: Variety,
}

impl Loci {
    fn compute(g: &Graph, target: GroupKind, assume: bool) -> Result<Self, CliError> {
        Ok(Loci {
            resonance: Variety::from_resonance(g, &resonance_components(g, target, assume)?),
            characteristic: Variety::from_characteristic(g, &characteristic_components(g, target, assume)?),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JumpLoci {
    pub raag: Loci,
    pub bb: Section<Loci>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub schema: &'static str,
    pub schema_version: u32,
    pub graph: GraphDocument,
    pub settings: Settings,
    pub structure: Structure,
    pub gates: Gates,
    pub polynomials: Polynomials,
    pub ranks: RankSections,
    pub homology: Homology,
    pub presentations: Presentations,
    pub jump_loci: JumpLoci,
    pub certificates: Section<Vec<Certificate>>,
    pub crosscheck: CrosscheckSummary,
    pub notes: Vec<String>,
}

impl InvariantReport {
    /// Whether some `N_Γ` section was withheld by a gate.
    pub fn refused(&self) -> bool {
        !self.gates.bb_allowed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Builds the full report. `N_Γ` sections are omitted when `Γ` is disconnected
/// or the flag complex fails the simple connectivity gate.
pub fn build_report(doc: &GraphDocument, settings: Settings) -> Result<InvariantReport, CliError> {
    let g = doc.to_graph()?;
    let field = FieldKind::parse(&settings.field)?;
    let order = settings.order;
    let assume = settings.assume_simply_connected;
    let complex = FlagComplex::new(&g);
    let connected = g.n() > 0 && g.is_connected();
    let simply_connected = simply_connected_status(&complex);
    let refusal = if !connected {
        Some("Γ is not connected; N_Γ is not finitely generated".to_string())
    } else {
        simply_connected.require(assume).err().map(|e| e.to_string())
    };
    let bb_allowed = refusal.is_none();
    let omit = || refusal.clone().unwrap_or_default();

    let cut = g.cut_coefficients(settings.max_subset_size);
    let (cut_poly, cut_truncated) = cut_polynomial(&cut);
    let group_ranks = |kind: GroupKind| -> Result<GroupRanks, CliError> {
        Ok(GroupRanks {
            lcs: Ranks::new(&graph_lcs_ranks(&g, kind, order)?, order),
            chen: Ranks::new(&graph_chen_ranks(&g, kind, order, settings.max_subset_size)?, order),
        })
    };
    let bb_ranks = if connected {
        Section::Present(group_ranks(GroupKind::Bb)?)
    } else {
        Section::omitted("Γ is not connected; N_Γ is not finitely generated")
    };

    let bb_modules = if connected {
        Section::Present(bb_homology_modules(&g, field)?)
    } else {
        Section::omitted("Γ is not connected; N_Γ is not finitely generated")
    };

    let (dicks_leary, tree_reduced) = if bb_allowed {
        let tree = default_spanning_tree(&g)?;
        let reduced = spanning_tree_reduction(&g, &tree, assume)?;
        (
            Section::Present(PresentationSummary::new(&dicks_leary_presentation(&g, assume)?)),
            Section::Present(TreeReduced {
                tree: tree
                    .iter()
                    .map(|&(u, v)| [g.label(u).to_string(), g.label(v).to_string()])
                    .collect(),
                presentation: PresentationSummary::new(&reduced),
                abelianization: abelianization(&reduced).to_string(),
            }),
        )
    } else {
        (Section::omitted(omit()), Section::omitted(omit()))
    };

    let bb_loci = if bb_allowed {
        Section::Present(Loci::compute(&g, GroupKind::Bb, assume)?)
    } else {
        Section::omitted(omit())
    };
    let certificates = if bb_allowed {
        Section::Present(vec![not_artin_certificate(&g, assume)?, not_arrangement_certificate(&g, assume)?])
    } else {
        Section::omitted(omit())
    };

    let modules = bb_modules.present().cloned().unwrap_or_default();
    let mut notes = Vec::new();
    if !connected {
        notes.push("Γ is not connected; N_Γ is not finitely generated".to_string());
    } else if simply_connected.status == Status::No {
        notes.push("Δ_Γ not simply connected; N_Γ not finitely presented".to_string());
    }
    for m in modules.iter().filter(|m| !m.is_finitely_generated()) {
        notes.push(format!(
            "H_{}(N_Γ; {}) has a free summand of rank {} and is not finitely generated",
            m.degree,
            field_name(field),
            m.free_rank
        ));
    }
    if g.n() > 0 && g.edge_count() == g.n() * (g.n() - 1) / 2 {
        notes.push(format!("Γ is complete: N_Γ ≅ Z^{}", g.n() - 1));
    }
    if let Some(v) = g.cone_point() {
        notes.push(format!("Γ is a cone on {}: N_Γ ≅ G_(Γ minus {})", g.label(v), g.label(v)));
    }

    Ok(InvariantReport {
        schema: SCHEMA,
        schema_version: SCHEMA_VERSION,
        graph: GraphDocument::from_graph(&g),
        structure: Structure {
            vertices: g.n(),
            edges: g.edge_count(),
            connected,
            connectivity: g.connectivity(),
            f_vector: complex.f_vector(),
            euler_characteristic: complex.euler_characteristic(),
            cone_point: g.cone_point().map(|v| g.label(v).to_string()),
        },
        gates: Gates {
            connected,
            simply_connected,
            bb_allowed,
            refusal,
        },
        polynomials: Polynomials {
            clique: Polynomial::new(&clique_polynomial(&g), None),
            cut: Polynomial::new(&cut_poly, Some(cut_truncated)),
        },
        ranks: RankSections {
            raag: group_ranks(GroupKind::Raag)?,
            bb: bb_ranks,
        },
        homology: Homology {
            field: field_name(field),
            flag_complex: homology_ranks(&complex, field),
            integral_h1: integral_h1(&complex).to_string(),
            bb_modules,
        },
        presentations: Presentations {
            raag: PresentationSummary::new(&raag_presentation(&g)),
            dicks_leary,
            tree_reduced,
        },
        jump_loci: JumpLoci {
            raag: Loci::compute(&g, GroupKind::Raag, assume)?,
            bb: bb_loci,
        },
        certificates,
        crosscheck: crosscheck(&g, settings.seed, settings.points, assume),
        notes,
        settings,
    })
}
