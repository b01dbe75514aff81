//! One function per subcommand. Each returns the text to print and an exit code.

use bbgroups::alexander::{alexander_presentation, infinitesimal_presentation};
use bbgroups::jump_loci::{crosscheck, not_arrangement_certificate, not_artin_certificate, Certificate, CrosscheckSummary};
use bbgroups::presentation::{default_spanning_tree, dicks_leary_presentation, raag_presentation, spanning_tree_reduction};
use bbgroups::triangulation::{
    build_special, build_special_random, extend_extra_special, validate, BuildScript, DiskTriangulation,
    TriangulationKind,
};
use serde::Serialize;

use crate::document::{BuildRecord, CheckRecord, GraphDocument};
use crate::report::{build_report, Settings};
use crate::CliError;

/// Printable result of a subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

/// Full invariant report; exits 2 after printing when an `N_Γ` section was refused.
pub fn report(doc: &GraphDocument, settings: Settings) -> Result<Outcome, CliError> {
    let r = build_report(doc, settings)?;
    Ok(Outcome {
        stdout: r.to_json(),
        code: if r.refused() { 2 } else { 0 },
    })
}

pub enum GenerateSource {
    Script(BuildScript),
    Random { seed: u64, count: usize },
}

fn document_of(d: &DiskTriangulation, core: &DiskTriangulation, seed: Option<u64>) -> GraphDocument {
    let g = d.graph();
    let label = |v: usize| g.label(v).to_string();
    let mut doc = GraphDocument::from_graph(g);
    doc.build = Some(BuildRecord {
        kind: d.kind(),
        script: core.script(),
        log: d.log().to_vec(),
        triangles: d.triangles().iter().map(|t| t.map(label)).collect(),
        boundary: d.boundary().iter().map(|&v| label(v)).collect(),
        r: (d.kind() == TriangulationKind::ExtraSpecial).then(|| d.core_boundary().len()),
        seed,
        validation: CheckRecord::from_report(&validate(d)),
    });
    doc
}

/// Builds a special or extra-special triangulation and returns its graph document.
pub fn generate(kind: TriangulationKind, source: &GenerateSource) -> Result<GraphDocument, CliError> {
    let (core, seed) = match source {
        GenerateSource::Script(s) => (build_special(s)?, None),
        GenerateSource::Random { seed, count } => (build_special_random(*seed, *count), Some(*seed)),
    };
    let d = match kind {
        TriangulationKind::Special => core.clone(),
        TriangulationKind::ExtraSpecial => extend_extra_special(&core)?,
    };
    let report = validate(&d);
    if !report.is_valid() {
        return Err(CliError::Input(format!("generated triangulation fails validation: {}", report.failures().join("; "))));
    }
    Ok(document_of(&d, &core, seed))
}

/// Replays the build record of a generated document and checks that it
/// reproduces the same graph and passes validation.
pub fn revalidate(doc: &GraphDocument) -> Result<(), CliError> {
    let record = doc.build.as_ref().ok_or_else(|| CliError::Input("document has no build record".into()))?;
    let core = build_special(&record.script)?;
    let d = match record.kind {
        TriangulationKind::Special => core,
        TriangulationKind::ExtraSpecial => extend_extra_special(&core)?,
    };
    if d.graph() != &doc.to_graph()? {
        return Err(CliError::Input("build record does not reproduce the graph".into()));
    }
    let report = validate(&d);
    if !report.is_valid() {
        return Err(CliError::Input(report.failures().join("; ")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct Distinguished {
    pub schema_version: u32,
    pub graph: GraphDocument,
    pub certificates: Vec<Certificate>,
}

/// The `not_artin` and `not_arrangement` certificates.
pub fn distinguish(doc: &GraphDocument, assume_simply_connected: bool) -> Result<Distinguished, CliError> {
    let g = doc.to_graph()?;
    if g.n() == 0 || !g.is_connected() {
        return Err(CliError::Gate("Γ is not connected; N_Γ is not finitely generated".into()));
    }
    Ok(Distinguished {
        schema_version: crate::report::SCHEMA_VERSION,
        graph: GraphDocument::from_graph(&g),
        certificates: vec![
            not_artin_certificate(&g, assume_simply_connected)?,
            not_arrangement_certificate(&g, assume_simply_connected)?,
        ],
    })
}

pub fn distinguish_outcome(doc: &GraphDocument, assume_simply_connected: bool) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(to_json(&distinguish(doc, assume_simply_connected)?)))
}

/// Seeded oracle cross-validation; exits 3 on any disagreement.
pub fn crosscheck_summary(doc: &GraphDocument, seed: u64, points: usize, assume: bool) -> Result<CrosscheckSummary, CliError> {
    Ok(crosscheck(&doc.to_graph()?, seed, points, assume))
}

pub fn crosscheck_outcome(doc: &GraphDocument, seed: u64, points: usize, assume: bool) -> Result<Outcome, CliError> {
    let s = crosscheck_summary(doc, seed, points, assume)?;
    Ok(Outcome {
        stdout: to_json(&s),
        code: if s.all_agree() { 0 } else { 3 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportKind {
    /// Artin presentation of `G_Γ`.
    Raag,
    /// Dicks-Leary presentation of `N_Γ` on edge generators.
    DicksLeary,
    /// Presentation of `N_Γ` on spanning tree edges.
    TreeReduced,
    /// Alexander matrix of `G_Γ`, sparse `row col polynomial` lines.
    Alexander,
    /// Infinitesimal Alexander matrix of `G_Γ`.
    Infinitesimal,
}

/// Presentations in the `gen ...; rel ...;` text format, or sparse matrices.
pub fn export(doc: &GraphDocument, kind: ExportKind, assume: bool) -> Result<Outcome, CliError> {
    let g = doc.to_graph()?;
    let text = match kind {
        ExportKind::Raag => raag_presentation(&g).to_text() + "\n",
        ExportKind::DicksLeary => dicks_leary_presentation(&g, assume)?.to_text() + "\n",
        ExportKind::TreeReduced => spanning_tree_reduction(&g, &default_spanning_tree(&g)?, assume)?.to_text() + "\n",
        ExportKind::Alexander => alexander_presentation(&g).to_sparse_text(),
        ExportKind::Infinitesimal => infinitesimal_presentation(&g).to_sparse_text(),
    };
    Ok(Outcome::ok(text))
}
