//! Invariants of right-angled Artin groups `G_Γ` and Bestvina-Brady groups `N_Γ`
//! computed from a finite simple graph `Γ`.

pub mod alexander;
pub mod census;
pub mod error;
pub mod graph;
pub mod homology;
pub mod jump_loci;
pub mod linalg;
pub mod presentation;
pub mod scalar;
pub mod series;
pub mod triangulation;

pub use error::{Error, Result};
pub use graph::{CutCoefficients, Graph, VertexSet, WeightedGraph};
pub use scalar::{Field, FieldKind, Fp};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
pub type QMatrix = linalg::Matrix<Rational>;
pub type ZMatrix = linalg::Matrix<Integer>;
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

/// Which group of the pair a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// The right-angled Artin group `G_Γ`.
    Raag,
    /// The Bestvina-Brady group `N_Γ`.
    Bb,
}
