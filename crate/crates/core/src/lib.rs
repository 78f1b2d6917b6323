//! Numerical lab for weighted composition operators `W_{ψ,φ} f = ψ · (f ∘ φ)`
//! with linear fractional symbols on the Hardy space and weighted Bergman
//! spaces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod mobius;
pub mod opmat;
pub mod probes;
pub mod scenarios;
mod serde_ext;
pub mod series;
pub mod space;
pub mod spectra;

pub use error::{Error, ErrorKind, Result};
pub use mobius::{Classification, MapClass, MapReport, MoebiusMap};
pub use opmat::{build_block, word_block, Letter, OperatorSpec, OperatorWord, TruncatedBlock};
pub use probes::{defect_report, DefectReport};
pub use series::{AnalyticExpr, PowerSeries};
pub use space::SpaceSpec;
