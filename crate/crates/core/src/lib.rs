//! Weakly scattered spaces, Loewy series of Boolean rings and the
//! local-to-global principle, computed on finite and catalogued models.

pub mod boolring;
pub mod dcat;
pub mod dot;
pub mod finposet;
pub mod ordinal;
pub mod refinement;
pub mod report;
pub mod selftest;
pub mod stone;

pub use boolring::{AlgebraError, BoolAlg, Element};
pub use dcat::{DObj, DcatError};
pub use finposet::{FinPoset, PosetError, SubsetMask, Topology};
pub use ordinal::Ordinal;
pub use refinement::{CoverPiece, Filtration, LocallyClosedCover, RefineError};
pub use report::{Check, Report, Status};
pub use stone::{CbRank, PrimeRep, SpecDescriptor};
