//! Exact sectional-genus and adjoint-bundle computations for polarized
//! varieties of dimension at most four.

pub mod adjoint;
pub mod binpoly;
pub mod classify;
pub mod error;
pub mod genus;
pub mod hrr;
pub mod rational;
pub mod report;
pub mod semigroup;
pub mod suites;
pub mod variety;

pub use adjoint::{BoundEntry, BoundReport, C2BoundCheck, CubicParams, I1Request, SectionDifference};
pub use binpoly::{coefficients_from_oracle, BinBasisPoly, MultiIndex};
pub use classify::{AdjunctionLabel, Certainty, DeclaredInvariants, FineType};
pub use error::{Error, Result};
pub use hrr::{Certification, SectionCount};
pub use rational::Rational;
pub use report::{Check, Summary, VerificationReport};
pub use semigroup::{EmpiricalMinimum, SemigroupSet};
pub use suites::{Suite, SuiteConfig};
pub use variety::{ConeDescriptor, DivisorClass, Kappa, OracleFamily, VarietyData, VarietyDescription};
