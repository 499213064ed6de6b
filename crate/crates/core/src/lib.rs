//! Certified bounds for multidimensional Bohr radii.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`] exact multi-index machinery (enumeration, multinomials,
//!   simplex counts, `α^α`),
//! * [`domains`] complete Reinhardt domains and their monomial sup-norms,
//! * [`series`] truncated power series, majorant and L¹ sums, homogeneous
//!   layers,
//! * [`rootfind`] a bracketing solver for increasing series equations that
//!   carries its own truncation certificate,
//! * [`bounds`] the closed-form and equation-based radius bounds,
//! * [`harness`] the verification suite, the constant table and report
//!   serialisation used by the `bohr` binary.

pub mod bounds;
pub mod combinatorics;
pub mod domains;
mod error;
pub mod harness;
pub mod json;
pub mod rootfind;
pub mod series;
pub mod sum;

pub use combinatorics::MultiIndex;
pub use domains::{DomainKind, DomainSpec};
pub use error::{Error, Result};
pub use rootfind::{CertifiedRoot, RootError, SeriesEquation};
pub use series::{HomogeneousExpansion, TruncatedSeries};
