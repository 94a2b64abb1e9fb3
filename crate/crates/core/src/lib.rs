//! Arithmetic on weighted projective spaces over Q: weights and their
//! normal forms, points up to the weighted action, weighted gcds, global
//! and local weighted heights, the singular locus, and an empirical scan
//! of gcd bounds.

pub mod arith;
pub mod error;
pub mod format;
pub mod gcdops;
pub mod heights;
pub mod localheights;
pub mod points;
pub mod scan;
pub mod singular;
pub mod weights;
pub mod wpoly;

pub use arith::{LogExpr, Place, Rat};
pub use error::{Error, Result};
pub use gcdops::Subscheme;
pub use heights::{wheight, HeightValue};
pub use localheights::{DivisorSpec, LocalHeight, Metric};
pub use points::{ProjPoint, WPoint};
pub use scan::{sing1_audit, vojta_scan, Domain, ScanConfig, ScanReport};
pub use weights::{WeightMap, Weights};
pub use wpoly::WPolynomial;
