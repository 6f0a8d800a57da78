//! Zero-containment bounds for monic one-sided quaternionic polynomials,
//! checked against an independent root oracle.
//!
//! The bounds ([`bounds`]) are closed-form radii in the coefficient norms.
//! The oracle ([`oracle`]) finds every zero through the real companion
//! polynomial. The [`harness`] runs seeded campaigns that test every bound
//! against every zero.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod poly;
pub mod quat;
pub mod real_roots;

pub use bounds::{BoundRegion, Containment, HolderPair, RegionShape};
pub use error::{Error, Result};
pub use harness::{run_campaign, CampaignConfig, VerificationReport};
pub use oracle::{all_zeros, ZeroClass, ZeroSet};
pub use poly::{CoefficientSide, QPolynomial, RealPolynomial};
pub use quat::Quaternion;
pub use real_roots::ComplexRoot;
