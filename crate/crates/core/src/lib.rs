//! Exact combinatorics for genus-zero moduli spaces of pointed curves.
//!
//! The crate models the boundary stratification of the compactified moduli
//! space by stable labeled trees, Keel's presentation of its cohomology ring,
//! hyperplane arrangements whose complements are the open moduli spaces, and
//! the involution `x -> 1 - x` together with the paired ("NY") configuration
//! spaces it produces.
//!
//! Everything is exact: coordinates and coefficients are arbitrary-precision
//! rationals and dimensions are integers. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arrangements;
pub mod involution;
pub mod keel;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod strata;
pub mod trees;

pub use arrangements::{Arrangement, Flat, GradedDims, Hyperplane, IntersectionPoset};
pub use involution::{PairedConfig, PairedLabel, PairedLabelSet, ProjectivePoint};
pub use keel::{DivisorClass, KeelElement, KeelRing};
pub use poly::IntPoly;
pub use rational::Rational;
pub use strata::{StrataPoset, Stratum};
pub use trees::{Flag, LabelSet, StableTree};
