//! Exact computation of sharpened bounds on the continuous parameter of
//! unitary representations of exceptional Lie groups.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod cache;
pub mod cases;
pub mod chambers;
pub mod context;
pub mod enumeration;
pub mod error;
pub mod exact;
pub mod kernel;
pub mod norms;
pub mod reference;
pub mod roots;

pub use cases::{load_case, CaseClass, CaseLabel, CaseSpec, LatticeRule, Tier};
pub use error::{Error, Result};
pub use exact::{ConeCoords, ConeDescription, ConeMode, GramContext, Projection, Rational, RationalVector};
pub use roots::{build_root_system, AmbientRootSystem, IndexPolicy, ReflectionSystem, RootType, WeylWord};
