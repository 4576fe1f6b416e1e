//! Dual Lorentzian line geometry of timelike ruled surfaces and their
//! Mannheim offsets in Minkowski 3-space.
#![no_std]
// `!(x > y)` comparisons are used on purpose so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod curve;
pub mod dual;
pub mod error;
pub mod line;
pub mod mannheim;
pub mod lorentz;
pub mod numerics;
pub mod ruled_surface;
pub mod scalar;

pub use curve::CurveFn;
pub use dual::{Dual, DualScalar, DualVec3};
pub use error::{Error, Result};
pub use lorentz::{CausalCharacter, Vec3L};
pub use scalar::{Scalar, ScalarFn};
