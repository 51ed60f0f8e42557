//! Exact spinor algebra for the ten-dimensional N=(2,0) super Poincare
//! algebra, and the classification of its square-zero supercharges.
//!
//! Everything is computed over the Gaussian rationals Q(i) with no floating
//! point and no tolerances. The chiral spinor module is realized as the even
//! exterior algebra of the dual of a five-dimensional space L, vectors live
//! in V = L + L*, and supercharges are spinor-valued pairs (S+ tensor W with
//! dim W = 2). See the `classify` module for the orbit taxonomy.

pub mod binquad;
pub mod classify;
pub mod exterior;
pub mod linalg;
pub mod scalar;
pub mod spinor;
pub mod stabilizer;
pub mod superalgebra;


pub use classify::{
    classify, emit_ideal, representative, sample_orbit, ClassifyError, IntersectionPattern,
    InvariantReport, OrbitLabel,
};
pub use scalar::Scalar;
pub use spinor::{Orientation, Spinor};
pub use stabilizer::{projective_orbit_dim, stabilizer_subalgebra, StabilizerResult};
pub use superalgebra::Supercharge;

