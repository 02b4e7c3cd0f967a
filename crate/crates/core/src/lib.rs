//! Exact dimensions of spaces of conformal blocks.
//!
//! Given the fusion rules of a rational chiral CFT (a label set with duals
//! and integer fusion multiplicities), the dimension of the space of
//! conformal blocks of a labelled surface is computed from any decomposition
//! of the surface into pairs of pants, cylinders and disks: every cut circle
//! is summed over all labels and each atom contributes the vacuum
//! multiplicity of its (orientation-adjusted) leg labels.
//!
//! The crate is organised bottom-up:
//!
//! * [`fusion`], [`modular_data`], [`catalog`]: fusion rings, S-matrices and
//!   the standard examples.
//! * [`surface`], [`decomposition`]: topological types, decompositions and
//!   the gluing calculus.
//! * [`engine`]: the state sum, its contraction planner and a brute-force
//!   oracle.
//! * [`verify`]: factorization and decomposition-move checks.
//! * [`modularity`]: transparent labels and Verlinde cross-checks.
//! * [`io`]: the JSON document formats.

pub mod catalog;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod fusion;
pub mod io;
pub mod modular_data;
pub mod modularity;
pub mod random;
pub mod surface;
pub mod verify;

pub use catalog::catalog;
pub use decomposition::{Atom, AtomKind, DecompositionGraph, DecompositionViolation, LegRef, Move};
pub use engine::{
    atom_dimension, brute_force_dim, dim_blocks, dim_tensor, plan_contraction, ContractionPlan, DimensionTensor,
    DEFAULT_BRUTE_FORCE_CAP,
};
pub use error::{Error, Result};
pub use fusion::{FusionRing, FusionTensor, Label, RingViolation};
pub use modular_data::{ModularData, TAU_S};
pub use modularity::{cross_check, detect_transparent, verlinde_genus_dim, ModularityReport, TAU_V};
pub use surface::{BoundaryCircle, Orientation, Surface};
