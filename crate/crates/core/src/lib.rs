//! Exact computation of the invariants that govern topological equivalence
//! of linear representations of finite cyclic groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] and [`linalg`]: modular arithmetic and exact integer linear
//!   algebra (Smith normal form, lattice membership).
//! * [`rep`]: the real representation ring of a cyclic group.
//! * [`group_ring`]: the integral group ring, its cyclotomic quotients and
//!   Reidemeister torsion units.
//! * [`tate`]: Tate cohomology of modules with an involution.
//! * [`normal`]: weight congruences controlling homotopy and normal invariants.
//! * [`classifier`]: the decision engine for cyclic 2-groups.

pub mod arith;
mod bigser;
pub mod classifier;
pub mod error;
pub mod group_ring;
pub mod linalg;
pub mod normal;
pub mod oliver;
pub mod rep;
pub mod tate;

pub use error::{Error, Result};
