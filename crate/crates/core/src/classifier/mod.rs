//! Decision procedures for topological similarity of representations of
//! cyclic 2-groups `C(2^r)`.
//!
//! Elements of the free, dimension-zero representation ring are written in
//! the standard basis `a_s^{(i)}(r)`; stable triviality is membership in an
//! explicit full-rank lattice, and the unstable decision reads weight sets
//! and parity off the lattice coefficients.

mod basis;
mod crosscheck;
mod enumerate;
mod lattice;
mod verdict;

pub use basis::{
    from_coords, induce_closed_form, induce_coords, restrict_closed_form, std_basis, to_coords,
    BasisCoords, StdBasis, MAX_R,
};
pub use crosscheck::{
    parity_torsion_crosscheck, parity_torsion_crosscheck_with, CrosscheckStatus,
    ParityTorsionReport,
};
pub use enumerate::{count_yes, enumerate_unstable, EnumeratedPair, DEFAULT_MAX_PAIRS};
pub use lattice::{
    in_rt, order_in_rtop, rt_lattice, rtop_presentation, Generator, NamedClass, RtLattice,
    RtopPresentation, Seed,
};
pub use verdict::{
    canonical_w, decide_similarity, decide_stable, generator_theta, parity_and_depth,
    summand_for_index, summand_name, theta, Decision, Parity, ParityInfo, SimilarityVerdict,
    StableVerdict, WSummary,
};
