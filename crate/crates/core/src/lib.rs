//! Exact-arithmetic toolkit for tropical compactification combinatorics.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere. The layers build on each other:
//!
//! * [`lattice`] — Smith normal form, integer linear solving, primitive
//!   vectors relative to a working lattice `N ⊕ dZ`.
//! * [`cone`] — rational polyhedral cones with exact V/H conversion by
//!   double description, faces, duals, Hilbert bases.
//! * [`polyhedron`] — polyhedra and polyhedral complexes, represented by
//!   their homogenizations.
//! * [`fan`] — fans: validation, support queries, refinement, star,
//!   translation spaces, coarsening, height-one slices.
//! * [`tropical`] — valued Laurent polynomials, initial forms, tropical
//!   hypersurfaces and membership certificates.
//! * [`geomtrop`] — geometric tropicalization from boundary data and the
//!   lattice-checkable parts of the schoen/huebsch criteria.
//! * [`toric`] — admissible fans, special fibers, semistable rescaling,
//!   chart monoids and the properness support check.

pub mod cone;
pub mod error;
pub mod fan;
pub mod geomtrop;
pub mod lattice;
pub mod polyhedron;
pub mod toric;
pub mod tropical;
pub mod vecs;

pub use error::Error;

pub type Int = num::BigInt;
pub type Rat = num::BigRational;

/// Integer vector, the workhorse representation for lattice points,
/// ray generators and halfspace normals.
pub type ZVec = Vec<Int>;

/// Exact rational vector.
pub type QVec = Vec<Rat>;
