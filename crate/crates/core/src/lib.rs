//! Closed 2-frieze patterns over exact integers.
//!
//! - [`exact`]: big integers, rationals and Laurent polynomials.
//! - [`frieze`]: fragments, the local rule, completion from two columns,
//!   the formal frieze.
//! - [`cluster`]: quivers, seeds and mutation for `A2 x Am`, the evaluation
//!   map from mutation words to unitary fragments, cluster enumeration.
//! - [`symmetry`]: the dihedral action and canonical forms.
//! - [`surgery`]: gluing fragments and cutting them apart again.
//! - [`geometry`]: lifts to polygons in `R^3` and back.
//! - [`enumerate`]: bounded exhaustive search and unitary classification.
//! - [`corpus`]: bundled reference fragments.

pub mod cluster;
pub mod corpus;
pub mod enumerate;
pub mod exact;
pub mod frieze;
pub mod geometry;
pub mod surgery;
pub mod symmetry;
