//! Long-range percolation laboratory on one random-graph engine.
//!
//! The crate implements a family of long-range percolation models that share
//! a single Bernoulli edge sampler:
//!
//! * ordinary lattice percolation with kernel `‖x−y‖^{−N−α}` and its
//!   power-mean deformation,
//! * toric (volume-element) percolation on transverse lattices,
//! * hierarchical-lattice percolation on `H^N_L`,
//! * local models at the places of the function field `F_q(t)` and of the
//!   number fields `Q`, `Q(i)`, `Q(√2)`,
//! * adelic models whose inclusion probabilities couple all finite places
//!   through zeta-function Euler products.
//!
//! Everything non-Archimedean is kept in exact `(base, rational exponent)`
//! arithmetic ([`magnitude::ExactMagnitude`]) so product-formula identities
//! can be checked exactly; floats appear only where kernels feed the sampler.

pub mod arith_ff;
pub mod arith_nf;
pub mod checks;
pub mod engine;
pub mod hierlattice;
pub mod kernels;
pub mod magnitude;

pub use magnitude::ExactMagnitude;
