//! Identification of lens spaces from triangulations.
//!
//! Given a triangulation of a closed oriented 3-manifold that happens to be a
//! lens space, this crate computes the order `n` of its first homology and the
//! oriented-homeomorphism class `{k, 1/k}` by evaluating Reidemeister torsion
//! with coefficients twisted into a prime field `Z/l`, `l = 1 (mod n)`, and
//! feeding the three evaluations `f(z), f(z^2), f(z^4)` through quadratic
//! equations and discrete logarithms.
//!
//! The crate also generates triangulations (fans with `n` tetrahedra, layered
//! solid tori with exponentially large homology, Pachner-move obfuscations),
//! produces and verifies identification certificates, and carries an exact
//! cyclotomic-field torsion oracle used to cross-check the modular pipeline.

pub mod exact;
pub mod homology;
pub mod identify;
pub mod certify;
pub mod numbertheory;
pub mod torsion;
pub mod triangulation;

pub use identify::{identify, IdentifyError, IdentifyOptions, IdentifyResult};
pub use triangulation::Triangulation;
