//! Independent reference computations for the eigensense test suites.
//!
//! Nothing here shares code with `eigensense-core`: the Tracy–Widom oracle is
//! a fixed-step RK4 sweep of the augmented system `(q, q', ∫q², u)` at a much
//! finer step, the eigenvalue oracle counts inertia of `A - λI` by a
//! Hermitian LDLᴴ factorisation, and the statistical helpers implement the
//! textbook survival functions.

pub mod eigen;
pub mod special;
pub mod stats;
pub mod tw;
