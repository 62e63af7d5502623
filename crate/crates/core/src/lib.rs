//! Desk-scale survey engine for the isogeny splitting of Jacobians of small
//! hyperelliptic curves modulo many primes.
//!
//! The pipeline, per good prime p of a fixed genus-1 or genus-2 curve:
//! count points, build the Frobenius characteristic polynomial of the
//! Jacobian, factor it over the integers (Honda–Tate splitting), test the
//! multiplicative structure of its roots, identify the Galois group of its
//! splitting field inside a hyperoctahedral group, and aggregate densities
//! over congruence classes.
//!
//! Module map:
//! - [`algebra`] — exact integer/prime-field polynomial kernel
//! - [`curves`] — point counting and Jacobian orders
//! - [`weil`] — Weil-polynomial analytics (validation, splitting, root ratios)
//! - [`weyl`] — finite signed-permutation groups B_n, W(D_n) and checks
//! - [`galois`] — splitting-field Galois identification (exact + sampled)
//! - [`equidist`] — finite reductive-group sampling laboratory
//! - [`survey`] — the per-prime pipeline, densities, reports
//! - [`cli`] — command-line front end

pub mod algebra;
pub mod cli;
pub mod curves;
pub mod equidist;
pub mod galois;
pub mod survey;
pub mod weil;
pub mod weyl;
