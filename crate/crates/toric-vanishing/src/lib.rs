//! Exact verification of cohomology vanishing on toric varieties in
//! positive characteristic.
//!
//! The crate builds complete toric varieties from fans, lifts their Frobenius
//! morphisms to length-two Witt vectors, and verifies — in exact integer and
//! rational arithmetic, degree by degree — the vanishing statements that the
//! lifting implies: Bott-type vanishing for ample line bundles,
//! Kawamata-Viehweg vanishing for ample Q-divisors, and degeneration of the
//! Hodge-to-de-Rham spectral sequence for the logarithmic de Rham complex.
//! Every verification run produces a machine-readable report; a failed check
//! is always reported as a bug in this implementation, never as a
//! counterexample to a theorem.
//!
//! # Tour by example
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example witt_ring            # W_2(F_p) arithmetic and the Z/p^2 correspondence
//! cargo run --example fan_catalog          # built-in fans, validation, predicates
//! cargo run --example hilbert_basis        # affine charts and their monoid generators
//! cargo run --example divisor_rounding     # Q-divisor rounding and ampleness certificates
//! cargo run --example cohomology_table     # graded sheaf cohomology tables
//! cargo run --example serre_duality        # duality as a cross-check
//! cargo run --example frobenius_lift       # monomial Frobenius liftings on charts
//! cargo run --example cartier_isomorphism  # graded Cartier quasi-isomorphism checks
//! cargo run --example kawamata_viehweg     # Kawamata-Viehweg vanishing runs
//! cargo run --example bott_and_hodge       # Bott vanishing and Hodge degeneration
//! cargo run --example blowup_tower         # stellar subdivisions (toric blow-ups)
//! cargo run --example suite_report         # full verification suite with JSON report
//! ```
//!
//! The thin `toricv` binary exposes the same checks as subcommands
//! (`check-bott`, `check-kv`, `check-injection`, `check-hodge`, `check-lift`,
//! `suite`) over JSON fan and divisor files.

pub mod catalog;
pub mod chart;
pub mod cohomology;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod frobenius;
pub mod lattice;
pub mod linalg;
pub mod rat;
pub mod report;
pub mod suites;
pub mod witt;

pub use error::{Error, Result};
pub use rat::Rat;
