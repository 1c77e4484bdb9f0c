//! Topological invariants of equisingularity classes of plane branches.
//!
//! Starting from characteristic exponents or the semigroup of values, the
//! crate builds the multiplicity sequence of the minimal embedded resolution
//! and evaluates closed formulas for the Milnor number `μ`, the dimension
//! `τ₋` of the μ-constant stratum, the generic moduli dimension `q_min`, the
//! minimal Tjurina number `τ_min`, and the gap count of the generic set of
//! Kähler differential values. Quantities with two independent expressions
//! are computed both ways and compared.
//!
//! ```
//! use branch_invariants::{full_report, CharacteristicExponents};
//!
//! let c: CharacteristicExponents = "4:6,7".parse().unwrap();
//! let r = full_report(&c).unwrap();
//! assert_eq!((r.mu, r.tau_min), (16, 14));
//! ```

pub mod check;
pub mod combinatorics;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod output;
pub mod resolution;

pub use combinatorics::{
    char_exponents_from_semigroup, conductor, gap_count, semigroup_from_char_exponents,
    validate_char_exponents, CharacteristicExponents, SemigroupGenerators,
};
pub use enumerate::{enumerate_classes, sweep, EnumerationBounds, SweepRecord, SweepSummary};
pub use error::{Error, Result};
pub use invariants::{
    delta_gen_gap_count, dimca_greuel_margin, e_prime, full_report, milnor, q_min, sigma, tau_lower_bound,
    tau_min, tau_minus, InvariantReport, Quotient,
};
pub use output::{ClassReport, OutputFormat};
pub use resolution::{
    append_smooth_points, multiplicity_sequence, InfinitelyNearPoint, MultiplicitySequence, PointKind,
};
