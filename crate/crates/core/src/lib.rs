//! Exact computational toolkit for restricted induction in character theory,
//! with supporting machinery: permutation groups and their subgroup lattices,
//! exact character tables over cyclotomic fields, Brauer/Artin induction
//! identities, Malle-type invariants of group actions, Frobenius cycle-type
//! statistics for integer polynomials, and an explicit zero-free-region
//! calculator.
//!
//! All group- and character-theoretic results are exact (integers, rationals,
//! cyclotomic numbers with rational coordinates); only the analytic
//! zero-free-region module works in floating point.

pub mod bitset;
pub mod chartab;
pub mod cyclo;
pub mod groupgen;
pub mod lattice;
pub mod malle;
pub mod modp;
pub mod numpoly;
pub mod perm;
pub mod ratmat;
pub mod restind;
pub mod sieve;
pub mod smallgroups;
pub mod tally;
pub mod zfr;

pub use perm::{Perm, PermGroup};

/// Caps and tunable constants shared across modules.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Maximum group order for explicit element enumeration.
    pub order_cap: usize,
    /// Budget (number of closure computations) for subgroup-lattice generation.
    pub lattice_budget: usize,
    /// Hard cap for sieving limits in the numerical checker.
    pub sieve_cap: u64,
    /// Zero-free-region constant c in the far-from-branch bound.
    pub c_zfr: f64,
    /// Constant in the prime-counting error envelope x * exp(-c * sqrt(log x)).
    pub c_envelope: f64,
    /// The constant C_G appearing in the branch cut exponent eps/(6 C_G [k:Q]).
    pub c_group: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order_cap: 10_000,
            lattice_budget: 2_000_000,
            sieve_cap: 10_000_000,
            c_zfr: 0.1,
            c_envelope: 0.1,
            c_group: 6.0,
        }
    }
}
