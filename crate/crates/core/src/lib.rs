//! Solvability analysis for the Lie algebra `HH^1(kG)` of a modular group
//! algebra, driven by a directed graph built from transfer maps on the
//! p-Frattini quotient, and cross-checked by two brute-force oracles over
//! F_p: the graded image algebra with its explicit bracket, and a
//! from-scratch computation of derivations modulo inner derivations.

pub mod catalog;
pub mod error;
pub mod fp;
pub mod gamma;
pub mod group;
pub mod lie;
pub mod loewy;
pub mod report;
pub mod transfer;

pub use error::{Error, Result};
pub use group::{direct_product, frattini_quotient, Group, GroupHom, Subgroup};
pub use report::{analyze, Analysis, AnalyzeOptions, Report, Verdict};

/// Primality test for the small moduli this crate accepts (p < 256).
pub fn is_small_prime(p: u32) -> bool {
    (2..256).contains(&p)
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}
