//! Concrete rings: `Z`, `Z/N` and `P[x]` for `P = Z` or `F_p[t]`.

mod artinian;
mod pid;
mod poly;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::FpModule;
use crate::scalar::gcd;
use crate::{Int, Module};

pub use artinian::{artinian_quadruple_check, ArtinianReport, Clause, PrimeEvidence};
pub use pid::{FpT, Integers, Pid};
pub use poly::Poly;

pub const DEFAULT_FACTOR_BOUND: u128 = 1_000_000;
pub const DEFAULT_DEGREE_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("the zero polynomial has no content")]
    ZeroPolynomial,
    #[error("{0} is not a nonzero constant")]
    NotInS1(String),
    #[error("{poly} has content {content}, not 1")]
    NotInS2 { poly: String, content: String },
    #[error("could not factor {0} within the trial division bound")]
    FactorizationBound(String),
    #[error("degree {0} exceeds the bound {DEFAULT_DEGREE_BOUND}")]
    DegreeBound(usize),
    #[error("{d} does not divide {s}")]
    NotADivisor { d: Int, s: Int },
}

/// Membership of `f` in the nonzero constants and in the content-1
/// polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_s1: bool,
    pub in_s2: bool,
}

pub fn classify_s1_s2<P: Pid>(f: &Poly<P>) -> Membership {
    match f.content() {
        Err(_) => Membership {
            in_s1: false,
            in_s2: false,
        },
        Ok(c) => Membership {
            in_s1: f.is_constant(),
            in_s2: c == f.base().one(),
        },
    }
}

/// Cyclic decomposition of a finitely presented module; `0` marks a free
/// summand and the zero module gives an empty list.
pub fn module_invariants(m: &FpModule<Int>) -> Vec<Int> {
    m.invariants()
}

/// Whether `Z/d` is a projective `Z/s`-module.
pub fn is_projective_over_z_mod_s(d: Int, s: Int) -> Result<bool, RingError> {
    if d <= 0 || s <= 0 || s % d != 0 {
        return Err(RingError::NotADivisor { d, s });
    }
    Ok(gcd(&d, &(s / d)) == 1)
}

/// The largest divisor of `d` coprime to `m`.
pub fn coprime_part(mut d: Int, m: Int) -> Int {
    loop {
        let g = gcd(&d, &m);
        if g == 1 {
            return d;
        }
        d /= g;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientProjectivity {
    pub s: Int,
    pub quotient: Vec<Int>,
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StronglyFlatReport {
    pub module: Vec<Int>,
    pub m: Int,
    pub torsion_free: bool,
    pub quotients: Vec<QuotientProjectivity>,
    /// Powers of `m` past this one overflow and were not checked.
    pub truncated: bool,
    pub localization_projective: bool,
    pub holds: bool,
}

/// For `F` over `Z` and `S` generated by `m`: flatness of `F`, projectivity
/// of `F/sF` over `Z/s` for `s = m, m^2, ..., m^depth`, and projectivity of
/// `S^{-1}F` over `Z[1/m]`.
pub fn strongly_flat_criterion_fg(f: &Module, m: Int, depth: u32) -> StronglyFlatReport {
    assert!(m >= 1, "m must be positive");
    let inv = f.invariant_factors();
    let torsion_free = inv.iter().all(|&d| d == 0);
    let mut quotients = Vec::new();
    let mut truncated = false;
    for k in 1..=depth {
        let Some(s) = m.checked_pow(k) else {
            truncated = true;
            break;
        };
        let quotient: Vec<Int> = inv.iter().map(|&d| if d == 0 { s } else { gcd(&d, &s) }).collect();
        let projective = quotient
            .iter()
            .all(|&q| is_projective_over_z_mod_s(q, s).expect("gcd divides s"));
        quotients.push(QuotientProjectivity {
            s,
            quotient: quotient.into_iter().filter(|&q| q != 1).collect(),
            projective,
        });
    }
    // (Z/d)[1/m] = Z/d' with d' the m-coprime part; it is projective over
    // the domain Z[1/m] only when zero
    let localization_projective = inv.iter().all(|&d| d == 0 || coprime_part(d, m) == 1);
    let holds = torsion_free && quotients.iter().all(|q| q.projective) && localization_projective;
    StronglyFlatReport {
        module: inv,
        m,
        torsion_free,
        quotients,
        truncated,
        localization_projective,
        holds,
    }
}
