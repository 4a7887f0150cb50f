//! `Gamma_S`, the quotient and torsion towers, `Delta_S` through the
//! `lim^1 -> Delta -> Lambda` sequence, divisibility and the weakly
//! cotorsion decision for finitely generated abelian groups.

use serde::Serialize;

use super::limits::{tower_lim_windowed, tower_lim1, Lim1Verdict};
use super::{annihilated, multiple, same, CompletionError, MultSubsetSeq, Tower};
use crate::abelian::{quotient, BaseRing, Submodule};
use crate::ring::coprime_part;
use crate::{Int, ModMap, Module};

/// `Gamma_S(M)` with a bounding element `t_n` annihilating it.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub carrier: Submodule<Int>,
    pub witness: Int,
    pub stabilized_at: usize,
}

impl Gamma {
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.carrier.module.invariant_factors()
    }
}

/// Modulus for computing `t_n` on `a`: the exponent when `a` is finite.
fn modulus(a: &Module) -> Int {
    if a.is_finite() {
        a.exponent()
    } else {
        0
    }
}

fn times(x: Int, y: Int, m: Int) -> Result<Int, CompletionError> {
    let p = x.checked_mul(y).ok_or(CompletionError::Overflow(0))?;
    Ok(if m == 0 { p } else { p.rem_euclid(m) })
}

/// Once `ker t_n = ker t_n P` for the product `P` of the generators, every
/// later `t_m` divides some `t_n P^j`, so the kernel chain is constant.
pub fn torsion_submodule(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<Gamma, CompletionError> {
    let m = modulus(a);
    let p = s.radical_product();
    for n in 1..=depth {
        let t = s.t(n, m)?;
        let k = annihilated(a, t);
        if same(a, &k, &annihilated(a, times(t, p, m)?)) {
            return Ok(Gamma {
                carrier: k,
                witness: s.t(n, 0)?,
                stabilized_at: n,
            });
        }
    }
    Err(CompletionError::NotStabilized {
        what: "kernel chain of t_n".into(),
        depth,
    })
}

/// First `n` with `t_n A = t_n P A`, after which `t_m A` is constant.
fn quotient_stable_at(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<usize, CompletionError> {
    let m = modulus(a);
    let p = s.radical_product();
    for n in 1..=depth {
        let t = s.t(n, m)?;
        if same(a, &multiple(a, t), &multiple(a, times(t, p, m)?)) {
            return Ok(n);
        }
    }
    Err(CompletionError::NotStabilized {
        what: "image chain of t_n".into(),
        depth,
    })
}

/// `A / t_n A` with the canonical surjections.
pub fn quotient_tower(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<Tower, CompletionError> {
    let m = modulus(a);
    let qs = (1..=depth)
        .map(|n| Ok(quotient(a, multiple(a, s.t(n, m)?).inclusion.matrix())))
        .collect::<Result<Vec<_>, CompletionError>>()?;
    let maps = qs
        .windows(2)
        .map(|w| {
            ModMap::new(w[1].module.clone(), w[0].module.clone(), &w[1].section * w[0].projection.matrix())
                .expect("the canonical surjection is well defined")
        })
        .collect();
    Tower::new(qs.into_iter().map(|q| q.module).collect(), maps)
}

/// Kernels of `t_n` with the transitions `x -> s_{n+1} x`.
pub fn torsion_tower(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<Tower, CompletionError> {
    let m = modulus(a);
    let ks = (1..=depth)
        .map(|n| Ok(annihilated(a, s.t(n, m)?)))
        .collect::<Result<Vec<_>, CompletionError>>()?;
    let maps = ks
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let f = w[1].inclusion.then(&ModMap::scalar(a, &s.s(i + 2))).expect("composable");
            coords_map(&f, &w[0])
        })
        .collect();
    Tower::new(ks.into_iter().map(|k| k.module).collect(), maps)
}

/// Corestriction of `f: X -> A` to a submodule containing its image.
fn coords_map(f: &ModMap, sub: &Submodule<Int>) -> ModMap {
    let rows = (0..f.src().len())
        .map(|i| sub.coords(f.matrix().row(i)).expect("image lies in the submodule"))
        .collect();
    ModMap::new(
        f.src().clone(),
        sub.module.clone(),
        crate::Matrix::from_rows(sub.module.len(), rows),
    )
    .expect("corestriction is well defined")
}

fn p_adic_valuation(mut x: Int, p: Int) -> u32 {
    let mut v = 0;
    while x != 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// A depth at which the kernel and image chains of the torsion part are
/// guaranteed to have stabilized, with room for a full period of the
/// stabilized tail: `2ck + k + 2` with `k` generators and `c` the least
/// power of `P` absorbing the exponent at every prime of `P`.
pub fn sufficient_depth(a: &Module, s: &MultSubsetSeq) -> usize {
    let e = a.exponent();
    let p = s.radical_product();
    let mut c = 1u32;
    if let Some(fs) = crate::scalar::factorize(e.unsigned_abs(), u128::MAX) {
        for (q, _) in fs {
            let q = q as Int;
            let vp = p_adic_valuation(p, q);
            if vp > 0 {
                c = c.max(p_adic_valuation(e, q).div_ceil(vp));
            }
        }
    }
    let k = s.generators().len();
    2 * c as usize * k + k + 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub depth: usize,
    pub lim1: Lim1Verdict,
    /// `Lambda = A / t_n A` at the first `n` with `t_n A = t_n P A`.
    pub lambda: Vec<Int>,
    pub lambda_stable_at: usize,
    /// `tower_lim` of the quotient tower agrees with `lambda`.
    pub lim_agrees: bool,
    /// `Delta`, known whenever `lim^1` is certified zero.
    pub delta: Option<Vec<Int>>,
}

impl DeltaReport {
    pub fn delta_is_lambda(&self) -> bool {
        self.lim1.is_zero() && self.delta.as_ref() == Some(&self.lambda)
    }
}

pub fn delta_truncated(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<DeltaReport, CompletionError> {
    let lim1 = tower_lim1(&torsion_tower(a, s, depth)?);
    let n0 = quotient_stable_at(a, s, depth)?;
    let t = s.t(n0, modulus(a))?;
    let lambda = quotient(a, multiple(a, t).inclusion.matrix()).module.invariant_factors();
    // from n0 on the stages are constant and the maps repeat with period k
    let lim_agrees = match tower_lim_windowed(&quotient_tower(a, s, depth)?.tail(n0), s.generators().len()) {
        Ok((m, _)) => m.invariant_factors() == lambda,
        Err(_) => false,
    };
    Ok(DeltaReport {
        depth,
        delta: lim1.is_zero().then(|| lambda.clone()),
        lim1,
        lambda,
        lambda_stable_at: n0,
        lim_agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    /// `(s, sM = M)` for each generator.
    pub per_generator: Vec<(Int, bool)>,
    pub divisible: bool,
    /// `h`-divisibility, equal to divisibility for countable subsets.
    pub h_divisible: bool,
    pub h_divisible_lemma_backed: bool,
    /// `t_n M` once constant, the maximal `S`-divisible submodule.
    pub maximal_divisible: Vec<Int>,
    pub stabilized_at: usize,
}

pub fn divisibility_report(m: &Module, s: &MultSubsetSeq, depth: usize) -> Result<DivisibilityReport, CompletionError> {
    if !m.is_finite() {
        return Err(CompletionError::NotFinite);
    }
    let per_generator: Vec<(Int, bool)> = s
        .generators()
        .iter()
        .map(|&g| (g, ModMap::scalar(m, &g).is_surjective()))
        .collect();
    let divisible = per_generator.iter().all(|(_, d)| *d);
    let n0 = quotient_stable_at(m, s, depth)?;
    let maximal_divisible = multiple(m, s.t(n0, modulus(m))?).module.invariant_factors();
    Ok(DivisibilityReport {
        per_generator,
        divisible,
        h_divisible: divisible,
        h_divisible_lemma_backed: true,
        maximal_divisible,
        stabilized_at: n0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Joint {
    pub name: String,
    pub exact: bool,
    pub detail: String,
}

/// `0 -> Hom(S^-1R/R, A) -> Hom(S^-1R, A) -> A -> Delta(A) -> Ext^1(S^-1R, A) -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiveTermReport {
    pub hom_quotient: Vec<Int>,
    pub hom_localization: Vec<Int>,
    pub module: Vec<Int>,
    pub delta: Vec<Int>,
    pub ext1: Vec<Int>,
    pub joints: Vec<Joint>,
    pub exact: bool,
}

pub fn five_term_check(a: &Module, s: &MultSubsetSeq, depth: usize) -> Result<FiveTermReport, CompletionError> {
    if !a.is_finite() {
        return Err(CompletionError::NotFinite);
    }
    // Hom(S^-1R/R, A) = lim of the torsion tower
    let from = torsion_submodule(a, s, depth)?.stabilized_at;
    let (h1, _) = tower_lim_windowed(&torsion_tower(a, s, depth)?.tail(from), s.generators().len())?;
    // Hom(S^-1R, A) = the part of A on which every generator is invertible
    let e = coprime_part(a.exponent(), s.radical_product());
    let h2 = annihilated(a, e);
    let report = delta_truncated(a, s, depth)?;
    let delta = report.delta.clone().ok_or(CompletionError::NotStabilized {
        what: "lim^1 certificate".into(),
        depth,
    })?;
    let t = s.t(report.lambda_stable_at, modulus(a))?;
    let kernel = multiple(a, t);
    let proj = quotient(a, kernel.inclusion.matrix());
    let ext1 = proj.projection.cokernel().module.invariant_factors();
    let joints = vec![
        Joint {
            name: "Hom(S^-1R/R, A)".into(),
            exact: h1.is_zero(),
            detail: "the limit of the torsion tower injects".into(),
        },
        Joint {
            name: "Hom(S^-1R, A)".into(),
            exact: h2.inclusion.is_injective() && h1.is_zero(),
            detail: "evaluation at 1 is injective with kernel the image of the previous term".into(),
        },
        Joint {
            name: "A".into(),
            exact: same(a, &h2, &kernel),
            detail: format!("image of Hom(S^-1R, A) equals t_{} A", report.lambda_stable_at),
        },
        Joint {
            name: "Delta(A)".into(),
            exact: proj.module.invariant_factors() == delta,
            detail: "A -> A / t_n A has image ker(Delta(A) -> Ext^1)".into(),
        },
    ];
    Ok(FiveTermReport {
        hom_quotient: h1.invariant_factors(),
        hom_localization: h2.module.invariant_factors(),
        module: a.invariant_factors(),
        delta,
        exact: joints.iter().all(|j| j.exact),
        ext1,
        joints,
    })
}

/// `Ext^1(Z[1/m], C) = 0` for `C = Z^r + finite` exactly when `r = 0` or
/// `m = 1`.
pub fn is_weakly_cotorsion_fg(c: &Module, m: Int) -> bool {
    c.free_rank() == 0 || m.abs() == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WcEvidence {
    /// `S^-1R = R`, so the Ext group vanishes.
    TrivialSubset,
    /// The five-term sequence of a finite `C`; `Ext^1` is its last term.
    FiveTerm { ext1: Vec<Int>, exact: bool },
    /// Orders of `C / m^n C`, strictly growing, so `C -> Lambda(C)` is
    /// not onto.
    LambdaGrowth { orders: Vec<Int> },
}

impl WcEvidence {
    /// The verdict the evidence supports.
    pub fn supports(&self) -> Option<bool> {
        match self {
            WcEvidence::TrivialSubset => Some(true),
            WcEvidence::FiveTerm { ext1, exact } => exact.then(|| ext1.is_empty()),
            WcEvidence::LambdaGrowth { orders } => orders.windows(2).all(|w| w[0] < w[1]).then_some(false),
        }
    }
}

pub fn weakly_cotorsion_evidence(c: &Module, m: Int, depth: usize) -> Result<WcEvidence, CompletionError> {
    if m.abs() == 1 {
        return Ok(WcEvidence::TrivialSubset);
    }
    let s = MultSubsetSeq::new(BaseRing::Integers, vec![m])?;
    if c.is_finite() {
        let r = five_term_check(c, &s, depth.max(sufficient_depth(c, &s)))?;
        return Ok(WcEvidence::FiveTerm { ext1: r.ext1, exact: r.exact });
    }
    let tower = quotient_tower(c, &s, depth)?;
    let orders = tower
        .stages()
        .iter()
        .map(|q| q.card().ok_or(CompletionError::NotFinite))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WcEvidence::LambdaGrowth { orders })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(g: &[Int]) -> MultSubsetSeq {
        MultSubsetSeq::over_integers(g).unwrap()
    }

    fn m(orders: &[i64]) -> Module {
        Module::from_i64(orders)
    }

    #[test]
    fn gamma_examples() {
        let g = torsion_submodule(&m(&[12]), &seq(&[2]), 12).unwrap();
        assert_eq!(g.invariant_factors(), vec![4]);
        assert_eq!(g.witness, 4);
        assert!(torsion_submodule(&m(&[0]), &seq(&[2, 3]), 12).unwrap().invariant_factors().is_empty());
        assert!(torsion_submodule(&m(&[9]), &seq(&[2]), 12).unwrap().invariant_factors().is_empty());
    }

    #[test]
    fn quotient_tower_examples() {
        let t = quotient_tower(&m(&[12]), &seq(&[2]), 4).unwrap();
        assert_eq!(t.summary().stages, vec![vec![2], vec![4], vec![4], vec![4]]);
        assert!(t.maps().iter().all(|f| f.is_surjective()));
        let t = quotient_tower(&m(&[0]), &seq(&[2]), 3).unwrap();
        assert_eq!(t.summary().stages, vec![vec![2], vec![4], vec![8]]);
        let t = quotient_tower(&m(&[5]), &seq(&[2]), 3).unwrap();
        assert!(t.stages().iter().all(|q| q.is_zero()));
    }

    #[test]
    fn torsion_tower_examples() {
        let t = torsion_tower(&m(&[12]), &seq(&[2]), 3).unwrap();
        assert_eq!(t.summary().stages, vec![vec![2], vec![4], vec![4]]);
        let t = torsion_tower(&m(&[8, 2]), &seq(&[2]), 4).unwrap();
        let orders: Vec<Int> = t.stages().iter().map(|k| k.card().unwrap()).collect();
        assert_eq!(orders, vec![4, 8, 16, 16]);
        let t = torsion_tower(&m(&[0, 0]), &seq(&[6]), 3).unwrap();
        assert!(t.stages().iter().all(|k| k.is_zero()));
    }

    #[test]
    fn lim_of_quotient_tower() {
        let (lim, cert) = tower_lim_windowed(&quotient_tower(&m(&[12]), &seq(&[2]), 6).unwrap(), 1).unwrap();
        assert_eq!(lim.invariant_factors(), vec![4]);
        assert_eq!(cert.stable_from, 2);
    }

    #[test]
    fn delta_examples() {
        let r = delta_truncated(&m(&[12]), &seq(&[2]), 12).unwrap();
        assert_eq!(r.delta, Some(vec![4]));
        assert!(r.lim_agrees && r.delta_is_lambda());
        let r = delta_truncated(&m(&[5]), &seq(&[2]), 12).unwrap();
        assert_eq!(r.delta, Some(vec![]));
        let r = delta_truncated(&m(&[0]), &seq(&[1]), 12).unwrap();
        assert_eq!(r.delta, Some(vec![]));
        assert!(delta_truncated(&m(&[0]), &seq(&[2]), 12).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let r = divisibility_report(&m(&[5]), &seq(&[2]), 12).unwrap();
        assert!(r.divisible && r.h_divisible);
        let r = divisibility_report(&m(&[4]), &seq(&[2]), 12).unwrap();
        assert!(!r.divisible && r.maximal_divisible.is_empty());
        let r = divisibility_report(&m(&[12]), &seq(&[2]), 12).unwrap();
        assert!(!r.divisible);
        assert_eq!(r.maximal_divisible, vec![3]);
    }

    #[test]
    fn five_term_examples() {
        let r = five_term_check(&m(&[8]), &seq(&[2]), 12).unwrap();
        assert!(r.hom_quotient.is_empty() && r.hom_localization.is_empty());
        assert_eq!(r.delta, vec![8]);
        assert!(r.ext1.is_empty() && r.exact);
        let r = five_term_check(&m(&[5]), &seq(&[2]), 12).unwrap();
        assert_eq!(r.hom_localization, vec![5]);
        assert!(r.delta.is_empty() && r.ext1.is_empty() && r.exact);
        let r = five_term_check(&Module::zero(), &seq(&[2]), 12).unwrap();
        assert!(r.exact && r.delta.is_empty());
    }

    #[test]
    fn weakly_cotorsion_examples() {
        for (c, k, want) in [(m(&[36]), 2, true), (m(&[0]), 2, false), (m(&[0]), 1, true)] {
            assert_eq!(is_weakly_cotorsion_fg(&c, k), want);
            let ev = weakly_cotorsion_evidence(&c, k, 12).unwrap();
            assert_eq!(ev.supports(), Some(want));
        }
    }

    #[test]
    fn depth_bound_covers_slow_stabilization() {
        let a = m(&[64]);
        let s = seq(&[2, 3, 5]);
        assert!(delta_truncated(&a, &s, 12).is_err());
        let d = sufficient_depth(&a, &s);
        assert!(delta_truncated(&a, &s, d).unwrap().delta_is_lambda());
    }

    #[test]
    fn torsion_limit_ignores_pauses_before_gamma() {
        // ker t_3 = 2A is hit by the images of six later stages, then by none
        let a = m(&[4]);
        let s = seq(&[3, 5, 6]);
        let r = five_term_check(&a, &s, sufficient_depth(&a, &s)).unwrap();
        assert!(r.exact, "{r:?}");
        assert!(r.hom_quotient.is_empty());
    }
}
