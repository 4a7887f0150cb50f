//! Limits and first derived limits of truncated towers.

use serde::Serialize;

use super::{same, CompletionError, Tower};
use crate::abelian::{submodule, Submodule};
use crate::{Int, Matrix, ModMap, Module};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimCertificate {
    /// First stage `n` from which the stable image system has isomorphic
    /// transitions.
    pub stable_from: usize,
    /// For each stage `n` with a stable image, the stage `m >= n` where the
    /// image chain `im(M_m -> M_n)` stopped shrinking.
    pub image_stable_at: Vec<Option<usize>>,
}

/// For each stage, the first `m` with `im(M_m -> M_n)` unchanged over the
/// next `window` transitions.
fn stable_images(t: &Tower, window: usize) -> Vec<Option<(usize, Submodule<Int>)>> {
    let depth = t.depth();
    (1..=depth)
        .map(|n| {
            let mut f = ModMap::identity(t.stage(n));
            let mut img = f.image();
            let (mut since, mut run) = (n, 0);
            for m in n..depth {
                f = t.transition(m).then(&f).expect("tower maps compose");
                let next = f.image();
                if same(t.stage(n), &img, &next) {
                    run += 1;
                    if run == window {
                        return Some((since, img));
                    }
                } else {
                    (since, run) = (m + 1, 0);
                    img = next;
                }
            }
            None
        })
        .collect()
}

/// `lim M_n` as the stable image at the first stage from which the stable
/// image system has isomorphic transitions, declared once two consecutive
/// stable images agree.
pub fn tower_lim(t: &Tower) -> Result<(Module, LimCertificate), CompletionError> {
    tower_lim_windowed(t, 1)
}

/// [`tower_lim`] for towers whose transitions are eventually periodic:
/// an image chain counts as stable only after `window` unchanged steps.
pub fn tower_lim_windowed(t: &Tower, window: usize) -> Result<(Module, LimCertificate), CompletionError> {
    let images = stable_images(t, window.max(1));
    let not_stable = || CompletionError::NotStabilized {
        what: "stable image system".into(),
        depth: t.depth(),
    };
    let last = images.iter().take_while(|i| i.is_some()).count();
    if last < 2 {
        return Err(not_stable());
    }
    let iso_at = |n: usize| -> bool {
        let (_, lower) = images[n - 1].as_ref().unwrap();
        let (_, upper) = images[n].as_ref().unwrap();
        let restricted = upper.inclusion.then(t.transition(n)).expect("composable");
        let img = submodule(t.stage(n), restricted.matrix());
        restricted.is_injective() && same(t.stage(n), &img, lower)
    };
    let mut stable_from = None;
    for n in (1..last).rev() {
        if iso_at(n) {
            stable_from = Some(n);
        } else {
            break;
        }
    }
    let n0 = stable_from.ok_or_else(not_stable)?;
    let module = images[n0 - 1].as_ref().unwrap().1.module.clone();
    let certificate = LimCertificate {
        stable_from: n0,
        image_stable_at: images.iter().map(|i| i.as_ref().map(|(m, _)| *m)).collect(),
    };
    Ok((module, certificate))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lim1Certificate {
    /// All transitions are surjective.
    Surjective,
    /// All stages are finite, so image chains stabilize.
    FiniteStages,
    /// Every image chain visibly stabilized within the depth.
    StableImages { stable_at: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Lim1Verdict {
    Zero { certificate: Lim1Certificate },
    /// No Mittag-Leffler certificate; `stage` is a stage whose image chain
    /// was still shrinking, with the orders of the successive quotients
    /// `M_n / im(M_m -> M_n)`.
    Unknown { stage: usize, chain: Vec<Vec<Int>> },
}

impl Lim1Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, Lim1Verdict::Zero { .. })
    }
}

/// `lim^1` is only ever certified to vanish, never claimed nonzero.
pub fn tower_lim1(t: &Tower) -> Lim1Verdict {
    if t.maps().iter().all(|f| f.is_surjective()) {
        return Lim1Verdict::Zero {
            certificate: Lim1Certificate::Surjective,
        };
    }
    if t.stages().iter().all(|m| m.is_finite()) {
        return Lim1Verdict::Zero {
            certificate: Lim1Certificate::FiniteStages,
        };
    }
    let images = stable_images(t, 1);
    let depth = t.depth();
    // the top stage has no further maps to observe
    match images[..depth - 1].iter().position(|i| i.is_none()) {
        None => Lim1Verdict::Zero {
            certificate: Lim1Certificate::StableImages {
                stable_at: images[..depth - 1].iter().map(|i| i.as_ref().unwrap().0).collect(),
            },
        },
        Some(k) => {
            let n = k + 1;
            let chain = (n..=depth)
                .map(|m| {
                    let img = t.composite(m, n).image();
                    crate::abelian::quotient(t.stage(n), img.inclusion.matrix())
                        .module
                        .invariant_factors()
                })
                .collect();
            Lim1Verdict::Unknown { stage: n, chain }
        }
    }
}

/// Tower `Z/a_1 <- Z/a_2 <- ...` with the maps `1 -> c_n`.
pub fn cyclic_tower(orders: &[Int], multipliers: &[Int]) -> Result<Tower, CompletionError> {
    let stages: Vec<Module> = orders.iter().map(|&a| Module::cyclic(a)).collect();
    let maps = multipliers
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            ModMap::new(stages[i + 1].clone(), stages[i].clone(), Matrix::from_rows(1, vec![vec![c]]))
                .map_err(|e| CompletionError::BadTower(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Tower::new(stages, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_tower_limit() {
        let a = Module::from_i64(&[3]);
        let t = Tower::constant(&a, &ModMap::identity(&a), 4).unwrap();
        let (lim, cert) = tower_lim(&t).unwrap();
        assert!(lim.is_isomorphic(&a));
        assert_eq!(cert.stable_from, 1);
        assert_eq!(tower_lim1(&t), Lim1Verdict::Zero { certificate: Lim1Certificate::Surjective });
    }

    #[test]
    fn growing_tower_does_not_stabilize() {
        let t = cyclic_tower(&[2, 4, 8], &[1, 1]).unwrap();
        assert!(matches!(tower_lim(&t), Err(CompletionError::NotStabilized { .. })));
    }

    #[test]
    fn shrinking_images_over_z_are_unknown() {
        let t = cyclic_tower(&[0, 0, 0, 0], &[2, 2, 2]).unwrap();
        match tower_lim1(&t) {
            Lim1Verdict::Unknown { stage, chain } => {
                assert_eq!(stage, 1);
                assert_eq!(chain, vec![vec![], vec![2], vec![4], vec![8]]);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn pausing_chains_need_a_window() {
        // Z/2 with maps alternating 3 and 2: the image pauses, then vanishes
        let t = cyclic_tower(&[2; 8], &[3, 2, 3, 2, 3, 2, 3]).unwrap();
        assert!(tower_lim_windowed(&t, 2).unwrap().0.is_zero());
    }

    #[test]
    fn eventually_zero_maps_have_zero_limit() {
        // Z/2 <-2- Z/4 <-2- Z/4 <-2- Z/4 <-2- Z/4 as kernels of powers of 2 in Z/12
        let t = cyclic_tower(&[2, 4, 4, 4, 4, 4], &[1, 2, 2, 2, 2]).unwrap();
        let (lim, _) = tower_lim(&t).unwrap();
        assert!(lim.is_zero());
        assert!(tower_lim1(&t).is_zero());
    }
}
