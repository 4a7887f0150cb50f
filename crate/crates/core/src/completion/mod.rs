//! Countable multiplicative subsets as generator schedules, towers of
//! modules, their limits, the telescope complex and the completion
//! functors at finitely generated scale.

mod delta;
mod limits;
mod telescope;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{BaseRing, Submodule};
use crate::{Int, ModMap, Module, Ring};

pub use delta::{
    delta_truncated, divisibility_report, five_term_check, is_weakly_cotorsion_fg, quotient_tower,
    sufficient_depth, torsion_submodule, torsion_tower, weakly_cotorsion_evidence, DeltaReport,
    DivisibilityReport, FiveTermReport, Gamma, Joint, WcEvidence,
};
pub use limits::{cyclic_tower, tower_lim, tower_lim1, tower_lim_windowed, Lim1Certificate, Lim1Verdict, LimCertificate};
pub use telescope::{telescope_complex, telescope_homology_check, TelescopeComplex, TelescopeReport};

pub const DEFAULT_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("a multiplicative subset needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is zero")]
    ZeroGenerator(Int),
    #[error("{what} did not stabilize within depth {depth}")]
    NotStabilized { what: String, depth: usize },
    #[error("partial product overflows at stage {0}")]
    Overflow(usize),
    #[error("malformed tower: {0}")]
    BadTower(String),
    #[error("module must be finite")]
    NotFinite,
}

/// A multiplicative subset of `Z` or `Z/N` generated by finitely many
/// elements, traversed round-robin: `s_n` is generator `(n - 1) mod k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultSubsetSeq {
    #[serde(skip)]
    ring: Ring,
    generators: Vec<Int>,
}

impl MultSubsetSeq {
    pub fn new(ring: Ring, generators: Vec<Int>) -> Result<Self, CompletionError> {
        if generators.is_empty() {
            return Err(CompletionError::NoGenerators);
        }
        if let Some(&g) = generators.iter().find(|&&g| g == 0) {
            return Err(CompletionError::ZeroGenerator(g));
        }
        Ok(MultSubsetSeq { ring, generators })
    }

    pub fn over_integers(generators: &[Int]) -> Result<Self, CompletionError> {
        Self::new(BaseRing::Integers, generators.to_vec())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Int] {
        &self.generators
    }

    /// `s_n` for `n >= 1`.
    pub fn s(&self, n: usize) -> Int {
        assert!(n >= 1, "schedule starts at s_1");
        self.generators[(n - 1) % self.generators.len()]
    }

    /// `t_n = s_1 ... s_n`, reduced modulo `modulus` unless it is 0.
    pub fn t(&self, n: usize, modulus: Int) -> Result<Int, CompletionError> {
        let modulus = match (&self.ring, modulus) {
            (BaseRing::ZMod(m), 0) => *m,
            (_, m) => m,
        };
        let mut acc: Int = 1;
        for i in 1..=n {
            acc = acc.checked_mul(self.s(i)).ok_or(CompletionError::Overflow(i))?;
            if modulus != 0 {
                acc = acc.rem_euclid(modulus);
            }
        }
        Ok(acc)
    }

    /// Product of the distinct generators.
    pub fn radical_product(&self) -> Int {
        let mut seen = Vec::new();
        for &g in &self.generators {
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
        seen.into_iter().product()
    }
}

/// An inverse system `M_1 <- M_2 <- ... <- M_N`; `maps[i]` goes from
/// `stages[i + 1]` to `stages[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    stages: Vec<Module>,
    maps: Vec<ModMap>,
}

impl Tower {
    pub fn new(stages: Vec<Module>, maps: Vec<ModMap>) -> Result<Self, CompletionError> {
        if stages.is_empty() {
            return Err(CompletionError::BadTower("no stages".into()));
        }
        if maps.len() + 1 != stages.len() {
            return Err(CompletionError::BadTower(format!(
                "{} stages need {} maps, got {}",
                stages.len(),
                stages.len() - 1,
                maps.len()
            )));
        }
        for (i, f) in maps.iter().enumerate() {
            if f.src() != &stages[i + 1] || f.tgt() != &stages[i] {
                return Err(CompletionError::BadTower(format!("map {} has the wrong ends", i + 1)));
            }
        }
        Ok(Tower { stages, maps })
    }

    /// `depth` copies of `m` joined by `f`.
    pub fn constant(m: &Module, f: &ModMap, depth: usize) -> Result<Self, CompletionError> {
        Self::new(vec![m.clone(); depth], vec![f.clone(); depth.saturating_sub(1)])
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    /// Stage `n`, counted from 1.
    pub fn stage(&self, n: usize) -> &Module {
        &self.stages[n - 1]
    }

    /// Transition `M_{n+1} -> M_n`, counted from 1.
    pub fn transition(&self, n: usize) -> &ModMap {
        &self.maps[n - 1]
    }

    pub fn stages(&self) -> &[Module] {
        &self.stages
    }

    pub fn maps(&self) -> &[ModMap] {
        &self.maps
    }

    /// The cofinal subtower `M_from <- M_{from+1} <- ...`, with the same limit.
    pub fn tail(&self, from: usize) -> Tower {
        assert!(from >= 1 && from <= self.depth());
        Tower {
            stages: self.stages[from - 1..].to_vec(),
            maps: self.maps[from - 1..].to_vec(),
        }
    }

    /// Composite `M_m -> M_n` for `m >= n`.
    pub fn composite(&self, m: usize, n: usize) -> ModMap {
        assert!(m >= n && n >= 1 && m <= self.depth());
        let mut f = ModMap::identity(self.stage(m));
        for k in (n..m).rev() {
            f = f.then(self.transition(k)).expect("tower maps compose");
        }
        f
    }

    /// Stage by stage summary of orders and transition matrices.
    pub fn summary(&self) -> TowerSummary {
        TowerSummary {
            stages: self.stages.iter().map(|m| m.invariant_factors()).collect(),
            transitions: self.maps.iter().map(|f| f.matrix().to_rows()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerSummary {
    pub stages: Vec<Vec<Int>>,
    pub transitions: Vec<Vec<Vec<Int>>>,
}

/// `t A` as a submodule.
pub(crate) fn multiple(a: &Module, t: Int) -> Submodule<Int> {
    ModMap::scalar(a, &t).image()
}

/// Elements of `A` killed by `t`.
pub(crate) fn annihilated(a: &Module, t: Int) -> Submodule<Int> {
    ModMap::scalar(a, &t).kernel()
}

pub(crate) fn same(a: &Module, x: &Submodule<Int>, y: &Submodule<Int>) -> bool {
    crate::abelian::same_submodule(a, x.inclusion.matrix(), y.inclusion.matrix())
}
