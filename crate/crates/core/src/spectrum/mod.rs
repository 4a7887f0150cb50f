//! Finite models of prime spectra and distinguishing families of
//! multiplicative subsets.
//!
//! A [`PrimePoset`] stores the strict containment order between primes
//! together with heights. Ring elements are modeled generically: an
//! [`AbstractElement`] records the set of primes it lies in, which is
//! always an upward closed set.

mod bits;
mod construct;
mod io;
mod random;
mod verify;

use std::collections::BTreeMap;

use thiserror::Error;

pub use bits::PrimeSet;
pub use construct::{
    avoidance_element, build_mu_family, build_one_dimensional, build_pair_dim2, build_wave, mu,
};
pub use io::{FamilyDocument, PosetDocument};
pub use random::random_ranked_poset;
pub use verify::{
    shrink_to_witnesses, spectrum_of_r_js, subsets_spectrum_equivalent, verify_distinguishing,
    AntichainVerdict, Choice, DistinguishingReport, Mode, PairwiseVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("duplicate prime identifier `{0}`")]
    DuplicatePrime(String),
    #[error("unknown prime identifier `{0}`")]
    UnknownPrime(String),
    #[error("containment relation is not a strict partial order at `{0}`")]
    NotAnOrder(String),
    #[error("height of `{prime}` is {actual}, not {claimed}")]
    HeightMismatch {
        prime: String,
        claimed: usize,
        actual: usize,
    },
    #[error("cannot avoid `{blocking}`: it contains the target `{target}`")]
    AvoidanceImpossible { target: String, blocking: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: usize },
    #[error("wave parameter must be at least 2, got {0}")]
    InvalidWave(usize),
    #[error("enumeration order is not a permutation of the primes: {0}")]
    BadOrder(String),
    #[error("bad generator choice: {0}")]
    BadChoice(String),
    #[error("element locus is not upward closed at `{0}`")]
    NotUpwardClosed(String),
    #[error("malformed document: {0}")]
    Parse(String),
}

/// A finite poset of primes ordered by strict containment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePoset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    above: Vec<PrimeSet>,
    below: Vec<PrimeSet>,
    height: Vec<usize>,
}

impl PrimePoset {
    /// Builds the poset generated by `relations` (pairs `p ⊊ q`) under
    /// transitive closure.
    pub fn from_relations(
        primes: Vec<String>,
        relations: &[(String, String)],
    ) -> Result<Self, SpectrumError> {
        let index = Self::index_names(&primes)?;
        let n = primes.len();
        let mut succ = vec![Vec::new(); n];
        for (p, q) in relations {
            let (a, b) = (Self::lookup(&index, p)?, Self::lookup(&index, q)?);
            succ[a].push(b);
        }
        let mut above = vec![PrimeSet::empty(n); n];
        for start in 0..n {
            let mut stack: Vec<usize> = succ[start].clone();
            while let Some(x) = stack.pop() {
                if x == start {
                    return Err(SpectrumError::NotAnOrder(primes[start].clone()));
                }
                if !above[start].contains(x) {
                    above[start].insert(x);
                    stack.extend(succ[x].iter().copied());
                }
            }
        }
        Ok(Self::assemble(primes, index, above))
    }

    /// Builds a poset from a complete strict order and claimed heights,
    /// rejecting anything that is not irreflexive and transitive or whose
    /// heights disagree with the longest chains.
    pub fn validated(
        primes: Vec<String>,
        lt: &[(String, String)],
        heights: &BTreeMap<String, usize>,
    ) -> Result<Self, SpectrumError> {
        let index = Self::index_names(&primes)?;
        let n = primes.len();
        let mut above = vec![PrimeSet::empty(n); n];
        for (p, q) in lt {
            let (a, b) = (Self::lookup(&index, p)?, Self::lookup(&index, q)?);
            if a == b {
                return Err(SpectrumError::NotAnOrder(p.clone()));
            }
            above[a].insert(b);
        }
        for a in 0..n {
            for b in above[a].iter() {
                if !above[b].is_subset(&above[a]) || above[b].contains(a) {
                    return Err(SpectrumError::NotAnOrder(primes[a].clone()));
                }
            }
        }
        let poset = Self::assemble(primes, index, above);
        for (name, &claimed) in heights {
            let i = Self::lookup(&poset.index, name)?;
            if poset.height[i] != claimed {
                return Err(SpectrumError::HeightMismatch {
                    prime: name.clone(),
                    claimed,
                    actual: poset.height[i],
                });
            }
        }
        if let Some(missing) = poset.names.iter().find(|p| !heights.contains_key(*p)) {
            return Err(SpectrumError::Parse(format!("no height given for `{missing}`")));
        }
        Ok(poset)
    }

    fn index_names(primes: &[String]) -> Result<BTreeMap<String, usize>, SpectrumError> {
        let mut index = BTreeMap::new();
        for (i, p) in primes.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(SpectrumError::DuplicatePrime(p.clone()));
            }
        }
        Ok(index)
    }

    fn lookup(index: &BTreeMap<String, usize>, name: &str) -> Result<usize, SpectrumError> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| SpectrumError::UnknownPrime(name.to_string()))
    }

    fn assemble(names: Vec<String>, index: BTreeMap<String, usize>, above: Vec<PrimeSet>) -> Self {
        let n = names.len();
        let mut below = vec![PrimeSet::empty(n); n];
        for (a, up) in above.iter().enumerate() {
            for b in up.iter() {
                below[b].insert(a);
            }
        }
        // a prime strictly below p has strictly fewer primes below it
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&p| below[p].len());
        let mut height = vec![0; n];
        for &p in &topo {
            height[p] = below[p].iter().map(|q| height[q] + 1).max().unwrap_or(0);
        }
        PrimePoset {
            names,
            index,
            above,
            below,
            height,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn id(&self, name: &str) -> Result<usize, SpectrumError> {
        Self::lookup(&self.index, name)
    }

    pub fn height(&self, p: usize) -> usize {
        self.height[p]
    }

    /// Krull dimension of the model: the maximal height, 0 when empty.
    pub fn dimension(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    /// `p ⊊ q`.
    pub fn lt(&self, p: usize, q: usize) -> bool {
        self.above[p].contains(q)
    }

    pub fn strictly_above(&self, p: usize) -> &PrimeSet {
        &self.above[p]
    }

    pub fn strictly_below(&self, p: usize) -> &PrimeSet {
        &self.below[p]
    }

    /// All primes containing `p`, including `p` itself.
    pub fn up_closure(&self, p: usize) -> PrimeSet {
        let mut s = self.above[p].clone();
        s.insert(p);
        s
    }

    pub fn all(&self) -> PrimeSet {
        PrimeSet::full(self.len())
    }

    pub fn empty_set(&self) -> PrimeSet {
        PrimeSet::empty(self.len())
    }

    pub fn of_height(&self, h: usize) -> PrimeSet {
        PrimeSet::from_indices(self.len(), (0..self.len()).filter(|&p| self.height[p] == h))
    }

    /// Ascending height, then identifier order.
    pub fn default_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            self.height[a]
                .cmp(&self.height[b])
                .then_with(|| self.names[a].cmp(&self.names[b]))
        });
        order
    }

    /// Checks that `order` lists every prime exactly once.
    pub fn check_order(&self, order: &[usize]) -> Result<(), SpectrumError> {
        let mut seen = self.empty_set();
        for &p in order {
            if p >= self.len() {
                return Err(SpectrumError::BadOrder(format!("index {p} out of range")));
            }
            if seen.contains(p) {
                return Err(SpectrumError::BadOrder(format!("`{}` repeated", self.names[p])));
            }
            seen.insert(p);
        }
        if seen.len() != self.len() {
            return Err(SpectrumError::BadOrder("some primes are missing".into()));
        }
        Ok(())
    }

    pub fn is_upward_closed(&self, set: &PrimeSet) -> bool {
        set.iter().all(|p| self.above[p].is_subset(set))
    }

    /// The first comparable pair `p ⊊ q` inside `set`, if any.
    pub fn comparable_pair(&self, set: &PrimeSet) -> Option<(usize, usize)> {
        set.iter()
            .find_map(|p| self.above[p].and(set).iter().next().map(|q| (p, q)))
    }

    /// Induced subposet on `set` with heights recomputed.
    pub fn restrict(&self, set: &PrimeSet) -> PrimePoset {
        let keep: Vec<usize> = set.iter().collect();
        let names: Vec<String> = keep.iter().map(|&p| self.names[p].clone()).collect();
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let above = keep
            .iter()
            .map(|&p| {
                PrimeSet::from_indices(keep.len(), self.above[p].and(set).iter().map(|q| pos[&q]))
            })
            .collect();
        Self::assemble(names, index, above)
    }

    /// Cover relations of the Hasse diagram, as index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.above[p].iter() {
                let between = self.above[p].and(&self.below[q]);
                if between.is_empty() {
                    out.push((p, q));
                }
            }
        }
        out
    }

    pub fn names_of(&self, set: &PrimeSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|p| self.names[p].clone()).collect();
        v.sort();
        v
    }
}

/// A ring element represented by the primes that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractElement {
    pub label: String,
    pub locus: PrimeSet,
}

impl AbstractElement {
    pub fn new(
        poset: &PrimePoset,
        label: impl Into<String>,
        locus: PrimeSet,
    ) -> Result<Self, SpectrumError> {
        if let Some(p) = locus.iter().find(|&p| !poset.above[p].is_subset(&locus)) {
            return Err(SpectrumError::NotUpwardClosed(poset.names[p].clone()));
        }
        Ok(AbstractElement {
            label: label.into(),
            locus,
        })
    }

    /// Generic element of `p`: lies exactly in the primes containing `p`.
    pub fn generic(poset: &PrimePoset, p: usize) -> Self {
        AbstractElement {
            label: poset.names[p].clone(),
            locus: poset.up_closure(p),
        }
    }
}

/// A multiplicative subset given by generators. A product lies in a prime
/// iff some factor does, so the subset meets `p` iff a generator's locus
/// contains `p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultSubsetModel {
    pub generators: Vec<AbstractElement>,
}

impl MultSubsetModel {
    pub fn new(generators: Vec<AbstractElement>) -> Self {
        MultSubsetModel { generators }
    }

    pub fn intersects(&self, p: usize) -> bool {
        self.generators.iter().any(|g| g.locus.contains(p))
    }

    /// The set of primes this subset meets.
    pub fn hits(&self, poset: &PrimePoset) -> PrimeSet {
        self.generators
            .iter()
            .fold(poset.empty_set(), |acc, g| acc.or(&g.locus))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishingFamily {
    pub subsets: Vec<MultSubsetModel>,
    pub dimension: usize,
}

impl DistinguishingFamily {
    pub fn count(&self) -> usize {
        self.subsets.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poset(primes: &[&str], covers: &[(&str, &str)]) -> PrimePoset {
        PrimePoset::from_relations(
            primes.iter().map(|s| s.to_string()).collect(),
            &covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn heights_follow_longest_chain() {
        let p = poset(&["q", "a", "m", "b"], &[("q", "a"), ("a", "m"), ("q", "m"), ("b", "m")]);
        assert_eq!(p.height(p.id("q").unwrap()), 0);
        assert_eq!(p.height(p.id("b").unwrap()), 0);
        assert_eq!(p.height(p.id("m").unwrap()), 2);
        assert_eq!(p.dimension(), 2);
        assert_eq!(p.covers().len(), 3);
    }

    #[test]
    fn cycles_and_duplicates_rejected() {
        let cyc = PrimePoset::from_relations(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(matches!(cyc, Err(SpectrumError::NotAnOrder(_))));
        let dup = PrimePoset::from_relations(vec!["a".into(), "a".into()], &[]);
        assert!(matches!(dup, Err(SpectrumError::DuplicatePrime(_))));
    }

    #[test]
    fn validated_checks_transitivity_and_heights() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let lt = vec![("x".to_string(), "y".to_string()), ("y".to_string(), "z".to_string())];
        let h: BTreeMap<String, usize> =
            [("x", 0), ("y", 1), ("z", 2)].iter().map(|(a, b)| (a.to_string(), *b)).collect();
        assert!(matches!(
            PrimePoset::validated(names.clone(), &lt, &h),
            Err(SpectrumError::NotAnOrder(_))
        ));
        let mut full = lt.clone();
        full.push(("x".into(), "z".into()));
        assert!(PrimePoset::validated(names.clone(), &full, &h).is_ok());
        let mut bad = h.clone();
        bad.insert("z".into(), 1);
        assert!(matches!(
            PrimePoset::validated(names, &full, &bad),
            Err(SpectrumError::HeightMismatch { .. })
        ));
    }

    #[test]
    fn restrict_recomputes_heights() {
        let p = poset(&["q", "a", "m"], &[("q", "a"), ("a", "m")]);
        let sub = p.restrict(&PrimeSet::from_indices(3, [1, 2]));
        assert_eq!(sub.names(), &["a".to_string(), "m".to_string()]);
        assert_eq!(sub.height(1), 1);
        assert_eq!(sub.comparable_pair(&sub.all()), Some((0, 1)));
    }

    #[test]
    fn element_locus_must_be_upward_closed() {
        let p = poset(&["q", "a"], &[("q", "a")]);
        assert!(AbstractElement::new(&p, "x", PrimeSet::from_indices(2, [0])).is_err());
        assert!(AbstractElement::new(&p, "x", PrimeSet::from_indices(2, [1])).is_ok());
    }
}
