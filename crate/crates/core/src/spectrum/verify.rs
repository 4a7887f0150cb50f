//! Spectra of the rings `R_{J,s}` and the distinguishing-family verifier.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{DistinguishingFamily, MultSubsetModel, PrimePoset, PrimeSet, SpectrumError};

/// Generator index chosen in each subset outside `J`.
pub type Choice = BTreeMap<usize, usize>;

/// Above this many `(J, s)` pairs the antichain check switches from plain
/// enumeration to a search over inclusion-maximal loci.
pub const EXHAUSTIVE_LIMIT: u128 = 50_000;

fn rjs_set(
    poset: &PrimePoset,
    family: &DistinguishingFamily,
    hits: &[PrimeSet],
    j: &[usize],
    s: &Choice,
) -> Result<PrimeSet, SpectrumError> {
    let m = family.count();
    let mut in_j = vec![false; m];
    for &k in j {
        if k >= m {
            return Err(SpectrumError::BadChoice(format!("subset index {k} out of range")));
        }
        in_j[k] = true;
    }
    let mut set = poset.all();
    for k in 0..m {
        if in_j[k] {
            if s.contains_key(&k) {
                return Err(SpectrumError::BadChoice(format!("subset {k} is inverted")));
            }
            set = set.minus(&hits[k]);
        } else {
            let g = *s
                .get(&k)
                .ok_or_else(|| SpectrumError::BadChoice(format!("no element chosen in subset {k}")))?;
            let elem = family.subsets[k].generators.get(g).ok_or_else(|| {
                SpectrumError::BadChoice(format!("subset {k} has no generator {g}"))
            })?;
            set = set.and(&elem.locus);
        }
    }
    if let Some(&k) = s.keys().find(|&&k| k >= m) {
        return Err(SpectrumError::BadChoice(format!("subset index {k} out of range")));
    }
    Ok(set)
}

fn all_hits(poset: &PrimePoset, family: &DistinguishingFamily) -> Vec<PrimeSet> {
    family.subsets.iter().map(|s| s.hits(poset)).collect()
}

/// Primes `p` missing every `S_j` with `j ∈ J` and containing every chosen
/// `s_k` with `k ∉ J`, as a subposet with recomputed heights.
pub fn spectrum_of_r_js(
    poset: &PrimePoset,
    family: &DistinguishingFamily,
    j: &[usize],
    s: &Choice,
) -> Result<PrimePoset, SpectrumError> {
    let hits = all_hits(poset, family);
    Ok(poset.restrict(&rjs_set(poset, family, &hits, j, s)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseVerdict {
    pub pass: bool,
    pub pairs_checked: usize,
    /// `(p, q, j)`: subset `j` misses `p` and meets `q`.
    pub witnesses: Vec<(usize, usize, usize)>,
    pub failure: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    MaximalLoci,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainFailure {
    pub inverted: Vec<usize>,
    pub choice: Choice,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainVerdict {
    pub pass: bool,
    pub mode: Mode,
    pub index_sets: u64,
    pub rings_examined: u64,
    pub failure: Option<AntichainFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishingReport {
    pub pairwise: PairwiseVerdict,
    pub antichain: AntichainVerdict,
    pub agree: bool,
}

impl DistinguishingReport {
    pub fn pass(&self) -> bool {
        self.pairwise.pass && self.antichain.pass && self.agree
    }
}

fn pairwise(poset: &PrimePoset, hits: &[PrimeSet]) -> PairwiseVerdict {
    let mut witnesses = Vec::new();
    let mut failure = None;
    let mut pairs_checked = 0;
    for p in 0..poset.len() {
        for q in poset.strictly_above(p).iter() {
            pairs_checked += 1;
            match (0..hits.len()).find(|&j| !hits[j].contains(p) && hits[j].contains(q)) {
                Some(j) => witnesses.push((p, q, j)),
                None => {
                    failure.get_or_insert((p, q));
                }
            }
        }
    }
    PairwiseVerdict {
        pass: failure.is_none(),
        pairs_checked,
        witnesses,
        failure,
    }
}

fn members(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Enumerates every choice function for one `J`.
fn exhaustive_for(
    poset: &PrimePoset,
    family: &DistinguishingFamily,
    hits: &[PrimeSet],
    mask: u64,
) -> (u64, Option<AntichainFailure>) {
    let m = family.count();
    let inverted = members(mask, m);
    let outside: Vec<usize> = (0..m).filter(|&k| mask >> k & 1 == 0).collect();
    if outside.iter().any(|&k| family.subsets[k].is_empty()) {
        return (0, None);
    }
    let mut digits = vec![0usize; outside.len()];
    let mut examined = 0;
    loop {
        let choice: Choice = outside.iter().zip(&digits).map(|(&k, &g)| (k, g)).collect();
        let set = rjs_set(poset, family, hits, &inverted, &choice).expect("valid choice");
        examined += 1;
        if let Some(pair) = poset.comparable_pair(&set) {
            return (
                examined,
                Some(AntichainFailure {
                    inverted,
                    choice,
                    pair,
                }),
            );
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return (examined, None);
            }
            digits[i] += 1;
            if digits[i] < family.subsets[outside[i]].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Distinct inclusion-maximal loci of a subset's generators.
fn maximal_loci(subset: &MultSubsetModel) -> Vec<(usize, PrimeSet)> {
    let gens = &subset.generators;
    let mut out: Vec<(usize, PrimeSet)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let dominated = gens.iter().enumerate().any(|(k, h)| {
            g.locus.is_subset(&h.locus) && (g.locus != h.locus || k < i)
        });
        if !dominated {
            out.push((i, g.locus.clone()));
        }
    }
    out
}

struct Search<'a> {
    poset: &'a PrimePoset,
    cands: Vec<(usize, &'a [(usize, PrimeSet)])>,
    seen: Vec<HashSet<PrimeSet>>,
    picks: Vec<usize>,
    examined: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, current: PrimeSet) -> Option<(usize, usize)> {
        self.examined += 1;
        // an antichain stays an antichain under further intersection
        let pair = self.poset.comparable_pair(&current)?;
        if depth == self.cands.len() {
            return Some(pair);
        }
        for c in 0..self.cands[depth].1.len() {
            let (g, ref locus) = self.cands[depth].1[c];
            let locus: &PrimeSet = locus;
            let next = current.and(locus);
            if !self.seen[depth].insert(next.clone()) {
                continue;
            }
            self.picks.push(g);
            if let Some(found) = self.run(depth + 1, next) {
                return Some(found);
            }
            self.picks.pop();
        }
        None
    }
}

/// Searches the choices for one `J` using only generators with maximal
/// loci: shrinking a chosen locus only shrinks the resulting spectrum.
fn maximal_for(
    poset: &PrimePoset,
    family: &DistinguishingFamily,
    hits: &[PrimeSet],
    loci: &[Vec<(usize, PrimeSet)>],
    mask: u64,
) -> (u64, Option<AntichainFailure>) {
    let m = family.count();
    let inverted = members(mask, m);
    let outside: Vec<usize> = (0..m).filter(|&k| mask >> k & 1 == 0).collect();
    if outside.iter().any(|&k| family.subsets[k].is_empty()) {
        return (0, None);
    }
    let start = inverted
        .iter()
        .fold(poset.all(), |acc, &k| acc.minus(&hits[k]));
    let mut search = Search {
        poset,
        cands: outside
            .iter()
            .map(|&k| (k, loci[k].as_slice()))
            .collect(),
        seen: vec![HashSet::new(); outside.len()],
        picks: Vec::new(),
        examined: 0,
    };
    let found = search.run(0, start);
    let failure = found.map(|pair| AntichainFailure {
        inverted,
        choice: search
            .cands
            .iter()
            .map(|(k, _)| *k)
            .zip(search.picks.iter().copied())
            .collect(),
        pair,
    });
    (search.examined, failure)
}

fn antichain(poset: &PrimePoset, family: &DistinguishingFamily, hits: &[PrimeSet]) -> AntichainVerdict {
    let m = family.count();
    assert!(m < 40, "too many subsets to enumerate index sets");
    let total: u128 = family
        .subsets
        .iter()
        .map(|s| s.len() as u128 + 1)
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .unwrap_or(u128::MAX);
    let mode = if total <= EXHAUSTIVE_LIMIT {
        Mode::Exhaustive
    } else {
        Mode::MaximalLoci
    };
    let index_sets = 1u64 << m;
    let loci: Vec<Vec<(usize, PrimeSet)>> = match mode {
        Mode::Exhaustive => Vec::new(),
        Mode::MaximalLoci => family.subsets.iter().map(maximal_loci).collect(),
    };
    let results: Vec<(u64, Option<AntichainFailure>)> = (0..index_sets)
        .into_par_iter()
        .map(|mask| match mode {
            Mode::Exhaustive => exhaustive_for(poset, family, hits, mask),
            Mode::MaximalLoci => maximal_for(poset, family, hits, &loci, mask),
        })
        .collect();
    let rings_examined = results.iter().map(|r| r.0).sum();
    let failure = results.into_iter().find_map(|r| r.1);
    AntichainVerdict {
        pass: failure.is_none(),
        mode,
        index_sets,
        rings_examined,
        failure,
    }
}

/// Checks the pairwise separation condition and, independently, that every
/// `R_{J,s}` has a spectrum without comparable primes.
pub fn verify_distinguishing(poset: &PrimePoset, family: &DistinguishingFamily) -> DistinguishingReport {
    let hits = all_hits(poset, family);
    let pairwise = pairwise(poset, &hits);
    let antichain = antichain(poset, family, &hits);
    let agree = pairwise.pass == antichain.pass;
    DistinguishingReport {
        pairwise,
        antichain,
        agree,
    }
}

pub fn subsets_spectrum_equivalent(poset: &PrimePoset, s: &MultSubsetModel, t: &MultSubsetModel) -> bool {
    s.hits(poset) == t.hits(poset)
}

/// Keeps, for each prime met by `s`, the first generator lying in it.
pub fn shrink_to_witnesses(poset: &PrimePoset, s: &MultSubsetModel) -> MultSubsetModel {
    let mut keep: Vec<usize> = Vec::new();
    for p in s.hits(poset).iter() {
        let g = s
            .generators
            .iter()
            .position(|g| g.locus.contains(p))
            .expect("met prime has a generator");
        if !keep.contains(&g) {
            keep.push(g);
        }
    }
    keep.sort_unstable();
    MultSubsetModel::new(keep.into_iter().map(|g| s.generators[g].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::tests::poset;
    use super::super::{build_mu_family, build_pair_dim2, AbstractElement};
    use super::*;

    fn diamond() -> PrimePoset {
        poset(
            &["q", "p1", "p2", "m"],
            &[("q", "p1"), ("q", "p2"), ("p1", "m"), ("p2", "m")],
        )
    }

    fn single(poset: &PrimePoset, locus: &[usize]) -> MultSubsetModel {
        MultSubsetModel::new(vec![AbstractElement::new(
            poset,
            "g",
            PrimeSet::from_indices(poset.len(), locus.iter().copied()),
        )
        .unwrap()])
    }

    #[test]
    fn empty_family_fails_on_chain() {
        let p = poset(&["p", "q"], &[("p", "q")]);
        let fam = DistinguishingFamily {
            subsets: vec![],
            dimension: 1,
        };
        let r = verify_distinguishing(&p, &fam);
        assert_eq!(r.pairwise.failure, Some((0, 1)));
        assert!(!r.antichain.pass);
        assert!(r.agree);
    }

    #[test]
    fn single_generator_at_top_passes() {
        let p = poset(&["p", "q"], &[("p", "q")]);
        let fam = DistinguishingFamily {
            subsets: vec![single(&p, &[1])],
            dimension: 1,
        };
        let r = verify_distinguishing(&p, &fam);
        assert!(r.pass());
        assert_eq!(r.pairwise.witnesses, vec![(0, 1, 0)]);
    }

    #[test]
    fn diamond_subspectra() {
        let p = diamond();
        let (s, t) = build_pair_dim2(&p, &p.default_order()).unwrap();
        let fam = DistinguishingFamily {
            subsets: vec![s, t],
            dimension: 2,
        };
        assert!(verify_distinguishing(&p, &fam).pass());
        let all_j = spectrum_of_r_js(&p, &fam, &[0, 1], &Choice::new()).unwrap();
        assert_eq!(all_j.names(), &["q".to_string()]);
        for g in 0..fam.subsets[1].len() {
            let choice: Choice = [(1, g)].into_iter().collect();
            let sub = spectrum_of_r_js(&p, &fam, &[0], &choice).unwrap();
            assert!(sub.comparable_pair(&sub.all()).is_none());
        }
        let bad: Choice = [(1, 99)].into_iter().collect();
        assert!(matches!(spectrum_of_r_js(&p, &fam, &[0], &bad), Err(SpectrumError::BadChoice(_))));
    }

    #[test]
    fn disjoint_choices_give_zero_ring() {
        let p = poset(&["a", "b"], &[]);
        let fam = DistinguishingFamily {
            subsets: vec![single(&p, &[0]), single(&p, &[1])],
            dimension: 0,
        };
        let choice: Choice = [(0, 0), (1, 0)].into_iter().collect();
        assert!(spectrum_of_r_js(&p, &fam, &[], &choice).unwrap().is_empty());
    }

    #[test]
    fn maximal_loci_mode_matches_exhaustive_mode() {
        let p = diamond();
        let fam = build_mu_family(&p, &p.default_order()).unwrap();
        let hits = all_hits(&p, &fam);
        let broken = DistinguishingFamily {
            subsets: vec![fam.subsets[0].clone()],
            dimension: 2,
        };
        let broken_hits = all_hits(&p, &broken);
        let loci: Vec<_> = fam.subsets.iter().map(maximal_loci).collect();
        let broken_loci: Vec<_> = broken.subsets.iter().map(maximal_loci).collect();
        for mask in 0..4 {
            assert_eq!(
                exhaustive_for(&p, &fam, &hits, mask).1.is_some(),
                maximal_for(&p, &fam, &hits, &loci, mask).1.is_some()
            );
        }
        for mask in 0..2 {
            assert_eq!(
                exhaustive_for(&p, &broken, &broken_hits, mask).1.is_some(),
                maximal_for(&p, &broken, &broken_hits, &broken_loci, mask).1.is_some()
            );
        }
    }

    #[test]
    fn shrinking_keeps_spectrum() {
        let p = poset(&["p", "q", "m"], &[("p", "q"), ("q", "m")]);
        let many = MultSubsetModel::new(vec![single(&p, &[2]).generators[0].clone(); 5]);
        let shrunk = shrink_to_witnesses(&p, &many);
        assert_eq!(shrunk.len(), 1);
        assert!(subsets_spectrum_equivalent(&p, &many, &shrunk));
        assert!(shrink_to_witnesses(&p, &MultSubsetModel::default()).is_empty());
        let two = MultSubsetModel::new(vec![
            single(&p, &[1, 2]).generators[0].clone(),
            single(&p, &[2]).generators[0].clone(),
        ]);
        let shrunk = shrink_to_witnesses(&p, &two);
        assert!(shrunk.len() <= 2);
        assert!(subsets_spectrum_equivalent(&p, &two, &shrunk));
        assert!(!subsets_spectrum_equivalent(&p, &single(&p, &[2]), &single(&p, &[1, 2])));
    }
}
