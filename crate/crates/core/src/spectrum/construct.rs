//! Inductive constructions of multiplicative subsets via prime avoidance.

use super::{
    AbstractElement, DistinguishingFamily, MultSubsetModel, PrimePoset, PrimeSet, SpectrumError,
};

/// `d + (d-2) + (d-4) + ...` over the positive terms.
pub fn mu(d: u64) -> u64 {
    // sum of d - 2i for i = 0..=d/2
    let k = d / 2;
    (k + 1) * d - k * (k + 1)
}

/// Generic element of `target` avoiding every prime in `forbidden`.
pub fn avoidance_element(
    poset: &PrimePoset,
    target: usize,
    forbidden: &PrimeSet,
) -> Result<AbstractElement, SpectrumError> {
    let locus = poset.up_closure(target);
    if let Some(q) = locus.and(forbidden).iter().next() {
        return Err(SpectrumError::AvoidanceImpossible {
            target: poset.name(target).to_string(),
            blocking: poset.name(q).to_string(),
        });
    }
    Ok(AbstractElement {
        label: poset.name(target).to_string(),
        locus,
    })
}

fn one_dimensional_part(poset: &PrimePoset) -> Result<MultSubsetModel, SpectrumError> {
    let minimal = poset.of_height(0);
    let mut gens = Vec::new();
    for p in poset.default_order() {
        if poset.height(p) == 1 {
            gens.push(avoidance_element(poset, p, &minimal)?);
        }
    }
    Ok(MultSubsetModel::new(gens))
}

/// One generator for each height-1 prime, avoiding all minimal primes.
pub fn build_one_dimensional(poset: &PrimePoset) -> Result<MultSubsetModel, SpectrumError> {
    if poset.dimension() != 1 {
        return Err(SpectrumError::DimensionMismatch {
            expected: "1".into(),
            found: poset.dimension(),
        });
    }
    one_dimensional_part(poset)
}

/// Height-1 primes meeting `u`.
fn u_primes(poset: &PrimePoset, u: &MultSubsetModel) -> PrimeSet {
    u.hits(poset).and(&poset.of_height(1))
}

/// Two subsets such that every prime of height `h` meets exactly `h` of
/// them, for posets of dimension at most 2.
pub fn build_pair_dim2(
    poset: &PrimePoset,
    order: &[usize],
) -> Result<(MultSubsetModel, MultSubsetModel), SpectrumError> {
    if poset.dimension() > 2 {
        return Err(SpectrumError::DimensionMismatch {
            expected: "at most 2".into(),
            found: poset.dimension(),
        });
    }
    poset.check_order(order)?;
    let minimal = poset.of_height(0);
    let mut s = MultSubsetModel::default();
    let mut t = MultSubsetModel::default();
    for &p in order {
        match poset.height(p) {
            1 => {
                if !s.intersects(p) && !t.intersects(p) {
                    let forbidden = minimal.or(&u_primes(poset, &t));
                    s.generators.push(avoidance_element(poset, p, &forbidden)?);
                }
            }
            2 => {
                if !s.intersects(p) {
                    let forbidden = minimal.or(&u_primes(poset, &t));
                    s.generators.push(avoidance_element(poset, p, &forbidden)?);
                }
                if !t.intersects(p) {
                    let forbidden = minimal.or(&u_primes(poset, &s));
                    t.generators.push(avoidance_element(poset, p, &forbidden)?);
                }
            }
            _ => {}
        }
        debug_assert!(u_primes(poset, &s).and(&u_primes(poset, &t)).is_empty());
    }
    Ok((s, t))
}

/// `l` subsets distinguishing the primes of height `l` and `l - 1` from
/// each other and from all primes of smaller height.
pub fn build_wave(
    poset: &PrimePoset,
    l: usize,
    order: &[usize],
) -> Result<Vec<MultSubsetModel>, SpectrumError> {
    if l < 2 {
        return Err(SpectrumError::InvalidWave(l));
    }
    if l > poset.dimension() {
        return Err(SpectrumError::DimensionMismatch {
            expected: format!("at least {l}"),
            found: poset.dimension(),
        });
    }
    poset.check_order(order)?;
    let targets: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&p| poset.height(p) == l || poset.height(p) + 1 == l)
        .collect();
    let n = poset.len();
    let mut sets = vec![MultSubsetModel::default(); l];
    let mut hits = vec![PrimeSet::empty(n); l];
    let meet_count = |hits: &[PrimeSet], p: usize| hits.iter().filter(|h| h.contains(p)).count();
    while let Some(&next) = targets.iter().find(|&&p| meet_count(&hits, p) != poset.height(p)) {
        let k = (0..l)
            .find(|&j| !hits[j].contains(next))
            .expect("a prime meeting fewer sets than its height misses some set");
        let mut forbidden = PrimeSet::empty(n);
        for p in 0..n {
            let h = poset.height(p);
            if h < l && meet_count(&hits, p) == h {
                forbidden.insert(p);
            }
        }
        let elem = avoidance_element(poset, next, &forbidden)?;
        hits[k] = hits[k].or(&elem.locus);
        sets[k].generators.push(elem);
        debug_assert!((0..n).all(|p| {
            let h = poset.height(p);
            h > l || meet_count(&hits, p) <= h
        }));
    }
    Ok(sets)
}

/// `mu(d)` subsets distinguishing every strict containment of primes:
/// independent waves for `l = d, d-2, ...` and, for odd `d`, one more
/// subset separating height 1 from height 0.
pub fn build_mu_family(
    poset: &PrimePoset,
    order: &[usize],
) -> Result<DistinguishingFamily, SpectrumError> {
    poset.check_order(order)?;
    let d = poset.dimension();
    let mut subsets = Vec::new();
    let mut l = d;
    while l >= 2 {
        subsets.extend(build_wave(poset, l, order)?);
        l -= 2;
    }
    if l == 1 {
        subsets.push(one_dimensional_part(poset)?);
    }
    Ok(DistinguishingFamily {
        subsets,
        dimension: d,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::poset;
    use super::*;

    fn meets(sets: &[MultSubsetModel], p: usize) -> usize {
        sets.iter().filter(|s| s.intersects(p)).count()
    }

    #[test]
    fn mu_values() {
        let got: Vec<u64> = (0..=7).map(mu).collect();
        assert_eq!(got, vec![0, 1, 2, 4, 6, 9, 12, 16]);
    }

    #[test]
    fn avoidance_cases() {
        let p = poset(&["p0", "p1"], &[("p0", "p1")]);
        let e = avoidance_element(&p, 1, &PrimeSet::from_indices(2, [0])).unwrap();
        assert_eq!(e.locus, PrimeSet::from_indices(2, [1]));
        let e = avoidance_element(&p, 0, &p.empty_set()).unwrap();
        assert_eq!(e.locus, p.all());
        assert!(matches!(
            avoidance_element(&p, 0, &PrimeSet::from_indices(2, [1])),
            Err(SpectrumError::AvoidanceImpossible { .. })
        ));
    }

    #[test]
    fn one_dimensional_examples() {
        let p = poset(&["q", "p"], &[("q", "p")]);
        let s = build_one_dimensional(&p).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.generators[0].locus, PrimeSet::from_indices(2, [1]));
        let two = poset(
            &["q1", "q2", "p1", "p2"],
            &[("q1", "p1"), ("q2", "p1"), ("q1", "p2"), ("q2", "p2")],
        );
        assert_eq!(build_one_dimensional(&two).unwrap().len(), 2);
        let flat = poset(&["a", "b"], &[]);
        assert!(matches!(
            build_one_dimensional(&flat),
            Err(SpectrumError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_dim2_exact_heights_on_diamond() {
        let p = poset(
            &["q", "p1", "p2", "m"],
            &[("q", "p1"), ("q", "p2"), ("p1", "m"), ("p2", "m")],
        );
        let (s, t) = build_pair_dim2(&p, &p.default_order()).unwrap();
        let sets = [s, t];
        for x in 0..p.len() {
            assert_eq!(meets(&sets, x), p.height(x));
        }
        let single = poset(&["q"], &[]);
        let (s, t) = build_pair_dim2(&single, &[0]).unwrap();
        assert!(s.is_empty() && t.is_empty());
    }

    #[test]
    fn pair_dim2_rejects_bad_order() {
        let p = poset(&["q", "p"], &[("q", "p")]);
        assert!(matches!(build_pair_dim2(&p, &[0, 0]), Err(SpectrumError::BadOrder(_))));
    }

    #[test]
    fn wave_on_chain() {
        let p = poset(&["q", "p", "m", "M"], &[("q", "p"), ("p", "m"), ("m", "M")]);
        let sets = build_wave(&p, 3, &p.default_order()).unwrap();
        assert_eq!(sets.len(), 3);
        assert_eq!(meets(&sets, 3), 3);
        assert_eq!(meets(&sets, 2), 2);
        assert_eq!(meets(&sets, 1), 0);
        assert!(build_wave(&p, 4, &p.default_order()).is_err());
        assert!(matches!(build_wave(&p, 1, &p.default_order()), Err(SpectrumError::InvalidWave(1))));
    }

    #[test]
    fn mu_family_sizes() {
        let chain = poset(&["q", "p", "m", "M"], &[("q", "p"), ("p", "m"), ("m", "M")]);
        let fam = build_mu_family(&chain, &chain.default_order()).unwrap();
        assert_eq!(fam.count(), 4);
        let flat = poset(&["a", "b"], &[]);
        assert_eq!(build_mu_family(&flat, &flat.default_order()).unwrap().count(), 0);
    }
}
