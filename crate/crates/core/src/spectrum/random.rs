//! Seeded random ranked posets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PrimePoset;

/// A ranked poset of dimension exactly `dim` with at most `max_primes`
/// primes. Every prime of level `h > 0` covers between one and three
/// primes of level `h - 1`, and occasionally lies over a prime two levels
/// down as well, so the level of a prime is its height.
pub fn random_ranked_poset(seed: u64, dim: usize, max_primes: usize) -> PrimePoset {
    assert!(max_primes > dim, "need at least one prime per level");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_level = (max_primes / (dim + 1)).clamp(1, 30);
    let mut levels: Vec<Vec<String>> = Vec::new();
    let mut relations = Vec::new();
    for h in 0..=dim {
        let count = rng.gen_range(1..=per_level);
        let names: Vec<String> = (0..count).map(|i| format!("p{h}_{i:02}")).collect();
        if h > 0 {
            let prev = &levels[h - 1];
            for name in &names {
                let k = rng.gen_range(1..=prev.len().min(3));
                for i in sample(&mut rng, prev.len(), k) {
                    relations.push((prev[i].clone(), name.clone()));
                }
                if h > 1 && rng.gen_bool(0.2) {
                    let skip = &levels[h - 2];
                    let i = rng.gen_range(0..skip.len());
                    relations.push((skip[i].clone(), name.clone()));
                }
            }
        }
        levels.push(names);
    }
    let primes = levels.into_iter().flatten().collect();
    PrimePoset::from_relations(primes, &relations).expect("levels form an order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_heights() {
        for seed in 0..20 {
            for dim in 0..=6 {
                let p = random_ranked_poset(seed, dim, 200);
                assert_eq!(p.dimension(), dim);
                assert!(p.len() <= 200);
                for i in 0..p.len() {
                    let level: usize = p.name(i)[1..].split('_').next().unwrap().parse().unwrap();
                    assert_eq!(p.height(i), level);
                }
            }
        }
    }

    #[test]
    fn seeded_output_is_stable() {
        assert_eq!(random_ranked_poset(7, 4, 120), random_ranked_poset(7, 4, 120));
    }
}
