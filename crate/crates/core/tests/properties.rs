use num_bigint::BigInt;
use proptest::prelude::*;

use sflat::abelian::BaseRing;
use sflat::completion::{quotient_tower, tower_lim, MultSubsetSeq, Tower};
use num_traits::{Signed, Zero};
use sflat::linalg::{self, smith_normal_form, Snf};
use sflat::obtain::{collapse_to_seed, random_certificate, verify_certificate};
use sflat::ring::{module_invariants, FpT, Integers, Pid, Poly};
use sflat::spectrum::{build_mu_family, build_pair_dim2, mu, random_ranked_poset, verify_distinguishing};
use sflat::{FpModule, Int, Matrix, ModMap, Module};

fn check_snf(a: &linalg::Matrix<BigInt>, s: &Snf<BigInt>) -> Result<(), TestCaseError> {
    let n = a.rows();
    prop_assert_eq!(&(&s.u * a) * &s.v, s.d.clone());
    prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
    prop_assert_eq!(&s.v * &s.v_inv, linalg::Matrix::identity(n));
    let f = s.factors();
    prop_assert!(f.iter().all(|d| d.is_positive()));
    prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    for i in 0..n {
        for j in 0..a.cols() {
            prop_assert!(i == j || s.d[(i, j)].is_zero());
        }
    }
    Ok(())
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_rows(cols, entries.chunks(cols).take(rows).map(|r| r.iter().map(|&x| x as Int).collect()).collect())
}

/// A product of random elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            let mut rows = m.to_rows();
            rows.swap(i, (i + 1) % n);
            m = Matrix::from_rows(n, rows);
        } else {
            let mut e = Matrix::identity(n);
            e[(i, j)] = c as Int;
            m = &e * &m;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn snf_of_random_8x8(entries in prop::collection::vec(-50i64..=50, 64)) {
        let a = linalg::Matrix::<BigInt>::from_rows(8, entries.chunks(8).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        check_snf(&a, &smith_normal_form(&a))?;
    }

    #[test]
    fn machine_snf_matches_big(entries in prop::collection::vec(-20i64..=20, 36)) {
        let a = matrix(6, 6, &entries);
        let s = smith_normal_form(&a);
        let big = |m: &Matrix| m.map(|&x| BigInt::from(x));
        let (ab, sb) = (big(&a), smith_normal_form(&big(&a)));
        check_snf(&ab, &Snf { d: big(&s.d), u: big(&s.u), v: big(&s.v), v_inv: big(&s.v_inv), rank: s.rank })?;
        prop_assert_eq!(big(&s.d), sb.d);
    }

    #[test]
    fn invariants_ignore_unimodular_changes(
        entries in prop::collection::vec(-10i64..=10, 12),
        row_ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..8),
        col_ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8),
        modulus in prop::sample::select(vec![0i128, 12, 30]),
    ) {
        let r = matrix(3, 4, &entries);
        let changed = &(&unimodular(3, &row_ops) * &r) * &unimodular(4, &col_ops);
        let ring = if modulus == 0 { BaseRing::Integers } else { BaseRing::ZMod(modulus) };
        prop_assert_eq!(
            module_invariants(&FpModule::new(ring.clone(), r)),
            module_invariants(&FpModule::new(ring, changed))
        );
    }

    #[test]
    fn tower_lim_is_idempotent(
        orders in prop::collection::vec(1i128..=24, 1..=3),
        gens in prop::collection::vec(prop::sample::select(vec![2i128, 3, 5, 6]), 1..=2),
    ) {
        let a = Module::new(orders);
        let s = MultSubsetSeq::over_integers(&gens).unwrap();
        let (lim, _) = tower_lim(&quotient_tower(&a, &s, 16).unwrap()).unwrap();
        let constant = Tower::constant(&lim, &ModMap::identity(&lim), 4).unwrap();
        let (again, _) = tower_lim(&constant).unwrap();
        prop_assert!(again.is_isomorphic(&lim));
    }

    #[test]
    fn collapsing_a_subtree_never_raises_the_level(seed in any::<u64>(), n in 2i128..=36) {
        let c = random_certificate(seed, n, 4);
        let level = verify_certificate(&c).unwrap();
        for v in 0..c.nodes.len() {
            let collapsed = verify_certificate(&collapse_to_seed(&c, v)).unwrap();
            prop_assert!(collapsed <= level, "node {}: {} > {}", v, collapsed, level);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn content_is_multiplicative_over_z(
        f in prop::collection::vec(-30i128..=30, 1..=6),
        g in prop::collection::vec(-30i128..=30, 1..=6),
    ) {
        let (f, g) = (Poly::new(Integers, f), Poly::new(Integers, g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g);
        prop_assert_eq!(fg.content().unwrap(), f.content().unwrap() * g.content().unwrap());
    }

    #[test]
    fn content_is_multiplicative_over_fp_t(
        f in prop::collection::vec(prop::collection::vec(-4i64..=4, 0..=3), 1..=4),
        g in prop::collection::vec(prop::collection::vec(-4i64..=4, 0..=3), 1..=4),
    ) {
        let base = FpT::new(5);
        let lift = |p: &[Vec<i64>]| Poly::new(base, p.iter().map(|c| base.elem(c)).collect());
        let (f, g) = (lift(&f), lift(&g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let want = base.normalize(&base.mul(&f.content().unwrap(), &g.content().unwrap()));
        prop_assert_eq!(f.mul(&g).content().unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mu_families_distinguish(seed in any::<u64>(), dim in 1usize..=4) {
        let p = random_ranked_poset(seed, dim, 40);
        prop_assert_eq!(p.dimension(), dim);
        let f = build_mu_family(&p, &p.default_order()).unwrap();
        prop_assert_eq!(f.count() as u64, mu(dim as u64));
        let r = verify_distinguishing(&p, &f);
        prop_assert!(r.pass(), "{:?}", r);
    }

    #[test]
    fn pairs_meet_each_prime_height_times(seed in any::<u64>(), dim in 0usize..=2) {
        let p = random_ranked_poset(seed, dim, 60);
        let (s, t) = build_pair_dim2(&p, &p.default_order()).unwrap();
        for q in 0..p.len() {
            prop_assert_eq!(s.intersects(q) as usize + t.intersects(q) as usize, p.height(q));
        }
    }
}
