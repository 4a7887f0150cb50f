//! Brute-force oracles, independent of the Smith normal form engines they
//! cross-check.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::standardize;
use crate::linalg;
use crate::{Int, Matrix, Module, Ring};

/// All finite abelian groups of order at most `n`, as invariant factor
/// lists `d_1 | d_2 | ...`, the trivial group first.
pub fn abelian_groups_up_to(n: Int) -> Vec<Vec<Int>> {
    fn grow(prefix: &mut Vec<Int>, order: Int, n: Int, out: &mut Vec<Vec<Int>>) {
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while order * d <= n {
            prefix.push(d);
            out.push(prefix.clone());
            grow(prefix, order * d, n, out);
            prefix.pop();
            d += last;
        }
    }
    let mut out = vec![vec![]];
    grow(&mut Vec::new(), 1, n, &mut out);
    out.sort_by_key(|g| (g.iter().product::<Int>(), g.clone()));
    out
}

/// Groups of order at most `bound` killed by `n`.
pub fn modules_over(n: Int, bound: Int) -> Vec<Vec<Int>> {
    abelian_groups_up_to(bound)
        .into_iter()
        .filter(|g| g.iter().all(|d| n % d == 0))
        .collect()
}

fn scaled(m: &Module, x: &[Int], k: Int) -> Vec<Int> {
    m.reduce(&x.iter().map(|v| v * k).collect::<Vec<_>>())
}

/// `|Ext^1(F, E)|` over `Z` or `Z/N` by counting extension classes: an
/// extension of `F = sum Z/d_i` by `E` is determined by the elements
/// `e_i = d_i f_i` for lifts `f_i`, which over `Z/N` must satisfy
/// `(N/d_i) e_i = 0`, and changing the lifts moves `e_i` by `d_i E`.
pub fn ext1_order_by_enumeration(ring: &Ring, f: &Module, e: &Module) -> u128 {
    let elems = e.elements();
    let n = ring.modulus();
    let mut order: u128 = 1;
    for &d in f.orders() {
        if d == 1 {
            continue;
        }
        let cocycles = elems
            .iter()
            .filter(|x| n == 0 || e.is_zero_element(&scaled(e, x, n / d)))
            .count() as u128;
        let mut bounds: Vec<Vec<Int>> = elems.iter().map(|x| scaled(e, x, d)).collect();
        bounds.sort();
        bounds.dedup();
        order *= cocycles / bounds.len() as u128;
    }
    order
}

/// Middle terms `(E + Z^k) / <(-e_i, d_i)>` of every extension of `F` by
/// `E`, as invariant factor lists, or `None` when there are more than `cap`
/// cocycle tuples.
pub fn middle_terms(ring: &Ring, f: &Module, e: &Module, cap: usize) -> Option<Vec<Vec<Int>>> {
    let elems = e.elements();
    let n = ring.modulus();
    let ds: Vec<Int> = f.orders().iter().copied().filter(|&d| d != 1).collect();
    let choices: Vec<Vec<&Vec<Int>>> = ds
        .iter()
        .map(|&d| {
            elems
                .iter()
                .filter(|x| n == 0 || e.is_zero_element(&scaled(e, x, n / d)))
                .collect()
        })
        .collect();
    let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()))?;
    if total > cap {
        return None;
    }
    let (a, k) = (e.len(), ds.len());
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; k];
    loop {
        let mut rel = Matrix::zeros(a + k, a + k);
        for (i, &o) in e.orders().iter().enumerate() {
            rel[(i, i)] = o;
        }
        for (i, &d) in ds.iter().enumerate() {
            for (j, x) in choices[i][idx[i]].iter().enumerate() {
                rel[(a + i, j)] = -x;
            }
            rel[(a + i, a + i)] = d;
        }
        out.push(standardize(&rel).module.invariant_factors());
        // odometer over the tuples
        let mut pos = 0;
        loop {
            if pos == k {
                return Some(out);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether `Z/d` is a direct summand of `Z/s`: maps `1 -> a` and `1 -> b`
/// with `d a = 0 (mod s)` and `a b = 1 (mod d)`.
pub fn projective_by_search(d: Int, s: Int) -> bool {
    (0..s).filter(|a| (d * a) % s == 0).any(|a| (0..d.max(1)).any(|b| (a * b - 1).rem_euclid(d) == 0))
}

/// `|Z[x] / (s, t)|` from the images of `Z[x]_{<k}` in the truncations
/// `Z[x]_{<m} / (s x^i, x^j t)`. The orders fall with `m` and rise with
/// `k`; the value is read off once they agree over a margin of degrees.
pub fn quotient_order_by_truncation(s: Int, t: &[Int]) -> Option<u128> {
    let deg = t.iter().rposition(|&c| c != 0)?;
    let order_at = |k: usize, m: usize| -> Option<u128> {
        let big = |x: Int| BigInt::from(x);
        let mut rows = Vec::new();
        for i in 0..m {
            let mut r = vec![BigInt::zero(); m];
            r[i] = big(s);
            rows.push(r);
        }
        for j in 0..m.saturating_sub(deg) {
            let mut r = vec![BigInt::zero(); m];
            for (i, &c) in t.iter().enumerate().take(deg + 1) {
                r[i + j] = big(c);
            }
            rows.push(r);
        }
        let st = standardize(&linalg::Matrix::from_rows(m, rows));
        let gens = linalg::Matrix::from_rows(st.module.len(), (0..k).map(|i| st.to_std.row_vec(i)).collect());
        let img = crate::abelian::submodule(&st.module, &gens);
        img.module.card().and_then(|c| c.to_u128())
    };
    let mut prev = None;
    for k in 1..=8 {
        let v = order_at(k, k + deg + 16)?;
        if prev == Some(v) && order_at(k, k + deg + 24) == Some(v) {
            return Some(v);
        }
        prev = Some(v);
    }
    prev
}
