//! The two base principal ideal domains: `Z` and `F_p[t]`.

use std::fmt;

use crate::scalar::{factorize, is_prime};

/// A Euclidean domain with canonical associates and bounded factorization.
pub trait Pid: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    /// Euclidean division, `b != 0`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Canonical associate: positive integers, monic polynomials.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;

    fn rem(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div_rem(a, b).1
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.normalize(&x)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.normalize(a) == self.one()
    }

    /// Prime factorization of a nonzero element up to units, or `None` when
    /// it cannot be completed within `bound`.
    fn factor(&self, a: &Self::Elem, bound: u128) -> Option<Vec<(Self::Elem, u32)>>;

    /// Size of the residue field at a prime element, `None` on overflow.
    fn residue_field_size(&self, prime: &Self::Elem) -> Option<u128>;

    fn show(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Pid for Integers {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a + b
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a * b
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
    fn div_rem(&self, a: &i128, b: &i128) -> (i128, i128) {
        (a.div_euclid(*b), a.rem_euclid(*b))
    }
    fn normalize(&self, a: &i128) -> i128 {
        a.abs()
    }
    fn factor(&self, a: &i128, bound: u128) -> Option<Vec<(i128, u32)>> {
        let n = a.unsigned_abs();
        assert!(n > 0, "cannot factor zero");
        factorize(n, bound).map(|v| v.into_iter().map(|(p, e)| (p as i128, e)).collect())
    }
    fn residue_field_size(&self, prime: &i128) -> Option<u128> {
        Some(prime.unsigned_abs())
    }
    fn show(&self, a: &i128) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

/// `F_p[t]`; elements are dense coefficient vectors, low degree first,
/// without trailing zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpT {
    p: u64,
}

impl FpT {
    /// Panics unless `p` is a prime below `2^32`.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p) && p < 1 << 32, "F_p[t] needs a prime p < 2^32, got {p}");
        FpT { p }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Builds an element from arbitrary integer coefficients.
    pub fn elem(&self, coeffs: &[i64]) -> Vec<u64> {
        let p = self.p as i64;
        let mut v: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect();
        trim(&mut v);
        v
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The monic polynomials of degree `k`, in lexicographic order.
    fn monic_of_degree(&self, k: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
        let count = (self.p as u128).pow(k as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(k + 1);
            for _ in 0..k {
                v.push((idx % self.p as u128) as u64);
                idx /= self.p as u128;
            }
            v.push(1);
            v
        })
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Pid for FpT {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![]
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        trim(&mut v);
        v
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + self.mulmod(*x, *y)) % self.p;
            }
        }
        trim(&mut v);
        v
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|c| (self.p - c) % self.p).collect()
    }
    fn div_rem(&self, a: &Vec<u64>, b: &Vec<u64>) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero");
        let lead_inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut q = vec![0u64; a.len().saturating_sub(db)];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = self.mulmod(*r.last().unwrap(), lead_inv);
            q[shift] = c;
            for (i, bc) in b.iter().enumerate() {
                let sub = self.mulmod(c, *bc);
                r[shift + i] = (r[shift + i] + self.p - sub) % self.p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }
    fn normalize(&self, a: &Vec<u64>) -> Vec<u64> {
        match a.last() {
            None => vec![],
            Some(&lead) => {
                let inv = self.inv(lead);
                a.iter().map(|&c| self.mulmod(c, inv)).collect()
            }
        }
    }
    fn factor(&self, a: &Vec<u64>, bound: u128) -> Option<Vec<(Vec<u64>, u32)>> {
        assert!(!a.is_empty(), "cannot factor zero");
        let mut rest = self.normalize(a);
        let mut out = Vec::new();
        let mut k = 1;
        while 2 * k < rest.len() {
            if (self.p as u128).checked_pow(k as u32).is_none_or(|n| n > bound) {
                return None;
            }
            for f in self.monic_of_degree(k).collect::<Vec<_>>() {
                let mut e = 0;
                while rest.len() > f.len() - 1 {
                    let (q, r) = self.div_rem(&rest, &f);
                    if !r.is_empty() {
                        break;
                    }
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((f, e));
                }
            }
            k += 1;
        }
        if rest.len() > 1 {
            out.push((rest, 1));
        }
        Some(out)
    }
    fn residue_field_size(&self, prime: &Vec<u64>) -> Option<u128> {
        (self.p as u128).checked_pow(prime.len() as u32 - 1)
    }
    fn show(&self, a: &Vec<u64>) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, *c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
    fn name(&self) -> String {
        format!("F_{}[t]", self.p)
    }
}
