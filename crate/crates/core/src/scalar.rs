//! Integer scalar abstraction.
//!
//! Everything in [`crate::linalg`] and [`crate::abelian`] is written against
//! [`IntScalar`], so the same code runs on machine integers (`i64`, `i128`)
//! and on arbitrary precision [`num_bigint::BigInt`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type usable as a matrix entry.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer out of range for scalar type")
    }

    /// Extended gcd with a nonnegative gcd: `x*a + y*b = g`.
    fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        if e.gcd.is_negative() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        }
    }

    /// Least nonnegative residue; `m == 0` means no reduction.
    fn reduce(&self, m: &Self) -> Self {
        if m.is_zero() {
            self.clone()
        } else {
            self.mod_floor(&m.abs())
        }
    }

    fn to_i128_lossy(&self) -> i128 {
        self.to_i128().expect("scalar does not fit in i128")
    }
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// `gcd` with the conventions `gcd(0, b) = |b|`.
pub fn gcd<T: IntScalar>(a: &T, b: &T) -> T {
    a.gcd(b)
}

pub fn lcm<T: IntScalar>(a: &T, b: &T) -> T {
    if a.is_zero() || b.is_zero() {
        T::zero()
    } else {
        a.lcm(b)
    }
}

/// Prime factorization of a positive machine integer by trial division.
/// Returns `None` when a cofactor above `bound` remains unsplit.
pub fn factorize(n: u128, bound: u128) -> Option<Vec<(u128, u32)>> {
    assert!(n > 0, "factorize expects a positive integer");
    let mut out = Vec::new();
    let mut m = n;
    let mut p: u128 = 2;
    while p * p <= m {
        if p > bound {
            return None;
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Some(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn xgcd_normalizes_sign() {
        let (g, x, y) = i128::xgcd(&-12, &18);
        assert_eq!(g, 6);
        assert_eq!(x * -12 + y * 18, 6);
        let (g, x, y) = BigInt::xgcd(&BigInt::from(-4), &BigInt::from(-6));
        assert_eq!(g, BigInt::from(2));
        assert_eq!(x * BigInt::from(-4) + y * BigInt::from(-6), BigInt::from(2));
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1, 10), Some(vec![]));
        assert_eq!(factorize(360, 10), Some(vec![(2, 3), (3, 2), (5, 1)]));
        assert_eq!(factorize(97, 100), Some(vec![(97, 1)]));
        // 1000003 * 1000033 needs trial divisors past 10^6
        assert_eq!(factorize(1_000_003 * 1_000_033, 1000), None);
    }

    #[test]
    fn reduce_is_nonnegative() {
        assert_eq!((-7i64).reduce(&5), 3);
        assert_eq!((-7i64).reduce(&0), -7);
    }
}
