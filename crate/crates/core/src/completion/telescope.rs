//! The telescope complex `x_0, ..., x_{n-1} -> y_1, ..., y_n` with
//! `y_k = x_k - s_k x_{k-1}`, and its homotopy equivalence with
//! `R --t_n--> R`.
//!
//! Matrices act on row vectors, and a composite "first `A`, then `B`" is
//! the product `A * B`.

use serde::Serialize;

use super::{annihilated, multiple, CompletionError, MultSubsetSeq};
use crate::abelian::quotient;
use crate::{Int, Matrix, ModMap, Module};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TelescopeComplex {
    pub n: usize,
    pub schedule: Vec<Int>,
    pub t_n: Int,
    /// Row `i` is the image of `x_i`, column `k - 1` the coefficient of
    /// `y_k`: `-s_{i+1}` on the diagonal and `1` below it.
    pub differential: Matrix,
    /// Chain map to `R -> R`: `x -> x_0`.
    pub phi0: Matrix,
    /// `y -> -(s_n...s_2 y_1 + s_n...s_3 y_2 + ... + y_n)`.
    pub phi1: Matrix,
    /// Chain map from `R -> R`: `r -> (t_0 r, t_1 r, ..., t_{n-1} r)`.
    pub psi0: Matrix,
    /// `r -> -r y_n`.
    pub psi1: Matrix,
    /// `h(y)_k = sum_{j <= k} s_{j+1}...s_k y_j`, with
    /// `1 - psi0 phi0 = d h` and `1 - psi1 phi1 = h d` on the two sides.
    pub homotopy: Matrix,
}

fn checked_product(xs: &[Int]) -> Result<Int, CompletionError> {
    xs.iter()
        .try_fold(1 as Int, |acc, &x| acc.checked_mul(x))
        .ok_or(CompletionError::Overflow(xs.len()))
}

pub fn telescope_complex(s: &MultSubsetSeq, n: usize) -> Result<TelescopeComplex, CompletionError> {
    assert!(n >= 1, "telescope complexes start at n = 1");
    let sched: Vec<Int> = (1..=n).map(|k| s.s(k)).collect();
    // s_{a..=b} with 1-based indices, empty when a > b
    let prod = |a: usize, b: usize| -> Result<Int, CompletionError> {
        if a > b {
            Ok(1)
        } else {
            checked_product(&sched[a - 1..b])
        }
    };
    let mut d = Matrix::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = -sched[i];
        if i + 1 < n {
            d[(i + 1, i)] = 1;
        }
    }
    let mut phi0 = Matrix::zeros(n, 1);
    phi0[(0, 0)] = 1;
    let mut phi1 = Matrix::zeros(n, 1);
    let mut psi0 = Matrix::zeros(1, n);
    let mut psi1 = Matrix::zeros(1, n);
    psi1[(0, n - 1)] = -1;
    let mut h = Matrix::zeros(n, n);
    for k in 1..=n {
        phi1[(k - 1, 0)] = -prod(k + 1, n)?;
        psi0[(0, k - 1)] = prod(1, k - 1)?;
    }
    for k in 0..n {
        for j in 1..=k {
            h[(j - 1, k)] = prod(j + 1, k)?;
        }
    }
    Ok(TelescopeComplex {
        n,
        t_n: prod(1, n)?,
        schedule: sched,
        differential: d,
        phi0,
        phi1,
        psi0,
        psi1,
        homotopy: h,
    })
}

impl TelescopeComplex {
    /// Checks the chain map identities, `phi psi = 1`, and the homotopy
    /// `psi phi ~ 1`.
    pub fn check_homotopy_equivalence(&self) -> bool {
        let d = &self.differential;
        let t = Matrix::from_rows(1, vec![vec![self.t_n]]);
        let id = Matrix::identity(self.n);
        let one = Matrix::identity(1);
        let sub = |a: &Matrix, b: &Matrix| a == b;
        let minus = |a: &Matrix, b: &Matrix| {
            let mut out = a.clone();
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    out[(i, j)] = a[(i, j)] - b[(i, j)];
                }
            }
            out
        };
        sub(&(d * &self.phi1), &(&self.phi0 * &t))
            && sub(&(&t * &self.psi1), &(&self.psi0 * d))
            && sub(&(&self.psi0 * &self.phi0), &one)
            && sub(&(&self.psi1 * &self.phi1), &one)
            && sub(&minus(&id, &(&self.phi0 * &self.psi0)), &(d * &self.homotopy))
            && sub(&minus(&id, &(&self.phi1 * &self.psi1)), &(&self.homotopy * d))
    }

    /// `Hom(T^1, A) -> Hom(T^0, A)`, `beta -> beta ∘ d`, on `A^n`.
    pub fn dual_map(&self, a: &Module) -> ModMap {
        let n = self.n;
        let k = a.len();
        let mut orders = Vec::with_capacity(n * k);
        for _ in 0..n {
            orders.extend_from_slice(a.orders());
        }
        let an = Module::new(orders);
        let mut m = Matrix::zeros(n * k, n * k);
        for i in 0..n {
            for kk in 0..n {
                let c = self.differential[(i, kk)];
                if c != 0 {
                    for e in 0..k {
                        m[(kk * k + e, i * k + e)] = c;
                    }
                }
            }
        }
        ModMap::new(an.clone(), an, m).expect("integer block maps are well defined")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TelescopeReport {
    pub n: usize,
    pub t_n: Int,
    pub h0: Vec<Int>,
    pub h1: Vec<Int>,
    pub quotient: Vec<Int>,
    pub torsion: Vec<Int>,
    pub homotopy_equivalence: bool,
    pub h0_matches: bool,
    pub h1_matches: bool,
    pub pass: bool,
}

/// Homology of `Hom(T_n, A)` against `A / t_n A` and the `t_n`-torsion.
pub fn telescope_homology_check(
    s: &MultSubsetSeq,
    n: usize,
    a: &Module,
) -> Result<TelescopeReport, CompletionError> {
    let tc = telescope_complex(s, n)?;
    let dual = tc.dual_map(a);
    let h0 = dual.cokernel().module.invariant_factors();
    let h1 = dual.kernel().module.invariant_factors();
    let t_mod = if a.is_finite() { a.exponent() } else { 0 };
    let t = s.t(n, t_mod)?;
    let quotient = quotient(a, multiple(a, t).inclusion.matrix()).module.invariant_factors();
    let torsion = annihilated(a, t).module.invariant_factors();
    let homotopy_equivalence = tc.check_homotopy_equivalence();
    let h0_matches = h0 == quotient;
    let h1_matches = h1 == torsion;
    Ok(TelescopeReport {
        n,
        t_n: tc.t_n,
        pass: homotopy_equivalence && h0_matches && h1_matches,
        h0,
        h1,
        quotient,
        torsion,
        homotopy_equivalence,
        h0_matches,
        h1_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(g: &[Int]) -> MultSubsetSeq {
        MultSubsetSeq::over_integers(g).unwrap()
    }

    #[test]
    fn differential_shapes() {
        let c = telescope_complex(&seq(&[5]), 1).unwrap();
        assert_eq!(c.differential.to_rows(), vec![vec![-5]]);
        let c = telescope_complex(&seq(&[2, 3]), 2).unwrap();
        assert_eq!(c.differential.to_rows(), vec![vec![-2, 0], vec![1, -3]]);
        assert_eq!(c.t_n, 6);
        let c = telescope_complex(&seq(&[2]), 3).unwrap();
        assert_eq!(c.differential.to_rows(), vec![vec![-2, 0, 0], vec![1, -2, 0], vec![0, 1, -2]]);
    }

    #[test]
    fn witnesses_form_a_homotopy_equivalence() {
        for n in 1..=6 {
            assert!(telescope_complex(&seq(&[2, 3, 5]), n).unwrap().check_homotopy_equivalence());
        }
    }

    #[test]
    fn homology_examples() {
        let r = telescope_homology_check(&seq(&[2, 3]), 2, &Module::from_i64(&[10])).unwrap();
        assert_eq!((r.h0.clone(), r.h1.clone()), (vec![2], vec![2]));
        assert!(r.pass);
        let r = telescope_homology_check(&seq(&[2, 3]), 3, &Module::from_i64(&[0])).unwrap();
        assert_eq!((r.h0.clone(), r.h1.clone()), (vec![12], vec![]));
        assert!(r.pass);
        let r = telescope_homology_check(&seq(&[7]), 4, &Module::zero()).unwrap();
        assert!(r.h0.is_empty() && r.h1.is_empty() && r.pass);
    }
}
