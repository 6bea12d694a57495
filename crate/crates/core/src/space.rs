//! Finite-dimensional real space with an ℓ_p norm, 1 < p < ∞.
//!
//! The pairing between the space and its dual is always the standard dot
//! product; only the norms change with `p`. In this smooth, strictly convex
//! range the duality map is single-valued and equals the gradient of
//! `j(x) = ½‖x‖_p²`:
//!
//! ```text
//! J(x)_i = ‖x‖_p^(2−p) · |x_i|^(p−1) · sign(x_i),     J(0) = 0,
//! ```
//!
//! which satisfies `⟨J(x), x⟩ = ‖x‖_p²` and `‖J(x)‖_q = ‖x‖_p` with
//! `q = p/(p−1)`.

use crate::{Error, Result};

/// R^n equipped with the ℓ_p norm and its dual ℓ_q norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormedSpace {
    n: usize,
    p: f64,
    q: f64,
}

impl NormedSpace {
    /// Build a space; rejects `p` outside the open interval (1, ∞) and `n = 0`.
    pub fn new(n: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("space dimension must be at least 1".into()));
        }
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::InvalidExponent(p));
        }
        let q = p / (p - 1.0);
        debug_assert!((1.0 / p + 1.0 / q - 1.0).abs() <= 1e-12);
        Ok(Self { n, p, q })
    }

    /// Euclidean shorthand (`p = 2`).
    pub fn euclidean(n: usize) -> Self {
        Self::new(n, 2.0).expect("p = 2 is always valid")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Dual exponent `q = p/(p−1)`.
    pub fn q(&self) -> f64 {
        self.q
    }

    pub(crate) fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// ‖x‖_p.
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.norm_raw(x))
    }

    /// ‖x*‖_q (norm of the dual space).
    pub fn dual_norm(&self, xstar: &[f64]) -> Result<f64> {
        self.check(xstar)?;
        Ok(self.dual_norm_raw(xstar))
    }

    /// `j(x) = ½‖x‖_p²`.
    pub fn j_value(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.j_raw(x))
    }

    /// Duality map `J(x) = ∇j(x)`; single-valued for 1 < p < ∞, with `J(0) = 0`.
    pub fn duality_map(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok(self.duality_map_raw(x))
    }

    pub(crate) fn norm_raw(&self, x: &[f64]) -> f64 {
        if self.p == 2.0 {
            // dot-free accumulation keeps the common case fast and exact for axis vectors
            return x.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        let s: f64 = x.iter().map(|v| v.abs().powf(self.p)).sum();
        s.powf(1.0 / self.p)
    }

    pub(crate) fn dual_norm_raw(&self, xstar: &[f64]) -> f64 {
        if self.q == 2.0 {
            return xstar.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        let s: f64 = xstar.iter().map(|v| v.abs().powf(self.q)).sum();
        s.powf(1.0 / self.q)
    }

    pub(crate) fn j_raw(&self, x: &[f64]) -> f64 {
        let n = self.norm_raw(x);
        0.5 * n * n
    }

    pub(crate) fn duality_map_raw(&self, x: &[f64]) -> Vec<f64> {
        if self.p == 2.0 {
            // identity map; copying verbatim keeps J(x) bitwise equal to x
            return x.to_vec();
        }
        let nrm = self.norm_raw(x);
        if nrm == 0.0 {
            return vec![0.0; self.n];
        }
        let scale = nrm.powf(2.0 - self.p);
        x.iter()
            .map(|&v| scale * v.abs().powf(self.p - 1.0) * v.signum() + 0.0) // +0.0 normalizes -0.0
            .collect()
    }
}

/// Standard pairing `⟨a, b⟩ = Σ a_i b_i`; independent of the norm exponent.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a + b` componentwise.
pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a − b` componentwise.
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `t·a` componentwise.
pub fn scale(a: &[f64], t: f64) -> Vec<f64> {
    a.iter().map(|x| t * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_exponents_and_dims() {
        assert!(matches!(NormedSpace::new(1, 1.0), Err(Error::InvalidExponent(_))));
        assert!(matches!(NormedSpace::new(1, 0.5), Err(Error::InvalidExponent(_))));
        assert!(matches!(NormedSpace::new(1, f64::INFINITY), Err(Error::InvalidExponent(_))));
        assert!(NormedSpace::new(0, 2.0).is_err());
        let s = NormedSpace::euclidean(2);
        assert!(matches!(
            s.norm(&[1.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn euclidean_examples() {
        let s = NormedSpace::euclidean(2);
        assert_eq!(s.norm(&[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(s.j_value(&[3.0, 4.0]).unwrap(), 12.5);
        assert_eq!(s.duality_map(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
        assert_eq!(s.norm(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn p4_example() {
        let s = NormedSpace::new(2, 4.0).unwrap();
        let x = [1.0, 1.0];
        let nrm = s.norm(&x).unwrap();
        assert!((nrm - 2f64.powf(0.25)).abs() < 1e-14);

        let j = s.duality_map(&x).unwrap();
        for c in &j {
            assert!((c - 2f64.powf(-0.5)).abs() < 1e-14);
        }
        // both duality identities at this point
        assert!((dot(&j, &x) - 2f64.sqrt()).abs() < 1e-14);
        assert!((s.dual_norm(&j).unwrap() - 2f64.powf(0.25)).abs() < 1e-14);
        assert!((s.q() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn duality_map_at_zero_is_zero() {
        for p in [1.5, 2.0, 3.0, 4.0] {
            let s = NormedSpace::new(3, p).unwrap();
            assert_eq!(s.duality_map(&[0.0, 0.0, 0.0]).unwrap(), vec![0.0; 3]);
        }
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-50.0f64..50.0, n)
    }

    proptest! {
        #[test]
        fn duality_identities(p in prop::sample::select(vec![1.5f64, 2.0, 2.5, 3.0]),
                              x in vec_strategy(3)) {
            let s = NormedSpace::new(3, p).unwrap();
            let nrm = s.norm(&x).unwrap();
            let j = s.duality_map(&x).unwrap();
            let tol = 1e-10 * (1.0 + nrm * nrm);
            prop_assert!((dot(&j, &x) - nrm * nrm).abs() <= tol);
            prop_assert!((s.dual_norm(&j).unwrap() - nrm).abs() <= 1e-10 * (1.0 + nrm));
        }

        #[test]
        fn positive_homogeneity(p in prop::sample::select(vec![1.5f64, 2.0, 3.0]),
                                x in vec_strategy(2),
                                t in 0.01f64..20.0) {
            let s = NormedSpace::new(2, p).unwrap();
            let jx = s.duality_map(&x).unwrap();
            let jtx = s.duality_map(&scale(&x, t)).unwrap();
            let nrm = s.norm(&x).unwrap();
            for i in 0..2 {
                prop_assert!((jtx[i] - t * jx[i]).abs() <= 1e-9 * (1.0 + t * nrm));
            }
        }

        #[test]
        fn norm_definiteness(p in prop::sample::select(vec![1.5f64, 2.0, 3.0]),
                             x in vec_strategy(3)) {
            let s = NormedSpace::new(3, p).unwrap();
            let nrm = s.norm(&x).unwrap();
            prop_assert!(nrm >= 0.0);
            prop_assert_eq!(nrm == 0.0, x.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn duality_map_matches_fd_gradient_of_j() {
        // central differences of j against the analytic map, away from coordinate axes
        let h = 1e-6;
        for p in [1.5, 2.0, 3.0] {
            for (k, base) in [[0.7, -1.3, 2.1], [3.0, 0.4, -0.2], [-1.0, -1.0, 5.0]]
                .iter()
                .enumerate()
            {
                let s = NormedSpace::new(3, p).unwrap();
                let j = s.duality_map(base).unwrap();
                for i in 0..3 {
                    let mut xp = *base;
                    let mut xm = *base;
                    xp[i] += h;
                    xm[i] -= h;
                    let fd = (s.j_value(&xp).unwrap() - s.j_value(&xm).unwrap()) / (2.0 * h);
                    assert!(
                        (fd - j[i]).abs() <= 1e-5,
                        "p={p} case={k} coord={i}: fd={fd} analytic={}",
                        j[i]
                    );
                }
            }
        }
    }
}
