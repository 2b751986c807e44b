//! Gauss rules for integrals against Gaussian weights.
//!
//! Nodes come from the Golub-Welsch eigenproblem and are polished with a few
//! Newton steps on the orthogonal polynomial itself. Weights are stored with
//! the Gaussian factored back in, so `Σ wᵢ f(xᵢ)` integrates `f` directly as
//! long as `f` carries its own Gaussian decay.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{hermite_functions, laguerre};

fn jacobi_nodes(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = diag[i];
        if i + 1 < n {
            jac[(i, i + 1)] = off[i];
            jac[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::try_new(jac, 1e-15, 10_000)
        .ok_or_else(|| Error::numerical("Golub-Welsch eigensolve did not converge"))?;
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    Ok(nodes)
}

/// Gauss-Hermite rule for `∫ f(x) dx` where `f` decays like `e^{-x²}`.
/// Returned weights already include the factor `e^{x²}`.
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::validation("Gauss-Hermite rule needs at least one node"));
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = jacobi_nodes(&diag, &off)?;
    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let h = hermite_functions(n, *x);
            // h_n' = √(2n) h_{n-1} - x h_n
            let dh = (2.0 * nf).sqrt() * h[n - 1] - *x * h[n];
            if dh != 0.0 {
                *x -= h[n] / dh;
            }
        }
        let h = hermite_functions(n, *x);
        weights.push(1.0 / (nf * h[n - 1] * h[n - 1]));
    }
    Ok((nodes, weights))
}

/// Gauss-Laguerre rule (α = 0) for `∫₀^∞ f(t) dt`, weights include `e^{t}`.
pub fn gauss_laguerre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::validation("Gauss-Laguerre rule needs at least one node"));
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    let mut nodes = jacobi_nodes(&diag, &off)?;
    let nu = n as u32;
    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let ln = laguerre(nu, 0.0, *t);
            let dl = nf * (ln - laguerre(nu - 1, 0.0, *t)) / *t;
            if dl != 0.0 {
                *t -= ln / dl;
            }
        }
        let lnp1 = laguerre(nu + 1, 0.0, *t);
        let w = *t / ((nf + 1.0).powi(2) * lnp1 * lnp1);
        weights.push(w * t.exp());
    }
    Ok((nodes, weights))
}

/// Product rule on the plane: Gauss-Laguerre in `t = r²`, uniform in angle.
///
/// For `P(x, y)·e^{-r²}` with `deg P ≤ D` the rule is exact once
/// `angular > D` and `2·radial - 1 ≥ D/2`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    radial: usize,
    angular: usize,
    points: Vec<(f64, f64, f64)>,
}

impl QuadratureRule {
    pub fn new(radial: usize, angular: usize) -> Result<Self> {
        if angular == 0 {
            return Err(Error::validation("angular node count must be positive"));
        }
        let (ts, ws) = gauss_laguerre(radial)?;
        let dphi = 2.0 * PI / angular as f64;
        let mut points = Vec::with_capacity(radial * angular);
        for (t, w) in ts.iter().zip(&ws) {
            let r = t.sqrt();
            for k in 0..angular {
                let phi = k as f64 * dphi;
                points.push((r * phi.cos(), r * phi.sin(), 0.5 * w * dphi));
            }
        }
        Ok(Self { radial, angular, points })
    }

    /// Smallest rule that is exact for polynomial degree `degree` times `e^{-r²}`.
    pub fn for_degree(degree: usize) -> Result<Self> {
        Self::new(degree / 4 + 2, degree + 2)
    }

    /// Default rule for overlaps of modes of order `p`: exact to degree `4p`.
    pub fn for_order(p: u32) -> Result<Self> {
        Self::for_degree(4 * p as usize + 4)
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular
    }

    /// The same construction with both node counts doubled.
    pub fn refined(&self) -> Result<Self> {
        Self::new(2 * self.radial, 2 * self.angular)
    }

    pub fn points(&self) -> &[(f64, f64, f64)] {
        &self.points
    }

    pub fn integrate<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.points.iter().map(|&(x, y, w)| f(x, y) * w).sum()
    }

    pub fn integrate_real<F: Fn(f64, f64) -> f64>(&self, f: F) -> f64 {
        self.points.iter().map(|&(x, y, w)| f(x, y) * w).sum()
    }
}
