//! Even and odd Ince polynomials `C_p^m(η, ε)` and `S_p^m(η, ε)`.
//!
//! Both are finite trigonometric series solving
//!
//! ```text
//! Θ'' + ε sin(2η) Θ' + (a − p ε cos 2η) Θ = 0
//! ```
//!
//! Substituting a cosine (sine) series turns the equation into a
//! three-term recurrence on the Fourier coefficients which terminates at
//! frequency `p`. The resulting tridiagonal matrix is similar to a symmetric
//! one, so the separation constants `a` come from a symmetric eigensolve.
//! Degrees `m` are assigned by ascending eigenvalue, which matches `a → m²`
//! as `ε → 0`.
//!
//! Normalization is unit L² over `[0, 2π)`. The global sign makes the
//! coefficient of the highest frequency positive.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Above this ellipticity the eigenproblem is accepted but flagged.
pub const EPSILON_CONDITIONING_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InceIndex {
    pub p: u32,
    pub m: u32,
    pub parity: Parity,
    pub epsilon: f64,
}

impl InceIndex {
    pub fn new(p: u32, m: u32, parity: Parity, epsilon: f64) -> Result<Self> {
        let index = Self { p, m, parity, epsilon };
        index.validate()?;
        Ok(index)
    }

    pub fn validate(&self) -> Result<()> {
        validate_epsilon(self.epsilon)?;
        if !(self.p + self.m).is_multiple_of(2) {
            return Err(Error::validation(format!(
                "order p={} and degree m={} must have the same parity",
                self.p, self.m
            )));
        }
        if self.m > self.p {
            return Err(Error::validation(format!("degree m={} exceeds order p={}", self.m, self.p)));
        }
        if self.parity == Parity::Odd && self.m == 0 {
            return Err(Error::validation("odd Ince polynomials need m ≥ 1"));
        }
        Ok(())
    }
}

pub(crate) fn validate_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::validation(format!("ellipticity must be finite and ≥ 0, got {epsilon}")));
    }
    Ok(())
}

/// Which trigonometric family a polynomial is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisClass {
    /// `cos 2jη`
    CosEven,
    /// `cos (2j+1)η`
    CosOdd,
    /// `sin 2jη`, j ≥ 1
    SinEven,
    /// `sin (2j+1)η`
    SinOdd,
}

impl BasisClass {
    pub fn for_order(p: u32, parity: Parity) -> Self {
        match (parity, p.is_multiple_of(2)) {
            (Parity::Even, true) => BasisClass::CosEven,
            (Parity::Even, false) => BasisClass::CosOdd,
            (Parity::Odd, true) => BasisClass::SinEven,
            (Parity::Odd, false) => BasisClass::SinOdd,
        }
    }

    fn is_cosine(self) -> bool {
        matches!(self, BasisClass::CosEven | BasisClass::CosOdd)
    }

    /// Frequencies present in an order-`p` series of this class.
    pub fn frequencies(self, p: u32) -> Vec<u32> {
        let start = match self {
            BasisClass::CosEven => 0,
            BasisClass::SinEven => 2,
            BasisClass::CosOdd | BasisClass::SinOdd => 1,
        };
        (start..=p).step_by(2).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncePolynomial {
    pub index: InceIndex,
    pub class: BasisClass,
    pub frequencies: Vec<u32>,
    pub coeffs: Vec<f64>,
    /// Separation constant `a`.
    pub eigenvalue: f64,
}

impl IncePolynomial {
    pub fn new(index: InceIndex) -> Result<Self> {
        index.validate()?;
        build_eigensystem(index.p, index.parity, index.epsilon)?
            .into_iter()
            .find(|poly| poly.index.m == index.m)
            .ok_or_else(|| Error::validation(format!("no Ince polynomial with m={} at p={}", index.m, index.p)))
    }

    pub fn evaluate(&self, eta: f64) -> f64 {
        let eta = eta.rem_euclid(TAU);
        let cosine = self.class.is_cosine();
        self.frequencies
            .iter()
            .zip(&self.coeffs)
            .map(|(&k, &c)| {
                let arg = k as f64 * eta;
                c * if cosine { arg.cos() } else { arg.sin() }
            })
            .sum()
    }

    /// Value at the imaginary argument `iξ`.
    ///
    /// `cos(k iξ) = cosh(kξ)` and `sin(k iξ) = i sinh(kξ)`; for odd
    /// polynomials the common factor `i` is dropped and the real sinh series
    /// is returned, which keeps odd Ince-Gauss modes real.
    pub fn evaluate_hyperbolic(&self, xi: f64) -> f64 {
        let cosine = self.class.is_cosine();
        self.frequencies
            .iter()
            .zip(&self.coeffs)
            .map(|(&k, &c)| {
                let arg = k as f64 * xi;
                c * if cosine { arg.cosh() } else { arg.sinh() }
            })
            .sum()
    }

    /// Power of `i` dropped by [`evaluate_hyperbolic`](Self::evaluate_hyperbolic).
    pub fn hyperbolic_phase_power(&self) -> u32 {
        if self.class.is_cosine() {
            0
        } else {
            1
        }
    }

    /// `(Θ, Θ', Θ'')` at `eta`, differentiating the series term by term.
    pub fn derivatives(&self, eta: f64) -> (f64, f64, f64) {
        let cosine = self.class.is_cosine();
        let mut out = (0.0, 0.0, 0.0);
        for (&k, &c) in self.frequencies.iter().zip(&self.coeffs) {
            let kf = k as f64;
            let (s, co) = (kf * eta).sin_cos();
            if cosine {
                out.0 += c * co;
                out.1 -= c * kf * s;
                out.2 -= c * kf * kf * co;
            } else {
                out.0 += c * s;
                out.1 += c * kf * co;
                out.2 -= c * kf * kf * s;
            }
        }
        out
    }
}

/// All polynomials of order `p` and the given parity at ellipticity
/// `epsilon`, sorted by ascending separation constant (= ascending `m`).
pub fn build_eigensystem(p: u32, parity: Parity, epsilon: f64) -> Result<Vec<IncePolynomial>> {
    validate_epsilon(epsilon)?;
    if parity == Parity::Odd && p == 0 {
        return Err(Error::validation("odd Ince polynomials need p ≥ 1"));
    }
    if epsilon > EPSILON_CONDITIONING_LIMIT {
        log::warn!("ellipticity {epsilon} exceeds {EPSILON_CONDITIONING_LIMIT}; Ince eigenproblem may be ill-conditioned");
    }

    let class = BasisClass::for_order(p, parity);
    let freqs = class.frequencies(p);
    let n = freqs.len();
    let coupling = coupling_matrix(p, class, &freqs);

    // Diagonal similarity D^{-1} M D making M = K + εB symmetric. The scale
    // ratios only depend on B, so they survive ε = 0.
    let mut scale = vec![1.0; n];
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    for i in 0..n {
        let k = freqs[i] as f64;
        diag[i] = k * k + epsilon * coupling[(i, i)];
        if i + 1 < n {
            let upper = coupling[(i, i + 1)];
            let lower = coupling[(i + 1, i)];
            if upper <= 0.0 || lower <= 0.0 {
                return Err(Error::numerical("Ince recurrence is not sign-symmetric"));
            }
            scale[i + 1] = scale[i] * (lower / upper).sqrt();
            off[i] = epsilon * (upper * lower).sqrt();
        }
    }

    let mut sym = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        sym[(i, i)] = diag[i];
        if i + 1 < n {
            sym[(i, i + 1)] = off[i];
            sym[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::try_new(sym, 1e-15, 10_000)
        .ok_or_else(|| Error::numerical(format!("Ince eigensolve did not converge (p={p}, ε={epsilon})")))?;

    let mut modes: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let lambda = eig.eigenvalues[j];
            let guess: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
            let w = refine_eigenvector(&diag, &off, lambda, &guess);
            (lambda, w)
        })
        .collect();
    modes.sort_by(|a, b| {
        if (a.0 - b.0).abs() < 1e-12 {
            argmax_abs(&a.1).cmp(&argmax_abs(&b.1))
        } else {
            a.0.total_cmp(&b.0)
        }
    });

    modes
        .into_iter()
        .zip(&freqs)
        .map(|((lambda, w), &m)| {
            let mut coeffs: Vec<f64> = w.iter().zip(&scale).map(|(wi, si)| wi * si).collect();
            let norm_sq: f64 = coeffs
                .iter()
                .zip(&freqs)
                .map(|(c, &k)| c * c * if k == 0 { TAU } else { PI })
                .sum();
            let sign = coeffs
                .iter()
                .rev()
                .find(|c| **c != 0.0)
                .map_or(1.0, |c| c.signum());
            let factor = sign / norm_sq.sqrt();
            coeffs.iter_mut().for_each(|c| *c *= factor);
            Ok(IncePolynomial {
                index: InceIndex { p, m, parity, epsilon },
                class,
                frequencies: freqs.clone(),
                coeffs,
                eigenvalue: lambda,
            })
        })
        .collect()
}

/// The ε-coefficient `B` of the Ince operator `−Θ'' − ε sin2η Θ' + pε cos2η Θ`
/// in the given trigonometric basis (column `i` = image of basis function `i`).
fn coupling_matrix(p: u32, class: BasisClass, freqs: &[u32]) -> DMatrix<f64> {
    let n = freqs.len();
    let mut b = DMatrix::<f64>::zeros(n, n);
    let cosine = class.is_cosine();
    let pf = p as f64;
    for (col, &k) in freqs.iter().enumerate() {
        let kf = k as f64;
        // trig(kη) → ½(p+k) trig((k−2)η) + ½(p−k) trig((k+2)η)
        for (target, weight) in [(k as i64 - 2, 0.5 * (pf + kf)), (k as i64 + 2, 0.5 * (pf - kf))] {
            let (freq, w) = if target < 0 {
                (-target, if cosine { weight } else { -weight })
            } else {
                (target, weight)
            };
            if (freq == 0 && !cosine) || freq > p as i64 || w == 0.0 {
                continue;
            }
            if let Some(row) = freqs.iter().position(|&f| f as i64 == freq) {
                b[(row, col)] += w;
            }
        }
    }
    b
}

fn argmax_abs(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map_or(0, |(i, _)| i)
}

/// Rebuild a symmetric tridiagonal eigenvector from its eigenvalue by
/// continued-fraction ratios taken inward from both ends.
///
/// Components far from the peak can be many orders of magnitude below the
/// absolute accuracy of a dense eigensolver (ε ≪ 1), yet their signs fix the
/// normalization convention. The ratios recover them to full relative
/// precision. Falls back to `guess` if the recursion is not consistent.
fn refine_eigenvector(diag: &[f64], off: &[f64], lambda: f64, guess: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        return vec![1.0];
    }
    let peak = argmax_abs(guess);
    let mut w = vec![0.0; n];
    w[peak] = 1.0;

    // below the peak: σ_i = w_i / w_{i+1}
    let mut sigma = vec![0.0; n];
    for i in 0..peak {
        let carry = if i == 0 { 0.0 } else { off[i - 1] * sigma[i - 1] };
        let denom = diag[i] - lambda + carry;
        if denom == 0.0 {
            return guess.to_vec();
        }
        sigma[i] = -off[i] / denom;
    }
    for i in (0..peak).rev() {
        w[i] = sigma[i] * w[i + 1];
    }

    // above the peak: ρ_i = w_i / w_{i-1}
    let mut rho = vec![0.0; n];
    for i in (peak + 1..n).rev() {
        let carry = if i == n - 1 { 0.0 } else { off[i] * rho[i + 1] };
        let denom = diag[i] - lambda + carry;
        if denom == 0.0 {
            return guess.to_vec();
        }
        rho[i] = -off[i - 1] / denom;
    }
    for i in peak + 1..n {
        w[i] = rho[i] * w[i - 1];
    }

    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return guess.to_vec();
    }
    w.iter_mut().for_each(|x| *x /= norm);

    // residual of the peak row, the one equation the recursion never used
    let mut resid = (diag[peak] - lambda) * w[peak];
    if peak > 0 {
        resid += off[peak - 1] * w[peak - 1];
    }
    if peak + 1 < n {
        resid += off[peak] * w[peak + 1];
    }
    let scale = diag.iter().chain(off).fold(1.0f64, |acc, x| acc.max(x.abs()));
    if resid.abs() > 1e-9 * scale {
        return guess.to_vec();
    }
    if w.iter().zip(guess).map(|(a, b)| a * b).sum::<f64>() < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    w
}
