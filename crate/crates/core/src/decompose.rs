//! Projection of helical Ince-Gauss modes onto helical Laguerre-Gauss modes.
//!
//! A helical IG mode of order `p` is expanded over the modes
//! `LG_{j, p−2j}` with `j = 0 … ⌊(p−1)/2⌋`. Coefficients are overlap
//! integrals evaluated on a Gauss product rule that is exact for the
//! polynomial-times-Gaussian integrands involved; every overlap is repeated
//! on a refined rule as a convergence check.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{HigMode, HigSign, LgMode, ModeFunction};
use crate::quadrature::QuadratureRule;

/// Largest tolerated change of an overlap when the rule is refined.
pub const OVERLAP_CONVERGENCE_TOL: f64 = 1e-8;

/// How the projection integral pairs the two fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapForm {
    /// `∫∫ conj(LG) · HIG dS`, the Hilbert-space inner product.
    #[default]
    Hermitian,
    /// `∫∫ LG · HIG dS` without conjugation. This projects onto the
    /// counter-rotating modes `LG_{j, −(p−2j)}`.
    Bilinear,
}

#[derive(Debug, Clone, Default)]
pub struct DecomposeOptions {
    pub form: OverlapForm,
    pub sign: HigSign,
    /// Quadrature rule; defaults to the exact rule for the mode order.
    pub rule: Option<QuadratureRule>,
}

/// Normalized expansion coefficients `A_j` of `HIG_{p,m,ε}` over
/// `LG_{j, p−2j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub p: u32,
    pub m: u32,
    pub epsilon: f64,
    /// `[re, im]` per entry, `j = 0 … ⌊(p−1)/2⌋`.
    pub coefficients: Vec<Complex64>,
    /// `1 − Σ|A_j|²` before renormalization: mass of the helical IG mode
    /// outside the span of the included LG modes.
    pub residual_mass: f64,
    pub form: OverlapForm,
    pub sign: HigSign,
}

impl CoefficientVector {
    /// Builds a vector from explicit amplitudes, normalizing and fixing the
    /// global phase. `m` and `epsilon` are left at 0 to mark that the vector
    /// does not come from a projection.
    pub fn from_amplitudes(p: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = expansion_len(p)?;
        if amplitudes.len() != expected {
            return Err(Error::validation(format!(
                "order {p} takes {expected} coefficients, got {}",
                amplitudes.len()
            )));
        }
        let coefficients = normalize_and_fix_phase(amplitudes)?;
        Ok(Self {
            p,
            m: 0,
            epsilon: 0.0,
            coefficients,
            residual_mass: 0.0,
            form: OverlapForm::Hermitian,
            sign: HigSign::Plus,
        })
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// LG index `(n, l)` multiplied by entry `j`.
    pub fn lg_index(&self, j: usize) -> (u32, u32) {
        (j as u32, self.p - 2 * j as u32)
    }

    /// Inner product `Σ conj(self_j) other_j`.
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Number of helical LG modes with `l ≥ 1` at order `p`.
pub fn expansion_len(p: u32) -> Result<usize> {
    if p == 0 {
        return Err(Error::validation("order p = 0 has no helical Laguerre-Gauss modes"));
    }
    Ok(((p - 1) / 2 + 1) as usize)
}

fn quadrature_sum(a: &dyn ModeFunction, b: &dyn ModeFunction, form: OverlapForm, rule: &QuadratureRule) -> Complex64 {
    match form {
        OverlapForm::Hermitian => rule.integrate(|x, y| b.value(x, y).conj() * a.value(x, y)),
        OverlapForm::Bilinear => rule.integrate(|x, y| b.value(x, y) * a.value(x, y)),
    }
}

fn converged(a: &dyn ModeFunction, b: &dyn ModeFunction, form: OverlapForm, rule: &QuadratureRule) -> Result<Complex64> {
    let coarse = quadrature_sum(a, b, form, rule);
    let fine = quadrature_sum(a, b, form, &rule.refined()?);
    let change = (fine - coarse).norm();
    if change > OVERLAP_CONVERGENCE_TOL * fine.norm().max(1.0) {
        return Err(Error::numerical(format!(
            "overlap changed by {change:e} on refining the quadrature ({} × {} nodes)",
            rule.radial_nodes(),
            rule.angular_nodes()
        )));
    }
    Ok(fine)
}

/// `⟨b|a⟩ = ∫∫ conj(b)·a dS` on the exact rule for the larger of the two orders.
pub fn overlap(a: &dyn ModeFunction, b: &dyn ModeFunction) -> Result<Complex64> {
    let rule = QuadratureRule::for_order(a.order().max(b.order()))?;
    converged(a, b, OverlapForm::Hermitian, &rule)
}

/// [`overlap`] with an explicit pairing and rule.
pub fn overlap_with(a: &dyn ModeFunction, b: &dyn ModeFunction, form: OverlapForm, rule: &QuadratureRule) -> Result<Complex64> {
    converged(a, b, form, rule)
}

fn normalize_and_fix_phase(mut coeffs: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let mass: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if !(mass > 1e-24 && mass.is_finite()) {
        return Err(Error::numerical(format!("projection onto helical LG modes vanishes (mass {mass:e})")));
    }
    let mut lead = 0;
    for (j, c) in coeffs.iter().enumerate() {
        if c.norm() > coeffs[lead].norm() * (1.0 + 1e-12) {
            lead = j;
        }
    }
    let phase = coeffs[lead].conj() / coeffs[lead].norm();
    let scale = phase / mass.sqrt();
    coeffs.iter_mut().for_each(|c| *c *= scale);
    coeffs[lead].im = 0.0;
    Ok(coeffs)
}

fn validate_pair(p: u32, m: u32, epsilon: f64) -> Result<()> {
    if m == 0 {
        return Err(Error::validation("helical Ince-Gauss modes need m ≥ 1"));
    }
    if m > p || !(p - m).is_multiple_of(2) {
        return Err(Error::validation(format!("(p={p}, m={m}) needs m ≤ p and p − m even")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::validation(format!("ellipticity must be positive and finite, got {epsilon}")));
    }
    Ok(())
}

pub fn coefficients(p: u32, m: u32, epsilon: f64) -> Result<CoefficientVector> {
    coefficients_with(p, m, epsilon, &DecomposeOptions::default())
}

pub fn coefficients_with(p: u32, m: u32, epsilon: f64, options: &DecomposeOptions) -> Result<CoefficientVector> {
    validate_pair(p, m, epsilon)?;
    let hig = HigMode::new(p, m, epsilon, options.sign)?;
    let rule = match &options.rule {
        Some(rule) => rule.clone(),
        None => QuadratureRule::for_order(p)?,
    };
    let count = expansion_len(p)?;
    let raw = (0..count)
        .into_par_iter()
        .map(|j| {
            let lg = LgMode::helical(j as u32, p - 2 * j as u32);
            converged(&hig, &lg, options.form, &rule)
        })
        .collect::<Result<Vec<_>>>()?;
    let captured: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
    let residual_mass = 1.0 - captured;
    Ok(CoefficientVector {
        p,
        m,
        epsilon,
        coefficients: normalize_and_fix_phase(raw)?,
        residual_mass,
        form: options.form,
        sign: options.sign,
    })
}
