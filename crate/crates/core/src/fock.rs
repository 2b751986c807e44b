//! Two-mode Fock states at fixed total photon number and the mode converter.
//!
//! A state with `N` photons is stored as the `N + 1` amplitudes of
//! `Σ_n c_n |N−n, n⟩`. The converter `Ĉ = ½(a†b + ab†)` conserves `N`, so
//! `exp(i·2φ·Ĉ)` acts on that block alone and is computed exactly from the
//! eigendecomposition of its `(N+1) × (N+1)` matrix.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decompose::CoefficientVector;
use crate::error::{Error, Result};
use crate::modes::{LgMode, ModeFunction};
use crate::special::{hermite_functions, ln_factorial};

/// Tolerated deviation from unit norm for a stored state.
pub const STATE_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoModeState {
    #[serde(rename = "N")]
    pub n_total: u32,
    /// Entry `n` multiplies `|N−n, n⟩`, serialized as `[re, im]`.
    pub amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    pub fn new(n_total: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != n_total as usize + 1 {
            return Err(Error::validation(format!(
                "a state with N={n_total} needs {} amplitudes, got {}",
                n_total + 1,
                amplitudes.len()
            )));
        }
        let state = Self { n_total, amplitudes };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::validation(format!("state norm² is {norm}, expected 1")));
        }
        Ok(state)
    }

    /// `|N−n, n⟩`.
    pub fn basis(n_total: u32, n: u32) -> Result<Self> {
        if n > n_total {
            return Err(Error::validation(format!("basis index {n} exceeds N={n_total}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_total as usize + 1];
        amplitudes[n as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n_total, amplitudes })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Swaps the roles of the two modes.
    pub fn exchanged(&self) -> Self {
        Self { n_total: self.n_total, amplitudes: self.amplitudes.iter().rev().copied().collect() }
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverterSpec {
    /// Converter angle `φ`; the unitary is `exp(i·2φ·Ĉ)`.
    pub angle: f64,
}

impl ConverterSpec {
    pub fn new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::validation("converter angle must be finite"));
        }
        Ok(Self { angle })
    }

    /// The π/4 converter that produces vortex states.
    pub fn vortex() -> Self {
        Self { angle: std::f64::consts::FRAC_PI_4 }
    }
}

/// Places `A_j` on `|N−j, j⟩` with `N = p`.
pub fn initial_state(coeffs: &CoefficientVector) -> Result<TwoModeState> {
    let n_total = coeffs.p;
    if coeffs.len() > n_total as usize + 1 {
        return Err(Error::validation("more coefficients than Fock levels"));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_total as usize + 1];
    amplitudes[..coeffs.len()].copy_from_slice(&coeffs.coefficients);
    TwoModeState::new(n_total, amplitudes)
}

/// Matrix of `Ĉ` on `{|N−n, n⟩}`: `⟨N−n−1, n+1|Ĉ|N−n, n⟩ = ½√((n+1)(N−n))`.
pub fn converter_matrix(n_total: u32) -> DMatrix<f64> {
    let dim = n_total as usize + 1;
    let mut c = DMatrix::zeros(dim, dim);
    for n in 0..n_total as usize {
        let v = 0.5 * (((n + 1) * (n_total as usize - n)) as f64).sqrt();
        c[(n + 1, n)] = v;
        c[(n, n + 1)] = v;
    }
    c
}

/// `exp(i·2φ·Ĉ)` as a dense unitary on the `N`-photon block.
pub fn converter_unitary(n_total: u32, spec: ConverterSpec) -> Result<DMatrix<Complex64>> {
    let eig = SymmetricEigen::try_new(converter_matrix(n_total), 1e-15, 10_000)
        .ok_or_else(|| Error::numerical("converter eigensolve did not converge"))?;
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&lambda| Complex64::from_polar(1.0, 2.0 * spec.angle * lambda)),
    ));
    Ok(&v * phases * v.transpose())
}

pub fn evolve(state: &TwoModeState, spec: ConverterSpec) -> Result<TwoModeState> {
    let u = converter_unitary(state.n_total, spec)?;
    let psi = DVector::from_column_slice(&state.amplitudes);
    let out = u * psi;
    Ok(TwoModeState { n_total: state.n_total, amplitudes: out.iter().copied().collect() })
}

/// The π/4-converted state from the explicit binomial expansion of
/// `(a† + i b†)^{N−j} (b† + i a†)^j / 2^{N/2}` acting on the vacuum.
///
/// Each `|N−j, j⟩` contributes
/// `A_j √(j!(N−j)!/2^N) Σ_{k ≤ j} Σ_{l ≤ N−j} c_{lk} |N−(j+l−k), j+l−k⟩`
/// with `c_{lk} = i^{k+l} √((N−j−l+k)!(j+l−k)!) / (k!(j−k)! l!(N−j−l)!)`.
/// Factorials are combined in log space.
pub fn closed_form_state(coeffs: &CoefficientVector) -> Result<TwoModeState> {
    let n_total = coeffs.p;
    let nt = n_total as i64;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_total as usize + 1];
    let ln2 = std::f64::consts::LN_2;
    for (j, &a_j) in coeffs.coefficients.iter().enumerate() {
        let j = j as i64;
        if j > nt {
            return Err(Error::validation("more coefficients than Fock levels"));
        }
        let ln_pref = 0.5 * (ln_factorial(j as u32) + ln_factorial((nt - j) as u32) - nt as f64 * ln2);
        for k in 0..=j {
            for l in 0..=(nt - j) {
                let target = j + l - k;
                let ln_c = 0.5 * (ln_factorial((nt - target) as u32) + ln_factorial(target as u32))
                    - ln_factorial(k as u32)
                    - ln_factorial((j - k) as u32)
                    - ln_factorial(l as u32)
                    - ln_factorial((nt - j - l) as u32);
                let phase = match (k + l) % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
                amplitudes[target as usize] += a_j * phase * (ln_pref + ln_c).exp();
            }
        }
    }
    Ok(TwoModeState { n_total, amplitudes })
}

/// `Σ_j A_j LG_{j, N−2j}(r, φ)` with unit-normalized helical LG modes.
pub fn wavefunction(coeffs: &CoefficientVector, r: f64, phi: f64) -> Complex64 {
    let (x, y) = (r * phi.cos(), r * phi.sin());
    coeffs
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, &a)| {
            let (n, l) = coeffs.lg_index(j);
            a * LgMode::helical(n, l).value(x, y)
        })
        .sum()
}

/// Position representation `Σ_n c_n h_{N−n}(x) h_n(y)` of a Fock state,
/// with `h_k` the unit-width oscillator eigenfunctions.
pub fn state_wavefunction(state: &TwoModeState, x: f64, y: f64) -> Complex64 {
    let n = state.n_total as usize;
    let hx = hermite_functions(n, x);
    let hy = hermite_functions(n, y);
    state.amplitudes.iter().enumerate().map(|(k, &c)| c * (hx[n - k] * hy[k])).sum()
}

/// The vortex-state field of `coeffs` as a [`ModeFunction`].
#[derive(Debug, Clone)]
pub struct VortexField {
    terms: Vec<(Complex64, LgMode)>,
    order: u32,
}

impl VortexField {
    pub fn new(coeffs: &CoefficientVector) -> Self {
        let terms = coeffs
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let (n, l) = coeffs.lg_index(j);
                (a, LgMode::helical(n, l))
            })
            .collect();
        Self { terms, order: coeffs.p }
    }
}

impl ModeFunction for VortexField {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        self.terms.iter().map(|(a, lg)| a * lg.value(x, y)).sum()
    }

    fn order(&self) -> u32 {
        self.order
    }
}
