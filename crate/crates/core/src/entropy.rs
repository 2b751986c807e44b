//! Entanglement between the two modes of a vortex state.
//!
//! The reduced density matrix of mode `a` is formed by an explicit partial
//! trace over mode `b`. For fixed-`N` states it comes out diagonal; that is
//! checked, not assumed, and the Schmidt shortcut `−Σ|c_n|² log|c_n|²` is
//! kept as an independent second path.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decompose::{coefficients_with, DecomposeOptions};
use crate::error::{Error, Result};
use crate::fock::{evolve, initial_state, ConverterSpec, TwoModeState};

/// Eigenvalues of `ρ_a` below `−PSD_ERROR_TOL` abort the entropy evaluation.
pub const PSD_ERROR_TOL: f64 = 1e-9;
/// Eigenvalues in `[−PSD_CLAMP_TOL, 0)` are treated as rounding noise.
pub const PSD_CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Natural => "natural",
            LogBase::Two => "two",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "natural" | "e" | "ln" => Ok(LogBase::Natural),
            "two" | "2" | "bits" => Ok(LogBase::Two),
            other => Err(Error::validation(format!("unknown log base {other:?}"))),
        }
    }
}

/// `ρ_a` indexed by the photon number of mode `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    pub matrix: DMatrix<Complex64>,
}

impl ReducedDensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = SymmetricEigen::try_new(self.matrix.clone(), 1e-15, 10_000)
            .ok_or_else(|| Error::numerical("density-matrix eigensolve did not converge"))?;
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }
}

/// Partial trace over mode `b`: `ρ_a = Ψ Ψ†` with `Ψ[A][B]` the amplitude
/// of `|A, B⟩`.
pub fn reduced_density(state: &TwoModeState) -> ReducedDensityMatrix {
    let n = state.n_total as usize;
    let dim = n + 1;
    let mut psi = DMatrix::<Complex64>::zeros(dim, dim);
    for (k, &c) in state.amplitudes.iter().enumerate() {
        psi[(n - k, k)] = c;
    }
    ReducedDensityMatrix { matrix: &psi * psi.adjoint() }
}

/// `−Tr(ρ log ρ)` from the eigenvalues of `ρ`, with `0 log 0 = 0`.
pub fn von_neumann(rho: &ReducedDensityMatrix, base: LogBase) -> Result<f64> {
    let vals = rho.eigenvalues()?;
    if let Some(&low) = vals.first() {
        if low < -PSD_ERROR_TOL {
            return Err(Error::numerical(format!("reduced density matrix has eigenvalue {low:e}")));
        }
    }
    let clamped: Vec<f64> = vals.iter().map(|&v| if v < PSD_CLAMP_TOL { v.max(0.0) } else { v }).collect();
    let total: f64 = clamped.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::numerical("reduced density matrix has zero trace"));
    }
    Ok(shannon(clamped.iter().map(|v| v / total), base))
}

fn shannon(probs: impl Iterator<Item = f64>, base: LogBase) -> f64 {
    let s: f64 = probs.filter(|&p| p > 0.0).map(|p| -p * base.log(p)).sum();
    s.max(0.0)
}

/// `−Σ|c_n|² log|c_n|²`, exact for states of the form `Σ c_n |N−n, n⟩`.
pub fn schmidt_entropy(state: &TwoModeState, base: LogBase) -> f64 {
    shannon(state.amplitudes.iter().map(|c| c.norm_sqr()), base)
}

/// The converted vortex state for `(N, m, ε)`.
pub fn vortex_state(n_total: u32, m: u32, epsilon: f64, options: &DecomposeOptions) -> Result<TwoModeState> {
    let coeffs = coefficients_with(n_total, m, epsilon, options)?;
    evolve(&initial_state(&coeffs)?, ConverterSpec::vortex())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub m: u32,
    pub epsilon: f64,
    pub entropy: f64,
    /// Same quantity via the Schmidt shortcut.
    pub schmidt_entropy: f64,
}

/// One odd-`N` entry compared against its even neighbours `(N ± 1, m + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OddEvenComparison {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub m: u32,
    pub entropy: f64,
    pub lower_neighbor: Option<EntropyRecord>,
    pub upper_neighbor: Option<EntropyRecord>,
    pub above_lower: Option<bool>,
    pub above_upper: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySweep {
    pub base: LogBase,
    pub records: Vec<EntropyRecord>,
    pub comparisons: Vec<OddEvenComparison>,
}

fn admissible(n_total: u32, m: u32) -> bool {
    m >= 1 && m <= n_total && (n_total - m).is_multiple_of(2)
}

fn record(n_total: u32, m: u32, epsilon: f64, base: LogBase, options: &DecomposeOptions) -> Result<EntropyRecord> {
    let state = vortex_state(n_total, m, epsilon, options)?;
    let entropy = von_neumann(&reduced_density(&state), base)?;
    Ok(EntropyRecord { n_total, m, epsilon, entropy, schmidt_entropy: schmidt_entropy(&state, base) })
}

pub fn entropy_sweep(m: u32, epsilon: f64, n_list: &[u32], base: LogBase) -> Result<EntropySweep> {
    entropy_sweep_with(m, epsilon, n_list, base, &DecomposeOptions::default())
}

/// Entropy of the vortex state for every admissible `N` in `n_list`
/// (inadmissible `N` are skipped), plus the comparison of each odd `N`
/// against the even-order states `(N − 1, m + 1)` and `(N + 1, m + 1)`.
/// With `m` fixed, `N ± 1` has the wrong parity, so the neighbours shift `m`.
pub fn entropy_sweep_with(
    m: u32,
    epsilon: f64,
    n_list: &[u32],
    base: LogBase,
    options: &DecomposeOptions,
) -> Result<EntropySweep> {
    if m == 0 {
        return Err(Error::validation("entropy sweeps need m ≥ 1"));
    }
    let mut ns: Vec<u32> = n_list.iter().copied().filter(|&n| admissible(n, m)).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.is_empty() {
        return Err(Error::validation(format!("no admissible N for m={m} in {n_list:?}")));
    }
    let records = ns
        .par_iter()
        .map(|&n| record(n, m, epsilon, base, options))
        .collect::<Result<Vec<_>>>()?;

    let neighbor = |n: u32| -> Result<Option<EntropyRecord>> {
        if admissible(n, m + 1) {
            record(n, m + 1, epsilon, base, options).map(Some)
        } else {
            Ok(None)
        }
    };
    let comparisons = records
        .par_iter()
        .filter(|r| r.n_total % 2 == 1)
        .map(|r| {
            let lower = neighbor(r.n_total - 1)?;
            let upper = neighbor(r.n_total + 1)?;
            Ok(OddEvenComparison {
                n_total: r.n_total,
                m: r.m,
                entropy: r.entropy,
                above_lower: lower.map(|l| r.entropy > l.entropy),
                above_upper: upper.map(|u| r.entropy > u.entropy),
                lower_neighbor: lower,
                upper_neighbor: upper,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropySweep { base, records, comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    #[test]
    fn product_state_has_zero_entropy() {
        let s = TwoModeState::basis(4, 0).unwrap();
        let rho = reduced_density(&s);
        let vals = rho.eigenvalues().unwrap();
        assert_relative_eq!(vals[4], 1.0, epsilon = 1e-14);
        assert!(von_neumann(&rho, LogBase::Natural).unwrap().abs() < 1e-14);
    }

    #[test]
    fn bell_like_state() {
        let s = TwoModeState::new(1, vec![Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, FRAC_1_SQRT_2)])
            .unwrap();
        let rho = reduced_density(&s);
        assert_relative_eq!(rho.matrix[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(rho.matrix[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_eq!(rho.max_off_diagonal(), 0.0);
        assert_relative_eq!(von_neumann(&rho, LogBase::Natural).unwrap(), LN_2, epsilon = 1e-14);
        assert_relative_eq!(von_neumann(&rho, LogBase::Two).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sweep_filters_and_compares() {
        let sweep = entropy_sweep(1, 2.0, &[1, 2, 3, 4, 5], LogBase::Natural).unwrap();
        let ns: Vec<u32> = sweep.records.iter().map(|r| r.n_total).collect();
        assert_eq!(ns, vec![1, 3, 5]);
        assert_relative_eq!(sweep.records[0].entropy, LN_2, epsilon = 1e-12);
        assert_eq!(sweep.comparisons.len(), 3);
        assert!(sweep.comparisons[0].lower_neighbor.is_none());
        assert_eq!(sweep.comparisons[0].upper_neighbor.unwrap().n_total, 2);
        assert!(entropy_sweep(1, 2.0, &[2, 4], LogBase::Natural).is_err());
    }
}
