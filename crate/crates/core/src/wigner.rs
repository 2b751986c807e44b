//! Four-dimensional Wigner functions of two-mode states.
//!
//! Two evaluations are provided:
//!
//! * the diagonal Laguerre formula, which sums the Wigner functions of the
//!   individual LG components weighted by `|A_j|²` and drops cross terms;
//! * an exact transform of the two-mode position wavefunction. The kernel
//!   factorizes over the two modes, so the 2D integral is a sum of products
//!   of 1D cross-Wigner functions of oscillator eigenfunctions, each computed
//!   with Gauss-Hermite quadrature.
//!
//! Units: `ħ = 1`, vacuum Wigner function `exp(−(x²+y²+p_x²+p_y²))/π²`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::decompose::CoefficientVector;
use crate::error::{Error, Result};
use crate::fock::TwoModeState;
use crate::quadrature::gauss_hermite;
use crate::special::{hermite_functions, laguerre};

/// Width parameter for which the LG formula matches unit-width oscillator modes.
pub const SIGMA_OSCILLATOR: f64 = std::f64::consts::SQRT_2;

/// Gauss-Hermite nodes for the exact oracle; convergence is checked at twice this.
pub const ORACLE_NODES: usize = 48;

/// Largest accepted change of an oracle value when the node count is doubled.
pub const ORACLE_CONVERGENCE_TOL: f64 = 1e-9;

/// Largest accepted imaginary part of an oracle value.
pub const ORACLE_IMAGINARY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
    pub px: f64,
    pub py: f64,
}

impl PhasePoint {
    pub fn new(x: f64, y: f64, px: f64, py: f64) -> Self {
        Self { x, y, px, py }
    }

    pub fn get(&self, axis: PhaseAxis) -> f64 {
        match axis {
            PhaseAxis::X => self.x,
            PhaseAxis::Y => self.y,
            PhaseAxis::Px => self.px,
            PhaseAxis::Py => self.py,
        }
    }

    fn set(&mut self, axis: PhaseAxis, value: f64) {
        match axis {
            PhaseAxis::X => self.x = value,
            PhaseAxis::Y => self.y = value,
            PhaseAxis::Px => self.px = value,
            PhaseAxis::Py => self.py = value,
        }
    }

    /// Rotates `(x, y)` and `(p_x, p_y)` together by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
            px: c * self.px - s * self.py,
            py: s * self.px + c * self.py,
        }
    }
}

/// `(Q0, Q1)` with `Q0 = ½[(x²+y²)/σ² + σ²(p_x²+p_y²)/4]` and `Q1 = (x p_y − y p_x)/2`.
fn quadratics(pt: &PhasePoint, sigma: f64) -> (f64, f64) {
    let s2 = sigma * sigma;
    let q0 = 0.5 * ((pt.x * pt.x + pt.y * pt.y) / s2 + s2 * (pt.px * pt.px + pt.py * pt.py) / 4.0);
    let q1 = 0.5 * (pt.x * pt.py - pt.y * pt.px);
    (q0, q1)
}

fn lg_term(n: u32, l: u32, q0: f64, q1: f64) -> f64 {
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / (PI * PI) * laguerre(n + l, 0.0, 4.0 * (q0 + q1)) * laguerre(n, 0.0, 4.0 * (q0 - q1)) * (-4.0 * q0).exp()
}

/// Wigner function of the helical mode `LG_{n,l}`:
/// `((−1)^{2n+l}/π²) L_{n+l}(4(Q0+Q1)) L_n(4(Q0−Q1)) exp(−4Q0)`.
pub fn wigner_lg(n: u32, l: u32, pt: PhasePoint, sigma: f64) -> Result<f64> {
    validate_sigma(sigma)?;
    let (q0, q1) = quadratics(&pt, sigma);
    Ok(lg_term(n, l, q0, q1))
}

/// Incoherent sum `Σ_j |A_j|² W_{LG_{j, N−2j}}`.
pub fn wigner_paper(coeffs: &CoefficientVector, pt: PhasePoint, sigma: f64) -> Result<f64> {
    validate_sigma(sigma)?;
    Ok(paper_value(coeffs, &pt, sigma))
}

fn paper_value(coeffs: &CoefficientVector, pt: &PhasePoint, sigma: f64) -> f64 {
    let (q0, q1) = quadratics(pt, sigma);
    coeffs
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let (n, l) = coeffs.lg_index(j);
            a.norm_sqr() * lg_term(n, l, q0, q1)
        })
        .sum()
}

fn validate_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::validation(format!("σ must be positive and finite, got {sigma}")));
    }
    Ok(())
}

/// Gauss-Hermite rule used for 1D cross-Wigner integrals.
#[derive(Debug, Clone)]
struct HermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HermiteRule {
    fn new(n: usize) -> Result<Self> {
        let (nodes, weights) = gauss_hermite(n)?;
        Ok(Self { nodes, weights })
    }

    /// Matrix `W[k'][k] = (1/π) ∫ h_{k'}(q+u) h_k(q−u) e^{2ipu} du`, `k, k' ≤ kmax`.
    fn cross_wigner(&self, kmax: usize, q: f64, p: f64) -> Vec<Vec<Complex64>> {
        let dim = kmax + 1;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (&u, &w) in self.nodes.iter().zip(&self.weights) {
            let plus = hermite_functions(kmax, q + u);
            let minus = hermite_functions(kmax, q - u);
            let phase = Complex64::from_polar(w / PI, 2.0 * p * u);
            for (row, hp) in out.iter_mut().zip(&plus) {
                for (cell, hm) in row.iter_mut().zip(&minus) {
                    *cell += phase * (hp * hm);
                }
            }
        }
        out
    }
}

/// Exact Wigner function of a fixed-`N` two-mode state.
#[derive(Debug, Clone)]
pub struct WignerOracle {
    state: TwoModeState,
    coarse: HermiteRule,
    fine: HermiteRule,
}

impl WignerOracle {
    pub fn new(state: &TwoModeState) -> Result<Self> {
        Self::with_nodes(state, ORACLE_NODES)
    }

    pub fn with_nodes(state: &TwoModeState, nodes: usize) -> Result<Self> {
        Ok(Self { state: state.clone(), coarse: HermiteRule::new(nodes)?, fine: HermiteRule::new(2 * nodes)? })
    }

    fn evaluate(&self, rule: &HermiteRule, pt: &PhasePoint) -> Complex64 {
        let n = self.state.n_total as usize;
        let wx = rule.cross_wigner(n, pt.x, pt.px);
        let wy = rule.cross_wigner(n, pt.y, pt.py);
        let c = &self.state.amplitudes;
        let mut total = Complex64::new(0.0, 0.0);
        for (np, cp) in c.iter().enumerate() {
            for (nn, cn) in c.iter().enumerate() {
                total += cp.conj() * cn * wx[n - np][n - nn] * wy[np][nn];
            }
        }
        total
    }

    pub fn value(&self, pt: PhasePoint) -> Result<f64> {
        let coarse = self.evaluate(&self.coarse, &pt);
        let fine = self.evaluate(&self.fine, &pt);
        let change = (fine - coarse).norm();
        if change > ORACLE_CONVERGENCE_TOL {
            return Err(Error::numerical(format!(
                "Wigner oracle changed by {change:e} on doubling the Gauss-Hermite nodes at {pt:?}"
            )));
        }
        if fine.im.abs() > ORACLE_IMAGINARY_TOL {
            return Err(Error::numerical(format!("Wigner oracle has imaginary residue {:e} at {pt:?}", fine.im)));
        }
        Ok(fine.re)
    }
}

/// `(1/π²) ∫∫ conj ψ(x+u, y+v) ψ(x−u, y−v) e^{2i(p_x u + p_y v)} du dv`
/// for `ψ = Σ_n c_n h_{N−n}(x) h_n(y)`.
pub fn wigner_exact(state: &TwoModeState, pt: PhasePoint) -> Result<f64> {
    WignerOracle::new(state)?.value(pt)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseAxis {
    X,
    Y,
    Px,
    Py,
}

impl PhaseAxis {
    pub const ALL: [PhaseAxis; 4] = [PhaseAxis::X, PhaseAxis::Y, PhaseAxis::Px, PhaseAxis::Py];

    pub fn name(self) -> &'static str {
        match self {
            PhaseAxis::X => "x",
            PhaseAxis::Y => "y",
            PhaseAxis::Px => "px",
            PhaseAxis::Py => "py",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(PhaseAxis::X),
            "y" => Ok(PhaseAxis::Y),
            "px" | "p_x" => Ok(PhaseAxis::Px),
            "py" | "p_y" => Ok(PhaseAxis::Py),
            other => Err(Error::validation(format!("unknown phase-space axis {other:?}"))),
        }
    }
}

/// Two distinct phase-space axes spanning a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisPair {
    pub u: PhaseAxis,
    pub v: PhaseAxis,
}

impl AxisPair {
    pub fn new(u: PhaseAxis, v: PhaseAxis) -> Result<Self> {
        if u == v {
            return Err(Error::validation("slice axes must differ"));
        }
        Ok(Self { u, v })
    }

    /// The six slice planes, interference planes first.
    pub fn all() -> [AxisPair; 6] {
        use PhaseAxis::*;
        [
            AxisPair { u: X, v: Py },
            AxisPair { u: Y, v: Px },
            AxisPair { u: X, v: Px },
            AxisPair { u: Y, v: Py },
            AxisPair { u: X, v: Y },
            AxisPair { u: Px, v: Py },
        ]
    }

    /// The two axes held fixed, in `x, y, p_x, p_y` order.
    pub fn frozen_axes(&self) -> [PhaseAxis; 2] {
        let mut rest = PhaseAxis::ALL.iter().copied().filter(|a| *a != self.u && *a != self.v);
        [rest.next().expect("four axes"), rest.next().expect("four axes")]
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.u.name(), self.v.name())
    }

    /// Parses `"x,py"`, `"x_py"` or `"p_x,p_y"`.
    pub fn parse(s: &str) -> Result<Self> {
        let normalized = s.to_ascii_lowercase().replace("p_", "p");
        let parts: Vec<&str> = normalized.split([',', '_', ':']).filter(|p| !p.is_empty()).collect();
        match parts.as_slice() {
            [u, v] => Self::new(PhaseAxis::parse(u)?, PhaseAxis::parse(v)?),
            _ => Err(Error::validation(format!("cannot parse axis pair {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceFormula {
    PaperDiagonal,
    ExactOracle,
}

/// What a slice is evaluated from.
#[derive(Debug, Clone, Copy)]
pub enum SliceInput<'a> {
    /// Diagonal LG formula for the given coefficients.
    Paper { coeffs: &'a CoefficientVector, sigma: f64 },
    /// Exact transform of a Fock state.
    Exact { state: &'a TwoModeState },
}

impl SliceInput<'_> {
    pub fn formula(&self) -> SliceFormula {
        match self {
            SliceInput::Paper { .. } => SliceFormula::PaperDiagonal,
            SliceInput::Exact { .. } => SliceFormula::ExactOracle,
        }
    }
}

/// Uniform 2D grid with samples at both ends of each axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub nu: usize,
    pub v_min: f64,
    pub v_max: f64,
    pub nv: usize,
}

impl SliceGrid {
    pub fn square(half_width: f64, n: usize) -> Self {
        Self { u_min: -half_width, u_max: half_width, nu: n, v_min: -half_width, v_max: half_width, nv: n }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.u_min, self.u_max, self.v_min, self.v_max].iter().all(|v| v.is_finite());
        if !finite || self.u_max <= self.u_min || self.v_max <= self.v_min || self.nu < 2 || self.nv < 2 {
            return Err(Error::validation(format!("invalid slice grid {self:?}")));
        }
        Ok(())
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u_min + (self.u_max - self.u_min) * i as f64 / (self.nu - 1) as f64
    }

    pub fn v(&self, j: usize) -> f64 {
        self.v_min + (self.v_max - self.v_min) * j as f64 / (self.nv - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerSlice {
    pub axes: AxisPair,
    /// Values of the two coordinates held fixed.
    pub frozen: [(PhaseAxis, f64); 2],
    pub formula: SliceFormula,
    /// Width parameter of the diagonal formula; absent for the oracle.
    pub sigma: Option<f64>,
    pub grid: SliceGrid,
    /// Row-major with `v` as the slow index.
    pub values: Vec<f64>,
}

impl WignerSlice {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nu + i]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Fills a 2D slice of the Wigner function spanned by `axes`, with the other
/// two coordinates fixed at `frozen` (in `x, y, p_x, p_y` order).
pub fn slice(input: SliceInput<'_>, axes: AxisPair, frozen: [f64; 2], grid: SliceGrid) -> Result<WignerSlice> {
    AxisPair::new(axes.u, axes.v)?;
    grid.validate()?;
    if frozen.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("frozen slice coordinates must be finite"));
    }
    let frozen_axes = axes.frozen_axes();
    let point = |i: usize, j: usize| {
        let mut pt = PhasePoint::default();
        pt.set(frozen_axes[0], frozen[0]);
        pt.set(frozen_axes[1], frozen[1]);
        pt.set(axes.u, grid.u(i));
        pt.set(axes.v, grid.v(j));
        pt
    };
    let (values, sigma) = match input {
        SliceInput::Paper { coeffs, sigma } => {
            validate_sigma(sigma)?;
            let values = (0..grid.nv)
                .into_par_iter()
                .flat_map_iter(|j| (0..grid.nu).map(move |i| paper_value(coeffs, &point(i, j), sigma)))
                .collect();
            (values, Some(sigma))
        }
        SliceInput::Exact { state } => {
            let oracle = WignerOracle::new(state)?;
            let rows = (0..grid.nv)
                .into_par_iter()
                .map(|j| (0..grid.nu).map(|i| oracle.value(point(i, j))).collect::<Result<Vec<f64>>>())
                .collect::<Result<Vec<_>>>()?;
            (rows.into_iter().flatten().collect(), None)
        }
    };
    Ok(WignerSlice {
        axes,
        frozen: [(frozen_axes[0], frozen[0]), (frozen_axes[1], frozen[1])],
        formula: input.formula(),
        sigma,
        grid,
        values,
    })
}

/// Composite trapezoid integral of `f` over `[−h, h]⁴` with `points` samples
/// per axis. Rows are evaluated in parallel and summed in a fixed order.
pub fn phase_space_integral<F>(f: F, half_width: f64, points: usize) -> Result<f64>
where
    F: Fn(PhasePoint) -> f64 + Sync,
{
    if points < 2 || !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::validation("phase-space integral needs ≥ 2 points and a positive width"));
    }
    let step = 2.0 * half_width / (points - 1) as f64;
    let coord = |i: usize| -half_width + i as f64 * step;
    let weight = |i: usize| if i == 0 || i == points - 1 { 0.5 } else { 1.0 };
    let rows: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|a| {
            let mut acc = 0.0;
            for b in 0..points {
                for c in 0..points {
                    for d in 0..points {
                        let w = weight(b) * weight(c) * weight(d);
                        acc += w * f(PhasePoint::new(coord(a), coord(b), coord(c), coord(d)));
                    }
                }
            }
            weight(a) * acc
        })
        .collect();
    Ok(rows.iter().sum::<f64>() * step.powi(4))
}
