//! Laguerre-Gauss and Ince-Gauss mode functions in the transverse plane.
//!
//! Coordinates are dimensionless oscillator quadratures: every mode here is
//! a polynomial times `exp(-r²/2)` and the normalized modes are orthonormal
//! under `∫∫ dx dy`.
//!
//! Ince-Gauss modes live in elliptic coordinates with semifocal distance
//! `f = √ε`. That is the scale at which `C(iξ)C(η)exp(-r²/2)` is an exact
//! order-`p` oscillator eigenfunction, i.e. a finite combination of
//! Laguerre-Gauss modes with `2n + l = p`. The coordinate maps themselves take
//! the semifocal distance as an explicit argument.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::ince::{InceIndex, IncePolynomial, Parity};
use crate::quadrature::QuadratureRule;
use crate::special::{laguerre, ln_factorial};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraturePoint {
    pub x: f64,
    pub y: f64,
}

impl QuadraturePoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(r: f64, phi: f64) -> Self {
        Self { x: r * phi.cos(), y: r * phi.sin() }
    }

    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn phi(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticPoint {
    pub xi: f64,
    pub eta: f64,
}

/// `x = f cosh ξ cos η`, `y = f sinh ξ sin η`.
pub fn from_elliptic(ep: EllipticPoint, semifocal: f64) -> QuadraturePoint {
    QuadraturePoint {
        x: semifocal * ep.xi.cosh() * ep.eta.cos(),
        y: semifocal * ep.xi.sinh() * ep.eta.sin(),
    }
}

/// Inverse of [`from_elliptic`] with `ξ ≥ 0` and `η ∈ [0, 2π)`.
///
/// Points on the focal segment `|x| ≤ f, y = 0` land on the `ξ = 0`
/// boundary, where `η` and `2π − η` describe the same point.
pub fn to_elliptic(pt: QuadraturePoint, semifocal: f64) -> Result<EllipticPoint> {
    if !(semifocal > 0.0 && semifocal.is_finite()) {
        return Err(Error::validation(format!("semifocal distance must be positive, got {semifocal}")));
    }
    if !(pt.x.is_finite() && pt.y.is_finite()) {
        return Err(Error::validation("quadrature point must be finite"));
    }
    // x + iy = f cosh(ξ + iη)
    let w = (Complex64::new(pt.x, pt.y) / semifocal).acosh();
    let (mut xi, mut eta) = (w.re, w.im);
    if xi < 0.0 {
        xi = -xi;
        eta = -eta;
    }
    // keep the branch consistent with the sign of y off the focal segment
    if pt.y != 0.0 && (eta.sin() * pt.y) < 0.0 {
        eta = -eta;
    }
    let eta = eta.rem_euclid(TAU);
    Ok(EllipticPoint { xi, eta: if eta >= TAU { 0.0 } else { eta } })
}

/// A complex scalar field on the quadrature plane with a definite order.
pub trait ModeFunction: Sync {
    fn value(&self, x: f64, y: f64) -> Complex64;

    /// Oscillator order `p`; the field is a degree-`p` polynomial times `exp(-r²/2)`.
    fn order(&self) -> u32;

    fn at(&self, pt: QuadraturePoint) -> Complex64 {
        self.value(pt.x, pt.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LgKind {
    Even,
    Odd,
    Helical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LgIndex {
    pub n: u32,
    pub l: u32,
    pub kind: LgKind,
}

impl LgIndex {
    pub fn new(n: u32, l: u32, kind: LgKind) -> Result<Self> {
        if kind == LgKind::Odd && l == 0 {
            return Err(Error::validation("odd Laguerre-Gauss modes need l ≥ 1"));
        }
        Ok(Self { n, l, kind })
    }

    pub fn order(&self) -> u32 {
        2 * self.n + self.l
    }
}

/// Even/odd Laguerre-Gauss profile in its textbook closed form
/// `√(4n!/(π(n+l)!)) (√2 r)^l {cos lφ | sin lφ} L_n^l(2r²) exp(-r²/2)`,
/// evaluated as written and not renormalized.
///
/// This form is not an eigenfunction of the unit-width oscillator; the
/// normalized modes used in overlaps are [`LgMode`].
pub fn lg_even_odd(index: LgIndex, pt: QuadraturePoint) -> Result<f64> {
    let index = LgIndex::new(index.n, index.l, index.kind)?;
    let (n, l) = (index.n, index.l);
    let r2 = pt.x * pt.x + pt.y * pt.y;
    let prefactor = (0.5 * (4.0f64.ln() + ln_factorial(n) - PI.ln() - ln_factorial(n + l))).exp();
    // (√2)^l r^l e^{ilφ} = (√2 (x + iy))^l
    let angular = (Complex64::new(pt.x, pt.y) * SQRT_2).powu(l);
    let trig = match index.kind {
        LgKind::Even => angular.re,
        LgKind::Odd => angular.im,
        LgKind::Helical => {
            return Err(Error::validation("lg_even_odd takes an even or odd index; use lg_helical"));
        }
    };
    Ok(prefactor * trig * laguerre(n, l as f64, 2.0 * r2) * (-0.5 * r2).exp())
}

/// Unit-normalized helical Laguerre-Gauss mode
/// `√(n!/(π(n+l)!)) r^l L_n^l(r²) e^{ilφ} exp(-r²/2)`.
pub fn lg_helical(index: LgIndex, pt: QuadraturePoint) -> Complex64 {
    LgMode::new(LgIndex { kind: LgKind::Helical, ..index }).at(pt)
}

/// Unit-normalized Laguerre-Gauss mode of any kind. Even and odd modes with
/// `l ≥ 1` are `√2·Re` and `√2·Im` of the helical mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgMode {
    index: LgIndex,
    norm: f64,
}

impl LgMode {
    pub fn new(index: LgIndex) -> Self {
        let (n, l) = (index.n, index.l);
        let helical = (0.5 * (ln_factorial(n) - ln_factorial(n + l)) - 0.5 * PI.ln()).exp();
        let norm = if index.kind != LgKind::Helical && l >= 1 { SQRT_2 * helical } else { helical };
        Self { index, norm }
    }

    pub fn helical(n: u32, l: u32) -> Self {
        Self::new(LgIndex { n, l, kind: LgKind::Helical })
    }

    pub fn index(&self) -> LgIndex {
        self.index
    }
}

impl ModeFunction for LgMode {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        let (n, l) = (self.index.n, self.index.l);
        let r2 = x * x + y * y;
        let radial = self.norm * laguerre(n, l as f64, r2) * (-0.5 * r2).exp();
        let angular = Complex64::new(x, y).powu(l);
        match self.index.kind {
            LgKind::Helical => angular * radial,
            LgKind::Even => Complex64::new(angular.re * radial, 0.0),
            LgKind::Odd => Complex64::new(angular.im * radial, 0.0),
        }
    }

    fn order(&self) -> u32 {
        self.index.order()
    }
}

/// Unit-normalized even or odd Ince-Gauss mode
/// `N C(iξ) C(η) exp(-r²/2)` (resp. `S`), real-valued.
#[derive(Debug, Clone)]
pub struct IgMode {
    poly: IncePolynomial,
    semifocal: f64,
    norm: f64,
}

impl IgMode {
    pub fn new(index: InceIndex) -> Result<Self> {
        index.validate()?;
        if index.epsilon <= 0.0 {
            return Err(Error::validation("Ince-Gauss modes need ε > 0"));
        }
        let poly = IncePolynomial::new(index)?;
        let mut mode = Self { poly, semifocal: index.epsilon.sqrt(), norm: 1.0 };
        // |IG|² is a degree-2p polynomial times exp(-r²), integrated exactly
        let rule = QuadratureRule::for_order(index.p)?;
        let mass = rule.integrate_real(|x, y| mode.raw(x, y).powi(2));
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::numerical(format!("Ince-Gauss mode {index:?} has degenerate norm {mass}")));
        }
        mode.norm = mass.sqrt().recip();
        Ok(mode)
    }

    pub fn index(&self) -> InceIndex {
        self.poly.index
    }

    pub fn polynomial(&self) -> &IncePolynomial {
        &self.poly
    }

    pub fn semifocal(&self) -> f64 {
        self.semifocal
    }

    fn raw(&self, x: f64, y: f64) -> f64 {
        let w = (Complex64::new(x, y) / self.semifocal).acosh();
        // C(iξ)C(η) is invariant under (ξ, η) → (−ξ, −η), so either branch works
        self.poly.evaluate_hyperbolic(w.re) * self.poly.evaluate(w.im) * (-0.5 * (x * x + y * y)).exp()
    }

    pub fn real_value(&self, x: f64, y: f64) -> f64 {
        self.norm * self.raw(x, y)
    }
}

impl ModeFunction for IgMode {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(self.real_value(x, y), 0.0)
    }

    fn order(&self) -> u32 {
        self.poly.index.p
    }
}

pub fn ig_mode(index: InceIndex, pt: QuadraturePoint) -> Result<f64> {
    Ok(IgMode::new(index)?.real_value(pt.x, pt.y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HigSign {
    #[default]
    Plus,
    Minus,
}

impl HigSign {
    fn factor(self) -> f64 {
        match self {
            HigSign::Plus => 1.0,
            HigSign::Minus => -1.0,
        }
    }
}

/// Helical Ince-Gauss mode `(IG^e ± i IG^o)/√2`.
#[derive(Debug, Clone)]
pub struct HigMode {
    even: IgMode,
    odd: IgMode,
    sign: HigSign,
}

impl HigMode {
    pub fn new(p: u32, m: u32, epsilon: f64, sign: HigSign) -> Result<Self> {
        if m == 0 {
            return Err(Error::validation("helical Ince-Gauss modes need m ≥ 1"));
        }
        let even = IgMode::new(InceIndex::new(p, m, Parity::Even, epsilon)?)?;
        let odd = IgMode::new(InceIndex::new(p, m, Parity::Odd, epsilon)?)?;
        Ok(Self { even, odd, sign })
    }

    pub fn p(&self) -> u32 {
        self.even.index().p
    }

    pub fn m(&self) -> u32 {
        self.even.index().m
    }

    pub fn epsilon(&self) -> f64 {
        self.even.index().epsilon
    }

    pub fn sign(&self) -> HigSign {
        self.sign
    }
}

impl ModeFunction for HigMode {
    fn value(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(self.even.real_value(x, y), self.sign.factor() * self.odd.real_value(x, y)) / SQRT_2
    }

    fn order(&self) -> u32 {
        self.p()
    }
}

pub fn hig_mode(p: u32, m: u32, epsilon: f64, sign: HigSign, pt: QuadraturePoint) -> Result<Complex64> {
    Ok(HigMode::new(p, m, epsilon, sign)?.at(pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn norm_sq(mode: &dyn ModeFunction) -> f64 {
        QuadratureRule::for_order(mode.order()).unwrap().integrate_real(|x, y| mode.value(x, y).norm_sqr())
    }

    #[test]
    fn unnormalized_lg_examples() {
        let origin = QuadraturePoint::new(0.0, 0.0);
        let v = lg_even_odd(LgIndex::new(0, 0, LgKind::Even).unwrap(), origin).unwrap();
        assert_relative_eq!(v, 2.0 / PI.sqrt(), epsilon = 1e-14);
        let v = lg_even_odd(LgIndex::new(0, 1, LgKind::Odd).unwrap(), QuadraturePoint::new(1.7, 0.0)).unwrap();
        assert_eq!(v, 0.0);
        let v = lg_even_odd(LgIndex::new(1, 3, LgKind::Even).unwrap(), QuadraturePoint::new(1.0, 0.0)).unwrap();
        let want = (4.0 / (PI * 24.0)).sqrt() * SQRT_2.powi(3) * 2.0 * (-0.5f64).exp();
        assert_relative_eq!(v, want, epsilon = 1e-13);
        assert!(LgIndex::new(0, 0, LgKind::Odd).is_err());
    }

    #[test]
    fn helical_lg_phase_and_core() {
        let idx = LgIndex::new(0, 1, LgKind::Helical).unwrap();
        let a = lg_helical(idx, QuadraturePoint::new(1.0, 0.0));
        let b = lg_helical(idx, QuadraturePoint::new(0.0, 1.0));
        assert_relative_eq!(a.norm(), b.norm(), epsilon = 1e-14);
        assert_relative_eq!((b / a).arg(), PI / 2.0, epsilon = 1e-14);
        for l in 1..6 {
            assert_eq!(lg_helical(LgIndex::new(1, l, LgKind::Helical).unwrap(), QuadraturePoint::new(0.0, 0.0)).norm(), 0.0);
        }
    }

    #[test]
    fn lg_modes_are_normalized_and_helical_combines_even_odd() {
        for n in 0..3 {
            for l in 0..5 {
                for kind in [LgKind::Even, LgKind::Odd, LgKind::Helical] {
                    if kind == LgKind::Odd && l == 0 {
                        continue;
                    }
                    let mode = LgMode::new(LgIndex::new(n, l, kind).unwrap());
                    assert_relative_eq!(norm_sq(&mode), 1.0, epsilon = 1e-12);
                }
                if l >= 1 {
                    let e = LgMode::new(LgIndex::new(n, l, LgKind::Even).unwrap());
                    let o = LgMode::new(LgIndex::new(n, l, LgKind::Odd).unwrap());
                    let h = LgMode::helical(n, l);
                    let (x, y) = (0.4, -1.1);
                    let combo = (e.value(x, y) + Complex64::i() * o.value(x, y)) / SQRT_2;
                    assert!((combo - h.value(x, y)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn elliptic_examples_and_round_trip() {
        let pt = from_elliptic(EllipticPoint { xi: 0.0, eta: 0.0 }, 2.0);
        assert_relative_eq!(pt.x, 2.0);
        assert_eq!(pt.y, 0.0);
        let ep = to_elliptic(QuadraturePoint::new(2.0 * 1.0f64.cosh(), 0.0), 2.0).unwrap();
        assert_relative_eq!(ep.xi, 1.0, epsilon = 1e-12);
        assert!(ep.eta.abs() < 1e-12);
        let start = QuadraturePoint::new(0.7, -1.3);
        let back = from_elliptic(to_elliptic(start, 2.0).unwrap(), 2.0);
        assert!((back.x - start.x).abs() < 1e-10 && (back.y - start.y).abs() < 1e-10);
        let ep = to_elliptic(start, 2.0).unwrap();
        assert!(ep.xi >= 0.0 && (0.0..TAU).contains(&ep.eta));
        assert!(to_elliptic(start, 0.0).is_err());
    }

    #[test]
    fn ig_modes_are_unit_normalized() {
        for (p, m) in [(0, 0), (1, 1), (3, 1), (4, 2), (5, 3)] {
            let even = IgMode::new(InceIndex::new(p, m, Parity::Even, 2.0).unwrap()).unwrap();
            assert_relative_eq!(norm_sq(&even), 1.0, epsilon = 1e-10);
            if m >= 1 {
                let odd = IgMode::new(InceIndex::new(p, m, Parity::Odd, 2.0).unwrap()).unwrap();
                assert_relative_eq!(norm_sq(&odd), 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn ground_mode_and_odd_axis_zero() {
        let v = ig_mode(InceIndex::new(0, 0, Parity::Even, 2.0).unwrap(), QuadraturePoint::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(v, 1.0 / PI.sqrt(), epsilon = 1e-10);
        let odd = IgMode::new(InceIndex::new(5, 3, Parity::Odd, 2.0).unwrap()).unwrap();
        for x in [1.6, 2.5, -3.0] {
            assert!(odd.real_value(x, 0.0).abs() < 1e-12);
        }
    }

    #[test]
    fn small_epsilon_reduces_to_even_lg() {
        let ig = IgMode::new(InceIndex::new(3, 3, Parity::Even, 1e-8).unwrap()).unwrap();
        let lg = LgMode::new(LgIndex::new(0, 3, LgKind::Even).unwrap());
        let mut worst = 0.0f64;
        for i in 0..64 {
            for j in 0..64 {
                let x = -4.0 + 8.0 * i as f64 / 63.0;
                let y = -4.0 + 8.0 * j as f64 / 63.0;
                worst = worst.max((ig.real_value(x, y) - lg.value(x, y).re).abs());
            }
        }
        assert!(worst < 1e-3, "max deviation {worst}");
    }

    #[test]
    fn helical_ig_properties() {
        let hig = HigMode::new(3, 3, 2.0, HigSign::Plus).unwrap();
        assert!(hig.value(0.0, 0.0).norm_sqr() < 1e-24);
        assert_relative_eq!(norm_sq(&hig), 1.0, epsilon = 1e-10);
        let minus = HigMode::new(3, 3, 2.0, HigSign::Minus).unwrap();
        for (x, y) in [(0.3, 0.8), (-1.2, 0.5), (2.0, -2.0)] {
            assert!((minus.value(x, y) - hig.value(x, y).conj()).norm() < 1e-14);
        }
        assert!(HigMode::new(2, 0, 2.0, HigSign::Plus).is_err());
        for eps in [0.1, 2.0, 7.0] {
            let h = HigMode::new(1, 1, eps, HigSign::Plus).unwrap();
            let lg = LgMode::helical(0, 1);
            for (x, y) in [(0.3, 0.8), (-1.2, 0.5), (2.0, -2.0)] {
                assert!((h.value(x, y) - lg.value(x, y)).norm() < 1e-6);
            }
        }
    }
}
