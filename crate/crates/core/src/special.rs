//! Orthogonal polynomials and factorial helpers shared by the mode and
//! phase-space code.

use std::f64::consts::PI;

/// `ln(n!)` by direct summation; exact enough for the n ≤ 200 used here.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial(n: u32) -> f64 {
    (2..=n).map(|k| k as f64).product()
}

/// Generalized Laguerre polynomial `L_n^α(x)` by the three-term recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized oscillator eigenfunctions `h_0(x) … h_kmax(x)`,
/// `h_k(x) = H_k(x) e^{-x²/2} / √(2^k k! √π)`.
pub fn hermite_functions(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if kmax >= 1 {
        out.push(std::f64::consts::SQRT_2 * x * out[0]);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

pub fn hermite_function(k: usize, x: f64) -> f64 {
    hermite_functions(k, x)[k]
}
