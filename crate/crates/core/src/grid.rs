//! Uniform sampling grids for mode fields.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::ModeFunction;

/// Required fraction of a unit-norm field captured inside the grid box.
pub const CAPTURED_MASS_TARGET: f64 = 1.0 - 1e-8;

const MAX_HALF_WIDTH: f64 = 40.0;

/// Rectangular grid with samples at both endpoints of each axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(6.0, 256)
    }
}

impl GridSpec {
    pub fn square(half_width: f64, n: usize) -> Self {
        Self { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width, nx: n, ny: n }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || self.x_max <= self.x_min || self.y_max <= self.y_min {
            return Err(Error::validation(format!("grid ranges must be finite and increasing: {self:?}")));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::validation("grid needs at least 2 samples per axis"));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy()
    }

    /// Same spacing, each edge pushed out by `margin`.
    fn widened(&self, margin: f64) -> Self {
        let (dx, dy) = (self.dx(), self.dy());
        let extra_x = (margin / dx).ceil() as usize;
        let extra_y = (margin / dy).ceil() as usize;
        Self {
            x_min: self.x_min - extra_x as f64 * dx,
            x_max: self.x_max + extra_x as f64 * dx,
            y_min: self.y_min - extra_y as f64 * dy,
            y_max: self.y_max + extra_y as f64 * dy,
            nx: self.nx + 2 * extra_x,
            ny: self.ny + 2 * extra_y,
        }
    }
}

/// Complex samples of a field on a [`GridSpec`], row-major with `y` as the
/// slow index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexField {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
    /// Free-form description of what was sampled.
    pub provenance: serde_json::Value,
}

impl ComplexField {
    pub fn sample(grid: GridSpec, mode: &dyn ModeFunction, provenance: serde_json::Value) -> Result<Self> {
        grid.validate()?;
        let values = (0..grid.ny)
            .into_par_iter()
            .flat_map_iter(|j| {
                let y = grid.y(j);
                (0..grid.nx).map(move |i| mode.value(grid.x(i), y))
            })
            .collect();
        Ok(Self { grid, values, provenance })
    }

    /// Samples `mode` (assumed unit-norm), widening `grid` at fixed spacing
    /// until it captures at least [`CAPTURED_MASS_TARGET`], then rescales the
    /// samples to unit discrete norm.
    pub fn sample_normalized(grid: GridSpec, mode: &dyn ModeFunction, provenance: serde_json::Value) -> Result<Self> {
        let mut grid = grid;
        loop {
            let mut field = Self::sample(grid, mode, provenance.clone())?;
            let mass = field.mass();
            if mass >= CAPTURED_MASS_TARGET {
                field.normalize()?;
                return Ok(field);
            }
            let half = (grid.x_max - grid.x_min).max(grid.y_max - grid.y_min) / 2.0;
            if half > MAX_HALF_WIDTH {
                return Err(Error::numerical(format!("grid captures only {mass} of the field mass")));
            }
            log::info!("widening grid: captured mass {mass}");
            grid = grid.widened(1.0);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[j * self.grid.nx + i]
    }

    /// Discrete L² norm squared, `Σ|ψ|² dx dy`.
    pub fn mass(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx() * self.grid.dy()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let mass = self.mass();
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::numerical("cannot normalize a field with zero mass"));
        }
        let scale = mass.sqrt().recip();
        self.values.iter_mut().for_each(|v| *v *= scale);
        Ok(())
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::LgMode;

    #[test]
    fn grid_geometry() {
        let g = GridSpec::default();
        assert_eq!(g.x(0), -6.0);
        assert!((g.x(255) - 6.0).abs() < 1e-12);
        assert!(GridSpec { nx: 1, ..g }.validate().is_err());
        assert!(GridSpec { x_max: -7.0, ..g }.validate().is_err());
    }

    #[test]
    fn default_grid_captures_low_orders() {
        let f = ComplexField::sample_normalized(GridSpec::default(), &LgMode::helical(1, 3), serde_json::Value::Null)
            .unwrap();
        assert_eq!(f.grid, GridSpec::default());
        assert!((f.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn high_order_fields_widen_the_grid() {
        let f = ComplexField::sample_normalized(GridSpec::square(3.0, 64), &LgMode::helical(2, 5), serde_json::Value::Null)
            .unwrap();
        assert!(f.grid.x_max > 3.0);
        assert!((f.mass() - 1.0).abs() < 1e-12);
        let dx = GridSpec::square(3.0, 64).dx();
        assert!((f.grid.dx() - dx).abs() < 1e-12);
    }
}
