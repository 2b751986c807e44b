//! Subcommand arguments and their drivers.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::path::Path;

use clap::{Args, ValueEnum};
use ince_vortex::export::{csv_string, json_string, pgm_bytes, write_artifact, Cell, Sidecar};
use ince_vortex::{
    closed_form_state, coefficients_with, entropy_sweep_with, evolve, initial_state, slice, AxisPair, CoefficientVector,
    ComplexField, Complex64, ConverterSpec, DecomposeOptions, Error, GridSpec, HigMode, HigSign, LogBase, ModeFunction,
    OverlapForm, Result, SliceGrid, SliceInput, TwoModeState, VortexField, WignerSlice,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

/// Ellipticity substituted for a requested `ε = 0`.
pub const EPSILON_ZERO_SUBSTITUTE: f64 = 1e-8;
/// Ellipticity substituted for a requested `ε = ∞`.
pub const EPSILON_INFINITY_SUBSTITUTE: f64 = 1e3;

const PRODUCER: &str = "ince-vortex-cli";

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModeArgs {
    /// Mode order p.
    #[arg(long)]
    pub p: u32,
    /// Mode degree m (same parity as p, 1 ≤ m ≤ p).
    #[arg(long)]
    pub m: u32,
    /// Ellipticity ε; `0` and `inf` are replaced by numerical limits.
    #[arg(long, default_value_t = 2.0)]
    pub eps: f64,
    /// Pairing used in the projection integral.
    #[arg(long, value_enum, default_value_t = OverlapArg::Hermitian)]
    pub overlap: OverlapArg,
    /// Helicity of the helical Ince-Gauss mode.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapArg {
    Hermitian,
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignArg {
    Plus,
    Minus,
}

impl ModeArgs {
    pub fn epsilon(&self) -> Result<f64> {
        resolve_epsilon(self.eps)
    }

    pub fn options(&self) -> DecomposeOptions {
        DecomposeOptions {
            form: match self.overlap {
                OverlapArg::Hermitian => OverlapForm::Hermitian,
                OverlapArg::Bilinear => OverlapForm::Bilinear,
            },
            sign: match self.sign {
                SignArg::Plus => HigSign::Plus,
                SignArg::Minus => HigSign::Minus,
            },
            rule: None,
        }
    }

    pub fn coefficients(&self) -> Result<CoefficientVector> {
        coefficients_with(self.p, self.m, self.epsilon()?, &self.options())
    }
}

/// Maps the limiting ellipticities onto finite values, warning about it.
pub fn resolve_epsilon(eps: f64) -> Result<f64> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::Validation(format!("ellipticity must be ≥ 0, got {eps}")));
    }
    if eps == 0.0 {
        log::warn!("ε = 0 replaced by ε = {EPSILON_ZERO_SUBSTITUTE:e}");
        return Ok(EPSILON_ZERO_SUBSTITUTE);
    }
    if eps.is_infinite() {
        log::warn!("ε = ∞ replaced by ε = {EPSILON_INFINITY_SUBSTITUTE:e}");
        return Ok(EPSILON_INFINITY_SUBSTITUTE);
    }
    Ok(eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldArg {
    /// The converted vortex state, summed over its LG components.
    Vortex,
    /// The helical Ince-Gauss mode itself.
    Hig,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntensityArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Samples per axis; odd counts put a sample on the origin.
    #[arg(long, default_value_t = 257)]
    pub grid_n: usize,
    /// Grid covers [−half, half] on both axes.
    #[arg(long, default_value_t = 6.0)]
    pub grid_half: f64,
    #[arg(long, value_enum, default_value_t = FieldArg::Vortex)]
    pub field: FieldArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StateArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Converter angle in radians.
    #[arg(long, default_value_t = FRAC_PI_4)]
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaArg {
    /// Diagonal sum of single-LG Wigner functions.
    Paper,
    /// Exact transform of the converted Fock state.
    Exact,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WignerArgs {
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Axis pair spanning the slice, e.g. `x,py`.
    #[arg(long, default_value = "x,py")]
    pub axes: String,
    /// Values of the two remaining coordinates, in x, y, px, py order.
    #[arg(long, default_value = "0,0")]
    pub frozen: String,
    #[arg(long, value_enum, default_value_t = FormulaArg::Paper)]
    pub formula: FormulaArg,
    /// Write all six axis-pair slices instead of `--axes`.
    #[arg(long)]
    pub all_slices: bool,
    /// Slice covers [−half, half] on both axes.
    #[arg(long, default_value_t = 4.0)]
    pub half_width: f64,
    /// Samples per axis.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
    /// Width parameter of the diagonal formula.
    #[arg(long, default_value_t = SQRT_2)]
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseArg {
    Natural,
    Two,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EntropyArgs {
    /// Mode degree m.
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value_t = 2.0)]
    pub eps: f64,
    /// Photon numbers: an inclusive range `a..b` or a comma list.
    #[arg(long = "N", default_value = "1..9")]
    pub n_list: String,
    #[arg(long, value_enum, default_value_t = BaseArg::Natural)]
    pub base: BaseArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelftestArgs {
    /// Seed for the random closed-form checks.
    #[arg(long, default_value_t = 20240611)]
    pub seed: u64,
}

/// Writes artifacts with sidecars that carry the full run configuration.
pub struct Output<'a> {
    pub dir: &'a Path,
    pub config: serde_json::Value,
}

impl Output<'_> {
    pub fn write(&self, file: &str, contents: &[u8], module: &str, details: serde_json::Value) -> Result<()> {
        let sidecar = Sidecar {
            file,
            producer: PRODUCER,
            producer_version: env!("CARGO_PKG_VERSION"),
            library_version: ince_vortex::VERSION,
            module,
            config: &self.config,
            details,
        };
        write_artifact(self.dir, file, contents, &sidecar)
    }

    /// Output for one stage of a composite run, recording the stage's own
    /// arguments next to the parent configuration.
    fn stage<A: Serialize>(&self, name: &str, args: &A) -> Result<(std::path::PathBuf, serde_json::Value)> {
        let config = json!({ "parent": self.config, "stage": name, "args": serde_json::to_value(args)? });
        Ok((self.dir.join(name), config))
    }
}

pub fn intensity(args: &IntensityArgs, out: &Output<'_>) -> Result<serde_json::Value> {
    let eps = args.mode.epsilon()?;
    let coeffs = args.mode.coefficients()?;
    let grid = GridSpec::square(args.grid_half, args.grid_n);
    grid.validate()?;
    let (mode, module): (Box<dyn ModeFunction>, &str) = match args.field {
        FieldArg::Vortex => (Box::new(VortexField::new(&coeffs)), "fock"),
        FieldArg::Hig => (Box::new(HigMode::new(args.mode.p, args.mode.m, eps, args.mode.options().sign)?), "modes"),
    };
    let field = ComplexField::sample(grid, mode.as_ref(), json!({ "field": args.field }))?;
    let intensity = field.intensity();
    let core = mode.value(0.0, 0.0).norm_sqr();
    let max = intensity.iter().copied().fold(0.0, f64::max);

    let rows = |f: &dyn Fn(usize, usize) -> Vec<Cell>| {
        (0..grid.ny).flat_map(move |j| (0..grid.nx).map(move |i| (i, j))).map(|(i, j)| f(i, j)).collect::<Vec<_>>()
    };
    let intensity_csv = csv_string(
        &["x", "y", "intensity"],
        rows(&|i, j| vec![grid.x(i).into(), grid.y(j).into(), intensity[j * grid.nx + i].into()]),
    );
    let field_csv = csv_string(
        &["x", "y", "re", "im"],
        rows(&|i, j| {
            let v = field.get(i, j);
            vec![grid.x(i).into(), grid.y(j).into(), v.re.into(), v.im.into()]
        }),
    );
    // Image rows run from the top, i.e. from y_max down.
    let image: Vec<f64> = (0..grid.ny).rev().flat_map(|j| intensity[j * grid.nx..(j + 1) * grid.nx].to_vec()).collect();
    let details = json!({
        "epsilon_used": eps,
        "grid": grid,
        "field": args.field,
        "coefficients": coeffs,
        "core_intensity": core,
        "max_intensity": max,
        "grid_mass": field.mass(),
    });
    out.write("intensity.csv", intensity_csv.as_bytes(), module, details.clone())?;
    out.write("field.csv", field_csv.as_bytes(), module, details.clone())?;
    let mut pgm_details = details.clone();
    pgm_details["pgm"] = json!({ "scale": "linear", "max_maps_to": 255, "rows": "y descending" });
    out.write("intensity.pgm", &pgm_bytes(grid.nx, grid.ny, &image)?, module, pgm_details)?;
    Ok(json!({ "core_intensity": core, "max_intensity": max, "grid_mass": field.mass() }))
}

pub fn decompose(args: &DecomposeArgs, out: &Output<'_>) -> Result<CoefficientVector> {
    let coeffs = args.mode.coefficients()?;
    let details = json!({ "epsilon_used": coeffs.epsilon, "normalization": "unit l2, largest-magnitude entry real positive" });
    out.write("coefficients.json", json_string(&coeffs)?.as_bytes(), "decompose", details)?;
    Ok(coeffs)
}

#[derive(Debug, Clone, Serialize)]
pub struct StateReport {
    pub angle: f64,
    pub coefficients: CoefficientVector,
    pub initial: TwoModeState,
    /// Converted state from the eigen-exponential unitary.
    pub evolved: TwoModeState,
    /// Converted state from the binomial expansion; only defined at π/4.
    pub closed_form: Option<TwoModeState>,
    pub max_discrepancy: Option<f64>,
}

pub fn state(args: &StateArgs, out: &Output<'_>) -> Result<StateReport> {
    let spec = ConverterSpec::new(args.angle)?;
    let coefficients = args.mode.coefficients()?;
    let initial = initial_state(&coefficients)?;
    let evolved = evolve(&initial, spec)?;
    let closed_form = if (args.angle - FRAC_PI_4).abs() < 1e-15 { Some(closed_form_state(&coefficients)?) } else { None };
    let max_discrepancy = closed_form.as_ref().map(|c| c.max_abs_difference(&evolved));
    let report = StateReport { angle: args.angle, coefficients, initial, evolved, closed_form, max_discrepancy };
    out.write("state.json", json_string(&report)?.as_bytes(), "fock", json!({ "basis": "|N-n, n>, n ascending" }))?;
    Ok(report)
}

fn parse_pair(s: &str, what: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |t: &str| t.parse::<f64>().map_err(|_| Error::Validation(format!("{what}: cannot parse {t:?}")));
    match parts.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        _ => Err(Error::Validation(format!("{what} takes two comma-separated values, got {s:?}"))),
    }
}

pub fn wigner(args: &WignerArgs, out: &Output<'_>) -> Result<Vec<WignerSlice>> {
    let frozen = parse_pair(&args.frozen, "--frozen")?;
    let grid = SliceGrid::square(args.half_width, args.n);
    grid.validate()?;
    let panels: Vec<AxisPair> = if args.all_slices { AxisPair::all().to_vec() } else { vec![AxisPair::parse(&args.axes)?] };
    let coeffs = args.mode.coefficients()?;
    let state = match args.formula {
        FormulaArg::Exact => Some(evolve(&initial_state(&coeffs)?, ConverterSpec::vortex())?),
        FormulaArg::Paper => None,
    };
    let mut slices = Vec::with_capacity(panels.len());
    for axes in panels {
        let input = match &state {
            Some(state) => SliceInput::Exact { state },
            None => SliceInput::Paper { coeffs: &coeffs, sigma: args.sigma },
        };
        let s = slice(input, axes, frozen, grid)?;
        let rows = (0..grid.nv).flat_map(|j| (0..grid.nu).map(move |i| (i, j)));
        let csv = csv_string(
            &[axes.u.name(), axes.v.name(), "w"],
            rows.map(|(i, j)| vec![grid.u(i).into(), grid.v(j).into(), s.get(i, j).into()]),
        );
        let details = json!({
            "axes": s.axes,
            "frozen": s.frozen,
            "formula": s.formula,
            "sigma": s.sigma,
            "grid": s.grid,
            "min": s.min(),
            "max": s.max(),
            "coefficients": coeffs,
        });
        out.write(&format!("wigner_{}.csv", axes.label()), csv.as_bytes(), "wigner", details)?;
        slices.push(s);
    }
    Ok(slices)
}

/// Parses `a..b` (inclusive) or `a,b,c`.
pub fn parse_n_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Validation(format!("cannot parse photon-number list {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect()
}

pub fn entropy(args: &EntropyArgs, out: &Output<'_>) -> Result<ince_vortex::EntropySweep> {
    let eps = resolve_epsilon(args.eps)?;
    let base = match args.base {
        BaseArg::Natural => LogBase::Natural,
        BaseArg::Two => LogBase::Two,
    };
    let n_list = parse_n_list(&args.n_list)?;
    let sweep = entropy_sweep_with(args.m, eps, &n_list, base, &DecomposeOptions::default())?;
    let csv = csv_string(
        &["N", "m", "epsilon", "entropy", "schmidt_entropy", "base"],
        sweep.records.iter().map(|r| {
            vec![
                r.n_total.into(),
                r.m.into(),
                r.epsilon.into(),
                r.entropy.into(),
                r.schmidt_entropy.into(),
                base.name().into(),
            ]
        }),
    );
    let details = json!({ "epsilon_used": eps, "requested_N": n_list });
    out.write("entropy.csv", csv.as_bytes(), "entropy", details.clone())?;
    out.write("entropy_report.json", json_string(&sweep)?.as_bytes(), "entropy", details)?;
    Ok(sweep)
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormCheck {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub samples: usize,
    pub max_abs_difference: f64,
    /// Mean over all samples and entries of `Re(closed − oracle)`.
    pub mean_signed_re: f64,
    /// Mean over all samples and entries of `Im(closed − oracle)`.
    pub mean_signed_im: f64,
}

/// Compares the closed form with the unitary oracle on seeded random unit
/// vectors.
pub fn closed_form_checks(seed: u64, orders: &[u32], samples: usize) -> Result<Vec<ClosedFormCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(orders.len());
    for &n in orders {
        let len = ince_vortex::decompose::expansion_len(n)?;
        let (mut worst, mut sum_re, mut sum_im, mut count) = (0.0f64, 0.0, 0.0, 0usize);
        for _ in 0..samples {
            let amps: Vec<Complex64> =
                (0..len).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let coeffs = CoefficientVector::from_amplitudes(n, amps)?;
            let closed = closed_form_state(&coeffs)?;
            let oracle = evolve(&initial_state(&coeffs)?, ConverterSpec::vortex())?;
            for (c, o) in closed.amplitudes.iter().zip(&oracle.amplitudes) {
                let d = c - o;
                worst = worst.max(d.norm());
                sum_re += d.re;
                sum_im += d.im;
                count += 1;
            }
        }
        out.push(ClosedFormCheck {
            n_total: n,
            samples,
            max_abs_difference: worst,
            mean_signed_re: sum_re / count as f64,
            mean_signed_im: sum_im / count as f64,
        });
    }
    Ok(out)
}

fn mode_args(p: u32, m: u32, eps: f64) -> ModeArgs {
    ModeArgs { p, m, eps, overlap: OverlapArg::Hermitian, sign: SignArg::Plus }
}

/// Runs every stage at reduced resolution and writes a summary. Output
/// contains no timestamps or timings so repeated runs are byte-identical.
pub fn selftest(args: &SelftestArgs, out: &Output<'_>) -> Result<serde_json::Value> {
    let decompose_args = DecomposeArgs { mode: mode_args(5, 1, 2.0) };
    let (dir, config) = out.stage("decompose", &decompose_args)?;
    let coeffs = decompose(&decompose_args, &Output { dir: &dir, config })?;

    let state_args = StateArgs { mode: mode_args(5, 1, 2.0), angle: FRAC_PI_4 };
    let (dir, config) = out.stage("state", &state_args)?;
    let state_report = state(&state_args, &Output { dir: &dir, config })?;

    let intensity_args =
        IntensityArgs { mode: mode_args(5, 1, 2.0), grid_n: 129, grid_half: 6.0, field: FieldArg::Vortex };
    let (dir, config) = out.stage("intensity", &intensity_args)?;
    let intensity_summary = intensity(&intensity_args, &Output { dir: &dir, config })?;

    let wigner_args = WignerArgs {
        mode: mode_args(5, 1, 2.0),
        axes: "x,y".into(),
        frozen: "0,0".into(),
        formula: FormulaArg::Paper,
        all_slices: true,
        half_width: 4.0,
        n: 41,
        sigma: SQRT_2,
    };
    let (dir, config) = out.stage("wigner", &wigner_args)?;
    let slices = wigner(&wigner_args, &Output { dir: &dir, config })?;

    let entropy_args = EntropyArgs { m: 1, eps: 2.0, n_list: "1..9".into(), base: BaseArg::Natural };
    let (dir, config) = out.stage("entropy", &entropy_args)?;
    let sweep = entropy(&entropy_args, &Output { dir: &dir, config })?;

    let checks = closed_form_checks(args.seed, &[1, 3, 5, 7, 9], 100)?;
    let summary = json!({
        "seed": args.seed,
        "coefficients": coeffs.coefficients,
        "state_max_discrepancy": state_report.max_discrepancy,
        "intensity": intensity_summary,
        "wigner_minima": slices.iter().map(|s| json!({ "axes": s.axes.label(), "min": s.min(), "max": s.max() })).collect::<Vec<_>>(),
        "entropy": sweep.records,
        "closed_form_checks": checks,
    });
    out.write("selftest.json", json_string(&summary)?.as_bytes(), "cli", json!({}))?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn photon_number_lists() {
        assert_eq!(parse_n_list("1..9").unwrap(), (1..=9).collect::<Vec<_>>());
        assert_eq!(parse_n_list("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_n_list("3, 5,7").unwrap(), vec![3, 5, 7]);
        assert!(parse_n_list("9..1").is_err());
        assert!(parse_n_list("a").is_err());
    }

    #[test]
    fn limiting_ellipticities() {
        assert_eq!(resolve_epsilon(0.0).unwrap(), EPSILON_ZERO_SUBSTITUTE);
        assert_eq!(resolve_epsilon(f64::INFINITY).unwrap(), EPSILON_INFINITY_SUBSTITUTE);
        assert_eq!(resolve_epsilon(2.0).unwrap(), 2.0);
        assert!(resolve_epsilon(-1.0).is_err());
        assert!(resolve_epsilon(f64::NAN).is_err());
    }

    #[test]
    fn frozen_pairs() {
        assert_eq!(parse_pair("0, 1.5", "f").unwrap(), [0.0, 1.5]);
        assert!(parse_pair("0", "f").is_err());
    }
}
