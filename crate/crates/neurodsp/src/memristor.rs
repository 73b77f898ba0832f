//! Memristor device models and analog crossbar arrays.
//!
//! Two device abstractions live here:
//!
//! * [`Memristor`] — a nonlinear-drift model. The internal state
//!   `x in [0, 1]` mixes the two limiting resistances,
//!   `G(x) = 1 / (r_on x + r_off (1 - x))`, and drifts as
//!   `dx/dt = k v G(x) w(x)` with the parabolic boundary window
//!   `w(x) = 4 x (1 - x)` (the p = 1 Joglekar shape) freezing motion at
//!   the rails. Driven by a sinusoid this traces the signature pinched
//!   hysteresis loop.
//! * [`threshold_flux_step`] — an activation-threshold alternative where
//!   the state moves only above a voltage threshold, with exponential
//!   sensitivity beyond it. The state is a raw flux-like variable that the
//!   caller scales/clamps.
//!
//! On top of the device sits the [`CrossbarMatrix`]: currents summing down
//! the columns of a conductance grid perform an analog multiply-accumulate,
//! and a differential pair of crossbars stores signed weights.

use std::io::Write;

use crate::error::{Error, Result};
use crate::signals::fmt_sig9;

/// Nonlinear-drift device constants.
#[derive(Debug, Clone, Copy)]
pub struct MemristorParams {
    /// Fully-on resistance (x = 1), ohms.
    pub r_on: f64,
    /// Fully-off resistance (x = 0), ohms.
    pub r_off: f64,
    /// Drift rate constant, 1/(V s) scaled by conductance.
    pub k: f64,
    /// Initial state.
    pub x0: f64,
}

impl Default for MemristorParams {
    fn default() -> Self {
        MemristorParams {
            r_on: 100.0,
            r_off: 16_000.0,
            k: 10_000.0,
            x0: 0.3,
        }
    }
}

impl MemristorParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("r_on", self.r_on), ("r_off", self.r_off), ("k", self.k)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.r_on <= 0.0 || self.r_off <= self.r_on {
            return Err(Error::InvalidParameter(format!(
                "need 0 < r_on < r_off, got r_on = {}, r_off = {}",
                self.r_on, self.r_off
            )));
        }
        if !(self.x0.is_finite() && (0.0..=1.0).contains(&self.x0)) {
            return Err(Error::InvalidParameter(format!(
                "x0 must lie in [0, 1], got {}",
                self.x0
            )));
        }
        Ok(())
    }

    /// The conductance extremes `(g_min, g_max) = (1/r_off, 1/r_on)` — the
    /// natural bounds for crossbar cells built from this device.
    pub fn conductance_bounds(&self) -> (f64, f64) {
        (1.0 / self.r_off, 1.0 / self.r_on)
    }
}

/// The parabolic boundary window `4 x (1 - x)`: unity at mid-range, zero at
/// both rails, so the state cannot drift past its physical limits.
#[inline]
pub fn boundary_window(x: f64) -> f64 {
    4.0 * x * (1.0 - x)
}

/// One nonlinear-drift memristor: parameters plus the state `x`.
#[derive(Debug, Clone)]
pub struct Memristor {
    params: MemristorParams,
    x: f64,
}

impl Memristor {
    /// A fresh device at `params.x0`.
    pub fn new(params: MemristorParams) -> Result<Self> {
        params.validate()?;
        Ok(Memristor { params, x: params.x0 })
    }

    /// A device with an explicit initial state (still confined to [0, 1]).
    pub fn with_state(params: MemristorParams, x: f64) -> Result<Self> {
        params.validate()?;
        if !(x.is_finite() && (0.0..=1.0).contains(&x)) {
            return Err(Error::InvalidParameter(format!("x must lie in [0, 1], got {x}")));
        }
        Ok(Memristor { params, x })
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn params(&self) -> &MemristorParams {
        &self.params
    }

    /// Instantaneous conductance `1 / (r_on x + r_off (1 - x))`.
    pub fn conductance(&self) -> f64 {
        1.0 / (self.params.r_on * self.x + self.params.r_off * (1.0 - self.x))
    }

    /// Ohmic readout `i = G(x) v`.
    pub fn current(&self, v: f64) -> f64 {
        self.conductance() * v
    }

    /// One explicit-Euler state update under voltage `v`:
    /// `x' = clamp(x + dt k v G(x) w(x), 0, 1)`.
    pub fn step(&mut self, v: f64, dt: f64) -> Result<()> {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput("memristor drive voltage"));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        let dx = dt * self.params.k * v * self.conductance() * boundary_window(self.x);
        self.x = (self.x + dx).clamp(0.0, 1.0);
        Ok(())
    }
}

/// Constants of the activation-threshold flux model.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdFluxParams {
    /// Current scale of the state motion.
    pub i0: f64,
    /// Exponential voltage sensitivity.
    pub v0: f64,
    /// Activation threshold: below `|v| <= v_th` the state is frozen.
    pub v_th: f64,
}

impl ThresholdFluxParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.i0.is_finite() && self.i0 > 0.0) {
            return Err(Error::InvalidParameter(format!("i0 must be positive, got {}", self.i0)));
        }
        if !(self.v0.is_finite() && self.v0 > 0.0) {
            return Err(Error::InvalidParameter(format!("v0 must be positive, got {}", self.v0)));
        }
        if !(self.v_th.is_finite() && self.v_th >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "v_th must be non-negative, got {}",
                self.v_th
            )));
        }
        Ok(())
    }
}

/// One update of the threshold-flux state:
///
/// ```text
/// w' = w + dt * i0 * sign(v) * (e^(|v|/v0) - e^(v_th/v0))   if |v| > v_th
/// w' = w                                                    otherwise
/// ```
///
/// The increment vanishes continuously as `|v|` approaches the threshold
/// from above. `w` is unbounded here; callers map or clamp it to a device
/// range.
pub fn threshold_flux_step(w: f64, v: f64, dt: f64, p: &ThresholdFluxParams) -> Result<f64> {
    p.validate()?;
    if !(w.is_finite() && v.is_finite()) {
        return Err(Error::NonFiniteInput("threshold flux state or voltage"));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if v.abs() <= p.v_th {
        return Ok(w);
    }
    let drive = (v.abs() / p.v0).exp() - (p.v_th / p.v0).exp();
    Ok(w + dt * p.i0 * v.signum() * drive)
}

// ---------------------------------------------------------------------------
// I-V sweep
// ---------------------------------------------------------------------------

/// Sinusoidal sweep configuration.
#[derive(Debug, Clone, Copy)]
pub struct IvSweepConfig {
    pub params: MemristorParams,
    /// Drive amplitude in volts.
    pub v_amp: f64,
    /// Drive frequency in Hz.
    pub v_freq: f64,
    /// Integration step in seconds.
    pub dt: f64,
    /// Number of whole drive periods to integrate.
    pub n_periods: usize,
}

/// One recorded sweep sample (state *before* the step at time `t`).
#[derive(Debug, Clone, Copy)]
pub struct IvPoint {
    pub t: f64,
    pub v: f64,
    pub i: f64,
    pub x: f64,
}

/// Integrates the device under `v(t) = v_amp sin(2 pi f t)` and records one
/// `(t, v, i, x)` point per step. The readout uses the state before each
/// update, so `v = 0` always reads back `i = 0` — the pinched loop is exact
/// at the origin.
pub fn iv_sweep(cfg: &IvSweepConfig) -> Result<Vec<IvPoint>> {
    cfg.params.validate()?;
    if !(cfg.v_amp.is_finite() && cfg.v_amp > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "drive amplitude must be positive, got {}",
            cfg.v_amp
        )));
    }
    if !(cfg.v_freq.is_finite() && cfg.v_freq > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "drive frequency must be positive, got {}",
            cfg.v_freq
        )));
    }
    if cfg.n_periods == 0 {
        return Err(Error::InvalidParameter("n_periods must be at least 1".into()));
    }
    let steps_per_period = 1.0 / (cfg.v_freq * cfg.dt);
    if !(cfg.dt.is_finite() && cfg.dt > 0.0) || steps_per_period < 8.0 {
        return Err(Error::InvalidParameter(format!(
            "dt = {} resolves under 8 steps per drive period",
            cfg.dt
        )));
    }
    let n_steps = (cfg.n_periods as f64 * steps_per_period).round() as usize;
    let mut device = Memristor::new(cfg.params)?;
    let mut points = Vec::with_capacity(n_steps);
    for j in 0..n_steps {
        let t = j as f64 * cfg.dt;
        let v = cfg.v_amp * (2.0 * std::f64::consts::PI * cfg.v_freq * t).sin();
        points.push(IvPoint {
            t,
            v,
            i: device.current(v),
            x: device.x(),
        });
        device.step(v, cfg.dt)?;
    }
    Ok(points)
}

/// Signed shoelace area of the `(v, i)` polygon traced by the points; the
/// absolute value measures how fat the hysteresis loop is.
pub fn enclosed_area(points: &[IvPoint]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mut twice_area = 0.0;
    for k in 0..points.len() {
        let a = &points[k];
        let b = &points[(k + 1) % points.len()];
        twice_area += a.v * b.i - b.v * a.i;
    }
    (twice_area / 2.0).abs()
}

/// Serializes sweep points as CSV with header `t,v,i,x`.
pub fn write_iv_csv<W: Write>(points: &[IvPoint], mut out: W) -> Result<()> {
    writeln!(out, "t,v,i,x")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_sig9(p.t),
            fmt_sig9(p.v),
            fmt_sig9(p.i),
            fmt_sig9(p.x)
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Crossbar
// ---------------------------------------------------------------------------

/// Number of programmable conductance levels per cell.
pub const CONDUCTANCE_LEVELS: u32 = 256;

/// A grid of programmed conductances with admissible range `[g_min, g_max]`.
///
/// Row voltages drive the grid; the column currents
/// `i_j = sum_i v_i g[i][j]` are the analog multiply-accumulate.
#[derive(Debug, Clone)]
pub struct CrossbarMatrix {
    g: Vec<f64>, // row-major
    rows: usize,
    cols: usize,
    g_min: f64,
    g_max: f64,
}

impl CrossbarMatrix {
    /// Wraps a conductance grid, checking shape and cell range.
    pub fn from_conductances(
        grid: Vec<Vec<f64>>,
        g_min: f64,
        g_max: f64,
    ) -> Result<CrossbarMatrix> {
        check_conductance_range(g_min, g_max)?;
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("crossbar must not be empty".into()));
        }
        let mut g = Vec::with_capacity(rows * cols);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (j, &cell) in row.iter().enumerate() {
                if !(cell.is_finite() && cell >= g_min && cell <= g_max) {
                    return Err(Error::InvalidParameter(format!(
                        "cell ({i},{j}) = {cell} outside [{g_min}, {g_max}]"
                    )));
                }
                g.push(cell);
            }
        }
        Ok(CrossbarMatrix {
            g,
            rows,
            cols,
            g_min,
            g_max,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn g_min(&self) -> f64 {
        self.g_min
    }

    pub fn g_max(&self) -> f64 {
        self.g_max
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.g[row * self.cols + col]
    }

    /// The analog multiply-accumulate: column currents under row voltages.
    pub fn mac(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            let row = &self.g[i * self.cols..(i + 1) * self.cols];
            for (j, &gij) in row.iter().enumerate() {
                out[j] += vi * gij;
            }
        }
        Ok(out)
    }
}

fn check_conductance_range(g_min: f64, g_max: f64) -> Result<()> {
    if !(g_min.is_finite() && g_max.is_finite() && 0.0 < g_min && g_min < g_max) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < g_min < g_max, got g_min = {g_min}, g_max = {g_max}"
        )));
    }
    Ok(())
}

/// Programs a signed weight matrix (entries in [-1, 1]) onto a differential
/// crossbar pair: the positive plane carries positive weights, the negative
/// plane the magnitudes of negative weights, and the unused cell of each
/// pair is parked at `g_min`.
///
/// Cell conductances snap to [`CONDUCTANCE_LEVELS`] evenly spaced levels
/// across `[g_min, g_max]`, so the reconstruction error per weight is at
/// most half a level (`1/510` of full scale).
pub fn program_weights(
    weights: &[Vec<f64>],
    g_min: f64,
    g_max: f64,
) -> Result<(CrossbarMatrix, CrossbarMatrix)> {
    check_conductance_range(g_min, g_max)?;
    let levels = (CONDUCTANCE_LEVELS - 1) as f64;
    let span = g_max - g_min;
    let mut pos = Vec::with_capacity(weights.len());
    let mut neg = Vec::with_capacity(weights.len());
    for (i, row) in weights.iter().enumerate() {
        let mut prow = Vec::with_capacity(row.len());
        let mut nrow = Vec::with_capacity(row.len());
        for (j, &w) in row.iter().enumerate() {
            if !(w.is_finite() && w.abs() <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "weight ({i},{j}) = {w} outside the programmable range [-1, 1]"
                )));
            }
            let g_active = g_min + (w.abs() * levels).round() / levels * span;
            if w >= 0.0 {
                prow.push(g_active);
                nrow.push(g_min);
            } else {
                prow.push(g_min);
                nrow.push(g_active);
            }
        }
        pos.push(prow);
        neg.push(nrow);
    }
    Ok((
        CrossbarMatrix::from_conductances(pos, g_min, g_max)?,
        CrossbarMatrix::from_conductances(neg, g_min, g_max)?,
    ))
}

/// Reads a weight matrix back from a differential pair:
/// `w = (g+ - g-) / (g_max - g_min)`.
pub fn reconstruct_weights(pos: &CrossbarMatrix, neg: &CrossbarMatrix) -> Result<Vec<Vec<f64>>> {
    if pos.rows != neg.rows || pos.cols != neg.cols {
        return Err(Error::LengthMismatch {
            expected: pos.rows * pos.cols,
            got: neg.rows * neg.cols,
        });
    }
    if pos.g_min != neg.g_min || pos.g_max != neg.g_max {
        return Err(Error::InvalidParameter(
            "differential planes disagree on the conductance range".into(),
        ));
    }
    let span = pos.g_max - pos.g_min;
    let mut out = Vec::with_capacity(pos.rows);
    for i in 0..pos.rows {
        out.push(
            (0..pos.cols)
                .map(|j| (pos.get(i, j) - neg.get(i, j)) / span)
                .collect(),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::Lcg31;

    #[test]
    fn conductance_endpoints_match_the_limiting_resistances() {
        let p = MemristorParams::default();
        let off = Memristor::with_state(p, 0.0).unwrap();
        assert!((off.conductance() - 1.0 / 16_000.0).abs() < 1e-18);
        let on = Memristor::with_state(p, 1.0).unwrap();
        assert!((on.conductance() - 1.0 / 100.0).abs() < 1e-15);
        let (g_min, g_max) = p.conductance_bounds();
        assert_eq!(g_min, 1.0 / 16_000.0);
        assert_eq!(g_max, 1.0 / 100.0);
    }

    #[test]
    fn window_freezes_motion_at_the_rails() {
        assert_eq!(boundary_window(0.0), 0.0);
        assert_eq!(boundary_window(1.0), 0.0);
        assert_eq!(boundary_window(0.5), 1.0);
        let p = MemristorParams::default();
        let mut at_rail = Memristor::with_state(p, 1.0).unwrap();
        at_rail.step(5.0, 1e-3).unwrap();
        assert_eq!(at_rail.x(), 1.0, "window must pin the boundary state");
    }

    #[test]
    fn state_stays_confined_under_random_drive() {
        let p = MemristorParams::default();
        let mut device = Memristor::new(p).unwrap();
        let mut rng = Lcg31::new(7);
        for _ in 0..100_000 {
            let v = 4.0 * rng.next_unit() - 2.0; // [-2, 2)
            device.step(v, 1e-4).unwrap();
            assert!((0.0..=1.0).contains(&device.x()), "x = {} escaped", device.x());
        }
    }

    #[test]
    fn sweep_is_pinched_and_encloses_area() {
        let cfg = IvSweepConfig {
            params: MemristorParams::default(),
            v_amp: 1.0,
            v_freq: 50.0,
            dt: 1e-5,
            n_periods: 3,
        };
        let pts = iv_sweep(&cfg).unwrap();
        assert_eq!(pts.len(), 6000);
        for p in &pts {
            if p.v == 0.0 {
                assert_eq!(p.i, 0.0, "loop must pass exactly through the origin");
            }
            assert!((0.0..=1.0).contains(&p.x));
        }
        let per_period = 2000;
        let area = enclosed_area(&pts[2 * per_period..]);
        assert!(area > 0.0, "hysteresis loop collapsed to a line");
    }

    #[test]
    fn state_returns_near_x0_and_matches_a_refined_integration() {
        let cfg = IvSweepConfig {
            params: MemristorParams::default(),
            v_amp: 1.0,
            v_freq: 50.0,
            dt: 1e-5,
            n_periods: 2,
        };
        let pts = iv_sweep(&cfg).unwrap();
        let x_end = pts.last().unwrap().x;
        assert!((x_end - 0.3).abs() < 1e-2, "x drifted to {x_end} after whole periods");

        // oracle: the same ODE integrated at dt/10 must agree to 1e-3
        let mut x = cfg.params.x0;
        let fine_dt = cfg.dt / 10.0;
        let n = (cfg.n_periods as f64 / (cfg.v_freq * fine_dt)).round() as usize - 10;
        for j in 0..n {
            let t = j as f64 * fine_dt;
            let v = cfg.v_amp * (2.0 * std::f64::consts::PI * cfg.v_freq * t).sin();
            let g = 1.0 / (cfg.params.r_on * x + cfg.params.r_off * (1.0 - x));
            x = (x + fine_dt * cfg.params.k * v * g * 4.0 * x * (1.0 - x)).clamp(0.0, 1.0);
        }
        assert!(
            (x_end - x).abs() <= 1e-3,
            "coarse {x_end} vs refined {x} disagree beyond 1e-3"
        );
    }

    #[test]
    fn sweep_validation() {
        let ok = IvSweepConfig {
            params: MemristorParams::default(),
            v_amp: 1.0,
            v_freq: 50.0,
            dt: 1e-5,
            n_periods: 1,
        };
        assert!(iv_sweep(&IvSweepConfig { v_amp: 0.0, ..ok }).is_err());
        assert!(iv_sweep(&IvSweepConfig { v_freq: -50.0, ..ok }).is_err());
        assert!(iv_sweep(&IvSweepConfig { n_periods: 0, ..ok }).is_err());
        assert!(
            iv_sweep(&IvSweepConfig { dt: 0.01, ..ok }).is_err(),
            "2 steps per period cannot trace a loop"
        );
        let bad = MemristorParams {
            r_on: 200.0,
            r_off: 100.0,
            ..MemristorParams::default()
        };
        assert!(Memristor::new(bad).is_err());
        let bad_x0 = MemristorParams {
            x0: 1.5,
            ..MemristorParams::default()
        };
        assert!(Memristor::new(bad_x0).is_err());
    }

    #[test]
    fn threshold_flux_freezes_below_threshold() {
        let p = ThresholdFluxParams {
            i0: 1e-3,
            v0: 0.25,
            v_th: 0.5,
        };
        assert_eq!(threshold_flux_step(0.1, 0.3, 1e-3, &p).unwrap(), 0.1);
        assert_eq!(threshold_flux_step(0.1, -0.5, 1e-3, &p).unwrap(), 0.1, "inclusive freeze");
        let up = threshold_flux_step(0.1, 1.0, 1e-3, &p).unwrap();
        assert!(up > 0.1, "positive overdrive must raise the state");
        let down = threshold_flux_step(0.1, -1.0, 1e-3, &p).unwrap();
        assert!(down < 0.1, "negative overdrive must lower it");
        // antisymmetric drive: equal magnitudes move w by opposite amounts
        assert!((up - 0.1 + (down - 0.1)).abs() < 1e-18);
        // continuity: just above threshold the increment is tiny
        let eps = threshold_flux_step(0.1, 0.5 + 1e-9, 1e-3, &p).unwrap();
        assert!((eps - 0.1).abs() < 1e-10);
    }

    #[test]
    fn threshold_flux_validation() {
        let p = ThresholdFluxParams {
            i0: 1e-3,
            v0: 0.25,
            v_th: 0.5,
        };
        assert!(threshold_flux_step(0.0, 1.0, 0.0, &p).is_err(), "dt = 0");
        assert!(threshold_flux_step(f64::NAN, 1.0, 1e-3, &p).is_err());
        let bad = ThresholdFluxParams { v0: 0.0, ..p };
        assert!(threshold_flux_step(0.0, 1.0, 1e-3, &bad).is_err());
    }

    #[test]
    fn crossbar_mac_equals_the_direct_dot_product() {
        let grid = vec![
            vec![1e-3, 2e-3, 3e-3],
            vec![4e-3, 5e-3, 6e-3],
        ];
        let xb = CrossbarMatrix::from_conductances(grid.clone(), 1e-4, 1e-2).unwrap();
        let v = [0.5, -0.25];
        let currents = xb.mac(&v).unwrap();
        for j in 0..3 {
            let direct: f64 = (0..2).map(|i| v[i] * grid[i][j]).sum();
            assert!((currents[j] - direct).abs() < 1e-18);
        }
        assert!(xb.mac(&[1.0]).is_err(), "row-count mismatch");
    }

    #[test]
    fn crossbar_rejects_out_of_range_cells() {
        let grid = vec![vec![2e-2]]; // above g_max
        assert!(CrossbarMatrix::from_conductances(grid, 1e-4, 1e-2).is_err());
        assert!(CrossbarMatrix::from_conductances(vec![], 1e-4, 1e-2).is_err());
        assert!(CrossbarMatrix::from_conductances(vec![vec![1e-3]], 1e-2, 1e-4).is_err());
        let ragged = vec![vec![1e-3, 1e-3], vec![1e-3]];
        assert!(CrossbarMatrix::from_conductances(ragged, 1e-4, 1e-2).is_err());
    }

    #[test]
    fn weight_programming_round_trip_within_one_level() {
        let (g_min, g_max) = MemristorParams::default().conductance_bounds();
        let mut rng = Lcg31::new(11);
        let weights: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..5).map(|_| 2.0 * rng.next_unit() - 1.0).collect())
            .collect();
        let (pos, neg) = program_weights(&weights, g_min, g_max).unwrap();
        let back = reconstruct_weights(&pos, &neg).unwrap();
        for (wr, br) in weights.iter().zip(&back) {
            for (&w, &b) in wr.iter().zip(br) {
                assert!(
                    (w - b).abs() <= 1.0 / 510.0 + 1e-12,
                    "weight {w} reconstructed as {b}"
                );
            }
        }
        // unused cells are parked at g_min
        for i in 0..4 {
            for j in 0..5 {
                if weights[i][j] >= 0.0 {
                    assert_eq!(neg.get(i, j), g_min);
                } else {
                    assert_eq!(pos.get(i, j), g_min);
                }
            }
        }
    }

    #[test]
    fn weight_programming_rejects_overrange() {
        let (g_min, g_max) = MemristorParams::default().conductance_bounds();
        assert!(program_weights(&[vec![1.5]], g_min, g_max).is_err());
        assert!(program_weights(&[vec![f64::NAN]], g_min, g_max).is_err());
        assert!(program_weights(&[vec![1.0]], g_min, g_max).is_ok(), "full scale is legal");
    }

    #[test]
    fn iv_csv_layout() {
        let pts = [IvPoint {
            t: 0.0,
            v: 0.5,
            i: 1e-4,
            x: 0.3,
        }];
        let mut buf = Vec::new();
        write_iv_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,v,i,x\n"));
        assert!(text.contains("0.00000000e0,5.00000000e-1,1.00000000e-4,3.00000000e-1"));
    }
}
