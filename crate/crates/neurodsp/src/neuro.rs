//! Neural filter variants: a feedforward approximator of an FIR filter and
//! an Elman-style recurrent approximator of an IIR filter, both running
//! entirely in saturating fixed point with a table-driven tanh.
//!
//! The two networks share a datapath philosophy with the classical filters:
//! dot products accumulate exactly in double width and round once
//! ([`crate::fixedpoint::MacAccumulator`]), activations come from a
//! 1024-entry interpolated lookup table, and every weight update saturates
//! instead of wrapping. Training is plain online LMS on the output layer —
//! the feedforward net keeps its hidden layer as a fixed random projection,
//! and the recurrent net adds a one-step gradient for its input weight
//! (no unrolling through time).
//!
//! Weight matrices can be serialized as plain-text snapshots
//! ([`write_weight_matrix`]) and pushed through a simulated analog crossbar
//! ([`crossbar_quantize`]) to study conductance-quantization effects.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fixedpoint::{MacAccumulator, QFormat, QSample};
use crate::signals::Lcg31;

/// Default hidden width of the feedforward FIR approximator.
pub const DEFAULT_NFIR_HIDDEN: usize = 8;
/// Default hidden width of the recurrent IIR approximator.
pub const DEFAULT_ELMAN_HIDDEN: usize = 4;
/// Default LMS learning rate (an exact dyadic, representable in any format
/// with at least six fractional bits).
pub const DEFAULT_MU: f64 = 1.0 / 64.0;

/// Whether a network accepts weight updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Train,
    Infer,
}

// ---------------------------------------------------------------------------
// tanh lookup table
// ---------------------------------------------------------------------------

/// Number of table entries.
pub const TANH_LUT_SIZE: usize = 1024;
/// Half-width of the tabulated input range; inputs beyond it saturate.
pub const TANH_LUT_RANGE: f64 = 4.0;

/// A 1024-entry tanh table over [−4, 4] with linear interpolation.
///
/// Entries are quantized into the output format on an inclusive endpoint
/// grid, which makes the table odd-symmetric entry for entry. Lookups
/// evaluate the positive half and copy the sign back, so the interpolated
/// map itself is exactly odd. Inputs outside the tabulated range clamp to
/// one LSB below ±1 — the same place tanh is headed anyway, and the largest
/// value a fractional format can hold.
#[derive(Debug, Clone)]
pub struct TanhLut {
    entries: Vec<i64>,
    in_fmt: QFormat,
    out_fmt: QFormat,
}

/// The pre-activation format paired with a given data format: same
/// resolution, range widened to ±8 so a dot product can overshoot the
/// tabulated tanh range without clipping the accumulation early.
pub fn lut_input_format(data_fmt: QFormat) -> Result<QFormat> {
    QFormat::new(data_fmt.frac() + 4, data_fmt.frac())
}

impl TanhLut {
    pub fn new(in_fmt: QFormat, out_fmt: QFormat) -> Result<TanhLut> {
        let step = 2.0 * TANH_LUT_RANGE / (TANH_LUT_SIZE - 1) as f64;
        let mut entries = Vec::with_capacity(TANH_LUT_SIZE);
        for j in 0..TANH_LUT_SIZE {
            let x = -TANH_LUT_RANGE + j as f64 * step;
            entries.push(out_fmt.quantize(x.tanh())?.raw());
        }
        Ok(TanhLut {
            entries,
            in_fmt,
            out_fmt,
        })
    }

    /// The table sized for a network whose samples live in `data_fmt`:
    /// inputs in [`lut_input_format`]`(data_fmt)`, outputs back in
    /// `data_fmt`.
    pub fn for_data_format(data_fmt: QFormat) -> Result<TanhLut> {
        TanhLut::new(lut_input_format(data_fmt)?, data_fmt)
    }

    pub fn input_format(&self) -> QFormat {
        self.in_fmt
    }

    pub fn output_format(&self) -> QFormat {
        self.out_fmt
    }

    /// Table entry `j` (exposed for inspection; `j < 1024`).
    pub fn entry(&self, j: usize) -> QSample {
        self.out_fmt
            .from_raw(self.entries[j])
            .expect("table entries are in range by construction")
    }

    /// Looks up `tanh(x)` with linear interpolation between the two
    /// neighboring entries.
    pub fn map(&self, x: &QSample) -> Result<QSample> {
        if x.format() != self.in_fmt {
            return Err(Error::FormatMismatch {
                expected: self.in_fmt,
                got: x.format(),
            });
        }
        let magnitude = x.value().abs();
        let sat_raw = (1i64 << self.out_fmt.frac()) - 1; // one LSB below +1
        let raw = if magnitude >= TANH_LUT_RANGE {
            sat_raw
        } else {
            let step = 2.0 * TANH_LUT_RANGE / (TANH_LUT_SIZE - 1) as f64;
            let u = (magnitude + TANH_LUT_RANGE) / step;
            let j = u as usize; // 511 <= j <= 1022 since magnitude >= 0
            let t = u - j as f64;
            let lo = self.out_fmt.from_raw(self.entries[j])?.value();
            let hi = self.out_fmt.from_raw(self.entries[j + 1])?.value();
            self.out_fmt.quantize(lo + t * (hi - lo))?.raw()
        };
        self.out_fmt.from_raw(if x.raw() < 0 { -raw } else { raw })
    }
}

// ---------------------------------------------------------------------------
// weight initialization
// ---------------------------------------------------------------------------

fn draw_weight(rng: &mut Lcg31, fmt: QFormat) -> QSample {
    fmt.quantize(rng.next_unit() - 0.5)
        .expect("[-0.5, 0.5) fits every supported format")
}

fn init_matrix(rng: &mut Lcg31, rows: usize, cols: usize, fmt: QFormat) -> Vec<Vec<QSample>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| draw_weight(rng, fmt)).collect())
        .collect()
}

/// Caps each row's absolute sum at 0.9 (echo-state-style contraction) by
/// rescaling rows that exceed it. The rescale targets slightly below the cap
/// so requantization cannot push a row back over.
fn enforce_row_sum(rows: &mut [Vec<QSample>], fmt: QFormat) {
    const CAP: f64 = 0.9;
    for row in rows.iter_mut() {
        let sum: f64 = row.iter().map(|w| w.value().abs()).sum();
        if sum > CAP {
            let target = CAP - row.len() as f64 * fmt.lsb();
            let scale = target / sum;
            for w in row.iter_mut() {
                *w = fmt
                    .quantize(w.value() * scale)
                    .expect("scaling toward zero stays in range");
            }
        }
    }
}

fn row_abs_sum(row: &[QSample]) -> f64 {
    row.iter().map(|w| w.value().abs()).sum()
}

fn check_uniform_format(rows: &[Vec<QSample>], fmt: QFormat) -> Result<()> {
    for row in rows {
        for w in row {
            if w.format() != fmt {
                return Err(Error::FormatMismatch {
                    expected: fmt,
                    got: w.format(),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// feedforward FIR approximator
// ---------------------------------------------------------------------------

/// A single-hidden-layer feedforward network fed from a tap delay line,
/// trained online to mimic an FIR filter.
///
/// The hidden layer is a fixed random projection (drawn once from the seed);
/// only the output weights adapt, with the classic LMS rule
/// `w_out[i] += mu·err·hidden[i]` evaluated as a saturating product chain.
#[derive(Debug, Clone)]
pub struct NeuroFir {
    w_hidden: Vec<Vec<QSample>>, // n_hidden x n_taps, immutable after init
    w_out: Vec<QSample>,
    delay: Vec<QSample>, // most recent first
    last_hidden: Vec<QSample>,
    mu: QSample,
    lut: TanhLut,
    fmt: QFormat,
    mode: Mode,
}

impl NeuroFir {
    /// A fresh network: random hidden projection from `seed`, zero output
    /// weights, training enabled.
    pub fn new(n_taps: usize, n_hidden: usize, mu: f64, fmt: QFormat, seed: u32) -> Result<Self> {
        if n_taps == 0 || n_hidden == 0 {
            return Err(Error::InvalidParameter(
                "network needs at least one tap and one hidden unit".into(),
            ));
        }
        let mut rng = Lcg31::new(seed);
        let w_hidden = init_matrix(&mut rng, n_hidden, n_taps, fmt);
        let w_out = vec![QSample::zero(fmt); n_hidden];
        Self::from_weights(w_hidden, w_out, mu, fmt)
    }

    /// Defaults: 8 hidden units, mu = 2⁻⁶.
    pub fn with_defaults(n_taps: usize, fmt: QFormat, seed: u32) -> Result<Self> {
        Self::new(n_taps, DEFAULT_NFIR_HIDDEN, DEFAULT_MU, fmt, seed)
    }

    /// Builds a network around explicit weights (e.g. restored from a
    /// snapshot or requantized through a crossbar).
    pub fn from_weights(
        w_hidden: Vec<Vec<QSample>>,
        w_out: Vec<QSample>,
        mu: f64,
        fmt: QFormat,
    ) -> Result<Self> {
        let n_hidden = w_hidden.len();
        if n_hidden == 0 || w_hidden[0].is_empty() {
            return Err(Error::InvalidParameter("hidden weight matrix is empty".into()));
        }
        let n_taps = w_hidden[0].len();
        if w_hidden.iter().any(|r| r.len() != n_taps) {
            return Err(Error::InvalidParameter("hidden weight rows differ in length".into()));
        }
        if w_out.len() != n_hidden {
            return Err(Error::LengthMismatch {
                expected: n_hidden,
                got: w_out.len(),
            });
        }
        check_uniform_format(&w_hidden, fmt)?;
        check_uniform_format(std::slice::from_ref(&w_out), fmt)?;
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "learning rate must be positive, got {mu}"
            )));
        }
        Ok(NeuroFir {
            w_hidden,
            w_out,
            delay: vec![QSample::zero(fmt); n_taps],
            last_hidden: vec![QSample::zero(fmt); n_hidden],
            mu: fmt.quantize(mu)?,
            lut: TanhLut::for_data_format(fmt)?,
            fmt,
            mode: Mode::Train,
        })
    }

    pub fn n_taps(&self) -> usize {
        self.delay.len()
    }

    pub fn n_hidden(&self) -> usize {
        self.w_out.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.mode = mode;
    }

    pub fn hidden_weights(&self) -> &[Vec<QSample>] {
        &self.w_hidden
    }

    pub fn output_weights(&self) -> &[QSample] {
        &self.w_out
    }

    /// Hidden activations from the most recent forward pass.
    pub fn hidden_activations(&self) -> &[QSample] {
        &self.last_hidden
    }

    /// Clears the delay line and hidden activations; weights are kept.
    /// Used at phase boundaries (e.g. switching from training to test data).
    pub fn reset(&mut self) {
        self.delay = vec![QSample::zero(self.fmt); self.delay.len()];
        self.last_hidden = vec![QSample::zero(self.fmt); self.last_hidden.len()];
    }

    /// Shifts `x` into the delay line and produces the network output.
    pub fn forward(&mut self, x: &QSample) -> Result<QSample> {
        if x.format() != self.fmt {
            return Err(Error::FormatMismatch {
                expected: self.fmt,
                got: x.format(),
            });
        }
        self.delay.rotate_right(1);
        self.delay[0] = *x;

        for i in 0..self.w_out.len() {
            let mut acc = MacAccumulator::for_products(self.fmt, self.fmt);
            for (w, tap) in self.w_hidden[i].iter().zip(&self.delay) {
                acc.add_product(w, tap)?;
            }
            let pre = acc.finish(self.lut.input_format())?;
            self.last_hidden[i] = self.lut.map(&pre)?;
        }

        let mut out = MacAccumulator::for_products(self.fmt, self.fmt);
        for (w, h) in self.w_out.iter().zip(&self.last_hidden) {
            out.add_product(w, h)?;
        }
        out.finish(self.fmt)
    }

    /// One online training step: forward pass, then the LMS update
    /// `w_out[i] += (mu·err)·hidden[i]`. Returns `(y, err)` where
    /// `err = desired − y`. The hidden projection never changes.
    pub fn train_step(&mut self, x: &QSample, desired: &QSample) -> Result<(QSample, QSample)> {
        if self.mode != Mode::Train {
            return Err(Error::TrainingDisabled(
                "feedforward net is in infer mode; switch to Mode::Train to adapt weights",
            ));
        }
        let y = self.forward(x)?;
        let err = desired.sat_sub(&y)?;
        let mu_err = self.mu.sat_mul(&err)?;
        for i in 0..self.w_out.len() {
            let delta = mu_err.sat_mul(&self.last_hidden[i])?;
            self.w_out[i] = self.w_out[i].sat_add(&delta)?;
        }
        Ok((y, err))
    }
}

// ---------------------------------------------------------------------------
// Elman recurrent IIR approximator
// ---------------------------------------------------------------------------

/// A small Elman-style recurrent network trained online to mimic an IIR
/// filter: the hidden state feeds back through a fixed recurrent matrix,
/// giving the network the memory a recursive filter needs.
///
/// Training touches the output weights (plain LMS on the new hidden state)
/// and the input weights (a one-step gradient through the output layer and
/// the tanh slope — no unrolling through time). The recurrent matrix is
/// fixed after initialization, where each row's absolute sum is capped at
/// 0.9 so the state map stays contractive.
#[derive(Debug, Clone)]
pub struct ElmanNet {
    w_in: Vec<QSample>,
    w_rec: Vec<Vec<QSample>>, // n_hidden x n_hidden, immutable after init
    w_out: Vec<QSample>,
    h: Vec<QSample>,
    mu: QSample,
    lut: TanhLut,
    fmt: QFormat,
    mode: Mode,
}

impl ElmanNet {
    /// A fresh network: random input/recurrent weights from `seed` (with the
    /// row-sum cap applied), zero output weights, training enabled.
    pub fn new(n_hidden: usize, mu: f64, fmt: QFormat, seed: u32) -> Result<Self> {
        if n_hidden == 0 {
            return Err(Error::InvalidParameter("network needs at least one hidden unit".into()));
        }
        let mut rng = Lcg31::new(seed);
        let w_in = init_matrix(&mut rng, 1, n_hidden, fmt).pop().expect("one row");
        let mut w_rec = init_matrix(&mut rng, n_hidden, n_hidden, fmt);
        enforce_row_sum(&mut w_rec, fmt);
        let w_out = vec![QSample::zero(fmt); n_hidden];
        Self::from_weights(w_in, w_rec, w_out, mu, fmt)
    }

    /// Defaults: 4 hidden units, mu = 2⁻⁶.
    pub fn with_defaults(fmt: QFormat, seed: u32) -> Result<Self> {
        Self::new(DEFAULT_ELMAN_HIDDEN, DEFAULT_MU, fmt, seed)
    }

    /// Builds a network around explicit weights. The recurrent row-sum cap
    /// is enforced here too: it is an initialization invariant, whatever the
    /// weights' origin.
    pub fn from_weights(
        w_in: Vec<QSample>,
        w_rec: Vec<Vec<QSample>>,
        w_out: Vec<QSample>,
        mu: f64,
        fmt: QFormat,
    ) -> Result<Self> {
        let n_hidden = w_in.len();
        if n_hidden == 0 {
            return Err(Error::InvalidParameter("input weight vector is empty".into()));
        }
        if w_rec.len() != n_hidden || w_rec.iter().any(|r| r.len() != n_hidden) {
            return Err(Error::InvalidParameter(format!(
                "recurrent matrix must be {n_hidden}x{n_hidden}"
            )));
        }
        if w_out.len() != n_hidden {
            return Err(Error::LengthMismatch {
                expected: n_hidden,
                got: w_out.len(),
            });
        }
        check_uniform_format(&w_rec, fmt)?;
        check_uniform_format(std::slice::from_ref(&w_in), fmt)?;
        check_uniform_format(std::slice::from_ref(&w_out), fmt)?;
        for (i, row) in w_rec.iter().enumerate() {
            let sum = row_abs_sum(row);
            if sum > 0.9 {
                return Err(Error::InvalidParameter(format!(
                    "recurrent row {i} has absolute sum {sum:.4} > 0.9; the state map must stay contractive"
                )));
            }
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "learning rate must be positive, got {mu}"
            )));
        }
        Ok(ElmanNet {
            w_in,
            w_rec,
            w_out,
            h: vec![QSample::zero(fmt); n_hidden],
            mu: fmt.quantize(mu)?,
            lut: TanhLut::for_data_format(fmt)?,
            fmt,
            mode: Mode::Train,
        })
    }

    pub fn n_hidden(&self) -> usize {
        self.h.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.mode = mode;
    }

    pub fn input_weights(&self) -> &[QSample] {
        &self.w_in
    }

    pub fn recurrent_weights(&self) -> &[Vec<QSample>] {
        &self.w_rec
    }

    pub fn output_weights(&self) -> &[QSample] {
        &self.w_out
    }

    pub fn hidden_state(&self) -> &[QSample] {
        &self.h
    }

    /// Zeroes the hidden state; weights are kept. Used at phase boundaries.
    pub fn reset(&mut self) {
        self.h = vec![QSample::zero(self.fmt); self.h.len()];
    }

    /// One recurrent step: `h_i ← tanh(w_in[i]·x + Σ_j w_rec[i][j]·h_j)`,
    /// then `y = Σ_i w_out[i]·h_i`. Each pre-activation accumulates exactly
    /// and rounds once.
    pub fn forward(&mut self, x: &QSample) -> Result<QSample> {
        if x.format() != self.fmt {
            return Err(Error::FormatMismatch {
                expected: self.fmt,
                got: x.format(),
            });
        }
        let mut new_h = Vec::with_capacity(self.h.len());
        for i in 0..self.h.len() {
            let mut acc = MacAccumulator::for_products(self.fmt, self.fmt);
            acc.add_product(&self.w_in[i], x)?;
            for (w, hj) in self.w_rec[i].iter().zip(&self.h) {
                acc.add_product(w, hj)?;
            }
            let pre = acc.finish(self.lut.input_format())?;
            new_h.push(self.lut.map(&pre)?);
        }
        self.h = new_h;

        let mut out = MacAccumulator::for_products(self.fmt, self.fmt);
        for (w, h) in self.w_out.iter().zip(&self.h) {
            out.add_product(w, h)?;
        }
        out.finish(self.fmt)
    }

    /// One online training step: forward pass, then
    ///
    /// * `w_out[i] += (mu·err)·h_i` — LMS on the fresh hidden state;
    /// * `w_in[i]  += ((mu·err)·w_out_old[i])·(1 − h_i²)·x` — a one-step
    ///   gradient using the output weights from *before* this update, so a
    ///   network with zero output weights changes nothing but them.
    ///
    /// Returns `(y, err)` with `err = desired − y`.
    pub fn train_step(&mut self, x: &QSample, desired: &QSample) -> Result<(QSample, QSample)> {
        if self.mode != Mode::Train {
            return Err(Error::TrainingDisabled(
                "recurrent net is in infer mode; switch to Mode::Train to adapt weights",
            ));
        }
        let y = self.forward(x)?;
        let err = desired.sat_sub(&y)?;
        let mu_err = self.mu.sat_mul(&err)?;
        let one = self.fmt.quantize(1.0)?; // saturates to 1 − 1 LSB in pure-fractional formats
        let w_out_old = self.w_out.clone();
        for i in 0..self.w_out.len() {
            let delta = mu_err.sat_mul(&self.h[i])?;
            self.w_out[i] = self.w_out[i].sat_add(&delta)?;
        }
        for i in 0..self.w_in.len() {
            let gate = one.sat_sub(&self.h[i].sat_mul(&self.h[i])?)?;
            let delta = mu_err
                .sat_mul(&w_out_old[i])?
                .sat_mul(&gate)?
                .sat_mul(x)?;
            self.w_in[i] = self.w_in[i].sat_add(&delta)?;
        }
        Ok((y, err))
    }
}

// ---------------------------------------------------------------------------
// weight snapshots
// ---------------------------------------------------------------------------

/// Serializes a weight matrix as text: a header `format qW.F dims RxC`
/// followed by one decimal raw integer per line, row-major.
pub fn write_weight_matrix<W: Write>(rows: &[Vec<QSample>], mut out: W) -> Result<()> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::InvalidParameter("weight matrix is empty".into()));
    }
    let fmt = rows[0][0].format();
    check_uniform_format(rows, fmt)?;
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::InvalidParameter("weight rows differ in length".into()));
    }
    writeln!(out, "format {fmt} dims {n_rows}x{n_cols}")?;
    for row in rows {
        for w in row {
            writeln!(out, "{}", w.raw())?;
        }
    }
    Ok(())
}

/// Parses the [`write_weight_matrix`] text form. The dimensions separator
/// may be an ASCII `x` or the multiplication sign `×`.
pub fn parse_weight_matrix(text: &str) -> Result<Vec<Vec<QSample>>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("weight snapshot is empty".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (fmt_str, dims_str) = match tokens.as_slice() {
        ["format", f, "dims", d] => (*f, *d),
        _ => {
            return Err(Error::Parse(format!(
                "line 1: expected header `format qW.F dims RxC`, got `{header}`"
            )))
        }
    };
    let fmt: QFormat = fmt_str.parse()?;
    let (r_str, c_str) = dims_str
        .split_once(['x', '×'])
        .ok_or_else(|| Error::Parse(format!("line 1: dims `{dims_str}` lack an RxC separator")))?;
    let n_rows: usize = r_str
        .parse()
        .map_err(|_| Error::Parse(format!("line 1: bad row count `{r_str}`")))?;
    let n_cols: usize = c_str
        .parse()
        .map_err(|_| Error::Parse(format!("line 1: bad column count `{c_str}`")))?;
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::Parse("line 1: dimensions must be positive".into()));
    }

    let mut flat = Vec::with_capacity(n_rows * n_cols);
    for (idx, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let raw: i64 = trimmed.parse().map_err(|_| {
            Error::Parse(format!("line {}: `{trimmed}` is not a raw integer", idx + 1))
        })?;
        flat.push(fmt.from_raw(raw)?);
    }
    if flat.len() != n_rows * n_cols {
        return Err(Error::Parse(format!(
            "expected {} weights for dims {n_rows}x{n_cols}, found {}",
            n_rows * n_cols,
            flat.len()
        )));
    }
    Ok(flat.chunks(n_cols).map(|c| c.to_vec()).collect())
}

/// Reads a weight snapshot from a file.
pub fn load_weight_matrix(path: &Path) -> Result<Vec<Vec<QSample>>> {
    parse_weight_matrix(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// crossbar-backed weight storage
// ---------------------------------------------------------------------------

/// Pushes a weight matrix through differential crossbar programming and
/// back: each weight is snapped to one of 256 conductance levels on the
/// positive or negative plane, read out, and requantized into its original
/// format. The result is what the network would actually compute with if
/// its weights lived in analog conductances; the per-weight error is at most
/// half a conductance level plus half an LSB.
///
/// Weights must lie in [−1, 1] (the programmable range).
pub fn crossbar_quantize(
    weights: &[Vec<QSample>],
    g_min: f64,
    g_max: f64,
) -> Result<Vec<Vec<QSample>>> {
    let n_cols = weights.first().map_or(0, |r| r.len());
    if weights.is_empty() || n_cols == 0 {
        return Err(Error::InvalidParameter("weight matrix is empty".into()));
    }
    let fmt = weights[0][0].format();
    check_uniform_format(weights, fmt)?;
    let values: Vec<Vec<f64>> = weights
        .iter()
        .map(|row| row.iter().map(|w| w.value()).collect())
        .collect();
    let (pos, neg) = crate::memristor::program_weights(&values, g_min, g_max)?;
    let restored = crate::memristor::reconstruct_weights(&pos, &neg)?;
    restored
        .iter()
        .map(|row| row.iter().map(|&v| fmt.quantize(v)).collect())
        .collect()
}
