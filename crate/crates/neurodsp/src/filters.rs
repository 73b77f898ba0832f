//! Classical FIR/IIR filters on the exact fixed-point datapath.
//!
//! The structures here are deliberately literal translations of their
//! hardware block diagrams:
//!
//! * [`FirFilter`] — direct-form FIR, `y[n] = sum_k b_k x[n-k]`, one wide
//!   accumulator, one rounding.
//! * [`Biquad`] — second-order direct form I with a separate input gain,
//!   `y[n] = g (x[n] + beta1 x[n-1] + beta2 x[n-2]) - a1 y[n-1] - a2 y[n-2]`.
//! * [`IirDf2t`] — transposed direct form II for arbitrary order `(N, M)`.
//!
//! Both IIR forms keep their intermediate state at full product precision,
//! so in the absence of saturation they produce bit-identical outputs for
//! the same coefficients — a property the test suite leans on heavily.
//!
//! Designs (windowed-sinc low-pass FIR, bilinear-transform low-pass biquad)
//! are computed in `f64` and quantized as a final step.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fixedpoint::{round_half_even_shift, MacAccumulator, QFormat, QSample};
use crate::signals::{fmt_sig9, Trace};

// ---------------------------------------------------------------------------
// FIR
// ---------------------------------------------------------------------------

/// Direct-form FIR filter. Coefficients and data share one Q-format; the
/// delay line is ordered most-recent-first.
#[derive(Debug, Clone)]
pub struct FirFilter {
    coeffs: Vec<QSample>,
    delay: Vec<QSample>,
    fmt: QFormat,
}

impl FirFilter {
    /// Builds a filter from quantized taps (at least one, all in the same
    /// format).
    pub fn new(coeffs: Vec<QSample>) -> Result<Self> {
        let fmt = coeffs
            .first()
            .map(|c| c.format())
            .ok_or_else(|| Error::InvalidParameter("FIR needs at least one tap".into()))?;
        for c in &coeffs {
            if c.format() != fmt {
                return Err(Error::FormatMismatch {
                    expected: fmt,
                    got: c.format(),
                });
            }
        }
        let delay = vec![QSample::zero(fmt); coeffs.len()];
        Ok(FirFilter { coeffs, delay, fmt })
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.fmt
    }

    #[inline]
    pub fn n_taps(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[QSample] {
        &self.coeffs
    }

    /// Clears the delay line.
    pub fn reset(&mut self) {
        self.delay.fill(QSample::zero(self.fmt));
    }

    /// Shifts `x` into the delay line and returns
    /// `round(sum_k b_k x[n-k])`, accumulated at double width and
    /// rounded/saturated exactly once.
    pub fn step(&mut self, x: QSample) -> Result<QSample> {
        if x.format() != self.fmt {
            return Err(Error::FormatMismatch {
                expected: self.fmt,
                got: x.format(),
            });
        }
        self.delay.rotate_right(1);
        self.delay[0] = x;
        let mut mac = MacAccumulator::for_products(self.fmt, self.fmt);
        for (b, xk) in self.coeffs.iter().zip(&self.delay) {
            mac.add_product(b, xk)?;
        }
        mac.finish(self.fmt)
    }

    /// Filters a whole trace (the delay line carries over between calls;
    /// call [`FirFilter::reset`] first for a zero-state run).
    pub fn run(&mut self, input: &Trace) -> Result<Trace> {
        let mut out = Trace::with_capacity(self.fmt, input.len());
        for x in input.iter() {
            out.push(self.step(x)?)?;
        }
        Ok(out)
    }

    /// Sum of the dequantized taps — the filter's gain at DC.
    pub fn dc_gain(&self) -> f64 {
        fir_dc_gain(&self.coeffs)
    }
}

/// Sum of the dequantized taps, `H(e^j0)`.
pub fn fir_dc_gain(coeffs: &[QSample]) -> f64 {
    coeffs.iter().map(|c| c.value()).sum()
}

/// Evaluates the frequency response `H(e^jw) = sum_k h_k e^(-jwk)` of the
/// dequantized taps at a single normalized frequency `omega` in `[0, pi]`.
pub fn fir_freq_response(coeffs: &[QSample], omega: f64) -> Result<Complex64> {
    if !(omega.is_finite() && (0.0..=PI).contains(&omega)) {
        return Err(Error::InvalidParameter(format!(
            "omega must lie in [0, pi], got {omega}"
        )));
    }
    let mut h = Complex64::new(0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate() {
        h += Complex64::from_polar(c.value(), -omega * k as f64);
    }
    Ok(h)
}

/// Converts a magnitude to decibels, `20 log10 |H|`. Zero or negative
/// magnitudes have no dB value and are rejected.
pub fn gain_db(magnitude: f64) -> Result<f64> {
    if !(magnitude.is_finite() && magnitude > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gain_db needs a positive magnitude, got {magnitude}"
        )));
    }
    Ok(20.0 * magnitude.log10())
}

/// Designs a Hamming-windowed-sinc low-pass FIR.
///
/// `num_taps` must be odd (linear phase around the center tap); `cutoff` is
/// the normalized cutoff in cycles/sample, strictly inside `(0, 0.5)`. The
/// real-valued taps are normalized to sum to exactly 1 before quantization,
/// so the DC gain is 1 up to one rounding per tap.
pub fn design_lowpass_fir(num_taps: usize, cutoff: f64, fmt: QFormat) -> Result<Vec<QSample>> {
    if num_taps == 0 || num_taps % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "num_taps must be odd and positive, got {num_taps}"
        )));
    }
    if !(cutoff.is_finite() && cutoff > 0.0 && cutoff < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "cutoff must lie in (0, 0.5), got {cutoff}"
        )));
    }
    if num_taps == 1 {
        // degenerate all-pass: a single unity tap (clips to the format's
        // largest value when 1.0 is not representable, e.g. q16.15)
        return Ok(vec![fmt.quantize(1.0)?]);
    }
    let mid = (num_taps - 1) as f64 / 2.0;
    let mut taps = Vec::with_capacity(num_taps);
    for k in 0..num_taps {
        let t = k as f64 - mid;
        let ideal = if t == 0.0 {
            2.0 * cutoff
        } else {
            (2.0 * PI * cutoff * t).sin() / (PI * t)
        };
        let window = 0.54 - 0.46 * (2.0 * PI * k as f64 / (num_taps - 1) as f64).cos();
        taps.push(ideal * window);
    }
    let sum: f64 = taps.iter().sum();
    taps.iter()
        .map(|&h| fmt.quantize(h / sum))
        .collect::<Result<Vec<_>>>()
}

// ---------------------------------------------------------------------------
// Biquad (direct form I)
// ---------------------------------------------------------------------------

/// Quantized biquad coefficients `(g, beta1, beta2, a1, a2)` for
/// `H(z) = g (1 + beta1 z^-1 + beta2 z^-2) / (1 + a1 z^-1 + a2 z^-2)`.
///
/// Construction enforces the second-order stability triangle
/// `|a2| < 1` and `|a1| < 1 + a2` on the dequantized values, so a
/// `BiquadCoeffs` always describes poles strictly inside the unit circle.
#[derive(Debug, Clone)]
pub struct BiquadCoeffs {
    g: QSample,
    beta1: QSample,
    beta2: QSample,
    a1: QSample,
    a2: QSample,
}

impl BiquadCoeffs {
    /// Wraps five samples (all in one format) after the stability check.
    pub fn new(
        g: QSample,
        beta1: QSample,
        beta2: QSample,
        a1: QSample,
        a2: QSample,
    ) -> Result<Self> {
        let fmt = g.format();
        for c in [&beta1, &beta2, &a1, &a2] {
            if c.format() != fmt {
                return Err(Error::FormatMismatch {
                    expected: fmt,
                    got: c.format(),
                });
            }
        }
        if !Self::is_stable_pair(a1.value(), a2.value()) {
            return Err(Error::UnstableFilter(format!(
                "a1 = {}, a2 = {} violate |a2| < 1 and |a1| < 1 + a2",
                a1.value(),
                a2.value()
            )));
        }
        Ok(BiquadCoeffs {
            g,
            beta1,
            beta2,
            a1,
            a2,
        })
    }

    /// The stability triangle for a second-order denominator
    /// `1 + a1 z^-1 + a2 z^-2`.
    pub fn is_stable_pair(a1: f64, a2: f64) -> bool {
        a2.abs() < 1.0 && a1.abs() < 1.0 + a2
    }

    /// The coefficient format paired with a given data format.
    ///
    /// Low-pass feedback taps reach magnitude 2 (`a1 = -2 cos w0` before
    /// normalization) and the feedforward shape is `(1, 2, 1)`, so
    /// coefficients need two integer bits that a fractional-only data
    /// format such as q16.15 does not have. Six extra fractional guard
    /// bits keep the quantized DC gain within `4 lsb` of unity even for
    /// low-cutoff designs, whose small input gain `g` amplifies relative
    /// coefficient round-off. The resulting asymmetry (q16.15 data with
    /// q24.21 coefficients) mirrors the uneven multiplier ports of common
    /// DSP slices.
    pub fn coefficient_format(data_fmt: QFormat) -> QFormat {
        let frac = (data_fmt.frac() + 6).min(61);
        QFormat::new(frac + 3, frac).expect("frac+3 <= 64 by construction")
    }

    /// Bilinear-transform low-pass design (Butterworth for
    /// `q = 1/sqrt(2)`) at normalized cutoff `(0, 0.5)`, quantized into
    /// [`BiquadCoeffs::coefficient_format`] of `data_fmt`.
    ///
    /// The real-valued design has exactly unity DC gain; quantization moves
    /// it by at most a few coefficient lsb.
    pub fn design_lowpass(cutoff: f64, q: f64, data_fmt: QFormat) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0 && cutoff < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "cutoff must lie in (0, 0.5), got {cutoff}"
            )));
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
        }
        let w0 = 2.0 * PI * cutoff;
        let (sin_w0, cos_w0) = w0.sin_cos();
        let alpha = sin_w0 / (2.0 * q);
        let a0 = 1.0 + alpha;
        let b0 = (1.0 - cos_w0) / 2.0;
        let g = b0 / a0;
        let beta1 = 2.0;
        let beta2 = 1.0;
        let a1 = -2.0 * cos_w0 / a0;
        let a2 = (1.0 - alpha) / a0;

        let cf = Self::coefficient_format(data_fmt);
        BiquadCoeffs::new(
            cf.quantize(g)?,
            cf.quantize(beta1)?,
            cf.quantize(beta2)?,
            cf.quantize(a1)?,
            cf.quantize(a2)?,
        )
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.g.format()
    }

    pub fn g(&self) -> QSample {
        self.g
    }

    pub fn beta1(&self) -> QSample {
        self.beta1
    }

    pub fn beta2(&self) -> QSample {
        self.beta2
    }

    pub fn a1(&self) -> QSample {
        self.a1
    }

    pub fn a2(&self) -> QSample {
        self.a2
    }

    /// Transfer function value at `z = 1` (DC), on dequantized coefficients.
    pub fn dc_gain(&self) -> f64 {
        self.g.value() * (1.0 + self.beta1.value() + self.beta2.value())
            / (1.0 + self.a1.value() + self.a2.value())
    }
}

/// Checks that the 128-bit accumulator has headroom for a product chain of
/// `extra` guard bits on top of the operand widths.
fn check_accumulator_headroom(bits: u32, what: &str) -> Result<()> {
    if bits > 120 {
        return Err(Error::InvalidParameter(format!(
            "{what}: formats too wide for the 128-bit accumulator ({bits} bits needed)"
        )));
    }
    Ok(())
}

/// Second-order IIR section, direct form I.
///
/// State (two past inputs, two past outputs) lives in the data format; the
/// difference equation is evaluated with exact products and a single
/// rounding, honouring the `g (x + beta1 x1 + beta2 x2)` grouping:
/// the feedforward sum stays unrounded before the multiply by `g`.
#[derive(Debug, Clone)]
pub struct Biquad {
    coeffs: BiquadCoeffs,
    data_fmt: QFormat,
    x1: i64,
    x2: i64,
    y1: i64,
    y2: i64,
}

impl Biquad {
    pub fn new(coeffs: BiquadCoeffs, data_fmt: QFormat) -> Result<Self> {
        // g * (x << Fc + b*x) needs ~2 Wc + Wd bits plus a few guard bits
        check_accumulator_headroom(
            2 * coeffs.format().width() + data_fmt.width() + 4,
            "biquad",
        )?;
        Ok(Biquad {
            coeffs,
            data_fmt,
            x1: 0,
            x2: 0,
            y1: 0,
            y2: 0,
        })
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.data_fmt
    }

    pub fn coeffs(&self) -> &BiquadCoeffs {
        &self.coeffs
    }

    /// Clears the four state registers.
    pub fn reset(&mut self) {
        self.x1 = 0;
        self.x2 = 0;
        self.y1 = 0;
        self.y2 = 0;
    }

    /// One difference-equation update:
    /// `y[n] = g (x[n] + beta1 x[n-1] + beta2 x[n-2]) - a1 y[n-1] - a2 y[n-2]`,
    /// rounded and saturated once into the data format.
    pub fn step(&mut self, x: QSample) -> Result<QSample> {
        if x.format() != self.data_fmt {
            return Err(Error::FormatMismatch {
                expected: self.data_fmt,
                got: x.format(),
            });
        }
        let fc = self.coeffs.format().frac();
        let c = &self.coeffs;
        // feedforward sum at scale 2^(Fc+Fd): x enters shifted by Fc
        let ff = ((x.raw() as i128) << fc)
            + c.beta1.raw() as i128 * self.x1 as i128
            + c.beta2.raw() as i128 * self.x2 as i128;
        // feedback products at scale 2^(Fc+Fd), lifted to 2^(2Fc+Fd)
        let fb = c.a1.raw() as i128 * self.y1 as i128 + c.a2.raw() as i128 * self.y2 as i128;
        let acc = (c.g.raw() as i128)
            .saturating_mul(ff)
            .saturating_sub(fb << fc);
        let y = self.data_fmt.saturate(round_half_even_shift(acc, 2 * fc));
        self.x2 = self.x1;
        self.x1 = x.raw();
        self.y2 = self.y1;
        self.y1 = y.raw();
        Ok(y)
    }

    /// Filters a whole trace, carrying state across calls.
    pub fn run(&mut self, input: &Trace) -> Result<Trace> {
        let mut out = Trace::with_capacity(self.data_fmt, input.len());
        for x in input.iter() {
            out.push(self.step(x)?)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Transposed direct form II
// ---------------------------------------------------------------------------

/// IIR filter of order `(N, M)` in transposed direct form II:
///
/// ```text
/// y[n]  = b0 x[n] + s1[n-1]
/// si[n] = b_i x[n] - a_i y[n] + s_{i+1}[n-1]
/// ```
///
/// The state registers hold exact (unrounded) product sums, which is what
/// makes this form agree bit for bit with direct form I when nothing
/// saturates.
#[derive(Debug, Clone)]
pub struct IirDf2t {
    b: Vec<QSample>,
    a: Vec<QSample>, // a1..aN; the implicit a0 is 1
    state: Vec<i128>,
    coeff_fmt: QFormat,
    data_fmt: QFormat,
}

impl IirDf2t {
    /// Builds the filter from feedforward taps `b = [b0..bM]` and feedback
    /// taps `a = [a1..aN]` (the leading `a0 = 1` is implicit). All
    /// coefficients share one format.
    pub fn new(b: Vec<QSample>, a: Vec<QSample>, data_fmt: QFormat) -> Result<Self> {
        let coeff_fmt = b
            .first()
            .map(|c| c.format())
            .ok_or_else(|| Error::InvalidParameter("DF2T needs at least b0".into()))?;
        for c in b.iter().chain(a.iter()) {
            if c.format() != coeff_fmt {
                return Err(Error::FormatMismatch {
                    expected: coeff_fmt,
                    got: c.format(),
                });
            }
        }
        check_accumulator_headroom(coeff_fmt.width() + data_fmt.width() + 8, "DF2T")?;
        let n_state = (b.len() - 1).max(a.len());
        Ok(IirDf2t {
            b,
            a,
            state: vec![0; n_state],
            coeff_fmt,
            data_fmt,
        })
    }

    /// `(N, M)`: feedback and feedforward orders.
    pub fn order(&self) -> (usize, usize) {
        (self.a.len(), self.b.len() - 1)
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.data_fmt
    }

    /// Clears the state registers.
    pub fn reset(&mut self) {
        self.state.fill(0);
    }

    fn b_raw(&self, k: usize) -> i128 {
        self.b.get(k).map_or(0, |c| c.raw() as i128)
    }

    fn a_raw(&self, k: usize) -> i128 {
        // a[k] for k >= 1; a0 is the implicit unity
        self.a.get(k - 1).map_or(0, |c| c.raw() as i128)
    }

    /// One transposed-form update; output is rounded and saturated once.
    pub fn step(&mut self, x: QSample) -> Result<QSample> {
        if x.format() != self.data_fmt {
            return Err(Error::FormatMismatch {
                expected: self.data_fmt,
                got: x.format(),
            });
        }
        let fc = self.coeff_fmt.frac();
        let xr = x.raw() as i128;
        let acc = self.b_raw(0).saturating_mul(xr).saturating_add(
            self.state.first().copied().unwrap_or(0),
        );
        let y = self.data_fmt.saturate(round_half_even_shift(acc, fc));
        let yr = y.raw() as i128;
        let n = self.state.len();
        for i in 0..n {
            let carry = if i + 1 < n { self.state[i + 1] } else { 0 };
            self.state[i] = self
                .b_raw(i + 1)
                .saturating_mul(xr)
                .saturating_sub(self.a_raw(i + 1).saturating_mul(yr))
                .saturating_add(carry);
        }
        Ok(y)
    }

    /// Filters a whole trace, carrying state across calls.
    pub fn run(&mut self, input: &Trace) -> Result<Trace> {
        let mut out = Trace::with_capacity(self.data_fmt, input.len());
        for x in input.iter() {
            out.push(self.step(x)?)?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Coefficient files and frequency-sweep CSV
// ---------------------------------------------------------------------------

/// Parses a coefficient file: one decimal value per line, `#` starts a
/// comment, blank lines are skipped.
pub fn parse_coefficients(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let v: f64 = body.parse().map_err(|_| {
            Error::Parse(format!(
                "coefficient line {}: expected a decimal number, got {body:?}",
                idx + 1
            ))
        })?;
        if !v.is_finite() {
            return Err(Error::Parse(format!(
                "coefficient line {}: value must be finite",
                idx + 1
            )));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Parse("coefficient file holds no values".into()));
    }
    Ok(out)
}

/// Reads and parses a coefficient file from disk.
pub fn load_coefficients(path: &Path) -> Result<Vec<f64>> {
    parse_coefficients(&std::fs::read_to_string(path)?)
}

/// Quantizes real coefficients into the given format.
pub fn quantize_coefficients(values: &[f64], fmt: QFormat) -> Result<Vec<QSample>> {
    values.iter().map(|&v| fmt.quantize(v)).collect()
}

/// Sweeps `H(e^jw)` over `points` frequencies spanning `[0, pi]` inclusive
/// and writes CSV rows `omega,re,im,magnitude,gain_db` (gain is `-inf` at
/// exact nulls).
pub fn write_freq_sweep_csv<W: Write>(
    coeffs: &[QSample],
    points: usize,
    mut out: W,
) -> Result<()> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!(
            "freq sweep needs at least 2 points, got {points}"
        )));
    }
    writeln!(out, "omega,re,im,magnitude,gain_db")?;
    for j in 0..points {
        let omega = PI * j as f64 / (points - 1) as f64;
        let h = fir_freq_response(coeffs, omega.min(PI))?;
        let mag = h.norm();
        let db = if mag > 0.0 {
            fmt_sig9(gain_db(mag)?)
        } else {
            "-inf".to_string()
        };
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig9(omega),
            fmt_sig9(h.re),
            fmt_sig9(h.im),
            fmt_sig9(mag),
            db
        )?;
    }
    Ok(())
}
