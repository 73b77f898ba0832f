//! Deterministic stimulus generation and quantized traces.
//!
//! All stochastic inputs in the crate come from one explicit, seedable
//! 31-bit linear congruential generator ([`Lcg31`]); there is no hidden
//! entropy anywhere, so a `(config, seed)` pair pins a trace bit for bit.
//!
//! The canonical stimulus is a sine wave plus bounded uniform noise,
//!
//! ```text
//! x[n] = quantize( A*sin(2*pi*f*n/fs) + A_noise*(2*(rnd_n mod 1000)/1000 - 1) )
//! ```
//!
//! where `rnd_n` is the n-th generator output. The noise term spans
//! `[-A_noise, A_noise)` exactly.

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::fixedpoint::{QFormat, QSample};

/// Multiplicative constant of the 31-bit LCG.
const LCG_MUL: u64 = 1_103_515_245;
/// Additive constant of the 31-bit LCG.
const LCG_ADD: u64 = 12_345;
/// Modulus `2^31`.
const LCG_MOD: u64 = 1 << 31;

/// The crate's only pseudo-random source:
/// `state' = (1103515245 * state + 12345) mod 2^31`.
///
/// Deliberately primitive — the point is reproducibility across runs,
/// platforms and reimplementations, not statistical quality.
#[derive(Debug, Clone)]
pub struct Lcg31 {
    state: u32,
}

impl Lcg31 {
    /// Seeds the generator. Only the low 31 bits of the seed are used.
    pub fn new(seed: u32) -> Self {
        Lcg31 {
            state: seed % (LCG_MOD as u32),
        }
    }

    /// Advances the state once and returns it (a value in `[0, 2^31)`).
    pub fn next_u31(&mut self) -> u32 {
        self.state = ((LCG_MUL * self.state as u64 + LCG_ADD) % LCG_MOD) as u32;
        self.state
    }

    /// A uniform draw in `[0, 1)` with 31 bits of resolution.
    pub fn next_unit(&mut self) -> f64 {
        self.next_u31() as f64 / LCG_MOD as f64
    }
}

/// Parameters of the noisy-sine stimulus.
#[derive(Debug, Clone)]
pub struct SignalConfig {
    /// Sine amplitude `A`.
    pub amplitude: f64,
    /// Sine frequency in Hz; must lie strictly inside the Nyquist band.
    pub freq_hz: f64,
    /// Sample rate in Hz.
    pub sample_rate_hz: f64,
    /// Uniform noise amplitude `A_noise`.
    pub noise_amp: f64,
    /// Number of samples to generate.
    pub n_steps: usize,
    /// LCG seed for the noise stream.
    pub seed: u32,
    /// Q-format the samples are quantized into.
    pub fmt: QFormat,
}

impl Default for SignalConfig {
    /// A 50 Hz tone at 1 kHz sampling, amplitude 0.6, 5% noise, 2000
    /// samples in Q15 — the stimulus used by the model-comparison harness.
    fn default() -> Self {
        SignalConfig {
            amplitude: 0.6,
            freq_hz: 50.0,
            sample_rate_hz: 1000.0,
            noise_amp: 0.05,
            n_steps: 2000,
            seed: 1,
            fmt: QFormat::Q15,
        }
    }
}

impl SignalConfig {
    /// Checks the parameter ranges; called by every generator.
    pub fn validate(&self) -> Result<()> {
        if !(self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sample rate must be positive, got {}",
                self.sample_rate_hz
            )));
        }
        if !(self.freq_hz.is_finite() && self.freq_hz > 0.0)
            || self.freq_hz >= self.sample_rate_hz / 2.0
        {
            return Err(Error::InvalidParameter(format!(
                "signal frequency must satisfy 0 < f < fs/2, got f = {} at fs = {}",
                self.freq_hz, self.sample_rate_hz
            )));
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "amplitude must be non-negative, got {}",
                self.amplitude
            )));
        }
        if !(self.noise_amp.is_finite() && self.noise_amp >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise amplitude must be non-negative, got {}",
                self.noise_amp
            )));
        }
        if self.amplitude + self.noise_amp > self.fmt.max_value() {
            return Err(Error::InvalidParameter(format!(
                "amplitude {} + noise {} exceeds {} range (would clip systematically)",
                self.amplitude, self.noise_amp, self.fmt
            )));
        }
        if self.n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// A sequence of fixed-point samples sharing one format.
///
/// The format is stored once; pushing a sample of a different format is an
/// error, so a `Trace` can never hold mixed precisions.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    raw: Vec<i64>,
    fmt: QFormat,
}

impl Trace {
    pub fn new(fmt: QFormat) -> Self {
        Trace { raw: Vec::new(), fmt }
    }

    pub fn with_capacity(fmt: QFormat, n: usize) -> Self {
        Trace {
            raw: Vec::with_capacity(n),
            fmt,
        }
    }

    /// Quantizes a slice of real values into a fresh trace.
    pub fn from_values(fmt: QFormat, values: &[f64]) -> Result<Self> {
        let mut t = Trace::with_capacity(fmt, values.len());
        for &v in values {
            t.push(fmt.quantize(v)?)?;
        }
        Ok(t)
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.fmt
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn push(&mut self, s: QSample) -> Result<()> {
        if s.format() != self.fmt {
            return Err(Error::FormatMismatch {
                expected: self.fmt,
                got: s.format(),
            });
        }
        self.raw.push(s.raw());
        Ok(())
    }

    pub fn get(&self, i: usize) -> Option<QSample> {
        self.raw.get(i).map(|&r| {
            self.fmt
                .from_raw(r)
                .expect("trace invariant: raw values stay within format rails")
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = QSample> + '_ {
        (0..self.len()).map(|i| self.get(i).unwrap())
    }

    /// The raw integer view of the trace.
    pub fn raw(&self) -> &[i64] {
        &self.raw
    }

    /// Dequantized values.
    pub fn values(&self) -> Vec<f64> {
        self.iter().map(|s| s.value()).collect()
    }

    /// Serializes the trace as CSV with header `n,raw,value`; values are
    /// printed with nine significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,raw,value")?;
        for (n, s) in self.iter().enumerate() {
            writeln!(out, "{n},{},{}", s.raw(), fmt_sig9(s.value()))?;
        }
        Ok(())
    }
}

/// Formats a value with nine significant digits (scientific notation), the
/// precision used by every CSV artifact in the crate.
pub(crate) fn fmt_sig9(v: f64) -> String {
    format!("{v:.8e}")
}

/// Generates the canonical noisy-sine stimulus for `cfg`.
///
/// Sample `n` consumes exactly one LCG draw, so the mapping from seed to
/// trace is pinned down to the bit and identical runs produce identical
/// traces.
pub fn gen_test_signal(cfg: &SignalConfig) -> Result<Trace> {
    cfg.validate()?;
    let mut rng = Lcg31::new(cfg.seed);
    let mut trace = Trace::with_capacity(cfg.fmt, cfg.n_steps);
    for n in 0..cfg.n_steps {
        let phase = 2.0 * PI * cfg.freq_hz * n as f64 / cfg.sample_rate_hz;
        let rnd = rng.next_u31();
        let noise = cfg.noise_amp * (2.0 * (rnd % 1000) as f64 / 1000.0 - 1.0);
        let sample = cfg.fmt.quantize(cfg.amplitude * phase.sin() + noise)?;
        trace.push(sample)?;
    }
    Ok(trace)
}

/// A single quantized impulse of the given amplitude followed by zeros.
pub fn gen_impulse(n_steps: usize, amplitude: f64, fmt: QFormat) -> Result<Trace> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
    }
    let mut trace = Trace::with_capacity(fmt, n_steps);
    trace.push(fmt.quantize(amplitude)?)?;
    for _ in 1..n_steps {
        trace.push(QSample::zero(fmt))?;
    }
    Ok(trace)
}

/// A quantized unit step scaled by `amplitude`.
pub fn gen_step(n_steps: usize, amplitude: f64, fmt: QFormat) -> Result<Trace> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
    }
    let mut trace = Trace::with_capacity(fmt, n_steps);
    let level = fmt.quantize(amplitude)?;
    for _ in 0..n_steps {
        trace.push(level)?;
    }
    Ok(trace)
}

/// Mean squared error between the dequantized values of two traces.
///
/// The traces must be non-empty and agree in length and format.
pub fn mse(a: &Trace, b: &Trace) -> Result<f64> {
    if a.format() != b.format() {
        return Err(Error::FormatMismatch {
            expected: a.format(),
            got: b.format(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidParameter("mse of empty traces".into()));
    }
    let sum: f64 = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| {
            let d = x.value() - y.value();
            d * d
        })
        .sum();
    Ok(sum / a.len() as f64)
}
