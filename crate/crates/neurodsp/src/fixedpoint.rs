//! Signed Q-format fixed-point arithmetic.
//!
//! Every sample in the simulated datapath is a two's-complement integer
//! interpreted as `raw / 2^frac` for a format `qW.F` (total width `W` bits
//! including sign, `F` fractional bits). The arithmetic rules mirror a
//! conservative hardware multiply-accumulate slice:
//!
//! * conversion from real values rounds to nearest, ties to even;
//! * additions and multiplications **saturate** at the format rails instead
//!   of wrapping;
//! * a multiply produces the exact double-width product, which is rounded
//!   back to the working precision in one step;
//! * dot products accumulate exact double-width products and round/saturate
//!   **once** at the end ([`MacAccumulator`]), the way a DSP slice with a
//!   wide accumulator behaves.
//!
//! Keeping a single, well-defined rounding point is what makes the filter
//! outputs reproducible against arbitrary-precision references in the tests.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A signed fixed-point format `qW.F`: `W` total bits (2..=64, sign
/// included), `F` fractional bits (0..=W-1).
///
/// Representable values are `raw / 2^F` for `raw` in
/// `[-2^(W-1), 2^(W-1) - 1]`, i.e. the range `[-2^(W-1-F), 2^(W-1-F) - 2^-F]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QFormat {
    width: u32,
    frac: u32,
}

impl QFormat {
    /// The classic 16-bit audio format: 1 sign bit, 15 fractional bits,
    /// range `[-1, 1 - 2^-15]`.
    pub const Q15: QFormat = QFormat { width: 16, frac: 15 };

    /// A roomier 24-bit format with 16 fractional bits, range `[-128, 128)`.
    /// This is the crate default where no format is specified.
    pub const Q24_16: QFormat = QFormat { width: 24, frac: 16 };

    /// Builds a format, rejecting widths outside 2..=64 and `frac >= width`.
    pub fn new(width: u32, frac: u32) -> Result<Self> {
        if !(2..=64).contains(&width) {
            return Err(Error::InvalidFormat(format!(
                "width must be in 2..=64, got {width}"
            )));
        }
        if frac > width - 1 {
            return Err(Error::InvalidFormat(format!(
                "frac must be in 0..={}, got {frac} (format q{width}.{frac})",
                width - 1
            )));
        }
        Ok(QFormat { width, frac })
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn frac(&self) -> u32 {
        self.frac
    }

    /// Smallest representable raw value, `-2^(W-1)`.
    #[inline]
    pub fn min_raw(&self) -> i64 {
        (-(1i128 << (self.width - 1))) as i64
    }

    /// Largest representable raw value, `2^(W-1) - 1`.
    #[inline]
    pub fn max_raw(&self) -> i64 {
        ((1i128 << (self.width - 1)) - 1) as i64
    }

    /// The value of one least-significant bit, `2^-F`.
    #[inline]
    pub fn lsb(&self) -> f64 {
        2f64.powi(-(self.frac as i32))
    }

    /// Largest representable value, `(2^(W-1) - 1) / 2^F`.
    pub fn max_value(&self) -> f64 {
        self.max_raw() as f64 * self.lsb()
    }

    /// Smallest (most negative) representable value, `-2^(W-1-F)`.
    pub fn min_value(&self) -> f64 {
        self.min_raw() as f64 * self.lsb()
    }

    /// Converts a real value to the nearest representable sample.
    ///
    /// Rounds to nearest with ties to even, then saturates to the format
    /// rails. Out-of-range inputs are not an error — they clip — but NaN or
    /// infinite inputs are rejected.
    pub fn quantize(&self, value: f64) -> Result<QSample> {
        if !value.is_finite() {
            return Err(Error::NonFiniteInput("quantize"));
        }
        let scaled = value * 2f64.powi(self.frac as i32);
        let rounded = scaled.round_ties_even();
        let raw = if rounded >= self.max_raw() as f64 {
            self.max_raw()
        } else if rounded <= self.min_raw() as f64 {
            self.min_raw()
        } else {
            rounded as i64
        };
        Ok(QSample { raw, fmt: *self })
    }

    /// Wraps an already-quantized integer, rejecting values outside the rails.
    pub fn from_raw(&self, raw: i64) -> Result<QSample> {
        if raw < self.min_raw() || raw > self.max_raw() {
            return Err(Error::InvalidParameter(format!(
                "raw value {raw} outside {self} range [{}, {}]",
                self.min_raw(),
                self.max_raw()
            )));
        }
        Ok(QSample { raw, fmt: *self })
    }

    /// Clamps a wide intermediate result onto the format rails.
    ///
    /// This is the final saturation stage of every datapath operation; it
    /// never wraps.
    #[inline]
    pub fn saturate(&self, wide: i128) -> QSample {
        let raw = if wide > self.max_raw() as i128 {
            self.max_raw()
        } else if wide < self.min_raw() as i128 {
            self.min_raw()
        } else {
            wide as i64
        };
        QSample { raw, fmt: *self }
    }
}

impl Default for QFormat {
    fn default() -> Self {
        QFormat::Q24_16
    }
}

impl fmt::Display for QFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}.{}", self.width, self.frac)
    }
}

impl FromStr for QFormat {
    type Err = Error;

    /// Parses the `qW.F` notation, e.g. `q16.15`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFormat(format!("expected qW.F notation, got {s:?}"));
        let rest = s.strip_prefix(['q', 'Q']).ok_or_else(bad)?;
        let (w, f) = rest.split_once('.').ok_or_else(bad)?;
        let width: u32 = w.parse().map_err(|_| bad())?;
        let frac: u32 = f.parse().map_err(|_| bad())?;
        QFormat::new(width, frac)
    }
}

/// One fixed-point sample: a raw integer tagged with its format.
///
/// Operations between samples require identical formats; mixing formats is
/// a programming error reported as [`Error::FormatMismatch`], never silently
/// rescaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QSample {
    raw: i64,
    fmt: QFormat,
}

impl QSample {
    #[inline]
    pub fn raw(&self) -> i64 {
        self.raw
    }

    #[inline]
    pub fn format(&self) -> QFormat {
        self.fmt
    }

    /// The represented real value, `raw * 2^-F`.
    #[inline]
    pub fn value(&self) -> f64 {
        self.raw as f64 * self.fmt.lsb()
    }

    /// A zero sample in the given format.
    #[inline]
    pub fn zero(fmt: QFormat) -> QSample {
        QSample { raw: 0, fmt }
    }

    fn check_fmt(&self, other: &QSample) -> Result<()> {
        if self.fmt != other.fmt {
            return Err(Error::FormatMismatch {
                expected: self.fmt,
                got: other.fmt,
            });
        }
        Ok(())
    }

    /// Saturating addition. The exact sum is clamped to the format rails.
    pub fn sat_add(&self, other: &QSample) -> Result<QSample> {
        self.check_fmt(other)?;
        Ok(self.fmt.saturate(self.raw as i128 + other.raw as i128))
    }

    /// Saturating subtraction, `self - other`.
    pub fn sat_sub(&self, other: &QSample) -> Result<QSample> {
        self.check_fmt(other)?;
        Ok(self.fmt.saturate(self.raw as i128 - other.raw as i128))
    }

    /// Saturating multiplication.
    ///
    /// The exact double-width product is rounded to the working precision
    /// (nearest, ties to even) and then saturated. Note `min * min`
    /// saturates to `max`: the true product `+2^(2(W-1)-F)` overflows.
    pub fn sat_mul(&self, other: &QSample) -> Result<QSample> {
        self.check_fmt(other)?;
        let product = self.raw as i128 * other.raw as i128;
        let rounded = round_half_even_shift(product, self.fmt.frac);
        Ok(self.fmt.saturate(rounded))
    }
}

/// Divides `wide` by `2^shift`, rounding to nearest with ties to even.
///
/// This is the shared rounding primitive for every product/accumulator
/// rescale in the crate; keeping it in one place keeps the datapaths
/// bit-for-bit consistent with each other and with the test oracles.
#[inline]
pub(crate) fn round_half_even_shift(wide: i128, shift: u32) -> i128 {
    if shift == 0 {
        return wide;
    }
    let floor = wide >> shift; // arithmetic shift: floor division
    let rem = wide - (floor << shift); // in [0, 2^shift)
    let half = 1i128 << (shift - 1);
    if rem > half {
        floor + 1
    } else if rem < half {
        floor
    } else if floor & 1 == 0 {
        floor
    } else {
        floor + 1
    }
}

/// A double-width multiply-accumulate register.
///
/// Products of a coefficient (format `A`) and a data sample (format `B`)
/// are accumulated exactly at `A.frac + B.frac` fractional bits; one call
/// to [`MacAccumulator::finish`] performs the single rounding and
/// saturation of the whole dot product. Summing individually rounded
/// `sat_mul` results would give a different (noisier) answer — see the
/// module tests for a case where the two disagree.
#[derive(Debug, Clone)]
pub struct MacAccumulator {
    acc: i128,
    coeff_fmt: QFormat,
    data_fmt: QFormat,
}

impl MacAccumulator {
    /// An empty accumulator for products of `coeff_fmt` × `data_fmt` samples.
    pub fn for_products(coeff_fmt: QFormat, data_fmt: QFormat) -> Self {
        MacAccumulator {
            acc: 0,
            coeff_fmt,
            data_fmt,
        }
    }

    /// Accumulates the exact product `coeff * data`.
    pub fn add_product(&mut self, coeff: &QSample, data: &QSample) -> Result<()> {
        if coeff.fmt != self.coeff_fmt {
            return Err(Error::FormatMismatch {
                expected: self.coeff_fmt,
                got: coeff.fmt,
            });
        }
        if data.fmt != self.data_fmt {
            return Err(Error::FormatMismatch {
                expected: self.data_fmt,
                got: data.fmt,
            });
        }
        self.acc = self
            .acc
            .saturating_add(coeff.raw as i128 * data.raw as i128);
        Ok(())
    }

    /// Rounds the accumulated sum once (ties to even) and saturates into
    /// `out_fmt`. Requires `out_fmt.frac <= coeff.frac + data.frac`.
    pub fn finish(&self, out_fmt: QFormat) -> Result<QSample> {
        let acc_frac = self.coeff_fmt.frac + self.data_fmt.frac;
        if out_fmt.frac > acc_frac {
            return Err(Error::InvalidParameter(format!(
                "cannot round accumulator at {acc_frac} fractional bits up to {out_fmt}"
            )));
        }
        let rounded = round_half_even_shift(self.acc, acc_frac - out_fmt.frac);
        Ok(out_fmt.saturate(rounded))
    }
}
