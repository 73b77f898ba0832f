//! Sallen-Key analog prototype: component sizing and the continuous-time
//! transfer function it realizes.
//!
//! This is design arithmetic, not simulation — everything is `f64`. The
//! block is a unity-R/unity-C Sallen-Key low-pass around a non-inverting
//! amplifier of gain `K = 1 + R_B/R_A`:
//!
//! ```text
//!             b0                      K / (RC)^2
//! H(s) = ---------------- = ------------------------------
//!        s^2 + a1 s + a0    s^2 + (3-K)/(RC) s + 1/(RC)^2
//! ```
//!
//! The `(3 - K)` damping term is the interesting bit: amplifier gains at or
//! above 3 push the poles into the right half-plane, so a design can be
//! sized perfectly well and still be unstable. [`SecondOrderTf::is_stable`]
//! makes that check explicit instead of leaving it to intuition.

use crate::error::{Error, Result};

/// Two small integer knobs (`alpha`, `beta`) spread design targets across a
/// family of exercises: gain `K = (4 + alpha)/2` and cutoff
/// `f_c = (4 + beta)/2` kHz.
#[derive(Debug, Clone, Copy)]
pub struct SallenKeyDesign {
    pub alpha: f64,
    pub beta: f64,
    /// Filter capacitor C in farads (both capacitors equal).
    pub cap: f64,
    /// Amplifier divider resistor R_A in ohms.
    pub r_a: f64,
    /// Amplifier gain K = 1 + R_B/R_A.
    pub k: f64,
    /// Cutoff frequency in Hz.
    pub f_c_hz: f64,
    /// Filter resistor R = 1/(2 pi f_c C) in ohms (both resistors equal).
    pub r: f64,
    /// Feedback resistor R_B = R_A (K - 1) in ohms.
    pub r_b: f64,
}

/// Sizes the components for the `(alpha, beta)` targets.
///
/// Rejects non-positive `cap`/`r_a`, gains below 1 (negative feedback
/// resistor) and non-positive cutoffs.
pub fn design_sallen_key(alpha: f64, beta: f64, cap: f64, r_a: f64) -> Result<SallenKeyDesign> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("cap", cap), ("ra", r_a)] {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be finite")));
        }
    }
    if cap <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "capacitance must be positive, got {cap}"
        )));
    }
    if r_a <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "divider resistor must be positive, got {r_a}"
        )));
    }
    let k = (4.0 + alpha) / 2.0;
    if k < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "gain K = (4+alpha)/2 = {k} below 1 needs a negative feedback resistor"
        )));
    }
    let f_c_hz = (4.0 + beta) / 2.0 * 1000.0;
    if f_c_hz <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "cutoff f_c = (4+beta)/2 kHz = {f_c_hz} Hz must be positive"
        )));
    }
    let r = 1.0 / (2.0 * std::f64::consts::PI * f_c_hz * cap);
    let r_b = r_a * (k - 1.0);
    Ok(SallenKeyDesign {
        alpha,
        beta,
        cap,
        r_a,
        k,
        f_c_hz,
        r,
        r_b,
    })
}

impl SallenKeyDesign {
    /// The transfer function realized with this design's exact `R`.
    pub fn transfer(&self) -> SecondOrderTf {
        SecondOrderTf::sallen_key(self.k, self.r, self.cap)
    }

    /// A plain-text design card (used verbatim by the CLI).
    pub fn render_report(&self) -> String {
        let tf = self.transfer();
        let mut s = String::new();
        s.push_str("sallen-key low-pass design\n");
        s.push_str(&format!("  alpha   {:>14.6}\n", self.alpha));
        s.push_str(&format!("  beta    {:>14.6}\n", self.beta));
        s.push_str(&format!("  C       {:>14.6e} F\n", self.cap));
        s.push_str(&format!("  R_A     {:>14.6} ohm\n", self.r_a));
        s.push_str(&format!("  K       {:>14.6}\n", self.k));
        s.push_str(&format!("  f_c     {:>14.6} Hz\n", self.f_c_hz));
        s.push_str(&format!("  R       {:>14.6} ohm\n", self.r));
        s.push_str(&format!("  R_B     {:>14.6} ohm\n", self.r_b));
        s.push_str("transfer H(s) = b0 / (s^2 + a1 s + a0)\n");
        s.push_str(&format!("  b0      {:>14.6e}\n", tf.b0));
        s.push_str(&format!("  a1      {:>14.6e}\n", tf.a1));
        s.push_str(&format!("  a0      {:>14.6e}\n", tf.a0));
        s.push_str(&format!(
            "  stable  {}\n",
            if tf.is_stable() { "yes" } else { "no (gain K >= 3 cancels the damping term)" }
        ));
        s
    }
}

/// Continuous-time second-order low-pass `b0 / (s^2 + a1 s + a0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderTf {
    pub b0: f64,
    pub a1: f64,
    pub a0: f64,
}

impl SecondOrderTf {
    /// The Sallen-Key transfer function for gain `k` and equal `r`/`c`:
    /// `b0 = K/(RC)^2`, `a1 = (3-K)/(RC)`, `a0 = 1/(RC)^2`.
    ///
    /// Taking `r` explicitly (rather than a design) lets callers evaluate
    /// with a rounded catalogue resistor instead of the exact value.
    pub fn sallen_key(k: f64, r: f64, c: f64) -> SecondOrderTf {
        let rc = r * c;
        SecondOrderTf {
            b0: k / (rc * rc),
            a1: (3.0 - k) / rc,
            a0: 1.0 / (rc * rc),
        }
    }

    /// `|H(j 2 pi f)|` at a frequency in Hz.
    pub fn magnitude(&self, f_hz: f64) -> Result<f64> {
        if !(f_hz.is_finite() && f_hz >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "frequency must be non-negative, got {f_hz}"
            )));
        }
        let w = 2.0 * std::f64::consts::PI * f_hz;
        let re = self.a0 - w * w;
        let im = self.a1 * w;
        Ok(self.b0 / (re * re + im * im).sqrt())
    }

    /// Routh-Hurwitz for a second-order polynomial: both `a1` and `a0`
    /// strictly positive.
    pub fn is_stable(&self) -> bool {
        self.a1 > 0.0 && self.a0 > 0.0
    }
}
