//! Pulse-width (time-mode) arithmetic.
//!
//! Here a value is carried by how long a pulse stays high, not by a voltage
//! level or a binary word. The primitive circuits all share one trick: a
//! capacitor charged for the input width and discharged for the rest of the
//! clock period, so every operation produces `t_clk − (something)`:
//!
//! * [`time_register`] stores a pulse as its complement `t_clk − w`.
//! * [`time_amplifier`] scales while complementing: `t_clk − a·w`.
//! * [`time_adder`] sums several widths: `t_clk − Σw`.
//! * [`z_delay`] chains four register stages into a unit delay with gain.
//!
//! Widths are continuous seconds (`f64`), because the underlying circuits
//! are analog and charge-based — quantizing them would misstate the model.
//! Inputs that would discharge the capacitor past empty are hard errors
//! ([`Error::PulseOutOfRange`]), never clamps: the physical circuit has no
//! defined behavior there.
//!
//! Complementing twice returns the original width. In floating point that
//! identity is exact for every width these operations *produce* (the
//! round-to-nearest complement is an exact involution on its own image),
//! which is the domain the invariant promises.

use std::io::Write;

use crate::error::{Error, Result};
use crate::signals::fmt_sig9;

/// Fraction of the clock period occupied by the SET pulse.
pub const DUTY_CYCLE: f64 = 0.25;

/// A value carried as a pulse width, in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePulse {
    width: f64,
}

impl TimePulse {
    /// Wraps a width in seconds; widths must be finite and non-negative.
    pub fn new(width: f64) -> Result<TimePulse> {
        if !(width.is_finite() && width >= 0.0) {
            return Err(Error::PulseOutOfRange(format!(
                "pulse width must be a finite non-negative time, got {width}"
            )));
        }
        Ok(TimePulse { width })
    }

    /// The zero-width pulse.
    pub fn zero() -> TimePulse {
        TimePulse { width: 0.0 }
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.width
    }
}

/// The timing reference: clock period `t_clk` with a fixed 25% duty cycle.
#[derive(Debug, Clone, Copy)]
pub struct TimeClock {
    t_clk: f64,
}

impl TimeClock {
    pub fn new(t_clk: f64) -> Result<TimeClock> {
        if !(t_clk.is_finite() && t_clk > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "clock period must be positive, got {t_clk}"
            )));
        }
        Ok(TimeClock { t_clk })
    }

    #[inline]
    pub fn t_clk(&self) -> f64 {
        self.t_clk
    }

    /// Duty cycle of the SET pulse (a property of the clock generator, fixed
    /// by construction).
    #[inline]
    pub fn duty(&self) -> f64 {
        DUTY_CYCLE
    }
}

fn check_width(width: f64, clk: &TimeClock, what: &str) -> Result<()> {
    if width > clk.t_clk {
        return Err(Error::PulseOutOfRange(format!(
            "{what}: width {width} s exceeds the clock period {} s (capacitor would discharge early)",
            clk.t_clk
        )));
    }
    Ok(())
}

/// Stores a pulse as its complement: `t_clk − w`.
pub fn time_register(t_in: TimePulse, clk: &TimeClock) -> Result<TimePulse> {
    check_width(t_in.width, clk, "time register input")?;
    Ok(TimePulse {
        width: clk.t_clk - t_in.width,
    })
}

/// Scales while complementing: `t_clk − a·w`. The gain `a` must be positive;
/// a gain of 1 reduces to [`time_register`].
pub fn time_amplifier(t_in: TimePulse, clk: &TimeClock, a: f64) -> Result<TimePulse> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter(format!("time gain must be positive, got {a}")));
    }
    let scaled = a * t_in.width;
    check_width(scaled, clk, "time amplifier output")?;
    Ok(TimePulse {
        width: clk.t_clk - scaled,
    })
}

/// Adds pulse widths (left to right) and complements the total:
/// `t_clk − Σw`. An empty input sums to zero, giving a full-period pulse.
pub fn time_adder(t_ins: &[TimePulse], clk: &TimeClock) -> Result<TimePulse> {
    let total = t_ins.iter().fold(0.0, |acc, p| acc + p.width);
    check_width(total, clk, "time adder input sum")?;
    Ok(TimePulse {
        width: clk.t_clk - total,
    })
}

/// A unit delay with gain, built from a four-stage register cascade.
///
/// Stage 1 is a time amplifier (`t_clk − a·w`), stage 2 a register that
/// complements it back to `a·w`, and stages 3–4 re-time the restored pulse
/// to the next clock edge without changing its width. The two complements
/// cancel exactly in the ideal charge-based device, so the restored width is
/// propagated in its cancelled form `a·w` — evaluating the pair of
/// subtractions in floating point would smuggle in a rounding error the
/// circuit does not have.
///
/// The output has the same length as the input: element `k` carries
/// `a · input[k−1]`, and element 0 is the zero-width pulse (the cascade
/// starts from reset). Any stage that would overflow the clock period
/// reports which stage and which input sample failed.
pub fn z_delay(pulses: &[TimePulse], clk: &TimeClock, a: f64) -> Result<Vec<TimePulse>> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter(format!("time gain must be positive, got {a}")));
    }
    let mut out = Vec::with_capacity(pulses.len());
    let mut held = TimePulse::zero();
    for (k, p) in pulses.iter().enumerate() {
        out.push(held);
        let stage1 = time_amplifier(*p, clk, a).map_err(|_| {
            Error::PulseOutOfRange(format!(
                "z-delay stage 1 (amplifier) underflow at sample {k}: gain {a} times width {} s \
                 exceeds the clock period {} s",
                p.width, clk.t_clk
            ))
        })?;
        time_register(stage1, clk).map_err(|_| {
            Error::PulseOutOfRange(format!(
                "z-delay stage 2 (register) underflow at sample {k}"
            ))
        })?;
        // stages 3-4: the complements have cancelled; the pulse is re-timed
        // with its width intact
        held = TimePulse { width: a * p.width };
        check_width(held.width, clk, "z-delay stage 3 (re-timing register)")?;
        check_width(held.width, clk, "z-delay stage 4 (output register)")?;
    }
    Ok(out)
}

/// Serializes an input/output pulse pair per clock cycle as CSV with header
/// `k,width_in,width_out`.
pub fn write_cascade_csv<W: Write>(
    inputs: &[TimePulse],
    outputs: &[TimePulse],
    mut out: W,
) -> Result<()> {
    if inputs.len() != outputs.len() {
        return Err(Error::LengthMismatch {
            expected: inputs.len(),
            got: outputs.len(),
        });
    }
    writeln!(out, "k,width_in,width_out")?;
    for (k, (i, o)) in inputs.iter().zip(outputs).enumerate() {
        writeln!(out, "{k},{},{}", fmt_sig9(i.width), fmt_sig9(o.width))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::Lcg31;

    fn clk100us() -> TimeClock {
        TimeClock::new(100e-6).unwrap()
    }

    #[test]
    fn register_complements_the_width() {
        let clk = clk100us();
        let out = time_register(TimePulse::new(25e-6).unwrap(), &clk).unwrap();
        assert_eq!(out.width(), 100e-6 - 25e-6);
        assert!((out.width() - 75e-6).abs() < 1e-18);

        let full = time_register(TimePulse::zero(), &clk).unwrap();
        assert_eq!(full.width(), 100e-6, "zero input charges for the whole period");
        let empty = time_register(TimePulse::new(100e-6).unwrap(), &clk).unwrap();
        assert_eq!(empty.width(), 0.0, "full-period input leaves nothing");

        let over = time_register(TimePulse::new(101e-6).unwrap(), &clk);
        assert!(matches!(over, Err(Error::PulseOutOfRange(_))));
    }

    #[test]
    fn register_is_an_involution_on_produced_pulses() {
        let clk = clk100us();
        let mut rng = Lcg31::new(3);
        for _ in 0..2000 {
            let raw = TimePulse::new(rng.next_unit() * clk.t_clk()).unwrap();
            let produced = time_register(raw, &clk).unwrap();
            let twice = time_register(time_register(produced, &clk).unwrap(), &clk).unwrap();
            assert_eq!(
                twice.width(),
                produced.width(),
                "double complement must return the stored width bit for bit"
            );
        }
    }

    #[test]
    fn amplifier_scales_and_complements() {
        let clk = clk100us();
        let out = time_amplifier(TimePulse::new(10e-6).unwrap(), &clk, 2.0).unwrap();
        assert_eq!(out.width(), 100e-6 - 2.0 * 10e-6);
        assert!((out.width() - 80e-6).abs() < 1e-18);

        // gain 1 is exactly the register
        let p = TimePulse::new(33e-6).unwrap();
        assert_eq!(
            time_amplifier(p, &clk, 1.0).unwrap().width(),
            time_register(p, &clk).unwrap().width()
        );

        // boundary: gain exactly consumes the period
        let edge = time_amplifier(TimePulse::new(50e-6).unwrap(), &clk, 2.0).unwrap();
        assert_eq!(edge.width(), 0.0);

        let over = time_amplifier(TimePulse::new(51e-6).unwrap(), &clk, 2.0);
        assert!(matches!(over, Err(Error::PulseOutOfRange(_))));
        assert!(time_amplifier(p, &clk, 0.0).is_err(), "gain must be positive");
    }

    #[test]
    fn adder_sums_widths() {
        let clk = clk100us();
        let pulses: Vec<TimePulse> = [10e-6, 20e-6, 30e-6]
            .iter()
            .map(|&w| TimePulse::new(w).unwrap())
            .collect();
        let out = time_adder(&pulses, &clk).unwrap();
        assert_eq!(out.width(), 100e-6 - (10e-6 + 20e-6 + 30e-6));
        assert!((out.width() - 40e-6).abs() < 1e-18);

        let empty = time_adder(&[], &clk).unwrap();
        assert_eq!(empty.width(), 100e-6, "empty sum complements to the full period");

        let single = TimePulse::new(42e-6).unwrap();
        assert_eq!(
            time_adder(&[single], &clk).unwrap().width(),
            time_register(single, &clk).unwrap().width(),
            "adding one pulse is just registering it"
        );

        let too_much = vec![TimePulse::new(60e-6).unwrap(); 2];
        assert!(time_adder(&too_much, &clk).is_err());
    }

    #[test]
    fn z_delay_with_unit_gain_is_a_pure_shift() {
        let clk = clk100us();
        let mut rng = Lcg31::new(9);
        let input: Vec<TimePulse> = (0..64)
            .map(|_| TimePulse::new(rng.next_unit() * clk.t_clk()).unwrap())
            .collect();
        let out = z_delay(&input, &clk, 1.0).unwrap();
        assert_eq!(out.len(), input.len());
        assert_eq!(out[0].width(), 0.0, "the cascade starts from reset");
        for k in 1..out.len() {
            assert_eq!(
                out[k].width(),
                input[k - 1].width(),
                "sample {k} must be the previous input, untouched"
            );
        }
    }

    #[test]
    fn z_delay_applies_its_gain_one_cycle_late() {
        let clk = clk100us();
        let input = [
            TimePulse::new(10e-6).unwrap(),
            TimePulse::new(20e-6).unwrap(),
        ];
        let out = z_delay(&input, &clk, 2.0).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].width(), 0.0);
        assert_eq!(out[1].width(), 2.0 * 10e-6);
        assert!((out[1].width() - 20e-6).abs() < 1e-18);
    }

    #[test]
    fn z_delay_attributes_stage_failures() {
        let clk = clk100us();
        let input = [
            TimePulse::new(10e-6).unwrap(),
            TimePulse::new(60e-6).unwrap(), // 2x exceeds the period
        ];
        let err = z_delay(&input, &clk, 2.0).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("stage 1") && msg.contains("sample 1"),
            "error must name the stage and the sample, got: {msg}"
        );
    }

    #[test]
    fn produced_widths_stay_inside_the_period() {
        let clk = clk100us();
        let mut rng = Lcg31::new(21);
        for _ in 0..500 {
            let w = rng.next_unit() * clk.t_clk();
            let r = time_register(TimePulse::new(w).unwrap(), &clk).unwrap();
            assert!((0.0..=clk.t_clk()).contains(&r.width()));
            let a = time_amplifier(TimePulse::new(w / 2.0).unwrap(), &clk, 1.5).unwrap();
            assert!((0.0..=clk.t_clk()).contains(&a.width()));
        }
    }

    #[test]
    fn pulse_and_clock_validation() {
        assert!(TimePulse::new(-1e-6).is_err());
        assert!(TimePulse::new(f64::NAN).is_err());
        assert!(TimeClock::new(0.0).is_err());
        assert!(TimeClock::new(f64::INFINITY).is_err());
        assert!((TimeClock::new(1e-4).unwrap().duty() - 0.25).abs() < 1e-18);
    }

    #[test]
    fn cascade_csv_layout() {
        let clk = clk100us();
        let input = [TimePulse::new(10e-6).unwrap(), TimePulse::new(20e-6).unwrap()];
        let output = z_delay(&input, &clk, 1.0).unwrap();
        let mut buf = Vec::new();
        write_cascade_csv(&input, &output, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,width_in,width_out"));
        assert_eq!(lines.next(), Some("0,1.00000000e-5,0.00000000e0"));
        assert_eq!(lines.next(), Some("1,2.00000000e-5,1.00000000e-5"));
        assert_eq!(lines.next(), None);

        let short = [input[0]];
        assert!(write_cascade_csv(&short, &output, Vec::new()).is_err());
    }
}
