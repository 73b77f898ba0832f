//! A tiny Elman recurrent net imitating a biquad low-pass.
//!
//! The hidden state feeds back through a fixed contractive recurrent matrix
//! (row sums kept below 0.9 so the loop cannot blow up); training adapts the
//! readout every step and nudges the input weights through the tanh slope.

use neurodsp::filters::{Biquad, BiquadCoeffs};
use neurodsp::neuro::{ElmanNet, Mode};
use neurodsp::signals::{gen_test_signal, mse, SignalConfig, Trace};
use neurodsp::QFormat;

fn main() -> neurodsp::Result<()> {
    let fmt = QFormat::Q15;
    let cfg = SignalConfig::default();

    let design = BiquadCoeffs::design_lowpass(0.2, std::f64::consts::FRAC_1_SQRT_2, fmt)?;
    let mut teacher = Biquad::new(design, fmt)?;
    let mut student = ElmanNet::new(4, 1.0 / 64.0, fmt, 2001)?;

    println!("recurrent weights (fixed, never trained):");
    for row in student.recurrent_weights() {
        let s: f64 = row.iter().map(|w| w.value().abs()).sum();
        let vals: Vec<String> = row.iter().map(|w| format!("{:+.4}", w.value())).collect();
        println!("  [{}]  |row sum| = {s:.4}", vals.join(", "));
    }

    let train_x = gen_test_signal(&cfg)?;
    let desired = teacher.run(&train_x)?;
    teacher.reset();

    let mut first = 0.0;
    let mut last = 0.0;
    for n in 0..train_x.len() {
        let (_, err) = student.train_step(
            &train_x.get(n).expect("in range"),
            &desired.get(n).expect("same length"),
        )?;
        let sq = err.value() * err.value();
        if n < 200 {
            first += sq / 200.0;
        }
        if n >= train_x.len() - 200 {
            last += sq / 200.0;
        }
    }
    println!("mean squared training error: first 200 steps {first:.6}, last 200 steps {last:.6}");

    student.set_mode(Mode::Infer);
    student.reset(); // clears the hidden state, keeps the learned weights
    let test_x = gen_test_signal(&SignalConfig { seed: cfg.seed + 1, ..cfg })?;
    let reference = teacher.run(&test_x)?;
    let mut out = Trace::with_capacity(fmt, test_x.len());
    for x in test_x.iter() {
        out.push(student.forward(&x)?)?;
    }
    println!("test-phase MSE vs the biquad teacher: {:.6}", mse(&out, &reference)?);
    Ok(())
}
