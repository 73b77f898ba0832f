//! Online LMS: a small feedforward net learns to imitate a designed FIR.
//!
//! The network projects a 7-sample delay line through a fixed random layer
//! of tanh units (a reservoir-style feature map) and adapts only its output
//! weights with w <- w + mu * err * h, all in Q15 arithmetic.

use neurodsp::filters::{design_lowpass_fir, FirFilter};
use neurodsp::neuro::{Mode, NeuroFir};
use neurodsp::signals::{gen_test_signal, mse, SignalConfig, Trace};
use neurodsp::QFormat;

fn main() -> neurodsp::Result<()> {
    let fmt = QFormat::Q15;
    let cfg = SignalConfig::default();

    // Teacher: the classical 7-tap low-pass. Student: 8 tanh units, mu 2^-6.
    let mut teacher = FirFilter::new(design_lowpass_fir(7, 0.2, fmt)?)?;
    let mut student = NeuroFir::new(7, 8, 1.0 / 64.0, fmt, 1001)?;

    let train_x = gen_test_signal(&cfg)?;
    let desired = teacher.run(&train_x)?;
    teacher.reset();

    println!("training on {} samples (seed {}):", train_x.len(), cfg.seed);
    let mut window = Vec::new();
    for n in 0..train_x.len() {
        let (_, err) = student.train_step(
            &train_x.get(n).expect("in range"),
            &desired.get(n).expect("same length"),
        )?;
        window.push(err.value() * err.value());
        if (n + 1) % 400 == 0 {
            let mean: f64 = window.iter().sum::<f64>() / window.len() as f64;
            println!("  steps {:>4}-{:>4}: mean squared error {mean:.6}", n + 1 - window.len(), n);
            window.clear();
        }
    }

    // Freeze the weights and replay an unseen stimulus through both.
    student.set_mode(Mode::Infer);
    student.reset();
    let test_x = gen_test_signal(&SignalConfig { seed: cfg.seed + 1, ..cfg })?;
    let golden = teacher.run(&test_x)?;
    let mut out = Trace::with_capacity(fmt, test_x.len());
    for x in test_x.iter() {
        out.push(student.forward(&x)?)?;
    }
    println!("test-phase MSE vs the FIR teacher: {:.6}", mse(&out, &golden)?);
    Ok(())
}
