//! Windowed-sinc low-pass design running on the integer FIR datapath.

use neurodsp::filters::{design_lowpass_fir, fir_dc_gain, FirFilter};
use neurodsp::signals::{gen_test_signal, mse, SignalConfig, Trace};
use neurodsp::QFormat;

fn main() -> neurodsp::Result<()> {
    let fmt = QFormat::Q15;
    let taps = design_lowpass_fir(21, 0.15, fmt)?;

    println!("21-tap Hamming windowed sinc, cutoff 0.15 of Nyquist:");
    for (i, t) in taps.iter().enumerate() {
        print!("{:>9.6}{}", t.value(), if (i + 1) % 7 == 0 { "\n" } else { " " });
    }
    println!("sum of taps (DC gain) = {:.9}", fir_dc_gain(&taps));

    // Push the default noisy sine through. The 50 Hz carrier sits at 0.1 of
    // the Nyquist rate, inside the passband; the broadband noise is shaved.
    let cfg = SignalConfig::default();
    let clean = gen_test_signal(&SignalConfig { noise_amp: 0.0, ..cfg })?;
    let noisy = gen_test_signal(&cfg)?;

    let mut fir = FirFilter::new(taps)?;
    let filtered = fir.run(&noisy)?;

    // Compare both signals against the clean carrier, skipping the group
    // delay of (taps-1)/2 = 10 samples so the sines line up.
    let delay = 10;
    let n = cfg.n_steps - delay;
    let align = |t: &Trace, shift: usize| -> neurodsp::Result<Trace> {
        let mut out = Trace::with_capacity(fmt, n);
        for i in 0..n {
            out.push(t.get(i + shift).expect("in range"))?;
        }
        Ok(out)
    };
    let noisy_mse = mse(&align(&noisy, 0)?, &align(&clean, 0)?)?;
    let filtered_mse = mse(&align(&filtered, delay)?, &align(&clean, 0)?)?;
    println!("MSE vs clean carrier: unfiltered {noisy_mse:.6}, filtered {filtered_mse:.6}");
    Ok(())
}
