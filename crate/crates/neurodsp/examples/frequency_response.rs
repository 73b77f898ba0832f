//! FIR frequency response: evaluate H(e^jw) on the unit circle.

use neurodsp::filters::{design_lowpass_fir, fir_dc_gain, fir_freq_response, gain_db};
use neurodsp::QFormat;
use std::f64::consts::PI;

fn main() -> neurodsp::Result<()> {
    let taps = design_lowpass_fir(31, 0.25, QFormat::Q15)?;
    println!("31-tap low-pass, cutoff 0.25 of Nyquist\n");
    println!("  w/pi      |H|        gain");
    for j in 0..=16 {
        let omega = PI * j as f64 / 16.0;
        let h = fir_freq_response(&taps, omega)?;
        let mag = h.norm();
        let db = if mag > 0.0 { format!("{:8.2} dB", gain_db(mag)?) } else { "    -inf".into() };
        let bar = "#".repeat((mag * 40.0).round() as usize);
        println!("  {:4.2}  {mag:.6}  {db}  {bar}", omega / PI);
    }

    // At w = 0 every tap contributes with phase zero, so |H(0)| is exactly
    // the tap sum the designer normalized toward 1.
    let h0 = fir_freq_response(&taps, 0.0)?;
    println!("\n|H(0)| = {:.12}", h0.norm());
    println!("sum h  = {:.12}", fir_dc_gain(&taps));
    Ok(())
}
