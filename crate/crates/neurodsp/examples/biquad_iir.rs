//! Second-order IIR section in two canonical arrangements.
//!
//! Both forms honor the same rounding contract — every product lands exactly
//! in a wide accumulator, one rounding per output sample — so given the same
//! flat difference-equation taps they are bit-identical while nothing
//! saturates. Handing the *designed* biquad (whose feedforward side is the
//! grouped product `g*(1, beta1, beta2)`) to the general-order form requires
//! re-quantizing those products, which may shift the odd sample by an lsb;
//! the example prints how far apart the two actually land.

use neurodsp::filters::{Biquad, BiquadCoeffs, IirDf2t};
use neurodsp::signals::gen_impulse;
use neurodsp::QFormat;

fn main() -> neurodsp::Result<()> {
    let fmt = QFormat::Q15;
    let coeffs = BiquadCoeffs::design_lowpass(0.2, std::f64::consts::FRAC_1_SQRT_2, fmt)?;
    println!("biquad low-pass, cutoff 0.2, Q = 0.7071 (coefficients in {}):", coeffs.format());
    println!("  g     = {:+.9}", coeffs.g().value());
    println!("  beta  = 1, {:+.9}, {:+.9}  (feedforward shape)", coeffs.beta1().value(), coeffs.beta2().value());
    println!("  a1,a2 = {:+.9}, {:+.9}  (feedback)", coeffs.a1().value(), coeffs.a2().value());
    println!("  DC gain = {:.9}", coeffs.dc_gain());

    let mut df1 = Biquad::new(coeffs.clone(), fmt)?;

    // Same transfer function flattened to b = g*(1, beta1, beta2), a1, a2.
    let cfmt = coeffs.format();
    let b = vec![
        coeffs.g(),
        cfmt.quantize(coeffs.g().value() * coeffs.beta1().value())?,
        cfmt.quantize(coeffs.g().value() * coeffs.beta2().value())?,
    ];
    let a = vec![coeffs.a1(), coeffs.a2()];
    let mut df2t = IirDf2t::new(b, a, fmt)?;

    let impulse = gen_impulse(16, 0.5, fmt)?;
    let h1 = df1.run(&impulse)?;
    let h2 = df2t.run(&impulse)?;

    println!("impulse response (input 0.5 at n=0):");
    println!("   n   DF1 (grouped)   DF2T (flat)   diff/lsb");
    let mut worst = 0i64;
    for n in 0..16 {
        let (y1, y2) = (h1.get(n).expect("len"), h2.get(n).expect("len"));
        let d = y1.raw() - y2.raw();
        worst = worst.max(d.abs());
        println!("  {n:>2}   {:+.9}    {:+.9}   {d:+}", y1.value(), y2.value());
    }
    println!("largest divergence from re-quantizing g*beta: {worst} lsb");
    Ok(())
}
