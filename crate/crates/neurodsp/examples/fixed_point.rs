//! Q-format basics: quantization, rounding, saturation, and the wide MAC.
//!
//! Run with `cargo run --example fixed_point`.

use neurodsp::fixedpoint::MacAccumulator;
use neurodsp::QFormat;

fn main() -> neurodsp::Result<()> {
    // q16.15 ("Q15"): 16 bits total, 15 fractional -> range [-1, 1).
    let q15 = QFormat::Q15;
    println!("format {q15}: lsb = {:.2e}, range [{}, {}]", q15.lsb(), q15.min_value(), q15.max_value());

    for v in [0.5, -0.25, 0.1, 1.0 / 3.0] {
        let s = q15.quantize(v)?;
        println!("  quantize({v:>9.6}) -> raw {:>6}  (back to {:.9}, error {:+.2e})", s.raw(), s.value(), s.value() - v);
    }

    // Rounding is to nearest, ties to even: both 2.5 lsb and 3.5 lsb land on
    // an even raw value, so a long accumulation picks up no systematic bias.
    let tie_down = q15.quantize(2.5 * q15.lsb())?;
    let tie_up = q15.quantize(3.5 * q15.lsb())?;
    println!("ties:  2.5 lsb -> raw {}, 3.5 lsb -> raw {}", tie_down.raw(), tie_up.raw());

    // Out-of-range values saturate to the rails instead of wrapping.
    println!("saturation: quantize(2.0) -> {}", q15.quantize(2.0)?.value());
    println!("            quantize(-3.0) -> {}", q15.quantize(-3.0)?.value());

    // sat_mul rounds each product; the MAC keeps every product exact in a
    // double-width accumulator and rounds once at the end. In a coarse
    // format the difference is easy to see — per-product rounding smears a
    // dot product by several lsb.
    let q8 = QFormat::new(8, 7)?;
    let xs: Vec<f64> = (0..8).map(|i| 0.11 + 0.07 * i as f64).collect();
    let ws: Vec<f64> = (0..8).map(|i| if i % 2 == 0 { 0.093 } else { -0.081 }).collect();

    let mut rounded_each_step = q8.quantize(0.0)?;
    let mut mac = MacAccumulator::for_products(q8, q8);
    let mut exact = 0.0;
    for (&x, &w) in xs.iter().zip(&ws) {
        let (xq, wq) = (q8.quantize(x)?, q8.quantize(w)?);
        rounded_each_step = rounded_each_step.sat_add(&wq.sat_mul(&xq)?)?;
        mac.add_product(&wq, &xq)?;
        exact += wq.value() * xq.value();
    }
    let wide = mac.finish(q8)?;
    println!("dot product in {q8} (exact value {exact:.6}):");
    println!("  rounding every product: raw {:>3} = {:.6}", rounded_each_step.raw(), rounded_each_step.value());
    println!("  one final rounding:     raw {:>3} = {:.6}", wide.raw(), wide.value());
    Ok(())
}
