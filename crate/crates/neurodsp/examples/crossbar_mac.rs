//! Analog matrix-vector multiply on a memristor crossbar.
//!
//! Signed weights become conductance *pairs* (a positive and a negative
//! plane, read out as a current difference), each conductance snapped to one
//! of 256 programmable levels. The example programs a small weight matrix,
//! reads it back, and compares the crossbar's column currents against an
//! exact dot product.

use neurodsp::memristor::{program_weights, reconstruct_weights, MemristorParams};

fn main() -> neurodsp::Result<()> {
    let weights = vec![
        vec![0.50, -0.25, 0.125],
        vec![-0.75, 0.33, -0.08],
        vec![0.10, 0.90, -0.60],
        vec![-1.00, 0.05, 0.70],
    ];
    // Conductance window taken from the device limits: 1/r_off .. 1/r_on.
    let (g_min, g_max) = MemristorParams::default().conductance_bounds();
    let (pos, neg) = program_weights(&weights, g_min, g_max)?;
    println!(
        "programmed {}x{} weights onto two planes, g in [{:.3e}, {:.3e}] S",
        pos.rows(),
        pos.cols(),
        g_min,
        g_max
    );

    let recovered = reconstruct_weights(&pos, &neg)?;
    let mut worst = 0.0f64;
    for (row, rec) in weights.iter().zip(&recovered) {
        for (&w, &r) in row.iter().zip(rec) {
            worst = worst.max((w - r).abs());
        }
    }
    println!("worst weight round-trip error: {worst:.3e} (half a level = {:.3e})", 0.5 / 255.0);

    // Apply an input vector as row voltages; each column current is one MAC
    // term by Ohm's and Kirchhoff's laws. Dividing the differential current
    // by the conductance span recovers the weight-domain dot product.
    let v = vec![0.4, -0.2, 0.9, 0.1];
    let i_pos = pos.mac(&v)?;
    let i_neg = neg.mac(&v)?;
    println!("\ninput voltages {v:?}");
    println!("  col   crossbar result   exact w.v");
    for j in 0..3 {
        let analog = (i_pos[j] - i_neg[j]) / (g_max - g_min);
        let exact: f64 = weights.iter().zip(&v).map(|(row, &vi)| row[j] * vi).sum();
        println!("  {j}     {analog:+.6}        {exact:+.6}");
    }
    Ok(())
}
