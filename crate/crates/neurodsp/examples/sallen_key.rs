//! Sallen-Key analog prototype: component sizing and a stability check.
//!
//! The equal-R equal-C low-pass stage with amplifier gain K = 1 + R_B/R_A
//! has the transfer function
//!
//! ```text
//! H(s) = K/(RC)^2 / (s^2 + (3-K)/(RC) s + 1/(RC)^2)
//! ```
//!
//! so the damping term changes sign at K = 3: a gain of 5.5 puts both poles
//! in the right half plane and the stage oscillates instead of filtering.

use neurodsp::analog::{design_sallen_key, SecondOrderTf};

fn main() -> neurodsp::Result<()> {
    // Target gain alpha/beta lifted by the divider: K = 1 + alpha/(2 beta).
    let design = design_sallen_key(7.0, 6.0, 15e-9, 1e3)?;
    print!("{}", design.render_report());

    // Evaluate with the nearest E-series catalogue resistor instead of the
    // exact 2122 ohms.
    let catalogue_r = 2.2e3;
    let tf = SecondOrderTf::sallen_key(design.k, catalogue_r, design.cap);
    println!("\nwith R = 2.2 kohm from the catalogue:");
    println!("  b0 = {:.4e}  a1 = {:.4e}  a0 = {:.4e}", tf.b0, tf.a1, tf.a0);
    println!("  |H| at f_c: {:.3}", tf.magnitude(design.f_c_hz)?);
    println!("  stable: {}", tf.is_stable());

    // Dropping the gain below 3 restores stability with the same RC.
    let gentle = SecondOrderTf::sallen_key(1.5, catalogue_r, design.cap);
    println!("same stage at K = 1.5: stable = {}, a1 = {:.4e}", gentle.is_stable(), gentle.a1);
    Ok(())
}
