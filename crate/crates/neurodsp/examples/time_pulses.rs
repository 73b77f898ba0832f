//! Time-mode arithmetic: numbers carried as pulse widths.
//!
//! A time register stores a value as the *complement* of its input width
//! against the clock period, an amplifier scales before complementing, and
//! an adder complements the sum. Unit-gain delay chains these into z^-1.

use neurodsp::time_domain::{time_adder, time_amplifier, time_register, z_delay, TimeClock, TimePulse};

fn main() -> neurodsp::Result<()> {
    let clk = TimeClock::new(100e-6)?; // 100 us period, 25% SET duty
    let us = 1e-6;

    let w = TimePulse::new(25.0 * us)?;
    let once = time_register(w, &clk)?;
    let twice = time_register(once, &clk)?;
    println!("register: {:.1} us -> {:.1} us -> {:.1} us (complement twice restores the width)",
        w.width() / us, once.width() / us, twice.width() / us);

    let amp = time_amplifier(TimePulse::new(20.0 * us)?, &clk, 3.0)?;
    println!("amplifier, gain 3: 20 us -> {:.1} us  (T_CLK - 3*20 us)", amp.width() / us);

    let sum = time_adder(
        &[TimePulse::new(10.0 * us)?, TimePulse::new(20.0 * us)?, TimePulse::new(30.0 * us)?],
        &clk,
    )?;
    println!("adder: 10 + 20 + 30 us -> {:.1} us  (T_CLK - sum)", sum.width() / us);

    // z^-1 with gain: four registers deep, the scaled width appears exactly
    // one clock cycle later.
    let stream: Vec<TimePulse> = [5.0, 10.0, 15.0, 20.0, 25.0]
        .iter()
        .map(|&w| TimePulse::new(w * us))
        .collect::<neurodsp::Result<_>>()?;
    let delayed = z_delay(&stream, &clk, 2.0)?;
    println!("\nz-delay with gain 2 (widths in us):");
    println!("  n   in      out");
    for (n, (i, o)) in stream.iter().zip(&delayed).enumerate() {
        println!("  {n}  {:>5.1}  {:>6.1}", i.width() / us, o.width() / us);
    }

    // Anything that would discharge past the period is a hard error, not a
    // clamp: the physical circuit has no defined behavior there.
    let too_wide = time_amplifier(TimePulse::new(40.0 * us)?, &clk, 3.0);
    println!("\ngain 3 on 40 us: {}", too_wide.unwrap_err());
    Ok(())
}
