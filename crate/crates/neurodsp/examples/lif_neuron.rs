//! Leaky integrate-and-fire neuron: spike trains and the closed-form ISI.

use neurodsp::lif::{lif_run, LifParams};

fn main() -> neurodsp::Result<()> {
    let params = LifParams::default(); // tau 10 ms, threshold 1, dt 1 ms
    let i_in = 2.0;

    let run = lif_run(params.clone(), &vec![i_in; 400])?;
    let spikes = run.spike_steps();
    println!(
        "constant I = {i_in}: {} spikes in 400 steps (dt = {} s)",
        run.spike_count(),
        params.dt
    );
    println!("first spikes at steps {:?}", &spikes[..spikes.len().min(6)]);

    // Between spikes the membrane charges toward R*I; the crossing time has
    // the closed form tau * ln(RI / (RI - v_th)).
    let predicted = params.closed_form_isi(i_in)?;
    let measured = (spikes[1] - spikes[0]) as f64 * params.dt;
    println!("inter-spike interval: measured {measured:.4} s, closed form {predicted:.4} s");

    // Firing rate grows monotonically with drive once RI clears threshold.
    println!("\n   I      spikes/s");
    for k in 0..8 {
        let i = 1.2 + 0.4 * k as f64;
        let r = lif_run(params.clone(), &vec![i; 1000])?;
        let rate = r.spike_count() as f64 / (1000.0 * params.dt);
        println!("  {i:4.1}  {rate:8.1}  {}", "*".repeat((rate / 10.0) as usize));
    }

    // Sub-threshold drive never fires: RI below v_th decays to a fixpoint.
    let quiet = lif_run(params, &vec![0.9; 1000])?;
    println!("\nI = 0.9 (RI < v_th): {} spikes", quiet.spike_count());
    Ok(())
}
