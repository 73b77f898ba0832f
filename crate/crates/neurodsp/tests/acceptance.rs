//! End-to-end acceptance checks, one test per shipping criterion.
//!
//! Every test prints a single `[PASS]`/`[FAIL]` verdict line (visible with
//! `cargo test --test acceptance -- --nocapture`) before asserting, so a red
//! run still reports the measured numbers for all criteria that executed.

mod common;

use neurodsp::analog::{design_sallen_key, SecondOrderTf};
use neurodsp::experiment::{run_experiment, ExperimentConfig, ModelKind};
use neurodsp::filters::{
    design_lowpass_fir, fir_dc_gain, fir_freq_response, BiquadCoeffs, FirFilter, IirDf2t,
};
use neurodsp::lif::{lif_run, LifParams};
use neurodsp::memristor::{
    enclosed_area, iv_sweep, program_weights, reconstruct_weights, CrossbarMatrix, IvSweepConfig,
    Memristor, MemristorParams,
};
use neurodsp::neuro::{ElmanNet, NeuroFir};
use neurodsp::signals::{gen_impulse, gen_test_signal, Lcg31, SignalConfig};
use neurodsp::time_domain::{
    time_adder, time_amplifier, time_register, z_delay, TimeClock, TimePulse,
};
use neurodsp::QFormat;
use std::process::Command;
use std::time::{Duration, Instant};

fn verdict(criterion: usize, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {criterion}: {detail}");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neurodsp"))
}

// -------------------------------------------------------------------------
// 1. the golden reference scores exactly zero against itself
// -------------------------------------------------------------------------

#[test]
fn c01_golden_reference_is_exactly_zero() {
    let dir = tempfile::tempdir().expect("tempdir");
    let t0 = Instant::now();
    let out = bin()
        .args(["run", "--models", "fir", "--out", "golden.csv"])
        .current_dir(dir.path())
        .output()
        .expect("spawn neurodsp");
    let elapsed = t0.elapsed();

    let stdout = String::from_utf8(out.stdout).expect("utf8 report");
    let fir_row = stdout
        .lines()
        .find_map(|l| {
            let mut tok = l.split_whitespace();
            (tok.next() == Some("fir")).then(|| tok.next().unwrap_or("").to_string())
        })
        .unwrap_or_default();

    let mut cfg = ExperimentConfig::for_seed(1);
    cfg.models = [ModelKind::Fir].into_iter().collect();
    let exact = run_experiment(&cfg).expect("experiment").mse_table[&ModelKind::Fir];

    let pass =
        out.status.success() && fir_row == "0.000000" && exact == 0.0 && elapsed < Duration::from_secs(1);
    verdict(
        1,
        pass,
        &format!(
            "`run --models fir` reports mse {fir_row} (in-process {exact:?}) in {elapsed:.2?}"
        ),
    );
    assert!(out.status.success(), "run --models fir exited nonzero");
    assert_eq!(fir_row, "0.000000", "report row for fir:\n{stdout}");
    assert_eq!(exact, 0.0, "fir MSE against itself must be exactly zero");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1 s");
}

// -------------------------------------------------------------------------
// 2. relative model ordering over seeds 1..10 at the default configuration
// -------------------------------------------------------------------------

#[test]
fn c02_model_ordering_over_ten_seeds() {
    let t0 = Instant::now();
    let mut nfir_above_iir = 0;
    let mut niir_near_iir = 0;
    println!("  seed   mse(iir)    mse(nfir)   mse(niir)");
    for seed in 1..=10u32 {
        let r = run_experiment(&ExperimentConfig::for_seed(seed)).expect("experiment");
        let iir = r.mse_table[&ModelKind::Iir];
        let nfir = r.mse_table[&ModelKind::Nfir];
        let niir = r.mse_table[&ModelKind::Niir];
        println!("  {seed:>4}   {iir:.6}    {nfir:.6}    {niir:.6}");
        if nfir > iir && iir > 0.0 {
            nfir_above_iir += 1;
        }
        if niir <= 3.0 * iir && niir >= iir / 3.0 {
            niir_near_iir += 1;
        }
    }
    let elapsed = t0.elapsed();
    let pass = nfir_above_iir >= 8 && niir_near_iir >= 8 && elapsed < Duration::from_secs(30);
    verdict(
        2,
        pass,
        &format!(
            "mse(nfir) > mse(iir) > 0 in {nfir_above_iir}/10 seeds (need 8), \
             mse(niir) within 3x of mse(iir) in {niir_near_iir}/10 (need 8), {elapsed:.2?}"
        ),
    );
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}, budget 30 s");
    assert!(
        niir_near_iir >= 8,
        "niir within a factor 3 of iir in only {niir_near_iir}/10 seeds"
    );
    assert!(
        nfir_above_iir >= 8,
        "mse(nfir) > mse(iir) > 0 held in only {nfir_above_iir}/10 seeds; the \
         feedforward net imitates the FIR reference to ~1e-3 MSE on every seed \
         while the classical IIR's structural mismatch stays near 7e-2, so the \
         expected ordering never materializes in this deterministic simulation"
    );
}

// -------------------------------------------------------------------------
// 3. online training reduces the error for both network models
// -------------------------------------------------------------------------

#[test]
fn c03_training_error_declines() {
    let mut nfir_declines = 0;
    let mut niir_declines = 0;
    for seed in 1..=10u32 {
        let cfg = ExperimentConfig::for_seed(seed);
        let fmt = cfg.signal.fmt;
        let train_x = gen_test_signal(&SignalConfig {
            n_steps: cfg.train_steps,
            ..cfg.signal
        })
        .expect("stimulus");

        let mut fir =
            FirFilter::new(design_lowpass_fir(cfg.fir_taps, cfg.fir_cutoff, fmt).expect("design"))
                .expect("fir");
        let fir_desired = fir.run(&train_x).expect("teacher run");
        let mut iir = neurodsp::filters::Biquad::new(
            BiquadCoeffs::design_lowpass(cfg.iir_cutoff, cfg.iir_q, fmt).expect("design"),
            fmt,
        )
        .expect("iir");
        let iir_desired = iir.run(&train_x).expect("teacher run");

        let mut nfir =
            NeuroFir::new(cfg.fir_taps, cfg.nfir_hidden, cfg.nfir_mu, fmt, cfg.nfir_seed)
                .expect("net");
        let mut niir =
            ElmanNet::new(cfg.niir_hidden, cfg.niir_mu, fmt, cfg.niir_seed).expect("net");

        let mut nfir_sq = Vec::new();
        let mut niir_sq = Vec::new();
        for n in 0..train_x.len() {
            let x = train_x.get(n).expect("in range");
            let (_, e) = nfir
                .train_step(&x, &fir_desired.get(n).expect("len"))
                .expect("train");
            nfir_sq.push(e.value() * e.value());
            let (_, e) = niir
                .train_step(&x, &iir_desired.get(n).expect("len"))
                .expect("train");
            niir_sq.push(e.value() * e.value());
        }
        if common::mean(&nfir_sq[nfir_sq.len() - 200..]) < common::mean(&nfir_sq[..200]) {
            nfir_declines += 1;
        }
        if common::mean(&niir_sq[niir_sq.len() - 200..]) < common::mean(&niir_sq[..200]) {
            niir_declines += 1;
        }
    }
    let pass = nfir_declines >= 9 && niir_declines >= 9;
    verdict(
        3,
        pass,
        &format!(
            "last-200 training error below first-200 in {nfir_declines}/10 seeds (feedforward) \
             and {niir_declines}/10 (recurrent), need 9 each"
        ),
    );
    assert!(nfir_declines >= 9, "feedforward net learned in only {nfir_declines}/10 seeds");
    assert!(niir_declines >= 9, "recurrent net learned in only {niir_declines}/10 seeds");
}

// -------------------------------------------------------------------------
// 4. analog prototype design numbers
// -------------------------------------------------------------------------

#[test]
fn c04_sallen_key_design_numbers() {
    let t0 = Instant::now();
    let d = design_sallen_key(7.0, 6.0, 15e-9, 1e3).expect("design");
    let k_ok = d.k == 5.5;
    let fc_ok = d.f_c_hz == 5000.0;
    let rb_ok = d.r_b == 4500.0;
    let r_ok = (d.r - 2200.0).abs() / 2200.0 <= 0.05;

    let tf = SecondOrderTf::sallen_key(d.k, 2.2e3, d.cap);
    let b0_ok = (tf.b0 - 5.05e9).abs() / 5.05e9 <= 0.025;
    let a1_ok = (tf.a1 - (-75757.7)).abs() / 75757.7 <= 0.025;
    let a0_ok = (tf.a0 - 9.2e8).abs() / 9.2e8 <= 0.025;
    let unstable_ok = !tf.is_stable();
    let elapsed = t0.elapsed();

    let pass =
        k_ok && fc_ok && rb_ok && r_ok && b0_ok && a1_ok && a0_ok && unstable_ok && elapsed < Duration::from_secs(1);
    verdict(
        4,
        pass,
        &format!(
            "K={}, f_c={} Hz, R_B={} ohm, R={:.1} ohm; catalogue-R transfer \
             (b0 {:.4e}, a1 {:.4e}, a0 {:.4e}), stable={}, {elapsed:.2?}",
            d.k,
            d.f_c_hz,
            d.r_b,
            d.r,
            tf.b0,
            tf.a1,
            tf.a0,
            tf.is_stable()
        ),
    );
    assert!(k_ok, "K = {} expected exactly 5.5", d.k);
    assert!(fc_ok, "f_c = {} expected exactly 5000", d.f_c_hz);
    assert!(rb_ok, "R_B = {} expected exactly 4500", d.r_b);
    assert!(r_ok, "R = {} not within 5% of 2200", d.r);
    assert!(b0_ok, "b0 = {} not within 2.5% of 5.05e9", tf.b0);
    assert!(a1_ok, "a1 = {} not within 2.5% of -75757.7", tf.a1);
    assert!(a0_ok, "a0 = {} not within 2.5% of 9.2e8", tf.a0);
    assert!(unstable_ok, "K = 5.5 > 3 must be reported unstable");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1 s");
}

// -------------------------------------------------------------------------
// 5. filter datapaths against independent oracles
// -------------------------------------------------------------------------

#[test]
fn c05_filter_oracles() {
    let q15 = QFormat::Q15;
    let mut rng = Lcg31::new(0xBEEF);

    // (i) 1000 random FIR cases vs the arbitrary-precision convolution.
    // Tap magnitudes are capped so no case can saturate: sum|h| <= 0.9.
    let mut fir_cases = 0;
    while fir_cases < 1000 {
        let n_taps = 1 + (rng.next_u31() as usize % 15);
        let tap_cap = ((0.9 * 32768.0) / n_taps as f64) as i64;
        let taps_raw: Vec<i64> = (0..n_taps)
            .map(|_| rng.next_u31() as i64 % (2 * tap_cap + 1) - tap_cap)
            .collect();
        let input_raw: Vec<i64> = (0..24)
            .map(|_| rng.next_u31() as i64 % 65535 - 32767)
            .collect();

        let taps: Vec<_> = taps_raw
            .iter()
            .map(|&r| q15.from_raw(r).expect("tap in range"))
            .collect();
        let mut filter = FirFilter::new(taps).expect("taps");
        let mut trace = neurodsp::signals::Trace::with_capacity(q15, input_raw.len());
        for &r in &input_raw {
            trace.push(q15.from_raw(r).expect("in range")).expect("push");
        }
        let got = filter.run(&trace).expect("run");
        let want = common::fir_convolution_oracle(&taps_raw, &input_raw, q15.frac());
        assert_eq!(got.raw(), &want[..], "FIR case {fir_cases} diverges from the oracle");
        fir_cases += 1;
    }

    // (ii) 100 random stable coefficient sets: transposed DF2 vs a textbook
    // DF1 recursion, exact for all 64 impulse-response samples. Poles and
    // gains are drawn from a region where nothing can saturate (the two
    // forms only promise bit-equality in the linear range).
    let cfmt = BiquadCoeffs::coefficient_format(q15);
    let mut iir_cases = 0;
    while iir_cases < 100 {
        let a2 = (rng.next_unit() - 0.5) * 0.8; // |a2| <= 0.4
        let a1 = (rng.next_unit() - 0.5) * 1.6 * (1.0 + a2); // |a1| < 0.8 (1+a2)
        let a1q = cfmt.quantize(a1).expect("a1");
        let a2q = cfmt.quantize(a2).expect("a2");
        if !BiquadCoeffs::is_stable_pair(a1q.value(), a2q.value()) {
            continue;
        }
        let b: Vec<_> = (0..3)
            .map(|_| cfmt.quantize((rng.next_unit() - 0.5) * 0.1).expect("b"))
            .collect();
        let b_raw: Vec<i64> = b.iter().map(|c| c.raw()).collect();
        let a_raw = vec![a1q.raw(), a2q.raw()];

        let impulse = gen_impulse(64, 0.25, q15).expect("impulse");
        let mut df2t = IirDf2t::new(b, vec![a1q, a2q], q15).expect("df2t");
        let got = df2t.run(&impulse).expect("run");
        let want = common::df1_reference(&b_raw, &a_raw, impulse.raw(), cfmt.frac());
        assert_eq!(
            got.raw(),
            &want[..],
            "IIR case {iir_cases} (a1 {}, a2 {}) diverges between forms",
            a1q.value(),
            a2q.value()
        );
        iir_cases += 1;
    }

    // (iii) the DC response equals the tap sum.
    let mut worst_dc = 0.0f64;
    for (taps, cutoff) in [(7, 0.2), (21, 0.15), (31, 0.25), (63, 0.4)] {
        let h = design_lowpass_fir(taps, cutoff, q15).expect("design");
        let dc = fir_freq_response(&h, 0.0).expect("H(0)").norm();
        worst_dc = worst_dc.max((dc - fir_dc_gain(&h)).abs());
    }

    let pass = worst_dc <= 1e-12;
    verdict(
        5,
        pass,
        &format!(
            "1000 FIR cases exact vs arbitrary-precision convolution, 100 stable DF1/DF2T \
             pairs exact over 64 samples, |H(0)| vs tap sum off by {worst_dc:.1e} (tol 1e-12)"
        ),
    );
    assert!(worst_dc <= 1e-12, "|H(0)| vs sum h differs by {worst_dc}");
}

// -------------------------------------------------------------------------
// 6. integrate-and-fire closed form and monotonicity
// -------------------------------------------------------------------------

#[test]
fn c06_lif_closed_form_and_rate() {
    let params = LifParams {
        tau: 0.01,
        v_rest: 0.0,
        r_mem: 1.0,
        v_th: 1.0,
        v_reset: 0.0,
        t_ref: 0.0,
        dt: 0.01 / 100.0, // tau/100
    };

    let mut worst_isi_gap = 0.0f64;
    for i_in in [1.5, 2.0, 3.0, 5.0] {
        let run = lif_run(params.clone(), &vec![i_in; 30_000]).expect("run");
        let spikes = run.spike_steps();
        assert!(spikes.len() >= 3, "I = {i_in} produced too few spikes");
        let measured = (spikes[2] - spikes[1]) as f64;
        let predicted = params.closed_form_isi(i_in).expect("closed form") / params.dt;
        worst_isi_gap = worst_isi_gap.max((measured - predicted).abs());
    }

    let mut rates = Vec::new();
    for k in 0..10 {
        let i_in = 1.2 + 0.4 * k as f64;
        rates.push(lif_run(params.clone(), &vec![i_in; 10_000]).expect("run").spike_count());
    }
    let monotone = rates.windows(2).all(|w| w[1] >= w[0]);

    let run = lif_run(params.clone(), &vec![2.0; 30_000]).expect("run");
    let v_max = run.potentials.iter().cloned().fold(f64::MIN, f64::max);
    let bounded = v_max <= params.v_th;

    let pass = worst_isi_gap <= 2.0 && monotone && bounded;
    verdict(
        6,
        pass,
        &format!(
            "ISI vs tau ln(RI/(RI-vth)) off by at most {worst_isi_gap:.2} steps (tol 2), \
             rate grid {rates:?} monotone: {monotone}, max v = {v_max:.6} <= v_th: {bounded}"
        ),
    );
    assert!(worst_isi_gap <= 2.0, "ISI gap {worst_isi_gap} steps exceeds 2");
    assert!(monotone, "firing rates {rates:?} are not non-decreasing");
    assert!(bounded, "membrane reached {v_max} above threshold {}", params.v_th);
}

// -------------------------------------------------------------------------
// 7. memristor device, crossbar, and programming properties
// -------------------------------------------------------------------------

#[test]
fn c07_memristor_properties() {
    // (i) pinched hysteresis at the default sweep
    let sweep = iv_sweep(&IvSweepConfig {
        params: MemristorParams::default(),
        v_amp: 1.0,
        v_freq: 50.0,
        dt: 1e-5,
        n_periods: 3,
    })
    .expect("sweep");
    let pinched = sweep.iter().filter(|p| p.v == 0.0).all(|p| p.i == 0.0);
    let area = enclosed_area(&sweep);

    // (ii) state containment under a million random drive steps
    let mut dev = Memristor::new(MemristorParams::default()).expect("device");
    let mut rng = Lcg31::new(77);
    let mut contained = true;
    for _ in 0..1_000_000 {
        let v = (rng.next_unit() * 2.0 - 1.0) * 2.0;
        dev.step(v, 1e-5).expect("step");
        contained &= (0.0..=1.0).contains(&dev.x());
    }

    // (iii) crossbar currents vs an exact dot product
    let (g_min, g_max) = MemristorParams::default().conductance_bounds();
    let mut worst_rel = 0.0f64;
    for _ in 0..100 {
        let g: Vec<Vec<f64>> = (0..8)
            .map(|_| (0..8).map(|_| g_min + rng.next_unit() * (g_max - g_min)).collect())
            .collect();
        let xbar = CrossbarMatrix::from_conductances(g.clone(), g_min, g_max).expect("xbar");
        let v: Vec<f64> = (0..8).map(|_| rng.next_unit() * 2.0 - 1.0).collect();
        let got = xbar.mac(&v).expect("mac");
        for j in 0..8 {
            let col: Vec<f64> = (0..8).map(|i| g[i][j]).collect();
            let want = common::dot(&v, &col);
            let scale = v.iter().map(|x| x.abs()).sum::<f64>() * g_max;
            worst_rel = worst_rel.max((got[j] - want).abs() / scale);
        }
    }

    // (iv) differential programming round trip
    let mut worst_w = 0.0f64;
    for _ in 0..200 {
        let w: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.next_unit() * 2.0 - 1.0).collect())
            .collect();
        let (pos, neg) = program_weights(&w, g_min, g_max).expect("program");
        let back = reconstruct_weights(&pos, &neg).expect("read back");
        for (row, rec) in w.iter().zip(&back) {
            for (&a, &b) in row.iter().zip(rec) {
                worst_w = worst_w.max((a - b).abs());
            }
        }
    }

    let pass = pinched && area > 0.0 && contained && worst_rel <= 1e-12 && worst_w <= 1.0 / 255.0;
    verdict(
        7,
        pass,
        &format!(
            "pinched at v=0: {pinched}, loop area {area:.3e} > 0, x in [0,1] for 1e6 steps: \
             {contained}, crossbar vs dot product rel err {worst_rel:.1e} (tol 1e-12), \
             programming round trip {worst_w:.3e} (tol {:.3e})",
            1.0 / 255.0
        ),
    );
    assert!(pinched, "current must vanish exactly wherever the drive is exactly zero");
    assert!(area > 0.0, "hysteresis loop area {area} must be positive");
    assert!(contained, "state left [0, 1] under random drive");
    assert!(worst_rel <= 1e-12, "crossbar MAC off by {worst_rel} relative");
    assert!(worst_w <= 1.0 / 255.0, "round-trip error {worst_w} above one level");
}

// -------------------------------------------------------------------------
// 8. pulse-width arithmetic identities
// -------------------------------------------------------------------------

#[test]
fn c08_time_domain_algebra() {
    let clk = TimeClock::new(100e-6).expect("clock");
    let mut rng = Lcg31::new(4096);

    // register involution: exact on every width the register itself produces
    let mut involution = true;
    for _ in 0..1000 {
        let source = TimePulse::new(rng.next_unit() * clk.t_clk()).expect("pulse");
        let stored = time_register(source, &clk).expect("store");
        let twice =
            time_register(time_register(stored, &clk).expect("first"), &clk).expect("second");
        involution &= twice.width() == stored.width();
    }

    // amplifier and adder against their defining formulas, bit for bit
    let mut formulas = true;
    for _ in 0..1000 {
        let w = rng.next_unit() * clk.t_clk() / 4.0;
        let a = 0.25 + rng.next_unit() * 3.75;
        if a * w <= clk.t_clk() {
            let amp = time_amplifier(TimePulse::new(w).expect("pulse"), &clk, a).expect("amp");
            formulas &= amp.width() == clk.t_clk() - a * w;
        }
        let widths: Vec<f64> = (0..3).map(|_| rng.next_unit() * clk.t_clk() / 4.0).collect();
        let pulses: Vec<TimePulse> = widths
            .iter()
            .map(|&w| TimePulse::new(w).expect("pulse"))
            .collect();
        let sum = time_adder(&pulses, &clk).expect("add");
        let folded = widths.iter().fold(0.0, |acc, w| acc + w);
        formulas &= sum.width() == clk.t_clk() - folded;
    }

    // unit-gain z-delay is a pure one-sample shift
    let stream: Vec<TimePulse> = (0..256)
        .map(|_| TimePulse::new(rng.next_unit() * clk.t_clk()).expect("pulse"))
        .collect();
    let delayed = z_delay(&stream, &clk, 1.0).expect("delay");
    let mut shifted = delayed[0].width() == 0.0;
    for k in 1..stream.len() {
        shifted &= delayed[k].width() == stream[k - 1].width();
    }

    let pass = involution && formulas && shifted;
    verdict(
        8,
        pass,
        &format!(
            "register involution exact on 1000 produced pulses: {involution}, \
             amplifier/adder equal their formulas on 1000 cases: {formulas}, \
             z-delay(a=1) is an element-exact shift over 256 samples: {shifted}"
        ),
    );
    assert!(involution, "double complement drifted on a stored pulse");
    assert!(formulas, "amplifier or adder diverged from its formula");
    assert!(shifted, "unit-gain delay is not an exact one-sample shift");
}

// -------------------------------------------------------------------------
// 9. byte-identical reruns for every CLI command
// -------------------------------------------------------------------------

#[test]
fn c09_cli_determinism() {
    let cases: Vec<(&str, Vec<&str>, Vec<&str>)> = vec![
        (
            "run",
            vec![
                "run", "--models", "fir,iir,nfir,niir", "--steps", "300", "--train-steps",
                "300", "--seed", "7", "--out", "out.csv",
            ],
            vec!["out.csv"],
        ),
        ("design", vec!["design", "sallen-key", "--alpha", "7", "--beta", "6"], vec![]),
        (
            "sweep",
            vec!["sweep", "memristor", "--periods", "1", "--out", "iv.csv"],
            vec!["iv.csv"],
        ),
        (
            "freq",
            vec!["freq", "fir", "--coeffs", "taps.txt", "--points", "64", "--out", "resp.csv"],
            vec!["resp.csv"],
        ),
        (
            "lif",
            vec!["lif", "--current", "1.8", "--steps", "500", "--out", "spikes.csv"],
            vec!["spikes.csv"],
        ),
    ];

    let mut all_identical = true;
    for (name, args, files) in &cases {
        let mut runs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().expect("tempdir");
            std::fs::write(dir.path().join("taps.txt"), "0.25\n0.5\n0.25\n").expect("coeffs");
            let out = bin().args(args).current_dir(dir.path()).output().expect("spawn");
            assert!(
                out.status.success(),
                "{name} exited nonzero: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let artifacts: Vec<Vec<u8>> = files
                .iter()
                .map(|f| std::fs::read(dir.path().join(f)).expect("artifact"))
                .collect();
            runs.push((out.stdout, artifacts));
        }
        let identical = runs[0] == runs[1];
        all_identical &= identical;
        assert!(identical, "`neurodsp {name}` differed between identical invocations");
    }
    verdict(
        9,
        all_identical,
        "two invocations of each of the 5 commands produced byte-identical stdout and files",
    );
}

// -------------------------------------------------------------------------
// 10. quantization contract
// -------------------------------------------------------------------------

#[test]
fn c10_fixed_point_contract() {
    let mut rng = Lcg31::new(31337);
    let mut worst_frac_of_lsb = 0.0f64;
    for fmt in [QFormat::Q15, QFormat::Q24_16] {
        for _ in 0..100_000 {
            let v = fmt.min_value() + rng.next_unit() * (fmt.max_value() - fmt.min_value());
            let q = fmt.quantize(v).expect("in range");
            worst_frac_of_lsb = worst_frac_of_lsb.max((q.value() - v).abs() / fmt.lsb());
        }
    }

    let q15 = QFormat::Q15;
    let rails = q15.quantize(q15.max_value()).expect("max").raw() == q15.max_raw()
        && q15.quantize(q15.min_value()).expect("min").raw() == q15.min_raw()
        && q15.quantize(q15.max_value() + q15.lsb()).expect("over").raw() == q15.max_raw()
        && q15.quantize(q15.min_value() - q15.lsb()).expect("under").raw() == q15.min_raw()
        && q15.quantize(1e9).expect("far over").raw() == q15.max_raw()
        && q15.quantize(-1e9).expect("far under").raw() == q15.min_raw()
        && q15.from_raw(q15.max_raw()).expect("rail").value() == q15.max_value()
        && q15.from_raw(q15.min_raw()).expect("rail").value() == q15.min_value();

    let pass = worst_frac_of_lsb <= 0.5 && rails;
    verdict(
        10,
        pass,
        &format!(
            "round-trip error at most {worst_frac_of_lsb:.6} lsb over 2x100000 random reals \
             (tol 0.5), rails exact: {rails}"
        ),
    );
    assert!(worst_frac_of_lsb <= 0.5, "round trip exceeded half an lsb");
    assert!(rails, "saturation rails are not exact");
}
