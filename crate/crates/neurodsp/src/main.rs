//! Thin command-line front end over the `neurodsp` library.
//!
//! Every subcommand parses flags, calls one library entry point, and writes
//! the result to stdout or a file; all numerics and validation live in the
//! library. Errors exit nonzero with a single diagnostic line on stderr.

use clap::{Args, Parser, Subcommand};
use neurodsp::experiment::{
    emit_csv, emit_report, parse_config, parse_model_list, run_experiment, ExperimentConfig,
};
use neurodsp::filters::{load_coefficients, quantize_coefficients, write_freq_sweep_csv};
use neurodsp::lif::{lif_run, LifParams};
use neurodsp::memristor::{iv_sweep, write_iv_csv, IvSweepConfig, MemristorParams};
use neurodsp::{analog, Error, QFormat};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "neurodsp", version, about = "Deterministic fixed-point DSP and neuromorphic-filter simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the train/test filter-comparison experiment and write trace CSV.
    Run(RunArgs),
    /// Component design calculators.
    #[command(subcommand)]
    Design(DesignCommand),
    /// Device characterization sweeps.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Frequency-response analysis.
    #[command(subcommand)]
    Freq(FreqCommand),
    /// Simulate a leaky integrate-and-fire neuron under constant current.
    Lif(LifArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated subset of fir,iir,nfir,niir.
    #[arg(long)]
    models: Option<String>,
    /// Test-phase length in samples.
    #[arg(long)]
    steps: Option<usize>,
    /// Training-phase length in samples (0 requires --allow-untrained).
    #[arg(long = "train-steps")]
    train_steps: Option<usize>,
    /// Root seed; stimulus and network seeds derive from it.
    #[arg(long)]
    seed: Option<u32>,
    /// Sine amplitude.
    #[arg(long)]
    amp: Option<f64>,
    /// Sine frequency in Hz.
    #[arg(long)]
    freq: Option<f64>,
    /// Sample rate in Hz.
    #[arg(long)]
    fs: Option<f64>,
    /// Uniform noise amplitude.
    #[arg(long)]
    noise: Option<f64>,
    /// Fixed-point data format, e.g. q16.15.
    #[arg(long)]
    format: Option<QFormat>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional `key = value` config file; explicit flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Permit train-steps = 0 (score the untrained networks).
    #[arg(long = "allow-untrained")]
    allow_untrained: bool,
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Size a unity-C Sallen-Key low-pass stage from the gain fraction α/β.
    SallenKey(SallenKeyArgs),
}

#[derive(Args)]
struct SallenKeyArgs {
    /// Gain numerator.
    #[arg(long, default_value_t = 7.0)]
    alpha: f64,
    /// Gain denominator.
    #[arg(long, default_value_t = 6.0)]
    beta: f64,
    /// Filter capacitance in farads.
    #[arg(long, default_value_t = 15e-9)]
    cap: f64,
    /// Feedback divider base resistor in ohms.
    #[arg(long, default_value_t = 1e3)]
    ra: f64,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Drive a memristor with a sine and record the pinched I-V loop.
    Memristor(MemristorArgs),
}

#[derive(Args)]
struct MemristorArgs {
    /// Fully-on resistance in ohms.
    #[arg(long, default_value_t = 100.0)]
    ron: f64,
    /// Fully-off resistance in ohms.
    #[arg(long, default_value_t = 16000.0)]
    roff: f64,
    /// Drift rate constant.
    #[arg(long, default_value_t = 10000.0)]
    k: f64,
    /// Initial state in [0, 1].
    #[arg(long, default_value_t = 0.3)]
    x0: f64,
    /// Drive amplitude in volts.
    #[arg(long, default_value_t = 1.0)]
    vamp: f64,
    /// Drive frequency in Hz.
    #[arg(long, default_value_t = 50.0)]
    vfreq: f64,
    /// Integration step in seconds.
    #[arg(long, default_value_t = 1e-5)]
    dt: f64,
    /// Whole drive periods to integrate.
    #[arg(long, default_value_t = 3)]
    periods: usize,
    /// Output CSV path.
    #[arg(long, default_value = "iv.csv")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum FreqCommand {
    /// Sweep an FIR filter's response over [0, pi] from a coefficient file.
    Fir(FreqFirArgs),
}

#[derive(Args)]
struct FreqFirArgs {
    /// Text file with one coefficient per line (# comments allowed).
    #[arg(long)]
    coeffs: PathBuf,
    /// Number of frequency points, inclusive of both band edges.
    #[arg(long, default_value_t = 512)]
    points: usize,
    /// Output CSV path.
    #[arg(long, default_value = "resp.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct LifArgs {
    /// Membrane time constant in seconds.
    #[arg(long, default_value_t = 0.01)]
    tau: f64,
    /// Spike threshold.
    #[arg(long, default_value_t = 1.0)]
    vth: f64,
    /// Membrane resistance.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Euler step in seconds.
    #[arg(long, default_value_t = 0.001)]
    dt: f64,
    /// Constant input current.
    #[arg(long, default_value_t = 2.0)]
    current: f64,
    /// Number of simulation steps.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Output CSV path.
    #[arg(long, default_value = "spikes.csv")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Prints status text, tolerating a closed stdout (e.g. piping into `head`).
/// File artifacts are the real outputs and their write errors are checked.
fn say(text: impl std::fmt::Display) {
    let _ = write!(std::io::stdout(), "{text}");
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Design(DesignCommand::SallenKey(args)) => {
            let design = analog::design_sallen_key(args.alpha, args.beta, args.cap, args.ra)?;
            say(design.render_report());
            Ok(())
        }
        Command::Sweep(SweepCommand::Memristor(args)) => {
            let points = iv_sweep(&IvSweepConfig {
                params: MemristorParams {
                    r_on: args.ron,
                    r_off: args.roff,
                    k: args.k,
                    x0: args.x0,
                },
                v_amp: args.vamp,
                v_freq: args.vfreq,
                dt: args.dt,
                n_periods: args.periods,
            })?;
            let mut out = create(&args.out)?;
            write_iv_csv(&points, &mut out)?;
            out.flush()?;
            say(format_args!("wrote {} sweep points to {}\n", points.len(), args.out.display()));
            Ok(())
        }
        Command::Freq(FreqCommand::Fir(args)) => {
            let values = load_coefficients(&args.coeffs)?;
            let coeffs = quantize_coefficients(&values, QFormat::default())?;
            let mut out = create(&args.out)?;
            write_freq_sweep_csv(&coeffs, args.points, &mut out)?;
            out.flush()?;
            say(format_args!("wrote {} response points to {}\n", args.points, args.out.display()));
            Ok(())
        }
        Command::Lif(args) => {
            let params = LifParams {
                tau: args.tau,
                v_th: args.vth,
                r_mem: args.r,
                dt: args.dt,
                ..LifParams::default()
            };
            let run = lif_run(params, &vec![args.current; args.steps])?;
            let mut out = create(&args.out)?;
            run.write_spikes_csv(&mut out)?;
            out.flush()?;
            say(format_args!(
                "{} spikes over {} steps, spike train written to {}\n",
                run.spike_count(),
                args.steps,
                args.out.display()
            ));
            Ok(())
        }
    }
}

/// Flag precedence for `run`: built-in defaults, then the config file, then
/// explicit flags. The root seed follows the same rule and re-derives the
/// stimulus and network seeds before other overrides land on top.
fn cmd_run(args: RunArgs) -> Result<(), Error> {
    let overrides = match &args.config {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => Default::default(),
    };

    let seed = args.seed.or(overrides.seed).unwrap_or(1);
    let mut cfg = ExperimentConfig::for_seed(seed);
    overrides.apply(&mut cfg);

    if let Some(models) = &args.models {
        cfg.models = parse_model_list(models)?;
    }
    if let Some(steps) = args.steps {
        cfg.test_steps = steps;
    }
    if let Some(train) = args.train_steps {
        cfg.train_steps = train;
    }
    if let Some(amp) = args.amp {
        cfg.signal.amplitude = amp;
    }
    if let Some(freq) = args.freq {
        cfg.signal.freq_hz = freq;
    }
    if let Some(fs) = args.fs {
        cfg.signal.sample_rate_hz = fs;
    }
    if let Some(noise) = args.noise {
        cfg.signal.noise_amp = noise;
    }
    if let Some(fmt) = args.format {
        cfg.signal.fmt = fmt;
    }
    if args.allow_untrained {
        cfg.allow_untrained = true;
    }

    let result = run_experiment(&cfg)?;

    let out_path = args
        .out
        .or_else(|| overrides.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results.csv"));
    let mut out = create(&out_path)?;
    emit_csv(&result, &mut out)?;
    out.flush()?;

    say(emit_report(&result));
    say(format_args!("traces written to {}\n", out_path.display()));
    Ok(())
}

fn create(path: &PathBuf) -> Result<BufWriter<File>, Error> {
    Ok(BufWriter::new(File::create(path)?))
}
