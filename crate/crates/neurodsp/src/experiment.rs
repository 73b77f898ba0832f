//! The end-to-end experiment: one noisy stimulus, four filter variants, one
//! MSE scoreboard.
//!
//! A run builds a training stimulus and a test stimulus (same statistics,
//! different PRNG stream), computes the classical FIR output — the *golden
//! reference* every model is scored against — plus a classical biquad IIR,
//! trains the two neural approximators online against their classical
//! counterparts, then freezes them and replays the test phase. The test
//! outputs, their MSEs against the golden reference, and the full
//! configuration land in an [`ExperimentResult`] that serializes to CSV
//! ([`emit_csv`]) and a text report ([`emit_report`]).
//!
//! Everything is deterministic: the signal seed, the two network seeds, and
//! the configuration fully determine every output byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::filters::{design_lowpass_fir, Biquad, BiquadCoeffs, FirFilter};
use crate::fixedpoint::QFormat;
use crate::neuro::{ElmanNet, Mode, NeuroFir, DEFAULT_ELMAN_HIDDEN, DEFAULT_MU, DEFAULT_NFIR_HIDDEN};
use crate::signals::{fmt_sig9, gen_test_signal, mse, SignalConfig, Trace};

/// One of the four filter variants an experiment can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    /// Classical fixed-point FIR — the golden reference.
    Fir,
    /// Classical fixed-point biquad IIR.
    Iir,
    /// Feedforward neural approximator of the FIR.
    Nfir,
    /// Elman recurrent approximator of the IIR.
    Niir,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Fir, ModelKind::Iir, ModelKind::Nfir, ModelKind::Niir];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Fir => "fir",
            ModelKind::Iir => "iir",
            ModelKind::Nfir => "nfir",
            ModelKind::Niir => "niir",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fir" => Ok(ModelKind::Fir),
            "iir" => Ok(ModelKind::Iir),
            "nfir" => Ok(ModelKind::Nfir),
            "niir" => Ok(ModelKind::Niir),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected fir, iir, nfir, or niir)"
            ))),
        }
    }
}

/// Parses a comma-separated model list such as `fir,iir,nfir`.
pub fn parse_model_list(text: &str) -> Result<BTreeSet<ModelKind>> {
    let mut set = BTreeSet::new();
    for part in text.split(',') {
        let name = part.trim();
        if name.is_empty() {
            return Err(Error::Config(format!("empty entry in model list `{text}`")));
        }
        set.insert(name.parse::<ModelKind>()?);
    }
    Ok(set)
}

/// Everything a run needs. The embedded [`SignalConfig`] supplies the
/// stimulus statistics, data format, and base seed; its `n_steps` field is
/// ignored (each phase sets its own length).
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub signal: SignalConfig,
    pub models: BTreeSet<ModelKind>,
    /// Training-phase length. Zero skips training and is only legal with
    /// `allow_untrained`.
    pub train_steps: usize,
    /// Test-phase length; MSEs are computed over exactly these samples.
    pub test_steps: usize,
    pub allow_untrained: bool,
    /// Golden FIR design: tap count (odd) and normalized cutoff.
    pub fir_taps: usize,
    pub fir_cutoff: f64,
    /// Classical IIR design: biquad low-pass cutoff and resonance.
    pub iir_cutoff: f64,
    pub iir_q: f64,
    pub nfir_hidden: usize,
    pub nfir_mu: f64,
    pub nfir_seed: u32,
    pub niir_hidden: usize,
    pub niir_mu: f64,
    pub niir_seed: u32,
}

impl ExperimentConfig {
    /// The default experiment rooted at `seed`: all four models, 2000 train
    /// and 2000 test steps, and network seeds derived at fixed offsets so
    /// one knob reseeds the whole run.
    pub fn for_seed(seed: u32) -> Self {
        ExperimentConfig {
            signal: SignalConfig {
                seed,
                ..SignalConfig::default()
            },
            models: ModelKind::ALL.into_iter().collect(),
            train_steps: 2000,
            test_steps: 2000,
            allow_untrained: false,
            fir_taps: 7,
            fir_cutoff: 0.2,
            iir_cutoff: 0.2,
            iir_q: std::f64::consts::FRAC_1_SQRT_2,
            nfir_hidden: DEFAULT_NFIR_HIDDEN,
            nfir_mu: DEFAULT_MU,
            nfir_seed: seed.wrapping_add(1000),
            niir_hidden: DEFAULT_ELMAN_HIDDEN,
            niir_mu: DEFAULT_MU,
            niir_seed: seed.wrapping_add(2000),
        }
    }

    /// Seed of the test-phase stimulus stream (offset from the training
    /// stream so the two phases are decorrelated but still reproducible).
    pub fn test_seed(&self) -> u32 {
        self.signal.seed.wrapping_add(1)
    }

    pub fn validate(&self) -> Result<()> {
        self.signal.validate()?;
        if self.models.is_empty() {
            return Err(Error::Config("model set must not be empty".into()));
        }
        if self.test_steps == 0 {
            return Err(Error::Config("test_steps must be at least 1".into()));
        }
        if self.train_steps == 0 && !self.allow_untrained {
            return Err(Error::Config(
                "train_steps = 0 disables learning; pass --allow-untrained to run anyway".into(),
            ));
        }
        Ok(())
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig::for_seed(1)
    }
}

/// The outcome of a run: the test stimulus, every requested model's
/// test-phase output, and the MSE of each against the classical FIR.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Test-phase input samples.
    pub stimulus: Trace,
    pub outputs: BTreeMap<ModelKind, Trace>,
    /// Test-phase MSE of each model against the classical FIR output.
    pub mse_table: BTreeMap<ModelKind, f64>,
}

fn attribute(model: ModelKind, e: Error) -> Error {
    Error::Model {
        model: model.name(),
        source: Box::new(e),
    }
}

/// Runs the full experiment described by `cfg`.
///
/// Phases: (1) generate the train and test stimuli; (2) run the classical
/// filters over both (resetting state at the phase boundary); (3) train the
/// neural models online, each against its classical counterpart's training
/// output; (4) freeze them, clear their transient state, and replay the
/// test phase; (5) score every requested model against the classical FIR
/// test output.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let fmt = cfg.signal.fmt;

    let train_x = if cfg.train_steps > 0 {
        Some(gen_test_signal(&SignalConfig {
            n_steps: cfg.train_steps,
            ..cfg.signal
        })?)
    } else {
        None
    };
    let test_x = gen_test_signal(&SignalConfig {
        n_steps: cfg.test_steps,
        seed: cfg.test_seed(),
        ..cfg.signal
    })?;

    // golden reference: classical FIR, zero state at each phase start
    let coeffs = design_lowpass_fir(cfg.fir_taps, cfg.fir_cutoff, fmt)
        .map_err(|e| attribute(ModelKind::Fir, e))?;
    let mut fir = FirFilter::new(coeffs).map_err(|e| attribute(ModelKind::Fir, e))?;
    let fir_train = match &train_x {
        Some(t) if cfg.models.contains(&ModelKind::Nfir) => {
            let out = fir.run(t).map_err(|e| attribute(ModelKind::Fir, e))?;
            fir.reset();
            Some(out)
        }
        _ => None,
    };
    let golden = fir.run(&test_x).map_err(|e| attribute(ModelKind::Fir, e))?;

    // classical IIR where needed (as a model or as the recurrent net's teacher)
    let need_iir_train = cfg.models.contains(&ModelKind::Niir) && train_x.is_some();
    let need_iir_test = cfg.models.contains(&ModelKind::Iir);
    let (iir_train, iir_test) = if need_iir_train || need_iir_test {
        let design = BiquadCoeffs::design_lowpass(cfg.iir_cutoff, cfg.iir_q, fmt)
            .map_err(|e| attribute(ModelKind::Iir, e))?;
        let mut iir = Biquad::new(design, fmt).map_err(|e| attribute(ModelKind::Iir, e))?;
        let train_out = if need_iir_train {
            let out = iir
                .run(train_x.as_ref().expect("checked above"))
                .map_err(|e| attribute(ModelKind::Iir, e))?;
            iir.reset();
            Some(out)
        } else {
            None
        };
        let test_out = if need_iir_test {
            Some(iir.run(&test_x).map_err(|e| attribute(ModelKind::Iir, e))?)
        } else {
            None
        };
        (train_out, test_out)
    } else {
        (None, None)
    };

    let mut outputs = BTreeMap::new();
    for &model in &cfg.models {
        let trace = match model {
            ModelKind::Fir => golden.clone(),
            ModelKind::Iir => iir_test.clone().expect("computed when iir is requested"),
            ModelKind::Nfir => {
                let mut net = NeuroFir::new(cfg.fir_taps, cfg.nfir_hidden, cfg.nfir_mu, fmt, cfg.nfir_seed)
                    .map_err(|e| attribute(model, e))?;
                if let (Some(x), Some(desired)) = (&train_x, &fir_train) {
                    for n in 0..x.len() {
                        let xn = x.get(n).expect("in range");
                        let dn = desired.get(n).expect("same length");
                        net.train_step(&xn, &dn).map_err(|e| attribute(model, e))?;
                    }
                }
                net.set_mode(Mode::Infer);
                net.reset();
                let mut out = Trace::with_capacity(fmt, test_x.len());
                for x in test_x.iter() {
                    let y = net.forward(&x).map_err(|e| attribute(model, e))?;
                    out.push(y).map_err(|e| attribute(model, e))?;
                }
                out
            }
            ModelKind::Niir => {
                let mut net = ElmanNet::new(cfg.niir_hidden, cfg.niir_mu, fmt, cfg.niir_seed)
                    .map_err(|e| attribute(model, e))?;
                if let (Some(x), Some(desired)) = (&train_x, &iir_train) {
                    for n in 0..x.len() {
                        let xn = x.get(n).expect("in range");
                        let dn = desired.get(n).expect("same length");
                        net.train_step(&xn, &dn).map_err(|e| attribute(model, e))?;
                    }
                }
                net.set_mode(Mode::Infer);
                net.reset();
                let mut out = Trace::with_capacity(fmt, test_x.len());
                for x in test_x.iter() {
                    let y = net.forward(&x).map_err(|e| attribute(model, e))?;
                    out.push(y).map_err(|e| attribute(model, e))?;
                }
                out
            }
        };
        outputs.insert(model, trace);
    }

    let mut mse_table = BTreeMap::new();
    for (&model, trace) in &outputs {
        mse_table.insert(model, mse(trace, &golden).map_err(|e| attribute(model, e))?);
    }

    Ok(ExperimentResult {
        config: cfg.clone(),
        stimulus: test_x,
        outputs,
        mse_table,
    })
}

/// Writes the test-phase traces as CSV: `n`, the stimulus `x`, one `y_<model>`
/// column per requested model (9-significant-digit decimals), then the same
/// columns again as raw fixed-point integers (`x_raw`, `y_<model>_raw`) so
/// results can be reloaded without any rounding.
pub fn emit_csv<W: Write>(result: &ExperimentResult, mut out: W) -> Result<()> {
    let models: Vec<ModelKind> = result.outputs.keys().copied().collect();
    for (&model, trace) in &result.outputs {
        if trace.len() != result.stimulus.len() {
            return Err(attribute(
                model,
                Error::LengthMismatch {
                    expected: result.stimulus.len(),
                    got: trace.len(),
                },
            ));
        }
    }

    let mut header = String::from("n,x");
    for m in &models {
        header.push_str(&format!(",y_{m}"));
    }
    header.push_str(",x_raw");
    for m in &models {
        header.push_str(&format!(",y_{m}_raw"));
    }
    writeln!(out, "{header}")?;

    for n in 0..result.stimulus.len() {
        let x = result.stimulus.get(n).expect("in range");
        let mut row = format!("{n},{}", fmt_sig9(x.value()));
        for m in &models {
            let y = result.outputs[m].get(n).expect("length checked");
            row.push_str(&format!(",{}", fmt_sig9(y.value())));
        }
        row.push_str(&format!(",{}", x.raw()));
        for m in &models {
            let y = result.outputs[m].get(n).expect("length checked");
            row.push_str(&format!(",{}", y.raw()));
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

/// Renders the human-readable run summary: the MSE table (6 decimals) and
/// enough configuration — including every seed — to reproduce the run from
/// the report alone.
pub fn emit_report(result: &ExperimentResult) -> String {
    let cfg = &result.config;
    let mut text = String::new();
    text.push_str("test-phase MSE vs classical FIR reference\n");
    text.push_str("  model   mse\n");
    for (model, value) in &result.mse_table {
        text.push_str(&format!("  {:<6}  {value:.6}\n", model.name()));
    }
    text.push('\n');
    let names: Vec<&str> = cfg.models.iter().map(|m| m.name()).collect();
    text.push_str(&format!("models:   {}\n", names.join(",")));
    text.push_str(&format!(
        "signal:   amp {}, freq {} Hz, fs {} Hz, noise {}, format {}\n",
        cfg.signal.amplitude, cfg.signal.freq_hz, cfg.signal.sample_rate_hz, cfg.signal.noise_amp, cfg.signal.fmt
    ));
    text.push_str(&format!(
        "phases:   train {} steps (stimulus seed {}), test {} steps (stimulus seed {})\n",
        cfg.train_steps,
        cfg.signal.seed,
        cfg.test_steps,
        cfg.test_seed()
    ));
    // The FIR reference is always exercised (it produces the golden trace); the
    // other design blocks are echoed only when a requested model uses them.
    let wants_iir = cfg.models.contains(&ModelKind::Iir) || cfg.models.contains(&ModelKind::Niir);
    text.push_str(&format!("filters:  fir {} taps @ cutoff {}", cfg.fir_taps, cfg.fir_cutoff));
    if wants_iir {
        text.push_str(&format!(", iir biquad @ cutoff {} q {:.4}", cfg.iir_cutoff, cfg.iir_q));
    }
    text.push('\n');
    let mut nets = Vec::new();
    if cfg.models.contains(&ModelKind::Nfir) {
        nets.push(format!(
            "nfir {} hidden (seed {}, mu {})",
            cfg.nfir_hidden, cfg.nfir_seed, cfg.nfir_mu
        ));
    }
    if cfg.models.contains(&ModelKind::Niir) {
        nets.push(format!(
            "niir {} hidden (seed {}, mu {})",
            cfg.niir_hidden, cfg.niir_seed, cfg.niir_mu
        ));
    }
    if !nets.is_empty() {
        text.push_str(&format!("networks: {}\n", nets.join(", ")));
    }
    text
}

// ---------------------------------------------------------------------------
// config files
// ---------------------------------------------------------------------------

/// Settings read from a config file. Every field mirrors the CLI flag of the
/// same name; the CLI applies them between the built-in defaults and any
/// explicit flags (flags win). `seed` and `out` are surfaced to the caller
/// rather than applied here: the seed anchors the derived network seeds, and
/// the output path is not part of the experiment proper.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub models: Option<BTreeSet<ModelKind>>,
    pub steps: Option<usize>,
    pub train_steps: Option<usize>,
    pub seed: Option<u32>,
    pub amp: Option<f64>,
    pub freq: Option<f64>,
    pub fs: Option<f64>,
    pub noise: Option<f64>,
    pub format: Option<QFormat>,
    pub out: Option<String>,
    pub allow_untrained: Option<bool>,
}

impl ConfigOverrides {
    /// Applies everything except `seed` and `out` to an experiment config.
    pub fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(models) = &self.models {
            cfg.models = models.clone();
        }
        if let Some(steps) = self.steps {
            cfg.test_steps = steps;
        }
        if let Some(train) = self.train_steps {
            cfg.train_steps = train;
        }
        if let Some(amp) = self.amp {
            cfg.signal.amplitude = amp;
        }
        if let Some(freq) = self.freq {
            cfg.signal.freq_hz = freq;
        }
        if let Some(fs) = self.fs {
            cfg.signal.sample_rate_hz = fs;
        }
        if let Some(noise) = self.noise {
            cfg.signal.noise_amp = noise;
        }
        if let Some(fmt) = self.format {
            cfg.signal.fmt = fmt;
        }
        if let Some(allow) = self.allow_untrained {
            cfg.allow_untrained = allow;
        }
    }
}

/// Parses the line-oriented config format: `key = value` pairs, optional
/// `[section]` headers (grouping only — keys are global and must be unique),
/// `#` comment lines, and blank lines. Keys match the CLI flags: `models`,
/// `steps`, `train-steps`, `seed`, `amp`, `freq`, `fs`, `noise`, `format`,
/// `out`, `allow-untrained`.
pub fn parse_config(text: &str) -> Result<ConfigOverrides> {
    let mut overrides = ConfigOverrides::default();
    let mut seen = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(section) = trimmed.strip_prefix('[') {
            if !section.ends_with(']') || section.len() < 2 {
                return Err(Error::Config(format!(
                    "line {line_no}: malformed section header `{trimmed}`"
                )));
            }
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {line_no}: expected `key = value`, got `{trimmed}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(Error::Config(format!("line {line_no}: duplicate key `{key}`")));
        }
        let bad = |what: &str| Error::Config(format!("line {line_no}: {key}: {what} `{value}`"));
        match key {
            "models" => overrides.models = Some(parse_model_list(value)?),
            "steps" => {
                overrides.steps = Some(value.parse().map_err(|_| bad("not a step count"))?)
            }
            "train-steps" => {
                overrides.train_steps = Some(value.parse().map_err(|_| bad("not a step count"))?)
            }
            "seed" => overrides.seed = Some(value.parse().map_err(|_| bad("not a seed"))?),
            "amp" => overrides.amp = Some(value.parse().map_err(|_| bad("not a number"))?),
            "freq" => overrides.freq = Some(value.parse().map_err(|_| bad("not a number"))?),
            "fs" => overrides.fs = Some(value.parse().map_err(|_| bad("not a number"))?),
            "noise" => overrides.noise = Some(value.parse().map_err(|_| bad("not a number"))?),
            "format" => overrides.format = Some(value.parse()?),
            "out" => overrides.out = Some(value.to_string()),
            "allow-untrained" => {
                overrides.allow_untrained = Some(match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad("expected true or false")),
                })
            }
            other => {
                return Err(Error::Config(format!(
                    "line {line_no}: unknown key `{other}`"
                )))
            }
        }
    }
    Ok(overrides)
}
