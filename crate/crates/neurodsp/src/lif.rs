//! Leaky integrate-and-fire neuron with explicit-Euler dynamics.
//!
//! The membrane integrates `tau dv/dt = -(v - v_rest) + R i_in`, one Euler
//! update per sample:
//!
//! ```text
//! v' = v + (dt/tau) * (-(v - v_rest) + R * i_in)
//! ```
//!
//! Crossing the threshold (inclusive, `v' >= v_th`) emits a spike, resets
//! the membrane to `v_reset` and starts an absolute refractory hold of
//! `t_ref` seconds during which the membrane is pinned at `v_reset`.
//!
//! Unlike the filter datapaths this module works in `f64`: the neuron is a
//! behavioural reference model, not a bit-true hardware description.

use std::io::Write;

use crate::error::{Error, Result};
use crate::signals::Trace;

/// Membrane parameters (all times in seconds, resistance in ohms).
#[derive(Debug, Clone, Copy)]
pub struct LifParams {
    /// Membrane time constant `tau`.
    pub tau: f64,
    /// Resting potential.
    pub v_rest: f64,
    /// Membrane resistance `R` scaling the input current.
    pub r_mem: f64,
    /// Spike threshold (inclusive).
    pub v_th: f64,
    /// Post-spike reset potential.
    pub v_reset: f64,
    /// Absolute refractory period.
    pub t_ref: f64,
    /// Euler step; must satisfy `dt <= tau/2` for a sane discretization.
    pub dt: f64,
}

impl Default for LifParams {
    /// 10 ms membrane, unit resistance and threshold, no refractory hold,
    /// 1 ms steps.
    fn default() -> Self {
        LifParams {
            tau: 0.01,
            v_rest: 0.0,
            r_mem: 1.0,
            v_th: 1.0,
            v_reset: 0.0,
            t_ref: 0.0,
            dt: 0.001,
        }
    }
}

impl LifParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tau", self.tau),
            ("v_rest", self.v_rest),
            ("r_mem", self.r_mem),
            ("v_th", self.v_th),
            ("v_reset", self.v_reset),
            ("t_ref", self.t_ref),
            ("dt", self.dt),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.tau <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tau must be positive, got {}",
                self.tau
            )));
        }
        if self.r_mem <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "membrane resistance must be positive, got {}",
                self.r_mem
            )));
        }
        if self.dt <= 0.0 || self.dt > self.tau / 2.0 {
            return Err(Error::InvalidParameter(format!(
                "dt must satisfy 0 < dt <= tau/2, got dt = {} at tau = {}",
                self.dt, self.tau
            )));
        }
        if self.v_th <= self.v_reset {
            return Err(Error::InvalidParameter(format!(
                "threshold {} must exceed reset {}",
                self.v_th, self.v_reset
            )));
        }
        if self.v_reset < self.v_rest {
            return Err(Error::InvalidParameter(format!(
                "reset {} must not undershoot rest {}",
                self.v_reset, self.v_rest
            )));
        }
        if self.t_ref < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "refractory period must be non-negative, got {}",
                self.t_ref
            )));
        }
        Ok(())
    }

    /// Analytic inter-spike interval for a constant suprathreshold current:
    /// the membrane relaxes from `v_reset` toward `v_rest + R i`, so
    ///
    /// ```text
    /// ISI = t_ref + tau * ln((v_inf - v_reset) / (v_inf - v_th))
    /// ```
    ///
    /// Errors if the drive never reaches the threshold.
    pub fn closed_form_isi(&self, i_in: f64) -> Result<f64> {
        self.validate()?;
        let v_inf = self.v_rest + self.r_mem * i_in;
        if v_inf <= self.v_th {
            return Err(Error::InvalidParameter(format!(
                "current {i_in} is subthreshold (v_inf = {v_inf} <= v_th = {})",
                self.v_th
            )));
        }
        Ok(self.t_ref + self.tau * ((v_inf - self.v_reset) / (v_inf - self.v_th)).ln())
    }
}

/// One neuron: parameters plus mutable membrane state.
#[derive(Debug, Clone)]
pub struct LifNeuron {
    params: LifParams,
    v: f64,
    refractory_left: f64,
}

impl LifNeuron {
    pub fn new(params: LifParams) -> Result<Self> {
        params.validate()?;
        Ok(LifNeuron {
            params,
            v: params.v_rest,
            refractory_left: 0.0,
        })
    }

    #[inline]
    pub fn potential(&self) -> f64 {
        self.v
    }

    #[inline]
    pub fn params(&self) -> &LifParams {
        &self.params
    }

    pub fn in_refractory(&self) -> bool {
        self.refractory_left > 0.0
    }

    /// Returns the membrane to rest and clears any refractory hold.
    pub fn reset(&mut self) {
        self.v = self.params.v_rest;
        self.refractory_left = 0.0;
    }

    /// Advances one Euler step under input current `i_in`; returns whether
    /// a spike fired. During the refractory hold the membrane stays pinned
    /// at `v_reset` and no spike can fire.
    pub fn step(&mut self, i_in: f64) -> Result<bool> {
        if !i_in.is_finite() {
            return Err(Error::NonFiniteInput("lif input current"));
        }
        let p = &self.params;
        if self.refractory_left > 0.0 {
            self.refractory_left = (self.refractory_left - p.dt).max(0.0);
            self.v = p.v_reset;
            return Ok(false);
        }
        let v_next = self.v + (p.dt / p.tau) * (-(self.v - p.v_rest) + p.r_mem * i_in);
        if v_next >= p.v_th {
            self.v = p.v_reset;
            self.refractory_left = p.t_ref;
            Ok(true)
        } else {
            self.v = v_next;
            Ok(false)
        }
    }
}

/// Spike train plus the recorded (post-update, post-reset) membrane trace.
#[derive(Debug, Clone)]
pub struct LifRun {
    pub spikes: Vec<bool>,
    pub potentials: Vec<f64>,
}

impl LifRun {
    pub fn spike_count(&self) -> usize {
        self.spikes.iter().filter(|&&s| s).count()
    }

    /// Step indices at which spikes fired.
    pub fn spike_steps(&self) -> Vec<usize> {
        self.spikes
            .iter()
            .enumerate()
            .filter_map(|(n, &s)| s.then_some(n))
            .collect()
    }

    /// Serializes the spike train as CSV with header `n,spike`.
    pub fn write_spikes_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,spike")?;
        for (n, &s) in self.spikes.iter().enumerate() {
            writeln!(out, "{n},{}", if s { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// Simulates a fresh neuron over a current waveform (one entry per step).
pub fn lif_run(params: LifParams, currents: &[f64]) -> Result<LifRun> {
    let mut neuron = LifNeuron::new(params)?;
    let mut spikes = Vec::with_capacity(currents.len());
    let mut potentials = Vec::with_capacity(currents.len());
    for &i_in in currents {
        spikes.push(neuron.step(i_in)?);
        potentials.push(neuron.potential());
    }
    Ok(LifRun { spikes, potentials })
}

/// Rectifies a quantized trace into input currents:
/// `i[n] = i_scale * max(0, x[n])`.
pub fn rate_encode(trace: &Trace, i_scale: f64) -> Result<Vec<f64>> {
    if !(i_scale.is_finite() && i_scale >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "i_scale must be non-negative, got {i_scale}"
        )));
    }
    Ok(trace.iter().map(|s| i_scale * s.value().max(0.0)).collect())
}

/// Causal sliding-window mean of a spike train: entry `n` averages the last
/// `window` steps (fewer during warm-up).
pub fn rate_decode(spikes: &[bool], window: usize) -> Result<Vec<f64>> {
    if window == 0 {
        return Err(Error::InvalidParameter("rate window must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(spikes.len());
    let mut in_window = 0usize;
    for n in 0..spikes.len() {
        if spikes[n] {
            in_window += 1;
        }
        if n >= window && spikes[n - window] {
            in_window -= 1;
        }
        let span = window.min(n + 1);
        out.push(in_window as f64 / span as f64);
    }
    Ok(out)
}
