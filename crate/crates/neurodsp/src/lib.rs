//! Deterministic fixed-point DSP kernels and neuromorphic filter models.
//!
//! The crate simulates a small hardware-flavoured signal chain end to end:
//! signals are quantized into a configurable signed Q-format, classical FIR
//! and IIR filters run on exact integer datapaths (double-width MAC, one
//! rounding, saturation instead of wrap-around), and two small neural
//! filters — a random-projection feedforward net and an Elman recurrent
//! net — learn to imitate the classical filters on the same fixed-point
//! arithmetic. Device-level companions (leaky integrate-and-fire neurons,
//! memristor crossbars, time-mode pulse arithmetic, a Sallen-Key analog
//! prototype) round out the toolbox.
//!
//! Everything is deterministic: the only randomness is a 31-bit linear
//! congruential generator seeded explicitly, so any run can be reproduced
//! bit for bit from its configuration.
//!
//! # Where to start
//!
//! The `examples/` directory is the guided tour — one runnable program per
//! capability:
//!
//! ```text
//! cargo run --example fixed_point          # Q-format quantization and saturation
//! cargo run --example generate_signal      # deterministic noisy-sine stimulus
//! cargo run --example fir_lowpass          # windowed-sinc design + integer FIR
//! cargo run --example biquad_iir           # biquad DF1 vs transposed DF2
//! cargo run --example frequency_response   # H(e^jw) magnitude sweep
//! cargo run --example sallen_key           # analog prototype design numbers
//! cargo run --example lif_neuron           # spiking neuron + ISI check
//! cargo run --example adaptive_fir         # LMS-trained feedforward net
//! cargo run --example elman_iir            # recurrent net imitating a biquad
//! cargo run --example memristor_iv         # pinched hysteresis I-V sweep
//! cargo run --example crossbar_mac         # analog matrix-vector multiply
//! cargo run --example time_pulses          # pulse-width register arithmetic
//! cargo run --example full_experiment      # the four-model comparison table
//! ```
//!
//! A thin `neurodsp` binary wraps the same library calls for scripted use
//! (`neurodsp run`, `neurodsp design sallen-key`, `neurodsp sweep memristor`,
//! `neurodsp freq fir`, `neurodsp lif`); see the README for the full grammar.

pub mod analog;
pub mod error;
pub mod experiment;
pub mod filters;
pub mod fixedpoint;
pub mod lif;
pub mod memristor;
pub mod neuro;
pub mod signals;
pub mod time_domain;

pub use error::{Error, Result};
pub use fixedpoint::{QFormat, QSample};
