//! Federated-learning style aggregation on top of the scheme: fixed-point
//! encoding, dropout simulation, key storage and round orchestration.

mod codec;
mod dropout;
mod keystore;
mod round;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

pub use codec::{decode, encode, FixedPointCodec};
pub use dropout::{simulate_dropout, Dropout};
pub use keystore::{client_file, read_client, read_mpk, seal, unseal, write_sealed, KeyStore, MPK_FILE};
pub use round::{coordinate_label, round_participants, run_round, AggregateResult, CiphertextStore, PhaseMetric};

use crate::error::{Error, Result};
use crate::scheme::{DlogConfig, DEFAULT_DLOG_BOUND};

fn default_prefix() -> String {
    "round".into()
}

fn default_bound() -> u64 {
    DEFAULT_DLOG_BOUND
}

/// One aggregation round as read from JSON.
///
/// The client count is `weights.len()`. `gradients` (one row of `d` values
/// per client) and `seed` are optional; missing gradients are drawn from
/// `seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundSpec {
    #[serde(default)]
    pub round: u64,
    #[serde(default = "default_prefix")]
    pub label_prefix: String,
    pub t: usize,
    pub d: usize,
    pub weights: Vec<f64>,
    #[serde(default)]
    pub dropout: Dropout,
    #[serde(default)]
    pub scales: FixedPointCodec,
    #[serde(default = "default_bound")]
    pub dlog_bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradients: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for RoundSpec {
    fn default() -> Self {
        Self {
            round: 0,
            label_prefix: default_prefix(),
            t: 1,
            d: 1,
            weights: vec![1.0],
            dropout: Dropout::None,
            scales: FixedPointCodec::default(),
            dlog_bound: DEFAULT_DLOG_BOUND,
            gradients: None,
            seed: None,
        }
    }
}

impl RoundSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_for(self.n())
    }

    /// Checks the spec against a population of `n` clients.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigParse(m));
        if n == 0 || self.weights.len() != n {
            return bad(format!("expected {n} weights, got {}", self.weights.len()));
        }
        if self.t == 0 || self.t > n {
            return bad(format!("threshold {} outside 1..={n}", self.t));
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        if self.weights.iter().any(|w| !w.is_finite()) {
            return bad("weights must be finite".into());
        }
        self.scales.validate()?;
        self.dropout.validate(n)?;
        DlogConfig::new(self.dlog_bound).map_err(|_| Error::ConfigParse(format!("dlog_bound {}", self.dlog_bound)))?;
        if let Some(g) = &self.gradients {
            if g.len() != n || g.iter().any(|row| row.len() != self.d || row.iter().any(|v| !v.is_finite())) {
                return bad(format!("gradients must be {n} finite rows of length {}", self.d));
            }
        }
        Ok(())
    }

    /// Explicit gradients, or `n × d` values uniform in `[-1, 1]` drawn from
    /// `seed` (default 0).
    pub fn gradients_or_synthetic(&self) -> Vec<Vec<f64>> {
        if let Some(g) = &self.gradients {
            return g.clone();
        }
        synthetic_gradients(self.n(), self.d, self.seed.unwrap_or(0))
    }

    /// Real-arithmetic `Σ_{i∈members} wᵢ·gᵢ[j]` for every `j`.
    pub fn plain_weighted_sum(&self, gradients: &[Vec<f64>], members: &[usize]) -> Vec<f64> {
        (0..self.d)
            .map(|j| members.iter().map(|&i| self.weights[i - 1] * gradients[i - 1][j]).sum())
            .collect()
    }
}

pub fn synthetic_gradients(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect()
}
