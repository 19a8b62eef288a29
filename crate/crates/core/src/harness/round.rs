use std::collections::HashMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::dropout::{simulate_dropout, Dropout};
use crate::harness::keystore::KeyStore;
use crate::harness::RoundSpec;
use crate::pairing::{scalar_from_i64, Backend};
use crate::poly::ParticipationSet;
use crate::scheme::{decrypt, encrypt, pkeygen, verify_partial_key, Ciphertext, DlogConfig, FunctionVector};

/// Accepts at most one ciphertext per `(client, label, threshold)`.
#[derive(Debug)]
pub struct CiphertextStore<B: Backend> {
    entries: HashMap<(usize, String, usize), Ciphertext<B>>,
}

impl<B: Backend> Default for CiphertextStore<B> {
    fn default() -> Self {
        Self { entries: HashMap::new() }
    }
}

impl<B: Backend> CiphertextStore<B> {
    pub fn insert(&mut self, ct: Ciphertext<B>) -> Result<()> {
        let key = (ct.index, ct.label.clone(), ct.t);
        if self.entries.contains_key(&key) {
            return Err(Error::DuplicateCiphertext { index: ct.index, label: ct.label, t: ct.t });
        }
        self.entries.insert(key, ct);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Ciphertexts of `members` under `(label, t)`, in member order.
    pub fn collect(&self, label: &str, t: usize, members: &[usize]) -> Result<Vec<Ciphertext<B>>> {
        members
            .iter()
            .map(|&i| {
                self.entries
                    .get(&(i, label.to_string(), t))
                    .cloned()
                    .ok_or_else(|| Error::MismatchedInputs(format!("no ciphertext from client {i} for `{label}`")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseMetric {
    pub phase: String,
    pub n: usize,
    pub t: usize,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateResult {
    pub round: u64,
    pub n: usize,
    pub t: usize,
    pub participants: Vec<usize>,
    /// Decoded weighted sums, one per coordinate.
    pub sums: Vec<f64>,
    /// The integer inner products recovered by decryption.
    pub encoded_sums: Vec<i64>,
    pub metrics: Vec<PhaseMetric>,
}

impl AggregateResult {
    /// `phase,n,t,millis` rows with a header line.
    pub fn metrics_csv(&self) -> String {
        let mut out = String::from("phase,n,t,millis\n");
        for m in &self.metrics {
            out.push_str(&format!("{},{},{},{:.3}\n", m.phase, m.n, m.t, m.millis));
        }
        out
    }
}

/// Label of coordinate `j` (0-based) in a round.
pub fn coordinate_label(prefix: &str, j: usize) -> String {
    format!("{prefix}:{j}")
}

/// Online set for `spec`, seeded per round when dropout is random.
pub fn round_participants(spec: &RoundSpec, n: usize) -> Result<ParticipationSet> {
    let seed = match spec.dropout {
        Dropout::Probability { seed, .. } => seed.wrapping_add(spec.round),
        _ => spec.round,
    };
    simulate_dropout(n, &spec.dropout, &mut ChaCha20Rng::seed_from_u64(seed))
}

struct Timer {
    n: usize,
    t: usize,
    metrics: Vec<PhaseMetric>,
}

impl Timer {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        self.metrics.push(PhaseMetric {
            phase: phase.to_string(),
            n: self.n,
            t: self.t,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
        Ok(out)
    }
}

/// Runs one aggregation round: every online client encrypts each coordinate
/// of its gradient, issues a partial key for the weight vector, and the
/// aggregator decrypts `Σ_{i∈B} wᵢ·gᵢ[j]` for every `j`.
///
/// `gradients` has one row of length `spec.d` per client; rows of offline
/// clients are ignored.
pub fn run_round<B: Backend>(spec: &RoundSpec, store: &KeyStore<B>, gradients: &[Vec<f64>]) -> Result<AggregateResult> {
    let n = store.n();
    spec.validate_for(n)?;
    if gradients.len() != n || gradients.iter().any(|g| g.len() != spec.d) {
        return Err(Error::ConfigParse(format!("gradients must be {n} rows of length {}", spec.d)));
    }
    let mpk = &store.mpk;
    let t = spec.t;
    let set = round_participants(spec, n)?;
    if set.len() < t {
        return Err(Error::QuorumTooSmall { members: set.len(), threshold: t });
    }
    let members = set.members().to_vec();
    let codec = spec.scales;
    let mut timer = Timer { n, t, metrics: Vec::new() };

    let (weights, xs) = timer.time("encode", || {
        let weights = spec.weights.iter().map(|&w| codec.encode_weight(w)).collect::<Result<Vec<_>>>()?;
        let mut xs = vec![Vec::new(); n];
        for &i in &members {
            xs[i - 1] = gradients[i - 1].iter().map(|&g| codec.encode_gradient(g)).collect::<Result<Vec<_>>>()?;
        }
        // Every partial sum must stay inside the discrete-log range.
        for j in 0..spec.d {
            let worst: i128 = members.iter().map(|&i| (xs[i - 1][j] as i128 * weights[i - 1] as i128).abs()).sum();
            if worst > spec.dlog_bound as i128 {
                return Err(Error::CodecOverflow(format!(
                    "coordinate {j} may reach {worst}, above the discrete-log bound {}",
                    spec.dlog_bound
                )));
            }
        }
        Ok((weights, xs))
    })?;

    let labels: Vec<String> = (0..spec.d).map(|j| coordinate_label(&spec.label_prefix, j)).collect();
    let cts = timer.time("encrypt", || {
        let mut cts = CiphertextStore::default();
        for &i in &members {
            let ek = store.client(i)?;
            for (j, label) in labels.iter().enumerate() {
                cts.insert(encrypt(xs[i - 1][j], ek, t, label, mpk)?)?;
            }
        }
        Ok(cts)
    })?;

    let y = FunctionVector::new(weights.iter().map(|&w| scalar_from_i64(w)).collect());
    let keys = timer.time("pkeygen", || {
        members
            .iter()
            .map(|&i| pkeygen(&set, store.client(i)?, &y, t, mpk))
            .collect::<Result<Vec<_>>>()
    })?;

    timer.time("verify", || {
        for k in &keys {
            if !verify_partial_key(k, t, mpk) {
                return Err(Error::KeyVerificationFailed { index: k.index });
            }
        }
        Ok(())
    })?;

    let table = timer.time("dlog-table", || mpk.dlog_table(DlogConfig::new(spec.dlog_bound)?))?;

    let encoded_sums = timer.time("decrypt", || {
        labels
            .iter()
            .map(|label| decrypt(&set, &y, &keys, &cts.collect(label, t, &members)?, label, &table, mpk))
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(AggregateResult {
        round: spec.round,
        n,
        t,
        participants: members,
        sums: encoded_sums.iter().map(|&s| codec.decode_sum(s)).collect(),
        encoded_sums,
        metrics: timer.metrics,
    })
}
