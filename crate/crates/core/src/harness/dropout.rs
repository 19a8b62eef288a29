use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ParticipationSet;

/// Which clients go offline in a round.
///
/// JSON forms: `"none"`, `{"offline": [3, 7]}`,
/// `{"probability": {"q": 0.2, "seed": 9}}` where `q` is the chance that a
/// client drops.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dropout {
    #[default]
    None,
    Offline(Vec<usize>),
    Probability { q: f64, seed: u64 },
}

impl Dropout {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Dropout::None => Ok(()),
            Dropout::Offline(list) => {
                if let Some(&i) = list.iter().find(|&&i| i == 0 || i > n) {
                    return Err(Error::ConfigParse(format!("offline client {i} outside 1..={n}")));
                }
                Ok(())
            }
            Dropout::Probability { q, .. } => {
                if !(0.0..=1.0).contains(q) {
                    return Err(Error::ConfigParse(format!("drop probability {q} outside [0, 1]")));
                }
                Ok(())
            }
        }
    }
}

/// Online set for one round. The probabilistic variant keeps each client
/// independently with probability `1 - q`, drawing from `rng`.
pub fn simulate_dropout<R: Rng + ?Sized>(n: usize, dropout: &Dropout, rng: &mut R) -> Result<ParticipationSet> {
    dropout.validate(n)?;
    match dropout {
        Dropout::None => ParticipationSet::new(n, 1..=n),
        Dropout::Offline(off) => ParticipationSet::new(n, (1..=n).filter(|i| !off.contains(i))),
        Dropout::Probability { q, .. } => {
            let keep: Vec<usize> = (1..=n).filter(|_| !rng.gen_bool(*q)).collect();
            ParticipationSet::new(n, keep)
        }
    }
}
