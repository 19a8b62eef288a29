//! Baby-step giant-step over a symmetric range `[-bound, bound]`.

use std::collections::HashMap;
use std::marker::PhantomData;

use ark_ff::PrimeField;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pairing::GroupElement;

pub const DEFAULT_DLOG_BOUND: u64 = 1 << 20;
/// Keeps the baby-step table to a few million entries.
pub const MAX_DLOG_BOUND: u64 = 1 << 44;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DlogConfig {
    pub bound: u64,
}

impl Default for DlogConfig {
    fn default() -> Self {
        Self { bound: DEFAULT_DLOG_BOUND }
    }
}

impl DlogConfig {
    pub fn new(bound: u64) -> Result<Self> {
        if bound == 0 || bound > MAX_DLOG_BOUND {
            return Err(Error::InvalidDlogBound);
        }
        Ok(Self { bound })
    }

    /// `⌈√(2·bound + 1)⌉`
    pub fn table_size(&self) -> u64 {
        let span = 2 * self.bound + 1;
        let mut m = (span as f64).sqrt() as u64;
        while m * m < span {
            m += 1;
        }
        while m > 1 && (m - 1) * (m - 1) >= span {
            m -= 1;
        }
        m
    }
}

type Key = [u8; 16];

fn key_of<F: PrimeField, T: GroupElement<F>>(e: &T) -> Key {
    let digest = Sha256::digest(e.to_bytes());
    digest[..16].try_into().unwrap()
}

/// Precomputed baby steps for one base; reusable across many targets.
pub struct DlogTable<F: PrimeField, T: GroupElement<F>> {
    base: T,
    config: DlogConfig,
    m: u64,
    baby: HashMap<Key, u64>,
    giant_step: T,
    shift: T,
    _field: PhantomData<F>,
}

impl<F: PrimeField, T: GroupElement<F>> DlogTable<F, T> {
    pub fn new(base: T, config: DlogConfig) -> Result<Self> {
        let config = DlogConfig::new(config.bound)?;
        let m = config.table_size();
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = T::identity();
        for j in 0..m {
            baby.entry(key_of(&cur)).or_insert(j);
            cur += base;
        }
        Ok(Self {
            base,
            config,
            m,
            baby,
            giant_step: -(base * F::from(m)),
            shift: base * F::from(config.bound),
            _field: PhantomData,
        })
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn bound(&self) -> u64 {
        self.config.bound
    }

    /// Returns `v ∈ [-bound, bound]` with `base·v = target`.
    pub fn solve(&self, target: &T) -> Result<i64> {
        let span = 2 * self.config.bound;
        // Shift into [0, 2·bound], then walk giant steps down.
        let shifted = *target + self.shift;
        let mut cur = shifted;
        for i in 0..=self.m {
            if let Some(&j) = self.baby.get(&key_of(&cur)) {
                let v = i * self.m + j;
                // Truncated keys may collide; confirm before answering.
                if v <= span && self.base * F::from(v) == shifted {
                    return Ok(v as i64 - self.config.bound as i64);
                }
            }
            if i * self.m > span {
                break;
            }
            cur += self.giant_step;
        }
        Err(Error::DlogNotFound { bound: self.config.bound })
    }
}

/// One-shot discrete log; builds a table per call.
pub fn bsgs_dlog<F: PrimeField, T: GroupElement<F>>(target: &T, base: &T, bound: u64) -> Result<i64> {
    DlogTable::new(*base, DlogConfig::new(bound)?)?.solve(target)
}
