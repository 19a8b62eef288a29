//! Flexible-threshold multi-client functional encryption for inner products.
//!
//! The four algorithms:
//! - [`ta_setup`] / [`client_init`]: the authority publishes a powers-of-γ
//!   reference string; each client samples its own `(S, T, w)` with no
//!   interaction.
//! - [`pkeygen`]: a client in the participation set `B` issues its share of the
//!   functional key for a weight vector `y` and threshold `t`.
//! - [`encrypt`]: a client encrypts its value under a label and a threshold of
//!   its choosing.
//! - [`decrypt`]: with shares and ciphertexts from every member of `B`
//!   (`|B| ≥ t`), the aggregator recovers `Σ_{i∈B} xᵢ·yᵢ` and nothing else.
//!
//! Every randomized step takes a caller-owned RNG; [`pkeygen`] and [`encrypt`]
//! are deterministic functions of their inputs.

mod decrypt;
mod dlog;
mod encrypt;
mod keygen;
mod setup;

use ark_ff::PrimeField;
use sha2::{Digest, Sha256};

use crate::pairing::{encode_scalar_vector, scalar_from_i64};

pub use decrypt::{decrypt, decrypt_components};
pub use dlog::{bsgs_dlog, DlogConfig, DlogTable, DEFAULT_DLOG_BOUND, MAX_DLOG_BOUND};
pub use encrypt::{encrypt, Ciphertext, CiphertextMeta, MAX_ABS_PLAINTEXT};
pub use keygen::{pkeygen, verify_partial_key, PartialFunctionalKey};
pub use setup::{client_init, ta_setup, ta_setup_retaining_gamma, ClientKeyPair, InsecureGamma, MasterPublicKey};

/// The weight vector `y ∈ Z_pⁿ` defining `f(x) = ⟨x, y⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionVector<F> {
    coords: Vec<F>,
}

impl<F: PrimeField> FunctionVector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Self { coords }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self { coords: values.iter().map(|v| scalar_from_i64(*v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate for client `i` (1-based).
    pub fn coord(&self, i: usize) -> F {
        self.coords[i - 1]
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Canonical encoding fed to `H₁`.
    pub fn encode(&self) -> Vec<u8> {
        encode_scalar_vector(&self.coords)
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"ftmcfe/y");
        h.update(self.encode());
        h.finalize().into()
    }
}
