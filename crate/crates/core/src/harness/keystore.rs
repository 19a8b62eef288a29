//! On-disk key material for a fixed client population.
//!
//! Layout: `<dir>/mpk.ftmc` and `<dir>/client-NNNN.key`. Each file is the
//! object's wire encoding followed by a 32-byte SHA-256 of that encoding.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pairing::{Backend, PairingContext};
use crate::scheme::{client_init, ta_setup, ClientKeyPair, MasterPublicKey};

pub const MPK_FILE: &str = "mpk.ftmc";

pub fn client_file(index: usize) -> String {
    format!("client-{index:04}.key")
}

/// Appends the integrity trailer.
pub fn seal(bytes: &[u8]) -> Vec<u8> {
    let mut out = bytes.to_vec();
    out.extend_from_slice(&Sha256::digest(bytes));
    out
}

/// Strips and checks the integrity trailer.
pub fn unseal(bytes: &[u8]) -> Result<&[u8]> {
    if bytes.len() < 32 {
        return Err(Error::CorruptKey("file shorter than its checksum".into()));
    }
    let (body, tag) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != tag {
        return Err(Error::CorruptKey("checksum mismatch".into()));
    }
    Ok(body)
}

fn decode_key<T>(bytes: &[u8], decode: impl FnOnce(&[u8]) -> Result<T>) -> Result<T> {
    decode(unseal(bytes)?).map_err(|e| match e {
        Error::VersionMismatch { .. } | Error::CorruptKey(_) | Error::UnsupportedCurve(_) => e,
        other => Error::CorruptKey(other.to_string()),
    })
}

pub fn write_sealed(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, seal(bytes))?;
    Ok(())
}

pub fn read_mpk<B: Backend>(path: &Path) -> Result<MasterPublicKey<B>> {
    let mpk = decode_key(&fs::read(path)?, MasterPublicKey::<B>::from_bytes)?;
    if !mpk.is_consistent() {
        return Err(Error::CorruptKey("reference string fails its pairing check".into()));
    }
    Ok(mpk)
}

pub fn read_client<B: Backend>(path: &Path) -> Result<ClientKeyPair<B>> {
    decode_key(&fs::read(path)?, ClientKeyPair::<B>::from_bytes)
}

/// Public parameters plus every client's key pair.
#[derive(Clone, Debug)]
pub struct KeyStore<B: Backend> {
    pub mpk: MasterPublicKey<B>,
    pub clients: Vec<ClientKeyPair<B>>,
    dir: Option<PathBuf>,
}

impl<B: Backend> KeyStore<B> {
    /// Generates everything from `seed` without touching disk.
    pub fn generate(n: usize, seed: u64) -> Result<Self> {
        let ctx = PairingContext::<B>::init(B::CURVE)?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mpk = ta_setup(n, &ctx, &mut rng)?;
        let clients = (1..=n)
            .map(|i| client_init(i, n, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { mpk, clients, dir: None })
    }

    /// Generates a store and writes it under `dir`.
    pub fn init(n: usize, dir: impl AsRef<Path>, seed: u64) -> Result<Self> {
        let mut store = Self::generate(n, seed)?;
        store.save(dir)?;
        Ok(store)
    }

    pub fn save(&mut self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        write_sealed(&dir.join(MPK_FILE), &self.mpk.to_bytes())?;
        for c in &self.clients {
            write_sealed(&dir.join(client_file(c.index)), &c.to_bytes())?;
        }
        self.dir = Some(dir.to_path_buf());
        Ok(())
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mpk = read_mpk::<B>(&dir.join(MPK_FILE))?;
        let mut clients = Vec::with_capacity(mpk.n);
        for i in 1..=mpk.n {
            let c = read_client::<B>(&dir.join(client_file(i)))?;
            if c.index != i {
                return Err(Error::CorruptKey(format!("{} holds client {}", client_file(i), c.index)));
            }
            clients.push(c);
        }
        Ok(Self { mpk, clients, dir: Some(dir.to_path_buf()) })
    }

    pub fn n(&self) -> usize {
        self.mpk.n
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Key pair of client `index` (1-based).
    pub fn client(&self, index: usize) -> Result<&ClientKeyPair<B>> {
        index
            .checked_sub(1)
            .and_then(|k| self.clients.get(k))
            .ok_or(Error::IndexOutOfRange { index, n: self.n() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::ToyExponent;

    #[test]
    fn seal_detects_any_flip() {
        let body = b"FTMC payload".to_vec();
        let sealed = seal(&body);
        assert_eq!(unseal(&sealed).unwrap(), &body[..]);
        for k in 0..sealed.len() {
            let mut bad = sealed.clone();
            bad[k] ^= 0x01;
            assert_eq!(unseal(&bad).unwrap_err().code(), "corrupt-key");
        }
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let a = KeyStore::<ToyExponent>::init(4, dir.path(), 1).unwrap();
        let b = KeyStore::<ToyExponent>::load(dir.path()).unwrap();
        assert_eq!(a.mpk, b.mpk);
        assert_eq!(a.clients, b.clients);
        assert_eq!(b.client(4).unwrap().index, 4);
        assert!(b.client(0).is_err());
    }
}
