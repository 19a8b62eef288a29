//! Writing a key store to disk, reading it back, and what happens when a
//! file is damaged.

use std::fs;

use ftmcfe::harness::{client_file, KeyStore, MPK_FILE};
use ftmcfe::pairing::Bls12;
use ftmcfe::scheme::{encrypt, Ciphertext};

fn main() -> ftmcfe::Result<()> {
    let dir = std::env::temp_dir().join(format!("ftmcfe-key-files-{}", std::process::id()));
    let store = KeyStore::<Bls12>::init(4, &dir, 99)?;
    println!("wrote {}", dir.display());
    for entry in fs::read_dir(&dir)? {
        let entry = entry?;
        println!("  {} ({} bytes)", entry.file_name().to_string_lossy(), entry.metadata()?.len());
    }

    let reloaded = KeyStore::<Bls12>::load(&dir)?;
    println!("reloaded store matches: {}", reloaded.mpk == store.mpk && reloaded.clients == store.clients);

    let ct = encrypt(17, store.client(2)?, 3, "demo", &store.mpk)?;
    let bytes = ct.to_bytes();
    println!("ciphertext: {} bytes, round trip ok: {}", bytes.len(), Ciphertext::<Bls12>::from_bytes(&bytes)? == ct);

    let path = dir.join(client_file(3));
    let mut raw = fs::read(&path)?;
    raw[20] ^= 0x40;
    fs::write(&path, raw)?;
    match KeyStore::<Bls12>::load(&dir) {
        Ok(_) => println!("damaged store loaded?"),
        Err(e) => println!("damaged {}: {}", client_file(3), e.code()),
    }
    println!("public parameters still readable: {}", dir.join(MPK_FILE).exists());
    fs::remove_dir_all(&dir)?;
    Ok(())
}
