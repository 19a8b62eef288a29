//! Weighted gradient aggregation from a JSON round config, compared with the
//! same sum in floating point.
//!
//!     cargo run --release --example federated_round -- [config.json]

use std::path::PathBuf;

use ftmcfe::harness::{run_round, KeyStore, RoundSpec};
use ftmcfe::pairing::Bls12;

fn main() -> ftmcfe::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/case_i.json"));
    let spec = RoundSpec::from_json(&std::fs::read_to_string(&path)?)?;
    let store = KeyStore::<Bls12>::generate(spec.n(), spec.seed.unwrap_or(0))?;
    let gradients = spec.gradients_or_synthetic();

    let result = run_round(&spec, &store, &gradients)?;
    let plain = spec.plain_weighted_sum(&gradients, &result.participants);

    println!("participants {:?}", result.participants);
    for (j, (enc, real)) in result.sums.iter().zip(&plain).enumerate() {
        println!("coordinate {j}: decrypted {enc:.6}, plaintext {real:.6}, gap {:.2e}", (enc - real).abs());
    }
    print!("{}", result.metrics_csv());
    Ok(())
}
