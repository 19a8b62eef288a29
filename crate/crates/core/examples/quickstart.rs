//! Three clients, threshold 2: encrypt `x = (2, 3, 5)`, issue keys for
//! `y = (1, 1, 1)`, and recover `Σ xᵢyᵢ = 10`.

use ftmcfe::pairing::{Bls12, CurveId, PairingContext};
use ftmcfe::poly::ParticipationSet;
use ftmcfe::scheme::{client_init, decrypt, encrypt, pkeygen, ta_setup, DlogConfig, FunctionVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> ftmcfe::Result<()> {
    let (n, t) = (3, 2);
    let mut rng = ChaCha20Rng::seed_from_u64(7);

    let ctx = PairingContext::<Bls12>::init(CurveId::Bls12_381)?;
    let mpk = ta_setup(n, &ctx, &mut rng)?;
    let clients = (1..=n).map(|i| client_init(i, n, &mut rng)).collect::<Result<Vec<_>, _>>()?;

    let x = [2, 3, 5];
    let y = FunctionVector::from_i64(&[1, 1, 1]);
    let set = ParticipationSet::full(n);
    let label = "quickstart";

    let cts = clients
        .iter()
        .map(|c| encrypt(x[c.index - 1], c, t, label, &mpk))
        .collect::<Result<Vec<_>, _>>()?;
    let keys = clients
        .iter()
        .map(|c| pkeygen(&set, c, &y, t, &mpk))
        .collect::<Result<Vec<_>, _>>()?;

    let table = mpk.dlog_table(DlogConfig::new(1_000)?)?;
    let sum = decrypt(&set, &y, &keys, &cts, label, &table, &mpk)?;
    println!("{sum}");
    Ok(())
}
