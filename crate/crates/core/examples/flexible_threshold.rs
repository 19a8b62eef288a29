//! One set of keys, three thresholds. Nothing is re-run at setup time when
//! the threshold changes between rounds.

use ftmcfe::harness::KeyStore;
use ftmcfe::pairing::Bls12;
use ftmcfe::poly::ParticipationSet;
use ftmcfe::scheme::{decrypt, encrypt, pkeygen, DlogConfig, FunctionVector};

fn main() -> ftmcfe::Result<()> {
    let n = 8;
    let store = KeyStore::<Bls12>::generate(n, 3)?;
    let table = store.mpk.dlog_table(DlogConfig::new(100_000)?)?;

    for t in [n.div_ceil(4), n.div_ceil(2), n] {
        let set = ParticipationSet::new(n, 1..=t)?;
        let x: Vec<i64> = (0..n as i64).map(|i| 10 + i).collect();
        let ys: Vec<i64> = (0..n as i64).map(|i| t as i64 + i).collect();
        let y = FunctionVector::from_i64(&ys);
        let label = format!("t={t}");

        let keys = set
            .members()
            .iter()
            .map(|&i| pkeygen(&set, store.client(i)?, &y, t, &store.mpk))
            .collect::<Result<Vec<_>, _>>()?;
        let cts = set
            .members()
            .iter()
            .map(|&i| encrypt(x[i - 1], store.client(i)?, t, &label, &store.mpk))
            .collect::<Result<Vec<_>, _>>()?;

        let got = decrypt(&set, &y, &keys, &cts, &label, &table, &store.mpk)?;
        let expected: i64 = set.members().iter().map(|&i| x[i - 1] * ys[i - 1]).sum();
        println!("t = {t}: |B| = {}, sum = {got}, expected {expected}", set.len());
    }
    Ok(())
}
