//! Ten clients, threshold five. Each round takes a growing set of clients
//! offline; rounds that keep at least five clients decrypt, the rest abort.

use ftmcfe::harness::KeyStore;
use ftmcfe::pairing::Bls12;
use ftmcfe::poly::ParticipationSet;
use ftmcfe::scheme::{decrypt, encrypt, pkeygen, DlogConfig, FunctionVector};

fn main() -> ftmcfe::Result<()> {
    let (n, t) = (10, 5);
    let store = KeyStore::<Bls12>::generate(n, 42)?;
    let table = store.mpk.dlog_table(DlogConfig::new(100_000)?)?;

    let x: Vec<i64> = (1..=n as i64).map(|i| 3 * i).collect();
    let y = FunctionVector::from_i64(&(1..=n as i64).collect::<Vec<_>>());

    for dropped in 0..=6usize {
        let offline: Vec<usize> = (1..=dropped).map(|k| 11 - k).collect();
        let set = ParticipationSet::new(n, (1..=n).filter(|i| !offline.contains(i)))?;
        let label = format!("round-{dropped}");

        // Honest clients refuse to issue keys below the threshold, so build
        // whatever they are willing to hand over.
        let keys: Vec<_> = set
            .members()
            .iter()
            .filter_map(|&i| pkeygen(&set, store.client(i).ok()?, &y, t, &store.mpk).ok())
            .collect();
        let cts = set
            .members()
            .iter()
            .map(|&i| encrypt(x[i - 1], store.client(i)?, t, &label, &store.mpk))
            .collect::<Result<Vec<_>, _>>()?;

        let expected: i64 = set.members().iter().map(|&i| x[i - 1] * i as i64).sum();
        match decrypt(&set, &y, &keys, &cts, &label, &table, &store.mpk) {
            Ok(v) => println!("offline {offline:?}: |B| = {}, sum = {v} (expected {expected})", set.len()),
            Err(e) => println!("offline {offline:?}: |B| = {}, {}", set.len(), e.code()),
        }
    }
    Ok(())
}
