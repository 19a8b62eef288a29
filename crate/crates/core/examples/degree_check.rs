//! The commitment-degree check that stops a key for an undersized set.
//!
//! For `B ⊆ [n]` the vanishing polynomial has degree `n − |B|`, and the
//! shifted commitment needs powers up to `n − |B| + t`. That fits the
//! reference string exactly when `|B| ≥ t`.

use ftmcfe::pairing::{Bls12, CurveId, PairingContext};
use ftmcfe::poly::{commit, shifted_commit, vanishing_poly, verify_degree, ParticipationSet};
use ftmcfe::scheme::ta_setup;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> ftmcfe::Result<()> {
    let n = 6;
    let t = 3;
    let ctx = PairingContext::<Bls12>::init(CurveId::Bls12_381)?;
    let mpk = ta_setup(n, &ctx, &mut ChaCha20Rng::seed_from_u64(1))?;
    let p = &mpk.powers;

    for size in (1..=n).rev() {
        let set = ParticipationSet::new(n, 1..=size)?;
        let poly = vanishing_poly(&set);
        let plain = commit(&poly, &p.gh1)?;
        match shifted_commit(&poly, t, &p.g2) {
            Ok(shifted) => {
                let ok = verify_degree(&shifted, &plain, t, p, &ctx);
                println!("|B| = {size}: degree {}, check {}", poly.degree(), if ok { "passes" } else { "fails" });
            }
            Err(e) => println!("|B| = {size}: degree {}, {}", poly.degree(), e.code()),
        }
    }

    // A commitment pair from two different sets does not verify.
    let a = vanishing_poly(&ParticipationSet::new(n, [1, 2, 3, 4])?);
    let b = vanishing_poly(&ParticipationSet::new(n, [2, 3, 4, 5])?);
    let mixed = verify_degree(&shifted_commit(&a, t, &p.g2)?, &commit(&b, &p.gh1)?, t, p, &ctx);
    println!("mismatched pair: check {}", if mixed { "passes" } else { "fails" });
    Ok(())
}
