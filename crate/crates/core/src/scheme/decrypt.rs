use crate::error::{Error, Result};
use crate::pairing::{hash_h1, hash_h2, multi_pair, Backend, Diag, DiagGt, Sign};
use crate::poly::ParticipationSet;
use crate::scheme::dlog::DlogTable;
use crate::scheme::encrypt::Ciphertext;
use crate::scheme::keygen::PartialFunctionalKey;
use crate::scheme::setup::MasterPublicKey;
use crate::scheme::FunctionVector;

/// Recovers `Σ_{i∈B} xᵢ·yᵢ`.
///
/// Aborts with `quorum-too-small` when `|B| < t` before any pairing is
/// evaluated. On honest inputs both diagonal components of the product equal
/// `e(g₀, ĝ₀)^{⟨x,y⟩}`; a disagreement is reported as `component-mismatch`,
/// and a result outside the table's range as `dlog-not-found`.
pub fn decrypt<B: Backend>(
    set: &ParticipationSet,
    y: &FunctionVector<B::Scalar>,
    keys: &[PartialFunctionalKey<B>],
    cts: &[Ciphertext<B>],
    label: &str,
    dlog: &DlogTable<B::Scalar, B::Gt>,
    mpk: &MasterPublicKey<B>,
) -> Result<i64> {
    let product = decrypt_components(set, y, keys, cts, label, mpk)?;
    if product.c1 != product.c2 {
        return Err(Error::ComponentMismatch);
    }
    dlog.solve(&product.c1)
}

/// The two `G_T` products before discrete-log extraction.
///
/// Each client contributes an independent block of seven pairings per
/// component and `G_T` is commutative, so the result does not depend on the
/// order of `keys` / `cts` or on how the blocks are grouped.
pub fn decrypt_components<B: Backend>(
    set: &ParticipationSet,
    y: &FunctionVector<B::Scalar>,
    keys: &[PartialFunctionalKey<B>],
    cts: &[Ciphertext<B>],
    label: &str,
    mpk: &MasterPublicKey<B>,
) -> Result<DiagGt<B>> {
    let t = cts
        .first()
        .map(|c| c.t)
        .or_else(|| keys.first().map(|k| k.t))
        .ok_or(Error::QuorumTooSmall { members: set.len(), threshold: 1 })?;
    if set.len() < t || set.is_empty() {
        return Err(Error::QuorumTooSmall { members: set.len(), threshold: t });
    }

    check_inputs(set, y, keys, cts, label, t, mpk)?;

    let ctx = &mpk.ctx;
    let hl = hash_h2::<B>(label.as_bytes());
    let hy = hash_h1::<B>(&y.encode())?;

    let mut keys: Vec<&PartialFunctionalKey<B>> = keys.iter().collect();
    let mut cts: Vec<&Ciphertext<B>> = cts.iter().collect();
    keys.sort_by_key(|k| k.index);
    cts.sort_by_key(|c| c.index);

    let component = |c: usize| -> Result<B::Gt> {
        let mut terms = Vec::with_capacity(7 * set.len());
        for (k, ct) in keys.iter().zip(&cts) {
            let yi = ctx.gh0 * y.coord(ct.index);
            terms.extend([
                (lane(&ct.c1, c), yi, Sign::Plus),
                (lane(&ct.c2, c), lane(&hy, c), Sign::Plus),
                (lane(&k.sk3, c), ct.c4, Sign::Plus),
                (lane(&ct.c5, c), lane(&k.sk4, c), Sign::Plus),
                (lane(&k.sk5, c), ct.c4, Sign::Plus),
                (lane(&hl, c), lane(&k.sk1, c), Sign::Minus),
                (ct.c3, lane(&k.sk2, c), Sign::Minus),
            ]);
        }
        multi_pair::<B>(&terms)
    };

    Ok(Diag::new(component(0)?, component(1)?))
}

fn lane<T: Copy>(d: &Diag<T>, c: usize) -> T {
    if c == 0 {
        d.c1
    } else {
        d.c2
    }
}

fn check_inputs<B: Backend>(
    set: &ParticipationSet,
    y: &FunctionVector<B::Scalar>,
    keys: &[PartialFunctionalKey<B>],
    cts: &[Ciphertext<B>],
    label: &str,
    t: usize,
    mpk: &MasterPublicKey<B>,
) -> Result<()> {
    mpk.check_threshold(t)?;
    if set.n() != mpk.n {
        return Err(Error::MismatchedInputs(format!("set is over {} clients, parameters over {}", set.n(), mpk.n)));
    }
    if y.len() != mpk.n {
        return Err(Error::VectorLength { expected: mpk.n, got: y.len() });
    }
    if cts.iter().any(|c| c.label != label) {
        return Err(Error::MismatchedLabel);
    }
    if cts.iter().any(|c| c.t != t) || keys.iter().any(|k| k.t != t) {
        return Err(Error::MismatchedThreshold);
    }
    let mut key_idx: Vec<usize> = keys.iter().map(|k| k.index).collect();
    let mut ct_idx: Vec<usize> = cts.iter().map(|c| c.index).collect();
    key_idx.sort_unstable();
    ct_idx.sort_unstable();
    if key_idx != set.members() {
        return Err(Error::MismatchedInputs(format!("keys cover {key_idx:?}, set is {:?}", set.members())));
    }
    if ct_idx != set.members() {
        return Err(Error::MismatchedInputs(format!("ciphertexts cover {ct_idx:?}, set is {:?}", set.members())));
    }
    let set_digest = set.digest();
    let y_digest = y.digest();
    if let Some(k) = keys.iter().find(|k| k.set_digest != set_digest) {
        return Err(Error::MismatchedInputs(format!("key {} was issued for a different set", k.index)));
    }
    if let Some(k) = keys.iter().find(|k| k.y_digest != y_digest) {
        return Err(Error::MismatchedInputs(format!("key {} was issued for a different y", k.index)));
    }
    Ok(())
}
