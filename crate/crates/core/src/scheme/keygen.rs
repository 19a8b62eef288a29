use crate::error::{Error, Result};
use crate::pairing::{hash_h1, Backend, Diag, DiagG, DiagGHat};
use crate::poly::{verify_degree, ParticipationSet, SetCommitments};
use crate::scheme::setup::{ClientKeyPair, MasterPublicKey};
use crate::scheme::FunctionVector;
use crate::wire::{ObjectKind, Reader, Writer};

/// One client's share of the functional key for `(B, y, t)`.
///
/// Besides the five key components it publishes the commitment pair
/// `(g₂^{B(γ)·γᵗ}, ĝ₁^{B(γ)})` so the aggregator can run the degree check, and
/// digests of `B` and `y` so mismatched inputs are caught before decryption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFunctionalKey<B: Backend> {
    pub index: usize,
    /// `ĝ₀^{S·yᵢ} · H₁(y)^T`
    pub sk1: DiagGHat<B>,
    /// `(H₁(y) · ĝ₁^{B(γ)})^T`
    pub sk2: DiagGHat<B>,
    /// `g₁^{B(γ)·T}`
    pub sk3: DiagG<B>,
    /// `H₁(y)^w`
    pub sk4: DiagGHat<B>,
    /// `g₂^{B(γ)·γᵗ·T}`
    pub sk5: DiagG<B>,
    pub set_commit_gh1: B::GHat,
    pub commit_g2_shifted: B::G,
    pub set_digest: [u8; 32],
    pub y_digest: [u8; 32],
    pub t: usize,
}

/// Issues client `sk.index`'s partial key. An honest client refuses when it is
/// not in `B` or when `|B| < t`.
pub fn pkeygen<B: Backend>(
    set: &ParticipationSet,
    sk: &ClientKeyPair<B>,
    y: &FunctionVector<B::Scalar>,
    t: usize,
    mpk: &MasterPublicKey<B>,
) -> Result<PartialFunctionalKey<B>> {
    mpk.check_threshold(t)?;
    if set.n() != mpk.n {
        return Err(Error::InvalidParticipationSet(format!(
            "set is over {} clients, parameters over {}",
            set.n(),
            mpk.n
        )));
    }
    if y.len() != mpk.n {
        return Err(Error::VectorLength { expected: mpk.n, got: y.len() });
    }
    if !set.contains(sk.index) {
        return Err(Error::NotAMember { index: sk.index });
    }
    if set.len() < t {
        return Err(Error::QuorumTooSmall { members: set.len(), threshold: t });
    }

    let ctx = &mpk.ctx;
    let commits = SetCommitments::compute(set, t, &mpk.powers)?;
    let hy = hash_h1::<B>(&y.encode())?;
    let yi = y.coord(sk.index);

    let sk1 = sk.s.map(|s| ctx.gh0 * (*s * yi)) + hy.pow(&sk.t);
    let sk2 = hy.map(|h| *h + commits.gh1).pow(&sk.t);
    let sk3 = Diag::splat(commits.g1).pow(&sk.t);
    let sk4 = hy.scale(sk.w);
    let sk5 = Diag::splat(commits.g2_shifted).pow(&sk.t);

    Ok(PartialFunctionalKey {
        index: sk.index,
        sk1,
        sk2,
        sk3,
        sk4,
        sk5,
        set_commit_gh1: commits.gh1,
        commit_g2_shifted: commits.g2_shifted,
        set_digest: set.digest(),
        y_digest: y.digest(),
        t,
    })
}

/// Degree check on the key's published commitment pair for threshold `t`.
pub fn verify_partial_key<B: Backend>(
    key: &PartialFunctionalKey<B>,
    t: usize,
    mpk: &MasterPublicKey<B>,
) -> bool {
    verify_degree(&key.commit_g2_shifted, &key.set_commit_gh1, t, &mpk.powers, &mpk.ctx)
}

impl<B: Backend> PartialFunctionalKey<B> {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::with_header(ObjectKind::PartialKey);
        w.u32(self.index as u32);
        for d in [&self.sk1, &self.sk2] {
            w.element(&d.c1);
            w.element(&d.c2);
        }
        w.element(&self.sk3.c1);
        w.element(&self.sk3.c2);
        w.element(&self.sk4.c1);
        w.element(&self.sk4.c2);
        w.element(&self.sk5.c1);
        w.element(&self.sk5.c2);
        w.element(&self.set_commit_gh1);
        w.element(&self.commit_g2_shifted);
        w.bytes(&self.set_digest);
        w.bytes(&self.y_digest);
        w.u32(self.t as u32);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::with_header(bytes, ObjectKind::PartialKey)?;
        let index = r.u32()? as usize;
        let sk1 = Diag::new(r.element()?, r.element()?);
        let sk2 = Diag::new(r.element()?, r.element()?);
        let sk3 = Diag::new(r.element()?, r.element()?);
        let sk4 = Diag::new(r.element()?, r.element()?);
        let sk5 = Diag::new(r.element()?, r.element()?);
        let set_commit_gh1 = r.element()?;
        let commit_g2_shifted = r.element()?;
        let set_digest = r.array()?;
        let y_digest = r.array()?;
        let t = r.u32()? as usize;
        r.finish()?;
        Ok(Self {
            index,
            sk1,
            sk2,
            sk3,
            sk4,
            sk5,
            set_commit_gh1,
            commit_g2_shifted,
            set_digest,
            y_digest,
            t,
        })
    }
}
