use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairing::{hash_h2, scalar_from_i64, Backend, Diag, DiagG};
use crate::scheme::setup::{ClientKeyPair, MasterPublicKey};
use crate::wire::{ObjectKind, Reader, Writer};

/// Largest plaintext magnitude accepted by [`encrypt`].
pub const MAX_ABS_PLAINTEXT: i64 = 1 << 40;

/// `CT_{i,l,t}`: five components bound to label `l` and threshold `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext<B: Backend> {
    pub index: usize,
    pub label: String,
    pub t: usize,
    /// `H₂(l)^S · g₀^x`
    pub c1: DiagG<B>,
    /// `(H₂(l) · g₁^w)^T`
    pub c2: DiagG<B>,
    /// `(g₁ · g₂^{γᵗ})^w`
    pub c3: B::G,
    /// `ĝ₁^w`
    pub c4: B::GHat,
    /// `g₂^{γᵗ·T}`
    pub c5: DiagG<B>,
}

/// JSON sidecar written next to ciphertext files for routing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiphertextMeta {
    pub i: usize,
    pub l: String,
    pub t: usize,
    pub n: usize,
}

/// Encrypts `x` for client `ek.index` under `label`, bound to threshold `t`.
/// Draws no randomness: equal inputs give equal ciphertexts.
pub fn encrypt<B: Backend>(
    x: i64,
    ek: &ClientKeyPair<B>,
    t: usize,
    label: &str,
    mpk: &MasterPublicKey<B>,
) -> Result<Ciphertext<B>> {
    mpk.check_threshold(t)?;
    if x.unsigned_abs() > MAX_ABS_PLAINTEXT as u64 {
        return Err(Error::PlaintextOutOfRange(x));
    }
    if ek.index == 0 || ek.index > mpk.n {
        return Err(Error::IndexOutOfRange { index: ek.index, n: mpk.n });
    }
    let ctx = &mpk.ctx;
    let hl = hash_h2::<B>(label.as_bytes());
    let g0x = ctx.g0 * scalar_from_i64::<B::Scalar>(x);
    let g2_gamma_t = mpk.powers.g2[t];

    Ok(Ciphertext {
        index: ek.index,
        label: label.to_string(),
        t,
        c1: hl.pow(&ek.s).map(|c| *c + g0x),
        c2: hl.map(|h| *h + ctx.g1 * ek.w).pow(&ek.t),
        c3: (ctx.g1 + g2_gamma_t) * ek.w,
        c4: ctx.gh1 * ek.w,
        c5: Diag::splat(g2_gamma_t).pow(&ek.t),
    })
}

impl<B: Backend> Ciphertext<B> {
    pub fn meta(&self, n: usize) -> CiphertextMeta {
        CiphertextMeta { i: self.index, l: self.label.clone(), t: self.t, n }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::with_header(ObjectKind::Ciphertext);
        w.u32(self.index as u32);
        w.var_bytes(self.label.as_bytes());
        w.u32(self.t as u32);
        for d in [&self.c1, &self.c2] {
            w.element(&d.c1);
            w.element(&d.c2);
        }
        w.element(&self.c3);
        w.element(&self.c4);
        w.element(&self.c5.c1);
        w.element(&self.c5.c2);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::with_header(bytes, ObjectKind::Ciphertext)?;
        let index = r.u32()? as usize;
        let label = String::from_utf8(r.var_bytes()?.to_vec())
            .map_err(|_| Error::MalformedEncoding("label is not UTF-8".into()))?;
        let t = r.u32()? as usize;
        let c1 = Diag::new(r.element()?, r.element()?);
        let c2 = Diag::new(r.element()?, r.element()?);
        let c3 = r.element()?;
        let c4 = r.element()?;
        let c5 = Diag::new(r.element()?, r.element()?);
        r.finish()?;
        Ok(Self { index, label, t, c1, c2, c3, c4, c5 })
    }
}
