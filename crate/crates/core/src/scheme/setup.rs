use ark_ff::PrimeField;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pairing::{
    pair, random_diag, random_nonzero_scalar, random_scalar, Backend, CurveId, Diag, DiagScalar,
    PairingContext,
};
use crate::poly::PowersOfGamma;
use crate::scheme::dlog::{DlogConfig, DlogTable};
use crate::wire::{ObjectKind, Reader, Writer};

/// Public parameters: the group context, the client count and the
/// powers-of-γ reference string. γ itself is not kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterPublicKey<B: Backend> {
    pub ctx: PairingContext<B>,
    pub n: usize,
    pub powers: PowersOfGamma<B>,
}

/// The trapdoor γ, returned only by [`ta_setup_retaining_gamma`].
///
/// Anyone holding it can forge degree-check proofs. Test harnesses use it as
/// a brute-force oracle; nothing else should.
#[derive(Clone, Copy, Debug)]
pub struct InsecureGamma<F>(pub F);

/// Runs the authority side of setup: samples γ ≠ 0 and publishes
/// `{g₁^{γʲ}}, {g₂^{γʲ}}, {ĝ₁^{γʲ}}` for `j = 0..=n`.
pub fn ta_setup<B: Backend, R: Rng + ?Sized>(
    n: usize,
    ctx: &PairingContext<B>,
    rng: &mut R,
) -> Result<MasterPublicKey<B>> {
    ta_setup_retaining_gamma(n, ctx, rng).map(|(mpk, _)| mpk)
}

pub fn ta_setup_retaining_gamma<B: Backend, R: Rng + ?Sized>(
    n: usize,
    ctx: &PairingContext<B>,
    rng: &mut R,
) -> Result<(MasterPublicKey<B>, InsecureGamma<B::Scalar>)> {
    if n == 0 {
        return Err(Error::InvalidParticipationSet("n must be at least 1".into()));
    }
    let gamma: B::Scalar = random_nonzero_scalar(rng);
    let powers = PowersOfGamma::generate(ctx, gamma, n);
    Ok((MasterPublicKey { ctx: *ctx, n, powers }, InsecureGamma(gamma)))
}

impl<B: Backend> MasterPublicKey<B> {
    /// Pairing check of the reference string against the context.
    pub fn is_consistent(&self) -> bool {
        self.n >= 1 && self.powers.n() == self.n && self.powers.is_consistent(&self.ctx)
    }

    /// `e(g₀, ĝ₀)`, the base every decryption result is expressed in.
    pub fn result_base(&self) -> B::Gt {
        pair::<B>(&self.ctx.g0, &self.ctx.gh0)
    }

    pub fn dlog_table(&self, config: DlogConfig) -> Result<DlogTable<B::Scalar, B::Gt>> {
        DlogTable::new(self.result_base(), config)
    }

    pub fn check_threshold(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.n {
            return Err(Error::ThresholdOutOfRange { t, n: self.n });
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::with_header(ObjectKind::MasterPublicKey);
        w.u8(self.ctx.curve.wire_id());
        w.u32(self.n as u32);
        for g in self.ctx.generators_g() {
            w.element(&g);
        }
        for g in self.ctx.generators_ghat() {
            w.element(&g);
        }
        w.bytes(&self.powers.to_bytes());
        w.finish()
    }

    /// Decodes and checks that the generators match the derived context. The
    /// reference-string pairing check is left to [`MasterPublicKey::is_consistent`].
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::with_header(bytes, ObjectKind::MasterPublicKey)?;
        let curve = CurveId::from_wire_id(r.u8()?)?;
        let ctx = PairingContext::<B>::init(curve)?;
        let n = r.u32()? as usize;
        let gs: [B::G; 4] = [r.element()?, r.element()?, r.element()?, r.element()?];
        let ghs: [B::GHat; 4] = [r.element()?, r.element()?, r.element()?, r.element()?];
        if gs != ctx.generators_g() || ghs != ctx.generators_ghat() {
            return Err(Error::CorruptKey("generators differ from the derived context".into()));
        }
        let powers = PowersOfGamma::read(&mut r)?;
        r.finish()?;
        if n == 0 || powers.n() != n {
            return Err(Error::CorruptKey(format!(
                "reference string covers n = {}, header says {n}",
                powers.n()
            )));
        }
        Ok(Self { ctx, n, powers })
    }
}

/// A client's secret `(S, T, w)`; it doubles as the encryption key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClientKeyPair<B: Backend> {
    pub index: usize,
    pub s: DiagScalar<B>,
    pub t: DiagScalar<B>,
    pub w: B::Scalar,
}

/// Client-side setup. Needs no input from the authority or other clients.
pub fn client_init<B: Backend, R: Rng + ?Sized>(
    index: usize,
    n: usize,
    rng: &mut R,
) -> Result<ClientKeyPair<B>> {
    if index == 0 || index > n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(ClientKeyPair {
        index,
        s: random_diag(rng),
        t: random_diag(rng),
        w: random_scalar(rng),
    })
}

impl<B: Backend> ClientKeyPair<B> {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::with_header(ObjectKind::ClientKey);
        w.u32(self.index as u32);
        write_diag_scalar(&mut w, &self.s);
        write_diag_scalar(&mut w, &self.t);
        w.scalar(&self.w);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::with_header(bytes, ObjectKind::ClientKey)?;
        let index = r.u32()? as usize;
        let s = read_diag_scalar(&mut r)?;
        let t = read_diag_scalar(&mut r)?;
        let w = r.scalar()?;
        r.finish()?;
        if index == 0 {
            return Err(Error::CorruptKey("client index 0".into()));
        }
        Ok(Self { index, s, t, w })
    }
}

fn write_diag_scalar<F: PrimeField>(w: &mut Writer, d: &Diag<F>) {
    w.scalar(&d.c1);
    w.scalar(&d.c2);
}

fn read_diag_scalar<F: PrimeField>(r: &mut Reader<'_>) -> Result<Diag<F>> {
    Ok(Diag::new(r.scalar()?, r.scalar()?))
}
