//! Vanishing polynomials over participation sets, commitments against the
//! powers-of-γ reference string, and the pairing-based degree check.
//!
//! The reference string only reaches `γⁿ`. A client committing to
//! `B̄(x) = B(x)·xᵗ` can therefore only do so when `deg B + t ≤ n`, i.e. when at
//! least `t` clients are online, and the verifier confirms the shift with
//! `e(g₂^{B̄(γ)}, ĝ₁) = e(g₂^{γᵗ}, ĝ₁^{B(γ)})`.

use std::collections::BTreeSet;

use ark_ff::{One, PrimeField};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pairing::{multi_pair, Backend, GroupElement, PairingContext, Sign};
use crate::wire::{Reader, Writer};

/// Indices (1-based) of the clients taking part in a round.
///
/// The set may be empty; operations that need a quorum enforce `|B| ≥ t ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParticipationSet {
    n: usize,
    members: Vec<usize>,
}

impl ParticipationSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParticipationSet("n must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for i in members {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if !set.insert(i) {
                return Err(Error::InvalidParticipationSet(format!("duplicate index {i}")));
            }
        }
        Ok(Self { n, members: set.into_iter().collect() })
    }

    pub fn full(n: usize) -> Self {
        Self { n, members: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Indices in `1..=n` that are not members.
    pub fn absent(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.contains(*i)).collect()
    }

    /// The `b ∈ {0,1}ⁿ` indicator vector.
    pub fn indicator(&self) -> Vec<bool> {
        (1..=self.n).map(|i| self.contains(i)).collect()
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"ftmcfe/set");
        h.update((self.n as u32).to_be_bytes());
        h.update((self.members.len() as u32).to_be_bytes());
        for i in &self.members {
            h.update((*i as u32).to_be_bytes());
        }
        h.finalize().into()
    }
}

/// Monic polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingPoly<F> {
    coeffs: Vec<F>,
}

impl<F: PrimeField> VanishingPoly<F> {
    /// `Π (x − r)` over the given roots.
    pub fn from_roots(roots: &[usize]) -> Self {
        let mut coeffs = vec![F::one()];
        for &r in roots {
            let r = F::from(r as u64);
            // Multiply by (x − r): shift up, subtract r·old.
            coeffs.push(F::zero());
            for j in (0..coeffs.len()).rev() {
                let lower = if j == 0 { F::zero() } else { coeffs[j - 1] };
                coeffs[j] = lower - r * coeffs[j];
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, x: F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x + c)
    }
}

/// Polynomial whose roots are exactly the absent indices of `set`; its degree is
/// `n − |B|` and it is nonzero at every member index.
pub fn vanishing_poly<F: PrimeField>(set: &ParticipationSet) -> VanishingPoly<F> {
    VanishingPoly::from_roots(&set.absent())
}

/// `Σ aⱼ·row[j]`, i.e. `base^{B(γ)}` when `row[j] = base^{γʲ}`.
pub fn commit<F: PrimeField, T: GroupElement<F>>(poly: &VanishingPoly<F>, row: &[T]) -> Result<T> {
    if poly.coeffs.len() > row.len() {
        return Err(Error::DegreeExceedsSrs {
            degree: poly.degree(),
            max: row.len().saturating_sub(1),
        });
    }
    Ok(T::msm(&row[..poly.coeffs.len()], &poly.coeffs))
}

/// Commitment to `B(x)·xᵗ`: each coefficient index moves up by `t`.
pub fn shifted_commit<F: PrimeField, T: GroupElement<F>>(
    poly: &VanishingPoly<F>,
    t: usize,
    row: &[T],
) -> Result<T> {
    let top = poly.degree() + t;
    if top >= row.len() {
        return Err(Error::DegreeExceedsSrs { degree: top, max: row.len().saturating_sub(1) });
    }
    Ok(T::msm(&row[t..=top], &poly.coeffs))
}

/// `e(c_shifted, ĝ₁) = e(g₂^{γᵗ}, c_plain)`. False for `t` outside `1..=n`.
pub fn verify_degree<B: Backend>(
    c_shifted: &B::G,
    c_plain: &B::GHat,
    t: usize,
    powers: &PowersOfGamma<B>,
    ctx: &PairingContext<B>,
) -> bool {
    if t == 0 || t > powers.n() {
        return false;
    }
    multi_pair::<B>(&[
        (*c_shifted, ctx.gh1, Sign::Plus),
        (powers.g2[t], *c_plain, Sign::Minus),
    ])
    .map(|r| r.is_identity())
    .unwrap_or(false)
}

/// The three commitments a client derives from a participation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetCommitments<B: Backend> {
    /// `g₁^{B(γ)}`
    pub g1: B::G,
    /// `ĝ₁^{B(γ)}`
    pub gh1: B::GHat,
    /// `g₂^{B(γ)·γᵗ}`
    pub g2_shifted: B::G,
}

impl<B: Backend> SetCommitments<B> {
    pub fn compute(set: &ParticipationSet, t: usize, powers: &PowersOfGamma<B>) -> Result<Self> {
        let poly = vanishing_poly::<B::Scalar>(set);
        Ok(Self {
            g1: commit(&poly, &powers.g1)?,
            gh1: commit(&poly, &powers.gh1)?,
            g2_shifted: shifted_commit(&poly, t, &powers.g2)?,
        })
    }
}

pub const POWERS_MAGIC: &[u8; 4] = b"FTPG";
pub const POWERS_VERSION: u8 = 1;

/// `{g₁^{γʲ}}, {g₂^{γʲ}}, {ĝ₁^{γʲ}}` for `j = 0..=n`; index 0 holds the bare generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersOfGamma<B: Backend> {
    pub g1: Vec<B::G>,
    pub g2: Vec<B::G>,
    pub gh1: Vec<B::GHat>,
}

impl<B: Backend> PowersOfGamma<B> {
    pub fn generate(ctx: &PairingContext<B>, gamma: B::Scalar, n: usize) -> Self {
        let mut exps = Vec::with_capacity(n + 1);
        let mut cur = B::Scalar::one();
        for _ in 0..=n {
            exps.push(cur);
            cur *= gamma;
        }
        Self {
            g1: exps.iter().map(|e| ctx.g1 * *e).collect(),
            g2: exps.iter().map(|e| ctx.g2 * *e).collect(),
            gh1: exps.iter().map(|e| ctx.gh1 * *e).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.g1.len() - 1
    }

    /// Checks the bare generators at index 0 and, for every `j`,
    /// `e(g₁^{γʲ}, ĝ₁) = e(g₁, ĝ₁^{γʲ})` and `e(g₂^{γʲ}, ĝ₁) = e(g₂, ĝ₁^{γʲ})`.
    pub fn is_consistent(&self, ctx: &PairingContext<B>) -> bool {
        let n = self.n();
        if self.g2.len() != n + 1 || self.gh1.len() != n + 1 {
            return false;
        }
        if self.g1[0] != ctx.g1 || self.g2[0] != ctx.g2 || self.gh1[0] != ctx.gh1 {
            return false;
        }
        (1..=n).all(|j| {
            let ok1 = multi_pair::<B>(&[(self.g1[j], ctx.gh1, Sign::Plus), (ctx.g1, self.gh1[j], Sign::Minus)]);
            let ok2 = multi_pair::<B>(&[(self.g2[j], ctx.gh1, Sign::Plus), (ctx.g2, self.gh1[j], Sign::Minus)]);
            matches!((ok1, ok2), (Ok(a), Ok(b)) if a.is_identity() && b.is_identity())
        })
    }

    /// `"FTPG" ∥ version ∥ n (u32 BE) ∥ g₁ row ∥ g₂ row ∥ ĝ₁ row`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new();
        w.bytes(POWERS_MAGIC);
        w.u8(POWERS_VERSION);
        w.u32(self.n() as u32);
        for e in &self.g1 {
            w.element(e);
        }
        for e in &self.g2 {
            w.element(e);
        }
        for e in &self.gh1 {
            w.element(e);
        }
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let powers = Self::read(&mut r)?;
        r.finish()?;
        Ok(powers)
    }

    pub(crate) fn read(r: &mut Reader<'_>) -> Result<Self> {
        if r.take(4)? != POWERS_MAGIC {
            return Err(Error::MalformedEncoding("bad reference-string magic".into()));
        }
        let version = r.u8()?;
        if version != POWERS_VERSION {
            return Err(Error::VersionMismatch { found: version, expected: POWERS_VERSION });
        }
        let len = r.u32()? as usize + 1;
        let g1 = (0..len).map(|_| r.element()).collect::<Result<Vec<B::G>>>()?;
        let g2 = (0..len).map(|_| r.element()).collect::<Result<Vec<B::G>>>()?;
        let gh1 = (0..len).map(|_| r.element()).collect::<Result<Vec<B::GHat>>>()?;
        Ok(Self { g1, g2, gh1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ark_ff::Zero;
    use crate::pairing::{random_nonzero_scalar, Bls12, CurveId, ToyExponent, ToyScalar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    type Fr = <Bls12 as Backend>::Scalar;

    fn scalars(v: &[i64]) -> Vec<ToyScalar> {
        v.iter().map(|x| crate::pairing::scalar_from_i64(*x)).collect()
    }

    #[test]
    fn set_validation() {
        assert_eq!(ParticipationSet::new(3, [0]).unwrap_err().code(), "index-out-of-range");
        assert_eq!(ParticipationSet::new(3, [4]).unwrap_err().code(), "index-out-of-range");
        assert!(ParticipationSet::new(3, [1, 1]).is_err());
        let s = ParticipationSet::new(4, [4, 2]).unwrap();
        assert_eq!(s.members(), &[2, 4]);
        assert_eq!(s.absent(), vec![1, 3]);
        assert_eq!(s.indicator(), vec![false, true, false, true]);
        assert_ne!(s.digest(), ParticipationSet::full(4).digest());
    }

    #[test]
    fn hand_expanded_vanishing_polys() {
        let full: VanishingPoly<ToyScalar> = vanishing_poly(&ParticipationSet::full(3));
        assert_eq!(full.coeffs(), &scalars(&[1])[..]);
        let drop3: VanishingPoly<ToyScalar> = vanishing_poly(&ParticipationSet::new(3, [1, 2]).unwrap());
        assert_eq!(drop3.coeffs(), &scalars(&[-3, 1])[..]);
        let odd: VanishingPoly<ToyScalar> = vanishing_poly(&ParticipationSet::new(4, [2, 4]).unwrap());
        assert_eq!(odd.coeffs(), &scalars(&[3, -4, 1])[..]);
    }

    #[test]
    fn vanishes_exactly_off_the_set_for_every_subset() {
        for n in 1..=8usize {
            for mask in 0u32..(1 << n) {
                let members: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let set = ParticipationSet::new(n, members.clone()).unwrap();
                let poly: VanishingPoly<ToyScalar> = vanishing_poly(&set);
                assert_eq!(poly.degree(), n - members.len());
                assert_eq!(*poly.coeffs().last().unwrap(), ToyScalar::one());
                for i in 1..=n {
                    let v = poly.evaluate(ToyScalar::from(i as u64));
                    assert_eq!(v.is_zero(), !set.contains(i), "n={n} mask={mask:b} i={i}");
                }
            }
        }
    }

    fn toy_setup(n: usize) -> (PairingContext<ToyExponent>, ToyScalar, PowersOfGamma<ToyExponent>) {
        let ctx = PairingContext::<ToyExponent>::init(CurveId::ToyExponent).unwrap();
        let gamma: ToyScalar = random_nonzero_scalar(&mut ChaCha20Rng::seed_from_u64(n as u64));
        let powers = PowersOfGamma::generate(&ctx, gamma, n);
        (ctx, gamma, powers)
    }

    #[test]
    fn commit_edge_cases() {
        let (ctx, gamma, powers) = toy_setup(3);
        let one = VanishingPoly { coeffs: scalars(&[1]) };
        assert_eq!(commit(&one, &powers.g1).unwrap(), ctx.g1);
        let x = VanishingPoly { coeffs: scalars(&[0, 1]) };
        assert_eq!(commit(&x, &powers.g1).unwrap(), powers.g1[1]);
        let lin = VanishingPoly { coeffs: scalars(&[-3, 1]) };
        assert_eq!(commit(&lin, &powers.g1).unwrap(), ctx.g1 * (gamma - ToyScalar::from(3u64)));
        let too_big = VanishingPoly { coeffs: scalars(&[1, 1, 1, 1, 1]) };
        assert_eq!(commit(&too_big, &powers.g1).unwrap_err().code(), "degree-exceeds-srs");
    }

    #[test]
    fn shifted_commit_edge_cases() {
        let (ctx, gamma, powers) = toy_setup(3);
        let one = VanishingPoly { coeffs: scalars(&[1]) };
        assert_eq!(shifted_commit(&one, 2, &powers.g2).unwrap(), powers.g2[2]);
        let lin = VanishingPoly { coeffs: scalars(&[-3, 1]) };
        let expect = powers.g2[3] + powers.g2[2] * scalar_neg3();
        assert_eq!(shifted_commit(&lin, 2, &powers.g2).unwrap(), expect);
        let g3 = gamma * gamma * gamma;
        assert_eq!(expect, ctx.g2 * (g3 - ToyScalar::from(3u64) * gamma * gamma));
        let quad = VanishingPoly { coeffs: scalars(&[3, -4, 1]) };
        assert_eq!(shifted_commit(&quad, 2, &powers.g2).unwrap_err().code(), "degree-exceeds-srs");
    }

    fn scalar_neg3() -> ToyScalar {
        -ToyScalar::from(3u64)
    }

    #[test]
    fn degree_check_on_bls() {
        let ctx = PairingContext::<Bls12>::init(CurveId::Bls12_381).unwrap();
        let gamma: Fr = random_nonzero_scalar(&mut ChaCha20Rng::seed_from_u64(1));
        let powers = PowersOfGamma::generate(&ctx, gamma, 3);
        assert!(powers.is_consistent(&ctx));

        let set = ParticipationSet::new(3, [1, 2]).unwrap();
        let c = SetCommitments::compute(&set, 2, &powers).unwrap();
        assert!(verify_degree(&c.g2_shifted, &c.gh1, 2, &powers, &ctx));
        assert!(!verify_degree(&powers.g2[0], &c.gh1, 2, &powers, &ctx));
        assert!(!verify_degree(&c.g2_shifted, &c.gh1, 0, &powers, &ctx));
        assert!(!verify_degree(&c.g2_shifted, &c.gh1, 4, &powers, &ctx));

        assert!(verify_degree(&powers.g2[1], &ctx.gh1, 1, &powers, &ctx));
    }

    #[test]
    fn exhaustive_degree_check_semantics() {
        let (ctx, _, powers) = toy_setup(6);
        for mask in 0u32..(1 << 6) {
            let members: Vec<usize> = (1..=6).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let set = ParticipationSet::new(6, members).unwrap();
            for t in 1..=6 {
                match SetCommitments::compute(&set, t, &powers) {
                    Ok(c) => {
                        assert!(set.len() >= t);
                        assert!(verify_degree(&c.g2_shifted, &c.gh1, t, &powers, &ctx));
                    }
                    Err(e) => {
                        assert!(set.len() < t);
                        assert_eq!(e.code(), "degree-exceeds-srs");
                    }
                }
            }
        }
    }

    #[test]
    fn reference_string_bytes() {
        let (ctx, _, powers) = toy_setup(4);
        let bytes = powers.to_bytes();
        assert_eq!(&bytes[..4], b"FTPG");
        assert_eq!(bytes[4], 1);
        assert_eq!(&bytes[5..9], &[0, 0, 0, 4]);
        assert_eq!(bytes.len(), 9 + 3 * 5 * 9);
        let back = PowersOfGamma::<ToyExponent>::from_bytes(&bytes).unwrap();
        assert_eq!(back, powers);
        assert!(back.is_consistent(&ctx));
        assert!(PowersOfGamma::<ToyExponent>::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut v = bytes.clone();
        v[4] = 2;
        assert_eq!(PowersOfGamma::<ToyExponent>::from_bytes(&v).unwrap_err().code(), "version-mismatch");
    }

    #[test]
    fn tampered_reference_string_is_inconsistent() {
        let (ctx, _, mut powers) = toy_setup(4);
        powers.g2[3] = powers.g2[3] + ctx.g2;
        assert!(!powers.is_consistent(&ctx));
    }
}
