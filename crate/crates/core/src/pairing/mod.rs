//! Type-III pairing arithmetic behind a small backend trait.
//!
//! Group operations are written additively, following arkworks: `a + b` is the
//! group law and `a * s` is "exponentiation" by the scalar `s`. Every matrix the
//! scheme uses is diagonal, so a 2×2 matrix in the exponent is carried as a
//! [`Diag`] pair and all matrix algebra reduces to componentwise operations.
//!
//! Two backends are provided:
//! - [`Bls12`]: BLS12-381 (128-bit security), the reference configuration.
//! - [`ToyExponent`]: an *insecure* exponent-model group over a 61-bit prime
//!   field, where each element is stored as its own discrete log. It is meant
//!   for fast exhaustive tests and γ-oracle comparisons only.

pub mod bls12;
pub mod toy;

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use ark_ff::{BigInteger, PrimeField};
use rand::Rng;

use crate::error::{Error, Result};

pub use bls12::Bls12;
pub use toy::{ToyExponent, ToyScalar};

pub const TAG_H1_C1: &[u8] = b"ftmcfe/H1/c1";
pub const TAG_H1_C2: &[u8] = b"ftmcfe/H1/c2";
pub const TAG_H2_C1: &[u8] = b"ftmcfe/H2/c1";
pub const TAG_H2_C2: &[u8] = b"ftmcfe/H2/c2";

/// Width of a scalar in every byte encoding this crate produces.
pub const SCALAR_BYTES: usize = 32;

/// Wire tag that precedes each serialized group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ElementKind {
    G = 0x01,
    GHat = 0x02,
    Gt = 0x03,
}

/// Supported pairing configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveId {
    Bls12_381,
    /// Insecure exponent-model group, tests only.
    ToyExponent,
}

impl CurveId {
    pub fn name(self) -> &'static str {
        match self {
            CurveId::Bls12_381 => "bls12-381",
            CurveId::ToyExponent => "toy-exponent",
        }
    }

    pub fn wire_id(self) -> u8 {
        match self {
            CurveId::Bls12_381 => 1,
            CurveId::ToyExponent => 0xfe,
        }
    }

    pub fn from_wire_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(CurveId::Bls12_381),
            0xfe => Ok(CurveId::ToyExponent),
            other => Err(Error::UnsupportedCurve(format!("wire id {other:#04x}"))),
        }
    }
}

impl Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bls12-381" | "bls12_381" | "default" => Ok(CurveId::Bls12_381),
            "toy-exponent" | "toy" => Ok(CurveId::ToyExponent),
            other => Err(Error::UnsupportedCurve(other.to_string())),
        }
    }
}

/// An element of one of the three pairing groups.
pub trait GroupElement<F: PrimeField>:
    Copy
    + Eq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<F, Output = Self>
{
    const KIND: ElementKind;
    /// Length of the encoding produced by [`GroupElement::write_bytes`], tag excluded.
    const ENCODED_LEN: usize;

    fn identity() -> Self;

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn write_bytes(&self, out: &mut Vec<u8>);

    /// Decodes exactly `ENCODED_LEN` bytes, rejecting off-curve and
    /// wrong-subgroup encodings.
    fn read_bytes(bytes: &[u8]) -> Result<Self>;

    /// `Σ bases[i] * scalars[i]`.
    fn msm(bases: &[Self], scalars: &[F]) -> Self {
        bases
            .iter()
            .zip(scalars)
            .fold(Self::identity(), |acc, (b, s)| acc + *b * *s)
    }

    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::ENCODED_LEN);
        self.write_bytes(&mut out);
        out
    }
}

/// A Type-III pairing `e: G × Ĝ → G_T` over a prime-order scalar field.
pub trait Backend: Copy + Debug + Default + Send + Sync + 'static {
    const CURVE: CurveId;
    type Scalar: PrimeField;
    type G: GroupElement<Self::Scalar>;
    type GHat: GroupElement<Self::Scalar>;
    type Gt: GroupElement<Self::Scalar>;

    /// Hash-to-group into `G` under domain-separation tag `dst`.
    fn hash_to_g(dst: &[u8], msg: &[u8]) -> Self::G;
    fn hash_to_ghat(dst: &[u8], msg: &[u8]) -> Self::GHat;

    fn pair(a: &Self::G, b: &Self::GHat) -> Self::Gt;

    /// `Σ e(a[i], b[i])`, both slices of equal length.
    fn multi_pair(a: &[Self::G], b: &[Self::GHat]) -> Self::Gt {
        a.iter()
            .zip(b)
            .fold(Self::Gt::identity(), |acc, (x, y)| acc + Self::pair(x, y))
    }
}

/// A diagonal 2×2 matrix, either of scalars or of group elements in the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diag<T> {
    pub c1: T,
    pub c2: T,
}

impl<T> Diag<T> {
    pub fn new(c1: T, c2: T) -> Self {
        Self { c1, c2 }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Diag<U> {
        Diag { c1: f(&self.c1), c2: f(&self.c2) }
    }

    pub fn zip_with<U, V>(&self, other: &Diag<U>, mut f: impl FnMut(&T, &U) -> V) -> Diag<V> {
        Diag { c1: f(&self.c1, &other.c1), c2: f(&self.c2, &other.c2) }
    }

    pub fn components(&self) -> [&T; 2] {
        [&self.c1, &self.c2]
    }
}

impl<T: Copy> Diag<T> {
    pub fn splat(v: T) -> Self {
        Self { c1: v, c2: v }
    }
}

pub type DiagScalar<B> = Diag<<B as Backend>::Scalar>;
pub type DiagG<B> = Diag<<B as Backend>::G>;
pub type DiagGHat<B> = Diag<<B as Backend>::GHat>;
pub type DiagGt<B> = Diag<<B as Backend>::Gt>;

impl<T: Copy> Diag<T> {
    /// `self^M` for a diagonal scalar matrix `M`: componentwise exponentiation.
    pub fn pow<F>(&self, m: &Diag<F>) -> Self
    where
        F: Copy,
        T: Mul<F, Output = T>,
    {
        Diag { c1: self.c1 * m.c1, c2: self.c2 * m.c2 }
    }

    pub fn scale<F>(&self, s: F) -> Self
    where
        F: Copy,
        T: Mul<F, Output = T>,
    {
        Diag { c1: self.c1 * s, c2: self.c2 * s }
    }
}

impl<T: Add<Output = T>> Add for Diag<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Diag { c1: self.c1 + rhs.c1, c2: self.c2 + rhs.c2 }
    }
}

/// Immutable system-wide group description: the six scheme generators plus the
/// hash bases `g`, `ĝ`, all derived by hashing fixed tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingContext<B: Backend> {
    pub curve: CurveId,
    pub g0: B::G,
    pub g1: B::G,
    pub g2: B::G,
    pub gh0: B::GHat,
    pub gh1: B::GHat,
    /// Published but unused by any algorithm.
    pub gh2: B::GHat,
    pub g: B::G,
    pub gh: B::GHat,
}

impl<B: Backend> PairingContext<B> {
    /// Builds the context for `curve`, which must name the backend `B`.
    pub fn init(curve: CurveId) -> Result<Self> {
        if curve != B::CURVE {
            return Err(Error::UnsupportedCurve(format!(
                "{curve} requested from the {} backend",
                B::CURVE
            )));
        }
        Ok(Self::derive())
    }

    /// Parses a configuration name and builds the context.
    pub fn from_config(name: &str) -> Result<Self> {
        Self::init(name.parse()?)
    }

    fn derive() -> Self {
        let ctx = Self {
            curve: B::CURVE,
            g0: B::hash_to_g(b"ftmcfe/g0", b""),
            g1: B::hash_to_g(b"ftmcfe/g1", b""),
            g2: B::hash_to_g(b"ftmcfe/g2", b""),
            gh0: B::hash_to_ghat(b"ftmcfe/ghat0", b""),
            gh1: B::hash_to_ghat(b"ftmcfe/ghat1", b""),
            gh2: B::hash_to_ghat(b"ftmcfe/ghat2", b""),
            g: B::hash_to_g(b"ftmcfe/g", b""),
            gh: B::hash_to_ghat(b"ftmcfe/ghat", b""),
        };
        debug_assert!(!B::pair(&ctx.g, &ctx.gh).is_identity());
        ctx
    }

    /// Order `p` of every group, as a decimal string.
    pub fn order(&self) -> String {
        B::Scalar::MODULUS.to_string()
    }

    pub fn generators_g(&self) -> [B::G; 4] {
        [self.g0, self.g1, self.g2, self.g]
    }

    pub fn generators_ghat(&self) -> [B::GHat; 4] {
        [self.gh0, self.gh1, self.gh2, self.gh]
    }
}

pub fn pair<B: Backend>(a: &B::G, b: &B::GHat) -> B::Gt {
    B::pair(a, b)
}

/// Sign applied to one pairing factor of a [`multi_pair`] product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `Π e(aᵢ, bᵢ)^{±1}` with a single shared final step.
pub fn multi_pair<B: Backend>(terms: &[(B::G, B::GHat, Sign)]) -> Result<B::Gt> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (a, b): (Vec<_>, Vec<_>) = terms
        .iter()
        .map(|(a, b, s)| match s {
            Sign::Plus => (*a, *b),
            Sign::Minus => (-*a, *b),
        })
        .unzip();
    Ok(B::multi_pair(&a, &b))
}

/// Random oracle `H₁` onto diagonal Ĝ pairs. The input is the canonical
/// encoding of a function vector (see [`encode_scalar_vector`]).
pub fn hash_h1<B: Backend>(y_bytes: &[u8]) -> Result<DiagGHat<B>> {
    if y_bytes.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(Diag::new(
        B::hash_to_ghat(TAG_H1_C1, y_bytes),
        B::hash_to_ghat(TAG_H1_C2, y_bytes),
    ))
}

/// Random oracle `H₂` from labels onto diagonal G pairs. Total: the empty label is fine.
pub fn hash_h2<B: Backend>(label: &[u8]) -> DiagG<B> {
    Diag::new(B::hash_to_g(TAG_H2_C1, label), B::hash_to_g(TAG_H2_C2, label))
}

pub fn random_scalar<F: PrimeField, R: Rng + ?Sized>(rng: &mut R) -> F {
    F::rand(rng)
}

pub fn random_nonzero_scalar<F: PrimeField, R: Rng + ?Sized>(rng: &mut R) -> F {
    loop {
        let s = F::rand(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_diag<F: PrimeField, R: Rng + ?Sized>(rng: &mut R) -> Diag<F> {
    Diag::new(F::rand(rng), F::rand(rng))
}

/// Maps a signed integer into the field (negatives wrap to `p - |v|`).
pub fn scalar_from_i64<F: PrimeField>(v: i64) -> F {
    let mag = F::from(v.unsigned_abs());
    if v < 0 {
        -mag
    } else {
        mag
    }
}

/// 32-byte big-endian canonical encoding of a scalar.
pub fn scalar_to_bytes<F: PrimeField>(s: &F) -> [u8; SCALAR_BYTES] {
    let be = s.into_bigint().to_bytes_be();
    let mut out = [0u8; SCALAR_BYTES];
    out[SCALAR_BYTES - be.len()..].copy_from_slice(&be);
    out
}

/// Inverse of [`scalar_to_bytes`]; rejects non-canonical values (≥ p).
pub fn scalar_from_bytes<F: PrimeField>(bytes: &[u8]) -> Result<F> {
    if bytes.len() != SCALAR_BYTES {
        return Err(Error::MalformedEncoding(format!(
            "scalar needs {SCALAR_BYTES} bytes, got {}",
            bytes.len()
        )));
    }
    let s = F::from_be_bytes_mod_order(bytes);
    if scalar_to_bytes(&s)[..] != bytes[..] {
        return Err(Error::MalformedEncoding("scalar is not reduced".into()));
    }
    Ok(s)
}

/// Canonical byte encoding of a scalar vector: 4-byte big-endian count, then
/// each coordinate as a 32-byte big-endian scalar.
pub fn encode_scalar_vector<F: PrimeField>(v: &[F]) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + v.len() * SCALAR_BYTES);
    out.extend_from_slice(&(v.len() as u32).to_be_bytes());
    for s in v {
        out.extend_from_slice(&scalar_to_bytes(s));
    }
    out
}

/// Tagged element encoding: kind byte followed by the backend's native encoding.
pub fn serialize_element<F: PrimeField, T: GroupElement<F>>(e: &T) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + T::ENCODED_LEN);
    out.push(T::KIND as u8);
    e.write_bytes(&mut out);
    out
}

pub fn deserialize_element<F: PrimeField, T: GroupElement<F>>(bytes: &[u8]) -> Result<T> {
    if bytes.len() != 1 + T::ENCODED_LEN {
        return Err(Error::MalformedEncoding(format!(
            "expected {} bytes, got {}",
            1 + T::ENCODED_LEN,
            bytes.len()
        )));
    }
    if bytes[0] != T::KIND as u8 {
        return Err(Error::MalformedEncoding(format!(
            "kind tag {:#04x}, expected {:#04x}",
            bytes[0],
            T::KIND as u8
        )));
    }
    T::read_bytes(&bytes[1..])
}
