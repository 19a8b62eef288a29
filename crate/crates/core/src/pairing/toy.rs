//! Exponent-model pairing over the Mersenne prime 2⁶¹ − 1.
//!
//! Every group element is stored as its discrete log with respect to a fixed
//! generator, so `e(a, b) = a·b` and the hash oracles map straight into the
//! field. This makes discrete logs public: nothing built on this backend is
//! secure. It exists so the scheme logic can be exercised quickly and compared
//! against plain field arithmetic.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use ark_ff::fields::{Fp64, MontBackend, MontConfig};
use ark_ff::{BigInteger, PrimeField, Zero};
use sha2::{Digest, Sha256};

use super::{Backend, CurveId, ElementKind, GroupElement};
use crate::error::{Error, Result};

#[derive(MontConfig)]
#[modulus = "2305843009213693951"]
#[generator = "37"]
pub struct ToyFieldConfig;

/// Scalar field of the toy backend.
pub type ToyScalar = Fp64<MontBackend<ToyFieldConfig, 1>>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ToyExponent;

macro_rules! exponent_group {
    ($name:ident, $kind:expr) => {
        /// Group element stored as its exponent.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub ToyScalar);

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                $name(self.0 + rhs.0)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                self.0 += rhs.0;
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                $name(self.0 - rhs.0)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                $name(-self.0)
            }
        }

        impl Mul<ToyScalar> for $name {
            type Output = Self;
            fn mul(self, rhs: ToyScalar) -> Self {
                $name(self.0 * rhs)
            }
        }

        impl GroupElement<ToyScalar> for $name {
            const KIND: ElementKind = $kind;
            const ENCODED_LEN: usize = 8;

            fn identity() -> Self {
                $name(ToyScalar::zero())
            }

            fn write_bytes(&self, out: &mut Vec<u8>) {
                out.extend_from_slice(&self.0.into_bigint().to_bytes_be());
            }

            fn read_bytes(bytes: &[u8]) -> Result<Self> {
                let raw: [u8; 8] = bytes.try_into().map_err(|_| {
                    Error::MalformedEncoding(format!("expected 8 bytes, got {}", bytes.len()))
                })?;
                let v = u64::from_be_bytes(raw);
                if v >= ToyScalar::MODULUS.0[0] {
                    return Err(Error::MalformedEncoding("exponent is not reduced".into()));
                }
                Ok($name(ToyScalar::from(v)))
            }
        }
    };
}

exponent_group!(ToyG, ElementKind::G);
exponent_group!(ToyGHat, ElementKind::GHat);
exponent_group!(ToyGt, ElementKind::Gt);

fn hash_to_exponent(dst: &[u8], msg: &[u8]) -> ToyScalar {
    let mut h = Sha256::new();
    h.update((dst.len() as u64).to_be_bytes());
    h.update(dst);
    h.update(msg);
    ToyScalar::from_be_bytes_mod_order(&h.finalize())
}

impl Backend for ToyExponent {
    const CURVE: CurveId = CurveId::ToyExponent;
    type Scalar = ToyScalar;
    type G = ToyG;
    type GHat = ToyGHat;
    type Gt = ToyGt;

    fn hash_to_g(dst: &[u8], msg: &[u8]) -> ToyG {
        ToyG(hash_to_exponent(dst, msg))
    }

    fn hash_to_ghat(dst: &[u8], msg: &[u8]) -> ToyGHat {
        ToyGHat(hash_to_exponent(dst, msg))
    }

    fn pair(a: &ToyG, b: &ToyGHat) -> ToyGt {
        ToyGt(a.0 * b.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::{pair, PairingContext};

    #[test]
    fn bilinear_on_small_exponents() {
        let ctx = PairingContext::<ToyExponent>::init(CurveId::ToyExponent).unwrap();
        let base = pair::<ToyExponent>(&ctx.g, &ctx.gh);
        assert!(!base.is_identity());
        for s in 0u64..20 {
            for z in 0u64..20 {
                let lhs = pair::<ToyExponent>(&(ctx.g * ToyScalar::from(s)), &(ctx.gh * ToyScalar::from(z)));
                assert_eq!(lhs, base * ToyScalar::from(s * z));
            }
        }
    }

    #[test]
    fn encoding_rejects_unreduced() {
        let p = ToyScalar::MODULUS.0[0];
        assert!(ToyG::read_bytes(&p.to_be_bytes()).is_err());
        assert!(ToyG::read_bytes(&[0u8; 7]).is_err());
        let e = ToyG(ToyScalar::from(p - 1));
        assert_eq!(ToyG::read_bytes(&e.to_bytes()).unwrap(), e);
    }
}
