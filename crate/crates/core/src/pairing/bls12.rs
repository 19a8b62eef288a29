use ark_bls12_381::{g1, g2, Bls12_381, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{AffineRepr, CurveGroup, VariableBaseMSM};
use ark_ff::field_hashers::DefaultFieldHasher;
use ark_ff::Zero;
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize, Valid};
use sha2::Sha256;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::{Backend, CurveId, ElementKind, GroupElement};
use crate::error::{Error, Result};

/// BLS12-381 via arkworks. Points use the zcash compressed encoding; `G_T`
/// elements are written uncompressed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bls12;

macro_rules! wrapper_ops {
    ($name:ident, $inner:ty) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub struct $name(pub $inner);

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

        impl Mul<Fr> for $name {
            type Output = Self;
            fn mul(self, rhs: Fr) -> Self {
                $name(self.0 * rhs)
            }
        }
    };
}

wrapper_ops!(G1, G1Projective);
wrapper_ops!(G2, G2Projective);
wrapper_ops!(Gt, PairingOutput<Bls12_381>);

type G1Hasher = MapToCurveBasedHasher<G1Projective, DefaultFieldHasher<Sha256, 128>, WBMap<g1::Config>>;
type G2Hasher = MapToCurveBasedHasher<G2Projective, DefaultFieldHasher<Sha256, 128>, WBMap<g2::Config>>;

fn write_canonical<T: CanonicalSerialize>(v: &T, out: &mut Vec<u8>, compressed: bool) {
    let r = if compressed { v.serialize_compressed(out) } else { v.serialize_uncompressed(out) };
    r.expect("writing into a Vec cannot fail");
}

fn check_len(bytes: &[u8], len: usize) -> Result<()> {
    if bytes.len() != len {
        return Err(Error::MalformedEncoding(format!("expected {len} bytes, got {}", bytes.len())));
    }
    Ok(())
}

macro_rules! curve_point {
    ($name:ident, $proj:ty, $affine:ty, $kind:expr, $len:expr) => {
        impl GroupElement<Fr> for $name {
            const KIND: ElementKind = $kind;
            const ENCODED_LEN: usize = $len;

            fn identity() -> Self {
                $name(<$proj>::zero())
            }

            fn write_bytes(&self, out: &mut Vec<u8>) {
                write_canonical(&self.0.into_affine(), out, true);
            }

            fn read_bytes(bytes: &[u8]) -> Result<Self> {
                check_len(bytes, $len)?;
                // Unchecked decoding still recovers y from x, so success means on-curve.
                let p = <$affine>::deserialize_compressed_unchecked(bytes)
                    .map_err(|e| Error::MalformedEncoding(e.to_string()))?;
                if !p.is_on_curve() {
                    return Err(Error::MalformedEncoding("point not on curve".into()));
                }
                if !p.is_in_correct_subgroup_assuming_on_curve() {
                    return Err(Error::WrongSubgroup);
                }
                Ok($name(p.into_group()))
            }

            fn msm(bases: &[Self], scalars: &[Fr]) -> Self {
                let proj: Vec<$proj> = bases.iter().map(|b| b.0).collect();
                let affine = <$proj>::normalize_batch(&proj);
                $name(<$proj>::msm_unchecked(&affine, scalars))
            }
        }
    };
}

curve_point!(G1, G1Projective, G1Affine, ElementKind::G, 48);
curve_point!(G2, G2Projective, G2Affine, ElementKind::GHat, 96);

impl GroupElement<Fr> for Gt {
    const KIND: ElementKind = ElementKind::Gt;
    const ENCODED_LEN: usize = 576;

    fn identity() -> Self {
        Gt(PairingOutput::zero())
    }

    fn write_bytes(&self, out: &mut Vec<u8>) {
        write_canonical(&self.0, out, false);
    }

    fn read_bytes(bytes: &[u8]) -> Result<Self> {
        check_len(bytes, 576)?;
        let v = PairingOutput::<Bls12_381>::deserialize_uncompressed_unchecked(bytes)
            .map_err(|e| Error::MalformedEncoding(e.to_string()))?;
        // The multiplicative zero of Fq12 is not a group element at all.
        if v.0.is_zero() {
            return Err(Error::MalformedEncoding("zero is not in G_T".into()));
        }
        v.check().map_err(|_| Error::WrongSubgroup)?;
        Ok(Gt(v))
    }
}

impl Backend for Bls12 {
    const CURVE: CurveId = CurveId::Bls12_381;
    type Scalar = Fr;
    type G = G1;
    type GHat = G2;
    type Gt = Gt;

    fn hash_to_g(dst: &[u8], msg: &[u8]) -> G1 {
        let p = G1Hasher::new(dst)
            .and_then(|h| h.hash(msg))
            .expect("WB map parameters for BLS12-381 G1 are valid");
        G1(p.into_group())
    }

    fn hash_to_ghat(dst: &[u8], msg: &[u8]) -> G2 {
        let p = G2Hasher::new(dst)
            .and_then(|h| h.hash(msg))
            .expect("WB map parameters for BLS12-381 G2 are valid");
        G2(p.into_group())
    }

    fn pair(a: &G1, b: &G2) -> Gt {
        Gt(Bls12_381::pairing(a.0, b.0))
    }

    fn multi_pair(a: &[G1], b: &[G2]) -> Gt {
        debug_assert_eq!(a.len(), b.len());
        let a: Vec<G1Projective> = a.iter().map(|p| p.0).collect();
        let b: Vec<G2Projective> = b.iter().map(|p| p.0).collect();
        let a = G1Projective::normalize_batch(&a);
        let b = G2Projective::normalize_batch(&b);
        Gt(Bls12_381::multi_pairing(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::{deserialize_element, random_scalar, serialize_element};
    use ark_ec::PrimeGroup;
    use ark_ff::UniformRand;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn round_trip_all_kinds() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s: Fr = random_scalar(&mut rng);
            let a = G1(G1Projective::generator() * s);
            let b = G2(G2Projective::generator() * s);
            let c = Gt(PairingOutput::generator() * s);
            assert_eq!(deserialize_element::<Fr, G1>(&serialize_element(&a)).unwrap(), a);
            assert_eq!(deserialize_element::<Fr, G2>(&serialize_element(&b)).unwrap(), b);
            assert_eq!(deserialize_element::<Fr, Gt>(&serialize_element(&c)).unwrap(), c);
        }
        assert_eq!(G1::read_bytes(&G1::identity().to_bytes()).unwrap(), G1::identity());
        assert_eq!(G2::read_bytes(&G2::identity().to_bytes()).unwrap(), G2::identity());
        assert_eq!(Gt::read_bytes(&Gt::identity().to_bytes()).unwrap(), Gt::identity());
    }

    #[test]
    fn rejects_zero_and_truncated() {
        assert_eq!(G1::read_bytes(&[0u8; 48]).unwrap_err().code(), "malformed-encoding");
        assert_eq!(G2::read_bytes(&[0u8; 96]).unwrap_err().code(), "malformed-encoding");
        assert_eq!(Gt::read_bytes(&[0u8; 576]).unwrap_err().code(), "malformed-encoding");
        let gen = G1(G1Projective::generator());
        let p = gen.to_bytes();
        assert_eq!(G1::read_bytes(&p[..47]).unwrap_err().code(), "malformed-encoding");
        let tagged = serialize_element(&gen);
        assert!(deserialize_element::<Fr, G1>(&tagged[..tagged.len() - 1]).is_err());
        // A G1 encoding is not accepted as Ĝ.
        assert!(deserialize_element::<Fr, G2>(&tagged).is_err());
    }

    #[test]
    fn rejects_points_outside_the_subgroup() {
        // Random x coordinates land on the curve about half the time; points
        // built that way are almost never in the order-r subgroup.
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let mut seen = 0;
        for _ in 0..64 {
            let x = ark_bls12_381::Fq::rand(&mut rng);
            if let Some(p) = G1Affine::get_point_from_x_unchecked(x, false) {
                let mut bytes = Vec::new();
                p.serialize_compressed(&mut bytes).unwrap();
                assert_eq!(G1::read_bytes(&bytes).unwrap_err().code(), "wrong-subgroup");
                seen += 1;
            }
        }
        assert!(seen > 0);
        // G_T: an arbitrary nonzero Fq12 element is not in the order-r subgroup.
        let f = <Bls12_381 as Pairing>::TargetField::rand(&mut rng);
        let mut bytes = Vec::new();
        f.serialize_uncompressed(&mut bytes).unwrap();
        assert_eq!(Gt::read_bytes(&bytes).unwrap_err().code(), "wrong-subgroup");
    }
}
