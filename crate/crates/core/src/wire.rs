//! Byte-level helpers shared by every on-disk and on-wire object.
//!
//! Scheme objects start with `"FTMC" ∥ version ∥ kind`; the reference string
//! has its own `"FTPG"` header (see [`crate::poly::PowersOfGamma`]). Integers
//! are big-endian, group elements carry their one-byte kind tag.

use ark_ff::PrimeField;

use crate::error::{Error, Result};
use crate::pairing::{deserialize_element, scalar_from_bytes, scalar_to_bytes, GroupElement, SCALAR_BYTES};

pub const SCHEME_MAGIC: &[u8; 4] = b"FTMC";
pub const WIRE_VERSION: u8 = 1;

/// Object kinds carried in the FTMC header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ObjectKind {
    MasterPublicKey = 0x01,
    ClientKey = 0x02,
    PartialKey = 0x03,
    Ciphertext = 0x04,
}

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_header(kind: ObjectKind) -> Self {
        let mut w = Self::new();
        w.bytes(SCHEME_MAGIC);
        w.u8(WIRE_VERSION);
        w.u8(kind as u8);
        w
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }

    /// u32 length prefix, then the bytes.
    pub fn var_bytes(&mut self, b: &[u8]) {
        self.u32(b.len() as u32);
        self.bytes(b);
    }

    pub fn scalar<F: PrimeField>(&mut self, s: &F) {
        self.bytes(&scalar_to_bytes(s));
    }

    pub fn element<F: PrimeField, T: GroupElement<F>>(&mut self, e: &T) {
        self.u8(T::KIND as u8);
        e.write_bytes(&mut self.buf);
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf }
    }

    /// Consumes and validates an FTMC header.
    pub fn with_header(buf: &'a [u8], kind: ObjectKind) -> Result<Self> {
        let mut r = Self::new(buf);
        if r.take(4)? != SCHEME_MAGIC {
            return Err(Error::MalformedEncoding("bad magic".into()));
        }
        let version = r.u8()?;
        if version != WIRE_VERSION {
            return Err(Error::VersionMismatch { found: version, expected: WIRE_VERSION });
        }
        let k = r.u8()?;
        if k != kind as u8 {
            return Err(Error::MalformedEncoding(format!(
                "object kind {k:#04x}, expected {:#04x}",
                kind as u8
            )));
        }
        Ok(r)
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() < n {
            return Err(Error::MalformedEncoding("truncated input".into()));
        }
        let (head, rest) = self.buf.split_at(n);
        self.buf = rest;
        Ok(head)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().unwrap())
    }

    pub fn var_bytes(&mut self) -> Result<&'a [u8]> {
        let len = self.u32()? as usize;
        self.take(len)
    }

    pub fn scalar<F: PrimeField>(&mut self) -> Result<F> {
        scalar_from_bytes(self.take(SCALAR_BYTES)?)
    }

    pub fn element<F: PrimeField, T: GroupElement<F>>(&mut self) -> Result<T> {
        deserialize_element(self.take(1 + T::ENCODED_LEN)?)
    }

    /// Errors unless every byte was consumed.
    pub fn finish(self) -> Result<()> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(Error::MalformedEncoding(format!("{} trailing bytes", self.buf.len())))
        }
    }
}
