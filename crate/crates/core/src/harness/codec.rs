use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::MAX_ABS_PLAINTEXT;

/// Decimal fixed-point scales for gradients (`x`) and weights (`y`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCodec {
    pub x: u64,
    pub y: u64,
}

impl Default for FixedPointCodec {
    fn default() -> Self {
        Self { x: 1_000, y: 100 }
    }
}

fn is_power_of_ten(mut v: u64) -> bool {
    if v == 0 {
        return false;
    }
    while v.is_multiple_of(10) {
        v /= 10;
    }
    v == 1
}

impl FixedPointCodec {
    pub fn new(x: u64, y: u64) -> Result<Self> {
        let codec = Self { x, y };
        codec.validate()?;
        Ok(codec)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_power_of_ten(self.x) || !is_power_of_ten(self.y) {
            return Err(Error::ConfigParse(format!(
                "scales must be powers of ten, got x={} y={}",
                self.x, self.y
            )));
        }
        Ok(())
    }

    pub fn combined(&self) -> f64 {
        self.x as f64 * self.y as f64
    }

    pub fn encode_gradient(&self, v: f64) -> Result<i64> {
        encode(v, self.x)
    }

    pub fn encode_weight(&self, v: f64) -> Result<i64> {
        encode(v, self.y)
    }

    pub fn decode_sum(&self, sum: i64) -> f64 {
        decode(sum, self.combined())
    }

    /// Worst-case gap between the real weighted sum over `members` clients
    /// and its decoded fixed-point counterpart, given the largest weight and
    /// gradient magnitudes involved.
    pub fn quantization_bound(&self, members: usize, max_abs_weight: f64, max_abs_gradient: f64) -> f64 {
        let (sx, sy) = (self.x as f64, self.y as f64);
        let per_term = max_abs_weight / (2.0 * sx) + (max_abs_gradient + 1.0 / (2.0 * sx)) / (2.0 * sy);
        members as f64 * per_term
    }
}

/// `round(value · scale)`, refusing anything the scheme could not encrypt.
pub fn encode(value: f64, scale: u64) -> Result<i64> {
    let scaled = value * scale as f64;
    if !scaled.is_finite() || scaled.abs().round() > MAX_ABS_PLAINTEXT as f64 {
        return Err(Error::CodecOverflow(format!("{value} at scale {scale}")));
    }
    Ok(scaled.round() as i64)
}

pub fn decode(sum: i64, combined_scale: f64) -> f64 {
    sum as f64 / combined_scale
}
