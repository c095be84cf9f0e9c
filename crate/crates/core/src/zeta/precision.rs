use rug::Float;

use crate::error::{Error, Result};
use crate::mp::Prec;

pub const MIN_BITS: u32 = 64;

/// Working precision and the absolute error an evaluation should reach.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionContext {
    bits: Prec,
    target_abs_error: Float,
}

impl PrecisionContext {
    /// `bits` of working precision with a target of `2^-bits`.
    pub fn new(bits: Prec) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::InvalidArgument(format!(
                "precision must be at least {MIN_BITS} bits, got {bits}"
            )));
        }
        let target = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
        Ok(PrecisionContext {
            bits,
            target_abs_error: target,
        })
    }

    pub fn with_target(bits: Prec, target_abs_error: Float) -> Result<Self> {
        let mut ctx = Self::new(bits)?;
        if !(target_abs_error.is_finite() && target_abs_error > 0) {
            return Err(Error::InvalidArgument("target error must be positive and finite".into()));
        }
        ctx.target_abs_error = Float::with_val(bits, target_abs_error);
        Ok(ctx)
    }

    pub fn bits(&self) -> Prec {
        self.bits
    }

    pub fn target_abs_error(&self) -> &Float {
        &self.target_abs_error
    }

    /// `log2` of the target, as f64 (safe for targets far below f64 range).
    pub fn target_log2(&self) -> f64 {
        Float::with_val(64, self.target_abs_error.log2_ref()).to_f64()
    }

    /// Working precision with `extra` guard bits.
    pub fn working(&self, extra: u32) -> Prec {
        self.bits + extra
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(PrecisionContext::new(63).is_err());
        let c = PrecisionContext::new(128).unwrap();
        assert_eq!(c.target_log2(), -128.0);
        assert!(PrecisionContext::with_target(128, Float::new(128)).is_err());
        let c = PrecisionContext::with_target(128, Float::with_val(128, 1e-20)).unwrap();
        assert!((c.target_log2() + 66.44).abs() < 0.01);
    }
}
