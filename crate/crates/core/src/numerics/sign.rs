use super::certified::CertifiedReal;
use crate::error::Result;

/// Verdict of an adaptive sign decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    /// Zero stayed inside the enclosure up to the precision budget.
    Undecided,
}

impl Sign {
    pub fn is_decided(self) -> bool {
        self != Sign::Undecided
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
            Sign::Undecided => "undecided",
        }
    }
}

/// Sign of a single enclosure, without refinement.
pub fn sign_of(x: &CertifiedReal) -> Sign {
    if x.is_exact() && x.midpoint().is_zero() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Positive
    } else if x.is_negative() {
        Sign::Negative
    } else {
        Sign::Undecided
    }
}

/// Evaluates `value_fn` at 64, 128, ... bits (capped at `max_bits`) until
/// its enclosure excludes zero.
pub fn decide_sign<F>(value_fn: F, max_bits: u32) -> Sign
where
    F: Fn(u32) -> Result<CertifiedReal>,
{
    decide_sign_from(64, max_bits, value_fn)
}

/// [`decide_sign`] starting from `start_bits`.
pub fn decide_sign_from<F>(start_bits: u32, max_bits: u32, value_fn: F) -> Sign
where
    F: Fn(u32) -> Result<CertifiedReal>,
{
    let mut bits = start_bits.clamp(8, max_bits.max(8));
    loop {
        if let Ok(x) = value_fn(bits) {
            let s = sign_of(&x);
            if s.is_decided() {
                return s;
            }
        }
        if bits >= max_bits {
            return Sign::Undecided;
        }
        bits = bits.saturating_mul(2).min(max_bits);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::elementary::ln_ratio_enclosure;
    use crate::numerics::rational::{ratio, Rational};

    #[test]
    fn constant_enclosures() {
        let three = CertifiedReal::new(&ratio(3, 1), &ratio(1, 4), 64);
        assert_eq!(decide_sign(|_| Ok(three.clone()), 4096), Sign::Positive);
        assert_eq!(decide_sign(|b| Ok(CertifiedReal::zero(b)), 4096), Sign::Zero);
        let straddle = CertifiedReal::new(&ratio(1, 100), &ratio(1, 10), 64);
        assert_eq!(decide_sign(|_| Ok(straddle.clone()), 256), Sign::Undecided);
    }

    #[test]
    fn h2_at_three_is_negative() {
        // 3/8 + 1/4 + ln(1/2)
        let h = |bits| {
            let log = ln_ratio_enclosure(&ratio(2, 1), &ratio(4, 1), bits)?;
            Ok(log.add_rational(&ratio(5, 8)))
        };
        assert_eq!(decide_sign(h, 4096), Sign::Negative);
    }

    #[test]
    fn refines_until_separated() {
        // 2^-100 needs more than 64 bits of radius to separate from zero.
        let tiny = Rational::new(1, num_bigint::BigInt::from(1u8) << 100u32);
        let f = |bits: u32| {
            let rad = Rational::new(1, num_bigint::BigInt::from(1u8) << bits);
            Ok(CertifiedReal::new(&tiny, &rad, bits))
        };
        assert_eq!(decide_sign(f, 4096), Sign::Positive);
        assert_eq!(decide_sign(f, 64), Sign::Undecided);
    }
}
