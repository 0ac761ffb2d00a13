use num_bigint::BigInt;

use crate::distributions::{geometric_cdf_leq, GeometricParams};
use crate::error::{domain, Result};
use crate::numerics::Rational;

/// Mean-tail of the geometric law, `f(p) = 1 - (1-p)^floor(1/p)`.
pub fn geometric_f(p: &Rational) -> Result<Rational> {
    let params = GeometricParams::new(p.clone())?;
    let floor = i64::try_from(p.recip().floor()).map_err(|_| domain(format!("1/p too large for p = {p}")))?;
    Ok(geometric_cdf_leq(&params, floor))
}

/// Infimum of `f` on the piece `(1/(n+1), 1/n]`: `a_n = 1 - (n/(n+1))^n`.
pub fn geometric_a(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(domain("geometric piece index must be >= 1"));
    }
    let e = u32::try_from(n).map_err(|_| domain("piece index too large"))?;
    let den = BigInt::from(n + 1).pow(e);
    let num = &den - BigInt::from(n).pow(e);
    // n and n+1 are coprime, so (n+1)^n - n^n is coprime to (n+1)^n.
    Ok(Rational::from_canonical(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn f_examples() {
        assert_eq!(geometric_f(&ratio(1, 1)).unwrap(), ratio(1, 1));
        assert_eq!(geometric_f(&ratio(1, 2)).unwrap(), ratio(3, 4));
        assert_eq!(geometric_f(&ratio(2, 3)).unwrap(), ratio(2, 3));
        assert!(geometric_f(&ratio(0, 1)).is_err());
        assert!(geometric_f(&ratio(3, 2)).is_err());
    }

    #[test]
    fn a_examples() {
        assert_eq!(geometric_a(1).unwrap(), ratio(1, 2));
        assert_eq!(geometric_a(2).unwrap(), ratio(5, 9));
        assert_eq!(geometric_a(3).unwrap(), ratio(37, 64));
        assert!(geometric_a(0).is_err());
    }
}
