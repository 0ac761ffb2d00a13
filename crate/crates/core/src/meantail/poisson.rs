use crate::distributions::{poisson_cdf_leq, PoissonParams};
use crate::error::Result;
use crate::numerics::{CertifiedReal, Rational};

/// `P(X_lambda <= lambda) = P(X_lambda <= floor(lambda))`.
pub fn poisson_mean_tail(lambda: &Rational, precision_bits: u32) -> Result<CertifiedReal> {
    let params = PoissonParams::new(lambda.clone())?;
    let floor = u64::try_from(lambda.floor()).expect("lambda > 0");
    poisson_cdf_leq(&params, floor, precision_bits)
}

/// `P(X_{k+1} <= k)`: the unattained infimum of the mean-tail on
/// `lambda in [k, k+1)`, approached as `lambda` rises to `k + 1`.
pub fn poisson_piece_infimum(k: u64, precision_bits: u32) -> Result<CertifiedReal> {
    let params = PoissonParams::new(Rational::from_integer(k + 1))?;
    poisson_cdf_leq(&params, k, precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{exp_enclosure, ratio};

    #[test]
    fn mean_tail_below_one_is_exp() {
        let v = poisson_mean_tail(&ratio(1, 2), 128).unwrap();
        let e = exp_enclosure(&ratio(-1, 2), 128).unwrap();
        assert!(v.overlaps(&e));
    }

    #[test]
    fn mean_tail_examples() {
        let v = poisson_mean_tail(&ratio(1, 1), 128).unwrap();
        assert_eq!(v.midpoint().to_decimal_string(10), "0.7357588823");
        let v = poisson_mean_tail(&ratio(2, 1), 128).unwrap();
        assert_eq!(v.midpoint().to_decimal_string(10), "0.6766764162");
    }

    #[test]
    fn piece_infimum_examples() {
        let d = |k| poisson_piece_infimum(k, 128).unwrap().midpoint().to_decimal_string(7);
        assert_eq!(d(0), "0.3678794");
        assert_eq!(d(1), "0.4060058");
        assert_eq!(d(2), "0.4231901");
    }
}
