use crate::distributions::{binomial_cdf_leq, BinomialParams};
use crate::error::{domain, Result};
use crate::numerics::Rational;

/// `q_m = P(B(n, m/n) <= m)`.
pub fn chvatal_q(n: u64, m: u64) -> Result<Rational> {
    if n < 2 {
        return Err(domain(format!("n must be >= 2, got {n}")));
    }
    if m > n {
        return Err(domain(format!("m must lie in [0, {n}], got {m}")));
    }
    let params = BinomialParams::new(n, Rational::new(m, n))?;
    Ok(binomial_cdf_leq(&params, m as i64))
}

/// All `q_m` for one `n` and the set of minimizing `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChvatalProfile {
    pub n: u64,
    pub q_values: Vec<Rational>,
    pub minimizers: Vec<u64>,
}

impl ChvatalProfile {
    pub fn minimum(&self) -> &Rational {
        &self.q_values[self.minimizers[0] as usize]
    }
}

/// Exact argmin of `q_m` over `m in {0..n}`; ties are all reported.
pub fn chvatal_argmin(n: u64) -> Result<ChvatalProfile> {
    let q_values = (0..=n).map(|m| chvatal_q(n, m)).collect::<Result<Vec<_>>>()?;
    let best = q_values.iter().min().expect("n >= 2").clone();
    let minimizers = (0..=n).filter(|&m| q_values[m as usize] == best).collect();
    Ok(ChvatalProfile { n, q_values, minimizers })
}

/// Integers nearest to `2n/3`: one element unless two candidates tie.
pub fn nearest_to_two_thirds(n: u64) -> Vec<u64> {
    let target = Rational::new(2 * n, 3u64);
    let lo = target.floor();
    let hi = target.ceil();
    let dist = |c: &num_bigint::BigInt| (&target - &Rational::from_integer(c.clone())).abs();
    let to_u64 = |c: num_bigint::BigInt| u64::try_from(c).expect("non-negative");
    match dist(&lo).cmp(&dist(&hi)) {
        std::cmp::Ordering::Less => vec![to_u64(lo)],
        std::cmp::Ordering::Greater => vec![to_u64(hi)],
        std::cmp::Ordering::Equal if lo == hi => vec![to_u64(lo)],
        std::cmp::Ordering::Equal => vec![to_u64(lo), to_u64(hi)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn q_examples() {
        assert_eq!(chvatal_q(2, 0).unwrap(), ratio(1, 1));
        assert_eq!(chvatal_q(2, 1).unwrap(), ratio(3, 4));
        assert_eq!(chvatal_q(3, 2).unwrap(), ratio(19, 27));
        assert!(chvatal_q(3, 4).is_err());
        assert!(chvatal_q(1, 0).is_err());
    }

    #[test]
    fn argmin_examples() {
        assert_eq!(chvatal_argmin(2).unwrap().minimizers, vec![1]);
        let p3 = chvatal_argmin(3).unwrap();
        assert_eq!(p3.minimizers, vec![2]);
        assert_eq!(p3.q_values, vec![ratio(1, 1), ratio(20, 27), ratio(19, 27), ratio(1, 1)]);
        assert_eq!(chvatal_argmin(6).unwrap().minimizers, vec![4]);
    }

    #[test]
    fn nearest_integer() {
        assert_eq!(nearest_to_two_thirds(2), vec![1]);
        assert_eq!(nearest_to_two_thirds(3), vec![2]);
        assert_eq!(nearest_to_two_thirds(4), vec![3]);
        assert_eq!(nearest_to_two_thirds(5), vec![3]);
    }
}
