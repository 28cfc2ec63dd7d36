use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest index served by the Bernoulli table.
pub const BERNOULLI_MAX: usize = 64;

// B_n with the x/(e^x - 1) convention, so B_1 = -1/2.
static TABLE: LazyLock<Vec<BigRational>> = LazyLock::new(|| {
    let mut table: Vec<BigRational> = Vec::with_capacity(BERNOULLI_MAX + 1);
    table.push(BigRational::from_integer(BigInt::from(1)));
    for n in 1..=BERNOULLI_MAX {
        // Σ_{k=0}^{n} C(n+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::from(1);
        for (k, b) in table.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    table
});

static TABLE_F64: LazyLock<Vec<f64>> = LazyLock::new(|| {
    TABLE
        .iter()
        .map(|b| b.to_f64().expect("Bernoulli numbers up to B_64 fit in f64"))
        .collect()
});

/// Exact Bernoulli number `B_n` for `n ≤ 64`.
pub fn bernoulli(n: usize) -> Result<BigRational> {
    TABLE.get(n).cloned().ok_or(Error::OutOfRange {
        what: "Bernoulli index",
        index: n as i64,
        min: 0,
        max: BERNOULLI_MAX as i64,
    })
}

/// `B_n` rounded to the nearest double.
pub fn bernoulli_f64(n: usize) -> Result<f64> {
    TABLE_F64.get(n).copied().ok_or(Error::OutOfRange {
        what: "Bernoulli index",
        index: n as i64,
        min: 0,
        max: BERNOULLI_MAX as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn low_order_values() {
        assert_eq!(bernoulli(0).unwrap(), ratio(1, 1));
        assert_eq!(bernoulli(1).unwrap(), ratio(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli(4).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), ratio(1, 42));
        assert_eq!(bernoulli(12).unwrap(), ratio(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for n in (3..=BERNOULLI_MAX).step_by(2) {
            assert!(bernoulli(n).unwrap().is_zero(), "B_{n}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(bernoulli(65), Err(Error::OutOfRange { .. })));
        assert!(bernoulli_f64(BERNOULLI_MAX).is_ok());
    }
}
