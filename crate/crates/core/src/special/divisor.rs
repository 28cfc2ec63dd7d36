use crate::{Error, Result};

/// `σ_k(n) = Σ_{d | n} d^k`, with overflow reported instead of wrapped.
pub fn divisor_sigma(k: u32, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "divisor_sigma argument",
            index: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let pow = |d: u64| d.checked_pow(k).ok_or(Error::Overflow("divisor_sigma"));
    let mut total: u64 = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total = total
                .checked_add(pow(d)?)
                .ok_or(Error::Overflow("divisor_sigma"))?;
            let e = n / d;
            if e != d {
                total = total
                    .checked_add(pow(e)?)
                    .ok_or(Error::Overflow("divisor_sigma"))?;
            }
        }
        d += 1;
    }
    Ok(total)
}
