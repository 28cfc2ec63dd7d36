//! Complex literals of the form `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
//!
//! Real and imaginary parts are decimal floats and may carry exponents
//! (`1e-3+2.5E2i`). Whitespace is not allowed inside a literal.

use crate::{Complex64, Error, Result};

pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Domain(format!("malformed complex literal '{s}'"));
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s).ok_or_else(bad)?, 0.0));
    };
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, c)| {
            (c == '+' || c == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
        })
        .map(|(k, _)| k);
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    // Rust also accepts "inf", "nan" and "infinity"; literals here are finite.
    let ok = !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '+' | '-' | 'e' | 'E'));
    let v: f64 = if ok { s.parse().ok()? } else { return None };
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("1.0i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), c(0.3, 0.1));
        assert_eq!(parse_complex("0.3-i").unwrap(), c(0.3, -1.0));
        assert_eq!(parse_complex("-1e-3+2.5E2i").unwrap(), c(-1e-3, 250.0));
        assert_eq!(parse_complex("1e+2-3e-1i").unwrap(), c(100.0, -0.3));
    }

    #[test]
    fn rejected_forms() {
        for s in ["", "1 + 2i", "abc", "1+2j", "nan", "inf", "1+nani", "++1", "1..2"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = c(re, im);
            let lit = crate::report::complex_literal(z);
            prop_assert_eq!(parse_complex(&lit).unwrap(), z);
        }
    }
}
