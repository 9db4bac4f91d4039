use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form (positive denominator, reduced).
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial undefined for {n}")));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Parses `p`, `p/q`, a finite decimal such as `-1.25`, or either of the
/// latter with a decimal exponent (`1e-25`, `2.5E3`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        if m.contains('/') {
            return Err(bad());
        }
        let e: i32 = e.parse().map_err(|_| bad())?;
        let p = Rational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
        let m = parse_rational(m)?;
        return Ok(if e >= 0 { m * p } else { m / p });
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = ip.starts_with('-');
        let whole: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), fp.len());
        let frac = Rational::new(frac, denom);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac;
        return Ok(if negative { -v } else { v });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Number of decimal digits of |n| (0 has one digit).
pub(crate) fn decimal_len(n: &BigInt) -> u32 {
    if n.is_zero() {
        return 1;
    }
    // bits * log10(2) is within one of the true length
    let bits = n.bits();
    let est = ((bits as f64 - 1.0) * std::f64::consts::LOG10_2).floor() as u32;
    let mut len = est.max(1);
    let abs = n.abs();
    while abs >= num_traits::pow(BigInt::from(10), len as usize) {
        len += 1;
    }
    while len > 1 && abs < num_traits::pow(BigInt::from(10), (len - 1) as usize) {
        len -= 1;
    }
    len
}

pub(crate) fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert!(matches!(double_factorial(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("-2.5E2").unwrap(), int(-250));
        assert!(parse_rational("1/2e3").is_err());
    }

    #[test]
    fn decimal_len_edges() {
        for (n, len) in [(0i64, 1u32), (9, 1), (10, 2), (99, 2), (100, 3), (-12345, 5)] {
            assert_eq!(decimal_len(&BigInt::from(n)), len, "{n}");
        }
        assert_eq!(decimal_len(&pow10(50)), 51);
        assert_eq!(decimal_len(&(pow10(50) - 1)), 50);
    }
}
