use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numerics::{format_rational, int, Rational};

/// Polynomial in `n` with rational coefficients, lowest degree first.
/// Trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// `c1 n + c0`.
    pub fn linear(c1: Rational, c0: Rational) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&int(n))
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `p(n + k)`.
    pub fn shifted(&self, k: &Rational) -> Poly {
        // Horner in the polynomial ring: p(n+k) = (...(c_d (n+k) + c_{d-1})(n+k) ...)
        let x = Poly::linear(Rational::one(), k.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::default(), |acc, c| acc.mul(&x).add(&Poly::constant(c.clone())))
    }

    /// Cauchy bound: every real root lies in `|n| < bound`.
    pub fn root_bound(&self) -> Rational {
        if self.coeffs.len() <= 1 {
            return Rational::zero();
        }
        let lead = self.leading().abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |m, c| if c > m { c } else { m });
        max + Rational::one()
    }

    /// Checks `sign(p(n)) == want` for every integer `n >= from` with
    /// `n = from (mod step)`. Returns the first offending index.
    pub fn sign_violation(&self, from: i64, step: i64, want: std::cmp::Ordering) -> Option<i64> {
        const SCAN_LIMIT: i64 = 1_000_000;
        let sign_of = |r: &Rational| r.cmp(&Rational::zero());
        if self.is_zero() {
            return (want != std::cmp::Ordering::Equal).then_some(from);
        }
        let bound = self.root_bound().ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        let end = bound.clamp(from, from.saturating_add(SCAN_LIMIT));
        let mut n = from;
        while n <= end {
            if sign_of(&self.eval_int(n)) != want {
                return Some(n);
            }
            n += step;
        }
        if end < bound {
            // could not scan up to the root bound; be conservative
            return Some(end);
        }
        // beyond every root the sign is that of the leading coefficient
        (sign_of(&self.leading()) != want).then_some(n)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rational, k: usize, first: bool) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if c.is_negative() { " - " } else { " + " })?;
    }
    let var = match k {
        0 => String::new(),
        1 => "n".into(),
        _ => format!("n^{k}"),
    };
    if k == 0 {
        f.write_str(&format_rational(&mag))
    } else if mag.is_one() {
        f.write_str(&var)
    } else {
        write!(f, "{}{}", format_rational(&mag), var)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, c, k, first)?;
            first = false;
        }
        Ok(())
    }
}

impl From<BigInt> for Poly {
    fn from(n: BigInt) -> Self {
        Poly::constant(Rational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use std::cmp::Ordering;

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[-1, 2]); // 2n - 1
        let sq = p.mul(&p);
        assert_eq!(sq, Poly::from_ints(&[1, -4, 4]));
        assert_eq!(sq.eval_int(3), int(25));
        assert_eq!(p.shifted(&int(1)), Poly::from_ints(&[1, 2]));
        assert_eq!(p.sub(&p), Poly::default());
        assert_eq!(p.pow(3).degree(), 3);
        assert_eq!(Poly::from_ints(&[3, 0, 4]).to_string(), "4n^2 + 3");
        assert_eq!(Poly::new(vec![rat(-1, 2), int(1)]).to_string(), "n - 1/2");
    }

    #[test]
    fn sign_scan() {
        let p = Poly::from_ints(&[-5, 1]); // n - 5
        assert_eq!(p.sign_violation(1, 1, Ordering::Greater), Some(1));
        assert_eq!(p.sign_violation(6, 1, Ordering::Greater), None);
        let q = Poly::from_ints(&[3, 0, 4]);
        assert_eq!(q.sign_violation(-10, 1, Ordering::Greater), None);
        let r = Poly::from_ints(&[0, -1]);
        assert_eq!(r.sign_violation(2, 2, Ordering::Less), None);
    }
}
