use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{decimal_len, pow10, Rational};
use crate::error::{Error, Result};

/// Decimal fixed-point real with a rigorous absolute error bound.
///
/// The represented value is `mantissa / 10^scale`; the true quantity it stands
/// for lies within `err * 10^-scale` of it. Every arithmetic operation widens
/// `err` by the worst-case propagated and rounding error, so [`HpReal::digits`]
/// stays a valid guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpReal {
    mantissa: BigInt,
    scale: u32,
    err: BigUint,
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn upow10(k: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), k as usize)
}

impl HpReal {
    pub fn new(mantissa: BigInt, scale: u32, err: BigUint) -> Self {
        HpReal { mantissa, scale, err }
    }

    pub fn zero(scale: u32) -> Self {
        HpReal::new(BigInt::zero(), scale, BigUint::zero())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        HpReal::new(n.into(), 0, BigUint::zero())
    }

    /// `floor(r * 10^scale)`, with one ulp of error when inexact.
    pub fn from_rational(r: &Rational, scale: u32) -> Self {
        let scaled = r.numer() * pow10(scale);
        let (q, rem) = scaled.div_mod_floor(r.denom());
        let err = if rem.is_zero() { BigUint::zero() } else { BigUint::one() };
        HpReal::new(q, scale, err)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Error bound in units of `10^-scale`.
    pub fn error_ulps(&self) -> &BigUint {
        &self.err
    }

    pub fn error_bound(&self) -> Rational {
        Rational::new(BigInt::from(self.err.clone()), pow10(self.scale))
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    /// Number of guaranteed-correct decimal places: the largest `d` with
    /// `err * 10^-scale <= 10^-d`. Exact values report their full scale.
    pub fn digits(&self) -> i64 {
        if self.err.is_zero() {
            return self.scale as i64;
        }
        // smallest k with 10^k >= err
        let e = BigInt::from(self.err.clone());
        let mut k = decimal_len(&e) as i64;
        if k > 0 && e <= pow10((k - 1) as u32) {
            k -= 1;
        }
        self.scale as i64 - k
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    pub fn with_error(mut self, extra_ulps: &BigUint) -> Self {
        self.err += extra_ulps;
        self
    }

    /// Re-expresses the value at another scale. Down-scaling floors and adds
    /// one ulp of rounding error.
    pub fn rescale(&self, scale: u32) -> HpReal {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = scale - self.scale;
                HpReal::new(&self.mantissa * pow10(k), scale, &self.err * upow10(k))
            }
            Ordering::Less => {
                let k = self.scale - scale;
                let (q, r) = self.mantissa.div_mod_floor(&pow10(k));
                let mut err = ceil_div(&self.err, &upow10(k));
                if !r.is_zero() {
                    err += 1u32;
                }
                HpReal::new(q, scale, err)
            }
        }
    }

    fn aligned(&self, other: &HpReal) -> (HpReal, HpReal) {
        let s = self.scale.max(other.scale);
        (self.rescale(s), other.rescale(s))
    }

    pub fn abs(&self) -> HpReal {
        HpReal::new(self.mantissa.abs(), self.scale, self.err.clone())
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Compares the represented values, ignoring error bounds.
    pub fn cmp_value(&self, other: &HpReal) -> Ordering {
        let (a, b) = self.aligned(other);
        a.mantissa.cmp(&b.mantissa)
    }

    /// True when `|self|` is provably below `10^-digits`.
    pub fn definitely_below_pow10(&self, digits: u32) -> bool {
        let s = self.scale.max(digits);
        let v = self.rescale(s);
        let bound = pow10(s - digits);
        v.mantissa.abs() + BigInt::from(v.err.clone()) < bound
    }

    /// Value is bounded away from zero by more than its error.
    pub fn is_certainly_nonzero(&self) -> bool {
        self.mantissa.magnitude() > &self.err
    }

    pub fn mul_int(&self, k: i64) -> HpReal {
        HpReal::new(
            &self.mantissa * k,
            self.scale,
            &self.err * BigUint::from(k.unsigned_abs()),
        )
    }

    /// Multiplies by an exact rational, keeping the scale.
    pub fn mul_rational(&self, r: &Rational) -> HpReal {
        let num = &self.mantissa * r.numer();
        let (q, rem) = num.div_mod_floor(r.denom());
        let mut err = ceil_div(
            &(&self.err * r.numer().magnitude()),
            r.denom().magnitude(),
        );
        if !rem.is_zero() {
            err += 1u32;
        }
        HpReal::new(q, self.scale, err)
    }

    pub fn mul(&self, other: &HpReal) -> HpReal {
        let (a, b) = self.aligned(other);
        let s = a.scale;
        let ua = a.mantissa.magnitude();
        let ub = b.mantissa.magnitude();
        let (q, r) = (&a.mantissa * &b.mantissa).div_mod_floor(&pow10(s));
        let spread = ua * &b.err + ub * &a.err + &a.err * &b.err;
        let mut err = ceil_div(&spread, &upow10(s));
        if !r.is_zero() {
            err += 1u32;
        }
        HpReal::new(q, s, err)
    }

    /// `self / other` at the requested scale.
    pub fn div(&self, other: &HpReal, scale: u32) -> Result<HpReal> {
        let (a, b) = self.aligned(other);
        if !b.is_certainly_nonzero() {
            return Err(Error::Evaluation(
                "division by a value indistinguishable from zero".into(),
            ));
        }
        let (q, r) = (&a.mantissa * pow10(scale)).div_mod_floor(&b.mantissa);
        let ua = a.mantissa.magnitude();
        let ub = b.mantissa.magnitude();
        let spread = (ua * &b.err + ub * &a.err) * upow10(scale);
        let mut err = ceil_div(&spread, &(ub * (ub - &b.err)));
        if !r.is_zero() {
            err += 1u32;
        }
        Ok(HpReal::new(q, scale, err))
    }

    pub fn recip(&self, scale: u32) -> Result<HpReal> {
        HpReal::from_integer(1).div(self, scale)
    }

    pub fn sqrt(&self, scale: u32) -> Result<HpReal> {
        if self.mantissa.is_negative() && self.mantissa.magnitude() > &self.err {
            return Err(Error::Domain("square root of a negative value".into()));
        }
        let v = self.rescale(2 * scale);
        let a = v.mantissa.magnitude().clone();
        let m = a.sqrt();
        let exact = &m * &m == a;
        let mut err = BigUint::zero();
        if !v.err.is_zero() {
            if v.err >= a {
                return Err(Error::Evaluation(
                    "square root argument too close to zero for its error".into(),
                ));
            }
            let low = (&a - &v.err).sqrt();
            if low.is_zero() {
                return Err(Error::Evaluation("square root argument too imprecise".into()));
            }
            err = ceil_div(&v.err, &low);
        }
        if !exact {
            err += 1u32;
        }
        Ok(HpReal::new(BigInt::from(m), scale, err))
    }

    /// `e^self` at the requested scale.
    pub fn exp(&self, scale: u32) -> Result<HpReal> {
        let x = self.to_rational();
        let r = x.abs();
        let whole = r.to_integer().to_u64().ok_or_else(|| {
            Error::Evaluation("exponent too large".into())
        })?;
        // halve until |y| < 2^-10, then square back
        let halvings = (64 - whole.leading_zeros()) + 10;
        let mag = (whole as f64 * std::f64::consts::LOG10_E).ceil() as u32 + 1;
        let work = scale + mag + (halvings as f64 * 0.302).ceil() as u32 + 12;
        let y = Rational::new(
            r.numer().clone(),
            r.denom() * (BigInt::one() << halvings),
        );
        let one = pow10(work);
        let y_m = HpReal::from_rational(&y, work).mantissa;
        let mut sum = one.clone();
        let mut term = one.clone();
        let mut k = 1u64;
        loop {
            term = (&term * &y_m) / (&one * k);
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        for _ in 0..halvings {
            sum = (&sum * &sum) / &one;
        }
        let mut val = HpReal::new(sum, work, BigUint::zero());
        if x.is_negative() {
            val = val.recip(work)?;
        }
        let mut out = val.rescale(scale);
        out.err = BigUint::from(2u32);
        // propagated input error: |e^x| (e^eps - 1) <= 2 |e^x| eps for eps <= 1
        if !self.err.is_zero() {
            let spread = (out.mantissa.magnitude() + 1u32) * &self.err * 2u32;
            out.err += ceil_div(&spread, &upow10(self.scale));
        }
        Ok(out)
    }

    /// Natural logarithm at the requested scale.
    pub fn ln(&self, scale: u32) -> Result<HpReal> {
        if !self.mantissa.is_positive() || self.mantissa.magnitude() <= &self.err {
            return Err(Error::Domain("logarithm of a non-positive value".into()));
        }
        let x = self.to_rational();
        // x = m * 2^k with m in [1, 2)
        let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
        let two = Rational::from_integer(BigInt::from(2));
        let pow2 = |k: i64| -> Rational {
            if k >= 0 {
                Rational::from_integer(BigInt::one() << k as u64)
            } else {
                Rational::new(BigInt::one(), BigInt::one() << (-k) as u64)
            }
        };
        let mut m = &x / pow2(k);
        while m >= two {
            k += 1;
            m = &x / pow2(k);
        }
        while m < Rational::one() {
            k -= 1;
            m = &x / pow2(k);
        }
        let work = scale + 12 + decimal_len(&BigInt::from(k)) ;
        let t = (&m - Rational::one()) / (&m + Rational::one());
        let mut acc = atanh_fixed(&t, work).mul_int(2);
        if k != 0 {
            let ln2 = atanh_fixed(&super::rational::rat(1, 3), work).mul_int(2);
            acc = &acc + &ln2.mul_int(k);
        }
        let mut out = acc.rescale(scale);
        out.err += 1u32;
        if !self.err.is_zero() {
            let a = self.mantissa.magnitude();
            let spread = &self.err * upow10(scale);
            out.err += ceil_div(&spread, &(a - &self.err));
        }
        Ok(out)
    }

    /// Human-facing "d digits" rendering: truncated toward zero, showing
    /// `max(1, d - integer_length)` decimals.
    pub fn format_digits(&self, digits: u32) -> String {
        let int_part = self.mantissa.abs() / pow10(self.scale);
        let int_len = if int_part.is_zero() { 0 } else { decimal_len(&int_part) };
        let decimals = digits.saturating_sub(int_len).max(1);
        self.truncated_decimals(decimals)
    }

    /// Like [`HpReal::format_digits`], but rounded to nearest (ties away
    /// from zero) instead of truncated.
    pub fn format_digits_rounded(&self, digits: u32) -> String {
        let int_part = self.mantissa.abs() / pow10(self.scale);
        let int_len = if int_part.is_zero() { 0 } else { decimal_len(&int_part) };
        let decimals = digits.saturating_sub(int_len).max(1);
        if decimals >= self.scale {
            return self.truncated_decimals(decimals);
        }
        let half = pow10(self.scale - decimals) / 2;
        let mag: BigInt = self.mantissa.abs() + half;
        let m = if self.mantissa.is_negative() { -mag } else { mag };
        HpReal::new(m, self.scale, self.err.clone()).truncated_decimals(decimals)
    }

    /// Truncates toward zero to `decimals` places.
    pub fn truncated_decimals(&self, decimals: u32) -> String {
        let mag = self.mantissa.abs();
        let shown = if decimals >= self.scale {
            mag * pow10(decimals - self.scale)
        } else {
            mag / pow10(self.scale - decimals)
        };
        let s = shown.to_string();
        let d = decimals as usize;
        let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
        let (ip, fp) = padded.split_at(padded.len() - d);
        let sign = if self.mantissa.is_negative() && !shown.is_zero() { "-" } else { "" };
        if d == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// Short scientific rendering (`1.23e-35`) for reports.
    pub fn to_sci(&self, significant: usize) -> String {
        if self.mantissa.is_zero() {
            return "0".into();
        }
        let s = self.mantissa.magnitude().to_string();
        let exp = s.len() as i64 - 1 - self.scale as i64;
        let sig = significant.max(1).min(s.len());
        let mut body = s[..1].to_string();
        if sig > 1 {
            body.push('.');
            body.push_str(&s[1..sig]);
        }
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        format!("{sign}{body}e{exp}")
    }

    /// Lossless text form `mantissa e-scale ~ err`, e.g. `12345e-10~2`.
    pub fn to_exact_string(&self) -> String {
        format!("{}e-{}~{}", self.mantissa, self.scale, self.err)
    }

    pub fn parse_exact(s: &str) -> Result<HpReal> {
        let bad = || Error::Parse(format!("malformed high-precision value `{s}`"));
        let (body, err) = s.split_once('~').ok_or_else(bad)?;
        let (m, sc) = body.split_once("e-").ok_or_else(bad)?;
        Ok(HpReal::new(
            m.parse().map_err(|_| bad())?,
            sc.parse().map_err(|_| bad())?,
            err.parse().map_err(|_| bad())?,
        ))
    }

    /// `floor(-log10 |self|)` clipped to the scale: the number of leading
    /// zero decimals of a small quantity such as an error.
    pub fn leading_zero_decimals(&self) -> u32 {
        if self.mantissa.is_zero() {
            return self.scale;
        }
        let len = decimal_len(&self.mantissa);
        self.scale.saturating_sub(len)
    }
}

/// `atanh(t)` for rational `0 <= t < 1/2`, as a fixed-point series.
fn atanh_fixed(t: &Rational, scale: u32) -> HpReal {
    let work = scale + 6;
    let one = pow10(work);
    let tm = HpReal::from_rational(t, work).mantissa;
    let t2 = (&tm * &tm) / &one;
    let mut power = tm.clone();
    let mut sum = tm;
    let mut k = 1u64;
    let mut terms = 1u64;
    loop {
        power = (&power * &t2) / &one;
        if power.is_zero() {
            break;
        }
        sum += &power / (2 * k + 1);
        k += 1;
        terms += 1;
    }
    // each term floors once and the running power drifts by at most one ulp
    // per step; geometric tail bounded by the last term.
    let err_work = BigUint::from(3 * terms + 2);
    HpReal::new(sum, work, err_work).rescale(scale)
}

impl Add<&HpReal> for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        let (a, b) = self.aligned(rhs);
        HpReal::new(a.mantissa + b.mantissa, a.scale, a.err + b.err)
    }
}

impl Sub<&HpReal> for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        let (a, b) = self.aligned(rhs);
        HpReal::new(a.mantissa - b.mantissa, a.scale, a.err + b.err)
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal::new(-&self.mantissa, self.scale, self.err.clone())
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        -&self
    }
}

impl fmt::Display for HpReal {
    /// Prints every guaranteed decimal place.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.digits().clamp(0, self.scale as i64) as u32;
        f.write_str(&self.truncated_decimals(d))
    }
}

impl serde::Serialize for HpReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_exact_string())
    }
}

impl<'de> serde::Deserialize<'de> for HpReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        HpReal::parse_exact(&s).map_err(serde::de::Error::custom)
    }
}

impl From<Sign> for HpReal {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Minus => HpReal::from_integer(-1),
            Sign::NoSign => HpReal::from_integer(0),
            Sign::Plus => HpReal::from_integer(1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn hp(r: Rational, s: u32) -> HpReal {
        HpReal::from_rational(&r, s)
    }

    #[test]
    fn from_rational_floors() {
        let x = hp(rat(1, 3), 5);
        assert_eq!(x.mantissa(), &BigInt::from(33333));
        assert_eq!(x.error_ulps(), &BigUint::one());
        let y = hp(rat(-1, 3), 3);
        assert_eq!(y.mantissa(), &BigInt::from(-334));
        assert!(hp(rat(1, 4), 2).is_exact());
    }

    #[test]
    fn digits_from_error() {
        let x = HpReal::new(BigInt::from(12345), 10, BigUint::from(1u32));
        assert_eq!(x.digits(), 10);
        let y = HpReal::new(BigInt::from(12345), 10, BigUint::from(7u32));
        assert_eq!(y.digits(), 9);
        let z = HpReal::new(BigInt::from(12345), 10, BigUint::from(10u32));
        assert_eq!(z.digits(), 9);
        let w = HpReal::new(BigInt::from(12345), 10, BigUint::from(11u32));
        assert_eq!(w.digits(), 8);
    }

    #[test]
    fn arithmetic_tracks_truth() {
        let third = hp(rat(1, 3), 30);
        let seventh = hp(rat(1, 7), 30);
        let cases = [
            (&third + &seventh, rat(10, 21)),
            (&third - &seventh, rat(4, 21)),
            (third.mul(&seventh), rat(1, 21)),
            (third.div(&seventh, 30).unwrap(), rat(7, 3)),
        ];
        for (v, truth) in cases {
            let diff = (v.to_rational() - truth).abs();
            assert!(diff <= v.error_bound(), "{v:?}");
            assert!(v.digits() >= 28);
        }
    }

    #[test]
    fn division_by_fuzzy_zero_fails() {
        let z = HpReal::new(BigInt::from(1), 5, BigUint::from(2u32));
        assert!(matches!(HpReal::from_integer(1).div(&z, 5), Err(Error::Evaluation(_))));
    }

    #[test]
    fn sqrt_exp_ln() {
        let two = HpReal::from_integer(2);
        let r2 = two.sqrt(40).unwrap();
        assert_eq!(r2.truncated_decimals(38), "1.41421356237309504880168872420969807856");
        let e = HpReal::from_integer(1).exp(40).unwrap();
        assert!(e.digits() >= 39);
        assert_eq!(e.truncated_decimals(38), "2.71828182845904523536028747135266249775");
        let einv = HpReal::from_integer(-1).exp(40).unwrap();
        assert_eq!(einv.truncated_decimals(38), "0.36787944117144232159552377016146086744");
        let ln2 = two.ln(40).unwrap();
        assert!(ln2.digits() >= 39);
        assert_eq!(ln2.truncated_decimals(38), "0.69314718055994530941723212145817656807");
        let ln10 = HpReal::from_integer(10).ln(30).unwrap();
        assert_eq!(ln10.truncated_decimals(28), "2.3025850929940456840179914546");
        let back = ln10.exp(25).unwrap();
        assert!((back.to_rational() - int(10)).abs() < rat(1, 1_000_000_000_000_000));
        assert!(HpReal::from_integer(-3).ln(10).is_err());
    }

    #[test]
    fn formatting() {
        let pi = hp(rat(314159265358979, 100000000000000), 14);
        assert_eq!(pi.format_digits(12), "3.14159265358");
        assert_eq!(pi.format_digits(1), "3.1");
        let g = hp(rat(915965594177219, 1_000_000_000_000_000), 15);
        assert_eq!(g.format_digits(12), "0.915965594177");
        assert_eq!(g.format_digits(1), "0.9");
        assert_eq!(pi.format_digits_rounded(12), "3.14159265359");
        assert_eq!(g.format_digits_rounded(10), "0.9159655942");
        let neg = hp(rat(-5, 4), 3);
        assert_eq!(neg.truncated_decimals(1), "-1.2");
        assert_eq!(hp(rat(3, 100000), 8).to_sci(3), "3.00e-5");
        let x = HpReal::new(BigInt::from(-1234), 7, BigUint::from(3u32));
        assert_eq!(HpReal::parse_exact(&x.to_exact_string()).unwrap(), x);
    }
}
