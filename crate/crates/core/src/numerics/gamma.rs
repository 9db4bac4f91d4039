use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};


use super::constants::{guard_digits, pi_at};
use super::hpreal::HpReal;
use super::rational::{factorial, int, rat, Rational};
use crate::error::{Error, Result};

/// `Gamma(x)` for rational `x > 0` via Spouge's approximation.
///
/// With parameter `a`, `Gamma(z+1) = (z+a)^(z+1/2) e^-(z+a) (c_0 + sum c_k/(z+k))`
/// has relative error below `a^-1/2 (2 pi)^-(a+1/2)`; `a` is chosen so this
/// falls under the requested precision. Integer arguments take the exact
/// factorial path.
pub fn gamma_hp(x: &Rational, digits: u32) -> Result<HpReal> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    if x.is_integer() {
        let n = x.to_integer().to_u64().ok_or_else(|| Error::Domain("argument too large".into()))?;
        return Ok(HpReal::from_integer(factorial(n - 1)).rescale(digits));
    }
    // size estimate only: log10 Gamma(x) <= x log10 x for x >= 1
    let xf = x.to_f64().unwrap_or(f64::MAX);
    let magnitude = if xf > 1.0 { (xf * xf.log10()).ceil() as u32 + 1 } else { 1 };
    let rel = digits + guard_digits(digits) + magnitude + 2;
    let a = ((rel as f64 + 1.0) * std::f64::consts::LN_10 / (2.0 * std::f64::consts::PI).ln())
        .ceil() as u64
        + 1;
    let work = rel + (a as f64 * 0.45).ceil() as u32 + 20;

    let z = x.clone();
    let two_pi = pi_at(work + 2)?.mul_int(2);
    let mut series = two_pi.sqrt(work)?;
    for k in 1..a {
        let m = a - k;
        let ln_m = HpReal::from_integer(m).ln(work + 4)?;
        let exponent = &HpReal::from_integer(m) + &ln_m.mul_rational(&rat(2 * k as i64 - 1, 2));
        let mag = exponent.exp(work)?;
        let coeff = mag.mul_rational(&Rational::new(BigInt::one(), factorial(k - 1)));
        let term = coeff.mul_rational(&(Rational::one() / (&z + int(k as i64))));
        series = if k % 2 == 1 { &series + &term } else { &series - &term };
    }
    let za = &z + int(a as i64);
    let ln_za = HpReal::from_rational(&za, work + 8).ln(work + 4)?;
    let half = rat(1, 2);
    let log_pref = &ln_za.mul_rational(&(&z + &half)) - &HpReal::from_rational(&za, work + 4);
    let prefactor = log_pref.exp(work)?;
    let g_z1 = prefactor.mul(&series);

    // Spouge truncation: relative bound (2 pi)^-a < 10^-(0.798 a)
    let shift = (0.798 * a as f64).floor() as u32;
    let trunc = g_z1.mantissa().abs().magnitude() / num_traits::pow(BigUint::from(10u32), shift as usize)
        + 1u32;
    let g_z1 = g_z1.with_error(&trunc);
    let result = g_z1.mul_rational(&(Rational::one() / x));
    if result.digits() < digits as i64 {
        return Err(Error::Evaluation(format!(
            "gamma reached only {} digits of the requested {digits}",
            result.digits()
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::constants::pi_reference;

    #[test]
    fn half_is_sqrt_pi() {
        let g = gamma_hp(&rat(1, 2), 30).unwrap();
        let sqrt_pi = pi_reference(40).unwrap().sqrt(40).unwrap();
        assert!((&g - &sqrt_pi).definitely_below_pow10(29));
        assert_eq!(g.format_digits(10), "1.772453850");
        assert_eq!(gamma_hp(&rat(3, 2), 10).unwrap().format_digits(10), "0.8862269254");
    }

    #[test]
    fn integers_are_factorials() {
        assert_eq!(gamma_hp(&int(5), 12).unwrap().format_digits(2), "24.0");
        assert!(gamma_hp(&int(1), 5).unwrap().is_exact());
    }

    #[test]
    fn non_positive_rejected() {
        assert!(matches!(gamma_hp(&int(0), 5), Err(Error::Domain(_))));
        assert!(matches!(gamma_hp(&rat(-1, 2), 5), Err(Error::Domain(_))));
    }

    #[test]
    fn recurrence_holds() {
        for x in [rat(1, 3), rat(7, 4), rat(23, 2)] {
            let g = gamma_hp(&x, 25).unwrap();
            let g1 = gamma_hp(&(&x + int(1)), 25).unwrap();
            let diff = &g1 - &g.mul_rational(&x);
            assert!(diff.definitely_below_pow10(22), "{x}");
        }
    }
}
