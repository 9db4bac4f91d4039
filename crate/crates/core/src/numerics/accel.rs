//! Acceleration of alternating series `sum_{k>=0} (-1)^k a_k`.
//!
//! Two independent schemes are provided so that each can cross-check the other:
//! the Chebyshev-weighted method of Cohen, Rodriguez Villegas and Zagier, and
//! repeated averaging of partial sums (the binomial Euler mean).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hpreal::HpReal;
use super::rational::{decimal_len, pow10, Rational};

/// `log10(3 + sqrt 8)`, rounded down.
const CVZ_RATE: f64 = 0.7655;

fn floor_scaled(r: &Rational, scale: u32) -> BigInt {
    (r.numer() * pow10(scale)).div_floor(r.denom())
}

/// Chebyshev-weighted acceleration.
///
/// Rigorous when `a_k` is a moment sequence `int_0^1 x^k dmu` of a positive
/// measure, with `a0_bound >= a_0`. The truncation error after `n` weights is
/// at most `a_0 / d_n` where `d_n = T_n(3) ~ 5.83^n`.
pub fn alternating_sum_cvz<F>(term: F, a0_bound: &Rational, scale: u32) -> HpReal
where
    F: Fn(u64) -> Rational,
{
    let bound_digits = decimal_len(&(a0_bound.ceil().to_integer() * 2 + 1));
    let n = ((scale + 4 + bound_digits) as f64 / CVZ_RATE).ceil() as u64 + 1;
    let work = scale + 4 + decimal_len(&BigInt::from(n));

    // d = T_n(3)
    let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
    for _ in 1..n {
        let t2 = &t1 * 6 - &t0;
        t0 = t1;
        t1 = t2;
    }
    let d = if n == 0 { t0 } else { t1 };

    let mut b = BigInt::from(-1);
    let mut c = -d.clone();
    let mut s = BigInt::zero();
    let mut weight_total = BigInt::zero();
    let nn = BigInt::from(n);
    for k in 0..n {
        c = &b - &c;
        s += &c * floor_scaled(&term(k), work);
        weight_total += c.abs();
        let kk = BigInt::from(k);
        let num: BigInt = &b * 2 * (&kk + &nn) * (&kk - &nn);
        let den = (2 * k + 1) * (k + 1);
        let (q, r) = num.div_rem(&BigInt::from(den));
        debug_assert!(r.is_zero(), "Chebyshev weight not integral");
        b = q;
    }
    let (m, rem) = s.div_mod_floor(&d);
    let ulps = |x: &BigInt| -> BigUint {
        let (q, r) = x.magnitude().div_rem(d.magnitude());
        if r.is_zero() {
            q
        } else {
            q + 1u32
        }
    };
    // term rounding (each floor is < 1 ulp, weighted by |c_k|), division
    // rounding, and truncation bound 2 a_0 / d.
    let mut err = ulps(&weight_total) + 1u32;
    if !rem.is_zero() {
        err += 1u32;
    }
    err += ulps(&floor_scaled(&(a0_bound * Rational::from_integer(BigInt::from(2))), work))
        + 1u32;
    HpReal::new(m, work, err).rescale(scale)
}

/// Binomial (Euler) mean of the partial sums `S_0..S_N`, obtained by averaging
/// adjacent partial sums `N` times. For smoothly decaying terms the error falls
/// like `2^-N`; the truncation part of the reported bound assumes this rate.
pub fn alternating_sum_averaged<F>(term: F, a0_bound: &Rational, scale: u32) -> HpReal
where
    F: Fn(u64) -> Rational,
{
    let work = scale + 6;
    let n = (3.33 * (work as f64 + decimal_len(&a0_bound.ceil().to_integer()) as f64)).ceil()
        as usize
        + 10;
    let mut sums = Vec::with_capacity(n + 1);
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let t = floor_scaled(&term(k as u64), work);
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
        sums.push(acc.clone());
    }
    let mut len = sums.len();
    while len > 1 {
        for i in 0..len - 1 {
            let avg = (&sums[i] + &sums[i + 1]).div_floor(&BigInt::from(2));
            sums[i] = avg;
        }
        len -= 1;
    }
    let m = sums.swap_remove(0);
    // partial sums carry up to n+1 ulps from floored terms, averaging adds n
    let tail = floor_scaled(a0_bound, work) >> n;
    let err = BigUint::from(2 * n as u64 + 3) + tail.magnitude() + 1u32;
    HpReal::new(m, work, err).rescale(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn leibniz(k: u64) -> Rational {
        rat(1, 2 * k as i64 + 1)
    }

    #[test]
    fn cvz_leibniz_is_quarter_pi() {
        let v = alternating_sum_cvz(leibniz, &int(1), 40);
        assert_eq!(v.truncated_decimals(38), "0.78539816339744830961566084581987572104");
        assert!(v.digits() >= 39);
    }

    #[test]
    fn averaged_ln2() {
        let v = alternating_sum_averaged(|k| rat(1, k as i64 + 1), &int(1), 30);
        assert_eq!(v.truncated_decimals(28), "0.6931471805599453094172321214");
    }

    #[test]
    fn methods_agree_on_catalan() {
        let g = |k: u64| {
            let d = 2 * k as i64 + 1;
            rat(1, d * d)
        };
        let a = alternating_sum_cvz(g, &int(1), 60);
        let b = alternating_sum_averaged(g, &int(1), 60);
        let diff = (&a - &b).abs();
        assert!(diff.definitely_below_pow10(57));
        assert!(a.to_string().starts_with("0.9159655941772190150546035149323841107741493742816721342664"));
    }
}
