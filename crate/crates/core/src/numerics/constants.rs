//! Reference oracles for pi, Catalan's constant and sqrt 3.
//!
//! Each constant is produced by one method and confirmed by a second,
//! unrelated one before it is handed out. Results are memoized at the largest
//! scale computed so far; smaller requests are served by rounding down.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::accel::{alternating_sum_averaged, alternating_sum_cvz};
use super::hpreal::HpReal;
use super::rational::{int, pow10, rat, Rational};
use crate::error::{Error, Result};

static MAX_DIGITS: AtomicU32 = AtomicU32::new(1000);

/// Current upper limit for user-facing reference requests.
pub fn max_reference_digits() -> u32 {
    MAX_DIGITS.load(Ordering::Relaxed)
}

pub fn set_max_reference_digits(max: u32) {
    MAX_DIGITS.store(max, Ordering::Relaxed);
}

/// Guard digits used on top of a requested precision: 10 plus 5%.
pub fn guard_digits(digits: u32) -> u32 {
    10 + digits.div_ceil(20)
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 {
        return Err(Error::Domain("digit count must be positive".into()));
    }
    let max = max_reference_digits();
    if digits > max {
        return Err(Error::Config { requested: digits, max });
    }
    Ok(())
}

fn check_scale(scale: u32) -> Result<()> {
    let max = max_reference_digits();
    let limit = 2 * max + guard_digits(max) + 200;
    if scale > limit {
        return Err(Error::Config { requested: scale, max: limit });
    }
    Ok(())
}

/// `atan(1/x)` for integer `x >= 2`, summed in fixed point.
pub fn atan_inv(x: u64, scale: u32) -> HpReal {
    let work = scale + 6;
    let x2 = BigInt::from(x) * x;
    let mut power = pow10(work) / x;
    let mut sum = power.clone();
    let mut k = 1u64;
    let mut terms = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let t = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
        terms += 1;
    }
    // two truncating divisions per term, plus the dropped tail (< 1 ulp)
    HpReal::new(sum, work, BigUint::from(2 * terms + 2)).rescale(scale)
}

/// `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_machin(scale: u32) -> HpReal {
    let w = scale + 3;
    (&atan_inv(5, w).mul_int(16) - &atan_inv(239, w).mul_int(4)).rescale(scale)
}

/// `24 atan(1/8) + 8 atan(1/57) + 4 atan(1/239)`.
pub fn pi_stormer(scale: u32) -> HpReal {
    let w = scale + 3;
    let s = &(&atan_inv(8, w).mul_int(24) + &atan_inv(57, w).mul_int(8))
        + &atan_inv(239, w).mul_int(4);
    s.rescale(scale)
}

fn catalan_term(k: u64) -> Rational {
    let d = BigInt::from(2 * k + 1);
    Rational::new(BigInt::one(), &d * &d)
}

/// `G = sum (-1)^k / (2k+1)^2` with Chebyshev-weighted acceleration.
/// The terms are the moments of `-ln(x) / (2 sqrt x)` on `[0, 1]`.
pub fn catalan_cvz(scale: u32) -> HpReal {
    alternating_sum_cvz(catalan_term, &int(1), scale)
}

/// `G` from the binomial mean of the defining series' partial sums.
pub fn catalan_averaged(scale: u32) -> HpReal {
    alternating_sum_averaged(catalan_term, &int(1), scale)
}

/// `ln 2 = sum (-1)^k / (k+1)`.
pub fn ln2_reference(scale: u32) -> HpReal {
    alternating_sum_cvz(|k| rat(1, k as i64 + 1), &int(1), scale)
}

/// `floor(sqrt(3) 10^scale)` by integer Newton iteration.
pub fn sqrt3_newton(scale: u32) -> HpReal {
    let n = pow10(2 * scale) * 3;
    let mut x = pow10(scale) * 2;
    loop {
        let y = (&x + &n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(&x * &x <= n && (&x + 1) * (&x + 1) > n);
    let exact = &x * &x == n;
    HpReal::new(x, scale, if exact { BigUint::zero() } else { BigUint::one() })
}

/// Fails unless the two values agree within their combined error bounds.
pub fn cross_check(name: &str, a: &HpReal, b: &HpReal) -> Result<()> {
    let diff = (a - b).abs();
    let slack = BigInt::from(diff.error_ulps().clone());
    if diff.mantissa() > &slack {
        return Err(Error::Evaluation(format!(
            "{name} oracles disagree: {} vs {}",
            a.to_sci(20),
            b.to_sci(20)
        )));
    }
    Ok(())
}

struct Cache(Mutex<Option<HpReal>>);

impl Cache {
    const fn new() -> Self {
        Cache(Mutex::new(None))
    }

    fn get(&self, scale: u32, compute: impl FnOnce(u32) -> Result<HpReal>) -> Result<HpReal> {
        let mut slot = self.0.lock().unwrap_or_else(|p| p.into_inner());
        if let Some(v) = slot.as_ref() {
            if v.scale() >= scale {
                return Ok(v.rescale(scale));
            }
        }
        // round the stored scale up so nearby requests reuse it
        let target = scale.div_ceil(32) * 32;
        let v = compute(target)?;
        let out = v.rescale(scale);
        *slot = Some(v);
        Ok(out)
    }
}

static PI: Cache = Cache::new();
static CATALAN: Cache = Cache::new();
static SQRT3: Cache = Cache::new();

/// pi at a working scale, dual-method checked and memoized.
pub fn pi_at(scale: u32) -> Result<HpReal> {
    check_scale(scale)?;
    PI.get(scale, |s| {
        let a = pi_machin(s);
        cross_check("pi", &a, &pi_stormer(s))?;
        Ok(a)
    })
}

/// G at a working scale, dual-method checked and memoized.
pub fn catalan_at(scale: u32) -> Result<HpReal> {
    check_scale(scale)?;
    CATALAN.get(scale, |s| {
        let a = catalan_cvz(s);
        cross_check("Catalan", &a, &catalan_averaged(s))?;
        Ok(a)
    })
}

/// sqrt 3 at a working scale, residual checked and memoized.
pub fn sqrt3_at(scale: u32) -> Result<HpReal> {
    check_scale(scale)?;
    SQRT3.get(scale, |s| {
        let r = sqrt3_newton(s);
        let lo = r.mantissa() * r.mantissa();
        let hi = (r.mantissa() + 1) * (r.mantissa() + 1);
        let three = pow10(2 * s) * 3;
        if !(lo <= three && three < hi) {
            return Err(Error::Evaluation("sqrt 3 residual check failed".into()));
        }
        Ok(r)
    })
}

fn at_digits(digits: u32, f: fn(u32) -> Result<HpReal>) -> Result<HpReal> {
    check_digits(digits)?;
    f(digits + guard_digits(digits))
}

/// pi with at least `digits` correct decimals.
pub fn pi_reference(digits: u32) -> Result<HpReal> {
    at_digits(digits, pi_at)
}

/// Catalan's constant with at least `digits` correct decimals.
pub fn catalan_reference(digits: u32) -> Result<HpReal> {
    at_digits(digits, catalan_at)
}

/// sqrt 3 with at least `digits` correct decimals.
pub fn sqrt3_reference(digits: u32) -> Result<HpReal> {
    at_digits(digits, sqrt3_at)
}

/// Supplies the transcendental atoms to expression evaluation.
pub trait ConstantSource: Send + Sync {
    fn pi(&self, scale: u32) -> Result<HpReal>;
    fn catalan(&self, scale: u32) -> Result<HpReal>;
    fn sqrt3(&self, scale: u32) -> Result<HpReal>;
}

/// The memoized dual-method oracles.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reference;

impl ConstantSource for Reference {
    fn pi(&self, scale: u32) -> Result<HpReal> {
        pi_at(scale)
    }
    fn catalan(&self, scale: u32) -> Result<HpReal> {
        catalan_at(scale)
    }
    fn sqrt3(&self, scale: u32) -> Result<HpReal> {
        sqrt3_at(scale)
    }
}

/// Reference values shifted by fixed offsets; used to show that verification
/// is sensitive to the oracles.
#[derive(Clone, Debug, Default)]
pub struct Perturbed {
    pub pi_offset: Rational,
    pub catalan_offset: Rational,
}

impl Perturbed {
    pub fn catalan_by(offset: Rational) -> Self {
        Perturbed { catalan_offset: offset, ..Default::default() }
    }
}

fn shifted(v: HpReal, offset: &Rational) -> HpReal {
    if offset.is_zero() {
        return v;
    }
    let s = v.scale();
    &v + &HpReal::from_rational(offset, s)
}

impl ConstantSource for Perturbed {
    fn pi(&self, scale: u32) -> Result<HpReal> {
        Ok(shifted(pi_at(scale)?, &self.pi_offset))
    }
    fn catalan(&self, scale: u32) -> Result<HpReal> {
        Ok(shifted(catalan_at(scale)?, &self.catalan_offset))
    }
    fn sqrt3(&self, scale: u32) -> Result<HpReal> {
        sqrt3_at(scale)
    }
}
