//! Series families for pi and G: exact partial sums, tail bounds, closed forms
//! and the recurrences/telescoping identities that connect them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::rational::pow10;
use crate::numerics::{double_factorial, factorial, int, rat, Atom, ConstExpr, HpReal, Linear, Rational};

/// One of the series studied here. Terms are positive; `sign(n)` supplies the
/// alternation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `sum (-1)^(n-1) / ((2n-1)(2n+1)...(2n+2f-3))`, `f` linear factors.
    Linear { factors: u32 },
    /// `sum (-1)^(n-1) / ((2n-1)^2 (2n+1)^2 ... (2n+2m-3)^2)`, `m` squared factors.
    Quadratic { factors: u32 },
    /// `sum_{n >= 1-k} (-1)^(n-1) / prod_{j=0}^{2k+1} (2n+2j-1)^2`.
    ShiftedQuadratic { k: u32 },
    /// `sum (-1)^(n-1) / (r(n-1) r(n) (2n-1)^2)` for the three weights `r`.
    PolyWeighted { variant: u8 },
    /// `sum (-1)^(n-1) / (2n(2n+1)(2n+2)) = (pi - 3)/4`.
    ThreeConsecutive,
    /// `sum (-1)^(n-1) / ((2n-1) 2n (2n+1)(2n+2)(2n+3)) = (10 - 3 pi)/72`.
    FiveConsecutive,
    /// `sum_{n >= 2} (-1)^n / ((2n+1)(2n+2)(2n+3)(2n+4)(2n+5)) = (22/7 - pi)/24`.
    TwentyTwoSevenths,
    /// `sum_{n >= 0} n! / (2n+1)!! = pi/2` (positive terms).
    GlaisherHalfPi,
    /// `sum_{n >= 0} n!^2 / (2n+1)! = 2 pi / (3 sqrt 3)` (positive terms).
    GlaisherSqrt3,
}

/// Weight polynomials `r(n)` of the three polynomial-weighted series.
pub fn weight_poly(variant: u8) -> Result<Vec<i64>> {
    match variant {
        1 => Ok(vec![3, 0, 4]),
        2 => Ok(vec![41, 0, 88, 0, 16]),
        3 => Ok(vec![1323, 0, 3628, 0, 1168, 0, 64]),
        _ => Err(Error::Domain(format!("no weighted series variant {variant}"))),
    }
}

fn eval_int_poly(c: &[i64], n: i64) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, &k| acc * n + k)
}

fn odd_run(n: i64, count: u32) -> BigInt {
    (0..count as i64).fold(BigInt::one(), |acc, j| acc * (2 * n + 2 * j - 1))
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Linear { factors: 0 } | Family::Quadratic { factors: 0 } => {
                Err(Error::Domain("a family needs at least one factor".into()))
            }
            Family::PolyWeighted { variant } => weight_poly(variant).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// First summation index.
    pub fn start(&self) -> i64 {
        match *self {
            Family::ShiftedQuadratic { k } => 1 - k as i64,
            Family::TwentyTwoSevenths => 2,
            Family::GlaisherHalfPi | Family::GlaisherSqrt3 => 0,
            _ => 1,
        }
    }

    pub fn alternating(&self) -> bool {
        !matches!(self, Family::GlaisherHalfPi | Family::GlaisherSqrt3)
    }

    /// Denominator of the (positive) term at summation index `n`.
    fn term_parts(&self, n: i64) -> (BigInt, BigInt) {
        let one = BigInt::one();
        match *self {
            Family::Linear { factors } => (one, odd_run(n, factors)),
            Family::Quadratic { factors } => {
                let d = odd_run(n, factors);
                (one, &d * &d)
            }
            Family::ShiftedQuadratic { k } => {
                let d = odd_run(n, 2 * k + 2);
                (one, &d * &d)
            }
            Family::PolyWeighted { variant } => {
                let r = weight_poly(variant).expect("validated variant");
                let odd = BigInt::from(2 * n - 1);
                (one, eval_int_poly(&r, n - 1) * eval_int_poly(&r, n) * &odd * &odd)
            }
            Family::ThreeConsecutive => (one, (0..3).fold(BigInt::one(), |a, j| a * (2 * n + j))),
            Family::FiveConsecutive => (one, (0..5).fold(BigInt::one(), |a, j| a * (2 * n - 1 + j))),
            Family::TwentyTwoSevenths => (one, (0..5).fold(BigInt::one(), |a, j| a * (2 * n + 1 + j))),
            Family::GlaisherHalfPi => {
                (factorial(n as u64), double_factorial(2 * n + 1).expect("non-negative"))
            }
            Family::GlaisherSqrt3 => {
                let f = factorial(n as u64);
                (&f * &f, factorial(2 * n as u64 + 1))
            }
        }
    }

    /// Positive term at summation index `n`.
    pub fn term(&self, n: i64) -> Rational {
        let (p, q) = self.term_parts(n);
        Rational::new(p, q)
    }

    /// Sign attached to the term at index `n`.
    pub fn sign(&self, n: i64) -> i32 {
        if !self.alternating() {
            return 1;
        }
        let s = match self {
            Family::TwentyTwoSevenths => n,
            _ => n - 1,
        };
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Signed term number `i` (1-based) of the series.
    pub fn nth(&self, i: usize) -> Rational {
        let n = self.start() + i as i64 - 1;
        let t = self.term(n);
        if self.sign(n) < 0 {
            -t
        } else {
            t
        }
    }

    /// Exact sum of the first `count` terms.
    pub fn partial_sum(&self, count: usize) -> Rational {
        (1..=count).fold(Rational::zero(), |acc, i| acc + self.nth(i))
    }

    /// Bound on `|S - S_count|`. For alternating families this is the first
    /// omitted term (the terms decrease from the first one, or, for the
    /// shifted family, from index 1 onwards, which is where the bound is
    /// valid). The positive families have term ratios below 1/2 and 1/4.
    pub fn tail_bound(&self, count: usize) -> Rational {
        let next = self.nth(count + 1).abs();
        match self {
            Family::GlaisherHalfPi => next * int(2),
            Family::GlaisherSqrt3 => next * rat(4, 3),
            _ => next,
        }
    }

    /// Fixed-point enclosure of the full sum from `count` terms: the partial
    /// sum plus half the first omitted term, with the other half (plus
    /// rounding) as error. Valid for alternating series whose terms decrease
    /// beyond `count`.
    pub fn sum_enclosure(&self, count: usize, scale: u32) -> HpReal {
        let one = pow10(scale);
        let mut acc = BigInt::zero();
        for i in 1..=count {
            let n = self.start() + i as i64 - 1;
            let (p, q) = self.term_parts(n);
            let t = (p * &one).div_floor(&q);
            if self.sign(n) < 0 {
                acc -= t;
            } else {
                acc += t;
            }
        }
        let partial = HpReal::new(acc, scale, BigUint::from(count as u64));
        let n = self.start() + count as i64;
        let half = HpReal::from_rational(&(self.term(n) / int(2)), scale);
        let adjusted = if self.sign(n) < 0 { &partial - &half } else { &partial + &half };
        adjusted.with_error(&BigUint::from(half.mantissa().magnitude().clone() + 1u32))
    }

    /// The known closed form of the full sum.
    pub fn closed_form(&self) -> Result<ConstExpr> {
        self.validate()?;
        let pi = |c: Rational, k: Rational| {
            ConstExpr::linear(&Linear::atom(Atom::Pi, c) + &Linear::constant(k))
        };
        Ok(match *self {
            Family::Linear { factors } => ConstExpr::linear(linear_y_closed(factors)?),
            Family::Quadratic { factors } => ConstExpr::linear(quadratic_y_closed(factors)?),
            Family::ShiftedQuadratic { k } => ConstExpr::linear(shifted_pi_sum_closed(k)),
            Family::PolyWeighted { variant } => ConstExpr::linear(section5_sum_closed(variant)?),
            Family::ThreeConsecutive => pi(rat(1, 4), rat(-3, 4)),
            Family::FiveConsecutive => pi(rat(-3, 72), rat(10, 72)),
            Family::TwentyTwoSevenths => pi(rat(-1, 24), rat(22, 7 * 24)),
            Family::GlaisherHalfPi => pi(rat(1, 2), Rational::zero()),
            Family::GlaisherSqrt3 => ConstExpr::new(
                Linear::atom(Atom::Pi, int(2)),
                Linear::atom(Atom::Sqrt3, int(3)),
            )?,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Linear { factors } => write!(f, "sum (-1)^(n-1) / ((2n-1)...(2n+{})), {factors} linear factors", 2 * factors as i64 - 3),
            Family::Quadratic { factors } => write!(f, "sum (-1)^(n-1) / ((2n-1)^2...(2n+{})^2), {factors} squared factors", 2 * factors as i64 - 3),
            Family::ShiftedQuadratic { k } => write!(f, "sum_(n >= {}) (-1)^(n-1) / prod_(j=0..{}) (2n+2j-1)^2", 1 - k as i64, 2 * k + 1),
            Family::PolyWeighted { variant } => {
                let r = weight_poly(variant).map_err(|_| fmt::Error)?;
                let poly = crate::cf::Poly::from_ints(&r);
                write!(f, "sum (-1)^(n-1) / (r(n-1) r(n) (2n-1)^2), r(n) = {poly}")
            }
            Family::ThreeConsecutive => f.write_str("sum (-1)^(n-1) / (2n(2n+1)(2n+2))"),
            Family::FiveConsecutive => f.write_str("sum (-1)^(n-1) / ((2n-1)2n(2n+1)(2n+2)(2n+3))"),
            Family::TwentyTwoSevenths => f.write_str("sum_(n >= 2) (-1)^n / ((2n+1)(2n+2)(2n+3)(2n+4)(2n+5))"),
            Family::GlaisherHalfPi => f.write_str("sum_(n >= 0) n! / (2n+1)!!"),
            Family::GlaisherSqrt3 => f.write_str("sum_(n >= 0) n!^2 / (2n+1)!"),
        }
    }
}

/// Closed form of the `f`-factor linear series, from the Leibniz value
/// `pi/4` and `Y(f) = Y(f-1)/(f-1) - 1/(2 (f-1) (2f-3)!!)`.
pub fn linear_y_closed(f: u32) -> Result<Linear> {
    if f == 0 {
        return Err(Error::Domain("linear family needs at least one factor".into()));
    }
    let mut y = Linear::atom(Atom::Pi, rat(1, 4));
    for g in 2..=f as i64 {
        let k = g - 1;
        let corr = Rational::new(BigInt::one(), double_factorial(2 * k - 1)? * 2 * k);
        y = &y.scale(&rat(1, k)) - &Linear::constant(corr);
    }
    Ok(y)
}

/// Constant `(10m^2 + 8m + 1) / (2 (2m+1)!!^2)` of the squared-factor recurrence.
pub fn quadratic_recurrence_constant(m: u32) -> Rational {
    let m = m as i64;
    let df = double_factorial(2 * m + 1).expect("non-negative");
    Rational::new(BigInt::from(10 * m * m + 8 * m + 1), &df * &df * 2)
}

/// Multiplier `4 m (m+1)^3` of the squared-factor recurrence.
pub fn quadratic_recurrence_factor(m: u32) -> Rational {
    let m = m as i64;
    int(4 * m * (m + 1).pow(3))
}

/// Closed form of the `m`-factor squared series from `y_1 = G`,
/// `y_2 = 1/2 - pi/8` and `y_{m+2} = (c_m - y_m) / (4 m (m+1)^3)`.
pub fn quadratic_y_closed(m: u32) -> Result<Linear> {
    if m == 0 {
        return Err(Error::Domain("quadratic family needs at least one factor".into()));
    }
    let mut ys = vec![
        Linear::atom(Atom::Catalan, int(1)),
        &Linear::constant(rat(1, 2)) - &Linear::atom(Atom::Pi, rat(1, 8)),
    ];
    while ys.len() < m as usize {
        // ys[i] holds y_{i+1}; the next entry y_{mm+2} comes from y_mm
        let mm = ys.len() as u32 - 1;
        let c = Linear::constant(quadratic_recurrence_constant(mm));
        let next = (&c - &ys[mm as usize - 1]).scale(&(Rational::one() / quadratic_recurrence_factor(mm)));
        ys.push(next);
    }
    Ok(ys.swap_remove(m as usize - 1))
}

/// `(-1)^(k+1) ((k+1)!^3 / ((2k+2)!^3 k!) pi - 1 / (2 (2k+1)!!^4))`.
pub fn shifted_pi_sum_closed(k: u32) -> Linear {
    let k = k as u64;
    let f1 = factorial(k + 1);
    let f2 = factorial(2 * k + 2);
    let pi_c = Rational::new(f1.pow(3), f2.pow(3) * factorial(k));
    let df = double_factorial(2 * k as i64 + 1).expect("non-negative");
    let c = Rational::new(BigInt::one(), df.pow(4) * 2);
    let v = &Linear::atom(Atom::Pi, pi_c) - &Linear::constant(c);
    if k % 2 == 0 {
        -&v
    } else {
        v
    }
}

/// Partial-fraction decomposition of a weighted term:
/// `1/(r(n-1) r(n) (2n-1)^2) = alpha/(2n-1)^2 + u(n-1) + u(n)`, `u = P/r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub r: Vec<i64>,
    pub alpha: Rational,
    pub p: Vec<Rational>,
}

impl Decomposition {
    pub fn for_variant(variant: u8) -> Result<Self> {
        let r = weight_poly(variant)?;
        let (alpha, p) = match variant {
            1 => (rat(1, 16), vec![rat(-1, 32)]),
            2 => (rat(1, 4096), vec![rat(-19, 8192), int(0), rat(-1, 2048)]),
            _ => (
                rat(1, 5308416),
                vec![rat(-713, 10616832), int(0), rat(-35, 1327104), int(0), rat(-1, 663552)],
            ),
        };
        Ok(Decomposition { r, alpha, p })
    }

    fn r_at(&self, n: i64) -> Rational {
        Rational::from_integer(eval_int_poly(&self.r, n))
    }

    fn p_at(&self, n: i64) -> Rational {
        self.p.iter().rev().fold(Rational::zero(), |acc, c| acc * int(n) + c)
    }

    /// `u(n) = P(n) / r(n)`.
    pub fn u(&self, n: i64) -> Rational {
        self.p_at(n) / self.r_at(n)
    }

    /// Right-hand side of the decomposition at `n`.
    pub fn rhs(&self, n: i64) -> Rational {
        let odd = int(2 * n - 1);
        &self.alpha / (&odd * &odd) + self.u(n - 1) + self.u(n)
    }

    /// Left-hand side (the series term) at `n`.
    pub fn lhs(&self, n: i64) -> Rational {
        let odd = int(2 * n - 1);
        Rational::one() / (self.r_at(n - 1) * self.r_at(n) * &odd * &odd)
    }

    /// Degree bound of the cleared polynomial identity
    /// `1 = alpha r(n-1) r(n) + (2n-1)^2 (P(n-1) r(n) + P(n) r(n-1))`.
    pub fn identity_degree(&self) -> usize {
        let dr = self.r.len() - 1;
        (2 * dr).max(2 + self.p.len().saturating_sub(1) + dr)
    }

    /// Sum implied by telescoping: `alpha G + u(0)`.
    pub fn sum(&self) -> Linear {
        &Linear::atom(Atom::Catalan, self.alpha.clone()) + &Linear::constant(self.u(0))
    }
}

/// Result of [`telescoping_identity_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopingReport {
    pub holds: bool,
    pub samples: usize,
    pub first_failure: Option<i64>,
}

/// Certifies the decomposition as an identity of rational functions: after
/// clearing denominators both sides are polynomials of degree at most `D`,
/// so agreement at `2D + 1` integer points proves equality.
pub fn check_decomposition(d: &Decomposition) -> TelescopingReport {
    let samples = 2 * d.identity_degree() + 1;
    for n in 1..=samples as i64 {
        if d.lhs(n) != d.rhs(n) {
            return TelescopingReport { holds: false, samples, first_failure: Some(n) };
        }
    }
    TelescopingReport { holds: true, samples, first_failure: None }
}

pub fn telescoping_identity_check(variant: u8) -> Result<TelescopingReport> {
    Ok(check_decomposition(&Decomposition::for_variant(variant)?))
}

/// Sum of the weighted series `variant`, obtained by telescoping.
pub fn section5_sum_closed(variant: u8) -> Result<Linear> {
    Ok(Decomposition::for_variant(variant)?.sum())
}

/// Closed forms of the one-off sums, with a description of each series.
pub fn misc_sums() -> Vec<(ConstExpr, String)> {
    [
        Family::ThreeConsecutive,
        Family::FiveConsecutive,
        Family::TwentyTwoSevenths,
        Family::GlaisherHalfPi,
        Family::GlaisherSqrt3,
    ]
    .iter()
    .map(|f| (f.closed_form().expect("fixed families"), f.to_string()))
    .collect()
}

/// Residual of the squared-factor recurrence
/// `y_m + 4m(m+1)^3 y_{m+2} - c_m` computed from `count`-term partial sums,
/// together with the matching tail budget. Independent of any closed form.
pub fn appendix_residual(m: u32, count: usize, scale: u32) -> (HpReal, Rational) {
    let ym = Family::Quadratic { factors: m };
    let ym2 = Family::Quadratic { factors: m + 2 };
    let factor = quadratic_recurrence_factor(m);
    let s1 = partial_sum_hp(&ym, count, scale);
    let s2 = partial_sum_hp(&ym2, count, scale).mul_rational(&factor);
    let c = HpReal::from_rational(&quadratic_recurrence_constant(m), scale);
    let residual = &(&s1 + &s2) - &c;
    let budget = ym.tail_bound(count) + ym2.tail_bound(count) * factor;
    (residual, budget)
}

/// Fixed-point partial sum with its rounding error.
pub fn partial_sum_hp(f: &Family, count: usize, scale: u32) -> HpReal {
    let one = pow10(scale);
    let mut acc = BigInt::zero();
    for i in 1..=count {
        let n = f.start() + i as i64 - 1;
        let (p, q) = f.term_parts(n);
        let t = (p * &one).div_floor(&q);
        if f.sign(n) < 0 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    HpReal::new(acc, scale, BigUint::from(count as u64))
}
