//! Richardson extrapolation for fractions whose convergents approach the limit
//! algebraically (error ~ C/n or C/n^2), where plain iteration would need an
//! astronomical number of terms.
//!
//! Convergents `c_n` at `n = N, N - s, ..., N - sK` (one residue class, so the
//! alternating part of the error does not mix in) are treated as samples of a
//! smooth function of `x = 1/n` and the interpolating polynomial is evaluated
//! at `x = 0`. `N` doubles until two successive extrapolants agree. The result
//! is an estimate, never certified.
//!
//! Some fractions have error expansions with `log n` factors, which polynomial
//! interpolation cannot absorb. [`Basis::PowersAndLogs`] fits
//! `x^i log^j x` (`j <= 2`) instead, on nodes spread over `[N/2, N]`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::convergents::{ConvergentStream, Reduction};
use super::eval::{Evaluation, Method};
use super::spec::CfSpec;
use crate::error::{Error, Result};
use crate::numerics::rational::{decimal_len, pow10};
use crate::numerics::{guard_digits, HpReal, Rational};

const FIRST_N: usize = 64;
const MAX_NODES: usize = 16;
/// Largest power of `log x` in the logarithmic basis.
const LOG_POWER: usize = 2;

/// Functions of `x = 1/n` the convergents are fitted with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    #[default]
    Powers,
    PowersAndLogs,
}

enum Weights {
    Exact(Vec<Rational>),
    /// Fixed point with the given scale.
    Fixed(Vec<BigInt>, u32),
}

struct Plan {
    n: usize,
    nodes: Vec<usize>,
    weights: Weights,
}

impl Plan {
    /// `sum |w_i|`, rounded up to an integer.
    fn amplification(&self) -> BigInt {
        match &self.weights {
            Weights::Exact(w) => w.iter().fold(Rational::zero(), |a, w| a + w.abs()).ceil().to_integer(),
            Weights::Fixed(w, s) => w.iter().fold(BigInt::zero(), |a, w| a + w.abs()).div_ceil(&pow10(*s)),
        }
    }

    fn combine(&self, samples: &BTreeMap<usize, HpReal>, scale: u32) -> HpReal {
        match &self.weights {
            Weights::Exact(w) => {
                let mut acc = HpReal::zero(scale);
                for (node, w) in self.nodes.iter().zip(w) {
                    acc = &acc + &samples[node].mul_rational(w);
                }
                acc
            }
            Weights::Fixed(w, ws) => {
                let mut acc = BigInt::zero();
                let mut err = BigInt::zero();
                for (node, w) in self.nodes.iter().zip(w) {
                    let s = &samples[node];
                    acc += w * s.mantissa();
                    err += w.abs() * BigInt::from(s.error_ulps().clone() + 1u32);
                }
                let one = pow10(*ws);
                let err: BigInt = err.div_ceil(&one) + 1;
                HpReal::new(acc.div_floor(&one), scale, err.magnitude().clone())
            }
        }
    }
}

/// Lagrange weights for extrapolation to `x = 0` on nodes `x_i = 1/n_i`:
/// `w_i = prod_{j != i} n_i / (n_i - n_j)`.
fn weights(nodes: &[usize]) -> Vec<Rational> {
    nodes
        .iter()
        .map(|&ni| {
            nodes.iter().filter(|&&nj| nj != ni).fold(Rational::one(), |acc, &nj| {
                acc * Rational::new(BigInt::from(ni), BigInt::from(ni as i64 - nj as i64))
            })
        })
        .collect()
}

fn plan(n: usize, step: usize) -> Plan {
    let k = MAX_NODES.min(n / (4 * step)).max(1);
    let nodes: Vec<usize> = (0..=k).map(|i| n - step * i).collect();
    let weights = Weights::Exact(weights(&nodes));
    Plan { n, nodes, weights }
}

/// Solves `A x = b` in fixed point at `scale` by Gaussian elimination with
/// partial pivoting. Returns `None` for a singular matrix.
fn solve_fixed(mut a: Vec<Vec<BigInt>>, mut b: Vec<BigInt>, scale: u32) -> Option<Vec<BigInt>> {
    let one = pow10(scale);
    let k = b.len();
    for col in 0..k {
        let piv = (col..k).max_by_key(|&r| a[r][col].magnitude().clone())?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..k {
            let f = (&a[r][col] * &one).div_floor(&a[col][col]);
            for c in col..k {
                let t = (&f * &a[col][c]).div_floor(&one);
                a[r][c] -= t;
            }
            let t = (&f * &b[col]).div_floor(&one);
            b[r] -= t;
        }
    }
    let mut x = vec![BigInt::zero(); k];
    for r in (0..k).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..k {
            acc -= (&a[r][c] * &x[c]).div_floor(&one);
        }
        x[r] = (acc * &one).div_floor(&a[r][r]);
    }
    Some(x)
}

/// Fit on nodes spread over `[N/2, N]` with basis `y^i log^j y`, `y = N/n`.
/// This spans the same space as `x^i log^j x`, but keeps the matrix entries
/// of order one. The constant coefficient is row 0 of `A^-1`, i.e. the
/// solution of `A^T w = e_0`.
fn log_plan(n: usize, step: usize) -> Result<Plan> {
    let k = MAX_NODES;
    let mut nodes: Vec<usize> = (0..k).map(|i| n - step * ((i * n) / (2 * step * k))).collect();
    nodes.dedup();
    let k = nodes.len();
    let scale = 120;
    let one = pow10(scale);
    let nn = HpReal::from_integer(n as u64);
    let mut rows = Vec::with_capacity(k);
    for &node in &nodes {
        let y = nn.div(&HpReal::from_integer(node as u64), scale + 10)?;
        let ly = y.ln(scale + 10)?.rescale(scale).mantissa().clone();
        let y = y.rescale(scale).mantissa().clone();
        let mut row = vec![one.clone()];
        let mut power = one.clone();
        while row.len() < k {
            power = (&power * &y).div_floor(&one);
            let mut v = power.clone();
            for _ in 0..=LOG_POWER {
                if row.len() < k {
                    row.push(v.clone());
                }
                v = (&v * &ly).div_floor(&one);
            }
        }
        rows.push(row);
    }
    let transposed: Vec<Vec<BigInt>> = (0..k).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    let mut e0 = vec![BigInt::zero(); k];
    e0[0] = one;
    let w = solve_fixed(transposed, e0, scale)
        .ok_or_else(|| Error::Evaluation("singular extrapolation system".into()))?;
    Ok(Plan { n, nodes, weights: Weights::Fixed(w, scale) })
}

pub fn extrapolate(cf: &CfSpec, digits: u32, max_terms: usize) -> Result<Evaluation> {
    extrapolate_with(cf, digits, max_terms, Basis::Powers)
}

pub fn extrapolate_with(cf: &CfSpec, digits: u32, max_terms: usize, basis: Basis) -> Result<Evaluation> {
    if digits == 0 || max_terms == 0 {
        return Err(Error::Domain("digits and max_terms must be positive".into()));
    }
    let period = cf.a_rule.period().lcm(&cf.b_rule.period());
    let step = 2 * period;
    let mut plans = Vec::new();
    let mut n = FIRST_N.max(8 * step);
    n -= n % step;
    while n <= max_terms {
        plans.push(match basis {
            Basis::Powers => plan(n, step),
            Basis::PowersAndLogs => log_plan(n, step)?,
        });
        n *= 2;
    }
    let amplification = plans.iter().map(|p| decimal_len(&p.amplification())).max().unwrap_or(0);
    let out_scale = digits + guard_digits(digits);
    let scale = out_scale + amplification + 2;
    let tol = HpReal::new(BigInt::one(), digits + 2, BigUint::zero());

    let mut samples: BTreeMap<usize, HpReal> = BTreeMap::new();
    let wanted: std::collections::BTreeSet<usize> =
        plans.iter().flat_map(|p| p.nodes.iter().copied()).collect();
    let mut s = ConvergentStream::new(cf, Reduction::AtEmission);
    let mut previous: Option<HpReal> = None;
    let mut last_delta = None;
    for p in &plans {
        while s.index() < p.n {
            if !s.advance()? || s.terminated() {
                let terms = if s.terminated() { s.index() - 1 } else { s.index() };
                let value = s.value_hp(out_scale);
                return Ok(Evaluation { value, terms_used: terms, certified: true, method: Method::Exact });
            }
            if wanted.contains(&s.index()) {
                samples.insert(s.index(), s.value_hp(scale));
            }
        }
        let value = p.combine(&samples, scale).rescale(out_scale);
        if let Some(prev) = previous.replace(value.clone()) {
            let delta = (&value - &prev).abs();
            if delta.cmp_value(&tol).is_lt() {
                let spread = delta.rescale(out_scale);
                let err = spread.mantissa().magnitude() + spread.error_ulps();
                return Ok(Evaluation {
                    value: value.with_error(&err),
                    terms_used: p.n,
                    certified: false,
                    method: Method::Extrapolated,
                });
            }
            last_delta = Some(delta);
        }
    }
    Err(Error::NoConvergence {
        terms: s.index(),
        last_delta: last_delta.map_or_else(|| "n/a".into(), |d| d.to_sci(3)),
        bracket: None,
    })
}
