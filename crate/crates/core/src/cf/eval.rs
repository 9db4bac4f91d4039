use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::convergents::{ConvergentStream, Reduction};
use super::extrapolate::{extrapolate, extrapolate_with, Basis};
use super::spec::CfSpec;
use crate::error::{Error, Result};
use crate::numerics::{guard_digits, HpReal};

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The fraction terminates; the value is a single rational.
    Exact,
    /// A convergent, accepted by the difference/agreement stop rule.
    Direct,
    /// Richardson extrapolation of a convergent subsequence.
    Extrapolated,
}

/// Evaluation strategy for [`evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Direct,
    Extrapolate,
    /// Extrapolation with a basis that also absorbs `log n / n^k` error terms.
    ExtrapolateLog,
    /// Direct evaluation within `direct_terms`, then extrapolation.
    Auto { direct_terms: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// Value whose error bound is rigorous when `certified`, an estimate otherwise.
    pub value: HpReal,
    pub terms_used: usize,
    pub certified: bool,
    pub method: Method,
}

fn exact(s: &ConvergentStream<'_>, scale: u32, terms: usize) -> Evaluation {
    Evaluation { value: s.value_hp(scale), terms_used: terms, certified: true, method: Method::Exact }
}

/// Runs the convergents until `|c_n - c_{n-1}| < 10^-(digits+2)` holds for two
/// consecutive steps (so the last three convergents agree). The error bound
/// `|c_n - c_{n-1}|` is rigorous when the fraction satisfies the positivity
/// hypothesis, since the limit then lies between `c_{n-1}` and `c_n`.
pub fn eval_cf(cf: &CfSpec, digits: u32, max_terms: usize) -> Result<Evaluation> {
    eval_direct(cf, digits, max_terms, Reduction::AtEmission)
}

pub fn eval_direct(cf: &CfSpec, digits: u32, max_terms: usize, reduction: Reduction) -> Result<Evaluation> {
    if digits == 0 || max_terms == 0 {
        return Err(Error::Domain("digits and max_terms must be positive".into()));
    }
    let scale = digits + guard_digits(digits);
    let tol = digits + 2;
    let mut s = ConvergentStream::new(cf, reduction);
    if s.exhausted() {
        return Ok(exact(&s, scale, 0));
    }
    let brackets = cf.brackets();
    let mut run = 0;
    while s.index() < max_terms {
        if !s.advance()? {
            return Ok(exact(&s, scale, s.index()));
        }
        if s.terminated() {
            return Ok(exact(&s, scale, s.index() - 1));
        }
        if s.exhausted() {
            return Ok(exact(&s, scale, s.index()));
        }
        run = if s.delta_below(tol) { run + 1 } else { 0 };
        if run >= 2 {
            let delta = s.delta_hp(scale);
            let value = s.value_hp(scale).with_error(&BigUint::from(delta.mantissa().magnitude().clone()));
            return Ok(Evaluation { value, terms_used: s.index(), certified: brackets, method: Method::Direct });
        }
    }
    let delta = s.delta_hp(digits + 10);
    let bracket = brackets.then(|| {
        let show = |v: HpReal| v.truncated_decimals(digits.min(60));
        (show(s.previous_hp(scale)), show(s.value_hp(scale)))
    });
    Err(Error::NoConvergence { terms: s.index(), last_delta: delta.to_sci(3), bracket })
}

/// Evaluates with the chosen strategy.
pub fn evaluate(cf: &CfSpec, digits: u32, max_terms: usize, strategy: Strategy) -> Result<Evaluation> {
    match strategy {
        Strategy::Direct => eval_cf(cf, digits, max_terms),
        Strategy::Extrapolate => extrapolate(cf, digits, max_terms),
        Strategy::ExtrapolateLog => extrapolate_with(cf, digits, max_terms, Basis::PowersAndLogs),
        Strategy::Auto { direct_terms } => match eval_cf(cf, digits, direct_terms.min(max_terms)) {
            Err(Error::NoConvergence { .. }) if direct_terms < max_terms => extrapolate(cf, digits, max_terms),
            other => other,
        },
    }
}
