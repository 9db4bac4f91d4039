//! Euler's conversion of alternating series into continued fractions.
//!
//! For `s = 1/α_1 - 1/α_2 + 1/α_3 - ...`,
//! `1/s = α_1 + α_1^2/(α_2 - α_1 + α_2^2/(α_3 - α_2 + ...))` (Theorem I), and
//! for `s = 1/(c_1 c_2) - 1/(c_2 c_3) + ...`,
//! `1/(c_1 s) = c_2 + c_1 c_2/(c_3 - c_1 + c_2 c_3/(c_4 - c_2 + ...))`
//! (Theorem II). In both cases convergent `n - 1` is exactly the reciprocal
//! form of partial sum `n`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cf::{convergents, CfSpec, CoeffRule, Poly};
use crate::error::{Error, Result};
use crate::numerics::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// Terms `1/α_n`.
    Reciprocal,
    /// Terms `1/(c_n c_{n+1})`.
    Biproduct,
    /// Terms `t_n` given directly.
    General,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Reciprocal => "reciprocal",
            SeriesKind::Biproduct => "biproduct",
            SeriesKind::General => "general",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    I,
    II,
}

impl Theorem {
    pub fn kind(self) -> SeriesKind {
        match self {
            Theorem::I => SeriesKind::Reciprocal,
            Theorem::II => SeriesKind::Biproduct,
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Theorem::I),
            "II" | "2" => Ok(Theorem::II),
            _ => Err(Error::Parse(format!("unknown theorem `{s}` (expected I or II)"))),
        }
    }
}

/// `s = t_1 - t_2 + t_3 - ...` where the `k`-th term is built from
/// `rule(start_index + k - 1)`. `len` truncates the series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltSeries {
    pub kind: SeriesKind,
    pub rule: CoeffRule,
    pub start_index: i64,
    pub len: Option<usize>,
}

impl AltSeries {
    pub fn reciprocal(alpha: CoeffRule, start_index: i64) -> Self {
        AltSeries { kind: SeriesKind::Reciprocal, rule: alpha, start_index, len: None }
    }

    pub fn biproduct(c: CoeffRule, start_index: i64) -> Self {
        AltSeries { kind: SeriesKind::Biproduct, rule: c, start_index, len: None }
    }

    pub fn general(t: CoeffRule, start_index: i64) -> Self {
        AltSeries { kind: SeriesKind::General, rule: t, start_index, len: None }
    }

    pub fn truncated(mut self, len: usize) -> Self {
        self.len = Some(len);
        self
    }

    /// The rule re-indexed so that position `k = 1, 2, ...` is the `k`-th term.
    fn local_rule(&self) -> CoeffRule {
        self.rule.shifted(self.start_index - 1)
    }

    fn factor(&self, k: usize) -> Result<Rational> {
        self.rule.eval(self.start_index + k as i64 - 1)
    }

    /// Positive term `t_k`.
    pub fn term(&self, k: usize) -> Result<Rational> {
        let zero = |k| Error::Domain(format!("series factor vanishes at term {k}"));
        match self.kind {
            SeriesKind::General => self.factor(k),
            SeriesKind::Reciprocal => {
                let a = self.factor(k)?;
                if a.is_zero() {
                    return Err(zero(k));
                }
                Ok(a.recip())
            }
            SeriesKind::Biproduct => {
                let p = self.factor(k)? * self.factor(k + 1)?;
                if p.is_zero() {
                    return Err(zero(k));
                }
                Ok(p.recip())
            }
        }
    }

    /// `sum_{k=1}^{n} (-1)^(k-1) t_k`.
    pub fn partial_sum(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::Domain("partial sums start at n = 1".into()));
        }
        let n = self.len.map_or(n, |l| l.min(n));
        let mut s = Rational::zero();
        for k in 1..=n {
            let t = self.term(k)?;
            if k % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        Ok(s)
    }

    fn require(&self, kind: SeriesKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Domain(format!(
                "series has {} kind, transform needs {kind} kind",
                self.kind
            )));
        }
        if !self.local_rule().nonzero_from(1) {
            return Err(Error::Domain("series factors must be nonzero".into()));
        }
        Ok(())
    }
}

fn finish(cf: CfSpec, s: &AltSeries) -> CfSpec {
    match s.len {
        Some(l) => cf.with_len(l.saturating_sub(1)),
        None => cf,
    }
}

/// Theorem I: the fraction for `1/s` with `b_0 = α_1`, `a_k = α_k^2`,
/// `b_k = α_{k+1} - α_k`.
pub fn theorem1_transform(s: &AltSeries) -> Result<CfSpec> {
    s.require(SeriesKind::Reciprocal)?;
    let alpha = s.local_rule();
    let b0 = alpha.eval(1)?;
    let cf = CfSpec::new(b0, alpha.mul(&alpha), alpha.shifted(1).sub(&alpha));
    Ok(finish(cf, s))
}

/// Theorem II: the fraction for `1/(c_1 s)` with `b_0 = c_2`,
/// `a_k = c_k c_{k+1}`, `b_k = c_{k+2} - c_k`.
pub fn theorem2_transform(s: &AltSeries) -> Result<CfSpec> {
    s.require(SeriesKind::Biproduct)?;
    let c = s.local_rule();
    let b0 = c.eval(2)?;
    let cf = CfSpec::new(b0, c.mul(&c.shifted(1)), c.shifted(2).sub(&c));
    Ok(finish(cf, s))
}

pub fn transform(s: &AltSeries, theorem: Theorem) -> Result<CfSpec> {
    match theorem {
        Theorem::I => theorem1_transform(s),
        Theorem::II => theorem2_transform(s),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub theorem: Theorem,
    pub checked: usize,
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// Compares convergent `c_{n-1}` of `cf` with `1/s_n` (Theorem I) or
/// `1/(c_1 s_n)` (Theorem II) as exact rationals for `n = 1..=N`.
pub fn check_partial_sum_identity(s: &AltSeries, cf: &CfSpec, n: usize) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Domain("identity check needs N >= 1".into()));
    }
    let theorem = match s.kind {
        SeriesKind::Reciprocal => Theorem::I,
        SeriesKind::Biproduct => Theorem::II,
        SeriesKind::General => {
            return Err(Error::Domain("general series have no Euler fraction".into()))
        }
    };
    let scale = match theorem {
        Theorem::I => Rational::one(),
        Theorem::II => s.factor(1)?,
    };
    let n = s.len.map_or(n, |l| l.min(n));
    let cs = if n > 1 { convergents(cf, n - 1)? } else { convergents(cf, 1)?.into_iter().take(1).collect() };
    let mut checked = 0;
    for k in 1..=n {
        let Some(c) = cs.get(k - 1) else { break };
        let sum = s.partial_sum(k)? * &scale;
        checked = k;
        if sum.is_zero() || c.value() != sum.recip() {
            return Ok(IdentityReport { theorem, checked, holds: false, first_failure: Some(k) });
        }
    }
    Ok(IdentityReport { theorem, checked, holds: true, first_failure: None })
}

fn lin(c1: i64, c0: i64) -> CoeffRule {
    CoeffRule::poly(Poly::linear(int(c1), int(c0)))
}

/// Named series with a description, for the command line.
pub fn named_series() -> Vec<(&'static str, AltSeries, &'static str)> {
    vec![
        ("leibnitz", AltSeries::reciprocal(lin(2, -1), 1), "1 - 1/3 + 1/5 - ... = pi/4"),
        ("pi8", AltSeries::reciprocal(lin(4, -2), 1), "1/2 - 1/6 + 1/10 - ... = pi/8"),
        ("twofactor", AltSeries::biproduct(lin(2, -1), 1), "1/(1*3) - 1/(3*5) + ... = (pi - 2)/4"),
        ("harmonic_biproduct", AltSeries::biproduct(lin(1, 0), 1), "1/(1*2) - 1/(2*3) + ... = 2 ln 2 - 1"),
        (
            "knopp",
            AltSeries::general(
                CoeffRule::quotient(Poly::one(), Poly::from_ints(&[0, 4, 12, 8])).expect("nonzero denominator"),
                1,
            ),
            "1/(2*3*4) - 1/(4*5*6) + ... = (pi - 3)/4",
        ),
    ]
}

pub fn series_by_name(name: &str) -> Result<AltSeries> {
    named_series()
        .into_iter()
        .find(|(n, ..)| *n == name)
        .map(|(_, s, _)| s)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn leibnitz_gives_brouncker() {
        let s = series_by_name("leibnitz").unwrap();
        assert_eq!(s.partial_sum(1).unwrap(), int(1));
        assert_eq!(s.partial_sum(2).unwrap(), rat(2, 3));
        let cf = theorem1_transform(&s).unwrap();
        assert_eq!(cf.b0, int(1));
        assert_eq!(cf.term(1).unwrap(), (int(1), int(2)));
        assert_eq!(cf.term(2).unwrap(), (int(9), int(2)));
        assert!(check_partial_sum_identity(&s, &cf, 25).unwrap().holds);
    }

    #[test]
    fn twofactor_gives_four_over_pi_minus_two() {
        let s = series_by_name("twofactor").unwrap();
        let cf = theorem2_transform(&s).unwrap();
        assert_eq!(cf.b0, int(3));
        assert_eq!(cf.term(1).unwrap(), (int(3), int(4)));
        assert_eq!(cf.term(2).unwrap(), (int(15), int(4)));
        assert!(check_partial_sum_identity(&s, &cf, 25).unwrap().holds);
    }

    #[test]
    fn finite_series() {
        let s = AltSeries::reciprocal(CoeffRule::constant(int(3)), 1).truncated(1);
        let cf = theorem1_transform(&s).unwrap();
        assert_eq!(cf.len, Some(0));
        assert_eq!(cf.b0, int(3));
        let s = series_by_name("twofactor").unwrap().truncated(2);
        let cf = theorem2_transform(&s).unwrap();
        let c = convergents(&cf, 5).unwrap();
        assert_eq!(c.last().unwrap().value(), (s.partial_sum(2).unwrap()).recip());
    }

    #[test]
    fn perturbation_and_kind_checks() {
        let s = series_by_name("leibnitz").unwrap();
        let mut cf = theorem1_transform(&s).unwrap();
        cf.b0 += int(1);
        let r = check_partial_sum_identity(&s, &cf, 10).unwrap();
        assert_eq!(r.first_failure, Some(1));
        assert!(theorem2_transform(&s).is_err());
        assert!(theorem1_transform(&series_by_name("knopp").unwrap()).is_err());
        assert_eq!(series_by_name("knopp").unwrap().partial_sum(1).unwrap(), rat(1, 24));
    }

    #[test]
    fn zero_factor_rejected() {
        let s = AltSeries::reciprocal(lin(1, -3), 1);
        assert!(theorem1_transform(&s).is_err());
    }
}
