use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::rule::CoeffRule;
use crate::error::Result;
use crate::numerics::{format_rational, Rational};

/// `b0 + a1/(b1 + a2/(b2 + ...))`.
///
/// Terms `1..=head.len()` come from `head`; later terms from the rules,
/// evaluated at the absolute index. `len`, when set, truncates the fraction
/// after that many terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfSpec {
    pub b0: Rational,
    pub head: Vec<(Rational, Rational)>,
    pub a_rule: CoeffRule,
    pub b_rule: CoeffRule,
    pub len: Option<usize>,
}

impl CfSpec {
    pub fn new(b0: Rational, a_rule: CoeffRule, b_rule: CoeffRule) -> Self {
        CfSpec { b0, head: Vec::new(), a_rule, b_rule, len: None }
    }

    /// The fraction consisting of `b0` alone.
    pub fn constant(b0: Rational) -> Self {
        CfSpec {
            b0,
            head: Vec::new(),
            a_rule: CoeffRule::constant(Rational::one()),
            b_rule: CoeffRule::constant(Rational::one()),
            len: Some(0),
        }
    }

    pub fn with_head(mut self, head: Vec<(Rational, Rational)>) -> Self {
        self.head = head;
        self
    }

    pub fn with_len(mut self, len: usize) -> Self {
        self.len = Some(len);
        self
    }

    /// `(a_n, b_n)` for `n >= 1`.
    pub fn term(&self, n: usize) -> Result<(Rational, Rational)> {
        debug_assert!(n >= 1);
        if let Some(t) = self.head.get(n - 1) {
            return Ok(t.clone());
        }
        Ok((self.a_rule.eval(n as i64)?, self.b_rule.eval(n as i64)?))
    }

    pub fn terms(&self, n: usize) -> Result<Vec<(Rational, Rational)>> {
        (1..=n).map(|k| self.term(k)).collect()
    }

    /// Number of terms available, capped at `n`.
    pub fn available(&self, n: usize) -> usize {
        self.len.map_or(n, |l| l.min(n))
    }

    /// Classical positivity hypothesis: `b_n > 0` for all `n >= 1` and
    /// `a_n > 0` for all `n >= 2` (the sign of `a_1` is irrelevant). Under it
    /// consecutive convergents enclose the limit.
    pub fn brackets(&self) -> bool {
        for (i, (a, b)) in self.head.iter().enumerate() {
            if self.len.is_some_and(|l| i >= l) {
                return true;
            }
            if b <= &Rational::zero() || (i >= 1 && a <= &Rational::zero()) {
                return false;
            }
        }
        let from = self.head.len() as i64 + 1;
        if self.len.is_some_and(|l| l < from as usize) {
            return true;
        }
        let a_from = from.max(2);
        self.b_rule.sign_from(from, Ordering::Greater).is_none()
            && self.a_rule.sign_from(a_from, Ordering::Greater).is_none()
    }
}

impl fmt::Display for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b0 = {}", format_rational(&self.b0))?;
        for (i, (a, b)) in self.head.iter().enumerate() {
            write!(f, "; a{0} = {1}, b{0} = {2}", i + 1, format_rational(a), format_rational(b))?;
        }
        if self.len != Some(self.head.len()) {
            let lead = if self.head.is_empty() { "" } else { " thereafter" };
            write!(f, ";{lead} a_n = {}, b_n = {}", self.a_rule, self.b_rule)?;
        }
        if let Some(l) = self.len {
            write!(f, "; terms 1..={l}")?;
        }
        Ok(())
    }
}

impl Serialize for CfSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let head: Vec<[String; 2]> =
            self.head.iter().map(|(a, b)| [format_rational(a), format_rational(b)]).collect();
        let mut st = s.serialize_struct("CfSpec", 5)?;
        st.serialize_field("b0", &format_rational(&self.b0))?;
        st.serialize_field("head", &head)?;
        st.serialize_field("a_rule", &self.a_rule)?;
        st.serialize_field("b_rule", &self.b_rule)?;
        st.serialize_field("len", &self.len)?;
        st.end()
    }
}
