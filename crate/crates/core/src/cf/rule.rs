use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::numerics::{format_rational, int, Rational};

/// Periodic rational-function rule: index `n` uses branch `(n - start) mod period`,
/// whose value is `num(n) / den(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRule {
    branches: Vec<(Poly, Poly)>,
    start_index: i64,
}

impl CoeffRule {
    pub fn periodic(branches: Vec<(Poly, Poly)>, start_index: i64) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::Domain("coefficient rule needs at least one branch".into()));
        }
        if branches.iter().any(|(_, d)| d.is_zero()) {
            return Err(Error::Domain("coefficient rule with zero denominator".into()));
        }
        Ok(CoeffRule { branches: branches.into_iter().map(normalize).collect(), start_index })
    }

    pub fn poly(p: Poly) -> Self {
        CoeffRule { branches: vec![(p, Poly::one())], start_index: 0 }
    }

    pub fn quotient(num: Poly, den: Poly) -> Result<Self> {
        CoeffRule::periodic(vec![(num, den)], 0)
    }

    pub fn constant(c: Rational) -> Self {
        CoeffRule::poly(Poly::constant(c))
    }

    /// Period-`k` rule whose branches are plain polynomials.
    pub fn polys(branches: Vec<Poly>, start_index: i64) -> Self {
        CoeffRule {
            branches: branches.into_iter().map(|p| (p, Poly::one())).collect(),
            start_index,
        }
    }

    pub fn period(&self) -> usize {
        self.branches.len()
    }

    pub fn start_index(&self) -> i64 {
        self.start_index
    }

    pub fn branches(&self) -> &[(Poly, Poly)] {
        &self.branches
    }

    fn branch_index(&self, n: i64) -> usize {
        (n - self.start_index).mod_floor(&(self.period() as i64)) as usize
    }

    pub fn branch(&self, n: i64) -> &(Poly, Poly) {
        &self.branches[self.branch_index(n)]
    }

    pub fn eval(&self, n: i64) -> Result<Rational> {
        let (num, den) = self.branch(n);
        let d = den.eval_int(n);
        if d.is_zero() {
            return Err(Error::Domain(format!("rule denominator vanishes at n = {n}")));
        }
        Ok(num.eval_int(n) / d)
    }

    fn combine(&self, other: &CoeffRule, f: impl Fn(&(Poly, Poly), &(Poly, Poly)) -> (Poly, Poly)) -> CoeffRule {
        let period = self.period().lcm(&other.period());
        let branches = (0..period as i64)
            .map(|i| {
                let n = self.start_index + i;
                normalize(f(self.branch(n), other.branch(n)))
            })
            .collect();
        CoeffRule { branches, start_index: self.start_index }
    }

    pub fn mul(&self, other: &CoeffRule) -> CoeffRule {
        self.combine(other, |(a, b), (c, d)| (a.mul(c), b.mul(d)))
    }

    pub fn add(&self, other: &CoeffRule) -> CoeffRule {
        self.combine(other, |(a, b), (c, d)| {
            if b == d {
                (a.add(c), b.clone())
            } else {
                (a.mul(d).add(&c.mul(b)), b.mul(d))
            }
        })
    }

    pub fn sub(&self, other: &CoeffRule) -> CoeffRule {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> CoeffRule {
        CoeffRule {
            branches: self.branches.iter().map(|(n, d)| normalize((n.scale(r), d.clone()))).collect(),
            start_index: self.start_index,
        }
    }

    /// `n -> rule(n + k)`.
    pub fn shifted(&self, k: i64) -> CoeffRule {
        let kk = int(k);
        CoeffRule {
            branches: self.branches.iter().map(|(n, d)| (n.shifted(&kk), d.shifted(&kk))).collect(),
            start_index: self.start_index - k,
        }
    }

    /// Every value at `n >= from` has the given sign (denominators nonzero).
    pub fn sign_from(&self, from: i64, want: Ordering) -> Option<i64> {
        let p = self.period() as i64;
        let mut first: Option<i64> = None;
        for i in 0..p {
            let n0 = from + i;
            let (num, den) = self.branch(n0);
            // sign(num/den) == sign(num*den) whenever den != 0
            let bad = den
                .sign_violation(n0, p, Ordering::Greater)
                .filter(|_| den.sign_violation(n0, p, Ordering::Less).is_some())
                .or_else(|| num.mul(den).sign_violation(n0, p, want));
            if let Some(b) = bad {
                first = Some(first.map_or(b, |f: i64| f.min(b)));
            }
        }
        first
    }

    pub fn positive_from(&self, from: i64) -> bool {
        self.sign_from(from, Ordering::Greater).is_none()
    }

    /// No value at `n >= from` is zero or undefined.
    pub fn nonzero_from(&self, from: i64) -> bool {
        self.positive_from(from)
            || self.sign_from(from, Ordering::Less).is_none()
            || self.nonzero_scan(from)
    }

    fn nonzero_scan(&self, from: i64) -> bool {
        let p = self.period() as i64;
        (0..p).all(|i| {
            let n0 = from + i;
            let (num, den) = self.branch(n0);
            let prod = num.mul(den);
            let bound = prod.root_bound().ceil().to_integer();
            let mut n = n0;
            while int(n) <= Rational::from_integer(bound.clone()) {
                if prod.eval_int(n).is_zero() {
                    return false;
                }
                n += p;
                if n - n0 > 1_000_000 * p {
                    return false;
                }
            }
            !prod.is_zero()
        })
    }
}

/// Makes the denominator's leading coefficient 1.
fn normalize((num, den): (Poly, Poly)) -> (Poly, Poly) {
    let lead = den.leading();
    if lead.is_zero() || lead.is_one() {
        return (num, den);
    }
    let inv = Rational::one() / lead;
    (num.scale(&inv), den.scale(&inv))
}

impl fmt::Display for CoeffRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |(num, den): &(Poly, Poly)| {
            if den == &Poly::one() {
                num.to_string()
            } else {
                format!("({num})/({den})")
            }
        };
        if self.period() == 1 {
            return f.write_str(&one(&self.branches[0]));
        }
        let parts: Vec<String> = self
            .branches
            .iter()
            .enumerate()
            .map(|(i, b)| format!("n = {} mod {}: {}", (self.start_index + i as i64).rem_euclid(self.period() as i64), self.period(), one(b)))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Serialize)]
struct BranchRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for CoeffRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let branches: Vec<BranchRepr> = self
            .branches
            .iter()
            .map(|(n, d)| BranchRepr {
                num: n.coeffs().iter().map(format_rational).collect(),
                den: d.coeffs().iter().map(format_rational).collect(),
            })
            .collect();
        let mut st = s.serialize_struct("CoeffRule", 3)?;
        st.serialize_field("period", &self.period())?;
        st.serialize_field("start_index", &self.start_index)?;
        st.serialize_field("branches", &branches)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn periodic_branches() {
        // even n: n^2, odd n: n^2 - 1, over 4
        let r = CoeffRule::periodic(
            vec![
                (Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[4])),
                (Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[4])),
            ],
            2,
        )
        .unwrap();
        assert_eq!(r.eval(2).unwrap(), int(1));
        assert_eq!(r.eval(3).unwrap(), int(2));
        assert_eq!(r.eval(4).unwrap(), int(4));
        assert_eq!(r.eval(5).unwrap(), int(6));
        assert!(r.positive_from(2));
        assert!(!r.positive_from(1));
        let s = r.shifted(1);
        for n in 0..10 {
            assert_eq!(s.eval(n).unwrap(), r.eval(n + 1).unwrap());
        }
    }

    #[test]
    fn combining_rules() {
        let a = CoeffRule::poly(Poly::from_ints(&[-1, 2]));
        let b = CoeffRule::polys(vec![Poly::from_ints(&[1]), Poly::from_ints(&[3])], 1);
        let prod = a.mul(&b);
        let sum = a.add(&b);
        for n in 1..12 {
            let (x, y) = (a.eval(n).unwrap(), b.eval(n).unwrap());
            assert_eq!(prod.eval(n).unwrap(), &x * &y);
            assert_eq!(sum.eval(n).unwrap(), &x + &y);
        }
        let q = CoeffRule::quotient(Poly::from_ints(&[1]), Poly::from_ints(&[0, 2])).unwrap();
        assert_eq!(q.eval(3).unwrap(), rat(1, 6));
        assert!(q.eval(0).is_err());
        assert!(q.nonzero_from(1));
        assert!(!CoeffRule::poly(Poly::from_ints(&[-3, 1])).nonzero_from(1));
    }
}
