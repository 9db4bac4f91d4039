use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::constants::{guard_digits, ConstantSource, Reference};
use super::hpreal::HpReal;
use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// The basis elements of a [`Linear`] form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    One = 0,
    Pi = 1,
    Catalan = 2,
    Sqrt3 = 3,
}

impl Atom {
    pub const ALL: [Atom; 4] = [Atom::One, Atom::Pi, Atom::Catalan, Atom::Sqrt3];

    fn symbol(self) -> &'static str {
        match self {
            Atom::One => "",
            Atom::Pi => "pi",
            Atom::Catalan => "G",
            Atom::Sqrt3 => "sqrt3",
        }
    }
}

/// `c0 + c_pi pi + c_G G + c_s sqrt3` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Linear {
    pub coeffs: [Rational; 4],
}

impl Linear {
    pub fn constant(r: Rational) -> Self {
        Linear::atom(Atom::One, r)
    }

    pub fn atom(a: Atom, coeff: Rational) -> Self {
        let mut l = Linear::default();
        l.coeffs[a as usize] = coeff;
        l
    }

    pub fn coeff(&self, a: Atom) -> &Rational {
        &self.coeffs[a as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Only the constant coefficient is nonzero.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, r: &Rational) -> Linear {
        Linear { coeffs: self.coeffs.clone().map(|c| c * r) }
    }

    pub fn eval(&self, scale: u32, src: &dyn ConstantSource) -> Result<HpReal> {
        let mut acc = HpReal::from_rational(&self.coeffs[0], scale);
        for atom in [Atom::Pi, Atom::Catalan, Atom::Sqrt3] {
            let c = self.coeff(atom);
            if c.is_zero() {
                continue;
            }
            let v = match atom {
                Atom::Pi => src.pi(scale)?,
                Atom::Catalan => src.catalan(scale)?,
                _ => src.sqrt3(scale)?,
            };
            acc = &acc + &v.mul_rational(c);
        }
        Ok(acc)
    }

    /// Products of atoms, with `sqrt3 * sqrt3` folded into the constant.
    fn times(&self, other: &Linear) -> BTreeMap<(usize, usize), Rational> {
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for i in 0..4 {
            for j in 0..4 {
                let c = &self.coeffs[i] * &other.coeffs[j];
                if c.is_zero() {
                    continue;
                }
                let (key, c) = if i == 3 && j == 3 {
                    ((0, 0), c * int(3))
                } else {
                    ((i.min(j), i.max(j)), c)
                };
                *out.entry(key).or_insert_with(Rational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl Add for &Linear {
    type Output = Linear;
    fn add(self, rhs: &Linear) -> Linear {
        let mut out = self.clone();
        for (c, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        out
    }
}

impl Sub for &Linear {
    type Output = Linear;
    fn sub(self, rhs: &Linear) -> Linear {
        self + &-rhs
    }
}

impl Neg for &Linear {
    type Output = Linear;
    fn neg(self) -> Linear {
        Linear { coeffs: self.coeffs.clone().map(|c| -c) }
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead_negative = self.coeffs[1..].iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let order = if lead_negative && self.coeffs[0].is_positive() {
            [Atom::One, Atom::Pi, Atom::Catalan, Atom::Sqrt3]
        } else {
            [Atom::Pi, Atom::Catalan, Atom::Sqrt3, Atom::One]
        };
        let mut first = true;
        for atom in order {
            let c = self.coeff(atom);
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (atom, mag.is_one()) {
                (Atom::One, _) => f.write_str(&format_rational(&mag))?,
                (_, true) => f.write_str(atom.symbol())?,
                (_, false) => write!(f, "{}*{}", format_rational(&mag), atom.symbol())?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Exact symbolic value `num / den` of two linear forms over `{1, pi, G, sqrt3}`.
///
/// Equality compares `num1 * den2` with `num2 * den1` monomial by monomial,
/// treating pi, G and sqrt3 as algebraically independent apart from
/// `sqrt3^2 = 3`.
#[derive(Clone, Debug)]
pub struct ConstExpr {
    num: Linear,
    den: Linear,
}

impl ConstExpr {
    pub fn new(num: Linear, den: Linear) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("constant expression with zero denominator".into()));
        }
        Ok(ConstExpr { num, den })
    }

    pub fn linear(num: Linear) -> Self {
        ConstExpr { num, den: Linear::constant(Rational::one()) }
    }

    pub fn rational(r: Rational) -> Self {
        ConstExpr::linear(Linear::constant(r))
    }

    pub fn atom(a: Atom) -> Self {
        ConstExpr::linear(Linear::atom(a, Rational::one()))
    }

    pub fn pi() -> Self {
        ConstExpr::atom(Atom::Pi)
    }

    pub fn catalan() -> Self {
        ConstExpr::atom(Atom::Catalan)
    }

    pub fn num(&self) -> &Linear {
        &self.num
    }

    pub fn den(&self) -> &Linear {
        &self.den
    }

    /// The numerator form divided by a rational denominator, when there is one.
    pub fn as_linear(&self) -> Option<Linear> {
        let d = self.den.as_rational()?;
        Some(self.num.scale(&(Rational::one() / d)))
    }

    pub fn recip(&self) -> Result<Self> {
        ConstExpr::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ConstExpr { num: self.num.scale(r), den: self.den.clone() }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        ConstExpr { num: &self.num + &self.den.scale(r), den: self.den.clone() }
    }

    /// Product with a linear form; requires a rational denominator on one side
    /// to stay inside the representable class.
    pub fn mul_linear(&self, l: &Linear) -> Result<Self> {
        if let Some(r) = l.as_rational() {
            return Ok(self.scale(&r));
        }
        if let Some(d) = self.num.as_rational() {
            return ConstExpr::new(l.scale(&d), self.den.clone());
        }
        Err(Error::Domain("product leaves the linear-over-linear class".into()))
    }

    /// Value with at least `digits` correct decimals.
    pub fn eval(&self, digits: u32, src: &dyn ConstantSource) -> Result<HpReal> {
        let mut work = digits + guard_digits(digits);
        let limit = 3 * digits + 200;
        loop {
            let n = self.num.eval(work + 4, src)?;
            let d = self.den.eval(work + 4, src)?;
            if d.is_certainly_nonzero() {
                let q = n.div(&d, work)?;
                if q.digits() >= digits as i64 {
                    return Ok(q);
                }
            }
            if work >= limit {
                return Err(Error::Evaluation(format!(
                    "denominator of {self} indistinguishable from zero at {work} digits"
                )));
            }
            work = (work + work / 2 + 10).min(limit);
        }
    }
}

/// Value of `e` with at least `digits` correct decimals, from the reference oracles.
pub fn const_expr_eval(e: &ConstExpr, digits: u32) -> Result<HpReal> {
    e.eval(digits, &Reference)
}

impl PartialEq for ConstExpr {
    fn eq(&self, other: &Self) -> bool {
        self.num.times(&other.den) == other.num.times(&self.den)
    }
}

impl Eq for ConstExpr {}

impl From<Rational> for ConstExpr {
    fn from(r: Rational) -> Self {
        ConstExpr::rational(r)
    }
}

impl Mul<&Rational> for &ConstExpr {
    type Output = ConstExpr;
    fn mul(self, r: &Rational) -> ConstExpr {
        self.scale(r)
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.as_linear() {
            return write!(f, "{l}");
        }
        let wrap = |l: &Linear| {
            let s = l.to_string();
            let simple = l.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
                && !s.contains('/')
                && !s.starts_with('-');
            if simple {
                s
            } else {
                format!("({s})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[derive(Serialize, Deserialize)]
struct ExprRepr {
    num: [String; 4],
    den: [String; 4],
}

fn to_strings(l: &Linear) -> [String; 4] {
    l.coeffs.clone().map(|c| format_rational(&c))
}

fn from_strings(s: &[String; 4]) -> Result<Linear> {
    let mut l = Linear::default();
    for (c, txt) in l.coeffs.iter_mut().zip(s) {
        *c = parse_rational(txt)?;
    }
    Ok(l)
}

impl Serialize for ConstExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExprRepr { num: to_strings(&self.num), den: to_strings(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ExprRepr::deserialize(d)?;
        let num = from_strings(&r.num).map_err(serde::de::Error::custom)?;
        let den = from_strings(&r.den).map_err(serde::de::Error::custom)?;
        ConstExpr::new(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    fn pi_over_8_minus_third() -> ConstExpr {
        ConstExpr::linear(&Linear::atom(Atom::Pi, rat(1, 8)) - &Linear::constant(rat(1, 3)))
    }

    #[test]
    fn evaluation_examples() {
        let v = const_expr_eval(&pi_over_8_minus_third(), 10).unwrap();
        assert_eq!(v.format_digits(10), "0.0593657483");
        let one = ConstExpr::new(Linear::constant(int(1)), Linear::constant(int(1))).unwrap();
        assert_eq!(const_expr_eval(&one, 5).unwrap().format_digits(1), "1.0");
        let t = ConstExpr::new(
            Linear::constant(int(64)),
            &Linear::constant(int(19)) - &Linear::atom(Atom::Catalan, int(18)),
        )
        .unwrap();
        assert_eq!(const_expr_eval(&t, 13).unwrap().format_digits(15), "25.4714273178913");
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = pi_over_8_minus_third();
        let b = ConstExpr::new(
            &Linear::atom(Atom::Pi, int(3)) - &Linear::constant(int(8)),
            Linear::constant(int(24)),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, ConstExpr::pi());
        // 6 sqrt3 / pi == 18 / (sqrt3 pi)
        let x = ConstExpr::new(Linear::atom(Atom::Sqrt3, int(6)), Linear::atom(Atom::Pi, int(1))).unwrap();
        let y = ConstExpr::new(Linear::constant(int(18)), Linear::atom(Atom::Sqrt3, int(1)))
            .unwrap()
            .recip()
            .unwrap()
            .recip()
            .unwrap();
        assert_ne!(x, y);
        assert_eq!(x.recip().unwrap().recip().unwrap(), x);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(ConstExpr::new(Linear::constant(int(1)), Linear::default()).is_err());
        let nearly_zero = ConstExpr::new(
            Linear::constant(int(1)),
            &Linear::atom(Atom::Pi, int(1)) - &Linear::atom(Atom::Pi, int(1)),
        );
        assert!(nearly_zero.is_err());
    }

    #[test]
    fn display_and_serde() {
        assert_eq!(pi_over_8_minus_third().to_string(), "1/8*pi - 1/3");
        let e = ConstExpr::new(Linear::constant(int(64)), &Linear::constant(int(19)) - &Linear::atom(Atom::Catalan, int(18))).unwrap();
        assert_eq!(e.to_string(), "64/(19 - 18*G)");
        let js = serde_json::to_string(&e).unwrap();
        let back: ConstExpr = serde_json::from_str(&js).unwrap();
        assert_eq!(back, e);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
