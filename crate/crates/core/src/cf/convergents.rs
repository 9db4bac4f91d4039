use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::spec::CfSpec;
use crate::error::{Error, Result};
use crate::numerics::{HpReal, Rational};

/// Reduced convergent `c_index = p / q` with `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

/// How the integer state of a [`ConvergentStream`] is kept small.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Reduce only when a convergent is emitted.
    #[default]
    AtEmission,
    /// Divide the whole recurrence state by its gcd after every step.
    EveryStep,
}

/// Forward three-term recurrence over integers.
///
/// Rational coefficients are cleared with the equivalence factors
/// `r_n = lcm(den a_n, den b_n)`, i.e. the stream runs on `a'_n = r_n r_{n-1} a_n`,
/// `b'_n = r_n b_n` with `r_0 = den b_0`, which leaves every ratio `P_n / Q_n`
/// equal to the convergent `c_n`. The determinant
/// `D_n = P_n Q_{n-1} - P_{n-1} Q_n = -a'_n D_{n-1}` is carried along so that
/// `|c_n - c_{n-1}| = |D_n| / |Q_n Q_{n-1}|` is available without a gcd.
#[derive(Clone, Debug)]
pub struct ConvergentStream<'a> {
    cf: &'a CfSpec,
    n: usize,
    p_prev: BigInt,
    q_prev: BigInt,
    p: BigInt,
    q: BigInt,
    r_prev: BigInt,
    det: BigInt,
    reduction: Reduction,
    last_a_zero: bool,
}

impl<'a> ConvergentStream<'a> {
    pub fn new(cf: &'a CfSpec, reduction: Reduction) -> Self {
        let r0 = cf.b0.denom().clone();
        ConvergentStream {
            cf,
            n: 0,
            p_prev: BigInt::one(),
            q_prev: BigInt::zero(),
            p: cf.b0.numer().clone(),
            q: r0.clone(),
            det: -r0.clone(),
            r_prev: r0,
            reduction,
            last_a_zero: false,
        }
    }

    pub fn index(&self) -> usize {
        self.n
    }

    /// The fraction has no term `index + 1`.
    pub fn exhausted(&self) -> bool {
        self.cf.len.is_some_and(|l| self.n >= l)
    }

    /// The most recent partial numerator was zero, so the value is final.
    pub fn terminated(&self) -> bool {
        self.last_a_zero
    }

    /// Advances to the next convergent. Returns `false` when the fraction is
    /// exhausted.
    pub fn advance(&mut self) -> Result<bool> {
        if self.exhausted() {
            return Ok(false);
        }
        let n = self.n + 1;
        let (a, b) = self.cf.term(n)?;
        let r = a.denom().lcm(b.denom());
        let a_int = a.numer() * (&r / a.denom()) * &self.r_prev;
        let b_int = b.numer() * (&r / b.denom());
        let p_new = &b_int * &self.p + &a_int * &self.p_prev;
        let q_new = &b_int * &self.q + &a_int * &self.q_prev;
        if q_new.is_zero() {
            return Err(Error::Breakdown { index: n });
        }
        self.det = -(&a_int * &self.det);
        self.p_prev = std::mem::replace(&mut self.p, p_new);
        self.q_prev = std::mem::replace(&mut self.q, q_new);
        self.r_prev = r;
        self.last_a_zero = a_int.is_zero();
        self.n = n;
        if self.reduction == Reduction::EveryStep {
            self.reduce_state();
        }
        Ok(true)
    }

    fn reduce_state(&mut self) {
        let g = self.p.gcd(&self.q).gcd(&self.p_prev).gcd(&self.q_prev);
        if g > BigInt::one() {
            self.p /= &g;
            self.q /= &g;
            self.p_prev /= &g;
            self.q_prev /= &g;
            self.det /= &g * &g;
        }
    }

    /// Current unreduced pair `(P_n, Q_n)`.
    pub fn raw(&self) -> (&BigInt, &BigInt) {
        (&self.p, &self.q)
    }

    pub fn current(&self) -> Convergent {
        reduced(self.n, &self.p, &self.q)
    }

    pub fn previous(&self) -> Convergent {
        reduced(self.n.saturating_sub(1), &self.p_prev, &self.q_prev)
    }

    /// `floor(c_n 10^scale)` with one ulp of error.
    pub fn value_hp(&self, scale: u32) -> HpReal {
        ratio_hp(&self.p, &self.q, scale)
    }

    pub fn previous_hp(&self, scale: u32) -> HpReal {
        ratio_hp(&self.p_prev, &self.q_prev, scale)
    }

    /// `|c_n - c_{n-1}|` at the given scale (rounded up).
    pub fn delta_hp(&self, scale: u32) -> HpReal {
        let num = self.det.magnitude() * crate::numerics::rational::pow10(scale).magnitude();
        let den = self.q.magnitude() * self.q_prev.magnitude();
        let (q, r) = num.div_rem(&den);
        let m = if r.is_zero() { q } else { q + 1u32 };
        HpReal::new(BigInt::from(m), scale, BigUint::zero())
    }

    /// `|c_n - c_{n-1}| < 10^-digits`, decided mostly from bit lengths.
    pub fn delta_below(&self, digits: u32) -> bool {
        if self.n == 0 || self.det.is_zero() {
            return true;
        }
        let bd = self.det.bits() as f64;
        let bq = (self.q.bits() + self.q_prev.bits()) as f64;
        let k = digits as f64 * std::f64::consts::LOG2_10;
        if bd + k + 2.0 < bq - 2.0 {
            return true;
        }
        if bd + k - 2.0 > bq + 1.0 {
            return false;
        }
        let lhs = self.det.magnitude() * crate::numerics::rational::pow10(digits).magnitude();
        lhs < self.q.magnitude() * self.q_prev.magnitude()
    }
}

fn reduced(index: usize, p: &BigInt, q: &BigInt) -> Convergent {
    let g = p.gcd(q);
    let (mut p, mut q) = (p / &g, q / &g);
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    Convergent { index, p, q }
}

/// `floor(p/q * 10^scale)` with one ulp of error, or exact when it divides.
pub fn ratio_hp(p: &BigInt, q: &BigInt, scale: u32) -> HpReal {
    let (p, q) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
    let (m, r) = (p * crate::numerics::rational::pow10(scale)).div_mod_floor(&q);
    let err = if r.is_zero() { BigUint::zero() } else { BigUint::one() };
    HpReal::new(m, scale, err)
}

/// `c_0 ..= c_N` (fewer for finite fractions), each reduced.
pub fn convergents(cf: &CfSpec, n: usize) -> Result<Vec<Convergent>> {
    if n == 0 {
        return Err(Error::Domain("need at least one convergent".into()));
    }
    let mut s = ConvergentStream::new(cf, Reduction::AtEmission);
    let mut out = vec![s.current()];
    while s.index() < n && s.advance()? {
        out.push(s.current());
    }
    Ok(out)
}

/// `(p_n, q_n)` for `n = 0..=N` straight from the textbook recurrence with
/// rational coefficients, without any rescaling.
pub fn raw_recurrence(cf: &CfSpec, n: usize) -> Result<Vec<(Rational, Rational)>> {
    let mut prev = (Rational::one(), Rational::zero());
    let mut cur = (cf.b0.clone(), Rational::one());
    let mut out = vec![cur.clone()];
    for k in 1..=cf.available(n) {
        let (a, b) = cf.term(k)?;
        let next = (&b * &cur.0 + &a * &prev.0, &b * &cur.1 + &a * &prev.1);
        if next.1.is_zero() {
            return Err(Error::Breakdown { index: k });
        }
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Outcome of [`bracket_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketCheck {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// Checks that every `c_n` (2 <= n <= N) lies between `c_{n-2}` and
/// `c_{n-1}`: even and odd convergents then close in on the limit from
/// opposite sides.
pub fn bracket_check(cf: &CfSpec, n: usize) -> Result<BracketCheck> {
    if n < 3 {
        return Err(Error::Domain("bracket check needs N >= 3".into()));
    }
    let cs = convergents(cf, n)?;
    for w in cs.windows(3) {
        let (x, y, z) = (w[0].value(), w[1].value(), w[2].value());
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        if z < lo || z > hi {
            return Ok(BracketCheck { holds: false, first_violation: Some(w[2].index) });
        }
    }
    Ok(BracketCheck { holds: true, first_violation: None })
}

/// Outcome of [`determinant_identity`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantCheck {
    pub checked: usize,
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// Checks `p_n q_{n-1} - p_{n-1} q_n = (-1)^(n-1) a_1 a_2 ... a_n` exactly for
/// `1 <= n <= N` on the unscaled recurrence.
pub fn determinant_identity(cf: &CfSpec, n: usize) -> Result<DeterminantCheck> {
    let pq = raw_recurrence(cf, n)?;
    let mut product = Rational::one();
    for k in 1..pq.len() {
        let (a, _) = cf.term(k)?;
        product = -product * a;
        let (p1, q1) = &pq[k];
        let (p0, q0) = &pq[k - 1];
        if p1 * q0 - p0 * q1 != -product.clone() {
            return Ok(DeterminantCheck { checked: k, holds: false, first_failure: Some(k) });
        }
    }
    Ok(DeterminantCheck { checked: pq.len() - 1, holds: true, first_failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{equivalence_transform, CoeffRule, Poly};
    use crate::numerics::{int, rat};

    fn brouncker() -> CfSpec {
        CfSpec::new(int(1), CoeffRule::poly(Poly::from_ints(&[1, -4, 4])), CoeffRule::constant(int(2)))
    }

    fn lange() -> CfSpec {
        CfSpec::new(int(6), CoeffRule::poly(Poly::from_ints(&[1, 4, 4])), CoeffRule::constant(int(6)))
    }

    #[test]
    fn brouncker_convergents() {
        let cs = convergents(&brouncker(), 3).unwrap();
        let vals: Vec<Rational> = cs.iter().map(Convergent::value).collect();
        assert_eq!(vals, vec![int(1), rat(3, 2), rat(15, 13), rat(105, 76)]);
    }

    #[test]
    fn constant_fraction_has_one_convergent() {
        let cs = convergents(&CfSpec::constant(rat(7, 3)), 10).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].value(), rat(7, 3));
    }

    #[test]
    fn stream_matches_raw_recurrence() {
        for reduction in [Reduction::AtEmission, Reduction::EveryStep] {
            let cf = lange();
            let raw = raw_recurrence(&cf, 40).unwrap();
            let mut s = ConvergentStream::new(&cf, reduction);
            for (p, q) in raw.iter().skip(1) {
                assert!(s.advance().unwrap());
                assert_eq!(s.current().value(), Rational::new(p.numer() * q.denom(), p.denom() * q.numer()));
            }
        }
    }

    #[test]
    fn lange_brackets_glaisher_does_not() {
        assert!(bracket_check(&lange(), 50).unwrap().holds);
        let glaisher = CfSpec::new(
            int(1),
            CoeffRule::poly(Poly::from_ints(&[0, 1, -2])),
            CoeffRule::poly(Poly::from_ints(&[1, 3])),
        );
        let b = bracket_check(&glaisher, 20).unwrap();
        assert!(!b.holds);
        assert_eq!(b.first_violation, Some(2));
    }

    #[test]
    fn determinant_identity_holds() {
        assert!(determinant_identity(&brouncker(), 30).unwrap().holds);
        assert!(determinant_identity(&lange(), 30).unwrap().holds);
    }

    #[test]
    fn equivalence_keeps_convergents() {
        let cf = brouncker();
        let before = convergents(&cf, 25).unwrap();
        for r in [CoeffRule::constant(int(1)), CoeffRule::constant(rat(1, 2)), CoeffRule::poly(Poly::from_ints(&[1, 1]))] {
            let t = equivalence_transform(&cf, &r).unwrap();
            assert_eq!(convergents(&t, 25).unwrap(), before);
        }
    }
}
