use num_traits::{One, Zero};

use super::rule::CoeffRule;
use super::spec::CfSpec;
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Equivalence transformation: `a'_n = r_n r_{n-1} a_n`, `b'_n = r_n b_n`
/// with `r_0 = 1`. Every convergent keeps its value.
///
/// Because `r_0 = 1` need not match the rule at `n = 0`, the first term is
/// moved into the explicit head unless the rule already gives `r(0) = 1`.
pub fn equivalence_transform(cf: &CfSpec, r: &CoeffRule) -> Result<CfSpec> {
    if !r.nonzero_from(1) {
        return Err(Error::Domain("equivalence factors must be nonzero for n >= 1".into()));
    }
    let r0_is_one = matches!(r.eval(0), Ok(v) if v.is_one());
    let promote = if cf.head.is_empty() && !r0_is_one { 1 } else { cf.head.len() };
    let promote = cf.available(promote);

    let mut head = Vec::with_capacity(promote);
    let mut r_prev = Rational::one();
    for n in 1..=promote {
        let rn = r.eval(n as i64)?;
        if rn.is_zero() {
            return Err(Error::Domain(format!("equivalence factor vanishes at n = {n}")));
        }
        let (a, b) = cf.term(n)?;
        head.push((&rn * &r_prev * a, &rn * b));
        r_prev = rn;
    }
    Ok(CfSpec {
        b0: cf.b0.clone(),
        head,
        a_rule: cf.a_rule.mul(r).mul(&r.shifted(-1)),
        b_rule: cf.b_rule.mul(r),
        len: cf.len,
    })
}
