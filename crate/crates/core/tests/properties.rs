//! Property tests for the arithmetic, fraction and series invariants.

use cflab::cf::{convergents, equivalence_transform, CfSpec, CoeffRule, Poly};
use cflab::euler::{check_partial_sum_identity, transform, AltSeries, Theorem};
use cflab::numerics::{
    catalan_reference, const_expr_eval, gamma_hp, int, pi_reference, rat, sqrt3_reference, Atom, ConstExpr, HpReal,
    Linear, Rational,
};
use cflab::series::Family;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn linear() -> impl Strategy<Value = Linear> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Linear { coeffs: [a, b, c, d] })
}

/// Digits after the decimal point that two truncated renderings share.
fn agree(a: &HpReal, b: &HpReal, decimals: u32) -> bool {
    a.truncated_decimals(decimals) == b.truncated_decimals(decimals)
        || (a - b).abs().definitely_below_pow10(decimals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_addition_is_exact(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let lhs = (rat(a, b) + rat(c, d)) * int(b * d);
        prop_assert_eq!(lhs - int(a * d + c * b), Rational::zero());
    }

    #[test]
    fn references_agree_across_precisions(d1 in 5u32..150, d2 in 5u32..150) {
        let m = d1.min(d2) - 1;
        prop_assert!(agree(&pi_reference(d1).unwrap(), &pi_reference(d2).unwrap(), m));
        prop_assert!(agree(&catalan_reference(d1).unwrap(), &catalan_reference(d2).unwrap(), m));
        prop_assert!(agree(&sqrt3_reference(d1).unwrap(), &sqrt3_reference(d2).unwrap(), m));
    }

    #[test]
    fn gamma_functional_equation(p in 1i64..2000, q in 1i64..100) {
        let x = rat(p, q);
        prop_assume!(x < int(20));
        let digits = 20;
        let lhs = gamma_hp(&(&x + int(1)), digits).unwrap();
        let rhs = gamma_hp(&x, digits).unwrap().mul_rational(&x);
        // multiplying by x < 20 costs at most two decimals
        prop_assert!((&lhs - &rhs).abs().definitely_below_pow10(digits - 2), "x = {}", x);
    }

    #[test]
    fn expression_times_reciprocal_is_one(num in linear(), den in linear()) {
        prop_assume!(!num.is_zero() && !den.is_zero());
        let e = ConstExpr::new(num, den).unwrap();
        let digits = 30;
        let (Ok(v), Ok(w)) = (const_expr_eval(&e, digits), const_expr_eval(&e.recip().unwrap(), digits)) else {
            // a numerically vanishing form (e.g. an exact cancellation) has no reciprocal to test
            return Ok(());
        };
        prop_assume!(v.is_certainly_nonzero() && w.is_certainly_nonzero());
        let prod = v.mul(&w);
        let one = HpReal::from_integer(1).rescale(prod.scale());
        let rel = prod.abs().digits().min(w.abs().digits()).min(v.abs().digits());
        prop_assert!((&prod - &one).abs().definitely_below_pow10((rel as u32).saturating_sub(3).min(digits - 1)));
    }

    #[test]
    fn expression_equality_is_scale_invariant(num in linear(), den in linear(), r in nonzero_rational(), s in nonzero_rational()) {
        prop_assume!(!den.is_zero());
        let e = ConstExpr::new(num.clone(), den.clone()).unwrap();
        let scaled = ConstExpr::new(num.scale(&r), den.scale(&r)).unwrap();
        prop_assert_eq!(&e, &e);
        prop_assert_eq!(&e, &scaled);
        prop_assert_eq!(&scaled, &e);
        let twice = ConstExpr::new(num.scale(&s), den.scale(&s)).unwrap();
        prop_assert_eq!(&scaled, &twice);
        prop_assert_eq!(&e, &twice);
        if !num.is_zero() {
            let changed = ConstExpr::new(num.scale(&int(2)), den).unwrap();
            prop_assert_ne!(&e, &changed);
        }
    }

    #[test]
    fn equivalence_transform_preserves_convergents(r in nonzero_rational(), c1 in 1i64..20, c0 in 0i64..20, b in 1i64..10) {
        let cf = CfSpec::new(int(b), CoeffRule::poly(Poly::from_ints(&[c0, c1])), CoeffRule::constant(int(b)));
        let before = convergents(&cf, 25).unwrap();
        for rule in [CoeffRule::constant(r.clone()), CoeffRule::poly(Poly::new(vec![r.clone(), int(1)]))] {
            prop_assume!(rule.nonzero_from(1));
            let t = equivalence_transform(&cf, &rule).unwrap();
            prop_assert_eq!(&convergents(&t, 25).unwrap(), &before);
        }
    }

    #[test]
    fn euler_transforms_match_partial_sums(c1 in 1i64..12, c0 in 0i64..12, theorem2 in any::<bool>()) {
        let rule = CoeffRule::poly(Poly::from_ints(&[c0, c1]));
        let (series, theorem) = if theorem2 {
            (AltSeries::biproduct(rule, 1), Theorem::II)
        } else {
            (AltSeries::reciprocal(rule, 1), Theorem::I)
        };
        let cf = transform(&series, theorem).unwrap();
        let report = check_partial_sum_identity(&series, &cf, 50).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        prop_assert_eq!(report.checked, 50);
    }

    #[test]
    fn partial_sum_differences_are_terms(f in 1u32..7, m in 1u32..7, n in 1usize..60) {
        for fam in [Family::Linear { factors: f }, Family::Quadratic { factors: m }, Family::ShiftedQuadratic { k: m % 4 }] {
            prop_assert_eq!(fam.partial_sum(n) - fam.partial_sum(n - 1), fam.nth(n));
        }
    }
}

fn every_family() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=6).map(|f| Family::Linear { factors: f }).collect();
    v.extend((1..=8).map(|m| Family::Quadratic { factors: m }));
    v.extend((0..=4).map(|k| Family::ShiftedQuadratic { k }));
    v.extend((1..=3).map(|variant| Family::PolyWeighted { variant }));
    v.extend([
        Family::ThreeConsecutive,
        Family::FiveConsecutive,
        Family::TwentyTwoSevenths,
        Family::GlaisherHalfPi,
        Family::GlaisherSqrt3,
    ]);
    v
}

#[test]
fn closed_forms_lie_within_tail_bounds() {
    let digits = 40;
    for fam in every_family() {
        let limit = const_expr_eval(&fam.closed_form().unwrap(), digits).unwrap();
        for n in [1usize, 5, 25, 100] {
            let s = HpReal::from_rational(&fam.partial_sum(n), digits + 5);
            let gap = (&s - &limit).abs();
            let bound = HpReal::from_rational(&fam.tail_bound(n), digits + 5);
            // gap minus its own rounding must not exceed the bound
            let slack = HpReal::new(gap.error_ulps().clone().into(), gap.scale(), Default::default());
            assert!(
                (&(&gap - &slack) - &bound).is_negative() || (&gap - &bound).abs().definitely_below_pow10(digits - 2),
                "{fam} at n = {n}: gap {} > bound {}",
                gap.to_sci(4),
                bound.to_sci(4)
            );
        }
    }
}

#[test]
fn shifted_sums_start_below_one() {
    for k in 0..=4u32 {
        let fam = Family::ShiftedQuadratic { k };
        assert_eq!(fam.start(), 1 - k as i64);
        let limit = const_expr_eval(&fam.closed_form().unwrap(), 80).unwrap();
        let n = 20;
        let s = HpReal::from_rational(&fam.partial_sum(n), 85);
        let gap = (&s - &limit).abs();
        let bound = HpReal::from_rational(&fam.tail_bound(n), 85);
        assert!((&gap - &bound).is_negative(), "k = {k}");
    }
}

#[test]
fn linear_recurrence_holds_coefficientwise() {
    use cflab::numerics::double_factorial;
    use cflab::series::linear_y_closed;
    for f in 2..=10u32 {
        let k = f as i64 - 1;
        let prev = linear_y_closed(f - 1).unwrap();
        let correction = Rational::one() / (int(2 * k) * Rational::from_integer(double_factorial(2 * k - 1).unwrap()));
        let expected = &prev.scale(&(Rational::one() / int(k))) - &Linear::constant(correction);
        assert_eq!(linear_y_closed(f).unwrap(), expected, "f = {f}");
        assert!(linear_y_closed(f).unwrap().coeff(Atom::Catalan).is_zero());
    }
}
