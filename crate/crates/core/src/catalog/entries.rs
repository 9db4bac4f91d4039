use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{AltForm, Built, CatalogEntry, Oracle, ParamSpec, Params, Target, Tier};
use crate::cf::{convergents, CfSpec, CoeffRule, Poly, Strategy};
use crate::error::{Error, Result};
use crate::numerics::{double_factorial, int, rat, Atom, ConstExpr, Linear, Rational};
use crate::series::{linear_y_closed, quadratic_y_closed};

fn poly(c: &[i64]) -> CoeffRule {
    CoeffRule::poly(Poly::from_ints(c))
}

fn konst(c: Rational) -> CoeffRule {
    CoeffRule::constant(c)
}

fn pi() -> Linear {
    Linear::atom(Atom::Pi, int(1))
}

fn catalan() -> Linear {
    Linear::atom(Atom::Catalan, int(1))
}

fn c(r: Rational) -> Linear {
    Linear::constant(r)
}

/// `num / den` as a target.
fn ratio(num: Linear, den: Linear) -> Result<ConstExpr> {
    ConstExpr::new(num, den)
}

/// `(2k - 1)^2`, the odd squares.
fn odd_squares() -> CoeffRule {
    poly(&[1, -4, 4])
}

fn p(params: &Params, name: &str) -> Rational {
    params.get(name).cloned().expect("validated parameter")
}

fn p_int(params: &Params, name: &str) -> i64 {
    let v = p(params, name);
    i64::try_from(v.to_integer()).expect("parameter fits in i64")
}

fn int_param(name: &'static str, min: i64) -> ParamSpec {
    ParamSpec { name, integer: true, min: int(min), min_exclusive: false }
}

fn rat_param(name: &'static str, above: Rational) -> ParamSpec {
    ParamSpec { name, integer: false, min: above, min_exclusive: true }
}

fn sweep1(name: &str, range: std::ops::RangeInclusive<i64>) -> Vec<Params> {
    range.map(|v| Params::new().with(name, int(v))).collect()
}

/// `P_n = prod_{k=1}^n (2k-1)(2k+1)/(2k)^2`, partial Wallis products.
pub fn wallis_p(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat((2 * k - 1) * (2 * k + 1), 4 * k * k))
}

/// Ramanujan's products: `P_{-1} = 1/2`,
/// `P_{2m} = prod_{k=1}^m 2k(2k+2)/(2k+1)^2`, `P_{2m+1} = P_{2m} (2m+2)/(2m+3)`.
pub fn ramanujan_p(n: i64) -> Result<Rational> {
    if n < -1 {
        return Err(Error::Domain(format!("P_n is defined for n >= -1, got {n}")));
    }
    if n == -1 {
        return Ok(rat(1, 2));
    }
    let m = n / 2;
    let even = (1..=m).fold(Rational::one(), |acc, k| acc * rat(2 * k * (2 * k + 2), (2 * k + 1) * (2 * k + 1)));
    Ok(if n % 2 == 0 { even } else { even * rat(2 * m + 2, 2 * m + 3) })
}

fn fixed(
    id: &'static str,
    description: &'static str,
    provenance: &'static str,
    tier: Tier,
    strategy: Strategy,
    max_terms: usize,
    builder: fn(&Params) -> Result<Built>,
) -> CatalogEntry {
    CatalogEntry {
        id,
        description,
        provenance,
        params: Vec::new(),
        sweep: vec![Params::new()],
        tier,
        strategy,
        max_terms,
        builder,
    }
}

const EXTRAPOLATE: Strategy = Strategy::Extrapolate;
const DIRECT: Strategy = Strategy::Direct;
const AUTO: Strategy = Strategy::Auto { direct_terms: 2000 };

fn brouncker(_: &Params) -> Result<Built> {
    Built::closed(CfSpec::new(int(1), odd_squares(), konst(int(2))), ratio(c(int(4)), pi())?)
}

fn integral_cf(m: &Rational, n: &Rational) -> CfSpec {
    // 1/(n + n^2/(m + (m+n)^2/(m + (2m+n)^2/(m + ...))))
    let base = n - m * int(2);
    let lin = Poly::new(vec![base, m.clone()]);
    CfSpec::new(Rational::zero(), CoeffRule::poly(lin.mul(&lin)), konst(m.clone()))
        .with_head(vec![(int(1), n.clone())])
}

fn euler_integral(params: &Params) -> Result<Built> {
    let (m, n) = (p(params, "m"), p(params, "n"));
    Ok(Built {
        cf: integral_cf(&m, &n),
        target: Target::Oracle { oracle: Oracle::IntegralSum { m, n } },
        alt_forms: Vec::new(),
    })
}

fn pi8_disguise(_: &Params) -> Result<Built> {
    Built::closed(integral_cf(&int(4), &int(2)), ConstExpr::linear(pi().scale(&rat(1, 8))))
}

fn half_pi_tail(b0: i64) -> CfSpec {
    CfSpec::new(int(b0), poly(&[3, -8, 4]), konst(int(4))).with_head(vec![(int(2), int(3))])
}

fn pi_over2_minus1(_: &Params) -> Result<Built> {
    Built::closed(half_pi_tail(0), ConstExpr::linear(&pi().scale(&rat(1, 2)) - &c(int(1))))
}

fn convergent_relation(_: &Params) -> Result<Built> {
    Built::closed(half_pi_tail(1), ConstExpr::linear(pi().scale(&rat(1, 2))))
}

fn general_formula(params: &Params) -> Result<Built> {
    let n = p_int(params, "n");
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let b = 4 * (n + 2);
    let cf = CfSpec::new(Rational::zero(), poly(&[3, -8, 4]), konst(int(b)))
        .with_head(vec![(int(2 * sign), int(b - sign))]);
    let rp = ramanujan_p(n)?;
    let quarter_pi = pi().scale(&rat(1, 4));
    let target = ConstExpr::linear(&quarter_pi.scale(&rp.recip()) - &c(int(1)));
    let alt = AltForm {
        label: format!("pi/4 = P_{n} (1 + fraction)"),
        factor: rp,
        offset: int(1),
        expr: ConstExpr::linear(quarter_pi),
    };
    Ok(Built { cf, target: Target::Closed { expr: target }, alt_forms: vec![alt] })
}

fn euler_s31(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(1), poly(&[0, -1, 1]), konst(int(1))).with_head(vec![(int(1), int(1))]);
    Built::closed(cf, ConstExpr::linear(pi().scale(&rat(1, 2))))
}

fn euler_s33(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(2), poly(&[1, -2, 1]), konst(int(2))).with_head(vec![(int(-1), int(2))]);
    Built::closed(cf, ConstExpr::linear(pi().scale(&rat(1, 2))))
}

fn sqrt3(k: i64) -> Linear {
    Linear::atom(Atom::Sqrt3, int(k))
}

fn six_sqrt3_over_pi(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(3), poly(&[3, -12, 12]), poly(&[4, 4]));
    Built::closed(cf, ratio(sqrt3(6), pi())?)
}

fn glaisher_2_over_pi(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(1), poly(&[0, 1, -2]), poly(&[1, 3]));
    Built::closed(cf, ratio(c(int(2)), pi())?)
}

fn glaisher_3sqrt3_over_pi(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(2), poly(&[0, 2, -4]), poly(&[2, 5]));
    Built::closed(cf, ratio(sqrt3(3), pi())?)
}

fn thm3_family(params: &Params) -> Result<Built> {
    let f = p_int(params, "f");
    // a_n = (2n - 1)(2n + 2f - 3)
    let a = Poly::from_ints(&[-1, 2]).mul(&Poly::from_ints(&[2 * f - 3, 2]));
    let cf = CfSpec::new(int(2 * f - 1), CoeffRule::poly(a), konst(int(2 * f)));
    let y = linear_y_closed(f as u32)?;
    let df = Rational::from_integer(double_factorial(2 * f - 3)?);
    Built::closed(cf, ratio(c(int(1)), y.scale(&df))?)
}

fn lange(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(6), poly(&[1, 4, 4]), konst(int(6)));
    Built::closed(cf, ratio(c(int(1)), &pi() - &c(int(3)))?)
}

fn ten_cf(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(10), poly(&[-3, 4, 4]), konst(int(10)));
    Built::closed(cf, ratio(c(int(6)), &c(int(10)) - &pi().scale(&int(3)))?)
}

fn sixteen_over_pi(_: &Params) -> Result<Built> {
    let cf = CfSpec::new(int(5), odd_squares(), konst(int(10)));
    Built::closed(cf, ratio(c(int(16)), pi())?)
}

fn osler_class1(params: &Params) -> Result<Built> {
    let n = p_int(params, "n");
    let b = 4 * n + 1;
    let cf = CfSpec::new(int(b), odd_squares(), konst(int(2 * b)));
    let coeff = int(4 * (2 * n + 1)) / wallis_p(n as u32);
    Built::closed(cf, ratio(c(coeff), pi())?)
}

fn osler_class2(params: &Params) -> Result<Built> {
    let n = p_int(params, "n");
    let b = 4 * n + 3;
    let cf = CfSpec::new(int(b), odd_squares(), konst(int(2 * b)));
    let coeff = int(2 * n + 1) * wallis_p(n as u32);
    Built::closed(cf, ConstExpr::linear(pi().scale(&coeff)))
}

fn gamma_quotient(params: &Params) -> Result<Built> {
    let (x, y) = (p(params, "x"), p(params, "y"));
    for (label, arg) in [("x + 1 - y", &x + int(1) - &y), ("x + 1 + y", &x + int(1) + &y)] {
        if arg <= Rational::zero() {
            return Err(Error::Domain(format!(
                "gamma quotient needs {label} > 0 (no poles), got x = {x}, y = {y}"
            )));
        }
    }
    // a_k = (2k - 1)^2 - y^2
    let a = Poly::from_ints(&[1, -4, 4]).sub(&Poly::constant(&y * &y));
    let cf = CfSpec::new(x.clone(), CoeffRule::poly(a), konst(&x * int(2)));
    Ok(Built { cf, target: Target::Oracle { oracle: Oracle::GammaQuotient { x, y } }, alt_forms: Vec::new() })
}

fn ramanujan_2g_a(_: &Params) -> Result<Built> {
    // k >= 2: even k -> (k^2, 1), odd k -> ((k-1)^2, 3)
    let a = CoeffRule::polys(vec![Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[1, -2, 1])], 2);
    let b = CoeffRule::polys(vec![Poly::from_ints(&[1]), Poly::from_ints(&[3])], 2);
    let cf = CfSpec::new(int(2), a, b).with_head(vec![(int(-1), int(3))]);
    Built::closed(cf, ConstExpr::linear(catalan().scale(&int(2))))
}

fn ramanujan_2g_b(_: &Params) -> Result<Built> {
    // k >= 2: even k -> k^2/4, odd k -> (k^2 - 1)/4
    let q = rat(1, 4);
    let a = CoeffRule::polys(
        vec![Poly::new(vec![int(0), int(0), q.clone()]), Poly::new(vec![-q.clone(), int(0), q])],
        2,
    );
    let cf = CfSpec::new(int(1), a, konst(rat(1, 2))).with_head(vec![(int(1), rat(1, 2))]);
    Built::closed(cf, ConstExpr::linear(catalan().scale(&int(2))))
}

fn entry16(params: &Params) -> Result<Built> {
    let (m, n) = (p(params, "m"), p(params, "n"));
    let one = Rational::one();
    // a_k = (m + k - 1)^2 (n + k - 1)^2, b_k = m + n + 2k - 1
    let am = Poly::new(vec![&m - &one, one.clone()]);
    let an = Poly::new(vec![&n - &one, one.clone()]);
    let a = am.mul(&an).pow(2);
    let b = Poly::new(vec![&m + &n - &one, int(2)]);
    let b1 = (&m + &one) * (&n + &one);
    let cf = CfSpec::new(Rational::zero(), CoeffRule::poly(a), CoeffRule::poly(b)).with_head(vec![(one, b1)]);
    Ok(Built { cf, target: Target::Oracle { oracle: Oracle::ProductSum { m, n } }, alt_forms: Vec::new() })
}

fn bowman(_: &Params) -> Result<Built> {
    // 1/(1 + 1^4/(8 + 3^4/(16 + 5^4/(24 + ...))))
    let cf = CfSpec::new(Rational::zero(), poly(&[-3, 2]).mul(&poly(&[-3, 2])).mul(&poly(&[9, -12, 4])), poly(&[-8, 8]))
        .with_head(vec![(int(1), int(1))]);
    Built::closed(cf, ConstExpr::linear(catalan()))
}

fn thm4_family(params: &Params) -> Result<Built> {
    let k = p_int(params, "k");
    // a_n = (2n - 1)^2 (2k + 2n - 1)^2, b_n = (2k + 2n + 1)^2 - (2n - 1)^2
    let a = Poly::from_ints(&[-1, 2]).mul(&Poly::from_ints(&[2 * k - 1, 2])).pow(2);
    let b = Poly::from_ints(&[2 * k + 1, 2]).pow(2).sub(&Poly::from_ints(&[-1, 2]).pow(2));
    let cf = CfSpec::new(int((2 * k + 1).pow(2)), CoeffRule::poly(a), CoeffRule::poly(b));
    let y = quadratic_y_closed(k as u32 + 1)?;
    let df = Rational::from_integer(double_factorial(2 * k - 1)?);
    Built::closed(cf, ratio(c(int(1)), y.scale(&(&df * &df)))?)
}

fn sec5(b0: i64, a1: i64, scale: i64, num: Rational, g: i64, k: Rational) -> Result<Built> {
    let fourth = poly(&[-1, 2]).mul(&poly(&[-1, 2])).mul(&poly(&[1, -4, 4]));
    let cf = CfSpec::new(int(b0), fourth, poly(&[0, 8 * scale])).with_head(vec![(int(a1), int(8 * scale))]);
    Built::closed(cf, ratio(c(num), &catalan().scale(&int(g)) - &c(k))?)
}

fn sec5_cf1(_: &Params) -> Result<Built> {
    sec5(7, 3, 3, int(1 << 5), 6, int(1))
}

fn sec5_cf2(_: &Params) -> Result<Built> {
    sec5(145, 41, 5, int(1 << 13), 82, int(19))
}

fn sec5_cf3(_: &Params) -> Result<Built> {
    sec5(229, 49, 7, int(1 << 17), 882, rat(713, 3))
}

pub(super) fn all() -> Vec<CatalogEntry> {
    let mut v = vec![
        fixed("brouncker", "4/pi = 1 + 1^2/(2 + 3^2/(2 + 5^2/(2 + ...)))", "Brouncker's fraction, converted from Wallis' product", Tier::Slow, EXTRAPOLATE, 1 << 13, brouncker),
        fixed("pi8_disguise", "pi/8 = 1/(2 + 2^2/(4 + 6^2/(4 + 10^2/(4 + ...))))", "Euler: Brouncker's fraction in disguise", Tier::Slow, EXTRAPOLATE, 1 << 13, pi8_disguise),
        fixed("pi_over2_minus1", "pi/2 - 1 = 2/(3 + 1*3/(4 + 3*5/(4 + ...)))", "Euler's fraction from the two-factor series", Tier::Slow, EXTRAPOLATE, 1 << 13, pi_over2_minus1),
        fixed("convergent_relation", "pi/2 = 1 + 2/(3 + 1*3/(4 + 3*5/(4 + ...)))", "Euler's recurrences for the numerators and denominators of the approximants", Tier::Slow, EXTRAPOLATE, 1 << 13, convergent_relation),
        fixed("euler_s31", "pi/2 = 1 + 1/(1 + 1*2/(1 + 2*3/(1 + ...)))", "Euler's first fraction with unit denominators", Tier::Slow, EXTRAPOLATE, 1 << 13, euler_s31),
        fixed("euler_s33", "pi/2 = 2 - 1/(2 + 1^2/(2 + 2^2/(2 + ...)))", "Euler's fraction with denominators 2", Tier::Slow, EXTRAPOLATE, 1 << 13, euler_s33),
        fixed("six_sqrt3_over_pi", "6 sqrt3/pi = 3 + 3*1^2/(8 + 3*3^2/(12 + ...))", "Euler's fraction with partial denominators 4n", Tier::Fast, DIRECT, 4000, six_sqrt3_over_pi),
        fixed("glaisher_2_over_pi", "2/pi = 1 - 1*1/(4 - 2*3/(7 - 3*5/(10 - ...)))", "Glaisher's fraction with partial denominators 3n - 2", Tier::Fast, DIRECT, 4000, glaisher_2_over_pi),
        fixed("glaisher_3sqrt3_over_pi", "3 sqrt3/pi = 2 - 2(1*1)/(7 - 2(2*3)/(12 - ...))", "Glaisher's fraction with partial denominators 5n - 3", Tier::Fast, DIRECT, 4000, glaisher_3sqrt3_over_pi),
        fixed("lange", "1/(pi - 3) = 6 + 3^2/(6 + 5^2/(6 + ...))", "Lange's fraction (1999)", Tier::Slow, EXTRAPOLATE, 1 << 13, lange),
        fixed("ten_cf", "6/(10 - 3 pi) = 10 + 1*5/(10 + 3*7/(10 + ...))", "fraction converted from the five-factor series", Tier::Moderate, AUTO, 1 << 13, ten_cf),
        fixed("sixteen_over_pi", "16/pi = 5 + 1^2/(10 + 3^2/(10 + ...))", "Osler's fraction for 16/pi", Tier::Moderate, AUTO, 1 << 13, sixteen_over_pi),
        fixed("ramanujan_2G_a", "2G = 2 - 1/(3 + 2^2/(1 + 2^2/(3 + 4^2/(1 + ...))))", "Ramanujan's first fraction for 2G", Tier::Slow, EXTRAPOLATE, 1 << 13, ramanujan_2g_a),
        fixed("ramanujan_2G_b", "2G = 1 + 1^2/(1/2 + 1^2/(1/2 + 1*2/(1/2 + 2^2/(1/2 + ...))))", "Ramanujan's second fraction for 2G", Tier::Slow, Strategy::ExtrapolateLog, 1 << 14, ramanujan_2g_b),
        fixed("bowman", "G = 1/(1 + 1^4/(8 + 3^4/(16 + 5^4/(24 + ...))))", "Bowman's fraction for G from the squared series", Tier::Slow, EXTRAPOLATE, 1 << 13, bowman),
        fixed("sec5_cf1", "2^5/(6G - 1) = 7 + 3*1^4/(24 + 3^4/(48 + ...))", "fraction from the series weighted by 4n^2 + 3", Tier::Moderate, AUTO, 1 << 13, sec5_cf1),
        fixed("sec5_cf2", "2^13/(82G - 19) = 145 + 41*1^4/(40 + 3^4/(80 + ...))", "fraction from the series weighted by 16n^4 + 88n^2 + 41", Tier::Moderate, AUTO, 1 << 13, sec5_cf2),
        fixed("sec5_cf3", "2^17/(882G - 713/3) = 229 + 49*1^4/(56 + 3^4/(112 + ...))", "fraction from the series weighted by 64n^6 + 1168n^4 + 3628n^2 + 1323", Tier::Moderate, AUTO, 1 << 13, sec5_cf3),
    ];
    let two_ints = |pairs: &[(i64, i64)]| -> Vec<Params> {
        pairs.iter().map(|&(m, n)| Params::new().with("m", int(m)).with("n", int(n))).collect()
    };
    v.push(CatalogEntry {
        id: "euler_integral",
        description: "sum_(k>=0) (-1)^k/(n + km) = 1/(n + n^2/(m + (m+n)^2/(m + (2m+n)^2/(m + ...))))",
        provenance: "Euler's integral formula",
        params: vec![int_param("m", 1), int_param("n", 1)],
        sweep: two_ints(&[(1, 1), (2, 1), (2, 3), (3, 1), (4, 1), (4, 3)]),
        tier: Tier::Slow,
        strategy: EXTRAPOLATE,
        max_terms: 1 << 13,
        builder: euler_integral,
    });
    v.push(CatalogEntry {
        id: "general_formula",
        description: "pi/(4 P_n) - 1 = (-1)^(n+1) 2/(4(n+2) + (-1)^n + 1*3/(4(n+2) + 3*5/(4(n+2) + ...)))",
        provenance: "Ramanujan's general formula",
        params: vec![int_param("n", -1)],
        sweep: sweep1("n", -1..=6),
        tier: Tier::Moderate,
        strategy: AUTO,
        max_terms: 1 << 13,
        builder: general_formula,
    });
    v.push(CatalogEntry {
        id: "thm3_family",
        description: "1/((2f-3)!! Y_f) = 2f - 1 + 1*(2f-1)/(2f + 3*(2f+1)/(2f + ...)), Y_f the f-factor series",
        provenance: "theorem on the series with f linear odd factors",
        params: vec![int_param("f", 1)],
        sweep: sweep1("f", 2..=8),
        tier: Tier::Moderate,
        strategy: AUTO,
        max_terms: 1 << 13,
        builder: thm3_family,
    });
    for (id, desc, prov, builder) in [
        ("osler_class1", "(2n+1) 4/(pi P_n) = 4n + 1 + 1^2/(2(4n+1) + 3^2/(2(4n+1) + ...))", "Osler's first class of Brouncker-type fractions", osler_class1 as fn(&Params) -> Result<Built>),
        ("osler_class2", "(2n+1) P_n pi = 4n + 3 + 1^2/(2(4n+3) + 3^2/(2(4n+3) + ...))", "Osler's second class of Brouncker-type fractions", osler_class2),
    ] {
        v.push(CatalogEntry {
            id,
            description: desc,
            provenance: prov,
            params: vec![int_param("n", 0)],
            sweep: sweep1("n", 0..=5),
            tier: Tier::Moderate,
            strategy: AUTO,
            max_terms: 1 << 13,
            builder,
        });
    }
    let xy = |x: Rational, y: i64| Params::new().with("x", x).with("y", int(y));
    v.push(CatalogEntry {
        id: "gamma_quotient",
        description: "4 G((x+3+y)/4) G((x+3-y)/4)/(G((x+1+y)/4) G((x+1-y)/4)) = x + (1^2-y^2)/(2x + (3^2-y^2)/(2x + ...))",
        provenance: "gamma-quotient fraction, valid for y an odd integer or x > 0",
        params: vec![rat_param("x", int(0)), ParamSpec { name: "y", integer: false, min: int(0), min_exclusive: false }],
        sweep: vec![
            xy(rat(1, 2), 1),
            xy(int(1), 1),
            xy(rat(3, 2), 1),
            xy(int(2), 1),
            xy(int(3), 1),
            xy(int(3), 3),
        ],
        tier: Tier::Fast,
        strategy: DIRECT,
        max_terms: 4000,
        builder: gamma_quotient,
    });
    let halves = [int(0), rat(1, 2), int(1), rat(3, 2)];
    v.push(CatalogEntry {
        id: "entry16",
        description: "sum_(k>=1) (-1)^(k+1)/((m+k)(n+k)) = 1/((m+1)(n+1) + (m+1)^2(n+1)^2/(m+n+3 + ...))",
        provenance: "Ramanujan's Entry 16 with real m, n > -1",
        params: vec![rat_param("m", int(-1)), rat_param("n", int(-1))],
        sweep: halves
            .iter()
            .flat_map(|m| halves.iter().map(move |n| Params::new().with("m", m.clone()).with("n", n.clone())))
            .collect(),
        tier: Tier::Slow,
        strategy: EXTRAPOLATE,
        max_terms: 1 << 13,
        builder: entry16,
    });
    v.push(CatalogEntry {
        id: "thm4_family",
        description: "1/((2k-1)!!^2 y_(k+1)) = (2k+1)^2 + 1^2(2k+1)^2/((2k+3)^2 - 1^2 + ...), y_m the m-factor squared series",
        provenance: "theorem on the series with squared odd factors",
        params: vec![int_param("k", 0)],
        sweep: sweep1("k", 0..=5),
        tier: Tier::Moderate,
        strategy: AUTO,
        max_terms: 1 << 13,
        builder: thm4_family,
    });
    v
}

/// `(p_n, q_n)` for `n = 0..=N` from `p_0 = q_0 = 1`,
/// `p_{n+1} = (2n+3) p_n + (-1)^n 2 (2n-1)!!`, `q_n = (2n+1)!!`.
pub fn relation_sequence(n: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(n + 1);
    let mut pn = BigInt::one();
    for k in 0..=n as i64 {
        let qn = double_factorial(2 * k + 1).expect("non-negative");
        out.push((pn.clone(), qn));
        let df = double_factorial(2 * k - 1).expect("k >= 0");
        let step: BigInt = df * 2;
        pn = &pn * (2 * k + 3) + if k % 2 == 0 { step } else { -step };
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    /// `p_n / q_n = shift + c_(n + offset)` for the approximants `c` of pi/2 - 1.
    pub offset: Option<i64>,
    pub shift: Option<i64>,
    pub holds: bool,
    /// For each candidate `(offset, shift)`, the first index that failed.
    pub rejected: Vec<(i64, i64, usize)>,
}

/// Finds the index offset and additive shift under which the recurrence
/// reproduces the approximants of `pi/2 - 1`, comparing exactly for
/// `n = 1..=N`.
pub fn convergent_relation_check(n: usize) -> Result<RelationReport> {
    if n < 2 {
        return Err(Error::Domain("relation check needs N >= 2".into()));
    }
    let seq = relation_sequence(n);
    let cs = convergents(&half_pi_tail(0), n + 1)?;
    let mut rejected = Vec::new();
    for offset in [-1i64, 0, 1] {
        for shift in [0i64, 1] {
            let failed = (1..=n).find(|&k| {
                let idx = k as i64 + offset;
                let (pk, qk) = &seq[k];
                idx < 0 || Rational::new(pk.clone(), qk.clone()) != cs[idx as usize].value() + int(shift)
            });
            match failed {
                None => {
                    return Ok(RelationReport { checked: n, offset: Some(offset), shift: Some(shift), holds: true, rejected })
                }
                Some(k) => rejected.push((offset, shift, k)),
            }
        }
    }
    Ok(RelationReport { checked: n, offset: None, shift: None, holds: false, rejected })
}
