use cflab::catalog::{self, instantiate, registry, Params, Target, Tier};
use cflab::cf::{convergents, determinant_identity, evaluate, Strategy};
use cflab::numerics::{catalan_reference, double_factorial, int, rat, HpReal, Perturbed, Rational, Reference};
use cflab::series::{linear_y_closed, quadratic_y_closed};
use cflab::verify::{
    convergence_profile, export, export_string, import_json, verify_instance, verify_instances, Format, VerifyConfig,
};

fn params(s: &str) -> Params {
    Params::parse(s).unwrap()
}

#[test]
fn registry_shape() {
    let reg = registry();
    assert_eq!(reg.len(), 26);
    let mut ids: Vec<&str> = reg.iter().map(|e| e.id).collect();
    ids.dedup();
    assert_eq!(ids.len(), 26, "ids are unique and sorted");
    for e in reg {
        assert!(!e.sweep.is_empty(), "{}", e.id);
        assert!(!e.provenance.is_empty(), "{}", e.id);
        e.instances().unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
    assert!(matches!(catalog::entry("nosuch"), Err(cflab::Error::UnknownEntry(_))));
}

#[test]
fn parameters_are_validated() {
    assert!(instantiate("thm3_family", &params("f=0")).is_err());
    assert!(instantiate("thm3_family", &params("f=3/2")).is_err());
    assert!(instantiate("entry16", &params("m=-1,n=0")).is_err());
    assert!(instantiate("gamma_quotient", &params("x=1,y=3")).is_err());
    assert!(instantiate("lange", &params("x=1")).is_err());
    assert!(instantiate("osler_class1", &Params::new()).is_err());
}

#[test]
fn thm3_reproduces_displayed_fractions() {
    for f in 2..=4i64 {
        let inst = instantiate("thm3_family", &params(&format!("f={f}"))).unwrap();
        assert_eq!(inst.cf.b0, int(2 * f - 1));
        for n in 1..=10i64 {
            let (a, b) = inst.cf.term(n as usize).unwrap();
            assert_eq!(a, int((2 * n - 1) * (2 * n + 2 * f - 3)));
            assert_eq!(b, int(2 * f));
        }
        let y = linear_y_closed(f as u32).unwrap();
        let df = Rational::from_integer(double_factorial(2 * f - 3).unwrap());
        let Target::Closed { expr } = &inst.target else { panic!("closed target") };
        assert_eq!(expr.recip().unwrap().as_linear().unwrap(), y.scale(&df));
    }
}

#[test]
fn thm4_coefficients_and_bowman() {
    for k in 0..=5i64 {
        let inst = instantiate("thm4_family", &params(&format!("k={k}"))).unwrap();
        assert_eq!(inst.cf.b0, int((2 * k + 1).pow(2)));
        for n in 1..=10i64 {
            let (a, b) = inst.cf.term(n as usize).unwrap();
            assert_eq!(a, int(((2 * n - 1) * (2 * k + 2 * n - 1)).pow(2)));
            assert_eq!(b, int((2 * k + 2 * n + 1).pow(2) - (2 * n - 1).pow(2)));
        }
        let y = quadratic_y_closed(k as u32 + 1).unwrap();
        let df = Rational::from_integer(double_factorial(2 * k - 1).unwrap());
        let Target::Closed { expr } = &inst.target else { panic!("closed target") };
        assert_eq!(expr.recip().unwrap().as_linear().unwrap(), y.scale(&(&df * &df)));
    }
    // k = 0 is Bowman's fraction for 1/G: c_n(bowman) = 1 / c_(n-1)(thm4)
    let t = instantiate("thm4_family", &params("k=0")).unwrap();
    let b = instantiate("bowman", &Params::new()).unwrap();
    let ct = convergents(&t.cf, 30).unwrap();
    let cb = convergents(&b.cf, 31).unwrap();
    for n in 1..=30 {
        assert_eq!(cb[n].value(), ct[n - 1].value().recip(), "n = {n}");
    }
}

#[test]
fn osler_classes_multiply_to_four() {
    for n in 0..=5i64 {
        let p = params(&format!("n={n}"));
        let c1 = instantiate("osler_class1", &p).unwrap().target.eval(30, &Reference).unwrap();
        let c2 = instantiate("osler_class2", &p).unwrap().target.eval(30, &Reference).unwrap();
        let product = c1.mul(&c2);
        let want = HpReal::from_integer(4 * (2 * n + 1) * (2 * n + 1)).rescale(product.scale());
        assert!((&product - &want).abs().definitely_below_pow10(25), "n = {n}");
    }
}

#[test]
fn gamma_quotient_at_two_one_truncates() {
    let inst = instantiate("gamma_quotient", &params("x=2,y=1")).unwrap();
    let (a1, _) = inst.cf.term(1).unwrap();
    assert_eq!(a1, int(0));
    let ev = evaluate(&inst.cf, 30, 100, inst.strategy).unwrap();
    assert_eq!(ev.value.to_rational(), int(2));
    let target = inst.target.eval(30, &Reference).unwrap();
    let two = HpReal::from_integer(2).rescale(target.scale());
    assert!((&target - &two).abs().definitely_below_pow10(30));
}

#[test]
fn entry16_at_minus_half_is_four_g() {
    let inst = instantiate("entry16", &params("m=-1/2,n=-1/2")).unwrap();
    let ev = evaluate(&inst.cf, 17, inst.max_terms, Strategy::Extrapolate).unwrap();
    let four_g = catalan_reference(20).unwrap().mul_int(4);
    assert!((&ev.value - &four_g).abs().definitely_below_pow10(15));
}

#[test]
fn determinant_identity_for_every_instance() {
    for inst in catalog::all_instances().unwrap() {
        let check = determinant_identity(&inst.cf, 30).unwrap();
        assert!(check.holds, "{} {}: {:?}", inst.id, inst.params, check);
    }
}

#[test]
fn bowman_profile() {
    let inst = instantiate("bowman", &Params::new()).unwrap();
    let p = convergence_profile(&inst, 50, 40, &Reference).unwrap();
    // error ~ 1/N^2: about four digits at N = 50
    assert!((3..=5).contains(&p.digits[49]), "{:?}", p.digits);
    assert!(p.digits.windows(10).all(|w| w[9] >= w[0]));
}

fn some_instances() -> Vec<catalog::Instance> {
    ["lange", "six_sqrt3_over_pi", "glaisher_2_over_pi", "sec5_cf1", "bowman", "general_formula"]
        .iter()
        .flat_map(|id| catalog::entry(id).unwrap().instances().unwrap())
        .collect()
}

#[test]
fn verification_is_deterministic() {
    let insts = some_instances();
    let config = VerifyConfig::default();
    let strip = |mut v: Vec<cflab::verify::VerificationReport>| {
        v.iter_mut().for_each(|r| r.elapsed_us = 0);
        v
    };
    let a = strip(verify_instances(&insts, &config, &Reference).unwrap());
    let b = strip(verify_instances(&insts, &VerifyConfig { parallel: false, ..config }, &Reference).unwrap());
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.pass));
}

#[test]
fn perturbed_catalan_is_caught() {
    let src = Perturbed::catalan_by(rat(1, 1_000_000));
    for id in ["bowman", "sec5_cf1", "thm4_family", "ramanujan_2G_a"] {
        let e = catalog::entry(id).unwrap();
        let inst = e.instantiate(&e.default_params()).unwrap();
        let r = verify_instance(&inst, inst.tier.digits(), inst.max_terms, &src).unwrap();
        assert!(!r.pass, "{id} should fail against a shifted G");
    }
    // pi-only entries are unaffected
    let inst = instantiate("six_sqrt3_over_pi", &Params::new()).unwrap();
    assert!(verify_instance(&inst, 30, inst.max_terms, &src).unwrap().pass);
}

#[test]
fn certified_bounds_cover_the_true_error() {
    for id in ["six_sqrt3_over_pi", "sec5_cf2", "sec5_cf3"] {
        let inst = instantiate(id, &Params::new()).unwrap();
        assert!(inst.cf.brackets(), "{id}");
        let ev = evaluate(&inst.cf, 20, inst.max_terms, Strategy::Direct).unwrap();
        assert!(ev.certified);
        let truth = inst.target.eval(40, &Reference).unwrap();
        let err = (&ev.value.rescale(40) - &truth).abs();
        let bound = HpReal::new(ev.value.error_ulps().clone().into(), ev.value.scale(), Default::default());
        assert!((&err.rescale(bound.scale() + 5) - &bound.rescale(bound.scale() + 5)).is_negative(), "{id}");
    }
}

#[test]
fn report_exports() {
    let reports = verify_instances(&some_instances(), &VerifyConfig::default(), &Reference).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let second = dir.path().join("b.json");
    export(&reports, Format::Json, &first).unwrap();
    let back = import_json(&first).unwrap();
    assert_eq!(back, reports);
    export(&back, Format::Json, &second).unwrap();
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());

    let csv = export_string(&reports, Format::Csv).unwrap();
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(rd.headers().unwrap().len(), 7);
    assert_eq!(rd.records().count(), reports.len());

    let md = export_string(&reports, Format::Markdown).unwrap();
    assert_eq!(md.lines().count(), reports.len() + 2);
    assert!(md.lines().all(|l| l.starts_with('|') && l.ends_with('|')));
}

#[test]
fn tiers_have_documented_goals() {
    assert_eq!((Tier::Fast.digits(), Tier::Moderate.digits(), Tier::Slow.digits()), (30, 20, 10));
}
