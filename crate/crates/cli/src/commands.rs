use std::io::Write;
use std::path::Path;

use cflab::catalog::{self, CatalogEntry, Instance, Params};
use cflab::cf::{evaluate, Method};
use cflab::euler::{check_partial_sum_identity, named_series, series_by_name, transform as euler_transform, Theorem};
use cflab::numerics::{catalan_reference, parse_rational, pi_reference, sqrt3_reference, ConstantSource, Perturbed, Reference};
use cflab::verify::{convergence_profile, export_string, profiles_csv, verify_instances, Format, VerifyConfig};

use crate::{BenchArgs, ConstantsArgs, EvalArgs, Failure, ListArgs, ListFormat, ProfileFormat, ReportFormat, TransformArgs, VerifyArgs};

type Outcome = Result<(), Failure>;

/// Entries whose id matches `filter` (every entry when `None`).
fn select(filter: Option<&str>) -> Result<Vec<&'static CatalogEntry>, Failure> {
    let all = catalog::registry();
    let Some(f) = filter else {
        return Ok(all.iter().collect());
    };
    let pattern = glob::Pattern::new(f).map_err(|e| Failure::Usage(format!("bad filter `{f}`: {e}")))?;
    let chosen: Vec<_> = all.iter().filter(|e| pattern.matches(e.id)).collect();
    if chosen.is_empty() {
        return Err(Failure::Usage(format!("no catalog entry matches `{f}`")));
    }
    Ok(chosen)
}

fn write_out(text: &str, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

pub fn list(a: ListArgs) -> Outcome {
    let entries = select(a.filter.as_deref())?;
    match a.format {
        ListFormat::Json => write_out(&catalog::registry_json(&entries)?, None),
        ListFormat::Table => {
            let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
            let mut text = String::new();
            for e in entries {
                let params: Vec<&str> = e.params.iter().map(|p| p.name).collect();
                let params = if params.is_empty() { "-".to_string() } else { params.join(",") };
                text.push_str(&format!(
                    "{:width$}  {:8}  {:6}  {:>3}  {}\n",
                    e.id,
                    e.tier.to_string(),
                    params,
                    e.sweep.len(),
                    e.provenance
                ));
            }
            write_out(&text, None)
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exact => "exact",
        Method::Direct => "direct",
        Method::Extrapolated => "extrapolated",
    }
}

pub fn eval(a: EvalArgs) -> Outcome {
    let entry = catalog::entry(&a.id)?;
    let params = match &a.params {
        Some(p) => Params::parse(p)?,
        None => entry.default_params(),
    };
    let inst = entry.instantiate(&params)?;
    let terms = a.terms.unwrap_or(inst.max_terms);
    // two extra decimals so rounding to `digits` is sound
    let ev = evaluate(&inst.cf, a.digits + 2, terms, inst.strategy)?;
    let label = if inst.params.is_empty() { inst.id.to_string() } else { format!("{}({})", inst.id, inst.params) };
    println!("{label} = {}", ev.value.format_digits_rounded(a.digits));
    println!("target: {}", inst.target);
    println!("terms used: {}", ev.terms_used);
    println!(
        "method: {}, {}",
        method_name(ev.method),
        if ev.certified { "certified enclosure" } else { "uncertified estimate" }
    );
    Ok(())
}

pub fn verify(a: VerifyArgs) -> Outcome {
    if !a.all && a.filter.is_none() {
        return Err(Failure::Usage("verify needs --all or --filter".into()));
    }
    let entries = select(if a.all { None } else { a.filter.as_deref() })?;
    let instances: Vec<Instance> = entries
        .iter()
        .map(|e| e.instances())
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let config = VerifyConfig {
        fast: a.fast,
        moderate: a.moderate,
        slow: a.slow,
        digits: a.digits,
        max_terms: a.terms,
        parallel: !a.sequential,
    };
    let perturbed;
    let src: &dyn ConstantSource = match &a.perturb_catalan {
        Some(offset) => {
            perturbed = Perturbed::catalan_by(parse_rational(offset)?);
            &perturbed
        }
        None => &Reference,
    };
    let reports = verify_instances(&instances, &config, src)?;
    let failures = reports.iter().filter(|r| !r.pass).count();
    let summary = format!("{} entries, {} instantiations, {} failures", entries.len(), reports.len(), failures);

    let machine = match a.format {
        ReportFormat::Table => None,
        ReportFormat::Json => Some(Format::Json),
        ReportFormat::Csv => Some(Format::Csv),
        ReportFormat::Md => Some(Format::Markdown),
    };
    let table = || {
        let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(0);
        let mut text = String::new();
        for r in &reports {
            let params = if r.params.is_empty() { "-".to_string() } else { r.params.to_string() };
            text.push_str(&format!(
                "{} {:width$}  {:12}  d={:<3} terms={:<6} err<={:10} {}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                params,
                r.digits,
                r.terms,
                r.error_display(),
                r.method.map_or("none", method_name)
            ));
            for n in &r.notes {
                text.push_str(&format!("     {n}\n"));
            }
        }
        text
    };
    match (machine, &a.output) {
        (None, None) => write_out(&(table() + &summary + "\n"), None)?,
        (None, Some(path)) => {
            write_out(&table(), Some(path))?;
            println!("{summary}");
        }
        (Some(f), None) => {
            write_out(&export_string(&reports, f)?, None)?;
            eprintln!("{summary}");
        }
        (Some(f), Some(path)) => {
            write_out(&export_string(&reports, f)?, Some(path))?;
            println!("{summary}");
        }
    }
    if failures > 0 {
        return Err(Failure::Convergence(format!("{failures} verification failures")));
    }
    Ok(())
}

pub fn transform(a: TransformArgs) -> Outcome {
    let theorem: Theorem = a.theorem.parse()?;
    let series = series_by_name(&a.series).map_err(|_| {
        let names: Vec<&str> = named_series().iter().map(|(n, ..)| *n).collect();
        Failure::Usage(format!("unknown series `{}` (known: {})", a.series, names.join(", ")))
    })?;
    let description = named_series().into_iter().find(|(n, ..)| *n == a.series).map(|(.., d)| d).unwrap_or("");
    let cf = euler_transform(&series, theorem)?;
    println!("series: {} ({}, {})", a.series, description, series.kind);
    println!("theorem {theorem:?}: {cf}");
    for n in 1..=cf.available(a.show) {
        let (an, bn) = cf.term(n)?;
        println!("  a{n} = {an}, b{n} = {bn}");
    }
    let report = check_partial_sum_identity(&series, &cf, a.check)?;
    if report.holds {
        println!("partial-sum identity holds for n = 1..={}", report.checked);
        Ok(())
    } else {
        Err(Failure::Convergence(format!(
            "partial-sum identity fails at n = {}",
            report.first_failure.unwrap_or(report.checked)
        )))
    }
}

pub fn bench(a: BenchArgs) -> Outcome {
    let entries = select(a.filter.as_deref())?;
    let mut profiles = Vec::new();
    for e in entries {
        let params = if a.sweep { e.sweep.clone() } else { vec![e.default_params()] };
        for p in params {
            let inst = e.instantiate(&p)?;
            profiles.push(convergence_profile(&inst, a.terms as usize, a.digits, &Reference)?);
        }
    }
    for p in &profiles {
        let label = if p.params.is_empty() { p.id.clone() } else { format!("{}({})", p.id, p.params) };
        eprintln!("{label}: {} correct digits at n = {}, slope {:.3e} digits per term", p.digits.last().unwrap_or(&0), p.digits.len(), p.slope);
    }
    let text = match a.format {
        ProfileFormat::Csv => profiles_csv(&profiles)?,
        ProfileFormat::Json => {
            let mut s = serde_json::to_string_pretty(&profiles).map_err(|e| Failure::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    write_out(&text, a.output.as_deref())
}

pub fn constants(a: ConstantsArgs) -> Outcome {
    let d = a.digits;
    println!("pi    = {}  (verified: dual-method, Machin and Stormer)", pi_reference(d)?.format_digits(d));
    println!(
        "G     = {}  (verified: dual-method, alternating-series acceleration and binomial averaging)",
        catalan_reference(d)?.format_digits(d)
    );
    println!("sqrt3 = {}  (verified: integer square root residual)", sqrt3_reference(d)?.format_digits(d));
    Ok(())
}
