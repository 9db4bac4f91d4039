//! Verification of catalog instances against their targets, convergence
//! profiles, and report export.

mod export;
mod profile;

use std::time::Instant;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, Instance, Params, Tier};
use crate::cf::{evaluate, ConvergentStream, Method, Reduction};
use crate::error::{Error, Result};
use crate::numerics::constants::max_reference_digits;
use crate::numerics::{ConstantSource, HpReal, Reference};

pub use export::{export, export_string, import_json, Format};
pub use profile::{convergence_profile, profiles_csv, ConvergenceProfile};

/// Digits beyond the goal at which the fraction is evaluated.
const CF_MARGIN: u32 = 3;
/// Digits beyond the goal at which the target is evaluated.
const TARGET_GUARD: u32 = 10;

/// Outcome of checking one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: Params,
    pub tier: Tier,
    pub digits: u32,
    pub terms: usize,
    /// `|fraction - target|`, with the combined error bound of both values.
    pub error: HpReal,
    pub certified: bool,
    pub method: Option<Method>,
    pub pass: bool,
    pub elapsed_us: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// `error` in scientific notation, rounded up to the error bound.
    pub fn error_display(&self) -> String {
        let upper = HpReal::new(
            self.error.mantissa().abs() + num_bigint::BigInt::from(self.error.error_ulps().clone()),
            self.error.scale(),
            num_bigint::BigUint::default(),
        );
        upper.to_sci(3)
    }
}

/// Digit goals and budgets for a run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub fast: u32,
    pub moderate: u32,
    pub slow: u32,
    /// Overrides every tier goal.
    pub digits: Option<u32>,
    /// Overrides every entry's term budget.
    pub max_terms: Option<usize>,
    pub parallel: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            fast: Tier::Fast.digits(),
            moderate: Tier::Moderate.digits(),
            slow: Tier::Slow.digits(),
            digits: None,
            max_terms: None,
            parallel: true,
        }
    }
}

impl VerifyConfig {
    pub fn digits_for(&self, tier: Tier) -> u32 {
        self.digits.unwrap_or(match tier {
            Tier::Fast => self.fast,
            Tier::Moderate => self.moderate,
            Tier::Slow => self.slow,
        })
    }
}

/// Checks one instance at `digits` with the given term budget.
pub fn verify_instance(
    inst: &Instance,
    digits: u32,
    max_terms: usize,
    src: &dyn ConstantSource,
) -> Result<VerificationReport> {
    if digits == 0 {
        return Err(Error::Domain("digits must be positive".into()));
    }
    let start = Instant::now();
    let target_digits = (digits + TARGET_GUARD).min(max_reference_digits().max(digits));
    let target = inst.target.eval(target_digits, src)?;
    let mut notes = Vec::new();
    let (value, terms, certified, method) = match evaluate(&inst.cf, digits + CF_MARGIN, max_terms, inst.strategy) {
        Ok(ev) => (ev.value, ev.terms_used, ev.certified, Some(ev.method)),
        Err(e @ Error::NoConvergence { .. }) => {
            notes.push(e.to_string());
            let (v, n) = last_convergent(inst, max_terms, digits + CF_MARGIN)?;
            (v, n, false, None)
        }
        Err(e) => return Err(e),
    };
    let error = (&value - &target).abs();
    let mut pass = method.is_some() && error.definitely_below_pow10(digits);
    for alt in &inst.alt_forms {
        let lhs = (&value + &HpReal::from_rational(&alt.offset, value.scale())).mul_rational(&alt.factor);
        let rhs = alt.expr.eval(target_digits, src)?;
        let alt_err = (&lhs - &rhs).abs();
        let ok = alt_err.definitely_below_pow10(digits);
        notes.push(format!("{}: error {} ({})", alt.label, alt_err.to_sci(3), if ok { "pass" } else { "fail" }));
        pass &= ok;
    }
    Ok(VerificationReport {
        id: inst.id.to_string(),
        params: inst.params.clone(),
        tier: inst.tier,
        digits,
        terms,
        error,
        certified,
        method,
        pass,
        elapsed_us: start.elapsed().as_micros() as u64,
        notes,
    })
}

fn last_convergent(inst: &Instance, max_terms: usize, digits: u32) -> Result<(HpReal, usize)> {
    let mut s = ConvergentStream::new(&inst.cf, Reduction::AtEmission);
    while s.index() < max_terms && s.advance()? {}
    Ok((s.value_hp(digits + crate::numerics::guard_digits(digits)), s.index()))
}

/// Verifies entry `id` at `params` (defaults when empty) and `digits`
/// (the tier goal when `None`).
pub fn verify_entry(id: &str, params: &Params, digits: Option<u32>) -> Result<VerificationReport> {
    let e = catalog::entry(id)?;
    let params = if params.is_empty() { e.default_params() } else { params.clone() };
    let inst = e.instantiate(&params)?;
    verify_instance(&inst, digits.unwrap_or(inst.tier.digits()), inst.max_terms, &Reference)
}

/// Verifies every instance, in parallel when configured and available.
/// Reports are ordered by id, then parameters.
pub fn verify_instances(
    instances: &[Instance],
    config: &VerifyConfig,
    src: &dyn ConstantSource,
) -> Result<Vec<VerificationReport>> {
    let run = |inst: &Instance| {
        verify_instance(inst, config.digits_for(inst.tier), config.max_terms.unwrap_or(inst.max_terms), src)
    };
    let mut reports: Vec<VerificationReport> = if config.parallel {
        run_parallel(instances, &run)?
    } else {
        instances.iter().map(run).collect::<Result<_>>()?
    };
    reports.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    Ok(reports)
}

#[cfg(feature = "parallel")]
fn run_parallel<F>(instances: &[Instance], run: &F) -> Result<Vec<VerificationReport>>
where
    F: Fn(&Instance) -> Result<VerificationReport> + Sync,
{
    use rayon::prelude::*;
    instances.par_iter().map(run).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<F>(instances: &[Instance], run: &F) -> Result<Vec<VerificationReport>>
where
    F: Fn(&Instance) -> Result<VerificationReport> + Sync,
{
    instances.iter().map(run).collect()
}

/// Full default sweep over the registry.
pub fn verify_all(config: &VerifyConfig, src: &dyn ConstantSource) -> Result<Vec<VerificationReport>> {
    verify_instances(&catalog::all_instances()?, config, src)
}
