use serde::Serialize;

use crate::catalog::{Instance, Params};
use crate::cf::{ConvergentStream, Reduction};
use crate::error::{Error, Result};
use crate::numerics::{ConstantSource, HpReal};

/// Correct digits of each convergent against the target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceProfile {
    pub id: String,
    pub params: Params,
    /// Precision at which digits saturate.
    pub working_digits: u32,
    /// `digits[i]` is the number of correct decimals of `c_(i+1)`.
    pub digits: Vec<u32>,
    /// Least-squares digits per term over the final third.
    pub slope: f64,
}

/// `floor(-log10 |x|)`, clamped to `[0, cap]`.
fn correct_digits(diff: &HpReal, cap: u32) -> u32 {
    let m = diff.mantissa().magnitude();
    if m.bits() == 0 {
        return cap;
    }
    let len = m.to_string().len() as u32;
    diff.scale().saturating_sub(len).min(cap)
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Profiles convergents `c_1 ..= c_N` against the target at `working`
/// digits.
pub fn convergence_profile(
    inst: &Instance,
    n: usize,
    working: u32,
    src: &dyn ConstantSource,
) -> Result<ConvergenceProfile> {
    if n < 10 {
        return Err(Error::Domain("profiles need N >= 10".into()));
    }
    let scale = working + 5;
    let target = inst.target.eval(scale, src)?.rescale(scale);
    let mut s = ConvergentStream::new(&inst.cf, Reduction::AtEmission);
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        if s.advance()? {
            let diff = &s.value_hp(scale) - &target;
            digits.push(correct_digits(&diff, working));
        } else {
            // finite fraction: the last convergent is the value
            let last = digits.last().copied().unwrap_or_else(|| {
                correct_digits(&(&s.value_hp(scale) - &target), working)
            });
            digits.push(last);
        }
    }
    let tail = n - n / 3;
    let points: Vec<(f64, f64)> =
        digits.iter().enumerate().skip(tail - 1).map(|(i, &d)| ((i + 1) as f64, d as f64)).collect();
    Ok(ConvergenceProfile {
        id: inst.id.to_string(),
        params: inst.params.clone(),
        working_digits: working,
        digits,
        slope: fit_slope(&points),
    })
}

/// One row per convergent: `id,params,n,digits`.
pub fn profiles_csv(profiles: &[ConvergenceProfile]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io { path: "<csv>".into(), message: e.to_string() };
    w.write_record(["id", "params", "n", "digits"]).map_err(io)?;
    for p in profiles {
        for (i, d) in p.digits.iter().enumerate() {
            w.write_record([p.id.clone(), p.params.to_string(), (i + 1).to_string(), d.to_string()])
                .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io { path: "<csv>".into(), message: e.to_string() })?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}
