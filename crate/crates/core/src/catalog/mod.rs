//! Registry of the continued fraction identities for pi and G.
//!
//! Each entry pairs a parameterized fraction with its target value: a
//! closed form over `{1, pi, G, sqrt 3}` where one is known, otherwise an
//! oracle (accelerated alternating sum or a gamma quotient). Entries carry a
//! convergence tier that fixes the default digit goal and evaluation strategy.

mod entries;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cf::{CfSpec, Strategy};
use crate::error::{Error, Result};
use crate::numerics::{format_rational, gamma_hp, parse_rational, ConstExpr, ConstantSource, HpReal, Rational};
use crate::numerics::accel::alternating_sum_cvz;
use crate::numerics::guard_digits;

pub use entries::{convergent_relation_check, ramanujan_p, relation_sequence, wallis_p, RelationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Fast,
    Moderate,
    Slow,
}

impl Tier {
    /// Default digit goal.
    pub fn digits(self) -> u32 {
        match self {
            Tier::Fast => 30,
            Tier::Moderate => 20,
            Tier::Slow => 10,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Moderate => "moderate",
            Tier::Slow => "slow",
        })
    }
}

/// Declared parameter with its admissible range and default sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub integer: bool,
    /// Lower bound; exclusive when `min_exclusive`.
    #[serde(serialize_with = "ser_rational")]
    pub min: Rational,
    pub min_exclusive: bool,
}

impl ParamSpec {
    fn check(&self, v: &Rational) -> Result<()> {
        let below = if self.min_exclusive { v <= &self.min } else { v < &self.min };
        if below || (self.integer && !v.is_integer()) {
            let cmp = if self.min_exclusive { ">" } else { ">=" };
            let kind = if self.integer { "an integer" } else { "a rational" };
            return Err(Error::Domain(format!(
                "parameter {} = {} must be {kind} {cmp} {}",
                self.name,
                format_rational(v),
                format_rational(&self.min)
            )));
        }
        Ok(())
    }
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Named parameter values in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(pub Vec<(String, Rational)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &str, v: Rational) -> Self {
        self.0.push((name.to_string(), v));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `name=value` pairs separated by commas, e.g. `m=1/2,n=1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Params::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got `{part}`")))?;
            out.0.push((k.trim().to_string(), parse_rational(v)?));
        }
        Ok(out)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, format_rational(v))))
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = Params;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map of parameter names to rational strings")
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(self, mut map: A) -> std::result::Result<Params, A::Error> {
                let mut out = Params::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    out.0.push((k, parse_rational(&v).map_err(serde::de::Error::custom)?));
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

/// Numerically computed targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "oracle", rename_all = "snake_case")]
pub enum Oracle {
    /// `sum_{k>=0} (-1)^k / (n + k m)`.
    IntegralSum {
        #[serde(serialize_with = "ser_rational")]
        m: Rational,
        #[serde(serialize_with = "ser_rational")]
        n: Rational,
    },
    /// `sum_{k>=1} (-1)^(k+1) / ((m + k)(n + k))`.
    ProductSum {
        #[serde(serialize_with = "ser_rational")]
        m: Rational,
        #[serde(serialize_with = "ser_rational")]
        n: Rational,
    },
    /// `4 Gamma((x+3+y)/4) Gamma((x+3-y)/4) / (Gamma((x+1+y)/4) Gamma((x+1-y)/4))`.
    GammaQuotient {
        #[serde(serialize_with = "ser_rational")]
        x: Rational,
        #[serde(serialize_with = "ser_rational")]
        y: Rational,
    },
}

impl Oracle {
    /// Value with at least `digits` correct decimals.
    pub fn eval(&self, digits: u32) -> Result<HpReal> {
        let scale = digits + guard_digits(digits);
        match self {
            // 1/(n + k m) and 1/((m+1+k)(n+1+k)) are moment sequences of positive
            // measures on [0, 1], so the accelerated sums carry rigorous bounds.
            Oracle::IntegralSum { m, n } => {
                let (m, n) = (m.clone(), n.clone());
                let a0 = n.recip();
                Ok(alternating_sum_cvz(|k| (&n + &m * Rational::from_integer(k.into())).recip(), &a0, scale))
            }
            Oracle::ProductSum { m, n } => {
                let one = Rational::from_integer(1.into());
                let (m1, n1) = (m + &one, n + &one);
                let a0 = (&m1 * &n1).recip();
                Ok(alternating_sum_cvz(
                    |k| {
                        let k = Rational::from_integer(k.into());
                        ((&m1 + &k) * (&n1 + &k)).recip()
                    },
                    &a0,
                    scale,
                ))
            }
            Oracle::GammaQuotient { x, y } => {
                let args = gamma_args(x, y);
                let work = scale + 10;
                let g: Vec<HpReal> = args.iter().map(|a| gamma_hp(a, work)).collect::<Result<_>>()?;
                let num = g[0].mul(&g[1]).mul_int(4);
                let den = g[2].mul(&g[3]);
                num.div(&den, scale)
            }
        }
    }
}

fn gamma_args(x: &Rational, y: &Rational) -> [Rational; 4] {
    let q = |c: i64, s: &Rational| (x + Rational::from_integer(c.into()) + s) / Rational::from_integer(4.into());
    let neg = -y;
    [q(3, y), q(3, &neg), q(1, y), q(1, &neg)]
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Oracle::IntegralSum { m, n } => write!(f, "sum_(k>=0) (-1)^k/({} + {}k)", r(n), r(m)),
            Oracle::ProductSum { m, n } => write!(f, "sum_(k>=1) (-1)^(k+1)/(({} + k)({} + k))", r(m), r(n)),
            Oracle::GammaQuotient { x, y } => {
                let [a, b, c, d] = gamma_args(x, y);
                write!(f, "4 Gamma({}) Gamma({}) / (Gamma({}) Gamma({}))", r(&a), r(&b), r(&c), r(&d))
            }
        }
    }
}

/// What a fraction converges to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Closed { expr: ConstExpr },
    Oracle { oracle: Oracle },
}

impl Target {
    pub fn eval(&self, digits: u32, src: &dyn ConstantSource) -> Result<HpReal> {
        match self {
            Target::Closed { expr } => expr.eval(digits, src),
            Target::Oracle { oracle } => oracle.eval(digits),
        }
    }

    pub fn closed(&self) -> Option<&ConstExpr> {
        match self {
            Target::Closed { expr } => Some(expr),
            Target::Oracle { .. } => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Closed { expr } => write!(f, "{expr}"),
            Target::Oracle { oracle } => write!(f, "{oracle}"),
        }
    }
}

/// A second arrangement of the same identity: `factor * (value + offset) = expr`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltForm {
    pub label: String,
    #[serde(serialize_with = "ser_rational")]
    pub factor: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub offset: Rational,
    pub expr: ConstExpr,
}

/// A concrete fraction with its target.
#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub id: &'static str,
    pub params: Params,
    pub cf: CfSpec,
    pub target: Target,
    pub tier: Tier,
    pub strategy: Strategy,
    pub max_terms: usize,
    pub alt_forms: Vec<AltForm>,
}

type Builder = fn(&Params) -> Result<Built>;

/// What an entry builder returns; the registry adds the metadata.
pub(crate) struct Built {
    pub cf: CfSpec,
    pub target: Target,
    pub alt_forms: Vec<AltForm>,
}

impl Built {
    fn closed(cf: CfSpec, expr: ConstExpr) -> Result<Built> {
        Ok(Built { cf, target: Target::Closed { expr }, alt_forms: Vec::new() })
    }
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub provenance: &'static str,
    pub params: Vec<ParamSpec>,
    pub sweep: Vec<Params>,
    pub tier: Tier,
    pub strategy: Strategy,
    pub max_terms: usize,
    builder: Builder,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry").field("id", &self.id).field("tier", &self.tier).finish_non_exhaustive()
    }
}

impl CatalogEntry {
    pub fn instantiate(&self, params: &Params) -> Result<Instance> {
        for (name, _) in &params.0 {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(Error::Domain(format!("{} has no parameter `{name}`", self.id)));
            }
        }
        let mut ordered = Params::new();
        for p in &self.params {
            let v = params.get(p.name).ok_or_else(|| {
                Error::Domain(format!("{} needs parameter `{}`", self.id, p.name))
            })?;
            p.check(v)?;
            ordered.0.push((p.name.to_string(), v.clone()));
        }
        let built = (self.builder)(&ordered)?;
        Ok(Instance {
            id: self.id,
            params: ordered,
            cf: built.cf,
            target: built.target,
            tier: self.tier,
            strategy: self.strategy,
            max_terms: self.max_terms,
            alt_forms: built.alt_forms,
        })
    }

    /// Parameters of the first sweep point (empty for fixed entries).
    pub fn default_params(&self) -> Params {
        self.sweep.first().cloned().unwrap_or_default()
    }

    /// Every instance of the default sweep, in sweep order.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        self.sweep.iter().map(|p| self.instantiate(p)).collect()
    }
}

/// The full registry, sorted by id.
pub fn registry() -> &'static [CatalogEntry] {
    static REGISTRY: std::sync::OnceLock<Vec<CatalogEntry>> = std::sync::OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut v = entries::all();
        v.sort_by_key(|e| e.id);
        v
    })
}

/// `(id, provenance)` for every entry.
pub fn list_entries() -> Vec<(&'static str, &'static str)> {
    registry().iter().map(|e| (e.id, e.provenance)).collect()
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    registry().iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

pub fn instantiate(id: &str, params: &Params) -> Result<Instance> {
    entry(id)?.instantiate(params)
}

/// All default-sweep instances across the registry, ordered by id then params.
pub fn all_instances() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for e in registry() {
        out.extend(e.instances()?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct EntryJson<'a> {
    id: &'a str,
    description: &'a str,
    provenance: &'a str,
    tier: Tier,
    digits: u32,
    strategy: Strategy,
    max_terms: usize,
    params: &'a [ParamSpec],
    sweep: &'a [Params],
    example: ExampleJson<'a>,
}

#[derive(Serialize)]
struct ExampleJson<'a> {
    params: &'a Params,
    cf: &'a CfSpec,
    target: &'a Target,
    target_display: String,
}

/// Registry as a JSON array; coefficient rules are shown for the first
/// sweep point.
pub fn registry_json(entries: &[&CatalogEntry]) -> Result<String> {
    let examples: Vec<Instance> =
        entries.iter().map(|e| e.instantiate(&e.default_params())).collect::<Result<_>>()?;
    let items: Vec<EntryJson<'_>> = entries
        .iter()
        .zip(&examples)
        .map(|(e, ex)| EntryJson {
            id: e.id,
            description: e.description,
            provenance: e.provenance,
            tier: e.tier,
            digits: e.tier.digits(),
            strategy: e.strategy,
            max_terms: e.max_terms,
            params: &e.params,
            sweep: &e.sweep,
            example: ExampleJson {
                params: &ex.params,
                cf: &ex.cf,
                target: &ex.target,
                target_display: ex.target.to_string(),
            },
        })
        .collect();
    serde_json::to_string_pretty(&items).map_err(|e| Error::Parse(e.to_string()))
}
