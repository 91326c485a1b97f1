//! The subcommands. Each builds an `Output`; `main` renders it.

use std::path::PathBuf;

use nubound_core::bounds::{run_case, CaseReport};
use nubound_core::cases::{CaseLabel, Tier};
use nubound_core::context::CaseContext;
use nubound_core::enumeration::{default_cap, nondecreasable, UsmallInventory};
use nubound_core::exact::{fmt_rational, parse_rational, Rational, RationalVector};
use nubound_core::norms::norm_report;
use nubound_core::reference::expected;
use nubound_core::{cache, Error, Result};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::render::{Output, Table};

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Settings {
    pub cache_dir: Option<PathBuf>,
    pub sqrt: bool,
}

impl Settings {
    /// Shows a squared norm, or `√(p/q)` with `--sqrt`.
    fn norm(&self, r: &Rational) -> String {
        if self.sqrt {
            format!("√({})", fmt_rational(r))
        } else {
            fmt_rational(r)
        }
    }

    fn run(&self, l: CaseLabel) -> Result<(CaseContext, UsmallInventory, CaseReport)> {
        run_case(l, self.cache_dir.as_deref())
    }

    fn inventory(&self, ctx: &CaseContext) -> Result<UsmallInventory> {
        Ok(cache::load_or_build(ctx, self.cache_dir.as_deref())?.inventory)
    }
}

fn list(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn cases(tier: Option<Tier>) -> Result<Output> {
    let labels = tier.map_or(CaseLabel::ALL.to_vec(), |t| t.cases());
    let mut t = Table::new("", &["case", "group", "class", "rank", "s", "rho_g_sq"]);
    let mut rows = Vec::new();
    for l in labels {
        let ctx = CaseContext::load(l)?;
        let rho = fmt_rational(&ctx.spec.rho_g_sq());
        t.push(vec![
            l.to_string(),
            l.description().to_string(),
            ctx.spec.class.to_string(),
            ctx.spec.rank.to_string(),
            ctx.s().to_string(),
            rho.clone(),
        ]);
        rows.push(json!({
            "case": l.as_str(),
            "group": l.description(),
            "class": ctx.spec.class,
            "rank": ctx.spec.rank,
            "s": ctx.s(),
            "rho_g_sq": rho,
        }));
    }
    Ok(Output { json: Value::Array(rows), tables: vec![t] })
}

fn chamber_table(r: &CaseReport, set: &Settings) -> Table {
    let mut t = Table::new(
        format!("{}: per-chamber data", r.case),
        &["j", "word", "rho_n", "omega_us", "boundary", "A_j", "A_j witness"],
    );
    for c in &r.chambers {
        t.push(vec![
            c.j.to_string(),
            c.word.clone(),
            list(&c.rho_n),
            c.omega_us.to_string(),
            c.boundary.to_string(),
            c.a.as_ref().map_or("-".into(), |a| set.norm(a)),
            c.a_witness.as_deref().map_or("-".into(), list),
        ]);
    }
    t
}

fn summary_table(r: &CaseReport, set: &Settings) -> Table {
    let mut t = Table::new(format!("{}: bound", r.case), &["quantity", "value"]);
    let b_at = if r.b.at_trivial { "trivial".to_string() } else { list(&r.b.witness) };
    let rows = [
        ("class", r.class.to_string()),
        ("s", r.s.to_string()),
        ("u-small K-types", r.usmall_count.to_string()),
        ("max A", set.norm(&r.max_a)),
        ("B", set.norm(&r.b.value)),
        ("B attained at", b_at),
        ("B pencil step", r.b.m.map_or("-".into(), |m| m.to_string())),
        ("bound", set.norm(&r.bound_sq)),
        ("rho(G)", set.norm(&r.rho_g_sq)),
        ("matches published values", r.matched.to_string()),
    ];
    for (k, v) in rows {
        t.push(vec![k.to_string(), v]);
    }
    t
}

fn report_json(r: &CaseReport, set: &Settings) -> Value {
    let mut v = to_json(r);
    if set.sqrt {
        v["bound"] = Value::String(set.norm(&r.bound_sq));
    }
    v
}

pub fn compute(l: CaseLabel, set: &Settings) -> Result<Output> {
    let (_, _, r) = set.run(l)?;
    Ok(Output { json: report_json(&r, set), tables: vec![summary_table(&r, set), chamber_table(&r, set)] })
}

/// Verification result; `ok` is false when any published value differs.
pub struct Verified {
    pub output: Output,
    pub ok: bool,
}

pub fn verify(labels: &[CaseLabel], set: &Settings) -> Result<Verified> {
    let mut summary = Table::new("verification", &["case", "bound", "published", "checks", "status"]);
    let mut failures = Table::new("mismatches", &["case", "check", "published", "computed"]);
    let mut docs = Vec::new();
    let mut ok = true;
    for &l in labels {
        let (_, _, r) = set.run(l)?;
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.ok).collect();
        ok &= bad.is_empty();
        summary.push(vec![
            l.to_string(),
            set.norm(&r.bound_sq),
            set.norm(&expected(l).bound_sq()),
            format!("{}/{}", r.checks.len() - bad.len(), r.checks.len()),
            if bad.is_empty() { "match" } else { "MISMATCH" }.to_string(),
        ]);
        for c in &bad {
            failures.push(vec![l.to_string(), c.name.clone(), c.expected.clone(), c.computed.clone()]);
        }
        docs.push(json!({
            "case": l.as_str(),
            "matched": r.matched,
            "bound_sq": fmt_rational(&r.bound_sq),
            "published_bound_sq": fmt_rational(&expected(l).bound_sq()),
            "checks": to_json(&r.checks),
        }));
    }
    let mut tables = vec![summary];
    if !failures.rows.is_empty() {
        tables.push(failures);
    }
    Ok(Verified { output: Output { json: json!({ "matched": ok, "cases": docs }), tables }, ok })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Usmall,
    Boundary,
    Chambers,
}

fn check_chamber(ctx: &CaseContext, j: usize) -> Result<()> {
    if j >= ctx.s() {
        return Err(Error::Usage(format!("{} has chambers 0..{}, not {j}", ctx.label(), ctx.s())));
    }
    Ok(())
}

pub fn enumerate(l: CaseLabel, chamber: Option<usize>, what: What, set: &Settings) -> Result<Output> {
    let ctx = CaseContext::load(l)?;
    if let Some(j) = chamber {
        check_chamber(&ctx, j)?;
    }
    let l_dim = ctx.kernel.l;
    match what {
        What::Chambers => {
            let mut t = Table::new(format!("{l}: chambers"), &["j", "word", "rho_n", "generators"]);
            let mut docs = Vec::new();
            for ch in &ctx.family.chambers {
                if chamber.is_some_and(|j| j != ch.index) {
                    continue;
                }
                let gens: Vec<String> = ch.generators.iter().map(|g| g.to_string()).collect();
                t.push(vec![ch.index.to_string(), ch.word.to_string(), ch.rho_n.to_string(), gens.join(" ")]);
                docs.push(json!({
                    "j": ch.index,
                    "word": ch.word.to_string(),
                    "rho_n": ch.rho_n.0.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "generators": ch.generators.iter()
                        .map(|g| g.0.iter().map(fmt_rational).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }));
            }
            Ok(Output { json: Value::Array(docs), tables: vec![t] })
        }
        What::Usmall | What::Boundary => {
            let inv = set.inventory(&ctx)?;
            let chambers: Vec<usize> = match (chamber, what) {
                (Some(j), _) => vec![j],
                (None, What::Boundary) => (0..ctx.s()).collect(),
                (None, _) => Vec::new(),
            };
            let mut t = Table::new(format!("{l}: {}", if what == What::Usmall { "u-small K-types" } else { "boundary K-types" }), &["chamber", "K-type"]);
            let mut docs = Vec::new();
            if chambers.is_empty() {
                let all: Vec<u32> = (0..inv.ktypes.len() as u32).collect();
                for w in inv.weights(&all) {
                    t.push(vec!["-".into(), list(&w[..l_dim])]);
                    docs.push(json!(w[..l_dim]));
                }
                return Ok(Output { json: json!({ "case": l.as_str(), "ktypes": docs }), tables: vec![t] });
            }
            for j in chambers {
                let idx = if what == What::Usmall { &inv.chambers[j].omega } else { &inv.chambers[j].boundary };
                let ws: Vec<Vec<i64>> = inv.weights(idx).iter().map(|w| w[..l_dim].to_vec()).collect();
                for w in &ws {
                    t.push(vec![j.to_string(), list(w)]);
                }
                docs.push(json!({ "chamber": j, "ktypes": ws }));
            }
            Ok(Output { json: json!({ "case": l.as_str(), "chambers": docs }), tables: vec![t] })
        }
    }
}

fn parse_cap(s: &str) -> Result<(i64, i64)> {
    let r = parse_rational(s)?;
    if r.numer() <= &0.into() {
        return Err(Error::Usage(format!("cap must be positive, got {s}")));
    }
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::Usage(format!("cap {s} is too large"))),
    }
}

pub fn nondecreasable_cmd(l: CaseLabel, j: usize, cap: Option<&str>) -> Result<Output> {
    let ctx = CaseContext::load(l)?;
    check_chamber(&ctx, j)?;
    let cap = match cap {
        Some(s) => parse_cap(s)?,
        None => default_cap(&ctx.kernel),
    };
    let r = nondecreasable(&ctx.kernel, j, cap)?;
    let mut t = Table::new(
        format!("{l}: non-decreasable K-types in chamber {j}, verdict {:?}", r.verdict),
        &["K-type", "u-small"],
    );
    for (w, u) in r.ktypes.iter().zip(&r.usmall) {
        t.push(vec![list(w), u.to_string()]);
    }
    let mut v = to_json(&r);
    v["case"] = json!(l.as_str());
    v["cap"] = json!(fmt_rational(&Rational::new(cap.0.into(), cap.1.into())));
    Ok(Output { json: v, tables: vec![t] })
}

pub fn parse_mu(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad coordinate {t:?} in --mu"))))
        .collect()
}

pub fn norms(l: CaseLabel, mu: &[i64], set: &Settings) -> Result<Output> {
    let ctx = CaseContext::load(l)?;
    let v = RationalVector::from_ints(mu);
    let r = norm_report(&ctx, &v)?;
    let mut t = Table::new(format!("{l}: norms of {}", list(mu)), &["quantity", "value"]);
    let sq = |s: &str| if set.sqrt { format!("√({s})") } else { s.to_string() };
    t.push(vec!["K-type".into(), r.k_type.to_string()]);
    t.push(vec!["u-small".into(), r.usmall.to_string()]);
    t.push(vec!["allowable chambers".into(), format!("{:?}", r.allowable)]);
    t.push(vec!["lambda_a".into(), format!("[{}]", r.lambda_a.join(","))]);
    t.push(vec!["lambda norm".into(), sq(&r.lambda_sq)]);
    t.push(vec!["spin norm".into(), sq(&r.spin_sq)]);
    if let Some((mp, m)) = &r.mp {
        t.push(vec!["pencil minimum".into(), format!("{} at m={m}", sq(mp))]);
    }
    Ok(Output { json: to_json(&r), tables: vec![t] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_parsing() {
        assert_eq!(parse_mu("0,0,0,1").unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(parse_mu("[1, -2]").unwrap(), vec![1, -2]);
        assert!(parse_mu("1,x").is_err());
    }

    #[test]
    fn cap_parsing() {
        assert_eq!(parse_cap("51/8").unwrap(), (51, 8));
        assert_eq!(parse_cap("40").unwrap(), (40, 1));
        assert!(parse_cap("-1").is_err());
        assert!(parse_cap("0").is_err());
    }
}
