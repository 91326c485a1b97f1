//! A_j, B and the final bound for a case, and the comparison against the
//! published values.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cases::CaseClass;
use crate::context::CaseContext;
use crate::enumeration::UsmallInventory;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Rational};
use crate::kernel::{q_to_rational, unpack, CaseKernel, Packed, Wt, Q};
use crate::reference::{expected, quaternionic, Expected};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_VERSION: u32 = 1;

/// Lambda norm of every K-type in the inventory. Fails if two allowable
/// chambers disagree.
pub fn lambda_table(k: &CaseKernel, inv: &UsmallInventory) -> Result<Vec<Q>> {
    inv.ktypes
        .par_iter()
        .map(|p| {
            let w = unpack(p);
            let js = k.omega_chambers(&w);
            let first = *js
                .first()
                .ok_or_else(|| Error::Internal(format!("{:?} lies in no chamber", &w[..k.l])))?;
            let v = k.lambda_in(first, &w).norm_sq;
            for &j in &js[1..] {
                let o = k.lambda_in(j, &w).norm_sq;
                if o != v {
                    return Err(Error::Internal(format!(
                        "lambda norm of {:?} differs between chambers {first} and {j}: {v} vs {o}",
                        &w[..k.l]
                    )));
                }
            }
            Ok(v)
        })
        .collect()
}

/// Running maximum with the tie rule: larger value, then smaller K-type
/// index, then smaller m.
#[derive(Clone, Copy, Debug)]
struct Best {
    value: Q,
    index: u32,
    m: u32,
}

fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let pick_y = y.value > x.value || (y.value == x.value && (y.index, y.m) < (x.index, x.m));
            Some(if pick_y { y } else { x })
        }
    }
}

#[derive(Clone, Debug)]
pub struct AValue {
    pub value: Q,
    pub witness: Wt,
}

/// `A_j`: the maximum of `candidate_j(μ) − ‖μ‖²_lambda` over `∂Ω_us(j)`
/// (the full spin norm for complex cases). `None` for an empty boundary.
pub fn compute_aj(ctx: &CaseContext, inv: &UsmallInventory, lambda: &[Q], j: usize) -> Option<AValue> {
    let k = &ctx.kernel;
    let complex = ctx.spec.class == CaseClass::Complex;
    let best = inv.chambers[j]
        .boundary
        .par_iter()
        .map(|&u| {
            let w = unpack(&inv.ktypes[u as usize]);
            let c = if complex { k.spin_sq(&w) } else { k.spin_candidate(j, &w) };
            Some(Best { value: c - lambda[u as usize], index: u, m: 0 })
        })
        .reduce(|| None, better)?;
    Some(AValue { value: best.value, witness: unpack(&inv.ktypes[best.index as usize]) })
}

#[derive(Clone, Debug)]
pub struct BValue {
    pub value: Q,
    pub witness: Wt,
    /// Pencil step attaining the minimum (non-Hermitian cases).
    pub m: Option<u32>,
}

/// B, dispatched on the case class.
pub fn compute_b(ctx: &CaseContext, inv: &UsmallInventory, lambda: &[Q]) -> Result<BValue> {
    let k = &ctx.kernel;
    let best = match ctx.spec.class {
        CaseClass::Complex => (0..inv.ktypes.len() as u32)
            .into_par_iter()
            .map(|u| {
                let w = unpack(&inv.ktypes[u as usize]);
                let (mp, m) = k.mp_unrestricted(&w).expect("complex cases have β");
                Some(Best { value: mp - lambda[u as usize], index: u, m })
            })
            .reduce(|| None, better),
        CaseClass::Real => {
            let beta = k.beta.ok_or_else(|| Error::Internal("real case without β".into()))?;
            let index: HashMap<Packed, u32> =
                inv.ktypes.iter().enumerate().map(|(u, p)| (*p, u as u32)).collect();
            let spin: Vec<i64> = inv.ktypes.par_iter().map(|p| k.spin_num(&unpack(p))).collect();
            inv.interior_union()
                .par_iter()
                .map(|&u| {
                    let mut w = unpack(&inv.ktypes[u as usize]);
                    let mut m = 0u32;
                    let mut low: Option<(i64, u32)> = None;
                    while let Some(&v) = index.get(&crate::kernel::pack(&w)) {
                        let s = spin[v as usize];
                        if low.is_none_or(|(b, _)| s < b) {
                            low = Some((s, m));
                        }
                        w = crate::kernel::add(&w, &beta);
                        m += 1;
                    }
                    let (s, m) = low.expect("μ itself is u-small");
                    let value = Q::new(s as i128, k.gram_den as i128) - lambda[u as usize];
                    Some(Best { value, index: u, m })
                })
                .reduce(|| None, better)
        }
        CaseClass::Hermitian => inv
            .interior_union()
            .par_iter()
            .map(|&u| {
                let w = unpack(&inv.ktypes[u as usize]);
                Some(Best { value: k.spin_sq(&w) - lambda[u as usize], index: u, m: 0 })
            })
            .reduce(|| None, better),
    };
    let best = best.ok_or_else(|| Error::Internal("B has an empty domain".into()))?;
    Ok(BValue {
        value: best.value,
        witness: unpack(&inv.ktypes[best.index as usize]),
        m: (ctx.spec.class != CaseClass::Hermitian).then_some(best.m),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberResult {
    pub j: usize,
    pub word: String,
    pub rho_n: Vec<i64>,
    pub omega_us: usize,
    pub boundary: usize,
    #[serde(with = "crate::exact::serde_rational_opt")]
    pub a: Option<Rational>,
    pub a_witness: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BResult {
    #[serde(with = "crate::exact::serde_rational")]
    pub value: Rational,
    pub witness: Vec<i64>,
    pub m: Option<u32>,
    pub at_trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

/// Wall-clock milliseconds per stage; excluded from determinism checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub inventory_ms: u128,
    pub norms_ms: u128,
    pub inventory_cached: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub case: String,
    pub class: CaseClass,
    pub s: usize,
    #[serde(with = "crate::exact::serde_rational")]
    pub rho_g_sq: Rational,
    pub usmall_count: usize,
    pub inventory_digest: String,
    pub chambers: Vec<ChamberResult>,
    #[serde(with = "crate::exact::serde_rational")]
    pub max_a: Rational,
    pub b: BResult,
    #[serde(with = "crate::exact::serde_rational")]
    pub bound_sq: Rational,
    pub below_rho_g: bool,
    pub quaternionic: bool,
    pub checks: Vec<Check>,
    pub matched: bool,
    pub timings: Timings,
}

fn coords(k: &CaseKernel, w: &Wt) -> Vec<i64> {
    w[..k.l].to_vec()
}

/// Runs the A_j / B computation on a prepared inventory.
pub fn compute_case_report(ctx: &CaseContext, inv: &UsmallInventory, mut timings: Timings) -> Result<CaseReport> {
    let k = &ctx.kernel;
    let start = std::time::Instant::now();
    let lambda = lambda_table(k, inv)?;
    let chambers: Vec<ChamberResult> = (0..ctx.s())
        .map(|j| {
            let a = compute_aj(ctx, inv, &lambda, j);
            ChamberResult {
                j,
                word: ctx.family.chambers[j].word.to_string(),
                rho_n: coords(k, &k.chambers[j].rho_n),
                omega_us: inv.omega_count(j),
                boundary: inv.boundary_count(j),
                a: a.as_ref().map(|a| q_to_rational(&a.value)),
                a_witness: a.map(|a| coords(k, &a.witness)),
            }
        })
        .collect();
    let b = compute_b(ctx, inv, &lambda)?;
    timings.norms_ms = start.elapsed().as_millis();

    let max_a = chambers
        .iter()
        .filter_map(|c| c.a.clone())
        .max()
        .ok_or_else(|| Error::Internal("every boundary is empty".into()))?;
    let b_value = q_to_rational(&b.value);
    let bound_sq = std::cmp::max(max_a.clone(), b_value.clone());
    let rho_g_sq = ctx.spec.rho_g_sq();
    let b = BResult {
        value: b_value,
        witness: coords(k, &b.witness),
        m: b.m,
        at_trivial: b.witness.iter().all(|&x| x == 0),
    };
    let mut report = CaseReport {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        case: ctx.label().to_string(),
        class: ctx.spec.class,
        s: ctx.s(),
        below_rho_g: bound_sq < rho_g_sq,
        rho_g_sq,
        usmall_count: inv.ktypes.len(),
        inventory_digest: inv.digest(),
        chambers,
        max_a,
        b,
        bound_sq,
        quaternionic: quaternionic(ctx.label()),
        checks: Vec::new(),
        matched: false,
        timings,
    };
    report.checks = compare(&report, inv, &expected(ctx.label()));
    report.matched = report.checks.iter().all(|c| c.ok);
    Ok(report)
}

fn check(name: impl Into<String>, expected: String, computed: String) -> Check {
    let ok = expected == computed;
    Check { name: name.into(), expected, computed, ok }
}

fn show_list(v: &[i64]) -> String {
    format!("{v:?}")
}

/// Compares a report with the published values.
pub fn compare(r: &CaseReport, inv: &UsmallInventory, e: &Expected) -> Vec<Check> {
    let q = fmt_rational;
    let mut out = vec![
        check("s", e.s.to_string(), r.s.to_string()),
        check("rho_g_sq", q(&e.rho_g_sq()), q(&r.rho_g_sq)),
        check("max_a", q(&e.max_a()), q(&r.max_a)),
        check("b", q(&e.b()), q(&r.b.value)),
        check(
            "b_witness",
            e.b_witness.map_or("trivial".to_string(), show_list),
            if r.b.at_trivial { "trivial".to_string() } else { show_list(&r.b.witness) },
        ),
        check("bound_sq", q(&e.bound_sq()), q(&r.bound_sq)),
        check("bound_below_rho_g", "true".into(), r.below_rho_g.to_string()),
        check(
            "b_trivial_iff_not_quaternionic",
            (!r.quaternionic).to_string(),
            r.b.at_trivial.to_string(),
        ),
    ];
    for row in e.rows {
        let key = show_list(row.rho_n);
        let name = |what: &str| format!("chamber {key} {what}");
        match r.chambers.iter().find(|c| c.rho_n == row.rho_n) {
            None => out.push(check(name("present"), "true".into(), "false".into())),
            Some(c) => {
                if let Some(o) = row.omega {
                    out.push(check(name("omega_us"), o.to_string(), c.omega_us.to_string()));
                }
                out.push(check(name("boundary"), row.boundary.to_string(), c.boundary.to_string()));
                out.push(check(
                    name("a"),
                    q(&crate::exact::qf(row.a.0, row.a.1)),
                    c.a.as_ref().map_or("none".into(), q),
                ));
            }
        }
    }
    for (j, list) in e.boundary_lists {
        let mut want: Vec<Vec<i64>> = list.iter().map(|x| x.to_vec()).collect();
        want.sort();
        let mut got: Vec<Vec<i64>> = inv
            .weights(&inv.chambers[*j].boundary)
            .iter()
            .map(|w| w[..inv.l].to_vec())
            .collect();
        got.sort();
        out.push(check(format!("boundary list {j}"), format!("{want:?}"), format!("{got:?}")));
    }
    out
}

/// Loads a case, obtains its inventory (from `cache_dir` when possible) and
/// computes the report.
pub fn run_case(
    label: crate::cases::CaseLabel,
    cache_dir: Option<&std::path::Path>,
) -> Result<(CaseContext, UsmallInventory, CaseReport)> {
    let ctx = CaseContext::load(label)?;
    let loaded = crate::cache::load_or_build(&ctx, cache_dir)?;
    let timings = Timings { inventory_ms: loaded.millis, norms_ms: 0, inventory_cached: loaded.cached };
    let report = compute_case_report(&ctx, &loaded.inventory, timings)?;
    Ok((ctx, loaded.inventory, report))
}
