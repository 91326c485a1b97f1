//! Lambda norm, spin norm, u-small test, pencil minimum and the terms I, II,
//! computed with big rationals straight from the case data. The integer
//! kernel is checked against these.

use serde::Serialize;

use crate::context::CaseContext;
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, q, ConeMode, Rational, RationalVector};
use crate::roots::IndexPolicy;

/// `{v}`: the 𝔨-dominant conjugate of `v`.
pub fn dominant(ctx: &CaseContext, v: &RationalVector) -> RationalVector {
    ctx.spec
        .k_system
        .make_dominant(v, IndexPolicy::Smallest)
        .expect("negative index algorithm terminates")
        .0
}

fn norm_sq(ctx: &CaseContext, v: &RationalVector) -> Rational {
    ctx.spec.context.norm_sq(v).expect("dimension checked")
}

fn check_weight(ctx: &CaseContext, mu: &RationalVector) -> Result<()> {
    if mu.dim() != ctx.spec.rank {
        return Err(Error::Usage(format!(
            "{} expects {} coordinates, got {}",
            ctx.label(),
            ctx.spec.rank,
            mu.dim()
        )));
    }
    if !ctx.spec.is_k_dominant(mu) {
        return Err(Error::Usage(format!("{mu} is not 𝔨-dominant")));
    }
    Ok(())
}

/// Chambers `j` with `μ + 2ρ_c ∈ C^(j)`.
pub fn allowable(ctx: &CaseContext, mu: &RationalVector) -> Result<Vec<usize>> {
    ctx.family.omega_membership(&ctx.spec, mu)
}

#[derive(Clone, Debug)]
pub struct LambdaData {
    /// `λ_a(μ)` from the first allowable chamber.
    pub lambda_a: RationalVector,
    pub lambda_sq: Rational,
    pub chambers: Vec<usize>,
}

/// `λ_a(μ) = P(μ + 2ρ_c − ρ^(j))` for every allowable `j`; the squared norms
/// must agree.
pub fn lambda_data(ctx: &CaseContext, mu: &RationalVector) -> Result<LambdaData> {
    check_weight(ctx, mu)?;
    let chambers = allowable(ctx, mu)?;
    let shifted = mu.add_scaled(&q(2), &ctx.spec.rho_c);
    let mut first: Option<(RationalVector, Rational)> = None;
    for &j in &chambers {
        let ch = &ctx.family.chambers[j];
        let p = ch.cone.project(&(&shifted - &ch.rho))?;
        let n = norm_sq(ctx, &p.point);
        match &first {
            None => first = Some((p.point, n)),
            Some((_, v)) if *v != n => {
                return Err(Error::Internal(format!(
                    "lambda norm of {mu} differs between chambers {} and {j}: {} vs {}",
                    chambers[0],
                    fmt_rational(v),
                    fmt_rational(&n)
                )))
            }
            Some(_) => {}
        }
    }
    let (lambda_a, lambda_sq) =
        first.ok_or_else(|| Error::Internal(format!("{mu} lies in no chamber")))?;
    Ok(LambdaData { lambda_a, lambda_sq, chambers })
}

/// `‖{μ − ρ_n^(j)} + ρ_c‖²`.
pub fn spin_candidate_sq(ctx: &CaseContext, mu: &RationalVector, j: usize) -> Rational {
    let ch = &ctx.family.chambers[j];
    let v = dominant(ctx, &(mu - &ch.rho_n));
    norm_sq(ctx, &(&v + &ctx.spec.rho_c))
}

pub fn spin_candidates(ctx: &CaseContext, mu: &RationalVector) -> Vec<Rational> {
    (0..ctx.s()).map(|j| spin_candidate_sq(ctx, mu, j)).collect()
}

pub fn spin_sq(ctx: &CaseContext, mu: &RationalVector) -> Rational {
    spin_candidates(ctx, mu).into_iter().min().expect("at least one chamber")
}

/// For 𝔨-dominant μ: u-small iff `2ρ_n^(j) − μ` has non-negative coordinates
/// in `{w^(j) α_i}` for every chamber.
pub fn is_usmall(ctx: &CaseContext, mu: &RationalVector) -> bool {
    ctx.family.chambers.iter().all(|ch| {
        let d = ch.rho_n.scale(&q(2));
        ch.cone.coords(&(&d - mu), ConeMode::Dual).expect("independent generators").member
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilMode {
    Unrestricted,
    UsmallOnly,
}

/// `min_m ‖μ + mβ‖²_spin` over `m ≥ 0` (or over the `m` keeping `μ + mβ`
/// u-small) with the smallest minimizing `m`.
pub fn mp(ctx: &CaseContext, mu: &RationalVector, mode: PencilMode) -> Result<(Rational, u32)> {
    check_weight(ctx, mu)?;
    let beta = ctx
        .spec
        .beta
        .as_ref()
        .ok_or_else(|| Error::Usage(format!("{} has no pencil (Hermitian case)", ctx.label())))?;
    let rho_c_sq = norm_sq(ctx, &ctx.spec.rho_c);
    let mut best: Option<(Rational, u32)> = None;
    let mut cur = mu.clone();
    let mut m = 0u32;
    loop {
        if mode == PencilMode::UsmallOnly && !is_usmall(ctx, &cur) {
            break;
        }
        let v = spin_sq(ctx, &cur);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, m));
        }
        if mode == PencilMode::Unrestricted {
            // candidate_j ≥ (‖v_j‖ − ‖ρ_c‖)², and (x + y)² ≤ 2x² + 2y².
            let limit = (best.as_ref().unwrap().0.clone() + &rho_c_sq) * q(2);
            let done = ctx
                .family
                .chambers
                .iter()
                .all(|ch| norm_sq(ctx, &(&cur - &ch.rho_n)) > limit);
            if done {
                break;
            }
        }
        cur = &cur + beta;
        m += 1;
    }
    best.ok_or_else(|| Error::Usage(format!("{mu} is not u-small")))
}

/// `I = 2⟨ρ_c, {η} − η⟩` and `II = ‖η + ρ_c − P(η + ρ_c)‖²` for
/// `η = μ − ρ_n^(j)`, projecting onto `C^(j)`.
pub fn terms_i_ii(ctx: &CaseContext, mu: &RationalVector, j: usize) -> Result<(Rational, Rational)> {
    check_weight(ctx, mu)?;
    let shifted = mu.add_scaled(&q(2), &ctx.spec.rho_c);
    let member = match ctx.family.chambers.get(j) {
        Some(ch) => ch.cone.coords(&shifted, ConeMode::Primal)?.member,
        None => false,
    };
    if !member {
        return Err(Error::Usage(format!("{mu} is not in Ω({j})")));
    }
    let ch = &ctx.family.chambers[j];
    let eta = mu - &ch.rho_n;
    let c = &ctx.spec.context;
    let term_i = c.inner(&ctx.spec.rho_c, &(&dominant(ctx, &eta) - &eta))? * q(2);
    let term_ii = ch.cone.project(&(&eta + &ctx.spec.rho_c))?.deficit;
    Ok((term_i, term_ii))
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub case: String,
    pub mu: Vec<String>,
    pub allowable: Vec<usize>,
    pub lambda_a: Vec<String>,
    pub lambda_sq: String,
    pub spin_sq: String,
    pub spin_candidates: Vec<String>,
    pub usmall: bool,
    pub k_type: bool,
    /// `MP(μ)` and its `m`, when the case has a pencil.
    pub mp: Option<(String, u32)>,
}

fn strings(v: &RationalVector) -> Vec<String> {
    v.0.iter().map(fmt_rational).collect()
}

pub fn norm_report(ctx: &CaseContext, mu: &RationalVector) -> Result<NormReport> {
    let lambda = lambda_data(ctx, mu)?;
    let candidates = spin_candidates(ctx, mu);
    let spin = candidates.iter().min().unwrap().clone();
    let mp = match ctx.spec.beta {
        Some(_) => {
            let (v, m) = mp(ctx, mu, PencilMode::Unrestricted)?;
            Some((fmt_rational(&v), m))
        }
        None => None,
    };
    Ok(NormReport {
        case: ctx.label().to_string(),
        mu: strings(mu),
        allowable: lambda.chambers,
        lambda_a: strings(&lambda.lambda_a),
        lambda_sq: fmt_rational(&lambda.lambda_sq),
        spin_sq: fmt_rational(&spin),
        spin_candidates: candidates.iter().map(fmt_rational).collect(),
        usmall: is_usmall(ctx, mu),
        k_type: ctx.spec.is_k_type(mu),
        mp,
    })
}
