//! Property checks shared by the proptest suite and the acceptance run.
//! Each check takes its inputs explicitly and returns a message on failure.

#![allow(dead_code)]

use std::collections::HashSet;

use nubound_core::context::CaseContext;
use nubound_core::exact::{q, Rational, RationalVector};
use nubound_core::kernel::{wt_to_vector, Wt, MAXR};
use nubound_core::norms;
use nubound_core::roots::IndexPolicy;
use num_traits::{Signed, Zero};
use rand::Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

pub fn ints(v: &[i64]) -> RationalVector {
    RationalVector::from_ints(v)
}

fn inner(c: &CaseContext, u: &RationalVector, v: &RationalVector) -> Rational {
    c.spec.context.inner(u, v).unwrap()
}

/// Random K-type: semisimple coordinates in `0..hi`, central coordinate in
/// `-2hi..2hi` for Hermitian cases.
pub fn random_ktype(c: &CaseContext, rng: &mut impl Rng, hi: i64) -> Wt {
    let k = &c.kernel;
    loop {
        let mut w = [0i64; MAXR];
        for (i, x) in w.iter_mut().enumerate().take(k.l) {
            *x = if i < k.ss { rng.gen_range(0..hi) } else { rng.gen_range(-2 * hi..2 * hi) };
        }
        if k.is_k_type(&w) {
            return w;
        }
    }
}

pub fn random_vector(l: usize, rng: &mut impl Rng, r: i64) -> Vec<i64> {
    (0..l).map(|_| rng.gen_range(-r..=r)).collect()
}

/// `P(η)` onto `C^(j)`: lies in the cone, `η − P(η)` is orthogonal to `P(η)`
/// and pairs non-positively with every generator.
pub fn projection_orthogonality(c: &CaseContext, j: usize, eta: &RationalVector) -> Check {
    let ch = &c.family.chambers[j];
    let p = ch.cone.project(eta).map_err(|e| e.to_string())?;
    ensure!(p.coeffs.iter().all(|x| !x.is_negative()), "negative coefficient at {eta}");
    let mut rebuilt = RationalVector::zero(eta.dim());
    for (g, x) in ch.generators.iter().zip(&p.coeffs) {
        rebuilt = rebuilt.add_scaled(x, g);
    }
    ensure!(rebuilt == p.point, "coefficients do not rebuild the point at {eta}");
    let r = eta - &p.point;
    ensure!(inner(c, &r, &p.point).is_zero(), "residual not orthogonal at {eta}");
    for g in &ch.generators {
        ensure!(!inner(c, &r, g).is_positive(), "residual outside polar cone at {eta}");
    }
    ensure!(inner(c, &r, &r) == p.deficit, "deficit mismatch at {eta}");
    Ok(())
}

/// Same projection as the brute-force search over all faces.
pub fn projection_matches_faces(c: &CaseContext, j: usize, eta: &RationalVector) -> Check {
    let cone = &c.family.chambers[j].cone;
    let p = cone.project(eta).map_err(|e| e.to_string())?;
    let faces = cone.project_all_faces(eta).map_err(|e| e.to_string())?;
    let best = faces.iter().map(|f| &f.deficit).min().unwrap();
    ensure!(&p.deficit == best, "projection is not the nearest face point at {eta}");
    Ok(())
}

pub fn spin_dominates_lambda(c: &CaseContext, w: &Wt) -> Check {
    let k = &c.kernel;
    let js = k.omega_chambers(w);
    ensure!(!js.is_empty(), "{:?} lies in no chamber", &w[..k.l]);
    let lam = k.lambda_in(js[0], w).norm_sq;
    ensure!(k.spin_sq(w) >= lam, "spin < lambda at {:?}", &w[..k.l]);
    Ok(())
}

pub fn lambda_chamber_independent(c: &CaseContext, w: &Wt) -> Check {
    let k = &c.kernel;
    let js = k.omega_chambers(w);
    let v = k.lambda_in(js[0], w).norm_sq;
    for &j in &js[1..] {
        ensure!(k.lambda_in(j, w).norm_sq == v, "lambda differs in chamber {j} at {:?}", &w[..k.l]);
    }
    Ok(())
}

/// The exact route agrees with itself across chambers (it errors otherwise)
/// and with the kernel.
pub fn lambda_exact_agrees(c: &CaseContext, w: &Wt) -> Check {
    let k = &c.kernel;
    let mu = wt_to_vector(w, k.l);
    let d = norms::lambda_data(c, &mu).map_err(|e| e.to_string())?;
    let v = nubound_core::kernel::q_to_rational(&k.lambda_in(d.chambers[0], w).norm_sq);
    ensure!(v == d.lambda_sq, "kernel and exact lambda differ at {mu}");
    Ok(())
}

/// Any choice of negative index reaches the same dominant weight, the word
/// is reduced and the norm is preserved.
pub fn make_dominant_policies(c: &CaseContext, v: &RationalVector, picks: &[usize]) -> Check {
    let sys = &c.spec.k_system;
    let (a, wa) = sys.make_dominant(v, IndexPolicy::Smallest).map_err(|e| e.to_string())?;
    let (b, wb) = sys.make_dominant(v, IndexPolicy::Largest).map_err(|e| e.to_string())?;
    let mut t = 0;
    let (r, wr) = sys
        .make_dominant_by(v, |neg| {
            t += 1;
            neg[picks[t % picks.len()] % neg.len()]
        })
        .map_err(|e| e.to_string())?;
    ensure!(a == b && b == r, "policies disagree at {v}");
    ensure!(sys.is_dominant(&a), "result not dominant at {v}");
    let n = inner(c, v, v);
    ensure!(inner(c, &a, &a) == n, "norm changed at {v}");
    for w in [&wa, &wb, &wr] {
        ensure!(sys.is_reduced(w), "word {w} not reduced at {v}");
        ensure!(sys.apply(w, v) == a, "word {w} does not map {v} to {a}");
    }
    Ok(())
}

/// `I, II ≥ 0`, `I + II = candidate_j − λ`, and both shrink when `μ` moves
/// by `δ = Σ n_i w^(j)ζ_i`.
pub fn terms_i_ii_damping(c: &CaseContext, w: &Wt, j: usize, n: &[i64]) -> Check {
    let k = &c.kernel;
    let l = k.l;
    let mu = wt_to_vector(w, l);
    let (i1, ii1) = norms::terms_i_ii(c, &mu, j).map_err(|e| e.to_string())?;
    ensure!(!i1.is_negative() && !ii1.is_negative(), "negative term at {mu}");
    let lam = nubound_core::kernel::q_to_rational(&k.lambda_in(j, w).norm_sq);
    let cand = norms::spin_candidate_sq(c, &mu, j);
    ensure!(&i1 + &ii1 == cand - lam, "I + II ≠ candidate − λ at {mu} j={j}");
    let mut shifted = *w;
    for (g, &m) in k.chambers[j].generators.iter().zip(n) {
        for t in 0..l {
            shifted[t] += m * g[t];
        }
    }
    ensure!(k.is_k_type(&shifted) && k.in_omega(j, &shifted), "shift left Ω({j}) at {mu}");
    let (i2, ii2) = norms::terms_i_ii(c, &wt_to_vector(&shifted, l), j).map_err(|e| e.to_string())?;
    ensure!(i2 <= i1, "I grew from {mu} by {n:?}");
    ensure!(ii2 <= ii1, "II grew from {mu} by {n:?}");
    Ok(())
}

/// `⟨ρ_c, {η1} − η1⟩ ≤ ⟨ρ_c, {η2} − η2⟩` when `η1 − η2` is 𝔨-dominant.
pub fn monotonicity(c: &CaseContext, eta2: &RationalVector, d: &RationalVector) -> Check {
    if !c.spec.is_k_dominant(d) {
        return Err(format!("{d} is not 𝔨-dominant"));
    }
    let eta1 = eta2 + d;
    let f = |e: &RationalVector| inner(c, &c.spec.rho_c, &(&norms::dominant(c, e) - e));
    ensure!(f(&eta1) <= f(eta2), "monotonicity fails for η2={eta2}, d={d}");
    Ok(())
}

/// Vertices of the u-small hull: the W(𝔨)-orbit of every `2ρ_n^(j)`.
pub fn hull_vertices(c: &CaseContext) -> Vec<RationalVector> {
    let sys = &c.spec.k_system;
    let mut seen: HashSet<RationalVector> = HashSet::new();
    let mut stack: Vec<RationalVector> = c.family.chambers.iter().map(|ch| ch.rho_n.scale(&q(2))).collect();
    while let Some(v) = stack.pop() {
        if seen.insert(v.clone()) {
            for i in 0..sys.rank() {
                stack.push(sys.reflect(&v, i));
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn cross(o: &RationalVector, a: &RationalVector, b: &RationalVector) -> Rational {
    let (ax, ay) = (&a.0[0] - &o.0[0], &a.0[1] - &o.0[1]);
    let (bx, by) = (&b.0[0] - &o.0[0], &b.0[1] - &o.0[1]);
    ax * by - ay * bx
}

/// Point in the convex hull of planar points: in some vertex triangle.
/// Convexity is affine, so working coordinates are fine.
pub fn in_planar_hull(verts: &[RationalVector], p: &RationalVector) -> bool {
    let n = verts.len();
    for a in 0..n {
        for b in a + 1..n {
            for t in b + 1..n {
                let (x, y, z) = (&verts[a], &verts[b], &verts[t]);
                let d1 = cross(x, y, p);
                let d2 = cross(y, z, p);
                let d3 = cross(z, x, p);
                let neg = d1.is_negative() || d2.is_negative() || d3.is_negative();
                let pos = d1.is_positive() || d2.is_positive() || d3.is_positive();
                if !(neg && pos) {
                    let area = cross(x, y, z);
                    // degenerate triangles only count on the segment
                    if !area.is_zero() || on_segment(x, y, p) || on_segment(y, z, p) || on_segment(x, z, p) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn on_segment(a: &RationalVector, b: &RationalVector, p: &RationalVector) -> bool {
    cross(a, b, p).is_zero()
        && (0..2).all(|i| {
            let (lo, hi) = if a.0[i] <= b.0[i] { (&a.0[i], &b.0[i]) } else { (&b.0[i], &a.0[i]) };
            lo <= &p.0[i] && &p.0[i] <= hi
        })
}

pub fn hull_oracle(c: &CaseContext, verts: &[RationalVector], w: &Wt) -> Check {
    let mu = wt_to_vector(w, 2);
    let want = in_planar_hull(verts, &mu);
    ensure!(c.kernel.is_usmall(w) == want, "kernel u-small test differs from hull at {mu}");
    ensure!(norms::is_usmall(c, &mu) == want, "exact u-small test differs from hull at {mu}");
    Ok(())
}
