//! Case data compiled to fixed-size integer arrays for the hot loops:
//! u-small tests, chamber membership, spin candidates and lambda norms.
//!
//! Every rational quantity is stored as an integer numerator with a known
//! positive denominator, so the loops never touch big integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::cases::{CaseSpec, LatticeRule};
use crate::chambers::ChamberFamily;
use crate::error::{Error, Result};
use crate::exact::{invert, q, Matrix, Rational, RationalVector};

pub const MAXR: usize = 8;

/// Integer weight in working coordinates, padded with zeros past the rank.
pub type Wt = [i64; MAXR];
/// Compact storage for K-types.
pub type Packed = [i16; MAXR];
/// Exact value produced by the kernel.
pub type Q = Ratio<i128>;

pub fn pack(w: &Wt) -> Packed {
    let mut p = [0i16; MAXR];
    for (a, b) in p.iter_mut().zip(w) {
        *a = i16::try_from(*b).expect("K-type coordinate exceeds i16");
    }
    p
}

pub fn unpack(p: &Packed) -> Wt {
    let mut w = [0i64; MAXR];
    for (a, b) in w.iter_mut().zip(p) {
        *a = i64::from(*b);
    }
    w
}

pub fn wt_from_vector(v: &RationalVector) -> Result<Wt> {
    let mut w = [0i64; MAXR];
    if v.dim() > MAXR {
        return Err(Error::Usage("rank exceeds 8".into()));
    }
    for (a, x) in w.iter_mut().zip(&v.0) {
        if !x.is_integer() {
            return Err(Error::Internal(format!("{v} is not integral")));
        }
        *a = x.to_integer().to_i64().ok_or_else(|| Error::Internal("overflow".into()))?;
    }
    Ok(w)
}

pub fn wt_to_vector(w: &Wt, l: usize) -> RationalVector {
    RationalVector::from_ints(&w[..l])
}

pub fn q_to_rational(x: &Q) -> Rational {
    Rational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> i64 {
    xs.into_iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
        .to_i64()
        .expect("denominator fits in i64")
}

fn scaled(v: &[Rational], s: i64) -> Wt {
    let mut out = [0i64; MAXR];
    let s = q(s);
    for (o, x) in out.iter_mut().zip(v) {
        let y = x * &s;
        assert!(y.is_integer(), "scaling did not clear denominators");
        *o = y.to_integer().to_i64().expect("scaled entry fits in i64");
    }
    out
}

#[inline]
pub fn dot(a: &Wt, b: &Wt) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn add(a: &Wt, b: &Wt) -> Wt {
    std::array::from_fn(|i| a[i] + b[i])
}

#[inline]
pub fn sub(a: &Wt, b: &Wt) -> Wt {
    std::array::from_fn(|i| a[i] - b[i])
}

/// A half-space `coeffs · μ ≤ bound` with integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub coeffs: Wt,
    pub bound: i64,
}

impl HalfSpace {
    #[inline]
    pub fn holds(&self, w: &Wt) -> bool {
        dot(&self.coeffs, w) <= self.bound
    }
}

#[derive(Clone, Debug)]
pub struct ChamberKernel {
    /// `x(μ) = (rows · μ + offset) / den` are the coordinates of `μ + 2ρ_c`
    /// in the generators `w^(j) ζ_i`.
    pub rows: [Wt; MAXR],
    pub offset: Wt,
    pub den: i64,
    pub rho_n: Wt,
    /// `ρ_c − ρ_n^(j)`.
    pub shift: Wt,
    /// `G' · shift` and `shiftᵀ G' shift`.
    shift_lowered: Wt,
    shift_norm: i64,
    /// `w^(j) ζ_i`.
    pub generators: [Wt; MAXR],
}

/// Data for the complementarity problem `c = e + A t` behind the cone
/// projection, shared by every chamber (`A` is the coroot Gram matrix).
#[derive(Clone, Debug)]
struct ProjectionTables {
    /// Per subset `T` (bitmask): `det(A'_TT)` and the rows `A'_{k,T} adj(A'_TT)`.
    det: Vec<i128>,
    rows: Vec<[[i128; MAXR]; MAXR]>,
    /// Integer `Z' = z · A⁻¹` (Gram matrix of the ζ's) and `z`.
    zeta_gram: [[i64; MAXR]; MAXR],
    zeta_den: i64,
}

#[derive(Clone, Debug)]
pub struct CaseKernel {
    pub l: usize,
    /// Number of semisimple coordinates.
    pub ss: usize,
    /// `⟨u, v⟩ = uᵀ gram v / gram_den`.
    pub gram: [Wt; MAXR],
    pub gram_den: i64,
    /// Compact simple roots in working coordinates.
    pub gamma: [Wt; MAXR],
    pub rho_c: Wt,
    pub beta: Option<Wt>,
    /// `Σ c_i x_i ≡ 0 (mod m)` as `(c, m)`.
    pub congruence: Option<(Wt, i64)>,
    /// u-small iff every half-space holds (for 𝔨-dominant μ).
    pub usmall: Vec<HalfSpace>,
    /// `⟨ρ^(0), α_i^∨⟩`.
    pub rho_pairings: Wt,
    pub chambers: Vec<ChamberKernel>,
    tables: ProjectionTables,
}

fn lower(gram: &[Wt; MAXR], v: &Wt) -> Wt {
    std::array::from_fn(|i| dot(&gram[i], v))
}

fn int_det(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * int_det(&minor);
        }
    }
    adj
}

impl ProjectionTables {
    fn new(case: &CaseSpec) -> Result<Self> {
        let l = case.rank;
        let ctx = &case.context;
        let coroots: Vec<RationalVector> = case
            .alpha
            .iter()
            .map(|a| a.scale(&(q(2) / ctx.norm_sq(a).unwrap())))
            .collect();
        let a_rat: Matrix = coroots
            .iter()
            .map(|u| coroots.iter().map(|v| ctx.inner(u, v).unwrap()).collect())
            .collect();
        let a_scale = lcm_of_denominators(a_rat.iter().flatten());
        let mut a = [[0i64; MAXR]; MAXR];
        for i in 0..l {
            a[i] = scaled(&a_rat[i], a_scale);
        }
        let z_rat = invert(&a_rat).ok_or_else(|| Error::CaseData("singular coroot Gram".into()))?;
        let zeta_den = lcm_of_denominators(z_rat.iter().flatten());
        let mut zeta_gram = [[0i64; MAXR]; MAXR];
        for i in 0..l {
            zeta_gram[i] = scaled(&z_rat[i], zeta_den);
        }
        // Sanity: the ζ Gram matches the case's fundamental weights.
        for i in 0..l {
            for k in 0..l {
                let want = ctx.inner(&case.zeta[i], &case.zeta[k]).unwrap() * q(zeta_den);
                if want != q(zeta_gram[i][k]) {
                    return Err(Error::Internal("ζ Gram mismatch".into()));
                }
            }
        }

        let n_sub = 1usize << l;
        let mut det = vec![0i128; n_sub];
        let mut rows = vec![[[0i128; MAXR]; MAXR]; n_sub];
        for mask in 0..n_sub {
            let t: Vec<usize> = (0..l).filter(|&i| mask >> i & 1 == 1).collect();
            let sub: Vec<Vec<i128>> =
                t.iter().map(|&r| t.iter().map(|&c| a[r][c] as i128).collect()).collect();
            let d = int_det(&sub);
            if d <= 0 {
                return Err(Error::CaseData("coroot Gram is not positive definite".into()));
            }
            det[mask] = d;
            let adj = adjugate(&sub);
            for k in 0..l {
                if mask >> k & 1 == 1 {
                    continue;
                }
                // A'_{k,T} adj(A'_TT), indexed by position in T mapped back to i.
                for (pi, &i) in t.iter().enumerate() {
                    let mut s = 0i128;
                    for (pm, &m) in t.iter().enumerate() {
                        s += a[k][m] as i128 * adj[pm][pi];
                    }
                    rows[mask][k][i] = s;
                }
            }
        }
        Ok(ProjectionTables { det, rows, zeta_gram, zeta_den })
    }

    /// Solves the complementarity problem for `e = E / e_den` and returns the
    /// squared norm of the projection together with the active set.
    fn project(&self, l: usize, e: &Wt, e_den: i64) -> (Q, usize, [i128; MAXR]) {
        let mut mask = 0usize;
        loop {
            let d = self.det[mask];
            let mut c = [0i128; MAXR];
            let mut first_negative = None;
            for k in 0..l {
                if mask >> k & 1 == 1 {
                    continue;
                }
                let mut s = d * e[k] as i128;
                for i in 0..l {
                    if mask >> i & 1 == 1 {
                        s -= self.rows[mask][k][i] * e[i] as i128;
                    }
                }
                c[k] = s;
                if s < 0 && first_negative.is_none() {
                    first_negative = Some(k);
                }
            }
            match first_negative {
                Some(k) => mask |= 1 << k,
                None => {
                    // c_true = c / (d · e_den)
                    let mut num = 0i128;
                    for i in 0..l {
                        if c[i] == 0 {
                            continue;
                        }
                        let mut row = 0i128;
                        for k in 0..l {
                            row += self.zeta_gram[i][k] as i128 * c[k];
                        }
                        num += c[i] * row;
                    }
                    let den = self.zeta_den as i128 * d * d * (e_den as i128) * (e_den as i128);
                    return (Q::new(num, den), mask, c);
                }
            }
        }
    }
}

/// Result of a cone projection computed by the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelProjection {
    pub norm_sq: Q,
    /// Indices of the generators with zero coefficient.
    pub zero_set: Vec<usize>,
}

impl CaseKernel {
    pub fn new(case: &CaseSpec, family: &ChamberFamily) -> Result<Self> {
        let l = case.rank;
        if l > MAXR {
            return Err(Error::CaseData("rank exceeds 8".into()));
        }
        let ctx = &case.context;
        let gram_den = lcm_of_denominators(ctx.matrix().iter().flatten());
        let mut gram = [[0i64; MAXR]; MAXR];
        for i in 0..l {
            gram[i] = scaled(&ctx.matrix()[i], gram_den);
        }
        let mut gamma = [[0i64; MAXR]; MAXR];
        for (i, g) in case.gamma.iter().enumerate() {
            gamma[i] = wt_from_vector(g)?;
        }
        let rho_c = wt_from_vector(&case.rho_c)?;
        let beta = case.beta.as_ref().map(wt_from_vector).transpose()?;
        let congruence = match &case.lattice {
            LatticeRule::Integral => None,
            LatticeRule::Congruence(c) => {
                let m = lcm_of_denominators(c);
                Some((scaled(c, m), m))
            }
        };

        let rho_pairings = {
            let mut out = [0i64; MAXR];
            for i in 0..l {
                let p = case.g_system.pairing(&case.rho_g, i);
                out[i] = p.to_integer().to_i64().filter(|_| p.is_integer()).ok_or_else(|| {
                    Error::CaseData("ρ(G) pairing with a simple coroot is not integral".into())
                })?;
            }
            out
        };

        let mut chambers = Vec::with_capacity(family.len());
        let mut halfspaces: BTreeMap<Wt, i64> = BTreeMap::new();
        for ch in &family.chambers {
            let forms: Vec<RationalVector> = ch
                .dual_generators
                .iter()
                .map(|a| ctx.lower(&a.scale(&(q(2) / ctx.norm_sq(a).unwrap()))))
                .collect();
            let den = lcm_of_denominators(forms.iter().flat_map(|f| f.0.iter()));
            let mut rows = [[0i64; MAXR]; MAXR];
            for i in 0..l {
                rows[i] = scaled(&forms[i].0, den);
            }
            let two_rho_c: Wt = std::array::from_fn(|i| 2 * rho_c[i]);
            let offset: Wt = std::array::from_fn(|i| if i < l { dot(&rows[i], &two_rho_c) } else { 0 });
            let rho_n = wt_from_vector(&ch.rho_n)?;
            let shift = sub(&rho_c, &rho_n);
            let shift_lowered = lower(&gram, &shift);
            let shift_norm = dot(&shift, &shift_lowered);
            let mut generators = [[0i64; MAXR]; MAXR];
            for (i, g) in ch.generators.iter().enumerate() {
                generators[i] = wt_from_vector(g)?;
            }

            for g in &ch.generators {
                let form = ctx.lower(g);
                let s = lcm_of_denominators(&form.0);
                let mut coeffs = scaled(&form.0, s);
                let gcd = coeffs.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                for x in coeffs.iter_mut() {
                    *x /= gcd;
                }
                let two_rho_n = ch.rho_n.scale(&q(2));
                let bound = ctx.inner(&two_rho_n, g)? * q(s) / q(gcd);
                let bound = bound.floor().to_integer().to_i64().expect("bound fits");
                halfspaces
                    .entry(coeffs)
                    .and_modify(|b| *b = (*b).min(bound))
                    .or_insert(bound);
            }

            chambers.push(ChamberKernel {
                rows,
                offset,
                den,
                rho_n,
                shift,
                shift_lowered,
                shift_norm,
                generators,
            });
        }
        let usmall = halfspaces.into_iter().map(|(coeffs, bound)| HalfSpace { coeffs, bound }).collect();

        Ok(CaseKernel {
            l,
            ss: case.semisimple_rank(),
            gram,
            gram_den,
            gamma,
            rho_c,
            beta,
            congruence,
            usmall,
            rho_pairings,
            chambers,
            tables: ProjectionTables::new(case)?,
        })
    }

    pub fn s(&self) -> usize {
        self.chambers.len()
    }

    /// `‖w‖² · gram_den`.
    #[inline]
    pub fn norm_num(&self, w: &Wt) -> i64 {
        dot(w, &lower(&self.gram, w))
    }

    pub fn norm_sq(&self, w: &Wt) -> Q {
        Q::new(self.norm_num(w) as i128, self.gram_den as i128)
    }

    pub fn is_dominant(&self, w: &Wt) -> bool {
        w[..self.ss].iter().all(|&x| x >= 0)
    }

    pub fn on_lattice(&self, w: &Wt) -> bool {
        match &self.congruence {
            None => true,
            Some((c, m)) => dot(c, w).rem_euclid(*m) == 0,
        }
    }

    pub fn is_k_type(&self, w: &Wt) -> bool {
        self.is_dominant(w) && self.on_lattice(w)
    }

    /// u-small test for a 𝔨-dominant weight (lattice membership not needed).
    #[inline]
    pub fn is_usmall(&self, w: &Wt) -> bool {
        self.usmall.iter().all(|h| h.holds(w))
    }

    /// Scaled coordinates of `μ + 2ρ_c` in the generators of chamber `j`.
    #[inline]
    pub fn cone_coords(&self, j: usize, w: &Wt) -> Wt {
        let ch = &self.chambers[j];
        std::array::from_fn(|i| if i < self.l { dot(&ch.rows[i], w) + ch.offset[i] } else { 0 })
    }

    #[inline]
    pub fn in_omega(&self, j: usize, w: &Wt) -> bool {
        let ch = &self.chambers[j];
        (0..self.l).all(|i| dot(&ch.rows[i], w) + ch.offset[i] >= 0)
    }

    pub fn omega_chambers(&self, w: &Wt) -> Vec<usize> {
        (0..self.s()).filter(|&j| self.in_omega(j, w)).collect()
    }

    /// Dominant conjugate under W(𝔨), smallest negative index first.
    #[inline]
    pub fn make_dominant(&self, mut v: Wt) -> Wt {
        loop {
            let mut moved = false;
            for i in 0..self.ss {
                let c = v[i];
                if c < 0 {
                    for k in 0..self.l {
                        v[k] -= c * self.gamma[i][k];
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                return v;
            }
        }
    }

    /// `‖{μ − ρ_n^(j)} + ρ_c‖² · gram_den`.
    #[inline]
    pub fn spin_candidate_num(&self, j: usize, w: &Wt) -> i64 {
        let v = self.make_dominant(sub(w, &self.chambers[j].rho_n));
        self.norm_num(&add(&v, &self.rho_c))
    }

    pub fn spin_candidate(&self, j: usize, w: &Wt) -> Q {
        Q::new(self.spin_candidate_num(j, w) as i128, self.gram_den as i128)
    }

    /// `‖μ − ρ_n^(j) + ρ_c‖² · gram_den`, a lower bound for the candidate
    /// because `{v} − v` is a non-negative combination of positive roots.
    #[inline]
    fn candidate_lower_bound(&self, j: usize, w: &Wt, w_norm: i64) -> i64 {
        let ch = &self.chambers[j];
        w_norm + 2 * dot(w, &ch.shift_lowered) + ch.shift_norm
    }

    /// Spin norm numerator if it is below `cutoff` (always when `None`).
    /// Chambers are visited by increasing lower bound and skipped once the
    /// bound reaches the best value so far.
    pub fn spin_num_below(&self, w: &Wt, cutoff: Option<i64>) -> Option<i64> {
        let w_norm = self.norm_num(w);
        let mut order: Vec<(i64, usize)> =
            (0..self.s()).map(|j| (self.candidate_lower_bound(j, w, w_norm), j)).collect();
        order.sort_unstable();
        let mut best = cutoff;
        let mut found = false;
        for (lb, j) in order {
            if best.is_some_and(|b| lb >= b) {
                break;
            }
            let c = self.spin_candidate_num(j, w);
            if best.is_none_or(|b| c < b) {
                best = Some(c);
                found = true;
            }
        }
        if found {
            best
        } else {
            None
        }
    }

    pub fn spin_num(&self, w: &Wt) -> i64 {
        self.spin_num_below(w, None).expect("at least one chamber")
    }

    pub fn spin_sq(&self, w: &Wt) -> Q {
        Q::new(self.spin_num(w) as i128, self.gram_den as i128)
    }

    /// Squared norm of `P(μ + 2ρ_c − ρ^(j))` onto `C^(j)`.
    pub fn lambda_in(&self, j: usize, w: &Wt) -> KernelProjection {
        let ch = &self.chambers[j];
        let x = self.cone_coords(j, w);
        let e: Wt = std::array::from_fn(|i| {
            if i < self.l {
                x[i] - ch.den * self.rho_pairings[i]
            } else {
                0
            }
        });
        let (norm_sq, _, c) = self.tables.project(self.l, &e, ch.den);
        KernelProjection { norm_sq, zero_set: (0..self.l).filter(|&i| c[i] == 0).collect() }
    }

    /// Lambda norm using the first allowable chamber.
    pub fn lambda_sq(&self, w: &Wt) -> Option<Q> {
        (0..self.s()).find(|&j| self.in_omega(j, w)).map(|j| self.lambda_in(j, w).norm_sq)
    }

    /// Unrestricted pencil minimum `min_m ‖μ + mβ‖²_spin` and the smallest
    /// minimizing `m`.
    pub fn mp_unrestricted(&self, w: &Wt) -> Option<(Q, u32)> {
        let beta = self.beta?;
        let beta_low = lower(&self.gram, &beta);
        let beta_norm = dot(&beta, &beta_low);
        let mut best: Option<(i64, u32)> = None;
        let mut cur = *w;
        let mut m = 0u32;
        loop {
            if let Some(v) = self.spin_num_below(&cur, best.map(|(b, _)| b)) {
                best = Some((v, m));
            }
            let b = best.expect("m = 0 always produces a value").0;
            // Stop once every lower bound is at least the running minimum and
            // non-decreasing in m from here on (they are convex in m).
            let cur_norm = self.norm_num(&cur);
            let done = (0..self.s()).all(|j| {
                let ch = &self.chambers[j];
                let lb = self.candidate_lower_bound(j, &cur, cur_norm);
                let step = 2 * (dot(&cur, &beta_low) + dot(&ch.shift, &beta_low)) + beta_norm;
                lb >= b && step >= 0
            });
            if done {
                let (v, m) = best.unwrap();
                return Some((Q::new(v as i128, self.gram_den as i128), m));
            }
            cur = add(&cur, &beta);
            m += 1;
        }
    }
}
