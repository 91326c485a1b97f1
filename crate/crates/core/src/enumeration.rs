//! u-small K-types, their per-chamber split Ω_us(j), the boundary sets
//! ∂Ω_us(j), and non-decreasable K-types.

use std::collections::HashSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::{dot, pack, unpack, CaseKernel, Packed, Wt, MAXR};

/// Depth-first search over ϖ-coordinates. At each node the largest admissible
/// value of the next coordinate is read off the half-spaces, which is valid
/// because the u-small dominant weights are closed under subtracting any ϖ_i.
struct Search<'a> {
    k: &'a CaseKernel,
    /// `positive[d]`: half-spaces with a positive coefficient on coordinate d.
    positive: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(k: &'a CaseKernel) -> Result<Self> {
        let positive: Vec<Vec<usize>> = (0..k.ss)
            .map(|d| (0..k.usmall.len()).filter(|&f| k.usmall[f].coeffs[d] > 0).collect())
            .collect();
        if positive.iter().any(Vec::is_empty) {
            return Err(Error::Internal("u-small region is unbounded".into()));
        }
        Ok(Search { k, positive })
    }

    fn max_step(&self, d: usize, slack: &[i64]) -> i64 {
        self.positive[d]
            .iter()
            .map(|&f| Integer::div_floor(&slack[f], &self.k.usmall[f].coeffs[d]))
            .min()
            .unwrap()
    }

    fn run(&self, d: usize, w: &mut Wt, slack: &[i64], out: &mut Vec<Packed>) {
        let top = self.max_step(d, slack);
        if d + 1 == self.k.ss {
            for v in 0..=top {
                w[d] = v;
                if self.k.on_lattice(w) {
                    out.push(pack(w));
                }
            }
            w[d] = 0;
            return;
        }
        let mut next = slack.to_vec();
        for v in 0..=top {
            w[d] = v;
            if v > 0 {
                for (f, s) in next.iter_mut().enumerate() {
                    *s -= self.k.usmall[f].coeffs[d];
                }
            }
            self.run(d + 1, w, &next, out);
        }
        w[d] = 0;
    }

    fn slack_of(&self, w: &Wt) -> Vec<i64> {
        self.k.usmall.iter().map(|h| h.bound - dot(&h.coeffs, w)).collect()
    }

    /// Subtrees keyed by (central value, first coordinate) for parallelism.
    fn roots(&self) -> Vec<Wt> {
        let k = self.k;
        let centers: Vec<i64> = if k.ss < k.l {
            let c = k.l - 1;
            let lo = k.chambers.iter().map(|ch| 2 * ch.rho_n[c]).min().unwrap();
            let hi = k.chambers.iter().map(|ch| 2 * ch.rho_n[c]).max().unwrap();
            (lo..=hi).collect()
        } else {
            vec![0]
        };
        let mut roots = Vec::new();
        for f in centers {
            let mut w = [0i64; MAXR];
            if k.ss < k.l {
                w[k.l - 1] = f;
            }
            let slack = self.slack_of(&w);
            if slack.iter().any(|&s| s < 0) {
                continue;
            }
            if k.ss == 1 {
                roots.push(w);
                continue;
            }
            for v in 0..=self.max_step(0, &slack) {
                let mut r = w;
                r[0] = v;
                roots.push(r);
            }
        }
        roots
    }
}

/// All u-small K-types, sorted.
pub fn enumerate_usmall(k: &CaseKernel) -> Result<Vec<Packed>> {
    let search = Search::new(k)?;
    let roots = search.roots();
    let single = k.ss == 1;
    let mut all: Vec<Packed> = roots
        .par_iter()
        .flat_map_iter(|root| {
            let mut out = Vec::new();
            let mut w = *root;
            let slack = search.slack_of(&w);
            if single {
                search.run(0, &mut w, &slack, &mut out);
            } else {
                search.run(1, &mut w, &slack, &mut out);
            }
            out
        })
        .collect();
    all.par_sort_unstable();
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberInventory {
    /// Indices into the global list.
    pub omega: Vec<u32>,
    pub boundary: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsmallInventory {
    pub l: usize,
    pub ktypes: Vec<Packed>,
    pub chambers: Vec<ChamberInventory>,
}

impl UsmallInventory {
    pub fn build(k: &CaseKernel, ktypes: Vec<Packed>) -> Self {
        let set: HashSet<Packed> = ktypes.iter().copied().collect();
        let is_usmall = |w: &Wt| -> bool {
            if k.on_lattice(w) {
                set.contains(&pack(w))
            } else {
                k.is_usmall(w)
            }
        };
        // For every K-type: the chambers it lies in and where it is on the boundary.
        let rows: Vec<Vec<(u16, bool)>> = ktypes
            .par_iter()
            .map(|p| {
                let w = unpack(p);
                (0..k.s())
                    .filter(|&j| k.in_omega(j, &w))
                    .map(|j| {
                        let ch = &k.chambers[j];
                        let on_boundary = (0..k.l).any(|i| {
                            let n: Wt = std::array::from_fn(|t| w[t] + ch.generators[i][t]);
                            !is_usmall(&n)
                        });
                        (j as u16, on_boundary)
                    })
                    .collect()
            })
            .collect();
        let mut chambers = vec![ChamberInventory { omega: Vec::new(), boundary: Vec::new() }; k.s()];
        for (u, row) in rows.iter().enumerate() {
            for &(j, b) in row {
                chambers[j as usize].omega.push(u as u32);
                if b {
                    chambers[j as usize].boundary.push(u as u32);
                }
            }
        }
        UsmallInventory { l: k.l, ktypes, chambers }
    }

    pub fn omega_count(&self, j: usize) -> usize {
        self.chambers[j].omega.len()
    }

    pub fn boundary_count(&self, j: usize) -> usize {
        self.chambers[j].boundary.len()
    }

    pub fn weights(&self, idx: &[u32]) -> Vec<Wt> {
        idx.iter().map(|&u| unpack(&self.ktypes[u as usize])).collect()
    }

    /// Union over j of `Ω_us(j) ∖ ∂Ω_us(j)`, as sorted indices.
    pub fn interior_union(&self) -> Vec<u32> {
        let mut mark = vec![false; self.ktypes.len()];
        for ch in &self.chambers {
            let b: HashSet<u32> = ch.boundary.iter().copied().collect();
            for &u in &ch.omega {
                if !b.contains(&u) {
                    mark[u as usize] = true;
                }
            }
        }
        (0..self.ktypes.len() as u32).filter(|&u| mark[u as usize]).collect()
    }

    /// sha256 over the sorted K-types and per-chamber index lists.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for p in &self.ktypes {
            for x in &p[..self.l] {
                h.update(x.to_le_bytes());
            }
        }
        for ch in &self.chambers {
            h.update((ch.omega.len() as u64).to_le_bytes());
            for u in ch.omega.iter().chain(&ch.boundary) {
                h.update(u.to_le_bytes());
            }
        }
        format!("{:x}", h.finalize())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    VerifiedWithinCap,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonDecreasable {
    pub chamber: usize,
    pub cap_num: i64,
    pub cap_den: i64,
    pub ktypes: Vec<Vec<i64>>,
    pub usmall: Vec<bool>,
    /// True when every non-decreasable K-type lies within the cap.
    pub complete_within_cap: bool,
    pub verdict: Verdict,
}

/// Coset representatives of `{x : Σ x_i g_i ∈ Z^l}` modulo `Z^l`, as
/// numerators over `den`.
fn coset_representatives(gens: &[Wt], l: usize) -> Result<(Vec<Wt>, i64)> {
    use crate::exact::{invert, q};
    let m: crate::exact::Matrix =
        (0..l).map(|i| (0..l).map(|k| q(gens[i][k])).collect()).collect();
    let inv = invert(&m).ok_or_else(|| Error::Internal("dependent generators".into()))?;
    let den = inv
        .iter()
        .flatten()
        .fold(num_bigint::BigInt::from(1), |a, x| a.lcm(x.denom()));
    let den: i64 = num_traits::ToPrimitive::to_i64(&den).unwrap();
    // x = e_k M⁻¹ is the generator with Σ x_i g_i = e_k.
    let units: Vec<Wt> = (0..l)
        .map(|k| {
            std::array::from_fn(|i| {
                if i < l {
                    let v = &inv[k][i] * q(den);
                    num_traits::ToPrimitive::to_i64(&v.to_integer()).unwrap().rem_euclid(den)
                } else {
                    0
                }
            })
        })
        .collect();
    let mut seen: HashSet<Wt> = HashSet::from([[0; MAXR]]);
    let mut queue = vec![[0i64; MAXR]];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for u in &units {
            let y: Wt = std::array::from_fn(|i| (x[i] + u[i]).rem_euclid(den));
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    queue.sort();
    Ok((queue, den))
}

/// Non-decreasable K-types in Ω(j): μ such that no `μ − w^(j)ζ_p` lies in
/// Ω(j). Every such μ has cone coordinates `x(μ + 2ρ_c)` in `[0, 3)^l`, so
/// the enumeration below is exhaustive; `cap` only limits what is reported.
pub fn nondecreasable(k: &CaseKernel, j: usize, cap: (i64, i64)) -> Result<NonDecreasable> {
    let l = k.l;
    let ch = &k.chambers[j];
    let gens = &ch.generators;
    let (reps, den) = coset_representatives(gens, l)?;
    let two_rho_c: Wt = std::array::from_fn(|i| 2 * k.rho_c[i]);
    let mut found: Vec<Wt> = Vec::new();
    let total = 3usize.pow(l as u32);
    for r in &reps {
        for code in 0..total {
            let mut c = code;
            // x = (r + den · n) / den with n ∈ {0,1,2}^l
            let x: Wt = std::array::from_fn(|i| {
                if i < l {
                    let n = (c % 3) as i64;
                    c /= 3;
                    r[i] + den * n
                } else {
                    0
                }
            });
            let mut mu = [0i64; MAXR];
            for i in 0..l {
                for t in 0..l {
                    mu[t] += x[i] * gens[i][t];
                }
            }
            for t in 0..l {
                debug_assert_eq!(mu[t] % den, 0);
                mu[t] = mu[t] / den - two_rho_c[t];
            }
            if !k.is_k_type(&mu) || !k.in_omega(j, &mu) {
                continue;
            }
            let decreasable = (0..l).any(|p| {
                let d: Wt = std::array::from_fn(|t| mu[t] - gens[p][t]);
                k.is_k_type(&d) && k.in_omega(j, &d)
            });
            if !decreasable {
                found.push(mu);
            }
        }
    }
    found.sort();
    found.dedup();
    let (cap_num, cap_den) = cap;
    let within = |w: &Wt| (k.norm_num(w) as i128) * (cap_den as i128) <= (cap_num as i128) * (k.gram_den as i128);
    let complete_within_cap = found.iter().all(within);
    let usmall: Vec<bool> = found.iter().map(|w| k.is_usmall(w)).collect();
    let verdict = if usmall.iter().all(|&b| b) {
        if complete_within_cap {
            Verdict::VerifiedWithinCap
        } else {
            Verdict::Inconclusive
        }
    } else {
        Verdict::Counterexample
    };
    Ok(NonDecreasable {
        chamber: j,
        cap_num,
        cap_den,
        ktypes: found.iter().map(|w| w[..l].to_vec()).collect(),
        usmall,
        complete_within_cap,
        verdict,
    })
}

/// Default cap: `4 · max_j ‖2ρ_n^(j)‖²` as `(numerator, denominator)`.
pub fn default_cap(k: &CaseKernel) -> (i64, i64) {
    let m = k
        .chambers
        .iter()
        .map(|ch| {
            let t: Wt = std::array::from_fn(|i| 2 * ch.rho_n[i]);
            k.norm_num(&t)
        })
        .max()
        .unwrap();
    let g = (4 * m).gcd(&k.gram_den);
    (4 * m / g, k.gram_den / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseLabel;
    use crate::context::CaseContext;
    use crate::kernel::wt_to_vector;

    fn ctx(l: CaseLabel) -> CaseContext {
        CaseContext::load(l).unwrap()
    }

    fn chamber_with_rho_n(c: &CaseContext, rho_n: &[i64]) -> usize {
        let mut w = [0i64; MAXR];
        w[..rho_n.len()].copy_from_slice(rho_n);
        let v = wt_to_vector(&w, c.kernel.l);
        c.family.chambers.iter().position(|ch| ch.rho_n == v).unwrap()
    }

    fn nd(c: &CaseContext, j: usize) -> NonDecreasable {
        nondecreasable(&c.kernel, j, default_cap(&c.kernel)).unwrap()
    }

    #[test]
    fn g2_split_nondecreasable() {
        let c = ctx(CaseLabel::G2S);
        let want: [&[[i64; 2]]; 3] = [
            &[[0, 0], [0, 1]],
            &[[0, 0], [1, 0], [2, 0], [3, 0], [4, 0]],
            &[[4, 0], [5, 0]],
        ];
        for (j, w) in want.iter().enumerate() {
            let r = nd(&c, j);
            let got: Vec<[i64; 2]> = r.ktypes.iter().map(|v| [v[0], v[1]]).collect();
            assert_eq!(got, w.to_vec(), "j={j}");
            assert_eq!(r.verdict, Verdict::VerifiedWithinCap);
        }
    }

    #[test]
    fn fi_chamber_six_nondecreasable() {
        let c = ctx(CaseLabel::FI);
        let j = chamber_with_rho_n(&c, &[2, 1, 1, 2]);
        let r = nd(&c, j);
        let want: Vec<Vec<i64>> = [
            [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 2], [1, 0, 0, 0], [1, 0, 0, 1], [1, 0, 0, 2],
            [2, 0, 0, 0], [2, 0, 0, 1], [2, 0, 0, 2], [3, 0, 0, 1], [3, 0, 0, 2], [4, 0, 0, 2],
        ]
        .iter()
        .map(|v| v.to_vec())
        .collect();
        assert_eq!(r.ktypes, want);
        assert!(r.usmall.iter().all(|&b| b));
        // generators in this chamber
        let gens: Vec<Vec<i64>> = c.kernel.chambers[j].generators.iter().take(4).map(|g| g[..4].to_vec()).collect();
        assert_eq!(gens, vec![vec![0, 1, 0, 0], vec![1, 1, 0, 1], vec![2, 0, 1, 1], vec![0, 0, 1, 1]]);
    }

    #[test]
    fn fi_chamber_six_omega_inequalities() {
        let c = ctx(CaseLabel::FI);
        let j = chamber_with_rho_n(&c, &[2, 1, 1, 2]);
        for a in 0..7 {
            for b in 0..7 {
                for cc in 0..7 {
                    for d in 0..7 {
                        let w: Wt = [a, b, cc, d, 0, 0, 0, 0];
                        let want = d <= b + cc + 2 && cc <= d && d <= a + cc + 2 && a <= cc + d + 2;
                        assert_eq!(c.kernel.in_omega(j, &w), want, "{w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn e6_hermitian_nondecreasable() {
        let c = ctx(CaseLabel::E6H);
        let j = chamber_with_rho_n(&c, &[1, 0, 1, 0, 1, 3]);
        let r = nd(&c, j);
        let want: Vec<Vec<i64>> = [
            [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 4], [0, 0, 0, 0, 0, 8],
            [0, 0, 0, 0, 1, 2], [0, 0, 0, 0, 1, 6], [0, 0, 0, 0, 2, 4],
        ]
        .iter()
        .map(|v| v.to_vec())
        .collect();
        assert_eq!(r.ktypes, want);
        assert!(r.usmall.iter().all(|&b| b));
        assert_eq!(r.verdict, Verdict::VerifiedWithinCap);
    }

    #[test]
    fn g2_split_boundary_lists() {
        let c = ctx(CaseLabel::G2S);
        let inv = UsmallInventory::build(&c.kernel, enumerate_usmall(&c.kernel).unwrap());
        let got: Vec<[i64; 2]> = inv.weights(&inv.chambers[0].boundary).iter().map(|w| [w[0], w[1]]).collect();
        let mut want = vec![[0, 3], [0, 4], [1, 2], [1, 3], [2, 2], [2, 3], [3, 3]];
        want.sort();
        let mut got = got;
        got.sort();
        assert_eq!(got, want);
    }

    /// Plain box scan with the half-space test.
    fn box_scan(k: &CaseKernel, lo: i64, hi: i64) -> Vec<Packed> {
        let l = k.l;
        let width = (hi - lo + 1) as usize;
        let mut out = Vec::new();
        for code in 0..width.pow(l as u32) {
            let mut c = code;
            let w: Wt = std::array::from_fn(|i| {
                if i < l {
                    let v = lo + (c % width) as i64;
                    c /= width;
                    v
                } else {
                    0
                }
            });
            if k.is_k_type(&w) && k.is_usmall(&w) {
                out.push(pack(&w));
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn dfs_matches_box_scan() {
        for l in [CaseLabel::G2C, CaseLabel::G2S, CaseLabel::FII, CaseLabel::FI] {
            let c = ctx(l);
            let dfs = enumerate_usmall(&c.kernel).unwrap();
            let max = dfs.iter().flat_map(|p| p[..c.kernel.l].to_vec()).max().unwrap() as i64;
            // u-small weights are closed under subtracting any ϖ_i, so a
            // margin of a few layers past the largest coordinate is enough
            let hi = max + 3;
            assert_eq!(dfs, box_scan(&c.kernel, 0, hi), "{l}");
        }
    }

    #[test]
    fn boundary_post_condition() {
        for l in [CaseLabel::G2S, CaseLabel::FI, CaseLabel::EIV, CaseLabel::E6H] {
            let c = ctx(l);
            let k = &c.kernel;
            let inv = UsmallInventory::build(k, enumerate_usmall(k).unwrap());
            for (j, ch) in inv.chambers.iter().enumerate() {
                let b: HashSet<u32> = ch.boundary.iter().copied().collect();
                for &u in &ch.omega {
                    let w = unpack(&inv.ktypes[u as usize]);
                    assert!(k.in_omega(j, &w));
                    let large = (0..k.l).any(|i| {
                        let n: Wt = std::array::from_fn(|t| w[t] + k.chambers[j].generators[i][t]);
                        !k.is_usmall(&n)
                    });
                    assert_eq!(large, b.contains(&u), "{l} j={j} {w:?}");
                }
            }
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let c = ctx(CaseLabel::FI);
        let par = UsmallInventory::build(&c.kernel, enumerate_usmall(&c.kernel).unwrap());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let ser = pool.install(|| UsmallInventory::build(&c.kernel, enumerate_usmall(&c.kernel).unwrap()));
        assert_eq!(par, ser);
        assert_eq!(par.digest(), ser.digest());
    }

    #[test]
    fn interior_union_excludes_full_boundary() {
        let c = ctx(CaseLabel::G2C);
        let inv = UsmallInventory::build(&c.kernel, enumerate_usmall(&c.kernel).unwrap());
        assert_eq!(inv.omega_count(0), 14);
        assert_eq!(inv.boundary_count(0), 6);
        assert_eq!(inv.interior_union().len(), 8);
    }
}
