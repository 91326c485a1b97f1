//! Exceptional root systems in Knapp's coordinates, and reflection-group
//! primitives: dominant conjugates, reduced words, group orders.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{invert, q, qf, GramContext, Matrix, Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::G2 => 2,
            RootType::F4 => 4,
            RootType::E6 => 6,
            RootType::E7 => 7,
            RootType::E8 => 8,
        }
    }

    pub fn positive_root_count(self) -> usize {
        match self {
            RootType::G2 => 6,
            RootType::F4 => 24,
            RootType::E6 => 36,
            RootType::E7 => 63,
            RootType::E8 => 120,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G2" => Ok(RootType::G2),
            "F4" => Ok(RootType::F4),
            "E6" => Ok(RootType::E6),
            "E7" => Ok(RootType::E7),
            "E8" => Ok(RootType::E8),
            _ => Err(Error::Usage(format!("unknown root system {s:?}"))),
        }
    }
}

/// A root with its simple-root coefficients and ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub vector: RationalVector,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct AmbientRootSystem {
    pub root_type: RootType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<RationalVector>,
    /// `cartan[i][k] = ⟨α_i, α_k^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Sorted lexicographically by simple-root coefficients.
    pub positive_roots: Vec<Root>,
    pub fundamental_weights: Vec<RationalVector>,
    pub simple_coroots: Vec<RationalVector>,
    pub highest_root: Root,
}

fn e8_simple_roots(n: usize) -> Vec<RationalVector> {
    let h = qf(1, 2);
    let mut out = Vec::with_capacity(n);
    // α1 = ½(e1 + e8) − ½(e2 + … + e7)
    let mut a1 = vec![-h.clone(); 8];
    a1[0] = h.clone();
    a1[7] = h;
    out.push(RationalVector(a1));
    out.push(RationalVector::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]));
    for i in 1..7 {
        let mut v = vec![0i64; 8];
        v[i] = 1;
        v[i - 1] = -1;
        out.push(RationalVector::from_ints(&v));
    }
    out.truncate(n);
    out
}

fn simple_roots_for(t: RootType) -> Vec<RationalVector> {
    match t {
        RootType::G2 => vec![
            RationalVector::from_ints(&[1, -1, 0]),
            RationalVector::from_ints(&[-2, 1, 1]),
        ],
        RootType::F4 => {
            let h = qf(1, 2);
            vec![
                RationalVector(vec![h.clone(), -h.clone(), -h.clone(), -h]),
                RationalVector::from_ints(&[0, 0, 0, 1]),
                RationalVector::from_ints(&[0, 0, 1, -1]),
                RationalVector::from_ints(&[0, 1, -1, 0]),
            ]
        }
        RootType::E6 => e8_simple_roots(6),
        RootType::E7 => e8_simple_roots(7),
        RootType::E8 => e8_simple_roots(8),
    }
}

/// Cartan matrix `⟨α_i, α_k^∨⟩` of a list of roots under the Euclidean product.
fn euclidean_cartan(simples: &[RationalVector]) -> Result<Vec<Vec<i64>>> {
    simples
        .iter()
        .map(|a| {
            simples
                .iter()
                .map(|b| {
                    let c = q(2) * a.dot(b) / b.dot(b);
                    c.to_integer()
                        .try_into()
                        .ok()
                        .filter(|_| c.is_integer())
                        .ok_or_else(|| Error::CaseData("non-integral Cartan entry".into()))
                })
                .collect()
        })
        .collect()
}

/// All positive roots, as simple-root coefficient vectors, of the root system
/// with Cartan matrix `cartan` (`cartan[i][k] = ⟨α_i, α_k^∨⟩`).
pub fn positive_root_coeffs(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for i in 0..n {
            let is_simple_i = beta.iter().enumerate().all(|(k, &c)| c == i64::from(k == i));
            if is_simple_i {
                continue;
            }
            let p: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
            let mut img = beta.clone();
            img[i] -= p;
            debug_assert!(img.iter().all(|&c| c >= 0));
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn build_root_system(label: &str) -> Result<AmbientRootSystem> {
    let t: RootType = label.parse()?;
    let simple_roots = simple_roots_for(t);
    let rank = simple_roots.len();
    let ambient_dim = simple_roots[0].dim();
    let cartan = euclidean_cartan(&simple_roots)?;

    let positive_roots: Vec<Root> = positive_root_coeffs(&cartan)
        .into_iter()
        .map(|coeffs| {
            let mut v = RationalVector::zero(ambient_dim);
            for (c, a) in coeffs.iter().zip(&simple_roots) {
                v = v.add_scaled(&q(*c), a);
            }
            Root { coeffs, vector: v }
        })
        .collect();
    if positive_roots.len() != t.positive_root_count() {
        return Err(Error::CaseData(format!(
            "{t}: reflection closure produced {} positive roots",
            positive_roots.len()
        )));
    }

    let simple_coroots: Vec<RationalVector> =
        simple_roots.iter().map(|a| a.scale(&(q(2) / a.dot(a)))).collect();

    // α_i = Σ_k cartan[i][k] ζ_k, hence ζ = cartan⁻¹ α.
    let cm: Matrix = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let inv = invert(&cm).ok_or_else(|| Error::CaseData("singular Cartan matrix".into()))?;
    let fundamental_weights: Vec<RationalVector> = inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(&simple_roots)
                .fold(RationalVector::zero(ambient_dim), |acc, (c, a)| acc.add_scaled(c, a))
        })
        .collect();

    let highest_root = positive_roots
        .iter()
        .max_by_key(|r| r.height())
        .cloned()
        .expect("non-empty root system");

    Ok(AmbientRootSystem {
        root_type: t,
        rank,
        ambient_dim,
        simple_roots,
        cartan,
        positive_roots,
        fundamental_weights,
        simple_coroots,
        highest_root,
    })
}

impl AmbientRootSystem {
    /// Ambient vector of `Σ c_i α_i`.
    pub fn combination(&self, coeffs: &[Rational]) -> RationalVector {
        coeffs
            .iter()
            .zip(&self.simple_roots)
            .fold(RationalVector::zero(self.ambient_dim), |acc, (c, a)| acc.add_scaled(c, a))
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> RationalVector {
        self.positive_roots
            .iter()
            .fold(RationalVector::zero(self.ambient_dim), |acc, r| &acc + &r.vector)
            .scale(&qf(1, 2))
    }
}

/// A product of simple reflections `s_{w[0]} s_{w[1]} ⋯`, acting on vectors
/// from the right end first. Indices are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    /// Builds the element obtained by applying reflections in `steps` order.
    pub fn from_steps(steps: &[usize]) -> Self {
        WeylWord(steps.iter().rev().copied().collect())
    }

    /// Reflection indices in the order they act on a vector.
    pub fn steps(&self) -> Vec<usize> {
        self.0.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.push(i);
        WeylWord(w)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for i in &self.0 {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IndexPolicy {
    #[default]
    Smallest,
    Largest,
}

/// A finite reflection group given by simple roots in some coordinate space.
#[derive(Clone, Debug)]
pub struct ReflectionSystem {
    pub simples: Vec<RationalVector>,
    pub context: GramContext,
    /// `coroot_forms[i] · v = ⟨v, α_i^∨⟩`.
    coroot_forms: Vec<RationalVector>,
    /// `cartan[i][k] = ⟨α_i, α_k^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    positive_coeffs: Vec<Vec<i64>>,
    positive: Vec<RationalVector>,
}

impl ReflectionSystem {
    pub fn new(simples: Vec<RationalVector>, context: GramContext) -> Result<Self> {
        let mut coroot_forms = Vec::with_capacity(simples.len());
        for a in &simples {
            let aa = context.norm_sq(a)?;
            if aa.is_zero() {
                return Err(Error::CaseData("zero simple root".into()));
            }
            coroot_forms.push(context.lower(a).scale(&(q(2) / aa)));
        }
        let cartan: Vec<Vec<i64>> = simples
            .iter()
            .map(|a| {
                coroot_forms
                    .iter()
                    .map(|f| {
                        let c = a.dot(f);
                        if !c.is_integer() {
                            return Err(Error::CaseData("non-integral Cartan entry".into()));
                        }
                        i64::try_from(c.to_integer())
                            .map_err(|_| Error::CaseData("Cartan entry overflow".into()))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        for (i, row) in cartan.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                if (i == k && c != 2) || (i != k && c > 0) {
                    return Err(Error::CaseData("simple roots do not form a base".into()));
                }
            }
        }
        let positive_coeffs = positive_root_coeffs(&cartan);
        let positive = positive_coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&simples)
                    .fold(RationalVector::zero(context.dim()), |acc, (x, a)| acc.add_scaled(&q(*x), a))
            })
            .collect();
        Ok(ReflectionSystem { simples, context, coroot_forms, cartan, positive_coeffs, positive })
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn pairing(&self, v: &RationalVector, i: usize) -> Rational {
        v.dot(&self.coroot_forms[i])
    }

    pub fn reflect(&self, v: &RationalVector, i: usize) -> RationalVector {
        let c = self.pairing(v, i);
        v.add_scaled(&-c, &self.simples[i])
    }

    pub fn apply(&self, w: &WeylWord, v: &RationalVector) -> RationalVector {
        w.0.iter().rev().fold(v.clone(), |acc, &i| self.reflect(&acc, i))
    }

    pub fn is_dominant(&self, v: &RationalVector) -> bool {
        (0..self.rank()).all(|i| !self.pairing(v, i).is_negative())
    }

    pub fn positive_roots(&self) -> Vec<RationalVector> {
        self.positive.clone()
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_coeffs.len()
    }

    /// Number of positive roots whose pairing with `v` is negative.
    pub fn negative_pairings(&self, v: &RationalVector) -> usize {
        let form = self.context.lower(v);
        self.positive.iter().filter(|r| r.dot(&form).is_negative()).count()
    }

    /// Length of `w`: the number of positive roots it sends to negative roots.
    pub fn length(&self, w: &WeylWord) -> usize {
        let ctx = &self.context;
        // A root is negative iff it pairs negatively with the regular dominant
        // vector Σ ζ_i, and ⟨wβ, ρ⟩ = ⟨β, w⁻¹ρ⟩.
        let inverse = WeylWord(w.0.iter().rev().copied().collect());
        let pulled = ctx.lower(&self.apply(&inverse, &self.regular_dominant()));
        self.positive.iter().filter(|b| b.dot(&pulled).is_negative()).count()
    }

    fn regular_dominant(&self) -> RationalVector {
        // Σ_i of the dual basis to the coroot forms, restricted to the span of
        // the simple roots: solve ⟨x, α_i^∨⟩ = 1 with x = Σ c_k α_k.
        let n = self.rank();
        let a: Matrix = (0..n)
            .map(|i| (0..n).map(|k| q(self.cartan[k][i])).collect())
            .collect();
        let c = crate::exact::solve(&a, &vec![q(1); n]).expect("Cartan matrices are invertible");
        c.iter()
            .zip(&self.simples)
            .fold(RationalVector::zero(self.context.dim()), |acc, (x, a)| acc.add_scaled(x, a))
    }

    pub fn is_reduced(&self, w: &WeylWord) -> bool {
        self.length(w) == w.len()
    }

    /// Negative index algorithm with the given policy.
    pub fn make_dominant(
        &self,
        v: &RationalVector,
        policy: IndexPolicy,
    ) -> Result<(RationalVector, WeylWord)> {
        self.make_dominant_by(v, |neg| match policy {
            IndexPolicy::Smallest => neg[0],
            IndexPolicy::Largest => *neg.last().unwrap(),
        })
    }

    /// Negative index algorithm where `choose` picks one of the indices with
    /// negative pairing (passed in increasing order) at every step.
    pub fn make_dominant_by(
        &self,
        v: &RationalVector,
        mut choose: impl FnMut(&[usize]) -> usize,
    ) -> Result<(RationalVector, WeylWord)> {
        let cap = self.positive_root_count();
        let mut cur = v.clone();
        let mut steps = Vec::new();
        // ⟨s_i v, α_k^∨⟩ = ⟨v, α_k^∨⟩ − ⟨v, α_i^∨⟩⟨α_i, α_k^∨⟩
        let mut pairings: Vec<Rational> = (0..self.rank()).map(|i| self.pairing(v, i)).collect();
        loop {
            let neg: Vec<usize> = (0..self.rank()).filter(|&i| pairings[i].is_negative()).collect();
            if neg.is_empty() {
                return Ok((cur, WeylWord::from_steps(&steps)));
            }
            if steps.len() >= cap {
                return Err(Error::CaseData(
                    "negative index algorithm exceeded the longest element length".into(),
                ));
            }
            let i = choose(&neg);
            if !neg.contains(&i) {
                return Err(Error::Usage(format!("index {i} does not have negative pairing")));
            }
            let c = pairings[i].clone();
            cur = cur.add_scaled(&-c.clone(), &self.simples[i]);
            for (k, p) in pairings.iter_mut().enumerate() {
                let a = self.cartan[i][k];
                if a != 0 {
                    *p -= &c * q(a);
                }
            }
            steps.push(i);
        }
    }

    pub fn group_order(&self) -> u128 {
        weyl_group_order(&self.cartan)
    }
}

/// Order of the Weyl group with the given Cartan matrix, computed from the
/// classification of its irreducible components.
pub fn weyl_group_order(cartan: &[Vec<i64>]) -> u128 {
    let n = cartan.len();
    let mut done = vec![false; n];
    let mut order: u128 = 1;
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut comp = vec![start];
        done[start] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let i = comp[idx];
            for k in 0..n {
                if !done[k] && (cartan[i][k] != 0 || cartan[k][i] != 0) {
                    done[k] = true;
                    comp.push(k);
                }
            }
            idx += 1;
        }
        comp.sort_unstable();
        let sub: Vec<Vec<i64>> =
            comp.iter().map(|&i| comp.iter().map(|&k| cartan[i][k]).collect()).collect();
        order *= irreducible_order(&sub);
    }
    order
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn irreducible_order(cartan: &[Vec<i64>]) -> u128 {
    let r = cartan.len() as u128;
    let npos = positive_root_coeffs(cartan).len() as u128;
    let laced = cartan.iter().flatten().all(|&c| c >= -1);
    let triple = cartan.iter().flatten().any(|&c| c == -3);
    if triple {
        return 12;
    }
    if !laced {
        return if r == 4 && npos == 24 { 1152 } else { (1u128 << r) * factorial(r) };
    }
    match (r, npos) {
        (6, 36) => 51840,
        (7, 63) => 2903040,
        (8, 120) => 696729600,
        _ if npos == r * (r + 1) / 2 => factorial(r + 1),
        _ => (1u128 << (r - 1)) * factorial(r),
    }
}

/// Closure of `simples` under their own reflections, returning every root.
pub fn root_closure(simples: &[RationalVector], ctx: &GramContext) -> Result<Vec<RationalVector>> {
    let sys = ReflectionSystem::new(simples.to_vec(), ctx.clone())?;
    let pos = sys.positive_roots();
    let mut all: Vec<RationalVector> = pos.iter().map(|r| -r).collect();
    all.extend(pos);
    let uniq: HashSet<RationalVector> = all.iter().cloned().collect();
    debug_assert_eq!(uniq.len(), all.len());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (t, n) in [("G2", 6), ("F4", 24), ("E6", 36), ("E7", 63), ("E8", 120)] {
            assert_eq!(build_root_system(t).unwrap().positive_roots.len(), n, "{t}");
        }
        assert!(build_root_system("A3").is_err());
    }

    #[test]
    fn g2_and_f4_simple_roots_follow_knapp() {
        let g2 = build_root_system("G2").unwrap();
        assert_eq!(g2.simple_roots[0], RationalVector::from_ints(&[1, -1, 0]));
        assert_eq!(g2.simple_roots[1], RationalVector::from_ints(&[-2, 1, 1]));
        let f4 = build_root_system("F4").unwrap();
        assert_eq!(
            f4.simple_roots[0],
            RationalVector(vec![qf(1, 2), qf(-1, 2), qf(-1, 2), qf(-1, 2)])
        );
        assert_eq!(f4.simple_roots[3], RationalVector::from_ints(&[0, 1, -1, 0]));
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for t in ["G2", "F4", "E6", "E7", "E8"] {
            let r = build_root_system(t).unwrap();
            for (i, z) in r.fundamental_weights.iter().enumerate() {
                for (k, c) in r.simple_coroots.iter().enumerate() {
                    assert_eq!(z.dot(c), q(i64::from(i == k)), "{t} ζ{i} α{k}");
                }
            }
            let sum = r
                .fundamental_weights
                .iter()
                .fold(RationalVector::zero(r.ambient_dim), |a, z| &a + z);
            assert_eq!(sum, r.rho(), "{t}: ρ = Σζ");
        }
    }

    #[test]
    fn rho_norms_match_known_values() {
        for (t, n, d) in [("G2", 14, 1), ("F4", 39, 1), ("E6", 78, 1), ("E7", 399, 2), ("E8", 620, 1)] {
            let r = build_root_system(t).unwrap();
            let rho = r.rho();
            assert_eq!(rho.dot(&rho), qf(n, d), "{t}");
        }
    }

    #[test]
    fn highest_roots() {
        let e8 = build_root_system("E8").unwrap();
        assert_eq!(e8.highest_root.coeffs, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let e7 = build_root_system("E7").unwrap();
        assert_eq!(e7.highest_root.coeffs, vec![2, 2, 3, 4, 3, 2, 1]);
        let e6 = build_root_system("E6").unwrap();
        assert_eq!(e6.highest_root.coeffs, vec![1, 2, 2, 3, 2, 1]);
        let f4 = build_root_system("F4").unwrap();
        assert_eq!(f4.highest_root.coeffs, vec![2, 4, 3, 2]);
    }

    #[test]
    fn weyl_orders() {
        for (t, n) in [
            ("G2", 12u128),
            ("F4", 1152),
            ("E6", 51840),
            ("E7", 2903040),
            ("E8", 696729600),
        ] {
            assert_eq!(weyl_group_order(&build_root_system(t).unwrap().cartan), n, "{t}");
        }
        let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(weyl_group_order(&a3), 24);
        let b3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]];
        assert_eq!(weyl_group_order(&b3), 48);
        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        assert_eq!(weyl_group_order(&d4), 192);
        let a1a1 = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(weyl_group_order(&a1a1), 4);
    }

    fn g2_system() -> ReflectionSystem {
        // G2 in fundamental-weight coordinates.
        let ctx = GramContext::new(
            vec!["z1".into(), "z2".into()],
            vec![vec![q(2), q(3)], vec![q(3), q(6)]],
        )
        .unwrap();
        ReflectionSystem::new(
            vec![RationalVector::from_ints(&[2, -1]), RationalVector::from_ints(&[-3, 2])],
            ctx,
        )
        .unwrap()
    }

    #[test]
    fn dominant_input_is_fixed() {
        let sys = g2_system();
        let v = RationalVector::from_ints(&[3, 1]);
        let (d, w) = sys.make_dominant(&v, IndexPolicy::Smallest).unwrap();
        assert_eq!(d, v);
        assert!(w.is_empty());
    }

    #[test]
    fn minus_rho_goes_to_rho() {
        let sys = g2_system();
        let (d, w) = sys
            .make_dominant(&RationalVector::from_ints(&[-1, -1]), IndexPolicy::Smallest)
            .unwrap();
        assert_eq!(d, RationalVector::from_ints(&[1, 1]));
        assert_eq!(w.len(), 6);
        assert!(sys.is_reduced(&w));
        assert_eq!(sys.apply(&w, &RationalVector::from_ints(&[-1, -1])), d);
    }

    #[test]
    fn word_display() {
        assert_eq!(WeylWord(vec![1, 0]).to_string(), "s2s1");
        assert_eq!(WeylWord::identity().to_string(), "e");
        assert_eq!(WeylWord::from_steps(&[0, 1]).to_string(), "s2s1");
    }
}
