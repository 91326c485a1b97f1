//! Exact rational vectors, Gram-matrix inner products, linear solves and
//! simplicial cone geometry.
//!
//! Everything here is arbitrary precision. The hot enumeration loops do not
//! go through this module (see [`crate::kernel`]); it is used to build case
//! data and as the reference route for projections.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Converts an exact rational to `f64` for display only.
pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// A coordinate vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| q(x)).collect())
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    /// Euclidean dot product of raw coordinates.
    pub fn dot(&self, other: &Self) -> Rational {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
            .collect()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()))
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, "]")
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), rhs.dim());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

/// A dense rational matrix stored by rows.
pub type Matrix = Vec<Vec<Rational>>;

/// Solves `a x = b` for square `a`. Returns `None` when `a` is singular.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|k| if k == i { Rational::one() } else { Rational::zero() })
            .collect();
        cols.push(solve(a, &e)?);
    }
    Some((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[col][col];
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    det
}

/// Symmetric positive-definite Gram matrix defining the inner product on a
/// coordinate space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramContext {
    pub labels: Vec<String>,
    #[serde(with = "serde_matrix")]
    gram: Matrix,
    #[serde(with = "serde_matrix")]
    inverse: Matrix,
}

impl GramContext {
    pub fn new(labels: Vec<String>, gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if labels.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::CaseData("gram matrix shape mismatch".into()));
        }
        for i in 0..n {
            for k in 0..i {
                if gram[i][k] != gram[k][i] {
                    return Err(Error::CaseData("gram matrix is not symmetric".into()));
                }
            }
        }
        for size in 1..=n {
            let minor: Matrix = gram[..size].iter().map(|r| r[..size].to_vec()).collect();
            if !determinant(&minor).is_positive() {
                return Err(Error::CaseData(format!(
                    "gram matrix leading minor of order {size} is not positive"
                )));
            }
        }
        let inverse = invert(&gram).expect("positive definite matrices are invertible");
        Ok(GramContext { labels, gram, inverse })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    fn check(&self, v: &RationalVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::Usage(format!(
                "vector has {} coordinates, basis has {}",
                v.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `uᵀ G v`.
    pub fn inner(&self, u: &RationalVector, v: &RationalVector) -> Result<Rational> {
        self.check(u)?;
        self.check(v)?;
        let mut acc = Rational::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let row: Rational = self.gram[i].iter().zip(&v.0).map(|(g, x)| g * x).sum();
            acc += ui * row;
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, v: &RationalVector) -> Result<Rational> {
        self.inner(v, v)
    }

    /// The covector `G v`, i.e. the linear form `u ↦ ⟨u, v⟩` in coordinates.
    pub fn lower(&self, v: &RationalVector) -> RationalVector {
        RationalVector(
            self.gram
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(g, x)| g * x).sum())
                .collect(),
        )
    }

    /// Reflection of `v` in the hyperplane orthogonal to `root`.
    pub fn reflect(&self, v: &RationalVector, root: &RationalVector) -> Result<RationalVector> {
        let c = self.coroot_pairing(v, root)?;
        Ok(v.add_scaled(&-c, root))
    }

    /// `⟨v, root^∨⟩ = 2⟨v, root⟩ / ⟨root, root⟩`.
    pub fn coroot_pairing(&self, v: &RationalVector, root: &RationalVector) -> Result<Rational> {
        let rr = self.norm_sq(root)?;
        Ok(q(2) * self.inner(v, root)? / rr)
    }

    /// Digest of the Gram matrix, used to key caches.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for row in &self.gram {
            for x in row {
                h.update(fmt_rational(x).as_bytes());
                h.update(b",");
            }
            h.update(b";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Serde adapter writing a rational as the string `p/q`.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).map_err(serde::de::Error::custom)
    }
}

/// Like [`serde_rational`] for `Option<Rational>` (`null` when absent).
pub mod serde_rational_opt {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(fmt_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let t = Option::<String>::deserialize(d)?;
        t.map(|t| parse_rational(&t).map_err(serde::de::Error::custom)).transpose()
    }
}

mod serde_matrix {
    use super::{fmt_rational, parse_rational, Matrix};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            m.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|x| parse_rational(x).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// A simplicial cone with generators `g_i` and a biorthogonal family of dual
/// generators `d_k` (`⟨g_i, d_k⟩ = 0` for `i ≠ k`, positive for `i = k`).
#[derive(Clone, Debug)]
pub struct ConeDescription {
    pub generators: Vec<RationalVector>,
    pub dual_generators: Vec<RationalVector>,
    pub context: GramContext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMode {
    Primal,
    Dual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeCoords {
    pub coeffs: Vec<Rational>,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub point: RationalVector,
    /// `‖η − P(η)‖²`.
    pub deficit: Rational,
    /// Indices of generators with strictly positive coefficient in `P(η)`.
    pub support: Vec<usize>,
    /// Coefficients of `P(η)` in the generators.
    pub coeffs: Vec<Rational>,
}

impl ConeDescription {
    pub fn new(
        generators: Vec<RationalVector>,
        dual_generators: Vec<RationalVector>,
        context: GramContext,
    ) -> Result<Self> {
        let l = generators.len();
        if dual_generators.len() != l || l != context.dim() {
            return Err(Error::CaseData("cone must have one generator per dimension".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            for (k, d) in dual_generators.iter().enumerate() {
                let p = context.inner(g, d)?;
                let ok = if i == k { p.is_positive() } else { p.is_zero() };
                if !ok {
                    return Err(Error::CaseData(format!(
                        "cone generators are not biorthogonal at ({i}, {k})"
                    )));
                }
            }
        }
        Ok(ConeDescription { generators, dual_generators, context })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Coefficients of `v` in the primal or dual generators, read off the
    /// biorthogonal family.
    pub fn coords(&self, v: &RationalVector, mode: ConeMode) -> Result<ConeCoords> {
        let (gens, other) = match mode {
            ConeMode::Primal => (&self.generators, &self.dual_generators),
            ConeMode::Dual => (&self.dual_generators, &self.generators),
        };
        let ctx = &self.context;
        let coeffs = gens
            .iter()
            .zip(other)
            .map(|(g, d)| Ok(ctx.inner(v, d)? / ctx.inner(g, d)?))
            .collect::<Result<Vec<_>>>()?;
        let member = coeffs.iter().all(|c| !c.is_negative());
        Ok(ConeCoords { coeffs, member })
    }

    /// `⟨η, g_i⟩` and the generator Gram matrix.
    fn pairings(&self, eta: &RationalVector) -> Result<(Vec<Rational>, Matrix)> {
        let ctx = &self.context;
        let pair: Vec<Rational> =
            self.generators.iter().map(|g| ctx.inner(eta, g)).collect::<Result<_>>()?;
        let gg: Matrix = self
            .generators
            .iter()
            .map(|a| self.generators.iter().map(|b| ctx.inner(a, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok((pair, gg))
    }

    /// Nearest point of the cone to `eta`.
    ///
    /// Solves the complementarity problem `w = G c − p`, `c, w ≥ 0`, `c·w = 0`
    /// by least-index principal pivoting, which terminates because the Gram
    /// matrix `G` is positive definite. `project_all_faces` is the slow
    /// reference for the same point.
    pub fn project(&self, eta: &RationalVector) -> Result<Projection> {
        let l = self.dim();
        let (pair, gg) = self.pairings(eta)?;
        let mut active = vec![false; l];
        // Each principal pivot set is visited at most once.
        for _ in 0..=(1usize << l) {
            let support: Vec<usize> = (0..l).filter(|&i| active[i]).collect();
            let mut coeffs = vec![Rational::zero(); l];
            if !support.is_empty() {
                let sub: Matrix = support
                    .iter()
                    .map(|&i| support.iter().map(|&k| gg[i][k].clone()).collect())
                    .collect();
                let rhs: Vec<Rational> = support.iter().map(|&i| pair[i].clone()).collect();
                let c = solve(&sub, &rhs)
                    .ok_or_else(|| Error::Internal("cone generators are dependent".into()))?;
                for (&i, x) in support.iter().zip(c) {
                    coeffs[i] = x;
                }
            }
            let violated = (0..l).find(|&i| {
                if active[i] {
                    coeffs[i].is_negative()
                } else {
                    let gc: Rational = support.iter().map(|&k| &gg[i][k] * &coeffs[k]).sum();
                    (gc - &pair[i]).is_negative()
                }
            });
            match violated {
                Some(i) => active[i] = !active[i],
                None => {
                    let support: Vec<usize> = (0..l).filter(|&i| coeffs[i].is_positive()).collect();
                    let mut point = RationalVector::zero(eta.dim());
                    for &i in &support {
                        point = point.add_scaled(&coeffs[i], &self.generators[i]);
                    }
                    let p_sq: Rational = support.iter().map(|&i| &coeffs[i] * &pair[i]).sum();
                    let deficit = self.context.norm_sq(eta)? - p_sq;
                    return Ok(Projection { point, deficit, support, coeffs });
                }
            }
        }
        Err(Error::Internal(format!("cone projection did not terminate for {eta}")))
    }

    /// Nearest point of the cone found by checking every face: the accepted
    /// face has strictly positive coefficients and a residual with
    /// non-positive pairing against every generator. Exactly one face passes.
    pub fn project_by_faces(&self, eta: &RationalVector) -> Result<Projection> {
        let mut found = self.project_all_faces(eta)?;
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            n => Err(Error::Internal(format!(
                "cone projection accepted {n} faces for {eta}"
            ))),
        }
    }

    /// Every face that passes the projection acceptance test (normally one).
    pub fn project_all_faces(&self, eta: &RationalVector) -> Result<Vec<Projection>> {
        let l = self.dim();
        let (pair, gg) = self.pairings(eta)?;
        let eta_sq = self.context.norm_sq(eta)?;
        let mut out = Vec::new();
        for mask in 0u32..(1 << l) {
            let support: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
            let coeffs_s = if support.is_empty() {
                Vec::new()
            } else {
                let sub: Matrix = support
                    .iter()
                    .map(|&i| support.iter().map(|&k| gg[i][k].clone()).collect())
                    .collect();
                let rhs: Vec<Rational> = support.iter().map(|&i| pair[i].clone()).collect();
                match solve(&sub, &rhs) {
                    Some(c) => c,
                    None => continue,
                }
            };
            if coeffs_s.iter().any(|c| !c.is_positive()) {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); l];
            for (&i, c) in support.iter().zip(&coeffs_s) {
                coeffs[i] = c.clone();
            }
            // ⟨η − P, g_k⟩ = pair_k − Σ c_i ⟨g_i, g_k⟩
            let residual_ok = (0..l).all(|k| {
                let pg: Rational = support.iter().map(|&i| &coeffs[i] * &gg[i][k]).sum();
                !(&pair[k] - pg).is_positive()
            });
            if !residual_ok {
                continue;
            }
            let mut point = RationalVector::zero(l);
            for &i in &support {
                point = point.add_scaled(&coeffs[i], &self.generators[i]);
            }
            let p_sq: Rational = support.iter().map(|&i| &coeffs[i] * &pair[i]).sum();
            out.push(Projection { point, deficit: &eta_sq - p_sq, support, coeffs });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2(g: [[i64; 2]; 2]) -> GramContext {
        GramContext::new(
            vec!["a".into(), "b".into()],
            g.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn inner_of_zero_vanishes() {
        let ctx = ctx2([[2, 3], [3, 6]]);
        let v = RationalVector::from_ints(&[5, -7]);
        assert_eq!(ctx.inner(&RationalVector::zero(2), &v).unwrap(), q(0));
    }

    #[test]
    fn dimension_mismatch_is_a_usage_error() {
        let ctx = ctx2([[2, 3], [3, 6]]);
        let err = ctx.inner(&RationalVector::zero(3), &RationalVector::zero(2));
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn indefinite_gram_is_rejected() {
        let g = vec![vec![q(1), q(2)], vec![q(2), q(1)]];
        assert!(GramContext::new(vec!["a".into(), "b".into()], g).is_err());
    }

    #[test]
    fn solve_and_invert_agree() {
        let a = vec![vec![q(2), q(-1)], vec![q(-3), q(2)]];
        let inv = invert(&a).unwrap();
        assert_eq!(inv, vec![vec![q(2), q(1)], vec![q(3), q(2)]]);
        assert_eq!(determinant(&a), q(1));
        let x = solve(&a, &[q(1), q(0)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        assert!(solve(&vec![vec![q(1), q(2)], vec![q(2), q(4)]], &[q(1), q(1)]).is_none());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "51/8", "-723/2"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    // Weyl chamber of G2 in fundamental-weight coordinates.
    fn g2_cone() -> ConeDescription {
        let ctx = ctx2([[2, 3], [3, 6]]);
        ConeDescription::new(
            vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])],
            vec![RationalVector::from_ints(&[2, -1]), RationalVector::from_ints(&[-3, 2])],
            ctx,
        )
        .unwrap()
    }

    #[test]
    fn generator_has_unit_coordinates() {
        let cone = g2_cone();
        let c = cone.coords(&cone.generators[0].clone(), ConeMode::Primal).unwrap();
        assert_eq!(c.coeffs, vec![q(1), q(0)]);
        assert!(c.member);
    }

    #[test]
    fn projection_of_interior_point_is_itself() {
        let cone = g2_cone();
        let eta = RationalVector::from_ints(&[3, 1]);
        let p = cone.project(&eta).unwrap();
        assert_eq!(p.point, eta);
        assert_eq!(p.deficit, q(0));
    }

    #[test]
    fn projection_of_polar_point_is_origin() {
        let cone = g2_cone();
        // -zeta_1 pairs negatively with both generators.
        let eta = RationalVector::from_ints(&[-1, 0]);
        let p = cone.project(&eta).unwrap();
        assert_eq!(p.point, RationalVector::zero(2));
        assert_eq!(p.deficit, cone.context.norm_sq(&eta).unwrap());
        assert!(p.support.is_empty());
    }

    #[test]
    fn non_biorthogonal_cone_is_rejected() {
        let ctx = ctx2([[2, 3], [3, 6]]);
        let r = ConeDescription::new(
            vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])],
            vec![RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])],
            ctx,
        );
        assert!(r.is_err());
    }

    #[test]
    fn pivoting_matches_face_search() {
        let cone = g2_cone();
        for a in -6..=6 {
            for b in -6..=6 {
                let eta = RationalVector(vec![qf(a, 2), qf(b, 3)]);
                assert_eq!(cone.project(&eta).unwrap(), cone.project_by_faces(&eta).unwrap(), "{eta}");
            }
        }
    }

    #[test]
    fn coords_match_linear_solve() {
        let cone = g2_cone();
        let v = RationalVector(vec![qf(7, 3), qf(-5, 2)]);
        let a: Matrix = (0..2).map(|r| cone.generators.iter().map(|g| g.0[r].clone()).collect()).collect();
        assert_eq!(cone.coords(&v, ConeMode::Primal).unwrap().coeffs, solve(&a, &v.0).unwrap());
        let d: Matrix = (0..2).map(|r| cone.dual_generators.iter().map(|g| g.0[r].clone()).collect()).collect();
        assert_eq!(cone.coords(&v, ConeMode::Dual).unwrap().coeffs, solve(&d, &v.0).unwrap());
    }
}
