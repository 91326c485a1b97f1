//! The seventeen cases: root data, compact simple roots, the K-type lattice,
//! and every derived vector the pipeline needs, expressed in the basis of
//! 𝔨-fundamental weights (plus a central direction for Hermitian cases).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{invert, q, qf, GramContext, Matrix, Rational, RationalVector};
use crate::roots::{build_root_system, weyl_group_order, AmbientRootSystem, ReflectionSystem, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    G2C,
    F4C,
    E6C,
    E7C,
    E8C,
    G2S,
    FI,
    FII,
    EI,
    EII,
    EIV,
    EV,
    EVI,
    EVIII,
    EIX,
    E6H,
    E7H,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 17] = [
        CaseLabel::G2C,
        CaseLabel::F4C,
        CaseLabel::E6C,
        CaseLabel::E7C,
        CaseLabel::E8C,
        CaseLabel::G2S,
        CaseLabel::FI,
        CaseLabel::FII,
        CaseLabel::EI,
        CaseLabel::EII,
        CaseLabel::EIV,
        CaseLabel::EV,
        CaseLabel::EVI,
        CaseLabel::EVIII,
        CaseLabel::EIX,
        CaseLabel::E6H,
        CaseLabel::E7H,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::G2C => "G2C",
            CaseLabel::F4C => "F4C",
            CaseLabel::E6C => "E6C",
            CaseLabel::E7C => "E7C",
            CaseLabel::E8C => "E8C",
            CaseLabel::G2S => "G2S",
            CaseLabel::FI => "FI",
            CaseLabel::FII => "FII",
            CaseLabel::EI => "EI",
            CaseLabel::EII => "EII",
            CaseLabel::EIV => "EIV",
            CaseLabel::EV => "EV",
            CaseLabel::EVI => "EVI",
            CaseLabel::EVIII => "EVIII",
            CaseLabel::EIX => "EIX",
            CaseLabel::E6H => "E6H",
            CaseLabel::E7H => "E7H",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CaseLabel::G2C => "complex G2",
            CaseLabel::F4C => "complex F4",
            CaseLabel::E6C => "complex E6",
            CaseLabel::E7C => "complex E7",
            CaseLabel::E8C => "complex E8",
            CaseLabel::G2S => "G2(2)",
            CaseLabel::FI => "F4(4)",
            CaseLabel::FII => "F4(-20)",
            CaseLabel::EI => "E6(6)",
            CaseLabel::EII => "E6(2)",
            CaseLabel::EIV => "E6(-26)",
            CaseLabel::EV => "E7(7)",
            CaseLabel::EVI => "E7(-5)",
            CaseLabel::EVIII => "E8(8)",
            CaseLabel::EIX => "E8(-24)",
            CaseLabel::E6H => "E6(-14), center Z/3",
            CaseLabel::E7H => "E7(-25), center Z/2",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown case {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseClass {
    Complex,
    Real,
    Hermitian,
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseClass::Complex => "complex",
            CaseClass::Real => "real",
            CaseClass::Hermitian => "hermitian",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Quick,
    Standard,
    Full,
}

impl Tier {
    pub fn cases(self) -> Vec<CaseLabel> {
        use CaseLabel::*;
        let quick = [G2C, G2S, FII, FI, EIV];
        let standard = [F4C, EI, EII, E6C, E6H];
        match self {
            Tier::Quick => quick.to_vec(),
            Tier::Standard => quick.iter().chain(&standard).copied().collect(),
            Tier::Full => CaseLabel::ALL.to_vec(),
        }
    }
}

impl FromStr for Tier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Tier::Quick),
            "standard" => Ok(Tier::Standard),
            "full" => Ok(Tier::Full),
            _ => Err(Error::Usage(format!("unknown tier {s:?}"))),
        }
    }
}

/// Which weights count as highest weights of K-types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeRule {
    /// Every integral combination of the basis (dominance checked separately).
    Integral,
    /// Integral coordinates and `Σ c_i x_i ∈ Z`.
    Congruence(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct RestrictedRoot {
    /// Coefficients in the restricted simple roots.
    pub coeffs: Vec<i64>,
    pub vector: RationalVector,
    pub mult: u32,
    pub mult_k: u32,
    pub mult_p: u32,
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub label: CaseLabel,
    pub class: CaseClass,
    pub ambient: AmbientRootSystem,
    /// Dimension of 𝔱_f.
    pub rank: usize,
    /// Dimension of 𝔞_f.
    pub l0: usize,
    /// Gram matrix of the working basis ϖ_1, …, (ζ/k).
    pub context: GramContext,
    /// Working basis in ambient coordinates.
    pub basis_ambient: Vec<RationalVector>,
    /// Restricted simple roots α_i, working coordinates.
    pub alpha: Vec<RationalVector>,
    /// Restricted fundamental weights ζ_i, working coordinates.
    pub zeta: Vec<RationalVector>,
    pub restricted_roots: Vec<RestrictedRoot>,
    /// Compact simple roots γ_i, working coordinates.
    pub gamma: Vec<RationalVector>,
    /// Compact simple roots as restricted-root coefficient vectors.
    pub gamma_coeffs: Vec<Vec<i64>>,
    /// `k_cartan[i][k] = ⟨γ_i, γ_k^∨⟩`.
    pub k_cartan: Vec<Vec<i64>>,
    pub rho_c: RationalVector,
    pub rho_g: RationalVector,
    pub beta: Option<RationalVector>,
    pub lattice: LatticeRule,
    pub g_system: ReflectionSystem,
    pub k_system: ReflectionSystem,
}

struct CaseDef {
    class: CaseClass,
    root: RootType,
    /// Ambient simple index → restricted simple index (E6 diagram folding).
    fold: Option<[usize; 6]>,
    gamma: Vec<Vec<i64>>,
    /// `(painted index, k)`: the last basis vector is `ζ_painted / k`.
    center: Option<(usize, i64)>,
    congruence: Option<Vec<(i64, i64)>>,
    beta: Option<Vec<i64>>,
    l0: usize,
}

fn units(idx: &[usize], n: usize) -> Vec<Vec<i64>> {
    idx.iter()
        .map(|&i| {
            let mut v = vec![0; n];
            v[i - 1] = 1;
            v
        })
        .collect()
}

fn with(mut v: Vec<Vec<i64>>, extra: Vec<i64>, at: usize) -> Vec<Vec<i64>> {
    v.insert(at, extra);
    v
}

const E6_FOLD: [usize; 6] = [0, 3, 1, 2, 1, 0];

fn definition(label: CaseLabel) -> CaseDef {
    use CaseLabel::*;
    let complex = |root: RootType| {
        let n = root.rank();
        CaseDef {
            class: CaseClass::Complex,
            root,
            fold: None,
            gamma: units(&(1..=n).collect::<Vec<_>>(), n),
            center: None,
            congruence: None,
            beta: None,
            l0: n,
        }
    };
    let real = |root: RootType, gamma: Vec<Vec<i64>>, beta: Vec<i64>| CaseDef {
        class: CaseClass::Real,
        root,
        fold: None,
        gamma,
        center: None,
        congruence: None,
        beta: Some(beta),
        l0: 0,
    };
    match label {
        G2C => complex(RootType::G2),
        F4C => complex(RootType::F4),
        E6C => complex(RootType::E6),
        E7C => complex(RootType::E7),
        E8C => complex(RootType::E8),
        G2S => real(RootType::G2, vec![vec![1, 0], vec![3, 2]], vec![3, 1]),
        FI => real(
            RootType::F4,
            with(units(&[1, 2, 3], 4), vec![2, 4, 3, 2], 3),
            vec![0, 0, 1, 1],
        ),
        FII => real(
            RootType::F4,
            with(units(&[4, 3, 2], 4), vec![2, 2, 1, 0], 0),
            vec![0, 0, 0, 1],
        ),
        EI => CaseDef {
            fold: Some(E6_FOLD),
            l0: 2,
            ..real(RootType::E6, with(units(&[1, 2, 3], 4), vec![0, 1, 1, 1], 0), vec![0, 0, 0, 1])
        },
        EIV => CaseDef {
            fold: Some(E6_FOLD),
            l0: 2,
            ..real(RootType::E6, units(&[1, 2, 3, 4], 4), vec![1, 0, 0, 0])
        },
        EII => real(
            RootType::E6,
            with(units(&[6, 5, 4, 3, 1], 6), vec![1, 2, 2, 3, 2, 1], 5),
            vec![0, 0, 1, 0, 0, 1],
        ),
        EV => real(
            RootType::E7,
            with(units(&[1, 3, 4, 5, 6, 7], 7), vec![1, 2, 2, 3, 2, 1, 0], 6),
            vec![0, 0, 0, 1, 0, 0, 0],
        ),
        EVI => real(
            RootType::E7,
            with(units(&[7, 6, 5, 4, 2, 3], 7), vec![2, 2, 3, 4, 3, 2, 1], 6),
            vec![0, 0, 0, 0, 0, 1, 1],
        ),
        EVIII => real(
            RootType::E8,
            with(units(&[8, 7, 6, 5, 4, 2, 3], 8), vec![2, 2, 3, 4, 3, 2, 1, 0], 0),
            vec![0, 0, 0, 0, 0, 0, 1, 0],
        ),
        EIX => real(
            RootType::E8,
            with(units(&[1, 2, 3, 4, 5, 6, 7], 8), vec![2, 3, 4, 6, 5, 4, 3, 2], 7),
            vec![0, 0, 0, 0, 0, 0, 1, 1],
        ),
        E6H => CaseDef {
            class: CaseClass::Hermitian,
            root: RootType::E6,
            fold: None,
            gamma: units(&[2, 5, 4, 3, 1], 6),
            center: Some((5, 4)),
            congruence: Some(vec![(-3, 4), (-5, 4), (-3, 2), (-1, 1), (-1, 2), (1, 4)]),
            beta: None,
            l0: 0,
        },
        E7H => CaseDef {
            class: CaseClass::Hermitian,
            root: RootType::E7,
            fold: None,
            gamma: units(&[1, 2, 3, 4, 5, 6], 7),
            center: Some((6, 3)),
            congruence: Some(vec![
                (-2, 3),
                (-1, 1),
                (-4, 3),
                (-2, 1),
                (-5, 3),
                (-4, 3),
                (1, 3),
            ]),
            beta: None,
            l0: 0,
        },
    }
}

fn combine(coeffs: &[i64], vecs: &[RationalVector]) -> RationalVector {
    coeffs
        .iter()
        .zip(vecs)
        .fold(RationalVector::zero(vecs[0].dim()), |acc, (c, v)| acc.add_scaled(&q(*c), v))
}

fn to_int(r: &Rational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::CaseData(format!("{what}: expected an integer, got {r}")));
    }
    i64::try_from(r.to_integer()).map_err(|_| Error::CaseData(format!("{what}: overflow")))
}

fn cartan_of(vs: &[RationalVector]) -> Result<Vec<Vec<i64>>> {
    vs.iter()
        .map(|a| vs.iter().map(|b| to_int(&(q(2) * a.dot(b) / b.dot(b)), "Cartan entry")).collect())
        .collect()
}

fn rational_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn load_case(label: CaseLabel) -> Result<CaseSpec> {
    let def = definition(label);
    let ambient = build_root_system(&def.root.to_string())?;
    let n_amb = ambient.rank;

    // Restriction to 𝔱_f on simple-root coefficients.
    let fold: Vec<usize> = match def.fold {
        Some(f) => f.to_vec(),
        None => (0..n_amb).collect(),
    };
    let l = fold.iter().max().unwrap() + 1;
    let alpha_amb: Vec<RationalVector> = (0..l)
        .map(|i| {
            let preimages: Vec<&RationalVector> = (0..n_amb)
                .filter(|&k| fold[k] == i)
                .map(|k| &ambient.simple_roots[k])
                .collect();
            let n = preimages.len() as i64;
            preimages
                .iter()
                .fold(RationalVector::zero(ambient.ambient_dim), |acc, v| &acc + v)
                .scale(&qf(1, n))
        })
        .collect();
    let mult_factor = if def.class == CaseClass::Complex { 2 } else { 1 };
    let mut grouped: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
    for r in &ambient.positive_roots {
        let mut c = vec![0i64; l];
        for (k, &x) in r.coeffs.iter().enumerate() {
            c[fold[k]] += x;
        }
        *grouped.entry(c).or_default() += mult_factor;
    }

    let g_cartan = cartan_of(&alpha_amb)?;

    // Compact simple roots and the working basis.
    let gamma_amb: Vec<RationalVector> = def.gamma.iter().map(|c| combine(c, &alpha_amb)).collect();
    let k_cartan = cartan_of(&gamma_amb)?;
    let kc_inv = invert(&rational_matrix(&k_cartan))
        .ok_or_else(|| Error::CaseData(format!("{label}: dependent compact simple roots")))?;
    let mut basis_amb: Vec<RationalVector> = kc_inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(&gamma_amb)
                .fold(RationalVector::zero(ambient.ambient_dim), |acc, (c, g)| acc.add_scaled(c, g))
        })
        .collect();
    let mut labels: Vec<String> = (1..=basis_amb.len()).map(|i| format!("w{i}")).collect();
    if let Some((painted, k)) = def.center {
        basis_amb.push(ambient.fundamental_weights[painted].scale(&qf(1, k)));
        labels.push(format!("z/{k}"));
    }
    if basis_amb.len() != l {
        return Err(Error::CaseData(format!("{label}: basis has wrong dimension")));
    }
    let gram: Matrix = basis_amb
        .iter()
        .map(|a| basis_amb.iter().map(|b| a.dot(b)).collect())
        .collect();
    let context = GramContext::new(labels, gram)?;

    let to_basis = |v: &RationalVector| -> Result<RationalVector> {
        let pair: Vec<Rational> = basis_amb.iter().map(|b| b.dot(v)).collect();
        let x: Vec<Rational> = context
            .inverse()
            .iter()
            .map(|row| row.iter().zip(&pair).map(|(a, b)| a * b).sum())
            .collect();
        let back = combine_rational(&x, &basis_amb);
        if &back != v {
            return Err(Error::CaseData(format!("{label}: vector {v} is outside 𝔱_f")));
        }
        Ok(RationalVector(x))
    };

    let alpha: Vec<RationalVector> = alpha_amb.iter().map(&to_basis).collect::<Result<_>>()?;
    let gamma: Vec<RationalVector> = gamma_amb.iter().map(&to_basis).collect::<Result<_>>()?;
    let gc_inv = invert(&rational_matrix(&g_cartan))
        .ok_or_else(|| Error::CaseData(format!("{label}: singular restricted Cartan matrix")))?;
    let zeta: Vec<RationalVector> = gc_inv.iter().map(|row| combine_rational(row, &alpha)).collect();

    let g_system = ReflectionSystem::new(alpha.clone(), context.clone())?;
    let k_system = ReflectionSystem::new(gamma.clone(), context.clone())?;

    let k_positive: HashSet<RationalVector> = k_system.positive_roots().into_iter().collect();
    let mut restricted_roots = Vec::with_capacity(grouped.len());
    let mut k_hits = 0usize;
    for (coeffs, mult) in grouped {
        let vector = combine(&coeffs, &alpha);
        let mult_k = u32::from(k_positive.contains(&vector));
        k_hits += mult_k as usize;
        restricted_roots.push(RestrictedRoot { coeffs, vector, mult, mult_k, mult_p: mult - mult_k });
    }
    if k_hits != k_positive.len() {
        return Err(Error::CaseData(format!(
            "{label}: compact roots are not all restricted positive roots"
        )));
    }
    let half = qf(1, 2);
    let rho_c = k_positive
        .iter()
        .fold(RationalVector::zero(l), |acc, r| &acc + r)
        .scale(&half);
    let rho_g = restricted_roots
        .iter()
        .fold(RationalVector::zero(l), |acc, r| acc.add_scaled(&q(r.mult as i64), &r.vector))
        .scale(&half);

    let n_semisimple = gamma.len();
    let expected_rho_c =
        RationalVector((0..l).map(|i| if i < n_semisimple { q(1) } else { q(0) }).collect());
    if rho_c != expected_rho_c {
        return Err(Error::CaseData(format!("{label}: ρ_c is not the sum of the ϖ_i")));
    }

    let beta = if def.class == CaseClass::Hermitian {
        None
    } else {
        let b = highest_p_weight(&restricted_roots, &k_system, &context)?;
        let expected = match &def.beta {
            Some(e) => RationalVector::from_ints(e),
            None => to_basis(&ambient.highest_root.vector)?,
        };
        if b != expected {
            return Err(Error::CaseData(format!(
                "{label}: highest weight of 𝔭 is {b}, expected {expected}"
            )));
        }
        Some(b)
    };

    let lattice = match (&def.congruence, def.center) {
        (Some(c), Some((painted, _))) => {
            let coeffs: Vec<Rational> = c.iter().map(|&(n, d)| qf(n, d)).collect();
            // The congruence must be the pairing with the painted coroot.
            let coroot = &ambient.simple_coroots[painted];
            let derived: Vec<Rational> = basis_amb.iter().map(|b| b.dot(coroot)).collect();
            if derived != coeffs {
                return Err(Error::CaseData(format!(
                    "{label}: lattice congruence disagrees with the painted coroot pairing"
                )));
            }
            LatticeRule::Congruence(coeffs)
        }
        _ => LatticeRule::Integral,
    };

    Ok(CaseSpec {
        label,
        class: def.class,
        ambient,
        rank: l,
        l0: def.l0,
        context,
        basis_ambient: basis_amb,
        alpha,
        zeta,
        restricted_roots,
        gamma,
        gamma_coeffs: def.gamma,
        k_cartan,
        rho_c,
        rho_g,
        beta,
        lattice,
        g_system,
        k_system,
    })
}

fn combine_rational(coeffs: &[Rational], vecs: &[RationalVector]) -> RationalVector {
    coeffs
        .iter()
        .zip(vecs)
        .fold(RationalVector::zero(vecs[0].dim()), |acc, (c, v)| acc.add_scaled(c, v))
}

/// The 𝔨-dominant weight of 𝔭 with the largest norm.
fn highest_p_weight(
    roots: &[RestrictedRoot],
    k_system: &ReflectionSystem,
    ctx: &GramContext,
) -> Result<RationalVector> {
    let mut best: Option<(Rational, RationalVector)> = None;
    let mut tie = false;
    for r in roots.iter().filter(|r| r.mult_p > 0) {
        for v in [r.vector.clone(), -&r.vector] {
            if !k_system.is_dominant(&v) {
                continue;
            }
            let n = ctx.norm_sq(&v)?;
            match &best {
                Some((bn, _)) if *bn > n => {}
                Some((bn, _)) if *bn == n => tie = true,
                _ => {
                    best = Some((n, v));
                    tie = false;
                }
            }
        }
    }
    match best {
        Some((_, v)) if !tie => Ok(v),
        _ => Err(Error::CaseData("𝔭 has no unique highest weight".into())),
    }
}

impl CaseSpec {
    pub fn rho_g_sq(&self) -> Rational {
        self.context.norm_sq(&self.rho_g).expect("basis dimension")
    }

    /// Number of semisimple coordinates (all of them unless Hermitian).
    pub fn semisimple_rank(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_hermitian(&self) -> bool {
        self.class == CaseClass::Hermitian
    }

    pub fn weyl_order_g(&self) -> u128 {
        weyl_group_order(&self.g_system.cartan)
    }

    pub fn weyl_order_k(&self) -> u128 {
        weyl_group_order(&self.k_cartan)
    }

    /// `|W(𝔤,𝔱_f)| / |W(𝔨,𝔱_f)|`.
    pub fn kostant_ratio(&self) -> u128 {
        self.weyl_order_g() / self.weyl_order_k()
    }

    /// Multiplicity of the spin module components, `2^[l0/2]`.
    pub fn spin_multiplicity(&self) -> u64 {
        1 << (self.l0 / 2)
    }

    /// Lattice rule only; dominance is separate.
    pub fn lattice_member(&self, weight: &RationalVector) -> bool {
        if weight.dim() != self.rank || weight.0.iter().any(|x| !x.is_integer()) {
            return false;
        }
        match &self.lattice {
            LatticeRule::Integral => true,
            LatticeRule::Congruence(c) => {
                let s: Rational = c.iter().zip(&weight.0).map(|(a, b)| a * b).sum();
                s.is_integer()
            }
        }
    }

    pub fn is_k_dominant(&self, weight: &RationalVector) -> bool {
        weight.0[..self.semisimple_rank()].iter().all(|x| !x.is_negative())
    }

    pub fn is_k_type(&self, weight: &RationalVector) -> bool {
        self.is_k_dominant(weight) && self.lattice_member(weight)
    }

    /// Parses a weight in working coordinates and checks the dimension.
    pub fn weight(&self, coords: &[i64]) -> Result<RationalVector> {
        if coords.len() != self.rank {
            return Err(Error::Usage(format!(
                "{} expects {} coordinates, got {}",
                self.label,
                self.rank,
                coords.len()
            )));
        }
        Ok(RationalVector::from_ints(coords))
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.restricted_roots.iter().map(|r| r.mult).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(l: CaseLabel) -> CaseSpec {
        load_case(l).unwrap()
    }

    #[test]
    fn every_case_loads() {
        for l in CaseLabel::ALL {
            load_case(l).unwrap_or_else(|e| panic!("{l}: {e}"));
        }
    }

    #[test]
    fn labels_round_trip() {
        for l in CaseLabel::ALL {
            assert_eq!(l.as_str().parse::<CaseLabel>().unwrap(), l);
        }
        assert!("EIII".parse::<CaseLabel>().is_err());
    }

    #[test]
    fn rho_g_norms() {
        use CaseLabel::*;
        let expected = [
            (G2C, qf(56, 1)),
            (F4C, qf(156, 1)),
            (E6C, qf(312, 1)),
            (E7C, qf(798, 1)),
            (E8C, qf(2480, 1)),
            (G2S, qf(14, 1)),
            (FI, qf(39, 1)),
            (FII, qf(39, 1)),
            (EI, qf(78, 1)),
            (EII, qf(78, 1)),
            (EIV, qf(78, 1)),
            (EV, qf(399, 2)),
            (EVI, qf(399, 2)),
            (EVIII, qf(620, 1)),
            (EIX, qf(620, 1)),
            (E6H, qf(78, 1)),
            (E7H, qf(399, 2)),
        ];
        for (l, v) in expected {
            assert_eq!(case(l).rho_g_sq(), v, "{l}");
        }
    }

    #[test]
    fn kostant_ratios() {
        use CaseLabel::*;
        let expected = [
            (G2C, 1),
            (F4C, 1),
            (E6C, 1),
            (E7C, 1),
            (E8C, 1),
            (G2S, 3),
            (FI, 12),
            (FII, 3),
            (EI, 3),
            (EII, 36),
            (EIV, 1),
            (EV, 72),
            (EVI, 63),
            (EVIII, 135),
            (EIX, 120),
            (E6H, 27),
            (E7H, 56),
        ];
        for (l, s) in expected {
            assert_eq!(case(l).kostant_ratio(), s, "{l}");
        }
    }

    #[test]
    fn multiplicity_bookkeeping() {
        assert_eq!(case(CaseLabel::EI).total_multiplicity(), 36);
        assert_eq!(case(CaseLabel::EI).restricted_roots.len(), 24);
        assert_eq!(case(CaseLabel::EIV).total_multiplicity(), 36);
        assert_eq!(case(CaseLabel::E8C).total_multiplicity(), 240);
        assert_eq!(case(CaseLabel::FI).total_multiplicity(), 24);
        for r in &case(CaseLabel::EI).restricted_roots {
            let short = case(CaseLabel::EI).context.norm_sq(&r.vector).unwrap();
            assert_eq!(r.mult, if short == q(1) { 2 } else { 1 }, "{:?}", r.coeffs);
        }
    }

    #[test]
    fn folded_rho_is_restriction_of_ambient_rho() {
        for l in [CaseLabel::EI, CaseLabel::EIV] {
            let c = case(l);
            let rho = c.ambient.rho();
            let back = c
                .rho_g
                .0
                .iter()
                .zip(&c.basis_ambient)
                .fold(RationalVector::zero(8), |acc, (x, b)| acc.add_scaled(x, b));
            assert_eq!(back, rho, "{l}");
        }
    }

    #[test]
    fn g2_split_data() {
        let c = case(CaseLabel::G2S);
        assert_eq!(c.beta, Some(RationalVector::from_ints(&[3, 1])));
        assert_eq!(c.zeta[0], RationalVector::from_ints(&[1, 1]));
        assert_eq!(c.zeta[1], RationalVector::from_ints(&[0, 2]));
    }

    #[test]
    fn fii_first_compact_root_is_e1_minus_e2() {
        let c = case(CaseLabel::FII);
        let g1 = c.gamma[0]
            .0
            .iter()
            .zip(&c.basis_ambient)
            .fold(RationalVector::zero(4), |acc, (x, b)| acc.add_scaled(x, b));
        assert_eq!(g1, RationalVector::from_ints(&[1, -1, 0, 0]));
    }

    #[test]
    fn beta_is_highest_root_for_complex_cases() {
        let c = case(CaseLabel::G2C);
        assert_eq!(c.beta, Some(RationalVector::from_ints(&[0, 1])));
        let e8 = case(CaseLabel::E8C);
        assert_eq!(e8.beta, Some(RationalVector::from_ints(&[0, 0, 0, 0, 0, 0, 0, 1])));
    }

    #[test]
    fn hermitian_lattice() {
        let c = case(CaseLabel::E6H);
        for f in -8..=8 {
            let w = c.weight(&[0, 0, 0, 0, 0, f]).unwrap();
            assert_eq!(c.lattice_member(&w), f % 4 == 0, "f = {f}");
        }
        assert!(c.lattice_member(&c.weight(&[0, 0, 0, 0, 1, 2]).unwrap()));
        let c7 = case(CaseLabel::E7H);
        assert!(c7.lattice_member(&c7.weight(&[0, 0, 0, 0, 0, 0, 3]).unwrap()));
        assert!(!c7.lattice_member(&c7.weight(&[0, 0, 0, 0, 0, 0, 1]).unwrap()));
        let real = case(CaseLabel::FI);
        assert!(real.lattice_member(&real.weight(&[1, 2, 3, 4]).unwrap()));
    }

    #[test]
    fn tiers_nest() {
        assert_eq!(Tier::Quick.cases().len(), 5);
        assert_eq!(Tier::Standard.cases().len(), 10);
        assert_eq!(Tier::Full.cases().len(), 17);
    }
}
