//! Positive systems of the restricted roots that contain Δ⁺(𝔨), found by
//! wall crossing from the standard one.

use std::collections::HashSet;

use serde::Serialize;

use crate::cases::CaseSpec;
use crate::error::{Error, Result};
use crate::exact::{ConeDescription, ConeMode, RationalVector};
use crate::roots::WeylWord;

#[derive(Clone, Debug)]
pub struct Chamber {
    pub index: usize,
    pub word: WeylWord,
    /// `ρ^(j) = w^(j) ρ^(0)`.
    pub rho: RationalVector,
    /// `ρ_n^(j) = ρ^(j) − ρ_c`.
    pub rho_n: RationalVector,
    /// `w^(j) ζ_i`.
    pub generators: Vec<RationalVector>,
    /// `w^(j) α_i`.
    pub dual_generators: Vec<RationalVector>,
    pub cone: ConeDescription,
}

#[derive(Clone, Debug)]
pub struct ChamberFamily {
    pub chambers: Vec<Chamber>,
}

/// One row of the chamber listing.
#[derive(Clone, Debug, Serialize)]
pub struct ChamberRow {
    pub j: usize,
    pub word: String,
    pub rho_n: Vec<String>,
}

pub fn enumerate_chambers(case: &CaseSpec) -> Result<ChamberFamily> {
    let g = &case.g_system;
    let rho0 = case.rho_g.clone();
    let mut words = vec![WeylWord::identity()];
    let mut images = vec![rho0.clone()];
    let mut seen: HashSet<RationalVector> = HashSet::from([rho0.clone()]);
    let mut head = 0;
    while head < words.len() {
        for i in 0..case.rank {
            let w = words[head].then(i);
            let img = g.apply(&w, &rho0);
            if case.k_system.is_dominant(&img) && seen.insert(img.clone()) {
                words.push(w);
                images.push(img);
            }
        }
        head += 1;
    }
    let expected = case.kostant_ratio();
    if words.len() as u128 != expected {
        return Err(Error::Internal(format!(
            "{}: found {} chambers, Weyl group orders give {expected}",
            case.label,
            words.len()
        )));
    }

    let chambers = words
        .into_iter()
        .zip(images)
        .enumerate()
        .map(|(index, (word, rho))| {
            let generators: Vec<RationalVector> = case.zeta.iter().map(|z| g.apply(&word, z)).collect();
            let dual_generators: Vec<RationalVector> =
                case.alpha.iter().map(|a| g.apply(&word, a)).collect();
            let cone =
                ConeDescription::new(generators.clone(), dual_generators.clone(), case.context.clone())?;
            let rho_n = &rho - &case.rho_c;
            Ok(Chamber { index, word, rho, rho_n, generators, dual_generators, cone })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChamberFamily { chambers })
}

impl ChamberFamily {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    /// Chambers `j` with `μ + 2ρ_c ∈ C^(j)` (closed chambers).
    pub fn omega_membership(&self, case: &CaseSpec, mu: &RationalVector) -> Result<Vec<usize>> {
        if mu.dim() != case.rank {
            return Err(Error::Usage("weight has the wrong dimension".into()));
        }
        if !case.is_k_dominant(mu) {
            return Err(Error::Usage(format!("{mu} is not 𝔨-dominant")));
        }
        let shifted = mu.add_scaled(&crate::exact::q(2), &case.rho_c);
        let mut out = Vec::new();
        for c in &self.chambers {
            if c.cone.coords(&shifted, ConeMode::Primal)?.member {
                out.push(c.index);
            }
        }
        Ok(out)
    }

    pub fn find_by_rho_n(&self, rho_n: &RationalVector) -> Option<&Chamber> {
        self.chambers.iter().find(|c| &c.rho_n == rho_n)
    }

    pub fn rows(&self) -> Vec<ChamberRow> {
        self.chambers
            .iter()
            .map(|c| ChamberRow {
                j: c.index,
                word: c.word.to_string(),
                rho_n: c.rho_n.0.iter().map(crate::exact::fmt_rational).collect(),
            })
            .collect()
    }
}
