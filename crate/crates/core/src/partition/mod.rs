//! Partition functions `Z(g|k1,k2)`, their section-class components and
//! genus expansions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::exactring::TRat;
use crate::gluing::{trace_formula, trace_formula_with, PowerCache};
use crate::parse::parse_trat;
use crate::phicalc::{to_useries, PhiElem};
use crate::{Error, Result};

/// Genus of the base curve and the two levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceParams {
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
}

impl SpaceParams {
    pub fn new(g: u32, k1: i64, k2: i64) -> Self {
        SpaceParams { g, k1, k2 }
    }

    /// `2g - 2 - k1 - k2`, the t-degree of the class `beta0`.
    pub fn base_degree(&self) -> i64 {
        2 * self.g as i64 - 2 - self.k1 - self.k2
    }

    /// The same space with the levels exchanged.
    pub fn swapped(&self) -> Self {
        SpaceParams { g: self.g, k1: self.k2, k2: self.k1 }
    }
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, k1={}, k2={})", self.g, self.k1, self.k2)
    }
}

/// The section class `beta0 + n f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectionClassIndex {
    pub n: i64,
}

impl SectionClassIndex {
    pub fn new(n: i64) -> Self {
        SectionClassIndex { n }
    }
}

/// Virtual dimension `D = -K_X . beta = 3n - 2g + 2 + k1 + k2`.
pub fn virtual_dim(p: SpaceParams, c: SectionClassIndex) -> i64 {
    3 * c.n - p.base_degree()
}

/// The homogeneous t-degree carried by the class: `-D`.
pub fn class_degree(p: SpaceParams, c: SectionClassIndex) -> i64 {
    -virtual_dim(p, c)
}

/// One `phi^e` term in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiTerm {
    pub phi_exp: i32,
    pub num: String,
    pub den: String,
}

/// Terms in ascending `phi` order with canonical numerator/denominator text.
pub fn phi_terms(e: &PhiElem) -> Vec<PhiTerm> {
    e.terms().map(|(m, c)| PhiTerm { phi_exp: m, num: c.num().to_string(), den: c.den().to_string() }).collect()
}

/// Inverse of `phi_terms`.
pub fn from_phi_terms(terms: &[PhiTerm]) -> Result<PhiElem> {
    let mut out = PhiElem::zero();
    for t in terms {
        let num = parse_trat(&t.num)?;
        let den = parse_trat(&t.den)?;
        out.add_term(t.phi_exp, num.checked_div(&den)?);
    }
    Ok(out)
}

/// One memoized value in portable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoEntry {
    pub g: u32,
    pub k1: i64,
    pub k2: i64,
    pub terms: Vec<PhiTerm>,
}

/// Memoizing front end to the trace formula. Reads are concurrent; writes
/// are serialized, and racing writers store identical values.
#[derive(Default)]
pub struct PartitionEngine {
    memo: RwLock<HashMap<SpaceParams, PhiElem>>,
    powers: PowerCache,
}

impl PartitionEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// The full partition function `tr(G^(g-1) U1^k1 U2^k2)`.
    pub fn compute_z(&self, p: SpaceParams) -> Result<PhiElem> {
        if let Some(z) = self.memo.read().unwrap_or_else(|e| e.into_inner()).get(&p) {
            return Ok(z.clone());
        }
        let z =
            if p.g == 0 { trace_formula(0, p.k1, p.k2)? } else { trace_formula_with(&self.powers, p.g, p.k1, p.k2)? };
        self.memo.write().unwrap_or_else(|e| e.into_inner()).insert(p, z.clone());
        Ok(z)
    }

    /// The class `beta0 + n f` component: the homogeneous part of t-degree
    /// `2g - 2 - k1 - k2 - 3n` of every coefficient.
    pub fn class_component(&self, p: SpaceParams, c: SectionClassIndex) -> Result<PhiElem> {
        let z = self.compute_z(p)?;
        z.homogeneous_component(class_degree(p, c))
    }

    /// Every class with a nonzero component, from the exact homogeneous
    /// decomposition of `Z`.
    pub fn support(&self, p: SpaceParams) -> Result<Vec<SectionClassIndex>> {
        let z = self.compute_z(p)?;
        let mut degrees = BTreeSet::new();
        for (_, c) in z.terms() {
            degrees.extend(c.homogeneous_parts()?.into_keys());
        }
        let mut classes = Vec::new();
        for d in degrees.into_iter().rev() {
            let shift = p.base_degree() - d;
            if shift.rem_euclid(3) != 0 {
                return Err(Error::Inconsistent(format!("{p}: component of t-degree {d} matches no section class")));
            }
            classes.push(SectionClassIndex::new(shift / 3));
        }
        Ok(classes)
    }

    /// Genus-`h` invariants for `0 <= h <= h_max`: the coefficient of
    /// `u^(2h - 2 + D)` in the class component, with `u` known through
    /// `u^order`.
    pub fn genus_expansion(
        &self,
        p: SpaceParams,
        c: SectionClassIndex,
        h_max: u32,
        order: i32,
    ) -> Result<Vec<(u32, TRat)>> {
        let comp = self.class_component(p, c)?;
        let dim = virtual_dim(p, c);
        let series = to_useries(&comp, order);
        (0..=h_max)
            .map(|h| {
                let k = 2 * h as i64 - 2 + dim;
                let k = i32::try_from(k).map_err(|_| Error::Unsupported(format!("u exponent {k} out of range")))?;
                Ok((h, series.coeff(k)?))
            })
            .collect()
    }

    /// Snapshot of the memo table, sorted by parameters.
    pub fn export_memo(&self) -> Vec<MemoEntry> {
        let memo = self.memo.read().unwrap_or_else(|e| e.into_inner());
        let mut entries: Vec<MemoEntry> =
            memo.iter().map(|(p, z)| MemoEntry { g: p.g, k1: p.k1, k2: p.k2, terms: phi_terms(z) }).collect();
        entries.sort_by_key(|e| (e.g, e.k1, e.k2));
        entries
    }

    /// Loads previously exported values; malformed entries are rejected.
    pub fn import_memo(&self, entries: &[MemoEntry]) -> Result<()> {
        let parsed: Vec<(SpaceParams, PhiElem)> = entries
            .iter()
            .map(|e| Ok((SpaceParams::new(e.g, e.k1, e.k2), from_phi_terms(&e.terms)?)))
            .collect::<Result<_>>()?;
        let mut memo = self.memo.write().unwrap_or_else(|e| e.into_inner());
        memo.extend(parsed);
        Ok(())
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap_or_else(|e| e.into_inner()).len()
    }
}
