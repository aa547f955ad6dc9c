use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Op3;
use super::weight;
use crate::exactring::TRat;
use crate::phicalc::PhiElem;
use crate::{Error, Result};

/// One of the three torus-fixed basis classes `x0, x1, x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel(u8);

impl BasisLabel {
    pub const ALL: [BasisLabel; 3] = [BasisLabel(0), BasisLabel(1), BasisLabel(2)];

    pub fn new(index: usize) -> Option<Self> {
        (index < 3).then_some(BasisLabel(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Lowered,
    Raised,
}

/// A relative partition function with `rank` boundary slots, stored densely
/// over `{x0,x1,x2}^rank` with slot 0 as the most significant index.
#[derive(Clone, PartialEq)]
pub struct RelTensor {
    variance: Vec<Variance>,
    entries: Vec<PhiElem>,
}

fn flat_index(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * 3 + i)
}

/// The multi-index for a flat position in a rank-`rank` tensor.
pub(crate) fn unflatten(mut pos: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for slot in (0..rank).rev() {
        idx[slot] = pos % 3;
        pos /= 3;
    }
    idx
}

impl RelTensor {
    pub fn new(variance: Vec<Variance>, entries: Vec<PhiElem>) -> Result<Self> {
        let want = 3usize.pow(variance.len() as u32);
        if entries.len() != want {
            return Err(Error::Inconsistent(format!(
                "rank {} tensor needs {want} entries, got {}",
                variance.len(),
                entries.len()
            )));
        }
        Ok(RelTensor { variance, entries })
    }

    pub fn from_fn(variance: Vec<Variance>, f: impl Fn(&[usize]) -> PhiElem) -> Self {
        let rank = variance.len();
        let entries = (0..3usize.pow(rank as u32)).map(|p| f(&unflatten(p, rank))).collect();
        RelTensor { variance, entries }
    }

    /// All-lowered tensor built from a function of the labels.
    pub fn lowered(rank: usize, f: impl Fn(&[usize]) -> PhiElem) -> Self {
        Self::from_fn(vec![Variance::Lowered; rank], f)
    }

    pub fn zeros(variance: Vec<Variance>) -> Self {
        Self::from_fn(variance, |_| PhiElem::zero())
    }

    pub fn scalar(value: PhiElem) -> Self {
        RelTensor { variance: Vec::new(), entries: vec![value] }
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn entries(&self) -> &[PhiElem] {
        &self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &PhiElem {
        assert_eq!(idx.len(), self.rank(), "index length must equal rank");
        &self.entries[flat_index(idx)]
    }

    /// The value of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<&PhiElem> {
        (self.rank() == 0).then(|| &self.entries[0])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PhiElem::is_zero)
    }

    pub(crate) fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.rank() {
            return Err(Error::InvalidSlot { slot, rank: self.rank() });
        }
        Ok(())
    }

    /// Multiplies every entry by `1/T(x_lambda)` where `lambda` is the label
    /// in `slot`, and marks the slot raised.
    pub fn raise_index(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        if self.variance[slot] == Variance::Raised {
            return Err(Error::VarianceMismatch(format!("slot {} is already raised", slot + 1)));
        }
        self.rescale_slot(slot, Variance::Raised, |w| w.inv())
    }

    /// Inverse of `raise_index`.
    pub fn lower_index(&self, slot: usize) -> Result<Self> {
        self.check_slot(slot)?;
        if self.variance[slot] == Variance::Lowered {
            return Err(Error::VarianceMismatch(format!("slot {} is already lowered", slot + 1)));
        }
        self.rescale_slot(slot, Variance::Lowered, Ok)
    }

    fn rescale_slot(&self, slot: usize, to: Variance, f: impl Fn(TRat) -> Result<TRat>) -> Result<Self> {
        let factors: Vec<TRat> = (0..3).map(|a| f(TRat::from_poly(weight(a)))).collect::<Result<_>>()?;
        let rank = self.rank();
        let entries =
            self.entries.iter().enumerate().map(|(p, e)| e.scale(&factors[unflatten(p, rank)[slot]])).collect();
        let mut variance = self.variance.clone();
        variance[slot] = to;
        Ok(RelTensor { variance, entries })
    }

    /// Exchanges two slots.
    pub fn swap_slots(&self, i: usize, j: usize) -> Result<Self> {
        self.check_slot(i)?;
        self.check_slot(j)?;
        let mut variance = self.variance.clone();
        variance.swap(i, j);
        Ok(RelTensor::from_fn(variance, |idx| {
            let mut src = idx.to_vec();
            src.swap(i, j);
            self.entries[flat_index(&src)].clone()
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("cannot add tensors of different shape".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(RelTensor { variance: self.variance.clone(), entries })
    }

    /// Applies a coefficient map (e.g. a coordinate permutation) entrywise.
    pub fn map_entries(&self, f: impl Fn(&PhiElem) -> PhiElem) -> Self {
        RelTensor { variance: self.variance.clone(), entries: self.entries.iter().map(f).collect() }
    }

    /// Matrix form of a rank-2 tensor with slot 0 raised and slot 1 lowered.
    pub fn to_op3(&self) -> Result<Op3> {
        if self.variance != [Variance::Raised, Variance::Lowered] {
            return Err(Error::VarianceMismatch("matrix form needs a (raised, lowered) rank-2 tensor".into()));
        }
        Ok(Op3::from_fn(|a, b| self.entries[a * 3 + b].clone()))
    }

    pub fn from_op3(m: &Op3) -> Self {
        RelTensor::from_fn(vec![Variance::Raised, Variance::Lowered], |idx| m.get(idx[0], idx[1]).clone())
    }
}

impl fmt::Debug for RelTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelTensor").field("variance", &self.variance).field("entries", &self.entries).finish()
    }
}

impl fmt::Display for RelTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        let mut first = true;
        for (p, e) in self.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            let labels: Vec<String> = unflatten(p, self.rank())
                .iter()
                .zip(&self.variance)
                .map(|(i, v)| match v {
                    Variance::Lowered => format!("x{i}"),
                    Variance::Raised => format!("^x{i}"),
                })
                .collect();
            write!(f, "[{}] {e}", labels.join(","))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A relative partition function split by section class `beta0 + n f`.
#[derive(Clone, PartialEq, Debug)]
pub struct ClassRefined {
    variance: Vec<Variance>,
    pieces: BTreeMap<i32, RelTensor>,
}

impl ClassRefined {
    pub fn new(variance: Vec<Variance>, pieces: impl IntoIterator<Item = (i32, RelTensor)>) -> Result<Self> {
        let mut out = ClassRefined { variance, pieces: BTreeMap::new() };
        for (n, t) in pieces {
            out.add_piece(n, t)?;
        }
        Ok(out)
    }

    pub fn single(n: i32, t: RelTensor) -> Self {
        let variance = t.variance.clone();
        ClassRefined::new(variance, [(n, t)]).expect("shapes agree")
    }

    /// Adds `t` into the class-`n` piece, dropping it if the sum vanishes.
    pub fn add_piece(&mut self, n: i32, t: RelTensor) -> Result<()> {
        if t.variance != self.variance {
            return Err(Error::VarianceMismatch("class pieces must share one shape".into()));
        }
        let sum = match self.pieces.remove(&n) {
            Some(old) => old.add(&t)?,
            None => t,
        };
        if !sum.is_zero() {
            self.pieces.insert(n, sum);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn pieces(&self) -> impl Iterator<Item = (i32, &RelTensor)> {
        self.pieces.iter().map(|(n, t)| (*n, t))
    }

    pub fn piece(&self, n: i32) -> Option<&RelTensor> {
        self.pieces.get(&n)
    }

    /// The class-`n` piece, or the zero tensor of the right shape.
    pub fn piece_or_zero(&self, n: i32) -> RelTensor {
        self.pieces.get(&n).cloned().unwrap_or_else(|| RelTensor::zeros(self.variance.clone()))
    }

    pub fn classes(&self) -> Vec<i32> {
        self.pieces.keys().copied().collect()
    }

    /// Sum over all classes.
    pub fn total(&self) -> RelTensor {
        self.pieces.values().fold(RelTensor::zeros(self.variance.clone()), |acc, t| acc.add(t).expect("shapes agree"))
    }

    pub fn map_pieces(&self, f: impl Fn(&RelTensor) -> Result<RelTensor>) -> Result<Self> {
        let mut variance = None;
        let mut pieces = Vec::new();
        for (n, t) in &self.pieces {
            let u = f(t)?;
            variance.get_or_insert_with(|| u.variance.clone());
            pieces.push((*n, u));
        }
        let variance = match variance {
            Some(v) => v,
            None => f(&RelTensor::zeros(self.variance.clone()))?.variance,
        };
        ClassRefined::new(variance, pieces)
    }

    pub fn raise_index(&self, slot: usize) -> Result<Self> {
        self.map_pieces(|t| t.raise_index(slot))
    }
}

impl fmt::Display for ClassRefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, t) in &self.pieces {
            if !first {
                writeln!(f)?;
            }
            first = false;
            writeln!(f, "n = {n}:")?;
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
