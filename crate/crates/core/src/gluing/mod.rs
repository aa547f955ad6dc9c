//! Gluing of relative partition functions: index raising, contraction of a
//! lowered slot against a raised one, self-gluing, class convolution, the
//! trace formula, and evaluation of cobordism words.

mod trace;
mod word;

pub use trace::{inverse_parts, mat_power, trace_formula, trace_formula_with, MatPower, PowerCache};
pub use word::{closed_word, evaluate_word, handle_word, parse_word, Word};

use crate::operators::{ClassRefined, RelTensor, Variance};
use crate::phicalc::PhiElem;
use crate::{Error, Result};

/// Raises one lowered slot (0-based).
pub fn raise_index(t: &RelTensor, slot: usize) -> Result<RelTensor> {
    t.raise_index(slot)
}

/// Checks a pair of slots for contraction. Exactly one must be raised; a
/// lowered/lowered pair has its second slot raised automatically.
fn orient(a: &RelTensor, sa: usize, b: &RelTensor, sb: usize) -> Result<Option<RelTensor>> {
    match (a.variance()[sa], b.variance()[sb]) {
        (Variance::Lowered, Variance::Raised) | (Variance::Raised, Variance::Lowered) => Ok(None),
        (Variance::Lowered, Variance::Lowered) => Ok(Some(b.raise_index(sb)?)),
        (Variance::Raised, Variance::Raised) => {
            Err(Error::VarianceMismatch(format!("slots {} and {} are both raised", sa + 1, sb + 1)))
        }
    }
}

/// `sum_lambda a[.., lambda, ..] b[.., lambda, ..]` over slot `sa` of `a` and
/// slot `sb` of `b` (0-based). Free slots of `a` come first, then those of
/// `b`, each in their original order.
pub fn contract(a: &RelTensor, sa: usize, b: &RelTensor, sb: usize) -> Result<RelTensor> {
    a.check_slot(sa)?;
    b.check_slot(sb)?;
    let raised = orient(a, sa, b, sb)?;
    let b = raised.as_ref().unwrap_or(b);

    let mut variance: Vec<Variance> = Vec::with_capacity(a.rank() + b.rank() - 2);
    variance.extend(a.variance().iter().enumerate().filter(|&(i, _)| i != sa).map(|(_, v)| *v));
    variance.extend(b.variance().iter().enumerate().filter(|&(i, _)| i != sb).map(|(_, v)| *v));
    let ra = a.rank() - 1;

    Ok(RelTensor::from_fn(variance, |idx| {
        let (ia, ib) = idx.split_at(ra);
        let mut ja: Vec<usize> = ia.to_vec();
        ja.insert(sa, 0);
        let mut jb: Vec<usize> = ib.to_vec();
        jb.insert(sb, 0);
        let mut acc = PhiElem::zero();
        for l in 0..3 {
            ja[sa] = l;
            jb[sb] = l;
            let x = a.get(&ja);
            if x.is_zero() {
                continue;
            }
            let y = b.get(&jb);
            if y.is_zero() {
                continue;
            }
            acc = &acc + &(x * y);
        }
        acc
    }))
}

/// Class convolution: piece `n` of the result sums `contract(a[n'], b[n''])`
/// over `n' + n'' = n`.
pub fn contract_refined(a: &ClassRefined, sa: usize, b: &ClassRefined, sb: usize) -> Result<ClassRefined> {
    let shape = contract(&RelTensor::zeros(a.variance().to_vec()), sa, &RelTensor::zeros(b.variance().to_vec()), sb)?;
    let mut out = ClassRefined::new(shape.variance().to_vec(), [])?;
    for (n1, ta) in a.pieces() {
        for (n2, tb) in b.pieces() {
            out.add_piece(n1 + n2, contract(ta, sa, tb, sb)?)?;
        }
    }
    Ok(out)
}

/// Glues slot `s1` of a tensor to its own slot `s2` (0-based), summing over
/// the shared label. The caller accounts for the added genus.
pub fn self_glue(t: &RelTensor, s1: usize, s2: usize) -> Result<RelTensor> {
    t.check_slot(s1)?;
    t.check_slot(s2)?;
    if s1 == s2 {
        return Err(Error::InvalidSlot { slot: s2, rank: t.rank() });
    }
    let raised;
    let t = match (t.variance()[s1], t.variance()[s2]) {
        (Variance::Raised, Variance::Raised) => {
            return Err(Error::VarianceMismatch(format!("slots {} and {} are both raised", s1 + 1, s2 + 1)))
        }
        (Variance::Lowered, Variance::Lowered) => {
            raised = t.raise_index(s2)?;
            &raised
        }
        _ => t,
    };
    let variance: Vec<Variance> =
        t.variance().iter().enumerate().filter(|&(i, _)| i != s1 && i != s2).map(|(_, v)| *v).collect();
    Ok(RelTensor::from_fn(variance, |idx| {
        let mut full: Vec<usize> = Vec::with_capacity(t.rank());
        let mut rest = idx.iter();
        for i in 0..t.rank() {
            if i == s1 || i == s2 {
                full.push(0);
            } else {
                full.push(*rest.next().expect("free slot"));
            }
        }
        let mut acc = PhiElem::zero();
        for l in 0..3 {
            full[s1] = l;
            full[s2] = l;
            acc = &acc + t.get(&full);
        }
        acc
    }))
}

/// Class-refined self-gluing (the class is unchanged).
pub fn self_glue_refined(t: &ClassRefined, s1: usize, s2: usize) -> Result<ClassRefined> {
    t.map_pieces(|p| self_glue(p, s1, s2))
}
