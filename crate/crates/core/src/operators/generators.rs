//! Closed-form generator data. All tensors are stored with every slot
//! lowered; operators are stored in raised matrix form (row index raised).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::matrix::Op3;
use super::tensor::{ClassRefined, RelTensor, Variance};
use super::weight;
use crate::exactring::{rat, TPoly, TRat};
use crate::phicalc::PhiElem;
use crate::{Error, Result};

/// A level `(k1, k2)`.
pub type Level = (i64, i64);

/// The five levels at which caps and tubes are basic generators.
pub const BASIC_LEVELS: [Level; 5] = [(0, 0), (-1, 0), (0, -1), (1, 0), (0, 1)];

fn t(i: usize) -> TPoly {
    TPoly::var(i)
}

/// `c0 t0 + c1 t1 + c2 t2`.
fn lin(c: [i64; 3]) -> TPoly {
    (0..3).fold(TPoly::zero(), |acc, i| &acc + &t(i).scale(&rat(c[i], 1)))
}

fn d(i: usize, j: usize) -> TPoly {
    TPoly::diff(i, j)
}

fn term(p: TPoly, e: i32) -> PhiElem {
    PhiElem::term(TRat::from_poly(p), e)
}

fn frac(num: TPoly, den: TPoly, e: i32) -> PhiElem {
    PhiElem::term(TRat::new(num, den).expect("weights are nonzero"), e)
}

fn check_level(level: Level) -> Result<()> {
    if BASIC_LEVELS.contains(&level) {
        Ok(())
    } else {
        Err(Error::UnsupportedLevel(level.0, level.1))
    }
}

/// The cap (one relative fiber) at a basic level, split by class.
pub fn build_cap(level: Level) -> Result<ClassRefined> {
    check_level(level)?;
    let (n, f): (i32, Box<dyn Fn(usize) -> PhiElem>) = match level {
        (0, 0) => (0, Box::new(|_| PhiElem::one())),
        (0, -1) => (0, Box::new(|a| term(&t(a) - &t(2), -1))),
        (-1, 0) => (0, Box::new(|a| term(&t(a) - &t(1), -1))),
        (0, 1) => (-1, Box::new(|a| term(&(&t(a) - &t(0)) * &(&t(a) - &t(1)), -2))),
        (1, 0) => (-1, Box::new(|a| term(&(&t(a) - &t(0)) * &(&t(a) - &t(2)), -2))),
        _ => unreachable!("level checked above"),
    };
    Ok(ClassRefined::single(n, RelTensor::lowered(1, |idx| f(idx[0]))))
}

fn diag2(d: [TPoly; 3], e: i32) -> RelTensor {
    RelTensor::lowered(2, |idx| if idx[0] == idx[1] { term(d[idx[0]].clone(), e) } else { PhiElem::zero() })
}

fn sym2(m: [[TPoly; 3]; 3], e: i32) -> RelTensor {
    RelTensor::lowered(2, |idx| term(m[idx[0]][idx[1]].clone(), e))
}

fn ones2(e: i32) -> RelTensor {
    RelTensor::lowered(2, |_| PhiElem::phi_pow(e))
}

fn sq(p: TPoly) -> TPoly {
    &p * &p
}

/// The tube (two relative fibers) at a basic level, split by class.
pub fn build_tube(level: Level) -> Result<ClassRefined> {
    check_level(level)?;
    let z = TPoly::zero;
    let lowered = vec![Variance::Lowered; 2];
    let pieces = match level {
        (0, 0) => vec![(0, diag2([weight(0), weight(1), weight(2)], 0))],
        (0, -1) => vec![(0, diag2([&d(0, 1) * &sq(d(0, 2)), &d(1, 0) * &sq(d(1, 2)), z()], -1)), (1, ones2(2))],
        (-1, 0) => vec![(0, diag2([&d(0, 2) * &sq(d(0, 1)), z(), &d(2, 0) * &sq(d(2, 1))], -1)), (1, ones2(2))],
        (0, 1) => vec![
            (-1, diag2([z(), z(), &sq(d(2, 0)) * &sq(d(2, 1))], -2)),
            (0, sym2([[d(0, 1), z(), d(2, 1)], [z(), d(1, 0), d(2, 0)], [d(2, 1), d(2, 0), lin([-1, -1, 2])]], 1)),
        ],
        (1, 0) => vec![
            (-1, diag2([z(), &sq(d(1, 2)) * &sq(d(1, 0)), z()], -2)),
            (0, sym2([[d(0, 2), d(1, 2), z()], [d(1, 2), lin([-1, 2, -1]), d(1, 0)], [z(), d(1, 0), d(2, 0)]], 1)),
        ],
        _ => unreachable!("level checked above"),
    };
    ClassRefined::new(lowered, pieces)
}

/// Class `beta0 + f` pants value for a sorted label multiset. The entries
/// with exactly two equal labels besides `x2` follow from gluing the level
/// (0,1) cap: `Z_{x2 xa xb} = Z_{beta0}(0|0,1)_{xa xb} phi^2`.
fn pants_one(mut labels: [usize; 3]) -> TPoly {
    labels.sort_unstable();
    match labels {
        [0, 1, 2] => TPoly::zero(),
        [0, 2, 2] => d(2, 1),
        [1, 2, 2] => d(2, 0),
        [0, 0, 2] => d(0, 1),
        [1, 1, 2] => d(1, 0),
        [2, 2, 2] => lin([-1, -1, 2]),
        [0, 1, 1] => d(1, 2),
        [0, 0, 1] => d(0, 2),
        [0, 0, 0] => lin([2, -1, -1]),
        [1, 1, 1] => lin([-1, 2, -1]),
        _ => unreachable!("labels are sorted and below 3"),
    }
}

/// The level (0,0) pants (three relative fibers), split by class.
pub fn build_pants() -> ClassRefined {
    let n0 = RelTensor::lowered(3, |idx| {
        if idx[0] == idx[1] && idx[1] == idx[2] {
            term(sq(weight(idx[0])), 0)
        } else {
            PhiElem::zero()
        }
    });
    let n1 = RelTensor::lowered(3, |idx| term(pants_one([idx[0], idx[1], idx[2]]), 3));
    ClassRefined::new(vec![Variance::Lowered; 3], [(0, n0), (1, n1)]).expect("shapes agree")
}

/// Names of the closed-form 3x3 operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpName {
    A,
    B,
    C1,
    C2,
    E1,
    E2,
    N1,
    N2,
    M1,
    M2,
    G,
    U1,
    U2,
    U1inv,
    U2inv,
}

impl OpName {
    pub const ALL: [OpName; 15] = [
        OpName::A,
        OpName::B,
        OpName::C1,
        OpName::C2,
        OpName::E1,
        OpName::E2,
        OpName::N1,
        OpName::N2,
        OpName::M1,
        OpName::M2,
        OpName::G,
        OpName::U1,
        OpName::U2,
        OpName::U1inv,
        OpName::U2inv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OpName::A => "A",
            OpName::B => "B",
            OpName::C1 => "C1",
            OpName::C2 => "C2",
            OpName::E1 => "E1",
            OpName::E2 => "E2",
            OpName::N1 => "N1",
            OpName::N2 => "N2",
            OpName::M1 => "M1",
            OpName::M2 => "M2",
            OpName::G => "G",
            OpName::U1 => "U1",
            OpName::U2 => "U2",
            OpName::U1inv => "U1inv",
            OpName::U2inv => "U2inv",
        }
    }
}

impl fmt::Display for OpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OpName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OpName::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown operator {s:?}")))
    }
}

fn w(a: usize) -> TPoly {
    weight(a)
}

fn raw_operator(name: OpName) -> Op3 {
    let zero = PhiElem::zero;
    match name {
        OpName::A => Op3::diag([term(w(0), 0), term(w(1), 0), term(w(2), 0)]),
        OpName::B => {
            // off-diagonal numerators: entry (a,b) for a != b is t_a + t_b - 2 t_c
            let off = |a: usize, b: usize| {
                let c = 3 - a - b;
                let mut k = [1i64; 3];
                k[c] = -2;
                lin(k)
            };
            Op3::from_fn(|a, b| {
                let num = if a == b {
                    let mut k = [-2i64; 3];
                    k[a] = 4;
                    lin(k)
                } else {
                    off(a, b)
                };
                frac(num, w(a), 3)
            })
        }
        OpName::C1 => Op3::diag([zero(), term(w(1), -2), zero()]),
        OpName::C2 => Op3::diag([zero(), zero(), term(w(2), -2)]),
        OpName::E1 => Op3::from_fn(|a, b| match (a, b) {
            (0, 0) => frac(TPoly::one(), d(0, 1), 1),
            (0, 1) => frac(d(1, 2), w(0), 1),
            (1, 0) => frac(TPoly::one(), d(1, 0), 1),
            (1, 1) => frac(lin([-1, 2, -1]), w(1), 1),
            (1, 2) => frac(TPoly::one(), d(1, 2), 1),
            (2, 1) => frac(d(1, 0), w(2), 1),
            (2, 2) => frac(TPoly::one(), d(2, 1), 1),
            _ => zero(),
        }),
        OpName::E2 => Op3::from_fn(|a, b| match (a, b) {
            (0, 0) => frac(TPoly::one(), d(0, 2), 1),
            (0, 2) => frac(d(2, 1), w(0), 1),
            (1, 1) => frac(TPoly::one(), d(1, 2), 1),
            (1, 2) => frac(d(2, 0), w(1), 1),
            (2, 0) => frac(TPoly::one(), d(2, 0), 1),
            (2, 1) => frac(TPoly::one(), d(2, 1), 1),
            (2, 2) => frac(lin([-1, -1, 2]), w(2), 1),
            _ => zero(),
        }),
        OpName::N1 => Op3::diag([term(d(0, 1), -1), zero(), term(d(2, 1), -1)]),
        OpName::N2 => Op3::diag([term(d(0, 2), -1), term(d(1, 2), -1), zero()]),
        OpName::M1 | OpName::M2 => Op3::from_fn(|a, _| frac(TPoly::one(), w(a), 2)),
        OpName::G => operator(OpName::A) + operator(OpName::B),
        OpName::U1 => operator(OpName::C1) + operator(OpName::E1),
        OpName::U2 => operator(OpName::C2) + operator(OpName::E2),
        OpName::U1inv => operator(OpName::N1) + operator(OpName::M1),
        OpName::U2inv => operator(OpName::N2) + operator(OpName::M2),
    }
}

/// The closed-form operator in raised matrix form, from a shared table.
pub fn operator(name: OpName) -> &'static Op3 {
    static TABLE: OnceLock<Vec<OnceLock<Op3>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| OpName::ALL.iter().map(|_| OnceLock::new()).collect());
    table[name as usize].get_or_init(|| raw_operator(name))
}

/// Owned copy of an operator.
pub fn build_operator(name: OpName) -> Op3 {
    operator(name).clone()
}

/// The operator split by class: `G = A + B` puts `A` in class `beta0` and
/// `B` in `beta0 + f`, and similarly for the level operators.
pub fn operator_classes(name: OpName) -> ClassRefined {
    use OpName::*;
    let parts: &[(i32, OpName)] = match name {
        A | E1 | E2 | N1 | N2 => &[(0, name)],
        B | M1 | M2 => &[(1, name)],
        C1 | C2 => &[(-1, name)],
        G => &[(0, A), (1, B)],
        U1 => &[(-1, C1), (0, E1)],
        U2 => &[(-1, C2), (0, E2)],
        U1inv => &[(0, N1), (1, M1)],
        U2inv => &[(0, N2), (1, M2)],
    };
    ClassRefined::new(
        vec![Variance::Raised, Variance::Lowered],
        parts.iter().map(|&(n, op)| (n, RelTensor::from_op3(operator(op)))),
    )
    .expect("shapes agree")
}
