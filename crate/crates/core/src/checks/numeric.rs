//! Independent numeric oracle: the trace formula with `t` substituted by a
//! rational point before any matrix arithmetic, and `phi` kept formal.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckReport, Diffable, Tally};
use crate::exactring::{check_point, rat, BigRat, Point};
use crate::operators::{operator, OpName};
use crate::partition::{PartitionEngine, SpaceParams};
use crate::{Error, Result};

/// A Laurent polynomial in `phi` over `Q`, with its own minimal arithmetic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NumLaurent(BTreeMap<i32, BigRat>);

impl NumLaurent {
    pub fn zero() -> Self {
        NumLaurent(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(0, BigRat::one())
    }

    pub fn term(exp: i32, c: BigRat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(exp, c);
        }
        NumLaurent(m)
    }

    pub fn terms(&self) -> &BTreeMap<i32, BigRat> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, exp: i32, c: BigRat) {
        let slot = self.0.entry(exp).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&exp);
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.0 {
            out.push(*e, c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        NumLaurent(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                out.push(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    fn div_exact(&self, d: &Self) -> Result<Self> {
        let (&dmax, dlead) = d.0.iter().next_back().ok_or(Error::DivisionByZero)?;
        let &dmin = d.0.keys().next().expect("nonzero");
        let mut r = self.clone();
        let mut q = Self::zero();
        let Some(&rmin) = r.0.keys().next() else { return Ok(q) };
        let lowest = rmin - dmin;
        while let Some((&rmax, rlead)) = r.0.iter().next_back() {
            let e = rmax - dmax;
            if e < lowest {
                return Err(Error::Inconsistent("numeric division leaves a remainder".into()));
            }
            let c = rlead / dlead;
            let step = Self::term(e, c);
            r = r.add(&step.mul(d).neg());
            q = q.add(&step);
        }
        Ok(q)
    }

    /// Converts the evaluation of a symbolic value.
    pub fn from_evaluated(l: &crate::phicalc::Laurent<BigRat>) -> Self {
        NumLaurent(l.terms().map(|(e, c)| (e, c.clone())).filter(|(_, c)| !c.is_zero()).collect())
    }
}

impl fmt::Display for NumLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(e, c)| format!("({c})*phi^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Diffable for NumLaurent {
    fn diff(&self, other: &Self) -> String {
        self.add(&other.neg()).to_string()
    }
}

type NumMat = [[NumLaurent; 3]; 3];

fn identity() -> NumMat {
    std::array::from_fn(|a| std::array::from_fn(|b| if a == b { NumLaurent::one() } else { NumLaurent::zero() }))
}

fn mat_mul(x: &NumMat, y: &NumMat) -> NumMat {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| (0..3).fold(NumLaurent::zero(), |acc, l| acc.add(&x[a][l].mul(&y[l][b]))))
    })
}

fn mat_pow(x: &NumMat, e: u64) -> NumMat {
    (0..e).fold(identity(), |acc, _| mat_mul(&acc, x))
}

fn cofactor(m: &NumMat, r: usize, c: usize) -> NumLaurent {
    let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
    let minor = m[rows[0]][cols[0]].mul(&m[rows[1]][cols[1]]).add(&m[rows[0]][cols[1]].mul(&m[rows[1]][cols[0]]).neg());
    if (r + c).is_multiple_of(2) {
        minor
    } else {
        minor.neg()
    }
}

fn evaluated(name: OpName, point: &Point) -> Result<NumMat> {
    let m = operator(name);
    let mut out: NumMat = std::array::from_fn(|_| std::array::from_fn(|_| NumLaurent::zero()));
    for (a, row) in out.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = NumLaurent::from_evaluated(&m.get(a, b).eval_t(point)?);
        }
    }
    Ok(out)
}

/// `tr(G^(g-1) U1^k1 U2^k2)` at a rational point. Genus zero uses the
/// adjugate of `G` and exact division by its determinant.
pub fn numeric_partition_function(point: &Point, g: u32, k1: i64, k2: i64) -> Result<NumLaurent> {
    check_point(point)?;
    let level = |k: i64, pos: OpName, neg: OpName| -> Result<NumMat> {
        Ok(mat_pow(&evaluated(if k >= 0 { pos } else { neg }, point)?, k.unsigned_abs()))
    };
    let u = mat_mul(&level(k1, OpName::U1, OpName::U1inv)?, &level(k2, OpName::U2, OpName::U2inv)?);
    let gm = evaluated(OpName::G, point)?;
    let trace = |m: &NumMat| (0..3).fold(NumLaurent::zero(), |acc, a| acc.add(&m[a][a]));
    if g >= 1 {
        return Ok(trace(&mat_mul(&mat_pow(&gm, g as u64 - 1), &u)));
    }
    let adj: NumMat = std::array::from_fn(|a| std::array::from_fn(|b| cofactor(&gm, b, a)));
    let det = (0..3).fold(NumLaurent::zero(), |acc, c| acc.add(&gm[0][c].mul(&cofactor(&gm, 0, c))));
    trace(&mat_mul(&adj, &u)).div_exact(&det)
}

/// A rational point with pairwise distinct coordinates.
pub fn random_point(rng: &mut impl Rng) -> Point {
    loop {
        let p: Point = std::array::from_fn(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=7)));
        if check_point(&p).is_ok() {
            return p;
        }
    }
}

fn show(p: &Point) -> String {
    format!("({}, {}, {})", p[0], p[1], p[2])
}

/// Numeric traces against the symbolic result evaluated at the same point.
pub fn verify_numeric_crosscheck(seed: u64, trials: usize) -> CheckReport {
    let engine = PartitionEngine::new();
    let mut t = Tally::new("numeric.crosscheck", "numeric traces at random points equal the evaluated symbolic result");
    let compare = |t: &mut Tally, p: SpaceParams, point: &Point| {
        let params = format!("{p} at {}", show(point));
        let symbolic = engine.compute_z(p).and_then(|z| z.eval_t(point)).map(|l| NumLaurent::from_evaluated(&l));
        match (symbolic, numeric_partition_function(point, p.g, p.k1, p.k2)) {
            (Ok(s), Ok(n)) => t.eq(params, &n, &s),
            (Err(e), _) | (_, Err(e)) => t.error(params, e),
        }
    };

    let fixed: Point = [rat(0, 1), rat(1, 1), rat(2, 1)];
    compare(&mut t, SpaceParams::new(2, 0, 0), &fixed);
    match numeric_partition_function(&fixed, 2, 0, 0) {
        Ok(v) => t.eq("(g=2,0,0) at (0,1,2)", &NumLaurent::term(0, rat(3, 1)), &v),
        Err(e) => t.error("(g=2,0,0) at (0,1,2)", e),
    }
    match numeric_partition_function(&[rat(3, 1), rat(-2, 5), rat(7, 2)], 0, 1, 0) {
        Ok(v) => t.eq("(g=0,1,0) numeric", &NumLaurent::term(-2, rat(1, 1)), &v),
        Err(e) => t.error("(g=0,1,0) numeric", e),
    }
    let bad: Point = [rat(0, 1), rat(1, 1), rat(1, 1)];
    let rejected = matches!(numeric_partition_function(&bad, 2, 0, 0), Err(Error::CoincidentCoordinates));
    t.holds("t1 = t2", rejected, || "coincident point accepted".into());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        let p = SpaceParams::new(rng.gen_range(0..=4), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let point = random_point(&mut rng);
        compare(&mut t, p, &point);
    }
    t.finish()
}
