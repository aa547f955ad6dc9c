use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactring::{BigRat, Field, Point, TRat};
use crate::{Error, Result};

/// Laurent polynomial in the formal variable `phi` with coefficients in `F`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<F> {
    terms: BTreeMap<i32, F>,
}

/// Value type of every partition function: Laurent polynomial in `phi` over
/// `Q(t0, t1, t2)`.
pub type PhiElem = Laurent<TRat>;

impl<F: Field> Default for Laurent<F> {
    fn default() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
}

impl<F: Field> Laurent<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, 0)
    }

    /// `c * phi^exp`
    pub fn term(c: F, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Laurent { terms }
    }

    pub fn phi_pow(exp: i32) -> Self {
        Self::term(F::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, F)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i32, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(existing) => {
                let sum = existing + c;
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &F)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> F {
        self.terms.get(&exp).cloned().unwrap_or_else(F::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())))
    }

    pub fn shift(&self, by: i32) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Laurent<G> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn try_map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Laurent<G>> {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c)?);
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient in the Laurent ring `F[phi, 1/phi]`.
    ///
    /// Units are monomials, so `b | a` iff the `phi`-free parts divide as
    /// ordinary polynomials.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (Some(bmin), Some(bmax)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let (Some(amin), Some(amax)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Self::zero());
        };
        let blen = (bmax - bmin) as usize;
        let alen = (amax - amin) as usize;
        if alen < blen {
            return Err(Error::Inconsistent("Laurent quotient does not exist: divisor has larger phi-span".into()));
        }
        let b: Vec<F> = (bmin..=bmax).map(|e| divisor.coeff(e)).collect();
        let mut r: Vec<F> = (amin..=amax).map(|e| self.coeff(e)).collect();
        let lead_inv = b[blen].try_inv().ok_or(Error::DivisionByZero)?;
        let mut q = vec![F::zero(); alen - blen + 1];
        for top in (blen..=alen).rev() {
            if r[top].is_zero() {
                continue;
            }
            let qc = r[top].clone() * lead_inv.clone();
            let shift = top - blen;
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[shift + j] = r[shift + j].clone() - qc.clone() * bj.clone();
                }
            }
            q[shift] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::Inconsistent("Laurent quotient does not exist: nonzero remainder".into()));
        }
        let base = amin - bmin;
        Ok(Self::from_terms(q.into_iter().enumerate().map(|(i, c)| (base + i as i32, c))))
    }
}

impl PhiElem {
    pub fn from_int(n: i64) -> Self {
        Self::constant(TRat::from_int(n))
    }

    /// Substitutes an exact point for `t0, t1, t2`, leaving `phi` formal.
    pub fn eval_t(&self, point: &Point) -> Result<Laurent<BigRat>> {
        self.try_map_coeffs(|c| c.eval(point))
    }

    pub fn permute_vars(&self, perm: [usize; 3]) -> Self {
        self.map_coeffs(|c| c.permute_vars(perm))
    }

    /// Applies `TRat::homogeneous_component` coefficientwise.
    pub fn homogeneous_component(&self, d: i64) -> Result<Self> {
        self.try_map_coeffs(|c| c.homogeneous_component(d))
    }

    /// True when every coefficient is a constant (no `t` dependence).
    pub fn is_t_free(&self) -> bool {
        self.terms().all(|(_, c)| c.as_constant().is_some())
    }
}

fn write_terms<F>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<i32, F>,
    factor: impl Fn(&F) -> (String, bool),
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (e, c)) in terms.iter().enumerate() {
        let (text, atomic) = factor(c);
        let body = match *e {
            0 => text,
            _ => {
                let phi = if *e == 1 { "phi".to_string() } else { format!("phi^{e}") };
                match text.as_str() {
                    "1" => phi,
                    "-1" => format!("-{phi}"),
                    _ if atomic => format!("{text}*{phi}"),
                    _ => format!("({text})*{phi}"),
                }
            }
        };
        if i == 0 {
            f.write_str(&body)?;
        } else if let Some(rest) = body.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {body}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Laurent<TRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |c| {
            let atomic = c.is_polynomial() && c.num().num_terms() <= 1;
            (c.to_string(), atomic)
        })
    }
}

impl fmt::Display for Laurent<BigRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |c| (c.to_string(), true))
    }
}

impl<F: Field> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<'a, F: Field> Add<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: &Laurent<F>) -> Laurent<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn sub(self, rhs: &Laurent<F>) -> Laurent<F> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Laurent<F>> for &'a Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: &Laurent<F>) -> Laurent<F> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl<F: Field> Neg for Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        -&self
    }
}

impl<F: Field> Add for Laurent<F> {
    type Output = Laurent<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> Sub for Laurent<F> {
    type Output = Laurent<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Field> Mul for Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> Zero for Laurent<F> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for Laurent<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}
