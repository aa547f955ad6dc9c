use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{BigRat, Monomial, Point};

/// Sparse polynomial in `t0, t1, t2` with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    terms: BTreeMap<Monomial, BigRat>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        TPoly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        TPoly::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        TPoly::constant(BigRat::from_integer(c.into()))
    }

    pub fn monomial(m: Monomial, c: BigRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TPoly { terms }
    }

    /// The variable `t_i`.
    pub fn var(i: usize) -> Self {
        TPoly::monomial(Monomial::var(i), BigRat::one())
    }

    /// `t_i - t_j`
    pub fn diff(i: usize, j: usize) -> Self {
        &TPoly::var(i) - &TPoly::var(j)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRat)>>(terms: I) -> Self {
        let mut p = TPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRat> {
        match self.terms.len() {
            0 => Some(BigRat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRat {
        self.terms.get(m).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigRat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigRat) -> TPoly {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRat) -> TPoly {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Rescales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> TPoly {
        match self.leading_term() {
            None => TPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> TPoly {
        let mut base = self.clone();
        let mut acc = TPoly::one();
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

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &TPoly) -> Option<TPoly> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = TPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(lm)?;
            let qc = rc / lc;
            rem -= &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, TPoly> {
        let mut parts: BTreeMap<u32, TPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_default().terms.insert(*m, c.clone());
        }
        parts
    }

    pub fn homogeneous_part(&self, degree: u32) -> TPoly {
        TPoly { terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn eval(&self, point: &Point) -> BigRat {
        let mut acc = BigRat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Renames variables: `t_i` becomes `t_{perm[i]}`.
    pub fn permute_vars(&self, perm: [usize; 3]) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect() }
    }

    /// Coefficients with respect to `t_var`: entry `i` multiplies `t_var^i`.
    pub(crate) fn coeffs_in(&self, var: usize) -> Vec<TPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![TPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[var] as usize;
            rest.0[var] = 0;
            out[e].terms.insert(rest, c.clone());
        }
        out
    }

    pub(crate) fn from_coeffs_in(var: usize, coeffs: &[TPoly]) -> TPoly {
        let mut out = TPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let mut shift = Monomial::ONE;
            shift.0[var] = e as u32;
            for (m, v) in &c.terms {
                out.add_term(m.mul(&shift), v.clone());
            }
        }
        out
    }

    /// Writes the polynomial with a caller-chosen term formatter; used by
    /// the text and LaTeX emitters.
    pub fn write_with(
        &self,
        f: &mut dyn fmt::Write,
        style: &dyn Fn(&Monomial, &BigRat, bool) -> String,
    ) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            f.write_str(&style(m, c, i == 0))?;
        }
        Ok(())
    }
}

fn text_term(m: &Monomial, c: &BigRat, first: bool) -> String {
    let mut s = String::new();
    let neg = c.is_negative();
    if first {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    let abs = c.abs();
    if m.is_one() {
        s.push_str(&abs.to_string());
    } else if abs.is_one() {
        s.push_str(&m.to_string());
    } else {
        s.push_str(&format!("{abs}*{m}"));
    }
    s
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &text_term)
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

impl<'a> Add<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&TPoly> for TPoly {
    fn sub_assign(&mut self, rhs: &TPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Mul<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<TPoly> for TPoly {
            type Output = TPoly;
            fn $method(self, rhs: TPoly) -> TPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

impl Zero for TPoly {
    fn zero() -> Self {
        TPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for TPoly {
    fn one() -> Self {
        TPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn t(i: usize) -> TPoly {
        TPoly::var(i)
    }

    #[test]
    fn product_of_weight_factors() {
        let p = &TPoly::diff(0, 1) * &TPoly::diff(0, 2);
        assert_eq!(p.to_string(), "t0^2 - t0*t1 - t0*t2 + t1*t2");
        assert_eq!(&p * &TPoly::one(), p);
    }

    #[test]
    fn sum_of_weights_is_q() {
        let w0 = &TPoly::diff(0, 1) * &TPoly::diff(0, 2);
        let w1 = &TPoly::diff(1, 0) * &TPoly::diff(1, 2);
        let w2 = &TPoly::diff(2, 0) * &TPoly::diff(2, 1);
        let sum = &(&w0 + &w1) + &w2;
        // Independent expansion: each square once, each cross term -1.
        let mut q = TPoly::zero();
        for i in 0..3 {
            q += &(&t(i) * &t(i));
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            q -= &(&t(i) * &t(j));
        }
        assert_eq!(sum, q);
        assert_eq!(sum.to_string(), "t0^2 - t0*t1 - t0*t2 + t1^2 - t1*t2 + t2^2");
    }

    #[test]
    fn homogeneous_parts_examples() {
        let p = &(&t(0) * &t(0)) + &t(1);
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2], &t(0) * &t(0));
        assert_eq!(parts[&1], t(1));
        assert!(TPoly::zero().homogeneous_parts().is_empty());

        let w0 = &TPoly::diff(0, 1) * &TPoly::diff(0, 2);
        let q = &w0 + &TPoly::from_int(5);
        let parts = q.homogeneous_parts();
        assert_eq!(parts[&2], w0);
        assert_eq!(parts[&0], TPoly::from_int(5));
    }

    #[test]
    fn exact_division() {
        let a = &TPoly::diff(0, 1) * &TPoly::diff(1, 2);
        assert_eq!(a.div_exact(&TPoly::diff(0, 1)), Some(TPoly::diff(1, 2)));
        assert_eq!(a.div_exact(&TPoly::diff(0, 2)), None);
        assert_eq!(TPoly::from_int(3).div_exact(&TPoly::from_int(6)), Some(TPoly::constant(rat(1, 2))));
    }

    #[test]
    fn eval_weight() {
        let w0 = &TPoly::diff(0, 1) * &TPoly::diff(0, 2);
        let pt = [rat(0, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(w0.eval(&pt), rat(2, 1));
    }

    #[test]
    fn display_rational_coefficients() {
        let p = TPoly::from_terms([(Monomial([1, 0, 0]), rat(-3, 2)), (Monomial::ONE, rat(7, 1))]);
        assert_eq!(p.to_string(), "-3/2*t0 + 7");
        assert_eq!(TPoly::zero().to_string(), "0");
        assert_eq!((-&t(2)).to_string(), "-t2");
    }

    #[test]
    fn permute_swaps_variables() {
        let p = &TPoly::diff(0, 1) * &t(1);
        let q = p.permute_vars([0, 2, 1]);
        assert_eq!(q, &TPoly::diff(0, 2) * &t(2));
    }
}
