use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd_rec;
use super::{check_point, BigRat, Point, TPoly};
use crate::{Error, Result};

/// Element of `Q(t0, t1, t2)` in canonical form: `gcd(num, den) = 1` and the
/// graded-lex leading coefficient of `den` is 1. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TRat {
    num: TPoly,
    den: TPoly,
}

impl TRat {
    /// Builds the reduced fraction `num / den`.
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(TRat::zero());
        }
        let g = gcd_rec(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        Ok(TRat::from_coprime(num, den))
    }

    /// Normalizes the denominator's leading coefficient; the caller guarantees
    /// the parts are already coprime.
    fn from_coprime(num: TPoly, den: TPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            TRat { num, den }
        } else {
            let inv = lc.recip();
            TRat { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: TPoly) -> Self {
        TRat { num: p, den: TPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        TRat::from_poly(TPoly::from_int(n))
    }

    pub fn from_rat(c: BigRat) -> Self {
        TRat::from_poly(TPoly::constant(c))
    }

    pub fn zero() -> Self {
        TRat::from_poly(TPoly::zero())
    }

    pub fn one() -> Self {
        TRat::from_poly(TPoly::one())
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value when the fraction is free of `t0, t1, t2`.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<TRat> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(TRat::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &TRat) -> Result<TRat> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<TRat> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = u32::try_from(e).map_err(|_| Error::Unsupported("exponent too large".into()))?;
        Ok(TRat::from_coprime(self.num.pow(e), self.den.pow(e)))
    }

    pub fn scale(&self, c: &BigRat) -> TRat {
        if c.is_zero() {
            return TRat::zero();
        }
        TRat { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact value at a point with pairwise distinct coordinates.
    pub fn eval(&self, point: &Point) -> Result<BigRat> {
        check_point(point)?;
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Decomposes into components of fixed homogeneity degree
    /// `deg(numerator part) - deg(den)`. Requires a homogeneous denominator.
    pub fn homogeneous_parts(&self) -> Result<BTreeMap<i64, TRat>> {
        let dd = self.homogeneous_den_degree()?;
        let mut out = BTreeMap::new();
        for (deg, part) in self.num.homogeneous_parts() {
            out.insert(deg as i64 - dd, TRat::new(part, self.den.clone())?);
        }
        Ok(out)
    }

    /// The component of homogeneity degree `d` (zero when absent).
    pub fn homogeneous_component(&self, d: i64) -> Result<TRat> {
        let dd = self.homogeneous_den_degree()?;
        let target = d + dd;
        if target < 0 {
            return Ok(TRat::zero());
        }
        let part = self.num.homogeneous_part(target as u32);
        TRat::new(part, self.den.clone())
    }

    fn homogeneous_den_degree(&self) -> Result<i64> {
        if !self.den.is_homogeneous() {
            return Err(Error::Unsupported(format!("denominator {} is not homogeneous", self.den)));
        }
        Ok(self.den.total_degree().unwrap_or(0) as i64)
    }

    /// Degree of homogeneity when the fraction is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.num.is_zero() || !self.num.is_homogeneous() || !self.den.is_homogeneous() {
            return None;
        }
        Some(self.num.total_degree()? as i64 - self.den.total_degree()? as i64)
    }

    pub fn permute_vars(&self, perm: [usize; 3]) -> TRat {
        TRat::new(self.num.permute_vars(perm), self.den.permute_vars(perm))
            .expect("permutation keeps the denominator nonzero")
    }

    /// Text form used when the fraction multiplies something else.
    pub fn to_factor_string(&self) -> String {
        if self.den.is_one() && self.num.num_terms() <= 1 {
            self.num.to_string()
        } else {
            format!("({self})")
        }
    }
}

impl fmt::Display for TRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &TPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for TRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TRat({self})")
    }
}

impl<'a> Add<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn add(self, rhs: &TRat) -> TRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return TRat::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the sum.
        let g = gcd_rec(&self.den, &rhs.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return TRat::zero();
        }
        let den = &self.den * &d1;
        let h = gcd_rec(&num, &g);
        if h.is_one() {
            TRat::from_coprime(num, den)
        } else {
            TRat::from_coprime(num.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
        }
    }
}

impl<'a> Sub<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn sub(self, rhs: &TRat) -> TRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn mul(self, rhs: &TRat) -> TRat {
        if self.is_zero() || rhs.is_zero() {
            return TRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return TRat::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd_rec(&self.num, &rhs.den);
        let g2 = gcd_rec(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        TRat::from_coprime(&a * &c, &b * &d)
    }
}

impl Neg for &TRat {
    type Output = TRat;
    fn neg(self) -> TRat {
        TRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for TRat {
    type Output = TRat;
    fn neg(self) -> TRat {
        -&self
    }
}

impl Add for TRat {
    type Output = TRat;
    fn add(self, rhs: TRat) -> TRat {
        &self + &rhs
    }
}

impl Sub for TRat {
    type Output = TRat;
    fn sub(self, rhs: TRat) -> TRat {
        &self - &rhs
    }
}

impl Mul for TRat {
    type Output = TRat;
    fn mul(self, rhs: TRat) -> TRat {
        &self * &rhs
    }
}

impl Zero for TRat {
    fn zero() -> Self {
        TRat::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for TRat {
    fn one() -> Self {
        TRat::one()
    }
}

impl From<TPoly> for TRat {
    fn from(p: TPoly) -> Self {
        TRat::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn d(i: usize, j: usize) -> TPoly {
        TPoly::diff(i, j)
    }

    fn frac(n: TPoly, dd: TPoly) -> TRat {
        TRat::new(n, dd).unwrap()
    }

    fn weight(a: usize) -> TPoly {
        let [i, j] = match a {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        &d(a, i) * &d(a, j)
    }

    #[test]
    fn cancellation() {
        let t0 = TPoly::var(0);
        let t1 = TPoly::var(1);
        let n = &(&t0 * &t0) - &(&t1 * &t1);
        let r = frac(n, d(0, 1));
        assert_eq!(r, TRat::from_poly(&t0 + &t1));
        let two = TPoly::from_int(2);
        assert_eq!(frac(&two * &d(0, 1), &two * &d(0, 1)), TRat::one());
    }

    #[test]
    fn monic_denominator() {
        let r = frac(TPoly::one(), d(1, 0));
        assert_eq!(r.den(), &d(0, 1));
        assert_eq!(r.num(), &TPoly::from_int(-1));
        assert_eq!(r.to_string(), "-1 / (t0 - t1)");
    }

    #[test]
    fn trace_degree_minus_one_part_cancels() {
        // 1/(t0-t1) + (2t1-t0-t2)/((t1-t0)(t1-t2)) + 1/(t2-t1)
        let mid = &(&TPoly::var(1).scale(&rat(2, 1)) - &TPoly::var(0)) - &TPoly::var(2);
        let a = frac(TPoly::one(), d(0, 1));
        let b = frac(mid.clone(), weight(1));
        let c = frac(TPoly::one(), d(2, 1));
        assert!((&(&a + &b) + &c).is_zero());
        // Common-denominator oracle: numerator over (t0-t1)(t1-t2) vanishes.
        let oracle = &(&(&d(1, 2) * &TPoly::one()) - &mid) - &d(0, 1);
        assert!(oracle.is_zero());
    }

    #[test]
    fn additive_and_multiplicative_inverse() {
        let a = frac(TPoly::one(), d(0, 1));
        let b = frac(TPoly::one(), d(1, 0));
        assert!((&a + &b).is_zero());
        let w = TRat::from_poly(weight(0));
        assert_eq!(&w * &w.inv().unwrap(), TRat::one());
    }

    #[test]
    fn inverse_weights_sum_to_zero() {
        let s = (0..3).map(|a| frac(TPoly::one(), weight(a))).fold(TRat::zero(), |acc, x| &acc + &x);
        assert!(s.is_zero());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(TRat::new(TPoly::one(), TPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(TRat::one().checked_div(&TRat::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let pt = [rat(0, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(TRat::from_poly(weight(0)).eval(&pt).unwrap(), rat(2, 1));
        assert_eq!(TRat::one().eval(&pt).unwrap(), rat(1, 1));
        assert_eq!(TRat::from_poly(weight(1)).eval(&pt).unwrap(), rat(-1, 1));
        let bad = [rat(0, 1), rat(1, 1), rat(1, 1)];
        assert_eq!(TRat::one().eval(&bad), Err(Error::CoincidentCoordinates));
        let pole = frac(TPoly::one(), &TPoly::var(0) - &TPoly::from_int(3));
        let pt3 = [rat(3, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(pole.eval(&pt3), Err(Error::Pole));
    }

    #[test]
    fn homogeneous_components() {
        let t0 = TPoly::var(0);
        let a = &TRat::from_poly(t0.clone()) + &frac(TPoly::one(), d(0, 1));
        assert_eq!(a.homogeneous_component(1).unwrap(), TRat::from_poly(t0.clone()));
        assert_eq!(a.homogeneous_component(-1).unwrap(), frac(TPoly::one(), d(0, 1)));
        let w = TRat::from_poly(weight(2));
        assert!(w.homogeneous_component(1).unwrap().is_zero());

        let cube = t0.pow(3);
        let b = frac(&cube + &TPoly::from_int(5), d(0, 1));
        assert_eq!(b.homogeneous_component(2).unwrap(), frac(cube, d(0, 1)));
        let parts = b.homogeneous_parts().unwrap();
        let total = parts.values().fold(TRat::zero(), |acc, x| &acc + x);
        assert_eq!(total, b);

        let inhom = frac(TPoly::one(), &t0 + &TPoly::one());
        assert!(matches!(inhom.homogeneous_component(0), Err(Error::Unsupported(_))));
    }
}
