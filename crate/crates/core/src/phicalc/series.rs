//! Truncated Laurent series in the genus parameter `u`, and the bridge from
//! `phi = 2 sin(u/2)` to `u`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::PhiElem;
use crate::exactring::{BigRat, Field, TRat};
use crate::{Error, Result};

/// Laurent series `sum_k c_k u^k` known exactly for `min_exp <= k <= order`.
/// Coefficients past `order` are unknown, not zero.
#[derive(Clone, PartialEq, Eq)]
pub struct USeries<F> {
    min_exp: i32,
    coeffs: Vec<F>,
    order: i32,
}

impl<F: Field> USeries<F> {
    /// Builds a series from the coefficients of `u^min_exp ..= u^order`.
    pub fn new(min_exp: i32, mut coeffs: Vec<F>, order: i32) -> Self {
        assert!(min_exp <= order, "series must know at least one coefficient");
        coeffs.resize((order - min_exp + 1) as usize, F::zero());
        USeries { min_exp, coeffs, order }
    }

    /// The zero series known through `u^order`.
    pub fn zero(order: i32) -> Self {
        USeries::new(order, vec![F::zero()], order)
    }

    pub fn min_exp(&self) -> i32 {
        self.min_exp
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Exact coefficient of `u^k`; asking past the truncation order is an
    /// error.
    pub fn coeff(&self, k: i32) -> Result<F> {
        if k > self.order {
            return Err(Error::InsufficientPrecision { requested: k as i64, available: self.order as i64 });
        }
        if k < self.min_exp {
            return Ok(F::zero());
        }
        Ok(self.coeffs[(k - self.min_exp) as usize].clone())
    }

    fn get(&self, k: i32) -> F {
        self.coeff(k).unwrap_or_else(|_| F::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let min_exp = self.min_exp.min(other.min_exp).min(order);
        let coeffs = (min_exp..=order).map(|k| self.get(k) + other.get(k)).collect();
        USeries::new(min_exp, coeffs, order)
    }

    pub fn scale(&self, c: &F) -> Self {
        USeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        let min_exp = (self.min_exp + other.min_exp).min(order);
        let len = (order - min_exp + 1) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = self.min_exp + other.min_exp + (i + j) as i32;
                if k > order {
                    break;
                }
                if k < min_exp || b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[(k - min_exp) as usize];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        USeries::new(min_exp, coeffs, order)
    }

    /// Multiplicative inverse of a series whose `u^min_exp` coefficient is
    /// nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let lead = self.coeffs[0].try_inv().ok_or(Error::DivisionByZero)?;
        let n = self.coeffs.len();
        let mut inv: Vec<F> = Vec::with_capacity(n);
        inv.push(lead.clone());
        for k in 1..n {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * inv[k - j].clone();
            }
            inv.push(-(acc * lead.clone()));
        }
        let min_exp = -self.min_exp;
        let order = min_exp + n as i32 - 1;
        Ok(USeries::new(min_exp, inv, order))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = USeries::new(0, vec![F::one()], self.order - self.min_exp);
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let min_exp = self.min_exp.min(order);
        let coeffs = (min_exp..=order).map(|k| self.get(k)).collect();
        USeries::new(min_exp, coeffs, order)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `phi / u = 2 sin(u/2) / u`, known through `u^order`; even powers only.
fn phi_over_u(order: i32) -> USeries<BigRat> {
    let order = order.max(0);
    let coeffs = (0..=order)
        .map(|k| {
            if k % 2 == 1 {
                return BigRat::zero();
            }
            let j = (k / 2) as u32;
            let den = BigInt::from(4u32).pow(j) * factorial(2 * j + 1);
            let sign = if j.is_multiple_of(2) { 1 } else { -1 };
            BigRat::new(BigInt::from(sign), den)
        })
        .collect();
    USeries::new(0, coeffs, order)
}

/// Taylor series of `2 sin(u/2)` through `u^order`.
pub fn phi_expansion(order: i32) -> USeries<BigRat> {
    assert!(order >= 1, "phi expansion needs order >= 1");
    let s = phi_over_u(order - 1);
    USeries::new(1, s.coeffs, order)
}

/// Series of `phi^m` through `u^order`.
pub fn phi_pow_series(m: i32, order: i32) -> USeries<BigRat> {
    if m > order {
        return USeries::zero(order);
    }
    let s = phi_over_u(order - m);
    let p = s.pow(m).expect("phi/u is a unit series");
    USeries::new(m, p.coeffs, order)
}

/// Expands a Laurent polynomial in `phi` as a series in `u` through
/// `u^order`.
pub fn to_useries(e: &PhiElem, order: i32) -> USeries<TRat> {
    let mut acc = USeries::<TRat>::zero(order);
    for (m, c) in e.terms() {
        let s = phi_pow_series(m, order);
        let lifted =
            USeries::new(s.min_exp, s.coeffs.iter().map(|x| TRat::from_rat(x.clone()) * c.clone()).collect(), s.order);
        acc = acc.add(&lifted);
    }
    acc
}

fn fmt_series<F>(s: &USeries<F>, f: &mut fmt::Formatter<'_>, text: impl Fn(&F) -> (String, bool)) -> fmt::Result
where
    F: Field,
{
    let mut first = true;
    for (i, c) in s.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = s.min_exp + i as i32;
        let (t, atomic) = text(c);
        let body = if k == 0 {
            t
        } else {
            let u = if k == 1 { "u".to_string() } else { format!("u^{k}") };
            match t.as_str() {
                "1" => u,
                "-1" => format!("-{u}"),
                _ if atomic => format!("{t}*{u}"),
                _ => format!("({t})*{u}"),
            }
        };
        if first {
            f.write_str(&body)?;
        } else if let Some(rest) = body.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {body}")?;
        }
        first = false;
    }
    if first {
        write!(f, "O(u^{})", s.order + 1)
    } else {
        write!(f, " + O(u^{})", s.order + 1)
    }
}

impl fmt::Display for USeries<BigRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(self, f, |c| (c.to_string(), true))
    }
}

impl fmt::Display for USeries<TRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_series(self, f, |c| (c.to_string(), c.is_polynomial() && c.num().num_terms() <= 1))
    }
}

impl<F: Field> fmt::Debug for USeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("USeries")
            .field("min_exp", &self.min_exp)
            .field("coeffs", &self.coeffs)
            .field("order", &self.order)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    /// Independent oracle: the `u^k` coefficient of `2 sin(u/2)` straight
    /// from the sine series, `(-1)^j / (2^(2j) (2j+1)!)` at `k = 2j+1`.
    fn sine_coeff(k: i32) -> BigRat {
        if k % 2 == 0 {
            return BigRat::zero();
        }
        let j = (k - 1) / 2;
        let mut den = BigInt::one();
        for i in 1..=(k as u32) {
            den *= i;
        }
        den *= BigInt::from(2).pow(k as u32 - 1);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        BigRat::new(BigInt::from(sign), den)
    }

    /// Independent series inversion by solving the triangular system
    /// `sum_j a_j b_{k-j} = delta_k0` with plain rationals.
    fn invert_oracle(a: &[BigRat], n: usize) -> Vec<BigRat> {
        let mut b = vec![BigRat::zero(); n];
        b[0] = a[0].recip();
        for k in 1..n {
            let mut s = BigRat::zero();
            for j in 1..=k.min(a.len() - 1) {
                s += &a[j] * &b[k - j];
            }
            b[k] = -s / &a[0];
        }
        b
    }

    #[test]
    fn phi_taylor_coefficients() {
        let s = phi_expansion(9);
        assert_eq!(s.coeff(1).unwrap(), rat(1, 1));
        assert_eq!(s.coeff(3).unwrap(), rat(-1, 24));
        assert_eq!(s.coeff(5).unwrap(), rat(1, 1920));
        for k in 0..=9 {
            assert_eq!(s.coeff(k).unwrap(), sine_coeff(k));
        }
        assert_eq!(phi_expansion(1).to_string(), "u + O(u^2)");
    }

    #[test]
    fn phi_squared() {
        let s = phi_pow_series(2, 6);
        assert_eq!(s.min_exp(), 2);
        assert_eq!(s.coeff(2).unwrap(), rat(1, 1));
        assert_eq!(s.coeff(4).unwrap(), rat(-1, 12));
        assert_eq!(s.coeff(6).unwrap(), rat(1, 360));
        assert_eq!(phi_pow_series(0, 4).coeff(0).unwrap(), rat(1, 1));
    }

    #[test]
    fn phi_inverse_square_against_oracle() {
        let s = phi_pow_series(-2, 6);
        assert_eq!(s.coeff(-2).unwrap(), rat(1, 1));
        assert_eq!(s.coeff(0).unwrap(), rat(1, 12));
        assert_eq!(s.coeff(2).unwrap(), rat(1, 240));
        assert_eq!(s.coeff(-3).unwrap(), rat(0, 1));
        // phi^2 / u^2 from the sine oracle, inverted independently.
        let sq: Vec<BigRat> =
            (0..=8).map(|k| (0..=k + 2).map(|i| sine_coeff(i) * sine_coeff(k + 2 - i)).sum()).collect();
        let inv = invert_oracle(&sq, 9);
        for k in -2..=6 {
            assert_eq!(s.coeff(k).unwrap(), inv[(k + 2) as usize], "u^{k}");
        }
        assert_eq!(s.to_string(), "u^-2 + 1/12 + 1/240*u^2 + 1/6048*u^4 + 1/172800*u^6 + O(u^7)");
    }

    #[test]
    fn truncation_is_enforced() {
        let s = phi_pow_series(-2, 2);
        assert_eq!(s.coeff(3), Err(Error::InsufficientPrecision { requested: 3, available: 2 }));
        assert_eq!(s.to_string(), "u^-2 + 1/12 + 1/240*u^2 + O(u^3)");
    }

    #[test]
    fn to_useries_examples() {
        let three = to_useries(&PhiElem::from_int(3), 4);
        assert_eq!(three.coeff(0).unwrap(), TRat::from_int(3));
        assert!(three.coeff(2).unwrap().is_zero());

        let nine = to_useries(&PhiElem::term(TRat::from_int(9), 2), 6);
        assert_eq!(nine.coeff(2).unwrap(), TRat::from_int(9));
        assert_eq!(nine.coeff(4).unwrap(), TRat::from_rat(rat(-3, 4)));

        let inv = to_useries(&PhiElem::phi_pow(-2), 4);
        assert_eq!(inv.coeff(0).unwrap(), TRat::from_rat(rat(1, 12)));
    }

    #[test]
    fn high_power_beyond_order_is_zero() {
        let s = phi_pow_series(8, 4);
        assert!(s.coeff(4).unwrap().is_zero());
    }
}
