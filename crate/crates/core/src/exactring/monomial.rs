use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of `t0^e0 * t1^e1 * t2^e2`.
///
/// Ordered graded-lexicographically with `t0 > t1 > t2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for (slot, (a, b)) in e.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *slot = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Monomial {
        let mut e = [0; 3];
        for i in 0..3 {
            e[perm[i]] = self.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{i}")?;
            } else {
                write!(f, "t{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let t0 = Monomial([1, 0, 0]);
        let t1 = Monomial([0, 1, 0]);
        let t2sq = Monomial([0, 0, 2]);
        let t0t1 = Monomial([1, 1, 0]);
        assert!(t0 > t1);
        assert!(t2sq > t0);
        assert!(Monomial([2, 0, 0]) > t0t1);
        assert!(t0t1 > Monomial([1, 0, 1]));
        assert!(Monomial([1, 0, 1]) > Monomial([0, 2, 0]));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial([1, 1, 0]).to_string(), "t0*t1");
        assert_eq!(Monomial([0, 0, 3]).to_string(), "t2^3");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
