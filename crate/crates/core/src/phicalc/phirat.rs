use super::PhiElem;
use crate::{Error, Result};

/// A quotient of two Laurent polynomials in `phi`, kept only until it can be
/// reduced back to a single Laurent polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiRat {
    num: PhiElem,
    den: PhiElem,
}

impl PhiRat {
    pub fn new(num: PhiElem, den: PhiElem) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PhiRat { num, den })
    }

    pub fn num(&self) -> &PhiElem {
        &self.num
    }

    pub fn den(&self) -> &PhiElem {
        &self.den
    }

    /// The exact quotient; a nonzero remainder means the caller's algebra
    /// was inconsistent.
    pub fn reduce(&self) -> Result<PhiElem> {
        self.num.div_exact(&self.den)
    }
}
