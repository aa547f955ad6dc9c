use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::phicalc::PhiElem;

/// Commutative ring interface for matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A dense 3x3 matrix indexed by the basis labels.
#[derive(Clone, PartialEq)]
pub struct Mat3<R> {
    rows: [[R; 3]; 3],
}

/// A tube in matrix form: first index raised, second lowered.
pub type Op3 = Mat3<PhiElem>;

impl<R: Ring> Mat3<R> {
    pub fn from_fn(f: impl Fn(usize, usize) -> R) -> Self {
        Mat3 { rows: std::array::from_fn(|a| std::array::from_fn(|b| f(a, b))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| R::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|a, b| if a == b { R::one() } else { R::zero() })
    }

    pub fn diag(d: [R; 3]) -> Self {
        Self::from_fn(|a, b| if a == b { d[a].clone() } else { R::zero() })
    }

    pub fn get(&self, a: usize, b: usize) -> &R {
        &self.rows[a][b]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat3<S> {
        Mat3::from_fn(|a, b| f(&self.rows[a][b]))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|a, b| self.rows[b][a].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(|a, b| self.rows[a][b].clone() * c.clone())
    }

    pub fn trace(&self) -> R {
        self.rows[0][0].clone() + self.rows[1][1].clone() + self.rows[2][2].clone()
    }

    pub fn det(&self) -> R {
        let m = &self.rows;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
        };
        m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2) + m[0][2].clone() * minor(1, 2, 0, 1)
    }

    /// Classical adjugate, so that `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.rows;
        Self::from_fn(|a, b| {
            // cofactor of entry (b, a)
            let rows: Vec<usize> = (0..3).filter(|&r| r != b).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != a).collect();
            let v = m[rows[0]][cols[0]].clone() * m[rows[1]][cols[1]].clone()
                - m[rows[0]][cols[1]].clone() * m[rows[1]][cols[0]].clone();
            if (a + b) % 2 == 0 {
                v
            } else {
                -v
            }
        })
    }

    /// Non-negative power by binary exponentiation.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::identity();
        let mut base = self.clone();
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

    /// `P m P` for the permutation matrix `P` sending label `a` to `perm[a]`.
    pub fn permute_labels(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for a in 0..3 {
            for b in 0..3 {
                out.rows[perm[a]][perm[b]] = self.rows[a][b].clone();
            }
        }
        out
    }
}

impl Op3 {
    pub fn permute_vars(&self, perm: [usize; 3]) -> Op3 {
        self.map(|e| e.permute_vars(perm))
    }
}

impl<R: Ring> Add for &Mat3<R> {
    type Output = Mat3<R>;
    fn add(self, rhs: &Mat3<R>) -> Mat3<R> {
        Mat3::from_fn(|a, b| self.rows[a][b].clone() + rhs.rows[a][b].clone())
    }
}

impl<R: Ring> Sub for &Mat3<R> {
    type Output = Mat3<R>;
    fn sub(self, rhs: &Mat3<R>) -> Mat3<R> {
        Mat3::from_fn(|a, b| self.rows[a][b].clone() - rhs.rows[a][b].clone())
    }
}

impl<R: Ring> Mul for &Mat3<R> {
    type Output = Mat3<R>;
    fn mul(self, rhs: &Mat3<R>) -> Mat3<R> {
        Mat3::from_fn(|a, b| {
            (0..3).fold(R::zero(), |acc, c| {
                let x = &self.rows[a][c];
                let y = &rhs.rows[c][b];
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc + x.clone() * y.clone()
                }
            })
        })
    }
}

impl<R: Ring> Add for Mat3<R> {
    type Output = Mat3<R>;
    fn add(self, rhs: Mat3<R>) -> Mat3<R> {
        &self + &rhs
    }
}

impl<R: Ring> Mul for Mat3<R> {
    type Output = Mat3<R>;
    fn mul(self, rhs: Mat3<R>) -> Mat3<R> {
        &self * &rhs
    }
}

impl<R: Ring> fmt::Debug for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if a < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
