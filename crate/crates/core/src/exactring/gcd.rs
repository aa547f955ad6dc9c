//! Multivariate gcd over Q by content / primitive-part recursion with a
//! primitive pseudo-remainder sequence in the main variable.

use num_traits::Zero;

use super::{rat, BigRat, Monomial, Point, TPoly};
use crate::{Error, Result};

/// Greatest common divisor, normalized monic in graded-lex order.
///
/// `gcd(p, 0)` is `p` made monic; both arguments zero is an error.
pub fn poly_gcd(p: &TPoly, q: &TPoly) -> Result<TPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    Ok(gcd_rec(p, q).monic())
}

pub(crate) fn gcd_rec(p: &TPoly, q: &TPoly) -> TPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return TPoly::one();
    }
    let (mp, mq) = (monomial_gcd(p), monomial_gcd(q));
    let shared = TPoly::monomial(mp.meet(&mq), rat(1, 1));
    if p.num_terms() == 1 || q.num_terms() == 1 {
        return shared;
    }
    if !mp.is_one() || !mq.is_one() {
        // the cofactors have no monomial factor left
        let strip = |x: &TPoly, m: Monomial| x.div_exact(&TPoly::monomial(m, rat(1, 1))).expect("monomial divides");
        return (&shared * &gcd_rec(&strip(p, mp), &strip(q, mq))).monic();
    }
    if coprime_by_specialization(p, q) {
        return TPoly::one();
    }
    let Some(var) = (0..3).find(|&v| p.degree_in(v) > 0 || q.degree_in(v) > 0) else {
        return TPoly::one();
    };

    let cont_p = content(p, var);
    let cont_q = content(q, var);
    let cont = gcd_rec(&cont_p, &cont_q);

    let pp_p = p.div_exact(&cont_p).expect("content divides polynomial");
    let pp_q = q.div_exact(&cont_q).expect("content divides polynomial");

    let g = if pp_p.degree_in(var) == 0 || pp_q.degree_in(var) == 0 {
        TPoly::one()
    } else {
        primitive_prs(pp_p, pp_q, var)
    };
    (&cont * &g).monic()
}

/// The largest monomial dividing every term.
fn monomial_gcd(p: &TPoly) -> Monomial {
    p.terms().fold(None::<Monomial>, |acc, (m, _)| Some(acc.map_or(*m, |a| a.meet(m)))).expect("nonzero")
}

impl Monomial {
    fn meet(&self, o: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i].min(o.0[i])))
    }
}

/// Degree of the gcd of two univariate polynomials over `Q`, coefficients
/// in ascending order with nonzero leading entries.
fn univariate_gcd_degree(mut a: Vec<BigRat>, mut b: Vec<BigRat>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lead = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().expect("nonempty").clone() / &lead;
            for (j, bj) in b.iter().enumerate() {
                a[j + shift] -= &f * bj;
            }
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sound test for coprimality. Specializing every variable but one at a
/// point where both leading coefficients survive can only raise the degree
/// of the gcd in the remaining variable, so a constant univariate gcd for
/// every variable proves the gcd constant. `false` means inconclusive.
fn coprime_by_specialization(p: &TPoly, q: &TPoly) -> bool {
    const POINTS: [[i64; 3]; 3] = [[3, 7, 11], [-5, 2, 13], [17, -4, 6]];
    (0..3).all(|var| {
        if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
            return true;
        }
        let (pc, qc) = (p.coeffs_in(var), q.coeffs_in(var));
        POINTS.iter().any(|pt| {
            let point: Point = pt.map(|x| rat(x, 1));
            let image = |cs: &[TPoly]| cs.iter().map(|c| c.eval(&point)).collect::<Vec<BigRat>>();
            let (a, b) = (image(&pc), image(&qc));
            let survives = |v: &[BigRat]| v.last().is_some_and(|x| !x.is_zero());
            survives(&a) && survives(&b) && univariate_gcd_degree(a, b) == 0
        })
    })
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `t_var`.
fn content(p: &TPoly, var: usize) -> TPoly {
    let mut acc = TPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &TPoly, var: usize) -> TPoly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides polynomial").monic()
}

fn primitive_prs(a: TPoly, b: TPoly, var: usize) -> TPoly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if r.degree_in(var) == 0 {
            return TPoly::one();
        }
        a = b;
        b = primitive_part(&r, var);
    }
}

/// A scalar multiple of the pseudo-remainder of `a` by `b` in `t_var`
/// (multiplying through by powers of `lc(b)`).
fn pseudo_rem(a: &TPoly, b: &TPoly, var: usize) -> TPoly {
    let bc = b.coeffs_in(var);
    let db = bc.len() - 1;
    let lcb = &bc[db];
    let mut r = a.coeffs_in(var);
    while r.len() > db && !r.iter().all(TPoly::is_zero) {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (j, bj) in bc.iter().enumerate() {
            let term = &lcr * bj;
            r[j + dr - db] -= &term;
        }
        while r.last().is_some_and(TPoly::is_zero) {
            r.pop();
        }
    }
    TPoly::from_coeffs_in(var, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(i: usize, j: usize) -> TPoly {
        TPoly::diff(i, j)
    }

    #[test]
    fn common_linear_factor() {
        let p = &d(0, 1) * &d(0, 1);
        let q = &d(0, 1) * &d(0, 2);
        assert_eq!(poly_gcd(&p, &q).unwrap(), d(0, 1));
    }

    #[test]
    fn gcd_with_one() {
        let p = &d(0, 1) * &d(1, 2);
        assert_eq!(poly_gcd(&p, &TPoly::one()).unwrap(), TPoly::one());
    }

    #[test]
    fn difference_of_squares() {
        let t0 = TPoly::var(0);
        let t1 = TPoly::var(1);
        let p = &(&t0 * &t0) - &(&t1 * &t1);
        let q = &(&t0 * &t0) - &(&t0 * &t1);
        // Factorization oracle: p = (t0-t1)(t0+t1), q = t0 (t0-t1).
        assert_eq!(poly_gcd(&p, &q).unwrap(), d(0, 1));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let p = d(1, 0).scale(&crate::exactring::rat(3, 1));
        assert_eq!(poly_gcd(&p, &TPoly::zero()).unwrap(), d(0, 1));
        assert_eq!(poly_gcd(&TPoly::zero(), &TPoly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn monomial_operands() {
        let t = |i| TPoly::var(i);
        let p = &(&t(0) * &t(0)) * &(&t(1) + &t(2));
        assert_eq!(poly_gcd(&p, &(&t(0) * &t(1))).unwrap(), t(0));
        assert_eq!(poly_gcd(&(&t(0) * &t(2)), &(&t(1) * &t(2))).unwrap(), t(2));
    }

    #[test]
    fn specialization_is_only_a_shortcut() {
        // a shared factor must never be reported coprime
        let f = &(&TPoly::var(0) * &TPoly::var(1)) + &TPoly::from_int(5);
        let p = &f * &d(1, 2);
        let q = &f * &(&TPoly::var(2) + &TPoly::from_int(3));
        assert!(!coprime_by_specialization(&p, &q));
        assert_eq!(poly_gcd(&p, &q).unwrap(), f.monic());
        assert!(coprime_by_specialization(&d(0, 1), &d(1, 2)));
    }

    #[test]
    fn products_of_weights() {
        let a = &(&d(0, 1) * &d(0, 2)) * &(&d(1, 2) * &d(1, 2));
        let b = &(&d(1, 2) * &d(0, 2)) * &(&TPoly::var(0) + &TPoly::from_int(1));
        assert_eq!(poly_gcd(&a, &b).unwrap(), (&d(1, 2) * &d(0, 2)).monic());
    }
}
