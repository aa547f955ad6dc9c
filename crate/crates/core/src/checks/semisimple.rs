//! Semisimplicity of the level `(0,0)` Frobenius algebra at `u = 0`.

use super::{CheckReport, Tally};
use crate::exactring::TRat;
use crate::operators::{build_pants, weight};

/// The `u = 0` structure constants `m_ab^c` are the `phi^0` coefficients of
/// the pants with its last slot raised. They must be `T(x_a)` when
/// `a = b = c` and zero otherwise, so that `e_i / T(x_i)` are orthogonal
/// idempotents.
pub fn verify_semisimplicity() -> CheckReport {
    let mut t = Tally::new("semisimple", "u=0 structure constants are diagonal and e_i/T(x_i) idempotent");
    let raised = match build_pants().total().raise_index(2) {
        Ok(r) => r,
        Err(e) => {
            t.error("raise pants", e);
            return t.finish();
        }
    };
    let negative = raised.entries().iter().find_map(|x| x.min_exp().filter(|&m| m < 0));
    t.holds("no negative phi powers", negative.is_none(), || format!("raised pants has phi^{}", negative.unwrap_or(0)));

    let m = |a: usize, b: usize, c: usize| raised.get(&[a, b, c]).coeff(0);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let want = if a == b && b == c { TRat::from_poly(weight(a)) } else { TRat::zero() };
                t.eq(format!("m_{a}{b}^{c}"), &want, &m(a, b, c));
            }
        }
    }

    // (e_i/T_i)(e_j/T_j) = sum_c m_ij^c e_c / (T_i T_j) must equal delta_ij e_i/T_i
    for i in 0..3 {
        for j in 0..3 {
            let scale = (TRat::from_poly(weight(i)) * TRat::from_poly(weight(j))).inv().expect("nonzero");
            for c in 0..3 {
                let got = &m(i, j, c) * &scale;
                let want =
                    if i == j && c == i { TRat::from_poly(weight(i)).inv().expect("nonzero") } else { TRat::zero() };
                t.eq(format!("(e{i}/T{i})(e{j}/T{j}) at e{c}"), &want, &got);
            }
        }
    }
    t.finish()
}
