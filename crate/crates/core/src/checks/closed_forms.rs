//! Closed-form partition functions for special classes, and sweeps
//! comparing them with the extracted class components.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CheckReport, Tally};
use crate::exactring::{TPoly, TRat};
use crate::partition::{virtual_dim, PartitionEngine, SectionClassIndex, SpaceParams};
use crate::phicalc::PhiElem;
use crate::Result;

/// `(ti - tj)^e`, with negative `e` allowed.
fn d(i: usize, j: usize, e: i64) -> Result<TRat> {
    TRat::from_poly(TPoly::diff(i, j)).pow(e)
}

fn phi_times(c: TRat, e: i64) -> PhiElem {
    PhiElem::term(c, e as i32)
}

/// `3^g phi^(2g-2)`.
pub fn calabi_yau_closed_form(g: u32) -> PhiElem {
    let three = num_traits::pow(crate::exactring::rat(3, 1), g as usize);
    PhiElem::term(TRat::from_rat(three), 2 * g as i32 - 2)
}

/// Class `beta0 - k1 f`, level `(k1, -k2)`, for `k1 > 0`, `k2 >= 0`.
pub fn first_shift_closed_form(g: u32, k1: i64, k2: i64) -> Result<PhiElem> {
    let g = g as i64;
    let c = &d(1, 0, g + k1 - 1)? * &d(1, 2, g + k1 + k2 - 1)?;
    Ok(phi_times(c, -2 * k1 - k2))
}

/// Class `beta0 - k2 f`, level `(-k1, k2)`, for `k1 >= 0`, `k2 > 0`.
pub fn second_shift_closed_form(g: u32, k1: i64, k2: i64) -> Result<PhiElem> {
    let g = g as i64;
    let c = &d(2, 0, g + k2 - 1)? * &d(2, 1, g + k1 + k2 - 1)?;
    Ok(phi_times(c, -2 * k2 - k1))
}

/// Class `beta0 - k f`, level `(k, k)`, for `k > 0`.
pub fn equal_levels_closed_form(g: u32, k: i64) -> Result<PhiElem> {
    let g = g as i64;
    let c = &(&d(1, 0, g + k - 1)? * &d(1, 2, g - 1)?) + &(&d(2, 0, g + k - 1)? * &d(2, 1, g - 1)?);
    Ok(phi_times(c, -k))
}

/// Class `beta0`, level `(-k1, -k2)`, for `k1, k2 >= 0`. The `phi`
/// exponent is `-(k1 + k2)`, as forced by the level annihilation operators.
pub fn negative_levels_closed_form(g: u32, k1: i64, k2: i64) -> Result<PhiElem> {
    let g = g as i64;
    let c = match (k1 > 0, k2 > 0) {
        (true, true) => &d(0, 1, g + k1 - 1)? * &d(0, 2, g + k2 - 1)?,
        (true, false) => &(&d(0, 1, g + k1 - 1)? * &d(0, 2, g - 1)?) + &(&d(2, 0, g - 1)? * &d(2, 1, g + k1 - 1)?),
        (false, true) => &(&d(0, 1, g - 1)? * &d(0, 2, g + k2 - 1)?) + &(&d(1, 0, g - 1)? * &d(1, 2, g + k2 - 1)?),
        (false, false) => {
            let mut acc = TRat::zero();
            for a in 0..3 {
                let others: Vec<usize> = (0..3).filter(|&j| j != a).collect();
                acc = &acc + &(&d(a, others[0], g - 1)? * &d(a, others[1], g - 1)?);
            }
            acc
        }
    };
    Ok(phi_times(c, -(k1 + k2)))
}

/// The largest `n` with `3n <= 2g - 2`, level `(0, 0)`, `g >= 1`.
pub fn top_class(g: u32) -> i64 {
    (2 * g as i64 - 2).div_euclid(3)
}

/// Class `beta0 + n f` with `n = top_class(g)`, level `(0, 0)`.
pub fn top_class_closed_form(g: u32) -> PhiElem {
    match g % 3 {
        0 => PhiElem::zero(),
        1 => calabi_yau_closed_form(g),
        _ => {
            let q = crate::parse::parse_trat("t0^2+t1^2+t2^2-t0*t1-t0*t2-t1*t2").expect("literal");
            let coeff =
                num_traits::pow(crate::exactring::rat(3, 1), g as usize - 2) * crate::exactring::rat(g as i64 - 1, 1);
            PhiElem::term(q.scale(&coeff), 2 * g as i32 - 4)
        }
    }
}

/// For `g <= g_max`, `0 <= k <= k_max` with `3 | 2g - 2 - k`, the
/// Calabi-Yau component of `Z(g|0,k)` is `3^g phi^(2g-2)`.
pub fn verify_calabi_yau(g_max: u32, k_max: i64) -> CheckReport {
    let engine = PartitionEngine::new();
    let mut tally = Tally::new("cy.sweep", "Calabi-Yau class component equals 3^g phi^(2g-2)");
    for g in 0..=g_max {
        for k in 0..=k_max {
            let deg = 2 * g as i64 - 2 - k;
            if deg.rem_euclid(3) != 0 {
                continue;
            }
            let p = SpaceParams::new(g, 0, k);
            let c = SectionClassIndex::new(deg.div_euclid(3));
            tally.eq_result(format!("{p} n={}", c.n), &calabi_yau_closed_form(g), engine.class_component(p, c));
        }
    }
    tally.finish()
}

/// Sweep bounds for the special-case closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialRanges {
    pub g_max: u32,
    pub k_max: i64,
    pub top_class_g_max: u32,
}

impl Default for SpecialRanges {
    fn default() -> Self {
        SpecialRanges { g_max: 5, k_max: 4, top_class_g_max: 8 }
    }
}

/// One case of a special-case sweep: parameters, class and closed form.
type Case = (SpaceParams, SectionClassIndex, Result<PhiElem>);

fn cases(kind: u8, r: &SpecialRanges) -> Vec<Case> {
    let mut out = Vec::new();
    let n = SectionClassIndex::new;
    for g in 0..=r.g_max {
        match kind {
            1 => {
                for k1 in 1..=r.k_max {
                    for k2 in 0..=r.k_max {
                        out.push((SpaceParams::new(g, k1, -k2), n(-k1), first_shift_closed_form(g, k1, k2)));
                    }
                }
            }
            2 => {
                for k1 in 0..=r.k_max {
                    for k2 in 1..=r.k_max {
                        out.push((SpaceParams::new(g, -k1, k2), n(-k2), second_shift_closed_form(g, k1, k2)));
                    }
                }
            }
            3 => {
                for k in 1..=r.k_max {
                    out.push((SpaceParams::new(g, k, k), n(-k), equal_levels_closed_form(g, k)));
                }
            }
            _ => {
                for k1 in 0..=r.k_max {
                    for k2 in 0..=r.k_max {
                        out.push((SpaceParams::new(g, -k1, -k2), n(0), negative_levels_closed_form(g, k1, k2)));
                    }
                }
            }
        }
    }
    out
}

const SWEEPS: [(&str, &str); 4] = [
    ("special.first-shift", "class beta0-k1f, level (k1,-k2)"),
    ("special.second-shift", "class beta0-k2f, level (-k1,k2)"),
    ("special.equal-levels", "class beta0-kf, level (k,k)"),
    ("special.negative-levels", "class beta0, level (-k1,-k2)"),
];

/// Each special-case closed form against the extracted component, plus the
/// top-class formula at level `(0,0)` and the agreement of all closed forms
/// with the Calabi-Yau formula where their classes are Calabi-Yau.
pub fn verify_special_cases(r: &SpecialRanges) -> Vec<CheckReport> {
    let engine = PartitionEngine::new();
    let mut reports: Vec<CheckReport> = (1..=4u8)
        .into_par_iter()
        .map(|t| {
            let (id, what) = SWEEPS[t as usize - 1];
            let mut tally = Tally::new(id, what);
            for (p, c, closed) in cases(t, r) {
                let params = format!("{p} n={}", c.n);
                match closed {
                    Ok(want) => tally.eq_result(params, &want, engine.class_component(p, c)),
                    Err(e) => tally.error(params, e),
                }
            }
            tally.finish()
        })
        .collect();

    let mut top =
        Tally::new("special.top-class", "top class at level (0,0): 0, 3^g phi^(2g-2), 3^(g-2)(g-1)Q phi^(2g-4)");
    for g in 1..=r.top_class_g_max {
        let p = SpaceParams::new(g, 0, 0);
        let c = SectionClassIndex::new(top_class(g));
        top.eq_result(format!("{p} n={}", c.n), &top_class_closed_form(g), engine.class_component(p, c));
    }
    reports.push(top.finish());

    let mut overlap =
        Tally::new("special.overlap", "closed forms agree with the Calabi-Yau formula on Calabi-Yau classes");
    for t in 1..=4u8 {
        for (p, c, closed) in cases(t, r) {
            if virtual_dim(p, c) != 0 {
                continue;
            }
            let params = format!("{} {p} n={}", SWEEPS[t as usize - 1].0, c.n);
            overlap.eq_result(params, &calabi_yau_closed_form(p.g), closed);
        }
    }
    for g in (1..=r.top_class_g_max).filter(|g| g % 3 == 1) {
        overlap.eq(format!("top class g={g}"), &calabi_yau_closed_form(g), &top_class_closed_form(g));
    }
    reports.push(overlap.finish());
    reports
}
