//! Structural properties of `Z` on a random parameter sweep, and the genus
//! tables of the simplest class.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::numeric::{numeric_partition_function, random_point, NumLaurent};
use super::{CheckReport, Tally};
use crate::exactring::{rat, BigRat, TRat};
use crate::partition::{PartitionEngine, SectionClassIndex, SpaceParams};
use crate::phicalc::PhiElem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertySweep {
    pub tuples: usize,
    pub points_per_tuple: usize,
    pub g_max: u32,
    pub k_max: i64,
}

impl Default for PropertySweep {
    fn default() -> Self {
        PropertySweep { tuples: 50, points_per_tuple: 20, g_max: 5, k_max: 3 }
    }
}

fn sample_tuples(rng: &mut ChaCha8Rng, s: &PropertySweep) -> Vec<SpaceParams> {
    let grid = (s.g_max as usize + 1) * (2 * s.k_max as usize + 1).pow(2);
    let want = s.tuples.min(grid);
    let mut seen = BTreeSet::new();
    while seen.len() < want {
        seen.insert(SpaceParams::new(
            rng.gen_range(0..=s.g_max),
            rng.gen_range(-s.k_max..=s.k_max),
            rng.gen_range(-s.k_max..=s.k_max),
        ));
    }
    seen.into_iter().collect()
}

/// Mod-3 purity, negative-degree vanishing, reconstruction from the
/// support, the level-swap symmetry, t-independence of Calabi-Yau
/// components, and numeric agreement, on a seeded random sweep.
pub fn verify_grading_properties(seed: u64, s: &PropertySweep) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples = sample_tuples(&mut rng, s);
    let engine = PartitionEngine::new();

    let mut purity = Tally::new("grading.purity", "every homogeneous degree is 2g-2-k1-k2 mod 3");
    let mut vanish = Tally::new("grading.vanishing", "components of negative t-degree vanish");
    let mut recon = Tally::new("grading.reconstruction", "class components sum to Z");
    let mut sym = Tally::new("grading.symmetry", "Z(g|k2,k1) is Z(g|k1,k2) with t1 and t2 swapped");
    let mut cy = Tally::new("grading.cy-t-free", "Calabi-Yau components are independent of t");
    let mut num = Tally::new("grading.numeric", "symbolic Z agrees with the numeric oracle at random points");

    for p in tuples {
        let z = match engine.compute_z(p) {
            Ok(z) => z,
            Err(e) => {
                purity.error(p, e);
                continue;
            }
        };
        let mut degrees = BTreeSet::new();
        for (_, c) in z.terms() {
            match c.homogeneous_parts() {
                Ok(parts) => degrees.extend(parts.into_keys()),
                Err(e) => purity.error(p, e),
            }
        }
        let bad: Vec<i64> = degrees.iter().copied().filter(|d| (p.base_degree() - d).rem_euclid(3) != 0).collect();
        purity.holds(p, bad.is_empty(), || format!("degrees {bad:?}"));

        let negative: Vec<i64> = degrees.iter().copied().filter(|&d| d < 0).collect();
        vanish.holds(p, negative.is_empty(), || format!("degrees {negative:?}"));
        // the three classes just past the vanishing threshold
        let first = p.base_degree().div_euclid(3) + 1;
        for n in first..first + 3 {
            vanish.eq_result(
                format!("{p} n={n}"),
                &PhiElem::zero(),
                engine.class_component(p, SectionClassIndex::new(n)),
            );
        }

        match engine.support(p) {
            Ok(support) => {
                let sum =
                    support.iter().try_fold(PhiElem::zero(), |acc, &c| engine.class_component(p, c).map(|x| &acc + &x));
                recon.eq_result(p, &z, sum);
            }
            Err(e) => recon.error(p, e),
        }

        sym.eq_result(p, &z.permute_vars([0, 2, 1]), engine.compute_z(p.swapped()));

        if p.base_degree().rem_euclid(3) == 0 {
            let c = SectionClassIndex::new(p.base_degree().div_euclid(3));
            match engine.class_component(p, c) {
                Ok(x) => cy.holds(format!("{p} n={}", c.n), x.is_t_free(), || x.to_string()),
                Err(e) => cy.error(p, e),
            }
        }

        for _ in 0..s.points_per_tuple {
            let point = random_point(&mut rng);
            let params = format!("{p} at ({}, {}, {})", point[0], point[1], point[2]);
            let symbolic = z.eval_t(&point).map(|l| NumLaurent::from_evaluated(&l));
            match (symbolic, numeric_partition_function(&point, p.g, p.k1, p.k2)) {
                (Ok(a), Ok(b)) => num.eq(params, &b, &a),
                (Err(e), _) | (_, Err(e)) => num.error(params, e),
            }
        }
    }
    let mut out: Vec<CheckReport> = [purity, vanish, recon, sym, num].into_iter().map(Tally::finish).collect();
    // a sweep without Calabi-Yau tuples has nothing to check
    if cy.cases > 0 {
        out.push(cy.finish());
    }
    out
}

/// Coefficients of `u^-2, u^0, ..., u^(2 h_max - 2)` in `(2 sin(u/2))^-2`,
/// from `(2 sin(u/2))^2 = 2 - 2 cos u` and power-series inversion.
pub fn phi_inverse_square_oracle(h_max: u32) -> Vec<BigRat> {
    let len = h_max as usize + 1;
    // (2 - 2 cos u) / u^2 = sum_{j>=0} s_j u^(2j), s_j = 2 (-1)^j / (2j+2)!
    let s: Vec<BigRat> = (0..len)
        .map(|j| {
            let fact = (1..=2 * j as i64 + 2).fold(BigRat::one(), |acc, i| acc * rat(i, 1));
            let sign = if j % 2 == 0 { 2 } else { -2 };
            rat(sign, 1) / fact
        })
        .collect();
    // r = 1/s, with r_0 = 1/s_0 and sum_{i<=j} s_i r_(j-i) = 0
    let mut r: Vec<BigRat> = Vec::with_capacity(len);
    for j in 0..len {
        if j == 0 {
            r.push(BigRat::one() / s[0].clone());
            continue;
        }
        let acc = (1..=j).fold(BigRat::zero(), |acc, i| acc + s[i].clone() * r[j - i].clone());
        r.push(-acc / s[0].clone());
    }
    r
}

/// Genus expansion of `Z_{beta0-f}(0|1,0)` against the oracle, and
/// rationality of every invariant of a Calabi-Yau class.
pub fn verify_genus_tables(h_max: u32) -> CheckReport {
    let engine = PartitionEngine::new();
    let mut t =
        Tally::new("genus-tables", "genus invariants match series inversion; Calabi-Yau invariants are rational");
    let oracle = phi_inverse_square_oracle(h_max);
    let p = SpaceParams::new(0, 1, 0);
    match engine.genus_expansion(p, SectionClassIndex::new(-1), h_max, 2 * h_max as i32) {
        Ok(rows) => {
            for (h, v) in rows {
                t.eq(format!("{p} n=-1 h={h}"), &TRat::from_rat(oracle[h as usize].clone()), &v);
            }
        }
        Err(e) => t.error(p, e),
    }
    for g in 0..=3u32 {
        for k1 in -2..=2i64 {
            for k2 in -2..=2i64 {
                let p = SpaceParams::new(g, k1, k2);
                if p.base_degree().rem_euclid(3) != 0 {
                    continue;
                }
                let c = SectionClassIndex::new(p.base_degree().div_euclid(3));
                match engine.genus_expansion(p, c, 3, 6) {
                    Ok(rows) => {
                        for (h, v) in rows {
                            t.holds(format!("{p} n={} h={h}", c.n), v.as_constant().is_some(), || v.to_string());
                        }
                    }
                    Err(e) => t.error(p, e),
                }
            }
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_values() {
        let r = phi_inverse_square_oracle(4);
        assert_eq!(r[..4], [rat(1, 1), rat(1, 12), rat(1, 240), rat(1, 6048)]);
        assert_eq!(r[4], rat(1, 172800));
    }

    #[test]
    fn small_sweep_passes() {
        let s = PropertySweep { tuples: 6, points_per_tuple: 2, g_max: 2, k_max: 2 };
        for r in verify_grading_properties(3, &s) {
            assert!(r.passed, "{} {:?}", r.id, r.counterexample);
        }
    }

    #[test]
    fn genus_tables_pass() {
        let r = verify_genus_tables(4);
        assert!(r.passed, "{:?}", r.counterexample);
    }
}
