//! Re-derivation of the generator data by gluing, and the matrix identities
//! used in the closed-form proofs.

use super::{CheckReport, Tally};
use crate::exactring::{rat, TPoly, TRat};
use crate::gluing::{closed_word, contract_refined, evaluate_word, handle_word, mat_power, trace_formula};
use crate::operators::{
    build_cap, build_pants, build_tube, operator, weight, ClassRefined, Level, Op3, OpName, RelTensor,
};
use crate::parse::{parse_phi_elem, parse_trat};
use crate::partition::{PartitionEngine, SectionClassIndex, SpaceParams};
use crate::phicalc::PhiElem;

fn pe(s: &str) -> PhiElem {
    parse_phi_elem(s).expect("literal parses")
}

fn tw(a: usize) -> TRat {
    TRat::from_poly(weight(a))
}

fn cap(l: Level) -> ClassRefined {
    build_cap(l).expect("basic level")
}

fn tube(l: Level) -> ClassRefined {
    build_tube(l).expect("basic level")
}

fn op(n: OpName) -> &'static Op3 {
    operator(n)
}

fn ones() -> Op3 {
    Op3::from_fn(|_, _| PhiElem::one())
}

/// Compares a gluing result with the expected class-refined tensor.
fn glue_eq(tally: &mut Tally, what: &str, expected: &ClassRefined, actual: crate::Result<ClassRefined>) {
    tally.eq_result(what, expected, actual);
}

pub fn verify_gluing_derivations() -> Vec<CheckReport> {
    let pants = build_pants();
    let mut out = Vec::new();

    // Capping one leg of the pants produces each tube.
    let mut t = Tally::new("gluing.cap-pants", "a cap glued to the pants gives the tube of the same level");
    for l in [(0, 0), (0, -1), (-1, 0), (0, 1), (1, 0)] {
        glue_eq(&mut t, &format!("cap{l:?} o pants"), &tube(l), contract_refined(&cap(l), 0, &pants, 0));
    }
    out.push(t.finish());

    // Opposite levels cancel; the unit tube is neutral.
    let mut t = Tally::new("gluing.tube-tube", "tube(l) o tube(-l) = tube(0,0) class by class");
    for (a, b) in [((0, -1), (0, 1)), ((0, 1), (0, -1)), ((-1, 0), (1, 0)), ((1, 0), (-1, 0))] {
        glue_eq(&mut t, &format!("tube{a:?} o tube{b:?}"), &tube((0, 0)), contract_refined(&tube(a), 1, &tube(b), 0));
    }
    for l in [(0, -1), (-1, 0), (0, 1), (1, 0)] {
        glue_eq(&mut t, &format!("tube(0,0) o tube{l:?}"), &tube(l), contract_refined(&tube((0, 0)), 1, &tube(l), 0));
    }
    out.push(t.finish());

    let mut t = Tally::new("gluing.cap-tube", "a cap glued to a tube gives the cap of the summed level");
    for (c, l, want) in [
        ((0, 0), (0, 1), (0, 1)),
        ((0, 0), (1, 0), (1, 0)),
        ((0, 0), (0, -1), (0, -1)),
        ((0, 0), (-1, 0), (-1, 0)),
        ((0, 1), (0, -1), (0, 0)),
        ((1, 0), (-1, 0), (0, 0)),
        ((0, -1), (0, 1), (0, 0)),
        ((-1, 0), (1, 0), (0, 0)),
    ] {
        glue_eq(&mut t, &format!("cap{c:?} o tube{l:?}"), &cap(want), contract_refined(&cap(c), 0, &tube(l), 0));
    }
    out.push(t.finish());

    out.push(displayed_relations(&pants));
    out.push(frobenius(&pants));
    out.push(handle(&pants));
    out.push(raised_tubes());
    out
}

/// The explicit entry relations used to solve for the unknown tubes and
/// pants.
fn displayed_relations(pants: &ClassRefined) -> CheckReport {
    let mut t = Tally::new("gluing.relations", "entry relations solving for the level (0,+-1) tubes and the pants");
    let e = tube((0, 1)).piece_or_zero(0);
    let c = tube((0, 1)).piece_or_zero(-1);
    let n = tube((0, -1)).piece_or_zero(0);
    let m = tube((0, -1)).piece_or_zero(1);
    let raise = |x: &PhiElem, b: usize| x.scale(&tw(b).inv().expect("nonzero weight"));

    // diagonal of the unit tube: N_aa E_a^a + M_aa C_a^a = T(a)
    for a in 0..3 {
        let lhs = &(n.get(&[a, a]) * &raise(e.get(&[a, a]), a)) + &(m.get(&[a, a]) * &raise(c.get(&[a, a]), a));
        t.eq(format!("diag a={a}"), &PhiElem::constant(tw(a)), &lhs);
    }
    t.eq("E_x0x1", &PhiElem::zero(), e.get(&[0, 1]));
    for (a, other) in [(0, 1), (1, 0)] {
        let want = &(m.get(&[a, 2]) * &PhiElem::constant(TRat::from_poly(TPoly::diff(2, other)))).shift(-1);
        t.eq(format!("E_x{a}x2 via M"), want, e.get(&[a, 2]));
    }
    // the level (0,0) cap kills every raised row of E
    for a in 0..3 {
        let row = (0..3).fold(PhiElem::zero(), |acc, b| &acc + &raise(e.get(&[a, b]), b));
        t.eq(format!("cap row a={a}"), &PhiElem::zero(), &row);
    }
    // class beta0+f unit tube vanishes on (a,a) and (x0,x1)
    for (a, b) in [(0, 0), (1, 1), (0, 1)] {
        let z = (0..3).fold(PhiElem::zero(), |acc, l| &acc + &(e.get(&[a, l]) * &raise(m.get(&[l, b]), l)));
        t.eq(format!("beta0+f tube ({a},{b})"), &PhiElem::zero(), &z);
    }
    // pants relations from the level (0,-1) cap
    let p = pants.piece_or_zero(1);
    let t01 = pe("(t0-t1)*phi^3");
    t.eq("P001 - P011", &t01, &(p.get(&[0, 0, 1]) - p.get(&[0, 1, 1])));
    t.eq("P000 - P001", &t01, &(p.get(&[0, 0, 0]) - p.get(&[0, 0, 1])));
    t.eq("P011 - P111", &t01, &(p.get(&[0, 1, 1]) - p.get(&[1, 1, 1])));
    // and from the level (0,1) cap: P_{x2 a b} = E_ab phi^2
    for a in 0..3 {
        for b in 0..3 {
            t.eq(format!("P2{a}{b}"), &e.get(&[a, b]).shift(2), p.get(&[2, a, b]));
        }
    }
    t.finish()
}

fn frobenius(pants: &ClassRefined) -> CheckReport {
    let mut t = Tally::new("gluing.frobenius", "Frobenius relation and associativity of the pants product");
    let p0 = pants.piece_or_zero(0);
    let p1 = pants.piece_or_zero(1);
    let raise = |x: &PhiElem, b: usize| x.scale(&tw(b).inv().expect("nonzero weight"));
    let lhs =
        &(p1.get(&[0, 1, 1]) * &raise(p0.get(&[0, 0, 0]), 0)) + &(p0.get(&[1, 1, 1]) * &raise(p1.get(&[0, 0, 1]), 1));
    t.eq("P1_011 P0_00^0 + P0_111 P1_00^1", &PhiElem::zero(), &lhs);
    let simplified = &p1.get(&[0, 1, 1]).scale(&TRat::from_poly(TPoly::diff(0, 2)))
        - &p1.get(&[0, 0, 1]).scale(&TRat::from_poly(TPoly::diff(1, 2)));
    t.eq("(t0-t2)P011 - (t1-t2)P001", &PhiElem::zero(), &simplified);

    // (ab)c = a(bc): the four-point function is symmetric in its legs
    match contract_refined(pants, 2, pants, 0) {
        Ok(four) => {
            for (i, j) in [(1, 2), (0, 2), (1, 3)] {
                let swapped = four.map_pieces(|x| x.swap_slots(i, j));
                t.eq_result(format!("four-point swap {i}<->{j}"), &four, swapped);
            }
        }
        Err(e) => t.error("four-point", e),
    }
    t.finish()
}

fn handle(pants: &ClassRefined) -> CheckReport {
    let mut t = Tally::new("gluing.handle", "two pants glued along two circles give A + B");
    let want = ClassRefined::new(
        vec![crate::operators::Variance::Raised, crate::operators::Variance::Lowered],
        [(0, RelTensor::from_op3(op(OpName::A))), (1, RelTensor::from_op3(op(OpName::B)))],
    )
    .expect("shapes agree");
    let got = evaluate_word(&handle_word()).and_then(|h| h.raise_index(0));
    t.eq_result("selfglue(glue(pants,3,pants,1),2,3)", &want, got);

    // entrywise: A_aa = T(a), B_ab = (P1_aab + P1_abb) / T(a)
    let p1 = pants.piece_or_zero(1);
    for a in 0..3 {
        for b in 0..3 {
            let inv = tw(a).inv().expect("nonzero weight");
            let bw = (p1.get(&[a, a, b]) + p1.get(&[a, b, b])).scale(&inv);
            t.eq(format!("B[{a}][{b}]"), &bw, op(OpName::B).get(a, b));
            let aw = if a == b { PhiElem::constant(tw(a)) } else { PhiElem::zero() };
            t.eq(format!("A[{a}][{b}]"), &aw, op(OpName::A).get(a, b));
        }
    }
    t.finish()
}

fn raised_tubes() -> CheckReport {
    let mut t = Tally::new("gluing.operators", "raised tubes are the level operators, class by class");
    for (l, name) in [((1, 0), OpName::U1), ((0, 1), OpName::U2), ((-1, 0), OpName::U1inv), ((0, -1), OpName::U2inv)] {
        let got = tube(l).raise_index(0);
        t.eq_result(format!("tube{l:?}"), &crate::operators::operator_classes(name), got);
    }
    t.finish()
}

fn tr(m: &Op3) -> PhiElem {
    m.trace()
}

fn mul(ms: &[&Op3]) -> Op3 {
    ms.iter().fold(Op3::identity(), |acc, m| &acc * *m)
}

pub fn verify_operator_algebra() -> Vec<CheckReport> {
    use OpName::*;
    let i3 = Op3::identity();
    let mut out = Vec::new();

    let mut t = Tally::new("algebra.inverses", "level creation and annihilation operators are inverse");
    for (u, v) in [(U1, U1inv), (U2, U2inv)] {
        t.eq(format!("{u}*{v}"), &i3, &(op(u) * op(v)));
        t.eq(format!("{v}*{u}"), &i3, &(op(v) * op(u)));
        let via_adj = mat_power(op(u), -1).and_then(|m| m.reduce());
        t.eq_result(format!("adj({u})/det({u})"), op(v), via_adj);
    }
    out.push(t.finish());

    let mut t = Tally::new("algebra.commutation", "G, U1, U2 and the inverses commute pairwise");
    let names = [G, U1, U2, U1inv, U2inv];
    for (i, &x) in names.iter().enumerate() {
        for &y in &names[i + 1..] {
            t.eq(format!("[{x},{y}]"), &(op(x) * op(y)), &(op(y) * op(x)));
        }
    }
    out.push(t.finish());

    let (a, b) = (op(A), op(B));
    let q = parse_trat("t0^2+t1^2+t2^2-t0*t1-t0*t2-t1*t2").expect("literal");
    let ab2 = mul(&[a, b, b]);
    let abab2 = mul(&[a, b, a, b, b]);
    let mut t = Tally::new("algebra.top-class", "identities for the top class at level (0,0)");
    t.eq("B^3", &Op3::zero(), &b.pow(3));
    t.eq("AB^2", &ones().scale(&pe("9*phi^6")), &ab2);
    t.eq("(AB^2)^2", &ab2.scale(&pe("27*phi^6")), &ab2.pow(2));
    for k in 1..5u32 {
        let c = PhiElem::term(TRat::from_rat(num_traits::pow(rat(3, 1), 3 * k as usize - 3)), 6 * k as i32 - 6);
        t.eq(format!("(AB^2)^{k}"), &ab2.scale(&c), &ab2.pow(k));
    }
    t.eq("tr(ABAB^2)", &PhiElem::zero(), &tr(&abab2));
    t.eq("(ABAB^2)^2", &Op3::zero(), &abab2.pow(2));
    let row = |a: usize| {
        let (x, y) = match a {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        pe(&format!("(2*t{a}-t{x}-t{y})*27*phi^9"))
    };
    // row a is constant (2ta - tb - tc) 27 phi^9
    let abab2_want = Op3::from_fn(|i, _| row(i));
    t.eq("ABAB^2", &abab2_want, &abab2);
    let rows_t = Op3::from_fn(|i, _| PhiElem::constant(tw(i)));
    t.eq("A(AB^2)", &rows_t.scale(&pe("9*phi^6")), &mul(&[a, &ab2]));
    t.eq("(AB)^2(AB^2)", &ones().scale(&PhiElem::term(q.scale(&rat(162, 1)), 12)), &mul(&[a, b, a, b, &ab2]));
    t.eq("A^2B^2(AB^2)", &rows_t.scale(&pe("243*phi^12")), &mul(&[a, a, b, b, &ab2]));
    t.eq("tr(A(AB^2))", &PhiElem::term(q.scale(&rat(9, 1)), 6), &tr(&mul(&[a, &ab2])));
    out.push(t.finish());

    let (c, e, n, m) = (op(C2), op(E2), op(N2), op(M2));
    let mut t = Tally::new("algebra.calabi-yau", "identities for the Calabi-Yau class");
    t.eq("G = A + B", op(G), &(a + b));
    t.eq("U2 = C + E", op(U2), &(c + e));
    t.eq("U2^-1 = N + M", op(U2inv), &(n + m));
    t.eq("E^3", &Op3::zero(), &e.pow(3));
    t.eq("BE^2", &Op3::zero(), &mul(&[b, e, e]));
    let ae2 = mul(&[a, e, e]);
    t.eq("AE^2", &ones().scale(&PhiElem::phi_pow(2)), &ae2);
    let ce2 = mul(&[c, e, e]);
    for k in 0..4u32 {
        t.eq(format!("AE^2(CE^2)^{k}"), &ae2, &mul(&[&ae2, &ce2.pow(k)]));
    }
    let ceb = mul(&[c, e, b]);
    let bottom = Op3::from_fn(|i, _| if i == 2 { pe("3*phi^2") } else { PhiElem::zero() });
    t.eq("CEB", &bottom, &ceb);
    let ece = mul(&[e, c, e]);
    for k in 1..5u32 {
        t.eq(format!("(ECE)^{k}"), &ece, &ece.pow(k));
    }
    // (BEC)^b (E^2C)^a = 3^b phi^(2b) E^2C, with E^2C idempotent
    let bec = mul(&[b, e, c]);
    let e2c = mul(&[e, e, c]);
    let v = Op3::from_fn(|i, j| match (i, j) {
        (0, 2) => pe("(t1-t2)/(t0-t1)"),
        (1, 2) => pe("(t0-t2)/(t1-t0)"),
        (2, 2) => PhiElem::one(),
        _ => PhiElem::zero(),
    });
    t.eq("E^2C", &v, &e2c);
    for bb in 1..4u32 {
        for aa in 0..3u32 {
            let c = PhiElem::term(TRat::from_rat(num_traits::pow(rat(3, 1), bb as usize)), 2 * bb as i32);
            t.eq(format!("(BEC)^{bb}(E^2C)^{aa}"), &v.scale(&c), &mul(&[&bec.pow(bb), &e2c.pow(aa)]));
        }
    }
    let bce = mul(&[b, c, e]);
    t.eq("tr(BCE)", &pe("3*phi^2"), &tr(&bce));
    t.eq("tr(BCE ECE)", &pe("3*phi^2"), &tr(&mul(&[&bce, &ece])));
    t.eq("M^3", &Op3::zero(), &m.pow(3));
    let m2n = &(&mul(&[m, m, n]) + &mul(&[m, n, m])) + &mul(&[n, m, m]);
    t.eq("(M^2,N)", &Op3::zero(), &m2n);
    t.eq("BM", &Op3::zero(), &(b * m));
    t.eq("MB", &Op3::zero(), &(m * b));
    let (n2m, mn2, nmn) = (mul(&[n, n, m]), mul(&[m, n, n]), mul(&[n, m, n]));
    for k in 1..4u32 {
        t.eq(format!("(N^2M)^{k}"), &n2m, &n2m.pow(k));
        t.eq(format!("(MN^2)^{k}"), &mn2, &mn2.pow(k));
        t.eq(format!("(NMN)^{k}"), &nmn, &nmn.pow(k));
        t.eq(format!("AE^2(N^2M)^{k}"), &ae2, &mul(&[&ae2, &n2m.pow(k)]));
    }
    for k in 1..4u32 {
        t.eq(format!("tr(BCE (NMN)^{k})"), &pe("3*phi^2"), &tr(&mul(&[&bce, &nmn.pow(k)])));
        t.eq(format!("tr(BEC (MN^2)^{k})"), &pe("3*phi^2"), &tr(&mul(&[&bec, &mn2.pow(k)])));
    }
    out.push(t.finish());

    let mut t = Tally::new("algebra.level-products", "products of the class pieces of U1 and U2");
    let (c1, e1, c2, e2) = (op(C1), op(E1), op(C2), op(E2));
    t.eq("C1C2", &Op3::zero(), &(c1 * c2));
    let mixed = &(c1 * e2) + &(e1 * c2);
    let want = Op3::diag([PhiElem::zero(), pe("(t1-t0)*phi^-1"), pe("(t2-t0)*phi^-1")]);
    t.eq("C1E2 + E1C2", &want, &mixed);
    t.eq("U1U2 = E1E2 + C1E2 + E1C2", &(op(U1) * op(U2)), &(&(e1 * e2) + &mixed));
    out.push(t.finish());
    out
}

/// Closed words built only from caps, tubes and pants agree with the trace
/// formula, and each class piece of the word equals the extracted class
/// component.
pub fn verify_word_agreement(g_max: u32, k_max: i64) -> CheckReport {
    let engine = PartitionEngine::new();
    let mut t = Tally::new("gluing.words", "closed cobordism words equal the trace formula class by class");
    for g in 0..=g_max {
        for k1 in -k_max..=k_max {
            for k2 in -k_max..=k_max {
                let p = SpaceParams::new(g, k1, k2);
                let word = match evaluate_word(&closed_word(g, k1, k2)) {
                    Ok(w) => w,
                    Err(e) => {
                        t.error(p, e);
                        continue;
                    }
                };
                let total = word.total().as_scalar().cloned().unwrap_or_default();
                t.eq_result(format!("{p} total"), &total, engine.compute_z(p));
                let mut classes = word.classes();
                if let Ok(support) = engine.support(p) {
                    classes.extend(support.iter().map(|c| c.n as i32));
                }
                classes.sort_unstable();
                classes.dedup();
                for n in classes {
                    let piece = word.piece_or_zero(n).as_scalar().cloned().unwrap_or_default();
                    let c = SectionClassIndex::new(n as i64);
                    t.eq_result(format!("{p} n={n}"), &piece, engine.class_component(p, c));
                }
            }
        }
    }
    t.finish()
}

/// The genus-zero trace reduces to a Laurent polynomial and agrees with the
/// capped word, which never inverts `G`.
pub fn verify_genus_zero(k_max: i64) -> CheckReport {
    let mut t = Tally::new("genus-zero", "genus-zero trace reduces exactly and matches the capped word");
    t.eq_result("Z(0|1,0)", &PhiElem::phi_pow(-2), trace_formula(0, 1, 0));
    t.eq_result("Z(0|0,0)", &PhiElem::zero(), trace_formula(0, 0, 0));
    for k1 in -k_max..=k_max {
        for k2 in -k_max..=k_max {
            let p = SpaceParams::new(0, k1, k2);
            match trace_formula(0, k1, k2) {
                Ok(z) => {
                    let word = evaluate_word(&closed_word(0, k1, k2))
                        .map(|w| w.total().as_scalar().cloned().unwrap_or_default());
                    t.eq_result(p, &z, word);
                }
                Err(e) => t.error(p, e),
            }
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(reports: &[CheckReport]) {
        for r in reports {
            assert!(r.passed, "{} failed: {:?}", r.id, r.counterexample);
        }
    }

    #[test]
    fn derivations_hold() {
        assert_all_pass(&verify_gluing_derivations());
    }

    #[test]
    fn algebra_holds() {
        assert_all_pass(&verify_operator_algebra());
    }

    #[test]
    fn small_words_agree() {
        assert_all_pass(&[verify_word_agreement(2, 1), verify_genus_zero(1)]);
    }
}
