//! Generator data of the theory: basis weights, class-refined caps, tubes and
//! pants, and the closed-form 3x3 operators.

mod generators;
mod matrix;
mod tensor;

pub use generators::{
    build_cap, build_operator, build_pants, build_tube, operator, operator_classes, Level, OpName, BASIC_LEVELS,
};
pub use matrix::{Mat3, Op3, Ring};
pub use tensor::{BasisLabel, ClassRefined, RelTensor, Variance};

use crate::exactring::TPoly;

/// `T(x_a) = prod_{j != a} (t_a - t_j)`.
pub fn weight(a: usize) -> TPoly {
    assert!(a < 3, "basis label out of range");
    (0..3).filter(|&j| j != a).fold(TPoly::one(), |acc, j| &acc * &TPoly::diff(a, j))
}

/// `weight` for a typed label.
pub fn label_weight(a: BasisLabel) -> TPoly {
    weight(a.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::TRat;
    use crate::parse::{parse_phi_elem, parse_tpoly};
    use crate::phicalc::PhiElem;

    fn pe(s: &str) -> PhiElem {
        parse_phi_elem(s).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(0), parse_tpoly("(t0-t1)*(t0-t2)").unwrap());
        assert_eq!(weight(1), parse_tpoly("(t1-t0)*(t1-t2)").unwrap());
        assert_eq!(label_weight(BasisLabel::new(2).unwrap()), parse_tpoly("(t2-t0)*(t2-t1)").unwrap());
    }

    #[test]
    fn caps() {
        assert_eq!(build_cap((0, 0)).unwrap().piece_or_zero(0).get(&[1]), &PhiElem::one());
        assert!(build_cap((0, -1)).unwrap().piece_or_zero(0).get(&[2]).is_zero());
        assert_eq!(build_cap((0, 1)).unwrap().piece_or_zero(-1).get(&[2]), &pe("(t2-t0)*(t2-t1)*phi^-2"));
        assert_eq!(build_cap((2, 0)), Err(crate::Error::UnsupportedLevel(2, 0)));
    }

    #[test]
    fn tubes() {
        let t00 = build_tube((0, 0)).unwrap();
        assert_eq!(t00.piece_or_zero(0).get(&[1, 1]), &PhiElem::constant(TRat::from_poly(weight(1))));
        let t0m = build_tube((0, -1)).unwrap();
        assert_eq!(t0m.piece_or_zero(0).get(&[0, 0]), &pe("(t0-t1)*(t0-t2)^2*phi^-1"));
        assert_eq!(t0m.piece_or_zero(1).get(&[0, 2]), &PhiElem::phi_pow(2));
        for level in BASIC_LEVELS {
            let t = build_tube(level).unwrap();
            assert!(t.classes().len() <= 2);
            for (_, piece) in t.pieces() {
                assert_eq!(&piece.swap_slots(0, 1).unwrap(), piece, "tube {level:?} symmetric");
            }
        }
    }

    #[test]
    fn pants() {
        let p = build_pants();
        assert_eq!(p.piece_or_zero(0).get(&[2, 2, 2]), &PhiElem::constant(TRat::from_poly(&weight(2) * &weight(2))));
        assert!(p.piece_or_zero(1).get(&[0, 1, 2]).is_zero());
        assert_eq!(p.piece_or_zero(1).get(&[2, 2, 2]), &pe("(2*t2-t0-t1)*phi^3"));
        for (_, piece) in p.pieces() {
            assert_eq!(&piece.swap_slots(0, 1).unwrap(), piece);
            assert_eq!(&piece.swap_slots(1, 2).unwrap(), piece);
        }
    }

    #[test]
    fn printed_operator_entries() {
        assert_eq!(operator(OpName::U1).get(0, 0), &pe("phi/(t0-t1)"));
        assert!(operator(OpName::U2).get(1, 0).is_zero());
        assert_eq!(operator(OpName::G).get(0, 0), &pe("(t0-t1)*(t0-t2) + phi^3*2*(2*t0-t1-t2)/((t0-t1)*(t0-t2))"));
        assert_eq!(operator(OpName::G).get(2, 2), &pe("(t2-t0)*(t2-t1) + phi^3*2*(2*t2-t0-t1)/((t2-t0)*(t2-t1))"));
    }

    #[test]
    fn raised_tubes_are_the_operators() {
        let cases = [
            ((0, 0), Op3::identity()),
            ((1, 0), build_operator(OpName::U1)),
            ((0, 1), build_operator(OpName::U2)),
            ((-1, 0), build_operator(OpName::U1inv)),
            ((0, -1), build_operator(OpName::U2inv)),
        ];
        for (level, op) in cases {
            let raised = build_tube(level).unwrap().total().raise_index(0).unwrap();
            assert_eq!(raised.to_op3().unwrap(), op, "level {level:?}");
        }
    }

    #[test]
    fn permutation_equivariance() {
        // swapping t1 <-> t2 together with labels 1 <-> 2
        let swap = [0, 2, 1];
        let u1 = operator(OpName::U1);
        assert_eq!(&u1.permute_vars(swap).permute_labels(swap), operator(OpName::U2));
        let g = operator(OpName::G);
        for perm in [[0, 2, 1], [1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
            assert_eq!(&g.permute_vars(perm).permute_labels(perm), g, "{perm:?}");
        }
    }

    #[test]
    fn name_round_trip() {
        for n in OpName::ALL {
            assert_eq!(n.as_str().parse::<OpName>().unwrap(), n);
        }
        assert!("X".parse::<OpName>().is_err());
    }
}
