//! Cobordism words: a small expression language over the generators.
//!
//! ```text
//! word    := compose
//! compose := power (('*' | '∘') power)*
//! power   := primary ('^' digits)?
//! primary := 'cap' '(' int ',' int ')' | 'tube' '(' int ',' int ')' | 'pants'
//!          | operator-name | 'trace' '(' word ')'
//!          | 'glue' '(' word ',' slot ',' word ',' slot ')'
//!          | 'selfglue' '(' word ',' slot ',' slot ')' | '(' word ')'
//! ```
//!
//! `X * Y` glues the last slot of `X` to the first slot of `Y`; `trace(X)`
//! glues the first and last slots of `X`. Slots in `glue`/`selfglue` are
//! 1-based. Every gluing raises the second slot of a lowered pair, so words
//! may be written entirely with lowered generators.

use std::fmt;

use super::{contract_refined, self_glue_refined};
use crate::operators::{
    build_cap, build_pants, build_tube, operator_classes, ClassRefined, Level, Op3, OpName, RelTensor,
};
use crate::{Error, Result};

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 64;
const MAX_COST: u64 = 512;
const MAX_RANK: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Cap(Level),
    Tube(Level),
    Pants,
    Op(OpName),
    Compose(Box<Word>, Box<Word>),
    Power(Box<Word>, u32),
    Trace(Box<Word>),
    /// 1-based slots.
    Glue(Box<Word>, usize, Box<Word>, usize),
    /// 1-based slots.
    SelfGlue(Box<Word>, usize, usize),
}

impl Word {
    /// Number of generator instances the word expands to.
    pub fn cost(&self) -> u64 {
        match self {
            Word::Cap(_) | Word::Tube(_) | Word::Pants | Word::Op(_) => 1,
            Word::Compose(a, b) | Word::Glue(a, _, b, _) => a.cost().saturating_add(b.cost()),
            Word::Power(a, n) => a.cost().saturating_mul((*n).max(1) as u64),
            Word::Trace(a) | Word::SelfGlue(a, _, _) => a.cost(),
        }
    }

    fn compose(a: Word, b: Word) -> Word {
        Word::Compose(Box::new(a), Box::new(b))
    }

    fn power(a: Word, n: u32) -> Word {
        Word::Power(Box::new(a), n)
    }
}

fn level_tube(which: u8, k: i64) -> Word {
    let unit = if k >= 0 { 1 } else { -1 };
    let level = if which == 1 { (unit, 0) } else { (0, unit) };
    Word::power(Word::Tube(level), k.unsigned_abs() as u32)
}

/// The genus-one level (0,0) tube obtained from two pants.
pub fn handle_word() -> Word {
    Word::SelfGlue(Box::new(Word::Glue(Box::new(Word::Pants), 3, Box::new(Word::Pants), 1)), 2, 3)
}

/// A closed-surface word for `Z(g|k1,k2)` built only from caps, tubes and
/// pants, independent of the closed-form operators.
pub fn closed_word(g: u32, k1: i64, k2: i64) -> Word {
    let levels = Word::compose(level_tube(1, k1), level_tube(2, k2));
    if g == 0 {
        let inner = Word::compose(Word::Cap((0, 0)), levels);
        return Word::compose(inner, Word::Cap((0, 0)));
    }
    Word::Trace(Box::new(Word::compose(Word::power(handle_word(), g - 1), levels)))
}

fn identity() -> ClassRefined {
    ClassRefined::single(0, RelTensor::from_op3(&Op3::identity()))
}

fn slot(s: usize, rank: usize) -> Result<usize> {
    if s == 0 || s > rank {
        return Err(Error::InvalidSlot { slot: s, rank });
    }
    Ok(s - 1)
}

fn check_rank(t: ClassRefined) -> Result<ClassRefined> {
    if t.rank() > MAX_RANK {
        return Err(Error::Unsupported(format!("intermediate rank {} exceeds {MAX_RANK}", t.rank())));
    }
    Ok(t)
}

/// Evaluates a word to a class-refined tensor.
pub fn evaluate_word(w: &Word) -> Result<ClassRefined> {
    match w {
        Word::Cap(level) => build_cap(*level),
        Word::Tube(level) => build_tube(*level),
        Word::Pants => Ok(build_pants()),
        Word::Op(name) => Ok(operator_classes(*name)),
        Word::Compose(a, b) => {
            let (x, y) = (evaluate_word(a)?, evaluate_word(b)?);
            if x.rank() == 0 || y.rank() == 0 {
                return Err(Error::RankUnderflow("cannot compose a closed surface".into()));
            }
            check_rank(contract_refined(&x, x.rank() - 1, &y, 0)?)
        }
        Word::Power(a, n) => {
            let x = evaluate_word(a)?;
            if x.rank() != 2 {
                return Err(Error::Unsupported(format!("powers need a rank 2 tensor, got rank {}", x.rank())));
            }
            if *n == 0 {
                return Ok(identity());
            }
            let mut acc = x.clone();
            for _ in 1..*n {
                acc = contract_refined(&acc, 1, &x, 0)?;
            }
            Ok(acc)
        }
        Word::Trace(a) => {
            let x = evaluate_word(a)?;
            if x.rank() < 2 {
                return Err(Error::RankUnderflow(format!("trace of a rank {} tensor", x.rank())));
            }
            self_glue_refined(&x, 0, x.rank() - 1)
        }
        Word::Glue(a, i, b, j) => {
            let (x, y) = (evaluate_word(a)?, evaluate_word(b)?);
            let (i, j) = (slot(*i, x.rank())?, slot(*j, y.rank())?);
            check_rank(contract_refined(&x, i, &y, j)?)
        }
        Word::SelfGlue(a, i, j) => {
            let x = evaluate_word(a)?;
            let (i, j) = (slot(*i, x.rank())?, slot(*j, x.rank())?);
            self_glue_refined(&x, i, j)
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Cap((a, b)) => write!(f, "cap({a},{b})"),
            Word::Tube((a, b)) => write!(f, "tube({a},{b})"),
            Word::Pants => write!(f, "pants"),
            Word::Op(n) => write!(f, "{n}"),
            Word::Compose(a, b) => {
                write!(f, "{a} * ")?;
                if matches!(**b, Word::Compose(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Word::Power(a, n) => {
                if matches!(**a, Word::Compose(..) | Word::Power(..)) {
                    write!(f, "({a})^{n}")
                } else {
                    write!(f, "{a}^{n}")
                }
            }
            Word::Trace(a) => write!(f, "trace({a})"),
            Word::Glue(a, i, b, j) => write!(f, "glue({a},{i},{b},{j})"),
            Word::SelfGlue(a, i, j) => write!(f, "selfglue({a},{i},{j})"),
        }
    }
}

/// Parses a word; errors carry the byte offset of the problem.
pub fn parse_word(src: &str) -> Result<Word> {
    let mut p = Parser { src, pos: 0, depth: 0 };
    let w = p.compose()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    if w.cost() > MAX_COST {
        return Err(Error::Parse { pos: 0, msg: format!("word expands to more than {MAX_COST} generators") });
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        let start = self.pos;
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            self.pos = start;
            return Err(self.err("expected integer"));
        }
        let text = &self.rest()[..digits];
        let v: i64 = text.parse().map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })?;
        self.pos += digits;
        Ok(if neg { -v } else { v })
    }

    fn slot(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v)
            .ok()
            .filter(|&s| s >= 1)
            .ok_or(Error::Parse { pos: start, msg: "slots are numbered from 1".into() })
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("word nested too deeply"));
        }
        Ok(())
    }

    fn compose(&mut self) -> Result<Word> {
        self.enter()?;
        let mut acc = self.power()?;
        while self.eat("*") || self.eat("∘") {
            let rhs = self.power()?;
            acc = Word::compose(acc, rhs);
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn power(&mut self) -> Result<Word> {
        let base = self.primary()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let start = self.pos;
        let n = self.int()?;
        let n = u32::try_from(n)
            .ok()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or(Error::Parse { pos: start, msg: format!("exponent must lie in 0..={MAX_EXPONENT}") })?;
        Ok(Word::power(base, n))
    }

    fn level(&mut self) -> Result<Level> {
        self.expect("(")?;
        let a = self.int()?;
        self.expect(",")?;
        let b = self.int()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn primary(&mut self) -> Result<Word> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let w = self.compose()?;
            self.expect(")")?;
            return Ok(w);
        }
        let Some(name) = self.ident() else {
            return Err(self.err("expected a generator, operator or '('"));
        };
        let name = name.to_string();
        match name.as_str() {
            "cap" => Ok(Word::Cap(self.level()?)),
            "tube" => Ok(Word::Tube(self.level()?)),
            "pants" => Ok(Word::Pants),
            "trace" => {
                self.expect("(")?;
                let w = self.compose()?;
                self.expect(")")?;
                Ok(Word::Trace(Box::new(w)))
            }
            "glue" => {
                self.expect("(")?;
                let a = self.compose()?;
                self.expect(",")?;
                let i = self.slot()?;
                self.expect(",")?;
                let b = self.compose()?;
                self.expect(",")?;
                let j = self.slot()?;
                self.expect(")")?;
                Ok(Word::Glue(Box::new(a), i, Box::new(b), j))
            }
            "selfglue" => {
                self.expect("(")?;
                let a = self.compose()?;
                self.expect(",")?;
                let i = self.slot()?;
                self.expect(",")?;
                let j = self.slot()?;
                self.expect(")")?;
                Ok(Word::SelfGlue(Box::new(a), i, j))
            }
            other => other
                .parse::<OpName>()
                .map(Word::Op)
                .map_err(|_| Error::Parse { pos: start, msg: format!("unknown name '{other}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::trace_formula;
    use crate::operators::{operator, Variance};
    use crate::phicalc::PhiElem;

    fn scalar(w: &str) -> PhiElem {
        evaluate_word(&parse_word(w).unwrap()).unwrap().total().as_scalar().unwrap().clone()
    }

    #[test]
    fn single_cap() {
        let t = evaluate_word(&parse_word("cap(0,0)").unwrap()).unwrap().total();
        assert_eq!(t.rank(), 1);
        assert!(t.entries().iter().all(|e| *e == PhiElem::one()));
    }

    #[test]
    fn cap_into_pants() {
        let t = evaluate_word(&parse_word("cap(0,-1) * pants").unwrap()).unwrap();
        assert_eq!(t, build_tube((0, -1)).unwrap());
        let same = evaluate_word(&parse_word("cap(0,-1) ∘ pants").unwrap()).unwrap();
        assert_eq!(t, same);
    }

    #[test]
    fn traces() {
        assert_eq!(scalar("trace(tube(0,0))"), PhiElem::from_int(3));
        assert_eq!(scalar("trace(G^1 * U1^1)"), trace_formula(2, 1, 0).unwrap());
        assert_eq!(scalar("trace(tube(0,0)^0)"), PhiElem::from_int(3));
    }

    #[test]
    fn handle_is_genus_adding_operator() {
        let h = evaluate_word(&handle_word()).unwrap();
        assert_eq!(h.classes(), vec![0, 1]);
        for (n, op) in [(0, OpName::A), (1, OpName::B)] {
            let raised = h.piece_or_zero(n).raise_index(0).unwrap();
            assert_eq!(raised.variance(), &[Variance::Raised, Variance::Lowered]);
            assert_eq!(&raised.to_op3().unwrap(), operator(op));
        }
    }

    #[test]
    fn closed_words_match_trace_formula() {
        for (g, k1, k2) in [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, -1, 1), (2, 0, 0), (2, 1, -1)] {
            let w = closed_word(g, k1, k2);
            let z = evaluate_word(&w).unwrap().total();
            assert_eq!(z.as_scalar().unwrap(), &trace_formula(g, k1, k2).unwrap(), "{w}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "trace(selfglue(glue(pants,3,pants,1),2,3)^2 * tube(1,0)^0)",
            "cap(0,0) * (tube(0,1) * cap(0,0))",
            "(G * U1)^3",
            "(U2inv^2)^2",
        ] {
            let w = parse_word(s).unwrap();
            assert_eq!(parse_word(&w.to_string()).unwrap(), w, "{s}");
        }
        let w = closed_word(3, -2, 1);
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_word("cap(0,0) * tubx"), Err(Error::Parse { pos: 11, .. })));
        assert!(matches!(parse_word("glue(pants,0,pants,1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("(G^64)^64"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("G^-1"), Err(Error::Parse { .. })));
        assert!(parse_word(&"(".repeat(200)).is_err());
        assert!(matches!(evaluate_word(&parse_word("cap(2,0)").unwrap()), Err(Error::UnsupportedLevel(2, 0))));
        assert!(matches!(evaluate_word(&parse_word("glue(pants,4,pants,1)").unwrap()), Err(Error::InvalidSlot { .. })));
        assert!(matches!(evaluate_word(&parse_word("trace(cap(0,0))").unwrap()), Err(Error::RankUnderflow(_))));
        assert!(matches!(evaluate_word(&parse_word("G * glue(G,1,G,1)").unwrap()), Err(Error::VarianceMismatch(_))));
    }
}
