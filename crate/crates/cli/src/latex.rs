//! LaTeX rendering with variables `t_0, t_1, t_2` and `\phi`. Within a
//! polynomial, positive terms precede negative ones, each group in
//! graded-lex order.

use gwtqft::exactring::{BigRat, Monomial, TPoly, TRat};
use gwtqft::phicalc::PhiElem;
use num_traits::{One, Signed};

fn sup(e: impl ToString) -> String {
    let e = e.to_string();
    if e.chars().count() == 1 {
        format!("^{e}")
    } else {
        format!("^{{{e}}}")
    }
}

fn monomial(m: &Monomial) -> String {
    let mut s = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("t_{i}")),
            _ => s.push_str(&format!("t_{i}{}", sup(e))),
        }
    }
    s
}

fn rational(c: &BigRat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn term(m: &Monomial, c: &BigRat, first: bool) -> String {
    let sign = match (c.is_negative(), first) {
        (true, _) => "-",
        (false, true) => "",
        (false, false) => "+",
    };
    let abs = c.abs();
    let body = if m.is_one() {
        rational(&abs)
    } else if abs.is_one() {
        monomial(m)
    } else {
        format!("{}{}", rational(&abs), monomial(m))
    };
    format!("{sign}{body}")
}

pub fn poly(p: &TPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let (pos, neg): (Vec<_>, Vec<_>) = p.terms().partition(|(_, c)| !c.is_negative());
    pos.into_iter().chain(neg).enumerate().map(|(i, (m, c))| term(m, c, i == 0)).collect()
}

pub fn trat(c: &TRat) -> String {
    if c.den().is_one() {
        poly(c.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", poly(c.num()), poly(c.den()))
    }
}

fn phi_power(e: i32) -> String {
    match e {
        0 => String::new(),
        1 => "\\phi".into(),
        _ => format!("\\phi{}", sup(e)),
    }
}

/// Terms in ascending powers of `phi`.
pub fn phi_elem(z: &PhiElem) -> String {
    if z.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in z.terms().enumerate() {
        let mut body = trat(c);
        if e != 0 {
            let atomic = c.den().is_one() && c.num().num_terms() == 1;
            if body == "1" {
                body = String::new();
            } else if body == "-1" {
                body = "-".into();
            } else if !atomic {
                body = format!("\\left({body}\\right)");
            }
            body.push_str(&phi_power(e));
        }
        if i > 0 && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
    out
}
