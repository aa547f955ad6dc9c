use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::operators::{operator, Op3, OpName};
use crate::phicalc::{PhiElem, PhiRat};
use crate::{Error, Result};

/// An integer matrix power. Negative powers keep the adjugate power over
/// the determinant power and reduce entries only on request.
#[derive(Clone, Debug, PartialEq)]
pub enum MatPower {
    Exact(Op3),
    Fraction { adj_pow: Op3, det_pow: PhiElem },
}

impl MatPower {
    /// The power as a matrix of Laurent polynomials; fails with
    /// `Inconsistent` if some entry is not a Laurent polynomial.
    pub fn reduce(&self) -> Result<Op3> {
        match self {
            MatPower::Exact(m) => Ok(m.clone()),
            MatPower::Fraction { adj_pow, det_pow } => {
                let mut cells = Vec::with_capacity(9);
                for a in 0..3 {
                    for b in 0..3 {
                        cells.push(PhiRat::new(adj_pow.get(a, b).clone(), det_pow.clone())?.reduce()?);
                    }
                }
                Ok(Op3::from_fn(|a, b| cells[a * 3 + b].clone()))
            }
        }
    }
}

/// Adjugate and determinant, so that `m^-1 = adj / det`.
pub fn inverse_parts(m: &Op3) -> Result<(Op3, PhiElem)> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok((m.adjugate(), det))
}

pub fn mat_power(m: &Op3, e: i64) -> Result<MatPower> {
    let abs = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Unsupported(format!("exponent {e} is too large")))?;
    if e >= 0 {
        return Ok(MatPower::Exact(m.pow(abs)));
    }
    let (adj, det) = inverse_parts(m)?;
    Ok(MatPower::Fraction { adj_pow: adj.pow(abs), det_pow: det.pow(abs) })
}

/// Incrementally built powers of the closed-form operators, shared between
/// threads.
#[derive(Default)]
pub struct PowerCache {
    powers: RwLock<HashMap<(OpName, u32), Arc<Op3>>>,
}

impl PowerCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by `trace_formula`.
    pub fn global() -> &'static PowerCache {
        static CACHE: OnceLock<PowerCache> = OnceLock::new();
        CACHE.get_or_init(PowerCache::new)
    }

    pub fn power(&self, name: OpName, e: u32) -> Arc<Op3> {
        if e == 0 {
            return Arc::new(Op3::identity());
        }
        if let Some(m) = self.read().get(&(name, e)) {
            return m.clone();
        }
        // extend from the highest cached power below e
        let (mut k, mut acc) = {
            let map = self.read();
            (1..e)
                .rev()
                .find_map(|k| map.get(&(name, k)).map(|m| (k, m.clone())))
                .unwrap_or_else(|| (1, Arc::new(operator(name).clone())))
        };
        let base = operator(name);
        let mut fresh = vec![(k, acc.clone())];
        while k < e {
            acc = Arc::new(&*acc * base);
            k += 1;
            fresh.push((k, acc.clone()));
        }
        let mut map = self.powers.write().unwrap_or_else(|p| p.into_inner());
        for (k, m) in fresh {
            map.entry((name, k)).or_insert(m);
        }
        acc
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, HashMap<(OpName, u32), Arc<Op3>>> {
        self.powers.read().unwrap_or_else(|p| p.into_inner())
    }

    /// `U1^k` for any integer `k`, using the closed-form inverse for `k < 0`.
    pub fn level_power(&self, which: u8, k: i64) -> Result<Arc<Op3>> {
        let (pos, neg) = match which {
            1 => (OpName::U1, OpName::U1inv),
            2 => (OpName::U2, OpName::U2inv),
            _ => return Err(Error::Unsupported(format!("no level operator U{which}"))),
        };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Unsupported(format!("level {k} is too large")))?;
        Ok(self.power(if k >= 0 { pos } else { neg }, e))
    }
}

fn trace_of_product(x: &Op3, y: &Op3) -> PhiElem {
    let mut acc = PhiElem::zero();
    for a in 0..3 {
        for b in 0..3 {
            let (p, q) = (x.get(a, b), y.get(b, a));
            if !p.is_zero() && !q.is_zero() {
                acc = &acc + &(p * q);
            }
        }
    }
    acc
}

fn g_inverse_parts() -> &'static (Op3, PhiElem) {
    static PARTS: OnceLock<(Op3, PhiElem)> = OnceLock::new();
    PARTS.get_or_init(|| inverse_parts(operator(OpName::G)).expect("G is invertible"))
}

/// `Z(g|k1,k2) = tr(G^(g-1) U1^k1 U2^k2)`. At `g = 0` the inverse of `G` is
/// taken as `adj(G)/det(G)` and the trace must divide exactly.
pub fn trace_formula(g: u32, k1: i64, k2: i64) -> Result<PhiElem> {
    trace_formula_with(PowerCache::global(), g, k1, k2)
}

pub fn trace_formula_with(cache: &PowerCache, g: u32, k1: i64, k2: i64) -> Result<PhiElem> {
    let u = &*cache.level_power(1, k1)? * &*cache.level_power(2, k2)?;
    if g >= 1 {
        return Ok(trace_of_product(&cache.power(OpName::G, g - 1), &u));
    }
    let (adj, det) = g_inverse_parts();
    let num = trace_of_product(adj, &u);
    PhiRat::new(num, det.clone())?.reduce().map_err(|e| match e {
        Error::Inconsistent(msg) => {
            Error::Inconsistent(format!("genus 0 trace at level ({k1},{k2}) does not reduce: {msg}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_phi_elem;

    fn pe(s: &str) -> PhiElem {
        parse_phi_elem(s).unwrap()
    }

    #[test]
    fn small_traces() {
        assert_eq!(trace_formula(1, 0, 0).unwrap(), PhiElem::from_int(3));
        assert_eq!(trace_formula(1, 1, 0).unwrap(), pe("(t1-t0)*(t1-t2)*phi^-2"));
        assert_eq!(trace_formula(0, 1, 0).unwrap(), PhiElem::phi_pow(-2));
        assert_eq!(trace_formula(0, 0, 0).unwrap(), PhiElem::zero());
        assert_eq!(trace_formula(2, 0, 0).unwrap(), pe("t0^2 + t1^2 + t2^2 - t0*t1 - t0*t2 - t1*t2"));
    }

    #[test]
    fn inverses_and_identity_power() {
        let u1 = operator(OpName::U1);
        let inv = mat_power(u1, -1).unwrap().reduce().unwrap();
        assert_eq!(&inv, operator(OpName::U1inv));
        assert_eq!(mat_power(operator(OpName::G), 0).unwrap(), MatPower::Exact(Op3::identity()));
        assert_eq!(mat_power(&Op3::zero(), -1), Err(Error::Singular));
    }

    #[test]
    fn cache_extends_incrementally() {
        let cache = PowerCache::new();
        let g3 = cache.power(OpName::G, 3);
        let g5 = cache.power(OpName::G, 5);
        assert_eq!(*g5, &*g3 * &operator(OpName::G).pow(2));
        assert_eq!(*cache.level_power(1, -2).unwrap(), operator(OpName::U1inv).pow(2));
    }

    #[test]
    fn mixed_power_product() {
        // (C1 E2 + E1 C2)^k = diag(0, (t1-t0)^k, (t2-t0)^k) phi^-k
        let c1 = operator(OpName::C1);
        let c2 = operator(OpName::C2);
        let e1 = operator(OpName::E1);
        let e2 = operator(OpName::E2);
        let m = &(c1 * e2) + &(e1 * c2);
        for k in 1..4u32 {
            let want = Op3::diag([
                PhiElem::zero(),
                pe(&format!("(t1-t0)^{k}*phi^-{k}")),
                pe(&format!("(t2-t0)^{k}*phi^-{k}")),
            ]);
            assert_eq!(m.pow(k), want);
        }
    }
}
