//! Universal Witt polynomials over Z.
//!
//! The ghost components w_n(x) = sum_{d|n} d * x_d^{n/d} determine unique
//! integer polynomials S_n, P_n (addition and multiplication coordinates)
//! and F^{(k)}_m (coordinate m of the k-th Frobenius) by solving the ghost
//! equations recursively; each solve divides by n, and the divisions are
//! exact by the Witt integrality theorem. A NonIntegralDivision out of this
//! module is an implementation bug, never data-dependent.
//!
//! Polynomials are computed once over Z and evaluated in any coefficient
//! ring, which keeps them correct over rings with torsion where the ghost
//! map is not injective.
//!
//! The memo table supports concurrent readers with at-most-once visible
//! results; a race may compute a polynomial twice but both copies are
//! identical and one wins the insert.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::arith::divisors;
use crate::error::Result;
use crate::poly::{Poly, Vars};

/// Variable sets for universal polynomials: x_d (and y_d for the binary
/// operations) indexed by the divisors of n, named "x1", "x6", ...
fn xy_vars(n: u64) -> Arc<Vars> {
    let mut names = Vec::new();
    for d in divisors(n) {
        names.push(format!("x{d}"));
    }
    for d in divisors(n) {
        names.push(format!("y{d}"));
    }
    Vars::new(&names)
}

fn x_vars(n: u64) -> Arc<Vars> {
    let names: Vec<String> = divisors(n).iter().map(|d| format!("x{d}")).collect();
    Vars::new(&names)
}

/// w_n in the given variable set, using names `{side}d` for d | n.
fn ghost_in(vars: &Arc<Vars>, n: u64, side: char) -> Poly {
    let mut acc = Poly::zero(vars);
    for d in divisors(n) {
        let idx = vars
            .index_of(&format!("{side}{d}"))
            .expect("ghost variable present");
        let term = Poly::var(vars, idx)
            .pow((n / d) as u32)
            .scale(&BigInt::from(d));
        acc = acc.add(&term);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Sum(u64),
    Prod(u64),
    /// Coordinate m of Frobenius F_k: Frob { k, m }.
    Frob(u64, u64),
}

fn memo() -> &'static RwLock<HashMap<Kind, Arc<Poly>>> {
    static MEMO: OnceLock<RwLock<HashMap<Kind, Arc<Poly>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn lookup(kind: Kind) -> Option<Arc<Poly>> {
    memo().read().unwrap().get(&kind).cloned()
}

fn store(kind: Kind, poly: Poly) -> Arc<Poly> {
    let mut w = memo().write().unwrap();
    w.entry(kind).or_insert_with(|| Arc::new(poly)).clone()
}

/// S_n: the unique integer polynomial in x_d, y_d (d | n) with
/// w_n(S_1, ..., S_n) = w_n(x) + w_n(y).
pub fn sum_poly(n: u64) -> Result<Arc<Poly>> {
    assert!(n >= 1);
    if let Some(p) = lookup(Kind::Sum(n)) {
        return Ok(p);
    }
    let vars = xy_vars(n);
    // S_n = ( w_n(x) + w_n(y) - sum_{d|n, d<n} d * S_d^{n/d} ) / n
    let mut acc = ghost_in(&vars, n, 'x').add(&ghost_in(&vars, n, 'y'));
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let sd = sum_poly(d)?.embed(&vars)?;
        acc = acc.sub(&sd.pow((n / d) as u32).scale(&BigInt::from(d)));
    }
    let sn = acc.exact_div(&BigInt::from(n))?;
    Ok(store(Kind::Sum(n), sn))
}

/// P_n: same, with w_n(x) * w_n(y) on the ghost side.
pub fn prod_poly(n: u64) -> Result<Arc<Poly>> {
    assert!(n >= 1);
    if let Some(p) = lookup(Kind::Prod(n)) {
        return Ok(p);
    }
    let vars = xy_vars(n);
    let mut acc = ghost_in(&vars, n, 'x').mul(&ghost_in(&vars, n, 'y'));
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let pd = prod_poly(d)?.embed(&vars)?;
        acc = acc.sub(&pd.pow((n / d) as u32).scale(&BigInt::from(d)));
    }
    let pn = acc.exact_div(&BigInt::from(n))?;
    Ok(store(Kind::Prod(n), pn))
}

/// Coordinate m of the Frobenius F_k, an integer polynomial in the x_d with
/// d | km, solving w_m(F_k x) = w_{km}(x).
pub fn frobenius_poly(k: u64, m: u64) -> Result<Arc<Poly>> {
    assert!(k >= 1 && m >= 1);
    if let Some(p) = lookup(Kind::Frob(k, m)) {
        return Ok(p);
    }
    let vars = x_vars(k * m);
    let mut acc = ghost_in(&vars, k * m, 'x');
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let fd = frobenius_poly(k, d)?.embed(&vars)?;
        acc = acc.sub(&fd.pow((m / d) as u32).scale(&BigInt::from(d)));
    }
    let fm = acc.exact_div(&BigInt::from(m))?;
    Ok(store(Kind::Frob(k, m), fm))
}

/// The ghost polynomial w_n itself, in variables x_d for d | n.
pub fn ghost_poly(n: u64) -> Poly {
    let vars = x_vars(n);
    ghost_in(&vars, n, 'x')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn memo_supports_concurrent_readers() {
        // concurrent first-time construction must agree (double computation
        // is fine, torn results are not)
        let handles: Vec<_> = std::thread::scope(|s| {
            (0..8)
                .map(|_| s.spawn(|| sum_poly(21).unwrap().term_count()))
                .map(|h| h.join().unwrap())
                .collect()
        });
        assert!(handles.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn degree_one_and_two_match_hand_solutions() {
        assert_eq!(sum_poly(1).unwrap().to_string(), "x1 + y1");
        assert_eq!(prod_poly(1).unwrap().to_string(), "x1*y1");
        // S_2 = x2 + y2 - x1 y1, from (x1+y1)^2 + 2 S_2 = x1^2+2x2 + y1^2+2y2
        assert_eq!(sum_poly(2).unwrap().to_string(), "-x1*y1 + x2 + y2");
        // P_2 = x1^2 y2 + y1^2 x2 + 2 x2 y2
        let p2 = prod_poly(2).unwrap();
        let vars = p2.vars().clone();
        let expected = parse_poly(&vars, "x1^2*y2 + y1^2*x2 + 2*x2*y2").unwrap();
        assert_eq!(*p2.as_ref(), expected);
    }

    #[test]
    fn ghost_equation_holds_symbolically_through_six() {
        // substitute S_d / P_d into w_n and compare against w_n(x) op w_n(y)
        for n in 1..=6u64 {
            let vars = xy_vars(n);
            let gx = ghost_in(&vars, n, 'x');
            let gy = ghost_in(&vars, n, 'y');
            let mut sum_side = Poly::zero(&vars);
            let mut prod_side = Poly::zero(&vars);
            for d in divisors(n) {
                let sd = sum_poly(d).unwrap().embed(&vars).unwrap();
                let pd = prod_poly(d).unwrap().embed(&vars).unwrap();
                sum_side = sum_side.add(&sd.pow((n / d) as u32).scale(&BigInt::from(d)));
                prod_side = prod_side.add(&pd.pow((n / d) as u32).scale(&BigInt::from(d)));
            }
            assert_eq!(sum_side, gx.add(&gy), "sum ghost equation at n={n}");
            assert_eq!(prod_side, gx.mul(&gy), "prod ghost equation at n={n}");
        }
    }

    #[test]
    fn frobenius_ghost_equation_holds_symbolically() {
        // w_m(F_k x) = w_{km}(x) for a few (k, m)
        for (k, m) in [(2u64, 1u64), (2, 2), (3, 2), (2, 4), (6, 2)] {
            let vars = x_vars(k * m);
            let mut lhs = Poly::zero(&vars);
            for d in divisors(m) {
                let fd = frobenius_poly(k, d).unwrap().embed(&vars).unwrap();
                lhs = lhs.add(&fd.pow((m / d) as u32).scale(&BigInt::from(d)));
            }
            assert_eq!(lhs, ghost_in(&vars, k * m, 'x'), "frobenius ghost at k={k} m={m}");
        }
    }
}
