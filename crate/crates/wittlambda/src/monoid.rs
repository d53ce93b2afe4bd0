//! Finitely presented commutative monoids and their monoid algebras.
//!
//! A presentation has r free N-generators, s free Z-generators (invertible),
//! and extra generators subject to balanced (word = word) relations, which
//! become binomial relations of the monoid algebra Z\[M\].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Vars};
use crate::ring::RingPresentation;
use crate::scalar::BaseRing;

#[derive(Debug, Clone)]
pub struct MonoidPresentation {
    nat_gens: Vec<String>,
    grp_gens: Vec<String>,
    extra_gens: Vec<String>,
    /// Balanced relations word = word, as exponent vectors over all
    /// generators in order (nat, grp, extra). Negative exponents are only
    /// meaningful on the grp block.
    relations: Vec<(Vec<i32>, Vec<i32>)>,
}

impl MonoidPresentation {
    pub fn new(
        nat_gens: Vec<String>,
        grp_gens: Vec<String>,
        extra_gens: Vec<String>,
        relations: Vec<(Vec<i32>, Vec<i32>)>,
    ) -> Result<MonoidPresentation> {
        let n = nat_gens.len() + grp_gens.len() + extra_gens.len();
        let grp_range = nat_gens.len()..nat_gens.len() + grp_gens.len();
        for (a, b) in &relations {
            if a.len() != n || b.len() != n {
                return Err(Error::invalid("relation word length mismatch"));
            }
            for (i, (&ea, &eb)) in a.iter().zip(b).enumerate() {
                if (ea < 0 || eb < 0) && !grp_range.contains(&i) {
                    return Err(Error::invalid(
                        "negative exponents only on invertible generators",
                    ));
                }
            }
        }
        Ok(MonoidPresentation { nat_gens, grp_gens, extra_gens, relations })
    }

    /// N^r x Z^s with generators x1..xr, u1..us.
    pub fn free(r: usize, s: usize) -> MonoidPresentation {
        MonoidPresentation {
            nat_gens: (1..=r).map(|i| format!("x{i}")).collect(),
            grp_gens: (1..=s).map(|i| format!("u{i}")).collect(),
            extra_gens: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Z/n, the cyclic monoid (in fact group) with x^n = 1.
    pub fn cyclic(n: u64) -> MonoidPresentation {
        MonoidPresentation {
            nat_gens: Vec::new(),
            grp_gens: Vec::new(),
            extra_gens: vec!["x".to_string()],
            relations: vec![(vec![n as i32], vec![0])],
        }
    }

    pub fn gen_names(&self) -> Vec<String> {
        let mut out = self.nat_gens.clone();
        out.extend(self.grp_gens.iter().cloned());
        out.extend(self.extra_gens.iter().cloned());
        out
    }

    pub fn gen_count(&self) -> usize {
        self.nat_gens.len() + self.grp_gens.len() + self.extra_gens.len()
    }

    pub fn grp_indices(&self) -> std::ops::Range<usize> {
        self.nat_gens.len()..self.nat_gens.len() + self.grp_gens.len()
    }

    pub fn relations(&self) -> &[(Vec<i32>, Vec<i32>)] {
        &self.relations
    }

    /// The monoid algebra Z\[M\]: grp generators become Laurent variables,
    /// each balanced relation the binomial word1 - word2.
    pub fn algebra(&self) -> Result<Arc<RingPresentation>> {
        let names = self.gen_names();
        let mut laurent = vec![false; self.gen_count()];
        for i in self.grp_indices() {
            laurent[i] = true;
        }
        let vars = Vars::with_laurent(&names, &laurent);
        let rels: Vec<Poly> = self
            .relations
            .iter()
            .map(|(a, b)| {
                Poly::monomial(&vars, Mono(a.clone()), BigInt::one())
                    .sub(&Poly::monomial(&vars, Mono(b.clone()), BigInt::one()))
            })
            .collect();
        RingPresentation::new(BaseRing::Int, vars, rels)
    }
}

/// Target monoids for F_1-style point counting: ({0,1}, *) or mu_m with an
/// absorbing zero adjoined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointTarget {
    ZeroOne,
    MuZero(u64),
}

impl PointTarget {
    /// Elements in enumeration order: 0 first, then the units.
    pub fn elements(&self) -> Vec<TargetElem> {
        match self {
            PointTarget::ZeroOne => vec![TargetElem(None), TargetElem(Some(0))],
            PointTarget::MuZero(m) => {
                let mut v = vec![TargetElem(None)];
                v.extend((0..*m).map(|j| TargetElem(Some(j))));
                v
            }
        }
    }

    pub fn units(&self) -> Vec<TargetElem> {
        self.elements().into_iter().filter(|e| e.0.is_some()).collect()
    }

    fn modulus(&self) -> u64 {
        match self {
            PointTarget::ZeroOne => 1,
            PointTarget::MuZero(m) => *m,
        }
    }
}

/// None is the absorbing zero; Some(j) is zeta^j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetElem(pub Option<u64>);

impl TargetElem {
    pub fn pow(&self, e: i64, modulus: u64) -> Option<TargetElem> {
        match self.0 {
            None => {
                if e > 0 {
                    Some(TargetElem(None))
                } else if e == 0 {
                    Some(TargetElem(Some(0)))
                } else {
                    None // negative power of zero
                }
            }
            Some(j) => {
                let m = modulus as i64;
                Some(TargetElem(Some(((j as i64 * e) % m + m) as u64 % modulus)))
            }
        }
    }

    pub fn mul(&self, other: &TargetElem, modulus: u64) -> TargetElem {
        match (self.0, other.0) {
            (Some(a), Some(b)) => TargetElem(Some((a + b) % modulus)),
            _ => TargetElem(None),
        }
    }
}

impl fmt::Display for TargetElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(j) => write!(f, "z^{j}"),
        }
    }
}

/// All monoid homomorphisms M -> target, lexicographic in (generator order,
/// element order). Invertible generators land in the unit group.
pub fn f1_points_monoid(
    m: &MonoidPresentation,
    target: &PointTarget,
) -> Vec<Vec<TargetElem>> {
    let modulus = target.modulus();
    let ranges: Vec<Vec<TargetElem>> = (0..m.gen_count())
        .map(|i| {
            if m.grp_indices().contains(&i) {
                target.units()
            } else {
                target.elements()
            }
        })
        .collect();
    let total: u64 = ranges.iter().map(|r| r.len() as u64).product();
    let mut out = Vec::new();
    'outer: for idx in 0..total {
        let mut assignment = Vec::with_capacity(m.gen_count());
        let mut rest = idx;
        for r in ranges.iter().rev() {
            assignment.push(r[(rest % r.len() as u64) as usize]);
            rest /= r.len() as u64;
        }
        assignment.reverse();
        for (a, b) in m.relations() {
            let eval = |word: &Vec<i32>| -> Option<TargetElem> {
                let mut acc = TargetElem(Some(0));
                for (i, &e) in word.iter().enumerate() {
                    if e != 0 {
                        acc = acc.mul(&assignment[i].pow(e as i64, modulus)?, modulus);
                    }
                }
                Some(acc)
            };
            match (eval(a), eval(b)) {
                (Some(x), Some(y)) if x == y => {}
                _ => continue 'outer,
            }
        }
        out.push(assignment);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_point_counts() {
        // N^d has 2^d maps to {0,1}
        for d in 0..=3 {
            let m = MonoidPresentation::free(d, 0);
            assert_eq!(f1_points_monoid(&m, &PointTarget::ZeroOne).len(), 1 << d);
        }
        // Z^s has a single map (everything to 1)
        for s in 1..=3 {
            let m = MonoidPresentation::free(0, s);
            let pts = f1_points_monoid(&m, &PointTarget::ZeroOne);
            assert_eq!(pts.len(), 1);
            assert!(pts[0].iter().all(|e| e.0 == Some(0)));
        }
        // N^2 x Z has 4 maps
        let m = MonoidPresentation::free(2, 1);
        assert_eq!(f1_points_monoid(&m, &PointTarget::ZeroOne).len(), 4);
    }

    #[test]
    fn cyclic_monoid_points() {
        // mu_n into mu_n with zero: exactly n maps (x must be a unit by x^n = 1)
        for n in 1..=6u64 {
            let m = MonoidPresentation::cyclic(n);
            let pts = f1_points_monoid(&m, &PointTarget::MuZero(n));
            assert_eq!(pts.len(), n as usize, "mu_{n}");
            // into {0,1}: only the trivial map
            assert_eq!(f1_points_monoid(&m, &PointTarget::ZeroOne).len(), 1);
        }
    }

    #[test]
    fn monoid_algebra_shapes() {
        let m = MonoidPresentation::cyclic(4);
        let a = m.algebra().unwrap();
        assert_eq!(a.relations().len(), 1);
        assert_eq!(a.relations()[0].to_string(), "x^4 - 1");
        let m = MonoidPresentation::free(1, 2);
        let a = m.algebra().unwrap();
        assert!(a.vars().is_laurent(1) && a.vars().is_laurent(2));
        assert!(!a.vars().is_laurent(0));
    }
}
