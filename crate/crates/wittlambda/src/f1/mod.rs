//! F_1-valued points: bounded search for lambda-ring maps into Z.
//!
//! An F_1-point of Spec A assigns an integer to each generator so that all
//! relations vanish and psi_p(g) evaluates to the value of g for every
//! checked prime (the map must commute with the identity lambda-structure
//! on Z). The search is brute force over |values| <= bound; a completeness
//! certificate is attached when the psi_2 fixed-point equations force every
//! generator inside the bound.

pub mod fan;
pub mod gl;

use num_bigint::BigInt;

pub use crate::monoid::{f1_points_monoid, MonoidPresentation, PointTarget, TargetElem};

use crate::error::{Error, Result};
use crate::lambda::LambdaStructure;
use crate::par;
use crate::poly::Poly;
use crate::scalar::{BaseRing, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1Point {
    pub values: Vec<BigInt>,
}

impl std::fmt::Display for F1Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct AffinePointSearch {
    pub points: Vec<F1Point>,
    /// True when the psi_2 equations force every generator value inside the
    /// search bound, so the list is provably complete.
    pub complete: bool,
}

/// Find all candidate F_1-points with |values| <= bound, verifying
/// psi_p-equivariance for every p in `primes` and every declared prime of
/// the structure. Laurent generators must take unit values, so they range
/// over {-1, 1}.
pub fn f1_points_affine(
    l: &LambdaStructure,
    bound: u64,
    primes: &[u64],
    budget: u64,
) -> Result<AffinePointSearch> {
    if *l.ring().base() != BaseRing::Int {
        return Err(Error::invalid("F_1-point search needs a Z-presentation"));
    }
    let vars = l.ring().vars();
    let k = vars.len();
    // check primes: requested union declared
    let mut check: Vec<u64> = primes.to_vec();
    for p in l.declared_primes() {
        if !check.contains(&p) {
            check.push(p);
        }
    }
    check.sort_unstable();
    check.dedup();
    if check.is_empty() {
        return Err(Error::invalid("no primes to check equivariance against"));
    }

    // value ranges, ascending
    let ranges: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            if vars.is_laurent(i) {
                vec![-1, 1]
            } else {
                (-(bound as i64)..=bound as i64).collect()
            }
        })
        .collect();
    let total: u128 = ranges.iter().map(|r| r.len() as u128).product();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }

    // psi images for all check primes, precomputed
    let psi_polys: Vec<Vec<Poly>> = check
        .iter()
        .map(|&p| (0..k).map(|i| l.psi_poly(p, i)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let relations = l.ring().relations();
    let ring = BaseRing::Int;

    let hits = par::filter_map_indexed(total as u64, |idx| {
        let mut vals = Vec::with_capacity(k);
        let mut rest = idx;
        for r in ranges.iter().rev() {
            vals.push(ring.from_i64(r[(rest % r.len() as u64) as usize]));
            rest /= r.len() as u64;
        }
        vals.reverse();
        for rel in relations {
            match rel.eval(&ring, &vals) {
                Ok(v) if v.is_zero() => {}
                _ => return None,
            }
        }
        for images in &psi_polys {
            for (i, img) in images.iter().enumerate() {
                match img.eval(&ring, &vals) {
                    Ok(v) if v == vals[i] => {}
                    _ => return None,
                }
            }
        }
        Some(F1Point {
            values: vals
                .into_iter()
                .map(|s| match s {
                    Scalar::Int(n) => n,
                    _ => unreachable!(),
                })
                .collect(),
        })
    });

    let complete = completeness_certificate(l, bound)?;
    Ok(AffinePointSearch { points: hits, complete })
}

/// The search is certified complete when, for every non-Laurent generator
/// g, psi_2(g) is a univariate polynomial in g of degree >= 2 whose
/// fixed-point equation psi_2(g) - g = 0 has all integer roots inside the
/// bound (via the Cauchy root bound). Laurent generators only ever take
/// the unit values +-1.
fn completeness_certificate(l: &LambdaStructure, bound: u64) -> Result<bool> {
    if !l.covers(2) {
        return Ok(false);
    }
    let vars = l.ring().vars();
    for i in 0..vars.len() {
        if vars.is_laurent(i) {
            continue;
        }
        let img = l.psi_poly(2, i)?;
        let fixed = img.sub(&Poly::var(vars, i));
        match fixed.univariate_coeffs(i) {
            Some(coeffs) if coeffs.len() >= 3 => {
                match Poly::cauchy_bound(&coeffs) {
                    Some(b) if b <= BigInt::from(bound) => {}
                    _ => return Ok(false),
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Convenience: compare the affine search on a toric structure with the
/// monoid-map count (they agree: integer solutions of x^p = x are 0 and 1,
/// and units must be 1).
pub fn toric_points_match_monoid(
    m: &MonoidPresentation,
    bound: u64,
    primes: &[u64],
    budget: u64,
) -> Result<bool> {
    let l = LambdaStructure::toric("toric", m)?;
    let affine = f1_points_affine(&l, bound, primes, budget)?;
    let monoid_pts = f1_points_monoid(m, &PointTarget::ZeroOne);
    if affine.points.len() != monoid_pts.len() {
        return Ok(false);
    }
    // both enumerations are lexicographic; translate {0,1} maps to integers
    let translated: Vec<Vec<BigInt>> = monoid_pts
        .iter()
        .map(|pt| {
            pt.iter()
                .map(|e| BigInt::from(i64::from(e.0.is_some())))
                .collect()
        })
        .collect();
    let mut got: Vec<Vec<BigInt>> = affine.points.iter().map(|p| p.values.clone()).collect();
    let mut want = translated;
    got.sort();
    want.sort();
    Ok(got == want)
}
