//! Symmetric functions in the elementary and power-sum bases, truncated at
//! a degree bound, with Newton-identity conversions.
//!
//! p_n in the e-basis is integral; e_n in the p-basis is not (already
//! e_2 = (p_1^2 - p_2)/2), so a symmetric function is stored as an integer
//! polynomial over a positive common denominator, normalized. The two
//! substitutions are mutually inverse on the nose, which makes round trips
//! exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymBasis {
    Elementary,
    PowerSum,
}

impl SymBasis {
    fn var_prefix(self) -> &'static str {
        match self {
            SymBasis::Elementary => "e",
            SymBasis::PowerSum => "p",
        }
    }

    pub fn vars(self, bound: u32) -> Arc<Vars> {
        let names: Vec<String> = (1..=bound)
            .map(|i| format!("{}{}", self.var_prefix(), i))
            .collect();
        Vars::new(&names)
    }

    pub fn other(self) -> SymBasis {
        match self {
            SymBasis::Elementary => SymBasis::PowerSum,
            SymBasis::PowerSum => SymBasis::Elementary,
        }
    }
}

/// A symmetric function up to degree `bound` in one of the bases, written
/// as num/denom with denom > 0 and gcd(content(num), denom) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFun {
    pub bound: u32,
    pub basis: SymBasis,
    pub num: Poly,
    pub denom: BigInt,
}

impl SymFun {
    /// An integral symmetric function (denominator 1).
    pub fn new(bound: u32, basis: SymBasis, poly: Poly) -> Result<SymFun> {
        if **poly.vars() != *basis.vars(bound) {
            return Err(Error::invalid(
                "symmetric function must be written in e1..eN or p1..pN",
            ));
        }
        Ok(SymFun { bound, basis, num: poly, denom: BigInt::one() })
    }

    pub fn normalized(bound: u32, basis: SymBasis, num: Poly, denom: BigInt) -> SymFun {
        assert!(!denom.is_zero());
        let (num, denom) = if denom.is_negative() {
            (num.neg(), -denom)
        } else {
            (num, denom)
        };
        let mut g = denom.clone();
        for (_, c) in num.terms() {
            g = num_integer::gcd(g, c.clone());
        }
        if g.is_zero() || g.is_one() {
            return SymFun { bound, basis, num, denom };
        }
        SymFun {
            bound,
            basis,
            num: num.map_coeffs(|c| c / &g),
            denom: denom / &g,
        }
    }

    pub fn basis_element(bound: u32, basis: SymBasis, i: u32) -> SymFun {
        let vars = basis.vars(bound);
        SymFun {
            bound,
            basis,
            num: Poly::var(&vars, (i - 1) as usize),
            denom: BigInt::one(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }
}

impl fmt::Display for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.denom)
        }
    }
}

/// p_n written in the elementary basis, by
/// p_n = sum_{i=1..n-1} (-1)^{i-1} e_i p_{n-i} + (-1)^{n-1} n e_n.
pub fn power_sum_in_elementary(n: u32, bound: u32) -> Poly {
    assert!(n >= 1 && n <= bound);
    let vars = SymBasis::Elementary.vars(bound);
    let mut ps: Vec<Poly> = vec![Poly::zero(&vars)]; // index 0 unused
    for k in 1..=n {
        let mut acc = Poly::zero(&vars);
        for i in 1..k {
            let term = Poly::var(&vars, (i - 1) as usize).mul(&ps[(k - i) as usize]);
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        let ek = Poly::var(&vars, (k - 1) as usize).scale(&BigInt::from(k));
        if k % 2 == 1 {
            acc = acc.add(&ek);
        } else {
            acc = acc.sub(&ek);
        }
        ps.push(acc);
    }
    ps[n as usize].clone()
}

/// Sparse polynomial with rational coefficients; only what the basis
/// conversion needs.
#[derive(Debug, Clone)]
struct QPoly {
    vars: Arc<Vars>,
    terms: HashMap<Mono, BigRational>,
}

impl QPoly {
    fn zero(vars: &Arc<Vars>) -> QPoly {
        QPoly { vars: vars.clone(), terms: HashMap::new() }
    }

    fn constant(vars: &Arc<Vars>, c: BigRational) -> QPoly {
        let mut q = QPoly::zero(vars);
        q.add_term(Mono::unit(vars.len()), c);
        q
    }

    fn var(vars: &Arc<Vars>, i: usize) -> QPoly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut q = QPoly::zero(vars);
        q.add_term(Mono(e), BigRational::one());
        q
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn scale(&self, s: &BigRational) -> QPoly {
        let mut out = QPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::constant(&self.vars, BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Split into an integer polynomial over a common denominator.
    fn into_num_denom(self) -> (Poly, BigInt) {
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let scale = BigRational::from(lcm.clone());
        let terms: Vec<(Mono, BigInt)> = self
            .terms
            .into_iter()
            .map(|(m, c)| (m, (c * scale.clone()).to_integer()))
            .collect();
        (Poly::from_terms(&self.vars, terms), lcm)
    }
}

/// e_n written in the power-sum basis (rational):
/// e_n = (1/n) sum_{i=1..n} (-1)^{i-1} e_{n-i} p_i.
fn elementary_in_power_sums(bound: u32) -> Vec<QPoly> {
    let vars = SymBasis::PowerSum.vars(bound);
    let mut es: Vec<QPoly> = vec![QPoly::constant(&vars, BigRational::one())];
    for n in 1..=bound {
        let mut acc = QPoly::zero(&vars);
        for i in 1..=n {
            let term = es[(n - i) as usize].mul(&QPoly::var(&vars, (i - 1) as usize));
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        es.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
    }
    es
}

/// Rewrite a symmetric function in the other basis. The substitutions in
/// the two directions are mutually inverse, so converting there and back is
/// the identity.
pub fn newton_convert(f: &SymFun, target: SymBasis) -> Result<SymFun> {
    if f.basis == target {
        return Ok(f.clone());
    }
    let images: Vec<QPoly> = match target {
        SymBasis::Elementary => {
            let vars = SymBasis::Elementary.vars(f.bound);
            (1..=f.bound)
                .map(|i| {
                    let p = power_sum_in_elementary(i, f.bound);
                    let mut q = QPoly::zero(&vars);
                    for (m, c) in p.terms() {
                        q.add_term(m.clone(), BigRational::from(c.clone()));
                    }
                    q
                })
                .collect()
        }
        SymBasis::PowerSum => elementary_in_power_sums(f.bound)[1..].to_vec(),
    };
    let vars = target.vars(f.bound);
    let mut acc = QPoly::zero(&vars);
    for (m, c) in f.num.terms() {
        let mut t = QPoly::constant(&vars, BigRational::from(c.clone()));
        for (i, &e) in m.0.iter().enumerate() {
            if e < 0 {
                return Err(Error::invalid("negative exponents in a symmetric function"));
            }
            if e > 0 {
                t = t.mul(&images[i].pow(e as u32));
            }
        }
        acc = acc.add(&t);
    }
    let acc = acc.scale(&BigRational::new(BigInt::one(), f.denom.clone()));
    let (num, denom) = acc.into_num_denom();
    Ok(SymFun::normalized(f.bound, target, num, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn newton_identities_low_degrees() {
        let b = 4;
        let e = SymBasis::Elementary.vars(b);
        assert_eq!(power_sum_in_elementary(1, b), parse_poly(&e, "e1").unwrap());
        assert_eq!(
            power_sum_in_elementary(2, b),
            parse_poly(&e, "e1^2 - 2*e2").unwrap()
        );
        assert_eq!(
            power_sum_in_elementary(3, b),
            parse_poly(&e, "e1^3 - 3*e1*e2 + 3*e3").unwrap()
        );
    }

    #[test]
    fn p_basis_elements_convert_integrally() {
        let b = 5;
        let p2 = newton_convert(
            &SymFun::basis_element(b, SymBasis::PowerSum, 2),
            SymBasis::Elementary,
        )
        .unwrap();
        assert!(p2.is_integral());
        assert_eq!(p2.num.to_string(), "e1^2 - 2*e2");
    }

    #[test]
    fn e2_in_power_sums_is_rational() {
        let e2 = newton_convert(
            &SymFun::basis_element(4, SymBasis::Elementary, 2),
            SymBasis::PowerSum,
        )
        .unwrap();
        assert_eq!(e2.to_string(), "(p1^2 - p2)/2");
    }

    #[test]
    fn round_trip_basis_elements_degree_ten() {
        let b = 10;
        for i in 1..=b {
            for basis in [SymBasis::Elementary, SymBasis::PowerSum] {
                let f = SymFun::basis_element(b, basis, i);
                let g = newton_convert(&f, basis.other()).unwrap();
                let back = newton_convert(&g, basis).unwrap();
                assert_eq!(back, f, "round trip of {basis:?} basis element {i}");
            }
        }
    }

    #[test]
    fn round_trip_a_product() {
        let b = 6;
        let e = SymBasis::Elementary.vars(b);
        let f = SymFun::new(
            b,
            SymBasis::Elementary,
            parse_poly(&e, "e2*e3 - 5*e1^2 + e6").unwrap(),
        )
        .unwrap();
        let g = newton_convert(&f, SymBasis::PowerSum).unwrap();
        let back = newton_convert(&g, SymBasis::Elementary).unwrap();
        assert_eq!(back, f);
    }
}
