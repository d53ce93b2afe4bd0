//! Exact multivariate (Laurent-capable) polynomials over Z.
//!
//! Terms map exponent vectors to nonzero BigInt coefficients; the term
//! order is graded-lexicographic and fixed globally, so printed output is
//! bit-stable. Exponents may be negative exactly in variables flagged as
//! Laurent.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{BaseRing, Scalar};

/// An ordered set of variable names with per-variable Laurent flags.
#[derive(Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Vars> {
        Arc::new(Vars {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent: vec![false; names.len()],
        })
    }

    pub fn with_laurent<S: AsRef<str>>(names: &[S], laurent: &[bool]) -> Arc<Vars> {
        assert_eq!(names.len(), laurent.len());
        Arc::new(Vars {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent: laurent.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector with graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn unit(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise a >= b (the divisibility test used by rewriting).
    pub fn divisible_by(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Substitution image for one variable. `inverse` is required whenever the
/// variable occurs with a negative exponent in the polynomial being mapped.
#[derive(Debug, Clone)]
pub struct Subst {
    pub image: Poly,
    pub inverse: Option<Poly>,
}

impl Subst {
    pub fn of(image: Poly) -> Subst {
        Subst { image, inverse: None }
    }

    pub fn invertible(image: Poly, inverse: Poly) -> Subst {
        Subst { image, inverse: Some(inverse) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<Vars>,
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero(vars: &Arc<Vars>) -> Poly {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Vars>, c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(vars.len()), c);
        }
        Poly { vars: vars.clone(), terms }
    }

    pub fn one(vars: &Arc<Vars>) -> Poly {
        Poly::constant(vars, BigInt::one())
    }

    pub fn int(vars: &Arc<Vars>, n: i64) -> Poly {
        Poly::constant(vars, BigInt::from(n))
    }

    pub fn var(vars: &Arc<Vars>, i: usize) -> Poly {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Poly::monomial(vars, Mono(exps), BigInt::one())
    }

    pub fn monomial(vars: &Arc<Vars>, mono: Mono, coeff: BigInt) -> Poly {
        assert_eq!(mono.0.len(), vars.len());
        debug_assert!(
            mono.0
                .iter()
                .enumerate()
                .all(|(i, &e)| e >= 0 || vars.is_laurent(i)),
            "negative exponent on a non-Laurent variable"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { vars: vars.clone(), terms }
    }

    pub fn from_terms(vars: &Arc<Vars>, terms: impl IntoIterator<Item = (Mono, BigInt)>) -> Poly {
        let mut out = Poly::zero(vars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    /// Leading term in graded-lex.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Mono) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// When every non-unit exponent vector touches exactly one variable,
    /// returns it. Constants yield None.
    pub fn sole_variable(&self) -> Option<usize> {
        let mut seen: Option<usize> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    match seen {
                        None => seen = Some(i),
                        Some(j) if j == i => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        seen
    }

    /// Dense coefficient list c_0..c_d in `var`, when the polynomial is a
    /// univariate polynomial in that variable with nonnegative exponents.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if i != var && e != 0 {
                    return None;
                }
            }
            let e = m.0[var];
            if e < 0 {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    fn add_term(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Poly) {
        assert!(
            self.vars == other.vars || Arc::ptr_eq(&self.vars, &other.vars),
            "polynomials over different variable sets"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_vars(other);
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(self.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono, coeff: &BigInt) -> Poly {
        if coeff.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            if e > 1 {
                base = base.mul(&base);
            }
            e >>= 1;
        }
        acc
    }

    /// Divide every coefficient by n, erroring on any non-divisibility.
    pub fn exact_div(&self, n: &BigInt) -> Result<Poly> {
        if n.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, n);
            if !r.is_zero() {
                return Err(Error::NonIntegralDivision {
                    coefficient: c.clone(),
                    divisor: n.clone(),
                });
            }
            if !q.is_zero() {
                terms.insert(m.clone(), q);
            }
        }
        Ok(Poly { vars: self.vars.clone(), terms })
    }

    /// Reduce coefficients to the canonical representative of the base ring
    /// (identity over Z, 0..m over Z/m, 0..p over F_{p^e}).
    pub fn canonicalize_coeffs(&self, base: &BaseRing) -> Poly {
        let ch = match base {
            BaseRing::Int => return self.clone(),
            BaseRing::Mod(m) => BigInt::from(*m),
            BaseRing::Gf(f) => BigInt::from(f.characteristic()),
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = num_integer::Integer::mod_floor(c, &ch);
            if !r.is_zero() {
                terms.insert(m.clone(), r);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c2 = f(c);
            if !c2.is_zero() {
                terms.insert(m.clone(), c2);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    /// Formal derivative in one variable; valid for Laurent exponents.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, c * BigInt::from(e));
        }
        out
    }

    /// Evaluate at scalars of a base ring. Negative exponents require the
    /// value to be a unit of the ring.
    pub fn eval(&self, ring: &BaseRing, vals: &[Scalar]) -> Result<Scalar> {
        assert_eq!(vals.len(), self.vars.len());
        let mut cache: HashMap<(usize, i32), Scalar> = HashMap::new();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.from_bigint(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = vals[i].pow_i64(e as i64).ok_or_else(|| {
                            Error::invalid(format!(
                                "negative power of non-unit {} in {}",
                                vals[i], ring
                            ))
                        })?;
                        cache.insert((i, e), p.clone());
                        p
                    }
                };
                t = t.mul(&pw);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Evaluate at rational points; values must be nonzero wherever a
    /// negative exponent occurs.
    pub fn eval_rational(&self, vals: &[BigRational]) -> Result<BigRational> {
        assert_eq!(vals.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && vals[i].is_zero() {
                    return Err(Error::invalid("negative power of zero"));
                }
                t *= power_rational(&vals[i], e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Apply a ring map given by generator images. Negative exponents use
    /// the supplied inverse image and error when it is absent.
    pub fn substitute(&self, images: &[Subst]) -> Result<Poly> {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|s| s.image.vars().clone())
            .unwrap_or_else(|| Vars::new::<&str>(&[]));
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = if e > 0 {
                    images[i].image.pow(e as u32)
                } else {
                    let inv = images[i].inverse.as_ref().ok_or_else(|| {
                        Error::invalid(format!(
                            "no inverse image for generator {} with negative exponent",
                            self.vars.name(i)
                        ))
                    })?;
                    inv.pow(e.unsigned_abs())
                };
                t = t.mul(&factor);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Re-express over a superset variable list, matching by name.
    pub fn embed(&self, target: &Arc<Vars>) -> Result<Poly> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let j = target.index_of(name).ok_or_else(|| {
                Error::invalid(format!("variable {name} missing from target variable set"))
            })?;
            let _ = i;
            map.push(j);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            terms.insert(Mono(exps), c.clone());
        }
        Ok(Poly { vars: target.clone(), terms })
    }

    /// Largest absolute integer root bound for a univariate polynomial given
    /// by dense coefficients (Cauchy bound), used for completeness
    /// certificates in fixed-point searches.
    pub fn cauchy_bound(coeffs: &[BigInt]) -> Option<BigInt> {
        let lead = coeffs.last()?;
        if lead.is_zero() {
            return None;
        }
        let mut best = BigInt::zero();
        for c in &coeffs[..coeffs.len() - 1] {
            // ceil(|c| / |lead|)
            let q = (c.abs() + lead.abs() - 1) / lead.abs();
            best = best.max(q);
        }
        Some(best + 1)
    }
}

fn power_rational(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = if e >= 0 { x.clone() } else { x.recip() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= base.clone();
        }
        if k > 1 {
            base = base.clone() * base;
        }
        k >>= 1;
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn xy() -> Arc<Vars> {
        Vars::new(&["x", "y"])
    }

    #[test]
    fn graded_lex_ordering() {
        // x^2 > xy > y^2 > x > y > 1 with x before y
        let a = Mono(vec![2, 0]);
        let b = Mono(vec![1, 1]);
        let c = Mono(vec![0, 2]);
        let d = Mono(vec![1, 0]);
        assert!(a > b && b > c && c > d);
    }

    #[test]
    fn arithmetic_and_display() {
        let v = xy();
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        let q = p.sub(&x.pow(2)).sub(&y.pow(2));
        assert_eq!(q.to_string(), "2*x*y");
        assert_eq!(q.exact_div(&BigInt::from(2)).unwrap().to_string(), "x*y");
    }

    #[test]
    fn exact_div_rejects_non_integral() {
        let v = xy();
        let p = parse_poly(&v, "x^3 + 3*x").unwrap();
        match p.exact_div(&BigInt::from(2)) {
            Err(Error::NonIntegralDivision { .. }) => {}
            other => panic!("expected NonIntegralDivision, got {other:?}"),
        }
        // (x^2 + y^2 - (x+y)^2 + 2*x) / 2 = x - x*y
        let p = parse_poly(&v, "x^2 + y^2 - (x + y)^2 + 2*x").unwrap();
        assert_eq!(p.exact_div(&BigInt::from(2)).unwrap().to_string(), "-x*y + x");
    }

    #[test]
    fn laurent_cancellation() {
        let v = Vars::with_laurent(&["t"], &[true]);
        let t = Poly::var(&v, 0);
        let tinv = Poly::monomial(&v, Mono(vec![-1]), BigInt::one());
        assert_eq!(t.mul(&tinv).to_string(), "1");
        assert_eq!(tinv.to_string(), "t^-1");
    }

    #[test]
    fn derivative_laurent() {
        let v = Vars::with_laurent(&["t"], &[true]);
        let p = parse_poly(&v, "t^2 + t^-1").unwrap();
        assert_eq!(p.derivative(0).to_string(), "2*t - t^-2");
    }

    #[test]
    fn display_parses_back() {
        let v = xy();
        let p = parse_poly(&v, "3*x^2*y - x + 7").unwrap();
        let q = parse_poly(&v, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }
}
