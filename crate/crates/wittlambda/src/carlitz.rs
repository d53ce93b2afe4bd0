//! Twisted polynomials, the Carlitz module, and the Moore matrix.
//!
//! TwistedPoly is the ring F_q\[t\]{tau} with tau a = a^q tau, tau acting as
//! the q-power Frobenius on coefficients. The Carlitz module is the
//! F_q-algebra map rho: F_q\[t\] -> F_q\[t\]{tau} with rho(t) = t + tau; for a
//! monic irreducible m the twisted polynomial rho(m) is a lift of the
//! q^(deg m)-power Frobenius at the place m: all its tau^i coefficients
//! with i < deg m are divisible by m and the top coefficient is 1. Its
//! tau^0 coefficient is m itself, which is the witness that psi_m acts
//! nontrivially on the conormal direction (these structures do not descend
//! to the constant field).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};

/// Univariate polynomial over F_q in the indeterminate t, little-endian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    field: Arc<FqField>,
    coeffs: Vec<FqElem>,
}

impl TPoly {
    pub fn zero(field: &Arc<FqField>) -> TPoly {
        TPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FqElem) -> TPoly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        TPoly { field, coeffs }
    }

    pub fn one(field: &Arc<FqField>) -> TPoly {
        TPoly::constant(field.one())
    }

    pub fn var(field: &Arc<FqField>) -> TPoly {
        TPoly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn from_coeffs(field: &Arc<FqField>, mut coeffs: Vec<FqElem>) -> TPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { field: field.clone(), coeffs }
    }

    /// Monic polynomial of the given degree with index-encoded lower
    /// coefficients (base q digits, constant digit least significant).
    pub fn monic_by_index(field: &Arc<FqField>, degree: u32, mut index: u64) -> TPoly {
        let q = field.order();
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push(field.element(index % q));
            index /= q;
        }
        coeffs.push(field.one());
        TPoly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            out.push(a.add(&b));
        }
        TPoly::from_coeffs(&self.field, out)
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TPoly::from_coeffs(&self.field, out)
    }

    pub fn pow(&self, e: u64) -> TPoly {
        let mut acc = TPoly::one(&self.field);
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

    /// The q-power Frobenius endomorphism of F_q\[t\]:
    /// (sum c_k t^k)^q = sum c_k^q t^{kq}.
    pub fn frobenius_q(&self) -> TPoly {
        let q = self.field.order();
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); (self.coeffs.len() - 1) * q as usize + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[k * q as usize] = c.pow(q);
            }
        }
        TPoly::from_coeffs(&self.field, out)
    }

    /// Remainder modulo a monic divisor.
    pub fn rem(&self, m: &TPoly) -> Result<TPoly> {
        if !m.is_monic() {
            return Err(Error::invalid("remainder needs a monic modulus"));
        }
        let d = m.coeffs.len();
        let mut r = self.coeffs.clone();
        while r.len() >= d {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - d;
            for (i, mi) in m.coeffs.iter().enumerate() {
                r[i + shift] = r[i + shift].sub(&lead.mul(mi));
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok(TPoly::from_coeffs(&self.field, r))
    }

    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let q = self.field.order();
        for e in 1..=d / 2 {
            for idx in 0..q.pow(e) {
                let div = TPoly::monic_by_index(&self.field, e, idx);
                if self.rem(&div).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let coeff_one = cs == "1";
            let needs_parens = cs.contains('+') || cs.contains('*');
            match k {
                0 => {
                    if needs_parens {
                        write!(f, "({cs})")?;
                    } else {
                        write!(f, "{cs}")?;
                    }
                }
                _ => {
                    if !coeff_one {
                        if needs_parens {
                            write!(f, "({cs})*")?;
                        } else {
                            write!(f, "{cs}*")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// All monic irreducibles of degree <= max_degree, by (degree, index).
pub fn monic_irreducibles(field: &Arc<FqField>, max_degree: u32) -> Vec<TPoly> {
    let q = field.order();
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for idx in 0..q.pow(d) {
            let m = TPoly::monic_by_index(field, d, idx);
            if m.is_irreducible() {
                out.push(m);
            }
        }
    }
    out
}

/// An element sum a_i tau^i of the twisted ring F_q\[t\]{tau}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Arc<FqField>,
    coeffs: Vec<TPoly>,
}

impl TwistedPoly {
    pub fn zero(field: &Arc<FqField>) -> TwistedPoly {
        TwistedPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn scalar(a: TPoly) -> TwistedPoly {
        let field = a.field().clone();
        let coeffs = if a.is_zero() { Vec::new() } else { vec![a] };
        TwistedPoly { field, coeffs }
    }

    pub fn one(field: &Arc<FqField>) -> TwistedPoly {
        TwistedPoly::scalar(TPoly::one(field))
    }

    pub fn tau(field: &Arc<FqField>) -> TwistedPoly {
        TwistedPoly {
            field: field.clone(),
            coeffs: vec![TPoly::zero(field), TPoly::one(field)],
        }
    }

    pub fn from_coeffs(field: &Arc<FqField>, mut coeffs: Vec<TPoly>) -> TwistedPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TwistedPoly { field: field.clone(), coeffs }
    }

    pub fn coeff(&self, i: usize) -> TPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| TPoly::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        TwistedPoly::from_coeffs(&self.field, out)
    }

    /// Twisted product: (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}, the
    /// commutation rule tau a = a^q tau. The q^i-th powers are iterated
    /// Frobenius images, computed coefficientwise.
    pub fn mul(&self, other: &TwistedPoly) -> TwistedPoly {
        if self.is_zero() || other.is_zero() {
            return TwistedPoly::zero(&self.field);
        }
        let mut out = vec![TPoly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, b) in other.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut twisted = b.clone(); // b^{q^i}, advanced with i
            for (i, a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(&twisted));
                }
                if i + 1 < self.coeffs.len() {
                    twisted = twisted.frobenius_q();
                }
            }
        }
        TwistedPoly::from_coeffs(&self.field, out)
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            match i {
                0 => write!(f, "({cs})")?,
                1 => write!(f, "({cs})*tau")?,
                _ => write!(f, "({cs})*tau^{i}")?,
            }
        }
        Ok(())
    }
}

/// The Carlitz module map rho: F_q\[t\] -> F_q\[t\]{tau}, the F_q-algebra
/// homomorphism with rho(t) = t + tau and rho(c) = c for constants.
pub fn carlitz_rho(f: &TPoly) -> TwistedPoly {
    let field = f.field();
    let rho_t = TwistedPoly::scalar(TPoly::var(field)).add(&TwistedPoly::tau(field));
    let mut acc = TwistedPoly::zero(field);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(&rho_t);
        acc = acc.add(&TwistedPoly::scalar(TPoly::constant(c.clone())));
    }
    acc
}

#[derive(Debug, Clone)]
pub struct CarlitzLiftCheck {
    pub modulus: String,
    pub degree: u32,
    pub pass: bool,
    pub witness: Option<String>,
    /// The tau^0 coefficient of rho(m): equals m, showing psi_m acts on the
    /// conormal direction by multiplication by m (nonzero).
    pub conormal_coefficient: String,
}

/// Check rho(m) = tau^{deg m} modulo m for a monic irreducible m: all
/// lower tau-coefficients divisible by m and the top coefficient congruent
/// to 1.
pub fn verify_carlitz_frobenius_lift(m: &TPoly) -> Result<CarlitzLiftCheck> {
    let Some(d) = m.degree() else {
        return Err(Error::NotIrreducible("0".into(), m.field().order()));
    };
    if !m.is_monic() || !m.is_irreducible() {
        return Err(Error::NotIrreducible(m.to_string(), m.field().order()));
    }
    let rho_m = carlitz_rho(m);
    let mut pass = true;
    let mut witness = None;
    if rho_m.degree() != Some(d as usize) {
        pass = false;
        witness = Some(format!("rho(m) has tau-degree {:?}, want {d}", rho_m.degree()));
    }
    for i in 0..=d as usize {
        let c = rho_m.coeff(i);
        let r = c.rem(m)?;
        let expected_zero = i < d as usize;
        if expected_zero && !r.is_zero() {
            pass = false;
            witness.get_or_insert(format!(
                "tau^{i} coefficient {c} is not divisible by {m}"
            ));
        }
        if !expected_zero && r != TPoly::one(m.field()) {
            pass = false;
            witness.get_or_insert(format!(
                "top coefficient {c} is not congruent to 1 mod {m}"
            ));
        }
    }
    Ok(CarlitzLiftCheck {
        modulus: m.to_string(),
        degree: d,
        pass,
        witness,
        conormal_coefficient: rho_m.coeff(0).to_string(),
    })
}

/// The Moore matrix (a_j^{q^i}), i = 0..d-1, over an extension of F_q.
pub fn moore_matrix(a: &[FqElem], q: u64) -> Vec<Vec<FqElem>> {
    let d = a.len();
    (0..d)
        .map(|i| a.iter().map(|x| x.pow(q.pow(i as u32))).collect())
        .collect()
}

/// Determinant of the Moore matrix; zero exactly when the entries are
/// F_q-linearly dependent.
pub fn moore_det(a: &[FqElem], q: u64) -> Result<FqElem> {
    if a.is_empty() {
        return Err(Error::invalid("moore matrix needs at least one entry"));
    }
    let field = a[0].field().clone();
    let mut m = moore_matrix(a, q);
    let d = m.len();
    let mut det = field.one();
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&r| !m[r][col].is_zero()) else {
            return Ok(field.zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv().unwrap();
        for r in col + 1..d {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            let pivot_row: Vec<FqElem> = m[col][col..].to_vec();
            for (x, pv) in m[r][col..].iter_mut().zip(&pivot_row) {
                *x = x.sub(&factor.mul(pv));
            }
        }
    }
    Ok(det)
}

/// Elements of the subfield F_q inside the ambient extension, ascending by
/// index: the fixed points of x -> x^q.
pub fn subfield_elements(field: &Arc<FqField>, q: u64) -> Vec<FqElem> {
    (0..field.order())
        .map(|k| field.element(k))
        .filter(|x| x.pow(q) == *x)
        .collect()
}

/// Brute-force F_q-linear dependence: some nonzero coefficient vector over
/// the subfield F_q kills sum c_j a_j.
pub fn brute_force_dependent(a: &[FqElem], q: u64) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::invalid("need at least one entry"));
    }
    let field = a[0].field().clone();
    let sub = subfield_elements(&field, q);
    if sub.len() as u64 != q {
        return Err(Error::invalid(format!(
            "F_{q} is not a subfield of F_{}",
            field.order()
        )));
    }
    let d = a.len();
    let total = q.pow(d as u32);
    for idx in 1..total {
        let mut acc = field.zero();
        let mut rest = idx;
        for x in a {
            let c = &sub[(rest % q) as usize];
            rest /= q;
            acc = acc.add(&c.mul(x));
        }
        if acc.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FqField> {
        FqField::get(2, 1).unwrap()
    }

    #[test]
    fn twisted_commutation_rule() {
        // tau * t = t^q * tau over F_2[t]
        let f = f2();
        let t = TwistedPoly::scalar(TPoly::var(&f));
        let tau = TwistedPoly::tau(&f);
        let lhs = tau.mul(&t);
        let t2 = TwistedPoly::scalar(TPoly::var(&f).pow(2));
        let rhs = t2.mul(&tau);
        assert_eq!(lhs, rhs);
        // f * 1 = f
        let any = t.add(&tau).mul(&tau);
        assert_eq!(any.mul(&TwistedPoly::one(&f)), any);
    }

    #[test]
    fn rho_t_squared_over_f2() {
        // rho(t^2) = (t + tau)^2 = t^2 + (t + t^2) tau + tau^2
        let f = f2();
        let t = TPoly::var(&f);
        let rho = carlitz_rho(&t.pow(2));
        assert_eq!(rho.coeff(0), t.pow(2));
        assert_eq!(rho.coeff(1), t.add(&t.pow(2)));
        assert_eq!(rho.coeff(2), TPoly::one(&f));
        assert_eq!(rho.degree(), Some(2));
    }

    #[test]
    fn rho_is_constant_on_scalars() {
        let f3 = FqField::get(3, 1).unwrap();
        for c in 0..3 {
            let p = TPoly::constant(f3.element(c));
            assert_eq!(carlitz_rho(&p), TwistedPoly::scalar(p.clone()));
        }
    }

    #[test]
    fn rho_is_multiplicative_on_samples() {
        let f = f2();
        let a = TPoly::from_coeffs(&f, vec![f.one(), f.one(), f.one()]); // t^2+t+1
        let b = TPoly::from_coeffs(&f, vec![f.zero(), f.one()]); // t
        let lhs = carlitz_rho(&a.mul(&b));
        let rhs = carlitz_rho(&a).mul(&carlitz_rho(&b));
        assert_eq!(lhs, rhs);
        // and additive
        assert_eq!(carlitz_rho(&a.add(&b)), carlitz_rho(&a).add(&carlitz_rho(&b)));
    }

    #[test]
    fn irreducible_enumeration() {
        // over F_2: t, t+1; t^2+t+1; t^3+t+1, t^3+t^2+1
        let irr = monic_irreducibles(&f2(), 3);
        let printed: Vec<String> = irr.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            printed,
            vec!["t", "t + 1", "t^2 + t + 1", "t^3 + t + 1", "t^3 + t^2 + 1"]
        );
        // over F_3 there are 3 + 3 + 8 of degree <= 3
        let f3 = FqField::get(3, 1).unwrap();
        assert_eq!(monic_irreducibles(&f3, 3).len(), 14);
    }

    #[test]
    fn frobenius_lift_verification() {
        // q=2, m=t: rho(t) = t + tau = tau mod t
        let f = f2();
        let check = verify_carlitz_frobenius_lift(&TPoly::var(&f)).unwrap();
        assert!(check.pass);
        assert_eq!(check.conormal_coefficient, "t");
        // q=2, m=t^2+t+1
        let m = TPoly::from_coeffs(&f, vec![f.one(), f.one(), f.one()]);
        assert!(verify_carlitz_frobenius_lift(&m).unwrap().pass);
        // q=3, m=t
        let f3 = FqField::get(3, 1).unwrap();
        assert!(verify_carlitz_frobenius_lift(&TPoly::var(&f3)).unwrap().pass);
        // reducible moduli are rejected
        let sq = TPoly::var(&f).pow(2);
        assert!(matches!(
            verify_carlitz_frobenius_lift(&sq),
            Err(Error::NotIrreducible(_, _))
        ));
    }

    #[test]
    fn moore_determinant_examples() {
        // d=1: det = a_1
        let f4 = FqField::get(2, 2).unwrap();
        let w = f4.generator();
        assert_eq!(moore_det(std::slice::from_ref(&w), 2).unwrap(), w);
        // F_4, a = (1, w): det = w^2 - w = 1 (nonzero, independent over F_2)
        let det = moore_det(&[f4.one(), w.clone()], 2).unwrap();
        assert_eq!(det, f4.one());
        assert!(!brute_force_dependent(&[f4.one(), w.clone()], 2).unwrap());
        // a = (1, 1): dependent, det 0
        let det = moore_det(&[f4.one(), f4.one()], 2).unwrap();
        assert!(det.is_zero());
        assert!(brute_force_dependent(&[f4.one(), f4.one()], 2).unwrap());
    }

    #[test]
    fn moore_criterion_exhaustive_f4() {
        let f4 = FqField::get(2, 2).unwrap();
        for d in 1..=3usize {
            for idx in 0..4u64.pow(d as u32) {
                let mut a = Vec::new();
                let mut rest = idx;
                for _ in 0..d {
                    a.push(f4.element(rest % 4));
                    rest /= 4;
                }
                let det_zero = moore_det(&a, 2).unwrap().is_zero();
                let dep = brute_force_dependent(&a, 2).unwrap();
                assert_eq!(det_zero, dep, "moore criterion at {a:?}");
            }
        }
    }

    #[test]
    fn subfields_detected() {
        let f16 = FqField::get(2, 4).unwrap();
        assert_eq!(subfield_elements(&f16, 4).len(), 4);
        assert_eq!(subfield_elements(&f16, 2).len(), 2);
        let f9 = FqField::get(3, 2).unwrap();
        assert_eq!(subfield_elements(&f9, 3).len(), 3);
    }
}
