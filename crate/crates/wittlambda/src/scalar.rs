//! Base coefficient rings (Z, Z/m, F_q) and their elements.
//!
//! These are the rings Witt coordinates, point coordinates, and relation
//! coefficients live in. Finite rings enumerate their elements in a fixed
//! index order: Z/m as 0..m, F_{p^e} by base-p digit vectors of the
//! representative (constant digit least significant).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::fq::{FqElem, FqField};

#[derive(Debug, Clone)]
pub enum BaseRing {
    /// The integers.
    Int,
    /// Integers modulo m, m >= 2.
    Mod(u64),
    /// The finite field F_{p^e}.
    Gf(Arc<FqField>),
}

impl PartialEq for BaseRing {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BaseRing::Int, BaseRing::Int) => true,
            (BaseRing::Mod(a), BaseRing::Mod(b)) => a == b,
            (BaseRing::Gf(a), BaseRing::Gf(b)) => {
                a.characteristic() == b.characteristic() && a.degree() == b.degree()
            }
            _ => false,
        }
    }
}
impl Eq for BaseRing {}

impl BaseRing {
    pub fn gf(q: u64) -> Result<BaseRing> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Ok(BaseRing::Gf(FqField::get(p, e)?))
    }

    /// Parse "Z", "Z/m", or "GF(q)".
    pub fn parse(token: &str) -> Result<BaseRing> {
        let t = token.trim();
        if t == "Z" {
            return Ok(BaseRing::Int);
        }
        if let Some(m) = t.strip_prefix("Z/") {
            let m: u64 = m
                .parse()
                .map_err(|_| Error::invalid(format!("bad modulus in {t}")))?;
            if m < 2 {
                return Err(Error::invalid("modulus must be >= 2"));
            }
            return Ok(BaseRing::Mod(m));
        }
        if let Some(rest) = t.strip_prefix("GF(") {
            if let Some(q) = rest.strip_suffix(')') {
                let q: u64 = q
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad field order in {t}")))?;
                return BaseRing::gf(q);
            }
        }
        Err(Error::invalid(format!("unknown ring {t}; expected Z, Z/m, or GF(q)")))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, BaseRing::Int)
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            BaseRing::Int => None,
            BaseRing::Mod(m) => Some(*m),
            BaseRing::Gf(f) => Some(f.order()),
        }
    }

    /// Characteristic (0 for Z).
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseRing::Int => 0,
            BaseRing::Mod(m) => *m,
            BaseRing::Gf(f) => f.characteristic(),
        }
    }

    /// The ring is torsion-free as a Z-module (i.e. is Z itself here).
    pub fn is_torsion_free(&self) -> bool {
        matches!(self, BaseRing::Int)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            BaseRing::Int => Scalar::Int(BigInt::zero()),
            BaseRing::Mod(m) => Scalar::Mod { v: 0, m: *m },
            BaseRing::Gf(f) => Scalar::Fq(f.zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            BaseRing::Int => Scalar::Int(BigInt::from(n)),
            BaseRing::Mod(m) => Scalar::Mod { v: n.rem_euclid(*m as i64) as u64, m: *m },
            BaseRing::Gf(f) => Scalar::Fq(f.from_int(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            BaseRing::Int => Scalar::Int(n.clone()),
            BaseRing::Mod(m) => {
                let v = n.mod_floor(&BigInt::from(*m));
                Scalar::Mod { v: v.to_u64().unwrap(), m: *m }
            }
            BaseRing::Gf(f) => {
                let p = BigInt::from(f.characteristic());
                let v = n.mod_floor(&p).to_i64().unwrap();
                Scalar::Fq(f.from_int(v))
            }
        }
    }

    /// Element with the given enumeration index (finite rings only).
    pub fn element(&self, idx: u64) -> Scalar {
        match self {
            BaseRing::Int => panic!("Z is not enumerable"),
            BaseRing::Mod(m) => Scalar::Mod { v: idx % m, m: *m },
            BaseRing::Gf(f) => Scalar::Fq(f.element(idx)),
        }
    }

    /// Indices of the units, ascending (finite rings only).
    pub fn unit_indices(&self) -> Vec<u64> {
        match self {
            BaseRing::Int => panic!("Z is not enumerable"),
            BaseRing::Mod(m) => (0..*m).filter(|k| k.gcd(m) == 1).collect(),
            BaseRing::Gf(f) => (1..f.order()).collect(),
        }
    }

    /// Whether coefficients of a presentation over `self` map canonically
    /// into `value`: Z maps anywhere, Z/m onto Z/m' with m' | m or into
    /// fields of characteristic dividing m, F_q only onto itself.
    pub fn maps_into(&self, value: &BaseRing) -> bool {
        match (self, value) {
            (BaseRing::Int, _) => true,
            (BaseRing::Mod(m), BaseRing::Mod(m2)) => m % m2 == 0,
            (BaseRing::Mod(m), BaseRing::Gf(f)) => m % f.characteristic() == 0,
            (BaseRing::Gf(_), BaseRing::Gf(_)) => self == value,
            _ => false,
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Int => write!(f, "Z"),
            BaseRing::Mod(m) => write!(f, "Z/{m}"),
            BaseRing::Gf(field) => write!(f, "GF({})", field.order()),
        }
    }
}

/// An element of one of the base rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Mod { v: u64, m: u64 },
    Fq(FqElem),
}

impl Scalar {
    pub fn ring(&self) -> BaseRing {
        match self {
            Scalar::Int(_) => BaseRing::Int,
            Scalar::Mod { m, .. } => BaseRing::Mod(*m),
            Scalar::Fq(x) => BaseRing::Gf(x.field().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Fq(x) => x.is_zero(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Mod { v: a, m }, Scalar::Mod { v: b, m: m2 }) if m == m2 => {
                Scalar::Mod { v: (a + b) % m, m: *m }
            }
            (Scalar::Fq(a), Scalar::Fq(b)) => Scalar::Fq(a.add(b)),
            _ => panic!("scalar ring mismatch in add"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Mod { v, m } => Scalar::Mod { v: (m - v) % m, m: *m },
            Scalar::Fq(a) => Scalar::Fq(a.neg()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Mod { v: a, m }, Scalar::Mod { v: b, m: m2 }) if m == m2 => {
                Scalar::Mod { v: a * b % m, m: *m }
            }
            (Scalar::Fq(a), Scalar::Fq(b)) => Scalar::Fq(a.mul(b)),
            _ => panic!("scalar ring mismatch in mul"),
        }
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = self.ring().one();
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

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(n) => {
                if n.abs() == BigInt::from(1) {
                    Some(Scalar::Int(n.clone()))
                } else {
                    None
                }
            }
            Scalar::Mod { v, m } => {
                let (g, s, _) = extended_gcd(*v as i128, *m as i128);
                if g != 1 {
                    None
                } else {
                    Some(Scalar::Mod { v: s.rem_euclid(*m as i128) as u64, m: *m })
                }
            }
            Scalar::Fq(x) => x.inv().map(Scalar::Fq),
        }
    }

    /// Integer power with possibly negative exponent; needs a unit for e < 0.
    pub fn pow_i64(&self, e: i64) -> Option<Scalar> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn index(&self) -> u64 {
        match self {
            Scalar::Int(_) => panic!("Z elements are not indexed"),
            Scalar::Mod { v, .. } => *v,
            Scalar::Fq(x) => x.index(),
        }
    }
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Fq(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ring_tokens() {
        assert_eq!(BaseRing::parse("Z").unwrap(), BaseRing::Int);
        assert_eq!(BaseRing::parse("Z/6").unwrap(), BaseRing::Mod(6));
        assert_eq!(BaseRing::parse("GF(9)").unwrap().order(), Some(9));
        assert!(BaseRing::parse("GF(6)").is_err());
    }

    #[test]
    fn mod_ring_units() {
        assert_eq!(BaseRing::Mod(12).unit_indices(), vec![1, 5, 7, 11]);
        let f4 = BaseRing::gf(4).unwrap();
        assert_eq!(f4.unit_indices(), vec![1, 2, 3]);
    }

    #[test]
    fn scalar_inverse() {
        let r = BaseRing::Mod(10);
        assert_eq!(r.from_i64(3).inv(), Some(r.from_i64(7)));
        assert_eq!(r.from_i64(2).inv(), None);
        assert_eq!(
            BaseRing::Int.from_i64(-1).pow_i64(-3),
            Some(BaseRing::Int.from_i64(-1))
        );
    }
}
