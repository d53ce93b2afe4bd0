//! Finite fields F_q, q = p^e, as quotients F_p\[w\]/(irreducible).
//!
//! The irreducible polynomial for each (p, e) is fixed once and recorded: it
//! is the first monic irreducible of degree e in index order, where a monic
//! polynomial w^e + c_{e-1} w^{e-1} + ... + c_0 has index sum(c_i p^i). A
//! process-wide registry guarantees every F_q handle for the same (p, e)
//! shares the same modulus, so representatives compare meaningfully.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{is_prime, pow_checked};
use crate::error::{Error, Result};

/// Largest field order the registry will build tables for.
const FIELD_ORDER_BUDGET: u64 = 1 << 20;

/// Dense F_p\[x\] arithmetic on little-endian coefficient vectors.
mod fppoly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r = a.to_vec();
        trim(&mut r);
        while r.len() >= m.len() {
            let lead = *r.last().unwrap();
            let shift = r.len() - m.len();
            for (i, &mi) in m.iter().enumerate() {
                let sub = lead * mi % p;
                let idx = i + shift;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|&x| x * s % p).collect();
        trim(&mut out);
        out
    }

    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        // Fermat; p is prime and a != 0 mod p.
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// Extended Euclid: returns s with s*a = gcd modulo m, for monic m and
    /// gcd(a, m) constant. Used for field inversion.
    pub fn invert(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            // divide r0 by r1
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem0 = r0.clone();
            let lead_inv = inv_mod_p(*r1.last().unwrap(), p);
            while rem0.len() >= r1.len() && !rem0.is_empty() {
                let c = *rem0.last().unwrap() * lead_inv % p;
                let shift = rem0.len() - r1.len();
                q[shift] = (q[shift] + c) % p;
                for (i, &mi) in r1.iter().enumerate() {
                    let sub = c * mi % p;
                    rem0[i + shift] = (rem0[i + shift] + p - sub) % p;
                }
                trim(&mut rem0);
            }
            trim(&mut q);
            let s2 = {
                let qs1 = mul(&q, &s1, p);
                let mut out = vec![0u64; s0.len().max(qs1.len())];
                for (i, slot) in out.iter_mut().enumerate() {
                    let x = s0.get(i).copied().unwrap_or(0);
                    let y = qs1.get(i).copied().unwrap_or(0);
                    *slot = (x + p - y % p) % p;
                }
                trim(&mut out);
                out
            };
            r0 = std::mem::replace(&mut r1, rem0);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None; // gcd not constant: a not invertible
        }
        let g_inv = inv_mod_p(r0[0], p);
        Some(rem(&scale(&s0, g_inv, p), m, p))
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    e: u32,
    /// Monic irreducible of degree e, little-endian, length e+1.
    irred: Vec<u64>,
}

type Registry = Mutex<HashMap<(u64, u32), Arc<FqField>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FqField {
    /// The shared handle for F_{p^e}. Initialize-once: later calls return the
    /// same Arc with the same recorded irreducible.
    pub fn get(p: u64, e: u32) -> Result<Arc<FqField>> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::invalid("field extension degree must be >= 1"));
        }
        match pow_checked(p, e) {
            Some(q) if q <= FIELD_ORDER_BUDGET => {}
            _ => {
                return Err(Error::invalid(format!(
                    "field order p^e = {p}^{e} exceeds table budget {FIELD_ORDER_BUDGET}"
                )))
            }
        }
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&(p, e)) {
            return Ok(f.clone());
        }
        let irred = first_irreducible(p, e);
        let field = Arc::new(FqField { p, e, irred });
        reg.insert((p, e), field.clone());
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        pow_checked(self.p, self.e).unwrap()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.irred
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { field: self.clone(), c: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as u64;
        let mut c = vec![r];
        fppoly::trim(&mut c);
        FqElem { field: self.clone(), c }
    }

    /// Element with index k, 0 <= k < order: base-p digits are the
    /// representative's coefficients, constant digit least significant.
    pub fn element(self: &Arc<Self>, mut k: u64) -> FqElem {
        debug_assert!(k < self.order());
        let mut c = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            c.push(k % self.p);
            k /= self.p;
        }
        fppoly::trim(&mut c);
        FqElem { field: self.clone(), c }
    }

    /// Class of w, the adjoined root of the recorded irreducible.
    pub fn generator(self: &Arc<Self>) -> FqElem {
        if self.e == 1 {
            // w == -c0 in the prime field
            let c0 = self.irred[0];
            return self.from_int(((self.p - c0) % self.p) as i64);
        }
        self.element(self.p)
    }
}

fn first_irreducible(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1]; // x itself
    }
    let count = pow_checked(p, e).unwrap();
    'cand: for idx in 0..count {
        let mut poly = Vec::with_capacity(e as usize + 1);
        let mut k = idx;
        for _ in 0..e {
            poly.push(k % p);
            k /= p;
        }
        poly.push(1); // monic
        // trial division by every monic divisor of degree 1..=e/2
        for d in 1..=(e / 2) {
            let dcount = pow_checked(p, d).unwrap();
            for j in 0..dcount {
                let mut div = Vec::with_capacity(d as usize + 1);
                let mut kk = j;
                for _ in 0..d {
                    div.push(kk % p);
                    kk /= p;
                }
                div.push(1);
                if fppoly::rem(&poly, &div, p).is_empty() {
                    continue 'cand;
                }
            }
        }
        return poly;
    }
    unreachable!("an irreducible of every degree exists over F_p")
}

/// An element of F_{p^e}: the canonical representative of degree < e.
#[derive(Debug, Clone)]
pub struct FqElem {
    field: Arc<FqField>,
    /// Little-endian coefficients, trimmed (no trailing zeros).
    c: Vec<u64>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.field.e == other.field.e && self.c == other.c
    }
}
impl Eq for FqElem {}

impl FqElem {
    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn representative(&self) -> &[u64] {
        &self.c
    }

    pub fn index(&self) -> u64 {
        let p = self.field.p;
        self.c.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.same_field(other);
        FqElem { field: self.field.clone(), c: fppoly::add(&self.c, &other.c, self.field.p) }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.p;
        let mut c: Vec<u64> = self.c.iter().map(|&x| (p - x) % p).collect();
        fppoly::trim(&mut c);
        FqElem { field: self.field.clone(), c }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.same_field(other);
        let p = self.field.p;
        let prod = fppoly::mul(&self.c, &other.c, p);
        let c = fppoly::rem(&prod, &self.field.irred, p);
        FqElem { field: self.field.clone(), c }
    }

    pub fn inv(&self) -> Option<FqElem> {
        if self.is_zero() {
            return None;
        }
        let c = fppoly::invert(&self.c, &self.field.irred, self.field.p)?;
        Some(FqElem { field: self.field.clone(), c })
    }

    pub fn pow(&self, mut e: u64) -> FqElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The q-power Frobenius of the base field F_q inside F_{q^k}: x -> x^q.
    pub fn frobenius(&self, q: u64) -> FqElem {
        self.pow(q)
    }

    fn same_field(&self, other: &FqElem) {
        assert!(
            self.field.p == other.field.p && self.field.e == other.field.e,
            "mixed finite fields F_{{{}^{}}} and F_{{{}^{}}}",
            self.field.p,
            self.field.e,
            other.field.p,
            other.field.e
        );
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        if self.field.e == 1 || self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for (k, &coef) in self.c.iter().enumerate().rev() {
            if coef == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, coef) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "{c}*w")?,
                (k, 1) => write!(f, "w^{k}")?,
                (k, c) => write!(f, "{c}*w^{k}")?,
            }
        }
        Ok(())
    }
}
