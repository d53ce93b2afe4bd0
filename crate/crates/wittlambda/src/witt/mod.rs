//! Big Witt vectors over divisor-closed truncation sets.
//!
//! The infinite-length functor appears only through its finite truncations:
//! a `WittVector` holds one coordinate per element of a divisor-closed set
//! S, with values in a base coefficient ring. The ring structure is defined
//! by the universal polynomials of [`universal`], the unique integral
//! solutions of the ghost equations, so it is valid over rings with
//! torsion. p-typical Witt vectors are the truncations S = {1, p, ..,
//! p^{k-1}}, indexed here by the big-Witt indices p^i (the classical index
//! i corresponds to coordinate p^i).

pub mod universal;

use std::fmt;

use crate::arith::{divisors, pow_checked};
use crate::error::{Error, Result};
use crate::scalar::{BaseRing, Scalar};

/// A finite divisor-closed set of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationSet {
    elems: Vec<u64>,
}

impl TruncationSet {
    pub fn new(elems: impl IntoIterator<Item = u64>) -> Result<TruncationSet> {
        let mut v: Vec<u64> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.first() == Some(&0) {
            return Err(Error::invalid("truncation sets contain positive integers"));
        }
        for &n in &v {
            for d in divisors(n) {
                if v.binary_search(&d).is_err() {
                    return Err(Error::invalid(format!(
                        "truncation set not divisor-closed: {n} present but {d} missing"
                    )));
                }
            }
        }
        Ok(TruncationSet { elems: v })
    }

    /// Divisor closure of the given elements.
    pub fn closure(elems: impl IntoIterator<Item = u64>) -> TruncationSet {
        let mut v: Vec<u64> = elems.into_iter().flat_map(divisors).collect();
        v.sort_unstable();
        v.dedup();
        TruncationSet { elems: v }
    }

    /// {1, 2, ..., n}.
    pub fn full(n: u64) -> TruncationSet {
        TruncationSet { elems: (1..=n).collect() }
    }

    /// {1, p, ..., p^{k-1}}.
    pub fn ptypical(p: u64, k: u32) -> Result<TruncationSet> {
        if !crate::arith::is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::invalid("p-typical length must be >= 1"));
        }
        let elems: Vec<u64> = (0..k)
            .map(|i| pow_checked(p, i).ok_or_else(|| Error::invalid("p^k overflows")))
            .collect::<Result<_>>()?;
        Ok(TruncationSet { elems })
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn index_of(&self, n: u64) -> Option<usize> {
        self.elems.binary_search(&n).ok()
    }

    /// S/n = { m : n*m in S }, again divisor-closed.
    pub fn quotient(&self, n: u64) -> TruncationSet {
        TruncationSet {
            elems: self
                .elems
                .iter()
                .filter_map(|&s| (s % n == 0).then_some(s / n))
                .collect(),
        }
    }

    /// Restriction to a divisor-closed subset.
    pub fn restrict_to(&self, sub: &TruncationSet) -> bool {
        sub.elems.iter().all(|&n| self.contains(n))
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector {
    trunc: TruncationSet,
    ring: BaseRing,
    coords: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostVector {
    pub trunc: TruncationSet,
    pub values: Vec<Scalar>,
}

impl WittVector {
    pub fn new(trunc: TruncationSet, ring: BaseRing, coords: Vec<Scalar>) -> Result<WittVector> {
        if coords.len() != trunc.len() {
            return Err(Error::invalid(format!(
                "expected {} coordinates for {}, got {}",
                trunc.len(),
                trunc,
                coords.len()
            )));
        }
        for c in &coords {
            if c.ring() != ring {
                return Err(Error::MismatchedRing(ring.to_string(), c.ring().to_string()));
            }
        }
        Ok(WittVector { trunc, ring, coords })
    }

    pub fn zero(trunc: TruncationSet, ring: BaseRing) -> WittVector {
        let coords = vec![ring.zero(); trunc.len()];
        WittVector { trunc, ring, coords }
    }

    /// The multiplicative Teichmueller lift (a, 0, 0, ...).
    pub fn teichmuller(trunc: TruncationSet, a: Scalar) -> WittVector {
        let ring = a.ring();
        let mut coords = vec![ring.zero(); trunc.len()];
        if let Some(i) = trunc.index_of(1) {
            coords[i] = a;
        }
        WittVector { trunc, ring, coords }
    }

    pub fn trunc(&self) -> &TruncationSet {
        &self.trunc
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, n: u64) -> Option<&Scalar> {
        self.trunc.index_of(n).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Restrict to a divisor-closed subset of the truncation set.
    pub fn restrict(&self, sub: &TruncationSet) -> Result<WittVector> {
        let coords = sub
            .elems()
            .iter()
            .map(|&n| {
                self.coord(n)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("coordinate {n} absent")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WittVector { trunc: sub.clone(), ring: self.ring.clone(), coords })
    }

    fn check_compatible(&self, other: &WittVector) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::MismatchedTruncation(
                self.trunc.to_string(),
                other.trunc.to_string(),
            ));
        }
        if self.ring != other.ring {
            return Err(Error::MismatchedRing(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    /// Values of the ghost map: gh_n = sum_{d|n} d * x_d^{n/d}.
    pub fn ghost(&self) -> Result<GhostVector> {
        let mut values = Vec::with_capacity(self.trunc.len());
        for &n in self.trunc.elems() {
            let gp = universal::ghost_poly(n);
            let vals = self.divisor_slice(gp.vars().len(), n, None)?;
            values.push(gp.eval(&self.ring, &vals)?);
        }
        Ok(GhostVector { trunc: self.trunc.clone(), values })
    }

    /// Assemble the evaluation slice x_d (d | n), optionally followed by the
    /// other vector's y_d coordinates.
    fn divisor_slice(&self, expect: usize, n: u64, other: Option<&WittVector>) -> Result<Vec<Scalar>> {
        let ds = divisors(n);
        let mut vals = Vec::with_capacity(expect);
        for &d in &ds {
            vals.push(
                self.coord(d)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("coordinate {d} absent")))?,
            );
        }
        if let Some(o) = other {
            for &d in &ds {
                vals.push(
                    o.coord(d)
                        .cloned()
                        .ok_or_else(|| Error::invalid(format!("coordinate {d} absent")))?,
                );
            }
        }
        debug_assert_eq!(vals.len(), expect);
        Ok(vals)
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compatible(other)?;
        let mut coords = Vec::with_capacity(self.trunc.len());
        for &n in self.trunc.elems() {
            let sp = universal::sum_poly(n)?;
            let vals = self.divisor_slice(sp.vars().len(), n, Some(other))?;
            coords.push(sp.eval(&self.ring, &vals)?);
        }
        Ok(WittVector { trunc: self.trunc.clone(), ring: self.ring.clone(), coords })
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compatible(other)?;
        let mut coords = Vec::with_capacity(self.trunc.len());
        for &n in self.trunc.elems() {
            let pp = universal::prod_poly(n)?;
            let vals = self.divisor_slice(pp.vars().len(), n, Some(other))?;
            coords.push(pp.eval(&self.ring, &vals)?);
        }
        Ok(WittVector { trunc: self.trunc.clone(), ring: self.ring.clone(), coords })
    }

    /// n-fold sum of self (additive integer multiple).
    pub fn times(&self, n: u64) -> Result<WittVector> {
        let mut acc = WittVector::zero(self.trunc.clone(), self.ring.clone());
        for _ in 0..n {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    /// Frobenius F_k: lands in W over S/k, with ghost(F_k w)_m = ghost(w)_{km}.
    pub fn frobenius(&self, k: u64) -> Result<WittVector> {
        if k == 0 {
            return Err(Error::invalid("frobenius index must be >= 1"));
        }
        let target = self.trunc.quotient(k);
        let mut coords = Vec::with_capacity(target.len());
        for &m in target.elems() {
            let fp = universal::frobenius_poly(k, m)?;
            let vals = self.divisor_slice(fp.vars().len(), k * m, None)?;
            coords.push(fp.eval(&self.ring, &vals)?);
        }
        Ok(WittVector { trunc: target, ring: self.ring.clone(), coords })
    }

    /// Verschiebung V_k into the given target set: requires target/k to be
    /// the truncation set of self; (V_k w)_m = w_{m/k} when k | m, else 0.
    pub fn verschiebung(&self, k: u64, target: &TruncationSet) -> Result<WittVector> {
        if k == 0 {
            return Err(Error::invalid("verschiebung index must be >= 1"));
        }
        let expected = target.quotient(k);
        if expected != self.trunc {
            return Err(Error::MismatchedTruncation(
                expected.to_string(),
                self.trunc.to_string(),
            ));
        }
        let mut coords = Vec::with_capacity(target.len());
        for &m in target.elems() {
            if m % k == 0 {
                coords.push(self.coord(m / k).unwrap().clone());
            } else {
                coords.push(self.ring.zero());
            }
        }
        Ok(WittVector { trunc: target.clone(), ring: self.ring.clone(), coords })
    }

    /// Additive order of the vector, up to `cap` summands.
    pub fn additive_order(&self, cap: u64) -> Result<Option<u64>> {
        let mut acc = self.clone();
        let mut k = 1u64;
        while k <= cap {
            if acc.is_zero() {
                return Ok(Some(k));
            }
            acc = acc.add(self)?;
            k += 1;
        }
        Ok(None)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .trunc
            .elems()
            .iter()
            .zip(&self.coords)
            .map(|(n, c)| format!("{n}={c}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The additive order of 1 in W_{ptypical(p,k)}(F_p); equals p^k.
pub fn ptypical_ring_order(p: u64, k: u32) -> Result<u64> {
    let trunc = TruncationSet::ptypical(p, k)?;
    let ring = BaseRing::Mod(p);
    let one = WittVector::teichmuller(trunc, ring.one());
    let cap = pow_checked(p, k)
        .and_then(|c| c.checked_add(1))
        .ok_or_else(|| Error::invalid("p^k overflows"))?;
    one.additive_order(cap)?
        .ok_or_else(|| Error::invalid("additive order exceeded p^k + 1; implementation bug"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zint(n: i64) -> Scalar {
        BaseRing::Int.from_i64(n)
    }

    fn witt_z(trunc: &[u64], coords: &[i64]) -> WittVector {
        WittVector::new(
            TruncationSet::new(trunc.iter().copied()).unwrap(),
            BaseRing::Int,
            coords.iter().map(|&c| zint(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn truncation_sets_validate() {
        assert!(TruncationSet::new([1, 2, 4]).is_ok());
        assert!(TruncationSet::new([2, 4]).is_err());
        assert!(TruncationSet::new([1, 6]).is_err());
        assert_eq!(
            TruncationSet::closure([12]).elems(),
            &[1, 2, 3, 4, 6, 12]
        );
        assert_eq!(TruncationSet::ptypical(2, 3).unwrap().elems(), &[1, 2, 4]);
    }

    #[test]
    fn ghost_of_small_vector() {
        // (x1, x2) = (3, 5) over Z, S = {1,2}: ghost = (3, 3^2 + 2*5) = (3, 19)
        let w = witt_z(&[1, 2], &[3, 5]);
        let g = w.ghost().unwrap();
        assert_eq!(g.values, vec![zint(3), zint(19)]);
        // all-zero vector has all-zero ghost
        let z = WittVector::zero(TruncationSet::full(6), BaseRing::Int);
        assert!(z.ghost().unwrap().values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn teichmuller_ghost_is_powers() {
        let t = TruncationSet::new([1, 2, 3, 6]).unwrap();
        let w = WittVector::teichmuller(t, zint(5));
        let g = w.ghost().unwrap();
        assert_eq!(g.values, vec![zint(5), zint(25), zint(125), zint(15625)]);
    }

    #[test]
    fn additive_identity_and_teichmuller_multiplicativity() {
        let t = TruncationSet::new([1, 2, 3, 6, 12].iter().flat_map(|&n| divisors(n))).unwrap();
        let a = WittVector::teichmuller(t.clone(), zint(2));
        let zero = WittVector::zero(t.clone(), BaseRing::Int);
        assert_eq!(a.add(&zero).unwrap(), a);
        let b = WittVector::teichmuller(t.clone(), zint(3));
        let ab = WittVector::teichmuller(t, zint(6));
        assert_eq!(a.mul(&b).unwrap(), ab);
    }

    #[test]
    fn witt_sum_mod_two() {
        // over F_2, S={1,2}: (1,0) + (1,0) = (0,1)
        let t = TruncationSet::new([1, 2]).unwrap();
        let r = BaseRing::Mod(2);
        let one = WittVector::teichmuller(t, r.one());
        let s = one.add(&one).unwrap();
        assert_eq!(s.coords(), &[r.from_i64(0), r.from_i64(1)]);
    }

    #[test]
    fn frobenius_on_teichmuller() {
        let t = TruncationSet::full(12);
        let w = WittVector::teichmuller(t.clone(), zint(3));
        let f = w.frobenius(2).unwrap();
        let expected = WittVector::teichmuller(t.quotient(2), zint(9));
        assert_eq!(f, expected);
    }

    #[test]
    fn verschiebung_shifts() {
        let s1 = TruncationSet::new([1]).unwrap();
        let target = TruncationSet::new([1, 2]).unwrap();
        let w = WittVector::new(s1, BaseRing::Int, vec![zint(7)]).unwrap();
        let v = w.verschiebung(2, &target).unwrap();
        assert_eq!(v.coords(), &[zint(0), zint(7)]);
    }

    #[test]
    fn frobenius_verschiebung_is_multiplication_by_n() {
        // F_2 V_2 = *2 on W_{S/2} where S = {1,2,4}
        let s = TruncationSet::new([1, 2, 4]).unwrap();
        let s2 = s.quotient(2); // {1, 2}
        let w = witt_z(&[1, 2], &[3, -5]);
        let fv = w.verschiebung(2, &s).unwrap().frobenius(2).unwrap();
        let doubled = w.times(2).unwrap();
        let _ = s2;
        assert_eq!(fv, doubled);
    }

    #[test]
    fn frobenius_composes() {
        let s = TruncationSet::full(12);
        let w = witt_z(
            &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            &[2, -1, 3, 0, 1, -2, 5, 1, -3, 2, 0, 1],
        );
        let _ = s;
        let f6 = w.frobenius(6).unwrap();
        let f23 = w.frobenius(2).unwrap().frobenius(3).unwrap();
        let f32 = w.frobenius(3).unwrap().frobenius(2).unwrap();
        assert_eq!(f6, f23);
        assert_eq!(f6, f32);
    }

    #[test]
    fn ptypical_orders() {
        assert_eq!(ptypical_ring_order(3, 2).unwrap(), 9);
        assert_eq!(ptypical_ring_order(2, 3).unwrap(), 8);
    }

    #[test]
    fn mismatches_are_reported() {
        let a = witt_z(&[1, 2], &[1, 1]);
        let b = witt_z(&[1, 3], &[1, 1]);
        assert!(matches!(a.add(&b), Err(Error::MismatchedTruncation(_, _))));
    }
}
