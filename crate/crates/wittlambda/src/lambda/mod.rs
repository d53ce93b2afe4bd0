//! Lambda-structures: commuting families of Frobenius lifts on finitely
//! presented rings.
//!
//! A structure declares explicit images psi_p(generator) for finitely many
//! primes and may cover all remaining primes by a closed-form default rule
//! (toric m -> m^p, or the identity). psi_n for composite n is the
//! composite over the prime factorization; the order is irrelevant because
//! the declared family is checked to commute at construction.

pub mod sub;
pub mod symfun;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{factor, is_prime};
use crate::error::{Error, Result};
use crate::monoid::MonoidPresentation;
use crate::poly::{Mono, Poly, Subst, Vars};
use crate::ring::RingPresentation;
use crate::scalar::BaseRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefaultRule {
    /// psi_p sends every generator to its p-th power (monoid algebras).
    Toric,
    /// psi_p is the identity for every covered prime.
    Identity,
}

#[derive(Debug, Clone)]
pub struct LambdaStructure {
    label: String,
    ring: Arc<RingPresentation>,
    psi: BTreeMap<u64, Vec<Subst>>,
    default_rule: Option<DefaultRule>,
}

/// Primes used when re-verifying construction invariants of structures
/// covered by a default rule.
const CONSTRUCTION_CHECK_PRIMES: [u64; 3] = [2, 3, 5];

impl LambdaStructure {
    pub fn new(
        label: impl Into<String>,
        ring: Arc<RingPresentation>,
        psi: BTreeMap<u64, Vec<Poly>>,
        default_rule: Option<DefaultRule>,
    ) -> Result<LambdaStructure> {
        let mut images = BTreeMap::new();
        for (p, imgs) in psi {
            if !is_prime(p) {
                return Err(Error::InvalidPresentation(format!(
                    "psi index {p} is not prime"
                )));
            }
            if imgs.len() != ring.vars().len() {
                return Err(Error::InvalidPresentation(format!(
                    "psi_{p} needs one image per generator"
                )));
            }
            let subs = imgs
                .into_iter()
                .enumerate()
                .map(|(i, img)| make_subst(&ring, i, img))
                .collect::<Result<Vec<_>>>()?;
            images.insert(p, subs);
        }
        let l = LambdaStructure { label: label.into(), ring, psi: images, default_rule };

        // each declared (or rule-covered sample) psi_p must be a
        // well-defined endomorphism: relations map to zero
        let mut check_primes: Vec<u64> = l.psi.keys().copied().collect();
        if l.default_rule.is_some() {
            for p in CONSTRUCTION_CHECK_PRIMES {
                if !check_primes.contains(&p) {
                    check_primes.push(p);
                }
            }
        }
        for &p in &check_primes {
            for rel in l.ring.relations() {
                let img = l.apply_psi(p, rel)?;
                if !img.is_zero() {
                    return Err(Error::InvalidPresentation(format!(
                        "psi_{p} does not preserve relation {rel}: image {img}"
                    )));
                }
            }
        }
        // declared primes must commute pairwise on generators
        let declared: Vec<u64> = l.psi.keys().copied().collect();
        for (i, &p) in declared.iter().enumerate() {
            for &q in &declared[i + 1..] {
                if let Some(w) = l.commutation_witness(p, q)? {
                    return Err(Error::InvalidPresentation(format!(
                        "psi_{p} and psi_{q} do not commute: {w}"
                    )));
                }
            }
        }
        Ok(l)
    }

    /// The toric structure on Z\[M\]: default rule m -> m^p for every prime.
    pub fn toric(label: impl Into<String>, m: &MonoidPresentation) -> Result<LambdaStructure> {
        LambdaStructure::new(label, m.algebra()?, BTreeMap::new(), Some(DefaultRule::Toric))
    }

    /// The Chebychev line: Z\[x\] with psi_p(x) = D_p(x), the Dickson
    /// polynomials, declared for the primes up to 13.
    pub fn chebychev() -> Result<LambdaStructure> {
        let ring = RingPresentation::free(BaseRing::Int, Vars::new(&["x"]));
        let mut psi = BTreeMap::new();
        for p in [2u64, 3, 5, 7, 11, 13] {
            psi.insert(p, vec![dickson_poly(p)]);
        }
        LambdaStructure::new("chebychev", ring, psi, None)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn default_rule(&self) -> Option<DefaultRule> {
        self.default_rule
    }

    pub fn declared_primes(&self) -> Vec<u64> {
        self.psi.keys().copied().collect()
    }

    pub fn covers(&self, p: u64) -> bool {
        self.psi.contains_key(&p) || self.default_rule.is_some()
    }

    /// Substitution images of psi_p on the generators.
    pub fn psi_images(&self, p: u64) -> Result<Vec<Subst>> {
        if let Some(subs) = self.psi.get(&p) {
            return Ok(subs.clone());
        }
        match self.default_rule {
            Some(DefaultRule::Toric) => {
                let vars = self.ring.vars();
                Ok((0..vars.len())
                    .map(|i| {
                        let mut e = vec![0; vars.len()];
                        e[i] = p as i32;
                        let img = Poly::monomial(vars, Mono(e.clone()), BigInt::one());
                        if vars.is_laurent(i) {
                            let mut einv = vec![0; vars.len()];
                            einv[i] = -(p as i32);
                            Subst::invertible(
                                img,
                                Poly::monomial(vars, Mono(einv), BigInt::one()),
                            )
                        } else {
                            Subst::of(img)
                        }
                    })
                    .collect())
            }
            Some(DefaultRule::Identity) => {
                let vars = self.ring.vars();
                Ok((0..vars.len())
                    .map(|i| {
                        let img = Poly::var(vars, i);
                        if vars.is_laurent(i) {
                            let mut einv = vec![0; vars.len()];
                            einv[i] = -1;
                            Subst::invertible(
                                img,
                                Poly::monomial(vars, Mono(einv), BigInt::one()),
                            )
                        } else {
                            Subst::of(img)
                        }
                    })
                    .collect())
            }
            None => Err(Error::UndeclaredPrime(p)),
        }
    }

    /// psi_p(generator i) as a polynomial.
    pub fn psi_poly(&self, p: u64, gen: usize) -> Result<Poly> {
        Ok(self.psi_images(p)?[gen].image.clone())
    }

    /// psi_n for arbitrary n >= 1 via multiplicativity.
    pub fn apply_psi(&self, n: u64, a: &Poly) -> Result<Poly> {
        if n == 0 {
            return Err(Error::invalid("psi index must be >= 1"));
        }
        let mut acc = self.ring.normal_form(a);
        for (p, k) in factor(n) {
            let subs = self.psi_images(p)?;
            for _ in 0..k {
                acc = self.ring.normal_form(&acc.substitute(&subs)?);
            }
        }
        Ok(acc)
    }

    /// psi_p(g) - g^p reduced in ring (x) F_p, per generator. The base must
    /// be Z; the report records that the torsion-free hypothesis held.
    pub fn verify_frobenius_lift(&self, p: u64) -> Result<FrobeniusReport> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if *self.ring.base() != BaseRing::Int {
            return Err(Error::invalid(
                "frobenius-lift verification needs a Z-presentation",
            ));
        }
        let mod_p = self.ring.change_base(BaseRing::Mod(p))?;
        let mut checks = Vec::new();
        for i in 0..self.ring.vars().len() {
            let g = Poly::var(self.ring.vars(), i);
            let diff = self.apply_psi(p, &g)?.sub(&g.pow(p as u32));
            let residue = mod_p.normal_form(&diff);
            checks.push(GeneratorCheck {
                generator: self.ring.vars().name(i).to_string(),
                pass: residue.is_zero(),
                witness: if residue.is_zero() {
                    None
                } else {
                    Some(format!("psi_{p}({}) - {}^{p} = {} mod {p}", g, g, residue))
                },
            });
        }
        Ok(FrobeniusReport { prime: p, flat_base: true, checks })
    }

    /// None when psi_p and psi_q commute on every generator, else a witness.
    pub fn commutation_witness(&self, p: u64, q: u64) -> Result<Option<String>> {
        for i in 0..self.ring.vars().len() {
            let g = Poly::var(self.ring.vars(), i);
            let pq = self.apply_psi(p, &self.apply_psi(q, &g)?)?;
            let qp = self.apply_psi(q, &self.apply_psi(p, &g)?)?;
            if pq != qp {
                return Ok(Some(format!(
                    "on {}: psi_{p}(psi_{q}) = {} but psi_{q}(psi_{p}) = {}",
                    self.ring.vars().name(i),
                    pq,
                    qp
                )));
            }
        }
        Ok(None)
    }
}

fn make_subst(ring: &Arc<RingPresentation>, gen: usize, img: Poly) -> Result<Subst> {
    let img = ring.normal_form(&img);
    if !ring.vars().is_laurent(gen) {
        return Ok(Subst::of(img));
    }
    // the image of an invertible generator must be a unit: +- monomial
    // supported on Laurent variables
    if img.term_count() != 1 {
        return Err(Error::InvalidPresentation(format!(
            "image {img} of invertible generator {} is not a unit",
            ring.vars().name(gen)
        )));
    }
    let (mono, coeff) = img.leading().unwrap();
    if coeff != &BigInt::one() && *coeff != -BigInt::one() {
        return Err(Error::InvalidPresentation(format!(
            "image {img} of invertible generator {} is not a unit",
            ring.vars().name(gen)
        )));
    }
    for (i, &e) in mono.0.iter().enumerate() {
        if e != 0 && !ring.vars().is_laurent(i) {
            return Err(Error::InvalidPresentation(format!(
                "image {img} of invertible generator {} is not a unit",
                ring.vars().name(gen)
            )));
        }
    }
    let inv = Poly::monomial(
        ring.vars(),
        Mono(mono.0.iter().map(|&e| -e).collect()),
        coeff.clone(),
    );
    Ok(Subst::invertible(img, inv))
}

#[derive(Debug, Clone)]
pub struct GeneratorCheck {
    pub generator: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct FrobeniusReport {
    pub prime: u64,
    pub flat_base: bool,
    pub checks: Vec<GeneratorCheck>,
}

impl FrobeniusReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_witness(&self) -> Option<&str> {
        self.checks.iter().find_map(|c| c.witness.as_deref())
    }
}

/// Dickson polynomials of the first kind with parameter 1: D_0 = 2,
/// D_1 = x, D_n = x D_{n-1} - D_{n-2}; they satisfy D_n(t + 1/t) = t^n + t^{-n}
/// and D_{mn} = D_m after D_n.
pub fn dickson_poly(n: u64) -> Poly {
    let vars = Vars::new(&["x"]);
    let x = Poly::var(&vars, 0);
    let mut prev = Poly::int(&vars, 2);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// lambda_n(a) from the psi operators by the Newton recursion
/// n lambda_n(a) = sum_{i=1..n} (-1)^{i-1} lambda_{n-i}(a) psi_i(a);
/// only valid over a torsion-free base, where the exact divisions are
/// guaranteed.
pub fn lambda_from_psi(l: &LambdaStructure, n: u64, a: &Poly) -> Result<Poly> {
    if !l.ring().base().is_torsion_free() {
        return Err(Error::invalid(
            "lambda operations are only computed over torsion-free bases",
        ));
    }
    let mut lam: Vec<Poly> = vec![Poly::one(l.ring().vars())];
    let mut psi: Vec<Poly> = vec![Poly::zero(l.ring().vars())]; // psi_0 unused
    for i in 1..=n {
        psi.push(l.apply_psi(i, a)?);
    }
    for k in 1..=n as usize {
        let mut acc = Poly::zero(l.ring().vars());
        for i in 1..=k {
            let term = lam[k - i].mul(&psi[i]);
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        lam.push(l.ring().normal_form(&acc.exact_div(&BigInt::from(k as i64))?));
    }
    Ok(lam[n as usize].clone())
}
