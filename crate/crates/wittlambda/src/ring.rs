//! Finitely presented commutative rings with normal-form rewriting.
//!
//! A presentation is a base ring (Z, Z/m, or F_q), a generator list with
//! per-generator Laurent flags, and relations drawn from rewriting-friendly
//! classes: monomial, binomial, x^n - 1 style, and univariate relations with
//! unit leading coefficient. Each relation is oriented leading-monomial ->
//! remainder in graded-lex; the system is checked for confluence at
//! construction by critical-pair testing up to a degree bound. A full
//! Groebner engine is deliberately out of scope: every ring instantiated
//! here (monoid algebras, x^n - 1 quotients, free polynomial rings) falls in
//! the supported class.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{Mono, Poly, Subst, Vars};
use crate::scalar::{BaseRing, Scalar};

/// Default cap on the graded degree of critical-pair superpositions tested
/// for confluence.
const DEFAULT_CONFLUENCE_BOUND: i64 = 24;

#[derive(Debug, Clone)]
pub struct RewriteRule {
    /// Leading monomial, all exponents nonnegative.
    pub lead: Mono,
    /// The quotient identity X^lead = rhs.
    pub rhs: Poly,
}

#[derive(Debug)]
pub struct RingPresentation {
    base: BaseRing,
    vars: Arc<Vars>,
    relations: Vec<Poly>,
    rules: Vec<RewriteRule>,
}

impl RingPresentation {
    pub fn new(base: BaseRing, vars: Arc<Vars>, relations: Vec<Poly>) -> Result<Arc<Self>> {
        Self::with_confluence_bound(base, vars, relations, DEFAULT_CONFLUENCE_BOUND)
    }

    pub fn with_confluence_bound(
        base: BaseRing,
        vars: Arc<Vars>,
        relations: Vec<Poly>,
        degree_bound: i64,
    ) -> Result<Arc<Self>> {
        let mut kept = Vec::new();
        let mut rules = Vec::new();
        for rel in relations {
            let rel = rel.canonicalize_coeffs(&base);
            if rel.is_zero() {
                continue;
            }
            if rel.terms().any(|(m, _)| m.0.iter().any(|&e| e < 0)) {
                return Err(Error::InvalidPresentation(format!(
                    "relation {rel} has negative exponents; quotient relations must be \
                     polynomial (present the localized ring directly instead)"
                )));
            }
            let (lead, lc) = {
                let (m, c) = rel.leading().unwrap();
                (m.clone(), c.clone())
            };
            // scale the relation monic; the leading coefficient must be a unit
            let scaled = match &base {
                BaseRing::Int => {
                    if lc == BigInt::one() {
                        rel.clone()
                    } else if lc == -BigInt::one() {
                        rel.neg()
                    } else {
                        return Err(Error::InvalidPresentation(format!(
                            "relation {rel}: leading coefficient {lc} is not a unit of Z"
                        )));
                    }
                }
                _ => {
                    let inv = base.from_bigint(&lc).inv().ok_or_else(|| {
                        Error::InvalidPresentation(format!(
                            "relation {rel}: leading coefficient {lc} is not a unit of {base}"
                        ))
                    })?;
                    let inv_big = match inv {
                        Scalar::Mod { v, .. } => BigInt::from(v),
                        Scalar::Fq(x) => BigInt::from(x.representative().first().copied().unwrap_or(0)),
                        Scalar::Int(n) => n,
                    };
                    rel.scale(&inv_big).canonicalize_coeffs(&base)
                }
            };
            let rhs = Poly::monomial(&vars, lead.clone(), BigInt::one())
                .sub(&scaled)
                .canonicalize_coeffs(&base);
            kept.push(scaled);
            rules.push(RewriteRule { lead, rhs });
        }
        let pres = RingPresentation { base, vars, relations: kept, rules };
        pres.check_confluence(degree_bound)?;
        Ok(Arc::new(pres))
    }

    pub fn free(base: BaseRing, vars: Arc<Vars>) -> Arc<Self> {
        Arc::new(RingPresentation { base, vars, relations: Vec::new(), rules: Vec::new() })
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Same generators and relations over a different base.
    pub fn change_base(&self, base: BaseRing) -> Result<Arc<Self>> {
        RingPresentation::new(base, self.vars.clone(), self.relations.clone())
    }

    /// The unique reduced representative. Idempotent, and a ring
    /// homomorphism: nf(a*b) = nf(nf(a)*nf(b)), likewise for sums.
    pub fn normal_form(&self, elem: &Poly) -> Poly {
        let mut p = elem.canonicalize_coeffs(&self.base);
        'outer: loop {
            // rewrite the largest reducible monomial first
            let mut hit: Option<(Mono, BigInt, usize)> = None;
            for (m, c) in p.terms().rev() {
                if let Some(ri) = self.rules.iter().position(|r| m.divisible_by(&r.lead)) {
                    hit = Some((m.clone(), c.clone(), ri));
                    break;
                }
            }
            match hit {
                None => break 'outer,
                Some((m, c, ri)) => {
                    let rule = &self.rules[ri];
                    let quot = m.div(&rule.lead);
                    let replacement = rule.rhs.mul_mono(&quot, &c);
                    let removed = Poly::monomial(&self.vars, m, c);
                    p = p.sub(&removed).add(&replacement).canonicalize_coeffs(&self.base);
                }
            }
        }
        p
    }

    fn check_confluence(&self, degree_bound: i64) -> Result<()> {
        for i in 0..self.rules.len() {
            for j in i..self.rules.len() {
                let (a, b) = (&self.rules[i], &self.rules[j]);
                if i == j {
                    continue;
                }
                // only genuinely overlapping leads form critical pairs
                let overlaps = a
                    .lead
                    .0
                    .iter()
                    .zip(&b.lead.0)
                    .any(|(x, y)| *x > 0 && *y > 0);
                if !overlaps {
                    continue;
                }
                let sup = a.lead.lcm(&b.lead);
                if sup.degree() > degree_bound {
                    continue;
                }
                let via_a = self.normal_form(&a.rhs.mul_mono(&sup.div(&a.lead), &BigInt::one()));
                let via_b = self.normal_form(&b.rhs.mul_mono(&sup.div(&b.lead), &BigInt::one()));
                if via_a != via_b {
                    return Err(Error::NonConfluent(format!(
                        "critical pair at {} reduces to both {} and {}",
                        Poly::monomial(&self.vars, sup, BigInt::one()),
                        via_a,
                        via_b
                    )));
                }
            }
        }
        Ok(())
    }

    /// All generator assignments in a finite ring satisfying every relation,
    /// in lexicographic order (first generator most significant, elements by
    /// enumeration index). Laurent generators range over the units.
    pub fn enumerate_points(&self, value: &BaseRing, budget: u64) -> Result<Vec<Vec<Scalar>>> {
        if !value.is_finite() {
            return Err(Error::invalid("value ring must be finite"));
        }
        if !self.base.maps_into(value) {
            return Err(Error::invalid(format!(
                "no canonical map from base {} into {}",
                self.base, value
            )));
        }
        let order = value.order().unwrap();
        let ranges: Vec<Vec<u64>> = (0..self.vars.len())
            .map(|i| {
                if self.vars.is_laurent(i) {
                    value.unit_indices()
                } else {
                    (0..order).collect()
                }
            })
            .collect();
        let total: u128 = ranges.iter().map(|r| r.len() as u128).product();
        if total > budget as u128 {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        let total = total as u64;
        let relations = &self.relations;
        let vars_n = self.vars.len();
        Ok(par::filter_map_indexed(total, move |idx| {
            let mut assignment = Vec::with_capacity(vars_n);
            let mut rest = idx;
            // first generator most significant
            for r in ranges.iter().rev() {
                let k = (rest % r.len() as u64) as usize;
                rest /= r.len() as u64;
                assignment.push(value.element(r[k]));
            }
            assignment.reverse();
            for rel in relations {
                match rel.eval(value, &assignment) {
                    Ok(v) if v.is_zero() => {}
                    _ => return None,
                }
            }
            Some(assignment)
        }))
    }
}

/// Free-function form of the normal-form operation.
pub fn normal_form(elem: &Poly, pres: &RingPresentation) -> Poly {
    pres.normal_form(elem)
}

/// A ring map between presented rings, given by generator images. Laurent
/// generators carry an explicit inverse image, verified at construction.
#[derive(Debug, Clone)]
pub struct RingHom {
    src: Arc<RingPresentation>,
    dst: Arc<RingPresentation>,
    images: Vec<Subst>,
}

impl RingHom {
    pub fn new(
        src: Arc<RingPresentation>,
        dst: Arc<RingPresentation>,
        images: Vec<Poly>,
        inverses: Vec<Option<Poly>>,
    ) -> Result<RingHom> {
        if images.len() != src.vars().len() || inverses.len() != src.vars().len() {
            return Err(Error::invalid("one image per source generator required"));
        }
        let mut subs = Vec::new();
        for (i, (img, inv)) in images.into_iter().zip(inverses).enumerate() {
            let img = dst.normal_form(&img);
            let inv = inv.map(|p| dst.normal_form(&p));
            if src.vars().is_laurent(i) {
                let inv = inv.clone().ok_or_else(|| {
                    Error::invalid(format!(
                        "generator {} is Laurent; its image needs an inverse witness",
                        src.vars().name(i)
                    ))
                })?;
                let prod = dst.normal_form(&img.mul(&inv));
                if prod != Poly::one(dst.vars()).canonicalize_coeffs(dst.base()) {
                    return Err(Error::invalid(format!(
                        "image of {} is not a unit: {} * {} = {}",
                        src.vars().name(i),
                        img,
                        inv,
                        prod
                    )));
                }
            }
            subs.push(Subst { image: img, inverse: inv });
        }
        let hom = RingHom { src, dst, images: subs };
        for rel in hom.src.relations() {
            let img = hom.apply_raw(rel)?;
            if !img.is_zero() {
                return Err(Error::invalid(format!(
                    "relation {rel} does not map to zero (image {img})"
                )));
            }
        }
        Ok(hom)
    }

    pub fn src(&self) -> &Arc<RingPresentation> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<RingPresentation> {
        &self.dst
    }

    pub fn images(&self) -> &[Subst] {
        &self.images
    }

    fn apply_raw(&self, p: &Poly) -> Result<Poly> {
        Ok(self.dst.normal_form(&p.substitute(&self.images)?))
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.apply_raw(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn pres(base: BaseRing, gens: &[&str], rels: &[&str]) -> Arc<RingPresentation> {
        let vars = Vars::new(gens);
        let rels: Vec<Poly> = rels.iter().map(|r| parse_poly(&vars, r).unwrap()).collect();
        RingPresentation::new(base, vars, rels).unwrap()
    }

    #[test]
    fn idempotent_reduction_examples() {
        // x^3 in Z[x]/(x^2 - x) -> x
        let p = pres(BaseRing::Int, &["x"], &["x^2 - x"]);
        let x3 = parse_poly(p.vars(), "x^3").unwrap();
        let nf = p.normal_form(&x3);
        assert_eq!(nf.to_string(), "x");
        assert_eq!(p.normal_form(&nf), nf);

        // x^5 in Z[x]/(x^4 - 1) -> x
        let p = pres(BaseRing::Int, &["x"], &["x^4 - 1"]);
        let x5 = parse_poly(p.vars(), "x^5").unwrap();
        assert_eq!(p.normal_form(&x5).to_string(), "x");
    }

    #[test]
    fn laurent_cancellation_is_native() {
        let vars = Vars::with_laurent(&["t"], &[true]);
        let p = RingPresentation::free(BaseRing::Int, vars);
        let e = parse_poly(p.vars(), "t * t^-1").unwrap();
        assert_eq!(p.normal_form(&e).to_string(), "1");
    }

    #[test]
    fn normal_form_is_multiplicative() {
        let p = pres(BaseRing::Int, &["x", "y"], &["x^2 - x", "y^3 - 1"]);
        let a = parse_poly(p.vars(), "x^3 + y^4").unwrap();
        let b = parse_poly(p.vars(), "x*y^2 - 7").unwrap();
        let lhs = p.normal_form(&a.mul(&b));
        let rhs = p.normal_form(&p.normal_form(&a).mul(&p.normal_form(&b)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_relations_commute() {
        // axes ring: xy -> 0 and xz -> 0 overlap at xyz
        let p = pres(
            BaseRing::Int,
            &["x", "y", "z"],
            &["x*y", "x*z", "y*z"],
        );
        let e = parse_poly(p.vars(), "(x + y + z)^3").unwrap();
        assert_eq!(p.normal_form(&e).to_string(), "x^3 + y^3 + z^3");
    }

    #[test]
    fn non_unit_lead_rejected() {
        let vars = Vars::new(&["x"]);
        let rel = parse_poly(&vars, "2*x^2 - 1").unwrap();
        assert!(matches!(
            RingPresentation::new(BaseRing::Int, vars, vec![rel]),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn enumerate_points_examples() {
        // Z[x]/(x^2 - x) over F_3 -> {0, 1}
        let p = pres(BaseRing::Int, &["x"], &["x^2 - x"]);
        let pts = p.enumerate_points(&BaseRing::Mod(3), 1_000).unwrap();
        let vals: Vec<String> = pts.iter().map(|a| a[0].to_string()).collect();
        assert_eq!(vals, vec!["0", "1"]);

        // Z[x,y]/(xy) over F_2 -> {(0,0),(0,1),(1,0)}
        let p = pres(BaseRing::Int, &["x", "y"], &["x*y"]);
        let pts = p.enumerate_points(&BaseRing::Mod(2), 1_000).unwrap();
        let vals: Vec<(String, String)> = pts
            .iter()
            .map(|a| (a[0].to_string(), a[1].to_string()))
            .collect();
        assert_eq!(
            vals,
            vec![
                ("0".into(), "0".into()),
                ("0".into(), "1".into()),
                ("1".into(), "0".into())
            ]
        );

        // Z[x]/(x^2 + 1) over F_5 -> {2, 3}
        let p = pres(BaseRing::Int, &["x"], &["x^2 + 1"]);
        let pts = p.enumerate_points(&BaseRing::Mod(5), 1_000).unwrap();
        let vals: Vec<String> = pts.iter().map(|a| a[0].to_string()).collect();
        assert_eq!(vals, vec!["2", "3"]);
    }

    #[test]
    fn budget_is_enforced() {
        let p = pres(BaseRing::Int, &["x", "y", "z"], &[]);
        assert!(matches!(
            p.enumerate_points(&BaseRing::Mod(101), 1_000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn hom_checks_relations_and_units() {
        // Z[x^{+-1}] -> Z[x]/(x^2-1), x -> x with inverse x
        let src = RingPresentation::free(BaseRing::Int, Vars::with_laurent(&["x"], &[true]));
        let dst = pres(BaseRing::Int, &["x"], &["x^2 - 1"]);
        let x = Poly::var(dst.vars(), 0);
        let hom = RingHom::new(src.clone(), dst.clone(), vec![x.clone()], vec![Some(x.clone())])
            .unwrap();
        let e = parse_poly(src.vars(), "x^2 + x^-2").unwrap();
        assert_eq!(hom.apply(&e).unwrap().to_string(), "2");

        // x -> x without an inverse witness is rejected
        assert!(RingHom::new(src, dst, vec![x], vec![None]).is_err());
    }
}
