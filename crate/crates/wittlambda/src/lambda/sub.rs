//! Sub-lambda-ring verification and equalizers.
//!
//! The singular-line subrings are cut out of Z\[t^{+-1}\] by linear
//! conditions built from point evaluations and first derivatives (nodal:
//! f(1) = f(-1); cuspidal: f'(1) = 0). `sublambda_check` computes the
//! condition kernel on the monomial span up to a degree bound and verifies
//! the kernel is carried into the conditions' kernel by every requested
//! psi_p. Equalizers of two lambda-ring maps give the modulus-contraction
//! construction; membership is decided by normal forms in the target.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda::LambdaStructure;
use crate::poly::{Mono, Poly};
use crate::ring::RingHom;

/// One summand of a linear functional: coeff * f^{(order)}(point).
#[derive(Debug, Clone)]
pub struct CondTerm {
    pub coeff: BigInt,
    pub order: u8,
    pub point: BigInt,
}

/// A linear functional on Laurent polynomials in one variable.
#[derive(Debug, Clone)]
pub struct Condition {
    pub label: String,
    pub terms: Vec<CondTerm>,
}

impl Condition {
    /// f(1) - f(-1) = 0: the nodal line, G_m with 1 and -1 identified.
    pub fn nodal() -> Condition {
        Condition {
            label: "f(1) - f(-1)".into(),
            terms: vec![
                CondTerm { coeff: BigInt::one(), order: 0, point: BigInt::one() },
                CondTerm { coeff: -BigInt::one(), order: 0, point: -BigInt::one() },
            ],
        }
    }

    /// f'(1) = 0: the cuspidal line.
    pub fn cuspidal() -> Condition {
        Condition {
            label: "f'(1)".into(),
            terms: vec![CondTerm { coeff: BigInt::one(), order: 1, point: BigInt::one() }],
        }
    }

    /// f(a) - f(b) = 0 for arbitrary integer points. Away from a = -b or
    /// a = b these conditions do not cut out sub-lambda-rings.
    pub fn eval_difference(a: i64, b: i64) -> Condition {
        Condition {
            label: format!("f({a}) - f({b})"),
            terms: vec![
                CondTerm { coeff: BigInt::one(), order: 0, point: BigInt::from(a) },
                CondTerm { coeff: -BigInt::one(), order: 0, point: BigInt::from(b) },
            ],
        }
    }

    pub fn eval(&self, f: &Poly) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for t in &self.terms {
            if t.point.is_zero() && f.min_degree_in(0) < 0 {
                return Err(Error::invalid("condition evaluates a Laurent polynomial at 0"));
            }
            let g = match t.order {
                0 => f.clone(),
                1 => f.derivative(0),
                _ => return Err(Error::invalid("only first derivatives are supported")),
            };
            let v = g.eval_rational(&[BigRational::from(t.point.clone())])?;
            acc += BigRational::from(t.coeff.clone()) * v;
        }
        Ok(acc)
    }
}

/// Primitive integer basis of the common kernel of the conditions on the
/// span of the monomials t^k, |k| <= degree (k >= 0 when t is not Laurent).
pub fn condition_kernel(
    l: &LambdaStructure,
    conds: &[Condition],
    degree: i32,
) -> Result<Vec<Poly>> {
    let vars = l.ring().vars();
    if vars.len() != 1 {
        return Err(Error::invalid(
            "sub-lambda conditions are supported on one-variable rings",
        ));
    }
    let lo = if vars.is_laurent(0) { -degree } else { 0 };
    let monomials: Vec<Poly> = (lo..=degree)
        .map(|k| Poly::monomial(vars, Mono(vec![k]), BigInt::one()))
        .collect();
    // rows: conditions; cols: monomials
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(conds.len());
    for c in conds {
        let row = monomials
            .iter()
            .map(|m| c.eval(m))
            .collect::<Result<Vec<_>>>()?;
        mat.push(row);
    }
    let null = null_space(mat, monomials.len());
    Ok(null
        .into_iter()
        .map(|v| {
            let v = primitive_integer(v);
            let mut acc = Poly::zero(vars);
            for (m, c) in monomials.iter().zip(v) {
                acc = acc.add(&m.scale(&c));
            }
            acc
        })
        .collect())
}

/// Exact rational null space via reduced row echelon form.
fn null_space(mut mat: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                let pivot_row = mat[r].clone();
                for (x, pv) in mat[i].iter_mut().zip(&pivot_row) {
                    *x -= f.clone() * pv.clone();
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = -mat[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

fn primitive_integer(v: Vec<BigRational>) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in &v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.clone());
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[derive(Debug, Clone)]
pub struct SubLambdaWitness {
    pub prime: u64,
    pub element: String,
    pub condition: String,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct SubLambdaReport {
    pub kernel_dim: usize,
    pub failures: Vec<SubLambdaWitness>,
}

impl SubLambdaReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the condition kernel (up to the degree bound) is stable under
/// psi_p for every p in `primes`. The kernel basis check suffices: the
/// psi_p of a toric structure act linearly on the monomial span.
pub fn sublambda_check(
    l: &LambdaStructure,
    conds: &[Condition],
    degree: i32,
    primes: &[u64],
) -> Result<SubLambdaReport> {
    let kernel = condition_kernel(l, conds, degree)?;
    let mut failures = Vec::new();
    for &p in primes {
        for b in &kernel {
            let image = l.apply_psi(p, b)?;
            for c in conds {
                let v = c.eval(&image)?;
                if !v.is_zero() {
                    failures.push(SubLambdaWitness {
                        prime: p,
                        element: b.to_string(),
                        condition: c.label.clone(),
                        value: v.to_string(),
                    });
                }
            }
        }
    }
    Ok(SubLambdaReport { kernel_dim: kernel.len(), failures })
}

/// The Frobenius-lift congruence on the sub-ring: psi_p(f) = f^p mod p for
/// every kernel basis element f. Returns a witness on failure. Division by
/// p happens in the ambient Laurent ring; the subrings are saturated, so
/// ambient divisibility is equivalent to divisibility in the subring.
pub fn kernel_frobenius_congruence(
    l: &LambdaStructure,
    conds: &[Condition],
    degree: i32,
    p: u64,
) -> Result<Option<String>> {
    let kernel = condition_kernel(l, conds, degree)?;
    for b in &kernel {
        let diff = l.apply_psi(p, b)?.sub(&b.pow(p as u32));
        if diff.exact_div(&BigInt::from(p)).is_err() {
            return Ok(Some(format!(
                "psi_{p}({b}) - ({b})^{p} is not divisible by {p}"
            )));
        }
    }
    Ok(None)
}

/// The equalizer of two lambda-ring maps f, g: A -> B, with a membership
/// decision procedure.
#[derive(Debug, Clone)]
pub struct Equalizer {
    f: RingHom,
    g: RingHom,
}

impl Equalizer {
    /// Verifies both maps are lambda-ring maps on the generators for the
    /// given primes before constructing the decision procedure.
    pub fn new(
        f: RingHom,
        g: RingHom,
        src: &LambdaStructure,
        dst: &LambdaStructure,
        primes: &[u64],
    ) -> Result<Equalizer> {
        for (hom, name) in [(&f, "f"), (&g, "g")] {
            if hom.src().vars() != src.ring().vars() || hom.dst().vars() != dst.ring().vars() {
                return Err(Error::invalid("hom endpoints do not match the structures"));
            }
            for &p in primes {
                for i in 0..src.ring().vars().len() {
                    let gen = Poly::var(src.ring().vars(), i);
                    let lhs = hom.apply(&src.apply_psi(p, &gen)?)?;
                    let rhs = dst.apply_psi(p, &hom.apply(&gen)?)?;
                    if lhs != rhs {
                        return Err(Error::NotLambdaMap(format!(
                            "{name} is not psi_{p}-equivariant on {}: {} vs {}",
                            src.ring().vars().name(i),
                            lhs,
                            rhs
                        )));
                    }
                }
            }
        }
        Ok(Equalizer { f, g })
    }

    /// Decide f(a) = g(a).
    pub fn contains(&self, a: &Poly) -> Result<bool> {
        Ok(self.f.apply(a)? == self.g.apply(a)?)
    }

    /// Spot-check that the equalizer subset is psi-closed on the samples:
    /// every sample in the equalizer must stay in it under each psi_p.
    pub fn psi_closed_witness(
        &self,
        src: &LambdaStructure,
        samples: &[Poly],
        primes: &[u64],
    ) -> Result<Option<String>> {
        for a in samples {
            if !self.contains(a)? {
                continue;
            }
            for &p in primes {
                let img = src.apply_psi(p, a)?;
                if !self.contains(&img)? {
                    return Ok(Some(format!(
                        "{a} is in the equalizer but psi_{p}({a}) = {img} is not"
                    )));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidPresentation;
    use crate::parse::parse_poly;
    use crate::poly::Vars;
    use crate::ring::RingPresentation;
    use crate::scalar::BaseRing;

    fn gm() -> LambdaStructure {
        let m = MonoidPresentation::new(vec![], vec!["t".into()], vec![], vec![]).unwrap();
        LambdaStructure::toric("Gm", &m).unwrap()
    }

    #[test]
    fn nodal_and_cuspidal_kernels_are_psi_stable() {
        let l = gm();
        let nodal = sublambda_check(&l, &[Condition::nodal()], 6, &[2, 3, 5]).unwrap();
        assert!(nodal.pass(), "nodal failures: {:?}", nodal.failures);
        assert_eq!(nodal.kernel_dim, 12); // 13 monomials, rank-1 condition

        let cusp = sublambda_check(&l, &[Condition::cuspidal()], 6, &[2, 3]).unwrap();
        assert!(cusp.pass(), "cuspidal failures: {:?}", cusp.failures);
    }

    #[test]
    fn fake_condition_fails_closure() {
        let l = gm();
        let rep = sublambda_check(&l, &[Condition::eval_difference(2, 1)], 4, &[2]).unwrap();
        assert!(!rep.pass(), "f(2) = f(1) should not cut out a sub-lambda-ring");
    }

    #[test]
    fn frobenius_congruence_on_singular_lines() {
        let l = gm();
        for p in [2, 3, 5, 7] {
            assert_eq!(
                kernel_frobenius_congruence(&l, &[Condition::nodal()], 5, p).unwrap(),
                None
            );
            assert_eq!(
                kernel_frobenius_congruence(&l, &[Condition::cuspidal()], 5, p).unwrap(),
                None
            );
        }
    }

    #[test]
    fn modulus_contraction_equalizer() {
        // Z[x^{+-1}] => Z[x]/(x^2 - 1), x -> x and x -> 1
        let src_l = {
            let m = MonoidPresentation::new(vec![], vec!["x".into()], vec![], vec![]).unwrap();
            LambdaStructure::toric("Gm", &m).unwrap()
        };
        let dst_ring = {
            let vars = Vars::new(&["x"]);
            let rel = parse_poly(&vars, "x^2 - 1").unwrap();
            RingPresentation::new(BaseRing::Int, vars, vec![rel]).unwrap()
        };
        let dst_l = LambdaStructure::new(
            "mu2-contracted",
            dst_ring.clone(),
            Default::default(),
            Some(crate::lambda::DefaultRule::Toric),
        )
        .unwrap();
        let x = Poly::var(dst_ring.vars(), 0);
        let one = Poly::one(dst_ring.vars());
        let f = RingHom::new(
            src_l.ring().clone(),
            dst_ring.clone(),
            vec![x.clone()],
            vec![Some(x)],
        )
        .unwrap();
        let g = RingHom::new(
            src_l.ring().clone(),
            dst_ring,
            vec![one.clone()],
            vec![Some(one)],
        )
        .unwrap();
        let eq = Equalizer::new(f, g, &src_l, &dst_l, &[2, 3, 5]).unwrap();

        let sv = src_l.ring().vars();
        // x + x^-1 maps to 2x vs 2: not in the equalizer
        assert!(!eq.contains(&parse_poly(sv, "x + x^-1").unwrap()).unwrap());
        // constants always are
        assert!(eq.contains(&parse_poly(sv, "5").unwrap()).unwrap());
        // x^2 + x^-2 + x + x^-1 maps to 2 + 2x vs 4: not in the equalizer
        assert!(!eq
            .contains(&parse_poly(sv, "x^2 + x^-2 + x + x^-1").unwrap())
            .unwrap());
        // elements c + (x^2 - 1) r are in the equalizer; psi-closure holds
        let samples: Vec<Poly> = [
            "3 + (x^2 - 1) * (x + 4)",
            "1 + (x^2 - 1) * x^-2",
            "(x^2 - 1) * (x^-1 + x)",
            "x + 1",
        ]
        .iter()
        .map(|s| parse_poly(sv, s).unwrap())
        .collect();
        assert!(eq.contains(&samples[0]).unwrap());
        assert_eq!(
            eq.psi_closed_witness(&src_l, &samples, &[2, 3, 5]).unwrap(),
            None
        );
    }

    #[test]
    fn composite_modulus_equalizer() {
        // contract the zero locus of (x^2 - 1)(x^3 - 1): the equalizer of
        // x -> x and x -> 1 into Z[x]/((x^2-1)(x^3-1))
        let src_l = {
            let m = MonoidPresentation::new(vec![], vec!["x".into()], vec![], vec![]).unwrap();
            LambdaStructure::toric("Gm", &m).unwrap()
        };
        let dst_ring = {
            let vars = Vars::new(&["x"]);
            let rel = parse_poly(&vars, "(x^2 - 1) * (x^3 - 1)").unwrap();
            RingPresentation::new(BaseRing::Int, vars, vec![rel]).unwrap()
        };
        let dst_l = LambdaStructure::new(
            "contracted",
            dst_ring.clone(),
            Default::default(),
            Some(crate::lambda::DefaultRule::Toric),
        )
        .unwrap();
        let x = Poly::var(dst_ring.vars(), 0);
        // x is invertible mod the relation: x^5 = x^3 + x^2 - 1, so
        // x * (-x^4 + x^2 + x) = 1
        let xinv = dst_ring.normal_form(&parse_poly(dst_ring.vars(), "-x^4 + x^2 + x").unwrap());
        assert_eq!(
            dst_ring.normal_form(&x.mul(&xinv)),
            Poly::one(dst_ring.vars())
        );
        let one = Poly::one(dst_ring.vars());
        let f = RingHom::new(src_l.ring().clone(), dst_ring.clone(), vec![x], vec![Some(xinv)])
            .unwrap();
        let g = RingHom::new(src_l.ring().clone(), dst_ring, vec![one.clone()], vec![Some(one)])
            .unwrap();
        let eq = Equalizer::new(f, g, &src_l, &dst_l, &[2, 3, 5]).unwrap();
        let sv = src_l.ring().vars();
        // elements c + (x^2-1)(x^3-1) r lie in the equalizer and stay there
        let samples: Vec<Poly> = [
            "2 + (x^2 - 1) * (x^3 - 1) * (x + x^-1)",
            "(x^2 - 1) * (x^3 - 1) * x^-3",
            "x + x^2",
        ]
        .iter()
        .map(|t| parse_poly(sv, t).unwrap())
        .collect();
        assert!(eq.contains(&samples[0]).unwrap());
        assert!(eq.contains(&samples[1]).unwrap());
        assert!(!eq.contains(&samples[2]).unwrap());
        assert_eq!(eq.psi_closed_witness(&src_l, &samples, &[2, 3, 5]).unwrap(), None);
    }

    #[test]
    fn non_equivariant_map_is_rejected() {
        // x -> x + 1 on the toric line is not a lambda map
        let src = LambdaStructure::toric("A1", &MonoidPresentation::free(1, 0)).unwrap();
        let hom = RingHom::new(
            src.ring().clone(),
            src.ring().clone(),
            vec![parse_poly(src.ring().vars(), "x1 + 1").unwrap()],
            vec![None],
        )
        .unwrap();
        let ident = RingHom::new(
            src.ring().clone(),
            src.ring().clone(),
            vec![Poly::var(src.ring().vars(), 0)],
            vec![None],
        )
        .unwrap();
        assert!(matches!(
            Equalizer::new(hom, ident, &src, &src, &[2]),
            Err(Error::NotLambdaMap(_))
        ));
    }
}
