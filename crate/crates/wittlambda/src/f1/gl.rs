//! Linear algebra over F_1: axis loci, M_n and GL_n points, and the
//! psi_2/determinant incompatibility.
//!
//! The F_1-linear functionals on A^n form the union of the axes
//! Z = Spec Z\[b_1..b_n\]/(b_i b_j : i != j); its B-points are the vectors
//! with pairwise-vanishing products. The lambda_2 oracle re-derives the
//! defining condition through Witt arithmetic: lambda_2 of t = sum_j x_j
//! (x) \[b_j\] is sum_{i<j} x_i x_j (x) \[b_i\]\[b_j\], whose coefficients are
//! Teichmueller products computed with the universal multiplication
//! polynomials in W_{1,2}(B).


use crate::error::{Error, Result};
use crate::par;
use crate::poly::{Poly, Vars};
use crate::scalar::{BaseRing, Scalar};
use crate::witt::{TruncationSet, WittVector};

/// All (b_1..b_n) in B^n with b_i b_j = 0 for i != j, in lexicographic
/// enumeration order. The axes have n(|B*|) + 1 points over a field.
pub fn axis_vectors(n: usize, ring: &BaseRing, budget: u64) -> Result<Vec<Vec<Scalar>>> {
    let order = ring
        .order()
        .ok_or_else(|| Error::invalid("axis enumeration needs a finite ring"))?;
    let needed = (order as u128).pow(n as u32);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(par::filter_map_indexed(needed as u64, move |idx| {
        let mut v = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            v.push(ring.element(rest % order));
            rest /= order;
        }
        v.reverse();
        for i in 0..n {
            for j in i + 1..n {
                if !v[i].mul(&v[j]).is_zero() {
                    return None;
                }
            }
        }
        Some(v)
    }))
}

pub fn is_axis_vector(v: &[Scalar]) -> bool {
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !v[i].mul(&v[j]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The coefficients of lambda_2(sum_j x_j (x) \[b_j\]) in
/// Z\[x_1..x_n\] (x) W_{1,2}(B): for each i < j the Witt vector
/// \[b_i\] * \[b_j\], computed by the universal product polynomials.
pub fn lambda2_teich_coefficients(v: &[Scalar]) -> Result<Vec<((usize, usize), WittVector)>> {
    let trunc = TruncationSet::new([1, 2])?;
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let ti = WittVector::teichmuller(trunc.clone(), v[i].clone());
            let tj = WittVector::teichmuller(trunc.clone(), v[j].clone());
            out.push(((i, j), ti.mul(&tj)?));
        }
    }
    Ok(out)
}

/// lambda_2(sum_j x_j (x) \[b_j\]) = 0, decided through Witt arithmetic.
/// Agrees with `is_axis_vector` by Teichmueller multiplicativity.
pub fn lambda2_oracle_vanishes(v: &[Scalar]) -> Result<bool> {
    Ok(lambda2_teich_coefficients(v)?
        .iter()
        .all(|(_, w)| w.is_zero()))
}

/// A 0/1 matrix with at most one 1 per row: row i carries its 1 in column
/// rows\[i\], or is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix01 {
    pub n: usize,
    pub rows: Vec<Option<usize>>,
}

impl Matrix01 {
    pub fn entries(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.rows[i] == Some(j))).collect())
            .collect()
    }

    pub fn det(&self) -> i64 {
        let m: Vec<Vec<i64>> = self
            .entries()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect();
        det_i64(&m)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.n];
        for r in &self.rows {
            match r {
                None => return false,
                Some(j) => {
                    if seen[*j] {
                        return false;
                    }
                    seen[*j] = true;
                }
            }
        }
        true
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        acc += if j % 2 == 0 { 1 } else { -1 } * m[0][j] * det_i64(&minor);
    }
    acc
}

/// M_n(F_1): all 0/1 matrices with at most one 1 per row; there are
/// (n+1)^n of them.
pub fn mn_f1_points(n: usize, budget: u64) -> Result<Vec<Matrix01>> {
    let needed = ((n + 1) as u128).pow(n as u32);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::with_capacity(needed as u64 as usize);
    for idx in 0..needed as u64 {
        let mut rows = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            let k = (rest % (n as u64 + 1)) as usize;
            rest /= n as u64 + 1;
            rows.push(if k == n { None } else { Some(k) });
        }
        rows.reverse();
        out.push(Matrix01 { n, rows });
    }
    Ok(out)
}

/// GL_n(F_1) = S_n: the invertible elements of M_n(F_1), found by brute
/// determinant.
pub fn gln_f1_points(n: usize, budget: u64) -> Result<Vec<Matrix01>> {
    Ok(mn_f1_points(n, budget)?
        .into_iter()
        .filter(|m| m.det() != 0)
        .collect())
}

/// All permutations of 0..n in a fixed order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Symbolic matrix of the group element (sigma, diag(a_1..a_n)) of
/// S_n x| G_m^n, over Z\[a_1..a_n\]: column j carries a_j in row sigma(j).
fn monomial_matrix(sigma: &[usize], vars: &std::sync::Arc<Vars>) -> Vec<Vec<Poly>> {
    let n = sigma.len();
    let mut m = vec![vec![Poly::zero(vars); n]; n];
    for j in 0..n {
        m[sigma[j]][j] = Poly::var(vars, j);
    }
    m
}

fn det_poly(m: &[Vec<Poly>], vars: &std::sync::Arc<Vars>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det_poly(&minor, vars));
        if j % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

#[derive(Debug, Clone)]
pub struct DetPsiReport {
    /// A witness point where det(psi_2(g)) != psi_2(det(g)).
    pub psi2_witness: Option<String>,
    /// Odd primes verified compatible on every permutation.
    pub odd_ok: Vec<u64>,
}

/// The determinant map GL_n/F_1 -> G_m commutes with psi_p for odd p but
/// not with psi_2: on g = (sigma, diag(a)), det(psi_p(g)) =
/// sign(sigma) prod a_j^p while psi_p(det g) = sign(sigma)^p prod a_j^p.
/// Checked symbolically over Z\[a_1..a_n\] for every sigma in S_n.
pub fn det_psi_compat_check(n: usize, odd_primes: &[u64]) -> Result<DetPsiReport> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2 for the determinant obstruction"));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let vars = Vars::new(&names);
    let mut witness = None;
    let mut odd_ok = Vec::new();
    let entrywise_pow = |m: &Vec<Vec<Poly>>, p: u32| -> Vec<Vec<Poly>> {
        m.iter().map(|r| r.iter().map(|e| e.pow(p)).collect()).collect()
    };
    for sigma in permutations(n) {
        let g = monomial_matrix(&sigma, &vars);
        let det_g = det_poly(&g, &vars);
        let lhs = det_poly(&entrywise_pow(&g, 2), &vars);
        let rhs = det_g.pow(2);
        if lhs != rhs && witness.is_none() {
            witness = Some(format!(
                "sigma = {:?} (sign {}): det(psi_2(g)) = {} but psi_2(det g) = {}",
                sigma,
                permutation_sign(&sigma),
                lhs,
                rhs
            ));
        }
    }
    for &p in odd_primes {
        let mut all_ok = true;
        for sigma in permutations(n) {
            let g = monomial_matrix(&sigma, &vars);
            let lhs = det_poly(&entrywise_pow(&g, p as u32), &vars);
            let rhs = det_poly(&g, &vars).pow(p as u32);
            if lhs != rhs {
                all_ok = false;
            }
        }
        if all_ok {
            odd_ok.push(p);
        }
    }
    Ok(DetPsiReport { psi2_witness: witness, odd_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_counts_over_small_fields() {
        // |Z(F_q)^n axes| = n(q-1) + 1
        for (n, q, expect) in [(2usize, 2u64, 3usize), (3, 3, 7), (1, 5, 5), (3, 2, 4)] {
            let ring = BaseRing::gf(q).unwrap();
            let pts = axis_vectors(n, &ring, 1 << 20).unwrap();
            assert_eq!(pts.len(), expect, "axes n={n} q={q}");
        }
        // explicit n=2 over F_2: (0,0),(0,1),(1,0)
        let pts = axis_vectors(2, &BaseRing::gf(2).unwrap(), 1 << 20).unwrap();
        let printed: Vec<String> = pts
            .iter()
            .map(|v| format!("({},{})", v[0], v[1]))
            .collect();
        assert_eq!(printed, vec!["(0,0)", "(0,1)", "(1,0)"]);
    }

    #[test]
    fn lambda2_oracle_matches_axis_condition() {
        for q in [2u64, 3] {
            let ring = BaseRing::gf(q).unwrap();
            for n in 1..=3usize {
                let total = ring.order().unwrap().pow(n as u32);
                for idx in 0..total {
                    let mut v = Vec::new();
                    let mut rest = idx;
                    for _ in 0..n {
                        v.push(ring.element(rest % ring.order().unwrap()));
                        rest /= ring.order().unwrap();
                    }
                    assert_eq!(
                        lambda2_oracle_vanishes(&v).unwrap(),
                        is_axis_vector(&v),
                        "q={q} n={n} v={v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn matrix_monoid_counts() {
        for n in 1..=4usize {
            let mn = mn_f1_points(n, 1 << 20).unwrap();
            assert_eq!(mn.len(), (n + 1).pow(n as u32));
            let gl = gln_f1_points(n, 1 << 20).unwrap();
            assert_eq!(gl.len(), (1..=n).product::<usize>());
            assert!(gl.iter().all(|m| m.is_permutation()));
        }
        // n = 1: M_1 = {0, 1}, GL_1 = {1}
        let gl = gln_f1_points(1, 100).unwrap();
        assert_eq!(gl.len(), 1);
        assert_eq!(gl[0].entries(), vec![vec![1]]);
    }

    #[test]
    fn determinant_psi2_obstruction() {
        let rep = det_psi_compat_check(2, &[3, 5, 7]).unwrap();
        let w = rep.psi2_witness.expect("psi_2 witness must exist for n = 2");
        assert!(w.contains("det(psi_2(g))"));
        assert_eq!(rep.odd_ok, vec![3, 5, 7]);
        let rep3 = det_psi_compat_check(3, &[3]).unwrap();
        assert!(rep3.psi2_witness.is_some());
        assert_eq!(rep3.odd_ok, vec![3]);
    }
}
