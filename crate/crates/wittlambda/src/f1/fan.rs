//! Fans of rational simplicial cones and their F_1/F_q combinatorics.
//!
//! Cones are given by sets of primitive ray vectors; the face lattice of a
//! simplicial cone is the power set of its rays, so the face relation is
//! subset inclusion and validation only needs linear independence. The
//! orbit decomposition drives everything: complemented closed subspaces are
//! up-sets of the cone poset, complemented F_1-points are the
//! full-dimensional cones, |X(F_q)| = sum over cones of (q-1)^codim, and
//! the Hodge polynomial is the same sum with q replaced by t.

use std::collections::BTreeSet;


use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::{Poly, Vars};

#[derive(Debug, Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    /// All cones as ray-index sets, zero cone first, then sorted by
    /// (dimension, indices).
    cones: Vec<BTreeSet<usize>>,
    smooth: Vec<bool>,
}

impl Fan {
    /// Build a fan from its nonzero cones (the zero cone is implicit).
    /// Every ray must be primitive and every listed cone simplicial and
    /// closed under faces.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        if rank == 0 {
            return Err(Error::InvalidFan("ambient rank must be >= 1".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidFan(format!("ray {i} has wrong dimension")));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidFan(format!("ray {i} is zero")));
            }
            let g = r.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            if g != 1 {
                return Err(Error::InvalidFan(format!("ray {i} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("duplicate ray {i}")));
            }
        }
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        for c in &cones {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if set.len() != c.len() {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray")));
            }
            if set.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c:?} references a missing ray")));
            }
            if set.len() > rank {
                return Err(Error::InvalidFan(format!(
                    "cone {c:?} has more rays than the ambient rank"
                )));
            }
            if !sets.contains(&set) {
                sets.push(set);
            }
        }
        // simpliciality: the rays of each cone are linearly independent
        for set in &sets {
            if set.is_empty() {
                continue;
            }
            let mat: Vec<Vec<i64>> = set.iter().map(|&i| rays[i].clone()).collect();
            if int_rank(&mat) != set.len() {
                return Err(Error::InvalidFan(format!(
                    "cone {:?} is not simplicial (rays are dependent)",
                    set.iter().collect::<Vec<_>>()
                )));
            }
        }
        // face closure: every subset of a listed cone is listed
        for set in sets.clone() {
            for mask in 1u64..(1 << set.len()) {
                let face: BTreeSet<usize> = set
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                if !sets.contains(&face) {
                    return Err(Error::InvalidFan(format!(
                        "not closed under faces: {:?} is a face of {:?} but is not listed",
                        face.iter().collect::<Vec<_>>(),
                        set.iter().collect::<Vec<_>>()
                    )));
                }
            }
        }
        sets.sort_by(|a, b| {
            (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
        });
        let smooth = sets
            .iter()
            .map(|set| {
                if set.is_empty() {
                    return true;
                }
                let mat: Vec<Vec<i64>> = set.iter().map(|&i| rays[i].clone()).collect();
                maximal_minor_gcd(&mat) == 1
            })
            .collect();
        Ok(Fan { rank, rays, cones: sets, smooth })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[BTreeSet<usize>] {
        &self.cones
    }

    pub fn cone_dim(&self, i: usize) -> usize {
        self.cones[i].len()
    }

    /// sigma_i is a face of sigma_j.
    pub fn is_face(&self, i: usize, j: usize) -> bool {
        self.cones[i].is_subset(&self.cones[j])
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth.iter().all(|&s| s)
    }

    pub fn cone_smooth(&self, i: usize) -> bool {
        self.smooth[i]
    }

    /// Indices of cones of dimension = rank: the torus-fixed points.
    pub fn full_dim_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cone_dim(i) == self.rank)
            .collect()
    }

    /// Cones not properly contained in another cone (chart representatives).
    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| {
                (0..self.cones.len()).all(|j| j == i || !self.is_face(i, j) || self.cones[i] == self.cones[j])
            })
            .collect()
    }

    /// Number of torus-fixed points = P(1).
    pub fn euler_characteristic(&self) -> usize {
        self.full_dim_cones().len()
    }

    /// P(t) = sum over cones of (t-1)^(rank - dim); for smooth complete
    /// fans this is the Hodge polynomial of the toric variety.
    pub fn hodge_poly(&self) -> Poly {
        let vars = Vars::new(&["t"]);
        let tm1 = Poly::var(&vars, 0).sub(&Poly::one(&vars));
        let mut acc = Poly::zero(&vars);
        for i in 0..self.cones.len() {
            acc = acc.add(&tm1.pow((self.rank - self.cone_dim(i)) as u32));
        }
        acc
    }

    /// Orbit-formula point count: sum over cones of (q-1)^(rank - dim).
    pub fn count_fq(&self, q: u64) -> Result<u64> {
        check_prime_power(q)?;
        let mut acc: u64 = 0;
        for i in 0..self.cones.len() {
            let term = (q - 1)
                .checked_pow((self.rank - self.cone_dim(i)) as u32)
                .ok_or_else(|| Error::invalid("point count overflows u64"))?;
            acc = acc
                .checked_add(term)
                .ok_or_else(|| Error::invalid("point count overflows u64"))?;
        }
        Ok(acc)
    }

    /// Brute-force count over F_q: enumerate the points of every
    /// maximal-cone chart A^d x G_m^(n-d) and count each point in the first
    /// chart containing its zero-pattern face, so the glued set is counted
    /// without duplicates.
    pub fn count_fq_bruteforce(&self, q: u64, budget: u64) -> Result<u64> {
        check_prime_power(q)?;
        let maximal = self.maximal_cones();
        let mut needed: u128 = 0;
        for &ci in &maximal {
            let d = self.cone_dim(ci) as u32;
            let torus = (self.rank - self.cone_dim(ci)) as u32;
            needed += (q as u128).pow(d) * ((q - 1) as u128).pow(torus);
        }
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut total: u64 = 0;
        for &ci in &maximal {
            let cone_rays: Vec<usize> = self.cones[ci].iter().copied().collect();
            let d = cone_rays.len();
            let torus = self.rank - d;
            let chart_points = (q).pow(d as u32) * (q - 1).pow(torus as u32);
            let counted = par::sum_indexed(chart_points, |idx| {
                // decode: d coordinates in F_q, then torus coordinates in F_q^*
                let mut rest = idx;
                let mut zero_pattern: BTreeSet<usize> = BTreeSet::new();
                for &ray in cone_rays.iter().rev() {
                    let a = rest % q;
                    rest /= q;
                    if a == 0 {
                        zero_pattern.insert(ray);
                    }
                }
                // torus coordinates never vanish; their values do not
                // change the orbit, so `rest` encodes them and is ignored
                let face = self
                    .cones
                    .iter()
                    .position(|c| *c == zero_pattern)
                    .expect("zero pattern is a face of the chart cone");
                let first_chart = maximal
                    .iter()
                    .copied()
                    .find(|&mj| self.is_face(face, mj))
                    .expect("every face lies in some maximal cone");
                u64::from(first_chart == ci)
            });
            total += counted;
        }
        Ok(total)
    }

    /// The affine chart of a cone is A^d x G_m^(n-d); its shape (d, n-d)
    /// determines the chart's monoid N^d x Z^(n-d) for smooth cones.
    pub fn chart_shape(&self, cone: usize) -> (usize, usize) {
        (self.cone_dim(cone), self.rank - self.cone_dim(cone))
    }
}

fn check_prime_power(q: u64) -> Result<()> {
    if q < 2 || prime_power(q).is_none() {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// A complemented closed subspace: an up-set of the cone poset, i.e. the
/// union of the orbits of its cones (equivalently, of orbit closures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementedSubspace {
    pub cones: BTreeSet<usize>,
}

impl ComplementedSubspace {
    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

/// All up-sets of the cone poset, in ascending bitmask order over the
/// canonical cone list (so the empty set comes first and the full fan
/// last).
pub fn complemented_closed_subspaces(fan: &Fan, budget: u64) -> Result<Vec<ComplementedSubspace>> {
    let m = fan.cones().len();
    if m >= 63 || (1u64 << m) > budget {
        return Err(Error::PosetTooLarge { cones: m, budget });
    }
    let total = 1u64 << m;
    Ok(par::filter_map_indexed(total, move |mask| {
        for i in 0..m {
            if mask >> i & 1 == 1 {
                for j in 0..m {
                    if mask >> j & 1 == 0 && fan.is_face(i, j) && i != j {
                        return None;
                    }
                }
            }
        }
        Some(ComplementedSubspace {
            cones: (0..m).filter(|&i| mask >> i & 1 == 1).collect(),
        })
    }))
}

/// The complemented F_1-valued points: the torus-fixed points, i.e. the
/// full-dimensional cones.
pub fn complemented_f1_points(fan: &Fan) -> Vec<usize> {
    fan.full_dim_cones()
}

/// Rank of an integer matrix (rows of i64), by fraction-free elimination.
fn int_rank(mat: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        for i in 0..rows {
            if i != row && m[i][col] != 0 {
                let (a, b) = (m[row][col], m[i][col]);
                let pivot_row = m[row].clone();
                for (x, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *x = *x * a - pv * b;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Integer determinant by Laplace expansion; matrices here are tiny.
fn int_det(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return mat[0][0];
    }
    let mut acc: i128 = 0;
    for j in 0..n {
        if mat[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc += s * mat[0][j] * int_det(&minor);
    }
    acc
}

/// gcd of the d x d minors of a d x n matrix; 1 iff the rows extend to a
/// Z-basis (the smoothness test).
fn maximal_minor_gcd(mat: &[Vec<i64>]) -> i128 {
    let d = mat.len();
    let n = mat[0].len();
    let mut g: i128 = 0;
    let mut cols: Vec<usize> = (0..d).collect();
    loop {
        let sub: Vec<Vec<i128>> = mat
            .iter()
            .map(|row| cols.iter().map(|&c| row[c] as i128).collect())
            .collect();
        g = num_integer::gcd(g, int_det(&sub).abs());
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] != i + n - d {
                cols[i] += 1;
                for k in i + 1..d {
                    cols[k] = cols[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The standard test fans.
pub mod fixtures {
    use super::Fan;

    /// A^n: rays e_1..e_n, single maximal cone spanned by all of them.
    pub fn affine_space(n: usize) -> Fan {
        let rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut cones = Vec::new();
        for mask in 1u64..(1 << n) {
            cones.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
        Fan::new(n, rays, cones).unwrap()
    }

    /// G_m^n: the zero fan in rank n.
    pub fn torus(n: usize) -> Fan {
        let rays: Vec<Vec<i64>> = Vec::new();
        Fan::new(n, rays, Vec::new()).unwrap()
    }

    /// P^n: rays e_1..e_n and -(e_1+..+e_n); maximal cones all n-subsets.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        let mut cones = Vec::new();
        for mask in 1u64..(1 << (n + 1)) {
            let c: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
            if c.len() <= n {
                cones.push(c);
            }
        }
        Fan::new(n, rays, cones).unwrap()
    }

    /// P^1 x P^1: rays +-e_1, +-e_2; maximal cones the four quadrants.
    pub fn p1xp1() -> Fan {
        let rays = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let cones = vec![
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![0, 2],
            vec![1, 2],
            vec![1, 3],
            vec![0, 3],
        ];
        Fan::new(2, rays, cones).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fan_validation() {
        // non-primitive ray
        assert!(Fan::new(2, vec![vec![2, 0]], vec![vec![0]]).is_err());
        // missing face: 2-cone listed without its rays
        assert!(Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).is_err());
        // dependent rays in one cone
        assert!(Fan::new(
            2,
            vec![vec![1, 0], vec![-1, 0]],
            vec![vec![0], vec![1], vec![0, 1]]
        )
        .is_err());
    }

    #[test]
    fn cone_counts_of_fixtures() {
        assert_eq!(affine_space(1).cones().len(), 2);
        assert_eq!(projective_space(1).cones().len(), 3);
        assert_eq!(projective_space(2).cones().len(), 7);
        assert_eq!(projective_space(3).cones().len(), 15);
        assert_eq!(p1xp1().cones().len(), 9);
        assert_eq!(torus(2).cones().len(), 1);
    }

    #[test]
    fn smoothness_flags() {
        assert!(projective_space(3).is_smooth());
        assert!(p1xp1().is_smooth());
        // cone over (1,0) and (1,2) is simplicial but singular
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 2]],
            vec![vec![0], vec![1], vec![0, 1]],
        )
        .unwrap();
        assert!(!f.is_smooth());
    }

    #[test]
    fn hodge_polynomials() {
        assert_eq!(projective_space(2).hodge_poly().to_string(), "t^2 + t + 1");
        assert_eq!(affine_space(1).hodge_poly().to_string(), "t");
        assert_eq!(p1xp1().hodge_poly().to_string(), "t^2 + 2*t + 1");
        let vars = Vars::new(&["t"]);
        let mut pn = Poly::zero(&vars);
        for k in 0..=4u32 {
            pn = pn.add(&Poly::var(&vars, 0).pow(k));
        }
        assert_eq!(projective_space(4).hodge_poly(), pn);
    }

    #[test]
    fn complemented_points_and_upsets() {
        assert_eq!(complemented_f1_points(&affine_space(3)).len(), 1);
        assert_eq!(complemented_f1_points(&projective_space(2)).len(), 3);
        assert_eq!(complemented_f1_points(&p1xp1()).len(), 4);
        // P^1 fan: 5 up-sets including the empty one and the full fan
        let ups = complemented_closed_subspaces(&projective_space(1), 1 << 20).unwrap();
        assert_eq!(ups.len(), 5);
        assert!(ups[0].is_empty());
        assert_eq!(ups.last().unwrap().cones.len(), 3);
        // A^1 fan: 3 up-sets
        assert_eq!(
            complemented_closed_subspaces(&affine_space(1), 1 << 20)
                .unwrap()
                .len(),
            3
        );
        // P^2 face poset has 19 up-sets (the count is the number of
        // antichains of the 7-element poset)
        assert_eq!(
            complemented_closed_subspaces(&projective_space(2), 1 << 20)
                .unwrap()
                .len(),
            19
        );
        assert_eq!(
            complemented_closed_subspaces(&p1xp1(), 1 << 20).unwrap().len(),
            48
        );
    }

    #[test]
    fn poset_budget_enforced() {
        assert!(matches!(
            complemented_closed_subspaces(&projective_space(3), 100),
            Err(Error::PosetTooLarge { .. })
        ));
    }

    #[test]
    fn singular_fan_counts_still_agree() {
        // simplicial but singular cone <(1,0),(1,2)>: the orbit formula is
        // still the F_q count; only the Hodge reading is withheld
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 2]],
            vec![vec![0], vec![1], vec![0, 1]],
        )
        .unwrap();
        assert!(!f.is_smooth());
        for q in [2u64, 3, 4, 5] {
            assert_eq!(f.count_fq(q).unwrap(), f.count_fq_bruteforce(q, 1 << 20).unwrap());
        }
    }

    #[test]
    fn brute_force_budget_enforced() {
        assert!(matches!(
            projective_space(3).count_fq_bruteforce(5, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn point_counts_match_brute_force() {
        let budget = 10_000_000;
        for (fan, name) in [
            (affine_space(1), "A1"),
            (affine_space(2), "A2"),
            (projective_space(1), "P1"),
            (projective_space(2), "P2"),
            (projective_space(3), "P3"),
            (p1xp1(), "P1xP1"),
            (torus(2), "Gm^2"),
        ] {
            for q in [2u64, 3, 4, 5] {
                let orbit = fan.count_fq(q).unwrap();
                let brute = fan.count_fq_bruteforce(q, budget).unwrap();
                assert_eq!(orbit, brute, "{name} over F_{q}");
            }
        }
        // spot values: |P^2(F_2)| = 7, |P^1(F_4)| = 5, |A^3(F_3)| = 27
        assert_eq!(projective_space(2).count_fq(2).unwrap(), 7);
        assert_eq!(projective_space(1).count_fq(4).unwrap(), 5);
        assert_eq!(affine_space(3).count_fq(3).unwrap(), 27);
    }

    #[test]
    fn hodge_at_q_equals_count(){
        for fan in [projective_space(2), projective_space(3), p1xp1(), affine_space(2)] {
            let p = fan.hodge_poly();
            for q in [2u64, 3, 4, 5] {
                let v = p
                    .eval(&crate::scalar::BaseRing::Int, &[crate::scalar::BaseRing::Int.from_i64(q as i64)])
                    .unwrap();
                assert_eq!(v.to_string(), fan.count_fq(q).unwrap().to_string());
            }
        }
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(affine_space(1).count_fq(6).is_err());
    }
}
