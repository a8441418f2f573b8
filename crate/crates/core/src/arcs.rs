//! Arc decompositions on affine toric varieties, dual-cone semigroup
//! generators, the basis-minimizer condition on order vectors, and the
//! threefold computations showing that the geometric and arithmetic jet
//! counts can differ in dimension three.
//!
//! An arc through the torus splits into an order vector `nu` in the interior
//! of the cone and a multiplicative angular component `u` on the dual
//! semigroup: the arc sends a semigroup element `m` to `t^{<m,nu>} u(m)`.
//! The jet of the arc is determined by the values of `u` on a lattice basis
//! chosen inside the minimal generator set whenever that basis minimizes the
//! pairings with `nu` (the basis-minimizer condition, with an exemption for
//! generators lying in a coordinate hyperplane of the basis). In dimension
//! two such a basis always exists; the threefold whose dual cone is spanned
//! by (1,0,0), (0,1,0), (1,1,2) violates the condition at nu = (2,2,-1),
//! and the violation produces 2-jets that lift to arcs only after a field
//! extension.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;
use crate::gf::Gf;
use crate::motivic::LaurentPoly;
use crate::oracle::{stabilized_image_count, MonomialEq};

/// A full-dimensional simplicial pointed cone, stored through the primitive
/// generators of its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeND {
    dim: usize,
    dual_generators: Vec<Vec<i64>>,
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()))
}

/// Determinant of the square matrix with the given columns (dim 2 or 3).
fn det_cols(cols: &[&[i64]]) -> i64 {
    match cols.len() {
        2 => cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0],
        3 => {
            cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1])
                - cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1])
                + cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1])
        }
        _ => unreachable!("cone dimension is 2 or 3"),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ConeND {
    pub fn new(dual_generators: Vec<Vec<i64>>) -> Result<Self, Error> {
        let dim = dual_generators.len();
        if !(dim == 2 || dim == 3) {
            return Err(Error::InvalidCone(format!("dimension {dim} not supported")));
        }
        for g in &dual_generators {
            if g.len() != dim {
                return Err(Error::InvalidCone("generator length mismatch".into()));
            }
            if gcd_all(g) != 1 {
                return Err(Error::InvalidCone(format!("generator {g:?} not primitive")));
            }
        }
        let cols: Vec<&[i64]> = dual_generators.iter().map(|g| g.as_slice()).collect();
        if det_cols(&cols) == 0 {
            return Err(Error::InvalidCone("generators are linearly dependent".into()));
        }
        Ok(Self { dim, dual_generators })
    }

    /// The dual cone of the surface cone spanned by `(1,0)` and `(p,q)`: its
    /// generators are `(0,1)` and `(q,-p)`.
    pub fn surface(p: i64, q: i64) -> Result<Self, Error> {
        Self::new(vec![vec![0, 1], vec![q, -p]])
    }

    /// The threefold whose dual cone is spanned by (1,0,0), (0,1,0), (1,1,2);
    /// the smallest example violating the basis-minimizer condition.
    pub fn threefold_example() -> Self {
        Self::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dual_generators(&self) -> &[Vec<i64>] {
        &self.dual_generators
    }

    /// Numerators of the generator-frame coordinates of `x`, normalized to a
    /// positive common denominator (returned second).
    fn coords_num(&self, x: &[i64]) -> (Vec<i64>, i64) {
        let cols: Vec<&[i64]> = self.dual_generators.iter().map(|g| g.as_slice()).collect();
        let d = det_cols(&cols);
        let sign = d.signum();
        let mut nums = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut repl = cols.clone();
            repl[i] = x;
            nums.push(det_cols(&repl) * sign);
        }
        (nums, d.abs())
    }

    /// Membership of `x` in the dual cone.
    pub fn contains_dual(&self, x: &[i64]) -> bool {
        let (nums, _) = self.coords_num(x);
        nums.iter().all(|&n| n >= 0)
    }

    /// Interiority of an order vector: positive pairing with every dual
    /// generator (hence with every nonzero dual semigroup element).
    pub fn is_interior(&self, nu: &[i64]) -> bool {
        nu.len() == self.dim && self.dual_generators.iter().all(|g| dot(g, nu) >= 1)
    }
}

/// The unique minimal generating set of the dual semigroup, sorted
/// lexicographically. Computed by collecting the lattice points of the
/// fundamental parallelepiped of the dual generators and discarding every
/// candidate that splits as a sum of two nonzero semigroup elements.
pub fn hilbert_basis(cone: &ConeND) -> Vec<Vec<i64>> {
    let dim = cone.dim;
    let gens = &cone.dual_generators;
    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for j in 0..dim {
        for g in gens {
            lo[j] += g[j].min(0);
            hi[j] += g[j].max(0);
        }
    }
    let mut candidates: BTreeSet<Vec<i64>> = gens.iter().cloned().collect();
    let mut x = lo.clone();
    loop {
        if x.iter().any(|&c| c != 0) {
            let (nums, d) = cone.coords_num(&x);
            if nums.iter().all(|&n| (0..d).contains(&n)) {
                candidates.insert(x.clone());
            }
        }
        // Odometer over the box.
        let mut j = 0;
        loop {
            if j == dim {
                let list: Vec<Vec<i64>> = candidates.iter().cloned().collect();
                return list
                    .iter()
                    .filter(|x| {
                        !list.iter().any(|y| {
                            let diff: Vec<i64> =
                                x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                            diff.iter().any(|&c| c != 0) && cone.contains_dual(&diff)
                        })
                    })
                    .cloned()
                    .collect();
            }
            x[j] += 1;
            if x[j] <= hi[j] {
                break;
            }
            x[j] = lo[j];
            j += 1;
        }
    }
}

/// All `dim`-subsets of `gens` forming a lattice basis (determinant +-1).
fn unimodular_subsets(gens: &[Vec<i64>], dim: usize) -> Vec<Vec<usize>> {
    let n = gens.len();
    let mut out = Vec::new();
    let mut push = |idx: Vec<usize>| {
        let cols: Vec<&[i64]> = idx.iter().map(|&i| gens[i].as_slice()).collect();
        if det_cols(&cols).abs() == 1 {
            out.push(idx);
        }
    };
    if dim == 2 {
        for i in 0..n {
            for j in i + 1..n {
                push(vec![i, j]);
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    push(vec![i, j, k]);
                }
            }
        }
    }
    out
}

/// Integer coordinates of `x` in the lattice basis given by `idx` into
/// `gens` (which must have determinant +-1).
fn basis_coords(gens: &[Vec<i64>], idx: &[usize], x: &[i64]) -> Vec<i64> {
    let cols: Vec<&[i64]> = idx.iter().map(|&i| gens[i].as_slice()).collect();
    let d = det_cols(&cols);
    let mut out = Vec::with_capacity(idx.len());
    for i in 0..idx.len() {
        let mut repl = cols.clone();
        repl[i] = x;
        out.push(det_cols(&repl) * d.signum());
    }
    out
}

/// Outcome of the basis-minimizer check at one order vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarCheck {
    /// A lattice basis inside the minimal generator set whose pairings are
    /// minimal against every other generator outside its coordinate
    /// hyperplanes.
    Witness(Vec<Vec<i64>>),
    /// No unimodular subset of the generators qualifies; the reported
    /// generators achieve the minimal pairing.
    Violation { minimizers: Vec<Vec<i64>> },
}

fn star_check_inner(
    gens: &[Vec<i64>],
    subsets: &[Vec<usize>],
    dim: usize,
    nu: &[i64],
) -> StarCheck {
    let pairings: Vec<i64> = gens.iter().map(|g| dot(g, nu)).collect();
    for idx in subsets {
        let ok = gens.iter().enumerate().all(|(m, g)| {
            if idx.contains(&m) {
                return true;
            }
            let lambda = basis_coords(gens, idx, g);
            (0..dim).all(|i| lambda[i] == 0 || pairings[m] >= pairings[idx[i]])
        });
        if ok {
            return StarCheck::Witness(idx.iter().map(|&i| gens[i].clone()).collect());
        }
    }
    let min = *pairings.iter().min().unwrap();
    StarCheck::Violation {
        minimizers: gens
            .iter()
            .zip(&pairings)
            .filter(|(_, &p)| p == min)
            .map(|(g, _)| g.clone())
            .collect(),
    }
}

/// Searches the minimal generator set for a lattice basis minimizing the
/// pairings with `nu` (outside coordinate hyperplanes); reports the
/// minimizing generators when none exists.
pub fn check_star(cone: &ConeND, nu: &[i64]) -> Result<StarCheck, Error> {
    if !cone.is_interior(nu) {
        return Err(Error::NotInterior);
    }
    let gens = hilbert_basis(cone);
    let subsets = unimodular_subsets(&gens, cone.dim);
    Ok(star_check_inner(&gens, &subsets, cone.dim, nu))
}

/// All interior order vectors with coordinates bounded by `bound` that
/// violate the basis-minimizer condition.
pub fn star_scan(cone: &ConeND, bound: i64) -> Vec<Vec<i64>> {
    assert!(bound >= 1);
    let gens = hilbert_basis(cone);
    let subsets = unimodular_subsets(&gens, cone.dim);
    let dim = cone.dim;
    let side = (2 * bound + 1) as u64;
    let total = side.pow(dim as u32);
    let nu_at = |mut i: u64| -> Vec<i64> {
        let mut nu = Vec::with_capacity(dim);
        for _ in 0..dim {
            nu.push((i % side) as i64 - bound);
            i /= side;
        }
        nu
    };
    let violates = |i: u64| -> Option<Vec<i64>> {
        let nu = nu_at(i);
        if !cone.is_interior(&nu) {
            return None;
        }
        match star_check_inner(&gens, &subsets, dim, &nu) {
            StarCheck::Violation { .. } => Some(nu),
            StarCheck::Witness(_) => None,
        }
    };
    #[cfg(feature = "parallel")]
    let mut out: Vec<Vec<i64>> = (0..total).into_par_iter().filter_map(violates).collect();
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<Vec<i64>> = (0..total).filter_map(violates).collect();
    out.sort();
    out
}

/// An arc through the torus, split into its order vector and the truncated
/// unit angular series on the semigroup generators (constant terms nonzero),
/// stored in the order of [`hilbert_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDecomposition {
    pub nu: Vec<i64>,
    pub u: Vec<Vec<u8>>,
}

fn series_mul(gf: &Gf, a: &[u8], b: &[u8], len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for (i, &x) in a.iter().take(len).enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(len - i).enumerate() {
            out[i + j] = gf.add(out[i + j], gf.mul(x, y));
        }
    }
    out
}

impl ArcDecomposition {
    /// Checks interiority of the order vector, unit constant terms, and
    /// multiplicativity of the angular component across every relation
    /// between sums of at most three generators, up to the stored
    /// truncations.
    pub fn validate(&self, cone: &ConeND, gf: &Gf) -> Result<(), Error> {
        if !cone.is_interior(&self.nu) {
            return Err(Error::NotInterior);
        }
        let gens = hilbert_basis(cone);
        if gens.len() != self.u.len() {
            return Err(Error::InvalidCone(format!(
                "{} angular series for {} generators",
                self.u.len(),
                gens.len()
            )));
        }
        if self.u.iter().any(|s| s.first().map_or(true, |&c| c == 0)) {
            return Err(Error::InvalidCone("angular series must be units".into()));
        }
        // Group multisets of generator indices (size <= 3) by their sums and
        // compare the angular products within each group.
        let mut groups: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
        let n = gens.len();
        let mut record = |idx: Vec<usize>| {
            let mut sum = vec![0i64; cone.dim];
            for &i in &idx {
                for (s, c) in sum.iter_mut().zip(&gens[i]) {
                    *s += c;
                }
            }
            groups.entry(sum).or_default().push(idx);
        };
        for i in 0..n {
            record(vec![i]);
            for j in i..n {
                record(vec![i, j]);
                for k in j..n {
                    record(vec![i, j, k]);
                }
            }
        }
        for members in groups.values() {
            if members.len() < 2 {
                continue;
            }
            let product = |idx: &[usize], len: usize| -> Vec<u8> {
                idx.iter().fold(vec![1u8], |acc, &i| {
                    series_mul(gf, &acc, &self.u[i], len)
                })
            };
            let len = members
                .iter()
                .map(|idx| idx.iter().map(|&i| self.u[i].len()).min().unwrap())
                .min()
                .unwrap();
            let reference = product(&members[0], len);
            for other in &members[1..] {
                if product(other, len) != reference {
                    return Err(Error::InvalidCone(format!(
                        "angular component not multiplicative on {members:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The jet of the arc at order `n`: for each semigroup generator, the
/// coefficient vector of `t^{<m,nu>} u(m)` modulo `t^{n+1}`.
pub fn jet_from_arc(
    cone: &ConeND,
    decomp: &ArcDecomposition,
    n: usize,
) -> Result<Vec<Vec<u8>>, Error> {
    let gens = hilbert_basis(cone);
    assert_eq!(gens.len(), decomp.u.len(), "angular data does not match generators");
    let mut out = Vec::with_capacity(gens.len());
    for (g, u) in gens.iter().zip(&decomp.u) {
        let p = dot(g, &decomp.nu);
        let mut coords = vec![0u8; n + 1];
        if p as usize <= n {
            let needed = n + 1 - p as usize;
            if u.len() < needed {
                return Err(Error::Truncation(n));
            }
            coords[p as usize..].copy_from_slice(&u[..needed]);
        }
        out.push(coords);
    }
    Ok(out)
}

/// Capped pairing profiles realized by interior order vectors in the box
/// `|nu_i| <= bound`, each pairing capped at `cap`.
fn profile_set(cone: &ConeND, gens: &[Vec<i64>], cap: i64, bound: i64) -> BTreeSet<Vec<i64>> {
    let dim = cone.dim;
    let mut out = BTreeSet::new();
    let mut nu = vec![-bound; dim];
    loop {
        if cone.is_interior(&nu) {
            out.insert(gens.iter().map(|g| dot(g, &nu).min(cap)).collect());
        }
        let mut j = 0;
        loop {
            if j == dim {
                return out;
            }
            nu[j] += 1;
            if nu[j] <= bound {
                break;
            }
            nu[j] = -bound;
            j += 1;
        }
    }
}

/// The class of the image of the order-`s` truncation map on arcs with
/// origin at the distinguished point of the cone's toric variety.
///
/// Arcs are stratified by the capped pairing profile of their order vector.
/// Within a stratum, the jet coordinate of a lattice-basis generator at
/// position `j` is a free angular coefficient (`j = pairing`: any unit;
/// higher: anything), while a coordinate of a remaining generator `m` at
/// offset `k` is either determined by the visible basis coordinates (when
/// every basis series it depends on is visible through order `k`) or free
/// (when a hidden basis coefficient feeds it through a nonzero exponent in
/// the expression of `m` in the basis, making the value range over the full
/// line, or the full punctured line at `k = 0`).
pub fn local_jet_class(cone: &ConeND, s: usize) -> LaurentPoly {
    let gens = hilbert_basis(cone);
    let basis = unimodular_subsets(&gens, cone.dim)
        .into_iter()
        .next()
        .expect("no lattice basis among the semigroup generators");
    let extras: Vec<(usize, Vec<i64>)> = (0..gens.len())
        .filter(|m| !basis.contains(m))
        .map(|m| (m, basis_coords(&gens, &basis, &gens[m])))
        .collect();
    let cap = s as i64 + 1;
    let profiles = profile_set(cone, &gens, cap, 12);
    assert_eq!(
        profiles,
        profile_set(cone, &gens, cap, 16),
        "profile set not stable under box enlargement"
    );
    let lm1 = LaurentPoly::monomial(1, 1).sub(&LaurentPoly::one());
    let mut total = LaurentPoly::zero();
    for profile in &profiles {
        let mut cls = LaurentPoly::one();
        for &i in &basis {
            let p = profile[i];
            if p <= s as i64 {
                cls = cls.mul(&lm1).mul(&LaurentPoly::monomial(s as i64 - p, 1));
            }
        }
        let mut free_extras = 0usize;
        for (m, lambda) in &extras {
            let p = profile[*m];
            if p > s as i64 {
                continue;
            }
            let mut any_free = false;
            for k in 0..=(s as i64 - p) {
                let hidden = basis
                    .iter()
                    .enumerate()
                    .any(|(i, &bi)| lambda[i] != 0 && profile[bi] > s as i64 - k);
                if hidden {
                    any_free = true;
                    cls = if k == 0 {
                        cls.mul(&lm1)
                    } else {
                        cls.mul(&LaurentPoly::monomial(1, 1))
                    };
                }
            }
            if any_free {
                free_extras += 1;
            }
        }
        assert!(
            free_extras <= 1,
            "correlated free coordinates across several non-basis generators"
        );
        total = total.add(&cls);
    }
    total
}

/// Defining equation of the example threefold in the coordinates of its four
/// semigroup generators (sorted): `x0 x1 x3 = x2^2`.
pub fn threefold_equations() -> (Vec<MonomialEq>, usize) {
    (
        vec![MonomialEq {
            lhs: vec![(0, 1), (1, 1), (3, 1)],
            rhs: vec![(2, 2)],
        }],
        4,
    )
}

/// The class of the image of the 2-jet truncation map on arcs with origin at
/// the distinguished point of the example threefold.
pub fn counterexample_local_class() -> LaurentPoly {
    local_jet_class(&ConeND::threefold_example(), 2)
}

/// The class of the global 2-jet image of the example threefold:
/// `L^9 - L^6 + 3L^5 - 6L^4 + 10L^3 - 9L^2 + 3L`.
///
/// Jets based away from the distinguished point contribute `(L^3 - 1) L^6`:
/// the threefold is the hypersurface `x0 x1 x3 = x2^2` with class `L^3`, its
/// non-distinguished points fiber with class `L^6` (directly at smooth
/// points; along the two-dimensional-orbit closures, which are transversal
/// double-point curves, the local surface image class `L^4` times the curve
/// jet factor `L^2` gives the same `L^6`). The stratification at the
/// distinguished point adds [`counterexample_local_class`].
pub fn counterexample_class() -> LaurentPoly {
    let away = LaurentPoly::monomial(3, 1)
        .sub(&LaurentPoly::one())
        .mul(&LaurentPoly::monomial(6, 1));
    away.add(&counterexample_local_class())
}

/// Geometric-minus-arithmetic gap at the distinguished point: the local
/// 2-jet image class evaluated at `L = q`, minus the brute-force count of
/// jets over `F_q` that lift to arcs over `F_q` (image counts of the
/// truncation map, stabilized over the source order up to `m_max`).
pub fn counterexample_discrepancy(field: u64, m_max: usize) -> Result<i64, Error> {
    let (eqs, vars) = threefold_equations();
    let (image, _) = stabilized_image_count(&eqs, vars, 2, field, m_max)?;
    let class = counterexample_local_class()
        .eval(&BigRational::from(BigInt::from(field)))?
        .to_integer();
    let class: i64 = class.try_into().map_err(|_| {
        Error::Recovery("class value out of range".into())
    })?;
    Ok(class - image as i64)
}

/// Brute-force count of triples in `(F_q^x)^3` whose product is a square;
/// equals `(q-1)^3 / 2` for odd `q`.
pub fn square_product_count(q: u64) -> Result<u64, Error> {
    let gf = Gf::new(q)?;
    if gf.characteristic() == 2 {
        return Err(Error::BadFieldSize(q));
    }
    let n = gf.q() as u8;
    let mut count = 0u64;
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if gf.is_square(gf.mul(gf.mul(a, b), c)) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_basis_examples() {
        // The surface cone of (1,2) has t + 2 = 3 generators.
        let cone = ConeND::surface(1, 2).unwrap();
        assert_eq!(
            hilbert_basis(&cone),
            vec![vec![0, 1], vec![1, 0], vec![2, -1]]
        );
        // The example threefold: three of the four generators form a basis.
        let cone = ConeND::threefold_example();
        assert_eq!(
            hilbert_basis(&cone),
            vec![
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![1, 1, 1],
                vec![1, 1, 2]
            ]
        );
        // A smooth cone is generated by its own basis.
        let cone = ConeND::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            hilbert_basis(&cone),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn hilbert_basis_sizes_match_surface_data() {
        use crate::lattice::{resolution_fan, SurfaceSingularity};
        for q in 2..=30i64 {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let res = resolution_fan(SurfaceSingularity::new(p, q).unwrap()).unwrap();
                let basis = hilbert_basis(&ConeND::surface(p, q).unwrap());
                assert_eq!(basis.len(), res.t() + 2, "({p},{q})");
            }
        }
    }

    #[test]
    fn hilbert_basis_is_minimal() {
        for cone in [
            ConeND::surface(3, 7).unwrap(),
            ConeND::surface(7, 30).unwrap(),
            ConeND::threefold_example(),
        ] {
            let basis = hilbert_basis(&cone);
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let sum: Vec<i64> =
                            y.iter().zip(z).map(|(a, b)| a + b).collect();
                        assert_ne!(*x, sum, "{x:?} splits as {y:?} + {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn star_holds_on_surfaces() {
        let cone = ConeND::surface(3, 7).unwrap();
        assert!(star_scan(&cone, 8).is_empty());
        assert!(matches!(
            check_star(&cone, &[1, 1]),
            Ok(StarCheck::Witness(_))
        ));
    }

    #[test]
    fn star_fails_on_the_example_threefold() {
        let cone = ConeND::threefold_example();
        let result = check_star(&cone, &[2, 2, -1]).unwrap();
        match result {
            StarCheck::Violation { minimizers } => {
                // The minimizers are exactly the dual generators, which do
                // not form a basis.
                assert_eq!(
                    minimizers,
                    vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 2]]
                );
            }
            StarCheck::Witness(w) => panic!("unexpected witness {w:?}"),
        }
        let violations = star_scan(&cone, 5);
        assert!(violations.contains(&vec![2, 2, -1]));
        // A smooth cone never violates the condition.
        let smooth =
            ConeND::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(star_scan(&smooth, 4).is_empty());
    }

    #[test]
    fn interiority_is_enforced() {
        let cone = ConeND::threefold_example();
        assert!(matches!(
            check_star(&cone, &[1, 1, -1]),
            Err(Error::NotInterior)
        ));
    }

    #[test]
    fn jet_example_over_f5() {
        // nu = (2,2,-1) with u = 1 on the first two generators and u = i
        // (a square root of -1 in F_5) on the basis generator (1,1,1) forces
        // u(1,1,2) = i^2 = -1; the 2-jet sends (1,0,0) and (0,1,0) to t^2,
        // (1,1,1) to 0 and (1,1,2) to -t^2.
        let cone = ConeND::threefold_example();
        let gf = Gf::new(5).unwrap();
        let decomp = ArcDecomposition {
            nu: vec![2, 2, -1],
            u: vec![vec![1], vec![1], vec![2], vec![4]],
        };
        decomp.validate(&cone, &gf).unwrap();
        let jet = jet_from_arc(&cone, &decomp, 2).unwrap();
        assert_eq!(
            jet,
            vec![
                vec![0, 0, 1],
                vec![0, 0, 1],
                vec![0, 0, 0],
                vec![0, 0, 4]
            ]
        );
        // An inconsistent angular value is rejected: u(1,1,2) = 1 breaks
        // u(mu1) u(mu2) u(mu) = u(mu3)^2.
        let bad = ArcDecomposition {
            nu: vec![2, 2, -1],
            u: vec![vec![1], vec![1], vec![2], vec![1]],
        };
        assert!(bad.validate(&cone, &gf).is_err());
    }

    #[test]
    fn jet_multiplicativity_and_truncation() {
        let cone = ConeND::surface(1, 2).unwrap();
        let gf = Gf::new(3).unwrap();
        // Generators (0,1), (1,0), (2,-1) with (0,1) + (2,-1) = 2 (1,0):
        // (1+t)(1+t^2) = (2+t)^2 over F_3, through t^2.
        let decomp = ArcDecomposition {
            nu: vec![1, 1],
            u: vec![vec![1, 1, 0], vec![2, 1, 0], vec![1, 0, 1]],
        };
        decomp.validate(&cone, &gf).unwrap();
        let n = 3;
        let jet = jet_from_arc(&cone, &decomp, n).unwrap();
        // psi(0,1) psi(2,-1) = psi(1,0)^2 through t^n.
        let lhs = series_mul(&gf, &jet[0], &jet[2], n + 1);
        let rhs = series_mul(&gf, &jet[1], &jet[1], n + 1);
        assert_eq!(lhs, rhs);
        // Pairings all above n give the zero jet.
        let zero = jet_from_arc(&cone, &decomp, 0).unwrap();
        assert!(zero.iter().all(|c| c.iter().all(|&x| x == 0)));
        // Insufficient truncation is an error.
        let short = ArcDecomposition {
            nu: vec![1, 1],
            u: vec![vec![1], vec![2], vec![1]],
        };
        assert!(matches!(
            jet_from_arc(&cone, &short, 3),
            Err(Error::Truncation(_))
        ));
    }

    #[test]
    fn double_point_local_image_class() {
        // At the origin of the double point, the 2-jet image class is L^4
        // (one full power of L below the plain jet-scheme class L^5).
        assert_eq!(
            local_jet_class(&ConeND::surface(1, 2).unwrap(), 2),
            LaurentPoly::monomial(4, 1)
        );
    }

    #[test]
    fn counterexample_class_matches() {
        let expect = LaurentPoly::from_terms(
            [(9, 1), (6, -1), (5, 3), (4, -6), (3, 10), (2, -9), (1, 3)]
                .map(|(e, c)| (e, BigInt::from(c))),
        );
        let class = counterexample_class();
        assert_eq!(class, expect);
        assert_eq!(class.max_exp(), Some(9));
        assert_eq!(
            class.eval(&BigRational::from(BigInt::from(1))).unwrap(),
            BigRational::from(BigInt::from(1))
        );
    }

    #[test]
    fn square_product_counts() {
        assert_eq!(square_product_count(3).unwrap(), 4);
        assert_eq!(square_product_count(5).unwrap(), 32);
        assert_eq!(square_product_count(7).unwrap(), 108);
        assert_eq!(square_product_count(9).unwrap(), 256);
        assert!(square_product_count(4).is_err());
    }
}
