//! Polyhedral cones in `N_Q` and the dual weight monoids `Γ(C) ⊂ M`.
//!
//! A cone is stored in both descriptions. The extremal rays and facet normals
//! are computed eagerly by the double description method, run on the dual
//! cone inside the linear span of the generators, so cones that are not
//! full-dimensional (a single ray, the zero cone) are handled the same way as
//! full-dimensional ones.
//!
//! Hilbert bases are computed by a pulling triangulation of the pointed part
//! of the dual cone followed by enumeration of the lattice points in the
//! fundamental parallelepiped of every simplicial piece, then minimalization.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector, Sublattice};
use crate::linalg::{self, IntMatrix, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    generators: Vec<DualVector>,
    extremal_rays: Vec<DualVector>,
    facet_normals: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
    span: SpanData,
}

/// The cone written inside its own linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SpanData {
    /// Basis rows of `span(C) ∩ N`.
    basis: IntMatrix,
    /// Nonzero generators in that basis.
    coords: IntMatrix,
    /// Extreme rays of `{y : ⟨a, y⟩ ≥ 0 for all coords a}`, i.e. facet normals in span coordinates.
    dual_rays: IntMatrix,
}

impl SpanData {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn span_data(gens: &IntMatrix, rank: usize) -> SpanData {
    let basis = linalg::saturated_span(gens, rank);
    let k = basis.len();
    let coords: IntMatrix = gens
        .iter()
        .map(|g| linalg::coords_in_row_lattice(&basis, rank, g).expect("generator lies in its saturated span"))
        .collect();
    let dual_rays = if k == 0 { Vec::new() } else { extreme_rays(&coords, k) };
    SpanData { basis, coords, dual_rays }
}

/// Extreme rays of the pointed cone `{y ∈ Q^k : A y ≥ 0}`; `A` must have rank `k`.
///
/// Incremental double description with the combinatorial adjacency test.
pub(crate) fn extreme_rays(ineqs: &IntMatrix, k: usize) -> IntMatrix {
    // Greedy choice of k independent rows for the initial simplicial cone.
    let mut basis_rows: Vec<usize> = Vec::new();
    for (i, _) in ineqs.iter().enumerate() {
        let mut trial: IntMatrix = basis_rows.iter().map(|&j| ineqs[j].clone()).collect();
        trial.push(ineqs[i].clone());
        if linalg::rank(&trial, k) == trial.len() {
            basis_rows.push(i);
            if basis_rows.len() == k {
                break;
            }
        }
    }
    assert_eq!(basis_rows.len(), k, "inequality system must have full column rank");
    let square: IntMatrix = basis_rows.iter().map(|&j| ineqs[j].clone()).collect();
    let inv = linalg::inverse_rational(&square).expect("independent rows");

    struct Ray {
        v: Vec<Integer>,
        zeros: BTreeSet<usize>,
    }
    let mut rays: Vec<Ray> = (0..k)
        .map(|c| {
            let col: Vec<Rational> = (0..k).map(|r| inv[r][c].clone()).collect();
            let zeros = basis_rows.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &j)| j).collect();
            Ray { v: linalg::primitive_from_rational(&col), zeros }
        })
        .collect();
    let mut processed: BTreeSet<usize> = basis_rows.iter().copied().collect();

    for (idx, a) in ineqs.iter().enumerate() {
        if processed.contains(&idx) {
            continue;
        }
        let values: Vec<Integer> = rays.iter().map(|r| linalg::dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&values) {
            if val.is_positive() {
                next.push(Ray { v: r.v.clone(), zeros: r.zeros.clone() });
            } else if val.is_zero() {
                let mut zeros = r.zeros.clone();
                zeros.insert(idx);
                next.push(Ray { v: r.v.clone(), zeros });
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if !values[pi].is_positive() {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if !values[ni].is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = p.zeros.intersection(&n.zeros).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(oi, o)| oi == pi || oi == ni || !common.is_subset(&o.zeros));
                if !adjacent {
                    continue;
                }
                let combo: Vec<Integer> = n
                    .v
                    .iter()
                    .zip(&p.v)
                    .map(|(x, y)| &values[pi] * x - &values[ni] * y)
                    .collect();
                let mut zeros = common;
                zeros.insert(idx);
                next.push(Ray { v: linalg::primitive_vec(&combo), zeros });
            }
        }
        rays = next;
        processed.insert(idx);
    }
    let out: BTreeSet<Vec<Integer>> = rays.into_iter().map(|r| r.v).collect();
    out.into_iter().collect()
}

/// The functional on `N` lying in `span(C)` that restricts to `y` on the span basis.
fn lift_normal(basis: &IntMatrix, rank: usize, y: &[Integer]) -> Vec<Integer> {
    let gram: IntMatrix = basis.iter().map(|r| basis.iter().map(|s| linalg::dot(r, s)).collect()).collect();
    let inv = linalg::inverse_rational(&gram).expect("basis rows are independent");
    let k = basis.len();
    let z: Vec<Rational> = (0..k)
        .map(|i| (0..k).map(|j| &inv[i][j] * Rational::from_integer(y[j].clone())).sum())
        .collect();
    let lam: Vec<Rational> = (0..rank)
        .map(|c| (0..k).map(|i| &z[i] * Rational::from_integer(basis[i][c].clone())).sum())
        .collect();
    linalg::primitive_from_rational(&lam)
}

impl Cone {
    /// Builds the cone generated by `generators` in `N ≅ Z^rank`. Zero generators are dropped.
    pub fn build(rank: usize, generators: Vec<DualVector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
            return Err(Error::Dimension { expected: rank, found: g.rank() });
        }
        let nonzero: IntMatrix = generators.iter().filter(|g| !g.is_zero()).map(|g| g.coords().to_vec()).collect();
        let span = span_data(&nonzero, rank);
        let k = span.dim();
        if linalg::rank(&span.dual_rays, k) < k {
            // The lineality space of the cone is the annihilator of its dual.
            let lin = linalg::kernel(&span.dual_rays, k);
            let x = linalg::vec_mat(&lin[0], &span.basis, rank);
            let witness = linalg::primitive_vec(&x).iter().map(ToString::to_string).collect();
            return Err(Error::NotStrictlyConvex { witness });
        }
        let facets: BTreeSet<Vec<Integer>> =
            span.dual_rays.iter().map(|y| lift_normal(&span.basis, rank, y)).collect();
        let mut rays: BTreeSet<Vec<Integer>> = BTreeSet::new();
        for (a, g) in span.coords.iter().zip(&nonzero) {
            let tight: IntMatrix = span.dual_rays.iter().filter(|y| linalg::dot(a, y).is_zero()).cloned().collect();
            if linalg::rank(&tight, k) + 1 == k {
                rays.insert(linalg::primitive_vec(g));
            }
        }
        let equations = linalg::kernel(&nonzero, rank);
        Ok(Self {
            rank,
            generators,
            extremal_rays: rays.into_iter().map(DualVector::new).collect(),
            facet_normals: facets.into_iter().map(LatticeVector::weight).collect(),
            equations: equations.into_iter().map(LatticeVector::weight).collect(),
            span,
        })
    }

    pub fn from_i64(rank: usize, generators: &[&[i64]]) -> Result<Self> {
        Self::build(rank, generators.iter().map(|g| DualVector::from_i64(g)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn generators(&self) -> &[DualVector] {
        &self.generators
    }

    /// Primitive generators of the one-dimensional faces, in lexicographic order.
    pub fn extremal_rays(&self) -> &[DualVector] {
        &self.extremal_rays
    }

    /// Inner facet normals, primitive and lying in the span of the cone.
    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    /// Basis of the functionals vanishing on the span of the cone.
    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    /// Membership through the inequality description.
    pub fn contains(&self, x: &DualVector) -> bool {
        x.rank() == self.rank
            && self.equations.iter().all(|e| linalg::dot(e.coords(), x.coords()).is_zero())
            && self.facet_normals.iter().all(|n| !linalg::dot(n.coords(), x.coords()).is_negative())
    }

    /// Whether `lam` pairs nonnegatively with the whole cone.
    pub fn in_dual(&self, lam: &LatticeVector) -> bool {
        lam.rank() == self.rank
            && self.extremal_rays.iter().all(|r| !linalg::dot(r.coords(), lam.coords()).is_negative())
    }

    /// Whether `v` is a nonnegative multiple of `rho`.
    pub fn ray_membership(&self, v: &DualVector, rho: &DualVector) -> Result<bool> {
        for w in [v, rho] {
            if w.rank() != self.rank {
                return Err(Error::Dimension { expected: self.rank, found: w.rank() });
            }
        }
        ray_membership(v, rho)
    }

    /// Hilbert basis of `Γ(C)` inside `M = Z^rank`.
    pub fn dual_monoid(&self) -> WeightMonoid {
        let gens: IntMatrix = self.span.coords.iter().map(|a| linalg::vec_mat(a, &self.span.basis, self.rank)).collect();
        let basis = monoid_basis_with(&self.span, &gens, self.rank);
        WeightMonoid { cone: self.clone(), hilbert_basis: basis.into_iter().map(LatticeVector::weight).collect() }
    }

    /// Hilbert basis of `Γ(C) ∩ L` for a sublattice `L ⊂ M`, returned in `M`-coordinates.
    pub fn dual_monoid_in(&self, lattice: &Sublattice) -> Result<WeightMonoid> {
        if lattice.ambient_rank() != self.rank {
            return Err(Error::Dimension { expected: self.rank, found: lattice.ambient_rank() });
        }
        let b = lattice.basis_rows();
        let m = lattice.rank();
        // λ = y·B, so ⟨g, λ⟩ = ⟨B g, y⟩.
        let gens: IntMatrix = self
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| b.iter().map(|row| linalg::dot(row, g.coords())).collect())
            .collect();
        let span = span_data(&gens, m);
        let basis = monoid_basis_with(&span, &gens, m);
        let hilbert_basis: BTreeSet<Vec<Integer>> = basis.iter().map(|y| linalg::vec_mat(y, b, self.rank)).collect();
        Ok(WeightMonoid {
            cone: self.clone(),
            hilbert_basis: hilbert_basis.into_iter().map(LatticeVector::weight).collect(),
        })
    }
}

/// Whether `v` lies on the ray `Q_{≥0} rho`.
pub fn ray_membership(v: &DualVector, rho: &DualVector) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector("v"));
    }
    if rho.is_zero() {
        return Err(Error::ZeroVector("rho"));
    }
    if v.rank() != rho.rank() {
        return Err(Error::Dimension { expected: rho.rank(), found: v.rank() });
    }
    Ok(linalg::primitive_vec(v.coords()) == linalg::primitive_vec(rho.coords()))
}

pub fn build_cone(rank: usize, generators: Vec<DualVector>) -> Result<Cone> {
    Cone::build(rank, generators)
}

pub fn extremal_rays(cone: &Cone) -> Vec<DualVector> {
    cone.extremal_rays.clone()
}

pub fn dual_monoid(cone: &Cone, lattice: Option<&Sublattice>) -> Result<WeightMonoid> {
    match lattice {
        Some(l) => cone.dual_monoid_in(l),
        None => Ok(cone.dual_monoid()),
    }
}

/// A cone together with the Hilbert basis of its dual monoid.
///
/// When the cone is not full-dimensional the monoid contains the lattice
/// `C^⊥ ∩ M`; its Hermite basis and the negatives of that basis are listed,
/// and every other element is the representative of smallest size in its
/// class modulo `C^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMonoid {
    pub cone: Cone,
    pub hilbert_basis: Vec<LatticeVector>,
}

impl WeightMonoid {
    pub fn contains(&self, lam: &LatticeVector) -> bool {
        self.cone.in_dual(lam)
    }
}

/// Hilbert basis of `{λ ∈ Z^n : ⟨g, λ⟩ ≥ 0 for all rows g}`.
fn monoid_basis_with(span: &SpanData, gens: &IntMatrix, n: usize) -> Vec<Vec<Integer>> {
    let lineality = linalg::kernel(gens, n);
    let k = span.dim();
    let pointed = if k == 0 { Vec::new() } else { hilbert_basis_pointed(&span.dual_rays, &span.coords, k) };

    // Right inverse of the span basis: W·R = I.
    let snf = linalg::smith_normal_form(&span.basis, n);
    let mut out: BTreeSet<Vec<Integer>> = BTreeSet::new();
    for y in &pointed {
        // U·W·V = [I 0], so λ0 = V·[I 0]ᵀ·U·y satisfies W·λ0 = y.
        let uy: Vec<Integer> = snf.u.iter().map(|row| linalg::dot(row, y)).collect();
        let lam0: Vec<Integer> = (0..n).map(|c| (0..k).map(|i| &uy[i] * &snf.v[c][i]).sum()).collect();
        out.insert(reduce_mod_lattice(&lam0, &lineality));
    }
    for l in &lineality {
        out.insert(l.clone());
        out.insert(l.iter().map(|x| -x).collect());
    }
    out.into_iter().collect()
}

/// The representative of `v + L` of smallest (sup, l1, lex) size near the orthogonal projection.
fn reduce_mod_lattice(v: &[Integer], lattice: &IntMatrix) -> Vec<Integer> {
    if lattice.is_empty() {
        return v.to_vec();
    }
    let s = lattice.len();
    let gram: IntMatrix = lattice.iter().map(|r| lattice.iter().map(|q| linalg::dot(r, q)).collect()).collect();
    let inv = linalg::inverse_rational(&gram).expect("independent lattice basis");
    let rhs: Vec<Integer> = lattice.iter().map(|r| linalg::dot(r, v)).collect();
    let half = Rational::new(Integer::one(), Integer::from(2));
    let base: Vec<Integer> = (0..s)
        .map(|i| {
            let c: Rational = (0..s).map(|j| &inv[i][j] * Rational::from_integer(rhs[j].clone())).sum();
            (-c + &half).floor().to_integer()
        })
        .collect();
    let mut best: Option<Vec<Integer>> = None;
    let mut offsets = vec![-1i64; s];
    loop {
        let coeffs: Vec<Integer> = base.iter().zip(&offsets).map(|(b, o)| b + Integer::from(*o)).collect();
        let shift = linalg::vec_mat(&coeffs, lattice, v.len());
        let cand: Vec<Integer> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let key = |w: &Vec<Integer>| (linalg::sup_norm(w), linalg::l1_norm(w), w.clone());
        if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
            best = Some(cand);
        }
        let mut i = 0;
        while i < s && offsets[i] == 1 {
            offsets[i] = -1;
            i += 1;
        }
        if i == s {
            break;
        }
        offsets[i] += 1;
    }
    best.unwrap()
}

/// Hilbert basis of the pointed cone with extreme rays `rays` and inequalities `ineqs`.
fn hilbert_basis_pointed(rays: &IntMatrix, ineqs: &IntMatrix, k: usize) -> Vec<Vec<Integer>> {
    if rays.is_empty() {
        return Vec::new();
    }
    let mut candidates: BTreeSet<Vec<Integer>> = rays.iter().cloned().collect();
    for simplex in triangulate(rays, k) {
        let gens: IntMatrix = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&gens, k).into_iter().filter(|p| !linalg::is_zero_vec(p)));
    }
    // Values of the inequalities; `x - y` lies in the cone iff `A·x ≥ A·y`.
    // Their sum is a grading positive on the nonzero cone points, so every
    // reducible candidate is reduced by an irreducible one of smaller degree.
    let mut graded: Vec<(Integer, Vec<Integer>, Vec<Integer>)> = candidates
        .into_iter()
        .map(|x| {
            let values: Vec<Integer> = ineqs.iter().map(|a| linalg::dot(a, &x)).collect();
            (values.iter().sum(), values, x)
        })
        .collect();
    graded.sort();
    let mut basis: Vec<(Vec<Integer>, Vec<Integer>)> = Vec::new();
    for (_, values, x) in graded {
        let reducible = basis.iter().any(|(hv, _)| hv.iter().zip(&values).all(|(h, v)| h <= v));
        if !reducible {
            basis.push((values, x));
        }
    }
    let mut out: Vec<Vec<Integer>> = basis.into_iter().map(|(_, x)| x).collect();
    out.sort();
    out
}

/// Pulling triangulation of the pointed cone spanned by the given (extremal, primitive) rays.
fn triangulate(rays: &IntMatrix, k: usize) -> Vec<Vec<usize>> {
    let cone = Cone::build(k, rays.iter().cloned().map(DualVector::new).collect()).expect("pointed cone");
    if rays.len() == cone.dim() {
        return vec![(0..rays.len()).collect()];
    }
    let mut out = Vec::new();
    for normal in cone.facet_normals() {
        if !linalg::dot(normal.coords(), &rays[0]).is_positive() {
            continue;
        }
        let face: Vec<usize> = (0..rays.len()).filter(|&j| linalg::dot(normal.coords(), &rays[j]).is_zero()).collect();
        let face_rays: IntMatrix = face.iter().map(|&j| rays[j].clone()).collect();
        for simplex in triangulate(&face_rays, k) {
            let mut s: Vec<usize> = simplex.into_iter().map(|i| face[i]).collect();
            s.push(0);
            out.push(s);
        }
    }
    out
}

/// Lattice points `Σ t_i r_i`, `t ∈ [0,1)^d`, for linearly independent rows `r_i`.
fn parallelepiped_points(gens: &IntMatrix, n: usize) -> Vec<Vec<Integer>> {
    let lat = linalg::saturated_span(gens, n);
    let d = lat.len();
    let local: IntMatrix = gens
        .iter()
        .map(|g| linalg::coords_in_row_lattice(&lat, n, g).expect("generator in span"))
        .collect();
    let snf = linalg::smith_normal_form(&local, d);
    let vinv = linalg::inverse_unimodular(&snf.v);
    let local_inv = linalg::inverse_rational(&local).expect("independent generators");
    let moduli = snf.diagonal();
    let mut out = Vec::new();
    let mut a = vec![Integer::zero(); d];
    loop {
        let x = linalg::vec_mat(&a, &vinv, d);
        let c: Vec<Rational> = (0..d)
            .map(|j| (0..d).map(|i| Rational::from_integer(x[i].clone()) * &local_inv[i][j]).sum())
            .collect();
        let floors: Vec<Integer> = c.iter().map(|q| q.floor().to_integer()).collect();
        let shift = linalg::vec_mat(&floors, &local, d);
        let p: Vec<Integer> = x.iter().zip(&shift).map(|(u, v)| u - v).collect();
        out.push(linalg::vec_mat(&p, &lat, n));
        let mut i = 0;
        while i < d && &a[i] + 1 >= moduli[i] {
            a[i] = Integer::zero();
            i += 1;
        }
        if i == d {
            break;
        }
        a[i] += 1;
    }
    debug_assert_eq!(
        Integer::from(out.len()),
        linalg::det(&local).abs(),
        "parallelepiped point count equals the index"
    );
    out
}
