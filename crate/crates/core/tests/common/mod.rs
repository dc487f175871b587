//! Independent oracles shared by the integration tests and the acceptance suite.
//!
//! Nothing here calls into the cone engine: memberships are decided by
//! Carathéodory subsets solved in exact `i128` rationals, rays by
//! non-redundancy, and monoids by box scans.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use demazure::linalg::Integer;

pub type Q = Ratio<i128>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn small(v: &[Integer]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small entry")).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    v.iter().map(|x| x / g).collect()
}

/// Solves `Σ c_i s_i = v` for linearly independent `s_i`; `None` if dependent or inconsistent.
fn solve(subset: &[&Vec<i64>], v: &[i64]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = subset.len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = subset.iter().map(|s| Q::from_integer(s[r] as i128)).collect();
            row.push(Q::from_integer(v[r] as i128));
            row
        })
        .collect();
    for col in 0..k {
        let row = col;
        let p = (row..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(row, p);
        let pivot = m[row][col];
        for x in m[row].iter_mut() {
            *x /= pivot;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..=k {
                    let t = m[row][c] * f;
                    m[r][c] -= t;
                }
            }
        }
    }
    if m[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k]).collect())
}

fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, items[i].clone());
            out.push(rest);
        }
    }
    out
}

/// Whether `v` is a nonnegative combination of `gens`.
pub fn in_cone(v: &[i64], gens: &[Vec<i64>]) -> bool {
    if v.iter().all(|x| *x == 0) {
        return true;
    }
    let refs: Vec<&Vec<i64>> = gens.iter().filter(|g| g.iter().any(|x| *x != 0)).collect();
    for size in 1..=refs.len().min(v.len()) {
        for s in subsets(&refs, size) {
            if let Some(c) = solve(&s, v) {
                if c.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

fn same_ray(a: &[i64], b: &[i64]) -> bool {
    primitive(a) == primitive(b)
}

/// Primitive extremal rays of a strictly convex cone, sorted.
pub fn oracle_rays(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let nonzero: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|x| *x != 0)).cloned().collect();
    let mut rays = BTreeSet::new();
    for g in &nonzero {
        let others: Vec<Vec<i64>> = nonzero.iter().filter(|h| !same_ray(h, g)).cloned().collect();
        if !in_cone(g, &others) {
            rays.insert(primitive(g));
        }
    }
    rays.into_iter().collect()
}

/// Whether the cone contains a line: some `−g` lies in the cone.
pub fn has_line(gens: &[Vec<i64>]) -> bool {
    gens.iter().any(|g| g.iter().any(|x| *x != 0) && in_cone(&g.iter().map(|x| -x).collect::<Vec<_>>(), gens))
}

/// The ray `ρ` with `⟨ρ, μ⟩ = −1` and `⟨ρ', μ⟩ ≥ 0` on the other rays, checked pointwise.
pub fn pointwise_root(rays: &[Vec<i64>], mu: &[i64]) -> Option<Vec<i64>> {
    let mut hit = None;
    for r in rays {
        match dot(r, mu) {
            -1 if hit.is_none() => hit = Some(r.clone()),
            v if v < 0 => return None,
            _ => {}
        }
    }
    hit
}

pub fn box_points(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn brute_roots(rays: &[Vec<i64>], rank: usize, bound: i64) -> BTreeSet<(Vec<i64>, Vec<i64>)> {
    box_points(rank, bound)
        .into_iter()
        .filter_map(|mu| pointwise_root(rays, &mu).map(|r| (r, mu)))
        .collect()
}

/// A random strictly convex cone: generators positive on a random functional.
pub fn random_pointed_cone(rng: &mut StdRng, rank: usize, max_gens: usize, range: i64) -> Vec<Vec<i64>> {
    let count = rng.gen_range(1..=max_gens);
    pointed_generators(rng, rank, count, range)
}

/// `count` random vectors, all positive on one random functional.
pub fn pointed_generators(rng: &mut StdRng, rank: usize, count: usize, range: i64) -> Vec<Vec<i64>> {
    let y: Vec<i64> = loop {
        let y: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
        if y.iter().any(|x| *x != 0) {
            break y;
        }
    };
    let mut gens = Vec::new();
    while gens.len() < count {
        let g: Vec<i64> = (0..rank).map(|_| rng.gen_range(-range..=range)).collect();
        if dot(&y, &g) > 0 {
            gens.push(g);
        }
    }
    gens
}

pub fn in_dual(gens: &[Vec<i64>], lam: &[i64]) -> bool {
    gens.iter().all(|g| dot(g, lam) >= 0)
}

/// Strictly convex cones used across the suites: (name, rank, generators).
pub fn cone_catalog() -> Vec<(&'static str, usize, Vec<Vec<i64>>)> {
    vec![
        ("quadrant", 2, vec![vec![1, 0], vec![0, 1]]),
        ("skew", 2, vec![vec![1, 0], vec![1, 2]]),
        ("wide", 2, vec![vec![1, 0], vec![-1, 3]]),
        ("thin", 2, vec![vec![2, -1], vec![-1, 2]]),
        ("redundant", 2, vec![vec![1, 0], vec![2, 1], vec![1, 1], vec![0, 1]]),
        ("ray", 2, vec![vec![0, 1]]),
        ("octant", 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        ("square", 3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]]),
        ("simplex5", 3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 2, 5]]),
        ("wedge", 3, vec![vec![1, 1, 0], vec![1, -1, 0]]),
    ]
}

pub fn is_full_dimensional(rank: usize, gens: &[Vec<i64>]) -> bool {
    for s in subsets(&gens.iter().collect::<Vec<_>>(), rank) {
        let m: Vec<Vec<i64>> = s.iter().map(|g| (*g).clone()).collect();
        if det(&m) != 0 {
            return true;
        }
    }
    false
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Irreducible elements of `Γ ∩ [−b, b]^rank` that lie in the half box, for a full-dimensional cone.
pub fn brute_hilbert_basis(gens: &[Vec<i64>], rank: usize, b: i64) -> BTreeSet<Vec<i64>> {
    let pts: Vec<Vec<i64>> = box_points(rank, b).into_iter().filter(|p| in_dual(gens, p)).collect();
    let set: HashSet<Vec<i64>> = pts.iter().cloned().collect();
    let half = b / 2;
    pts.iter()
        .filter(|x| x.iter().any(|v| *v != 0) && x.iter().all(|v| v.abs() <= half))
        .filter(|x| {
            !pts.iter().any(|y| {
                y.iter().any(|v| *v != 0) && y != *x && {
                    let d: Vec<i64> = x.iter().zip(y).map(|(a, c)| a - c).collect();
                    set.contains(&d)
                }
            })
        })
        .cloned()
        .collect()
}

/// Elements of `Γ ∩ [−b/2, b/2]^rank` not reachable as sums of `basis` inside the box of radius `b`.
pub fn ungenerated(gens: &[Vec<i64>], rank: usize, b: i64, basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut reached: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier = vec![vec![0; rank]];
    reached.insert(vec![0; rank]);
    while let Some(p) = frontier.pop() {
        for h in basis {
            let q: Vec<i64> = p.iter().zip(h).map(|(a, c)| a + c).collect();
            if q.iter().all(|v| v.abs() <= b) && reached.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    box_points(rank, b / 2).into_iter().filter(|p| in_dual(gens, p) && !reached.contains(p)).collect()
}

/// Cartan matrices `c[i][j] = ⟨α_j, α_i^∨⟩`.
pub fn oracle_cartan(name: &str) -> Vec<Vec<i64>> {
    match name {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "B2" => vec![vec![2, -1], vec![-2, 2]],
        "G2" => vec![vec![2, -3], vec![-1, 2]],
        _ => panic!("no oracle Cartan matrix for {name}"),
    }
}

/// All roots as the Weyl orbit of the simple roots, in simple-root coordinates.
pub fn weyl_roots(c: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = c.len();
    let mut roots: BTreeSet<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    loop {
        let mut grown = roots.clone();
        for b in &roots {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| b[j] * c[i][j]).sum();
                let mut r = b.clone();
                r[i] -= pairing;
                grown.insert(r);
            }
        }
        if grown.len() == roots.len() {
            return roots;
        }
        roots = grown;
    }
}

/// Highest weights of the `L`-components of `p_u`, from the connected components of the
/// graph joining `β` and `β + γ` for Levi roots `γ`.
pub fn oracle_omega(c: &[Vec<i64>], levi: &BTreeSet<usize>) -> BTreeSet<Vec<i64>> {
    let roots = weyl_roots(c);
    let positive = |r: &Vec<i64>| r.iter().all(|x| *x >= 0);
    let is_levi = |r: &Vec<i64>| r.iter().enumerate().all(|(i, x)| *x == 0 || levi.contains(&i));
    let pu: Vec<Vec<i64>> = roots.iter().filter(|r| positive(r) && !is_levi(r)).cloned().collect();
    let levi_roots: Vec<Vec<i64>> = roots.iter().filter(|r| is_levi(r)).cloned().collect();
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = BTreeSet::new();
    for start in &pu {
        if seen.contains(start) {
            continue;
        }
        let mut component = vec![start.clone()];
        seen.insert(start.clone());
        let mut i = 0;
        while i < component.len() {
            let b = component[i].clone();
            for g in &levi_roots {
                let s = add(&b, g);
                if roots.contains(&s) && pu.contains(&s) && seen.insert(s.clone()) {
                    component.push(s);
                }
            }
            i += 1;
        }
        let tops: Vec<&Vec<i64>> = component
            .iter()
            .filter(|b| levi_roots.iter().filter(|g| positive(g)).all(|g| !roots.contains(&add(b, g))))
            .collect();
        assert_eq!(tops.len(), 1, "component of {start:?} has {} highest weights", tops.len());
        out.insert(tops[0].clone());
    }
    out
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn catalog_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

pub fn load(name: &str) -> demazure::SphericalDatum {
    let text = std::fs::read_to_string(data_dir().join(name)).unwrap();
    demazure::datum::parse_datum(&text).unwrap()
}

pub mod laws {
    use demazure::linalg::{Integer, Rational};
    use demazure::toric::{AlgebraElement, PolynomialInT, ToricLnd};
    use demazure::{pairing, LatticeVector};
    use num_traits::{One, ToPrimitive, Zero};
    use rand::rngs::StdRng;
    use rand::Rng;

    use super::{box_points, in_dual};

    /// A random element of `A(C)` with up to `terms` monomials from `Γ(C) ∩ [−r, r]^rank`.
    pub fn random_element(rng: &mut StdRng, gens: &[Vec<i64>], rank: usize, terms: usize, r: i64) -> AlgebraElement {
        let support: Vec<Vec<i64>> = box_points(rank, r).into_iter().filter(|p| in_dual(gens, p)).collect();
        let mut e = AlgebraElement::zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let lam = &support[rng.gen_range(0..support.len())];
            let c = Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into());
            e.add_term(LatticeVector::from_i64(lam), c);
        }
        e
    }

    /// `∂(gh) = ∂g·h + g·∂h`.
    pub fn leibniz(lnd: &ToricLnd, g: &AlgebraElement, h: &AlgebraElement) -> bool {
        let lhs = lnd.apply(&(g * h)).unwrap();
        let rhs = &(&lnd.apply(g).unwrap() * h) + &(g * &lnd.apply(h).unwrap());
        lhs == rhs
    }

    /// Counts applications of `∂` until `f_λ` dies and compares with `⟨ρ, λ⟩ + 1`.
    pub fn nilpotency(lnd: &ToricLnd, lam: &LatticeVector) -> bool {
        let mut g = AlgebraElement::monomial(lam.clone());
        let mut count = 0u64;
        while !g.is_zero() {
            g = lnd.apply(&g).unwrap();
            count += 1;
        }
        let expected = (pairing(&lnd.root().rho, lam).unwrap() + Integer::one()).to_u64().unwrap();
        count == expected && lnd.nilpotency_index(lam).unwrap() == expected
    }

    /// `exp(s∂)∘exp(t∂) = exp((s+t)∂)`: the `s^j t^k` coefficient of the left side is
    /// `binom(j+k, j)` times the `t^{j+k}` coefficient of `exp(t∂)`.
    pub fn group_law(lnd: &ToricLnd, g: &AlgebraElement) -> bool {
        let p = lnd.exponentiate(g).unwrap();
        for (k, pk) in p.coefficients().iter().enumerate() {
            let q = lnd.exponentiate(pk).unwrap();
            for j in 0..q.coefficients().len().max(p.coefficients().len()) {
                let expected = p.coefficient(j + k).scale(&Rational::from_integer(binomial(j + k, j)));
                if q.coefficient(j) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// `exp(t∂)(gh) = exp(t∂)g · exp(t∂)h`.
    pub fn automorphism(lnd: &ToricLnd, g: &AlgebraElement, h: &AlgebraElement) -> bool {
        lnd.exponentiate(&(g * h)).unwrap() == &lnd.exponentiate(g).unwrap() * &lnd.exponentiate(h).unwrap()
    }

    pub fn binomial(n: usize, k: usize) -> Integer {
        if k > n {
            return Integer::zero();
        }
        let mut b = Integer::one();
        for i in 0..k {
            b = b * (n - i) / (i + 1);
        }
        b
    }

    /// `Σ_k binom(d, k) (c·t)^k f_{λ+kμ}` assembled term by term.
    pub fn binomial_expansion(lam: &LatticeVector, mu: &LatticeVector, d: usize, c: &Rational) -> PolynomialInT {
        let mut coeffs = Vec::new();
        let mut w = lam.clone();
        for k in 0..=d {
            let ck = (0..k).fold(Rational::one(), |acc, _| acc * c);
            coeffs.push(AlgebraElement::term(w.clone(), Rational::from_integer(binomial(d, k)) * ck));
            w = &w + mu;
        }
        PolynomialInT::new(coeffs)
    }
}

pub mod data {
    use demazure::roots::RootSystemData;
    use demazure::spherical::{ColorType, DivisorRecord, SphericalDatum, SubsetF};
    use demazure::{DualVector, Sublattice};
    use rand::rngs::StdRng;
    use rand::Rng;

    use super::pointed_generators;

    /// A random datum with full `M` that passes validation.
    pub fn random_valid_datum(rng: &mut StdRng) -> SphericalDatum {
        let shapes: [&[(char, usize)]; 5] = [&[], &[('A', 1)], &[('A', 2)], &[('A', 1), ('A', 1)], &[('B', 2)]];
        loop {
            let shape = shapes[rng.gen_range(0..shapes.len())];
            let semisimple: usize = shape.iter().map(|s| s.1).sum();
            let central = rng.gen_range(usize::from(semisimple == 0)..=2);
            let rs = RootSystemData::of_types(shape, central).unwrap();
            let rank = rs.ambient_rank();
            let colors = if semisimple == 0 { 0 } else { rng.gen_range(0..=3) };
            let g_stable = rng.gen_range(usize::from(colors == 0)..=3);
            let kappas = pointed_generators(rng, rank, colors + g_stable, 2);
            let mut divisors = Vec::new();
            for (i, k) in kappas.iter().enumerate() {
                let kappa = DualVector::from_i64(k);
                if i < colors {
                    let t = [ColorType::U, ColorType::T, ColorType::N][rng.gen_range(0..3)];
                    let moved: Vec<usize> = loop {
                        let m: Vec<usize> = (0..semisimple).filter(|_| rng.gen_bool(0.5)).collect();
                        if !m.is_empty() {
                            break m;
                        }
                    };
                    divisors.push(DivisorRecord::color(&format!("C{i}"), kappa, t, moved));
                } else {
                    divisors.push(DivisorRecord::g_stable(&format!("G{i}"), kappa));
                }
            }
            let Ok(d) = SphericalDatum::new(rs, Sublattice::full(rank), divisors) else { continue };
            if d.validate().passed() {
                return d;
            }
        }
    }

    /// `F = D` and `F = D \ {D0}` for every color `D0` of type T.
    pub fn admissible_subsets(d: &SphericalDatum) -> Vec<SubsetF> {
        let mut out = vec![SubsetF::all_colors()];
        for c in d.colors() {
            if c.color_type() == Some(ColorType::T) {
                out.push(SubsetF::excluding(&c.name));
            }
        }
        out
    }
}
