//! Finite root systems given by simple roots and coroots in `X(T)`, parabolic
//! subsets, the roots of `p_u`, and the set `Ω` of highest weights of the
//! irreducible Levi summands of `p_u`.

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector};
use crate::linalg::{self, IntMatrix, Integer, Rational};

/// A positive root: its expansion in simple roots and its `X(T)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coefficients: Vec<i64>,
    pub weight: LatticeVector,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// Simple-root indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coefficients.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    ambient_rank: usize,
    simple_roots: Vec<LatticeVector>,
    simple_coroots: Vec<DualVector>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
}

/// Levi part of a standard parabolic, as a set of simple-root indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParabolicSubset {
    pub levi_simple_roots: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new(levi: impl IntoIterator<Item = usize>) -> Self {
        Self { levi_simple_roots: levi.into_iter().collect() }
    }

    /// `P = B`.
    pub fn borel() -> Self {
        Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    pub roots: Vec<Root>,
}

fn check_finite_type(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(Error::Cartan(format!("diagonal entry ({i},{i}) is {} instead of 2", c[i][i])));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(Error::Cartan(format!("entries ({i},{j}) and ({j},{i}) are not a valid pair")));
            }
        }
    }
    // Symmetrize: d_i c_ij = d_j c_ji.
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::from_integer(1.into()));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let dj = &di * Rational::new(c[i][j].into(), c[j][i].into());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::Cartan("matrix is not symmetrizable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    // Positive definiteness of the symmetrization via pivots of Gaussian elimination.
    let mut b: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| d[i].clone().unwrap() * Rational::from_integer(c[i][j].into())).collect())
        .collect();
    for k in 0..n {
        if !b[k][k].is_positive() {
            return Err(Error::Cartan("matrix is not of finite type".into()));
        }
        for i in k + 1..n {
            let f = &b[i][k] / &b[k][k];
            for j in k..n {
                let sub = &f * &b[k][j];
                b[i][j] -= sub;
            }
        }
    }
    Ok(())
}

/// Positive roots, in simple-root coordinates, by root-string extension from the simple roots.
fn positive_root_coefficients(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut known: HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if !known.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * c[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

impl RootSystemData {
    /// Validates the Cartan data and generates the positive roots.
    pub fn new(ambient_rank: usize, simple_roots: Vec<LatticeVector>, simple_coroots: Vec<DualVector>) -> Result<Self> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::Cartan(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        for r in &simple_roots {
            if r.rank() != ambient_rank {
                return Err(Error::Dimension { expected: ambient_rank, found: r.rank() });
            }
        }
        for r in &simple_coroots {
            if r.rank() != ambient_rank {
                return Err(Error::Dimension { expected: ambient_rank, found: r.rank() });
            }
        }
        let rows: IntMatrix = simple_roots.iter().map(|r| r.coords().to_vec()).collect();
        if linalg::rank(&rows, ambient_rank) != rows.len() {
            return Err(Error::Cartan("simple roots are linearly dependent".into()));
        }
        let n = simple_roots.len();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = linalg::dot(simple_roots[j].coords(), simple_coroots[i].coords());
                cartan[i][j] = i64::try_from(v).map_err(|_| Error::Cartan("Cartan entry out of range".into()))?;
            }
        }
        check_finite_type(&cartan)?;
        let positive_roots = positive_root_coefficients(&cartan)
            .into_iter()
            .map(|coefficients| {
                let mut w = vec![Integer::zero(); ambient_rank];
                for (k, &b) in coefficients.iter().enumerate() {
                    for (x, s) in w.iter_mut().zip(simple_roots[k].coords()) {
                        *x += s * b;
                    }
                }
                Root { coefficients, weight: LatticeVector::character(w) }
            })
            .collect();
        Ok(Self { ambient_rank, simple_roots, simple_coroots, cartan, positive_roots })
    }

    /// The simply connected group of the given Cartan type times a torus of rank `central_rank`.
    ///
    /// Simple roots are written in the basis of fundamental weights followed by
    /// the characters of the central torus; coroots are the dual basis vectors.
    pub fn of_type(series: char, n: usize, central_rank: usize) -> Result<Self> {
        let c = cartan_matrix(series, n)?;
        Self::from_cartan(&c, central_rank)
    }

    /// Product of simply connected groups, e.g. `&[('A', 1), ('A', 1)]`, times a central torus.
    pub fn of_types(types: &[(char, usize)], central_rank: usize) -> Result<Self> {
        let blocks: Vec<Vec<Vec<i64>>> = types.iter().map(|&(s, n)| cartan_matrix(s, n)).collect::<Result<_>>()?;
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut c = vec![vec![0; total]; total];
        let mut off = 0;
        for b in blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    c[off + i][off + j] = v;
                }
            }
            off += b.len();
        }
        Self::from_cartan(&c, central_rank)
    }

    fn from_cartan(c: &[Vec<i64>], central_rank: usize) -> Result<Self> {
        let n = c.len();
        let rank = n + central_rank;
        let roots = (0..n)
            .map(|i| {
                let mut v: Vec<i64> = (0..n).map(|j| c[j][i]).collect();
                v.resize(rank, 0);
                LatticeVector::character(linalg::ints(&v))
            })
            .collect();
        let coroots =
            (0..n).map(|i| DualVector::new((0..rank).map(|j| Integer::from(i64::from(i == j))).collect())).collect();
        Self::new(rank, roots, coroots)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[DualVector] {
        &self.simple_coroots
    }

    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn is_root(&self, coefficients: &[i64]) -> bool {
        let neg: Vec<i64> = coefficients.iter().map(|c| -c).collect();
        self.positive_roots.iter().any(|r| r.coefficients == coefficients || r.coefficients == neg)
    }

    pub fn check_parabolic(&self, p: &ParabolicSubset) -> Result<()> {
        match p.levi_simple_roots.iter().find(|&&i| i >= self.semisimple_rank()) {
            Some(i) => Err(Error::Contract(format!("simple root index {i} out of range"))),
            None => Ok(()),
        }
    }

    /// Positive roots of the Levi subgroup.
    pub fn levi_roots(&self, p: &ParabolicSubset) -> Vec<Root> {
        self.positive_roots.iter().filter(|r| r.support().all(|i| p.levi_simple_roots.contains(&i))).cloned().collect()
    }

    /// Roots of `p_u`: positive roots involving a simple root outside the Levi.
    pub fn pu_roots(&self, p: &ParabolicSubset) -> Vec<Root> {
        self.positive_roots.iter().filter(|r| r.support().any(|i| !p.levi_simple_roots.contains(&i))).cloned().collect()
    }

    /// Roots `α` of `p_u` such that `α + γ` is not a root for every positive Levi root `γ`.
    pub fn omega(&self, p: &ParabolicSubset) -> OmegaSet {
        let levi = self.levi_roots(p);
        let roots = self
            .pu_roots(p)
            .into_iter()
            .filter(|a| {
                levi.iter().all(|g| {
                    let sum: Vec<i64> = a.coefficients.iter().zip(&g.coefficients).map(|(x, y)| x + y).collect();
                    !self.is_root(&sum)
                })
            })
            .collect();
        OmegaSet { roots }
    }
}

pub fn generate_positive_roots(
    ambient_rank: usize,
    simple_roots: Vec<LatticeVector>,
    simple_coroots: Vec<DualVector>,
) -> Result<Vec<Root>> {
    Ok(RootSystemData::new(ambient_rank, simple_roots, simple_coroots)?.positive_roots)
}

pub fn pu_roots(data: &RootSystemData, p: &ParabolicSubset) -> Vec<Root> {
    data.pu_roots(p)
}

pub fn omega(data: &RootSystemData, p: &ParabolicSubset) -> OmegaSet {
    data.omega(p)
}

/// Cartan matrix `c[i][j] = ⟨α_j, α_i^∨⟩` in Bourbaki numbering.
pub fn cartan_matrix(series: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Cartan(format!("no root system of type {series}{n}"));
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series.to_ascii_uppercase() {
        'A' if n >= 1 => (1..n).for_each(|i| link(i - 1, i)),
        'B' | 'C' if n >= 2 => (1..n).for_each(|i| link(i - 1, i)),
        'D' if n >= 4 => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(n - 3, n - 1);
        }
        'E' if (6..=8).contains(&n) => {
            link(0, 2);
            link(1, 3);
            link(2, 3);
            (4..n).for_each(|i| link(i - 1, i));
        }
        'F' if n == 4 => (1..4).for_each(|i| link(i - 1, i)),
        'G' if n == 2 => link(0, 1),
        _ => return Err(bad()),
    }
    match series.to_ascii_uppercase() {
        // α_n short
        'B' => c[n - 1][n - 2] = -2,
        // α_n long
        'C' => c[n - 2][n - 1] = -2,
        // α_3, α_4 short
        'F' => c[2][1] = -2,
        // α_1 short
        'G' => c[0][1] = -3,
        _ => {}
    }
    Ok(c)
}
