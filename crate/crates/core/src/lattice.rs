//! Lattice vectors, dual vectors and sublattices with exact integer arithmetic.
//!
//! Weight vectors carry a [`LatticeTag`] saying whether they are written in the
//! basis of the weight lattice `M` or in the ambient character lattice `X(T)`.
//! Only `M`-tagged vectors can be paired with elements of `N = Hom(M, Z)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Integer, Snf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeTag {
    /// Coordinates in a basis of the weight lattice `M`.
    Weights,
    /// Coordinates in the ambient character lattice `X(T)`.
    Characters,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<Integer>,
    tag: LatticeTag,
}

impl LatticeVector {
    pub fn new(coords: Vec<Integer>, tag: LatticeTag) -> Self {
        Self { coords, tag }
    }

    /// A vector of `M`.
    pub fn weight(coords: Vec<Integer>) -> Self {
        Self::new(coords, LatticeTag::Weights)
    }

    /// A vector of `X(T)`.
    pub fn character(coords: Vec<Integer>) -> Self {
        Self::new(coords, LatticeTag::Characters)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::weight(linalg::ints(coords))
    }

    pub fn zero(rank: usize, tag: LatticeTag) -> Self {
        Self::new(vec![Integer::zero(); rank], tag)
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn tag(&self) -> LatticeTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(self.coords.iter().map(|x| x * k).collect(), self.tag)
    }

    pub fn sup_norm(&self) -> Integer {
        linalg::sup_norm(&self.coords)
    }

    /// Ordering key used for every "smallest" choice: sup-norm, then `l1`-norm, then lex.
    pub fn size_key(&self) -> (Integer, Integer, Vec<Integer>) {
        (self.sup_norm(), linalg::l1_norm(&self.coords), self.coords.clone())
    }

    pub fn retag(self, tag: LatticeTag) -> Self {
        Self { tag, ..self }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in lattice arithmetic");
        assert_eq!(self.tag, other.tag, "tag mismatch in lattice arithmetic");
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_same(rhs);
        LatticeVector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(), self.tag)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_same(rhs);
        LatticeVector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(), self.tag)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|a| -a).collect(), self.tag)
    }
}

fn write_coords(f: &mut fmt::Formatter<'_>, coords: &[Integer]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.coords)
    }
}

/// An element of `N = Hom(M, Z)` in the basis dual to the chosen `M`-basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualVector {
    coords: Vec<Integer>,
}

impl DualVector {
    pub fn new(coords: Vec<Integer>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::new(linalg::ints(coords))
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.coords)
    }
}

/// The natural pairing `N × M → Z`.
pub fn pairing(rho: &DualVector, lam: &LatticeVector) -> Result<Integer> {
    if lam.tag != LatticeTag::Weights {
        return Err(Error::LatticeMismatch(format!("{lam} is written in X(T), not in M")));
    }
    if rho.rank() != lam.rank() {
        return Err(Error::Dimension { expected: rho.rank(), found: lam.rank() });
    }
    Ok(linalg::dot(&rho.coords, &lam.coords))
}

/// The primitive lattice vector on the ray through `v`.
pub fn primitive(v: &DualVector) -> Result<DualVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector("vector"));
    }
    Ok(DualVector::new(linalg::primitive_vec(&v.coords)))
}

/// `U·A·V = D` for an integer matrix with `ncols` columns.
pub fn smith_normal_form(a: &IntMatrix, ncols: usize) -> Snf {
    linalg::smith_normal_form(a, ncols)
}

/// A full-rank sublattice given by basis rows in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient_rank: usize,
    basis_rows: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient_rank: usize, basis_rows: IntMatrix) -> Result<Self> {
        if let Some(row) = basis_rows.iter().find(|r| r.len() != ambient_rank) {
            return Err(Error::Dimension { expected: ambient_rank, found: row.len() });
        }
        if linalg::rank(&basis_rows, ambient_rank) != basis_rows.len() {
            return Err(Error::Datum("sublattice basis rows are linearly dependent".into()));
        }
        Ok(Self { ambient_rank, basis_rows })
    }

    pub fn full(rank: usize) -> Self {
        Self { ambient_rank: rank, basis_rows: linalg::identity(rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis_rows.len()
    }

    pub fn basis_rows(&self) -> &IntMatrix {
        &self.basis_rows
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.rank() != self.ambient_rank {
            return Err(Error::Dimension { expected: self.ambient_rank, found: v.rank() });
        }
        Ok(())
    }

    /// Coordinates of an ambient vector in the basis, or `None` if it is not in the lattice.
    pub fn coordinates(&self, v: &LatticeVector) -> Result<Option<LatticeVector>> {
        self.check(v)?;
        Ok(linalg::coords_in_row_lattice(&self.basis_rows, self.ambient_rank, v.coords())
            .map(LatticeVector::weight))
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Maps lattice coordinates to the ambient vector.
    pub fn embed(&self, coords: &LatticeVector) -> Result<LatticeVector> {
        if coords.rank() != self.rank() {
            return Err(Error::Dimension { expected: self.rank(), found: coords.rank() });
        }
        Ok(LatticeVector::character(linalg::vec_mat(coords.coords(), &self.basis_rows, self.ambient_rank)))
    }
}

/// Whether `v` is an integer combination of the rows of `lattice`.
pub fn sublattice_membership(lattice: &Sublattice, v: &LatticeVector) -> Result<bool> {
    lattice.contains(v)
}
