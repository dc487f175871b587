//! Demazure roots of a cone and the homogeneous locally nilpotent derivations
//! they index on the semigroup algebra `A(C) = ⊕_{λ ∈ Γ(C)} Q·f_λ`.
//!
//! For a root `μ` with distinguished ray `ρ` the derivation acts on monomials by
//! `∂_μ(f_λ) = ⟨ρ, λ⟩ f_{λ+μ}`. Each application lowers `⟨ρ, ·⟩` by one, so
//! `∂_μ` is locally nilpotent and `exp(t∂_μ)` is a polynomial in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{pairing, DualVector, LatticeTag, LatticeVector, Sublattice};
use crate::linalg::{Integer, Rational};

/// A weight `μ` with `⟨ρ, μ⟩ = −1` and `⟨ρ', μ⟩ ≥ 0` for the other extremal rays `ρ'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemazureRoot {
    pub rho: DualVector,
    pub mu: LatticeVector,
}

/// The ray `ρ` for which `mu` is a Demazure root of `cone`, if any.
///
/// The sets `R_ρ(C)` are disjoint, so the answer is unique.
pub fn is_demazure_root(cone: &Cone, mu: &LatticeVector) -> Result<Option<DualVector>> {
    let rays = cone.extremal_rays();
    let mut found = None;
    for rho in rays {
        let v = pairing(rho, mu)?;
        if v.is_negative() {
            if v != -Integer::one() || found.is_some() {
                return Ok(None);
            }
            found = Some(rho.clone());
        }
    }
    Ok(found)
}

/// All Demazure roots with sup-norm at most `bound`, grouped by ray, both in lexicographic order.
pub fn enumerate_demazure_roots(cone: &Cone, bound: u32) -> Vec<DemazureRoot> {
    enumerate_filtered(cone, bound, |_| true)
}

/// As [`enumerate_demazure_roots`], keeping only weights in the sublattice `lattice ⊂ M`.
pub fn enumerate_demazure_roots_in(cone: &Cone, lattice: &Sublattice, bound: u32) -> Result<Vec<DemazureRoot>> {
    if lattice.ambient_rank() != cone.rank() {
        return Err(Error::Dimension { expected: cone.rank(), found: lattice.ambient_rank() });
    }
    Ok(enumerate_filtered(cone, bound, |mu| {
        lattice.contains(&mu.clone().retag(LatticeTag::Characters)).unwrap_or(false)
    }))
}

fn enumerate_filtered(cone: &Cone, bound: u32, keep: impl Fn(&LatticeVector) -> bool) -> Vec<DemazureRoot> {
    let rank = cone.rank();
    let b = i64::from(bound);
    let mut out = Vec::new();
    for rho in cone.extremal_rays() {
        // Solve ⟨ρ, μ⟩ = −1 for the coordinate at a pivot position, scan the rest of the box.
        let pivot = rho.coords().iter().position(|c| !c.is_zero()).expect("rays are nonzero");
        let free: Vec<usize> = (0..rank).filter(|&i| i != pivot).collect();
        let mut point = vec![-b; free.len()];
        let mut roots = Vec::new();
        loop {
            let mut coords = vec![Integer::zero(); rank];
            for (&i, &x) in free.iter().zip(&point) {
                coords[i] = Integer::from(x);
            }
            let partial: Integer = rho.coords().iter().zip(&coords).map(|(r, c)| r * c).sum();
            let rhs = -Integer::one() - partial;
            let rp = &rho.coords()[pivot];
            if (&rhs % rp).is_zero() {
                let value = &rhs / rp;
                if value.abs() <= Integer::from(b) {
                    coords[pivot] = value;
                    let mu = LatticeVector::weight(coords);
                    if keep(&mu) && is_demazure_root(cone, &mu).ok().flatten().as_ref() == Some(rho) {
                        roots.push(DemazureRoot { rho: rho.clone(), mu });
                    }
                }
            }
            let mut i = 0;
            while i < point.len() && point[i] == b {
                point[i] = -b;
                i += 1;
            }
            if i == point.len() {
                break;
            }
            point[i] += 1;
        }
        roots.sort();
        out.extend(roots);
    }
    out
}

/// A finite sum `Σ c_λ f_λ` with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<LatticeVector, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(lam: LatticeVector) -> Self {
        Self::term(lam, Rational::one())
    }

    pub fn term(lam: LatticeVector, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(lam, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticeVector, Rational)>) -> Self {
        let mut e = Self::zero();
        for (lam, c) in terms {
            e.add_term(lam, c);
        }
        e
    }

    pub fn add_term(&mut self, lam: LatticeVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lam).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &LatticeVector) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, v)| (l.clone(), v * c)))
    }

    /// Whether every weight in the support lies in `Γ(C)`.
    pub fn supported_on(&self, cone: &Cone) -> bool {
        self.terms.keys().all(|l| cone.in_dual(l))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), -c);
        }
        out
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let abs = c.abs();
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c)?;
            write!(f, "f{l}")?;
        }
        Ok(())
    }
}

/// A polynomial in the group parameter `t` with coefficients in `A(C)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolynomialInT {
    coeffs: Vec<AlgebraElement>,
}

impl PolynomialInT {
    pub fn new(mut coeffs: Vec<AlgebraElement>) -> Self {
        while coeffs.last().is_some_and(AlgebraElement::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(g: AlgebraElement) -> Self {
        Self::new(vec![g])
    }

    /// Coefficients by increasing power of `t`; the last one is nonzero.
    pub fn coefficients(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> AlgebraElement {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for &PolynomialInT {
    type Output = PolynomialInT;
    fn add(self, rhs: &PolynomialInT) -> PolynomialInT {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialInT::new((0..n).map(|k| &self.coefficient(k) + &rhs.coefficient(k)).collect())
    }
}

impl Mul for &PolynomialInT {
    type Output = PolynomialInT;
    fn mul(self, rhs: &PolynomialInT) -> PolynomialInT {
        if self.is_zero() || rhs.is_zero() {
            return PolynomialInT::default();
        }
        let mut out = vec![AlgebraElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolynomialInT::new(out)
    }
}

impl fmt::Display for PolynomialInT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, g) in self.coeffs.iter().enumerate() {
            for (l, c) in g.terms() {
                write_coefficient(f, first, c)?;
                first = false;
                match k {
                    0 => {}
                    1 => write!(f, "t*")?,
                    _ => write!(f, "t^{k}*")?,
                }
                write!(f, "f{l}")?;
            }
        }
        Ok(())
    }
}

/// The derivation `scale · ∂_μ` on `A(C)` for a Demazure root `μ` of `C`.
#[derive(Clone, Debug)]
pub struct ToricLnd<'c> {
    cone: &'c Cone,
    root: DemazureRoot,
    scale: Rational,
}

impl<'c> ToricLnd<'c> {
    pub fn new(cone: &'c Cone, mu: LatticeVector) -> Result<Self> {
        let rho = is_demazure_root(cone, &mu)?
            .ok_or_else(|| Error::Contract(format!("{mu} is not a Demazure root of the cone")))?;
        Ok(Self { cone, root: DemazureRoot { rho, mu }, scale: Rational::one() })
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    pub fn root(&self) -> &DemazureRoot {
        &self.root
    }

    pub fn cone(&self) -> &Cone {
        self.cone
    }

    fn check_support(&self, g: &AlgebraElement) -> Result<()> {
        match g.terms().map(|(l, _)| l).find(|l| !self.cone.in_dual(l)) {
            Some(l) => Err(Error::OutsideMonoid { weight: l.coords().iter().map(ToString::to_string).collect() }),
            None => Ok(()),
        }
    }

    fn apply_unchecked(&self, g: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (lam, c) in g.terms() {
            let d = pairing(&self.root.rho, lam).expect("ranks checked");
            if !d.is_zero() {
                out.add_term(lam + &self.root.mu, c * &self.scale * Rational::from_integer(d));
            }
        }
        out
    }

    /// `∂(Σ c_λ f_λ) = Σ c_λ ⟨ρ, λ⟩ f_{λ+μ}`, scaled.
    pub fn apply(&self, g: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_support(g)?;
        Ok(self.apply_unchecked(g))
    }

    /// Least `k` with `∂^k f_λ = 0`, namely `⟨ρ, λ⟩ + 1`.
    pub fn nilpotency_index(&self, lam: &LatticeVector) -> Result<u64> {
        self.check_support(&AlgebraElement::monomial(lam.clone()))?;
        if self.scale.is_zero() {
            return Ok(1);
        }
        let d = pairing(&self.root.rho, lam)?;
        (d + 1u32).to_u64().ok_or_else(|| Error::Contract("nilpotency index does not fit in u64".into()))
    }

    /// `exp(t∂) g = Σ_k t^k/k! ∂^k g`, computed by iterating the derivation.
    pub fn exponentiate(&self, g: &AlgebraElement) -> Result<PolynomialInT> {
        self.check_support(g)?;
        let mut coeffs = Vec::new();
        let mut current = g.clone();
        let mut k = 0u64;
        while !current.is_zero() {
            coeffs.push(current.clone());
            k += 1;
            current = self.apply_unchecked(&current).scale(&Rational::new(Integer::one(), Integer::from(k)));
        }
        Ok(PolynomialInT::new(coeffs))
    }

    /// `exp(t∂) f_λ = Σ_{k=0}^{d} binom(d, k) (scale·t)^k f_{λ+kμ}` with `d = ⟨ρ, λ⟩`.
    pub fn exponentiate_monomial(&self, lam: &LatticeVector) -> Result<PolynomialInT> {
        self.check_support(&AlgebraElement::monomial(lam.clone()))?;
        let d = pairing(&self.root.rho, lam)?
            .to_u64()
            .ok_or_else(|| Error::Contract("pairing too large to expand".into()))?;
        let mut coeffs = Vec::new();
        let mut binom = Integer::one();
        let mut power = Rational::one();
        let mut weight = lam.clone();
        for k in 0..=d {
            coeffs.push(AlgebraElement::term(weight.clone(), Rational::from_integer(binom.clone()) * &power));
            binom = binom * Integer::from(d - k) / Integer::from(k + 1);
            power *= &self.scale;
            weight = &weight + &self.root.mu;
        }
        Ok(PolynomialInT::new(coeffs))
    }
}
