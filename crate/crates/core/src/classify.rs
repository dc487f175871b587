//! B-normalized LNDs on `K[X_F]`.
//!
//! For a weight `μ ∈ X(T)` the space of B-normalized LNDs of weight `μ` on
//! `K[X_F] = K[P_u] ⊗ K[Z]` has a basis indexed by `Ω_μ⁰` (terms
//! `f_{μ−α} δ_α`) plus at most one toric term `∂_Z` when `μ ∈ M` is a
//! Demazure root of `E_Z`. The symbols `δ_α` are formal: only weights,
//! dimensions and the vertical/horizontal verdicts are computed.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector};
use crate::linalg::Rational;
use crate::roots::Root;
use crate::spherical::{ColorType, DivisorKind, SphericalDatum, SubsetF};
use crate::toric::is_demazure_root;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LndKind {
    /// `f_{μ−α} δ_α` for `α ∈ Ω_μ⁰`.
    PuTerm(Root),
    /// The homogeneous LND of `K[Z]` attached to the Demazure root `μ` on the ray `ρ` of `E_Z`.
    ToricTerm(DualVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndDescriptor {
    /// The weight in `X(T)`.
    pub mu: LatticeVector,
    pub kind: LndKind,
    pub coefficient: Rational,
}

impl fmt::Display for LndDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LndKind::PuTerm(a) => write!(f, "pu_term alpha={} mu={}", a.weight, self.mu),
            LndKind::ToricTerm(rho) => write!(f, "toric_term rho={} mu={}", rho, self.mu),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vertical,
    Horizontal,
    /// Several divisors outside `F` lie on the ray, so the moved divisor is not determined.
    Ambiguous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorizontalKind {
    Toroidal,
    Blurring,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vertical => "vertical",
            Verdict::Horizontal => "horizontal",
            Verdict::Ambiguous => "ambiguous",
        })
    }
}

impl fmt::Display for HorizontalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HorizontalKind::Toroidal => "toroidal",
            HorizontalKind::Blurring => "blurring",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub subtype: Option<HorizontalKind>,
    pub moved_divisor: Option<String>,
    /// For an ambiguous verdict, the divisors sharing the ray.
    pub candidates: Vec<String>,
}

/// `(Ω_μ, Ω_μ⁰)` for the parabolic `P_F`.
pub fn omega_mu_sets(datum: &SphericalDatum, f: &SubsetF, mu: &LatticeVector) -> Result<(Vec<Root>, Vec<Root>)> {
    let chi = character(datum, mu)?;
    let p = datum.parabolic_of(f)?;
    let ez = datum.ez_cone(f)?;
    let mut omega_mu = Vec::new();
    let mut omega_mu0 = Vec::new();
    for a in datum.root_system().omega(&p).roots {
        let Some(diff) = datum.to_weight(&(&chi - &a.weight))? else { continue };
        if ez.in_dual(&diff) {
            omega_mu0.push(a.clone());
        }
        omega_mu.push(a);
    }
    Ok((omega_mu, omega_mu0))
}

/// A basis of the B-normalized LNDs of weight `μ` on `K[X_F]`.
pub fn lnd_space(datum: &SphericalDatum, f: &SubsetF, mu: &LatticeVector) -> Result<Vec<LndDescriptor>> {
    let chi = character(datum, mu)?;
    let (_, omega_mu0) = omega_mu_sets(datum, f, &chi)?;
    let mut out: Vec<LndDescriptor> = omega_mu0
        .into_iter()
        .map(|a| LndDescriptor { mu: chi.clone(), kind: LndKind::PuTerm(a), coefficient: Rational::one() })
        .collect();
    if let Some(m) = datum.to_weight(&chi)? {
        let ez = datum.ez_cone(f)?;
        if let Some(rho) = is_demazure_root(&ez, &m)? {
            out.push(LndDescriptor { mu: chi, kind: LndKind::ToricTerm(rho), coefficient: Rational::one() });
        }
    }
    Ok(out)
}

/// Vertical for `p_u` terms; for toric terms the divisor outside `F` on the ray decides.
pub fn classify(datum: &SphericalDatum, f: &SubsetF, descriptor: &LndDescriptor) -> Result<Classification> {
    let rho = match &descriptor.kind {
        LndKind::PuTerm(_) => {
            return Ok(Classification {
                verdict: Verdict::Vertical,
                subtype: None,
                moved_divisor: None,
                candidates: Vec::new(),
            })
        }
        LndKind::ToricTerm(rho) => rho,
    };
    datum.check_subset(f)?;
    let mut on_ray = Vec::new();
    for d in datum.outside(f) {
        if !d.kappa.is_zero() && crate::cone::ray_membership(&d.kappa, rho)? {
            on_ray.push(d);
        }
    }
    match on_ray.as_slice() {
        [] => Err(Error::Contract(format!("no divisor outside F lies on the ray {rho}"))),
        [d] => {
            let subtype = match &d.kind {
                DivisorKind::GStable => HorizontalKind::Toroidal,
                DivisorKind::Color { color_type: ColorType::T, .. } => HorizontalKind::Blurring,
                DivisorKind::Color { color_type, .. } => {
                    return Err(Error::Contract(format!("a color of type {color_type} cannot be moved")))
                }
            };
            Ok(Classification {
                verdict: Verdict::Horizontal,
                subtype: Some(subtype),
                moved_divisor: Some(d.name.clone()),
                candidates: Vec::new(),
            })
        }
        many => Ok(Classification {
            verdict: Verdict::Ambiguous,
            subtype: None,
            moved_divisor: None,
            candidates: many.iter().map(|d| d.name.clone()).collect(),
        }),
    }
}

fn character(datum: &SphericalDatum, mu: &LatticeVector) -> Result<LatticeVector> {
    let n = datum.root_system().ambient_rank();
    if mu.rank() != n {
        return Err(Error::Dimension { expected: n, found: mu.rank() });
    }
    Ok(mu.clone().retag(crate::lattice::LatticeTag::Characters))
}
