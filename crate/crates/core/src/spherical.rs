//! The combinatorial record of an affine spherical variety.
//!
//! A datum lists the root system of `G` in `X(T)`, the weight lattice `M ⊂ X(T)`
//! and every `B`-stable prime divisor with its valuation vector `κ(D) ∈ N`.
//! Colors additionally carry their type (U, T or N) and the simple roots whose
//! minimal parabolics move them. Types and moved-by sets are taken as input;
//! [`SphericalDatum::validate`] checks only the consistency conditions that
//! must hold for a genuine affine spherical variety, so synthetic records that
//! pass validation are accepted without a known geometric realization.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{Cone, WeightMonoid};
use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector, Sublattice};
use crate::linalg;
use crate::roots::{ParabolicSubset, RootSystemData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ColorType {
    U,
    T,
    N,
}

impl fmt::Display for ColorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ColorType::U => "U",
            ColorType::T => "T",
            ColorType::N => "N",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorKind {
    Color { color_type: ColorType, moved_by: BTreeSet<usize> },
    GStable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRecord {
    pub name: String,
    pub kappa: DualVector,
    pub kind: DivisorKind,
}

impl DivisorRecord {
    pub fn color(name: &str, kappa: DualVector, color_type: ColorType, moved_by: impl IntoIterator<Item = usize>) -> Self {
        Self {
            name: name.to_string(),
            kappa,
            kind: DivisorKind::Color { color_type, moved_by: moved_by.into_iter().collect() },
        }
    }

    pub fn g_stable(name: &str, kappa: DualVector) -> Self {
        Self { name: name.to_string(), kappa, kind: DivisorKind::GStable }
    }

    pub fn is_color(&self) -> bool {
        matches!(self.kind, DivisorKind::Color { .. })
    }

    pub fn color_type(&self) -> Option<ColorType> {
        match &self.kind {
            DivisorKind::Color { color_type, .. } => Some(*color_type),
            DivisorKind::GStable => None,
        }
    }

    pub fn moved_by(&self) -> Option<&BTreeSet<usize>> {
        match &self.kind {
            DivisorKind::Color { moved_by, .. } => Some(moved_by),
            DivisorKind::GStable => None,
        }
    }
}

/// The admissible subsets `F` of colors: all colors, or all but one color of type T.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsetF {
    pub excluded_color: Option<String>,
}

impl SubsetF {
    pub fn all_colors() -> Self {
        Self::default()
    }

    pub fn excluding(name: &str) -> Self {
        Self { excluded_color: Some(name.to_string()) }
    }

    /// Whether the divisor `d` belongs to `F`.
    pub fn contains(&self, d: &DivisorRecord) -> bool {
        d.is_color() && self.excluded_color.as_deref() != Some(d.name.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }
}

pub const CHECK_STRICTLY_CONVEX: &str = "strictly-convex";
pub const CHECK_LATTICE_GENERATED: &str = "lattice-generated-by-monoid";
pub const CHECK_TYPE_T: &str = "type-T-consistency";
pub const CHECK_STABILIZER: &str = "stabilizer-agreement";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDatum {
    root_system: RootSystemData,
    lattice: Sublattice,
    divisors: Vec<DivisorRecord>,
}

impl SphericalDatum {
    /// Builds a datum after structural checks (ranks, names, indices).
    pub fn new(root_system: RootSystemData, lattice: Sublattice, divisors: Vec<DivisorRecord>) -> Result<Self> {
        if lattice.ambient_rank() != root_system.ambient_rank() {
            return Err(Error::Datum(format!(
                "lattice M lives in rank {} but X(T) has rank {}",
                lattice.ambient_rank(),
                root_system.ambient_rank()
            )));
        }
        let mut names = HashSet::new();
        for d in &divisors {
            if !names.insert(d.name.as_str()) {
                return Err(Error::Datum(format!("duplicate divisor name {:?}", d.name)));
            }
            if d.kappa.rank() != lattice.rank() {
                return Err(Error::Datum(format!(
                    "kappa of {:?} has rank {}, but N has rank {}",
                    d.name,
                    d.kappa.rank(),
                    lattice.rank()
                )));
            }
            if let Some(moved) = d.moved_by() {
                if moved.is_empty() {
                    return Err(Error::Datum(format!("color {:?} is moved by no simple root", d.name)));
                }
                if let Some(i) = moved.iter().find(|&&i| i >= root_system.semisimple_rank()) {
                    return Err(Error::Datum(format!("color {:?} refers to simple root {i}", d.name)));
                }
            }
        }
        Ok(Self { root_system, lattice, divisors })
    }

    pub fn root_system(&self) -> &RootSystemData {
        &self.root_system
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    /// Rank of `M` (and of `N`).
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn divisors(&self) -> &[DivisorRecord] {
        &self.divisors
    }

    pub fn divisor(&self, name: &str) -> Result<&DivisorRecord> {
        self.divisors
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::Contract(format!("no divisor named {name:?}")))
    }

    pub fn colors(&self) -> impl Iterator<Item = &DivisorRecord> {
        self.divisors.iter().filter(|d| d.is_color())
    }

    pub fn g_stable(&self) -> impl Iterator<Item = &DivisorRecord> {
        self.divisors.iter().filter(|d| !d.is_color())
    }

    /// Coordinates in `M` of a character of `T`, if it lies in `M`.
    pub fn to_weight(&self, chi: &LatticeVector) -> Result<Option<LatticeVector>> {
        self.lattice.coordinates(chi)
    }

    /// The character of `T` with the given `M`-coordinates.
    pub fn to_character(&self, lam: &LatticeVector) -> Result<LatticeVector> {
        self.lattice.embed(lam)
    }

    /// The cone `E` generated by all `κ(D)`.
    pub fn cone(&self) -> Result<Cone> {
        Cone::build(self.rank(), self.divisors.iter().map(|d| d.kappa.clone()).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let cone = self.cone();
        checks.push(match &cone {
            Ok(_) => CheckResult { check: CHECK_STRICTLY_CONVEX.into(), passed: true, detail: String::new() },
            Err(Error::NotStrictlyConvex { witness }) => CheckResult {
                check: CHECK_STRICTLY_CONVEX.into(),
                passed: false,
                detail: format!("the cone of valuations contains the line through ({})", witness.join(",")),
            },
            Err(e) => CheckResult { check: CHECK_STRICTLY_CONVEX.into(), passed: false, detail: e.to_string() },
        });

        checks.push(match &cone {
            Ok(cone) => {
                let basis: linalg::IntMatrix =
                    cone.dual_monoid().hilbert_basis.iter().map(|l| l.coords().to_vec()).collect();
                let snf = linalg::smith_normal_form(&basis, self.rank());
                let index_one = snf.rank == self.rank() && snf.diagonal().iter().all(|d| d == &1.into());
                CheckResult {
                    check: CHECK_LATTICE_GENERATED.into(),
                    passed: index_one,
                    detail: if index_one {
                        String::new()
                    } else {
                        let diag: Vec<String> = snf.diagonal().iter().map(ToString::to_string).collect();
                        format!(
                            "the weight monoid spans a sublattice of rank {} with invariant factors [{}]",
                            snf.rank,
                            diag.join(",")
                        )
                    },
                }
            }
            Err(_) => CheckResult {
                check: CHECK_LATTICE_GENERATED.into(),
                passed: false,
                detail: "not evaluated: the cone of valuations is not strictly convex".into(),
            },
        });

        let mut violations = Vec::new();
        for d in self.colors().filter(|d| d.color_type() == Some(ColorType::T)) {
            for &a in d.moved_by().unwrap() {
                let shared = self.colors().any(|o| o.name != d.name && o.moved_by().unwrap().contains(&a));
                if !shared {
                    violations.push(format!("simple root {a} moves the type-T color {:?} and no other color", d.name));
                }
            }
        }
        checks.push(CheckResult {
            check: CHECK_TYPE_T.into(),
            passed: violations.is_empty(),
            detail: violations.join("; "),
        });

        let full = self.stabilizer_levi(&SubsetF::all_colors());
        let mismatches: Vec<String> = self
            .colors()
            .filter(|d| d.color_type() == Some(ColorType::T))
            .filter(|d| self.stabilizer_levi(&SubsetF::excluding(&d.name)) != full)
            .map(|d| format!("removing {:?} changes the stabilizer parabolic", d.name))
            .collect();
        checks.push(CheckResult {
            check: CHECK_STABILIZER.into(),
            passed: mismatches.is_empty(),
            detail: mismatches.join("; "),
        });
        ValidationReport { checks }
    }

    pub fn weight_monoid(&self) -> Result<WeightMonoid> {
        Ok(self.cone()?.dual_monoid())
    }

    pub fn check_subset(&self, f: &SubsetF) -> Result<()> {
        if let Some(name) = &f.excluded_color {
            let d = self.divisor(name)?;
            if d.color_type() != Some(ColorType::T) {
                return Err(Error::Contract(format!(
                    "only a color of type T may be excluded from F, {name:?} is {}",
                    d.color_type().map_or("G-stable".to_string(), |t| format!("of type {t}"))
                )));
            }
        }
        Ok(())
    }

    fn stabilizer_levi(&self, f: &SubsetF) -> ParabolicSubset {
        let moved: BTreeSet<usize> =
            self.divisors.iter().filter(|d| f.contains(d)).flat_map(|d| d.moved_by().unwrap().iter().copied()).collect();
        ParabolicSubset::new((0..self.root_system.semisimple_rank()).filter(|i| !moved.contains(i)))
    }

    /// Levi simple roots of `P_F`: the simple roots moving no color in `F`.
    pub fn parabolic_of(&self, f: &SubsetF) -> Result<ParabolicSubset> {
        self.check_subset(f)?;
        let p = self.stabilizer_levi(f);
        let full = self.stabilizer_levi(&SubsetF::all_colors());
        if p != full {
            return Err(Error::Datum(format!(
                "P_F for F = D \\ {{{}}} differs from the stabilizer of the open B-orbit",
                f.excluded_color.as_deref().unwrap_or_default()
            )));
        }
        Ok(p)
    }

    /// Divisors outside `F`: the G-stable ones and the excluded color.
    pub fn outside(&self, f: &SubsetF) -> impl Iterator<Item = &DivisorRecord> {
        let f = f.clone();
        self.divisors.iter().filter(move |d| !f.contains(d))
    }

    /// The cone `E_Z` generated by `κ(D)` for `D ∉ F`.
    pub fn ez_cone(&self, f: &SubsetF) -> Result<Cone> {
        self.check_subset(f)?;
        Cone::build(self.rank(), self.outside(f).map(|d| d.kappa.clone()).collect())
    }

    /// `Γ_Z = Γ(E_Z)`.
    pub fn gamma_z(&self, f: &SubsetF) -> Result<WeightMonoid> {
        Ok(self.ez_cone(f)?.dual_monoid())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_times_torus() -> SphericalDatum {
        SphericalDatum::new(
            RootSystemData::of_type('A', 1, 1).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::color("y=0", DualVector::from_i64(&[1, 0]), ColorType::U, [0]),
                DivisorRecord::g_stable("z=0", DualVector::from_i64(&[0, 1])),
            ],
        )
        .unwrap()
    }

    fn sl2_mod_t() -> SphericalDatum {
        SphericalDatum::new(
            RootSystemData::of_type('A', 1, 0).unwrap(),
            Sublattice::new(1, vec![linalg::ints(&[2])]).unwrap(),
            vec![
                DivisorRecord::color("D+", DualVector::from_i64(&[1]), ColorType::T, [0]),
                DivisorRecord::color("D-", DualVector::from_i64(&[1]), ColorType::T, [0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn structural_errors() {
        let rs = RootSystemData::of_type('A', 1, 0).unwrap();
        let one = Sublattice::full(1);
        let k = DualVector::from_i64(&[1]);
        assert!(SphericalDatum::new(
            rs.clone(),
            one.clone(),
            vec![DivisorRecord::color("D", k.clone(), ColorType::U, [])]
        )
        .is_err());
        assert!(SphericalDatum::new(
            rs.clone(),
            one.clone(),
            vec![DivisorRecord::color("D", k.clone(), ColorType::U, [3])]
        )
        .is_err());
        assert!(SphericalDatum::new(
            rs.clone(),
            one.clone(),
            vec![DivisorRecord::g_stable("D", k.clone()), DivisorRecord::g_stable("D", k.clone())]
        )
        .is_err());
        assert!(SphericalDatum::new(rs, one, vec![DivisorRecord::g_stable("D", DualVector::from_i64(&[1, 0]))]).is_err());
    }

    #[test]
    fn validation_passes_on_models() {
        assert!(sl2_times_torus().validate().passed());
        assert!(sl2_mod_t().validate().passed());
    }

    #[test]
    fn lonely_type_t_color_fails() {
        let d = SphericalDatum::new(
            RootSystemData::of_type('A', 1, 0).unwrap(),
            Sublattice::full(1),
            vec![DivisorRecord::color("D", DualVector::from_i64(&[1]), ColorType::T, [0])],
        )
        .unwrap();
        let report = d.validate();
        assert!(!report.check(CHECK_TYPE_T).unwrap().passed);
        assert!(!report.check(CHECK_STABILIZER).unwrap().passed);
        assert!(d.parabolic_of(&SubsetF::excluding("D")).is_err());
    }

    #[test]
    fn monoid_generates_lattice() {
        let d = sl2_mod_t();
        assert!(d.validate().check(CHECK_LATTICE_GENERATED).unwrap().passed);
        assert_eq!(d.weight_monoid().unwrap().hilbert_basis, vec![LatticeVector::from_i64(&[1])]);
    }

    #[test]
    fn line_reported_with_witness() {
        let d = SphericalDatum::new(
            RootSystemData::of_types(&[], 2).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::g_stable("D1", DualVector::from_i64(&[1, 0])),
                DivisorRecord::g_stable("D2", DualVector::from_i64(&[-1, 0])),
            ],
        )
        .unwrap();
        let report = d.validate();
        let c = report.check(CHECK_STRICTLY_CONVEX).unwrap();
        assert!(!c.passed);
        assert!(c.detail.contains("(1,0)") || c.detail.contains("(-1,0)"), "{}", c.detail);
        assert!(!report.passed());
    }

    #[test]
    fn parabolic_examples() {
        assert!(sl2_times_torus().parabolic_of(&SubsetF::all_colors()).unwrap().levi_simple_roots.is_empty());
        let d = sl2_mod_t();
        assert!(d.parabolic_of(&SubsetF::excluding("D+")).unwrap().levi_simple_roots.is_empty());
        assert!(matches!(sl2_times_torus().parabolic_of(&SubsetF::excluding("y=0")), Err(Error::Contract(_))));
        assert!(matches!(sl2_times_torus().parabolic_of(&SubsetF::excluding("z=0")), Err(Error::Contract(_))));
    }

    #[test]
    fn slice_cone_and_monoid() {
        let d = sl2_times_torus();
        let ez = d.ez_cone(&SubsetF::all_colors()).unwrap();
        assert_eq!(ez.extremal_rays(), &[DualVector::from_i64(&[0, 1])]);
        assert_eq!(
            d.gamma_z(&SubsetF::all_colors()).unwrap().hilbert_basis,
            vec![LatticeVector::from_i64(&[-1, 0]), LatticeVector::from_i64(&[0, 1]), LatticeVector::from_i64(&[1, 0])]
        );
        assert_eq!(
            d.weight_monoid().unwrap().hilbert_basis,
            vec![LatticeVector::from_i64(&[0, 1]), LatticeVector::from_i64(&[1, 0])]
        );
        let t = sl2_mod_t();
        assert_eq!(t.ez_cone(&SubsetF::excluding("D+")).unwrap().extremal_rays(), &[DualVector::from_i64(&[1])]);
    }
}
