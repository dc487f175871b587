//! Witnesses for B-root subgroups moving a given divisor.
//!
//! If `κ(D)` spans an extremal ray `ρ` of `E` that carries no other `κ(D′)`,
//! pick `μ ∈ R_ρ(E_Z)` and `λ ∈ Γ` with `⟨ρ, λ⟩ = 0` and `⟨κ(D′), λ⟩ > 0` for
//! every `D′ ∈ F`. Then `Nλ + μ ∈ R_ρ(E_Z)` for all `N ≥ 0`, and for all
//! sufficiently large `N` the corresponding LND extends from `K[X_F]` to
//! `K[X]`. The threshold depends on ring generators that a datum does not
//! record, so it is reported symbolically.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pairing, primitive, DualVector, LatticeVector};
use crate::linalg::Integer;
use crate::spherical::{ColorType, DivisorKind, DivisorRecord, SphericalDatum, SubsetF};
use crate::toric::is_demazure_root;

pub const DEFAULT_SEARCH_BOUND: u32 = 50;

pub const WEIGHT_FAMILY: &str = "N*lambda + mu for all sufficiently large integers N (threshold not computable from the datum)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// `κ(D)` spans the extremal ray `ρ` of `E` and no other divisor lies on it.
    Holds(DualVector),
    /// Other divisors share the ray of `κ(D)`, or that ray is not extremal in `E`.
    Fails { ray: Option<DualVector>, offending: Vec<String>, reason: String },
    /// Colors of type U or N are preserved by every B-root subgroup.
    Impossible(ColorType),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Holds(rho) => write!(f, "holds on ray {rho}"),
            Hypothesis::Fails { reason, .. } => write!(f, "fails: {reason}"),
            Hypothesis::Impossible(t) => write!(f, "impossible: colors of type {t} are never moved"),
        }
    }
}

pub fn hypothesis_test(datum: &SphericalDatum, divisor: &str) -> Result<Hypothesis> {
    let d = datum.divisor(divisor)?;
    if let Some(t @ (ColorType::U | ColorType::N)) = d.color_type() {
        return Ok(Hypothesis::Impossible(t));
    }
    if d.kappa.is_zero() {
        return Ok(Hypothesis::Fails { ray: None, offending: Vec::new(), reason: "kappa is zero".into() });
    }
    let rho = primitive(&d.kappa)?;
    let e = datum.cone()?;
    let mut offending: Vec<String> = Vec::new();
    for o in datum.divisors() {
        if o.name != d.name && !o.kappa.is_zero() && crate::cone::ray_membership(&o.kappa, &rho)? {
            offending.push(o.name.clone());
        }
    }
    offending.sort();
    if !offending.is_empty() {
        let reason = format!("the ray {rho} also carries {}", offending.join(", "));
        return Ok(Hypothesis::Fails { ray: Some(rho), offending, reason });
    }
    if !e.extremal_rays().contains(&rho) {
        let reason = format!("{rho} is not an extremal ray of the valuation cone");
        return Ok(Hypothesis::Fails { ray: Some(rho), offending, reason });
    }
    Ok(Hypothesis::Holds(rho))
}

/// `F = D` for a G-stable divisor, `F = D \ {D}` for a color of type T.
pub fn subset_for(d: &DivisorRecord) -> SubsetF {
    match d.kind {
        DivisorKind::GStable => SubsetF::all_colors(),
        DivisorKind::Color { .. } => SubsetF::excluding(&d.name),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveWitness {
    pub divisor: String,
    pub excluded_color: Option<String>,
    pub rho: DualVector,
    /// `M`-coordinates.
    pub mu: LatticeVector,
    /// `M`-coordinates.
    pub lambda: LatticeVector,
}

impl MoveWitness {
    /// `Nλ + μ` in `M`-coordinates.
    pub fn member(&self, n: u64) -> LatticeVector {
        &self.lambda.scale(&Integer::from(n)) + &self.mu
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStage {
    Mu,
    Lambda,
}

impl fmt::Display for SearchStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStage::Mu => "mu",
            SearchStage::Lambda => "lambda",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(MoveWitness),
    /// Nothing within the bound; this says nothing about existence.
    Inconclusive { rho: DualVector, stage: SearchStage, bound: u32 },
}

/// Searches shells of growing sup-norm for `μ` and `λ`, each minimal by (sup-norm, L1-norm, lex).
pub fn find_witness(datum: &SphericalDatum, divisor: &str, search_bound: u32) -> Result<WitnessOutcome> {
    let rho = match hypothesis_test(datum, divisor)? {
        Hypothesis::Holds(rho) => rho,
        other => return Err(Error::Contract(format!("cannot search a witness for {divisor:?}: hypothesis {other}"))),
    };
    let d = datum.divisor(divisor)?;
    let f = subset_for(d);
    let ez = datum.ez_cone(&f)?;
    let rank = datum.rank();

    let Some(mu) = smallest(rank, search_bound, |mu| {
        is_demazure_root(&ez, mu).ok().flatten().as_ref() == Some(&rho)
    }) else {
        return Ok(WitnessOutcome::Inconclusive { rho, stage: SearchStage::Mu, bound: search_bound });
    };

    let in_f: Vec<&DualVector> = datum.divisors().iter().filter(|x| f.contains(x)).map(|x| &x.kappa).collect();
    let all: Vec<&DualVector> = datum.divisors().iter().map(|x| &x.kappa).collect();
    let lambda = smallest(rank, search_bound, |lam| {
        !lam.is_zero()
            && pairing(&rho, lam).is_ok_and(|v| v.is_zero())
            && all.iter().all(|k| !pairing(k, lam).unwrap().is_negative())
            && in_f.iter().all(|k| pairing(k, lam).unwrap().is_positive())
    });
    let Some(lambda) = lambda else {
        return Ok(WitnessOutcome::Inconclusive { rho, stage: SearchStage::Lambda, bound: search_bound });
    };
    Ok(WitnessOutcome::Found(MoveWitness {
        divisor: divisor.to_string(),
        excluded_color: f.excluded_color,
        rho,
        mu,
        lambda,
    }))
}

/// The smallest weight by (sup, L1, lex) satisfying `pred`, scanning shells up to `bound`.
fn smallest(rank: usize, bound: u32, pred: impl Fn(&LatticeVector) -> bool) -> Option<LatticeVector> {
    let b = i64::from(bound);
    for s in 0..=b {
        let mut best: Option<LatticeVector> = None;
        let mut point = vec![-s; rank];
        loop {
            if point.iter().any(|x| x.abs() == s) || rank == 0 {
                let v = LatticeVector::from_i64(&point);
                if best.as_ref().is_none_or(|w| v.size_key() < w.size_key()) && pred(&v) {
                    best = Some(v);
                }
            }
            let mut i = 0;
            while i < rank && point[i] == s {
                point[i] = -s;
                i += 1;
            }
            if i == rank {
                break;
            }
            point[i] += 1;
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Success(MoveWitness),
    HypothesisFails { ray: Option<DualVector>, offending: Vec<String> },
    Inconclusive { stage: SearchStage, bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub divisor: String,
    pub status: RowStatus,
    /// Set on every failing row: G-stable divisors of a genuine spherical variety always pass.
    pub flagged: bool,
}

pub const FLAG_MESSAGE: &str =
    "datum violates the expectation that every G-stable divisor satisfies the ray hypothesis";

/// One row per G-stable divisor, in datum order.
pub fn report_gstable(datum: &SphericalDatum, search_bound: u32) -> Result<Vec<ReportRow>> {
    datum
        .g_stable()
        .map(|d| {
            let status = match hypothesis_test(datum, &d.name)? {
                Hypothesis::Holds(_) => match find_witness(datum, &d.name, search_bound)? {
                    WitnessOutcome::Found(w) => RowStatus::Success(w),
                    WitnessOutcome::Inconclusive { stage, bound, .. } => RowStatus::Inconclusive { stage, bound },
                },
                Hypothesis::Fails { ray, offending, .. } => RowStatus::HypothesisFails { ray, offending },
                Hypothesis::Impossible(_) => unreachable!("G-stable divisors have no color type"),
            };
            let flagged = !matches!(status, RowStatus::Success(_));
            Ok(ReportRow { divisor: d.name.clone(), status, flagged })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Sublattice;
    use crate::roots::RootSystemData;

    fn datum(rs: RootSystemData, m: Sublattice, divisors: Vec<DivisorRecord>) -> SphericalDatum {
        SphericalDatum::new(rs, m, divisors).unwrap()
    }

    fn quadrant() -> SphericalDatum {
        datum(
            RootSystemData::of_types(&[], 2).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::g_stable("x=0", DualVector::from_i64(&[1, 0])),
                DivisorRecord::g_stable("y=0", DualVector::from_i64(&[0, 1])),
            ],
        )
    }

    fn sl2_times_torus() -> SphericalDatum {
        datum(
            RootSystemData::of_type('A', 1, 1).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::color("y=0", DualVector::from_i64(&[1, 0]), ColorType::U, [0]),
                DivisorRecord::g_stable("z=0", DualVector::from_i64(&[0, 1])),
            ],
        )
    }

    fn witness(d: &SphericalDatum, name: &str) -> MoveWitness {
        match find_witness(d, name, DEFAULT_SEARCH_BOUND).unwrap() {
            WitnessOutcome::Found(w) => w,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn model_witness() {
        let d = sl2_times_torus();
        assert_eq!(hypothesis_test(&d, "z=0").unwrap(), Hypothesis::Holds(DualVector::from_i64(&[0, 1])));
        let w = witness(&d, "z=0");
        assert_eq!(w.mu, LatticeVector::from_i64(&[0, -1]));
        assert_eq!(w.lambda, LatticeVector::from_i64(&[1, 0]));
        assert_eq!(w.member(3), LatticeVector::from_i64(&[3, -1]));
    }

    #[test]
    fn quadrant_witness() {
        let w = witness(&quadrant(), "x=0");
        assert_eq!(w.rho, DualVector::from_i64(&[1, 0]));
        assert_eq!(w.mu, LatticeVector::from_i64(&[-1, 0]));
        assert_eq!(w.lambda, LatticeVector::from_i64(&[0, 1]));
        let rows = report_gstable(&quadrant(), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| !r.flagged));
    }

    #[test]
    fn unmovable_and_shared_rays() {
        let plane = datum(
            RootSystemData::of_type('A', 1, 0).unwrap(),
            Sublattice::full(1),
            vec![DivisorRecord::color("y=0", DualVector::from_i64(&[1]), ColorType::U, [0])],
        );
        assert_eq!(hypothesis_test(&plane, "y=0").unwrap(), Hypothesis::Impossible(ColorType::U));
        assert!(report_gstable(&plane, 5).unwrap().is_empty());
        assert!(matches!(find_witness(&plane, "y=0", 5), Err(Error::Contract(_))));

        let sl2_t = datum(
            RootSystemData::of_type('A', 1, 0).unwrap(),
            Sublattice::new(1, vec![vec![2.into()]]).unwrap(),
            vec![
                DivisorRecord::color("D+", DualVector::from_i64(&[1]), ColorType::T, [0]),
                DivisorRecord::color("D-", DualVector::from_i64(&[1]), ColorType::T, [0]),
            ],
        );
        match hypothesis_test(&sl2_t, "D+").unwrap() {
            Hypothesis::Fails { ray, offending, .. } => {
                assert_eq!(ray, Some(DualVector::from_i64(&[1])));
                assert_eq!(offending, vec!["D-".to_string()]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bound_exhaustion_is_inconclusive() {
        // Γ ∩ ρ^⊥ = {0}: no λ exists, so the search must run out.
        let d = datum(
            RootSystemData::of_type('A', 1, 1).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::color("c", DualVector::from_i64(&[1, 1]), ColorType::U, [0]),
                DivisorRecord::color("c2", DualVector::from_i64(&[-1, 1]), ColorType::U, [0]),
                DivisorRecord::g_stable("z=0", DualVector::from_i64(&[0, 1])),
            ],
        );
        assert!(matches!(hypothesis_test(&d, "z=0").unwrap(), Hypothesis::Fails { .. }));

        let d = datum(
            RootSystemData::of_type('A', 1, 1).unwrap(),
            Sublattice::full(2),
            vec![
                DivisorRecord::color("c", DualVector::from_i64(&[1, 2]), ColorType::U, [0]),
                DivisorRecord::g_stable("z=0", DualVector::from_i64(&[1, 0])),
            ],
        );
        match find_witness(&d, "z=0", 3).unwrap() {
            WitnessOutcome::Found(w) => {
                assert_eq!(w.lambda, LatticeVector::from_i64(&[0, 1]));
            }
            other => panic!("{other:?}"),
        }
        let rows = report_gstable(&d, 0).unwrap();
        assert!(matches!(rows[0].status, RowStatus::Inconclusive { stage: SearchStage::Mu, bound: 0 }));
        assert!(rows[0].flagged);
    }

    #[test]
    fn order_independent() {
        let a = sl2_times_torus();
        let mut divs = a.divisors().to_vec();
        divs.reverse();
        let b = datum(a.root_system().clone(), a.lattice().clone(), divs);
        assert_eq!(hypothesis_test(&a, "z=0").unwrap(), hypothesis_test(&b, "z=0").unwrap());
        assert_eq!(find_witness(&a, "z=0", 10).unwrap(), find_witness(&b, "z=0", 10).unwrap());
    }
}
