//! JSON datum files.
//!
//! ```json
//! {
//!   "cartan": {"ambient_rank": 2, "simple_roots": [[2, 0]], "simple_coroots": [[1, 0]]},
//!   "lattice_M": {"basis_rows": [[1, 0], [0, 1]]},
//!   "divisors": [
//!     {"name": "y=0", "kappa": [1, 0], "kind": "color", "color_type": "U", "moved_by": [0]},
//!     {"name": "z=0", "kappa": [0, 1], "kind": "g-stable"}
//!   ]
//! }
//! ```
//!
//! `kappa` is written in the basis of `N` dual to `basis_rows`; `moved_by`
//! holds 0-based indices into `simple_roots`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeVector, Sublattice};
use crate::linalg::{self, Integer};
use crate::roots::RootSystemData;
use crate::spherical::{ColorType, DivisorKind, DivisorRecord, SphericalDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub cartan: CartanSection,
    #[serde(rename = "lattice_M")]
    pub lattice_m: LatticeSection,
    pub divisors: Vec<DivisorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanSection {
    pub ambient_rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSection {
    pub basis_rows: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindTag {
    #[serde(rename = "color")]
    Color,
    #[serde(rename = "g-stable")]
    GStable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    pub name: String,
    pub kappa: Vec<i64>,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_type: Option<ColorType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moved_by: Option<Vec<usize>>,
}

fn small(v: &[Integer]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Datum(format!("{x} does not fit in a 64-bit datum entry"))))
        .collect()
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum serializes")
    }

    pub fn to_datum(&self) -> Result<SphericalDatum> {
        let c = &self.cartan;
        let roots = c.simple_roots.iter().map(|r| LatticeVector::character(linalg::ints(r))).collect();
        let coroots = c.simple_coroots.iter().map(|r| DualVector::from_i64(r)).collect();
        let rs = RootSystemData::new(c.ambient_rank, roots, coroots)?;
        let lattice =
            Sublattice::new(c.ambient_rank, self.lattice_m.basis_rows.iter().map(|r| linalg::ints(r)).collect())?;
        let divisors = self
            .divisors
            .iter()
            .map(|d| {
                let kappa = DualVector::from_i64(&d.kappa);
                match d.kind {
                    KindTag::GStable => {
                        if d.color_type.is_some() || d.moved_by.is_some() {
                            return Err(Error::Datum(format!("G-stable divisor {:?} has color fields", d.name)));
                        }
                        Ok(DivisorRecord::g_stable(&d.name, kappa))
                    }
                    KindTag::Color => {
                        let t = d
                            .color_type
                            .ok_or_else(|| Error::Datum(format!("color {:?} has no color_type", d.name)))?;
                        let moved = d.moved_by.clone().unwrap_or_default();
                        Ok(DivisorRecord::color(&d.name, kappa, t, moved))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SphericalDatum::new(rs, lattice, divisors)
    }

    pub fn from_datum(datum: &SphericalDatum) -> Result<Self> {
        let rs = datum.root_system();
        Ok(Self {
            cartan: CartanSection {
                ambient_rank: rs.ambient_rank(),
                simple_roots: rs.simple_roots().iter().map(|r| small(r.coords())).collect::<Result<_>>()?,
                simple_coroots: rs.simple_coroots().iter().map(|r| small(r.coords())).collect::<Result<_>>()?,
            },
            lattice_m: LatticeSection {
                basis_rows: datum.lattice().basis_rows().iter().map(|r| small(r)).collect::<Result<_>>()?,
            },
            divisors: datum
                .divisors()
                .iter()
                .map(|d| {
                    let (kind, color_type, moved_by) = match &d.kind {
                        DivisorKind::GStable => (KindTag::GStable, None, None),
                        DivisorKind::Color { color_type, moved_by } => {
                            (KindTag::Color, Some(*color_type), Some(moved_by.iter().copied().collect()))
                        }
                    };
                    Ok(DivisorEntry { name: d.name.clone(), kappa: small(d.kappa.coords())?, kind, color_type, moved_by })
                })
                .collect::<Result<_>>()?,
        })
    }
}

/// Parses a datum file and builds the structurally checked datum.
pub fn parse_datum(text: &str) -> Result<SphericalDatum> {
    DatumFile::parse(text)?.to_datum()
}

pub fn serialize_datum(datum: &SphericalDatum) -> Result<String> {
    Ok(DatumFile::from_datum(datum)?.to_json())
}
