//! Browser bindings. Every call takes text inputs in the CLI syntax and
//! returns a JSON string, either `{"ok": ...}` or `{"error": "..."}`.

use demazure::cli::{parse_cone, parse_element, parse_rational, parse_vector};
use demazure::linalg::Integer;
use demazure::toric::enumerate_demazure_roots;
use demazure::{Cone, Error, LatticeVector, Result, ToricLnd};
use num_traits::ToPrimitive;
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

type Vector = Vec<i64>;

#[derive(Serialize, Debug, PartialEq)]
pub struct ConeView {
    pub rank: usize,
    pub rays: Vec<Vector>,
    pub facet_normals: Vec<Vector>,
    pub hilbert_basis: Vec<Vector>,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct RootView {
    pub rho: Vector,
    pub mu: Vector,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct TermView {
    pub t_degree: usize,
    pub weight: Vector,
    pub coefficient: String,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct ExpView {
    pub rho: Vector,
    pub terms: Vec<TermView>,
    pub text: String,
}

fn small(v: &[Integer]) -> Result<Vector> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Contract(format!("coordinate {x} does not fit in 64 bits"))))
        .collect()
}

fn json<T: Serialize>(r: Result<T>) -> String {
    let value = match r {
        Ok(v) => serde_json::json!({ "ok": v }),
        Err(e) => serde_json::json!({ "error": e.to_string() }),
    };
    value.to_string()
}

/// Rays, facet normals and the Hilbert basis of the dual monoid.
pub fn cone_view(cone: &str) -> Result<ConeView> {
    let cone = parse_cone(cone)?;
    Ok(ConeView {
        rank: cone.rank(),
        rays: cone.extremal_rays().iter().map(|r| small(r.coords())).collect::<Result<_>>()?,
        facet_normals: cone.facet_normals().iter().map(|n| small(n.coords())).collect::<Result<_>>()?,
        hilbert_basis: cone.dual_monoid().hilbert_basis.iter().map(|h| small(h.coords())).collect::<Result<_>>()?,
    })
}

/// Demazure roots with sup norm at most `bound`.
pub fn root_views(cone: &str, bound: u32) -> Result<Vec<RootView>> {
    let cone = parse_cone(cone)?;
    enumerate_demazure_roots(&cone, bound)
        .iter()
        .map(|r| Ok(RootView { rho: small(r.rho.coords())?, mu: small(r.mu.coords())? }))
        .collect()
}

/// `exp(t·c·∂_μ)` applied to an element such as `"0,1:1;1,1:2"`.
pub fn exp_view(cone: &str, weight: &str, element: &str, scale: &str) -> Result<ExpView> {
    let cone: Cone = parse_cone(cone)?;
    let lnd = ToricLnd::new(&cone, LatticeVector::weight(parse_vector(weight)?))?.with_scale(parse_rational(scale)?);
    let poly = lnd.exponentiate(&parse_element(element)?)?;
    let mut terms = Vec::new();
    for (k, g) in poly.coefficients().iter().enumerate() {
        for (l, c) in g.terms() {
            terms.push(TermView { t_degree: k, weight: small(l.coords())?, coefficient: c.to_string() });
        }
    }
    Ok(ExpView { rho: small(lnd.root().rho.coords())?, terms, text: poly.to_string() })
}

#[wasm_bindgen]
pub fn describe_cone(cone: &str) -> String {
    json(cone_view(cone))
}

#[wasm_bindgen]
pub fn demazure_roots(cone: &str, bound: u32) -> String {
    json(root_views(cone, bound))
}

#[wasm_bindgen]
pub fn exponentiate(cone: &str, weight: &str, element: &str, scale: &str) -> String {
    json(exp_view(cone, weight, element, scale))
}
