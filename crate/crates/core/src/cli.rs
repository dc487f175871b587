//! Command-line front end.
//!
//! Every subcommand builds a [`Report`]; `--format json` serializes it and
//! the text format renders the same value, so both carry identical content.
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{self, LndDescriptor, LndKind};
use crate::cone::Cone;
use crate::datum::parse_datum;
use crate::error::{Error, Result};
use crate::lattice::{DualVector, LatticeTag, LatticeVector};
use crate::linalg::{Integer, Rational};
use crate::roots::{ParabolicSubset, Root, RootSystemData};
use crate::search::{self, Hypothesis, MoveWitness, RowStatus, WitnessOutcome};
use crate::spherical::{CheckResult, SphericalDatum, SubsetF};
use crate::toric::{enumerate_demazure_roots, AlgebraElement, ToricLnd};

#[derive(Parser, Debug)]
#[command(name = "demazure", version, about = "Demazure roots, LNDs and B-root subgroups of spherical data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the consistency conditions of a datum file.
    Validate { datum: PathBuf },
    /// Rays, facets and Hilbert basis of the weight monoid (of a datum, or of --cone).
    Monoid {
        datum: Option<PathBuf>,
        /// Cone generators in N, rows separated by ';' (e.g. "1,0;1,2").
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
        /// With a datum: use E_Z and Γ_Z for F = D \ {NAME}; implies the slice.
        #[arg(long)]
        exclude_color: Option<String>,
        /// With a datum: report Γ_Z instead of Γ.
        #[arg(long)]
        slice: bool,
    },
    /// Demazure roots of --cone, or of E_Z for a datum, in M-coordinates.
    Roots {
        datum: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
        #[arg(long)]
        exclude_color: Option<String>,
        /// Enumeration box: sup-norm bound on the roots.
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
    /// exp(t·scale·∂_μ) applied to an element of the semigroup algebra of --cone.
    Exp {
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        /// The Demazure root μ in M-coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Terms "λ:c" separated by ';' (e.g. "2,0:1;1,1:3/2").
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        scale: String,
    },
    /// Basis and dimension of the B-normalized LNDs of a weight on K[X_F].
    LndDim {
        datum: PathBuf,
        /// The weight μ in X(T)-coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        exclude_color: Option<String>,
    },
    /// Vertical / horizontal verdict for every basis LND of a weight.
    Classify {
        datum: PathBuf,
        /// The weight μ in X(T)-coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        exclude_color: Option<String>,
    },
    /// Test the ray hypothesis for a divisor and search a witness family.
    MoveDivisor {
        datum: PathBuf,
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value_t = search::DEFAULT_SEARCH_BOUND)]
        search_bound: u32,
    },
    /// Witnesses for every G-stable divisor.
    ReportGstable {
        datum: PathBuf,
        #[arg(long, default_value_t = search::DEFAULT_SEARCH_BOUND)]
        search_bound: u32,
    },
    /// The highest weights Ω of p_u, for a datum's P_F or for --type with --levi.
    Omega {
        datum: Option<PathBuf>,
        /// Root system type, e.g. "A3" or "B2,G2".
        #[arg(long = "type")]
        root_type: Option<String>,
        /// 0-based Levi simple roots, comma separated.
        #[arg(long, default_value = "")]
        levi: String,
        #[arg(long)]
        exclude_color: Option<String>,
    },
}

pub type Vector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub coefficients: Vec<i64>,
    pub weight: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemazureRow {
    pub rho: Vector,
    pub mu: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub t_degree: usize,
    pub weight: Vector,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorRow {
    pub mu: Vector,
    pub kind: String,
    /// The root α for a p_u term, the ray ρ for a toric term.
    pub index: Vector,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub descriptor: DescriptorRow,
    pub verdict: String,
    pub subtype: Option<String>,
    pub moved_divisor: Option<String>,
    pub candidates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRow {
    pub status: String,
    pub ray: Option<Vector>,
    pub offending: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub excluded_color: Option<String>,
    pub rho: Vector,
    /// `M`-coordinates.
    pub mu: Vector,
    pub lambda: Vector,
    /// `X(T)`-coordinates.
    pub mu_character: Vector,
    pub lambda_character: Vector,
    pub weight_family: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GStableRow {
    pub divisor: String,
    pub status: String,
    pub ray: Option<Vector>,
    pub offending: Vec<String>,
    pub witness: Option<WitnessRow>,
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Validate {
        passed: bool,
        checks: Vec<CheckResult>,
    },
    Monoid {
        rays: Vec<Vector>,
        facet_normals: Vec<Vector>,
        equations: Vec<Vector>,
        hilbert_basis: Vec<Vector>,
    },
    Roots {
        bound: u32,
        rays: Vec<Vector>,
        roots: Vec<DemazureRow>,
    },
    Exp {
        rho: Vector,
        mu: Vector,
        scale: String,
        polynomial: String,
        terms: Vec<ExpTerm>,
    },
    LndDim {
        weight: Vector,
        excluded_color: Option<String>,
        omega_mu: Vec<RootRow>,
        omega_mu0: Vec<RootRow>,
        basis: Vec<DescriptorRow>,
        dimension: usize,
    },
    Classify {
        weight: Vector,
        excluded_color: Option<String>,
        entries: Vec<ClassifyRow>,
    },
    MoveDivisor {
        divisor: String,
        hypothesis: HypothesisRow,
        witness: Option<WitnessRow>,
        search: Option<String>,
    },
    ReportGstable {
        rows: Vec<GStableRow>,
    },
    Omega {
        levi: Vec<usize>,
        roots: Vec<RootRow>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let code = match &report {
                Report::Validate { passed: false, .. } => 1,
                _ => 0,
            };
            CliOutput { code, stdout: render(&report, cli.format), stderr: String::new() }
        }
        Err(Failure::Invalid(report)) => CliOutput { code: 1, stdout: render(&report, cli.format), stderr: String::new() },
        Err(Failure::Error(e)) => {
            let code = match e {
                Error::Datum(_) | Error::NotStrictlyConvex { .. } | Error::Cartan(_) | Error::ZeroVector(_) => 1,
                _ => 2,
            };
            CliOutput { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => render_text(report),
    }
}

enum Failure {
    /// The datum failed validation; the validation report is printed instead.
    Invalid(Box<Report>),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn load(path: &PathBuf) -> std::result::Result<SphericalDatum, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let datum = parse_datum(&text)?;
    let report = datum.validate();
    if !report.passed() {
        return Err(Failure::Invalid(Box::new(Report::Validate { passed: false, checks: report.checks })));
    }
    Ok(datum)
}

fn subset(exclude: Option<String>) -> SubsetF {
    exclude.map_or_else(SubsetF::all_colors, |n| SubsetF::excluding(&n))
}

fn execute(command: Command) -> std::result::Result<Report, Failure> {
    Ok(match command {
        Command::Validate { datum } => {
            let text = std::fs::read_to_string(&datum)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", datum.display())))?;
            let report = parse_datum(&text)?.validate();
            Report::Validate { passed: report.passed(), checks: report.checks }
        }
        Command::Monoid { datum, cone, exclude_color, slice } => {
            let monoid = match (datum, cone) {
                (Some(path), None) => {
                    let d = load(&path)?;
                    if slice || exclude_color.is_some() {
                        d.gamma_z(&subset(exclude_color))?
                    } else {
                        d.weight_monoid()?
                    }
                }
                (None, Some(c)) => parse_cone(&c)?.dual_monoid(),
                _ => return Err(usage("give exactly one of a datum file or --cone").into()),
            };
            Report::Monoid {
                rays: dual_rows(monoid.cone.extremal_rays())?,
                facet_normals: rows(monoid.cone.facet_normals())?,
                equations: rows(monoid.cone.equations())?,
                hilbert_basis: rows(&monoid.hilbert_basis)?,
            }
        }
        Command::Roots { datum, cone, exclude_color, bound } => {
            let cone = match (datum, cone) {
                (Some(path), None) => load(&path)?.ez_cone(&subset(exclude_color))?,
                (None, Some(c)) => parse_cone(&c)?,
                _ => return Err(usage("give exactly one of a datum file or --cone").into()),
            };
            let roots = enumerate_demazure_roots(&cone, bound)
                .iter()
                .map(|r| Ok(DemazureRow { rho: small(r.rho.coords())?, mu: small(r.mu.coords())? }))
                .collect::<Result<_>>()?;
            Report::Roots { bound, rays: dual_rows(cone.extremal_rays())?, roots }
        }
        Command::Exp { cone, weight, element, scale } => {
            let cone = parse_cone(&cone)?;
            let mu = LatticeVector::weight(parse_vector(&weight)?);
            let scale = parse_rational(&scale)?;
            let element = parse_element(&element)?;
            let lnd = ToricLnd::new(&cone, mu)?.with_scale(scale.clone());
            let poly = lnd.exponentiate(&element)?;
            let mut terms = Vec::new();
            for (k, g) in poly.coefficients().iter().enumerate() {
                for (l, c) in g.terms() {
                    terms.push(ExpTerm { t_degree: k, weight: small(l.coords())?, coefficient: c.to_string() });
                }
            }
            Report::Exp {
                rho: small(lnd.root().rho.coords())?,
                mu: small(lnd.root().mu.coords())?,
                scale: scale.to_string(),
                polynomial: poly.to_string(),
                terms,
            }
        }
        Command::LndDim { datum, weight, exclude_color } => {
            let d = load(&datum)?;
            let mu = LatticeVector::character(parse_vector(&weight)?);
            let f = subset(exclude_color.clone());
            let (om, om0) = classify::omega_mu_sets(&d, &f, &mu)?;
            let basis = classify::lnd_space(&d, &f, &mu)?;
            Report::LndDim {
                weight: small(mu.coords())?,
                excluded_color: exclude_color,
                omega_mu: root_rows(&om)?,
                omega_mu0: root_rows(&om0)?,
                dimension: basis.len(),
                basis: basis.iter().map(descriptor_row).collect::<Result<_>>()?,
            }
        }
        Command::Classify { datum, weight, exclude_color } => {
            let d = load(&datum)?;
            let mu = LatticeVector::character(parse_vector(&weight)?);
            let f = subset(exclude_color.clone());
            let entries = classify::lnd_space(&d, &f, &mu)?
                .iter()
                .map(|desc| {
                    let c = classify::classify(&d, &f, desc)?;
                    Ok(ClassifyRow {
                        descriptor: descriptor_row(desc)?,
                        verdict: c.verdict.to_string(),
                        subtype: c.subtype.map(|s| s.to_string()),
                        moved_divisor: c.moved_divisor,
                        candidates: c.candidates,
                    })
                })
                .collect::<Result<_>>()?;
            Report::Classify { weight: small(mu.coords())?, excluded_color: exclude_color, entries }
        }
        Command::MoveDivisor { datum, divisor, search_bound } => {
            let d = load(&datum)?;
            let h = search::hypothesis_test(&d, &divisor)?;
            let (witness, search) = match &h {
                Hypothesis::Holds(_) => match search::find_witness(&d, &divisor, search_bound)? {
                    WitnessOutcome::Found(w) => (Some(witness_row(&d, &w)?), None),
                    WitnessOutcome::Inconclusive { stage, bound, .. } => {
                        (None, Some(format!("inconclusive: no {stage} within search bound {bound}")))
                    }
                },
                _ => (None, None),
            };
            Report::MoveDivisor { divisor, hypothesis: hypothesis_row(&h)?, witness, search }
        }
        Command::ReportGstable { datum, search_bound } => {
            let d = load(&datum)?;
            let rows = search::report_gstable(&d, search_bound)?
                .into_iter()
                .map(|r| {
                    let flag = r.flagged.then(|| search::FLAG_MESSAGE.to_string());
                    Ok(match r.status {
                        RowStatus::Success(w) => GStableRow {
                            divisor: r.divisor,
                            status: "success".into(),
                            ray: Some(small(w.rho.coords())?),
                            offending: Vec::new(),
                            witness: Some(witness_row(&d, &w)?),
                            flag,
                        },
                        RowStatus::HypothesisFails { ray, offending } => GStableRow {
                            divisor: r.divisor,
                            status: "hypothesis-fails".into(),
                            ray: ray.map(|x| small(x.coords())).transpose()?,
                            offending,
                            witness: None,
                            flag,
                        },
                        RowStatus::Inconclusive { stage, bound } => GStableRow {
                            divisor: r.divisor,
                            status: format!("inconclusive: no {stage} within search bound {bound}"),
                            ray: None,
                            offending: Vec::new(),
                            witness: None,
                            flag,
                        },
                    })
                })
                .collect::<Result<_>>()?;
            Report::ReportGstable { rows }
        }
        Command::Omega { datum, root_type, levi, exclude_color } => {
            let (rs, p) = match (datum, root_type) {
                (Some(path), None) => {
                    let d = load(&path)?;
                    let p = d.parabolic_of(&subset(exclude_color))?;
                    (d.root_system().clone(), p)
                }
                (None, Some(t)) => {
                    let rs = parse_root_type(&t)?;
                    let levi: Vec<usize> = if levi.trim().is_empty() {
                        Vec::new()
                    } else {
                        levi.split(',')
                            .map(|s| s.trim().parse().map_err(|_| usage(&format!("bad Levi index {s:?}"))))
                            .collect::<Result<_>>()?
                    };
                    let p = ParabolicSubset::new(levi);
                    rs.check_parabolic(&p)?;
                    (rs, p)
                }
                _ => return Err(usage("give exactly one of a datum file or --type").into()),
            };
            Report::Omega {
                levi: p.levi_simple_roots.iter().copied().collect(),
                roots: root_rows(&rs.omega(&p).roots)?,
            }
        }
    })
}

fn usage(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn small(v: &[Integer]) -> Result<Vector> {
    v.iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Contract(format!("{x} exceeds the 64-bit report range"))))
        .collect()
}

fn rows(v: &[LatticeVector]) -> Result<Vec<Vector>> {
    v.iter().map(|x| small(x.coords())).collect()
}

fn dual_rows(v: &[DualVector]) -> Result<Vec<Vector>> {
    v.iter().map(|x| small(x.coords())).collect()
}

fn root_rows(roots: &[Root]) -> Result<Vec<RootRow>> {
    roots
        .iter()
        .map(|r| Ok(RootRow { coefficients: r.coefficients.clone(), weight: small(r.weight.coords())? }))
        .collect()
}

fn descriptor_row(d: &LndDescriptor) -> Result<DescriptorRow> {
    let (kind, index) = match &d.kind {
        LndKind::PuTerm(a) => ("pu_term", small(a.weight.coords())?),
        LndKind::ToricTerm(rho) => ("toric_term", small(rho.coords())?),
    };
    Ok(DescriptorRow { mu: small(d.mu.coords())?, kind: kind.into(), index, coefficient: d.coefficient.to_string() })
}

fn hypothesis_row(h: &Hypothesis) -> Result<HypothesisRow> {
    Ok(match h {
        Hypothesis::Holds(rho) => HypothesisRow {
            status: "holds".into(),
            ray: Some(small(rho.coords())?),
            offending: Vec::new(),
            detail: String::new(),
        },
        Hypothesis::Fails { ray, offending, reason } => HypothesisRow {
            status: "fails".into(),
            ray: ray.as_ref().map(|x| small(x.coords())).transpose()?,
            offending: offending.clone(),
            detail: reason.clone(),
        },
        Hypothesis::Impossible(t) => HypothesisRow {
            status: "impossible".into(),
            ray: None,
            offending: Vec::new(),
            detail: format!("a color of type {t} is preserved by every B-root subgroup"),
        },
    })
}

fn witness_row(d: &SphericalDatum, w: &MoveWitness) -> Result<WitnessRow> {
    Ok(WitnessRow {
        excluded_color: w.excluded_color.clone(),
        rho: small(w.rho.coords())?,
        mu: small(w.mu.coords())?,
        lambda: small(w.lambda.coords())?,
        mu_character: small(d.to_character(&w.mu)?.coords())?,
        lambda_character: small(d.to_character(&w.lambda)?.coords())?,
        weight_family: search::WEIGHT_FAMILY.into(),
    })
}

pub fn parse_vector(s: &str) -> Result<Vec<Integer>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<Integer>().map_err(|_| usage(&format!("bad integer {x:?}"))))
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| usage(&format!("bad rational {s:?}")))
}

/// Parses "1,0;1,2" into a cone with those generators.
pub fn parse_cone(s: &str) -> Result<Cone> {
    let gens: Vec<DualVector> = s
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| parse_vector(r).map(DualVector::new))
        .collect::<Result<_>>()?;
    let rank = gens.first().map(DualVector::rank).ok_or_else(|| usage("--cone needs at least one generator"))?;
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(usage("cone generators have different lengths"));
    }
    Cone::build(rank, gens)
}

/// Parses "2,0:1;1,1:3/2" into `f(2,0) + 3/2 f(1,1)`; a missing coefficient means 1.
pub fn parse_element(s: &str) -> Result<AlgebraElement> {
    let mut e = AlgebraElement::zero();
    for term in s.split(';').filter(|t| !t.trim().is_empty()) {
        let (w, c) = match term.split_once(':') {
            Some((w, c)) => (w, parse_rational(c)?),
            None => (term, Rational::from_integer(1.into())),
        };
        e.add_term(LatticeVector::new(parse_vector(w)?, LatticeTag::Weights), c);
    }
    Ok(e)
}

/// Parses "A3" or "B2,G2" (no central torus).
pub fn parse_root_type(s: &str) -> Result<RootSystemData> {
    let parts: Vec<(char, usize)> = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            let mut chars = p.chars();
            let series = chars.next().ok_or_else(|| usage("empty root system type"))?.to_ascii_uppercase();
            let n = chars.as_str().parse().map_err(|_| usage(&format!("bad root system type {p:?}")))?;
            Ok((series, n))
        })
        .collect::<Result<_>>()?;
    RootSystemData::of_types(&parts, 0)
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn opt_text(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or("-")
}

pub fn render_text(report: &Report) -> String {
    let mut s = String::new();
    let o = &mut s;
    match report {
        Report::Validate { passed, checks } => {
            for c in checks {
                let _ = write!(o, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.check);
                if !c.detail.is_empty() {
                    let _ = write!(o, ": {}", c.detail);
                }
                o.push('\n');
            }
            let _ = writeln!(o, "{}", if *passed { "datum is valid" } else { "datum is invalid" });
        }
        Report::Monoid { rays, facet_normals, equations, hilbert_basis } => {
            let _ = writeln!(o, "rays: {}", list(rays));
            let _ = writeln!(o, "facet normals: {}", list(facet_normals));
            let _ = writeln!(o, "equations: {}", list(equations));
            let _ = writeln!(o, "hilbert basis ({}): {}", hilbert_basis.len(), list(hilbert_basis));
        }
        Report::Roots { bound, rays, roots } => {
            let _ = writeln!(o, "rays: {}", list(rays));
            let _ = writeln!(o, "demazure roots with sup-norm <= {bound}: {}", roots.len());
            for r in roots {
                let _ = writeln!(o, "  rho={} mu={}", vec_text(&r.rho), vec_text(&r.mu));
            }
        }
        Report::Exp { rho, mu, scale, polynomial, .. } => {
            let _ = writeln!(o, "rho={} mu={} scale={scale}", vec_text(rho), vec_text(mu));
            let _ = writeln!(o, "{polynomial}");
        }
        Report::LndDim { weight, excluded_color, omega_mu, omega_mu0, basis, dimension } => {
            let _ = writeln!(o, "weight: {}", vec_text(weight));
            let _ = writeln!(o, "excluded color: {}", opt_text(excluded_color));
            let _ = writeln!(o, "omega_mu: {}", roots_text(omega_mu));
            let _ = writeln!(o, "omega_mu0: {}", roots_text(omega_mu0));
            let _ = writeln!(o, "dimension: {dimension}");
            for b in basis {
                let _ = writeln!(o, "  {}", descriptor_text(b));
            }
        }
        Report::Classify { weight, excluded_color, entries } => {
            let _ = writeln!(o, "weight: {}", vec_text(weight));
            let _ = writeln!(o, "excluded color: {}", opt_text(excluded_color));
            if entries.is_empty() {
                let _ = writeln!(o, "no B-normalized LNDs of this weight");
            }
            for e in entries {
                let _ = write!(o, "{}: {}", descriptor_text(&e.descriptor), e.verdict);
                if let Some(st) = &e.subtype {
                    let _ = write!(o, " {st}");
                }
                if let Some(m) = &e.moved_divisor {
                    let _ = write!(o, ", moves {m}");
                }
                if !e.candidates.is_empty() {
                    let _ = write!(o, ", divisors on the ray: {}", e.candidates.join(", "));
                }
                o.push('\n');
            }
        }
        Report::MoveDivisor { divisor, hypothesis, witness, search } => {
            let _ = writeln!(o, "divisor: {divisor}");
            let _ = write!(o, "hypothesis: {}", hypothesis.status);
            if let Some(r) = &hypothesis.ray {
                let _ = write!(o, " ray={}", vec_text(r));
            }
            if !hypothesis.offending.is_empty() {
                let _ = write!(o, " shared with {}", hypothesis.offending.join(", "));
            }
            if !hypothesis.detail.is_empty() {
                let _ = write!(o, " ({})", hypothesis.detail);
            }
            o.push('\n');
            if let Some(w) = witness {
                witness_text(o, w);
            }
            if let Some(st) = search {
                let _ = writeln!(o, "search: {st}");
            }
        }
        Report::ReportGstable { rows } => {
            if rows.is_empty() {
                let _ = writeln!(o, "no G-stable divisors");
            }
            for r in rows {
                let _ = write!(o, "{}: {}", r.divisor, r.status);
                if let Some(ray) = &r.ray {
                    let _ = write!(o, " ray={}", vec_text(ray));
                }
                if !r.offending.is_empty() {
                    let _ = write!(o, " shared with {}", r.offending.join(", "));
                }
                o.push('\n');
                if let Some(w) = &r.witness {
                    witness_text(o, w);
                }
                if let Some(flag) = &r.flag {
                    let _ = writeln!(o, "  FLAG: {flag}");
                }
            }
        }
        Report::Omega { levi, roots } => {
            let l: Vec<String> = levi.iter().map(ToString::to_string).collect();
            let _ = writeln!(o, "levi simple roots: {{{}}}", l.join(","));
            let _ = writeln!(o, "omega ({}):", roots.len());
            for r in roots {
                let _ = writeln!(o, "  coefficients={} weight={}", vec_text(&r.coefficients), vec_text(&r.weight));
            }
        }
    }
    s
}

fn list(v: &[Vector]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|x| vec_text(x)).collect::<Vec<_>>().join(" ")
}

fn roots_text(v: &[RootRow]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|r| vec_text(&r.weight)).collect::<Vec<_>>().join(" ")
}

fn descriptor_text(d: &DescriptorRow) -> String {
    let label = if d.kind == "pu_term" { "alpha" } else { "rho" };
    format!("{} {label}={} mu={}", d.kind, vec_text(&d.index), vec_text(&d.mu))
}

fn witness_text(o: &mut String, w: &WitnessRow) {
    let _ = writeln!(
        o,
        "  witness: rho={} mu={} lambda={} (in X(T): mu={} lambda={})",
        vec_text(&w.rho),
        vec_text(&w.mu),
        vec_text(&w.lambda),
        vec_text(&w.mu_character),
        vec_text(&w.lambda_character)
    );
    if let Some(c) = &w.excluded_color {
        let _ = writeln!(o, "  F excludes {c}");
    }
    let _ = writeln!(o, "  family: {}", w.weight_family);
}
