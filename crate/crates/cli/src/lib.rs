//! Analysis pipeline behind the `cheeger` binary: one domain in, one
//! report out, plus the corpus suite and the exit-code policy.

use std::path::Path;
use std::time::Instant;

use cheeger_core::cheeger::{
    certify_lower_bound, cheeger_constant, default_tolerance, subdomain_bound_suite,
    CertificateReport, CheegerResult, CheegerSummary, CutMetricStencil, StencilKind, DEFAULT_TOL_H,
};
use cheeger_core::check::{slack, DEFAULT_REL_SLACK};
use cheeger_core::distance::{
    bonnesen_check, coarea_check, distance_to_boundary, divergence_integral, finalest_check_with, inradius,
    makai_field, reduced_inradius, DEFAULT_LEVELS,
};
use cheeger_core::geometry::{grid_area, rasterize};
use cheeger_core::spectral::{check_cheeger_inequality, check_makai, smallest_eigenvalue, DirichletLaplacian, EigenResult, EigenSummary};
use cheeger_core::{DomainSpec, Error, GridDomain, InequalityCheck, Polygon, Relation, ScalarField};
use serde::{Deserialize, Serialize};

pub mod svg;

/// Largest coarea defect accepted by the report.
pub const COAREA_TOLERANCE: f64 = 0.03;
/// Random subsets tested by the suite's soundness and subdomain rows.
pub const SUITE_SAMPLES: usize = 40;
pub const SUITE_SEED: u64 = 11;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Overrides the resolution stored in the spec.
    pub resolution: Option<usize>,
    pub stencil: StencilKind,
    pub tol_h: f64,
    pub levels: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { resolution: None, stencil: StencilKind::Sixteen, tol_h: DEFAULT_TOL_H, levels: DEFAULT_LEVELS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainMeta {
    pub name: String,
    pub kind: String,
    pub resolution: usize,
    pub cell: f64,
    pub interior_cells: usize,
    pub stencil: StencilKind,
    pub levels: usize,
    pub tol_h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    /// Exact polygon measures.
    pub area: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub reduced_inradius: f64,
    /// `Δ²` times the number of interior cells.
    pub grid_area: f64,
    pub convex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    /// `λ >= h_lower² / 4`.
    pub cheeger_ineq: InequalityCheck,
    /// `λ >= 1 / (4 ρ̃²)`.
    pub makai: InequalityCheck,
    /// `ρ|∂S| >= |S| + πρ²`.
    pub bonnesen: InequalityCheck,
    /// `|∫L_t dt − |Ω|| / |Ω| <= 3%`.
    pub coarea_defect: InequalityCheck,
    /// `(1/ρ)∫_0^ρ (L_t − L_0) dt <= −πρ`.
    pub finalest: InequalityCheck,
}

impl Checks {
    pub fn named(&self) -> [(&'static str, &InequalityCheck); 5] {
        [
            ("cheeger_ineq", &self.cheeger_ineq),
            ("makai", &self.makai),
            ("bonnesen", &self.bonnesen),
            ("coarea_defect", &self.coarea_defect),
            ("finalest", &self.finalest),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub cheeger_s: f64,
    pub spectral_s: f64,
    pub checks_s: f64,
    pub total_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub domain: DomainMeta,
    pub geometry: GeometryReport,
    pub cheeger: CheegerSummary,
    /// The flow field at `h_lower` checked as a lower-bound certificate.
    pub certificate: CertificateReport,
    pub spectral: EigenSummary,
    pub checks: Checks,
    pub timings: Timings,
}

impl AnalysisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.named().iter().all(|(_, c)| c.holds) && self.certificate.passed()
    }

    /// The report with its timings zeroed, for comparisons across runs.
    pub fn without_timings(&self) -> AnalysisReport {
        AnalysisReport { timings: Timings { cheeger_s: 0.0, spectral_s: 0.0, checks_s: 0.0, total_s: 0.0 }, ..self.clone() }
    }
}

/// Everything computed for one domain.
pub struct Analysis {
    pub report: AnalysisReport,
    pub polygon: Polygon,
    pub grid: GridDomain,
    pub phi: ScalarField,
    pub cheeger: CheegerResult,
    pub eigen: EigenResult,
}

pub fn load_spec(path: &Path, resolution: Option<usize>) -> anyhow::Result<DomainSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let mut spec = DomainSpec::from_json(&text)?;
    if let Some(r) = resolution {
        spec = DomainSpec::new(spec.shape, r)?;
    }
    Ok(spec)
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

pub fn analyze(name: &str, spec: &DomainSpec, opts: &Options) -> anyhow::Result<Analysis> {
    let start = Instant::now();
    let polygon = spec.boundary_polygon()?;
    let grid = rasterize(spec)?;
    let phi = distance_to_boundary(&polygon, &grid);
    let rho = polygon.inradius();
    let rho_tilde = reduced_inradius(rho, polygon.area())?;

    let t = Instant::now();
    let cheeger = cheeger_constant(&grid, &CutMetricStencil::new(opts.stencil), opts.tol_h)?;
    let certificate =
        certify_lower_bound(&cheeger.certificate, &grid, cheeger.h_lower, default_tolerance(cheeger.h_lower))?;
    let cheeger_s = secs(t);

    let t = Instant::now();
    let eigen = smallest_eigenvalue(&DirichletLaplacian::assemble(&grid))?;
    let spectral_s = secs(t);

    let t = Instant::now();
    let defect = coarea_check(&phi, &grid, opts.levels)?;
    let checks = Checks {
        cheeger_ineq: check_cheeger_inequality(eigen.lambda, cheeger.h_lower),
        makai: check_makai(eigen.lambda, rho_tilde),
        bonnesen: bonnesen_check(&polygon),
        coarea_defect: InequalityCheck::new(defect, Relation::LessEq, COAREA_TOLERANCE, 0.0),
        finalest: finalest_check_with(&phi, &grid, rho, opts.levels)?,
    };
    let checks_s = secs(t);

    let report = AnalysisReport {
        domain: DomainMeta {
            name: name.to_string(),
            kind: spec.kind().to_string(),
            resolution: spec.resolution,
            cell: grid.cell(),
            interior_cells: grid.interior_count(),
            stencil: opts.stencil,
            levels: opts.levels,
            tol_h: opts.tol_h,
        },
        geometry: GeometryReport {
            area: polygon.area(),
            perimeter: polygon.perimeter(),
            inradius: rho,
            reduced_inradius: rho_tilde,
            grid_area: grid_area(&grid),
            convex: polygon.is_convex(),
        },
        cheeger: cheeger.summary(spec.resolution),
        certificate,
        spectral: eigen.summary(),
        checks,
        timings: Timings { cheeger_s, spectral_s, checks_s, total_s: secs(start) },
    };
    Ok(Analysis { report, polygon, grid, phi, cheeger, eigen })
}

/// One line of the suite table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub domain: String,
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub verdict: String,
}

impl SuiteRow {
    fn from_check(domain: &str, check: &str, c: &InequalityCheck) -> Self {
        SuiteRow {
            domain: domain.to_string(),
            check: check.to_string(),
            lhs: c.lhs,
            rhs: c.rhs,
            tolerance: c.tolerance,
            verdict: verdict(c.holds).to_string(),
        }
    }

    fn error(domain: &str, check: &str) -> Self {
        SuiteRow {
            domain: domain.to_string(),
            check: check.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            tolerance: f64::NAN,
            verdict: verdict(false).to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// All checks on one analyzed domain: the report's inequalities plus the
/// certificate, bracketing, lower-bound and soundness properties.
pub fn suite_rows(a: &Analysis) -> anyhow::Result<Vec<SuiteRow>> {
    let name = &a.report.domain.name;
    let r = &a.report;
    let mut rows: Vec<SuiteRow> = r.checks.named().iter().map(|(n, c)| SuiteRow::from_check(name, n, c)).collect();

    let (lo, hi) = (r.cheeger.h_lower, r.cheeger.h_upper);
    rows.push(SuiteRow::from_check(name, "bracket", &InequalityCheck::new(hi, Relation::GreaterEq, lo, 0.0)));

    let cert = &r.certificate;
    rows.push(SuiteRow::from_check(
        name,
        "certificate_speed",
        &InequalityCheck::new(cert.max_speed, Relation::LessEq, 1.0, cert.tolerance),
    ));
    rows.push(SuiteRow::from_check(
        name,
        "certificate_div",
        &InequalityCheck::new(cert.min_div, Relation::GreaterEq, cert.h_claimed, cert.tolerance),
    ));

    if r.geometry.convex {
        let bound = 1.0 / r.geometry.reduced_inradius;
        rows.push(SuiteRow::from_check(
            name,
            "inradius_lower_bound",
            &InequalityCheck::new(lo, Relation::GreaterEq, bound, slack(bound, DEFAULT_REL_SLACK, 0.0)),
        ));
    }

    let rho_grid = inradius(&a.phi);
    let makai = makai_field(&a.phi, rho_grid)?;
    let div = divergence_integral(&makai, &a.grid);
    let bound = grid_area(&a.grid) / reduced_inradius(rho_grid, grid_area(&a.grid))?;
    rows.push(SuiteRow::from_check(
        name,
        "divergence_integral",
        &InequalityCheck::new(div.interior_sum, Relation::GreaterEq, bound, slack(bound, DEFAULT_REL_SLACK, 0.0)),
    ));

    let sub = subdomain_bound_suite(&a.grid, SUITE_SAMPLES, SUITE_SEED)?;
    rows.push(SuiteRow {
        domain: name.clone(),
        check: "subdomain_bound".into(),
        lhs: sub.min_quotient,
        rhs: sub.bound,
        tolerance: sub.samples.iter().map(|s| s.check.tolerance).fold(0.0, f64::max),
        verdict: verdict(sub.all_hold).into(),
    });

    if cert.passed() {
        let least = sub.min_quotient.min(hi);
        let tol = 2.0 * cert.tolerance;
        rows.push(SuiteRow::from_check(name, "soundness", &InequalityCheck::new(least, Relation::GreaterEq, lo, tol)));
    }
    Ok(rows)
}

/// Analyzes every `*.json` spec in `dir` (sorted by file name) in parallel
/// and returns the rows in corpus order. Specs that fail to load or solve
/// produce a single failing row.
pub fn run_suite(dir: &Path, opts: &Options) -> anyhow::Result<Vec<SuiteRow>> {
    use rayon::prelude::*;
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| InputError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let per_domain: Vec<Vec<SuiteRow>> = paths
        .par_iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let spec = match load_spec(p, opts.resolution) {
                Ok(s) => s,
                Err(_) => return vec![SuiteRow::error(&name, "parse")],
            };
            match analyze(&name, &spec, opts).and_then(|a| suite_rows(&a)) {
                Ok(rows) => rows,
                Err(_) => vec![SuiteRow::error(&name, "analysis")],
            }
        })
        .collect();
    Ok(per_domain.into_iter().flatten().collect())
}

pub fn write_suite_csv<W: std::io::Write>(rows: &[SuiteRow], w: W) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

/// Unreadable or malformed input that is not a core parse error.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Exit code for an error: 2 for bad input, 3 for solver failures, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some() {
        return EXIT_PARSE;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::Json(_)
            | Error::Csv(_)
            | Error::InvalidDomain(_)
            | Error::ResolutionTooCoarse { .. }
            | Error::DimensionMismatch(_),
        ) => EXIT_PARSE,
        Some(Error::Convergence { .. } | Error::Bracket { .. }) => EXIT_CONVERGENCE,
        _ => EXIT_FAIL,
    }
}

/// Human-readable reason a certificate failed, naming the violated
/// pointwise condition.
pub fn certificate_failure(r: &CertificateReport) -> Option<String> {
    if r.passed() {
        return None;
    }
    let mut why = Vec::new();
    if r.max_speed > 1.0 + r.tolerance {
        why.push(format!("pointwise violation: max |V| = {:.6} exceeds 1 + {:.3e}", r.max_speed, r.tolerance));
    }
    if r.min_div < r.h_claimed - r.tolerance {
        let at = r.worst_cell.map(|[x, y]| format!(" at ({x:.4}, {y:.4})")).unwrap_or_default();
        why.push(format!(
            "pointwise violation: div V = {:.6}{at} is below h − tol = {:.6}",
            r.min_div,
            r.h_claimed - r.tolerance
        ));
    }
    if why.is_empty() {
        why.push("certificate contains non-finite values".into());
    }
    Some(why.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = anyhow::Error::from(Error::Parse { line: 3, msg: "bad".into() });
        assert_eq!(exit_code(&parse), EXIT_PARSE);
        assert_eq!(exit_code(&anyhow::Error::from(InputError("gone".into()))), EXIT_PARSE);
        let conv = anyhow::Error::from(Error::Convergence { what: "cg", iterations: 10, residual: 1.0 });
        assert_eq!(exit_code(&conv), EXIT_CONVERGENCE);
        assert_eq!(exit_code(&anyhow::Error::from(Error::Bracket { h: 4.0 })), EXIT_CONVERGENCE);
        assert_eq!(exit_code(&anyhow::anyhow!("other")), EXIT_FAIL);
    }

    #[test]
    fn failure_message_names_the_violation() {
        let r = CertificateReport {
            h_claimed: 2.0,
            max_speed: 1.5,
            min_div: 1.0,
            tolerance: 0.1,
            verdict: cheeger_core::cheeger::Verdict::Fail,
            worst_cell: Some([0.5, 0.25]),
        };
        let m = certificate_failure(&r).unwrap();
        assert!(m.contains("max |V|") && m.contains("div V") && m.contains("(0.5000, 0.2500)"), "{m}");
    }
}
