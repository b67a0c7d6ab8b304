//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use cheeger_core::cheeger::{
    certify_lower_bound, cheeger_constant, default_tolerance, quotient_of_candidate, subdomain_bound_suite,
    CertificateReport, CheegerResult, CutMetricStencil,
};
use cheeger_core::distance::{
    bonnesen_check, coarea_check, distance_to_boundary, divergence_integral, inradius, makai_field, reduced_inradius,
    DivergenceIntegral,
};
use cheeger_core::geometry::{grid_area, rasterize, DomainSpec, GridDomain, Point, Polygon};
use cheeger_core::maxflow::{cut_capacity, max_flow, min_cut, Arc, Cut, Network};
use cheeger_core::spectral::{check_cheeger_inequality, check_makai, smallest_eigenvalue, DirichletLaplacian, EigenResult};
use cheeger_core::{ScalarField, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL_H: f64 = 0.01;

// ---------------------------------------------------------------------------
// Independent oracles

/// First positive zero of J₀ by bisection on its power series.
fn bessel_j0_first_zero() -> f64 {
    fn j0(x: f64) -> f64 {
        let q = x * x / 4.0;
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 1..60 {
            term *= -q / (k as f64 * k as f64);
            sum += term;
        }
        sum
    }
    let (mut a, mut b) = (2.0, 3.0);
    assert!(j0(a) > 0.0 && j0(b) < 0.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if j0(m) > 0.0 {
            a = m
        } else {
            b = m
        }
    }
    0.5 * (a + b)
}

/// Minimum over `r ∈ (0, 1/2)` of the quotient of the unit square with
/// corners rounded to radius `r`, by golden-section search.
fn square_fillet_minimum() -> f64 {
    let f = |r: f64| (4.0 - (8.0 - 2.0 * PI) * r) / (1.0 - (4.0 - PI) * r * r);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0, 0.5);
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d
        } else {
            a = c
        }
    }
    f(0.5 * (a + b))
}

/// Minimum cut capacity over every `s ∈ S, t ∉ S`.
fn brute_force_min_cut(net: &Network<i64>) -> i64 {
    let n = net.node_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != net.source() && v != net.sink()).collect();
    (0u32..1 << others.len())
        .map(|mask| {
            let mut side = vec![false; n];
            side[net.source()] = true;
            for (b, &v) in others.iter().enumerate() {
                side[v] = mask >> b & 1 == 1;
            }
            net.arcs().iter().filter(|a| side[a.from] && !side[a.to]).map(|a| a.cap).sum()
        })
        .min()
        .unwrap()
}

// ---------------------------------------------------------------------------
// Corpus

struct CorpusRun {
    name: String,
    convex: bool,
    polygon: Polygon,
    grid: GridDomain,
    phi: ScalarField,
    /// From the exact polygon.
    rho_tilde: f64,
    cheeger: CheegerResult,
    certificate: CertificateReport,
    eigen: EigenResult,
    makai_div: DivergenceIntegral,
    makai_bound: f64,
    sampled_quotients: Vec<f64>,
    dual_best: f64,
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn is_convex(p: &Polygon) -> bool {
    let v = p.vertices();
    let n = v.len();
    (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(v[(i + 2) % n] - v[(i + 1) % n]) >= -1e-12)
}

fn run_corpus_entry(name: String, spec: DomainSpec) -> CorpusRun {
    let polygon = spec.boundary_polygon().unwrap();
    let grid = rasterize(&spec).unwrap();
    let phi = distance_to_boundary(&polygon, &grid);
    let rho_tilde = reduced_inradius(polygon.inradius(), polygon.area()).unwrap();
    let cheeger = cheeger_constant(&grid, &CutMetricStencil::sixteen(), TOL_H).unwrap();
    let certificate =
        certify_lower_bound(&cheeger.certificate, &grid, cheeger.h_lower, default_tolerance(cheeger.h_lower)).unwrap();
    let eigen = smallest_eigenvalue(&DirichletLaplacian::assemble(&grid)).unwrap();
    let rho_grid = inradius(&phi);
    let makai = makai_field(&phi, rho_grid).unwrap();
    let makai_div = divergence_integral(&makai, &grid);
    let makai_bound = grid_area(&grid) / reduced_inradius(rho_grid, grid_area(&grid)).unwrap();
    let suite = subdomain_bound_suite(&grid, 40, 11).unwrap();
    let dual_best = quotient_of_candidate(&phi, &grid, 32).unwrap().best_quotient;
    CorpusRun {
        name,
        convex: is_convex(&polygon),
        polygon,
        grid,
        phi,
        rho_tilde,
        cheeger,
        certificate,
        eigen,
        makai_div,
        makai_bound,
        sampled_quotients: suite.samples.iter().map(|s| s.quotient).collect(),
        dual_best,
    }
}

fn load_corpus() -> Vec<(String, DomainSpec)> {
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let spec = DomainSpec::from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (name, spec)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Criteria

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn disk(r: f64, res: usize) -> GridDomain {
    rasterize(&DomainSpec::disk(Point::default(), r, res).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let g = disk(1.0, 256);
    let t = Instant::now();
    let r = cheeger_constant(&g, &CutMetricStencil::eight(), TOL_H).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let in_range = |h: f64| (1.9..=2.1).contains(&h);
    let gap = r.h_upper - r.h_lower;
    check(
        in_range(r.h_lower) && in_range(r.h_upper) && gap <= 0.1 && elapsed <= Duration::from_secs(60),
        format!("h_lower = {:.4}, h_upper = {:.4}, gap = {gap:.4}, {:.1} s", r.h_lower, r.h_upper, elapsed.as_secs_f64()),
    )
}

fn criterion_2() -> Outcome {
    let g = disk(2.0, 256);
    let r = cheeger_constant(&g, &CutMetricStencil::eight(), TOL_H / 2.0).map_err(|e| e.to_string())?;
    let in_range = |h: f64| (0.95..=1.05).contains(&h);
    check(in_range(r.h_lower) && in_range(r.h_upper), format!("radius 2: h_lower = {:.4}, h_upper = {:.4}", r.h_lower, r.h_upper))
}

fn criterion_3() -> Outcome {
    let oracle = square_fillet_minimum();
    if (oracle - (2.0 + PI.sqrt())).abs() > 1e-9 {
        return Err(format!("fillet oracle {oracle} disagrees with 2 + √π"));
    }
    let g = rasterize(&DomainSpec::rectangle(1.0, 1.0, 256).unwrap()).unwrap();
    let r = cheeger_constant(&g, &CutMetricStencil::eight(), TOL_H).map_err(|e| e.to_string())?;
    let rel = (r.h_upper - oracle).abs() / oracle;
    check(rel <= 0.03, format!("h_upper = {:.4} vs oracle {oracle:.5} ({:+.2}%)", r.h_upper, 100.0 * (r.h_upper / oracle - 1.0)))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = Instant::now();
    let mut total_value = 0;
    for case in 0..200 {
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(0..=3 * n);
        let arcs = (0..m)
            .map(|_| Arc { from: rng.gen_range(0..n), to: rng.gen_range(0..n), cap: rng.gen_range(0..=10i64) })
            .collect();
        let net = Network::new(n, 0, n - 1, arcs).unwrap();
        let f = max_flow(&net);
        let brute = brute_force_min_cut(&net);
        let cut: Cut = min_cut(&net, &f).map_err(|e| format!("case {case}: {e}"))?;
        if f.value != brute || cut_capacity(&net, &cut) != brute {
            return Err(format!("case {case}: max flow {} vs exhaustive min cut {brute}", f.value));
        }
        total_value += f.value;
    }
    let elapsed = t.elapsed();
    check(
        elapsed <= Duration::from_secs(5),
        format!("200/200 exact (sum of values {total_value}), {:.3} s", elapsed.as_secs_f64()),
    )
}

fn criterion_5() -> Outcome {
    let lambda = |spec: DomainSpec| -> Result<f64, String> {
        let g = rasterize(&spec).map_err(|e| e.to_string())?;
        Ok(smallest_eigenvalue(&DirichletLaplacian::assemble(&g)).map_err(|e| e.to_string())?.lambda)
    };
    let j = bessel_j0_first_zero();
    let cases = [
        ("square@128", lambda(DomainSpec::rectangle(1.0, 1.0, 128).unwrap())?, 2.0 * PI * PI),
        ("disk@256", lambda(DomainSpec::disk(Point::default(), 1.0, 256).unwrap())?, j * j),
        ("2x1@256", lambda(DomainSpec::rectangle(2.0, 1.0, 256).unwrap())?, 1.25 * PI * PI),
    ];
    let detail = cases
        .iter()
        .map(|(n, got, want)| format!("{n}: {got:.4} vs {want:.4} ({:+.2}%)", 100.0 * (got / want - 1.0)))
        .collect::<Vec<_>>()
        .join("; ");
    check(cases.iter().all(|(_, got, want)| (got - want).abs() <= 0.01 * want), detail)
}

fn criterion_6(runs: &[CorpusRun]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs {
        let c = check_cheeger_inequality(r.eigen.lambda, r.cheeger.h_lower);
        let bound = 1.0 / r.rho_tilde;
        let mut line = format!("{}: λ−h²/4 = {:.3}", r.name, c.margin());
        ok &= c.holds && c.margin() > 0.0;
        if r.convex {
            let ratio = r.cheeger.h_lower / bound;
            line += &format!(", h_lower/(1/ρ̃) = {ratio:.4}");
            ok &= ratio >= 0.95;
            if r.name == "disk" {
                ok &= (ratio - 1.0).abs() <= 0.03;
            }
        }
        parts.push(line);
    }
    check(ok, parts.join("; "))
}

fn criterion_7(runs: &[CorpusRun]) -> Outcome {
    let checks: Vec<_> = runs.iter().map(|r| (r, check_makai(r.eigen.lambda, r.rho_tilde))).collect();
    check(
        checks.iter().all(|(_, c)| c.holds && c.margin() > 0.0),
        checks.iter().map(|(r, c)| format!("{}: {:.3} ≥ {:.3}", r.name, c.lhs, c.rhs)).collect::<Vec<_>>().join("; "),
    )
}

fn criterion_8(runs: &[CorpusRun]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs {
        let b = bonnesen_check(&r.polygon);
        let slack = b.relative_slack();
        let round = r.name == "disk" || r.name == "polygon_256";
        ok &= b.holds && (slack < 0.01) == round;
        parts.push(format!("{}: slack {:.2e}", r.name, slack));
    }
    check(ok, parts.join("; "))
}

fn criterion_9(runs: &[CorpusRun]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs.iter().filter(|r| r.name != "polygon_256") {
        let spec = DomainSpec::polygon(r.polygon.clone(), 128).unwrap();
        let g = rasterize(&spec).unwrap();
        let phi = distance_to_boundary(&r.polygon, &g);
        let d = coarea_check(&phi, &g, 64).map_err(|e| e.to_string())?;
        ok &= d <= 0.03;
        parts.push(format!("{}: {:.3}%", r.name, 100.0 * d));
    }
    check(ok, parts.join("; "))
}

fn criterion_10(runs: &[CorpusRun]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs {
        let lhs = r.makai_div.interior_sum;
        ok &= lhs >= r.makai_bound * 0.95;
        parts.push(format!(
            "{}: ∫div V = {:.3} (flux {:.3}) vs |S|/ρ̃ = {:.3}",
            r.name, lhs, r.makai_div.boundary_flux, r.makai_bound
        ));
    }
    check(ok, parts.join("; "))
}

fn criterion_11(runs: &[CorpusRun]) -> Outcome {
    let g = disk(1.0, 256);
    let v = VectorField::from_fn(&g, |p| p);
    let at2 = certify_lower_bound(&v, &g, 2.0, default_tolerance(2.0)).map_err(|e| e.to_string())?;
    let at22 = certify_lower_bound(&v, &g, 2.2, default_tolerance(2.2)).map_err(|e| e.to_string())?;
    let sq = runs.iter().find(|r| r.name == "square").ok_or("square missing from corpus")?;
    let rho = inradius(&sq.phi);
    let makai = makai_field(&sq.phi, rho).map_err(|e| e.to_string())?;
    let h = 1.0 / reduced_inradius(rho, grid_area(&sq.grid)).map_err(|e| e.to_string())?;
    let pointwise = certify_lower_bound(&makai, &sq.grid, h, default_tolerance(h)).map_err(|e| e.to_string())?;
    let integral_ok = sq.makai_div.interior_sum >= sq.makai_bound * 0.95;
    check(
        at2.passed() && !at22.passed() && !pointwise.passed() && integral_ok,
        format!(
            "V=x: h=2 {:?}, h=2.2 {:?} (min_div {:.3}); square Makai at h={h:.3}: pointwise {:?} (min_div {:.3}), integral {}",
            at2.verdict, at22.verdict, at22.min_div, pointwise.verdict, pointwise.min_div,
            if integral_ok { "holds" } else { "fails" }
        ),
    )
}

fn criterion_12(runs: &[CorpusRun]) -> Outcome {
    let mut quotients: Vec<(String, f64)> = Vec::new();
    for r in runs {
        for p in &r.cheeger.cheeger_set {
            quotients.push((format!("{} cut set", r.name), p.quotient()));
        }
        quotients.extend(r.sampled_quotients.iter().map(|&q| (format!("{} sample", r.name), q)));
        quotients.push((format!("{} level set", r.name), r.dual_best));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    let mut passed = 0;
    for r in runs {
        if !r.certificate.passed() {
            continue;
        }
        passed += 1;
        let h = r.certificate.h_claimed;
        let floor = h - 2.0 * r.certificate.tolerance;
        let own: Vec<_> = quotients.iter().filter(|(n, _)| n.starts_with(&format!("{} ", r.name))).collect();
        let worst = own.iter().map(|(_, q)| *q).fold(f64::INFINITY, f64::min);
        ok &= worst >= floor;
        parts.push(format!("{}: h = {h:.3}, least quotient {worst:.3}", r.name));
    }
    ok &= passed > 0;
    check(ok, format!("{passed} passed certificates; {}", parts.join("; ")))
}

// ---------------------------------------------------------------------------

fn run(n: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(d) => {
            println!("criterion {n:>2} PASS  {title} [{secs:.1} s]: {d}");
            true
        }
        Err(d) => {
            println!("criterion {n:>2} FAIL  {title} [{secs:.1} s]: {d}");
            false
        }
    }
}

fn main() {
    let mut all = true;
    all &= run(4, "discrete strong duality", criterion_4);
    all &= run(1, "disk Cheeger constant", criterion_1);
    all &= run(2, "scaling law", criterion_2);
    all &= run(3, "square Cheeger constant", criterion_3);
    all &= run(5, "eigenvalues", criterion_5);

    let t = Instant::now();
    let corpus = load_corpus();
    let runs: Vec<CorpusRun> = std::thread::scope(|s| {
        let handles: Vec<_> = corpus
            .into_iter()
            .map(|(name, spec)| s.spawn(move || run_corpus_entry(name, spec)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("corpus run")).collect()
    });
    println!("corpus: {} domains analyzed in {:.1} s", runs.len(), t.elapsed().as_secs_f64());

    all &= run(6, "Cheeger inequality chain", || criterion_6(&runs));
    all &= run(7, "Makai/Osserman bound", || criterion_7(&runs));
    all &= run(8, "Bonnesen", || criterion_8(&runs));
    all &= run(9, "coarea identity", || criterion_9(&runs));
    all &= run(10, "divergence integral", || criterion_10(&runs));
    all &= run(11, "certificate checker", || criterion_11(&runs));
    all &= run(12, "certificate soundness", || criterion_12(&runs));
    if !all {
        std::process::exit(1);
    }
}
