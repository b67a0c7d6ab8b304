use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use cheeger_cli::{
    analyze, certificate_failure, exit_code, load_spec, run_suite, svg, write_suite_csv, InputError, Options,
    EXIT_FAIL, EXIT_OK,
};
use cheeger_core::cheeger::{certify_lower_bound, default_tolerance, StencilKind, DEFAULT_TOL_H};
use cheeger_core::distance::DEFAULT_LEVELS;
use cheeger_core::field_io::{read_vector_csv, write_scalar_csv, write_vector_csv};
use cheeger_core::geometry::rasterize;
use cheeger_core::maxflow::{max_flow, min_cut, parse_dimacs};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cheeger", version, about = "Cheeger constants, certificates and Dirichlet eigenvalues of planar domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Cells across the longer side of the bounding box (overrides the spec).
    #[arg(long)]
    resolution: Option<usize>,
    /// Cut-metric neighborhood: 4, 8 or 16.
    #[arg(long, default_value = "16", value_parser = parse_stencil)]
    stencil: StencilKind,
    /// Bracket width at which bisection on h stops.
    #[arg(long, default_value_t = DEFAULT_TOL_H)]
    tol_h: f64,
    /// Levels for the level-set integrals.
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,
}

impl Common {
    fn options(&self) -> Options {
        Options { resolution: self.resolution, stencil: self.stencil, tol_h: self.tol_h, levels: self.levels }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one domain spec; prints the report JSON.
    Analyze {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Directory for the report, SVG and field CSVs.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum flow and minimum cut of a DIMACS network.
    Maxflow { dimacs: PathBuf },
    /// Checks a vector field CSV as a lower-bound certificate for h.
    Certify {
        field: PathBuf,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        resolution: Option<usize>,
        /// Defaults to 5% of h.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Runs every check on each spec in a corpus directory; prints a CSV table.
    Suite {
        corpus: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Also writes the table to `<out>/suite.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_stencil(s: &str) -> Result<StencilKind, String> {
    s.parse::<usize>()
        .ok()
        .and_then(StencilKind::from_neighbors)
        .ok_or_else(|| format!("stencil must be 4, 8 or 16, got `{s}`"))
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn cmd_analyze(spec_path: &Path, opts: &Options, out: Option<&Path>) -> anyhow::Result<u8> {
    let spec = load_spec(spec_path, opts.resolution)?;
    let name = spec_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "domain".into());
    let a = analyze(&name, &spec, opts)?;
    let json = serde_json::to_string_pretty(&a.report)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join(format!("{name}.json")), &json)?;
        let picture = svg::render(&a.polygon, &a.cheeger.cheeger_set, &a.cheeger.certificate, &a.eigen.eigenfunction);
        std::fs::write(dir.join(format!("{name}.svg")), picture)?;
        write_vector_csv(&a.cheeger.certificate, create(&dir.join(format!("{name}.certificate.csv")))?)?;
        write_scalar_csv(&a.eigen.eigenfunction, create(&dir.join(format!("{name}.eigenfunction.csv")))?)?;
    }
    println!("{json}");
    for (n, c) in a.report.checks.named() {
        if !c.holds {
            eprintln!("check {n} failed: lhs {} rhs {} tolerance {}", c.lhs, c.rhs, c.tolerance);
        }
    }
    if let Some(why) = certificate_failure(&a.report.certificate) {
        eprintln!("certificate failed: {why}");
    }
    Ok(if a.report.all_pass() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_maxflow(path: &Path) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let net = parse_dimacs(&text)?;
    let flow = max_flow(&net);
    let cut = min_cut(&net, &flow)?;
    let nodes: Vec<String> = cut.nodes().iter().map(|v| (v + 1).to_string()).collect();
    println!("value {}", flow.value);
    println!("cut {}", nodes.join(" "));
    Ok(EXIT_OK)
}

fn cmd_certify(field: &Path, h: f64, spec_path: &Path, resolution: Option<usize>, tol: Option<f64>) -> anyhow::Result<u8> {
    let spec = load_spec(spec_path, resolution)?;
    let g = rasterize(&spec)?;
    let file = File::open(field).map_err(|e| InputError(format!("{}: {e}", field.display())))?;
    let v = read_vector_csv(file, &g)?;
    let report = certify_lower_bound(&v, &g, h, tol.unwrap_or_else(|| default_tolerance(h)))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(why) = certificate_failure(&report) {
        eprintln!("{why}");
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_OK)
}

fn cmd_suite(corpus: &Path, opts: &Options, out: Option<&Path>) -> anyhow::Result<u8> {
    let rows = run_suite(corpus, opts)?;
    if rows.is_empty() {
        eprintln!("warning: no *.json specs in {}", corpus.display());
    }
    write_suite_csv(&rows, std::io::stdout().lock())?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_suite_csv(&rows, create(&dir.join("suite.csv"))?)?;
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", rows.len());
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { spec, common, out } => cmd_analyze(spec, &common.options(), out.as_deref()),
        Command::Maxflow { dimacs } => cmd_maxflow(dimacs),
        Command::Certify { field, h, spec, resolution, tol } => cmd_certify(field, *h, spec, *resolution, *tol),
        Command::Suite { corpus, common, out } => cmd_suite(corpus, &common.options(), out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
