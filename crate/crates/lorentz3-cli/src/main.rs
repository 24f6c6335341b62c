use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lorentz3::curvjet::{classify_grid, ClassifyConfig};
use lorentz3::flows::{clairaut_drift, energy_drift, geodesic_integrate};
use lorentz3_cli::config::RunConfig;
use lorentz3_cli::report::{Check, Report};
use lorentz3_cli::suites::{self, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(
    name = "lorentz3",
    version,
    about = "Curvature, Killing-field and conformal-geometry verification for Lorentz 3-manifolds"
)]
struct Cli {
    /// JSON configuration file; defaults are used when omitted
    #[arg(long, global = true)]
    config: Option<String>,
    /// RNG seed override
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Curvature-jet order override (1 or 2)
    #[arg(long, global = true, value_parser = clap::value_parser!(usize))]
    jet_order: Option<usize>,
    /// Zero-detection tolerance override
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report to this path as well as stdout
    #[arg(long, global = true)]
    out: Option<String>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate curvature objects on a grid for the configured model
    Curvature,
    /// Classify grid points by curvature-jet rank and isotropy type
    Classify,
    /// Run a verification suite
    Verify {
        /// annex-a | einstein | models | flows | conformal-flat | all
        suite: String,
    },
    /// Integrate a geodesic and export the trajectory as CSV
    Flow,
}

fn load_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            RunConfig::from_json(&text).map_err(|e| e.to_string())?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(order) = cli.jet_order {
        if order == 0 || order > 2 {
            return Err(format!("jet order must be 1 or 2, got {order}"));
        }
        cfg.jet_order = order;
    }
    if let Some(tol) = cli.tol {
        if tol <= 0.0 || !tol.is_finite() {
            return Err(format!("tolerance must be positive, got {tol}"));
        }
        cfg.tolerances.zero_tol = tol;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    // validate the model up front: nonpositive coefficients and signature
    // failures are configuration errors for every subcommand
    cfg.model.build().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn emit(report: &Report, cfg: &RunConfig, format: Format) -> Result<(), String> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    println!("{text}");
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json()).map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(())
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    let cfg = load_config(&cli)?;
    match &cli.command {
        Command::Curvature => {
            let (checks, records) = suites::curvature_table(&cfg)?;
            let data = serde_json::to_value(&records).map_err(|e| e.to_string())?;
            let report = Report::new(&cfg, checks, Some(data));
            emit(&report, &cfg, cli.format)?;
            Ok(report.all_passed())
        }
        Command::Classify => {
            let model = cfg.model.build().map_err(|e| e.to_string())?;
            let classify = ClassifyConfig {
                jet_order: cfg.jet_order,
                rank_tol: cfg.tolerances.rank_tol,
                parabolic_tol: cfg.tolerances.parabolic_tol,
            };
            let rep = classify_grid(&model.metric, cfg.grid.points_per_axis, &classify)
                .map_err(|e| e.to_string())?;
            let text = serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())?;
            println!("{text}");
            if let Some(path) = &cfg.out {
                std::fs::write(path, &text).map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let checks = suites::run_suite(suite, &cfg);
            let report = Report::new(&cfg, checks, None);
            emit(&report, &cfg, cli.format)?;
            Ok(report.all_passed())
        }
        Command::Flow => {
            let model = cfg.model.build().map_err(|e| e.to_string())?;
            let flow = cfg.flow.clone().unwrap_or_default();
            if flow.step <= 0.0 || flow.step > 1e-2 {
                return Err(format!("flow step must be in (0, 1e-2], got {}", flow.step));
            }
            let traj =
                geodesic_integrate(&model.metric, flow.start, flow.velocity, flow.length, flow.step)
                    .map_err(|e| e.to_string())?;
            let mut checks = vec![Check::defect(
                "flow/energy_drift",
                "g(gamma', gamma') is conserved along the integrated geodesic",
                energy_drift(&model.metric, &traj) / flow.length.max(1.0),
                1e-7,
            )];
            for (i, field) in model.killing.iter().enumerate() {
                checks.push(Check::defect(
                    &format!("flow/clairaut_{i}"),
                    "g(gamma', X) is conserved for the catalog Killing field",
                    clairaut_drift(&model.metric, &traj, field),
                    1e-7,
                ));
            }
            let mut csv = String::from("s,x1,x2,x3,v1,v2,v3\n");
            for st in &traj {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    st.s, st.pos[0], st.pos[1], st.pos[2], st.vel[0], st.vel[1], st.vel[2]
                ));
            }
            let csv_path = cfg.out.as_ref().map(|p| format!("{p}.csv"));
            if let Some(path) = &csv_path {
                std::fs::write(path, &csv).map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            let data = serde_json::json!({
                "samples": traj.len(),
                "csv_path": csv_path,
            });
            let report = Report::new(&cfg, checks, Some(data));
            emit(&report, &cfg, cli.format)?;
            if cfg.out.is_none() {
                // no file target: the CSV follows the report on stdout
                let mut stdout = std::io::stdout();
                let _ = writeln!(stdout, "{csv}");
            }
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
