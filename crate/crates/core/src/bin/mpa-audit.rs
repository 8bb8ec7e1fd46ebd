use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mpa_audit::runner::{
    cmd_audit_external, cmd_figures, cmd_run, load_config, parse_config, ExitCategory, LoadOptions,
    OutputOptions, RunConfig, RunError,
};

#[derive(Parser)]
#[command(
    name = "mpa-audit",
    version,
    about = "Build and audit the rotation-automorphism identifiability counterexample"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the counterexample, audit every premise and the conclusion,
    /// and write point clouds, swirl profile and report.
    Run(CommonArgs),
    /// Write the X, Z and Z' point clouds and the swirl profile only.
    Figures(CommonArgs),
    /// Audit two paired point-cloud CSV files.
    AuditExternal {
        /// Point cloud of the first representation.
        path_z: PathBuf,
        /// Point cloud of the second representation, row-paired with the first.
        path_zprime: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CloudFormat {
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key = value configuration file; missing keys take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sampling seed (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: CloudFormat,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportFormat,
    /// Also render each point cloud as an SVG scatter plot.
    #[arg(long)]
    svg: bool,
    /// Accept a = 0 (identity automorphism) for control runs.
    #[arg(long, hide = true)]
    allow_degenerate: bool,
}

impl CommonArgs {
    fn resolve(&self) -> Result<(RunConfig, OutputOptions), RunError> {
        let load = LoadOptions {
            allow_degenerate: self.allow_degenerate,
        };
        let mut config = match &self.config {
            Some(path) => load_config(path, load)?,
            None => parse_config("", load)?,
        };
        if let Some(out) = &self.out {
            config.output_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        let (CloudFormat::Csv, ReportFormat::Json) = (self.format, self.report);
        Ok((
            config,
            OutputOptions {
                render_svg: self.svg,
            },
        ))
    }
}

fn execute(cli: Cli) -> Result<ExitCategory, RunError> {
    match cli.command {
        Command::Run(args) => {
            let (config, options) = args.resolve()?;
            let summary = cmd_run(&config, &options)?;
            for p in summary.report.premise_results() {
                println!("{:<20} {:?}", p.name, p.status);
            }
            println!(
                "{:<20} p = {:.4}",
                "uniformity(Z')", summary.report.uniformity_zprime.p_value
            );
            println!(
                "{:<20} {:?} (min-max score {:.4})",
                "relation",
                summary.report.conclusion.verdict,
                summary.report.conclusion.min_max_score()
            );
            println!("report: {}", summary.report_path.display());
            Ok(summary.exit_category())
        }
        Command::Figures(args) => {
            let (config, options) = args.resolve()?;
            let bundle = cmd_figures(&config, &options)?;
            for path in [
                &bundle.x_cloud,
                &bundle.z_cloud,
                &bundle.zprime_cloud,
                &bundle.swirl_profile_path,
            ]
            .into_iter()
            .chain(&bundle.svgs)
            {
                println!("wrote {}", path.display());
            }
            Ok(ExitCategory::Success)
        }
        Command::AuditExternal {
            path_z,
            path_zprime,
            common,
        } => {
            let (config, _) = common.resolve()?;
            let summary = cmd_audit_external(&path_z, &path_zprime, &config)?;
            println!(
                "relation: {:?} (min-max score {:.4})",
                summary.report.conclusion.verdict,
                summary.report.conclusion.min_max_score()
            );
            println!("report: {}", summary.report_path.display());
            Ok(summary.exit_category())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                ExitCategory::Usage.code() as u8
            } else {
                0
            });
        }
    };
    let category = match execute(cli) {
        Ok(category) => category,
        Err(e) => {
            eprintln!("error: {e}");
            e.category()
        }
    };
    if category.code() != 0 {
        eprintln!("exit category: {}", category.name());
    }
    ExitCode::from(category.code() as u8)
}
