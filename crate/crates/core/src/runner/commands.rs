use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::transforms::{apply_pipeline, sample_uniform_square, Dataset, Label, PipelineOutput};
use crate::verify::{audit_external, run_audit_on, AuditReport, Outcome};

use super::cloud::{read_cloud, write_cloud};
use super::config::{ConfigError, RunConfig};
use super::figures::{render_svg, swirl_profile, FigureBundle};
use super::report::{render_report, ReportDocument};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("point clouds have different row counts ({left} vs {right})")]
    RowCountMismatch { left: usize, right: usize },

    #[error(transparent)]
    Audit(#[from] crate::Error),
}

/// Process exit categories of the `mpa-audit` binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCategory {
    Success,
    Certified,
    Usage,
    Config,
    Io,
    Input,
    Audit,
    PremiseFailed,
    DegenerateCoordinateWise,
}

impl ExitCategory {
    pub fn code(self) -> i32 {
        match self {
            ExitCategory::Success | ExitCategory::Certified => 0,
            ExitCategory::Usage => 2,
            ExitCategory::Config => 3,
            ExitCategory::Io => 4,
            ExitCategory::Input => 5,
            ExitCategory::Audit => 6,
            ExitCategory::PremiseFailed => 10,
            ExitCategory::DegenerateCoordinateWise => 11,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExitCategory::Success => "success",
            ExitCategory::Certified => "counterexample-certified",
            ExitCategory::Usage => "usage",
            ExitCategory::Config => "config",
            ExitCategory::Io => "io",
            ExitCategory::Input => "input",
            ExitCategory::Audit => "audit",
            ExitCategory::PremiseFailed => "premise-failed",
            ExitCategory::DegenerateCoordinateWise => "degenerate-coordinate-wise",
        }
    }
}

impl From<Outcome> for ExitCategory {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::CounterexampleCertified => ExitCategory::Certified,
            Outcome::PremiseFailed => ExitCategory::PremiseFailed,
            Outcome::DegenerateCoordinateWise => ExitCategory::DegenerateCoordinateWise,
        }
    }
}

impl RunError {
    pub fn category(&self) -> ExitCategory {
        match self {
            RunError::Config(_) => ExitCategory::Config,
            RunError::Io { .. } => ExitCategory::Io,
            RunError::Malformed { .. } | RunError::RowCountMismatch { .. } => ExitCategory::Input,
            RunError::Audit(_) => ExitCategory::Audit,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OutputOptions {
    /// Also write an SVG scatter plot per point cloud.
    pub render_svg: bool,
}

#[derive(Debug)]
pub struct RunSummary {
    pub report: AuditReport,
    pub report_path: PathBuf,
    pub figures: FigureBundle,
}

impl RunSummary {
    pub fn exit_category(&self) -> ExitCategory {
        self.report.outcome().into()
    }
}

#[derive(Debug)]
pub struct ExternalSummary {
    pub report: AuditReport,
    pub report_path: PathBuf,
}

impl ExternalSummary {
    pub fn exit_category(&self) -> ExitCategory {
        self.report.outcome().into()
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn generate(config: &RunConfig) -> Result<(Dataset, PipelineOutput), RunError> {
    let z = sample_uniform_square(config.n, config.seed)?;
    let out = apply_pipeline(&config.mixing, &config.mpa, &z)?;
    Ok((z, out))
}

fn emit_figures(
    config: &RunConfig,
    options: &OutputOptions,
    z: &Dataset,
    out: &PipelineOutput,
) -> Result<FigureBundle, RunError> {
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;

    let path_of = |d: &Dataset, ext: &str| dir.join(format!("{}.{ext}", d.label().file_stem()));
    let clouds = [&out.x, z, &out.zprime];
    for d in clouds {
        write_cloud(&path_of(d, "csv"), d)?;
    }
    let mut svgs = Vec::new();
    if options.render_svg {
        for d in clouds {
            let path = path_of(d, "svg");
            std::fs::write(&path, render_svg(d)).map_err(io_err(&path))?;
            svgs.push(path);
        }
    }

    let profile = swirl_profile(z, &out.zprime, config.mpa.c(), config.swirl_bins)?;
    let swirl_profile_path = dir.join("swirl_profile.csv");
    std::fs::write(&swirl_profile_path, profile.to_csv()).map_err(io_err(&swirl_profile_path))?;

    Ok(FigureBundle {
        x_cloud: path_of(&out.x, "csv"),
        z_cloud: path_of(z, "csv"),
        zprime_cloud: path_of(&out.zprime, "csv"),
        svgs,
        swirl_profile_path,
        swirl_profile: profile,
    })
}

fn write_report(
    path: PathBuf,
    report: &AuditReport,
    config: &RunConfig,
    mode: &'static str,
) -> Result<PathBuf, RunError> {
    let doc = ReportDocument::new(report, config, mode);
    std::fs::write(&path, render_report(&doc)).map_err(io_err(&path))?;
    Ok(path)
}

/// Generates the counterexample, audits it and writes the point clouds,
/// swirl profile and `report.json` to the output directory.
pub fn cmd_run(config: &RunConfig, options: &OutputOptions) -> Result<RunSummary, RunError> {
    let (z, out) = generate(config)?;
    let figures = emit_figures(config, options, &z, &out)?;
    let report = run_audit_on(&config.mixing, &config.mpa, &z, &out, &config.audit)?;
    let report_path = write_report(
        config.output_dir.join("report.json"),
        &report,
        config,
        "run",
    )?;
    Ok(RunSummary {
        report,
        report_path,
        figures,
    })
}

/// Generates the counterexample and writes only the figure material.
pub fn cmd_figures(config: &RunConfig, options: &OutputOptions) -> Result<FigureBundle, RunError> {
    let (z, out) = generate(config)?;
    emit_figures(config, options, &z, &out)
}

/// Audits two paired point clouds supplied by the user and writes
/// `external_report.json`.
pub fn cmd_audit_external(
    path_z: &Path,
    path_zp: &Path,
    config: &RunConfig,
) -> Result<ExternalSummary, RunError> {
    let z = read_cloud(path_z, Label::LatentZ)?;
    let zp = read_cloud(path_zp, Label::LatentZprime)?;
    if z.len() != zp.len() {
        return Err(RunError::RowCountMismatch {
            left: z.len(),
            right: zp.len(),
        });
    }
    let report = audit_external(&z, &zp, &config.audit)?;
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let report_path = write_report(
        dir.join("external_report.json"),
        &report,
        config,
        "external",
    )?;
    Ok(ExternalSummary {
        report,
        report_path,
    })
}
