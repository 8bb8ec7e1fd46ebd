//! Configuration, persistence, figure emission and the subcommands behind
//! the `mpa-audit` binary.

mod cloud;
mod commands;
mod config;
mod figures;
mod report;

pub use cloud::{format_cloud, read_cloud, write_cloud};
pub use commands::{
    cmd_audit_external, cmd_figures, cmd_run, ExitCategory, ExternalSummary, OutputOptions,
    RunError, RunSummary,
};
pub use config::{load_config, parse_config, ConfigError, ConfigIssue, LoadOptions, RunConfig};
pub use figures::{render_svg, swirl_profile, FigureBundle, SwirlBin, SwirlProfile};
pub use report::{render_report, ReportDocument, REPORT_TIMESTAMP_KEY};
