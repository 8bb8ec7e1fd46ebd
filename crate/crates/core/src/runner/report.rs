use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::verify::{
    AuditReport, CompactSupportPremise, ContinuityPremise, CoordRelationVerdict,
    IndependentSupportCheck, Outcome, PremiseResult, SigmaCheck,
};

use super::RunConfig;

/// The only field whose value differs between identical runs. It is always
/// the first entry of the document, on a line of its own.
pub const REPORT_TIMESTAMP_KEY: &str = "generated_unix_secs";

#[derive(Debug, Serialize)]
struct UniformitySection {
    dataset: &'static str,
    p_value: f64,
    statistic: f64,
    degrees_of_freedom: usize,
    alpha: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct Details<'a> {
    continuity: &'a Option<ContinuityPremise>,
    sigma_algebra: &'a Option<SigmaCheck>,
    compact_support: &'a CompactSupportPremise,
    independent_support_z: &'a IndependentSupportCheck,
    independent_support_zprime: &'a IndependentSupportCheck,
}

/// Machine-readable audit report as written to disk.
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    generated_unix_secs: u64,
    tool: &'static str,
    tool_version: &'static str,
    mode: &'static str,
    seed: Option<u64>,
    parameters: &'a RunConfig,
    premises: Vec<PremiseResult>,
    uniformity: UniformitySection,
    relation: &'a CoordRelationVerdict,
    details: Details<'a>,
    outcome: Outcome,
    category: &'static str,
    counterexample_certified: bool,
}

impl<'a> ReportDocument<'a> {
    pub fn new(report: &'a AuditReport, config: &'a RunConfig, mode: &'static str) -> Self {
        let u = &report.uniformity_zprime;
        let outcome = report.outcome();
        ReportDocument {
            generated_unix_secs: timestamp(),
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            mode,
            seed: report.parameters.seed,
            parameters: config,
            premises: report.premise_results(),
            uniformity: UniformitySection {
                dataset: "Zprime",
                p_value: u.p_value,
                statistic: u.statistic,
                degrees_of_freedom: u.degrees_of_freedom,
                alpha: report.parameters.config.alpha,
                pass: report.uniformity_pass(),
            },
            relation: &report.conclusion,
            details: Details {
                continuity: &report.continuity,
                sigma_algebra: &report.sigma_algebra,
                compact_support: &report.compact_support,
                independent_support_z: &report.independent_support_z,
                independent_support_zprime: &report.independent_support_zprime,
            },
            outcome,
            category: outcome.category(),
            counterexample_certified: report.counterexample_certified(),
        }
    }
}

/// Honours `SOURCE_DATE_EPOCH` so that fully byte-identical reports can be
/// produced when needed.
fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        })
}

pub fn render_report(doc: &ReportDocument<'_>) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report is serializable");
    text.push('\n');
    text
}
