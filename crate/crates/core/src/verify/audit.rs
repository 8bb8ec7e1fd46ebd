use serde::Serialize;

use crate::error::{Check, Result};
use crate::transforms::{
    apply_pipeline, sample_uniform_square, Bounds, Compose, Dataset, Mixing2, MpaParams,
    PipelineOutput,
};

use super::continuity::{check_continuity, ContinuityCheck};
use super::relation::{check_coordinatewise_relation, CoordRelationVerdict, Relation};
use super::sigma::{check_sigma_algebra_proxy, SigmaCheck};
use super::support::{
    check_compact_support, check_independent_support, CompactSupportCheck, IndependentSupportCheck,
    SUPPORT_SLACK,
};
use super::uniformity::{check_uniformity, UniformityCheck};

/// Tunables shared by every check of an audit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditConfig {
    pub bins_support: usize,
    pub min_count: usize,
    pub bins_uniformity: usize,
    pub bins_relation: usize,
    pub functional_threshold: f64,
    pub alpha: f64,
    pub l_max: f64,
    pub continuity_pairs: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            bins_support: 10,
            min_count: 5,
            bins_uniformity: 10,
            bins_relation: 50,
            functional_threshold: 0.01,
            alpha: 0.001,
            l_max: 100.0,
            continuity_pairs: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditParameters {
    pub a: Option<f64>,
    pub c: Option<f64>,
    pub mixing: Option<[[f64; 2]; 2]>,
    pub n: usize,
    pub seed: Option<u64>,
    pub degenerate: bool,
    pub config: AuditConfig,
}

/// Continuity of the encoders `f = A^{-1}` and `f' = h ∘ A^{-1}`, and of `h`
/// itself, scanned over the observed support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuityPremise {
    pub encoder: ContinuityCheck,
    pub automorphism: ContinuityCheck,
    pub composed_encoder: ContinuityCheck,
}

impl ContinuityPremise {
    pub fn pass(&self) -> bool {
        self.encoder.pass && self.automorphism.pass && self.composed_encoder.pass
    }

    pub fn max_ratio(&self) -> f64 {
        self.encoder
            .max_ratio
            .max(self.automorphism.max_ratio)
            .max(self.composed_encoder.max_ratio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompactSupportPremise {
    pub z: CompactSupportCheck,
    pub zprime: CompactSupportCheck,
}

impl CompactSupportPremise {
    pub fn pass(&self) -> bool {
        self.z.pass && self.zprime.pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PremiseStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// One row of the premise table in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PremiseResult {
    pub name: &'static str,
    pub status: PremiseStatus,
    pub statistic: Option<f64>,
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// Overall classification of an audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Every premise holds and the conclusion fails.
    CounterexampleCertified,
    /// Some premise failed, so nothing is claimed about the conclusion.
    PremiseFailed,
    /// Premises hold and so does the conclusion: not a counterexample.
    DegenerateCoordinateWise,
}

impl Outcome {
    pub fn category(self) -> &'static str {
        match self {
            Outcome::CounterexampleCertified => "counterexample-certified",
            Outcome::PremiseFailed => "premise-failed",
            Outcome::DegenerateCoordinateWise => "degenerate-coordinate-wise",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub parameters: AuditParameters,
    /// `None` when no analytic maps were supplied.
    pub continuity: Option<ContinuityPremise>,
    pub sigma_algebra: Option<SigmaCheck>,
    pub compact_support: CompactSupportPremise,
    pub independent_support_z: IndependentSupportCheck,
    pub independent_support_zprime: IndependentSupportCheck,
    pub uniformity_zprime: UniformityCheck,
    pub conclusion: CoordRelationVerdict,
}

impl AuditReport {
    /// All applicable premises hold.
    pub fn premises_pass(&self) -> bool {
        self.premise_results()
            .iter()
            .all(|p| p.status != PremiseStatus::Fail)
    }

    pub fn uniformity_pass(&self) -> bool {
        self.uniformity_zprime.passes(self.parameters.config.alpha)
    }

    pub fn outcome(&self) -> Outcome {
        if !self.premises_pass() {
            Outcome::PremiseFailed
        } else if self.conclusion.verdict == Relation::CoordinateWise {
            Outcome::DegenerateCoordinateWise
        } else {
            Outcome::CounterexampleCertified
        }
    }

    pub fn counterexample_certified(&self) -> bool {
        self.outcome() == Outcome::CounterexampleCertified
    }

    pub fn premise_results(&self) -> Vec<PremiseResult> {
        const NO_MAPS: &str = "not-applicable: no analytic maps supplied";
        let status = |pass: bool| {
            if pass {
                PremiseStatus::Pass
            } else {
                PremiseStatus::Fail
            }
        };
        let cfg = &self.parameters.config;
        let continuity = match &self.continuity {
            Some(c) => PremiseResult {
                name: "continuity",
                status: status(c.pass()),
                statistic: Some(c.max_ratio()),
                threshold: Some(cfg.l_max),
                note: None,
            },
            None => PremiseResult {
                name: "continuity",
                status: PremiseStatus::NotApplicable,
                statistic: None,
                threshold: None,
                note: Some(NO_MAPS),
            },
        };
        let sigma = match &self.sigma_algebra {
            Some(s) => PremiseResult {
                name: "sigma-algebra",
                status: status(s.pass),
                statistic: Some(s.max_error()),
                threshold: Some(s.tolerance),
                note: None,
            },
            None => PremiseResult {
                name: "sigma-algebra",
                status: PremiseStatus::NotApplicable,
                statistic: None,
                threshold: None,
                note: Some(NO_MAPS),
            },
        };
        let cs = &self.compact_support;
        let extent = [cs.z.bounds, cs.zprime.bounds]
            .iter()
            .flat_map(|b| [b.lo.x1, b.lo.x2, b.hi.x1, b.hi.x2])
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        let is_z = &self.independent_support_z;
        let is_zp = &self.independent_support_zprime;
        vec![
            continuity,
            sigma,
            PremiseResult {
                name: "compact-support",
                status: status(cs.pass()),
                statistic: Some(extent),
                threshold: Some(1.0 + SUPPORT_SLACK),
                note: None,
            },
            PremiseResult {
                name: "independent-support",
                status: status(is_z.pass && is_zp.pass),
                statistic: Some(is_z.fraction.min(is_zp.fraction)),
                threshold: Some(1.0),
                note: None,
            },
        ]
    }
}

/// Samples `Z`, runs the pipeline and audits the result.
pub fn run_audit(
    mixing: &Mixing2,
    params: &MpaParams,
    n: usize,
    seed: u64,
    config: &AuditConfig,
) -> Result<AuditReport> {
    let z = sample_uniform_square(n, seed).map_err(|e| e.in_check(Check::Pipeline))?;
    let out = apply_pipeline(mixing, params, &z).map_err(|e| e.in_check(Check::Pipeline))?;
    run_audit_on(mixing, params, &z, &out, config)
}

/// Audits a pipeline output produced from latent sample `z`.
pub fn run_audit_on(
    mixing: &Mixing2,
    params: &MpaParams,
    z: &Dataset,
    out: &PipelineOutput,
    config: &AuditConfig,
) -> Result<AuditReport> {
    let seed = z.seed();
    let observed = out.x.bounds();
    let domain_check = |r: Result<ContinuityCheck>| r.map_err(|e| e.in_check(Check::Continuity));
    let encoder = mixing.unmixer();
    let continuity = ContinuityPremise {
        encoder: domain_check(check_continuity(
            &encoder,
            &observed,
            config.continuity_pairs,
            seed.wrapping_add(1),
            config.l_max,
        ))?,
        automorphism: domain_check(check_continuity(
            params,
            &Bounds::unit_square(),
            config.continuity_pairs,
            seed.wrapping_add(2),
            config.l_max,
        ))?,
        composed_encoder: domain_check(check_continuity(
            &Compose::new(*params, encoder),
            &observed,
            config.continuity_pairs,
            seed.wrapping_add(3),
            config.l_max,
        ))?,
    };
    let sigma = check_sigma_algebra_proxy(z, &out.zprime, params, &params.inverse_map())
        .map_err(|e| e.in_check(Check::SigmaAlgebra))?;

    let mut report = audit_pair(z, &out.zprime, &Bounds::unit_square(), config)?;
    report.continuity = Some(continuity);
    report.sigma_algebra = Some(sigma);
    report.parameters = AuditParameters {
        a: Some(params.a()),
        c: Some(params.c()),
        mixing: Some(mixing.rows()),
        n: z.len(),
        seed: Some(seed),
        degenerate: params.is_degenerate(),
        config: *config,
    };
    Ok(report)
}

/// Audits two user-supplied paired representations.
///
/// Continuity and σ-algebra premises need the maps between the
/// representations and are reported as not applicable. Uniformity is tested
/// over the empirical bounding box of `zp`.
pub fn audit_external(z: &Dataset, zp: &Dataset, config: &AuditConfig) -> Result<AuditReport> {
    audit_pair(z, zp, &zp.bounds(), config)
}

fn audit_pair(
    z: &Dataset,
    zp: &Dataset,
    uniform_domain: &Bounds,
    config: &AuditConfig,
) -> Result<AuditReport> {
    if z.len() != zp.len() {
        return Err(crate::Error::Pairing {
            left: z.len(),
            right: zp.len(),
        }
        .in_check(Check::CoordinateRelation));
    }
    let latent_box = Bounds::unit_square();
    let compact_support = CompactSupportPremise {
        z: check_compact_support(z, &latent_box),
        zprime: check_compact_support(zp, &latent_box),
    };
    let support = |d: &Dataset| {
        check_independent_support(d, config.bins_support, config.min_count)
            .map_err(|e| e.in_check(Check::IndependentSupport))
    };
    let independent_support_z = support(z)?;
    let independent_support_zprime = support(zp)?;
    let uniformity_zprime = check_uniformity(zp, config.bins_uniformity, uniform_domain)
        .map_err(|e| e.in_check(Check::Uniformity))?;
    let conclusion =
        check_coordinatewise_relation(z, zp, config.bins_relation, config.functional_threshold)
            .map_err(|e| e.in_check(Check::CoordinateRelation))?;
    Ok(AuditReport {
        parameters: AuditParameters {
            a: None,
            c: None,
            mixing: None,
            n: z.len(),
            seed: None,
            degenerate: false,
            config: *config,
        },
        continuity: None,
        sigma_algebra: None,
        compact_support,
        independent_support_z,
        independent_support_zprime,
        uniformity_zprime,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn paper_parameters_certify_a_counterexample() {
        let p = MpaParams::new(3.6, 0.9).unwrap();
        let r = run_audit(
            &Mixing2::default_shear(),
            &p,
            100_000,
            42,
            &AuditConfig::default(),
        )
        .unwrap();
        assert!(r.premises_pass(), "{:#?}", r.premise_results());
        assert!(r.uniformity_pass(), "p = {}", r.uniformity_zprime.p_value);
        assert_eq!(r.conclusion.verdict, Relation::NotCoordinateWise);
        assert_eq!(r.outcome(), Outcome::CounterexampleCertified);
        assert_eq!(r.premise_results().len(), 4);
    }

    #[test]
    fn degenerate_fixture_is_coordinate_wise() {
        let p = MpaParams::degenerate(0.9).unwrap();
        let r = run_audit(
            &Mixing2::identity(),
            &p,
            100_000,
            1,
            &AuditConfig::default(),
        )
        .unwrap();
        assert!(r.premises_pass());
        assert_eq!(r.conclusion.verdict, Relation::CoordinateWise);
        assert_eq!(r.outcome(), Outcome::DegenerateCoordinateWise);
        assert!(r.parameters.degenerate);
    }

    #[test]
    fn component_errors_name_their_check() {
        let p = MpaParams::new(3.6, 0.9).unwrap();
        // 2000 points are too few for a 10x10 support grid with min_count 5.
        let err =
            run_audit(&Mixing2::identity(), &p, 2000, 1, &AuditConfig::default()).unwrap_err();
        match err {
            Error::InCheck { check, source } => {
                assert_eq!(check, Check::IndependentSupport);
                assert!(matches!(*source, Error::Undersampled { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = run_audit(&Mixing2::identity(), &p, 0, 1, &AuditConfig::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::InCheck {
                check: Check::Pipeline,
                ..
            }
        ));
    }

    #[test]
    fn external_audit_marks_map_premises_not_applicable() {
        let z = sample_uniform_square(20_000, 9).unwrap();
        let r = audit_external(&z, &z, &AuditConfig::default()).unwrap();
        let premises = r.premise_results();
        assert_eq!(premises[0].status, PremiseStatus::NotApplicable);
        assert_eq!(premises[1].status, PremiseStatus::NotApplicable);
        assert_eq!(r.conclusion.verdict, Relation::CoordinateWise);
    }
}
