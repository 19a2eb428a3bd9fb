//! Per-family verification runs with ℚ / ℚ(t) dispatch.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{verify_du_formulas, Family};
use crate::arith::{rat, BigRational, Field, RationalFunction, Scalar};
use crate::constructions::{
    build_monolith, chain_growth_check, check_assumptions, direct_sum_control,
    down_up_duality_check, jx_membership_check, filtration_checks, make_spec, ore_factorial_identity,
    ore_nonisomorphism, ore_submodule_classification, singular_weight_report, singular_weights,
    verma_module, weyl_oracle_check, MonolithSpec,
};
use crate::error::{Error, Result};
use crate::module::{is_simple_truncated, ProbeConfig};
use crate::report::CheckReport;

/// Highest `n` in the displayed down-up and Ore identities.
const IDENTITY_N: u32 = 5;

/// One family run: `{ family, parameter, kappa?, D, m_max, seed, probes,
/// coefficient_bound }` plus the optional knobs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub family: Family,
    /// `q` for the quantum plane and the Weyl algebra, `η` for down-up.
    pub parameter: Option<Scalar>,
    pub kappa: Option<Scalar>,
    pub degree: u32,
    pub m_max: u32,
    pub slack_cap: Option<u32>,
    pub probe: ProbeConfig,
}

impl PipelineConfig {
    /// Defaults: `q = t`, `η = 2`, `κ = 2`, `D = 8`, `m_max = 4`.
    pub fn new(family: Family) -> Self {
        let parameter = match family {
            Family::QuantumPlane | Family::QuantizedWeyl => Some(Scalar::t()),
            Family::DownUpExtended => Some(Scalar::integer(2)),
            Family::OreExtension { .. } => None,
        };
        let kappa = (family == Family::DownUpExtended).then(|| Scalar::integer(2));
        Self {
            family,
            parameter,
            kappa,
            degree: 8,
            m_max: 4,
            slack_cap: None,
            probe: ProbeConfig::default(),
        }
    }

    /// Resolved configuration as flat strings, for report headers.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("family".into(), self.family.to_string());
        if let Some(p) = &self.parameter {
            m.insert("parameter".into(), p.to_string());
        }
        if let Some(k) = &self.kappa {
            m.insert("kappa".into(), k.to_string());
        }
        m.insert("degree".into(), self.degree.to_string());
        m.insert("m_max".into(), self.m_max.to_string());
        m.insert(
            "slack_cap".into(),
            self.slack_cap.map_or("default".into(), |s| s.to_string()),
        );
        m.insert("seed".into(), self.probe.seed.to_string());
        m.insert("probes".into(), self.probe.probes.to_string());
        m.insert("coefficient_bound".into(), self.probe.coefficient_bound.to_string());
        m.insert(
            "margin".into(),
            self.probe.margin.map_or("default".into(), |s| s.to_string()),
        );
        m
    }

    fn symbolic(&self) -> bool {
        [&self.parameter, &self.kappa]
            .into_iter()
            .flatten()
            .any(Scalar::is_symbolic)
    }

    fn spec<F: Field>(&self) -> Result<MonolithSpec<F>> {
        let conv = |s: &Option<Scalar>| s.as_ref().map(F::coerce_scalar).transpose();
        let mut spec = make_spec(self.family, conv(&self.parameter)?, conv(&self.kappa)?)?;
        spec.slack_cap = self.slack_cap;
        Ok(spec)
    }

    fn parameter<F: Field>(&self) -> Result<F> {
        let p = self
            .parameter
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs a parameter", self.family)))?;
        Ok(F::coerce_scalar(p)?)
    }
}

/// Wraps a check that is expected to fail: passes iff `inner` failed.
pub fn expect_failure(name: &str, inner: CheckReport) -> CheckReport {
    let mut out = CheckReport::new(name);
    if inner.is_pass() {
        out.fail("ControlPassed", format!("{} passed", inner.check_name));
    }
    out.push(inner.informational());
    out
}

/// `check_assumptions` plus the family's identity checks.
pub fn verify(cfg: &PipelineConfig) -> Result<CheckReport> {
    if cfg.symbolic() {
        verify_typed::<RationalFunction>(cfg)
    } else {
        verify_typed::<BigRational>(cfg)
    }
}

/// `build_monolith` with essentiality, plus the direct-sum control.
pub fn construct(cfg: &PipelineConfig) -> Result<CheckReport> {
    if cfg.symbolic() {
        construct_typed::<RationalFunction>(cfg)
    } else {
        construct_typed::<BigRational>(cfg)
    }
}

fn verify_typed<F: Field>(cfg: &PipelineConfig) -> Result<CheckReport> {
    let spec = cfg.spec::<F>()?;
    let mut rep = CheckReport::new(format!("verify {}", cfg.family)).with_degree(cfg.degree);
    rep.push(check_assumptions(&spec, cfg.degree, cfg.m_max, &cfg.probe)?);
    rep.push(jx_membership_check(&spec, cfg.m_max, &cfg.probe)?);
    match cfg.family {
        Family::QuantumPlane => {}
        Family::QuantizedWeyl => rep.push(weyl_oracle_check(cfg.parameter::<F>()?, cfg.degree)?),
        Family::OreExtension { r } => {
            rep.push(ore_factorial_identity::<F>(r, IDENTITY_N)?);
            rep.push(ore_submodule_classification::<F>(r, cfg.degree, &cfg.probe)?);
        }
        Family::DownUpExtended => {
            let eta = cfg.parameter::<F>()?;
            rep.push(verify_du_formulas(&spec.presentation, IDENTITY_N));
            rep.push(filtration_checks(eta.clone(), cfg.degree)?);
            rep.push(down_up_duality_check(eta)?);
        }
    }
    Ok(rep)
}

fn construct_typed<F: Field>(cfg: &PipelineConfig) -> Result<CheckReport> {
    let spec = cfg.spec::<F>()?;
    let mut rep = CheckReport::new(format!("construct {}", cfg.family)).with_degree(cfg.degree);
    rep.push(build_monolith(&spec, cfg.degree, &cfg.probe)?.report);
    rep.push(expect_failure(
        "negative_control",
        direct_sum_control(&spec, cfg.degree, &cfg.probe)?,
    ));
    Ok(rep)
}

/// The default configuration of every family: quantum plane and Weyl at
/// `q = t`, Ore at `r = 1, 2, 3`, down-up at `η = κ = 2`.
pub fn default_families() -> Vec<PipelineConfig> {
    [
        Family::QuantumPlane,
        Family::QuantizedWeyl,
        Family::OreExtension { r: 1 },
        Family::OreExtension { r: 2 },
        Family::OreExtension { r: 3 },
        Family::DownUpExtended,
    ]
    .into_iter()
    .map(PipelineConfig::new)
    .collect()
}

/// Chain growth over `D − 2, D, D + 2` for one family.
pub fn chain_growth(cfg: &PipelineConfig) -> Result<CheckReport> {
    let degrees = [cfg.degree.saturating_sub(2), cfg.degree, cfg.degree + 2];
    if cfg.symbolic() {
        chain_growth_check(&cfg.spec::<RationalFunction>()?, &degrees, cfg.m_max, &cfg.probe)
    } else {
        chain_growth_check(&cfg.spec::<BigRational>()?, &degrees, cfg.m_max, &cfg.probe)
    }
}

/// The whole battery: verify, construct and chain growth per family, then
/// the down-up weight checks and the Ore morphism spaces. Families run in
/// parallel; the order of the result is fixed.
pub fn suite(base: &PipelineConfig) -> Result<Vec<CheckReport>> {
    let families: Vec<PipelineConfig> = default_families()
        .into_iter()
        .map(|c| PipelineConfig {
            family: c.family,
            parameter: c.parameter,
            kappa: c.kappa,
            ..base.clone()
        })
        .collect();
    let per_family: Vec<Vec<CheckReport>> = families
        .par_iter()
        .map(|c| Ok(vec![verify(c)?, construct(c)?, chain_growth(c)?]))
        .collect::<Result<_>>()?;
    let mut out: Vec<CheckReport> = per_family.into_iter().flatten().collect();

    let eta = rat(2, 1);
    out.push(singular_weight_report(&eta, IDENTITY_N)?);
    let lambda = singular_weights(&eta, 1)?
        .into_iter()
        .find(|s| s.n == 1)
        .map(|s| s.lambda)
        .ok_or(Error::DegenerateLinearCoefficient { n: 1 })?;
    let verma = verma_module(eta, lambda, base.degree)?;
    out.push(expect_failure("singular_verma_not_simple", is_simple_truncated(&verma, &base.probe)?));
    out.push(down_up_duality_check(RationalFunction::t())?);

    let mut iso = CheckReport::new("ore_morphisms").with_degree(base.degree);
    for m in 0..=3 {
        for m1 in 0..=3 {
            iso.push(ore_nonisomorphism::<BigRational>(2, m, m1, base.degree)?);
        }
    }
    out.push(iso);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_dispatch() {
        let c = PipelineConfig::new(Family::QuantumPlane);
        assert!(c.symbolic());
        assert!(!PipelineConfig::new(Family::DownUpExtended).symbolic());
    }

    #[test]
    fn mu_zero_is_a_configuration_error() {
        let mut c = PipelineConfig::new(Family::DownUpExtended);
        c.kappa = Some(Scalar::integer(1));
        assert_eq!(construct(&c).unwrap_err(), Error::MuZero);
    }

    #[test]
    fn control_wrapper_inverts() {
        let mut bad = CheckReport::new("x");
        bad.fail("NotEssential", "v");
        assert!(expect_failure("c", bad).is_pass());
        assert!(!expect_failure("c", CheckReport::new("y")).is_pass());
    }

    #[test]
    fn echo_lists_resolved_values() {
        let e = PipelineConfig::new(Family::OreExtension { r: 2 }).echo();
        assert_eq!(e["family"], "ore(r=2)");
        assert_eq!(e["margin"], "default");
        assert!(!e.contains_key("parameter"));
    }
}
