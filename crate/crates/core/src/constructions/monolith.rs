use crate::algebra::{Family, Multiplier, NcPoly};
use crate::arith::Field;
use crate::error::Result;
use crate::linalg::Subspace;
use crate::module::{essentiality_check, generated_submodule, ProbeConfig, TruncatedModule};
use crate::report::CheckReport;

use super::downup::lowest_weight_module;
use super::MonolithSpec;

/// The modules of `0 → L → M → N → 0` at one truncation.
#[derive(Clone, Debug)]
pub struct MonolithOutcome<F> {
    pub report: CheckReport,
    /// `M = A/Jx`.
    pub m: TruncatedModule<F>,
    /// `L = Ax/Jx` as the closure of `x̄` inside `M`.
    pub l_sub: Subspace<F>,
    /// `N = A/Ax`.
    pub n: TruncatedModule<F>,
    /// Intersection of all probe-generated submodules of `M`.
    pub intersection: Subspace<F>,
}

/// Products `g·x`, `g` running over the generators of `J`.
pub fn jx_generators<F: Field>(spec: &MonolithSpec<F>) -> Vec<NcPoly<F>> {
    let mut mult = Multiplier::new(&spec.presentation);
    spec.j_gens.iter().map(|g| mult.mul(g, &spec.x)).collect()
}

/// Builds `M`, `L`, `N`, checks exactness and runs the essentiality probe.
pub fn build_monolith<F: Field>(
    spec: &MonolithSpec<F>,
    degree: u32,
    cfg: &ProbeConfig,
) -> Result<MonolithOutcome<F>> {
    cfg.validate()?;
    let pres = spec.presentation.clone();
    let wx = pres.poly_weight(&spec.x);
    let mut report = CheckReport::new("monolith")
        .with_degree(degree)
        .with_probes(cfg.seed, cfg.probes);
    report.note(format!("family {}", pres.family()));

    let m_mod = spec.cyclic_module(&jx_generators(spec), degree)?;
    let n_mod = spec.cyclic_module(&[spec.x.clone()], degree)?;
    let l_quot = spec.cyclic_module(&spec.j_gens, degree - wx)?;
    report.parameters.slack_used = m_mod.quotient().map(|q| q.slack_used);

    let x_bar = m_mod.class_of(&spec.x)?;
    let l_sub = generated_submodule(&m_mod, &[x_bar.clone()], 0)?;

    // exactness at truncation
    let mut exact = CheckReport::new("exactness");
    exact.dimensions = vec![m_mod.dim(), l_sub.dim(), n_mod.dim(), l_quot.dim()];
    if m_mod.dim() != n_mod.dim() + l_quot.dim() {
        exact.fail(
            "ExactnessMismatch",
            format!(
                "dim M = {} but dim N + dim (A/J) below D - wt(x) = {} + {}",
                m_mod.dim(),
                n_mod.dim(),
                l_quot.dim()
            ),
        );
    }
    let ax_dim = n_mod.quotient().expect("quotient").ideal.dim();
    let i_dim = m_mod.quotient().expect("quotient").ideal.dim();
    if l_sub.dim() != ax_dim - i_dim {
        exact.fail(
            "ExactnessMismatch",
            format!("dim L = {} but dim Ax - dim Jx = {}", l_sub.dim(), ax_dim - i_dim),
        );
    }
    report.push(exact);

    let ess = essentiality_check(&m_mod, &l_sub, cfg)?;
    report.push(ess.report);
    report.push(signature_check(&m_mod, &l_sub, &ess.intersection, cfg)?);

    if pres.family() == Family::DownUpExtended {
        report.push(lowest_weight_comparison(spec, &m_mod, &x_bar)?);
    }
    Ok(MonolithOutcome {
        report,
        m: m_mod,
        l_sub,
        n: n_mod,
        intersection: ess.intersection,
    })
}

/// Every probe submodule contains the low slice of `L`, and their
/// intersection is exactly that slice.
///
/// The slice is `L` restricted to basis vectors of weight ≤ D − margin,
/// the same headroom probes get. Above it a probe closure can stop short
/// of `L` only because the truncation cut it off.
fn signature_check<F: Field>(
    module: &TruncatedModule<F>,
    l_sub: &Subspace<F>,
    intersection: &Subspace<F>,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    let margin = cfg.socle_margin_for(module.presentation().max_generator_weight(), module.degree())?;
    let level = module.degree().saturating_sub(margin);
    let cut = module.count_weight_le(level);
    let l_low = l_sub.restrict(cut);
    let meet_low = intersection.restrict(cut);
    let mut rep = CheckReport::new("monolithic_signature").with_degree(module.degree());
    rep.dimensions = vec![level as usize, l_low.dim(), meet_low.dim()];
    if l_low.is_zero() {
        rep.fail("SignatureEmpty", format!("L has no vectors of weight ≤ {level}"));
    } else if meet_low != l_low {
        rep.fail(
            "SignatureMismatch",
            format!(
                "below weight {level}: intersection has dim {}, L has dim {}",
                meet_low.dim(),
                l_low.dim()
            ),
        );
    }
    Ok(rep)
}

/// `L` against the truncated lowest-weight module `W(κ)`: the action
/// matrices agree under `d^n·x̄ ↦ a_n`, and `u·x̄ = 0`.
fn lowest_weight_comparison<F: Field>(
    spec: &MonolithSpec<F>,
    m_mod: &TruncatedModule<F>,
    x_bar: &[F],
) -> Result<CheckReport> {
    let pres = spec.presentation.clone();
    let c = pres.down_up_constants().expect("down-up");
    let kappa = spec.kappa.clone().expect("down-up spec has kappa");
    let mut rep = CheckReport::new("lowest_weight_match");
    let (u, d) = (pres.gen("u"), pres.gen("d"));
    // x̄ has weight 1, so a_n ↔ d^n·x̄ needs W(κ) truncated one lower
    let w_mod = lowest_weight_module(c.eta.clone(), kappa, m_mod.degree() - 1)?;

    let ux = m_mod.act(&NcPoly::generator(u), x_bar)?;
    if ux.iter().any(|v| !v.is_zero()) {
        rep.fail("LowestWeightMismatch", format!("u·x̄ = {}", m_mod.render_vector(&ux)));
    }
    let mut e = vec![x_bar.to_vec()];
    for n in 1..w_mod.dim() {
        let next = m_mod.act(&NcPoly::generator(d), &e[n - 1])?;
        e.push(next);
    }
    if Subspace::span(m_mod.dim(), e.iter().cloned()).dim() != e.len() {
        rep.fail("LowestWeightMismatch", "the vectors d^n·x̄ are dependent");
    }
    for g in pres.generators() {
        let act = w_mod.action(g);
        for (n, col) in act.columns.iter().enumerate() {
            let got = m_mod.act(&NcPoly::generator(g), &e[n])?;
            let mut want = vec![F::zero(); m_mod.dim()];
            for (&i, coef) in col {
                for (k, x) in e[i].iter().enumerate() {
                    want[k] = want[k].clone() + coef.clone() * x;
                }
            }
            if got != want {
                rep.fail(
                    "LowestWeightMismatch",
                    format!("{}·d^{n}x̄ = {}", pres.name(g), m_mod.render_vector(&got)),
                );
            }
        }
    }
    rep.dimensions = vec![e.len(), w_mod.dim()];
    Ok(rep)
}

/// Negative control: `S ⊕ S` with `S = A/J` is not an essential extension
/// of its first summand.
pub fn direct_sum_control<F: Field>(
    spec: &MonolithSpec<F>,
    degree: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    let s = spec.cyclic_module(&spec.j_gens, degree)?;
    let (sum, first, _) = s.direct_sum(&s)?;
    let basis = first.iter().map(|&i| {
        let mut v = vec![F::zero(); sum.dim()];
        v[i] = F::one();
        v
    });
    let l = Subspace::span(sum.dim(), basis);
    let mut out = essentiality_check(&sum, &l, cfg)?.report;
    out.check_name = "direct_sum_control".into();
    Ok(out)
}
