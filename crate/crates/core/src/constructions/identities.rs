use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{render_poly, Multiplier, NcPoly, Word};
use crate::arith::Field;
use crate::error::Result;
use crate::linalg::Subspace;
use crate::module::{
    generated_submodule, probe_vector, truncate_ideal, ProbeConfig,
};
use crate::report::CheckReport;

use super::monolith::jx_generators;
use super::MonolithSpec;

/// Weight of the random multipliers `a` in the membership check.
const LOW_WEIGHT: u32 = 2;

/// Random element supported on normal monomials of weight ≤ `LOW_WEIGHT`.
fn random_low<F: Field>(mons: &[Word], cfg: &ProbeConfig, stream: u64) -> NcPoly<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let b = cfg.coefficient_bound;
    NcPoly::from_terms(
        mons.iter()
            .map(|w| (w.clone(), F::from_i64(rng.gen_range(-b..=b))))
            .filter(|(_, c)| !c.is_zero()),
    )
}

/// `σ^m(x)(w'^m − a·x) − (1 − σ^m(x)·a)·x ∈ Jx` with `w' = μ⁻¹w`, for
/// `m ≤ m_max` and `cfg.probes` random `a` of low weight per `m`.
pub fn jx_membership_check<F: Field>(
    spec: &MonolithSpec<F>,
    m_max: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let pres = spec.presentation.clone();
    let mut rep = CheckReport::new("jx_membership").with_probes(cfg.seed, cfg.probes);
    let mut mult = Multiplier::new(&pres);
    let mu_inv = spec.mu.inv().ok_or(crate::error::Error::MuZero)?;
    let w_norm = spec.w_elem.scale(&mu_inv);
    let low = pres.normal_monomials(LOW_WEIGHT);
    let one = NcPoly::one();
    let mut cases = Vec::new();
    for m in 0..=m_max {
        let y = spec.sigma_power_x(m);
        let wm = mult.pow(&w_norm, m);
        for k in 0..cfg.probes {
            // stream 0 is a = 0
            let a: NcPoly<F> = if k == 0 {
                NcPoly::zero()
            } else {
                random_low(&low, cfg, ((m as u64) << 32) | k as u64)
            };
            let ax = mult.mul(&a, &spec.x);
            let left = mult.mul(&y, &wm.sub(&ax));
            let ya = mult.mul(&y, &a);
            let right = mult.mul(&one.sub(&ya), &spec.x);
            cases.push((m, a, left.sub(&right)));
        }
    }
    let top = cases.iter().map(|(_, _, e)| pres.poly_weight(e)).max().unwrap_or(0);
    let ideal = truncate_ideal(&pres, &jx_generators(spec), top, 2, spec.slack_cap)?;
    rep.parameters.degree = Some(top);
    rep.parameters.slack_used = Some(ideal.slack_used);
    let mons = pres.normal_monomials(top);
    let index: HashMap<&Word, usize> = mons.iter().enumerate().map(|(i, w)| (w, i)).collect();
    for (m, a, e) in &cases {
        let mut v = vec![F::zero(); mons.len()];
        for (w, c) in e.terms() {
            v[index[w]] = c.clone();
        }
        if !ideal.subspace.contains(&v) {
            rep.fail(
                "IdentityFailed",
                format!("m={m}, a = {}: residue {} not in Jx", render_poly(&pres, a), render_poly(&pres, e)),
            );
        }
    }
    rep.dimensions = vec![cases.len(), ideal.subspace.dim()];
    Ok(rep)
}

/// Distinct submodules of `N = A/Ax` generated by structural and random
/// probes and by the chain `w^m·1̄` (every `m` with `w^m` inside the
/// truncation), at each truncation in `degrees`.
///
/// Passes when the count grows strictly with D and the largest D shows
/// `m_max + 1` distinct chain members.
pub fn chain_growth_check<F: Field>(
    spec: &MonolithSpec<F>,
    degrees: &[u32],
    m_max: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let pres = spec.presentation.clone();
    let margin = cfg.margin_for(pres.max_generator_weight())?;
    let ww = pres.poly_weight(&spec.w_elem);
    let mut rep = CheckReport::new("chain_growth").with_probes(cfg.seed, cfg.probes);
    let mut counts = Vec::new();
    let mut chain_members = 0;
    for &d in degrees {
        let n = spec.cyclic_module(&[spec.x.clone()], d)?;
        let max_w = d.saturating_sub(margin);
        let mut seeds: Vec<Vec<F>> = (0..n.count_weight_le(max_w))
            .map(|i| {
                let mut e = vec![F::zero(); n.dim()];
                e[i] = F::one();
                e
            })
            .collect();
        seeds.extend((0..cfg.probes).filter_map(|k| probe_vector(&n, cfg, k as u64, max_w)));
        let mut mult = Multiplier::new(&pres);
        let cyc = n.cyclic_vector().expect("cyclic").to_vec();
        let mut chain = Vec::new();
        // every chain member that fits, not just m ≤ m_max
        for m in (0..).take_while(|m| m * ww <= d) {
            chain.push(n.act(&mult.pow(&spec.w_elem, m), &cyc)?);
        }
        let closures: Vec<Subspace<F>> = seeds
            .par_iter()
            .chain(chain.par_iter())
            .map(|v| generated_submodule(&n, &[v.clone()], 0))
            .collect::<Result<_>>()?;
        let chain_subs = &closures[seeds.len()..];
        chain_members = distinct(chain_subs);
        let c = distinct(&closures);
        rep.note(format!("D={d}: {c} distinct submodules, {chain_members} chain members"));
        counts.push(c);
    }
    if counts.windows(2).any(|w| w[1] <= w[0]) {
        rep.fail("ChainNotGrowing", format!("counts {counts:?}"));
    }
    if chain_members < m_max as usize + 1 {
        rep.fail(
            "ChainNotGrowing",
            format!("only {chain_members} distinct w^m N at the largest D"),
        );
    }
    rep.dimensions = counts;
    Ok(rep)
}

fn distinct<F: Field>(subs: &[Subspace<F>]) -> usize {
    let mut seen: Vec<&Subspace<F>> = Vec::new();
    for s in subs {
        if !seen.contains(&s) {
            seen.push(s);
        }
    }
    seen.len()
}
