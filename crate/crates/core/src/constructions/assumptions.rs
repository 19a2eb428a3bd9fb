use std::sync::Arc;

use crate::algebra::{
    render_poly, verify_normal_element, verify_presentation_consistency, Multiplier, NcPoly,
    Presentation, Word,
};
use crate::arith::Field;
use crate::error::Result;
use crate::linalg::{sparse_from_dense, Echelon, SparseVec, Subspace};
use crate::module::{
    is_simple_truncated, submodule_chain_check, ProbeConfig, TruncatedModule,
};
use crate::report::CheckReport;

use super::MonolithSpec;

/// Largest total weight used by the graded no-cancellation test.
const NO_CANCEL_WEIGHT: u32 = 3;

fn failed(k: u32) -> String {
    format!("AssumptionFailed({k})")
}

/// Runs assumptions (1) through (6) on a construction package.
pub fn check_assumptions<F: Field>(
    spec: &MonolithSpec<F>,
    degree: u32,
    m_max: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let pres = spec.presentation.clone();
    let mut report = CheckReport::new("assumptions")
        .with_degree(degree)
        .with_probes(cfg.seed, cfg.probes);
    report.note(format!("family {}", pres.family()));

    report.push(assumption_domain(&pres));
    report.push(assumption_normal(spec));
    report.push(assumption_maximal(spec, degree, cfg)?);
    report.push(assumption_no_inverse(spec, degree, m_max)?);

    let n_mod = spec.cyclic_module(&[spec.x.clone()], degree)?;
    let mut chain = submodule_chain_check(&n_mod, &spec.w_elem, m_max, cfg)?;
    chain.check_name = "assumption_5_6".into();
    chain.parameters.slack_used = n_mod.quotient().map(|q| q.slack_used);
    if !chain.is_pass() {
        chain.failure = Some(failed(5));
    }
    report.push(chain);
    Ok(report)
}

/// (1): consistent presentation and leading terms that never cancel.
fn assumption_domain<F: Field>(pres: &Presentation<F>) -> CheckReport {
    let mut rep = CheckReport::new("assumption_1");
    rep.push(verify_presentation_consistency(pres));
    let mut nc = CheckReport::new("graded_no_cancellation");
    let mons = pres.normal_monomials(NO_CANCEL_WEIGHT);
    let n = pres.generator_count();
    let mut mult = Multiplier::new(pres);
    let mut pairs = 0usize;
    for x in &mons {
        for y in &mons {
            if pres.word_weight(x.letters()) + pres.word_weight(y.letters()) > NO_CANCEL_WEIGHT {
                continue;
            }
            pairs += 1;
            let prod = mult.mul(&NcPoly::word(x.clone()), &NcPoly::word(y.clone()));
            let ex: Vec<u32> = x
                .exponents(n)
                .iter()
                .zip(y.exponents(n))
                .map(|(a, b)| a + b)
                .collect();
            let expected = Word::from_exponents(&ex);
            match pres.leading_term(&prod) {
                Some((w, c)) if *w == expected && !c.is_zero() => {}
                _ => nc.fail(
                    "LeadingTermCancelled",
                    format!(
                        "({})*({}) = {}",
                        render_poly(pres, &NcPoly::word(x.clone())),
                        render_poly(pres, &NcPoly::word(y.clone())),
                        render_poly(pres, &prod)
                    ),
                ),
            }
        }
    }
    nc.dimensions = vec![pairs];
    rep.push(nc);
    if !rep.is_pass() {
        rep.failure = Some(failed(1));
    }
    rep
}

/// (2): `w` is normal with automorphism `σ`, and `σ` respects the rules.
fn assumption_normal<F: Field>(spec: &MonolithSpec<F>) -> CheckReport {
    let pres = &*spec.presentation;
    let mut rep = CheckReport::new("assumption_2");
    rep.push(verify_normal_element(pres, &spec.w_elem, &spec.sigma));
    let mut hom = CheckReport::new("sigma_homomorphism");
    let mut mult = Multiplier::new(pres);
    for ((j, i), r) in spec.sigma.rule_residues(pres, &mut mult) {
        if !r.is_zero() {
            hom.fail(
                "NotHomomorphism",
                format!("rule {}{}: residue {}", pres.name(j), pres.name(i), render_poly(pres, &r)),
            );
        }
    }
    rep.push(hom);
    if !rep.is_pass() {
        rep.failure = Some(failed(2));
    }
    rep
}

/// (3): `w − μ ∈ J`, and `A/J` passes the simplicity probe.
fn assumption_maximal<F: Field>(
    spec: &MonolithSpec<F>,
    degree: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("assumption_3").with_degree(degree);
    let l_mod = spec.cyclic_module(&spec.j_gens, degree)?;
    rep.parameters.slack_used = l_mod.quotient().map(|q| q.slack_used);
    let mut w_mu = spec.w_elem.clone();
    w_mu.add_term(Word::empty(), -spec.mu.clone());
    let class = l_mod.class_of(&w_mu)?;
    let mut member = CheckReport::new("w_minus_mu_in_J");
    if spec.mu.is_zero() {
        member.fail("MuZero", "mu = 0");
    }
    if class.iter().any(|c| !c.is_zero()) {
        member.fail(
            "NotInIdeal",
            format!("w - ({}) ≡ {} mod J", spec.mu, l_mod.render_vector(&class)),
        );
    }
    rep.push(member);
    rep.push(is_simple_truncated(&l_mod, cfg)?);
    rep.dimensions = vec![l_mod.dim()];
    if !rep.is_pass() {
        rep.failure = Some(failed(3));
    }
    Ok(rep)
}

/// (4): `σ^m(x)·a ≡ 1 mod J` has no solution, for each `m ≤ m_max`.
///
/// Solved directly in the truncated `A/J`: `1̄` must lie outside the image
/// of left multiplication by `σ^m(x)`. The complement decomposition
/// `A = B ⊕ J` is reported alongside as an informational child.
fn assumption_no_inverse<F: Field>(
    spec: &MonolithSpec<F>,
    degree: u32,
    m_max: u32,
) -> Result<CheckReport> {
    let pres = spec.presentation.clone();
    let mut rep = CheckReport::new("assumption_4").with_degree(degree);
    let l_mod = spec.cyclic_module(&spec.j_gens, degree)?;
    let one = l_mod.cyclic_vector().expect("quotient module").to_vec();
    for m in 0..=m_max {
        let y = spec.sigma_power_x(m);
        let wy = pres.poly_weight(&y);
        let mut child = CheckReport::new(format!("no_inverse_m{m}"));
        if wy > degree {
            child.note("σ^m(x) exceeds the truncation");
            rep.push(child);
            continue;
        }
        let top = l_mod.count_weight_le(degree - wy);
        let mut image = Echelon::new(l_mod.dim());
        for j in 0..top {
            let mut e = SparseVec::new();
            e.insert(j, F::one());
            image.insert(l_mod.act_sparse(&y, &e)?);
        }
        child.dimensions = vec![top, image.rank()];
        if image.contains(&sparse_from_dense(&one)) {
            child.fail(
                "InverseExists",
                format!("σ^{m}(x)·a ≡ 1 mod J is solvable for σ^{m}(x) = {}", render_poly(&pres, &y)),
            );
        }
        rep.push(child);
        rep.push(complement_check(spec, &l_mod, m)?);
    }
    if !rep.is_pass() {
        rep.failure = Some(failed(4));
    }
    Ok(rep)
}

/// Informational: `span{b_m^k} ⊕ J` fills the slice, contains `σ^m(x)`,
/// and is closed under products.
fn complement_check<F: Field>(
    spec: &MonolithSpec<F>,
    l_mod: &TruncatedModule<F>,
    m: u32,
) -> Result<CheckReport> {
    let pres: &Arc<Presentation<F>> = &spec.presentation;
    let degree = l_mod.degree();
    let q = l_mod.quotient().expect("quotient module");
    let mons = &q.monomials;
    let index: std::collections::HashMap<&Word, usize> =
        mons.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let coords = |p: &NcPoly<F>| -> Vec<F> {
        let mut v = vec![F::zero(); mons.len()];
        for (w, c) in p.terms() {
            v[index[w]] = c.clone();
        }
        v
    };
    let b = spec.complement_generator(m);
    let wb = pres.poly_weight(&b).max(1);
    let mut mult = Multiplier::new(pres);
    let mut powers = Vec::new();
    let mut k = 0;
    while k * wb <= degree {
        powers.push(mult.pow(&b, k));
        k += 1;
    }
    let span = Subspace::span(mons.len(), powers.iter().map(&coords));
    let mut rep = CheckReport::new(format!("complement_m{m}")).informational();
    rep.note(format!("b_{m} = {}", render_poly(pres, &b)));
    let meet = span.intersect(&q.ideal);
    let total = span.sum(&q.ideal);
    rep.dimensions = vec![span.dim(), q.ideal.dim(), meet.dim(), mons.len()];
    if !meet.is_zero() {
        rep.fail("ComplementMeetsJ", format!("span of b_{m} powers meets J in dim {}", meet.dim()));
    }
    if total.dim() != mons.len() {
        rep.fail(
            "ComplementTooSmall",
            format!("B + J has dim {} of {}", total.dim(), mons.len()),
        );
    }
    let y = spec.sigma_power_x(m);
    if pres.poly_weight(&y) <= degree && !span.contains(&coords(&y)) {
        rep.fail("SigmaXOutsideB", format!("σ^{m}(x) = {}", render_poly(pres, &y)));
    }
    for i in 0..powers.len() {
        for j in 0..powers.len() {
            if (i + j) as u32 * wb > degree {
                continue;
            }
            let p = mult.mul(&powers[i], &powers[j]);
            if !span.contains(&coords(&p)) {
                rep.fail("NotSubring", format!("b^{i}·b^{j} leaves the span"));
            }
        }
    }
    Ok(rep)
}
