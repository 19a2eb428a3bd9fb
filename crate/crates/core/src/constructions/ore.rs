use std::sync::Arc;

use crate::algebra::{Family, Multiplier, NcPoly, Presentation, Word};
use crate::arith::Field;
use crate::error::Result;
use crate::linalg::Subspace;
use crate::module::{
    generated_submodule, probe_vector, solve_module_morphism, ProbeConfig, TruncatedModule,
};
use crate::report::CheckReport;

/// `N = A/A(b − 1)` with the index of `a^k` for each `k ≤ D`.
fn ore_n<F: Field>(r: u32, degree: u32) -> Result<(TruncatedModule<F>, Vec<usize>)> {
    let pres = Arc::new(Presentation::build(Family::OreExtension { r }, None)?);
    let a = pres.gen("a");
    let x = NcPoly::generator(pres.gen("b")).sub(&NcPoly::one());
    let n = TruncatedModule::build_cyclic(pres, &[x], degree, 2, None)?;
    let q = n.quotient().expect("quotient");
    let mut index = Vec::new();
    for k in 0..=degree as usize {
        let w = Word::power(a, k);
        let i = q
            .monomials
            .iter()
            .position(|m| *m == w)
            .and_then(|p| q.rep_index[p])
            .expect("powers of a represent N");
        index.push(i);
    }
    Ok((n, index))
}

/// `a^m·N` truncated: span of the classes of `a^k`, `m ≤ k ≤ D`.
fn power_slice<F: Field>(n: &TruncatedModule<F>, index: &[usize], m: usize) -> Subspace<F> {
    let vecs = index.iter().skip(m).map(|&i| {
        let mut v = vec![F::zero(); n.dim()];
        v[i] = F::one();
        v
    });
    Subspace::span(n.dim(), vecs)
}

fn lowest_a_degree<F: Field>(v: &[F], index: &[usize]) -> Option<usize> {
    index.iter().position(|&i| !v[i].is_zero())
}

/// Submodules of `N` generated by probes are the slices `a^m·N`, and the
/// lowest element of each is `a^m` itself.
pub fn ore_submodule_classification<F: Field>(
    r: u32,
    degree: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let (n, index) = ore_n::<F>(r, degree)?;
    let margin = cfg.margin_for(n.presentation().max_generator_weight())?;
    let max_w = degree.saturating_sub(margin);
    let mut rep = CheckReport::new("ore_submodules")
        .with_degree(degree)
        .with_probes(cfg.seed, cfg.probes);
    let mut seen = Vec::new();
    for k in 0..cfg.probes {
        let Some(v) = probe_vector(&n, cfg, k as u64, max_w) else { continue };
        let m = lowest_a_degree(&v, &index).expect("probes are nonzero");
        let closure = generated_submodule(&n, &[v.clone()], margin)?;
        let slice = power_slice(&n, &index, m);
        if closure != slice {
            rep.fail(
                "NotPowerSlice",
                format!(
                    "{} generates dim {}, a^{m}N has dim {}",
                    n.render_vector(&v),
                    closure.dim(),
                    slice.dim()
                ),
            );
            continue;
        }
        // the lowest row must be a single power of a
        let low = closure.sparse_rows().min_by_key(|row| *row.keys().next_back().unwrap());
        match low {
            Some(row) if row.len() == 1 && row.contains_key(&index[m]) => {}
            _ => rep.fail("NotPowerSlice", format!("lowest element of a^{m}N is not a^{m}")),
        }
        seen.push(m);
    }
    // chain dims D − m + 1
    let chain: Vec<usize> = (0..=degree as usize).map(|m| power_slice(&n, &index, m).dim()).collect();
    for (m, &d) in chain.iter().enumerate() {
        if d != degree as usize - m + 1 {
            rep.fail("NotPowerSlice", format!("dim a^{m}N = {d}"));
        }
    }
    rep.dimensions = seen;
    Ok(rep)
}

/// Morphism spaces between `a^m·N` and `a^{m1}·N` in both directions.
///
/// Passes when the slices are not isomorphic for `m ≠ m1` (some direction
/// admits only zero) and the endomorphisms are scalars for `m = m1`.
/// `dimensions` holds `[dim Hom(a^m N, a^{m1} N), dim Hom(a^{m1} N, a^m N)]`.
pub fn ore_nonisomorphism<F: Field>(r: u32, m: u32, m1: u32, degree: u32) -> Result<CheckReport> {
    let (n, index) = ore_n::<F>(r, degree)?;
    let mut rep = CheckReport::new("ore_nonisomorphism").with_degree(degree);
    rep.note(format!("r={r} m={m} m1={m1}"));
    if m.max(m1) > degree {
        rep.note("slice empty");
        return Ok(rep);
    }
    let src = n.submodule(&power_slice(&n, &index, m as usize))?;
    let dst = n.submodule(&power_slice(&n, &index, m1 as usize))?;
    let fwd = solve_module_morphism(&src, &dst)?.dim();
    let back = solve_module_morphism(&dst, &src)?.dim();
    rep.dimensions = vec![fwd, back];
    if m == m1 {
        if fwd != 1 {
            rep.fail("NotScalar", format!("End(a^{m}N) has dim {fwd}"));
        }
    } else if fwd.min(back) != 0 {
        rep.fail(
            "Isomorphic",
            format!("maps exist both ways between a^{m}N and a^{m1}N ({fwd}, {back})"),
        );
    }
    Ok(rep)
}

/// `(a − 1)^n·v_n = n!·v_0` in `A/A(a − 1)` with `v_n` the class of `b^n`.
pub fn ore_factorial_identity<F: Field>(r: u32, n_max: u32) -> Result<CheckReport> {
    let pres = Arc::new(Presentation::build(Family::OreExtension { r }, None)?);
    let (a, b) = (pres.gen("a"), pres.gen("b"));
    let a1 = NcPoly::generator(a).sub(&NcPoly::one());
    let degree = n_max * (pres.weight(b) + 1);
    let l = TruncatedModule::build_cyclic(pres.clone(), &[a1.clone()], degree, 2, None)?;
    let v0 = l.cyclic_vector().expect("cyclic").to_vec();
    let mut mult = Multiplier::new(&pres);
    let mut rep = CheckReport::new("ore_factorial").with_degree(degree);
    let mut fact = F::one();
    for n in 0..=n_max {
        if n > 0 {
            fact = fact * F::from_i64(n as i64);
        }
        let vn = l.class_of(&NcPoly::word(Word::power(b, n as usize)))?;
        let lhs = l.act(&mult.pow(&a1, n), &vn)?;
        let want: Vec<F> = v0.iter().map(|x| fact.clone() * x).collect();
        if lhs != want {
            rep.fail(
                "IdentityFailed",
                format!("n={n}: (a-1)^n·v_n = {}", l.render_vector(&lhs)),
            );
        }
    }
    rep.dimensions = vec![n_max as usize];
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigRational;

    #[test]
    fn a2_plus_a3_generates_a2_slice() {
        let (n, index) = ore_n::<BigRational>(2, 8).unwrap();
        let mut v = vec![BigRational::zero(); n.dim()];
        v[index[2]] = BigRational::one();
        v[index[3]] = BigRational::one();
        let c = generated_submodule(&n, &[v], 0).unwrap();
        assert_eq!(c, power_slice(&n, &index, 2));
    }

    #[test]
    fn factorial_small() {
        for r in 1..=3 {
            let rep = ore_factorial_identity::<BigRational>(r, 3).unwrap();
            assert!(rep.is_pass(), "r={r}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn hom_dimensions_r2() {
        let d = |m, m1| ore_nonisomorphism::<BigRational>(2, m, m1, 8).unwrap().dimensions;
        assert_eq!(d(0, 1)[0], 0);
        assert_eq!(d(2, 2)[0], 1);
    }
}
