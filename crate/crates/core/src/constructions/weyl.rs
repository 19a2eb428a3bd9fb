use std::sync::Arc;

use crate::algebra::{Family, NcPoly, Presentation, Word};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::module::TruncatedModule;
use crate::report::CheckReport;

/// `N = A/A((1−q)b − 1)` for the quantized Weyl algebra on the basis
/// `u_0 … u_D` with `a·u_n = q^n(u_n + u_{n+1})`, `b·u_n = q^{−n}(1−q)⁻¹u_n`.
pub fn weyl_n_closed_form<F: Field>(q: F, degree: u32) -> Result<TruncatedModule<F>> {
    let pres = Arc::new(Presentation::build(Family::QuantizedWeyl, Some(q.clone()))?);
    let (a, _b) = (pres.gen("a"), pres.gen("b"));
    let n = degree as usize + 1;
    let inv_1mq = (F::one() - q.clone())
        .inv()
        .ok_or_else(|| Error::InvalidParameter("q = 1".into()))?;
    let labels = (0..n).map(|i| format!("u{i}")).collect();
    let weights = (0..n as u32).collect();
    let m = TruncatedModule::explicit(pres, degree, labels, weights, |g, j| {
        let qn = q.powi(j as i64).expect("q != 0");
        let mut v = SparseVec::new();
        if g == a {
            v.insert(j, qn.clone());
            v.insert(j + 1, qn);
        } else {
            v.insert(j, q.powi(-(j as i64)).expect("q != 0") * &inv_1mq);
        }
        v
    })?;
    let mut cyc = vec![F::zero(); n];
    cyc[0] = F::one();
    Ok(m.with_cyclic_vector(cyc))
}

/// The closed form against the truncated build of `N`: with
/// `u_0 = 1̄` and `u_{n+1} = (q^{−n}a − 1)u_n` computed in the build, both
/// generators have identical matrices in the two bases.
pub fn weyl_oracle_check<F: Field>(q: F, degree: u32) -> Result<CheckReport> {
    let closed = weyl_n_closed_form(q.clone(), degree)?;
    let pres = closed.presentation().clone();
    let a = pres.gen("a");
    let x = NcPoly::term(Word::letter(pres.gen("b")), F::one() - q.clone()).sub(&NcPoly::one());
    let built = TruncatedModule::build_cyclic(pres.clone(), &[x], degree, 2, None)?;
    let mut rep = CheckReport::new("weyl_closed_form").with_degree(degree);
    rep.parameters.slack_used = built.quotient().map(|d| d.slack_used);
    if built.dim() != closed.dim() {
        rep.fail(
            "OracleMismatch",
            format!("dim N = {}, closed form has {}", built.dim(), closed.dim()),
        );
        return Ok(rep);
    }
    // basis change: column n is u_n in the built basis
    let mut u = vec![built.cyclic_vector().expect("cyclic").to_vec()];
    let a_poly = NcPoly::generator(a);
    for n in 0..degree as usize {
        let au = built.act(&a_poly, &u[n])?;
        let c = q.powi(-(n as i64))?;
        let next: Vec<F> = au.iter().zip(&u[n]).map(|(x, y)| c.clone() * x - y.clone()).collect();
        u.push(next);
    }
    let r = rank(&u, built.dim());
    rep.dimensions = vec![built.dim(), r];
    if r != built.dim() {
        rep.fail("OracleMismatch", format!("the u_n span only {r} dimensions"));
        return Ok(rep);
    }
    for g in pres.generators() {
        let (cb, bb) = (closed.action(g), built.action(g));
        if cb.domain != bb.domain {
            rep.fail("OracleMismatch", format!("domains of {} differ", pres.name(g)));
            continue;
        }
        for (j, col) in cb.columns.iter().enumerate() {
            let got = built.act(&NcPoly::generator(g), &u[j])?;
            let mut want = vec![F::zero(); built.dim()];
            for (&i, c) in col {
                for (k, x) in u[i].iter().enumerate() {
                    want[k] = want[k].clone() + c.clone() * x;
                }
            }
            if got != want {
                rep.fail(
                    "OracleMismatch",
                    format!("{}·u{j} = {}", pres.name(g), built.render_vector(&got)),
                );
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, RationalFunction};

    #[test]
    fn closed_form_first_columns() {
        let m = weyl_n_closed_form(rat(3, 1), 4).unwrap();
        let p = m.presentation().clone();
        let (a, b) = (p.gen("a"), p.gen("b"));
        assert_eq!(m.action(b).columns[0].get(&0), Some(&rat(-1, 2)));
        let a0 = &m.action(a).columns[0];
        assert_eq!((a0.get(&0), a0.get(&1)), (Some(&rat(1, 1)), Some(&rat(1, 1))));
    }

    #[test]
    fn oracle_matches_symbolic() {
        let r = weyl_oracle_check(RationalFunction::t(), 6).unwrap();
        assert!(r.is_pass(), "{:?}", r.witnesses);
    }
}
