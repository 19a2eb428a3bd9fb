use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Subspace};

use super::TruncatedModule;

/// Linear maps `f: src → dst` with `f(g·v) = g·f(v)` wherever both sides
/// are defined, as a subspace of the coefficient space. Coordinate
/// `k·dim(src) + j` is the `(k, j)` entry (row in `dst`, column in `src`).
///
/// Where `g·s_j` is defined in `src`, `f(s_j)` is also required to lie in
/// the domain of `g` in `dst`, so that weights are respected.
pub fn solve_module_morphism<F: Field>(
    src: &TruncatedModule<F>,
    dst: &TruncatedModule<F>,
) -> Result<Subspace<F>> {
    if src.presentation().generator_count() != dst.presentation().generator_count()
        || src.degree() != dst.degree()
    {
        return Err(Error::DimensionMismatch(
            "morphisms need the same presentation and D".into(),
        ));
    }
    let (ns, nd) = (src.dim(), dst.dim());
    let n = ns * nd;
    if n == 0 {
        return Ok(Subspace::zero(n));
    }
    let var = |k: usize, j: usize| k * ns + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for g in src.presentation().generators() {
        let (sa, da) = (src.action(g), dst.action(g));
        for j in 0..sa.domain {
            for k in da.domain..nd {
                let mut r = vec![F::zero(); n];
                r[var(k, j)] = F::one();
                rows.push(r);
            }
            for k in 0..nd {
                let mut r = vec![F::zero(); n];
                for (&i, c) in &sa.columns[j] {
                    r[var(k, i)] = r[var(k, i)].clone() + c;
                }
                for (l, col) in da.columns.iter().enumerate() {
                    if let Some(c) = col.get(&k) {
                        r[var(l, j)] = r[var(l, j)].clone() - c.clone();
                    }
                }
                if r.iter().any(|x| !x.is_zero()) {
                    rows.push(r);
                }
            }
        }
    }
    Ok(Subspace::span(n, nullspace(&rows, n)))
}
