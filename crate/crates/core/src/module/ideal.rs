use std::collections::HashMap;

use crate::algebra::{Multiplier, NcPoly, Presentation, Word};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec, Subspace};

/// A left ideal cut down to weight ≤ D, in the coordinates of
/// `presentation.normal_monomials(D)`.
#[derive(Clone, Debug)]
pub struct IdealTruncation<F> {
    pub subspace: Subspace<F>,
    pub slack_used: u32,
    /// `(slack, dim)` for every slack tried.
    pub history: Vec<(u32, usize)>,
}

/// Index of every normal monomial up to a weight, in monomial order.
pub(crate) struct MonomialIndex {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
}

impl MonomialIndex {
    pub fn new<F: Field>(pres: &Presentation<F>, max_weight: u32) -> Self {
        let words = pres.normal_monomials(max_weight);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Self { words, index }
    }

    /// Coordinates of a normal-form polynomial; `None` if a term is missing
    /// from the index (weight too large).
    pub fn coords<F: Field>(&self, p: &NcPoly<F>) -> Option<SparseVec<F>> {
        let mut v = SparseVec::new();
        for (w, c) in p.terms() {
            v.insert(*self.index.get(w)?, c.clone());
        }
        Some(v)
    }
}

/// Default slack cap: `D`, but always room for two slack values.
pub fn default_slack_cap(degree: u32, slack_start: u32) -> u32 {
    degree.max(slack_start + 2)
}

/// Truncates the left ideal generated by `gens` to weight ≤ `degree`.
///
/// Products `m·g` with `wt(m) + wt(g) ≤ degree + slack` are row-reduced
/// and the part supported in weight ≤ `degree` is kept. The slack grows in
/// steps of two until two consecutive dimensions agree.
pub fn truncate_ideal<F: Field>(
    pres: &Presentation<F>,
    gens: &[NcPoly<F>],
    degree: u32,
    slack_start: u32,
    slack_cap: Option<u32>,
) -> Result<IdealTruncation<F>> {
    if gens.iter().any(NcPoly::is_zero) {
        return Err(Error::InvalidGenerator);
    }
    let low = pres.normal_monomials(degree).len();
    if gens.is_empty() {
        return Ok(IdealTruncation {
            subspace: Subspace::zero(low),
            slack_used: 0,
            history: vec![(0, 0)],
        });
    }
    let cap = slack_cap.unwrap_or_else(|| default_slack_cap(degree, slack_start));
    let top = degree + cap.max(slack_start);
    let index = MonomialIndex::new(pres, top);
    let mut mult = Multiplier::new(pres);
    let normal_gens: Vec<(NcPoly<F>, u32)> = gens
        .iter()
        .map(|g| {
            let ng = mult.normal_form(g);
            let wt = pres.poly_weight(&ng);
            (ng, wt)
        })
        .collect();
    let mut ech = Echelon::new(index.words.len());
    // Monomials already multiplied, per generator, as a prefix length.
    let mut done = vec![0usize; gens.len()];
    let mut history = Vec::new();
    let mut slack = slack_start;
    loop {
        if slack > cap.max(slack_start) {
            return Err(Error::NoStabilization {
                degree,
                slack_cap: cap,
            });
        }
        let bound = degree + slack;
        for (k, (g, wg)) in normal_gens.iter().enumerate() {
            if *wg > bound {
                continue;
            }
            let reach = index
                .words
                .partition_point(|m| pres.word_weight(m) + wg <= bound);
            for m in &index.words[done[k]..reach] {
                let prod = mult.word_times_normal(m, g);
                let v = index
                    .coords(&prod)
                    .expect("products stay within the indexed weight");
                ech.insert(v);
            }
            done[k] = done[k].max(reach);
        }
        let dim = ech.rank_below(low);
        let stable = history.last().is_some_and(|&(_, d)| d == dim);
        history.push((slack, dim));
        if stable {
            return Ok(IdealTruncation {
                subspace: ech.restrict(low),
                slack_used: slack,
                history,
            });
        }
        slack += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Family};
    use crate::arith::RationalFunction;

    #[test]
    fn quantum_plane_principal_ideal() {
        let p = Presentation::build(Family::QuantumPlane, Some(RationalFunction::t())).unwrap();
        let g = parse_poly(&p, "a*b - 1").unwrap();
        let tr = truncate_ideal(&p, &[g], 4, 0, None).unwrap();
        // one ideal element per monomial m with wt(m) + 2 <= 4
        let expect = p.normal_monomials(2).len();
        assert_eq!(tr.subspace.dim(), expect);
        assert_eq!(tr.slack_used, 2);
        let idx = MonomialIndex::new(&p, 4);
        let mut mult = Multiplier::new(&p);
        let member = mult.mul(&parse_poly(&p, "a*b + 1").unwrap(), &parse_poly(&p, "a*b - 1").unwrap());
        let v = crate::linalg::dense_from_sparse(&idx.coords(&member).unwrap(), idx.words.len());
        assert!(tr.subspace.contains(&v));
    }

    #[test]
    fn unit_and_zero_generators() {
        let p = Presentation::build(Family::QuantizedWeyl, Some(RationalFunction::t())).unwrap();
        let tr = truncate_ideal(&p, &[NcPoly::one()], 5, 0, None).unwrap();
        assert_eq!(tr.subspace.dim(), p.normal_monomials(5).len());
        assert_eq!(
            truncate_ideal(&p, &[NcPoly::zero()], 5, 0, None).unwrap_err(),
            Error::InvalidGenerator
        );
    }
}
