//! Weight-truncated left modules with partial generator actions.

mod ideal;
mod modular;
mod morphism;
mod probe;

use std::sync::Arc;

use crate::algebra::{render_poly, GeneratorId, Multiplier, NcPoly, Presentation, Word};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dense_from_sparse, sparse_from_dense, SparseVec, Subspace};

pub use ideal::{default_slack_cap, truncate_ideal, IdealTruncation};
pub use morphism::solve_module_morphism;
pub use probe::{
    essentiality_check, generated_submodule, is_simple_truncated, probe_vector,
    submodule_chain_check, EssentialityOutcome, ProbeConfig,
};

/// Action of one generator on the prefix of basis vectors of weight
/// ≤ D − wt(g); column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAction<F> {
    pub domain: usize,
    pub columns: Vec<SparseVec<F>>,
}

/// Bookkeeping of a module built as `A/I`.
#[derive(Clone, Debug)]
pub struct QuotientData<F> {
    /// Normal monomials of weight ≤ D.
    pub monomials: Vec<Word>,
    /// `I` truncated to weight ≤ D, in monomial coordinates.
    pub ideal: Subspace<F>,
    /// Coset representatives (non-pivot monomials), one per basis vector.
    pub reps: Vec<Word>,
    /// Basis index of each monomial that is a representative.
    pub rep_index: Vec<Option<usize>>,
    pub slack_used: u32,
}

#[derive(Clone, Debug)]
pub struct TruncatedModule<F> {
    pres: Arc<Presentation<F>>,
    degree: u32,
    labels: Vec<String>,
    weights: Vec<u32>,
    actions: Vec<GenAction<F>>,
    cyclic_vector: Option<Vec<F>>,
    quotient: Option<QuotientData<F>>,
}

impl<F: Field> TruncatedModule<F> {
    /// `A/I` truncated at `degree`, `I` the left ideal generated by `gens`.
    pub fn build_cyclic(
        pres: Arc<Presentation<F>>,
        gens: &[NcPoly<F>],
        degree: u32,
        slack_start: u32,
        slack_cap: Option<u32>,
    ) -> Result<Self> {
        let tr = truncate_ideal(&pres, gens, degree, slack_start, slack_cap)?;
        let monomials = pres.normal_monomials(degree);
        let ideal = tr.subspace;
        let pivots: std::collections::BTreeSet<usize> = ideal.pivots().collect();
        let mut reps = Vec::new();
        let mut rep_index = vec![None; monomials.len()];
        for (i, m) in monomials.iter().enumerate() {
            if !pivots.contains(&i) {
                rep_index[i] = Some(reps.len());
                reps.push(m.clone());
            }
        }
        let labels = reps.iter().map(|w| word_label(&pres, w)).collect();
        let weights: Vec<u32> = reps.iter().map(|w| pres.word_weight(w)).collect();
        let index: std::collections::HashMap<&Word, usize> =
            monomials.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let ech = ideal.to_echelon();
        let mut mult = Multiplier::new(&pres);
        let mut actions = Vec::new();
        for g in pres.generators() {
            let wg = pres.weight(g);
            let domain = weights.partition_point(|&w| w + wg <= degree);
            let mut columns = Vec::with_capacity(domain);
            for r in &reps[..domain] {
                let img = mult.gen_times_word(g, r);
                let mut v = SparseVec::new();
                for (w, c) in img.terms() {
                    v.insert(index[w], c.clone());
                }
                columns.push(project(&ech.reduce(v), &rep_index));
            }
            actions.push(GenAction { domain, columns });
        }
        let mut cyclic = vec![F::zero(); reps.len()];
        let one = project(&ech.reduce(SparseVec::from([(0usize, F::one())])), &rep_index);
        for (i, c) in one {
            cyclic[i] = c;
        }
        Ok(Self {
            pres,
            degree,
            labels,
            weights,
            actions,
            cyclic_vector: Some(cyclic),
            quotient: Some(QuotientData {
                monomials,
                ideal,
                reps,
                rep_index,
                slack_used: tr.slack_used,
            }),
        })
    }

    /// Module on an explicit weighted basis. `image(g, j)` is `g·e_j`; it
    /// is queried only for `j` in the generator's domain.
    pub fn explicit(
        pres: Arc<Presentation<F>>,
        degree: u32,
        labels: Vec<String>,
        weights: Vec<u32>,
        mut image: impl FnMut(GeneratorId, usize) -> SparseVec<F>,
    ) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::DimensionMismatch("labels and weights differ in length".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) || weights.iter().any(|&w| w > degree) {
            return Err(Error::DimensionMismatch(
                "basis weights must be ascending and at most D".into(),
            ));
        }
        let mut actions = Vec::new();
        for g in pres.generators() {
            let wg = pres.weight(g);
            let domain = weights.partition_point(|&w| w + wg <= degree);
            let columns = (0..domain).map(|j| image(g, j)).collect();
            actions.push(GenAction { domain, columns });
        }
        Ok(Self {
            pres,
            degree,
            labels,
            weights,
            actions,
            cyclic_vector: None,
            quotient: None,
        })
    }

    pub fn with_cyclic_vector(mut self, v: Vec<F>) -> Self {
        self.cyclic_vector = Some(v);
        self
    }

    pub fn presentation(&self) -> &Arc<Presentation<F>> {
        &self.pres
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn action(&self, g: GeneratorId) -> &GenAction<F> {
        &self.actions[g.index()]
    }

    pub fn cyclic_vector(&self) -> Option<&[F]> {
        self.cyclic_vector.as_deref()
    }

    pub fn quotient(&self) -> Option<&QuotientData<F>> {
        self.quotient.as_ref()
    }

    /// Number of basis vectors of weight ≤ `w`.
    pub fn count_weight_le(&self, w: u32) -> usize {
        self.weights.partition_point(|&x| x <= w)
    }

    /// Largest weight in the support; `None` for zero.
    pub fn vector_weight(&self, v: &SparseVec<F>) -> Option<u32> {
        v.last_key_value().map(|(&i, _)| self.weights[i])
    }

    pub fn apply_gen(&self, g: GeneratorId, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        let act = &self.actions[g.index()];
        let mut out = SparseVec::new();
        for (&j, c) in v {
            if j >= act.domain {
                return Err(Error::WeightBudgetExceeded {
                    needed: self.weights[j] + self.pres.weight(g),
                    cap: self.degree,
                });
            }
            axpy(&mut out, c, &act.columns[j]);
        }
        Ok(out)
    }

    pub fn act_sparse(&self, p: &NcPoly<F>, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        let wv = self.vector_weight(v).unwrap_or(0);
        let wp = self.pres.poly_weight(p);
        if !v.is_empty() && wv + wp > self.degree {
            return Err(Error::WeightBudgetExceeded {
                needed: wv + wp,
                cap: self.degree,
            });
        }
        let mut out = SparseVec::new();
        for (w, c) in p.terms() {
            let mut acc = v.clone();
            for &g in w.iter().rev() {
                acc = self.apply_gen(g, &acc)?;
            }
            axpy(&mut out, c, &acc);
        }
        Ok(out)
    }

    /// `p·v` by the partial actions.
    pub fn act(&self, p: &NcPoly<F>, v: &[F]) -> Result<Vec<F>> {
        let s = self.act_sparse(p, &sparse_from_dense(v))?;
        Ok(dense_from_sparse(&s, self.dim()))
    }

    /// Class of `p` in a quotient module.
    pub fn class_of(&self, p: &NcPoly<F>) -> Result<Vec<F>> {
        let q = self
            .quotient
            .as_ref()
            .ok_or_else(|| Error::DimensionMismatch("module is not a quotient A/I".into()))?;
        let mut mult = Multiplier::new(&self.pres);
        let np = mult.normal_form(p);
        let wp = self.pres.poly_weight(&np);
        if wp > self.degree {
            return Err(Error::WeightBudgetExceeded {
                needed: wp,
                cap: self.degree,
            });
        }
        let index: std::collections::HashMap<&Word, usize> =
            q.monomials.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = SparseVec::new();
        for (w, c) in np.terms() {
            v.insert(index[w], c.clone());
        }
        let r = q.ideal.reduce(&dense_from_sparse(&v, q.monomials.len()));
        let s = project(&sparse_from_dense(&r), &q.rep_index);
        Ok(dense_from_sparse(&s, self.dim()))
    }

    /// `v ↦ e_i` for basis vectors; readable rendering of any vector.
    pub fn render_vector(&self, v: &[F]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("[{}]", self.labels[i])
                } else {
                    format!("{c}*[{}]", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn render_sparse(&self, v: &SparseVec<F>) -> String {
        self.render_vector(&dense_from_sparse(v, self.dim()))
    }

    /// External direct sum; basis re-sorted by weight. Returns the module
    /// and the positions of each summand's basis vectors.
    pub fn direct_sum(&self, other: &Self) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        if !Arc::ptr_eq(&self.pres, &other.pres) || self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "summands need the same presentation and D".into(),
            ));
        }
        let mut order: Vec<(u32, usize, usize)> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, 0, i))
            .chain(other.weights.iter().enumerate().map(|(i, &w)| (w, 1, i)))
            .collect();
        order.sort();
        let mut pos = [vec![0; self.dim()], vec![0; other.dim()]];
        for (k, &(_, s, i)) in order.iter().enumerate() {
            pos[s][i] = k;
        }
        let labels = order
            .iter()
            .map(|&(_, s, i)| {
                if s == 0 {
                    format!("{}|0", self.labels[i])
                } else {
                    format!("0|{}", other.labels[i])
                }
            })
            .collect();
        let weights = order.iter().map(|&(w, _, _)| w).collect();
        let parts = [self, other];
        let sum = Self::explicit(self.pres.clone(), self.degree, labels, weights, |g, k| {
            let (_, s, i) = order[k];
            parts[s].actions[g.index()].columns[i]
                .iter()
                .map(|(&j, c)| (pos[s][j], c.clone()))
                .collect()
        })?;
        let [p0, p1] = pos;
        Ok((sum, p0, p1))
    }

    /// The module structure on an action-stable subspace, with the RREF
    /// rows as basis.
    pub fn submodule(&self, sub: &Subspace<F>) -> Result<Self> {
        let rows: Vec<SparseVec<F>> = sub.sparse_rows().cloned().collect();
        let pivots: Vec<usize> = sub.pivots().collect();
        let weights: Vec<u32> = pivots.iter().map(|&p| self.weights[p]).collect();
        let labels = rows.iter().map(|r| self.render_sparse(r)).collect();
        let mut unstable = None;
        let m = Self::explicit(self.pres.clone(), self.degree, labels, weights, |g, k| {
            let img = self.apply_gen(g, &rows[k]).expect("row lies in the domain");
            // RREF: coordinates are the entries at the pivot columns.
            let coords: SparseVec<F> = pivots
                .iter()
                .enumerate()
                .filter_map(|(i, p)| img.get(p).map(|c| (i, c.clone())))
                .collect();
            let mut check = SparseVec::new();
            for (&i, c) in &coords {
                axpy(&mut check, c, &rows[i]);
            }
            if check != img && unstable.is_none() {
                unstable = Some(format!("{} does not preserve the subspace", self.pres.name(g)));
            }
            coords
        })?;
        match unstable {
            Some(msg) => Err(Error::DimensionMismatch(msg)),
            None => Ok(m),
        }
    }

    /// Matrix of `g` restricted to its domain: `dim × domain`, as dense rows.
    pub fn action_matrix(&self, g: GeneratorId) -> Vec<Vec<F>> {
        let act = &self.actions[g.index()];
        let mut m = vec![vec![F::zero(); act.domain]; self.dim()];
        for (j, col) in act.columns.iter().enumerate() {
            for (&i, c) in col {
                m[i][j] = c.clone();
            }
        }
        m
    }
}

fn project<F: Field>(v: &SparseVec<F>, rep_index: &[Option<usize>]) -> SparseVec<F> {
    v.iter()
        .map(|(&i, c)| {
            (
                rep_index[i].expect("reduced vectors avoid pivot columns"),
                c.clone(),
            )
        })
        .collect()
}

fn word_label<F: Field>(pres: &Presentation<F>, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        render_poly(pres, &NcPoly::word(w.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Family};
    use crate::arith::{rat, BigRational, RationalFunction};

    #[test]
    fn weyl_quotient_by_a() {
        let p = Arc::new(Presentation::build(Family::QuantizedWeyl, Some(RationalFunction::t())).unwrap());
        let a = parse_poly(&p, "a").unwrap();
        let m = TruncatedModule::build_cyclic(p.clone(), &[a], 7, 0, None).unwrap();
        assert_eq!(m.dim(), 8);
        assert!(m.quotient().unwrap().reps.iter().all(|w| !w.contains(&p.gen("a"))));
    }

    #[test]
    fn down_up_n_basis_and_bookkeeping() {
        let p = Arc::new(Presentation::build(Family::DownUpExtended, Some(rat(2, 1))).unwrap());
        let x = parse_poly(&p, "d - 1").unwrap();
        let d = 8;
        let n = TruncatedModule::build_cyclic(p.clone(), &[x], d, 0, None).unwrap();
        let expect: usize = (0..=d / 2).map(|i| (d - 2 * i + 1) as usize).sum();
        assert_eq!(n.dim(), expect);
        let q = n.quotient().unwrap();
        assert_eq!(q.monomials.len(), q.ideal.dim() + n.dim());
        assert!(q.reps.iter().all(|w| !w.contains(&p.gen("d"))));
    }

    #[test]
    fn weyl_b_acts_on_one_by_scalar() {
        let q = rat(2, 1);
        let p: Arc<Presentation<BigRational>> =
            Arc::new(Presentation::build(Family::QuantizedWeyl, Some(q)).unwrap());
        let x = parse_poly(&p, "-1*b - 1").unwrap();
        let n = TruncatedModule::build_cyclic(p.clone(), &[x], 6, 0, None).unwrap();
        let one = n.cyclic_vector().unwrap().to_vec();
        let b = NcPoly::generator(p.gen("b"));
        let got = n.act(&b, &one).unwrap();
        let expect: Vec<_> = one.iter().map(|c| c.clone() * rat(-1, 1)).collect();
        assert_eq!(got, expect);
        assert_eq!(n.act(&NcPoly::one(), &one).unwrap(), one);
    }
}
