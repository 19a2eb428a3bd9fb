//! Exact sparse row reduction.
//!
//! Pivots are the *last* nonzero coordinate of a row. With coordinates
//! sorted by ascending weight, the rows of an echelon form whose pivot lies
//! below `n` span the intersection with the first `n` coordinates, which is
//! exactly what weight truncation needs.

use std::collections::BTreeMap;

use crate::arith::Field;

pub type SparseVec<F> = BTreeMap<usize, F>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (&i, c) in v {
        out[i] = c.clone();
    }
    out
}

/// `v += c·row`, dropping cancelled entries.
pub fn axpy<F: Field>(v: &mut SparseVec<F>, c: &F, row: &SparseVec<F>) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in row {
        let add = x.clone() * c;
        match v.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(add);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + add;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

fn scale_to_monic<F: Field>(v: &mut SparseVec<F>) {
    let (_, lead) = v.last_key_value().expect("nonzero vector");
    let inv = lead.inv().expect("nonzero pivot");
    for x in v.values_mut() {
        *x = x.clone() * &inv;
    }
}

/// Incremental echelon form keyed by pivot; pivot entries are 1.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec<F>>,
    /// Keep every row fully reduced (RREF) instead of top-reduced only.
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: BTreeMap::new(),
            reduced: false,
        }
    }

    /// An echelon form kept in RREF after every insertion. Slower per
    /// insert, but rows stay canonical, which keeps coefficients small when
    /// rows are fed back into further computations.
    pub fn new_reduced(ambient: usize) -> Self {
        Self {
            reduced: true,
            ..Self::new(ambient)
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows whose pivot lies below `n`.
    pub fn rank_below(&self, n: usize) -> usize {
        self.rows.range(..n).count()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec<F>> {
        self.rows.get(&pivot)
    }

    /// Reduces until the top entry is not a pivot; zero means `v` is in
    /// the span.
    fn reduce_top(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((&p, c)) = v.last_key_value() {
            match self.rows.get(&p) {
                Some(row) => {
                    let c = -c.clone();
                    axpy(&mut v, &c, row);
                }
                None => break,
            }
        }
        v
    }

    /// Remainder of `v` with every pivot coordinate eliminated.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut bound = usize::MAX;
        loop {
            let next = v
                .range(..bound)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(&k, c)| (k, c.clone()));
            match next {
                Some((k, c)) => {
                    axpy(&mut v, &-c, &self.rows[&k]);
                    bound = k;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_top(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        self.insert_pivot(v).is_some()
    }

    /// Adds `v` to the span; returns the new pivot if the rank grew.
    pub fn insert_pivot(&mut self, v: SparseVec<F>) -> Option<usize> {
        let mut v = if self.reduced {
            self.reduce(v)
        } else {
            self.reduce_top(v)
        };
        let p = *v.last_key_value()?.0;
        debug_assert!(p < self.ambient);
        scale_to_monic(&mut v);
        if self.reduced {
            for row in self.rows.range_mut(p + 1..).map(|(_, r)| r) {
                if let Some(c) = row.get(&p).cloned() {
                    axpy(row, &-c, &v);
                }
            }
        }
        self.rows.insert(p, v);
        Some(p)
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    /// Reduced row echelon form of the span.
    pub fn to_subspace(&self) -> Subspace<F> {
        self.restrict(self.ambient)
    }

    /// RREF of the span intersected with the first `n` coordinates.
    pub fn restrict(&self, n: usize) -> Subspace<F> {
        let mut done: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&p, row) in self.rows.range(..n) {
            let mut r = row.clone();
            let mut bound = p;
            loop {
                let next = r
                    .range(..bound)
                    .rev()
                    .find(|(k, _)| done.contains_key(k))
                    .map(|(&k, c)| (k, c.clone()));
                match next {
                    Some((k, c)) => {
                        axpy(&mut r, &-c, &done[&k]);
                        bound = k;
                    }
                    None => break,
                }
            }
            done.insert(p, r);
        }
        Subspace {
            ambient_dim: n.min(self.ambient),
            rows: done,
        }
    }
}

/// A subspace in reduced row echelon form. Equal subspaces have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient_dim: usize,
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for i in 0..ambient_dim {
            e.insert(SparseVec::from([(i, F::one())]));
        }
        e.to_subspace()
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            e.insert_dense(&v);
        }
        e.to_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn sparse_rows(&self) -> impl Iterator<Item = &SparseVec<F>> {
        self.rows.values()
    }

    /// Basis rows, ascending by pivot.
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows
            .values()
            .map(|r| dense_from_sparse(r, self.ambient_dim))
            .collect()
    }

    pub fn to_echelon(&self) -> Echelon<F> {
        Echelon {
            ambient: self.ambient_dim,
            rows: self.rows.clone(),
            reduced: true,
        }
    }

    /// Remainder modulo the subspace; zero iff `v` is contained.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut s = sparse_from_dense(v);
        let mut bound = usize::MAX;
        loop {
            let next = s
                .range(..bound)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(&k, c)| (k, c.clone()));
            match next {
                Some((k, c)) => {
                    axpy(&mut s, &-c, &self.rows[&k]);
                    bound = k;
                }
                None => break,
            }
        }
        dense_from_sparse(&s, self.ambient_dim)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut e = self.to_echelon();
        for r in other.rows.values() {
            e.insert(r.clone());
        }
        e.to_subspace()
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        let n = self.ambient_dim;
        assert_eq!(n, other.ambient_dim, "ambient dimensions differ");
        let mut e = Echelon::new(2 * n);
        // Layout: low block carries u, high block carries u or v. Rows with
        // a vanishing high block have low block in the intersection.
        for r in self.rows.values() {
            let mut v = r.clone();
            for (&i, c) in r {
                v.insert(i + n, c.clone());
            }
            e.insert(v);
        }
        for r in other.rows.values() {
            e.insert(r.iter().map(|(&i, c)| (i + n, c.clone())).collect());
        }
        e.restrict(n)
    }

    /// Intersection with the first `n` coordinates.
    pub fn restrict(&self, n: usize) -> Subspace<F> {
        Subspace {
            ambient_dim: n,
            rows: self
                .rows
                .range(..n)
                .map(|(&k, r)| (k, r.clone()))
                .collect(),
        }
    }

    /// Same vectors in a larger ambient space.
    pub fn extend_ambient(&self, n: usize) -> Subspace<F> {
        assert!(n >= self.ambient_dim);
        Subspace {
            ambient_dim: n,
            rows: self.rows.clone(),
        }
    }
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = x.clone() * &inv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x = x.clone() - c.clone() * p;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank of a dense matrix.
pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    ncols - nullspace(rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BigRational};

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, [v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, [v(&[1, 3, 1]), v(&[2, 4, 0])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[1, 1, -1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::span(3, [v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.intersect(&Subspace::zero(3)).is_zero());
    }

    #[test]
    fn restriction_counts_low_pivots() {
        let s = Subspace::span(3, [v(&[1, 1, 0]), v(&[1, 0, 1])]);
        // (1,1,0) and (1,0,1) give (0,1,-1); nothing lives in coordinate 0 alone
        assert_eq!(s.restrict(1).dim(), 0);
        assert_eq!(s.restrict(2).dim(), 1);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let ns = nullspace(&[v(&[1, 2, 3])], 3);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert_eq!(x[0].clone() + rat(2, 1) * &x[1] + rat(3, 1) * &x[2], rat(0, 1));
        }
        assert_eq!(rank(&[v(&[1, 2]), v(&[2, 4])], 2), 1);
    }
}
