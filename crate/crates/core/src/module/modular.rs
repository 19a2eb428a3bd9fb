//! Closures computed modulo a prime and lifted back to exact subspaces.
//!
//! Exact closures over ℚ(t) suffer heavy intermediate swell even when the
//! final subspace has tiny entries. Here the closure is computed in 𝔽_p at
//! several specializations of `t`, each entry of the reduced row echelon
//! form is reconstructed as a rational (function), and the candidate is
//! then checked exactly by the caller.
//!
//! The rank modulo p at any point where the actions and seeds have no pole
//! is at most the exact dimension: the exact closure meets the local ring
//! in a lattice whose reduction is closed and contains the reduced seeds.
//! So a lifted candidate that is exactly closed, contains the seeds and has
//! that rank is the closure.

use std::collections::BTreeMap;

use crate::arith::modp::{add, inv, mul, sub, PRIME};
use crate::arith::Field;
use crate::linalg::{SparseVec, Subspace};

use super::TruncatedModule;

/// First specialization of `t`; later ones count up from here.
pub(crate) const T0: u64 = 1_000_003;

pub(crate) fn residues<F: Field>(v: &SparseVec<F>, n: usize, t0: u64) -> Option<Vec<u64>> {
    let mut out = vec![0; n];
    for (&i, c) in v {
        out[i] = c.residue(PRIME, t0)?;
    }
    Some(out)
}

/// Dense reduced row echelon form over 𝔽_p, pivot = last nonzero entry.
#[derive(Clone, Debug)]
pub(crate) struct ModRref {
    rows: BTreeMap<usize, Vec<u64>>,
}

impl ModRref {
    pub(crate) fn new() -> Self {
        Self { rows: BTreeMap::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (&p, row) in self.rows.iter().rev() {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v[..=p].iter_mut().zip(row) {
                    *x = sub(*x, mul(c, y));
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().rposition(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[p]);
        v.truncate(p + 1);
        v.iter_mut().for_each(|x| *x = mul(*x, s));
        for row in self.rows.range_mut(p + 1..).map(|(_, r)| r) {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row[..=p].iter_mut().zip(&v) {
                    *x = sub(*x, mul(c, y));
                }
            }
        }
        self.rows.insert(p, v);
        true
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}

/// Generator actions reduced at one specialization.
struct ModAction {
    domain: usize,
    columns: Vec<Vec<(usize, u64)>>,
}

fn reduce_actions<F: Field>(module: &TruncatedModule<F>, t0: u64) -> Option<Vec<ModAction>> {
    module
        .presentation()
        .generators()
        .map(|g| {
            let act = module.action(g);
            let columns = act.columns[..act.domain]
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(&i, c)| Some((i, c.residue(PRIME, t0)?)))
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            Some(ModAction {
                domain: act.domain,
                columns,
            })
        })
        .collect()
}

fn mod_closure(actions: &[ModAction], n: usize, seeds: &[Vec<u64>]) -> ModRref {
    let mut s = ModRref::new();
    for v in seeds {
        s.insert(v.clone());
    }
    loop {
        let before = s.rank();
        for act in actions {
            let rows: Vec<Vec<u64>> = s.rows.range(..act.domain).map(|(_, r)| r.clone()).collect();
            for row in rows {
                let mut img = vec![0; n];
                for (j, &c) in row.iter().enumerate() {
                    if c != 0 {
                        for &(i, a) in &act.columns[j] {
                            img[i] = add(img[i], mul(c, a));
                        }
                    }
                }
                s.insert(img);
            }
        }
        if s.rank() == before || s.rank() == n {
            return s;
        }
    }
}

/// RREF of the closure at specialization `t0`, or `None` if some
/// coefficient has a pole there.
fn closure_at<F: Field>(module: &TruncatedModule<F>, seeds: &[SparseVec<F>], t0: u64) -> Option<ModRref> {
    let actions = reduce_actions(module, t0)?;
    let seeds = seeds
        .iter()
        .map(|s| residues(s, module.dim(), t0))
        .collect::<Option<Vec<_>>>()?;
    Some(mod_closure(&actions, module.dim(), &seeds))
}

/// Interpolation sizes tried in turn over ℚ(t).
const SCHEDULE: [usize; 6] = [8, 16, 32, 64, 128, 256];
/// Extra specializations each lifted entry must match.
const CHECKS: usize = 2;

/// Candidate closure: RREF over 𝔽_p at enough specializations, lifted
/// entrywise. Over ℚ(t) the number of points doubles until every entry
/// also matches a few held-out points. Returns the candidate with the
/// largest rank seen modulo p, which bounds the exact dimension from below.
/// `None` when specializations keep disagreeing or nothing lifts.
pub(crate) fn lift_closure<F: Field>(
    module: &TruncatedModule<F>,
    seeds: &[SparseVec<F>],
) -> Option<Subspace<F>> {
    let n = module.dim();
    let mut samples: Vec<(u64, ModRref)> = Vec::new();
    let mut t0 = T0;
    let mut misses = 0;
    let schedule: &[usize] = if F::SYMBOLIC { &SCHEDULE } else { &[1] };
    for &k in schedule {
        let want = if F::SYMBOLIC { k + CHECKS } else { 1 };
        while samples.len() < want {
            if misses > 8 {
                return None;
            }
            let here = t0;
            t0 += 1;
            let Some(r) = closure_at(module, seeds, here) else {
                misses += 1;
                continue;
            };
            if r.rank() == n {
                return Some(Subspace::full(n));
            }
            match samples.first() {
                Some((_, s)) if r.rank() > s.rank() => samples.clear(),
                Some((_, s)) if r.rank() < s.rank() || r.pivots() != s.pivots() => {
                    misses += 1;
                    continue;
                }
                _ => {}
            }
            samples.push((here, r));
        }
        let pivots = samples[0].1.pivots();
        let fit = if F::SYMBOLIC { k } else { 1 };
        if let Some(rows) = lift_rows::<F>(n, &pivots, &samples[..fit], &samples[fit..]) {
            return Some(Subspace::span(n, rows));
        }
    }
    None
}

fn lift_rows<F: Field>(
    n: usize,
    pivots: &[usize],
    fit: &[(u64, ModRref)],
    check: &[(u64, ModRref)],
) -> Option<Vec<Vec<F>>> {
    let mut rows = Vec::with_capacity(pivots.len());
    for &p in pivots {
        let mut row = vec![F::zero(); n];
        for (j, slot) in row.iter_mut().enumerate().take(p + 1) {
            let vals: Vec<(u64, u64)> = fit.iter().map(|(t, r)| (*t, r.rows[&p][j])).collect();
            let held = check.iter().map(|(t, r)| (*t, r.rows[&p][j]));
            if vals.iter().all(|&(_, v)| v == 0) && held.clone().all(|(_, v)| v == 0) {
                continue;
            }
            let c = F::lift(&vals)?;
            if held.into_iter().any(|(t, v)| c.residue(PRIME, t) != Some(v)) {
                return None;
            }
            *slot = c;
        }
        rows.push(row);
    }
    Some(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_insert_and_rank() {
        let mut r = ModRref::new();
        assert!(r.insert(vec![1, 2, 0]));
        assert!(!r.insert(vec![2, 4, 0]));
        assert!(r.insert(vec![0, 1, 1]));
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots(), vec![1, 2]);
    }
}
