use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Multiplier, NcPoly};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{dense_from_sparse, nullspace, sparse_from_dense, Echelon, SparseVec, Subspace};
use crate::report::CheckReport;

use super::modular::lift_closure;
use super::TruncatedModule;

/// Seeded probing parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub seed: u64,
    pub probes: usize,
    pub coefficient_bound: i64,
    /// Weight headroom below D for probe vectors; default twice the
    /// largest generator weight, raised for essentiality probes.
    pub margin: Option<u32>,
    /// Simplicity probes must reach every basis vector of weight ≤ d0.
    pub d0: u32,
    /// Top weight levels where strict descent is not asserted.
    pub boundary_levels: u32,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            probes: 20,
            coefficient_bound: 3,
            margin: None,
            d0: 2,
            boundary_levels: 2,
        }
    }
}

impl ProbeConfig {
    pub fn with_seed(seed: u64, probes: usize) -> Self {
        Self {
            seed,
            probes,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.probes == 0 {
            return Err(Error::InvalidParameter("probes must be at least 1".into()));
        }
        if self.coefficient_bound < 1 {
            return Err(Error::InvalidParameter("coefficient bound must be positive".into()));
        }
        Ok(())
    }

    /// Effective margin; never below the largest generator weight.
    pub fn margin_for(&self, max_generator_weight: u32) -> Result<u32> {
        self.checked(self.margin.unwrap_or(2 * max_generator_weight), max_generator_weight)
    }

    /// Margin for probes whose closures must come back down to the socle.
    /// A probe of weight k can need about k more levels of room first, so
    /// the default is at least ⌊D/2⌋ + 1.
    pub fn socle_margin_for(&self, max_generator_weight: u32, degree: u32) -> Result<u32> {
        let m = self
            .margin
            .unwrap_or((2 * max_generator_weight).max(degree / 2 + 1));
        self.checked(m, max_generator_weight)
    }

    fn checked(&self, m: u32, max_generator_weight: u32) -> Result<u32> {
        if m < max_generator_weight {
            return Err(Error::InvalidParameter(format!(
                "margin {m} is below the largest generator weight {max_generator_weight}"
            )));
        }
        Ok(m)
    }
}

/// Random nonzero vector supported on basis vectors of weight ≤
/// `max_weight`, drawn from stream `index` of the seed. `None` if no
/// basis vector is that light.
pub fn probe_vector<F: Field>(
    module: &TruncatedModule<F>,
    cfg: &ProbeConfig,
    index: u64,
    max_weight: u32,
) -> Option<Vec<F>> {
    let n = module.count_weight_le(max_weight);
    if n == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let b = cfg.coefficient_bound;
    let mut coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
    if coords.iter().all(|&c| c == 0) {
        coords[rng.gen_range(0..n)] = 1;
    }
    let mut v = vec![F::zero(); module.dim()];
    for (i, c) in coords.into_iter().enumerate() {
        v[i] = F::from_i64(c);
    }
    Some(v)
}

/// The modular candidate, accepted only if it is exactly closed and
/// contains the seeds. Its dimension is the rank modulo p, a lower bound,
/// and closedness makes it an upper bound.
fn certified_lift<F: Field>(module: &TruncatedModule<F>, seeds: &[SparseVec<F>]) -> Option<Subspace<F>> {
    let cand = lift_closure(module, seeds)?;
    if cand.dim() == module.dim() {
        return Some(cand);
    }
    let ech = cand.to_echelon();
    let closed = seeds.iter().all(|s| ech.contains(s))
        && module.presentation().generators().all(|g| {
            let dom = module.action(g).domain;
            cand.pivots().zip(cand.sparse_rows()).filter(|(p, _)| *p < dom).all(|(_, row)| {
                ech.contains(&module.apply_gen(g, row).expect("row lies in the domain"))
            })
        });
    closed.then_some(cand)
}

/// Smallest subspace containing `seeds` with `g·(S ∩ dom g) ⊆ S`: the
/// certified modular lift when it succeeds, the exact spin otherwise.
fn closure_echelon<F: Field>(module: &TruncatedModule<F>, seeds: &[SparseVec<F>]) -> Echelon<F> {
    match certified_lift(module, seeds) {
        Some(s) => s.to_echelon(),
        None => exact_closure(module, seeds),
    }
}

/// Exact closure with no modular shortcut.
///
/// Rounds alternate two steps. A spin step applies generators to raw
/// vectors already known to lie in the closure, using the echelon form
/// only to test independence; images are never taken of reduced rows, so
/// coefficients stay small. A sweep step applies every generator to the
/// rows of the RREF of the current span, which catches vectors that enter
/// a domain only after a cancellation; new images seed the next spin.
fn exact_closure<F: Field>(module: &TruncatedModule<F>, seeds: &[SparseVec<F>]) -> Echelon<F> {
    let full = module.dim();
    let gens: Vec<_> = module.presentation().generators().collect();
    let mut ech = Echelon::new(full);
    let mut queue: Vec<SparseVec<F>> = Vec::new();
    for s in seeds {
        if ech.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    loop {
        let mut head = 0;
        while head < queue.len() && ech.rank() < full {
            let raw = queue[head].clone();
            head += 1;
            let top = match raw.last_key_value() {
                Some((&k, _)) => k,
                None => continue,
            };
            for &g in &gens {
                if top >= module.action(g).domain {
                    continue;
                }
                let img = module.apply_gen(g, &raw).expect("raw vector lies in the domain");
                if !img.is_empty() && ech.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        if ech.rank() == full {
            return Subspace::full(full).to_echelon();
        }
        let rref = ech.to_subspace();
        queue.clear();
        ech = rref.to_echelon();
        for (p, row) in rref.pivots().zip(rref.sparse_rows()) {
            for &g in &gens {
                if p >= module.action(g).domain {
                    continue;
                }
                let img = module.apply_gen(g, row).expect("row lies in the domain");
                if !img.is_empty() && ech.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        if queue.is_empty() {
            return rref.to_echelon();
        }
    }
}

/// Closure of `seeds` under every generator wherever the truncated action
/// is defined. Seeds must have weight ≤ D − `budget`.
pub fn generated_submodule<F: Field>(
    module: &TruncatedModule<F>,
    seeds: &[Vec<F>],
    budget: u32,
) -> Result<Subspace<F>> {
    let limit = module.degree().checked_sub(budget).ok_or(Error::WeightBudgetExceeded {
        needed: budget,
        cap: module.degree(),
    })?;
    let mut sparse = Vec::new();
    for s in seeds {
        let v = sparse_from_dense(s);
        if let Some(w) = module.vector_weight(&v) {
            if w > limit {
                return Err(Error::WeightBudgetExceeded {
                    needed: w + budget,
                    cap: module.degree(),
                });
            }
        }
        sparse.push(v);
    }
    Ok(closure_echelon(module, &sparse).to_subspace())
}

/// Deterministic probes: basis vectors of weight ≤ `max_weight`, then
/// `cfg.probes` random vectors.
fn probes<F: Field>(
    module: &TruncatedModule<F>,
    cfg: &ProbeConfig,
    max_weight: u32,
) -> Vec<(String, Vec<F>)> {
    let n = module.count_weight_le(max_weight);
    let mut out: Vec<(String, Vec<F>)> = (0..n)
        .map(|i| {
            let mut v = vec![F::zero(); module.dim()];
            v[i] = F::one();
            (format!("basis {}", module.labels()[i]), v)
        })
        .collect();
    for k in 0..cfg.probes {
        if let Some(v) = probe_vector(module, cfg, k as u64, max_weight) {
            out.push((format!("random #{k}"), v));
        }
    }
    out
}

/// Nullspace vectors of each generator's action, limited to weight ≤
/// `max_weight`.
fn kernel_probes<F: Field>(module: &TruncatedModule<F>, max_weight: u32) -> Vec<(String, Vec<F>)> {
    let mut out = Vec::new();
    let n = module.count_weight_le(max_weight);
    for g in module.presentation().generators() {
        let act = module.action(g);
        let cols = n.min(act.domain);
        let mut rows = vec![vec![F::zero(); cols]; module.dim()];
        for (j, col) in act.columns[..cols].iter().enumerate() {
            for (&i, c) in col {
                rows[i][j] = c.clone();
            }
        }
        for (k, ker) in nullspace(&rows, cols).into_iter().enumerate() {
            let mut v = ker;
            v.resize(module.dim(), F::zero());
            out.push((format!("ker {} #{k}", module.presentation().name(g)), v));
        }
    }
    out
}

/// Evidence of simplicity: every probe generates the whole low slice.
pub fn is_simple_truncated<F: Field>(
    module: &TruncatedModule<F>,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let margin = cfg.margin_for(module.presentation().max_generator_weight())?;
    let mut report = CheckReport::new("simple_truncated")
        .with_degree(module.degree())
        .with_probes(cfg.seed, cfg.probes);
    if module.dim() == 0 {
        report.fail("NotSimple", "zero module");
        return Ok(report);
    }
    let max_w = module.degree().saturating_sub(margin);
    let target = module.count_weight_le(cfg.d0);
    let list = probes(module, cfg, max_w);
    let results: Vec<usize> = list
        .par_iter()
        .map(|(_, v)| {
            let ech = closure_echelon(module, &[sparse_from_dense(v)]);
            ech.rank_below(target)
        })
        .collect();
    report.dimensions = vec![module.dim(), target, list.len()];
    for ((name, v), got) in list.iter().zip(results) {
        if got < target {
            report.fail(
                "NotSimple",
                format!("{name}: {} reaches {got}/{target} low vectors", module.render_vector(v)),
            );
        }
    }
    Ok(report)
}

/// Result of an essentiality run, with the running intersection of all
/// probe-generated submodules.
#[derive(Clone, Debug)]
pub struct EssentialityOutcome<F> {
    pub report: CheckReport,
    pub intersection: Subspace<F>,
}

/// Every probe-generated submodule meets `l_sub`.
pub fn essentiality_check<F: Field>(
    module: &TruncatedModule<F>,
    l_sub: &Subspace<F>,
    cfg: &ProbeConfig,
) -> Result<EssentialityOutcome<F>> {
    cfg.validate()?;
    let margin = cfg.socle_margin_for(module.presentation().max_generator_weight(), module.degree())?;
    let mut report = CheckReport::new("essentiality")
        .with_degree(module.degree())
        .with_probes(cfg.seed, cfg.probes);
    if l_sub.is_zero() {
        report.fail("NotEssential", "L is zero");
        return Ok(EssentialityOutcome {
            report,
            intersection: Subspace::zero(module.dim()),
        });
    }
    let max_w = module.degree().saturating_sub(margin);
    let mut list = probes(module, cfg, max_w);
    list.extend(kernel_probes(module, max_w));
    // vectors of L itself generate submodules too, and pin the intersection down
    let cut = module.count_weight_le(max_w);
    list.extend(
        l_sub
            .sparse_rows()
            .filter(|r| r.last_key_value().is_some_and(|(&p, _)| p < cut))
            .enumerate()
            .map(|(k, r)| (format!("L row #{k}"), dense_from_sparse(r, module.dim()))),
    );
    let closures: Vec<Subspace<F>> = list
        .par_iter()
        .map(|(_, v)| closure_echelon(module, &[sparse_from_dense(v)]).to_subspace())
        .collect();
    let mut intersection = Subspace::full(module.dim());
    for ((name, v), c) in list.iter().zip(&closures) {
        let meet = c.intersect(l_sub);
        if meet.is_zero() {
            report.fail(
                "NotEssential",
                format!("{name}: {} generates a submodule missing L", module.render_vector(v)),
            );
        }
        intersection = intersection.intersect(c);
    }
    report.dimensions = vec![module.dim(), l_sub.dim(), list.len(), intersection.dim()];
    Ok(EssentialityOutcome {
        report,
        intersection,
    })
}

/// Strict descent of the `w^m`-chain and cofinality of random probes.
pub fn submodule_chain_check<F: Field>(
    module: &TruncatedModule<F>,
    w_elem: &NcPoly<F>,
    m_max: u32,
    cfg: &ProbeConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let pres = module.presentation().clone();
    let d = module.degree();
    let margin = cfg.margin_for(pres.max_generator_weight())?;
    let cyclic = module
        .cyclic_vector()
        .ok_or_else(|| Error::DimensionMismatch("chain check needs a cyclic vector".into()))?
        .to_vec();
    let ww = pres.poly_weight(w_elem);
    let mut report = CheckReport::new("submodule_chain")
        .with_degree(d)
        .with_probes(cfg.seed, cfg.probes);

    // (i) dims of the closures of w^m·1̄
    let mut mult = Multiplier::new(&pres);
    let mut descent = CheckReport::new("strict_descent");
    let mut chain: Vec<Subspace<F>> = Vec::new();
    let mut dims = Vec::new();
    for m in 0..=m_max {
        if m * ww > d {
            descent.note(format!("w^{m} exceeds the truncation"));
            break;
        }
        let wm = mult.pow(w_elem, m);
        let s = module.act(&wm, &cyclic)?;
        let sub = generated_submodule(module, &[s], 0)?;
        dims.push(sub.dim());
        chain.push(sub);
    }
    for m in 1..chain.len() {
        let inside = chain[m - 1].contains_subspace(&chain[m]);
        let strict = dims[m] < dims[m - 1];
        let checked = (m as u32) * ww + cfg.boundary_levels <= d;
        if !inside {
            descent.fail("ChainNotDescending", format!("w^{m}N is not inside w^{}N", m - 1));
        } else if checked && !strict {
            descent.fail("ChainNotStrict", format!("dim w^{m}N = dim w^{}N = {}", m - 1, dims[m]));
        } else if !checked {
            descent.note(format!("m = {m} lies in the boundary levels; strictness not asserted"));
        }
    }
    descent.dimensions = dims;
    report.push(descent);

    // (ii) cofinality of random probes
    let mut cof = CheckReport::new("cofinality").with_probes(cfg.seed, cfg.probes);
    let low = module.count_weight_le(cfg.d0);
    let max_w = d.saturating_sub(margin);
    // targets[m] = { w^m·s : s basis vector of weight ≤ d0 }, where defined
    let mut targets: Vec<Vec<Vec<F>>> = Vec::new();
    for m in 0..=m_max {
        let wm = mult.pow(w_elem, m);
        let vecs: Vec<Vec<F>> = (0..low)
            .filter(|&i| module.weights()[i] + m * ww <= d)
            .map(|i| {
                let mut e = vec![F::zero(); module.dim()];
                e[i] = F::one();
                module.act(&wm, &e)
            })
            .collect::<Result<_>>()?;
        targets.push(vecs);
    }
    let list: Vec<Vec<F>> = (0..cfg.probes)
        .filter_map(|k| probe_vector(module, cfg, k as u64, max_w))
        .collect();
    let found: Vec<Option<u32>> = list
        .par_iter()
        .map(|v| {
            let sub = closure_echelon(module, &[sparse_from_dense(v)]).to_subspace();
            (0..=m_max).find(|&m| {
                let t = &targets[m as usize];
                !t.is_empty() && t.iter().all(|x| sub.contains(x))
            })
        })
        .collect();
    let mut reached = Vec::new();
    for (k, (v, f)) in list.iter().zip(found).enumerate() {
        match f {
            Some(m) => reached.push(m as usize),
            None => cof.fail(
                "NotCofinal",
                format!("random #{k}: {} contains no w^m N slice, m ≤ {m_max}", module.render_vector(v)),
            ),
        }
    }
    cof.dimensions = reached;
    report.push(cof);
    Ok(report)
}
