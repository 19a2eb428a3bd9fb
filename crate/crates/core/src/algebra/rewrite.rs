use std::collections::HashMap;

use crate::arith::Field;

use super::poly::NcPoly;
use super::presentation::Presentation;
use super::word::{GeneratorId, Word};

/// Which descent of a word the rewriter rewrites next.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// One-step word rewriting to PBW normal form.
///
/// Each step replaces an adjacent pair `g_j g_i` (`j > i`) by the rule's
/// right-hand side. Terms are merged as they are produced, so each distinct
/// word is rewritten at most once per time it reappears.
pub struct Rewriter<'p, F> {
    pres: &'p Presentation<F>,
    strategy: Strategy,
    steps: u64,
}

impl<'p, F: Field> Rewriter<'p, F> {
    pub fn new(pres: &'p Presentation<F>, strategy: Strategy) -> Self {
        Self {
            pres,
            strategy,
            steps: 0,
        }
    }

    /// Rewrite steps performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Rewrites the pair at `pos` once. `pos` must be a descent.
    pub fn step_at(&mut self, w: &Word, pos: usize) -> NcPoly<F> {
        let (hi, lo) = (w[pos], w[pos + 1]);
        let rule = self
            .pres
            .rule(hi, lo)
            .expect("every descent has a straightening rule");
        self.steps += 1;
        let (prefix, suffix) = (&w[..pos], &w[pos + 2..]);
        let splice = |mid: &[GeneratorId]| {
            let mut v = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
            v.extend_from_slice(prefix);
            v.extend_from_slice(mid);
            v.extend_from_slice(suffix);
            Word::new(v)
        };
        let mut out = NcPoly::term(splice(&[lo, hi]), rule.coeff.clone());
        for (tw, c) in rule.tail.terms() {
            out.add_term(splice(tw), c.clone());
        }
        out
    }

    pub fn normal_form(&mut self, p: &NcPoly<F>) -> NcPoly<F> {
        let mut pending = p.clone();
        let mut done = NcPoly::zero();
        while let Some((w, c)) = pending.pop_first() {
            let pos = match self.strategy {
                Strategy::Leftmost => w.first_descent(),
                Strategy::Rightmost => w.last_descent(),
            };
            match pos {
                None => done.add_term(w, c),
                Some(pos) => {
                    let step = self.step_at(&w, pos);
                    pending.add_scaled(&step, &c);
                }
            }
        }
        done
    }
}

/// PBW normal form by leftmost rewriting.
pub fn normal_form<F: Field>(pres: &Presentation<F>, p: &NcPoly<F>) -> NcPoly<F> {
    Rewriter::new(pres, Strategy::Leftmost).normal_form(p)
}

/// Normal-form product with a memo of `generator · ordered word`.
///
/// Owned by one computation; not shared across threads.
pub struct Multiplier<'p, F> {
    pres: &'p Presentation<F>,
    memo: HashMap<(GeneratorId, Word), NcPoly<F>>,
}

impl<'p, F: Field> Multiplier<'p, F> {
    pub fn new(pres: &'p Presentation<F>) -> Self {
        Self {
            pres,
            memo: HashMap::new(),
        }
    }

    pub fn presentation(&self) -> &'p Presentation<F> {
        self.pres
    }

    /// `g · w` for an ordered word `w`, in normal form.
    pub fn gen_times_word(&mut self, g: GeneratorId, w: &Word) -> NcPoly<F> {
        if w.first().is_none_or(|&x| g <= x) {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(g);
            v.extend_from_slice(w);
            return NcPoly::word(Word::new(v));
        }
        let key = (g, w.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        // g·x·rest = c·x·(g·rest) + tail·rest
        let x = w[0];
        let rest = Word::new(w[1..].to_vec());
        let rule = self
            .pres
            .rule(g, x)
            .expect("every descent has a straightening rule");
        let (coeff, tail) = (rule.coeff.clone(), rule.tail.clone());
        let g_rest = self.gen_times_word(g, &rest);
        let mut out = self.gen_times_poly(x, &g_rest);
        out = out.scale(&coeff);
        for (tw, c) in tail.terms() {
            let t_rest = self.word_times_normal(tw, &NcPoly::word(rest.clone()));
            out.add_scaled(&t_rest, c);
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// `g · p` for `p` in normal form.
    pub fn gen_times_poly(&mut self, g: GeneratorId, p: &NcPoly<F>) -> NcPoly<F> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let gw = self.gen_times_word(g, w);
            out.add_scaled(&gw, c);
        }
        out
    }

    /// `w · p` for an arbitrary word `w` and `p` in normal form.
    pub fn word_times_normal(&mut self, w: &[GeneratorId], p: &NcPoly<F>) -> NcPoly<F> {
        let mut acc = p.clone();
        for &g in w.iter().rev() {
            acc = self.gen_times_poly(g, &acc);
        }
        acc
    }

    pub fn normal_form(&mut self, p: &NcPoly<F>) -> NcPoly<F> {
        let one = NcPoly::one();
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let nw = if w.is_ordered() {
                NcPoly::word(w.clone())
            } else {
                self.word_times_normal(w, &one)
            };
            out.add_scaled(&nw, c);
        }
        out
    }

    /// Normal form of `p · q`.
    pub fn mul(&mut self, p: &NcPoly<F>, q: &NcPoly<F>) -> NcPoly<F> {
        let nq = self.normal_form(q);
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let wq = self.word_times_normal(w, &nq);
            out.add_scaled(&wq, c);
        }
        out
    }

    /// Normal form of `p^k`.
    pub fn pow(&mut self, p: &NcPoly<F>, k: u32) -> NcPoly<F> {
        let mut acc = NcPoly::one();
        let np = self.normal_form(p);
        for _ in 0..k {
            acc = self.mul(&np, &acc);
        }
        acc
    }
}

/// Normal form of the product `p · q`.
pub fn multiply<F: Field>(pres: &Presentation<F>, p: &NcPoly<F>, q: &NcPoly<F>) -> NcPoly<F> {
    Multiplier::new(pres).mul(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::Family;
    use crate::arith::{rat, BigRational, RationalFunction};

    fn w(ix: &[u8]) -> NcPoly<RationalFunction> {
        NcPoly::word(Word::from_indices(ix))
    }

    #[test]
    fn quantum_plane_swap() {
        let p = Presentation::build(Family::QuantumPlane, Some(RationalFunction::t())).unwrap();
        let tinv = RationalFunction::t().recip().unwrap();
        assert_eq!(normal_form(&p, &w(&[1, 0])), NcPoly::term(Word::from_indices(&[0, 1]), tinv));
    }

    #[test]
    fn weyl_swap_has_constant_tail() {
        let p = Presentation::build(Family::QuantizedWeyl, Some(RationalFunction::t())).unwrap();
        let tinv = RationalFunction::t().recip().unwrap();
        let expect = NcPoly::from_terms([
            (Word::from_indices(&[0, 1]), tinv.clone()),
            (Word::empty(), -tinv),
        ]);
        assert_eq!(normal_form(&p, &w(&[1, 0])), expect);
        assert_eq!(multiply(&p, &w(&[0]), &w(&[1])), w(&[0, 1]));
    }

    #[test]
    fn down_up_d_u_u() {
        // d·u·u = u·u·d + (1+η)·u·w − 2ε·u
        let eta = RationalFunction::t();
        let p = Presentation::build(Family::DownUpExtended, Some(eta.clone())).unwrap();
        let c = p.down_up_constants().unwrap();
        let expect = NcPoly::from_terms([
            (Word::from_indices(&[0, 0, 2]), RationalFunction::one()),
            (Word::from_indices(&[0, 1]), c.alpha.clone()),
            (Word::from_indices(&[0]), -(c.epsilon.clone() + &c.epsilon)),
        ]);
        assert_eq!(normal_form(&p, &w(&[2, 0, 0])), expect);
        let mut m = Multiplier::new(&p);
        assert_eq!(m.mul(&w(&[2]), &w(&[0, 0])), expect);
    }

    #[test]
    fn numeric_product_and_unit() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::QuantumPlane, Some(rat(2, 1))).unwrap();
        let b = NcPoly::generator(GeneratorId(1));
        let a = NcPoly::generator(GeneratorId(0));
        assert_eq!(
            multiply(&p, &b, &a),
            NcPoly::term(Word::from_indices(&[0, 1]), rat(1, 2))
        );
        let x = a.add(&b.scale(&rat(3, 1)));
        assert_eq!(multiply(&p, &x, &NcPoly::one()), x);
    }
}
