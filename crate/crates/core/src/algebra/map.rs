use crate::arith::Field;

use super::poly::NcPoly;
use super::presentation::Presentation;
use super::rewrite::Multiplier;
use super::word::GeneratorId;

/// Algebra map given by generator images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorMap<F> {
    images: Vec<NcPoly<F>>,
}

impl<F: Field> GeneratorMap<F> {
    pub fn new(images: Vec<NcPoly<F>>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n as u8).map(|i| NcPoly::generator(GeneratorId(i))).collect())
    }

    pub fn image(&self, g: GeneratorId) -> &NcPoly<F> {
        &self.images[g.index()]
    }

    pub fn images(&self) -> &[NcPoly<F>] {
        &self.images
    }

    /// Image of `p`, multiplied out in the target presentation of `mult`.
    pub fn apply(&self, mult: &mut Multiplier<'_, F>, p: &NcPoly<F>) -> NcPoly<F> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::one();
            for &g in w.iter().rev() {
                acc = mult.mul(self.image(g), &acc);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Residues `φ(g_j)φ(g_i) − c·φ(g_i)φ(g_j) − φ(tail)` for each rule of
    /// `src`, computed in `mult`'s presentation. All zero iff the map
    /// respects the straightening relations.
    pub fn rule_residues(
        &self,
        src: &Presentation<F>,
        mult: &mut Multiplier<'_, F>,
    ) -> Vec<((GeneratorId, GeneratorId), NcPoly<F>)> {
        let mut out = Vec::new();
        for (&(j, i), rule) in src.rules() {
            let lhs = mult.mul(self.image(j), self.image(i));
            let swapped = mult.mul(self.image(i), self.image(j)).scale(&rule.coeff);
            let tail = self.apply(mult, &rule.tail);
            out.push(((j, i), lhs.sub(&swapped).sub(&tail)));
        }
        out
    }
}

/// Normal form of `σ^m(p)`; `σ⁰` is the normal form of `p`.
pub fn apply_map_power<F: Field>(
    pres: &Presentation<F>,
    sigma: &GeneratorMap<F>,
    m: u32,
    p: &NcPoly<F>,
) -> NcPoly<F> {
    let mut mult = Multiplier::new(pres);
    let mut acc = mult.normal_form(p);
    for _ in 0..m {
        acc = sigma.apply(&mut mult, &acc);
    }
    acc
}
