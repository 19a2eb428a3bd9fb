use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Field;

use super::poly::NcPoly;
use super::word::{GeneratorId, Word};
use crate::error::Error;

/// The four algebra families the pipelines know how to build.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    QuantumPlane,
    QuantizedWeyl,
    OreExtension { r: u32 },
    DownUpExtended,
}

impl Family {
    /// CLI spelling of the family.
    pub fn cli_name(&self) -> &'static str {
        match self {
            Family::QuantumPlane => "quantum-plane",
            Family::QuantizedWeyl => "weyl",
            Family::OreExtension { .. } => "ore",
            Family::DownUpExtended => "down-up",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::OreExtension { r } => write!(f, "ore(r={r})"),
            other => f.write_str(other.cli_name()),
        }
    }
}

/// Straightening rule `g_j·g_i → coeff·g_i·g_j + tail` for `j > i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule<F> {
    pub coeff: F,
    pub tail: NcPoly<F>,
}

/// Constants of the normalized down-up algebra `A(1+η, −η, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DownUpConstants<F> {
    pub eta: F,
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
    /// `(α − 2)⁻¹ = (η − 1)⁻¹`
    pub epsilon: F,
    /// `1 − αε`
    pub phi: F,
}

impl<F: Field> DownUpConstants<F> {
    pub fn new(eta: F) -> Result<Self, Error> {
        if eta.is_zero() || eta.is_one() {
            return Err(Error::InvalidParameter(format!(
                "eta must avoid 0 and 1, got {eta}"
            )));
        }
        let alpha = F::one() + &eta;
        let beta = -eta.clone();
        let gamma = F::one();
        let epsilon = (alpha.clone() - F::from_i64(2))
            .inv()
            .expect("alpha != 2 when eta != 1");
        let phi = F::one() - alpha.clone() * &epsilon;
        Ok(Self {
            eta,
            alpha,
            beta,
            gamma,
            epsilon,
            phi,
        })
    }
}

/// Ordered, weighted generators with solvable-type straightening rules.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    names: Vec<String>,
    weights: Vec<u32>,
    rules: BTreeMap<(GeneratorId, GeneratorId), Rule<F>>,
    parameter: Option<F>,
    family: Family,
    /// Generators in the order their exponents are compared when two
    /// monomials have equal weight.
    lex_priority: Vec<GeneratorId>,
}

impl<F: Field> Presentation<F> {
    /// Builds the extended presentation of one of the four families.
    ///
    /// Quantum plane and quantized Weyl use `a < b` with weights (1, 1);
    /// the Ore extension uses `b < a` with `b` weighted `max(1, r−1)`; the
    /// down-up algebra adjoins `w` and uses `u < w < d` with weights (1, 2, 1).
    pub fn build(family: Family, parameter: Option<F>) -> Result<Self, Error> {
        let g = GeneratorId;
        match family {
            Family::QuantumPlane | Family::QuantizedWeyl => {
                let q = parameter.ok_or_else(|| {
                    Error::InvalidParameter(format!("{family} needs a parameter q"))
                })?;
                check_q(&q)?;
                let qinv = q.inv().expect("q != 0");
                let tail = if family == Family::QuantizedWeyl {
                    NcPoly::constant(-qinv.clone())
                } else {
                    NcPoly::zero()
                };
                let mut rules = BTreeMap::new();
                rules.insert((g(1), g(0)), Rule { coeff: qinv, tail });
                Self::from_parts(
                    vec!["a".into(), "b".into()],
                    vec![1, 1],
                    rules,
                    Some(q),
                    family,
                    vec![g(1), g(0)],
                )
            }
            Family::OreExtension { r } => {
                if r == 0 {
                    return Err(Error::InvalidParameter("ore needs r >= 1".into()));
                }
                if parameter.is_some() {
                    return Err(Error::InvalidParameter(
                        "ore takes no scalar parameter".into(),
                    ));
                }
                let wb = (r.saturating_sub(1)).max(1);
                let mut rules = BTreeMap::new();
                rules.insert(
                    (g(1), g(0)),
                    Rule {
                        coeff: F::one(),
                        tail: NcPoly::word(Word::power(g(1), r as usize)),
                    },
                );
                Self::from_parts(
                    vec!["b".into(), "a".into()],
                    vec![wb, 1],
                    rules,
                    None,
                    family,
                    vec![g(0), g(1)],
                )
            }
            Family::DownUpExtended => {
                let eta = parameter.ok_or_else(|| {
                    Error::InvalidParameter("down-up needs a parameter eta".into())
                })?;
                let c = DownUpConstants::new(eta.clone())?;
                let (u, w, d) = (g(0), g(1), g(2));
                let mut rules = BTreeMap::new();
                // d·u → u·d + w − ε
                let mut tail = NcPoly::generator(w);
                tail.add_term(Word::empty(), -c.epsilon.clone());
                rules.insert((d, u), Rule { coeff: F::one(), tail });
                // d·w → η·w·d
                rules.insert(
                    (d, w),
                    Rule {
                        coeff: eta.clone(),
                        tail: NcPoly::zero(),
                    },
                );
                // w·u → η·u·w
                rules.insert(
                    (w, u),
                    Rule {
                        coeff: eta.clone(),
                        tail: NcPoly::zero(),
                    },
                );
                Self::from_parts(
                    vec!["u".into(), "w".into(), "d".into()],
                    vec![1, 2, 1],
                    rules,
                    Some(eta),
                    family,
                    vec![d, w, u],
                )
            }
        }
    }

    /// Validates and assembles a presentation from raw parts.
    pub fn from_parts(
        names: Vec<String>,
        weights: Vec<u32>,
        rules: BTreeMap<(GeneratorId, GeneratorId), Rule<F>>,
        parameter: Option<F>,
        family: Family,
        lex_priority: Vec<GeneratorId>,
    ) -> Result<Self, Error> {
        let n = names.len();
        if weights.len() != n || n == 0 || n > u8::MAX as usize {
            return Err(Error::MalformedPresentation(
                "names and weights must have equal, nonzero length".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::MalformedPresentation(
                "generator weights must be positive".into(),
            ));
        }
        let mut prio: Vec<_> = lex_priority.iter().map(|g| g.index()).collect();
        prio.sort_unstable();
        if prio != (0..n).collect::<Vec<_>>() {
            return Err(Error::MalformedPresentation(
                "lex priority must list every generator once".into(),
            ));
        }
        let pres = Self {
            names,
            weights,
            rules,
            parameter,
            family,
            lex_priority,
        };
        for j in 0..n {
            for i in 0..j {
                let (gj, gi) = (GeneratorId(j as u8), GeneratorId(i as u8));
                let rule = pres.rules.get(&(gj, gi)).ok_or_else(|| {
                    Error::MalformedPresentation(format!(
                        "missing rule for {}·{}",
                        pres.names[j], pres.names[i]
                    ))
                })?;
                if rule.coeff.is_zero() {
                    return Err(Error::MalformedPresentation(format!(
                        "rule {}·{} has zero coefficient",
                        pres.names[j], pres.names[i]
                    )));
                }
                let lhs = Word::new(vec![gi, gj]);
                for (tw, _) in rule.tail.terms() {
                    if !tw.is_ordered() {
                        return Err(Error::MalformedPresentation(format!(
                            "tail of {}·{} is not in normal form",
                            pres.names[j], pres.names[i]
                        )));
                    }
                    if pres.word_weight(tw) > pres.word_weight(&lhs) {
                        return Err(Error::MalformedPresentation(format!(
                            "tail of {}·{} raises weight",
                            pres.names[j], pres.names[i]
                        )));
                    }
                    if pres.cmp_monomials(tw, &lhs) != Ordering::Less {
                        return Err(Error::MalformedPresentation(format!(
                            "tail of {}·{} is not below the leading monomial",
                            pres.names[j], pres.names[i]
                        )));
                    }
                }
            }
        }
        for key in pres.rules.keys() {
            if key.0 <= key.1 || key.0.index() >= n {
                return Err(Error::MalformedPresentation(
                    "rules must be keyed by (j, i) with j > i".into(),
                ));
            }
        }
        Ok(pres)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parameter(&self) -> Option<&F> {
        self.parameter.as_ref()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.names.len() as u8).map(GeneratorId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g.index()]
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GeneratorId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| GeneratorId(i as u8))
    }

    /// Generator by name; panics on an unknown label. For internal use with
    /// the fixed family labels.
    pub fn gen(&self, name: &str) -> GeneratorId {
        self.generator_by_name(name)
            .unwrap_or_else(|| panic!("no generator named {name}"))
    }

    pub fn weight(&self, g: GeneratorId) -> u32 {
        self.weights[g.index()]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_generator_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn rule(&self, hi: GeneratorId, lo: GeneratorId) -> Option<&Rule<F>> {
        self.rules.get(&(hi, lo))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(GeneratorId, GeneratorId), &Rule<F>)> {
        self.rules.iter()
    }

    pub fn lex_priority(&self) -> &[GeneratorId] {
        &self.lex_priority
    }

    pub fn word_weight(&self, w: &[GeneratorId]) -> u32 {
        w.iter().map(|g| self.weights[g.index()]).sum()
    }

    /// Largest weight among the support; 0 for the zero polynomial.
    pub fn poly_weight(&self, p: &NcPoly<F>) -> u32 {
        p.terms().map(|(w, _)| self.word_weight(w)).max().unwrap_or(0)
    }

    /// Monomial order: weight first, then exponents in `lex_priority` order,
    /// then the raw letter sequence (only relevant for unordered words).
    pub fn cmp_monomials(&self, x: &Word, y: &Word) -> Ordering {
        let n = self.generator_count();
        self.word_weight(x)
            .cmp(&self.word_weight(y))
            .then_with(|| {
                let (ex, ey) = (x.exponents(n), y.exponents(n));
                self.lex_priority
                    .iter()
                    .map(|g| ex[g.index()].cmp(&ey[g.index()]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| x.cmp(y))
    }

    /// Largest term under [`cmp_monomials`](Self::cmp_monomials).
    pub fn leading_term<'p>(&self, p: &'p NcPoly<F>) -> Option<(&'p Word, &'p F)> {
        p.terms().max_by(|a, b| self.cmp_monomials(a.0, b.0))
    }

    /// All ordered monomials of weight ≤ `max_weight`, ascending in the
    /// monomial order. The list for a smaller cap is a prefix of this one.
    pub fn normal_monomials(&self, max_weight: u32) -> Vec<Word> {
        let n = self.generator_count();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(
            i: usize,
            budget: u32,
            weights: &[u32],
            exps: &mut Vec<u32>,
            out: &mut Vec<Word>,
        ) {
            if i == weights.len() {
                out.push(Word::from_exponents(exps));
                return;
            }
            let mut k = 0;
            while k * weights[i] <= budget {
                exps[i] = k;
                rec(i + 1, budget - k * weights[i], weights, exps, out);
                k += 1;
            }
            exps[i] = 0;
        }
        rec(0, max_weight, &self.weights, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(a, b));
        out
    }

    /// The down-up constants, if this is the down-up presentation.
    pub fn down_up_constants(&self) -> Option<DownUpConstants<F>> {
        match (self.family, &self.parameter) {
            (Family::DownUpExtended, Some(eta)) => DownUpConstants::new(eta.clone()).ok(),
            _ => None,
        }
    }

    /// Replaces one rule, bypassing validation of solvability. Used to
    /// build negative controls.
    pub fn with_rule_unchecked(&self, hi: GeneratorId, lo: GeneratorId, rule: Rule<F>) -> Self {
        let mut p = self.clone();
        p.rules.insert((hi, lo), rule);
        p
    }
}

fn check_q<F: Field>(q: &F) -> Result<(), Error> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }
    if q.is_one() || q.is_constant(&-crate::arith::rat(1, 1)) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is a root of unity"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BigRational, RationalFunction};

    #[test]
    fn quantum_plane_rule_inverts_q() {
        let p: Presentation<RationalFunction> =
            Presentation::build(Family::QuantumPlane, Some(RationalFunction::t())).unwrap();
        let rule = p.rule(p.gen("b"), p.gen("a")).unwrap();
        assert_eq!(rule.coeff, RationalFunction::t().recip().unwrap());
        assert!(rule.tail.is_zero());
    }

    #[test]
    fn down_up_eta_two_has_epsilon_one() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::DownUpExtended, Some(rat(2, 1))).unwrap();
        let c = p.down_up_constants().unwrap();
        assert_eq!(c.epsilon, rat(1, 1));
        assert_eq!(c.alpha.clone() + &c.beta, rat(1, 1));
        assert_eq!(c.phi, rat(-2, 1));
        let rule = p.rule(p.gen("d"), p.gen("u")).unwrap();
        assert_eq!(rule.tail.coefficient(&Word::letter(p.gen("w"))), rat(1, 1));
        assert_eq!(rule.tail.coefficient(&Word::empty()), rat(-1, 1));
    }

    #[test]
    fn ore_rule_and_weights() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::OreExtension { r: 2 }, None).unwrap();
        let (a, b) = (p.gen("a"), p.gen("b"));
        let rule = p.rule(a, b).unwrap();
        assert_eq!(rule.tail, NcPoly::word(Word::power(a, 2)));
        assert_eq!(p.weight(b), 1);
        let p3: Presentation<BigRational> =
            Presentation::build(Family::OreExtension { r: 3 }, None).unwrap();
        assert_eq!(p3.weight(p3.gen("b")), 2);
    }

    #[test]
    fn invalid_parameters() {
        let bad = |f, x: Option<BigRational>| Presentation::build(f, x).unwrap_err();
        assert!(matches!(bad(Family::DownUpExtended, Some(rat(1, 1))), Error::InvalidParameter(_)));
        assert!(matches!(bad(Family::DownUpExtended, Some(rat(0, 1))), Error::InvalidParameter(_)));
        assert!(matches!(bad(Family::QuantumPlane, Some(rat(0, 1))), Error::InvalidParameter(_)));
        assert!(matches!(bad(Family::OreExtension { r: 0 }, None), Error::InvalidParameter(_)));
    }

    #[test]
    fn normal_monomials_are_prefix_stable() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::DownUpExtended, Some(rat(2, 1))).unwrap();
        let small = p.normal_monomials(4);
        let big = p.normal_monomials(7);
        assert_eq!(&big[..small.len()], &small[..]);
        assert!(big.iter().all(Word::is_ordered));
        // u^i w^j d^k with i + 2j + k <= 4
        let count = (0..=2u32).map(|j| { let r = 4 - 2 * j; (r + 1) * (r + 2) / 2 }).sum::<u32>();
        assert_eq!(small.len() as u32, count);
    }
}
