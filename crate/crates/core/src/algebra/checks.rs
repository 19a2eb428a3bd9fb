use crate::arith::Field;
use crate::report::CheckReport;

use super::map::GeneratorMap;
use super::poly::NcPoly;
use super::presentation::{Family, Presentation};
use super::rewrite::{Multiplier, Rewriter, Strategy};
use super::spec_text::render_poly;
use super::word::{GeneratorId, Word};

fn word_of<F: Field>(pres: &Presentation<F>, names: &[&str]) -> Word {
    Word::new(names.iter().map(|n| pres.gen(n)).collect())
}

fn lin<F: Field>(pres: &Presentation<F>, terms: &[(F, &[&str])]) -> NcPoly<F> {
    NcPoly::from_terms(terms.iter().map(|(c, w)| (word_of(pres, w), c.clone())))
}

/// The family's defining relations written in the original generators,
/// each of which must vanish in the algebra.
pub fn defining_relations<F: Field>(pres: &Presentation<F>) -> Vec<(String, NcPoly<F>)> {
    let one = F::one;
    match pres.family() {
        Family::QuantumPlane | Family::QuantizedWeyl => {
            let q = pres.parameter().cloned().expect("q is set");
            let mut rel = lin(pres, &[(one(), &["a", "b"]), (-q, &["b", "a"])]);
            if pres.family() == Family::QuantizedWeyl {
                rel.add_term(Word::empty(), -one());
                vec![("ab - q*ba - 1".into(), rel)]
            } else {
                vec![("ab - q*ba".into(), rel)]
            }
        }
        Family::OreExtension { r } => {
            let a = pres.gen("a");
            let mut rel = lin(pres, &[(one(), &["a", "b"]), (-one(), &["b", "a"])]);
            rel.add_term(Word::power(a, r as usize), -one());
            vec![("ab - ba - a^r".into(), rel)]
        }
        Family::DownUpExtended => {
            let c = pres.down_up_constants().expect("down-up constants");
            let r1 = lin(
                pres,
                &[
                    (one(), &["d", "d", "u"]),
                    (-c.alpha.clone(), &["d", "u", "d"]),
                    (-c.beta.clone(), &["u", "d", "d"]),
                    (-c.gamma.clone(), &["d"]),
                ],
            );
            let r2 = lin(
                pres,
                &[
                    (one(), &["d", "u", "u"]),
                    (-c.alpha.clone(), &["u", "d", "u"]),
                    (-c.beta.clone(), &["u", "u", "d"]),
                    (-c.gamma.clone(), &["u"]),
                ],
            );
            let wdef = lin(
                pres,
                &[
                    (-one(), &["u", "d"]),
                    (one(), &["d", "u"]),
                    (c.epsilon.clone(), &[]),
                    (-one(), &["w"]),
                ],
            );
            vec![
                ("R1".into(), r1),
                ("R2".into(), r2),
                ("w = -ud + du + eps".into(), wdef),
            ]
        }
    }
}

/// Diamond check on every length-3 word with a descent, plus reduction of
/// the family's defining relations.
pub fn verify_presentation_consistency<F: Field>(pres: &Presentation<F>) -> CheckReport {
    let mut report = CheckReport::new("presentation_consistency");
    report.note(format!("family {}", pres.family()));
    let n = pres.generator_count() as u8;
    let mut words = 0usize;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                let w = Word::new(vec![GeneratorId(k), GeneratorId(j), GeneratorId(i)]);
                if w.is_ordered() {
                    continue;
                }
                words += 1;
                let mut branches = Vec::new();
                for pos in 0..2 {
                    if w[pos] > w[pos + 1] {
                        let mut rw = Rewriter::new(pres, Strategy::Leftmost);
                        let step = rw.step_at(&w, pos);
                        branches.push(rw.normal_form(&step));
                    }
                }
                branches.push(Rewriter::new(pres, Strategy::Rightmost).normal_form(&NcPoly::word(w.clone())));
                if branches.windows(2).any(|b| b[0] != b[1]) {
                    let diff = branches[0].sub(&branches[1]);
                    report.fail(
                        "InconsistentPresentation",
                        format!(
                            "{}*{}*{}: branches differ by {}",
                            pres.name(w[0]),
                            pres.name(w[1]),
                            pres.name(w[2]),
                            render_poly(pres, &diff)
                        ),
                    );
                }
            }
        }
    }
    report.dimensions.push(words);
    let mut mult = Multiplier::new(pres);
    for (name, rel) in defining_relations(pres) {
        let residue = mult.normal_form(&rel);
        if !residue.is_zero() {
            report.fail(
                "InconsistentPresentation",
                format!("{name} reduces to {}", render_poly(pres, &residue)),
            );
        }
    }
    report
}

/// Checks `w·g = σ(g)·w` for every generator `g`.
pub fn verify_normal_element<F: Field>(
    pres: &Presentation<F>,
    w_elem: &NcPoly<F>,
    sigma: &GeneratorMap<F>,
) -> CheckReport {
    let mut report = CheckReport::new("normal_element");
    if w_elem.is_zero() {
        report.fail("NotNormal", "w = 0");
        return report;
    }
    let mut mult = Multiplier::new(pres);
    for g in pres.generators() {
        let lhs = mult.mul(w_elem, &NcPoly::generator(g));
        let rhs = mult.mul(sigma.image(g), w_elem);
        let residue = lhs.sub(&rhs);
        if !residue.is_zero() {
            report.fail(
                "NotNormal",
                format!("generator {}: residue {}", pres.name(g), render_poly(pres, &residue)),
            );
        }
    }
    report
}

/// Right-hand sides of the closed formulas for `d·u^{2n}` and `d·u^{2n+1}`.
pub fn du_formula_rhs<F: Field>(pres: &Presentation<F>, n: u32, odd: bool) -> NcPoly<F> {
    let c = pres.down_up_constants().expect("down-up presentation");
    let (u, w, d) = (pres.gen("u"), pres.gen("w"), pres.gen("d"));
    let upow = |k: u32| Word::power(u, k as usize);
    let eta_inv = c.eta.inv().expect("eta != 0");
    let nf = F::from_i64(n as i64);
    // α Σ_{i<n} η^{−2i−1}
    let mut sum = F::zero();
    let mut p = eta_inv.clone();
    for _ in 0..n {
        sum = sum + &p;
        p = p * &eta_inv * &eta_inv;
    }
    let sum = c.alpha.clone() * &sum;
    let mut rhs = NcPoly::zero();
    if !odd {
        rhs.add_term(upow(2 * n).concat(&Word::letter(d)), F::one());
        rhs.add_term(upow(2 * n - 1), nf * &c.phi);
        rhs.add_term(Word::letter(w).concat(&upow(2 * n - 1)), sum);
    } else {
        rhs.add_term(upow(2 * n + 1).concat(&Word::letter(d)), F::one());
        rhs.add_term(upow(2 * n).concat(&Word::letter(w)), F::one());
        rhs.add_term(upow(2 * n), nf * &c.phi - c.epsilon.clone());
        rhs.add_term(Word::letter(w).concat(&upow(2 * n)), sum);
    }
    rhs
}

/// Verifies the closed formulas for `d·u^j`: even `j = 2n` for
/// `1 ≤ n ≤ n_max`, odd `j = 2n+1` for `0 ≤ n ≤ n_max`.
pub fn verify_du_formulas<F: Field>(pres: &Presentation<F>, n_max: u32) -> CheckReport {
    let mut report = CheckReport::new("du_formulas");
    if pres.family() != Family::DownUpExtended {
        report.fail("FormulaMismatch", "not a down-up presentation");
        return report;
    }
    let (u, d) = (pres.gen("u"), pres.gen("d"));
    let mut mult = Multiplier::new(pres);
    for n in 0..=n_max {
        for odd in [false, true] {
            if !odd && n == 0 {
                continue;
            }
            let j = if odd { 2 * n + 1 } else { 2 * n };
            let mut lhs_word = vec![d];
            lhs_word.extend(std::iter::repeat_n(u, j as usize));
            let lhs = mult.normal_form(&NcPoly::word(Word::new(lhs_word)));
            let rhs = mult.normal_form(&du_formula_rhs(pres, n, odd));
            let residue = lhs.sub(&rhs);
            if !residue.is_zero() {
                report.fail(
                    "FormulaMismatch",
                    format!("n = {n}, d*u^{j}: residue {}", render_poly(pres, &residue)),
                );
            }
        }
    }
    report.note(format!("n_max = {n_max}"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presentation::Rule;
    use crate::arith::{rat, BigRational, RationalFunction};

    #[test]
    fn all_families_consistent() {
        let t = RationalFunction::t();
        for fam in [Family::QuantumPlane, Family::QuantizedWeyl, Family::DownUpExtended] {
            let p = Presentation::build(fam, Some(t.clone())).unwrap();
            assert!(verify_presentation_consistency(&p).is_pass(), "{fam}");
        }
        for r in 1..=3 {
            let p: Presentation<BigRational> =
                Presentation::build(Family::OreExtension { r }, None).unwrap();
            assert!(verify_presentation_consistency(&p).is_pass());
        }
    }

    #[test]
    fn corrupted_rules_are_caught() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::DownUpExtended, Some(rat(2, 1))).unwrap();
        let bad = p.with_rule_unchecked(
            p.gen("d"),
            p.gen("w"),
            Rule { coeff: rat(3, 1), tail: NcPoly::zero() },
        );
        let report = verify_presentation_consistency(&bad);
        assert!(!report.is_pass());
        assert_eq!(report.failure.as_deref(), Some("InconsistentPresentation"));

        let ore: Presentation<BigRational> =
            Presentation::build(Family::OreExtension { r: 2 }, None).unwrap();
        let dropped = ore.with_rule_unchecked(
            ore.gen("a"),
            ore.gen("b"),
            Rule { coeff: rat(1, 1), tail: NcPoly::zero() },
        );
        assert!(!verify_presentation_consistency(&dropped).is_pass());
    }

    #[test]
    fn du_formulas_symbolic() {
        let p = Presentation::build(Family::DownUpExtended, Some(RationalFunction::t())).unwrap();
        assert!(verify_du_formulas(&p, 3).is_pass());
    }

    #[test]
    fn quantum_plane_identity_sigma_is_not_normal() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::QuantumPlane, Some(rat(2, 1))).unwrap();
        let w = NcPoly::word(Word::from_indices(&[0, 1]));
        let report = verify_normal_element(&p, &w, &GeneratorMap::identity(2));
        assert_eq!(report.failure.as_deref(), Some("NotNormal"));
    }
}
