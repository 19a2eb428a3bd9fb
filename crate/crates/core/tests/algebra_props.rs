use monolith_core::algebra::{
    Family, Multiplier, NcPoly, Presentation, Rewriter, Strategy as Redex, Word,
};
use monolith_core::arith::{rat, Field, RationalFunction};
use monolith_core::constructions::make_spec;
use proptest::prelude::*;

fn presentations() -> Vec<Presentation<RationalFunction>> {
    let t = RationalFunction::t();
    let two = RationalFunction::from_rational(rat(2, 1));
    vec![
        Presentation::build(Family::QuantumPlane, Some(t.clone())).unwrap(),
        Presentation::build(Family::QuantizedWeyl, Some(t.clone())).unwrap(),
        Presentation::build(Family::OreExtension { r: 1 }, None).unwrap(),
        Presentation::build(Family::OreExtension { r: 2 }, None).unwrap(),
        Presentation::build(Family::OreExtension { r: 3 }, None).unwrap(),
        Presentation::build(Family::DownUpExtended, Some(t)).unwrap(),
        Presentation::build(Family::DownUpExtended, Some(two)).unwrap(),
    ]
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..n as u8, 0..=max_len).prop_map(|ix| Word::from_indices(&ix))
}

fn normal_word<F: Field>(pres: &Presentation<F>, w: &Word) -> NcPoly<F> {
    Rewriter::new(pres, Redex::Leftmost).normal_form(&NcPoly::word(w.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn redex_choice_does_not_matter(w in word(3, 8), fam in 0usize..7) {
        let pres = &presentations()[fam];
        let w = Word::new(w.letters().iter().copied().filter(|g| g.index() < pres.generator_count()).collect());
        let p = NcPoly::word(w);
        let left = Rewriter::new(pres, Redex::Leftmost).normal_form(&p);
        let right = Rewriter::new(pres, Redex::Rightmost).normal_form(&p);
        prop_assert!(left.is_normal());
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Steps stay below a polynomial in the word length up to weight 12.
    #[test]
    fn rewriting_steps_are_polynomially_bounded(w in word(3, 12), fam in 0usize..7) {
        let pres = &presentations()[fam];
        let w = Word::new(w.letters().iter().copied().filter(|g| g.index() < pres.generator_count()).collect());
        prop_assume!(pres.word_weight(w.letters()) <= 12);
        let n = w.letters().len() as u64;
        let mut rw = Rewriter::new(pres, Redex::Leftmost);
        rw.normal_form(&NcPoly::word(w));
        prop_assert!(rw.steps() <= 1 + n.pow(4) * 8, "{} steps for length {n}", rw.steps());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_is_multiplicative(u in word(3, 4), v in word(3, 4), fam in 0usize..4) {
        let t = RationalFunction::t();
        let two = RationalFunction::from_rational(rat(2, 1));
        let spec = match fam {
            0 => make_spec(Family::QuantumPlane, Some(t), None),
            1 => make_spec(Family::QuantizedWeyl, Some(t), None),
            2 => make_spec(Family::OreExtension { r: 2 }, None, None),
            _ => make_spec(Family::DownUpExtended, Some(two.clone()), Some(two)),
        }
        .unwrap();
        let pres = &spec.presentation;
        let keep = |w: &Word| Word::new(w.letters().iter().copied().filter(|g| g.index() < pres.generator_count()).collect());
        let (p, q) = (normal_word(pres, &keep(&u)), normal_word(pres, &keep(&v)));
        let mut mult = Multiplier::new(pres);
        let pq = mult.mul(&p, &q);
        let lhs = spec.sigma.apply(&mut mult, &pq);
        let sp = spec.sigma.apply(&mut mult, &p);
        let sq = spec.sigma.apply(&mut mult, &q);
        prop_assert_eq!(lhs, mult.mul(&sp, &sq));
    }

    /// The leading monomial of a product of normal monomials is the sorted
    /// concatenation, with nonzero coefficient. Equal-weight tails (Ore with
    /// r ≥ 2) sit below it in the order.
    #[test]
    fn leading_terms_do_not_cancel(u in word(3, 5), v in word(3, 5), fam in 0usize..7) {
        let pres = &presentations()[fam];
        let n = pres.generator_count();
        let keep = |w: &Word| Word::new(w.letters().iter().copied().filter(|g| g.index() < n).collect());
        let (a, b) = (normal_word(pres, &keep(&u)), normal_word(pres, &keep(&v)));
        let (m1, _) = pres.leading_term(&a).unwrap();
        let (m2, _) = pres.leading_term(&b).unwrap();
        let prod = Multiplier::new(pres).mul(&NcPoly::word(m1.clone()), &NcPoly::word(m2.clone()));
        let ex: Vec<u32> = m1.exponents(n).iter().zip(m2.exponents(n)).map(|(x, y)| x + y).collect();
        let (lead, c) = pres.leading_term(&prod).unwrap();
        prop_assert_eq!(lead, &Word::from_exponents(&ex));
        prop_assert!(!c.is_zero());
    }
}
