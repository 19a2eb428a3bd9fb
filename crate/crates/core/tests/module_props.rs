use monolith_core::algebra::{Family, NcPoly};
use monolith_core::arith::{rat, BigRational, Field, RationalFunction};
use monolith_core::constructions::{jx_generators, make_spec, MonolithSpec};
use monolith_core::linalg::Subspace;
use monolith_core::module::{generated_submodule, probe_vector, truncate_ideal, ProbeConfig, TruncatedModule};
use proptest::prelude::*;

fn spec(fam: usize) -> MonolithSpec<RationalFunction> {
    let t = RationalFunction::t();
    let two = RationalFunction::from_rational(rat(2, 1));
    match fam {
        0 => make_spec(Family::QuantumPlane, Some(t), None),
        1 => make_spec(Family::QuantizedWeyl, Some(t), None),
        2 => make_spec(Family::OreExtension { r: 2 }, None, None),
        _ => make_spec(Family::DownUpExtended, Some(two.clone()), Some(two)),
    }
    .unwrap()
}

fn n_module(fam: usize, degree: u32) -> TruncatedModule<RationalFunction> {
    let s = spec(fam);
    s.cyclic_module(&[s.x.clone()], degree).unwrap()
}

fn m_module(fam: usize, degree: u32) -> TruncatedModule<RationalFunction> {
    let s = spec(fam);
    s.cyclic_module(&jx_generators(&s), degree).unwrap()
}

#[test]
fn quotient_dimensions_add_up() {
    for fam in 0..4 {
        for d in [4, 6, 8] {
            for m in [n_module(fam, d), m_module(fam, d)] {
                let q = m.quotient().unwrap();
                assert_eq!(q.monomials.len(), q.ideal.dim() + m.dim(), "family {fam} D={d}");
            }
        }
    }
}

#[test]
fn larger_slack_never_shrinks_the_ideal() {
    for fam in 0..4 {
        let s = spec(fam);
        let gens = jx_generators(&s);
        let pres = &s.presentation;
        let mut prev: Option<Subspace<RationalFunction>> = None;
        for start in [0, 2, 4, 6] {
            let tr = truncate_ideal(pres, &gens, 6, start, Some(start + 4)).unwrap();
            let dims: Vec<usize> = tr.history.iter().map(|h| h.1).collect();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "history {dims:?}");
            if let Some(p) = &prev {
                assert!(tr.subspace.contains_subspace(p));
            }
            prev = Some(tr.subspace);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The truncated action agrees with multiplying a coset representative
    /// and reducing modulo the ideal.
    #[test]
    fn action_matches_multiplication(fam in 0usize..4, g in 0usize..3, pick in any::<prop::sample::Index>()) {
        let m = m_module(fam, 6);
        let pres = m.presentation().clone();
        prop_assume!(g < pres.generator_count());
        let gid = pres.generators().nth(g).unwrap();
        let dom = m.action(gid).domain;
        prop_assume!(dom > 0);
        let j = pick.index(dom);
        let rep = m.quotient().unwrap().reps[j].clone();
        let mut e = vec![RationalFunction::zero(); m.dim()];
        e[j] = RationalFunction::one();
        let acted = m.act(&NcPoly::generator(gid), &e).unwrap();
        let direct = m.class_of(&NcPoly::generator(gid).concat_mul(&NcPoly::word(rep))).unwrap();
        prop_assert_eq!(acted, direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closing_a_closure_adds_nothing(fam in 0usize..4, seed in 0u64..1000) {
        let m = m_module(fam, 6);
        let cfg = ProbeConfig::with_seed(seed, 1);
        let v = probe_vector(&m, &cfg, 0, 3).unwrap();
        let once = generated_submodule(&m, &[v], 0).unwrap();
        let twice = generated_submodule(&m, &once.basis(), 0).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn rational_closures_are_idempotent(seed in 0u64..1000) {
        let s = make_spec(Family::QuantumPlane, Some(rat(2, 1)), None).unwrap();
        let m: TruncatedModule<BigRational> = s.cyclic_module(&jx_generators(&s), 6).unwrap();
        let cfg = ProbeConfig::with_seed(seed, 1);
        let v = probe_vector(&m, &cfg, 0, 3).unwrap();
        let once = generated_submodule(&m, &[v.clone()], 0).unwrap();
        prop_assert!(once.contains(&v));
        let twice = generated_submodule(&m, &once.basis(), 0).unwrap();
        prop_assert_eq!(once, twice);
    }
}
