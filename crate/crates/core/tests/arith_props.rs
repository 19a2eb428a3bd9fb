use monolith_core::arith::{rat, specialize, BigRational, Field, RationalFunction, Scalar, UniPoly};
use proptest::prelude::*;

const P: u64 = (1 << 61) - 1;

fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 0..=max_len).prop_map(|c| UniPoly::from_i64s(&c))
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (poly(5), poly(4))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn axioms<F: Field + std::fmt::Debug>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.clone() + b, b.clone() + a);
    prop_assert_eq!(a.clone() * b, b.clone() * a);
    prop_assert_eq!((a.clone() + b) + c, a.clone() + (b.clone() + c));
    prop_assert_eq!((a.clone() * b) * c, a.clone() * (b.clone() * c));
    prop_assert_eq!(a.clone() * (b.clone() + c), a.clone() * b + a.clone() * c);
    prop_assert_eq!(a.clone() - a, F::zero());
    if let Some(inv) = a.inv() {
        prop_assert!((a.clone() * inv).is_one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        axioms(&a, &b, &c)?;
    }

    #[test]
    fn rational_function_field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        axioms(&a, &b, &c)?;
    }
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(n in poly(9), d in poly(9)) {
        prop_assume!(!d.is_zero());
        let once = RationalFunction::from_raw_parts(n, d).canonicalize().unwrap();
        prop_assert_eq!(once.canonicalize().unwrap(), once.clone());
        prop_assert!(once.denom().is_monic());
    }

    #[test]
    fn specialize_is_a_homomorphism(a in ratfun(), b in ratfun(), t0 in -6i64..=6) {
        let t0 = rat(t0, 1);
        let at = |x: &RationalFunction| specialize(&Scalar::RatFun(x.clone()), &t0);
        let (Ok(x), Ok(y)) = (at(&a), at(&b)) else { return Ok(()) };
        prop_assert_eq!(at(&(a.clone() + &b)).unwrap(), x.clone() + &y);
        prop_assert_eq!(at(&(a.clone() * &b)).unwrap(), x * y);
    }

    #[test]
    fn residues_respect_field_operations(a in ratfun(), b in ratfun(), t0 in 2u64..1000) {
        let (Some(x), Some(y)) = (a.residue(P, t0), b.residue(P, t0)) else { return Ok(()) };
        let sum = (a.clone() + &b).residue(P, t0);
        let prod = (a.clone() * &b).residue(P, t0);
        prop_assert_eq!(sum, Some(((x as u128 + y as u128) % P as u128) as u64));
        prop_assert_eq!(prod, Some(((x as u128 * y as u128) % P as u128) as u64));
    }

    #[test]
    fn small_values_lift_back(q in rational(), f in ratfun()) {
        let r = q.residue(P, 0).unwrap();
        prop_assert_eq!(BigRational::lift(&[(0, r)]), Some(q));
        let samples: Vec<(u64, u64)> = (1000..1016u64)
            .filter_map(|t| f.residue(P, t).map(|v| (t, v)))
            .collect();
        prop_assume!(samples.len() == 16);
        prop_assert_eq!(RationalFunction::lift(&samples), Some(f));
    }
}
