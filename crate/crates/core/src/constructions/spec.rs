use std::sync::Arc;

use crate::algebra::{apply_map_power, Family, GeneratorMap, NcPoly, Presentation, Word};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::module::TruncatedModule;

/// Generator of the complement subring `B` in `A = B ⊕ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Complement<F> {
    /// The same `B = K[b]` for every `m`.
    Fixed(NcPoly<F>),
    /// `B_m = K[σ^m(x)]`.
    SigmaPower,
}

/// The construction data `(w, μ, σ, J, x, B)` for one family.
#[derive(Clone, Debug)]
pub struct MonolithSpec<F> {
    pub presentation: Arc<Presentation<F>>,
    pub w_elem: NcPoly<F>,
    pub mu: F,
    pub sigma: GeneratorMap<F>,
    pub j_gens: Vec<NcPoly<F>>,
    pub x: NcPoly<F>,
    pub complement: Complement<F>,
    /// Lowest weight of `L ≅ W(κ)` for the down-up family.
    pub kappa: Option<F>,
    /// Cap on the extra weight used when truncating ideals; `None` picks
    /// the default for each degree.
    pub slack_cap: Option<u32>,
}

impl<F: Field> MonolithSpec<F> {
    /// Generator `b_m` of the complement for a given `m`.
    pub fn complement_generator(&self, m: u32) -> NcPoly<F> {
        match &self.complement {
            Complement::Fixed(b) => b.clone(),
            Complement::SigmaPower => self.sigma_power_x(m),
        }
    }

    pub fn sigma_power_x(&self, m: u32) -> NcPoly<F> {
        apply_map_power(&self.presentation, &self.sigma, m, &self.x)
    }

    pub fn family(&self) -> Family {
        self.presentation.family()
    }

    /// `A/A·gens` truncated at `degree` under this spec's slack cap.
    pub fn cyclic_module(&self, gens: &[NcPoly<F>], degree: u32) -> Result<TruncatedModule<F>> {
        TruncatedModule::build_cyclic(self.presentation.clone(), gens, degree, 2, self.slack_cap)
    }
}

fn gen<F: Field>(p: &Presentation<F>, name: &str) -> NcPoly<F> {
    NcPoly::generator(p.gen(name))
}

fn scaled<F: Field>(p: &Presentation<F>, name: &str, c: F) -> NcPoly<F> {
    NcPoly::term(Word::letter(p.gen(name)), c)
}

/// Default κ for the down-up family.
pub const DEFAULT_KAPPA: i64 = 2;

/// Builds the construction package of a family.
///
/// Quantum plane: `w = ab`, `J = A(ab − 1)`, `x = a − 1`. Quantized Weyl:
/// `w = ab − ba`, `J = Aa`, `x = (1 − q)b − 1`. Ore: `w = a`,
/// `J = A(a − 1)`, `x = b − 1`. Down-up: `w` adjoined, `J = Au + A(ud − κ)`,
/// `x = d − 1`, `μ = ε − κ`.
pub fn make_spec<F: Field>(
    family: Family,
    parameter: Option<F>,
    kappa: Option<F>,
) -> Result<MonolithSpec<F>> {
    let pres = Arc::new(Presentation::build(family, parameter)?);
    let p = &*pres;
    let one = NcPoly::<F>::one;
    let spec = match family {
        Family::QuantumPlane | Family::QuantizedWeyl => {
            let q = p.parameter().cloned().expect("q is set");
            let qinv = q.inv().expect("q != 0");
            let (a, b) = (p.gen("a"), p.gen("b"));
            let sigma = GeneratorMap::new(vec![scaled(p, "a", qinv.clone()), scaled(p, "b", q.clone())]);
            let ab = NcPoly::word(Word::new(vec![a, b]));
            if family == Family::QuantumPlane {
                MonolithSpec {
                    w_elem: ab.clone(),
                    mu: F::one(),
                    sigma,
                    j_gens: vec![ab.sub(&one())],
                    x: gen(p, "a").sub(&one()),
                    complement: Complement::Fixed(gen(p, "a")),
                    kappa: None,
                    slack_cap: None,
                    presentation: pres.clone(),
                }
            } else {
                // ab − ba = (1 − q⁻¹)ab + q⁻¹
                let mut w = ab.scale(&(F::one() - qinv.clone()));
                w.add_term(Word::empty(), qinv);
                MonolithSpec {
                    w_elem: w,
                    mu: F::one(),
                    sigma,
                    j_gens: vec![gen(p, "a")],
                    x: scaled(p, "b", F::one() - q).sub(&one()),
                    complement: Complement::Fixed(gen(p, "b")),
                    kappa: None,
                    slack_cap: None,
                    presentation: pres.clone(),
                }
            }
        }
        Family::OreExtension { r } => {
            let a = p.gen("a");
            let sigma_b = gen(p, "b").add(&NcPoly::word(Word::power(a, (r - 1) as usize)));
            let sigma = GeneratorMap::new(vec![sigma_b, gen(p, "a")]);
            MonolithSpec {
                w_elem: gen(p, "a"),
                mu: F::one(),
                sigma,
                j_gens: vec![gen(p, "a").sub(&one())],
                x: gen(p, "b").sub(&one()),
                complement: Complement::SigmaPower,
                kappa: None,
                slack_cap: None,
                presentation: pres.clone(),
            }
        }
        Family::DownUpExtended => {
            let c = p.down_up_constants().expect("down-up constants");
            let kappa = kappa.unwrap_or_else(|| F::from_i64(DEFAULT_KAPPA));
            let mu = c.epsilon.clone() - kappa.clone();
            if mu.is_zero() {
                return Err(Error::MuZero);
            }
            let eta_inv = c.eta.inv().expect("eta != 0");
            let sigma = GeneratorMap::new(vec![
                scaled(p, "u", c.eta.clone()),
                gen(p, "w"),
                scaled(p, "d", eta_inv),
            ]);
            let (u, d) = (p.gen("u"), p.gen("d"));
            let mut ud_k = NcPoly::word(Word::new(vec![u, d]));
            ud_k.add_term(Word::empty(), -kappa.clone());
            MonolithSpec {
                w_elem: gen(p, "w"),
                mu,
                sigma,
                j_gens: vec![gen(p, "u"), ud_k],
                x: gen(p, "d").sub(&one()),
                complement: Complement::Fixed(gen(p, "d")),
                kappa: Some(kappa),
                slack_cap: None,
                presentation: pres.clone(),
            }
        }
    };
    if p.poly_weight(&spec.x) == 0 {
        return Err(Error::InvalidParameter("x must not be a unit".into()));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::render_poly;
    use crate::arith::{rat, BigRational, RationalFunction};

    #[test]
    fn down_up_eta_two_kappa_two() {
        let s: MonolithSpec<BigRational> =
            make_spec(Family::DownUpExtended, Some(rat(2, 1)), Some(rat(2, 1))).unwrap();
        assert_eq!(s.mu, rat(-1, 1));
        let p = &s.presentation;
        let rendered: Vec<String> = s.j_gens.iter().map(|g| render_poly(p, g)).collect();
        assert_eq!(rendered, vec!["u", "u*d + -2"]);
        assert_eq!(render_poly(p, &s.x), "d + -1");
    }

    #[test]
    fn kappa_equal_to_epsilon_is_rejected() {
        let err = make_spec::<BigRational>(Family::DownUpExtended, Some(rat(2, 1)), Some(rat(1, 1)));
        assert_eq!(err.unwrap_err(), Error::MuZero);
    }

    #[test]
    fn quantum_plane_symbolic() {
        let s = make_spec(Family::QuantumPlane, Some(RationalFunction::t()), None).unwrap();
        let p = &s.presentation;
        assert_eq!(render_poly(p, &s.w_elem), "a*b");
        assert_eq!(render_poly(p, &s.j_gens[0]), "a*b + -1");
        assert_eq!(render_poly(p, &s.x), "a + -1");
        assert!(s.mu.is_one());
    }

    #[test]
    fn ore_sigma_power_of_x() {
        let s: MonolithSpec<BigRational> = make_spec(Family::OreExtension { r: 3 }, None, None).unwrap();
        let p = &s.presentation;
        assert_eq!(render_poly(p, &s.sigma_power_x(4)), "b + 4*a^2 + -1");
    }
}
