//! Acceptance battery: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process fails if a criterion misses its expected outcome; criterion 8 is
//! expected to fail as stated (see `EXPECTED_FAILURES`).

use std::process::ExitCode;
use std::time::Instant;

use monolith_core::algebra::{
    verify_du_formulas, verify_normal_element, verify_presentation_consistency, Family,
    Presentation,
};
use monolith_core::arith::{rat, BigRational, Field, RationalFunction};
use monolith_core::constructions::{
    build_monolith, chain_growth_check, check_assumptions, direct_sum_control,
    down_up_duality_check, jx_membership_check, filtration_checks, make_spec, ore_factorial_identity,
    ore_nonisomorphism, singular_weight_report, singular_weights, verma_module, weight_sequence,
    weyl_oracle_check, MonolithSpec, SequenceKind,
};
use monolith_core::module::{is_simple_truncated, ProbeConfig};
use monolith_core::pipeline::{self, PipelineConfig};
use monolith_core::report::{render_json, CheckReport, RunReport};
use monolith_core::Result;

/// Hom(a^m N, a^{m1} N) contains the inclusion when m > m1, so the literal
/// "dimension 0 for all m ≠ m1" cannot hold.
const EXPECTED_FAILURES: &[u32] = &[8];

const SEED: u64 = 7;

fn t() -> RationalFunction {
    RationalFunction::t()
}

fn two<F: Field>() -> F {
    F::from_i64(2)
}

/// The six standard configurations over the field each one needs.
enum AnySpec {
    Sym(MonolithSpec<RationalFunction>),
    Num(MonolithSpec<BigRational>),
}

fn standard_specs() -> Result<Vec<(String, AnySpec)>> {
    let mut out = vec![
        ("quantum-plane q=t".into(), AnySpec::Sym(make_spec(Family::QuantumPlane, Some(t()), None)?)),
        ("weyl q=t".into(), AnySpec::Sym(make_spec(Family::QuantizedWeyl, Some(t()), None)?)),
    ];
    for r in 1..=3 {
        out.push((format!("ore r={r}"), AnySpec::Num(make_spec(Family::OreExtension { r }, None, None)?)));
    }
    out.push((
        "down-up eta=2 kappa=2".into(),
        AnySpec::Num(make_spec(Family::DownUpExtended, Some(two()), Some(two()))?),
    ));
    Ok(out)
}

/// Failure names of `rep`'s failing leaves, for the detail column.
fn failing(rep: &CheckReport) -> Vec<String> {
    if rep.is_pass() || rep.informational {
        return Vec::new();
    }
    let below: Vec<String> = rep.children.iter().flat_map(failing).collect();
    if below.is_empty() {
        vec![format!("{}: {}", rep.check_name, rep.witnesses.first().cloned().unwrap_or_default())]
    } else {
        below
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn from_reports(reps: &[(String, CheckReport)]) -> Verdict {
    let bad: Vec<String> = reps
        .iter()
        .filter(|(_, r)| !r.is_pass())
        .map(|(name, r)| format!("{name} [{}]", failing(r).join("; ")))
        .collect();
    if bad.is_empty() {
        verdict(true, format!("{} runs", reps.len()))
    } else {
        verdict(false, bad.join(", "))
    }
}

fn c1_presentations() -> Result<Verdict> {
    let mut reps = Vec::new();
    for (name, q) in [("t", t()), ("2", two())] {
        for fam in [Family::QuantumPlane, Family::QuantizedWeyl, Family::DownUpExtended] {
            let pres = Presentation::build(fam, Some(q.clone()))?;
            reps.push((format!("{fam} {name}"), verify_presentation_consistency(&pres)));
        }
    }
    for r in 1..=3 {
        let pres = Presentation::<BigRational>::build(Family::OreExtension { r }, None)?;
        reps.push((format!("ore r={r}"), verify_presentation_consistency(&pres)));
    }
    Ok(from_reports(&reps))
}

fn c2_formulas() -> Result<Verdict> {
    let pres = Presentation::build(Family::DownUpExtended, Some(t()))?;
    let mut reps = vec![("down-up formulas at t".to_string(), verify_du_formulas(&pres, 5))];
    for r in 1..=3 {
        reps.push((format!("ore factorial r={r}"), ore_factorial_identity::<BigRational>(r, 5)?));
    }
    reps.push(("filtration at 2, n+2k<=10".into(), filtration_checks(rat(2, 1), 10)?));
    Ok(from_reports(&reps))
}

fn c3_normality() -> Result<Verdict> {
    let mut reps = Vec::new();
    for (name, spec) in standard_specs()? {
        let rep = match &spec {
            AnySpec::Sym(s) => verify_normal_element(&s.presentation, &s.w_elem, &s.sigma),
            AnySpec::Num(s) => verify_normal_element(&s.presentation, &s.w_elem, &s.sigma),
        };
        reps.push((name, rep));
    }
    Ok(from_reports(&reps))
}

fn c4_assumptions() -> Result<Verdict> {
    let cfg = ProbeConfig::with_seed(SEED, 50);
    let mut reps = Vec::new();
    for (name, spec) in standard_specs()? {
        for d in [8, 10] {
            let rep = match &spec {
                AnySpec::Sym(s) => check_assumptions(s, d, 4, &cfg)?,
                AnySpec::Num(s) => check_assumptions(s, d, 4, &cfg)?,
            };
            reps.push((format!("{name} D={d}"), rep));
        }
    }
    Ok(from_reports(&reps))
}

fn c5_essentiality() -> Result<Verdict> {
    let cfg = ProbeConfig::with_seed(SEED, 100);
    let mut reps = Vec::new();
    let mut controls_failed = true;
    let mut reproducible = true;
    for (name, spec) in standard_specs()? {
        let (first, again, control) = match &spec {
            AnySpec::Sym(s) => (
                build_monolith(s, 8, &cfg)?.report,
                build_monolith(s, 8, &cfg)?.report,
                direct_sum_control(s, 8, &cfg)?,
            ),
            AnySpec::Num(s) => (
                build_monolith(s, 8, &cfg)?.report,
                build_monolith(s, 8, &cfg)?.report,
                direct_sum_control(s, 8, &cfg)?,
            ),
        };
        reproducible &= first == again;
        controls_failed &= !control.is_pass();
        let signature = first.find("monolithic_signature").is_some_and(CheckReport::is_pass);
        if !signature {
            reps.push((format!("{name} signature"), {
                let mut r = CheckReport::new("monolithic_signature");
                r.fail("SignatureMissing", "no passing signature");
                r
            }));
        }
        reps.push((name, first));
    }
    let mut v = from_reports(&reps);
    if !controls_failed {
        v = verdict(false, format!("a direct-sum control passed; {}", v.detail));
    } else if !reproducible {
        v = verdict(false, format!("reports differ between identical runs; {}", v.detail));
    } else if v.pass {
        v.detail = format!("{} with signature, all direct-sum controls fail", v.detail);
    }
    Ok(v)
}

fn c6_weights() -> Result<Verdict> {
    let eta = rat(2, 1);
    let clock = Instant::now();
    let seq = weight_sequence(eta.clone(), rat(1, 1), 500, SequenceKind::Verma)?;
    let elapsed = clock.elapsed();
    let nonzero = seq.values.iter().all(|v| !Field::is_zero(v));
    let lambda1 = singular_weights(&eta, 1)?
        .into_iter()
        .find(|s| s.n == 1)
        .map(|s| s.lambda);
    let expected = rat(-1, 3);
    let simple = is_simple_truncated(&verma_module(eta.clone(), expected.clone(), 8)?, &ProbeConfig::with_seed(SEED, 20))?;
    let witness_v2 = simple.witnesses.iter().any(|w| w.starts_with("basis v2:"));
    let discrepancy = singular_weight_report(&eta, 5)?;
    let reported = discrepancy.informational && !discrepancy.witnesses.is_empty();
    let pass = nonzero
        && elapsed.as_secs_f64() < 1.0
        && lambda1.as_ref() == Some(&expected)
        && !simple.is_pass()
        && witness_v2
        && reported;
    Ok(verdict(
        pass,
        format!(
            "lambda_n != 0 for n <= 500: {nonzero} in {:.1} ms; lambda at n=1: {}; V(-1/3) simple: {}, v2 witness: {witness_v2}; closed-form discrepancy reported: {reported}",
            elapsed.as_secs_f64() * 1e3,
            lambda1.map_or("none".into(), |l| l.to_string()),
            simple.is_pass(),
        ),
    ))
}

fn c7_weyl_oracle() -> Result<Verdict> {
    let mut reps = Vec::new();
    for d in 1..=10 {
        reps.push((format!("D={d}"), weyl_oracle_check(t(), d)?));
    }
    Ok(from_reports(&reps))
}

fn c8_ore_morphisms() -> Result<Verdict> {
    let mut bad = Vec::new();
    for m in 0..=3 {
        for m1 in 0..=3 {
            let rep = ore_nonisomorphism::<BigRational>(2, m, m1, 8)?;
            let dim = rep.dimensions[0];
            let want = usize::from(m == m1);
            if dim != want {
                bad.push(format!("dim Hom(a^{m}N, a^{m1}N) = {dim}"));
            }
        }
    }
    Ok(if bad.is_empty() {
        verdict(true, "16 pairs")
    } else {
        verdict(false, bad.join(", "))
    })
}

fn c9_duality() -> Result<Verdict> {
    Ok(from_reports(&[
        ("eta=2".into(), down_up_duality_check(rat(2, 1))?),
        ("eta=t".into(), down_up_duality_check(t())?),
    ]))
}

fn c10_membership() -> Result<Verdict> {
    let cfg = ProbeConfig::with_seed(SEED, 20);
    let mut reps = Vec::new();
    for (name, spec) in standard_specs()? {
        let rep = match &spec {
            AnySpec::Sym(s) => jx_membership_check(s, 3, &cfg)?,
            AnySpec::Num(s) => jx_membership_check(s, 3, &cfg)?,
        };
        reps.push((name, rep));
    }
    Ok(from_reports(&reps))
}

fn c11_chain_growth() -> Result<Verdict> {
    let cfg = ProbeConfig::with_seed(SEED, 20);
    let mut reps = Vec::new();
    let mut counts = Vec::new();
    for (name, spec) in standard_specs()? {
        let rep = match &spec {
            AnySpec::Sym(s) => chain_growth_check(s, &[6, 8, 10], 4, &cfg)?,
            AnySpec::Num(s) => chain_growth_check(s, &[6, 8, 10], 4, &cfg)?,
        };
        counts.push(format!("{name} {:?}", rep.dimensions));
        reps.push((name, rep));
    }
    let mut v = from_reports(&reps);
    if v.pass {
        v.detail = counts.join(", ");
    }
    Ok(v)
}

fn c12_determinism() -> Result<Verdict> {
    let mut base = PipelineConfig::new(Family::QuantumPlane);
    base.probe = ProbeConfig::with_seed(SEED, 20);
    let render = || -> Result<String> {
        let mut run = RunReport::new("acceptance", "", base.echo());
        for c in pipeline::suite(&base)? {
            run.push(c);
        }
        Ok(render_json(&run))
    };
    let (a, b) = (render()?, render()?);
    Ok(verdict(a == b, format!("suite report of {} bytes, identical: {}", a.len(), a == b)))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Result<Verdict>); 12] = [
        (1, "presentation consistency", c1_presentations),
        (2, "displayed formulas", c2_formulas),
        (3, "normality", c3_normality),
        (4, "standing assumptions at D = 8, 10", c4_assumptions),
        (5, "essentiality and monolithic signature at D = 8", c5_essentiality),
        (6, "Verma weights and singular weight", c6_weights),
        (7, "Weyl closed-form oracle", c7_weyl_oracle),
        (8, "Ore morphism dimensions", c8_ore_morphisms),
        (9, "down-up duality", c9_duality),
        (10, "Jx membership identity", c10_membership),
        (11, "chain growth over D = 6, 8, 10", c11_chain_growth),
        (12, "determinism", c12_determinism),
    ];
    let mut unexpected = 0;
    for (n, title, run) in criteria {
        let clock = Instant::now();
        let v = run().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
        let status = if v.pass { "PASS" } else { "FAIL" };
        let expected_fail = EXPECTED_FAILURES.contains(&n);
        let tag = if expected_fail { " [expected failure]" } else { "" };
        println!(
            "{status} criterion {n}: {title}{tag} ({}; {:.2}s)",
            v.detail,
            clock.elapsed().as_secs_f64()
        );
        if v.pass == expected_fail {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria missed their expected outcome");
        ExitCode::FAILURE
    }
}
