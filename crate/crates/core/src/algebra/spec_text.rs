//! Text formats: the one-line algebra spec and polynomial rendering.

use std::fmt;

use crate::arith::{parse_scalar, Field, Scalar};
use crate::error::{Error, Result};

use super::poly::NcPoly;
use super::presentation::{Family, Presentation};
use super::word::Word;

/// A family plus its scalar parameter, e.g. `family=weyl; q=2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub family: Family,
    pub parameter: Option<Scalar>,
}

impl AlgebraSpec {
    pub fn is_symbolic(&self) -> bool {
        self.parameter.as_ref().is_some_and(Scalar::is_symbolic)
    }
}

/// Polynomial parameters (the common `t`) render without a denominator.
pub fn compact_scalar(s: &Scalar) -> String {
    match s {
        Scalar::RatFun(r) if r.denom().is_one() => r.numer().to_string(),
        other => other.to_string(),
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = self.parameter.as_ref().map(compact_scalar);
        match (&self.family, &param) {
            (Family::QuantumPlane, Some(q)) => write!(f, "family=quantum_plane; q={q}"),
            (Family::QuantizedWeyl, Some(q)) => write!(f, "family=weyl; q={q}"),
            (Family::OreExtension { r }, _) => write!(f, "family=ore; r={r}"),
            (Family::DownUpExtended, Some(eta)) => write!(f, "family=down_up; eta={eta}"),
            (fam, None) => write!(f, "family={}", fam.cli_name()),
        }
    }
}

pub fn parse_algebra_spec(s: &str) -> Result<AlgebraSpec> {
    let mut family = None;
    let mut q = None;
    let mut eta = None;
    let mut r = None;
    for field in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(field.to_string()))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "family" => family = Some(v.to_string()),
            "q" => q = Some(parse_scalar(v)?),
            "eta" => eta = Some(parse_scalar(v)?),
            "r" => {
                r = Some(
                    v.parse::<u32>()
                        .map_err(|_| Error::InvalidParameter(format!("r = {v}")))?,
                )
            }
            other => return Err(Error::Parse(format!("unknown key {other}"))),
        }
    }
    let family = family.ok_or_else(|| Error::Parse("missing family".into()))?;
    let (family, parameter) = match family.as_str() {
        "quantum_plane" => (Family::QuantumPlane, q),
        "weyl" => (Family::QuantizedWeyl, q),
        "ore" => (
            Family::OreExtension {
                r: r.ok_or_else(|| Error::InvalidParameter("ore needs r".into()))?,
            },
            None,
        ),
        "down_up" => (Family::DownUpExtended, eta),
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    Ok(AlgebraSpec { family, parameter })
}

fn render_word<F: Field>(pres: &Presentation<F>, w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let g = w[i];
        let mut k = 1;
        while i + k < w.len() && w[i + k] == g {
            k += 1;
        }
        let name = pres.name(g);
        parts.push(if k == 1 { name.to_string() } else { format!("{name}^{k}") });
        i += k;
    }
    parts.join("*")
}

/// Renders `c*g1*g2^k + …`, terms in descending monomial order.
pub fn render_poly<F: Field>(pres: &Presentation<F>, p: &NcPoly<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|x, y| pres.cmp_monomials(y.0, x.0));
    let minus_one = -F::one();
    // single-term polynomial coefficients drop the `/(1)`
    let coeff = |c: &F| {
        let short = compact_scalar(&c.to_scalar());
        if short.contains(' ') {
            c.to_string()
        } else {
            short
        }
    };
    terms
        .into_iter()
        .map(|(w, c)| {
            if w.is_empty() {
                coeff(c)
            } else if c.is_one() {
                render_word(pres, w)
            } else if *c == minus_one {
                format!("-{}", render_word(pres, w))
            } else {
                format!("{}*{}", coeff(c), render_word(pres, w))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Splits at depth-0 `sep` characters.
fn split_top(s: &str, is_sep: impl Fn(usize, char) -> bool) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if depth == 0 && is_sep(i, ch) => {
                out.push((start, s[start..i].to_string()));
                start = i;
            }
            _ => {}
        }
    }
    out.push((start, s[start..].to_string()));
    out
}

/// Parses the grammar produced by [`render_poly`]. Rational coefficients
/// are accepted in ℚ(t) polynomials.
pub fn parse_poly<F: Field>(pres: &Presentation<F>, s: &str) -> Result<NcPoly<F>> {
    let src = s;
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse(src.into()));
    }
    let bytes = s.as_bytes();
    // A sign starts a term unless it follows an operator or an opening paren.
    let terms = split_top(&s, |i, ch| {
        (ch == '+' || ch == '-') && i > 0 && !matches!(bytes[i - 1], b'*' | b'/' | b'^' | b'(' | b'+' | b'-')
    });
    let mut out = NcPoly::zero();
    for (_, term) in terms {
        let term = term.strip_prefix('+').unwrap_or(&term).to_string();
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, term),
        };
        if body.is_empty() {
            return Err(Error::Parse(src.into()));
        }
        let mut coeff = F::one();
        let mut letters = Vec::new();
        for (_, factor) in split_top(&body, |_, ch| ch == '*') {
            let factor = factor.strip_prefix('*').unwrap_or(&factor);
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) if pres.generator_by_name(b).is_some() => (
                    b,
                    e.parse::<usize>().map_err(|_| Error::Parse(src.into()))?,
                ),
                _ => (factor, 1),
            };
            if let Some(g) = pres.generator_by_name(base) {
                letters.extend(std::iter::repeat_n(g, exp));
            } else {
                let c = F::coerce_scalar(&parse_scalar(factor)?)?;
                coeff = coeff * c;
            }
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(Word::new(letters), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, BigRational, RationalFunction};

    #[test]
    fn algebra_spec_round_trip() {
        for s in ["family=quantum_plane; q=t", "family=weyl; q=2", "family=ore; r=3", "family=down_up; eta=2"] {
            let spec = parse_algebra_spec(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(matches!(
            parse_algebra_spec("family=sl2; q=2"),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn poly_round_trip() {
        let p: Presentation<RationalFunction> =
            Presentation::build(Family::DownUpExtended, Some(RationalFunction::t())).unwrap();
        let x = parse_poly(&p, "u^2*d + (1 + t)*u*w + -2*u + -1").unwrap();
        assert_eq!(x.len(), 4);
        let text = render_poly(&p, &x);
        assert_eq!(parse_poly(&p, &text).unwrap(), x);
        assert_eq!(parse_poly(&p, "d - 1").unwrap(), parse_poly(&p, "-1 + d").unwrap());
    }

    #[test]
    fn rational_rendering() {
        let p: Presentation<BigRational> =
            Presentation::build(Family::QuantizedWeyl, Some(rat(2, 1))).unwrap();
        let x = parse_poly(&p, "1/2*a*b - b + 3").unwrap();
        assert_eq!(render_poly(&p, &x), "1/2*a*b + -b + 3");
        assert_eq!(x.coefficient(&Word::from_indices(&[0, 1])), rat(1, 2));
    }
}
