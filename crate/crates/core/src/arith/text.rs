use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ArithError, RationalFunction, Scalar, UniPoly};

fn parse_err(s: &str) -> ArithError {
    ArithError::Parse(s.to_string())
}

/// Parses `p`, `-p`, or `p/q` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| parse_err(s))?;
    let d: BigInt = d.parse().map_err(|_| parse_err(s))?;
    if d.is_zero() {
        return Err(ArithError::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

/// Parses a polynomial in `t`: signed terms `c`, `c*t`, `t^k`, `c*t^k`.
pub(crate) fn parse_unipoly(s: &str) -> Result<UniPoly, ArithError> {
    let src = s;
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err(src));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (i, ch) in s.chars().enumerate() {
        let prev = if i > 0 { s.as_bytes()[i - 1] as char } else { ' ' };
        // A sign starts a new term unless it follows '^' (exponent) or '/'.
        if (ch == '+' || ch == '-') && prev != '^' && prev != '/' {
            if !cur.is_empty() {
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if i > 0 && (prev == '+' || prev == '-') {
                negative ^= ch == '-';
            } else if i > 0 {
                return Err(parse_err(src));
            } else {
                negative = ch == '-';
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(parse_err(src));
    }
    terms.push((negative, cur));

    let mut out = UniPoly::zero();
    for (neg, term) in terms {
        let (coeff, power) = match term.find('t') {
            None => (parse_rational(&term)?, 0usize),
            Some(pos) => {
                let coeff_part = term[..pos].trim_end_matches('*');
                let coeff = if coeff_part.is_empty() {
                    BigRational::from_integer(1.into())
                } else {
                    if !term[..pos].ends_with('*') {
                        return Err(parse_err(src));
                    }
                    parse_rational(coeff_part)?
                };
                let rest = &term[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(src))?
                };
                (coeff, power)
            }
        };
        let coeff = if neg { -coeff } else { coeff };
        out = &out + &UniPoly::monomial(coeff, power);
    }
    Ok(out)
}

fn strip_parens(s: &str) -> Option<&str> {
    let s = s.trim();
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    // Reject "(a)/(b)" being read as a single parenthesised group.
    let mut depth = 0i32;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(inner)
}

/// Splits `(a)/(b)` at its top-level slash.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Parses the rendering grammar of [`Scalar`]: integers, `p/q`, `(poly)/(poly)`,
/// and bare polynomials in `t` (read as rational functions).
pub fn parse_scalar(s: &str) -> Result<Scalar, ArithError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(parse_err(s));
    }
    if trimmed.contains('(') {
        let (n, d) = match split_fraction(trimmed) {
            Some((n, d)) => (n, Some(d)),
            None => (trimmed, None),
        };
        let n = strip_parens(n).unwrap_or(n);
        let numer = parse_unipoly(n)?;
        let denom = match d {
            Some(d) => parse_unipoly(strip_parens(d).unwrap_or(d))?,
            None => UniPoly::one(),
        };
        return RationalFunction::new(numer, denom).map(Scalar::RatFun);
    }
    if trimmed.contains('t') {
        return Ok(Scalar::RatFun(RationalFunction::from_poly(parse_unipoly(trimmed)?)));
    }
    parse_rational(trimmed).map(Scalar::Rat)
}
