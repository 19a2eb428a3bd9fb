//! Arithmetic in 𝔽_p for p = 2^61 − 1 and reconstruction of rationals and
//! rational functions from residues.

use super::{inv_mod, mul_mod};

pub(crate) const PRIME: u64 = (1 << 61) - 1;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

pub(crate) fn sub(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    mul_mod(a, b, PRIME)
}

pub(crate) fn inv(a: u64) -> u64 {
    inv_mod(a, PRIME)
}

/// `a/b` with `|a|, b ≤ √(p/2)` and `a ≡ b·x`, if one exists.
pub(crate) fn rational_reconstruction(x: u64) -> Option<(i128, i128)> {
    let bound = ((PRIME / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (PRIME as i128, x as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    let (num, den) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
    (gcd(num.abs(), den) == 1).then_some((num, den))
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Polynomials over 𝔽_p, lowest degree first, no trailing zeros.
pub(crate) type ModPoly = Vec<u64>;

fn trim(mut p: ModPoly) -> ModPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_sub(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in out.iter_mut().enumerate() {
        *x = sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(out)
}

fn poly_mul(a: &ModPoly, b: &ModPoly) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(x, y));
        }
    }
    trim(out)
}

fn poly_divrem(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    let lead = inv(*b.last().expect("nonzero divisor"));
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mul(*r.last().expect("nonempty"), lead);
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Rational function `num/den` over 𝔽_p through the samples, with
/// `deg num < k/2` where `k` is the number of samples; `den` is monic.
pub(crate) fn rational_interpolation(samples: &[(u64, u64)]) -> Option<(ModPoly, ModPoly)> {
    // Newton interpolation
    let k = samples.len();
    let mut interp: ModPoly = Vec::new();
    let mut basis: ModPoly = vec![1];
    for &(x, y) in samples {
        let at = eval(&interp, x);
        let b = eval(&basis, x);
        let c = mul(sub(y, at), inv(b));
        interp = trim(poly_add_scaled(&interp, &basis, c));
        basis = poly_mul(&basis, &vec![sub(0, x % PRIME), 1]);
    }
    // extended Euclid on (basis, interp) until deg r < k/2
    let (mut r0, mut r1) = (basis, interp);
    let (mut u0, mut u1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() && 2 * (r1.len() - 1) >= k {
        let (q, r) = poly_divrem(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, u);
    }
    if u1.is_empty() || samples.iter().any(|&(x, _)| eval(&u1, x) == 0) {
        return None;
    }
    let s = inv(*u1.last().expect("nonzero"));
    let scale = |p: &ModPoly| trim(p.iter().map(|&c| mul(c, s)).collect());
    Some((scale(&r1), scale(&u1)))
}

fn poly_add_scaled(a: &ModPoly, b: &ModPoly, c: u64) -> ModPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in out.iter_mut().enumerate() {
        *x = add(a.get(i).copied().unwrap_or(0), mul(c, b.get(i).copied().unwrap_or(0)));
    }
    out
}

fn eval(p: &ModPoly, x: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| add(mul(acc, x % PRIME), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reconstruction_inverts_reduction() {
        let x = mul(PRIME - 7, inv(12));
        assert_eq!(rational_reconstruction(x), Some((-7, 12)));
        assert_eq!(rational_reconstruction(5), Some((5, 1)));
    }

    #[test]
    fn interpolation_recovers_a_fraction() {
        // (t^2 + 3) / (t - 5)
        let f = |t: u64| mul(add(mul(t, t), 3), inv(sub(t, 5)));
        let samples: Vec<(u64, u64)> = (10..18).map(|t| (t, f(t))).collect();
        let (n, d) = rational_interpolation(&samples).unwrap();
        assert_eq!(n, vec![3, 0, 1]);
        assert_eq!(d, vec![PRIME - 5, 1]);
    }
}
