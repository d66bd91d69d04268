//! Small polynomial and point-counting helpers over prime fields.

use crate::arith::legendre;

use super::WeierstrassModel;

pub(crate) fn md(x: i128, p: u128) -> u128 {
    x.rem_euclid(p as i128) as u128
}

fn mulm(a: u128, b: u128, p: u128) -> u128 {
    // p < 2^63 at every call site, so the product fits
    a * b % p
}

fn powm(mut b: u128, mut e: u128, p: u128) -> u128 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: i128, p: u128) -> u128 {
    let a = md(a, p);
    assert!(a != 0, "inverse of zero mod {p}");
    powm(a, p - 2, p)
}

/// Whether `a T^2 + b T + c` (with `a` a unit) has a root in `F_p`.
pub(crate) fn quadratic_has_root(a: i128, b: i128, c: i128, p: u128) -> bool {
    if p == 2 {
        return (0..2).any(|t| md(a * t * t + b * t + c, 2) == 0);
    }
    legendre(b * b - 4 * a * c, p) >= 0
}

/// Whether `a T^2 + b T + c` has distinct roots over the algebraic closure of `F_p`.
pub(crate) fn quadratic_separable(a: i128, b: i128, c: i128, p: u128) -> bool {
    md(b * b - 4 * a * c, p) != 0
}

// Polynomials as little-endian coefficient vectors over F_p, trimmed.
type Poly = Vec<u128>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_rem(mut f: Poly, g: &[u128], p: u128) -> Poly {
    let dg = g.len() - 1;
    let lead_inv = powm(g[dg], p - 2, p);
    while f.len() > dg {
        let lf = f.len() - 1;
        let q = mulm(f[lf], lead_inv, p);
        if q != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let idx = lf - dg + i;
                f[idx] = (f[idx] + p - mulm(q, gi, p)) % p;
            }
        }
        f.pop();
        f = trim(f);
    }
    trim(f)
}

fn poly_mulmod(a: &[u128], b: &[u128], m: &[u128], p: u128) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    poly_rem(trim(out), m, p)
}

fn poly_gcd(mut a: Poly, mut b: Poly, p: u128) -> Poly {
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots in `F_p` of the integer polynomial `coeffs`
/// (little-endian), whose leading coefficient must be a unit mod `p`.
pub(crate) fn count_roots(coeffs: &[i128], p: u128) -> usize {
    let f = trim(coeffs.iter().map(|&c| md(c, p)).collect());
    if f.len() <= 1 {
        return 0;
    }
    if p < 64 {
        return (0..p)
            .filter(|&x| {
                let mut acc = 0u128;
                for &c in f.iter().rev() {
                    acc = (acc * x + c) % p;
                }
                acc == 0
            })
            .count();
    }
    // deg gcd(f, x^p - x)
    let mut xp: Poly = vec![1];
    let mut base: Poly = poly_rem(vec![0, 1], &f, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            xp = poly_mulmod(&xp, &base, &f, p);
        }
        base = poly_mulmod(&base, &base, &f, p);
        e >>= 1;
    }
    let mut h = xp;
    h.resize(h.len().max(2), 0);
    h[1] = (h[1] + p - 1) % p;
    let h = trim(h);
    let g = poly_gcd(f, h, p);
    g.len().saturating_sub(1)
}

/// Trace of Frobenius `a_p = p + 1 - #E(F_p)` for a model with good reduction at `p`.
pub(crate) fn trace_of_frobenius(e: &WeierstrassModel, p: u128) -> i128 {
    let affine: u128 = if p == 2 {
        let a = e.coefficients().map(|x| md(x, 2));
        let mut n = 0;
        for x in 0..2u128 {
            for y in 0..2u128 {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        n
    } else {
        let (b2, b4, b6, _) = e.b_invariants();
        let (b2, b4, b6) = (md(b2, p), md(b4, p), md(b6, p));
        (0..p)
            .map(|x| {
                let d = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
                (1 + legendre(d as i128, p) as i128) as u128
            })
            .sum()
    };
    p as i128 + 1 - (affine as i128 + 1)
}
