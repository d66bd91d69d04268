use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::arith::{self, Rational};

/// Integral Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub a1: i128,
    pub a2: i128,
    pub a3: i128,
    pub a4: i128,
    pub a6: i128,
}

/// Standard quantities attached to a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub b2: i128,
    pub b4: i128,
    pub b6: i128,
    pub b8: i128,
    pub c4: i128,
    pub c6: i128,
    pub disc: i128,
    pub j: Rational,
}

impl WeierstrassModel {
    pub fn new(a1: i128, a2: i128, a3: i128, a4: i128, a6: i128) -> Result<Self, CurveError> {
        let e = WeierstrassModel::new_unchecked([a1, a2, a3, a4, a6]);
        if e.discriminant() == 0 {
            return Err(CurveError::Singular);
        }
        Ok(e)
    }

    pub(crate) fn new_unchecked(a: [i128; 5]) -> Self {
        WeierstrassModel {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
        }
    }

    /// Clears denominators of a rational model by the scaling `a_i -> u^i a_i`
    /// with the least positive integer `u` that makes every coefficient integral.
    pub fn from_rational(a: [Rational; 5]) -> Result<Self, CurveError> {
        let weights = [1u32, 2, 3, 4, 6];
        let mut u: i128 = 1;
        let mut dens: Vec<u128> = Vec::new();
        for x in &a {
            dens.extend(arith::prime_divisors(*x.denom()).map_err(CurveError::Arith)?);
        }
        dens.sort_unstable();
        dens.dedup();
        for p in dens {
            let mut need = 0u32;
            for (x, &w) in a.iter().zip(&weights) {
                let v = arith::valuation_int(*x.denom(), p).map_err(CurveError::Arith)?;
                need = need.max(v.div_ceil(w));
            }
            u *= (p as i128).pow(need);
        }
        let mut out = [0i128; 5];
        for (i, (x, &w)) in a.iter().zip(&weights).enumerate() {
            let y = *x * Rational::from_integer(u.pow(w));
            debug_assert!(y.is_integer());
            out[i] = y.to_integer();
        }
        WeierstrassModel::new(out[0], out[1], out[2], out[3], out[4])
    }

    pub fn coefficients(&self) -> [i128; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn b_invariants(&self) -> (i128, i128, i128, i128) {
        let WeierstrassModel { a1, a2, a3, a4, a6 } = *self;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn c4(&self) -> i128 {
        let (b2, b4, _, _) = self.b_invariants();
        b2 * b2 - 24 * b4
    }

    pub fn c6(&self) -> i128 {
        let (b2, b4, b6, _) = self.b_invariants();
        -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    }

    pub fn discriminant(&self) -> i128 {
        let (b2, b4, b6, b8) = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    /// `j = c4^3 / disc`.
    pub fn j_invariant(&self) -> Rational {
        let c4 = BigInt::from(self.c4());
        let disc = BigInt::from(self.discriminant());
        let num = &c4 * &c4 * &c4;
        let g = num_integer::Integer::gcd(&num, &disc);
        let (mut n, mut d) = (num / &g, disc / g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Rational::new_raw(
            n.try_into().expect("j numerator fits in i128"),
            d.try_into().expect("j denominator fits in i128"),
        )
    }

    pub fn invariants(&self) -> Result<Invariants, CurveError> {
        let disc = self.discriminant();
        if disc == 0 {
            return Err(CurveError::Singular);
        }
        let (b2, b4, b6, b8) = self.b_invariants();
        Ok(Invariants {
            b2,
            b4,
            b6,
            b8,
            c4: self.c4(),
            c6: self.c6(),
            disc,
            j: self.j_invariant(),
        })
    }

    /// Model obtained by the substitution `x = x' + r`, `y = y' + s x' + t`.
    pub fn translate(&self, r: i128, s: i128, t: i128) -> Self {
        let WeierstrassModel { a1, a2, a3, a4, a6 } = *self;
        WeierstrassModel {
            a1: a1 + 2 * s,
            a2: a2 - s * a1 + 3 * r - s * s,
            a3: a3 + r * a1 + 2 * t,
            a4: a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6: a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
        }
    }

    /// `a_i -> u^i a_i`; the model reached by `x = x'/u^2`, `y = y'/u^3`.
    pub fn scale_up(&self, u: i128) -> Self {
        WeierstrassModel {
            a1: self.a1 * u,
            a2: self.a2 * u.pow(2),
            a3: self.a3 * u.pow(3),
            a4: self.a4 * u.pow(4),
            a6: self.a6 * u.pow(6),
        }
    }

    /// `a_i -> a_i / u^i`, when every division is exact.
    pub fn scale_down(&self, u: i128) -> Option<Self> {
        let pows = [u, u.pow(2), u.pow(3), u.pow(4), u.pow(6)];
        let a = self.coefficients();
        if a.iter().zip(&pows).any(|(x, q)| x % q != 0) {
            return None;
        }
        let mut out = [0; 5];
        for i in 0..5 {
            out[i] = a[i] / pows[i];
        }
        Some(WeierstrassModel::new_unchecked(out))
    }

    /// Quadratic twist by a squarefree `d`. Models with `a1 = a3 = 0` twist
    /// directly to `[0, d a2, 0, d^2 a4, d^3 a6]`; otherwise the twist is taken
    /// on the completed-square model `[0, d b2, 0, 8 d^2 b4, 16 d^3 b6]`,
    /// which carries an extra factor `2^4` in `c4` and `2^6` in `c6`.
    pub fn quadratic_twist(&self, d: i128) -> Result<Self, CurveError> {
        if d == 0 || !arith::is_squarefree(d) {
            return Err(CurveError::NotSquarefree(d));
        }
        let coeffs = if self.a1 == 0 && self.a3 == 0 {
            [0, d * self.a2, 0, d * d * self.a4, d * d * d * self.a6]
        } else {
            let (b2, b4, b6, _) = self.b_invariants();
            [0, d * b2, 0, 8 * d * d * b4, 16 * d * d * d * b6]
        };
        Ok(WeierstrassModel::new_unchecked(coeffs))
    }

    /// Whether the models have the same `c4`, `c6` up to a rational scaling
    /// `(c4, c6) -> (u^4 c4, u^6 c6)`, i.e. are isomorphic over Q.
    pub fn is_isomorphic(&self, other: &WeierstrassModel) -> bool {
        let (c4, c6) = (self.c4(), self.c6());
        let (d4, d6) = (other.c4(), other.c6());
        if c4 == 0 || d4 == 0 || c6 == 0 || d6 == 0 {
            // j = 1728 or 0: compare the surviving invariant up to u^4 or u^6
            if (c4 == 0) != (d4 == 0) || (c6 == 0) != (d6 == 0) {
                return false;
            }
            if c4 == 0 {
                return ratio_is_power(d6, c6, 6);
            }
            return ratio_is_power(d4, c4, 4);
        }
        // u^2 = (d6 c4) / (c6 d4); then check both invariants
        let num = BigInt::from(d6) * BigInt::from(c4);
        let den = BigInt::from(c6) * BigInt::from(d4);
        let u2 = num_rational::BigRational::new(num, den);
        let c4b = num_rational::BigRational::from_integer(BigInt::from(c4));
        let d4b = num_rational::BigRational::from_integer(BigInt::from(d4));
        let c6b = num_rational::BigRational::from_integer(BigInt::from(c6));
        let d6b = num_rational::BigRational::from_integer(BigInt::from(d6));
        if !u2.is_positive() || &c4b * &u2 * &u2 != d4b || c6b * &u2 * &u2 * &u2 != d6b {
            return false;
        }
        big_is_square(u2.numer()) && big_is_square(u2.denom())
    }

    /// The rational 2-torsion form `y^2 = x^3 + a x^2 + b x`, if a rational
    /// 2-torsion point exists.
    pub fn two_torsion_model(&self) -> Option<TwoTorsionModel> {
        let (c2, c1, c0) = self.two_division_cubic();
        let r = *monic_cubic_integer_roots(c2, c1, c0).first()?;
        // translate the root to the origin: x^3 + a x^2 + b x
        let a = 3 * r + c2;
        let b = 3 * r * r + 2 * c2 * r + c1;
        Some(TwoTorsionModel::new_unchecked(a, b).minimized())
    }

    /// Monic cubic whose roots are the x-coordinates of the 2-torsion points:
    /// of the model itself when `a1 = a3 = 0`, otherwise of the isomorphic
    /// model `Y^2 = X^3 + b2 X^2 + 8 b4 X + 16 b6` (with `X = 4x`).
    fn two_division_cubic(&self) -> (i128, i128, i128) {
        if self.a1 == 0 && self.a3 == 0 {
            (self.a2, self.a4, self.a6)
        } else {
            let (b2, b4, b6, _) = self.b_invariants();
            (b2, 8 * b4, 16 * b6)
        }
    }

    /// Galois group of the 2-division field over Q.
    pub fn two_division_galois_type(&self) -> GaloisType {
        let (c2, c1, c0) = self.two_division_cubic();
        match monic_cubic_integer_roots(c2, c1, c0).len() {
            3 => GaloisType::Trivial,
            1 => GaloisType::C2,
            _ if arith::is_square(self.discriminant()) => GaloisType::C3,
            _ => GaloisType::S3,
        }
    }
}

fn big_is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

// whether big/small = w^k for a rational w
fn ratio_is_power(big: i128, small: i128, k: u32) -> bool {
    let q = num_rational::BigRational::new(BigInt::from(big), BigInt::from(small));
    let root = |n: &BigInt| -> bool {
        if n.is_negative() && k % 2 == 0 {
            return false;
        }
        let r = n.abs().nth_root(k);
        r.pow(k) == n.abs()
    };
    root(q.numer()) && root(q.denom())
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaloisType {
    Trivial,
    C2,
    C3,
    S3,
}

/// Model `y^2 = x^3 + a x^2 + b x` with the rational 2-torsion point `(0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoTorsionModel {
    pub a: i128,
    pub b: i128,
}

impl TwoTorsionModel {
    pub fn new(a: i128, b: i128) -> Result<Self, CurveError> {
        if b == 0 || a * a - 4 * b == 0 {
            return Err(CurveError::Singular);
        }
        Ok(TwoTorsionModel { a, b })
    }

    pub(crate) fn new_unchecked(a: i128, b: i128) -> Self {
        TwoTorsionModel { a, b }
    }

    pub fn to_weierstrass(&self) -> WeierstrassModel {
        WeierstrassModel::new_unchecked([0, self.a, 0, self.b, 0])
    }

    /// `a^2 - 4b`, the `b`-coefficient of the isogenous curve.
    pub fn isogenous_b(&self) -> i128 {
        self.a * self.a - 4 * self.b
    }

    /// Divides out every `u` with `u^2 | a` and `u^4 | b`.
    pub fn minimized(&self) -> Self {
        let mut t = *self;
        let g = num_integer::Integer::gcd(&t.a, &t.b);
        let g = if g == 0 { t.b.abs() } else { g };
        let primes = arith::prime_divisors(g).unwrap_or_default();
        for p in primes {
            let p = p as i128;
            while t.a % (p * p) == 0 && t.b % p.pow(4) == 0 {
                t.a /= p * p;
                t.b /= p.pow(4);
            }
        }
        t
    }

    /// Other rational roots of `x^2 + a x + b`, i.e. the remaining rational
    /// 2-torsion x-coordinates.
    pub fn other_torsion_roots(&self) -> Vec<i128> {
        let d = self.isogenous_b();
        if !arith::is_square(d) {
            return Vec::new();
        }
        let s = arith::isqrt(d as u128) as i128;
        // roots (-a ± s)/2 are integers since a^2 - 4b = s^2 forces a ≡ s mod 2
        let mut v = vec![(-self.a - s) / 2, (-self.a + s) / 2];
        v.sort_by_key(|r| (r.abs(), *r));
        v.dedup();
        v
    }

    /// The model re-centred at the 2-torsion point with x-coordinate `r`.
    pub fn recentre(&self, r: i128) -> TwoTorsionModel {
        TwoTorsionModel::new_unchecked(3 * r + self.a, 3 * r * r + 2 * self.a * r + self.b)
    }
}

impl fmt::Display for TwoTorsionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tt:{},{}", self.a, self.b)
    }
}

fn eval_cubic(c2: i128, c1: i128, c0: i128, x: i128) -> BigInt {
    let x = BigInt::from(x);
    ((&x + c2) * &x + c1) * &x + c0
}

/// Distinct integer roots of `x^3 + c2 x^2 + c1 x + c0`, ordered by `(|r|, r)`.
pub(crate) fn monic_cubic_integer_roots(c2: i128, c1: i128, c0: i128) -> Vec<i128> {
    let mut candidates: Vec<i128> = Vec::new();
    if c0 == 0 {
        candidates.push(0);
        // remaining roots solve x^2 + c2 x + c1
        let disc = c2 * c2 - 4 * c1;
        if arith::is_square(disc) {
            let s = arith::isqrt(disc as u128) as i128;
            for r in [(-c2 - s), (-c2 + s)] {
                if r % 2 == 0 {
                    candidates.push(r / 2);
                }
            }
        }
    } else {
        let f = arith::factorize_wide(c0).expect("nonzero");
        let mut divisors: Vec<i128> = vec![1];
        for &(p, e) in &f.factors {
            let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
            for &d in &divisors {
                let mut q = d;
                next.push(q);
                for _ in 0..e {
                    q *= p as i128;
                    next.push(q);
                }
            }
            divisors = next;
        }
        for d in divisors {
            candidates.push(d);
            candidates.push(-d);
        }
    }
    let mut roots: Vec<i128> = candidates
        .into_iter()
        .filter(|&r| eval_cubic(c2, c1, c0, r).is_zero())
        .collect();
    roots.sort_by_key(|r| (r.abs(), *r));
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: [i128; 5]) -> WeierstrassModel {
        WeierstrassModel::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
    }

    // Direct evaluation of the discriminant as 16 * disc of the cubic for a1 = a3 = 0.
    fn short_disc(a2: i128, a4: i128, a6: i128) -> i128 {
        let (b, c, d) = (a2, a4, a6);
        16 * (b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d)
    }

    #[test]
    fn invariants_examples() {
        let inv = e([0, 0, 0, -1, 0]).invariants().unwrap();
        assert_eq!(inv.disc, 64);
        assert_eq!(inv.j, Rational::from_integer(1728));
        assert_eq!(inv.disc, short_disc(0, -1, 0));
        let e11 = e([0, -1, 1, 0, 0]);
        assert_eq!(e11.discriminant(), -11);
        let inv = e([0, -1, 1, -10, -20]).invariants().unwrap();
        assert_eq!(inv.disc, -161051); // -11^5
        assert_eq!(1728 * inv.disc, inv.c4.pow(3) - inv.c6.pow(2));
        assert!(WeierstrassModel::new(0, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn scaling_multiplies_disc_by_u12() {
        let base = e([1, -1, 1, -10, -20]);
        let big = base.scale_up(2);
        assert_eq!(big.discriminant(), base.discriminant() * 4096);
        assert_eq!(big.scale_down(2), Some(base));
        assert_eq!(base.scale_down(2), None);
    }

    #[test]
    fn translation_preserves_invariants() {
        let base = e([1, -1, 1, -10, -20]);
        let moved = base.translate(3, -2, 5);
        assert_eq!(moved.c4(), base.c4());
        assert_eq!(moved.c6(), base.c6());
        assert_eq!(moved.discriminant(), base.discriminant());
    }

    #[test]
    fn twists() {
        let base = e([0, 1, 0, -3, 5]);
        assert_eq!(base.quadratic_twist(1).unwrap(), base);
        let t = base.quadratic_twist(-7).unwrap();
        assert_eq!(t.c4(), 49 * base.c4());
        assert_eq!(t.c6(), -343 * base.c6());
        assert_eq!(t.j_invariant(), base.j_invariant());
        let cm = e([0, 0, 0, -1, 0]).quadratic_twist(-1).unwrap();
        assert_eq!(cm.j_invariant(), Rational::from_integer(1728));
        let odd = e([1, -1, 1, -10, -20]);
        let tt = odd.quadratic_twist(5).unwrap().quadratic_twist(5).unwrap();
        assert!(tt.is_isomorphic(&odd));
        assert!(!odd.quadratic_twist(5).unwrap().is_isomorphic(&odd));
        assert!(base.quadratic_twist(12).is_err());
    }

    #[test]
    fn rational_models_are_cleared() {
        let half = Rational::new(1, 2);
        let m = WeierstrassModel::from_rational([
            Rational::from_integer(0),
            half,
            Rational::from_integer(0),
            Rational::from_integer(1),
            Rational::new(1, 4),
        ])
        .unwrap();
        // u = 2 suffices: a2 = 2, a4 = 16, a6 = 16
        assert_eq!(m.coefficients(), [0, 2, 0, 16, 16]);
    }

    #[test]
    fn two_torsion_forms() {
        assert_eq!(
            e([0, 0, 0, -1, 0]).two_torsion_model(),
            Some(TwoTorsionModel { a: 0, b: -1 })
        );
        assert_eq!(
            e([0, 0, 0, -4, 0]).two_torsion_model(),
            Some(TwoTorsionModel { a: 0, b: -4 })
        );
        assert_eq!(e([0, -1, 1, -10, -20]).two_torsion_model(), None);
        // y^2 + xy = x^3 - x has (0,0) as 2-torsion; result must be isomorphic
        let c = e([1, 0, 0, -1, 0]);
        let tt = c.two_torsion_model().unwrap();
        assert!(tt.to_weierstrass().is_isomorphic(&c));
    }

    #[test]
    fn galois_types() {
        assert_eq!(e([0, 0, 0, -1, 0]).two_division_galois_type(), GaloisType::Trivial);
        assert_eq!(e([0, 0, 0, 1, 0]).two_division_galois_type(), GaloisType::C2);
        assert_eq!(e([0, -1, 1, -10, -20]).two_division_galois_type(), GaloisType::S3);
        // x^3 - 3x - 1 has square discriminant 81
        let c3 = e([0, 0, 0, -3, -1]);
        assert!(arith::is_square(c3.discriminant()));
        assert_eq!(c3.two_division_galois_type(), GaloisType::C3);
    }

    #[test]
    fn cubic_roots() {
        assert_eq!(monic_cubic_integer_roots(0, -1, 0), vec![0, -1, 1]);
        assert_eq!(monic_cubic_integer_roots(0, 0, -8), vec![2]);
        assert!(monic_cubic_integer_roots(0, -3, -1).is_empty());
    }
}
