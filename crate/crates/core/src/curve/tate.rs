use std::fmt;

use serde::{Deserialize, Serialize};

use super::modp::{self, count_roots, inv_mod, md, quadratic_has_root, quadratic_separable};
use super::{CurveError, WeierstrassModel};
use crate::arith::{self, split_power, Rational};

/// Good primes above this bound are not point-counted.
pub const SUPERSINGULAR_COUNT_LIMIT: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoodKind {
    Ordinary,
    Supersingular,
    /// Good prime beyond [`SUPERSINGULAR_COUNT_LIMIT`].
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdditiveKind {
    PotentiallyGood,
    PotentiallyMultiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type", content = "kind")]
pub enum ReductionType {
    Good(GoodKind),
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    Additive(AdditiveKind),
}

impl ReductionType {
    pub fn is_good(&self) -> bool {
        matches!(self, ReductionType::Good(_))
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(
            self,
            ReductionType::MultiplicativeSplit | ReductionType::MultiplicativeNonsplit
        )
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, ReductionType::Additive(_))
    }

    pub fn is_semistable(&self) -> bool {
        !self.is_additive()
    }
}

/// Kodaira-Néron type of the special fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let k = match s.as_str() {
            "I0" => Kodaira::I0,
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "I0*" => Kodaira::I0Star,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            t => {
                let bad = || serde::de::Error::custom(format!("unknown Kodaira symbol `{t}`"));
                let body = t.strip_prefix('I').ok_or_else(bad)?;
                match body.strip_suffix('*') {
                    Some(n) => Kodaira::IStar(n.parse().map_err(|_| bad())?),
                    None => Kodaira::I(body.parse().map_err(|_| bad())?),
                }
            }
        };
        Ok(k)
    }
}

/// Output of Tate's algorithm at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub prime: u128,
    pub reduction: ReductionType,
    pub kodaira: Kodaira,
    pub tamagawa: u32,
    pub conductor_exponent: u32,
    pub minimal_disc_valuation: u32,
    /// `u = p^k` relating the input model to a minimal one (`a_i = u^i a_i'`).
    pub neron_scale: u128,
    /// A model that is minimal at `p` and isomorphic to the input.
    pub minimal_model: WeierstrassModel,
}

impl LocalData {
    /// The `k` in `neron_scale = p^k`.
    pub fn neron_exponent(&self) -> u32 {
        let mut k = 0;
        let mut u = self.neron_scale;
        while u > 1 {
            u /= self.prime;
            k += 1;
        }
        k
    }
}

fn val(n: i128, p: u128) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        split_power(n, p).0
    }
}

fn divides(n: i128, q: i128) -> bool {
    n % q == 0
}

/// Reduction type together with split/nonsplit and ordinary/supersingular.
fn classify_good(model: &WeierstrassModel, p: u128) -> GoodKind {
    if p > SUPERSINGULAR_COUNT_LIMIT {
        return GoodKind::Unclassified;
    }
    let ap = modp::trace_of_frobenius(model, p);
    if ap.rem_euclid(p as i128) == 0 {
        GoodKind::Supersingular
    } else {
        GoodKind::Ordinary
    }
}

/// Split iff `-c6` is a square in `Q_p` (for multiplicative reduction `c6` is
/// a unit times an even power of `p`, and `-c6` matches the tangent slopes at
/// the node).
pub(crate) fn multiplicative_is_split(model: &WeierstrassModel, p: u128) -> bool {
    arith::is_local_square(Rational::from_integer(-model.c6()), arith::Place::Finite(p))
        .expect("c6 is a unit at a multiplicative prime")
}

/// A point of the reduction mod `p` at which both partial derivatives vanish.
fn singular_point(e: &WeierstrassModel, p: u128) -> (i128, i128) {
    let pi = p as i128;
    if p <= 3 {
        for x in 0..pi {
            for y in 0..pi {
                if singular_at(e, x, y, pi) {
                    return (x, y);
                }
            }
        }
        unreachable!("no singular point although p divides the discriminant");
    }
    let (b2, _, _, _) = e.b_invariants();
    let c4 = e.c4();
    let big_x = if divides(c4, pi) {
        0
    } else {
        md(-3 * md(e.c6(), p) as i128 * inv_mod(c4, p) as i128, p) as i128
    };
    // X = 36 x + 3 b2
    let x = md((big_x - 3 * b2) * inv_mod(36, p) as i128, p) as i128;
    let y = md(-(e.a1 * x + e.a3) * inv_mod(2, p) as i128, p) as i128;
    debug_assert!(singular_at(e, x, y, pi));
    (x, y)
}

fn singular_at(e: &WeierstrassModel, x: i128, y: i128, p: i128) -> bool {
    let f = y * y + e.a1 * x * y + e.a3 * y - x * x * x - e.a2 * x * x - e.a4 * x - e.a6;
    let fx = e.a1 * y - 3 * x * x - 2 * e.a2 * x - e.a4;
    let fy = 2 * y + e.a1 * x + e.a3;
    f.rem_euclid(p) == 0 && fx.rem_euclid(p) == 0 && fy.rem_euclid(p) == 0
}

enum CubicShape {
    Distinct,
    Double(i128),
    Triple(i128),
}

// Root structure of T^3 + a T^2 + b T + c over the algebraic closure of F_p.
fn cubic_shape(a: i128, b: i128, c: i128, p: u128) -> CubicShape {
    let disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    if md(disc, p) != 0 {
        return CubicShape::Distinct;
    }
    let pi = p as i128;
    if md(a * a - 3 * b, p) == 0 {
        let root = match p {
            3 => md(-c, 3) as i128,
            _ => md(-a * inv_mod(3, p) as i128, p) as i128,
        };
        CubicShape::Triple(root)
    } else {
        let root = if p == 2 {
            md(b, 2) as i128
        } else {
            let num = md(9 * c - a * b, p) as i128;
            let den = md(2 * (a * a - 3 * b), p) as i128;
            md(num * inv_mod(den, p) as i128, p) as i128
        };
        debug_assert!(
            ((root * root % pi * root) + a * root * root + b * root + c).rem_euclid(pi) == 0
        );
        CubicShape::Double(root)
    }
}

/// Tate's algorithm at the prime `p`.
pub fn tate(e: &WeierstrassModel, p: u128) -> Result<LocalData, CurveError> {
    if !arith::is_prime(p) {
        return Err(CurveError::Arith(arith::ArithError::NotPrime(p)));
    }
    if e.discriminant() == 0 {
        return Err(CurveError::Singular);
    }
    let pi = p as i128;
    let half = if p == 2 { 0 } else { inv_mod(2, p) as i128 };
    let mut c = *e;
    let mut scale: u128 = 1;

    loop {
        let n = val(c.discriminant(), p);
        let finish = |c: WeierstrassModel,
                      reduction: ReductionType,
                      kodaira: Kodaira,
                      tamagawa: u32,
                      conductor_exponent: u32| {
            Ok(LocalData {
                prime: p,
                reduction,
                kodaira,
                tamagawa,
                conductor_exponent,
                minimal_disc_valuation: n,
                neron_scale: scale,
                minimal_model: c,
            })
        };
        let additive = |c: &WeierstrassModel| {
            let j = c.j_invariant();
            if *j.numer() != 0 && val(*j.denom(), p) > 0 {
                ReductionType::Additive(AdditiveKind::PotentiallyMultiplicative)
            } else {
                ReductionType::Additive(AdditiveKind::PotentiallyGood)
            }
        };

        if n == 0 {
            return finish(c, ReductionType::Good(classify_good(&c, p)), Kodaira::I0, 1, 0);
        }
        if !divides(c.c4(), pi) {
            let split = multiplicative_is_split(&c, p);
            let (red, cp) = if split {
                (ReductionType::MultiplicativeSplit, n)
            } else {
                (ReductionType::MultiplicativeNonsplit, if n % 2 == 0 { 2 } else { 1 })
            };
            return finish(c, red, Kodaira::I(n), cp, 1);
        }

        // singular point to the origin: p | a3, a4, a6
        let (r, t) = singular_point(&c, p);
        c = c.translate(r, 0, t);
        debug_assert!(divides(c.a3, pi) && divides(c.a4, pi) && divides(c.a6, pi));
        let (_, _, b6, b8) = c.b_invariants();

        if !divides(c.a6, pi * pi) {
            return finish(c, additive(&c), Kodaira::II, 1, n);
        }
        if !divides(b8, pi.pow(3)) {
            return finish(c, additive(&c), Kodaira::III, 2, n - 1);
        }
        if !divides(b6, pi.pow(3)) {
            let cp = if quadratic_has_root(1, c.a3 / pi, -c.a6 / (pi * pi), p) {
                3
            } else {
                1
            };
            return finish(c, additive(&c), Kodaira::IV, cp, n - 2);
        }

        // now arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if p == 2 {
            (md(c.a2, 2) as i128, 2 * md(c.a6 / 4, 2) as i128)
        } else {
            let half2 = inv_mod(2, p * p) as i128;
            (
                md(-c.a1 * half, p) as i128,
                md(-c.a3 * half2, p * p) as i128,
            )
        };
        c = c.translate(0, s, t);
        debug_assert!(divides(c.a1, pi) && divides(c.a2, pi));
        debug_assert!(divides(c.a3, pi * pi) && divides(c.a4, pi * pi));
        debug_assert!(divides(c.a6, pi.pow(3)));

        let (ca, cb, cc) = (c.a2 / pi, c.a4 / (pi * pi), c.a6 / pi.pow(3));
        match cubic_shape(ca, cb, cc, p) {
            CubicShape::Distinct => {
                let roots = count_roots(&[cc, cb, ca, 1], p) as u32;
                return finish(c, additive(&c), Kodaira::I0Star, 1 + roots, n - 4);
            }
            CubicShape::Double(root) => {
                c = c.translate(pi * root, 0, 0);
                let mut m = 1u32;
                let mut mx = pi * pi;
                let mut my = pi * pi;
                let cp = loop {
                    let xa3 = c.a3 / my;
                    let xa6 = c.a6 / (mx * my);
                    if quadratic_separable(1, xa3, -xa6, p) {
                        break if quadratic_has_root(1, xa3, -xa6, p) { 4 } else { 2 };
                    }
                    let ty = if p == 2 {
                        md(xa6, 2) as i128
                    } else {
                        md(-xa3 * half, p) as i128
                    };
                    c = c.translate(0, 0, my * ty);
                    my *= pi;
                    m += 1;
                    let xa2 = c.a2 / pi;
                    let xa4 = c.a4 / (pi * mx);
                    let xa6 = c.a6 / (mx * my);
                    if quadratic_separable(xa2, xa4, xa6, p) {
                        break if quadratic_has_root(xa2, xa4, xa6, p) { 4 } else { 2 };
                    }
                    let rx = if p == 2 {
                        md(xa6 * inv_mod(xa2, 2) as i128, 2) as i128
                    } else {
                        md(-xa4 * inv_mod(2 * xa2, p) as i128, p) as i128
                    };
                    c = c.translate(mx * rx, 0, 0);
                    mx *= pi;
                    m += 1;
                };
                return finish(c, additive(&c), Kodaira::IStar(m), cp, n - m - 4);
            }
            CubicShape::Triple(root) => {
                c = c.translate(pi * root, 0, 0);
                debug_assert!(divides(c.a2, pi * pi) && divides(c.a4, pi.pow(3)));
                debug_assert!(divides(c.a6, pi.pow(4)));
                let y3 = c.a3 / (pi * pi);
                let y6 = c.a6 / pi.pow(4);
                if quadratic_separable(1, y3, -y6, p) {
                    let cp = if quadratic_has_root(1, y3, -y6, p) { 3 } else { 1 };
                    return finish(c, additive(&c), Kodaira::IVStar, cp, n - 6);
                }
                let ty = if p == 2 {
                    md(y6, 2) as i128
                } else {
                    md(-y3 * half, p) as i128
                };
                c = c.translate(0, 0, pi * pi * ty);
                if !divides(c.a4, pi.pow(4)) {
                    return finish(c, additive(&c), Kodaira::IIIStar, 2, n - 7);
                }
                if !divides(c.a6, pi.pow(6)) {
                    return finish(c, additive(&c), Kodaira::IIStar, 1, n - 8);
                }
                c = c
                    .scale_down(pi)
                    .expect("non-minimal model divides by p^i");
                scale *= p;
            }
        }
    }
}
