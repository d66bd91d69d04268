//! Local data of the rational 2-isogeny `y^2 = x^3 + a x^2 + b x ->
//! y^2 = x^3 - 2a x^2 + (a^2 - 4b) x`: connecting-map images, Cassels
//! terms and their product, and the per-place root-number identity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, Place, SquareClass};
use crate::curve::{CurveError, GoodKind, ReductionType, TwoTorsionModel};
use crate::rootnumber::{self, RootNumberError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    RootNumber(#[from] RootNumberError),
}

impl DescentError {
    pub fn is_unsupported(&self) -> bool {
        matches!(self, DescentError::RootNumber(e) if e.is_unsupported())
    }
}

/// `phi: E -> E'` with `(0,0)` in the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyPair {
    pub source: TwoTorsionModel,
    pub target: TwoTorsionModel,
}

impl IsogenyPair {
    pub fn new(source: TwoTorsionModel) -> Result<Self, DescentError> {
        Ok(IsogenyPair {
            source,
            target: dual_model(&source)?,
        })
    }

    /// Checks that the x-coordinate maps of `phi` and its dual compose to
    /// the x-coordinate of doubling. Both sides are rational functions of
    /// degree at most 4 in x, so agreement at 16 points is an identity.
    pub fn composes_to_doubling(&self) -> bool {
        let (a, b) = (
            BigRational::from_integer(self.source.a.into()),
            BigRational::from_integer(self.source.b.into()),
        );
        let (a2, b2) = (
            BigRational::from_integer(self.target.a.into()),
            BigRational::from_integer(self.target.b.into()),
        );
        (1..=16i64).all(|k| {
            let x = BigRational::new(BigInt::from(k * k - 3), BigInt::from(k));
            if x.is_zero() {
                return true;
            }
            let quad = &x * &x + &a * &x + &b;
            if quad.is_zero() {
                return true;
            }
            // phi: x -> (x^2 + a x + b)/x
            let xp = &quad / &x;
            // dual on y^2 = x^3 + a' x^2 + b' x, then x -> x/4
            let quad2 = &xp * &xp + &a2 * &xp + &b2;
            let back = quad2 / (BigRational::from_integer(4.into()) * &xp);
            let diff = &x * &x - &b;
            let doubled = &diff * &diff / (BigRational::from_integer(4.into()) * &x * &quad);
            back == doubled
        })
    }
}

/// `(a, b) -> (-2a, a^2 - 4b)`.
pub fn dual_model(t: &TwoTorsionModel) -> Result<TwoTorsionModel, DescentError> {
    let a = t.a.checked_mul(-2).ok_or(ArithError::Overflow)?;
    let b = t
        .a
        .checked_mul(t.a)
        .and_then(|aa| t.b.checked_mul(4).and_then(|b4| aa.checked_sub(b4)))
        .ok_or(ArithError::Overflow)?;
    Ok(TwoTorsionModel::new(t.a, t.b).and_then(|_| TwoTorsionModel::new(a, b))?)
}

/// Image of `E'(Q_v)` in `Q_v^* / Q_v^{*2}` under the connecting map of `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaImage {
    pub place: Place,
    pub classes: Vec<SquareClass>,
}

impl DeltaImage {
    pub fn dim(&self) -> u32 {
        self.classes.len().trailing_zeros()
    }

    pub fn contains(&self, representative: i128) -> bool {
        arith::square_class_int(representative, self.place)
            .map(|c| self.classes.contains(&c))
            .unwrap_or(false)
    }

    pub fn is_subgroup(&self) -> bool {
        let set: BTreeSet<_> = self.classes.iter().copied().collect();
        self.classes.len().is_power_of_two()
            && self.classes.iter().any(|c| c.is_trivial())
            && self
                .classes
                .iter()
                .all(|x| self.classes.iter().all(|y| set.contains(&x.mul(y))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTerm {
    pub place: Place,
    pub value: i8,
    pub image_dim: u32,
}

fn big(n: i128) -> BigInt {
    BigInt::from(n)
}

fn big_val(n: &BigInt, p: u32) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut u = n.clone();
    let pb = BigInt::from(p);
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

fn big_is_square_qp(n: &BigInt, p: u32) -> bool {
    let (v, u) = big_val(n, p);
    if v % 2 == 1 {
        return false;
    }
    if p == 2 {
        return u.mod_floor(&BigInt::from(8)) == BigInt::one();
    }
    let r: i128 = u.mod_floor(&BigInt::from(p)).try_into().expect("residue fits");
    arith::legendre(r, p as u128) == 1
}

// Little-endian coefficients of h(y) = g(x0 + p^k y).
fn shift(g: &[BigInt], x0: &BigInt, step: &BigInt) -> Vec<BigInt> {
    // Taylor shift by x0, then scale y -> step * y
    let n = g.len();
    let mut c = g.to_vec();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * x0;
            c[j] += t;
        }
    }
    let mut s = BigInt::one();
    for ci in c.iter_mut() {
        *ci *= &s;
        s *= step;
    }
    c
}

const MAX_DEPTH: u32 = 512;

/// Whether `g` takes a square value (possibly 0) somewhere on `x0 + p^k Z_p`.
fn square_value_on_disc(g: &[BigInt], p: u32, x0: &BigInt, k: u32, depth: u32) -> bool {
    assert!(depth < MAX_DEPTH, "p-adic search did not terminate");
    let step = BigInt::from(p).pow(k);
    let h = shift(g, x0, &step);
    if h[0].is_zero() || big_is_square_qp(&h[0], p) {
        return true;
    }
    let (v0, _) = big_val(&h[0], p);
    if !h[1].is_zero() && v0 > 2 * big_val(&h[1], p).0 {
        // Hensel: a root of h lies in this disc
        return true;
    }
    let gap = h[1..]
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| big_val(c, p).0 as i64 - v0 as i64)
        .min()
        .unwrap_or(i64::MAX);
    let needed = if p == 2 { 3 } else { 1 };
    if gap >= needed {
        // h(y) = h0 (1 + O(p^needed)) never changes square class
        return false;
    }
    (0..p).any(|j| {
        let x1 = x0 + &step * BigInt::from(j);
        square_value_on_disc(g, p, &x1, k + 1, depth + 1)
    })
}

/// Whether `d w^2 = d^2 t^4 - 2ad t^2 z^2 + (a^2 - 4b) z^4` has a solution with
/// `(t, z) != (0, 0)` over `Q_v`.
pub fn torsor_soluble(t: &TwoTorsionModel, d: i128, v: Place) -> Result<bool, DescentError> {
    if d == 0 {
        return Err(ArithError::Zero.into());
    }
    TwoTorsionModel::new(t.a, t.b)?;
    let (a, c) = (t.a, t.isogenous_b());
    match v {
        Place::Infinite => {
            if d > 0 {
                return Ok(true);
            }
            // -F(t, 1) >= 0 somewhere: min over T = t^2 >= 0 of T^2 + 2aT + c
            Ok((a <= 0 && t.b > 0) || (a > 0 && c < 0))
        }
        Place::Finite(p) => {
            let p: u32 = p.try_into().map_err(|_| ArithError::Overflow)?;
            let (d, a, c) = (big(d), big(a), big(c));
            // G(x, 1) = d F(x, 1) and G(1, z) = d F(1, z), both little-endian
            let g1 = vec![
                &d * &c,
                BigInt::zero(),
                -(BigInt::from(2) * &a * &d * &d),
                BigInt::zero(),
                &d * &d * &d,
            ];
            let g2 = vec![
                &d * &d * &d,
                BigInt::zero(),
                -(BigInt::from(2) * &a * &d * &d),
                BigInt::zero(),
                &d * &c,
            ];
            Ok(square_value_on_disc(&g1, p, &BigInt::zero(), 0, 0)
                || square_value_on_disc(&g2, p, &BigInt::zero(), 1, 0))
        }
    }
}

pub fn delta_image(t: &TwoTorsionModel, v: Place) -> Result<DeltaImage, DescentError> {
    if let Place::Finite(p) = v {
        if !arith::is_prime(p) {
            return Err(ArithError::NotPrime(p).into());
        }
    }
    let mut classes = Vec::new();
    for class in SquareClass::all(v) {
        if torsor_soluble(t, class.representative, v)? {
            classes.push(class);
        }
    }
    let image = DeltaImage { place: v, classes };
    debug_assert!(image.is_subgroup(), "{image:?}");
    debug_assert!(image.contains(t.isogenous_b()));
    Ok(image)
}

pub fn sigma(t: &TwoTorsionModel, v: Place) -> Result<SigmaTerm, DescentError> {
    let image = delta_image(t, v)?;
    let image_dim = image.dim();
    Ok(SigmaTerm {
        place: v,
        value: if image_dim % 2 == 1 { 1 } else { -1 },
        image_dim,
    })
}

/// `{inf} ∪ {p | 2b(a^2 - 4b)}`, outside which every Cassels term is `+1`.
pub fn cassels_support(t: &TwoTorsionModel) -> Result<Vec<Place>, DescentError> {
    let mut primes = arith::prime_divisors(t.b)?;
    primes.extend(arith::prime_divisors(t.isogenous_b())?);
    primes.push(2);
    primes.sort_unstable();
    primes.dedup();
    let mut places = vec![Place::Infinite];
    places.extend(primes.into_iter().map(Place::Finite));
    Ok(places)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasselsParity {
    pub model: TwoTorsionModel,
    pub value: i8,
    pub breakdown: Vec<SigmaTerm>,
}

/// `prod_v sigma_v`, the parity of the 2-Selmer rank.
pub fn cassels_parity(t: &TwoTorsionModel) -> Result<CasselsParity, DescentError> {
    let mut breakdown = Vec::new();
    for v in cassels_support(t)? {
        breakdown.push(sigma(t, v)?);
    }
    Ok(CasselsParity {
        model: *t,
        value: breakdown.iter().map(|s| s.value).product(),
        breakdown,
    })
}

/// `(a, -b)_v (-2a, a^2 - 4b)_v`. At `a = 0` the product is continuous in
/// `a` and equals `(-2a^2, -b)_v = (-2, -b)_v`; that value is used.
pub fn isogeny_symbols(t: &TwoTorsionModel, v: Place) -> Result<i8, DescentError> {
    if t.a == 0 {
        return Ok(arith::hilbert_int(-2, -t.b, v)?);
    }
    Ok(arith::hilbert_int(t.a, -t.b, v)? * arith::hilbert_int(-2 * t.a, t.isogenous_b(), v)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIdentity {
    pub place: Place,
    pub root_number: i8,
    pub sigma: i8,
    pub symbols: i8,
    /// `a = 0`, so the symbol product was taken in the limit form.
    pub degenerate: bool,
    pub holds: bool,
}

/// Compares `w(E/Q_v)` with `sigma_v (a, -b)_v (-2a, a^2 - 4b)_v`.
///
/// Places above 2 where the curve is additive or good supersingular are
/// reported as unsupported.
pub fn local_identity(t: &TwoTorsionModel, v: Place) -> Result<LocalIdentity, DescentError> {
    let e = TwoTorsionModel::new(t.a, t.b)?.to_weierstrass();
    let w = rootnumber::local_root_number(&e, v)?;
    if v == Place::Finite(2) {
        let red = crate::curve::reduction_type(&e, 2)?;
        if red == ReductionType::Good(GoodKind::Supersingular) {
            return Err(RootNumberError::Unsupported {
                place: v,
                reason: "good supersingular reduction above 2".into(),
            }
            .into());
        }
    }
    let s = sigma(t, v)?.value;
    let symbols = isogeny_symbols(t, v)?;
    Ok(LocalIdentity {
        place: v,
        root_number: w.value,
        sigma: s,
        symbols,
        degenerate: t.a == 0,
        holds: w.value == s * symbols,
    })
}
