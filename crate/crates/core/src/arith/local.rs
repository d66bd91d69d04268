use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{factor, least_nonresidue, legendre, ArithError, Rational};

/// A place of the rationals: a finite prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "PlaceRepr", try_from = "PlaceRepr")]
pub enum Place {
    Infinite,
    Finite(u128),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PlaceRepr {
    Prime(u128),
    Name(String),
}

impl From<Place> for PlaceRepr {
    fn from(v: Place) -> Self {
        match v {
            Place::Infinite => PlaceRepr::Name("inf".into()),
            Place::Finite(p) => PlaceRepr::Prime(p),
        }
    }
}

impl TryFrom<PlaceRepr> for Place {
    type Error = String;
    fn try_from(r: PlaceRepr) -> Result<Self, String> {
        match r {
            PlaceRepr::Prime(p) => Place::prime(p).map_err(|e| e.to_string()),
            PlaceRepr::Name(s) => s.parse(),
        }
    }
}

impl Place {
    /// Finite place at `p`; rejects non-primes.
    pub fn prime(p: u128) -> Result<Self, ArithError> {
        if factor::is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    pub fn prime_value(&self) -> Option<u128> {
        match *self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinite),
            t => {
                let p: u128 = t.parse().map_err(|_| format!("invalid place `{t}`"))?;
                Place::prime(p).map_err(|e| e.to_string())
            }
        }
    }
}

/// Exponent of `p` in a nonzero integer together with the remaining cofactor.
pub fn split_power(n: i128, p: u128) -> (u32, i128) {
    debug_assert!(n != 0 && p >= 2);
    let p = p as i128;
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (e, m)
}

pub fn valuation_int(n: i128, p: u128) -> Result<u32, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    if !factor::is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(split_power(n, p).0)
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: Rational, p: u128) -> Result<i64, ArithError> {
    if *x.numer() == 0 {
        return Err(ArithError::Zero);
    }
    let num = valuation_int(*x.numer(), p)? as i64;
    let den = valuation_int(*x.denom(), p)? as i64;
    Ok(num - den)
}

// n/d and n*d differ by the square d^2.
fn integral_rep(x: Rational) -> Result<i128, ArithError> {
    if *x.numer() == 0 {
        return Err(ArithError::Zero);
    }
    x.numer()
        .checked_mul(*x.denom())
        .ok_or(ArithError::Overflow)
}

/// Element of `Q_v^* / (Q_v^*)^2` stored by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareClass {
    pub place: Place,
    pub representative: i128,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.representative == 1
    }

    /// Product in the square-class group.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        debug_assert_eq!(self.place, other.place);
        square_class_int(self.representative * other.representative, self.place)
            .expect("representatives are nonzero")
    }

    /// All canonical classes at `v`, in canonical enumeration order.
    pub fn all(v: Place) -> Vec<SquareClass> {
        let reps: Vec<i128> = match v {
            Place::Infinite => vec![1, -1],
            Place::Finite(2) => vec![1, -1, 2, -2, 5, -5, 10, -10],
            Place::Finite(p) => {
                let u = least_nonresidue(p);
                vec![1, u, p as i128, u * p as i128]
            }
        };
        reps.into_iter()
            .map(|representative| SquareClass {
                place: v,
                representative,
            })
            .collect()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.representative, self.place)
    }
}

pub(crate) fn square_class_int(n: i128, v: Place) -> Result<SquareClass, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let representative = match v {
        Place::Infinite => n.signum(),
        Place::Finite(2) => {
            let (e, u) = split_power(n, 2);
            let unit = match u.rem_euclid(8) {
                1 => 1,
                3 => -5,
                5 => 5,
                _ => -1,
            };
            if e % 2 == 1 {
                2 * unit
            } else {
                unit
            }
        }
        Place::Finite(p) => {
            let (e, u) = split_power(n, p);
            let unit = if legendre(u, p) == 1 {
                1
            } else {
                least_nonresidue(p)
            };
            if e % 2 == 1 {
                unit * p as i128
            } else {
                unit
            }
        }
    };
    Ok(SquareClass {
        place: v,
        representative,
    })
}

/// Canonical square class of a nonzero rational at `v`.
pub fn square_class(x: Rational, v: Place) -> Result<SquareClass, ArithError> {
    square_class_int(integral_rep(x)?, v)
}

pub fn is_local_square(x: Rational, v: Place) -> Result<bool, ArithError> {
    Ok(square_class(x, v)?.is_trivial())
}

/// Whether `x` becomes a square in `Q_v(sqrt m)`. In any quadratic extension
/// the rational squares are exactly `Q_v^2 ∪ m Q_v^2`; when `m` is already a
/// square the extension is `Q_v` itself.
pub fn is_square_in_extension(x: Rational, m: i128, v: Place) -> Result<bool, ArithError> {
    let cx = square_class(x, v)?;
    let cm = square_class_int(m, v)?;
    Ok(cx.is_trivial() || cx == cm)
}

fn eps2(u: i128) -> u32 {
    // (u - 1)/2 mod 2 for odd u
    (u.rem_euclid(4) == 3) as u32
}

fn omega2(u: i128) -> u32 {
    // (u^2 - 1)/8 mod 2 for odd u
    matches!(u.rem_euclid(8), 3 | 5) as u32
}

pub(crate) fn hilbert_int(a: i128, b: i128, v: Place) -> Result<i8, ArithError> {
    if a == 0 || b == 0 {
        return Err(ArithError::Zero);
    }
    let s = match v {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = split_power(a, 2);
            let (beta, w) = split_power(b, 2);
            let e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_power(a, p);
            let (beta, w) = split_power(b, p);
            let mut s: i8 = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(w, p);
            }
            s
        }
    };
    Ok(s)
}

/// Hilbert symbol `(a, b)_v`: +1 iff `z^2 = a x^2 + b y^2` has a nonzero
/// solution over `Q_v`.
pub fn hilbert(a: Rational, b: Rational, v: Place) -> Result<i8, ArithError> {
    hilbert_int(integral_rep(a)?, integral_rep(b)?, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProduct {
    /// `(place, symbol)` over `{inf} ∪ {p | 2ab}`; every other place gives +1.
    pub entries: Vec<(Place, i8)>,
    pub product: i8,
}

/// Places where `(a, b)_v` can be nontrivial.
pub fn hilbert_support(a: Rational, b: Rational) -> Result<Vec<Place>, ArithError> {
    let a = integral_rep(a)?;
    let b = integral_rep(b)?;
    let mut primes = factor::prime_divisors(a)?;
    primes.extend(factor::prime_divisors(b)?);
    primes.push(2);
    primes.sort_unstable();
    primes.dedup();
    let mut places = vec![Place::Infinite];
    places.extend(primes.into_iter().map(Place::Finite));
    Ok(places)
}

/// Evaluates the Hilbert symbol at every place of the support and checks the
/// product formula. A product of -1 is reported as an error; it can only
/// arise from a defect in the local symbol code.
pub fn hilbert_product(a: Rational, b: Rational) -> Result<HilbertProduct, ArithError> {
    let entries = hilbert_support(a, b)?
        .into_iter()
        .map(|v| hilbert(a, b, v).map(|s| (v, s)))
        .collect::<Result<Vec<_>, _>>()?;
    let product = entries.iter().map(|&(_, s)| s).product();
    if product != 1 {
        return Err(ArithError::ProductFormula {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    Ok(HilbertProduct { entries, product })
}

/// Squarefree kernel of a nonzero integer (sign kept).
pub fn squarefree_part(n: i128) -> Result<i128, ArithError> {
    let f = factor::factorize_wide(n)?;
    Ok(f.factors
        .iter()
        .filter(|&&(_, e)| e.is_odd())
        .fold(f.sign as i128, |acc, &(p, _)| acc * p as i128))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(q(8), 2), Ok(3));
        assert_eq!(valuation(q(1), 7), Ok(0));
        assert_eq!(valuation(Rational::new(9, 20), 5), Ok(-1));
        assert_eq!(valuation(q(0), 5), Err(ArithError::Zero));
        assert_eq!(valuation(q(3), 4), Err(ArithError::NotPrime(4)));
    }

    #[test]
    fn square_class_examples() {
        // 18 = 2 * 3^2 and 2 is the least non-residue mod 3
        assert_eq!(square_class(q(18), Place::Finite(3)).unwrap().representative, 2);
        assert_eq!(square_class(q(-4), Place::Infinite).unwrap().representative, -1);
        assert_eq!(square_class(q(49), Place::Finite(7)).unwrap().representative, 1);
        assert_eq!(square_class(q(3), Place::Finite(2)).unwrap().representative, -5);
        assert_eq!(square_class(q(-24), Place::Finite(2)).unwrap().representative, 10);
        assert_eq!(square_class(Rational::new(1, 2), Place::Finite(2)).unwrap().representative, 2);
        assert!(square_class(q(0), Place::Infinite).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert(q(-1), q(-1), Place::Infinite), Ok(-1));
        for v in [Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(7)] {
            assert_eq!(hilbert(q(1), q(-35), v), Ok(1));
        }
        assert_eq!(hilbert(q(2), q(7), Place::Finite(7)), Ok(1));
        assert_eq!(hilbert(q(-1), q(-1), Place::Finite(2)), Ok(-1));
        assert_eq!(hilbert(q(3), q(0), Place::Finite(2)), Err(ArithError::Zero));
    }

    #[test]
    fn product_examples() {
        let hp = hilbert_product(q(-1), q(-1)).unwrap();
        assert_eq!(hp.entries, vec![(Place::Infinite, -1), (Place::Finite(2), -1)]);
        assert!(hilbert_product(q(1), q(5)).unwrap().entries.iter().all(|&(_, s)| s == 1));
        let hp = hilbert_product(q(3), q(5)).unwrap();
        assert_eq!(hp.product, 1);
        assert_eq!(hp.entries.len(), 4);
    }

    #[test]
    fn extension_squares() {
        // 3 is a non-residue mod 5 but becomes a square in the unramified extension
        assert!(!is_local_square(q(3), Place::Finite(5)).unwrap());
        assert!(is_square_in_extension(q(3), 2, Place::Finite(5)).unwrap());
        assert!(!is_square_in_extension(q(3), 5, Place::Finite(5)).unwrap());
        assert!(is_square_in_extension(q(-1), -1, Place::Infinite).unwrap());
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>(), Ok(Place::Infinite));
        assert_eq!("11".parse::<Place>(), Ok(Place::Finite(11)));
        assert!("12".parse::<Place>().is_err());
        assert!(Place::Infinite < Place::Finite(2));
    }
}
