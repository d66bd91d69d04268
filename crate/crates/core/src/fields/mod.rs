//! Quadratic fields `Q(sqrt m)`: splitting of rational places and searches
//! for fields with prescribed local behaviour.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, kronecker, Place, Rational};
use crate::curve::{self, CurveError, WeierstrassModel};

pub const DEFAULT_BOUND: i128 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a squarefree integer other than 0 and 1")]
    InvalidField(i128),
    #[error("no quadratic field with |m| <= {bound} meets the conditions")]
    Exhausted { bound: i128 },
    #[error("place {place} cannot be chosen: {reason}")]
    InvalidPlace { place: Place, reason: String },
    #[error("invalid condition: {0}")]
    InvalidCondition(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// `Q(sqrt m)` for a squarefree `m` other than 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticField {
    pub m: i128,
}

impl QuadraticField {
    pub fn new(m: i128) -> Result<Self, FieldError> {
        if m == 0 || m == 1 || !arith::is_squarefree(m) {
            return Err(FieldError::InvalidField(m));
        }
        Ok(QuadraticField { m })
    }

    pub fn discriminant(&self) -> i128 {
        if self.m.rem_euclid(4) == 1 {
            self.m
        } else {
            4 * self.m
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.m < 0
    }

    pub fn splitting(&self, v: Place) -> Splitting {
        splitting_unchecked(self.m, v)
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
    RealPair,
    Complex,
}

impl Splitting {
    /// Two places above the rational place.
    pub fn is_split(&self) -> bool {
        matches!(self, Splitting::Split | Splitting::RealPair)
    }
}

fn splitting_unchecked(m: i128, v: Place) -> Splitting {
    match v {
        Place::Infinite => {
            if m < 0 {
                Splitting::Complex
            } else {
                Splitting::RealPair
            }
        }
        Place::Finite(2) => match m.rem_euclid(8) {
            1 => Splitting::Split,
            5 => Splitting::Inert,
            _ => Splitting::Ramified,
        },
        Place::Finite(p) => {
            if m % p as i128 == 0 {
                Splitting::Ramified
            } else if kronecker(m, p as i128) == 1 {
                Splitting::Split
            } else {
                Splitting::Inert
            }
        }
    }
}

/// How the place `v` decomposes in `Q(sqrt m)`.
pub fn splitting(m: i128, v: Place) -> Result<Splitting, FieldError> {
    let field = QuadraticField::new(m)?;
    Ok(field.splitting(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Behavior {
    /// Split at a prime, two real places at infinity.
    Split,
    /// A single place above `p` (inert or ramified).
    Nonsplit,
    Complex,
    /// A single place above `p` over whose completion the curve is split
    /// multiplicative. `witness` is `-c6`, which must become a square there.
    SplitMultiplicativeAbove { witness: i128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalCondition {
    pub place: Place,
    pub behavior: Behavior,
}

impl LocalCondition {
    pub fn new(place: Place, behavior: Behavior) -> Result<Self, FieldError> {
        let ok = match (place, behavior) {
            (Place::Infinite, Behavior::Complex | Behavior::Split) => true,
            (Place::Infinite, _) => false,
            (Place::Finite(_), Behavior::Complex) => false,
            (Place::Finite(_), Behavior::SplitMultiplicativeAbove { witness }) => witness != 0,
            (Place::Finite(p), _) => arith::is_prime(p),
        };
        if !ok {
            return Err(FieldError::InvalidCondition(format!("{behavior:?} at {place}")));
        }
        Ok(LocalCondition { place, behavior })
    }

    pub fn split(place: Place) -> Self {
        LocalCondition {
            place,
            behavior: Behavior::Split,
        }
    }

    pub fn holds(&self, m: i128) -> bool {
        let s = splitting_unchecked(m, self.place);
        match self.behavior {
            Behavior::Split => s.is_split(),
            Behavior::Nonsplit => matches!(s, Splitting::Inert | Splitting::Ramified),
            Behavior::Complex => s == Splitting::Complex,
            Behavior::SplitMultiplicativeAbove { witness } => {
                matches!(s, Splitting::Inert | Splitting::Ramified)
                    && arith::is_square_in_extension(
                        Rational::from_integer(witness),
                        m,
                        self.place,
                    )
                    .unwrap_or(false)
            }
        }
    }
}

/// Squarefree `m` other than 0, 1 with `|m| <= bound`, ordered by `(|m|, m)`.
pub fn candidates(bound: i128) -> impl Iterator<Item = i128> {
    (1..=bound.max(0))
        .flat_map(|k| [-k, k])
        .filter(|&m| m != 1 && arith::is_squarefree(m))
}

/// Every candidate `m` with `|m| <= bound` meeting all conditions, ascending by `|m|`.
pub fn sieve(conditions: &[LocalCondition], bound: i128) -> Vec<i128> {
    candidates(bound)
        .filter(|&m| conditions.iter().all(|c| c.holds(m)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Positive,
}

fn bad_places(e: &WeierstrassModel) -> Result<Vec<Place>, FieldError> {
    Ok(curve::local_data(e)?
        .into_iter()
        .map(|d| Place::Finite(d.prime))
        .collect())
}

/// Least `|m|` of the given sign such that every bad prime of `E` splits.
pub fn find_split_all_bad(
    e: &WeierstrassModel,
    sign: Sign,
    bound: i128,
) -> Result<QuadraticField, FieldError> {
    let mut conditions: Vec<LocalCondition> =
        bad_places(e)?.into_iter().map(LocalCondition::split).collect();
    conditions.push(LocalCondition {
        place: Place::Infinite,
        behavior: match sign {
            Sign::Negative => Behavior::Complex,
            Sign::Positive => Behavior::Split,
        },
    });
    candidates(bound)
        .find(|&m| conditions.iter().all(|c| c.holds(m)))
        .map(|m| QuadraticField { m })
        .ok_or(FieldError::Exhausted { bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedCondition {
    pub condition: LocalCondition,
    pub splitting: Splitting,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakApproxCertificate {
    pub field: QuadraticField,
    pub chosen: Place,
    pub conditions: Vec<CertifiedCondition>,
}

impl WeakApproxCertificate {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.verified)
    }
}

/// A field in which `chosen` has a single place, every other archimedean,
/// bad or 2-adic place splits, and, at a finite `chosen`, the curve becomes
/// split multiplicative. Unramified choices are preferred at a finite place.
pub fn find_weak_approx(
    e: &WeierstrassModel,
    chosen: Place,
    bound: i128,
) -> Result<WeakApproxCertificate, FieldError> {
    let mut others: Vec<Place> = vec![Place::Infinite, Place::Finite(2)];
    others.extend(bad_places(e)?);
    others.sort();
    others.dedup();
    others.retain(|&v| v != chosen);

    let chosen_condition = match chosen {
        Place::Infinite => LocalCondition {
            place: chosen,
            behavior: Behavior::Complex,
        },
        Place::Finite(p) => {
            if !arith::is_prime(p) {
                return Err(FieldError::InvalidPlace {
                    place: chosen,
                    reason: "not a prime".into(),
                });
            }
            match curve::j_valuation(e, p)? {
                Some(v) if v < 0 => {}
                _ => {
                    return Err(FieldError::InvalidPlace {
                        place: chosen,
                        reason: "v_p(j) must be negative".into(),
                    })
                }
            }
            LocalCondition {
                place: chosen,
                behavior: Behavior::SplitMultiplicativeAbove { witness: -e.c6() },
            }
        }
    };
    let mut conditions = vec![chosen_condition];
    conditions.extend(others.into_iter().map(LocalCondition::split));

    let hits = candidates(bound).filter(|&m| conditions.iter().all(|c| c.holds(m)));
    let m = match chosen {
        Place::Infinite => hits.into_iter().next(),
        Place::Finite(_) => {
            let all: Vec<i128> = hits.collect();
            all.iter()
                .copied()
                .find(|&m| splitting_unchecked(m, chosen) == Splitting::Inert)
                .or_else(|| all.first().copied())
        }
    }
    .ok_or(FieldError::Exhausted { bound })?;

    let conditions = conditions
        .into_iter()
        .map(|c| CertifiedCondition {
            condition: c,
            splitting: splitting_unchecked(m, c.place),
            verified: c.holds(m),
        })
        .collect();
    Ok(WeakApproxCertificate {
        field: QuadraticField { m },
        chosen,
        conditions,
    })
}
