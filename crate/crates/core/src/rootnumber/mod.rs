//! Local and global root numbers of elliptic curves over Q and over
//! quadratic fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, kronecker, Place, Rational};
use crate::curve::{self, tate, AdditiveKind, CurveError, LocalData, ReductionType, WeierstrassModel};
use crate::fields::{self, FieldError, QuadraticField, Splitting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootNumberError {
    /// Additive reduction at 2 or 3 at a place that does not split.
    #[error("root number at {place} is not supported: {reason}")]
    Unsupported { place: Place, reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl RootNumberError {
    pub fn is_unsupported(&self) -> bool {
        matches!(self, RootNumberError::Unsupported { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Archimedean,
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    AdditiveLargeP,
    /// A rational place splitting in the quadratic field: the two local
    /// factors agree and their product is `+1`.
    SplitPlace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRootNumber {
    pub place: Place,
    pub value: i8,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRootNumber {
    pub value: i8,
    /// The archimedean place followed by the bad primes; every other place is good.
    pub breakdown: Vec<LocalRootNumber>,
}

/// Contribution of all places of `Q(sqrt m)` above one rational place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticLocalTerm {
    pub place: Place,
    pub splitting: Splitting,
    pub value: i8,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticRootNumber {
    pub m: i128,
    pub value: i8,
    pub breakdown: Vec<QuadraticLocalTerm>,
}

fn unsupported(p: u128, reason: &str) -> RootNumberError {
    RootNumberError::Unsupported {
        place: Place::Finite(p),
        reason: reason.to_string(),
    }
}

/// `(-1/p)`, `(-2/p)` or `(-3/p)` according to the semistability defect
/// `e = 12 / gcd(v, 12)` (potentially good, `p >= 5`).
fn potentially_good_sign(e: u32, p: u128) -> i8 {
    let pi = p as i128;
    match e {
        1 => 1,
        2 | 6 => kronecker(-1, pi),
        3 => kronecker(-3, pi),
        4 => kronecker(-2, pi),
        _ => unreachable!("semistability defect {e} at p >= 5"),
    }
}

fn defect(v: u32) -> u32 {
    12 / num_integer::gcd(v, 12)
}

fn additive_large_p(d: &LocalData) -> Result<i8, RootNumberError> {
    if d.prime < 5 {
        return Err(unsupported(d.prime, "additive reduction at 2 or 3"));
    }
    Ok(match d.reduction {
        ReductionType::Additive(AdditiveKind::PotentiallyMultiplicative) => {
            kronecker(-1, d.prime as i128)
        }
        _ => potentially_good_sign(defect(d.minimal_disc_valuation), d.prime),
    })
}

fn local_from_data(d: &LocalData) -> Result<LocalRootNumber, RootNumberError> {
    let place = Place::Finite(d.prime);
    let (value, rule) = match d.reduction {
        ReductionType::Good(_) => (1, Rule::Good),
        ReductionType::MultiplicativeSplit => (-1, Rule::SplitMultiplicative),
        ReductionType::MultiplicativeNonsplit => (1, Rule::NonsplitMultiplicative),
        ReductionType::Additive(_) => (additive_large_p(d)?, Rule::AdditiveLargeP),
    };
    Ok(LocalRootNumber { place, value, rule })
}

/// `w(E/Q_v)`.
pub fn local_root_number(e: &WeierstrassModel, v: Place) -> Result<LocalRootNumber, RootNumberError> {
    match v {
        Place::Infinite => Ok(LocalRootNumber {
            place: v,
            value: -1,
            rule: Rule::Archimedean,
        }),
        Place::Finite(p) => local_from_data(&tate(e, p)?),
    }
}

/// `w(E/Q)` as the product over infinity and the bad primes.
pub fn global_root_number(e: &WeierstrassModel) -> Result<GlobalRootNumber, RootNumberError> {
    let mut breakdown = vec![local_root_number(e, Place::Infinite)?];
    for d in curve::local_data(e)? {
        breakdown.push(local_from_data(&d)?);
    }
    let value = breakdown.iter().map(|l| l.value).product();
    Ok(GlobalRootNumber { value, breakdown })
}

/// Whether a curve with `v_p(j) < 0` is split multiplicative over the
/// completion of `Q(sqrt m)` above `p`: `-c6` must be a square there.
pub fn is_split_mult_over(e: &WeierstrassModel, m: i128, p: u128) -> Result<bool, RootNumberError> {
    Ok(arith::is_square_in_extension(
        Rational::from_integer(-e.c6()),
        m,
        Place::Finite(p),
    )
    .map_err(CurveError::from)?)
}

fn quadratic_term(
    e: &WeierstrassModel,
    m: i128,
    p: u128,
    splitting: Splitting,
) -> Result<(i8, Rule), RootNumberError> {
    let d = tate(e, p)?;
    if splitting == Splitting::Split {
        // w(E/Q_p)^2, computable even where w(E/Q_p) is not
        return Ok((1, Rule::SplitPlace));
    }
    let becomes_multiplicative = match d.reduction {
        ReductionType::Good(_) => return Ok((1, Rule::Good)),
        ReductionType::MultiplicativeSplit | ReductionType::MultiplicativeNonsplit => true,
        ReductionType::Additive(AdditiveKind::PotentiallyMultiplicative)
            if is_split_mult_over(e, m, p)? =>
        {
            // split multiplicative over the completion, whatever p is
            return Ok((-1, Rule::SplitMultiplicative));
        }
        ReductionType::Additive(kind) => {
            if p < 5 {
                return Err(unsupported(p, "additive reduction at 2 or 3 at a non-split place"));
            }
            match (splitting, kind) {
                // unramified: the residue field has p^2 elements and every
                // class in (-1/q), (-2/q), (-3/q) is trivial
                (Splitting::Inert, _) => return Ok((1, Rule::AdditiveLargeP)),
                (_, AdditiveKind::PotentiallyMultiplicative) => true,
                (_, AdditiveKind::PotentiallyGood) => {
                    let e_m = defect(2 * d.minimal_disc_valuation);
                    let rule = if e_m == 1 { Rule::Good } else { Rule::AdditiveLargeP };
                    return Ok((potentially_good_sign(e_m, p), rule));
                }
            }
        }
    };
    debug_assert!(becomes_multiplicative);
    if is_split_mult_over(e, m, p)? {
        Ok((-1, Rule::SplitMultiplicative))
    } else {
        Ok((1, Rule::NonsplitMultiplicative))
    }
}

/// `w(E/M)` for `M = Q(sqrt m)`, place by place.
pub fn root_number_over_quadratic(
    e: &WeierstrassModel,
    m: i128,
) -> Result<QuadraticRootNumber, RootNumberError> {
    let field = QuadraticField::new(m)?;
    let mut breakdown = Vec::new();
    let inf = fields::splitting(field.m, Place::Infinite)?;
    let value_inf = if inf == Splitting::Complex { -1 } else { 1 };
    breakdown.push(QuadraticLocalTerm {
        place: Place::Infinite,
        splitting: inf,
        value: value_inf,
        rule: Rule::Archimedean,
    });
    for p in curve::bad_primes(e)? {
        let splitting = fields::splitting(field.m, Place::Finite(p))?;
        let (value, rule) = quadratic_term(e, field.m, p, splitting)?;
        breakdown.push(QuadraticLocalTerm {
            place: Place::Finite(p),
            splitting,
            value,
            rule,
        });
    }
    let value = breakdown.iter().map(|t| t.value).product();
    Ok(QuadraticRootNumber { m, value, breakdown })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductivityReport {
    pub m: i128,
    pub over_field: i8,
    pub over_q: i8,
    pub twist: i8,
    pub holds: bool,
}

/// Compares `w(E/Q(sqrt m))` with `w(E/Q) w(E_m/Q)`.
pub fn inductivity_check(e: &WeierstrassModel, m: i128) -> Result<InductivityReport, RootNumberError> {
    let over_field = root_number_over_quadratic(e, m)?.value;
    let over_q = global_root_number(e)?.value;
    let twist = global_root_number(&e.quadratic_twist(m)?)?.value;
    Ok(InductivityReport {
        m,
        over_field,
        over_q,
        twist,
        holds: over_field == over_q * twist,
    })
}
