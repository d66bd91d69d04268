//! Weierstrass models over Q: invariants, twists, Tate's algorithm and the
//! 2-division field.

mod model;
pub(crate) mod modp;
mod tate;

use thiserror::Error;

use crate::arith::{self, ArithError, Rational};

pub use model::{GaloisType, Invariants, TwoTorsionModel, WeierstrassModel};
pub use tate::{
    tate, AdditiveKind, GoodKind, Kodaira, LocalData, ReductionType, SUPERSINGULAR_COUNT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular model (discriminant is zero)")]
    Singular,
    #[error("twisting parameter {0} is not a nonzero squarefree integer")]
    NotSquarefree(i128),
    #[error("cannot parse curve `{0}`")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub fn invariants(e: &WeierstrassModel) -> Result<Invariants, CurveError> {
    e.invariants()
}

pub fn quadratic_twist(e: &WeierstrassModel, d: i128) -> Result<WeierstrassModel, CurveError> {
    e.quadratic_twist(d)
}

pub fn reduction_type(e: &WeierstrassModel, p: u128) -> Result<ReductionType, CurveError> {
    Ok(tate(e, p)?.reduction)
}

/// `c_p` together with `|omega/omega°|_p = p^omega_exponent`, where `omega` is
/// the invariant differential of the given model and `omega°` a Néron
/// differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TamagawaTerm {
    pub prime: u128,
    pub tamagawa: u32,
    pub omega_exponent: i32,
}

impl TamagawaTerm {
    /// `|omega/omega°|_p` as an exact rational.
    pub fn omega_ratio(&self) -> Rational {
        let pk = Rational::from_integer(self.prime as i128).pow(self.omega_exponent.abs());
        if self.omega_exponent >= 0 {
            pk
        } else {
            pk.recip()
        }
    }

    /// `C_p = c_p |omega/omega°|_p`.
    pub fn local_factor(&self) -> Rational {
        self.omega_ratio() * Rational::from_integer(self.tamagawa as i128)
    }
}

/// For a model `a_i = u^i a_i'` over a minimal one, `omega = u^{-1} omega°`,
/// so `|omega/omega°|_p = |u|_p^{-1} = p^k` when `u = p^k`.
pub fn tamagawa_term(e: &WeierstrassModel, p: u128) -> Result<TamagawaTerm, CurveError> {
    let d = tate(e, p)?;
    Ok(TamagawaTerm {
        prime: p,
        tamagawa: d.tamagawa,
        omega_exponent: d.neron_exponent() as i32,
    })
}

/// `v_p(j)`, or `None` when `j = 0`.
pub fn j_valuation(e: &WeierstrassModel, p: u128) -> Result<Option<i64>, CurveError> {
    let j = e.j_invariant();
    if *j.numer() == 0 {
        return Ok(None);
    }
    Ok(Some(arith::valuation(j, p)?))
}

/// Primes dividing the discriminant of the model, ascending.
pub fn bad_primes(e: &WeierstrassModel) -> Result<Vec<u128>, CurveError> {
    let disc = e.discriminant();
    if disc == 0 {
        return Err(CurveError::Singular);
    }
    Ok(arith::prime_divisors(disc)?)
}

/// Primes of bad reduction of the curve (ignoring non-minimality), with their
/// local data.
pub fn local_data(e: &WeierstrassModel) -> Result<Vec<LocalData>, CurveError> {
    let mut out = Vec::new();
    for p in bad_primes(e)? {
        let d = tate(e, p)?;
        if !d.reduction.is_good() {
            out.push(d);
        }
    }
    Ok(out)
}

/// The conductor `N = prod p^f_p`.
pub fn conductor(e: &WeierstrassModel) -> Result<u128, CurveError> {
    let mut n: u128 = 1;
    for d in local_data(e)? {
        n = n
            .checked_mul(d.prime.pow(d.conductor_exponent))
            .ok_or(CurveError::Arith(ArithError::Overflow))?;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: [i128; 5]) -> WeierstrassModel {
        WeierstrassModel::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
    }

    #[test]
    fn conductors_of_known_curves() {
        assert_eq!(conductor(&e([0, -1, 1, -10, -20])).unwrap(), 11);
        assert_eq!(conductor(&e([0, 0, 0, -1, 0])).unwrap(), 32);
        assert_eq!(conductor(&e([1, 0, 1, 4, -6])).unwrap(), 14);
        assert_eq!(conductor(&e([0, 0, 0, 0, 1])).unwrap(), 36);
        assert_eq!(conductor(&e([0, 0, 1, -1, 0])).unwrap(), 37);
        // 15a1
        assert_eq!(conductor(&e([1, 1, 1, -10, -10])).unwrap(), 15);
    }

    #[test]
    fn tamagawa_term_scaling() {
        let base = e([0, -1, 1, -10, -20]);
        let t = tamagawa_term(&base, 11).unwrap();
        assert_eq!((t.tamagawa, t.omega_exponent), (5, 0));
        assert_eq!(t.omega_ratio(), Rational::from_integer(1));
        let scaled = base.scale_up(2);
        let t2 = tamagawa_term(&scaled, 2).unwrap();
        assert_eq!(t2.omega_exponent, 1);
        assert_eq!(t2.omega_ratio(), Rational::from_integer(2));
    }

    #[test]
    fn j_valuations() {
        assert_eq!(j_valuation(&e([0, 0, 0, -1, 0]), 2).unwrap(), Some(6));
        assert_eq!(j_valuation(&e([0, 0, 0, 0, 1]), 2).unwrap(), None);
        assert_eq!(j_valuation(&e([0, -1, 1, -10, -20]), 11).unwrap(), Some(-5));
    }

    #[test]
    fn twist_twice_keeps_reduction_types() {
        let c = e([0, -1, 1, -10, -20]);
        let back = c.quadratic_twist(-7).unwrap().quadratic_twist(-7).unwrap();
        assert_eq!(c.j_invariant(), back.j_invariant());
        assert!(c.is_isomorphic(&back));
        for p in [2u128, 3, 5, 7, 11, 13] {
            assert_eq!(reduction_type(&c, p).unwrap(), reduction_type(&back, p).unwrap());
        }
    }
}
