//! Representations of `F_p^r ⋊ C_2` (with `C_2` acting by `-1`) and the
//! rank bookkeeping built on them.

mod cyclo;

pub use cyclo::Cyclo;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::curve::WeierstrassModel;
use crate::fields::{self, FieldError, Sign};
use crate::rootnumber::{self, RootNumberError};

/// Largest `p^r` for which [`character_table`] lists classes explicitly.
pub const TABLE_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LarsenError {
    #[error("p = {0} must be an odd prime")]
    InvalidPrime(u128),
    #[error("r must be positive")]
    InvalidExponent,
    #[error("p^r overflows")]
    Overflow,
    #[error("table for order 2*{0} is too large to list")]
    TableTooLarge(u128),
    #[error("operation requires r = 1")]
    RequiresPrimeOrder,
    #[error("{0} is not an irreducible character of this group")]
    UnknownIrrep(String),
    #[error("certificate check failed: {0}")]
    Unverified(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    RootNumber(#[from] RootNumberError),
}

/// The group `F_p^r ⋊ C_2`, of order `2 p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralSpec {
    pub p: u128,
    pub r: u32,
}

impl DihedralSpec {
    pub fn new(p: u128, r: u32) -> Result<Self, LarsenError> {
        if p == 2 || !arith::is_prime(p) {
            return Err(LarsenError::InvalidPrime(p));
        }
        if r == 0 {
            return Err(LarsenError::InvalidExponent);
        }
        let spec = DihedralSpec { p, r };
        spec.p_power().ok_or(LarsenError::Overflow)?;
        Ok(spec)
    }

    fn p_power(&self) -> Option<u128> {
        self.p.checked_pow(self.r).filter(|q| q.checked_mul(2).is_some())
    }

    /// `p^r`.
    pub fn translations(&self) -> u128 {
        self.p_power().expect("checked at construction")
    }

    pub fn order(&self) -> u128 {
        2 * self.translations()
    }

    pub fn class_count(&self) -> u128 {
        (self.translations() + 3) / 2
    }

    pub fn two_dim_count(&self) -> u128 {
        (self.translations() - 1) / 2
    }
}

/// Conjugacy class representative: `(v, 1)` or the class of reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "vector")]
pub enum ClassRep {
    Identity,
    /// `{v, -v}` with `v` normalized so its first nonzero entry is at most `(p-1)/2`.
    Translation(Vec<u128>),
    Reflection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub rep: ClassRep,
    pub size: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum IrrepLabel {
    Trivial,
    Sign,
    /// Complex two-dimensional irrep induced from `v -> zeta^(a.v)`, indexed
    /// by the position of `a` among the normalized nonzero vectors.
    TwoDim(usize),
    /// Sum of the Galois-conjugate two-dimensional irreps of `D_2p`: the
    /// rational irreducible of dimension `p - 1` (only for `r = 1`).
    RationalForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub degree: u32,
    /// Realizable over Q but not absolutely irreducible.
    pub rational_form: bool,
    /// Values on the classes in table order (only for `r = 1`).
    pub values: Option<Vec<Cyclo>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub spec: DihedralSpec,
    pub classes: Vec<ConjugacyClass>,
    /// Absolutely irreducible characters.
    pub irreps: Vec<Irrep>,
    /// `rho_V`, for `r = 1`.
    pub rational_forms: Vec<Irrep>,
}

impl CharacterTable {
    pub fn degree_square_sum(&self) -> u128 {
        self.irreps.iter().map(|i| (i.degree as u128).pow(2)).sum()
    }

    /// `<chi_i, chi_j> |G|` for two rows with values.
    pub fn inner_product_scaled(&self, i: &Irrep, j: &Irrep) -> Option<Cyclo> {
        let (vi, vj) = (i.values.as_ref()?, j.values.as_ref()?);
        let p = self.spec.p as u32;
        Some(
            self.classes
                .iter()
                .zip(vi.iter().zip(vj))
                .fold(Cyclo::zero(p), |acc, (c, (a, b))| {
                    &acc + &(a * &b.conj()).scale(c.size as i128)
                }),
        )
    }

    /// Exact row orthogonality of the absolutely irreducible characters.
    pub fn rows_orthonormal(&self) -> bool {
        let order = self.spec.order() as i128;
        self.irreps.iter().enumerate().all(|(a, x)| {
            self.irreps.iter().enumerate().all(|(b, y)| {
                let expected = if a == b { order } else { 0 };
                self.inner_product_scaled(x, y)
                    .and_then(|s| s.as_integer())
                    .is_some_and(|s| s == expected)
            })
        })
    }
}

fn normalized_vectors(p: u128, r: u32) -> Vec<Vec<u128>> {
    // nonzero vectors whose first nonzero coordinate is in 1..=(p-1)/2
    let total = p.pow(r);
    let half = (p - 1) / 2;
    (1..total)
        .map(|mut n| {
            let mut v = vec![0u128; r as usize];
            for c in v.iter_mut() {
                *c = n % p;
                n /= p;
            }
            v
        })
        .filter(|v| {
            let first = v.iter().copied().find(|&c| c != 0).unwrap_or(0);
            (1..=half).contains(&first)
        })
        .collect()
}

fn dot(a: &[u128], b: &[u128], p: u128) -> i64 {
    (a.iter().zip(b).map(|(x, y)| x * y % p).sum::<u128>() % p) as i64
}

/// Value of an irreducible character on a class, for any `r`.
pub fn character_value(
    spec: &DihedralSpec,
    label: &IrrepLabel,
    class: &ClassRep,
) -> Result<Cyclo, LarsenError> {
    let p = spec.p as u32;
    let q = spec.translations();
    let value = match (label, class) {
        (IrrepLabel::Trivial, _) => Cyclo::constant(p, 1),
        (IrrepLabel::Sign, ClassRep::Reflection) => Cyclo::constant(p, -1),
        (IrrepLabel::Sign, _) => Cyclo::constant(p, 1),
        (IrrepLabel::TwoDim(_) | IrrepLabel::RationalForm, ClassRep::Reflection) => Cyclo::zero(p),
        (IrrepLabel::TwoDim(_), ClassRep::Identity) => Cyclo::constant(p, 2),
        (IrrepLabel::TwoDim(j), ClassRep::Translation(v)) => {
            if q > TABLE_LIMIT {
                return Err(LarsenError::TableTooLarge(q));
            }
            let a = normalized_vectors(spec.p, spec.r)
                .into_iter()
                .nth(*j)
                .ok_or_else(|| LarsenError::UnknownIrrep(format!("{label:?}")))?;
            let k = dot(&a, v, spec.p);
            &Cyclo::zeta_pow(p, k) + &Cyclo::zeta_pow(p, -k)
        }
        (IrrepLabel::RationalForm, _) if spec.r != 1 => {
            return Err(LarsenError::RequiresPrimeOrder)
        }
        (IrrepLabel::RationalForm, ClassRep::Identity) => Cyclo::constant(p, p as i128 - 1),
        (IrrepLabel::RationalForm, ClassRep::Translation(_)) => Cyclo::constant(p, -1),
    };
    Ok(value)
}

/// Classes and irreducibles of `F_p^r ⋊ C_2`. Character values are filled
/// in for `r = 1`; for larger `r` only the inventory is listed.
pub fn character_table(spec: &DihedralSpec) -> Result<CharacterTable, LarsenError> {
    let q = spec.translations();
    if q > TABLE_LIMIT {
        return Err(LarsenError::TableTooLarge(q));
    }
    let mut classes = vec![ConjugacyClass {
        rep: ClassRep::Identity,
        size: 1,
    }];
    let vectors = normalized_vectors(spec.p, spec.r);
    classes.extend(vectors.iter().map(|v| ConjugacyClass {
        rep: ClassRep::Translation(v.clone()),
        size: 2,
    }));
    classes.push(ConjugacyClass {
        rep: ClassRep::Reflection,
        size: q,
    });

    let mut labels = vec![IrrepLabel::Trivial, IrrepLabel::Sign];
    labels.extend((0..vectors.len()).map(IrrepLabel::TwoDim));
    let exact = spec.r == 1;
    let row = |label: &IrrepLabel| -> Result<Option<Vec<Cyclo>>, LarsenError> {
        if !exact {
            return Ok(None);
        }
        classes
            .iter()
            .map(|c| character_value(spec, label, &c.rep))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    };
    let mut irreps = Vec::new();
    for label in labels {
        let degree = if matches!(label, IrrepLabel::TwoDim(_)) { 2 } else { 1 };
        irreps.push(Irrep {
            values: row(&label)?,
            label,
            degree,
            rational_form: false,
        });
    }
    let rational_forms = if exact {
        vec![Irrep {
            values: row(&IrrepLabel::RationalForm)?,
            label: IrrepLabel::RationalForm,
            degree: spec.p as u32 - 1,
            rational_form: true,
        }]
    } else {
        Vec::new()
    };
    Ok(CharacterTable {
        spec: *spec,
        classes,
        irreps,
        rational_forms,
    })
}

/// Fixed-space dimensions of an order-2 element on `1`, `epsilon` and `rho_V`.
pub fn invariant_dims(p: u128) -> Result<(u32, u32, u32), LarsenError> {
    DihedralSpec::new(p, 1)?;
    Ok((1, 0, ((p - 1) / 2) as u32))
}

/// Number of hyperplanes in `F_p^r`.
pub fn hyperplane_count(p: u128, r: u32) -> Result<u128, LarsenError> {
    let q = DihedralSpec::new(p, r)?.translations();
    Ok((q - 1) / (p - 1))
}

/// `(p-1)/2` copies of invariants for each hyperplane: `(p^r - 1)/2`.
pub fn selmer_rank_lower_bound(p: u128, r: u32) -> Result<u128, LarsenError> {
    Ok((p - 1) / 2 * hyperplane_count(p, r)?)
}

/// `max(0, ceil((degree - 2)/2))`.
pub fn analytic_rank_lower_bound(degree: u128) -> u128 {
    if degree <= 2 {
        0
    } else {
        (degree - 1) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subgroup {
    Trivial,
    /// Generated by one reflection.
    Reflection,
    Rotations,
    Whole,
}

/// `<tau, Ind_H^G 1>` for `G = D_2p`, i.e. the dimension of the `H`-fixed space of `tau`.
pub fn artin_multiplicity(
    spec: &DihedralSpec,
    subgroup: Subgroup,
    tau: &IrrepLabel,
) -> Result<u128, LarsenError> {
    if spec.r != 1 {
        return Err(LarsenError::RequiresPrimeOrder);
    }
    let table = character_table(spec)?;
    if let IrrepLabel::TwoDim(j) = tau {
        if *j >= table.irreps.len() - 2 {
            return Err(LarsenError::UnknownIrrep(format!("{tau:?}")));
        }
    }
    let p = spec.p as u32;
    // sum of tau over the elements of H, one class at a time
    let mut total = Cyclo::zero(p);
    let mut order = 0i128;
    for class in &table.classes {
        let count = match (subgroup, &class.rep) {
            (_, ClassRep::Identity) => 1,
            (Subgroup::Rotations | Subgroup::Whole, ClassRep::Translation(_)) => 2,
            (Subgroup::Reflection, ClassRep::Reflection) => 1,
            (Subgroup::Whole, ClassRep::Reflection) => class.size as i128,
            _ => 0,
        };
        if count > 0 {
            total = &total + &character_value(spec, tau, &class.rep)?.scale(count);
            order += count;
        }
    }
    let m = total
        .div_exact(order)
        .and_then(|c| c.as_integer())
        .ok_or_else(|| LarsenError::Unverified("non-integral multiplicity".into()))?;
    Ok(m as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum ParityStep {
    /// `2 (rkL - rkQ) / (p - 1)` is not an integer.
    NotApplicable,
    Consistent {
        /// The congruence forces `rkL != rkQ` (odd `rkM`).
        forces_strict: bool,
        /// `rkL > rkQ` holds for the given ranks.
        strict: bool,
    },
    Inconsistent,
}

/// Tests `rkM + 2 (rkL - rkQ)/(p - 1) ≡ 0 mod 2`.
pub fn parity_step(p: u128, rk_m: u64, rk_l: u64, rk_q: u64) -> Result<ParityStep, LarsenError> {
    DihedralSpec::new(p, 1)?;
    let diff = 2 * (rk_l as i128 - rk_q as i128);
    let pm1 = p as i128 - 1;
    if diff % pm1 != 0 {
        return Ok(ParityStep::NotApplicable);
    }
    let expr = rk_m as i128 + diff / pm1;
    if expr.rem_euclid(2) != 0 {
        return Ok(ParityStep::Inconsistent);
    }
    Ok(ParityStep::Consistent {
        forces_strict: rk_m % 2 == 1,
        strict: rk_l > rk_q,
    })
}

/// Checks `det rho = epsilon` for every two-dimensional irrep, using
/// `det rho(g) = (chi(g)^2 - chi(g^2))/2`.
pub fn det_rho_check(spec: &DihedralSpec) -> Result<bool, LarsenError> {
    if spec.r != 1 {
        return Err(LarsenError::RequiresPrimeOrder);
    }
    let table = character_table(spec)?;
    for irrep in table.irreps.iter().filter(|i| i.degree == 2) {
        for class in &table.classes {
            let chi = character_value(spec, &irrep.label, &class.rep)?;
            let square_rep = match &class.rep {
                ClassRep::Identity | ClassRep::Reflection => ClassRep::Identity,
                ClassRep::Translation(v) => {
                    let w: Vec<u128> = v.iter().map(|c| 2 * c % spec.p).collect();
                    ClassRep::Translation(w)
                }
            };
            let chi_sq = character_value(spec, &irrep.label, &square_rep)?;
            let det = (&(&chi * &chi) - &chi_sq).div_exact(2);
            let eps = character_value(spec, &IrrepLabel::Sign, &class.rep)?;
            if det.as_ref() != Some(&eps) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LarsenCertificate {
    pub curve: WeierstrassModel,
    pub spec: DihedralSpec,
    pub m: i128,
    pub root_number_over_m: i8,
    pub group_order: u128,
    pub class_count: u128,
    pub two_dim_irreps: u128,
    pub invariant_dims: (u32, u32, u32),
    pub hyperplanes: u128,
    /// Degree-`p` subfields up to conjugacy, one per hyperplane.
    pub degree_p_subfields: u128,
    pub selmer_lower: u128,
    /// Analytic bound for a field of degree `2 p^r`.
    pub analytic_lower: u128,
    pub analytic_degree: u128,
    /// Analytic bound for the degree `p^r` field cut out by an order-2 image.
    pub analytic_lower_half: u128,
    pub det_rho: Option<bool>,
}

/// Assembles the imaginary-quadratic root number with the representation
/// counts for `F_p^r ⋊ C_2`.
pub fn larsen_certificate(
    e: &WeierstrassModel,
    p: u128,
    r: u32,
    bound: i128,
) -> Result<LarsenCertificate, LarsenError> {
    let spec = DihedralSpec::new(p, r)?;
    let field = fields::find_split_all_bad(e, Sign::Negative, bound)?;
    let w = rootnumber::root_number_over_quadratic(e, field.m)?.value;
    if w != -1 {
        return Err(LarsenError::Unverified(format!("w(E/Q(sqrt {})) = {w}", field.m)));
    }
    let q = spec.translations();
    let hyperplanes = hyperplane_count(p, r)?;
    let selmer_lower = selmer_rank_lower_bound(p, r)?;
    if selmer_lower != (q - 1) / 2 || spec.two_dim_count() != selmer_lower {
        return Err(LarsenError::Unverified("Selmer bound bookkeeping".into()));
    }
    let invariant = invariant_dims(p)?;
    if invariant.2 as u128 * hyperplanes != selmer_lower {
        return Err(LarsenError::Unverified("invariant dimension count".into()));
    }
    let det_rho = if r == 1 {
        Some(det_rho_check(&spec)?)
    } else {
        None
    };
    Ok(LarsenCertificate {
        curve: *e,
        spec,
        m: field.m,
        root_number_over_m: w,
        group_order: spec.order(),
        class_count: spec.class_count(),
        two_dim_irreps: spec.two_dim_count(),
        invariant_dims: invariant,
        hyperplanes,
        degree_p_subfields: hyperplanes,
        selmer_lower,
        analytic_lower: analytic_rank_lower_bound(spec.order()),
        analytic_degree: spec.order(),
        analytic_lower_half: analytic_rank_lower_bound(q),
        det_rho,
    })
}
