use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Element of `Z[zeta_p]`, stored in the basis `1, zeta, ..., zeta^(p-2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclo {
    pub p: u32,
    pub coeffs: Vec<i128>,
}

impl Cyclo {
    pub fn zero(p: u32) -> Self {
        Cyclo {
            p,
            coeffs: vec![0; p as usize - 1],
        }
    }

    pub fn constant(p: u32, c: i128) -> Self {
        let mut z = Cyclo::zero(p);
        z.coeffs[0] = c;
        z
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut full = vec![0i128; p as usize];
        full[k.rem_euclid(p as i64) as usize] = 1;
        Cyclo::from_full(p, full)
    }

    // length-p coefficient vector, reduced by 1 + zeta + ... + zeta^(p-1) = 0
    fn from_full(p: u32, mut full: Vec<i128>) -> Self {
        let top = full.pop().expect("p >= 2");
        Cyclo {
            p,
            coeffs: full.into_iter().map(|c| c - top).collect(),
        }
    }

    fn to_full(&self) -> Vec<i128> {
        let mut v = self.coeffs.clone();
        v.push(0);
        v
    }

    /// Complex conjugate: `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let full = self.to_full();
        let mut out = vec![0i128; p];
        for (k, c) in full.into_iter().enumerate() {
            out[(p - k) % p] += c;
        }
        Cyclo::from_full(self.p, out)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Exact division by a rational integer, when every coefficient allows it.
    pub fn div_exact(&self, n: i128) -> Option<Self> {
        if n == 0 || self.coeffs.iter().any(|c| c % n != 0) {
            return None;
        }
        Some(Cyclo {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c / n).collect(),
        })
    }

    pub fn scale(&self, n: i128) -> Self {
        Cyclo {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.p, o.p);
        Cyclo {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(-1)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as usize;
        let mut out = vec![0i128; p];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Cyclo::from_full(self.p, out)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
