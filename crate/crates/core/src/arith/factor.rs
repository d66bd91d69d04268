use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::ArithError;

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactorization {
    pub sign: i8,
    /// `(prime, exponent)` pairs, primes strictly increasing, exponents positive.
    pub factors: Vec<(u128, u32)>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> i128 {
        let mut acc: i128 = self.sign as i128;
        for &(p, e) in &self.factors {
            acc *= (p as i128).pow(e);
        }
        acc
    }

    pub fn exponent_of(&self, p: u128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

const SMALL_PRIMES: [u128; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        (a % n) * (b % n) % n
    } else {
        let r = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(n);
        r.try_into().expect("residue below modulus")
    }
}

fn pow_mod(mut base: u128, mut exp: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with the first 25 prime bases. Deterministic below 3.3e24
/// (far beyond 64 bits); above that it is a strong probable-prime test.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite odd n.
fn pollard_rho(n: u128) -> u128 {
    let mut c: u128 = 1;
    loop {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

fn factor_magnitude(mut m: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    for p in 2u128..1000 {
        if p * p > m {
            break;
        }
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    split_into(m, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    factors
}

/// Factors a nonzero integer of at most 64-bit magnitude.
pub fn factorize(n: i128) -> Result<PrimeFactorization, ArithError> {
    if n.unsigned_abs() > u64::MAX as u128 {
        return Err(ArithError::TooLarge(n));
    }
    factorize_wide(n)
}

/// Factors any nonzero `i128`, falling back to arbitrary-precision modular
/// arithmetic once the magnitude exceeds 64 bits.
pub fn factorize_wide(n: i128) -> Result<PrimeFactorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    Ok(PrimeFactorization {
        sign: if n < 0 { -1 } else { 1 },
        factors: factor_magnitude(n.unsigned_abs()),
    })
}

/// Distinct primes dividing `n`, ascending.
pub fn prime_divisors(n: i128) -> Result<Vec<u128>, ArithError> {
    Ok(factorize_wide(n)?.primes().collect())
}

pub fn is_squarefree(n: i128) -> bool {
    match factorize_wide(n) {
        Ok(f) => f.factors.iter().all(|&(_, e)| e == 1),
        Err(_) => false,
    }
}

/// Largest `k` with `k * k <= n`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton iteration from a power-of-two overestimate; decreases monotonically.
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if m > 1 {
            out.push((m, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        let one = factorize(1).unwrap();
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());
        let f = factorize(-12).unwrap();
        assert_eq!((f.sign, f.factors.clone()), (-1, vec![(2, 2), (3, 1)]));
        assert_eq!(factorize(66).unwrap().factors, trial_division(66));
        assert_eq!(factorize(0), Err(ArithError::Zero));
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 1..3000u128 {
            assert_eq!(factorize(n as i128).unwrap().factors, trial_division(n), "n={n}");
        }
    }

    #[test]
    fn large_semiprimes() {
        let p: u128 = 4_294_967_291; // largest prime below 2^32
        let q: u128 = 4_294_967_279;
        let f = factorize((p * q) as i128).unwrap();
        assert_eq!(f.factors, vec![(q, 1), (p, 1)]);
        let big = (p * q) as i128 * 1_000_003;
        assert!(matches!(factorize(big), Err(ArithError::TooLarge(_))));
        let w = factorize_wide(big).unwrap();
        assert_eq!(w.value(), big);
        assert_eq!(w.factors.len(), 3);
    }

    #[test]
    fn primality() {
        let primes: Vec<u128> = (0..200).filter(|&n| is_prime(n)).collect();
        let sieve: Vec<u128> = (0..200u128)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, sieve);
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn squares() {
        assert!(is_square(0) && is_square(1) && is_square(1296));
        assert!(!is_square(-4) && !is_square(2) && !is_square(1297));
        assert!(is_squarefree(-30) && !is_squarefree(12));
    }
}
