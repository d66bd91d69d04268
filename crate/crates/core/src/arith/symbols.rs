/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: i128, n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)` on its full domain.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut n = n;
    let mut k = 1i8;
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos % 2 == 1 {
        // (a/2): a is odd here
        match a.rem_euclid(8) {
            3 | 5 => k = -k,
            _ => {}
        }
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    k * jacobi(a, n)
}

/// Legendre symbol for an odd prime `p`.
pub fn legendre(a: i128, p: u128) -> i8 {
    kronecker(a, p as i128)
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u128) -> i128 {
    (2..).find(|&u| legendre(u, p) == -1).expect("odd prime has a non-residue")
}
