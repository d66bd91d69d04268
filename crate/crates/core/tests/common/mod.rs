//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library except for plain data types, so each oracle is an
//! independent second pipeline.

#![allow(dead_code)]

use std::collections::BTreeSet;

use parity_lab::curve::WeierstrassModel;
use parity_lab::larsen::Cyclo;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn model(a: [i128; 5]) -> WeierstrassModel {
    WeierstrassModel::new(a[0], a[1], a[2], a[3], a[4]).expect("nonsingular corpus model")
}

/// A curve from the standard tables together with its Mordell-Weil rank.
#[derive(Clone, Copy, Debug)]
pub struct CorpusCurve {
    pub label: &'static str,
    pub conductor: u128,
    pub coeffs: [i128; 5],
    pub rank: u32,
}

impl CorpusCurve {
    pub fn model(&self) -> WeierstrassModel {
        model(self.coeffs)
    }
}

const fn c(label: &'static str, conductor: u128, coeffs: [i128; 5], rank: u32) -> CorpusCurve {
    CorpusCurve {
        label,
        conductor,
        coeffs,
        rank,
    }
}

/// Minimal models of small-conductor curves.
pub const CORPUS: &[CorpusCurve] = &[
    c("11a1", 11, [0, -1, 1, -10, -20], 0),
    c("11a3", 11, [0, -1, 1, 0, 0], 0),
    c("14a1", 14, [1, 0, 1, 4, -6], 0),
    c("15a1", 15, [1, 1, 1, -10, -10], 0),
    c("17a1", 17, [1, -1, 1, -1, -14], 0),
    c("19a1", 19, [0, 1, 1, -9, -15], 0),
    c("20a1", 20, [0, 1, 0, 4, 4], 0),
    c("21a1", 21, [1, 0, 0, -4, -1], 0),
    c("24a1", 24, [0, -1, 0, -4, 4], 0),
    c("26a1", 26, [1, 0, 1, -5, -8], 0),
    c("26b1", 26, [1, -1, 1, -3, 3], 0),
    c("27a1", 27, [0, 0, 1, 0, -7], 0),
    c("30a1", 30, [1, 0, 1, 1, 2], 0),
    c("32a1", 32, [0, 0, 0, 4, 0], 0),
    c("36a1", 36, [0, 0, 0, 0, 1], 0),
    c("37a1", 37, [0, 0, 1, -1, 0], 1),
    c("37b1", 37, [0, 1, 1, -23, -50], 0),
    c("43a1", 43, [0, 1, 1, 0, 0], 1),
    c("53a1", 53, [1, -1, 1, 0, 0], 1),
    c("57a1", 57, [0, -1, 1, -2, 2], 1),
    c("58a1", 58, [1, -1, 0, -1, 1], 1),
    c("61a1", 61, [1, 0, 0, -2, 1], 1),
    c("79a1", 79, [1, 1, 1, -2, 0], 1),
    c("83a1", 83, [1, 1, 1, 1, 0], 1),
    c("89a1", 89, [1, 1, 1, -1, 0], 1),
    c("389a1", 389, [0, 1, 1, -2, 0], 2),
    c("5077a1", 5077, [0, 0, 1, -7, 6], 3),
];

pub fn corpus(label: &str) -> CorpusCurve {
    *CORPUS
        .iter()
        .find(|c| c.label == label)
        .unwrap_or_else(|| panic!("no corpus curve {label}"))
}

pub fn md(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

pub fn val(mut n: i128, p: i128) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Primes dividing `n`, by trial division.
pub fn primes_of(n: i128) -> Vec<i128> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn squarefree(n: i128) -> bool {
    n != 0 && primes_of(n).iter().all(|&p| n % (p * p) != 0)
}

/// Whether a unit `u` is a square in `Z_p`, read off `u mod p` (`mod 8` at 2).
fn unit_is_square(u: i128, p: i128) -> bool {
    if p == 2 {
        md(u, 8) == 1
    } else {
        (0..p).any(|x| md(x * x - u, p) == 0)
    }
}

/// Whether the binary form `f` takes a square value (zero included) on
/// `P^1(Q_p)`. `f(x, y, q)` must return the value modulo `q`. Points of
/// `P^1(Z/p^N)` are scanned for growing `N`; a value `p^v u` is decided once
/// `v + e <= N` (`e = 3` at 2, else 1). `None` if `p^N` would pass `cap`.
pub fn p1_takes_square(f: &dyn Fn(i128, i128, i128) -> i128, p: i128, cap: i128) -> Option<bool> {
    let e = if p == 2 { 3 } else { 1 };
    let mut q = p;
    let mut n = 1;
    while q <= cap {
        let mut open = false;
        let points = (0..q)
            .map(|x| (x, 1))
            .chain((0..q).step_by(p as usize).map(|y| (1, y)));
        for (x, y) in points {
            let value = md(f(x, y, q), q);
            if value == 0 {
                open = true;
                continue;
            }
            let v = val(value, p);
            if v + e > n {
                open = true;
                continue;
            }
            if v % 2 == 0 && unit_is_square(value / p.pow(v), p) {
                return Some(true);
            }
        }
        if !open {
            return Some(false);
        }
        q *= p;
        n += 1;
    }
    None
}

/// Hilbert symbol by searching `a x^2 + b y^2` for a square value.
pub fn hilbert_oracle(a: i128, b: i128, p: Option<i128>) -> Option<i8> {
    let Some(p) = p else {
        return Some(if a > 0 || b > 0 { 1 } else { -1 });
    };
    let f = move |x: i128, y: i128, q: i128| md(md(a, q) * x % q * x + md(b, q) * y % q * y, q);
    p1_takes_square(&f, p, 1 << 20).map(|s| if s { 1 } else { -1 })
}

/// Solubility of `d w^2 = d^2 t^4 - 2 a d t^2 z^2 + (a^2 - 4b) z^4` over `Q_p`.
pub fn torsor_oracle(a: i128, b: i128, d: i128, p: Option<i128>) -> Option<bool> {
    let c = a * a - 4 * b;
    let Some(p) = p else {
        if d > 0 {
            return Some(true);
        }
        // d < 0: need T^2 - 2aT/d + c/d^2 <= 0 for some real T = (t/z)^2 >= 0.
        // Put T = j/|d|; the negative interval, when present, is wider than
        // 1/|d| and ends before |a| + 2b + 1, so integer j suffice.
        let reach = a.abs() + 2 * b.max(0) + 1;
        return Some((0..=reach).any(|j| j * j + 2 * a * j + c <= 0));
    };
    let f = move |t: i128, z: i128, q: i128| {
        let (dq, aq, cq) = (md(d, q), md(a, q), md(c, q));
        let t2 = t * t % q;
        let z2 = z * z % q;
        let quartic = (dq * dq % q * t2 % q * t2 - 2 * aq * dq % q * t2 % q * z2 % q
            + cq * z2 % q * z2)
            % q;
        md(dq * md(quartic, q), q)
    };
    p1_takes_square(&f, p, 1 << 21)
}

/// `y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6` modulo `q`.
pub fn weierstrass_value(a: &[i128; 5], x: i128, y: i128, q: i128) -> i128 {
    let [a1, a2, a3, a4, a6] = a.map(|c| md(c, q));
    let (x, y) = (md(x, q), md(y, q));
    let lhs = (y * y + a1 * x % q * y + a3 * y) % q;
    let rhs = ((x * x % q + a2 * x) % q * x + a4 * x + a6) % q;
    md(lhs - rhs, q)
}

fn gradient(a: &[i128; 5], x: i128, y: i128, q: i128) -> (i128, i128) {
    let [a1, a2, a3, a4, _] = a.map(|c| md(c, q));
    let (x, y) = (md(x, q), md(y, q));
    let fx = md(a1 * y - 3 * x % q * x - 2 * a2 * x - a4, q);
    let fy = md(2 * y + a1 * x + a3, q);
    (fx, fy)
}

/// Singular points of the reduction mod `p`, by exhaustion.
pub fn singular_points(a: &[i128; 5], p: i128) -> Vec<(i128, i128)> {
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            if weierstrass_value(a, x, y, p) == 0 && gradient(a, x, y, p) == (0, 0) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Affine points of the reduction mod `p`.
pub fn affine_points(a: &[i128; 5], p: i128) -> i128 {
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            if weierstrass_value(a, x, y, p) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// `p + 1 - #E(F_p)` by point counting.
pub fn trace_of_frobenius(a: &[i128; 5], p: i128) -> i128 {
    p - affine_points(a, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleReduction {
    Good,
    Split,
    Nonsplit,
    Additive,
}

/// Reduction type from the singular point and the roots of the tangent cone
/// `Y^2 + a1 X Y - (3 x0 + a2) X^2` over `F_p`. The model must be minimal at `p`.
pub fn reduction_oracle(a: &[i128; 5], p: i128) -> OracleReduction {
    let sing = singular_points(a, p);
    let Some(&(x0, _)) = sing.first() else {
        return OracleReduction::Good;
    };
    assert_eq!(sing.len(), 1, "a cubic curve has at most one singular point");
    let c = 3 * x0 + a[1];
    let roots = (0..p).filter(|t| md(t * t + a[0] * t - c, p) == 0).count();
    match roots {
        2 => OracleReduction::Split,
        0 => OracleReduction::Nonsplit,
        _ => OracleReduction::Additive,
    }
}

/// Tamagawa number on a model minimal at `p`.
///
/// Multiplicative reduction uses the component group of `I_n`: `n` when
/// split, `gcd(2, n)` when not. Additive reduction measures `E(Z_p)` by
/// counting solutions mod `p^k`: with `mu` the limit density of points
/// reducing to the singular point, `c = 1 + p mu / #E_ns(F_p)`. Counting
/// stops once every point mod `p^k` has gradient valuation `m` with
/// `2m + 1 <= k`, where Hensel makes the density exact. `None` if more than
/// `cap` points are needed.
pub fn tamagawa_oracle(a: &[i128; 5], p: i128, cap: usize) -> Option<u32> {
    let disc = model(*a).discriminant();
    let n = val(disc, p);
    match reduction_oracle(a, p) {
        OracleReduction::Good => return Some(1),
        OracleReduction::Split => return Some(n),
        OracleReduction::Nonsplit => return Some(if n % 2 == 0 { 2 } else { 1 }),
        OracleReduction::Additive => {}
    }
    let (x0, y0) = singular_points(a, p)[0];
    // affine points minus the singular one, plus the point at infinity
    let smooth = affine_points(a, p);
    let mut layer = vec![(x0, y0)];
    let mut q = p;
    let mut k = 1u32;
    loop {
        let resolved = layer.iter().all(|&(x, y)| {
            let (fx, fy) = gradient(a, x, y, q);
            let m = [fx, fy]
                .into_iter()
                .map(|g| if g == 0 { k } else { val(g, p).min(k) })
                .min()
                .unwrap();
            2 * m < k
        });
        if resolved {
            let num = q * smooth + p * layer.len() as i128;
            let den = q * smooth;
            assert_eq!(num % den, 0, "non-integral Tamagawa number at {p}");
            return Some((num / den) as u32);
        }
        let next_q = q * p;
        let mut next = Vec::new();
        for &(x, y) in &layer {
            for s in 0..p {
                for t in 0..p {
                    let (x1, y1) = (x + q * s, y + q * t);
                    if weierstrass_value(a, x1, y1, next_q) == 0 {
                        next.push((x1, y1));
                    }
                }
            }
            if next.len() > cap {
                return None;
            }
        }
        layer = next;
        q = next_q;
        k += 1;
    }
}

/// Whether `p` splits in `Q(sqrt m)`: `m` a nonzero square in `Q_p`.
pub fn splits_oracle(m: i128, p: i128) -> bool {
    m % p != 0 && unit_is_square(m, p)
}

/// Rank over Q of an integer matrix, by fraction-free elimination.
pub fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let (f, g) = (rows[rank][col], rows[i][col]);
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = *x * f - y * g;
                }
                let h = rows[i].iter().fold(0i128, |h, &x| num_gcd(h, x));
                if h > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The `(p-1)`-dimensional rational representation of `D_2p` on `Q(zeta_p)`
/// in the basis `1, zeta, ..., zeta^(p-2)`: rotation is multiplication by
/// `zeta`, the reflection is `zeta -> zeta^-1`. Matrices act on columns.
pub struct MatrixModel {
    pub p: u32,
    pub rotation: Vec<Vec<i128>>,
    pub reflection: Vec<Vec<i128>>,
}

impl MatrixModel {
    pub fn new(p: u32) -> Self {
        let n = p as usize - 1;
        let build = |images: &dyn Fn(i64) -> Cyclo| -> Vec<Vec<i128>> {
            let cols: Vec<Vec<i128>> = (0..n as i64).map(|k| images(k).coeffs).collect();
            (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
        };
        MatrixModel {
            p,
            rotation: build(&|k| Cyclo::zeta_pow(p, k + 1)),
            reflection: build(&|k| Cyclo::zeta_pow(p, -k)),
        }
    }

    pub fn identity(&self) -> Vec<Vec<i128>> {
        let n = self.p as usize - 1;
        (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i128).collect())
            .collect()
    }
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn trace(a: &[Vec<i128>]) -> i128 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Dimension of the fixed space of `g`.
pub fn fixed_dim(g: &[Vec<i128>]) -> usize {
    let n = g.len();
    let diff: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| g[i][j] - (i == j) as i128).collect())
        .collect();
    n - rank(diff)
}

/// Element `(v, s)` of `F_p^r ⋊ C_2`, acting by `x -> (-1)^s x + v`.
pub type GroupElement = (Vec<i128>, u8);

pub fn group_elements(p: i128, r: u32) -> Vec<GroupElement> {
    let mut vectors = vec![Vec::new()];
    for _ in 0..r {
        vectors = vectors
            .into_iter()
            .flat_map(|v: Vec<i128>| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for s in 0..2u8 {
        out.extend(vectors.iter().map(|v| (v.clone(), s)));
    }
    out
}

pub fn group_mul(p: i128, g: &GroupElement, h: &GroupElement) -> GroupElement {
    let sign = if g.1 == 1 { -1 } else { 1 };
    let v = g.0.iter().zip(&h.0).map(|(a, b)| md(a + sign * b, p)).collect();
    (v, g.1 ^ h.1)
}

pub fn group_inv(p: i128, g: &GroupElement) -> GroupElement {
    if g.1 == 1 {
        g.clone()
    } else {
        (g.0.iter().map(|a| md(-a, p)).collect(), 0)
    }
}

/// Sizes of the conjugacy classes, sorted.
pub fn class_sizes(p: i128, r: u32) -> Vec<usize> {
    let elements = group_elements(p, r);
    let mut seen = BTreeSet::new();
    let mut sizes = Vec::new();
    for h in &elements {
        if seen.contains(h) {
            continue;
        }
        let class: BTreeSet<GroupElement> = elements
            .iter()
            .map(|g| group_mul(p, &group_mul(p, g, h), &group_inv(p, g)))
            .collect();
        sizes.push(class.len());
        seen.extend(class);
    }
    sizes.sort_unstable();
    sizes
}

/// Hyperplanes of `F_p^r`, as the distinct kernels of nonzero functionals.
pub fn hyperplanes(p: i128, r: u32) -> usize {
    let vectors: Vec<Vec<i128>> = group_elements(p, r)
        .into_iter()
        .filter(|(_, s)| *s == 0)
        .map(|(v, _)| v)
        .collect();
    let kernels: BTreeSet<Vec<usize>> = vectors
        .iter()
        .filter(|a| a.iter().any(|&c| c != 0))
        .map(|a| {
            vectors
                .iter()
                .enumerate()
                .filter(|(_, v)| md(a.iter().zip(v.iter()).map(|(x, y)| x * y).sum(), p) == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    kernels.len()
}
