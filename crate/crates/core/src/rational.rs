//! Farey neighbours on the projective line over `Q`.
//!
//! Two reduced fractions `p/q`, `r/s` (with `1/0` for the point at
//! infinity) are Farey neighbours when `|ps - qr| = 1`; equivalently some
//! element of `PSL2(Z)` maps `(infinity, 0)` onto them, and equivalently
//! their Ford circles are tangent.
//!
//! Enumeration is driven by the denominators: for every ordered coprime
//! pair `(q, s)` with `q*s <= N` there is exactly one neighbour pair with
//! both endpoints in `[0, 1]`, obtained by a modular inverse. No Farey
//! sequence is materialized.

use crate::arith::{egcd, gcd, isqrt, mod_inverse, phi_sieve, prime_factors};
use std::collections::HashSet;
use std::fmt;

/// A reduced rational, or the point at infinity stored as `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalError {
    /// Both projective coordinates were zero.
    ZeroPoint,
    /// An operation that needs two distinct endpoints got equal ones.
    EqualEndpoints,
    /// `orbit_point` needs coprime `(c, d)`.
    NotCoprime { c: i64, d: i64 },
    /// A pair containing the point at infinity has no gap.
    InfiniteEndpoint,
    /// Congruence level must be at least 2.
    InvalidLevel(u64),
}

impl fmt::Display for RationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalError::ZeroPoint => write!(f, "projective point (0, 0) is not allowed"),
            RationalError::EqualEndpoints => write!(f, "endpoints must be distinct"),
            RationalError::NotCoprime { c, d } => {
                write!(f, "({c}, {d}) is not a coprime pair")
            }
            RationalError::InfiniteEndpoint => {
                write!(f, "pair containing infinity has no finite gap")
            }
            RationalError::InvalidLevel(l) => write!(f, "congruence level {l} must be >= 2"),
        }
    }
}

impl std::error::Error for RationalError {}

impl Rational {
    /// Reduced fraction with non-negative denominator; `den = 0` yields
    /// the point at infinity `1/0`.
    pub fn new(num: i64, den: i64) -> Rational {
        if den == 0 {
            assert!(num != 0, "projective point (0, 0)");
            return Rational { num: 1, den: 0 };
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn infinity() -> Rational {
        Rational { num: 1, den: 0 }
    }

    pub fn zero() -> Rational {
        Rational { num: 0, den: 1 }
    }

    pub fn is_infinity(&self) -> bool {
        self.den == 0
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Strict order on finite rationals. Panics on infinity.
    pub fn cmp_finite(&self, other: &Rational) -> std::cmp::Ordering {
        assert!(!self.is_infinity() && !other.is_infinity());
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An unordered pair of finite Farey neighbours, stored as `lo < hi`
/// together with the exact gap `hi - lo` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyPair {
    pub lo: Rational,
    pub hi: Rational,
    pub gap_num: i64,
    pub gap_den: i64,
}

impl FareyPair {
    /// Build from two distinct finite Farey neighbours.
    pub fn new(a: Rational, b: Rational) -> Result<FareyPair, RationalError> {
        if a.is_infinity() || b.is_infinity() {
            return Err(RationalError::InfiniteEndpoint);
        }
        if !is_farey_pair(a, b)? {
            return Err(RationalError::EqualEndpoints);
        }
        let (lo, hi) = if a.cmp_finite(&b) == std::cmp::Ordering::Less {
            (a, b)
        } else {
            (b, a)
        };
        // |ps - qr| = 1 makes the gap exactly 1/(q*s)
        Ok(FareyPair {
            lo,
            hi,
            gap_num: 1,
            gap_den: lo.den * hi.den,
        })
    }

    fn from_parts(p: i64, q: i64, r: i64, s: i64) -> FareyPair {
        debug_assert_eq!(p * s - q * r, 1);
        FareyPair {
            lo: Rational { num: r, den: s },
            hi: Rational { num: p, den: q },
            gap_num: 1,
            gap_den: q * s,
        }
    }
}

/// Sign convention for the gcd-equation count of `count_gcd_quadruples`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    /// `ps - qr = 1` literally.
    StrictPlusOne,
    /// `|ps - qr| = 1`.
    Absolute,
}

/// A solution of the gcd equation inside the box `0 <= p <= q`,
/// `0 <= r <= s`, `qs > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdQuadruple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl GcdQuadruple {
    pub fn det(&self) -> i64 {
        self.p * self.s - self.q * self.r
    }
}

/// A projective 2x2 integer matrix acting by homographies
/// `z -> (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix2 {
    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, x: Rational) -> Rational {
        let (p, q) = (x.num, x.den);
        Rational::new(self.a * p + self.b * q, self.c * p + self.d * q)
    }

    pub fn compose(&self, other: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

/// `|ps - qr| = 1` on reduced representatives; symmetric in its arguments.
pub fn is_farey_pair(a: Rational, b: Rational) -> Result<bool, RationalError> {
    if a == b {
        return Err(RationalError::EqualEndpoints);
    }
    let cross = a.num as i128 * b.den as i128 - a.den as i128 * b.num as i128;
    Ok(cross.abs() == 1)
}

/// Unique unit-interval neighbour pair for the ordered coprime
/// denominators `(q, s)`: the `(p, r)` with `ps - qr = 1`, `0 < p <= q`,
/// `0 <= r < s`.
fn pair_for_denominators(q: i64, s: i64) -> (i64, i64) {
    debug_assert!(q >= 1 && s >= 1 && gcd(q, s) == 1);
    let inv = mod_inverse(s, q).expect("coprime");
    let p = if inv == 0 { q } else { inv };
    let r = (p * s - 1) / q;
    debug_assert!(p >= 1 && p <= q && r >= 0 && r < s);
    (p, r)
}

/// True when the unordered pair `{p/q, r/s}` (with `ps - qr = 1`) lies in
/// the `Gamma_0(level)`-orbit of `{0, infinity}`.
///
/// Membership reduces to a congruence on the reduced denominators: some
/// determinant-one matrix sending `(infinity, 0)` to the pair has lower-left
/// entry `q` or `s`, so the pair belongs exactly when `level | q` or
/// `level | s`. Validated against breadth-first orbit expansion in tests.
fn level_admits(q: i64, s: i64, level: u64) -> bool {
    let l = level as i64;
    q % l == 0 || s % l == 0
}

/// Visit every Farey pair with both endpoints in `[0, 1]` and
/// denominator product `q*s <= n`, in canonical `(q, s)` order.
/// With `level = Some(L)` only pairs in the `Gamma_0(L)`-orbit of
/// `{0, infinity}` are visited.
pub fn for_each_farey_pair<F: FnMut(&FareyPair)>(
    n: u64,
    level: Option<u64>,
    mut visit: F,
) -> Result<(), RationalError> {
    assert!(n >= 1);
    if let Some(l) = level {
        if l < 2 {
            return Err(RationalError::InvalidLevel(l));
        }
    }
    let n = n as i64;
    for q in 1..=n {
        let smax = n / q;
        for s in 1..=smax {
            if gcd(q, s) != 1 {
                continue;
            }
            if let Some(l) = level {
                if !level_admits(q, s, l) {
                    continue;
                }
            }
            let (p, r) = pair_for_denominators(q, s);
            visit(&FareyPair::from_parts(p, q, r, s));
        }
    }
    Ok(())
}

/// All unit-interval Farey pairs with `q*s <= n`, canonically ordered.
pub fn enumerate_farey_pairs(n: u64, level: Option<u64>) -> Result<Vec<FareyPair>, RationalError> {
    let mut out = Vec::new();
    for_each_farey_pair(n, level, |p| out.push(*p))?;
    Ok(out)
}

/// `|enumerate_farey_pairs(n, level)|` without materializing the pairs.
/// `threads > 1` splits the denominator range; the total is unchanged.
pub fn count_farey_pairs(n: u64, level: Option<u64>, threads: usize) -> Result<u64, RationalError> {
    assert!(n >= 1);
    if let Some(l) = level {
        if l < 2 {
            return Err(RationalError::InvalidLevel(l));
        }
    }
    let n = n as i64;
    let threads = threads.clamp(1, 64);
    let count_range = |start: i64, stride: i64| -> u64 {
        let mut count = 0u64;
        let mut q = start;
        while q <= n {
            let smax = n / q;
            for s in 1..=smax {
                if gcd(q, s) != 1 {
                    continue;
                }
                if let Some(l) = level {
                    if !level_admits(q, s, l) {
                        continue;
                    }
                }
                count += 1;
            }
            q += stride;
        }
        count
    };
    if threads == 1 {
        return Ok(count_range(1, 1));
    }
    let total = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || count_range(t as i64 + 1, threads as i64)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).sum::<u64>()
    });
    Ok(total)
}

/// Pairs with both denominators at most `d` (the figure regime), rather
/// than a bound on their product.
pub fn farey_pairs_max_denominator(d: u64) -> Vec<FareyPair> {
    assert!(d >= 1);
    let d = d as i64;
    let mut out = Vec::new();
    for q in 1..=d {
        for s in 1..=d {
            if gcd(q, s) != 1 {
                continue;
            }
            let (p, r) = pair_for_denominators(q, s);
            out.push(FareyPair::from_parts(p, q, r, s));
        }
    }
    out
}

/// Number of gcd-equation solutions in the box of `GcdQuadruple` with
/// `0 < qs <= n`, under the chosen sign convention.
///
/// In strict mode there is exactly one solution per ordered coprime
/// `(q, s)`; the absolute mode adds the mirrored `qr - ps = 1` solution.
pub fn count_gcd_quadruples(n: u64, mode: SignMode) -> u64 {
    assert!(n >= 1);
    let n = n as i64;
    let mut count = 0u64;
    for q in 1..=n {
        for s in 1..=(n / q) {
            if gcd(q, s) == 1 {
                count += 1;
            }
        }
    }
    match mode {
        SignMode::StrictPlusOne => count,
        SignMode::Absolute => 2 * count,
    }
}

/// The quadruples themselves, for cross-checking against brute force.
pub fn gcd_quadruples(n: u64, mode: SignMode) -> Vec<GcdQuadruple> {
    assert!(n >= 1);
    let n = n as i64;
    let mut out = Vec::new();
    for q in 1..=n {
        for s in 1..=(n / q) {
            if gcd(q, s) != 1 {
                continue;
            }
            let (p, r) = pair_for_denominators(q, s);
            out.push(GcdQuadruple { p, q, r, s });
            if mode == SignMode::Absolute {
                // the det = -1 companion: qr - ps = 1 with 0 < r <= s, 0 <= p < q
                let inv = mod_inverse(q, s).expect("coprime");
                let r2 = if inv == 0 { s } else { inv };
                let p2 = (r2 * q - 1) / s;
                debug_assert_eq!(p2 * s - q * r2, -1);
                out.push(GcdQuadruple { p: p2, q, r: r2, s });
            }
        }
    }
    out
}

/// Number of primitive representations `n = c^2 + d^2` with
/// `gcd(c, d) = 1`, counted over all of `Z^2`.
pub fn r_prim(n: u64) -> u64 {
    assert!(n >= 1);
    let root = isqrt(n) as i64;
    let mut count = 0u64;
    for c in -root..=root {
        let rem = n as i64 - c * c;
        let d0 = isqrt(rem as u64) as i64;
        if d0 * d0 != rem {
            continue;
        }
        let ds: &[i64] = if d0 == 0 { &[0] } else { &[d0, -d0] };
        for &d in ds {
            if gcd(c, d) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// `sum_{m <= n} r_prim(m)`, summed directly over the coprime lattice
/// points in the disc of radius `sqrt(n)`.
pub fn sum_r_prim(n: u64, threads: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let root = isqrt(n);
    let threads = threads.clamp(1, 64);
    let quarter = |start: u64, stride: u64| -> u64 {
        let mut count = 0u64;
        let mut c = start;
        while c <= root {
            let dmax = isqrt(n - c * c);
            for d in 1..=dmax {
                if gcd(c as i64, d as i64) == 1 {
                    count += 1;
                }
            }
            c += stride;
        }
        count
    };
    let interior = if threads == 1 {
        quarter(1, 1)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| scope.spawn(move || quarter(t as u64 + 1, threads as u64)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).sum()
        })
    };
    // (+-1, 0) and (0, +-1) are the only primitive axis points
    4 * interior + 4
}

/// The Bezout completion of a coprime pair `(c, d)`: the matrix
/// `[[a', b'], [c, d]]` of determinant one whose orbit point
/// `gamma . i` has real part `R(c, d) = (a'c + b'd)/(c^2 + d^2)` in
/// `[0, 1)`.
pub fn orbit_point(c: i64, d: i64) -> Result<(Rational, IntMatrix2), RationalError> {
    if (c, d) == (0, 0) {
        return Err(RationalError::ZeroPoint);
    }
    if gcd(c, d) != 1 {
        return Err(RationalError::NotCoprime { c, d });
    }
    // a*d - b*c = 1
    let (g, x, y) = egcd(d, c);
    debug_assert_eq!(g, 1);
    let (a, b) = (x, -y);
    debug_assert_eq!(a * d - b * c, 1);
    let nrm = c * c + d * d;
    let t = a * c + b * d;
    let res = t.rem_euclid(nrm);
    let k = (res - t) / nrm;
    let m = IntMatrix2 {
        a: a + k * c,
        b: b + k * d,
        c,
        d,
    };
    debug_assert_eq!(m.det(), 1);
    Ok((Rational::new(res, nrm), m))
}

/// Reciprocity index of the modular symbol from infinity to `x >= 0`:
/// 1 when the vertical geodesic at `x` (mod 1) meets the orbit of `i`,
/// i.e. when the reduced denominator `q` is a primitive sum of two
/// squares realizing `x mod 1` as an orbit abscissa; 2 otherwise.
pub fn reciprocity_index(x: Rational) -> u8 {
    assert!(!x.is_infinity() && x.num >= 0);
    let q = x.den;
    let target = x.num.rem_euclid(q);
    let root = isqrt(q as u64) as i64;
    for c in 0..=root {
        let rem = q - c * c;
        let d0 = isqrt(rem as u64) as i64;
        if d0 * d0 != rem {
            continue;
        }
        let ds: &[i64] = if d0 == 0 { &[0] } else { &[d0, -d0] };
        for &d in ds {
            if (c, d) == (0, 0) || gcd(c, d) != 1 {
                continue;
            }
            let (r, _) = orbit_point(c, d).expect("coprime");
            if r.den == q && r.num == target {
                return 1;
            }
        }
    }
    2
}

/// Which modular symbols `count_modular_symbols` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolMode {
    All,
    Reciprocal,
}

/// Largest integer `m >= 1` with `2 ln m <= t`, i.e. `floor(e^{t/2})`
/// with ties resolved towards inclusion.
pub fn exp_half_floor(t: f64) -> u64 {
    assert!(t >= 0.0);
    const EPS: f64 = 1e-9;
    let mut m = (t / 2.0).exp().floor().max(1.0) as u64;
    while 2.0 * ((m + 1) as f64).ln() <= t + EPS {
        m += 1;
    }
    while m > 1 && 2.0 * (m as f64).ln() > t + EPS {
        m -= 1;
    }
    m
}

/// Number of degree-one modular symbols of complexity at most `t`.
///
/// `All` counts `PSL2(Z)`-orbits of ordered pairs `(x, y)` of distinct
/// parabolic points with `d(B_x, B_y) <= t`; after moving `x` to
/// infinity this is `sum_{q <= e^{t/2}} phi(q)`. `Reciprocal` counts
/// the points of the orbit of `i` in the strip `0 <= Re z < 1` with
/// `Im z >= e^{-t/2}`, by exhausting coprime `(c, d)` and deduplicating
/// the sign/swap classes that share an orbit point.
pub fn count_modular_symbols(t: f64, mode: SymbolMode) -> u64 {
    assert!(t >= 0.0);
    let bound = exp_half_floor(t);
    match mode {
        SymbolMode::All => {
            let phi = phi_sieve(bound as usize);
            phi[1..=bound as usize].iter().sum()
        }
        SymbolMode::Reciprocal => {
            let mut seen: HashSet<(i64, i64)> = HashSet::new();
            let root = isqrt(bound) as i64;
            for c in 0..=root {
                let dmax = isqrt(bound - (c * c) as u64) as i64;
                for d in -dmax..=dmax {
                    if (c, d) == (0, 0) || gcd(c, d) != 1 {
                        continue;
                    }
                    let (r, _) = orbit_point(c, d).expect("coprime");
                    let n = c * c + d * d;
                    // key (Im^{-1}, Re) pins the orbit point exactly
                    seen.insert((n, r.num * (n / r.den)));
                }
            }
            seen.len() as u64
        }
    }
}

/// Index `[PSL2(Z) : Gamma_0(level)] = level * prod_{p | level} (1 + 1/p)`.
pub fn hecke_index(level: u64) -> u64 {
    assert!(level >= 1);
    let mut idx = level;
    for p in prime_factors(level) {
        idx = idx / p * (p + 1);
    }
    idx
}
