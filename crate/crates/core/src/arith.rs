//! Shared integer helpers: gcd/Bezout, integer square roots, factor
//! sieves, the Kronecker symbol and a seedable generator for the
//! deterministic sampling used in property checks.

/// Greatest common divisor, always non-negative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a as i64
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a as i128
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`,
/// `g >= 0`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = egcd(b, a % b);
    (g, y, x - (a / b) * y)
}

pub fn egcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = egcd_i128(b, a % b);
    (g, y, x - (a / b) * y)
}

/// Inverse of `a` modulo `m > 0`, in `[0, m)`. `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    debug_assert!(m > 0);
    let (g, x, _) = egcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

/// Floor of the square root of `n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0);
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// True when `n` is a perfect square; returns the root.
pub fn perfect_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt_i128(n);
    (r * r == n).then_some(r)
}

/// Smallest-prime-factor table for `1..=n` (`spf[0]` and `spf[1]` are 0).
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    let mut i = 2usize;
    while i <= n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

/// Number of distinct prime factors of `m`, read off an spf table.
pub fn omega_from_spf(spf: &[u32], mut m: usize) -> u32 {
    let mut w = 0;
    while m > 1 {
        let p = spf[m] as usize;
        w += 1;
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    w
}

/// Euler phi for `0..=n` by sieve.
pub fn phi_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Euler phi of a single integer.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Distinct prime factors of `n`, increasing.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// True when `n` has no square factor > 1.
pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Kronecker symbol `(a | n)`, the fully extended Jacobi symbol.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a|2) factors
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        while n % 2 == 0 {
            n /= 2;
            match a.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            match n.rem_euclid(8) {
                3 | 5 => result = -result,
                _ => {}
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// SplitMix64: small deterministic generator for seeded sampling.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`, `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform in `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }
}
