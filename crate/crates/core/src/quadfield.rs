//! Exact arithmetic in imaginary quadratic orders `O_K = Z + Z*omega`.
//!
//! Elements are coordinate pairs over the basis `(1, omega)` with
//! `omega = sqrt(f)` for `f = 2, 3 mod 4` and `omega = (1 + sqrt(f))/2`
//! for `f = 1 mod 4`. Ideals are full-rank submodules in Hermite normal
//! form `{(a, 0), (b, c)}` with the norm `a*c` cached; products reduce a
//! small generating set back to HNF, and principality is decided by
//! exhausting the finitely many elements of the right norm.
//!
//! The class group is computed from the ideals below the Minkowski bound
//! with `I ~ J` iff `I * conj(J)` principal; the reduced-form count in
//! [`crate::oracles`] stays an independent check and is never consulted
//! here.

use crate::arith::{egcd_i128, gcd_i128, isqrt_i128, kronecker, perfect_sqrt};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `f` must be a negative square-free integer.
    BadField(i64),
    /// The zero module is not an ideal.
    ZeroIdeal,
    /// `|f|` exceeded the configured class-group bound.
    ClassBoundExceeded { f: i64, bound: i64 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f_: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::BadField(f) => {
                write!(f_, "f = {f} is not a negative square-free integer")
            }
            FieldError::ZeroIdeal => write!(f_, "the zero ideal is not allowed"),
            FieldError::ClassBoundExceeded { f, bound } => {
                write!(
                    f_,
                    "|f| = {} exceeds the class-group bound {bound}",
                    f.abs()
                )
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// An imaginary quadratic field `Q(sqrt(f))`, `f < 0` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    f: i64,
    /// Discriminant: `4f` when `f = 2, 3 mod 4`, else `f`.
    d: i64,
    /// True when `omega = (1 + sqrt(f))/2`.
    omega_half: bool,
}

/// An element `x + y*omega` of `O_K`, coordinates over `(1, omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub x: i128,
    pub y: i128,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { x: 0, y: 0 };
    pub const ONE: QuadInt = QuadInt { x: 1, y: 0 };

    pub fn new(x: i128, y: i128) -> QuadInt {
        QuadInt { x, y }
    }

    pub fn integer(n: i128) -> QuadInt {
        QuadInt { x: n, y: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (x, 0) => write!(f, "{x}"),
            (0, y) => write!(f, "{y}w"),
            (x, y) if y < 0 => write!(f, "{x}{y}w"),
            (x, y) => write!(f, "{x}+{y}w"),
        }
    }
}

/// An ideal (full-rank `O_K`-submodule) in Hermite normal form: the
/// Z-module spanned by `a` and `b + c*omega`, with `a, c > 0` and
/// `0 <= b < a`. The norm `a*c` equals the index `[O_K : ideal]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadIdeal {
    pub fn norm(&self) -> i128 {
        self.a * self.c
    }

    pub fn is_whole_ring(&self) -> bool {
        self.a == 1 && self.c == 1
    }

    /// Z-basis as elements.
    pub fn basis(&self) -> [QuadInt; 2] {
        [QuadInt::new(self.a, 0), QuadInt::new(self.b, self.c)]
    }

    /// Membership of an element given by coordinates over `(1, omega)`.
    pub fn contains(&self, v: QuadInt) -> bool {
        if v.y.rem_euclid(self.c) != 0 {
            return false;
        }
        (v.x - (v.y / self.c) * self.b).rem_euclid(self.a) == 0
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}+{}w>", self.a, self.b, self.c)
    }
}

/// HNF of the Z-module spanned by the given coordinate rows. `None` when
/// the rows do not span a full-rank module.
fn hnf_of_rows(rows: &[QuadInt]) -> Option<QuadIdeal> {
    // gcd-combine the omega-coordinates into a single second generator,
    // pushing the eliminated remainders onto the omega-free pile
    let mut gen2: Option<(i128, i128)> = None;
    let mut pile: Vec<i128> = Vec::new();
    for &row in rows {
        if row.is_zero() {
            continue;
        }
        if row.y == 0 {
            pile.push(row.x);
            continue;
        }
        match gen2 {
            None => gen2 = Some((row.x, row.y)),
            Some((bx, by)) => {
                let (g, s, t) = egcd_i128(by, row.y);
                // [[s, t], [-v/g, by/g]] is unimodular
                pile.push((by * row.x - row.y * bx) / g);
                gen2 = Some((s * bx + t * row.x, g));
            }
        }
    }
    let (bx, by) = gen2?;
    let (bx, by) = if by < 0 { (-bx, -by) } else { (bx, by) };
    let mut a = 0i128;
    for u in pile {
        a = gcd_i128(a, u);
    }
    if a == 0 {
        return None;
    }
    let b = bx.rem_euclid(a);
    Some(QuadIdeal { a, b, c: by })
}

impl QuadField {
    const CLASS_BOUND: i64 = 10_000;

    /// `Q(sqrt(f))` for square-free `f < 0`.
    pub fn new(f: i64) -> Result<QuadField, FieldError> {
        if f >= 0 || !crate::arith::is_square_free((-f) as u64) {
            return Err(FieldError::BadField(f));
        }
        let omega_half = f.rem_euclid(4) == 1;
        let d = if omega_half { f } else { 4 * f };
        Ok(QuadField { f, d, omega_half })
    }

    pub fn f(&self) -> i64 {
        self.f
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// `|O_K^x|`: 6 for `D = -3`, 4 for `D = -4`, 2 otherwise.
    pub fn unit_count(&self) -> u32 {
        match self.d {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    /// The units themselves.
    pub fn units(&self) -> Vec<QuadInt> {
        match self.d {
            -4 => vec![
                QuadInt::new(1, 0),
                QuadInt::new(-1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(0, -1),
            ],
            -3 => vec![
                QuadInt::new(1, 0),
                QuadInt::new(-1, 0),
                QuadInt::new(0, 1),
                QuadInt::new(0, -1),
                QuadInt::new(-1, 1),
                QuadInt::new(1, -1),
            ],
            _ => vec![QuadInt::new(1, 0), QuadInt::new(-1, 0)],
        }
    }

    /// `sqrt(f)` as an element of `O_K`.
    pub fn sqrt_f(&self) -> QuadInt {
        if self.omega_half {
            // omega = (1 + sqrt f)/2, so sqrt f = 2*omega - 1
            QuadInt::new(-1, 2)
        } else {
            QuadInt::new(0, 1)
        }
    }

    pub fn omega_is_half(&self) -> bool {
        self.omega_half
    }

    pub fn add(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        QuadInt::new(a.x + b.x, a.y + b.y)
    }

    pub fn sub(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        QuadInt::new(a.x - b.x, a.y - b.y)
    }

    pub fn neg(&self, a: QuadInt) -> QuadInt {
        QuadInt::new(-a.x, -a.y)
    }

    pub fn mul(&self, a: QuadInt, b: QuadInt) -> QuadInt {
        let f = self.f as i128;
        if self.omega_half {
            // omega^2 = (f - 1)/4 + omega
            let m = (f - 1) / 4;
            QuadInt::new(a.x * b.x + a.y * b.y * m, a.x * b.y + a.y * b.x + a.y * b.y)
        } else {
            // omega^2 = f
            QuadInt::new(a.x * b.x + a.y * b.y * f, a.x * b.y + a.y * b.x)
        }
    }

    pub fn conj(&self, a: QuadInt) -> QuadInt {
        if self.omega_half {
            // conj(omega) = 1 - omega
            QuadInt::new(a.x + a.y, -a.y)
        } else {
            QuadInt::new(a.x, -a.y)
        }
    }

    /// Field norm, always a non-negative integer on `O_K`.
    pub fn norm(&self, a: QuadInt) -> i128 {
        let f = self.f as i128;
        let n = if self.omega_half {
            a.x * a.x + a.x * a.y + a.y * a.y * (1 - f) / 4
        } else {
            a.x * a.x - f * a.y * a.y
        };
        debug_assert!(n >= 0);
        n
    }

    pub fn trace(&self, a: QuadInt) -> i128 {
        if self.omega_half {
            2 * a.x + a.y
        } else {
            2 * a.x
        }
    }

    pub fn is_unit(&self, a: QuadInt) -> bool {
        self.norm(a) == 1
    }

    /// Exact division `a / b` in `O_K`, when `b | a`.
    pub fn div_exact(&self, a: QuadInt, b: QuadInt) -> Option<QuadInt> {
        if b.is_zero() {
            return None;
        }
        let nb = self.norm(b);
        let num = self.mul(a, self.conj(b));
        if num.x % nb != 0 || num.y % nb != 0 {
            return None;
        }
        Some(QuadInt::new(num.x / nb, num.y / nb))
    }

    /// All elements of the given norm, by exhausting the norm-form box.
    pub fn elements_of_norm(&self, n: i128) -> Vec<QuadInt> {
        assert!(n >= 0);
        let mf = (-self.f) as i128;
        let mut out = Vec::new();
        if n == 0 {
            out.push(QuadInt::ZERO);
            return out;
        }
        if self.omega_half {
            // (2x + y)^2 + |f| y^2 = 4n
            let ymax = isqrt_i128(4 * n / mf);
            for y in -ymax..=ymax {
                let rem = 4 * n - mf * y * y;
                if rem < 0 {
                    continue;
                }
                if let Some(s) = perfect_sqrt(rem) {
                    if (s - y).rem_euclid(2) == 0 {
                        out.push(QuadInt::new((s - y) / 2, y));
                        if s != 0 {
                            out.push(QuadInt::new((-s - y) / 2, y));
                        }
                    }
                }
            }
        } else {
            // x^2 + |f| y^2 = n
            let ymax = isqrt_i128(n / mf);
            for y in -ymax..=ymax {
                let rem = n - mf * y * y;
                if let Some(x) = perfect_sqrt(rem) {
                    out.push(QuadInt::new(x, y));
                    if x != 0 {
                        out.push(QuadInt::new(-x, y));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        debug_assert!(out.iter().all(|&v| self.norm(v) == n));
        out
    }

    /// HNF of `g1*O_K + g2*O_K`; independent of generator order.
    pub fn ideal_from_generators(&self, g1: QuadInt, g2: QuadInt) -> Result<QuadIdeal, FieldError> {
        if g1.is_zero() && g2.is_zero() {
            return Err(FieldError::ZeroIdeal);
        }
        let omega = QuadInt::new(0, 1);
        let rows = [g1, self.mul(g1, omega), g2, self.mul(g2, omega)];
        hnf_of_rows(&rows).ok_or(FieldError::ZeroIdeal)
    }

    pub fn principal_ideal(&self, g: QuadInt) -> Result<QuadIdeal, FieldError> {
        self.ideal_from_generators(g, QuadInt::ZERO)
    }

    pub fn whole_ring(&self) -> QuadIdeal {
        QuadIdeal { a: 1, b: 0, c: 1 }
    }

    /// Product ideal, reduced back to HNF. Norms multiply.
    pub fn ideal_product(&self, i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
        let omega = QuadInt::new(0, 1);
        let mut rows = Vec::with_capacity(8);
        for u in i.basis() {
            for v in j.basis() {
                let p = self.mul(u, v);
                rows.push(p);
                rows.push(self.mul(p, omega));
            }
        }
        let out = hnf_of_rows(&rows).expect("product of nonzero ideals");
        debug_assert_eq!(out.norm(), i.norm() * j.norm());
        out
    }

    pub fn ideal_conj(&self, i: &QuadIdeal) -> QuadIdeal {
        let [u, v] = i.basis();
        self.ideal_from_generators(self.conj(u), self.conj(v))
            .expect("nonzero")
    }

    /// A generator of `i` when one exists: exhausts the elements of norm
    /// `N(i)` and compares principal HNFs.
    pub fn is_principal(&self, i: &QuadIdeal) -> Option<QuadInt> {
        for cand in self.elements_of_norm(i.norm()) {
            if cand.is_zero() {
                continue;
            }
            if self.principal_ideal(cand).expect("nonzero") == *i {
                return Some(cand);
            }
        }
        None
    }

    /// True when `[i] = [j]` in the class group.
    pub fn same_class(&self, i: &QuadIdeal, j: &QuadIdeal) -> bool {
        let prod = self.ideal_product(i, &self.ideal_conj(j));
        self.is_principal(&prod).is_some()
    }

    /// All ideals of the given norm.
    pub fn ideals_of_norm(&self, n: i128) -> Vec<QuadIdeal> {
        assert!(n >= 1);
        let omega = QuadInt::new(0, 1);
        let mut out = Vec::new();
        for c in 1..=n {
            if n % c != 0 {
                continue;
            }
            let a = n / c;
            for b in 0..a {
                let cand = QuadIdeal { a, b, c };
                // the module must be closed under multiplication by omega
                let closed = cand
                    .basis()
                    .iter()
                    .all(|&g| cand.contains(self.mul(g, omega)));
                if closed {
                    out.push(cand);
                }
            }
        }
        out
    }

    /// Class number and one ideal representative per class; results are
    /// memoized per field behind a lock.
    pub fn class_group(&self) -> Result<ClassGroup, FieldError> {
        if -self.f > Self::CLASS_BOUND {
            return Err(FieldError::ClassBoundExceeded {
                f: self.f,
                bound: Self::CLASS_BOUND,
            });
        }
        static CACHE: OnceLock<Mutex<HashMap<i64, Arc<ClassGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(&self.f) {
            return Ok((**hit).clone());
        }

        // every ideal class has a representative of norm <= (2/pi) sqrt(|D|)
        let mb = ((2.0 / std::f64::consts::PI) * ((-self.d) as f64).sqrt()).floor() as i128;
        let mb = mb.max(1);
        let mut reps: Vec<QuadIdeal> = Vec::new();
        for n in 1..=mb {
            for cand in self.ideals_of_norm(n) {
                if !reps.iter().any(|r| self.same_class(&cand, r)) {
                    reps.push(cand);
                }
            }
        }
        let out = ClassGroup {
            h: reps.len() as u64,
            representatives: reps,
        };
        cache.lock().unwrap().insert(self.f, Arc::new(out.clone()));
        Ok(out)
    }

    /// Index into `class_group().representatives` of the class of `i`.
    pub fn class_index(&self, i: &QuadIdeal) -> Result<usize, FieldError> {
        let cg = self.class_group()?;
        for (k, rep) in cg.representatives.iter().enumerate() {
            if self.same_class(i, rep) {
                return Ok(k);
            }
        }
        unreachable!("every ideal lies in some class");
    }

    /// `zeta_K(2) = zeta(2) * L(2, chi_D)` by partial summation of the
    /// Kronecker character, with the tail bounded by `tol`.
    pub fn zeta_k_2(&self, tol: f64) -> f64 {
        assert!(tol >= 1e-10, "tolerance below the supported resolution");
        let period = (-self.d) as usize;
        let chi: Vec<f64> = (0..period)
            .map(|r| kronecker(self.d, r as i64) as f64)
            .collect();
        // |sum_{n > M} chi(n)/n^2| <= 2|D|/(M+1)^2
        let m = ((2.0 * period as f64 / tol).sqrt().ceil() as usize).max(period * 2);
        let mut l_value = 0.0f64;
        for n in 1..=m {
            let c = chi[n % period];
            if c != 0.0 {
                l_value += c / (n as f64 * n as f64);
            }
        }
        let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        zeta2 * l_value
    }
}

/// Output of [`QuadField::class_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub h: u64,
    pub representatives: Vec<QuadIdeal>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(f: i64) -> QuadField {
        QuadField::new(f).unwrap()
    }

    #[test]
    fn field_constants() {
        assert_eq!(field(-1).discriminant(), -4);
        assert_eq!(field(-2).discriminant(), -8);
        assert_eq!(field(-3).discriminant(), -3);
        assert_eq!(field(-5).discriminant(), -20);
        assert_eq!(field(-7).discriminant(), -7);
        assert_eq!(field(-1).unit_count(), 4);
        assert_eq!(field(-3).unit_count(), 6);
        assert_eq!(field(-5).unit_count(), 2);
        assert!(QuadField::new(-4).is_err());
        assert!(QuadField::new(5).is_err());
        assert!(QuadField::new(-12).is_err());
    }

    #[test]
    fn units_have_norm_one() {
        for f in [-1i64, -2, -3, -5, -7, -11, -15] {
            let k = field(f);
            let units = k.units();
            assert_eq!(units.len() as u32, k.unit_count());
            for u in units {
                assert_eq!(k.norm(u), 1);
            }
        }
    }

    #[test]
    fn norm_and_conj() {
        let k = field(-5);
        let a = QuadInt::new(1, 1); // 1 + sqrt(-5)
        assert_eq!(k.norm(a), 6);
        assert_eq!(k.mul(a, k.conj(a)), QuadInt::integer(6));
        assert_eq!(k.trace(a), 2);

        let k3 = field(-3);
        let w = QuadInt::new(0, 1);
        assert_eq!(k3.norm(w), 1);
        assert_eq!(k3.conj(w), QuadInt::new(1, -1));
        // sqrt(f)^2 = f
        for f in [-1i64, -2, -3, -5, -6, -7, -11, -15, -23] {
            let k = field(f);
            let s = k.sqrt_f();
            assert_eq!(k.mul(s, s), QuadInt::integer(f as i128));
        }
    }

    #[test]
    fn conjugation_is_ring_involution() {
        let k = field(-7);
        let vals = [
            QuadInt::new(2, 3),
            QuadInt::new(-1, 5),
            QuadInt::new(4, -2),
            QuadInt::new(0, 1),
        ];
        for &a in &vals {
            assert_eq!(k.conj(k.conj(a)), a);
            for &b in &vals {
                assert_eq!(k.conj(k.mul(a, b)), k.mul(k.conj(a), k.conj(b)));
                assert_eq!(k.conj(k.add(a, b)), k.add(k.conj(a), k.conj(b)));
            }
        }
    }

    #[test]
    fn ideal_examples() {
        // unit ideal
        for f in [-1i64, -5, -6, -23] {
            let k = field(f);
            let o = k
                .ideal_from_generators(QuadInt::ONE, QuadInt::ZERO)
                .unwrap();
            assert_eq!(o, k.whole_ring());
            assert_eq!(o.norm(), 1);
        }
        // <2, 1 + sqrt(-5)> has norm 2
        let k = field(-5);
        let a = k
            .ideal_from_generators(QuadInt::new(1, 1), QuadInt::integer(2))
            .unwrap();
        assert_eq!(a.norm(), 2);
        assert_eq!(a, QuadIdeal { a: 2, b: 1, c: 1 });
        // generator order does not matter
        let a2 = k
            .ideal_from_generators(QuadInt::integer(2), QuadInt::new(1, 1))
            .unwrap();
        assert_eq!(a, a2);
        // ramified prime over 3 in Q(sqrt(-6))
        let k6 = field(-6);
        let p3 = k6
            .ideal_from_generators(k6.sqrt_f(), QuadInt::integer(3))
            .unwrap();
        assert_eq!(p3.norm(), 3);
        // zero ideal rejected
        assert!(k
            .ideal_from_generators(QuadInt::ZERO, QuadInt::ZERO)
            .is_err());
    }

    #[test]
    fn ideal_products() {
        let k = field(-5);
        let a = k
            .ideal_from_generators(QuadInt::new(1, 1), QuadInt::integer(2))
            .unwrap();
        // a^2 = 2 O_K
        let sq = k.ideal_product(&a, &a);
        assert_eq!(sq, k.principal_ideal(QuadInt::integer(2)).unwrap());
        // identity
        assert_eq!(k.ideal_product(&a, &k.whole_ring()), a);
        // split prime above 3: <3, 1+s><3, 1-s> = 3 O_K
        let p = k
            .ideal_from_generators(QuadInt::integer(3), QuadInt::new(1, 1))
            .unwrap();
        let pbar = k.ideal_conj(&p);
        assert_eq!(
            k.ideal_product(&p, &pbar),
            k.principal_ideal(QuadInt::integer(3)).unwrap()
        );
        assert_eq!(p.norm() * pbar.norm(), 9);
    }

    #[test]
    fn principality() {
        let k = field(-5);
        let three = k.principal_ideal(QuadInt::integer(3)).unwrap();
        let g = k.is_principal(&three).expect("3 O_K is principal");
        assert_eq!(k.norm(g), 9);
        assert_eq!(k.principal_ideal(g).unwrap(), three);

        let a = k
            .ideal_from_generators(QuadInt::new(1, 1), QuadInt::integer(2))
            .unwrap();
        assert!(k.is_principal(&a).is_none());

        let k6 = field(-6);
        let p2 = k6
            .ideal_from_generators(QuadInt::integer(2), k6.sqrt_f())
            .unwrap();
        assert_eq!(p2.norm(), 2);
        assert!(k6.is_principal(&p2).is_none());
    }

    #[test]
    fn division() {
        let k = field(-5);
        let a = QuadInt::new(1, 1);
        let b = QuadInt::new(2, -3);
        let prod = k.mul(a, b);
        assert_eq!(k.div_exact(prod, a), Some(b));
        assert_eq!(k.div_exact(prod, b), Some(a));
        assert_eq!(k.div_exact(QuadInt::ONE, QuadInt::integer(2)), None);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(field(-1).class_group().unwrap().h, 1);
        assert_eq!(field(-5).class_group().unwrap().h, 2);
        assert_eq!(field(-23).class_group().unwrap().h, 3);
        assert_eq!(field(-2).class_group().unwrap().h, 1);
        assert_eq!(field(-14).class_group().unwrap().h, 4);
        // memoized path returns the same thing
        assert_eq!(field(-5).class_group().unwrap().h, 2);
    }

    #[test]
    fn class_index_consistency() {
        let k = field(-5);
        let cg = k.class_group().unwrap();
        assert_eq!(cg.representatives[0], k.whole_ring());
        let a = k
            .ideal_from_generators(QuadInt::new(1, 1), QuadInt::integer(2))
            .unwrap();
        assert_eq!(k.class_index(&a).unwrap(), 1);
        assert_eq!(k.class_index(&k.whole_ring()).unwrap(), 0);
        // [a]^2 is principal
        let sq = k.ideal_product(&a, &a);
        assert_eq!(k.class_index(&sq).unwrap(), 0);
    }

    #[test]
    fn zeta_values() {
        let z1 = field(-1).zeta_k_2(1e-9);
        assert!((z1 - 1.50670).abs() < 1e-4, "zeta of Q(i) at 2 = {z1}");
        let z3 = field(-3).zeta_k_2(1e-9);
        assert!((z3 - 1.28519).abs() < 1e-4, "zeta at f=-3 = {z3}");
        for f in [-1i64, -2, -3, -5, -6, -7, -11, -15, -23, -97] {
            assert!(field(f).zeta_k_2(1e-8) > 1.0);
        }
    }
}
