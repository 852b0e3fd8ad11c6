//! Exact arithmetic in the Hurwitz order and the quaternionic Farey
//! relation.
//!
//! Order elements are stored with doubled coordinates so that the
//! Lipschitz points (all even) and the deep points (all odd) share one
//! integer representation; general algebra elements carry exact rational
//! coordinates. The Dieudonne determinant is kept as its exact square.
//!
//! The order is norm-Euclidean: nearest-point division terminates, every
//! point of the right projective line reduces to a matrix column, and
//! the Farey relation `n(q p q^{-1} s - q r) = 1` becomes decidable
//! through that reduction. All divisions are right divisions, matching
//! the `[x : y] = x y^{-1}` convention.

use crate::arith::SplitMix64;
use crate::rat::Rat;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuatError {
    /// Doubled coordinates must share parity.
    BadParity([i128; 4]),
    EqualPoints,
    ZeroPoint,
    /// Division chain exceeded the step bound (cannot happen for the
    /// Hurwitz order; kept as a guard).
    ReductionStuck,
    /// Counting threshold below the supported desk scale.
    ScaleBound {
        eps: Rat,
    },
}

impl fmt::Display for QuatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuatError::BadParity(d) => {
                write!(f, "doubled coordinates {d:?} must be all even or all odd")
            }
            QuatError::EqualPoints => write!(f, "endpoints must be distinct"),
            QuatError::ZeroPoint => write!(f, "projective point (0, 0) is not allowed"),
            QuatError::ReductionStuck => write!(f, "euclidean reduction exceeded its step bound"),
            QuatError::ScaleBound { eps } => {
                write!(f, "threshold {eps} is below the supported scale 1/4096")
            }
        }
    }
}

impl std::error::Error for QuatError {}

/// A Hurwitz quaternion `(d0 + d1 i + d2 j + d3 k)/2`, stored by its
/// doubled coordinates; all four share parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzQuaternion {
    d: [i128; 4],
}

impl HurwitzQuaternion {
    pub const ZERO: HurwitzQuaternion = HurwitzQuaternion { d: [0; 4] };
    pub const ONE: HurwitzQuaternion = HurwitzQuaternion { d: [2, 0, 0, 0] };

    pub fn from_doubled(d: [i128; 4]) -> Result<Self, QuatError> {
        let parity = d[0].rem_euclid(2);
        if d.iter().any(|&x| x.rem_euclid(2) != parity) {
            return Err(QuatError::BadParity(d));
        }
        Ok(HurwitzQuaternion { d })
    }

    /// A Lipschitz point `a + bi + cj + dk`.
    pub fn lipschitz(a: i128, b: i128, c: i128, d: i128) -> Self {
        HurwitzQuaternion {
            d: [2 * a, 2 * b, 2 * c, 2 * d],
        }
    }

    pub fn doubled(&self) -> [i128; 4] {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d == [0; 4]
    }

    /// True when the point is Lipschitz (integer coordinates).
    pub fn is_lipschitz(&self) -> bool {
        self.d[0] % 2 == 0
    }

    /// Reduced norm, an integer on the order.
    pub fn norm(&self) -> i128 {
        let s: i128 = self.d.iter().map(|&x| x * x).sum();
        debug_assert_eq!(s % 4, 0);
        s / 4
    }

    /// Reduced trace, an integer on the order.
    pub fn trace(&self) -> i128 {
        self.d[0]
    }

    pub fn conj(&self) -> Self {
        HurwitzQuaternion {
            d: [self.d[0], -self.d[1], -self.d[2], -self.d[3]],
        }
    }

    pub fn neg(&self) -> Self {
        HurwitzQuaternion {
            d: [-self.d[0], -self.d[1], -self.d[2], -self.d[3]],
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        HurwitzQuaternion {
            d: [
                self.d[0] + o.d[0],
                self.d[1] + o.d[1],
                self.d[2] + o.d[2],
                self.d[3] + o.d[3],
            ],
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = quat_mul_i128(self.d, o.d);
        debug_assert!(p.iter().all(|&x| x % 2 == 0));
        let out = HurwitzQuaternion {
            d: [p[0] / 2, p[1] / 2, p[2] / 2, p[3] / 2],
        };
        debug_assert!({
            let parity = out.d[0].rem_euclid(2);
            out.d.iter().all(|&x| x.rem_euclid(2) == parity)
        });
        out
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn to_quat(&self) -> Quat {
        Quat {
            c: self.d.map(|x| Rat::new(x, 2)),
        }
    }

    /// The 24 units: the 8 Lipschitz units and the 16 half-point units.
    pub fn units() -> Vec<HurwitzQuaternion> {
        let mut out = Vec::with_capacity(24);
        for axis in 0..4 {
            for sign in [2i128, -2] {
                let mut d = [0i128; 4];
                d[axis] = sign;
                out.push(HurwitzQuaternion { d });
            }
        }
        for s0 in [1i128, -1] {
            for s1 in [1i128, -1] {
                for s2 in [1i128, -1] {
                    for s3 in [1i128, -1] {
                        out.push(HurwitzQuaternion {
                            d: [s0, s1, s2, s3],
                        });
                    }
                }
            }
        }
        out
    }

    /// All order elements of the given norm.
    pub fn elements_of_norm(n: i128) -> Vec<HurwitzQuaternion> {
        assert!(n >= 0);
        // doubled coordinates satisfy d0^2 + d1^2 + d2^2 + d3^2 = 4n
        let target = 4 * n;
        let bound = crate::arith::isqrt_i128(target);
        let mut out = Vec::new();
        for d0 in -bound..=bound {
            let r0 = target - d0 * d0;
            let b1 = crate::arith::isqrt_i128(r0);
            for d1 in -b1..=b1 {
                if (d1 - d0) % 2 != 0 {
                    continue;
                }
                let r1 = r0 - d1 * d1;
                let b2 = crate::arith::isqrt_i128(r1);
                for d2 in -b2..=b2 {
                    if (d2 - d0) % 2 != 0 {
                        continue;
                    }
                    let r2 = r1 - d2 * d2;
                    if let Some(d3) = crate::arith::perfect_sqrt(r2) {
                        if (d3 - d0) % 2 != 0 {
                            continue;
                        }
                        out.push(HurwitzQuaternion {
                            d: [d0, d1, d2, d3],
                        });
                        if d3 != 0 {
                            out.push(HurwitzQuaternion {
                                d: [d0, d1, d2, -d3],
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for HurwitzQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+{}i+{}j+{}k)/2",
            self.d[0], self.d[1], self.d[2], self.d[3]
        )
    }
}

fn quat_mul_i128(a: [i128; 4], b: [i128; 4]) -> [i128; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// An element of the rational quaternion algebra, exact coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quat {
    pub c: [Rat; 4],
}

impl Quat {
    pub const ZERO: Quat = Quat { c: [Rat::ZERO; 4] };
    pub const ONE: Quat = Quat {
        c: [Rat::ONE, Rat::ZERO, Rat::ZERO, Rat::ZERO],
    };

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Quat) -> Quat {
        Quat {
            c: [
                self.c[0] + o.c[0],
                self.c[1] + o.c[1],
                self.c[2] + o.c[2],
                self.c[3] + o.c[3],
            ],
        }
    }

    pub fn sub(&self, o: &Quat) -> Quat {
        Quat {
            c: [
                self.c[0] - o.c[0],
                self.c[1] - o.c[1],
                self.c[2] - o.c[2],
                self.c[3] - o.c[3],
            ],
        }
    }

    pub fn neg(&self) -> Quat {
        Quat {
            c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]],
        }
    }

    pub fn mul(&self, o: &Quat) -> Quat {
        let a = &self.c;
        let b = &o.c;
        Quat {
            c: [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ],
        }
    }

    pub fn conj(&self) -> Quat {
        Quat {
            c: [self.c[0], -self.c[1], -self.c[2], -self.c[3]],
        }
    }

    pub fn norm(&self) -> Rat {
        self.c.iter().fold(Rat::ZERO, |acc, &x| acc + x * x)
    }

    pub fn trace(&self) -> Rat {
        self.c[0] + self.c[0]
    }

    pub fn inverse(&self) -> Option<Quat> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let cj = self.conj();
        Some(Quat {
            c: cj.c.map(|x| x / n),
        })
    }

    /// Exact conversion into the order, when the value lies there.
    pub fn to_hurwitz(&self) -> Option<HurwitzQuaternion> {
        let two = Rat::integer(2);
        let mut d = [0i128; 4];
        for (out, &x) in d.iter_mut().zip(self.c.iter()) {
            let v = x * two;
            if !v.is_integer() {
                return None;
            }
            *out = v.num();
        }
        HurwitzQuaternion::from_doubled(d).ok()
    }
}

/// Nearest order point to `z` (squared distance at most 1/2): the better
/// of the per-coordinate roundings on the two cosets, with ties broken
/// on the residual so the choice is translation equivariant.
pub fn nearest_hurwitz(z: &Quat) -> HurwitzQuaternion {
    let half = Rat::new(1, 2);
    let round = |x: Rat| -> i128 { (x + half).floor() };
    let lips = HurwitzQuaternion {
        d: z.c.map(|x| 2 * round(x)),
    };
    let deep = HurwitzQuaternion {
        d: z.c.map(|x| 2 * round(x - half) + 1),
    };
    let key = |w: &HurwitzQuaternion| {
        let r = z.sub(&w.to_quat());
        (r.norm(), r.c)
    };
    let (kl, kd) = (key(&lips), key(&deep));
    let best = if kl <= kd { lips } else { deep };
    debug_assert!(z.sub(&best.to_quat()).norm() <= half);
    best
}

/// 2x2 matrix over the order; projective equality identifies `M` and
/// `-M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuatMatrix {
    pub a: HurwitzQuaternion,
    pub b: HurwitzQuaternion,
    pub c: HurwitzQuaternion,
    pub d: HurwitzQuaternion,
}

impl QuatMatrix {
    pub fn identity() -> Self {
        QuatMatrix {
            a: HurwitzQuaternion::ONE,
            b: HurwitzQuaternion::ZERO,
            c: HurwitzQuaternion::ZERO,
            d: HurwitzQuaternion::ONE,
        }
    }

    pub fn mul(&self, o: &QuatMatrix) -> QuatMatrix {
        QuatMatrix {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// Square of the Dieudonne determinant,
    /// `n(ad) + n(bc) - tr(a conj(c) d conj(b))`, exact.
    pub fn det_sq(&self) -> Rat {
        det_sq_parts(
            &self.a.to_quat(),
            &self.b.to_quat(),
            &self.c.to_quat(),
            &self.d.to_quat(),
        )
    }

    /// The determinant itself, as a real number.
    pub fn det(&self) -> f64 {
        self.det_sq().to_f64().sqrt()
    }

    /// `M` and `-M` act identically.
    pub fn proj_eq(&self, o: &QuatMatrix) -> bool {
        self == o
            || (self.a == o.a.neg()
                && self.b == o.b.neg()
                && self.c == o.c.neg()
                && self.d == o.d.neg())
    }

    /// Images of infinity and zero under the homography action.
    pub fn endpoint_pair(&self) -> (Option<Quat>, Option<Quat>) {
        let at_inf = self
            .c
            .to_quat()
            .inverse()
            .map(|ci| self.a.to_quat().mul(&ci));
        let at_zero = self
            .d
            .to_quat()
            .inverse()
            .map(|di| self.b.to_quat().mul(&di));
        (at_inf, at_zero)
    }
}

fn det_sq_parts(a: &Quat, b: &Quat, c: &Quat, d: &Quat) -> Rat {
    let ad = a.mul(d);
    let bc = b.mul(c);
    let chain = a.mul(&c.conj()).mul(d).mul(&b.conj());
    ad.norm() + bc.norm() - chain.trace()
}

/// Dieudonne determinant squared for a matrix over the whole algebra.
pub fn dieudonne_det_sq(a: &Quat, b: &Quat, c: &Quat, d: &Quat) -> Rat {
    det_sq_parts(a, b, c, d)
}

/// The alternate form `n(c a c^{-1} d - c b)` from the lower-left entry,
/// valid whenever `c != 0`.
pub fn dieudonne_det_sq_alternate(a: &Quat, b: &Quat, c: &Quat, d: &Quat) -> Option<Rat> {
    let ci = c.inverse()?;
    Some(c.mul(a).mul(&ci).mul(d).sub(&c.mul(b)).norm())
}

/// A point of the right projective line, given by `(p, q)` over the
/// order with value `p q^{-1}` (`q = 0` is infinity).
#[derive(Debug, Clone, Copy)]
pub struct QuatPoint {
    pub p: HurwitzQuaternion,
    pub q: HurwitzQuaternion,
}

impl QuatPoint {
    pub fn new(p: HurwitzQuaternion, q: HurwitzQuaternion) -> Result<Self, QuatError> {
        if p.is_zero() && q.is_zero() {
            return Err(QuatError::ZeroPoint);
        }
        Ok(QuatPoint { p, q })
    }

    pub fn infinity() -> Self {
        QuatPoint {
            p: HurwitzQuaternion::ONE,
            q: HurwitzQuaternion::ZERO,
        }
    }

    pub fn zero() -> Self {
        QuatPoint {
            p: HurwitzQuaternion::ZERO,
            q: HurwitzQuaternion::ONE,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// The value `p q^{-1}`; `None` at infinity.
    pub fn value(&self) -> Option<Quat> {
        let qi = self.q.to_quat().inverse()?;
        Some(self.p.to_quat().mul(&qi))
    }

    pub fn same_point(&self, o: &QuatPoint) -> bool {
        match (self.value(), o.value()) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Simultaneous translation by an order element.
    pub fn translate(&self, w: &HurwitzQuaternion) -> QuatPoint {
        QuatPoint {
            p: self.p.add(&w.mul(&self.q)),
            q: self.q,
        }
    }
}

/// Result of the right-division chain on a column `(p, q)`.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Terminal pair `(g, 0)`.
    pub terminal: HurwitzQuaternion,
    /// `forward` has `(p, q)^T = forward * (g, 0)^T` and unit
    /// determinant; its columns are a reduced representation.
    pub forward: QuatMatrix,
    /// Exact inverse of `forward` (product of the elementary steps).
    pub inverse: QuatMatrix,
    pub steps: usize,
}

/// Division chain `p = w q + r` with `n(r) <= n(q)/2` at every step,
/// down to a zero remainder. The accumulated elementary matrices lie in
/// `SL2(O)` and reproduce `(p, q)` from the terminal pair.
pub fn euclidean_reduce(
    p: &HurwitzQuaternion,
    q: &HurwitzQuaternion,
) -> Result<Reduction, QuatError> {
    if p.is_zero() && q.is_zero() {
        return Err(QuatError::ZeroPoint);
    }
    let mut a = *p;
    let mut b = *q;
    let mut forward = QuatMatrix::identity();
    let mut inverse = QuatMatrix::identity();
    let mut steps = 0usize;
    while !b.is_zero() {
        steps += 1;
        if steps > 200 {
            return Err(QuatError::ReductionStuck);
        }
        let w = nearest_hurwitz(&a.to_quat().mul(&b.to_quat().inverse().expect("b nonzero")));
        let r = a.sub(&w.mul(&b));
        debug_assert!(2 * r.norm() <= b.norm());
        // (a, b)^T = [[w, 1], [1, 0]] (b, r)^T
        let step = QuatMatrix {
            a: w,
            b: HurwitzQuaternion::ONE,
            c: HurwitzQuaternion::ONE,
            d: HurwitzQuaternion::ZERO,
        };
        let step_inv = QuatMatrix {
            a: HurwitzQuaternion::ZERO,
            b: HurwitzQuaternion::ONE,
            c: HurwitzQuaternion::ONE,
            d: w.neg(),
        };
        forward = forward.mul(&step);
        inverse = step_inv.mul(&inverse);
        a = b;
        b = r;
    }
    debug_assert_eq!(forward.det_sq(), Rat::ONE);
    Ok(Reduction {
        terminal: a,
        forward,
        inverse,
        steps,
    })
}

impl Reduction {
    /// The order element `w` with `inverse . y = w`, when `inverse . y`
    /// lies in the order; pure integer arithmetic.
    pub fn shift_to(&self, y: &QuatPoint) -> Result<Option<HurwitzQuaternion>, QuatError> {
        let p = self.inverse.a.mul(&y.p).add(&self.inverse.b.mul(&y.q));
        let q = self.inverse.c.mul(&y.p).add(&self.inverse.d.mul(&y.q));
        if q.is_zero() {
            // inverse . y = infinity forces y = x
            return Err(QuatError::EqualPoints);
        }
        // p q^{-1} = p conj(q)/n(q) lies in O iff n(q) divides the
        // doubled coordinates with consistent parity
        let z = p.mul(&q.conj());
        let n = q.norm();
        let mut d = [0i128; 4];
        for (out, &zi) in d.iter_mut().zip(z.doubled().iter()) {
            if zi % n != 0 {
                return Ok(None);
            }
            *out = zi / n;
        }
        Ok(HurwitzQuaternion::from_doubled(d).ok())
    }

    /// Witness matrix sending `(infinity, 0)` to the reduced point and
    /// `y`, when `y` is a Farey neighbour of it.
    pub fn witness_to(&self, y: &QuatPoint) -> Result<Option<QuatMatrix>, QuatError> {
        let Some(w) = self.shift_to(y)? else {
            return Ok(None);
        };
        let shift = QuatMatrix {
            a: HurwitzQuaternion::ONE,
            b: w,
            c: HurwitzQuaternion::ZERO,
            d: HurwitzQuaternion::ONE,
        };
        let gamma = self.forward.mul(&shift);
        debug_assert_eq!(gamma.det_sq(), Rat::ONE);
        Ok(Some(gamma))
    }
}

/// Witness for the Farey relation: a matrix in `SL2(O)` sending
/// `(infinity, 0)` to `(x, y)`, or `None` when no such matrix exists.
///
/// The first point is reduced by the Euclidean chain to a matrix `A`
/// with `A . infinity = x`; a witness exists iff `A^{-1} . y` lies in
/// the order, and then `gamma = A [[1, w], [0, 1]]` for that value `w`.
pub fn quat_farey_witness(x: &QuatPoint, y: &QuatPoint) -> Result<Option<QuatMatrix>, QuatError> {
    if x.same_point(y) {
        return Err(QuatError::EqualPoints);
    }
    euclidean_reduce(&x.p, &x.q)?.witness_to(y)
}

/// Whether `x` and `y` are Farey neighbours with respect to the order.
pub fn is_quat_farey(x: &QuatPoint, y: &QuatPoint) -> Result<bool, QuatError> {
    Ok(quat_farey_witness(x, y)?.is_some())
}

type ValueKey = (Option<[Rat; 4]>, Option<[Rat; 4]>);

/// Canonical key of an unordered pair of values modulo simultaneous
/// order translation: subtract the nearest order point of the first
/// finite endpoint, take the smaller orientation.
pub(crate) fn pair_value_key(x: &Option<Quat>, y: &Option<Quat>) -> ValueKey {
    let mut best: Option<ValueKey> = None;
    for (u, v) in [(x, y), (y, x)] {
        let anchor = match u.as_ref().or(v.as_ref()) {
            Some(val) => nearest_hurwitz(val).to_quat(),
            None => Quat::ZERO,
        };
        let shift = |t: &Option<Quat>| t.as_ref().map(|val| val.sub(&anchor).c);
        let key = (shift(u), shift(v));
        if best.is_none() || key < *best.as_ref().unwrap() {
            best = Some(key);
        }
    }
    best.unwrap()
}

/// Count unordered Farey pairs with respect to the order, modulo
/// simultaneous translation, with `n(beta - alpha) >= eps` exactly.
///
/// Pairs correspond to completable bottom rows `(q, s)` (modulo right
/// unit scaling of each entry) with `n(q) n(s) <= 1/eps`, since the gap
/// of a unit-determinant completion is exactly `1/(n(q) n(s))`; each
/// completable row carries `|O^x|` translation classes, enumerated by
/// left unit scaling and deduplicated by canonical keys.
pub fn count_quat_farey_pairs(eps: Rat, threads: usize) -> Result<u64, QuatError> {
    assert!(eps > Rat::ZERO);
    if eps > Rat::ONE {
        return Ok(0);
    }
    if eps < Rat::new(1, 4096) {
        return Err(QuatError::ScaleBound { eps });
    }
    let cap = eps.den() / eps.num();
    let mut canonical: Vec<HurwitzQuaternion> = Vec::new();
    let units = HurwitzQuaternion::units();
    {
        let mut seen = HashSet::new();
        for n in 1..=cap {
            for e in HurwitzQuaternion::elements_of_norm(n) {
                let key = units
                    .iter()
                    .map(|u| e.mul(u).doubled())
                    .min()
                    .expect("unit list nonempty");
                if seen.insert(key) {
                    canonical.push(HurwitzQuaternion::from_doubled(key).expect("parity"));
                }
            }
        }
    }

    let worker = |offset: usize, stride: usize| -> HashSet<ValueKey> {
        let mut keys = HashSet::new();
        let mut i = offset;
        while i < canonical.len() {
            let q = canonical[i];
            i += stride;
            let nq = q.norm();
            for s in &canonical {
                if nq * s.norm() > cap {
                    continue;
                }
                // row reduction: (q, s) = (g, 0) U with U in SL2(O)
                let Some((g, u_mat)) = reduce_row(&q, s) else {
                    continue;
                };
                if !g.is_unit() {
                    continue;
                }
                let v = QuatMatrix {
                    a: HurwitzQuaternion::ZERO,
                    b: g.conj().neg(),
                    c: g,
                    d: HurwitzQuaternion::ZERO,
                };
                let gamma0 = v.mul(&u_mat);
                debug_assert_eq!(gamma0.det_sq(), Rat::ONE);
                let (alpha0, beta0) = gamma0.endpoint_pair();
                let alpha0 = alpha0.expect("q nonzero");
                let beta0 = beta0.expect("s nonzero");
                debug_assert_eq!(
                    alpha0.sub(&beta0).norm() * Rat::integer(nq * s.norm()),
                    Rat::ONE
                );
                for a_unit in &units {
                    let au = a_unit.to_quat();
                    let alpha = au.mul(&alpha0);
                    let beta = au.mul(&beta0);
                    keys.insert(pair_value_key(&Some(alpha), &Some(beta)));
                }
            }
        }
        keys
    };

    let threads = threads.clamp(1, 64);
    if threads == 1 {
        return Ok(worker(0, 1).len() as u64);
    }
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| scope.spawn(move || worker(t, threads)))
            .collect();
        let mut merged: HashSet<ValueKey> = HashSet::new();
        for h in handles {
            merged.extend(h.join().unwrap());
        }
        merged.len() as u64
    }))
}

/// Row version of the division chain: returns `(g, U)` with
/// `(q, s) = (g, 0) U` and `U` in `SL2(O)`. The row is completable to a
/// matrix of `SL2(O)` iff `g` is a unit.
fn reduce_row(
    q: &HurwitzQuaternion,
    s: &HurwitzQuaternion,
) -> Option<(HurwitzQuaternion, QuatMatrix)> {
    if q.is_zero() && s.is_zero() {
        return None;
    }
    let mut a = *q;
    let mut b = *s;
    let mut u_mat = QuatMatrix::identity();
    let mut steps = 0;
    while !b.is_zero() {
        steps += 1;
        if steps > 200 {
            return None;
        }
        // right division: a = b w + r
        let w = nearest_hurwitz(&b.to_quat().inverse().expect("b nonzero").mul(&a.to_quat()));
        let r = a.sub(&b.mul(&w));
        debug_assert!(2 * r.norm() <= b.norm());
        // (a, b) = (b, r) [[w, 1], [1, 0]]
        let step = QuatMatrix {
            a: w,
            b: HurwitzQuaternion::ONE,
            c: HurwitzQuaternion::ONE,
            d: HurwitzQuaternion::ZERO,
        };
        u_mat = step.mul(&u_mat);
        a = b;
        b = r;
    }
    Some((a, u_mat))
}

/// Deterministic sample of order elements with norm at most `max_norm`,
/// for seeded property checks.
pub fn sample_hurwitz(rng: &mut SplitMix64, max_norm: i128) -> HurwitzQuaternion {
    let bound = crate::arith::isqrt_i128(max_norm) as i64;
    loop {
        let halved = rng.below(2) == 1;
        let mut d = [0i128; 4];
        for x in d.iter_mut() {
            let v = rng.range_i64(-bound, bound) as i128;
            *x = 2 * v + if halved { 1 } else { 0 };
        }
        let h = HurwitzQuaternion::from_doubled(d).expect("parity by construction");
        if !h.is_zero() && h.norm() <= max_norm {
            return h;
        }
    }
}
