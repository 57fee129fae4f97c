//! Möbius transformations on the Riemann sphere as elements of PSL(2,ℂ).
//!
//! A [`MoebiusMap`] stores a determinant-1 matrix representative, with the
//! sign fixed so that the first entry (in reading order) of modulus above
//! `1e-12` has argument in `(-π/2, π/2]`. Consumers must treat `M` and `-M`
//! as the same map; [`MoebiusMap::psl_eq`] and [`MoebiusMap::psl_dist`]
//! do so explicitly.

use crate::error::Error;
use crate::Result;
use num_complex::Complex64;

pub type Cplx = Complex64;

/// A point of the Riemann sphere: a finite complex number or ∞.
///
/// Equality of finite points is exact component equality; use
/// [`ExtComplex::chordal`] for approximate comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Cplx),
    Infinity,
}

impl ExtComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Cplx::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn as_finite(&self) -> Option<Cplx> {
        match self {
            ExtComplex::Finite(z) => Some(*z),
            ExtComplex::Infinity => None,
        }
    }

    /// Chordal distance on the sphere: `2|z-w| / sqrt((1+|z|²)(1+|w|²))`,
    /// with the usual limits at ∞. Bounded by 2.
    pub fn chordal(&self, other: &ExtComplex) -> f64 {
        match (self, other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
            (ExtComplex::Finite(z), ExtComplex::Infinity)
            | (ExtComplex::Infinity, ExtComplex::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (ExtComplex::Finite(z), ExtComplex::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    /// Lexicographic order by (re, im), with ∞ sorting last. Used for
    /// deterministic fixed-point ordering.
    pub fn lex_cmp(&self, other: &ExtComplex) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => Ordering::Equal,
            (ExtComplex::Infinity, _) => Ordering::Greater,
            (_, ExtComplex::Infinity) => Ordering::Less,
            (ExtComplex::Finite(z), ExtComplex::Finite(w)) => z
                .re
                .partial_cmp(&w.re)
                .unwrap_or(Ordering::Equal)
                .then(z.im.partial_cmp(&w.im).unwrap_or(Ordering::Equal)),
        }
    }
}

impl From<Cplx> for ExtComplex {
    fn from(z: Cplx) -> Self {
        ExtComplex::Finite(z)
    }
}

impl std::fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{}", z),
            ExtComplex::Infinity => write!(f, "inf"),
        }
    }
}

/// How a Möbius transformation moves points, refined for elliptic elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Identity,
    Parabolic,
    Elliptic { order: EllipticOrder, geometric: bool },
    Loxodromic,
}

/// Order of an elliptic element: finite, or irrational rotation (no order
/// up to the detection cap).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticOrder {
    Finite(u64),
    Irrational,
}

impl Classification {
    /// The order as a ramification-style value: ∞ for parabolic, `q` for
    /// finite elliptic, `None` for identity, irrational and loxodromic.
    pub fn order(&self) -> Option<crate::triangle::Nu> {
        match self {
            Classification::Parabolic => Some(crate::triangle::Nu::Infinity),
            Classification::Elliptic {
                order: EllipticOrder::Finite(q),
                ..
            } => Some(crate::triangle::Nu::Finite(*q)),
            _ => None,
        }
    }
}

/// Maximum order probed before declaring an elliptic rotation irrational.
pub const ELLIPTIC_ORDER_CAP: u64 = 1_000_000;

/// An element of PSL(2,ℂ), stored as a sign-normalized determinant-1 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    a: Cplx,
    b: Cplx,
    c: Cplx,
    d: Cplx,
}

impl MoebiusMap {
    /// Builds a map from matrix entries, normalizing to determinant 1 and
    /// fixing the overall sign. Fails on singular or non-finite input.
    pub fn new(a: Cplx, b: Cplx, c: Cplx, d: Cplx) -> Result<Self> {
        for z in [a, b, c, d] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::SingularMatrix);
            }
        }
        let det = a * d - b * c;
        if det.norm() < 1e-300 {
            return Err(Error::SingularMatrix);
        }
        let s = det.sqrt();
        let mut m = MoebiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        };
        m.fix_sign();
        Ok(m)
    }

    pub fn from_reals(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(
            Cplx::new(a, 0.0),
            Cplx::new(b, 0.0),
            Cplx::new(c, 0.0),
            Cplx::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Cplx::new(1.0, 0.0),
            b: Cplx::new(0.0, 0.0),
            c: Cplx::new(0.0, 0.0),
            d: Cplx::new(1.0, 0.0),
        }
    }

    /// The translation z ↦ z + t.
    pub fn translation(t: Cplx) -> Self {
        MoebiusMap::new(Cplx::new(1.0, 0.0), t, Cplx::new(0.0, 0.0), Cplx::new(1.0, 0.0))
            .expect("translation is never singular")
    }

    /// Flips the global sign so the first entry in reading order with
    /// modulus > 1e-12 has argument in (-π/2, π/2].
    fn fix_sign(&mut self) {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|z| z.norm() > 1e-12);
        if let Some(z) = lead {
            let in_range = z.re > 0.0 || (z.re == 0.0 && z.im >= 0.0);
            if !in_range {
                self.a = -self.a;
                self.b = -self.b;
                self.c = -self.c;
                self.d = -self.d;
            }
        }
    }

    pub fn entries(&self) -> (Cplx, Cplx, Cplx, Cplx) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn det(&self) -> Cplx {
        self.a * self.d - self.b * self.c
    }

    /// Trace of the stored determinant-1 representative. Only `trace²` and
    /// `|trace|` are well defined in PSL.
    pub fn trace(&self) -> Cplx {
        self.a + self.d
    }

    pub fn trace_sq(&self) -> Cplx {
        let t = self.trace();
        t * t
    }

    /// The representative of ±M whose trace has non-positive real part
    /// (the negative-trace lift when the trace is nonzero).
    pub fn negative_trace_entries(&self) -> (Cplx, Cplx, Cplx, Cplx) {
        if self.trace().re > 0.0 {
            (-self.a, -self.b, -self.c, -self.d)
        } else {
            (self.a, self.b, self.c, self.d)
        }
    }

    /// Matrix product, which realizes composition: `compose(M,N)` acts as
    /// `z ↦ M(N(z))`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        MoebiusMap::new(a, b, c, d).expect("product of invertible maps is invertible")
    }

    /// Adjugate inverse; exact for determinant-1 representatives.
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(self.d, -self.b, -self.c, self.a).expect("inverse of invertible map")
    }

    /// Conjugate `self` by `t`: returns `t · self · t⁻¹`.
    pub fn conjugate_by(&self, t: &MoebiusMap) -> MoebiusMap {
        t.compose(self).compose(&t.inverse())
    }

    /// Integer power (negative exponents via the inverse).
    pub fn pow(&self, n: i64) -> MoebiusMap {
        if n < 0 {
            return self.inverse().pow(-n);
        }
        let mut acc = MoebiusMap::identity();
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Applies the map to a point of the sphere, with explicit pole
    /// handling: the pole `-d/c` goes to ∞ and ∞ goes to `a/c` (∞ if c=0).
    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => {
                if self.c.norm() == 0.0 {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.a / self.c)
                }
            }
            ExtComplex::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    return ExtComplex::Infinity;
                }
                let w = (self.a * z + self.b) / den;
                if w.re.is_finite() && w.im.is_finite() {
                    ExtComplex::Finite(w)
                } else {
                    ExtComplex::Infinity
                }
            }
        }
    }

    /// Entrywise max-norm distance in PSL: the smaller of ‖M−N‖ and ‖M+N‖
    /// on determinant-1 representatives.
    pub fn psl_dist(&self, other: &MoebiusMap) -> f64 {
        let diff = [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
        let sum = [
            self.a + other.a,
            self.b + other.b,
            self.c + other.c,
            self.d + other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
        diff.min(sum)
    }

    /// PSL equality within `tol` (both signs are always tried).
    pub fn psl_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        self.psl_dist(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.psl_eq(&MoebiusMap::identity(), tol)
    }

    /// Fixed points, sorted lexicographically by (re, im) with ∞ last.
    /// Parabolic maps return exactly one point; the identity is an error.
    pub fn fixed_points(&self) -> Result<Vec<ExtComplex>> {
        if self.is_identity(1e-12) {
            return Err(Error::IdentityFixedPoints);
        }
        let (a, _b, c, d) = self.entries();
        let mut pts: Vec<ExtComplex> = if c.norm() == 0.0 {
            // Fixes ∞; az + b = dz has a finite solution unless a = d.
            if (a - d).norm() <= 1e-12 {
                vec![ExtComplex::Infinity]
            } else {
                vec![
                    ExtComplex::Finite(self.b / (d - a)),
                    ExtComplex::Infinity,
                ]
            }
        } else {
            let disc = self.trace_sq() - 4.0;
            if disc.norm() <= 1e-9 {
                vec![ExtComplex::Finite((a - d) / (2.0 * c))]
            } else {
                let s = disc.sqrt();
                vec![
                    ExtComplex::Finite((a - d + s) / (2.0 * c)),
                    ExtComplex::Finite((a - d - s) / (2.0 * c)),
                ]
            }
        };
        pts.sort_by(|x, y| x.lex_cmp(y));
        Ok(pts)
    }

    /// Coarse dynamical type with no elliptic order search; cheap enough
    /// for bulk word enumeration.
    pub fn classify_coarse(&self) -> Classification {
        if self.is_identity(1e-12) {
            return Classification::Identity;
        }
        let t2 = self.trace_sq();
        if (t2 - 4.0).norm() <= 1e-9 {
            return Classification::Parabolic;
        }
        if t2.im.abs() <= 1e-9 && t2.re >= -1e-9 && t2.re < 4.0 {
            return Classification::Elliptic {
                order: EllipticOrder::Irrational,
                geometric: false,
            };
        }
        Classification::Loxodromic
    }

    /// Full classification. Elliptic order detection scans orders up to
    /// [`ELLIPTIC_ORDER_CAP`], matching `|trace| = 2cos(kπ/q)` with
    /// `gcd(k,q)=1` at tolerance 1e-9 and reporting the least such `q`;
    /// the element is geometric exactly when `k = 1`.
    pub fn classify(&self) -> Classification {
        match self.classify_coarse() {
            Classification::Elliptic { .. } => {}
            other => return other,
        }
        let tol = 1e-9;
        let tr_abs = self.trace().norm().min(2.0);
        // |tr| = 2 cos(θ) with θ = πk'/q, k' = min(k, q-k) ∈ (0, 1/2].
        let x = (tr_abs / 2.0).acos() / std::f64::consts::PI;
        for q in 2..=ELLIPTIC_ORDER_CAP {
            let k = (x * q as f64).round().max(1.0) as u64;
            let k = k.min(q / 2).max(1);
            if gcd(k, q) != 1 {
                continue;
            }
            let target = 2.0 * (std::f64::consts::PI * k as f64 / q as f64).cos().abs();
            if (tr_abs - target).abs() <= tol {
                return Classification::Elliptic {
                    order: EllipticOrder::Finite(q),
                    geometric: k == 1,
                };
            }
        }
        Classification::Elliptic {
            order: EllipticOrder::Irrational,
            geometric: false,
        }
    }

    /// The unique square root of a parabolic transformation in PSL(2,ℂ).
    ///
    /// For the trace-(+2) lift `M = I + P` (P nilpotent), the root is
    /// `I + P/2`. Errors on non-parabolic input, where roots fail to be
    /// unique.
    pub fn parabolic_sqrt(&self) -> Result<MoebiusMap> {
        match self.classify_coarse() {
            Classification::Parabolic => {}
            other => return Err(Error::NotParabolic(format!("{:?}", other))),
        }
        let (mut a, mut b, mut c, mut d) = self.entries();
        if self.trace().re < 0.0 {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        let one = Cplx::new(1.0, 0.0);
        MoebiusMap::new(
            one + (a - one) / 2.0,
            b / 2.0,
            c / 2.0,
            one + (d - one) / 2.0,
        )
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Trace of the SL(2,ℂ) commutator `A·B·A⁻¹·B⁻¹`, computed on fixed
/// determinant-1 lifts without sign renormalization. The result is
/// independent of the lift choice (signs cancel in a commutator), which
/// `compose` does not guarantee because it re-normalizes signs.
pub fn commutator_trace(a: &MoebiusMap, b: &MoebiusMap) -> Cplx {
    type Raw = [Cplx; 4];
    fn raw(m: &MoebiusMap) -> Raw {
        let (a, b, c, d) = m.entries();
        [a, b, c, d]
    }
    fn adj(m: &Raw) -> Raw {
        [m[3], -m[1], -m[2], m[0]]
    }
    fn mul(x: &Raw, y: &Raw) -> Raw {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    }
    let (ra, rb) = (raw(a), raw(b));
    let m = mul(&mul(&ra, &rb), &mul(&adj(&ra), &adj(&rb)));
    m[0] + m[3]
}

/// The unique Möbius transformation sending `(a, b, c)` to `(∞, 0, 1)`.
pub fn map_to_standard(a: ExtComplex, b: ExtComplex, c: ExtComplex) -> Result<MoebiusMap> {
    check_distinct(&[a, b, c])?;
    let one = Cplx::new(1.0, 0.0);
    let zero = Cplx::new(0.0, 0.0);
    // w ↦ ((w-b)(c-a)) / ((w-a)(c-b)), degenerating as anchors hit ∞.
    match (a, b, c) {
        (ExtComplex::Infinity, ExtComplex::Finite(b), ExtComplex::Finite(c)) => {
            MoebiusMap::new(one, -b, zero, c - b)
        }
        (ExtComplex::Finite(a), ExtComplex::Infinity, ExtComplex::Finite(c)) => {
            MoebiusMap::new(zero, c - a, one, -a)
        }
        (ExtComplex::Finite(a), ExtComplex::Finite(b), ExtComplex::Infinity) => {
            MoebiusMap::new(one, -b, one, -a)
        }
        (ExtComplex::Finite(a), ExtComplex::Finite(b), ExtComplex::Finite(c)) => {
            MoebiusMap::new(c - a, -b * (c - a), c - b, -a * (c - b))
        }
        _ => unreachable!("distinctness leaves at most one anchor at infinity"),
    }
}

/// Cross ratio normalized by `cr(∞,0,1,z) = z`: the image of `z` under the
/// map sending `(a,b,c)` to `(∞,0,1)`. Invariant under simultaneous Möbius
/// action on all four arguments.
pub fn cross_ratio(
    a: ExtComplex,
    b: ExtComplex,
    c: ExtComplex,
    z: ExtComplex,
) -> Result<ExtComplex> {
    let t = map_to_standard(a, b, c)?;
    Ok(t.apply(z))
}

fn check_distinct(pts: &[ExtComplex]) -> Result<()> {
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateTriple(format!(
                    "arguments {} and {} are both {}",
                    i, j, pts[i]
                )));
            }
        }
    }
    Ok(())
}
