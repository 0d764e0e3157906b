//! Exact-aware matrix groups: SL(2,R) elements with optional exact annotations,
//! conjugacy classification, rotations, and block-unitary elements.
//!
//! Classification is sound only because exact tags take precedence over the
//! numeric trace test; numeric traces inside the ambiguity band around ±2 are
//! a hard error, never a guess.

use crate::error::{Error, Result};
use crate::rational::{q, q_mod, q_render, q_to_f64, qi, QMat2, Q};
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Tolerance for numeric |trace| - 2 decisions.
pub const EPS_CLASS: f64 = 1e-9;
/// Tolerance on det - 1 for numeric elements.
pub const EPS_DET: f64 = 1e-12;

/// Exact annotation carried alongside the numeric entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExactTag {
    /// Four exact rationals with ad - bc = 1 exactly.
    #[serde(rename = "rational_entries")]
    RationalEntries(QMat2Ser),
    /// The rotation matrix k(t*pi) for an exact rational t in [0, 2).
    #[serde(rename = "rotation_by_pi")]
    RotationByPi(String),
}

/// Serialization shim: rational matrices travel as four "p/q" strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMat2Ser(pub [String; 4]);

impl QMat2Ser {
    pub fn from_mat(m: &QMat2) -> Self {
        QMat2Ser([q_render(&m.a), q_render(&m.b), q_render(&m.c), q_render(&m.d)])
    }
    pub fn to_mat(&self) -> Result<QMat2> {
        let p = |s: &str| {
            crate::rational::q_parse(s)
                .ok_or_else(|| Error::BadCertificate(format!("bad rational '{s}'")))
        };
        Ok(QMat2::new(p(&self.0[0])?, p(&self.0[1])?, p(&self.0[2])?, p(&self.0[3])?))
    }
}

/// An element of SL(2,R): IEEE-double entries plus an optional exact tag.
#[derive(Clone, Debug)]
pub struct Sl2 {
    /// Entries (a, b, c, d) of [a b; c d].
    pub m: [f64; 4],
    pub tag: Option<Tag>,
}

/// Internal exact tag (parsed form of `ExactTag`).
#[derive(Clone, Debug, PartialEq)]
pub enum Tag {
    Rational(QMat2),
    /// k(t*pi) with t in [0,2) exact.
    Rotation(Q),
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6} {:.6}; {:.6} {:.6}]", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

pub fn rotation_entries(theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [c, -s, s, c]
}

impl Sl2 {
    pub fn from_f64(m: [f64; 4]) -> Result<Self> {
        let det = m[0] * m[3] - m[1] * m[2];
        if (det - 1.0).abs() > EPS_DET {
            return Err(Error::BadCertificate(format!("det = {det}, not 1")));
        }
        Ok(Sl2 { m, tag: None })
    }

    pub fn from_rational(q: QMat2) -> Self {
        assert!(q.det().is_one(), "rational matrix must have det exactly 1");
        Sl2 { m: q.to_f64(), tag: Some(Tag::Rational(q)) }
    }

    pub fn from_rational_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_rational(QMat2::from_i64(a, b, c, d))
    }

    /// k(t*pi), t exact rational (normalized mod 2).
    pub fn rotation_by_pi(t: Q) -> Self {
        let t = q_mod(&t, 2);
        let theta = q_to_f64(&t) * PI;
        Sl2 { m: rotation_entries(theta), tag: Some(Tag::Rotation(t)) }
    }

    pub fn identity() -> Self {
        Self::from_rational(QMat2::identity())
    }

    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    pub fn exact_mat(&self) -> Option<QMat2> {
        match &self.tag {
            Some(Tag::Rational(m)) => Some(m.clone()),
            Some(Tag::Rotation(t)) => rational_rotation(t),
            None => None,
        }
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        let a = &self.m;
        let b = &o.m;
        let m = [
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ];
        let tag = combine_tags(self, o);
        let mut r = Sl2 { m, tag };
        r.resync_from_tag();
        r
    }

    pub fn inverse(&self) -> Sl2 {
        let m = [self.m[3], -self.m[1], -self.m[2], self.m[0]];
        let tag = match &self.tag {
            Some(Tag::Rotation(t)) => Some(Tag::Rotation(q_mod(&(-t), 2))),
            Some(Tag::Rational(x)) => Some(Tag::Rational(x.inv_unimodular())),
            None => None,
        };
        let mut r = Sl2 { m, tag };
        r.resync_from_tag();
        r
    }

    /// conj * self * conj^{-1}. The conjugator may be any det > 0 matrix; the
    /// action is projective so only its class matters. Exactness survives when
    /// both are rational.
    pub fn conjugate_by(&self, p: &Sl2) -> Sl2 {
        let pi = p.inverse();
        p.mul(self).mul(&pi)
    }

    /// Entrywise conjugation by diag(1,-1): the involution that negates
    /// signatures.
    pub fn mirror(&self) -> Sl2 {
        let m = [self.m[0], -self.m[1], -self.m[2], self.m[3]];
        let tag = match &self.tag {
            Some(Tag::Rational(x)) => Some(Tag::Rational(x.mirror())),
            Some(Tag::Rotation(t)) => Some(Tag::Rotation(q_mod(&(-t), 2))),
            None => None,
        };
        let mut r = Sl2 { m, tag };
        r.resync_from_tag();
        r
    }

    pub fn neg(&self) -> Sl2 {
        let m = [-self.m[0], -self.m[1], -self.m[2], self.m[3] * -1.0];
        let tag = match &self.tag {
            Some(Tag::Rational(x)) => Some(Tag::Rational(x.neg())),
            Some(Tag::Rotation(t)) => Some(Tag::Rotation(q_mod(&(t + qi(1)), 2))),
            None => None,
        };
        let mut r = Sl2 { m, tag };
        r.resync_from_tag();
        r
    }

    pub fn dist_to(&self, o: &Sl2) -> f64 {
        (0..4).map(|i| (self.m[i] - o.m[i]).abs()).fold(0.0, f64::max)
    }

    pub fn dist_to_plus_minus_identity(&self) -> f64 {
        let id = [1.0, 0.0, 0.0, 1.0];
        let d1 = (0..4).map(|i| (self.m[i] - id[i]).abs()).fold(0.0, f64::max);
        let d2 = (0..4).map(|i| (self.m[i] + id[i]).abs()).fold(0.0, f64::max);
        d1.min(d2)
    }

    /// Keep numeric entries bit-aligned with the exact tag after exact ops.
    fn resync_from_tag(&mut self) {
        match &self.tag {
            Some(Tag::Rational(x)) => self.m = x.to_f64(),
            Some(Tag::Rotation(t)) => self.m = rotation_entries(q_to_f64(t) * PI),
            None => {}
        }
    }

    pub fn exact_tag_ser(&self) -> Option<ExactTag> {
        match &self.tag {
            Some(Tag::Rational(m)) => Some(ExactTag::RationalEntries(QMat2Ser::from_mat(m))),
            Some(Tag::Rotation(t)) => Some(ExactTag::RotationByPi(q_render(t))),
            None => None,
        }
    }
}

/// Exact tag of a product; central factors are absorbed so that mixed
/// rational/rotation words through ±I stay exact.
fn combine_tags(a: &Sl2, b: &Sl2) -> Option<Tag> {
    let central = |g: &Sl2| -> Option<bool> {
        // Some(true) for +I, Some(false) for -I.
        match &g.tag {
            Some(Tag::Rational(m)) if m.is_identity() => Some(true),
            Some(Tag::Rational(m)) if m.is_minus_identity() => Some(false),
            Some(Tag::Rotation(t)) if t.is_zero() => Some(true),
            Some(Tag::Rotation(t)) if t.is_one() => Some(false),
            _ => None,
        }
    };
    let negate = |tag: &Tag| match tag {
        Tag::Rational(m) => Tag::Rational(m.neg()),
        Tag::Rotation(t) => Tag::Rotation(q_mod(&(t + qi(1)), 2)),
    };
    match (central(a), central(b)) {
        (Some(plus), _) => b.tag.as_ref().map(|t| if plus { t.clone() } else { negate(t) }),
        (_, Some(plus)) => a.tag.as_ref().map(|t| if plus { t.clone() } else { negate(t) }),
        _ => match (&a.tag, &b.tag) {
            (Some(Tag::Rotation(t)), Some(Tag::Rotation(s))) => {
                Some(Tag::Rotation(q_mod(&(t + s), 2)))
            }
            _ => match (a.exact_mat(), b.exact_mat()) {
                (Some(x), Some(y)) => Some(Tag::Rational(x.mul(&y))),
                _ => None,
            },
        },
    }
}

/// k(t*pi) has rational entries exactly when 2t is an integer.
fn rational_rotation(t: &Q) -> Option<QMat2> {
    let two_t = t * qi(2);
    if !two_t.denom().is_one() {
        return None;
    }
    let k = q_mod(&two_t, 4).to_integer().to_i64()?;
    Some(match k {
        0 => QMat2::identity(),
        1 => QMat2::from_i64(0, -1, 1, 0),
        2 => QMat2::identity().neg(),
        3 => QMat2::from_i64(0, 1, -1, 0),
        _ => unreachable!(),
    })
}

/// An angle theta = t*pi with t in [0,2), exact when known.
#[derive(Clone, Debug, PartialEq)]
pub struct Angle {
    pub t: f64,
    pub exact: Option<Q>,
}

impl Angle {
    pub fn exact(t: Q) -> Self {
        let t = q_mod(&t, 2);
        Angle { t: q_to_f64(&t), exact: Some(t) }
    }
    pub fn approx(t: f64) -> Self {
        Angle { t, exact: None }
    }
    pub fn radians(&self) -> f64 {
        self.t * PI
    }
}

/// Conjugacy classes of SL(2,R), refined at the parabolic locus.
#[derive(Clone, Debug, PartialEq)]
pub enum ConjClass {
    /// Rotation class of angle theta = t*pi, t in (0,2), t != 1.
    /// Orientation convention: sign(sin theta) = sign(entry c).
    Elliptic(Angle),
    /// trace = 2, mu_sign = sign of the off-diagonal in the (1, mu; 0, 1) normal form.
    ParPosTrace { mu_sign: i8 },
    /// trace = -2, mu_sign from the (-1, mu; 0, -1) normal form.
    ParNegTrace { mu_sign: i8 },
    Hyperbolic { trace_sign: i8 },
    PlusIdentity,
    MinusIdentity,
}

impl ConjClass {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, ConjClass::Elliptic(_))
    }
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, ConjClass::Hyperbolic { .. })
    }
    pub fn is_parabolic(&self) -> bool {
        matches!(self, ConjClass::ParPosTrace { .. } | ConjClass::ParNegTrace { .. })
    }
    pub fn is_central(&self) -> bool {
        matches!(self, ConjClass::PlusIdentity | ConjClass::MinusIdentity)
    }
    pub fn is_strictly_parabolic(&self) -> bool {
        matches!(self, ConjClass::ParPosTrace { .. })
    }

    /// Class of the inverse element.
    pub fn inverse(&self) -> ConjClass {
        match self {
            ConjClass::Elliptic(a) => {
                let exact = a.exact.as_ref().map(|t| q_mod(&(-t), 2));
                ConjClass::Elliptic(Angle { t: 2.0 - a.t, exact })
            }
            ConjClass::ParPosTrace { mu_sign } => ConjClass::ParPosTrace { mu_sign: -mu_sign },
            ConjClass::ParNegTrace { mu_sign } => ConjClass::ParNegTrace { mu_sign: -mu_sign },
            other => other.clone(),
        }
    }

    /// Class of the mirrored (diag(1,-1)-conjugated) element.
    pub fn mirror(&self) -> ConjClass {
        // Same as inverse on elliptics and parabolics; identical on the rest.
        self.inverse()
    }

    pub fn label(&self) -> String {
        match self {
            ConjClass::Elliptic(a) => match &a.exact {
                Some(t) => format!("elliptic({}pi)", q_render(t)),
                None => format!("elliptic({:.6}pi)", a.t),
            },
            ConjClass::ParPosTrace { mu_sign } => {
                format!("par+({})", if *mu_sign > 0 { "+" } else { "-" })
            }
            ConjClass::ParNegTrace { mu_sign } => {
                format!("par-({})", if *mu_sign > 0 { "+" } else { "-" })
            }
            ConjClass::Hyperbolic { trace_sign } => {
                format!("hyp({})", if *trace_sign > 0 { "t>0" } else { "t<0" })
            }
            ConjClass::PlusIdentity => "+I".into(),
            ConjClass::MinusIdentity => "-I".into(),
        }
    }
}

/// Conjugacy classification. Exact tags take precedence; numeric traces within
/// EPS_CLASS of ±2 without a tag are an error.
pub fn classify(g: &Sl2) -> Result<ConjClass> {
    if let Some(Tag::Rotation(t)) = &g.tag {
        return Ok(if t.is_zero() {
            ConjClass::PlusIdentity
        } else if t.is_one() {
            ConjClass::MinusIdentity
        } else {
            ConjClass::Elliptic(Angle::exact(t.clone()))
        });
    }
    if let Some(m) = g.exact_mat() {
        return classify_exact(&m);
    }
    let tr = g.trace();
    if (tr.abs() - 2.0).abs() < EPS_CLASS {
        return Err(Error::AmbiguousTrace { trace: tr, eps: EPS_CLASS });
    }
    if tr > 2.0 {
        Ok(ConjClass::Hyperbolic { trace_sign: 1 })
    } else if tr < -2.0 {
        Ok(ConjClass::Hyperbolic { trace_sign: -1 })
    } else {
        Ok(ConjClass::Elliptic(elliptic_angle_numeric(g)))
    }
}

fn classify_exact(m: &QMat2) -> Result<ConjClass> {
    let tr = m.trace();
    let two = qi(2);
    if tr == two {
        if m.is_identity() {
            return Ok(ConjClass::PlusIdentity);
        }
        return Ok(ConjClass::ParPosTrace { mu_sign: parabolic_mu_sign(m, &qi(1)) });
    }
    if tr == -two.clone() {
        if m.is_minus_identity() {
            return Ok(ConjClass::MinusIdentity);
        }
        return Ok(ConjClass::ParNegTrace { mu_sign: parabolic_mu_sign(m, &qi(-1)) });
    }
    if tr > two {
        return Ok(ConjClass::Hyperbolic { trace_sign: 1 });
    }
    if tr < -two {
        return Ok(ConjClass::Hyperbolic { trace_sign: -1 });
    }
    // Elliptic. Exact angle available when cos(theta) = tr/2 lands on a
    // rational angle (Niven: tr in {-1, 0, 1}).
    let c_pos = m.c.is_positive();
    let t_exact = if tr.is_zero() {
        Some(if c_pos { q(1, 2) } else { q(3, 2) })
    } else if tr.is_one() {
        Some(if c_pos { q(1, 3) } else { q(5, 3) })
    } else if tr == qi(-1) {
        Some(if c_pos { q(2, 3) } else { q(4, 3) })
    } else {
        None
    };
    Ok(ConjClass::Elliptic(match t_exact {
        Some(t) => Angle::exact(t),
        None => elliptic_angle_numeric(&Sl2 { m: m.to_f64(), tag: None }),
    }))
}

/// mu_sign for a parabolic with eigenvalue lambda = ±1: take the fixed
/// direction v, any w with det(v,w) = 1; then (g - lambda)w = t v and the
/// class invariant is sign(t).
fn parabolic_mu_sign(m: &QMat2, lambda: &Q) -> i8 {
    let n = QMat2::new(&m.a - lambda, m.b.clone(), m.c.clone(), &m.d - lambda);
    // v spans ker(n): rank 1, so take the larger row's kernel vector.
    let (vx, vy) = if !n.a.is_zero() || !n.b.is_zero() {
        (-n.b.clone(), n.a.clone())
    } else {
        (-n.d.clone(), n.c.clone())
    };
    // w with det(v, w) = vx*wy - vy*wx = 1.
    let (wx, wy, scale) = if !vx.is_zero() {
        (Q::zero(), Q::one(), vx.clone())
    } else {
        (-Q::one(), Q::zero(), vy.clone())
    };
    // (g - lambda) w = t * (v/scale_norm); account for the chosen normalization.
    let rx = &n.a * &wx + &n.b * &wy;
    let ry = &n.c * &wx + &n.d * &wy;
    // r = t' * v, so t' = r/v componentwise on a nonzero coordinate.
    let t = if !vx.is_zero() { &rx / &vx } else { &ry / &vy };
    let t = t * &scale / scale.abs();
    debug_assert!(!t.is_zero(), "strictly parabolic element must translate");
    if t.is_positive() {
        1
    } else {
        -1
    }
}

fn elliptic_angle_numeric(g: &Sl2) -> Angle {
    let cos = (g.trace() / 2.0).clamp(-1.0, 1.0);
    let theta = cos.acos(); // in (0, pi)
    let t = if g.m[2] >= 0.0 { theta / PI } else { 2.0 - theta / PI };
    Angle::approx(t)
}

/// Rotation angle theta in (0, 2pi) of an elliptic element, with
/// cos(theta) = tr/2 and sign(sin theta) = sign(c).
pub fn elliptic_angle(g: &Sl2) -> Result<Angle> {
    match classify(g)? {
        ConjClass::Elliptic(a) => Ok(a),
        _ => Err(Error::NotElliptic),
    }
}

/// Block-unitary elements of U(p,q).
#[derive(Clone, Debug)]
pub enum Unitary {
    /// diag(e^{i th_1}, ..., e^{i th_{p+q}}); first p factors carry the positive
    /// part of the Hermitian form, the last q the negative part. Angles exact
    /// rationals times pi, in [0, 2).
    DiagonalTorus { p: usize, q: usize, angles: Vec<Q> },
    /// A unitary (p+q)x(p+q) matrix, entries as (re, im) pairs, row major.
    BlockMatrix { p: usize, q: usize, entries: Vec<(f64, f64)> },
    /// Direct sum of SL(2,R) blocks embedded via SL(2,R)^p < SU(p,p).
    Sl2Blocks(Vec<Sl2>),
}

impl Unitary {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Unitary::DiagonalTorus { p, q, .. } => (*p, *q),
            Unitary::BlockMatrix { p, q, .. } => (*p, *q),
            Unitary::Sl2Blocks(v) => (v.len(), v.len()),
        }
    }

    pub fn identity_torus(p: usize, q: usize) -> Self {
        Unitary::DiagonalTorus { p, q, angles: vec![Q::zero(); p + q] }
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<nalgebra::Complex<f64>> {
        use nalgebra::{Complex, DMatrix};
        match self {
            Unitary::DiagonalTorus { p, q, angles } => {
                let n = p + q;
                let mut m = DMatrix::zeros(n, n);
                for (j, t) in angles.iter().enumerate() {
                    let th = q_to_f64(t) * PI;
                    m[(j, j)] = Complex::new(th.cos(), th.sin());
                }
                m
            }
            Unitary::BlockMatrix { p, q, entries } => {
                let n = p + q;
                DMatrix::from_fn(n, n, |i, j| {
                    let (re, im) = entries[i * n + j];
                    Complex::new(re, im)
                })
            }
            Unitary::Sl2Blocks(_) => {
                panic!("SL2 block elements are handled by the symplectic pipeline")
            }
        }
    }

    pub fn mul(&self, o: &Unitary) -> Unitary {
        match (self, o) {
            (
                Unitary::DiagonalTorus { p, q, angles: a },
                Unitary::DiagonalTorus { p: p2, q: q2, angles: b },
            ) if p == p2 && q == q2 => {
                let angles = a.iter().zip(b).map(|(x, y)| q_mod(&(x + y), 2)).collect();
                Unitary::DiagonalTorus { p: *p, q: *q, angles }
            }
            (Unitary::Sl2Blocks(a), Unitary::Sl2Blocks(b)) if a.len() == b.len() => {
                Unitary::Sl2Blocks(a.iter().zip(b).map(|(x, y)| x.mul(y)).collect())
            }
            _ => {
                let (p, q) = self.shape();
                let m = self.to_complex() * o.to_complex();
                let n = p + q;
                let entries = (0..n * n).map(|k| (m[(k / n, k % n)].re, m[(k / n, k % n)].im)).collect();
                Unitary::BlockMatrix { p, q, entries }
            }
        }
    }

    pub fn inverse(&self) -> Unitary {
        match self {
            Unitary::DiagonalTorus { p, q, angles } => Unitary::DiagonalTorus {
                p: *p,
                q: *q,
                angles: angles.iter().map(|t| q_mod(&(-t), 2)).collect(),
            },
            Unitary::Sl2Blocks(v) => Unitary::Sl2Blocks(v.iter().map(Sl2::inverse).collect()),
            Unitary::BlockMatrix { p, q, entries } => {
                // Unitary with respect to the (p,q) form: inverse = J adjoint J.
                let n = p + q;
                let mut out = vec![(0.0, 0.0); n * n];
                let sgn = |i: usize| if i < *p { 1.0 } else { -1.0 };
                for i in 0..n {
                    for j in 0..n {
                        let (re, im) = entries[j * n + i];
                        let s = sgn(i) * sgn(j);
                        out[i * n + j] = (s * re, -s * im);
                    }
                }
                Unitary::BlockMatrix { p: *p, q: *q, entries: out }
            }
        }
    }

    /// Complex conjugation; negates the Hermitian signature.
    pub fn conj_involution(&self) -> Unitary {
        match self {
            Unitary::DiagonalTorus { p, q, angles } => Unitary::DiagonalTorus {
                p: *p,
                q: *q,
                angles: angles.iter().map(|t| q_mod(&(-t), 2)).collect(),
            },
            Unitary::BlockMatrix { p, q, entries } => Unitary::BlockMatrix {
                p: *p,
                q: *q,
                entries: entries.iter().map(|(re, im)| (*re, -*im)).collect(),
            },
            Unitary::Sl2Blocks(v) => Unitary::Sl2Blocks(v.iter().map(Sl2::mirror).collect()),
        }
    }

    pub fn dist_to_identity(&self) -> f64 {
        match self {
            Unitary::DiagonalTorus { angles, .. } => angles
                .iter()
                .map(|t| {
                    let th = q_to_f64(&q_mod(t, 2));
                    (th.min(2.0 - th)).abs()
                })
                .fold(0.0, f64::max),
            Unitary::Sl2Blocks(v) => v
                .iter()
                .map(|g| g.dist_to(&Sl2::identity()))
                .fold(0.0, f64::max),
            Unitary::BlockMatrix { p, q, entries } => {
                let n = p + q;
                let mut d = 0.0f64;
                for i in 0..n {
                    for j in 0..n {
                        let (re, im) = entries[i * n + j];
                        let t = if i == j { ((re - 1.0).powi(2) + im * im).sqrt() } else { (re * re + im * im).sqrt() };
                        d = d.max(t);
                    }
                }
                d
            }
        }
    }

    /// Violation of the (p,q) Hermitian form invariance, for validity checks.
    pub fn form_defect(&self) -> f64 {
        match self {
            Unitary::DiagonalTorus { .. } => 0.0,
            Unitary::Sl2Blocks(v) => v
                .iter()
                .map(|g| (g.m[0] * g.m[3] - g.m[1] * g.m[2] - 1.0).abs())
                .fold(0.0, f64::max),
            Unitary::BlockMatrix { p, q, .. } => {
                use nalgebra::{Complex, DMatrix};
                let n = p + q;
                let m = self.to_complex();
                let mut j = DMatrix::<Complex<f64>>::zeros(n, n);
                for i in 0..n {
                    j[(i, i)] = Complex::new(if i < *p { 1.0 } else { -1.0 }, 0.0);
                }
                let r = m.adjoint() * &j * &m - &j;
                r.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }
        }
    }
}

/// Direct sum of SL(2,R) elements as an element of SU(p,p) in block form.
pub fn direct_sum(parts: &[Sl2]) -> Unitary {
    assert!(!parts.is_empty(), "direct sum of an empty list");
    Unitary::Sl2Blocks(parts.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn classify_spec_examples() {
        let k = Sl2::from_rational_i64(0, -1, 1, 0);
        assert_eq!(classify(&k).unwrap(), ConjClass::Elliptic(Angle::exact(q(1, 2))));

        let par = Sl2::from_rational_i64(1, 1, 0, 1);
        assert_eq!(classify(&par).unwrap(), ConjClass::ParPosTrace { mu_sign: 1 });

        let hyp = Sl2::from_rational(QMat2::new(qi(2), Q::zero(), Q::zero(), q(1, 2)));
        assert_eq!(classify(&hyp).unwrap(), ConjClass::Hyperbolic { trace_sign: 1 });
    }

    #[test]
    fn elliptic_angle_spec_examples() {
        let k = Sl2::rotation_by_pi(q(1, 2));
        assert_eq!(elliptic_angle(&k).unwrap().exact, Some(q(1, 2)));

        // trace 1, c = -1 < 0: theta = 5pi/3.
        let g = Sl2::from_rational_i64(1, 1, -1, 0);
        assert_eq!(elliptic_angle(&g).unwrap().exact, Some(q(5, 3)));

        let k3 = Sl2::from_rational_i64(0, 1, -1, 0);
        assert_eq!(elliptic_angle(&k3).unwrap().exact, Some(q(3, 2)));
    }

    #[test]
    fn ambiguous_band_is_an_error() {
        let g = Sl2::from_f64([1.0 + 1e-10, 1e-10, -1e-10, 1.0 - 1e-10]).unwrap();
        assert!(matches!(classify(&g), Err(Error::AmbiguousTrace { .. })));
    }

    #[test]
    fn rotation_tags_multiply_exactly() {
        let a = Sl2::rotation_by_pi(q(3, 4));
        let b = Sl2::rotation_by_pi(q(7, 5));
        let ab = a.mul(&b);
        assert_eq!(ab.tag, Some(Tag::Rotation(q_mod(&(q(3, 4) + q(7, 5)), 2))));
    }

    #[test]
    fn lower_triangular_parabolic_class() {
        // (1,0;m,1) with m < 0 is conjugate to (1,-m;0,1), so Par+ with mu > 0.
        let g = Sl2::from_rational_i64(1, 0, -4, 1);
        assert_eq!(classify(&g).unwrap(), ConjClass::ParPosTrace { mu_sign: 1 });
        let h = Sl2::from_rational_i64(1, 0, 4, 1);
        assert_eq!(classify(&h).unwrap(), ConjClass::ParPosTrace { mu_sign: -1 });
    }

    #[test]
    fn neg_trace_parabolic_class() {
        let g = Sl2::from_rational_i64(-1, 5, 0, -1);
        assert_eq!(classify(&g).unwrap(), ConjClass::ParNegTrace { mu_sign: 1 });
        let h = Sl2::from_rational_i64(-3, 4, -1, 1);
        // trace -2 parabolic, class determined by the normal form.
        assert!(matches!(classify(&h).unwrap(), ConjClass::ParNegTrace { .. }));
    }

    #[test]
    fn elliptic_has_nonzero_c() {
        // (a+d)^2 < 4 forces bc < 0, in particular c != 0.
        let g = Sl2::from_rational_i64(1, 1, -1, 0);
        assert!(g.m[2] != 0.0);
        let m = g.exact_mat().unwrap();
        assert!((&m.b * &m.c).is_negative());
    }
}
