//! Exact rational scalars and 2x2 rational matrices.
//!
//! All planner-emitted angles are exact rationals t (meaning t*pi) and all
//! planner-emitted parabolic/hyperbolic matrices have rational entries, so rho
//! and parity statements are computed exactly. Floating point exists only to
//! feed the numeric pipelines and the cohomology oracle.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Reduce into [0, modulus).
pub fn q_mod(x: &Q, modulus: i64) -> Q {
    let m = qi(modulus);
    let mut r = x - (x / &m).floor() * &m;
    if r < Q::zero() {
        r += &m;
    }
    if r >= m {
        r = Q::zero();
    }
    r
}

/// Parse "p/q" or "p".
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.parse().ok()?;
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from(n))
        }
    }
}

pub fn q_render(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// 2x2 matrix over the rationals, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat2 {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
}

impl fmt::Debug for QMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {}; {} {}]",
            q_render(&self.a),
            q_render(&self.b),
            q_render(&self.c),
            q_render(&self.d)
        )
    }
}

impl QMat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(qi(a), qi(b), qi(c), qi(d))
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> Q {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Q {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &QMat2) -> QMat2 {
        QMat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    /// Inverse, assuming det = 1.
    pub fn inv_unimodular(&self) -> QMat2 {
        QMat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn neg(&self) -> QMat2 {
        QMat2::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scale(&self, s: &Q) -> QMat2 {
        QMat2::new(s * &self.a, s * &self.b, s * &self.c, s * &self.d)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.neg().is_identity()
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [q_to_f64(&self.a), q_to_f64(&self.b), q_to_f64(&self.c), q_to_f64(&self.d)]
    }

    /// Entrywise conjugation by diag(1,-1); the matrix-level involution that
    /// negates signatures.
    pub fn mirror(&self) -> QMat2 {
        QMat2::new(self.a.clone(), -self.b.clone(), -self.c.clone(), self.d.clone())
    }

    pub fn abs_max(&self) -> Q {
        let mut m = self.a.abs();
        for x in [&self.b, &self.c, &self.d] {
            let v = x.abs();
            if v > m {
                m = v;
            }
        }
        m
    }
}

/// Solve P X = Y P over Q with det(P) > 0, for X conjugate to Y in SL(2,R).
/// The solution space of the linear system is scanned over small integer
/// combinations of a nullspace basis until a positive determinant shows up.
pub fn rational_conjugator(x: &QMat2, y: &QMat2) -> Option<QMat2> {
    // Unknown P = [p q; r s]; equations from PX - YP = 0.
    // Rows: coefficients of (p, q, r, s).
    let z = Q::zero;
    let rows: [[Q; 4]; 4] = [
        [&x.a - &y.a, x.c.clone(), -y.b.clone(), z()],
        [x.b.clone(), &x.d - &y.a, z(), -y.b.clone()],
        [-y.c.clone(), z(), &x.a - &y.d, x.c.clone()],
        [z(), -y.c.clone(), x.b.clone(), &x.d - &y.d],
    ];
    let basis = nullspace4(&rows);
    if basis.is_empty() {
        return None;
    }
    let dets = |v: &[Q; 4]| &v[0] * &v[3] - &v[1] * &v[2];
    let combine = |u: &Q, w: &Q| -> [Q; 4] {
        let mut cand = [z(), z(), z(), z()];
        for k in 0..4 {
            cand[k] = u * &basis[0][k]
                + if basis.len() > 1 { w * &basis[1][k] } else { z() };
        }
        cand
    };
    // det(u b0 + w b1) is a binary quadratic form A u^2 + B uw + C w^2; find a
    // rational point with positive value exactly.
    let a_coef = dets(&combine(&Q::one(), &Q::zero()));
    let c_coef = dets(&combine(&Q::zero(), &Q::one()));
    let mixed = dets(&combine(&Q::one(), &Q::one()));
    let b_coef = &mixed - &a_coef - &c_coef;
    let candidates: Vec<(Q, Q)> = vec![
        (Q::one(), Q::zero()),
        (Q::zero(), Q::one()),
        (Q::one(), Q::one()),
        (Q::one(), -Q::one()),
        // Midpoint of the root pair: Q(-B, 2A) = -A(B^2 - 4AC), positive for
        // an indefinite form with A < 0; symmetrically for C.
        (-b_coef.clone(), qi(2) * &a_coef),
        (qi(2) * &c_coef, -b_coef.clone()),
    ];
    for (u, w) in candidates {
        if u.is_zero() && w.is_zero() {
            continue;
        }
        let cand = combine(&u, &w);
        if dets(&cand).is_positive() {
            return Some(QMat2::new(
                cand[0].clone(),
                cand[1].clone(),
                cand[2].clone(),
                cand[3].clone(),
            ));
        }
    }
    None
}

/// Nullspace basis of a 4x4 rational matrix (row vectors in, basis vectors out).
fn nullspace4(rows: &[[Q; 4]; 4]) -> Vec<[Q; 4]> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.to_vec()).collect();
    let n = 4;
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let mut piv = None;
        for i in r..m.len() {
            if !m[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for j in 0..n {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    m[i][j] = &m[i][j] - &f * &m[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..n {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        v[c] = Q::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[ri][c].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_two_wraps() {
        assert_eq!(q_mod(&q(7, 2), 2), q(3, 2));
        assert_eq!(q_mod(&q(-1, 2), 2), q(3, 2));
        assert_eq!(q_mod(&qi(2), 2), qi(0));
    }

    #[test]
    fn parse_round_trip() {
        let x = q(-22, 7);
        assert_eq!(q_parse(&q_render(&x)).unwrap(), x);
        assert_eq!(q_parse("5").unwrap(), qi(5));
    }

    #[test]
    fn conjugator_between_rotation_forms() {
        // trace-0 matrix with c < 0 is conjugate to k(3pi/2).
        let m = QMat2::from_i64(0, 1, -1, 0);
        let k32 = QMat2::from_i64(0, 1, -1, 0);
        let p = rational_conjugator(&k32, &m).unwrap();
        assert!(p.det().is_positive());
        let lhs = p.mul(&k32);
        let rhs = m.mul(&p);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugator_diagonalizes_rational_hyperbolic() {
        let x = QMat2::new(qi(2), Q::zero(), Q::zero(), q(1, 2));
        let p0 = QMat2::from_i64(1, 2, 1, 3);
        let y = p0.mul(&x).mul(&p0.inv_unimodular());
        let pp = rational_conjugator(&x, &y).unwrap();
        assert_eq!(pp.mul(&x), y.mul(&pp));
        assert!(pp.det().is_positive());
    }
}
