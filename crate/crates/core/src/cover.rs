//! Arithmetic in the universal cover of PSL(2,R) acting on the line covering
//! the circle at infinity; rotation/translation numbers, the integer Euler
//! cocycle, relative Euler classes and Toledo invariants.
//!
//! Circle model: the boundary circle is parametrized by a normalized
//! coordinate u with period 1. The projective line direction (cos a, sin a)
//! at a = pi*u is acted on linearly by the conjugated matrix J g J with
//! J = diag(1,-1); the conjugation fixes the orientation in which the central
//! generator z translates by +1 and the whole package {rho table with
//! sign(c) orientation, sign = 2T + rho, T = -sum Rot~} closes up on the
//! reference representations. Every map here is a monotone degree-1 circle
//! map, so branch continuation over one period is exact.

use crate::error::{Error, Result};
use crate::group::{classify, ConjClass, Sl2};
use crate::rational::{q_mod, qi, Q};
use num::Zero;
use std::f64::consts::PI;
use std::sync::OnceLock;

const EPS_REFINE: f64 = 1e-9;
const EPS_COCYCLE: f64 = 1e-6;
const EPS_CENTRAL: f64 = 1e-8;

/// Model matrix of the circle action (orientation-fixing conjugation).
fn model(g: &Sl2) -> [f64; 4] {
    [g.m[0], -g.m[1], -g.m[2], g.m[3]]
}

fn raw_angle(m: &[f64; 4], u: f64) -> f64 {
    let a = PI * u;
    let (s, c) = a.sin_cos();
    let x = m[0] * c + m[1] * s;
    let y = m[2] * c + m[3] * s;
    y.atan2(x)
}

/// Accumulated continuous angle increase over [u0, u1], by branch continuation
/// with adaptive subdivision: pieces are accepted only while the image
/// displacement stays below half a period.
fn delta_piece(m: &[f64; 4], u0: f64, u1: f64, r0: f64, r1: f64, depth: u32) -> Result<f64> {
    let w = (r1 - r0).rem_euclid(2.0 * PI);
    // Accept pieces under pi/2 radians (= displacement 1/2 in u units).
    if w < 0.5 * PI {
        return Ok(w);
    }
    // A wrapped value just under 2*pi is a rounding artifact of a zero step.
    if w > 2.0 * PI - 1e-12 {
        return Ok(0.0);
    }
    if depth > 52 {
        return Err(Error::RefinementUnstable(u0, u1));
    }
    let um = 0.5 * (u0 + u1);
    let rm = raw_angle(m, um);
    Ok(delta_piece(m, u0, um, r0, rm, depth + 1)? + delta_piece(m, um, u1, rm, r1, depth + 1)?)
}

fn delta(m: &[f64; 4], s: f64, initial_pieces: usize) -> Result<f64> {
    let mut total = 0.0;
    let mut u_prev = 0.0;
    let mut r_prev = raw_angle(m, 0.0);
    for k in 1..=initial_pieces {
        let u = s * k as f64 / initial_pieces as f64;
        let r = raw_angle(m, u);
        total += delta_piece(m, u_prev, u, r_prev, r, 0)?;
        u_prev = u;
        r_prev = r;
    }
    Ok(total)
}

/// Value at 0 of the canonical base lift, in [0, 1).
fn theta_zero(m: &[f64; 4]) -> f64 {
    let r = raw_angle(m, 0.0).rem_euclid(PI);
    let t = r / PI;
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

/// Evaluate the canonical base lift Theta_g at x: the continuous monotone
/// degree-one lift of the boundary-circle action with Theta_g(0) in [0, 1).
/// The result must be invariant under doubling the subdivision.
pub fn base_lift_eval(g: &Sl2, x: f64) -> Result<f64> {
    let m = model(g);
    let n = x.floor();
    let s = x - n;
    let d1 = delta(&m, s, 2)?;
    let d2 = delta(&m, s, 4)?;
    if (d1 - d2).abs() > EPS_REFINE * PI {
        return Err(Error::RefinementUnstable(d1 / PI, d2 / PI));
    }
    Ok(n + theta_zero(&m) + d2 / PI)
}

/// Translation number of the canonical base lift, exact part when derivable.
fn canonical_transl(g: &Sl2) -> Result<(f64, Option<Q>)> {
    let class = classify(g)?;
    let m = model(g);
    match class {
        ConjClass::PlusIdentity | ConjClass::MinusIdentity => Ok((0.0, Some(Q::zero()))),
        ConjClass::Hyperbolic { .. } | ConjClass::ParPosTrace { .. } | ConjClass::ParNegTrace { .. } => {
            let u_star = fixed_direction(&m);
            let v = base_lift_eval(g, u_star)? - u_star;
            let k = v.round();
            if (v - k).abs() > EPS_COCYCLE {
                return Err(Error::NonIntegerCocycle(v));
            }
            Ok((k, Some(qi(k as i64))))
        }
        ConjClass::Elliptic(angle) => {
            // Rotation number of the model map is -theta/pi mod 1; the integer
            // part is pinned by a short orbit average.
            let frac = (-angle.t).rem_euclid(1.0);
            let th0 = theta_zero(&m);
            let mut cands = Vec::new();
            for j in [-1i64, 0, 1] {
                let c = frac + j as f64;
                if c > th0 - 1.0 - 1e-9 && c < th0 + 1.0 + 1e-9 {
                    cands.push((c, j));
                }
            }
            let (value, j) = if cands.len() == 1 {
                cands[0]
            } else {
                let n_iter = 128;
                let mut y = 0.0;
                for _ in 0..n_iter {
                    y = base_lift_eval(g, y)?;
                }
                let est = y / n_iter as f64;
                *cands
                    .iter()
                    .min_by(|a, b| {
                        (a.0 - est).abs().partial_cmp(&(b.0 - est).abs()).unwrap()
                    })
                    .unwrap()
            };
            let exact = angle.exact.as_ref().map(|t| q_mod(&(-t), 1) + qi(j));
            Ok((value, exact))
        }
    }
}

/// Fixed direction of a model matrix with a real eigenvalue, as u in [0, 1).
fn fixed_direction(m: &[f64; 4]) -> f64 {
    let tr = m[0] + m[3];
    let disc = (tr * tr - 4.0).max(0.0);
    let lam = if tr >= 0.0 { (tr + disc.sqrt()) / 2.0 } else { (tr - disc.sqrt()) / 2.0 };
    // Kernel of (m - lam) from the more robust row.
    let r1 = (m[0] - lam, m[1]);
    let r2 = (m[2], m[3] - lam);
    let (vx, vy) = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) {
        (-r1.1, r1.0)
    } else {
        (-r2.1, r2.0)
    };
    (vy.atan2(vx) / PI).rem_euclid(1.0)
}

/// An element of the universal cover: canonical base lift plus an integer
/// winding offset. The lifted map is Theta_base + offset.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub base: Sl2,
    pub offset: i64,
    transl_cache: OnceLock<(f64, Option<Q>)>,
}

impl Lifted {
    pub fn canonical(base: Sl2) -> Self {
        Lifted { base, offset: 0, transl_cache: OnceLock::new() }
    }

    pub fn with_offset(base: Sl2, offset: i64) -> Self {
        Lifted { base, offset, transl_cache: OnceLock::new() }
    }

    /// The central generator z: translation by +1.
    pub fn center() -> Self {
        Lifted::with_offset(Sl2::identity(), 1)
    }

    pub fn shifted(&self, j: i64) -> Self {
        Lifted::with_offset(self.base.clone(), self.offset + j)
    }

    /// The unique lift with a fixed point (translation number zero); defined
    /// for non-elliptic bases. This is the boundary lift entering the relative
    /// Euler class.
    pub fn goldman(base: Sl2) -> Result<Self> {
        let class = classify(&base)?;
        if class.is_elliptic() {
            return Err(Error::EllipticBoundary);
        }
        let canonical = Lifted::canonical(base);
        let t = canonical.transl()?;
        let k = t.round();
        debug_assert!((t - k).abs() < EPS_COCYCLE);
        Ok(canonical.shifted(-(k as i64)))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(base_lift_eval(&self.base, x)? + self.offset as f64)
    }

    /// Translation number, cached per value.
    pub fn transl(&self) -> Result<f64> {
        Ok(self.transl_full()?.0)
    }

    pub fn transl_exact(&self) -> Result<Option<Q>> {
        Ok(self.transl_full()?.1.map(|t| t + qi(self.offset)))
    }

    fn transl_full(&self) -> Result<(f64, Option<Q>)> {
        if let Some(v) = self.transl_cache.get() {
            return Ok((v.0 + self.offset as f64, v.1.clone()));
        }
        let v = canonical_transl(&self.base)?;
        let v = self.transl_cache.get_or_init(|| v);
        Ok((v.0 + self.offset as f64, v.1.clone()))
    }

    pub fn mul(&self, other: &Lifted) -> Result<Lifted> {
        let tau = euler_cocycle(&self.base, &other.base)?;
        Ok(Lifted::with_offset(self.base.mul(&other.base), self.offset + other.offset + tau))
    }

    pub fn inverse(&self) -> Result<Lifted> {
        let inv = self.base.inverse();
        let tau = euler_cocycle(&self.base, &inv)?;
        Ok(Lifted::with_offset(inv, -self.offset - tau))
    }
}

/// Integer Euler cocycle tau(g1,g2) = Theta_{g1}(Theta_{g2}(0)) - Theta_{g1 g2}(0),
/// always 0 or 1.
pub fn euler_cocycle(g1: &Sl2, g2: &Sl2) -> Result<i64> {
    let t2 = base_lift_eval(g2, 0.0)?;
    let x = base_lift_eval(g1, t2)?;
    let t12 = base_lift_eval(&g1.mul(g2), 0.0)?;
    let tau = x - t12;
    let k = tau.round();
    if (tau - k).abs() > EPS_COCYCLE || !(k == 0.0 || k == 1.0) {
        return Err(Error::NonIntegerCocycle(tau));
    }
    Ok(k as i64)
}

/// Product of a lifted word, left to right.
pub fn lifted_word(factors: &[Lifted]) -> Result<Lifted> {
    let mut acc = Lifted::canonical(Sl2::identity());
    for f in factors {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// Commutator [L1, L2]; independent of the offsets.
pub fn lifted_commutator(l1: &Lifted, l2: &Lifted) -> Result<Lifted> {
    l1.mul(l2)?.mul(&l1.inverse()?)?.mul(&l2.inverse()?)
}

/// Result of evaluating a lifted relator word.
#[derive(Clone, Debug)]
pub struct LiftedWordResult {
    pub product: Lifted,
    /// The integer m with product = z^m, present when the base is central.
    pub central_power: Option<i64>,
}

pub fn central_power(product: Lifted) -> LiftedWordResult {
    let d = product.base.dist_to_plus_minus_identity();
    let central_power = (d < EPS_CENTRAL).then_some(product.offset);
    LiftedWordResult { product, central_power }
}

/// Relative Euler class of an SL(2,R) representation which is non-elliptic on
/// every boundary component: evaluate the relator on fixed-point boundary lifts
/// and canonical handle lifts, and read off the central power.
pub fn relative_euler(
    handles: &[(Sl2, Sl2)],
    boundary: &[Sl2],
) -> Result<i64> {
    let mut factors = Vec::new();
    for (a, b) in handles {
        factors.push(lifted_commutator(&Lifted::canonical(a.clone()), &Lifted::canonical(b.clone()))?);
    }
    for c in boundary {
        factors.push(Lifted::goldman(c.clone())?);
    }
    let product = lifted_word(&factors)?;
    let d = product.base.dist_to_plus_minus_identity();
    if d > EPS_CENTRAL {
        return Err(Error::NonCentralProduct(d));
    }
    Ok(product.offset)
}

/// Toledo invariant of an SL(2,R) representation: choose canonical lifts for
/// everything except the last boundary generator, whose lift is forced by the
/// relator, and return -sum of boundary translation numbers. `shifts` perturbs
/// the free lift choices by central elements; the result must not depend on it.
pub fn toledo_with_shifts(
    handles: &[(Sl2, Sl2)],
    boundary: &[Sl2],
    shifts: &[i64],
) -> Result<f64> {
    assert!(!boundary.is_empty(), "toledo needs at least one boundary component");
    let n = boundary.len();
    let mut prefix = Vec::new();
    for (i, (a, b)) in handles.iter().enumerate() {
        let la = Lifted::with_offset(a.clone(), *shifts.get(2 * i).unwrap_or(&0));
        let lb = Lifted::with_offset(b.clone(), *shifts.get(2 * i + 1).unwrap_or(&0));
        prefix.push(lifted_commutator(&la, &lb)?);
    }
    let mut lifts: Vec<Lifted> = Vec::new();
    for (j, c) in boundary[..n - 1].iter().enumerate() {
        lifts.push(Lifted::with_offset(c.clone(), *shifts.get(2 * handles.len() + j).unwrap_or(&0)));
    }
    for l in &lifts {
        prefix.push(l.clone());
    }
    let forced = lifted_word(&prefix)?.inverse()?;
    if forced.base.dist_to(&boundary[n - 1]) > EPS_CENTRAL
        && forced.base.dist_to(&boundary[n - 1].neg()) > EPS_CENTRAL
    {
        return Err(Error::NonCentralProduct(forced.base.dist_to(&boundary[n - 1])));
    }
    lifts.push(forced);
    let mut t = 0.0;
    for l in &lifts {
        t -= l.transl()?;
    }
    Ok(t)
}

pub fn toledo(handles: &[(Sl2, Sl2)], boundary: &[Sl2]) -> Result<f64> {
    toledo_with_shifts(handles, boundary, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn k(t: Q) -> Sl2 {
        Sl2::rotation_by_pi(t)
    }

    #[test]
    fn base_lift_spec_examples() {
        let id = Sl2::identity();
        assert!((base_lift_eval(&id, 0.37).unwrap() - 0.37).abs() < 1e-12);

        let kq = k(q(1, 2));
        assert!((base_lift_eval(&kq, 0.0).unwrap() - 0.5).abs() < 1e-12);

        let hyp = Sl2::from_rational(crate::rational::QMat2::new(
            qi(2),
            Q::zero(),
            Q::zero(),
            q(1, 2),
        ));
        assert!(base_lift_eval(&hyp, 0.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn center_translates_by_one() {
        let z = Lifted::center();
        assert_eq!(z.transl().unwrap(), 1.0);
        let g = Sl2::from_rational_i64(1, 3, 0, 1);
        let l = Lifted::canonical(g);
        let zl = z.mul(&l).unwrap();
        assert!((zl.transl().unwrap() - (1.0 + l.transl().unwrap())).abs() < 1e-12);
    }

    #[test]
    fn rotation_square_is_center() {
        // canonical(k(pi/2)) * canonical(k(pi/2)) covers -I with transl 1.
        let l = Lifted::canonical(k(q(1, 2)));
        let p = l.mul(&l).unwrap();
        assert!((p.transl().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn inverse_cancels() {
        let g = Sl2::from_rational_i64(2, 1, 3, 2);
        let l = Lifted::with_offset(g, 2);
        let p = l.mul(&l.inverse().unwrap()).unwrap();
        assert_eq!(p.offset, 0);
        assert!(p.base.dist_to(&Sl2::identity()) < 1e-12);
    }

    #[test]
    fn hyperbolic_goldman_has_zero_transl() {
        let g = Sl2::from_rational_i64(3, 1, 2, 1); // trace 4
        let l = Lifted::goldman(g).unwrap();
        assert_eq!(l.transl().unwrap(), 0.0);
        // negative trace hyperbolic too
        let h = Sl2::from_rational_i64(-3, 1, -1, 0); // trace -3
        let l = Lifted::goldman(h).unwrap();
        assert_eq!(l.transl().unwrap(), 0.0);
    }

    #[test]
    fn transl_of_rotation_canonical_lift() {
        // In this orientation the canonical lift of k(t*pi) translates by
        // (-t mod 1); at t = 1/2 this is the value 1/2 = theta/pi.
        let l = Lifted::canonical(k(q(1, 2)));
        assert_eq!(l.transl_exact().unwrap().unwrap(), q(1, 2));
        let l = Lifted::canonical(k(q(1, 3)));
        assert_eq!(l.transl_exact().unwrap().unwrap(), q(2, 3));
        let l = Lifted::canonical(k(q(5, 3)));
        assert_eq!(l.transl_exact().unwrap().unwrap(), q(1, 3));
    }

    #[test]
    fn two_cusp_pants_euler_class_is_one() {
        // A = (1,1;0,1), B = (1,0;-5,1): the cusped hyperbolic pants; T = 1.
        let a = Sl2::from_rational_i64(1, 1, 0, 1);
        let b = Sl2::from_rational_i64(1, 0, -5, 1);
        let c = a.mul(&b).inverse();
        let m = relative_euler(&[], &[a.clone(), b.clone(), c.clone()]).unwrap();
        assert_eq!(m, 1);
        let t = toledo(&[], &[a, b, c]).unwrap();
        assert!((t - 1.0).abs() < 1e-9);
    }

    #[test]
    fn toledo_phi_minus_is_one_sixth() {
        let c1 = k(q(1, 2));
        let c2 = Sl2::from_rational_i64(1, 1, 0, 1);
        let c3 = c1.mul(&c2).inverse();
        let t = toledo(&[], &[c1, c2, c3]).unwrap();
        assert!((t - 1.0 / 6.0).abs() < 1e-9, "T = {t}");
    }

    #[test]
    fn toledo_is_lift_choice_invariant() {
        let c1 = k(q(1, 2));
        let c2 = Sl2::from_rational_i64(1, 1, 0, 1);
        let c3 = c1.mul(&c2).inverse();
        let t0 = toledo(&[], &[c1.clone(), c2.clone(), c3.clone()]).unwrap();
        let t1 = toledo_with_shifts(&[], &[c1, c2, c3], &[3, -2]).unwrap();
        assert!((t0 - t1).abs() < 1e-8);
    }

    #[test]
    fn trivial_rep_relative_euler_zero() {
        let id = Sl2::identity;
        let m = relative_euler(&[(id(), id())], &[id()]).unwrap();
        assert_eq!(m, 0);
    }

    #[test]
    fn borel_pants_euler_class_zero() {
        let a = Sl2::from_rational(crate::rational::QMat2::new(qi(2), Q::zero(), Q::zero(), q(1, 2)));
        let b = Sl2::from_rational(crate::rational::QMat2::new(qi(3), qi(1), Q::zero(), q(1, 3)));
        let c = a.mul(&b).inverse();
        let m = relative_euler(&[], &[a, b, c]).unwrap();
        assert_eq!(m, 0);
    }
}
