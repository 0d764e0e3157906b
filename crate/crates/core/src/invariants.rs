//! Rho invariants, the signature formulas sign = 2T + rho (symplectic side)
//! and sign = -2T + rho (unitary side), and Milnor-Wood bounds.
//!
//! Rho is computed from conjugacy-class annotations, never from raw floats;
//! that is what keeps parity statements exact across the parabolic locus where
//! rho jumps.

use crate::error::{Error, Result};
use crate::group::ConjClass;
use crate::rational::{q_mod, q_render, q_to_f64, qi, Q};
use crate::surfaces::{BoundaryClass, Representation};
use num::Zero;
use serde::{Deserialize, Serialize};

/// Exact-when-possible scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Q),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => q_to_f64(x),
            Scalar::Approx(x) => *x,
        }
    }
    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(x) => q_render(x),
            Scalar::Approx(x) => format!("{x:.12}"),
        }
    }
    fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Approx(self.to_f64() + other.to_f64()),
        }
    }
}

/// Rho invariant of an SL(2,R) conjugacy class, from the boundary-contribution
/// table: elliptic angle t*pi gives 2(1-t); strict parabolics give -/+1 by the
/// sign of mu; everything else gives 0.
pub fn rho_class(c: &ConjClass) -> Scalar {
    match c {
        ConjClass::Elliptic(a) => match &a.exact {
            Some(t) => Scalar::Exact(qi(2) - qi(2) * t),
            None => Scalar::Approx(2.0 * (1.0 - a.t)),
        },
        ConjClass::ParPosTrace { mu_sign } => Scalar::Exact(qi(-*mu_sign as i64)),
        ConjClass::ParNegTrace { .. } => Scalar::Exact(Q::zero()),
        ConjClass::Hyperbolic { .. } => Scalar::Exact(Q::zero()),
        ConjClass::PlusIdentity | ConjClass::MinusIdentity => Scalar::Exact(Q::zero()),
    }
}

/// Rho of a diagonal-torus boundary element of U(p,q): the first p angles
/// count positively, the last q negatively, each as sgn(th) - th/pi.
pub fn rho_torus(p: usize, angles: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (j, t) in angles.iter().enumerate() {
        let t = q_mod(t, 2);
        let term = if t.is_zero() { Q::zero() } else { crate::rational::qi(1) - t };
        if j < p {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn rho_boundary(class: &BoundaryClass) -> Scalar {
    match class {
        BoundaryClass::Sl2(c) => rho_class(c),
        BoundaryClass::Blocks(v) => {
            let mut acc = Scalar::Exact(Q::zero());
            for c in v {
                acc = acc.add(&rho_class(c));
            }
            acc
        }
        BoundaryClass::Torus { p, angles, .. } => Scalar::Exact(rho_torus(*p, angles)),
    }
}

/// Which signature convention applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// sign = 2T + rho (Sp(2p,R), SL(2,R) blocks).
    Symplectic,
    /// sign = -2T + rho (U(p,q); Hermitian units).
    Unitary,
}

/// Full invariant report for one representation.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub toledo: f64,
    pub rho_per_boundary: Vec<Scalar>,
    pub rho_total: Scalar,
    pub signature_formula: i64,
    pub signature_oracle: Option<i64>,
    pub bound: i64,
    pub convention: SignConvention,
    pub parity_even: bool,
    pub bound_ok: bool,
}

const EPS_INT: f64 = 1e-6;

/// Toledo invariant of the representation: translation-number sum for SL(2,R),
/// blockwise for SL2-block unitary elements, zero on diagonal tori.
pub fn toledo_of(rep: &Representation) -> Result<f64> {
    if rep.is_sl2() {
        return crate::cover::toledo(&rep.sl2_handles(), &rep.sl2_boundary());
    }
    match &rep.boundary_classes[0] {
        BoundaryClass::Torus { .. } => Ok(0.0),
        BoundaryClass::Blocks(blocks) => {
            let p = blocks.len();
            let mut total = 0.0;
            for k in 0..p {
                let (handles, boundary) = block_slices(rep, k)?;
                total += crate::cover::toledo(&handles, &boundary)?;
            }
            Ok(total)
        }
        BoundaryClass::Sl2(_) => unreachable!(),
    }
}

fn block_slices(
    rep: &Representation,
    k: usize,
) -> Result<(Vec<(crate::group::Sl2, crate::group::Sl2)>, Vec<crate::group::Sl2>)> {
    use crate::group::Unitary;
    use crate::surfaces::GroupElement;
    let pick = |g: &GroupElement| -> Result<crate::group::Sl2> {
        match g {
            GroupElement::Unitary(Unitary::Sl2Blocks(v)) => Ok(v[k].clone()),
            _ => Err(Error::RealificationUnsupported(
                "block Toledo needs SL2-block elements throughout".into(),
            )),
        }
    };
    let mut handles = Vec::new();
    for (a, b) in &rep.handles {
        handles.push((pick(a)?, pick(b)?));
    }
    let mut boundary = Vec::new();
    for c in &rep.boundary {
        boundary.push(pick(c)?);
    }
    Ok((handles, boundary))
}

/// Coefficient rank parameter: p with the bundle symplectic of rank 2p, or
/// (p,q) Hermitian for torus representations.
pub fn coefficient_shape(rep: &Representation) -> (usize, usize, SignConvention) {
    match &rep.boundary_classes[0] {
        BoundaryClass::Sl2(_) => (1, 0, SignConvention::Symplectic),
        BoundaryClass::Blocks(v) => (v.len(), 0, SignConvention::Symplectic),
        BoundaryClass::Torus { p, q, .. } => (*p, *q, SignConvention::Unitary),
    }
}

pub fn milnor_wood_cap(rep: &Representation) -> i64 {
    let chi = rep.surface.euler_characteristic();
    let (p, q, conv) = coefficient_shape(rep);
    match conv {
        SignConvention::Symplectic => 2 * p as i64 * chi.abs(),
        SignConvention::Unitary => (p + q) as i64 * chi.abs(),
    }
}

/// Signature via the index formula, with full integrality and bound checks.
pub fn signature_of(rep: &Representation) -> Result<InvariantReport> {
    let toledo = toledo_of(rep)?;
    let rho_per_boundary: Vec<Scalar> = rep.boundary_classes.iter().map(rho_boundary).collect();
    let mut rho_total = Scalar::Exact(Q::zero());
    for r in &rho_per_boundary {
        rho_total = rho_total.add(r);
    }
    let (_, _, convention) = coefficient_shape(rep);
    let combined = match convention {
        SignConvention::Symplectic => 2.0 * toledo + rho_total.to_f64(),
        SignConvention::Unitary => -2.0 * toledo + rho_total.to_f64(),
    };
    let signature_formula = combined.round();
    if (combined - signature_formula).abs() > EPS_INT {
        return Err(Error::IntegralityFailure(combined));
    }
    let signature_formula = signature_formula as i64;
    let bound = milnor_wood_cap(rep);
    let bound_ok = signature_formula.abs() <= bound;
    Ok(InvariantReport {
        toledo,
        rho_per_boundary,
        rho_total,
        signature_formula,
        signature_oracle: None,
        bound,
        convention,
        parity_even: signature_formula % 2 == 0,
        bound_ok,
    })
}

impl InvariantReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "toledo": format!("{:.12}", self.toledo),
            "rho_per_boundary": self.rho_per_boundary.iter().map(|s| s.render()).collect::<Vec<_>>(),
            "rho_total": self.rho_total.render(),
            "signature_formula": self.signature_formula,
            "signature_oracle": self.signature_oracle,
            "bound": self.bound,
            "convention": match self.convention {
                SignConvention::Symplectic => "2T+rho",
                SignConvention::Unitary => "-2T+rho",
            },
            "parity_even": self.parity_even,
            "bound_ok": self.bound_ok,
        })
    }
}

/// Shapes for standalone Milnor-Wood caps.
#[derive(Clone, Copy, Debug)]
pub enum BoundShape {
    Sp { p: usize },
    Upq { p: usize, q: usize },
    /// U(p) on genus >= 1 surfaces refines the cap to max(0, np-2).
    UpHigherGenus { p: usize, n: usize },
}

pub fn milnor_wood_bound(shape: BoundShape, chi: i64) -> i64 {
    assert!(chi <= 0);
    match shape {
        BoundShape::Sp { p } => 2 * p as i64 * chi.abs(),
        BoundShape::Upq { p, q } => (p + q) as i64 * chi.abs(),
        BoundShape::UpHigherGenus { p, n } => ((n * p) as i64 - 2).max(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Angle, Sl2};
    use crate::rational::q;
    use crate::surfaces::{presentation, Provenance, Representation};

    #[test]
    fn rho_table_rows() {
        // lambda not in S^1 -> 0
        assert_eq!(rho_class(&ConjClass::Hyperbolic { trace_sign: 1 }), Scalar::Exact(Q::zero()));
        // lambda in S^1 minus reals -> 2(1 - theta/pi)
        assert_eq!(
            rho_class(&ConjClass::Elliptic(Angle::exact(q(1, 2)))),
            Scalar::Exact(qi(1))
        );
        // mu = 0 (central) -> 0
        assert_eq!(rho_class(&ConjClass::PlusIdentity), Scalar::Exact(Q::zero()));
        // lambda = 1, mu > 0 -> -1 ; mu < 0 -> 1
        assert_eq!(rho_class(&ConjClass::ParPosTrace { mu_sign: 1 }), Scalar::Exact(qi(-1)));
        assert_eq!(rho_class(&ConjClass::ParPosTrace { mu_sign: -1 }), Scalar::Exact(qi(1)));
        // lambda = -1 -> 0
        assert_eq!(rho_class(&ConjClass::ParNegTrace { mu_sign: 1 }), Scalar::Exact(Q::zero()));
    }

    #[test]
    fn rho_torus_example() {
        // p=1, q=0, theta = pi/3: 1 - 1/3 = 2/3.
        assert_eq!(rho_torus(1, &[q(1, 3)]), q(2, 3));
    }

    fn phi(sign: i8) -> Representation {
        let (c1, c2) = if sign < 0 {
            (Sl2::rotation_by_pi(q(1, 2)), Sl2::from_rational_i64(1, 1, 0, 1))
        } else {
            (Sl2::rotation_by_pi(q(3, 2)), Sl2::from_rational_i64(1, -1, 0, 1))
        };
        let c3 = c1.mul(&c2).inverse();
        Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![c1, c2, c3],
            Provenance::Direct { label: "phi".into() },
        )
        .unwrap()
    }

    #[test]
    fn genus_zero_odd_blocks() {
        let minus = signature_of(&phi(-1)).unwrap();
        assert_eq!(minus.signature_formula, -1);
        assert_eq!(minus.rho_total, Scalar::Exact(q(-4, 3)));
        let plus = signature_of(&phi(1)).unwrap();
        assert_eq!(plus.signature_formula, 1);
        assert!(plus.bound_ok);
    }

    #[test]
    fn mirror_negates_signature() {
        let rep = phi(-1);
        let m = rep.mirror();
        assert_eq!(signature_of(&m).unwrap().signature_formula, 1);
    }

    #[test]
    fn bounds() {
        assert_eq!(milnor_wood_bound(BoundShape::Sp { p: 1 }, -1), 2);
        assert_eq!(milnor_wood_bound(BoundShape::UpHigherGenus { p: 1, n: 1 }, -1), 0);
        assert_eq!(milnor_wood_bound(BoundShape::Upq { p: 2, q: 1 }, -2), 6);
    }
}
