//! Surface presentations, representations of their fundamental groups, and
//! gluing along boundary components.
//!
//! The presentation is always the standard one,
//! [A_1,B_1]...[A_g,B_g] C_1...C_n = I. Gluing is restricted to (last
//! boundary of the left factor, first boundary of the right factor) with an
//! explicit conjugator witness; callers permute boundaries first.

use crate::error::{Error, Result};
use crate::group::{classify, ConjClass, Sl2, Unitary};
use crate::rational::{q_to_f64, QMat2, Q};
use num::Zero;
use serde::{Deserialize, Serialize};

pub const EPS_RELATOR: f64 = 1e-8;
pub const EPS_GLUE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePresentation {
    pub genus: usize,
    pub boundary: usize,
}

impl SurfacePresentation {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * (self.genus as i64) - self.boundary as i64
    }

    pub fn relator_length(&self) -> usize {
        4 * self.genus + self.boundary
    }

    pub fn free_rank(&self) -> usize {
        2 * self.genus + self.boundary - 1
    }

    /// Generator names, for reports.
    pub fn generator_names(&self) -> Vec<String> {
        let mut v = Vec::new();
        for i in 1..=self.genus {
            v.push(format!("A{i}"));
            v.push(format!("B{i}"));
        }
        for j in 1..=self.boundary {
            v.push(format!("C{j}"));
        }
        v
    }
}

/// Standard presentation of the surface of genus g with n >= 1 boundary
/// components.
pub fn presentation(g: usize, n: usize) -> Result<SurfacePresentation> {
    if n == 0 {
        return Err(Error::InvalidSurface { g, n });
    }
    Ok(SurfacePresentation { genus: g, boundary: n })
}

/// Image of a generator.
#[derive(Clone, Debug)]
pub enum GroupElement {
    Sl2(Sl2),
    Unitary(Unitary),
}

impl GroupElement {
    pub fn as_sl2(&self) -> Option<&Sl2> {
        match self {
            GroupElement::Sl2(g) => Some(g),
            _ => None,
        }
    }
}

/// Conjugator witness used in gluing; any positive-determinant matrix, acting
/// projectively.
#[derive(Clone, Debug)]
pub struct Conjugator {
    pub m: [f64; 4],
    pub exact: Option<QMat2>,
}

impl Conjugator {
    pub fn identity() -> Self {
        Conjugator { m: [1.0, 0.0, 0.0, 1.0], exact: Some(QMat2::identity()) }
    }

    pub fn from_exact(m: QMat2) -> Self {
        assert!(m.det() > Q::zero(), "conjugator must have positive determinant");
        Conjugator { m: m.to_f64(), exact: Some(m) }
    }

    /// Conjugate an SL2 element, renormalizing the determinant scale.
    pub fn act(&self, g: &Sl2) -> Sl2 {
        if let (Some(p), Some(x)) = (&self.exact, g.exact_mat()) {
            let det = p.det();
            let adj = QMat2::new(p.d.clone(), -p.b.clone(), -p.c.clone(), p.a.clone());
            let y = p.mul(&x).mul(&adj).scale(&(crate::rational::qi(1) / det));
            return Sl2::from_rational(y);
        }
        let [a, b, c, d] = self.m;
        let det = a * d - b * c;
        let [x0, x1, x2, x3] = g.m;
        // p * x * adj(p) / det, all in f64
        let p = [a, b, c, d];
        let px = [
            p[0] * x0 + p[1] * x2,
            p[0] * x1 + p[1] * x3,
            p[2] * x0 + p[3] * x2,
            p[2] * x1 + p[3] * x3,
        ];
        let m = [
            (px[0] * d - px[1] * c) / det,
            (-px[0] * b + px[1] * a) / det,
            (px[2] * d - px[3] * c) / det,
            (-px[2] * b + px[3] * a) / det,
        ];
        Sl2 { m, tag: None }
    }
}

/// How each representation was built; serialized into certificates so that
/// `verify` can re-derive everything without planner state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Provenance {
    Direct { label: String },
    Block { kind: String, params: Vec<String> },
    So2 { angles: Vec<String> },
    UnitaryTorus { p: usize, q: usize },
    Glue { left: Box<Provenance>, right: Box<Provenance> },
    Mirror { inner: Box<Provenance> },
    DirectSum { blocks: Vec<Provenance> },
}

/// A representation of the fundamental group of a surface with boundary:
/// images of the standard generators plus exact boundary class annotations.
#[derive(Clone, Debug)]
pub struct Representation {
    pub surface: SurfacePresentation,
    pub handles: Vec<(GroupElement, GroupElement)>,
    pub boundary: Vec<GroupElement>,
    pub boundary_classes: Vec<BoundaryClass>,
    pub provenance: Provenance,
}

/// Exact boundary conjugacy-class annotation.
#[derive(Clone, Debug)]
pub enum BoundaryClass {
    Sl2(ConjClass),
    Blocks(Vec<ConjClass>),
    /// Diagonal torus angles (rational multiples of pi), first p positive.
    Torus { p: usize, q: usize, angles: Vec<Q> },
}

impl BoundaryClass {
    pub fn as_sl2(&self) -> Option<&ConjClass> {
        match self {
            BoundaryClass::Sl2(c) => Some(c),
            _ => None,
        }
    }
}

impl Representation {
    /// Construct an SL(2,R)-valued representation; classifies every boundary
    /// image and validates the relator.
    pub fn sl2(
        surface: SurfacePresentation,
        handles: Vec<(Sl2, Sl2)>,
        boundary: Vec<Sl2>,
        provenance: Provenance,
    ) -> Result<Self> {
        assert_eq!(handles.len(), surface.genus);
        assert_eq!(boundary.len(), surface.boundary);
        let mut classes = Vec::new();
        for c in &boundary {
            classes.push(BoundaryClass::Sl2(classify(c)?));
        }
        let rep = Representation {
            surface,
            handles: handles
                .into_iter()
                .map(|(a, b)| (GroupElement::Sl2(a), GroupElement::Sl2(b)))
                .collect(),
            boundary: boundary.into_iter().map(GroupElement::Sl2).collect(),
            boundary_classes: classes,
            provenance,
        };
        rep.check_relator()?;
        Ok(rep)
    }

    /// Same, but with caller-supplied exact class annotations (used when the
    /// construction knows classes that the numeric classifier cannot resolve
    /// exactly, e.g. conjugated rotations).
    pub fn sl2_with_classes(
        surface: SurfacePresentation,
        handles: Vec<(Sl2, Sl2)>,
        boundary: Vec<Sl2>,
        classes: Vec<ConjClass>,
        provenance: Provenance,
    ) -> Result<Self> {
        assert_eq!(classes.len(), boundary.len());
        for (g, cl) in boundary.iter().zip(&classes) {
            validate_class(g, cl)?;
        }
        let rep = Representation {
            surface,
            handles: handles
                .into_iter()
                .map(|(a, b)| (GroupElement::Sl2(a), GroupElement::Sl2(b)))
                .collect(),
            boundary: boundary.into_iter().map(GroupElement::Sl2).collect(),
            boundary_classes: classes.into_iter().map(BoundaryClass::Sl2).collect(),
            provenance,
        };
        rep.check_relator()?;
        Ok(rep)
    }

    pub fn is_sl2(&self) -> bool {
        self.boundary.iter().all(|g| matches!(g, GroupElement::Sl2(_)))
            && self.handles.iter().all(|(a, b)| {
                matches!(a, GroupElement::Sl2(_)) && matches!(b, GroupElement::Sl2(_))
            })
    }

    pub fn sl2_handles(&self) -> Vec<(Sl2, Sl2)> {
        self.handles
            .iter()
            .map(|(a, b)| (a.as_sl2().unwrap().clone(), b.as_sl2().unwrap().clone()))
            .collect()
    }

    pub fn sl2_boundary(&self) -> Vec<Sl2> {
        self.boundary.iter().map(|c| c.as_sl2().unwrap().clone()).collect()
    }

    /// Relator defect: exact zero reported as 0. Numeric distance otherwise.
    pub fn relator_defect(&self) -> f64 {
        if self.is_sl2() {
            if let Some(exact) = self.relator_exact() {
                return if exact.is_identity() { 0.0 } else { f64::INFINITY };
            }
            let mut acc = Sl2::identity();
            for (a, b) in self.sl2_handles() {
                let comm = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
                acc = acc.mul(&comm);
            }
            for c in self.sl2_boundary() {
                acc = acc.mul(&c);
            }
            acc.dist_to(&Sl2::identity())
        } else {
            let mul = |acc: Option<Unitary>, x: Unitary| match acc {
                None => Some(x),
                Some(y) => Some(y.mul(&x)),
            };
            let mut cur: Option<Unitary> = None;
            for (a, b) in &self.handles {
                if let (GroupElement::Unitary(a), GroupElement::Unitary(b)) = (a, b) {
                    let comm = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
                    cur = mul(cur, comm);
                }
            }
            for c in &self.boundary {
                if let GroupElement::Unitary(c) = c {
                    cur = mul(cur, c.clone());
                }
            }
            cur.map(|u| u.dist_to_identity()).unwrap_or(0.0)
        }
    }

    fn relator_exact(&self) -> Option<QMat2> {
        let mut acc = QMat2::identity();
        for (a, b) in &self.handles {
            let a = a.as_sl2()?.exact_mat()?;
            let b = b.as_sl2()?.exact_mat()?;
            let comm = a.mul(&b).mul(&a.inv_unimodular()).mul(&b.inv_unimodular());
            acc = acc.mul(&comm);
        }
        for c in &self.boundary {
            acc = acc.mul(&c.as_sl2()?.exact_mat()?);
        }
        Some(acc)
    }

    pub fn check_relator(&self) -> Result<()> {
        let d = self.relator_defect();
        if d > EPS_RELATOR {
            return Err(Error::NonCentralProduct(d));
        }
        Ok(())
    }

    /// The involution-conjugated representation; negates the signature.
    pub fn mirror(&self) -> Representation {
        let map = |g: &GroupElement| match g {
            GroupElement::Sl2(x) => GroupElement::Sl2(x.mirror()),
            GroupElement::Unitary(u) => GroupElement::Unitary(u.conj_involution()),
        };
        Representation {
            surface: self.surface,
            handles: self.handles.iter().map(|(a, b)| (map(a), map(b))).collect(),
            boundary: self.boundary.iter().map(map).collect(),
            boundary_classes: self
                .boundary_classes
                .iter()
                .map(|c| match c {
                    BoundaryClass::Sl2(c) => BoundaryClass::Sl2(c.mirror()),
                    BoundaryClass::Blocks(v) => {
                        BoundaryClass::Blocks(v.iter().map(|c| c.mirror()).collect())
                    }
                    BoundaryClass::Torus { p, q, angles } => BoundaryClass::Torus {
                        p: *p,
                        q: *q,
                        angles: angles.iter().map(|t| crate::rational::q_mod(&(-t), 2)).collect(),
                    },
                })
                .collect(),
            provenance: Provenance::Mirror { inner: Box::new(self.provenance.clone()) },
        }
    }

    /// Cyclic rotation of the boundary labels: (C_1,...,C_n) becomes
    /// (C_2,...,C_n,C_1), handles conjugated by C_1. A reparametrization of
    /// the same surface group representation.
    pub fn rotate_boundary(&self) -> Representation {
        let c1 = self.boundary[0].clone();
        let conj = |g: &GroupElement| match (&c1, g) {
            (GroupElement::Sl2(c), GroupElement::Sl2(x)) => {
                GroupElement::Sl2(c.inverse().mul(x).mul(c))
            }
            (GroupElement::Unitary(c), GroupElement::Unitary(x)) => {
                GroupElement::Unitary(c.inverse().mul(x).mul(c))
            }
            _ => unreachable!("mixed representation"),
        };
        let mut boundary: Vec<GroupElement> = self.boundary[1..].to_vec();
        boundary.push(c1.clone());
        let mut classes: Vec<BoundaryClass> = self.boundary_classes[1..].to_vec();
        classes.push(self.boundary_classes[0].clone());
        Representation {
            surface: self.surface,
            handles: self.handles.iter().map(|(a, b)| (conj(a), conj(b))).collect(),
            boundary,
            boundary_classes: classes,
            provenance: self.provenance.clone(),
        }
    }

    /// Swap adjacent boundary labels j, j+1 via the braid move:
    /// (..., C_j, C_{j+1}, ...) becomes (..., C_j C_{j+1} C_j^{-1}, C_j, ...).
    pub fn swap_boundary(&self, j: usize) -> Representation {
        assert!(j + 1 < self.surface.boundary);
        let cj = self.boundary[j].clone();
        let cj1 = self.boundary[j + 1].clone();
        let conj = match (&cj, &cj1) {
            (GroupElement::Sl2(a), GroupElement::Sl2(b)) => {
                GroupElement::Sl2(a.mul(b).mul(&a.inverse()))
            }
            (GroupElement::Unitary(a), GroupElement::Unitary(b)) => {
                GroupElement::Unitary(a.mul(b).mul(&a.inverse()))
            }
            _ => unreachable!("mixed representation"),
        };
        let mut boundary = self.boundary.clone();
        boundary[j] = conj;
        boundary[j + 1] = cj;
        let mut classes = self.boundary_classes.clone();
        classes.swap(j, j + 1);
        Representation {
            surface: self.surface,
            handles: self.handles.clone(),
            boundary,
            boundary_classes: classes,
            provenance: self.provenance.clone(),
        }
    }

    /// Rotate until boundary index i sits last.
    pub fn with_boundary_last(&self, i: usize) -> Representation {
        let n = self.surface.boundary;
        let mut rep = self.clone();
        for _ in 0..(i + 1) % n {
            rep = rep.rotate_boundary();
        }
        rep
    }

    /// Rotate until boundary index j sits first.
    pub fn with_boundary_first(&self, j: usize) -> Representation {
        let mut rep = self.clone();
        for _ in 0..j {
            rep = rep.rotate_boundary();
        }
        rep
    }
}

fn validate_class(g: &Sl2, claimed: &ConjClass) -> Result<()> {
    // Exactly classifiable images must agree outright; numeric ones must agree
    // up to the angle tolerance.
    match classify(g) {
        Ok(actual) => {
            let ok = match (&actual, claimed) {
                (ConjClass::Elliptic(a), ConjClass::Elliptic(b)) => {
                    if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
                        x == y
                    } else {
                        (a.t - b.t).abs() < 1e-8
                    }
                }
                (x, y) => x == y,
            };
            if ok {
                Ok(())
            } else {
                Err(Error::BadCertificate(format!(
                    "boundary class annotation {} disagrees with classifier {}",
                    claimed.label(),
                    actual.label()
                )))
            }
        }
        Err(Error::AmbiguousTrace { .. }) => {
            // Numeric image in the band; trust the exact annotation but insist
            // the trace matches it.
            let tr = g.trace();
            let expect = match claimed {
                ConjClass::ParPosTrace { .. } | ConjClass::PlusIdentity => 2.0,
                ConjClass::ParNegTrace { .. } | ConjClass::MinusIdentity => -2.0,
                ConjClass::Elliptic(a) => 2.0 * a.radians().cos(),
                ConjClass::Hyperbolic { trace_sign } => {
                    return if (*trace_sign as f64) * tr > 2.0 {
                        Ok(())
                    } else {
                        Err(Error::BadCertificate("hyperbolic annotation off".into()))
                    }
                }
            };
            if (tr - expect).abs() < 1e-8 {
                Ok(())
            } else {
                Err(Error::BadCertificate(format!(
                    "annotation {} inconsistent with trace {tr}",
                    claimed.label()
                )))
            }
        }
        Err(e) => Err(e),
    }
}

/// Glue rep1 (along its last boundary) to rep2 (along its first), with a
/// conjugator witness: images1(C_last) = conj * images2(C_first)^-1 * conj^-1.
///
/// The glued presentation takes rep2's handles (conjugated) first, then
/// rep1's; boundaries are rep1's first n1-1 then rep2's last n2-1
/// (conjugated). The relator identity is re-verified on the result.
pub fn glue(rep1: &Representation, rep2: &Representation, conj: &Conjugator) -> Result<Representation> {
    let n1 = rep1.surface.boundary;
    let n2 = rep2.surface.boundary;
    if n1 == 0 || n2 == 0 {
        return Err(Error::NonStandardIndex);
    }
    let c_last = rep1.boundary[n1 - 1]
        .as_sl2()
        .ok_or_else(|| Error::RealificationUnsupported("gluing is SL2-only".into()))?;
    let d_first = rep2.boundary[0]
        .as_sl2()
        .ok_or_else(|| Error::RealificationUnsupported("gluing is SL2-only".into()))?;
    let target = conj.act(&d_first.inverse());
    let defect = c_last.dist_to(&target);
    if defect > EPS_GLUE {
        return Err(Error::HolonomyMismatch(defect));
    }
    let conj_el = |g: &GroupElement| match g {
        GroupElement::Sl2(x) => GroupElement::Sl2(conj.act(x)),
        GroupElement::Unitary(_) => unreachable!(),
    };

    let mut handles = Vec::new();
    for (a, b) in &rep2.handles {
        handles.push((conj_el(a), conj_el(b)));
    }
    handles.extend(rep1.handles.iter().cloned());

    let mut boundary: Vec<GroupElement> = rep1.boundary[..n1 - 1].to_vec();
    let mut classes: Vec<BoundaryClass> = rep1.boundary_classes[..n1 - 1].to_vec();
    for (c, cl) in rep2.boundary[1..].iter().zip(&rep2.boundary_classes[1..]) {
        boundary.push(conj_el(c));
        classes.push(cl.clone());
    }

    let surface = SurfacePresentation {
        genus: rep1.surface.genus + rep2.surface.genus,
        boundary: n1 + n2 - 2,
    };
    let rep = Representation {
        surface,
        handles,
        boundary,
        boundary_classes: classes,
        provenance: Provenance::Glue {
            left: Box::new(rep1.provenance.clone()),
            right: Box::new(rep2.provenance.clone()),
        },
    };
    rep.check_relator()?;
    debug_assert_eq!(
        surface.euler_characteristic(),
        rep1.surface.euler_characteristic() + rep2.surface.euler_characteristic()
    );
    Ok(rep)
}

/// Find a rational conjugator witness between exact boundary matrices, i.e.
/// P with x = P y^{-1} P^{-1}, det P > 0.
pub fn glue_witness(x: &Sl2, y: &Sl2) -> Option<Conjugator> {
    let xm = x.exact_mat()?;
    let ym = y.exact_mat()?.inv_unimodular();
    if xm == ym {
        return Some(Conjugator::identity());
    }
    let p = crate::rational::rational_conjugator(&ym, &xm)?;
    Some(Conjugator::from_exact(p))
}

pub fn qmat_dist(a: &QMat2, b: &QMat2) -> f64 {
    let d = QMat2::new(&a.a - &b.a, &a.b - &b.b, &a.c - &b.c, &a.d - &b.d);
    q_to_f64(&d.abs_max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Sl2;
    use crate::rational::{q, qi};

    #[test]
    fn presentation_invariants() {
        let s = presentation(2, 1).unwrap();
        assert_eq!(s.euler_characteristic(), -3);
        assert_eq!(s.relator_length(), 9);
        assert_eq!(s.free_rank(), 4);
        assert!(presentation(1, 0).is_err());
    }

    fn pants_phi_minus() -> Representation {
        let c1 = Sl2::rotation_by_pi(q(1, 2));
        let c2 = Sl2::from_rational_i64(1, 1, 0, 1);
        let c3 = c1.mul(&c2).inverse();
        Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![c1, c2, c3],
            Provenance::Direct { label: "phi-".into() },
        )
        .unwrap()
    }

    #[test]
    fn relator_check_exact() {
        let rep = pants_phi_minus();
        assert_eq!(rep.relator_defect(), 0.0);
    }

    #[test]
    fn rotate_boundary_preserves_relator() {
        let rep = pants_phi_minus();
        let rot = rep.rotate_boundary();
        assert!(rot.relator_defect() < 1e-10);
        assert_eq!(rot.boundary_classes[2].as_sl2(), rep.boundary_classes[0].as_sl2());
    }

    #[test]
    fn glue_two_pants_gives_four_holed_sphere() {
        // Left: Borel pants ending in a hyperbolic with rational eigenvalues.
        let a = Sl2::from_rational(QMat2::new(qi(2), qi(0), qi(0), q(1, 2)));
        let b = Sl2::from_rational(QMat2::new(qi(3), qi(1), qi(0), q(1, 3)));
        let c = a.mul(&b).inverse();
        let left = Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![a, b, c.clone()],
            Provenance::Direct { label: "left".into() },
        )
        .unwrap();
        // Right: first boundary is c^{-1}, completed inside the Borel.
        let d1 = c.inverse();
        let d2 = Sl2::from_rational(QMat2::new(qi(5), qi(2), qi(0), q(1, 5)));
        let d3 = d1.mul(&d2).inverse();
        let right = Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![d1, d2, d3],
            Provenance::Direct { label: "right".into() },
        )
        .unwrap();
        let glued = glue(&left, &right, &Conjugator::identity()).unwrap();
        assert_eq!(glued.surface, SurfacePresentation { genus: 0, boundary: 4 });
        assert_eq!(glued.relator_defect(), 0.0);
    }

    #[test]
    fn glue_mismatch_is_detected() {
        let rep = pants_phi_minus();
        let err = glue(&rep, &rep, &Conjugator::identity());
        assert!(matches!(err, Err(Error::HolonomyMismatch(_))));
    }
}
