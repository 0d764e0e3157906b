//! SO(2)-valued representations with prescribed signatures: rotation angles
//! are exact rationals times pi, the angle sum is an exact multiple of 2pi,
//! and the signature equals the rho sum since the Toledo invariant vanishes
//! on rotation groups.

use crate::error::{Error, Result};
use crate::group::Sl2;
use crate::rational::{q, q_mod, q_render, qi, Q};
use crate::surfaces::{presentation, Provenance, Representation};
use num::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum So2Mode {
    /// Every boundary angle elliptic (t not in {0, 1}).
    Elliptic,
    /// At most one boundary may be trivial, the rest elliptic.
    Relaxed,
}

/// Solve for n angles t_k (units of pi, in [0,2)) with prescribed values at
/// given slots, sum in 2Z, rho sum = target, and the ellipticity profile of
/// the mode. Trivial slots (t = 0) are only placed on free slots.
pub fn so2_angles(
    n: usize,
    prescribed: &[(usize, Q)],
    target: i64,
    mode: So2Mode,
) -> Result<Vec<Q>> {
    if target % 2 != 0 {
        return Err(Error::UnachievableValue { m: target, reason: "rotation signatures are even".into() });
    }
    for (slot, t) in prescribed {
        assert!(*slot < n, "prescribed slot out of range");
        assert!(!t.is_zero() && !t.is_one(), "prescribed angles must be elliptic");
    }
    // Strict attempt: all n angles elliptic forces target = 2n - 4a.
    let twice_n = 2 * n as i64;
    if (twice_n - target) % 4 == 0 {
        if let Ok(v) = distribute(n, prescribed, target, None) {
            return Ok(v);
        }
        if mode == So2Mode::Elliptic {
            return Err(Error::UnachievableValue {
                m: target,
                reason: "no elliptic angle solution in range".into(),
            });
        }
    } else if mode == So2Mode::Elliptic {
        return Err(Error::UnachievableValue {
            m: target,
            reason: format!("boundary-elliptic signatures on {n} components are 2n-4a"),
        });
    }
    // Relaxed: one trivial slot among the free ones.
    let trivial = (0..n)
        .find(|i| !prescribed.iter().any(|(s, _)| s == i))
        .ok_or_else(|| Error::UnachievableValue { m: target, reason: "no free slot for a trivial angle".into() })?;
    if (2 * (n as i64 - 1) - target) % 4 != 0 {
        return Err(Error::UnachievableValue {
            m: target,
            reason: "parity unreachable even with one trivial boundary".into(),
        });
    }
    distribute(n, prescribed, target, Some(trivial))
}

/// Fill the free slots with elliptic rational angles so that the exact rho
/// sum hits the target and the angle sum is in 2Z.
fn distribute(
    n: usize,
    prescribed: &[(usize, Q)],
    target: i64,
    trivial: Option<usize>,
) -> Result<Vec<Q>> {
    let mut out: Vec<Option<Q>> = vec![None; n];
    let mut sigma_p = Q::zero();
    for (slot, t) in prescribed {
        out[*slot] = Some(t.clone());
        sigma_p += t;
    }
    if let Some(tv) = trivial {
        out[tv] = Some(Q::zero());
    }
    let free: Vec<usize> = (0..n).filter(|i| out[*i].is_none()).collect();
    let f = free.len() as i64;
    let nonzero = n as i64 - trivial.map(|_| 1).unwrap_or(0);
    // rho = sum over nonzero slots of 2(1 - t) = 2*nonzero - 2*total, and the
    // total angle sum must be 2a.
    let a_num = 2 * nonzero - target;
    if a_num % 4 != 0 {
        return Err(Error::UnachievableValue { m: target, reason: "parity mismatch".into() });
    }
    let a = a_num / 4;
    let s = qi(2 * a) - &sigma_p; // required sum over free slots
    if f == 0 {
        return if s.is_zero() {
            Ok(out.into_iter().map(Option::unwrap).collect())
        } else {
            Err(Error::UnachievableValue { m: target, reason: "prescribed angles exhaust all slots".into() })
        };
    }
    if !s.is_positive() || s >= qi(2 * f) {
        return Err(Error::UnachievableValue {
            m: target,
            reason: format!("free angle sum {} outside (0, {})", q_render(&s), 2 * f),
        });
    }
    // Equal split; when the split lands on the excluded angle pi, jiggle in
    // pairs (and one balanced triple when the count is odd).
    let base = &s / qi(f);
    let mut vals = vec![base.clone(); f as usize];
    let bad = |t: &Q| t.is_zero() || t.is_one() || *t >= qi(2) || t.is_negative();
    if bad(&base) {
        if f < 2 {
            return Err(Error::UnachievableValue {
                m: target,
                reason: "single free slot forced onto a non-elliptic angle".into(),
            });
        }
        let d = pick_jiggle(&base);
        let mut k = 0usize;
        if f % 2 == 1 {
            vals[0] = &base + &d;
            vals[1] = &base + &d;
            vals[2] = &base - qi(2) * &d;
            k = 3;
        }
        while k + 1 < vals.len() {
            vals[k] = &base + &d;
            vals[k + 1] = &base - &d;
            k += 2;
        }
        if vals.iter().any(bad) {
            return Err(Error::UnachievableValue { m: target, reason: "angle jiggle failed".into() });
        }
    }
    for (k, i) in free.iter().enumerate() {
        out[*i] = Some(q_mod(&vals[k], 2));
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

fn pick_jiggle(base: &Q) -> Q {
    // Keep base +/- d inside (0,2) and off 1.
    for cand in [q(1, 3), q(1, 5), q(1, 7), q(2, 7)] {
        let hi = base + &cand;
        let lo = base - &cand;
        let ok = |t: &Q| t.is_positive() && *t < qi(2) && !t.is_one();
        if ok(&hi) && ok(&lo) {
            return cand;
        }
    }
    q(1, 11)
}

/// SO(2)-valued representation on the genus-g surface with n boundary
/// components and signature m. `prescribed` fixes the angle at boundary 1.
pub fn so2_rep(
    g: usize,
    n: usize,
    m: i64,
    prescribed: Option<Q>,
    mode: So2Mode,
) -> Result<Representation> {
    let pres: Vec<(usize, Q)> = prescribed.into_iter().map(|t| (0, q_mod(&t, 2))).collect();
    let angles = so2_angles(n, &pres, m, mode)?;
    so2_rep_from_angles(g, n, &angles)
}

/// Assemble a rotation representation from explicit exact angles; handles are
/// trivial, the relator closes exactly in the rotation tags.
pub fn so2_rep_from_angles(g: usize, n: usize, angles: &[Q]) -> Result<Representation> {
    assert_eq!(angles.len(), n);
    let total: Q = angles.iter().fold(Q::zero(), |acc, t| acc + t);
    if !q_mod(&total, 2).is_zero() {
        return Err(Error::ParameterOutOfRange(format!(
            "angle sum {} is not a multiple of 2pi",
            q_render(&total)
        )));
    }
    let id = Sl2::identity;
    Representation::sl2(
        presentation(g, n)?,
        (0..g).map(|_| (id(), id())).collect(),
        angles.iter().map(|t| Sl2::rotation_by_pi(t.clone())).collect(),
        Provenance::So2 { angles: angles.iter().map(q_render).collect() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::signature_of;

    #[test]
    fn elliptic_mode_spec_example() {
        // (g=0, n=3, a=1, theta = pi/2): angles (1/2, 3/4, 3/4), signature 2.
        let rep = so2_rep(0, 3, 2, Some(q(1, 2)), So2Mode::Elliptic).unwrap();
        let report = signature_of(&rep).unwrap();
        assert_eq!(report.signature_formula, 2);
    }

    #[test]
    fn relaxed_mode_reaches_off_parity() {
        // n = 4, m = 0 in relaxed mode: paired angles summing to 2pi.
        let rep = so2_rep(0, 4, 0, None, So2Mode::Relaxed).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 0);
        for m in [-4i64, -2, 0, 2, 4] {
            let rep = so2_rep(0, 4, m, None, So2Mode::Relaxed).unwrap();
            assert_eq!(signature_of(&rep).unwrap().signature_formula, m);
        }
    }

    #[test]
    fn odd_is_refused() {
        assert!(matches!(
            so2_rep(0, 3, 1, None, So2Mode::Relaxed),
            Err(Error::UnachievableValue { .. })
        ));
    }

    #[test]
    fn elliptic_mode_value_set() {
        // Achieved set must be exactly {2n - 4a : 0 < a < n}.
        for n in 2..=6usize {
            let expect: Vec<i64> = (1..n as i64).map(|a| 2 * n as i64 - 4 * a).collect();
            for m in -12..=12i64 {
                let got = so2_rep(0, n, m, None, So2Mode::Elliptic);
                assert_eq!(got.is_ok(), expect.contains(&m), "n={n} m={m}");
                if let Ok(rep) = got {
                    assert_eq!(signature_of(&rep).unwrap().signature_formula, m);
                }
            }
        }
    }

    #[test]
    fn prescriptions_are_honored() {
        let rep = so2_rep(0, 5, -2, Some(q(3, 2)), So2Mode::Elliptic).unwrap();
        match rep.boundary_classes[0].as_sl2().unwrap() {
            crate::group::ConjClass::Elliptic(a) => assert_eq!(a.exact, Some(q(3, 2))),
            other => panic!("{other:?}"),
        }
        assert_eq!(signature_of(&rep).unwrap().signature_formula, -2);
    }
}
