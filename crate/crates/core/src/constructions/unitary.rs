//! Diagonal-torus representations into U(p) and U(p,q) with prescribed
//! signatures, plus the permutation/twist handle pair that absorbs an
//! arbitrary SU(p) boundary product on genus >= 1 surfaces.

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::rational::{q_mod, q_render, qi, Q};
use crate::surfaces::{presentation, BoundaryClass, GroupElement, Provenance, Representation};
use num::Zero;

/// Angles t_1..t_nu (units of pi, each in (0,2)) with sum 2k and
/// sum(1 - t) = target, padded with zeros to `slots`.
fn torus_angle_row(slots: usize, target: i64) -> Result<Vec<Q>> {
    if target == 0 {
        return Ok(vec![Q::zero(); slots]);
    }
    let n = slots as i64;
    let mut nu = if (n - target) % 2 == 0 { n } else { n - 1 };
    while nu > 0 {
        let k = (nu - target) / 2;
        if k > 0 && k < nu {
            // nu angles of 2k/nu each.
            let t = Q::new((2 * k).into(), nu.into());
            let mut out = vec![t; nu as usize];
            out.resize(slots, Q::zero());
            return Ok(out);
        }
        nu -= 2;
    }
    Err(Error::UnachievableValue {
        m: target,
        reason: format!("no torus angle row on {slots} slots"),
    })
}

fn rho_row(angles: &[Q]) -> Q {
    angles.iter().fold(Q::zero(), |acc, t| {
        if t.is_zero() {
            acc
        } else {
            acc + (qi(1) - t)
        }
    })
}

/// U(p)-valued representation on genus g >= 1 with n boundary components and
/// signature m in [2-np, np-2] union {0}: diagonal-torus boundaries, with the
/// first handle pair a cyclic shift and a diagonal twist whose commutator is
/// the inverse boundary product.
pub fn up_rep(g: usize, n: usize, p: usize, m: i64) -> Result<Representation> {
    if g < 1 || n < 1 || p < 1 {
        return Err(Error::UnsupportedSurface("need g >= 1, n >= 1, p >= 1".into()));
    }
    let cap = (n * p) as i64 - 2;
    if m != 0 && (cap < 0 || m.abs() > cap) {
        return Err(Error::UnachievableValue {
            m,
            reason: format!("U({p}) signatures on genus >= 1 lie in [{}, {}] u {{0}}", -cap.max(0), cap.max(0)),
        });
    }
    // One flat list of np angles; slot (i, j) = boundary i, factor j.
    let flat = torus_angle_row(n * p, m)?;
    let rows: Vec<Vec<Q>> = (0..n).map(|i| flat[i * p..(i + 1) * p].to_vec()).collect();
    debug_assert_eq!(
        rows.iter().map(|r| rho_row(r)).fold(Q::zero(), |a, b| a + b),
        qi(m)
    );
    build_up_rep(g, n, p, &rows)
}

/// Assemble the representation from explicit per-boundary angle rows.
pub fn build_up_rep(g: usize, n: usize, p: usize, rows: &[Vec<Q>]) -> Result<Representation> {
    assert_eq!(rows.len(), n);
    // Theta_j = sum_i theta_{i,j}; the total must vanish mod 2 (determinant
    // condition), and the commutator of the twist pair absorbs the product.
    let mut thetas = vec![Q::zero(); p];
    for row in rows {
        assert_eq!(row.len(), p);
        for (j, t) in row.iter().enumerate() {
            thetas[j] += t;
        }
    }
    let total: Q = thetas.iter().fold(Q::zero(), |a, b| a + b);
    if !q_mod(&total, 2).is_zero() {
        return Err(Error::ParameterOutOfRange(format!(
            "total angle sum {} not a multiple of 2pi",
            q_render(&total)
        )));
    }
    let handles = if p == 1 {
        // Abelian target: each factor sum must itself vanish.
        if !q_mod(&thetas[0], 2).is_zero() {
            return Err(Error::ParameterOutOfRange(
                "U(1) boundary product must be trivial".into(),
            ));
        }
        let id = Unitary::identity_torus(1, 0);
        vec![(id.clone(), id); g]
    } else {
        // A = cyclic shift, B = diag of partial products of e^{i Theta_j}:
        // [A,B] = diag(e^{-i Theta_j}) = (phi(c_1)...phi(c_n))^{-1}.
        let mut a_entries = vec![(0.0, 0.0); p * p];
        for j in 0..p {
            a_entries[((j + 1) % p) * p + j] = (1.0, 0.0);
        }
        let a = Unitary::BlockMatrix { p, q: 0, entries: a_entries };
        let mut partial = Q::zero();
        let mut b_entries = vec![(0.0, 0.0); p * p];
        for j in 0..p {
            partial += &thetas[j];
            let th = crate::rational::q_to_f64(&partial) * std::f64::consts::PI;
            b_entries[j * p + j] = (th.cos(), th.sin());
        }
        let b = Unitary::BlockMatrix { p, q: 0, entries: b_entries };
        let id = Unitary::identity_torus(p, 0);
        let mut hs = vec![(a, b)];
        hs.extend((1..g).map(|_| (id.clone(), id.clone())));
        hs
    };
    let boundary: Vec<Unitary> = rows
        .iter()
        .map(|r| Unitary::DiagonalTorus { p, q: 0, angles: r.clone() })
        .collect();
    unitary_rep(g, n, handles, boundary)
}

/// U(p,q)-valued diagonal representation on genus 0 with n >= 2 boundary
/// components and signature m, |m| <= (p+q)(n-2); every factor angle column
/// sums to a multiple of 2pi.
pub fn upq_genus0_rep(n: usize, p: usize, q: usize, m: i64) -> Result<Representation> {
    if n < 2 || p + q == 0 {
        return Err(Error::UnsupportedSurface("need n >= 2 and p + q >= 1".into()));
    }
    let cap = (p + q) as i64 * (n as i64 - 2);
    if m.abs() > cap {
        return Err(Error::UnachievableValue {
            m,
            reason: format!("U({p},{q}) genus-0 signatures lie in [-{cap}, {cap}]"),
        });
    }
    // Split m = sum_{j<=p} m_j - sum_{l>p} m_l with |m_j| <= n-2.
    let per = n as i64 - 2;
    let mut remaining = m;
    let mut factor_targets = Vec::with_capacity(p + q);
    for _ in 0..p {
        let take = remaining.clamp(-per, per);
        factor_targets.push(take);
        remaining -= take;
    }
    for _ in 0..q {
        let take = (-remaining).clamp(-per, per);
        factor_targets.push(take);
        remaining += take;
    }
    if remaining != 0 {
        return Err(Error::UnachievableValue { m, reason: "factor split failed".into() });
    }
    // Per-factor columns, each with its own 2pi-condition.
    let mut columns = Vec::with_capacity(p + q);
    for target in &factor_targets {
        columns.push(torus_angle_row(n, *target)?);
    }
    let boundary: Vec<Unitary> = (0..n)
        .map(|i| Unitary::DiagonalTorus {
            p,
            q,
            angles: columns.iter().map(|col| col[i].clone()).collect(),
        })
        .collect();
    unitary_rep(0, n, Vec::new(), boundary)
}

fn unitary_rep(
    g: usize,
    n: usize,
    handles: Vec<(Unitary, Unitary)>,
    boundary: Vec<Unitary>,
) -> Result<Representation> {
    let (shape_p, shape_q) = boundary.first().map(|u| u.shape()).unwrap_or((0, 0));
    let classes: Vec<BoundaryClass> = boundary
        .iter()
        .map(|u| match u {
            Unitary::DiagonalTorus { p, q, angles } => BoundaryClass::Torus {
                p: *p,
                q: *q,
                angles: angles.clone(),
            },
            _ => unreachable!("boundary images are diagonal tori"),
        })
        .collect();
    for u in &boundary {
        if u.form_defect() > 1e-10 {
            return Err(Error::ParameterOutOfRange("boundary breaks the (p,q) form".into()));
        }
    }
    let rep = Representation {
        surface: presentation(g, n)?,
        handles: handles
            .into_iter()
            .map(|(a, b)| (GroupElement::Unitary(a), GroupElement::Unitary(b)))
            .collect(),
        boundary: boundary.into_iter().map(GroupElement::Unitary).collect(),
        boundary_classes: classes,
        provenance: Provenance::UnitaryTorus { p: shape_p, q: shape_q },
    };
    let defect = rep.relator_defect();
    if defect > 1e-8 {
        return Err(Error::NonCentralProduct(defect));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::signature_of;

    #[test]
    fn up_rep_spec_examples() {
        // (g=1, n=1, p=2, m=0): trivial boundary.
        let rep = up_rep(1, 1, 2, 0).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 0);

        // (g=1, n=2, p=1, m=0).
        let rep = up_rep(1, 2, 1, 0).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 0);

        // (g=1, n=3, p=1, m=1): three nonzero angles summing to 2pi.
        let rep = up_rep(1, 3, 1, 1).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 1);
    }

    #[test]
    fn up_rep_rejects_out_of_range() {
        assert!(up_rep(1, 1, 1, 1).is_err());
        assert!(up_rep(1, 2, 2, 3).is_err());
    }

    #[test]
    fn up_rep_full_value_sets() {
        for p in 1..=3usize {
            for n in 1..=3usize {
                let cap = ((n * p) as i64 - 2).max(0);
                for m in -cap..=cap {
                    if m != 0 && (n * p) as i64 - 2 < m.abs() {
                        continue;
                    }
                    let rep = up_rep(1, n, p, m).unwrap_or_else(|e| panic!("p={p} n={n} m={m}: {e}"));
                    assert_eq!(
                        signature_of(&rep).unwrap().signature_formula,
                        m,
                        "p={p} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn upq_genus0_spec_examples() {
        let rep = upq_genus0_rep(2, 1, 1, 0).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 0);

        let rep = upq_genus0_rep(3, 1, 1, 2).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 2);

        let rep = upq_genus0_rep(4, 2, 0, 3).unwrap();
        assert_eq!(signature_of(&rep).unwrap().signature_formula, 3);

        assert!(upq_genus0_rep(3, 1, 1, 5).is_err());
    }
}
