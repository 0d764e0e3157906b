//! Closed-form achievable-signature sets for each representation family.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// The representation families with classified signature value sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Sp(2p,R) (or SU(p,p)): every integer in [2p chi, -2p chi].
    MainSp { p: usize },
    /// Boundary hyperbolic-or-parabolic SL(2,R).
    HyperparabolicSL2,
    /// Boundary elliptic SL(2,R).
    EllipticSL2,
    /// U(p).
    Up { p: usize },
    /// U(p,q) diagonal tori, genus 0.
    UpqGenus0 { p: usize, q: usize },
    /// U(p,p) x U(q-p) inside U(p,q), q >= p.
    UppTimes { p: usize, q: usize },
}

fn interval(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).collect()
}

fn evens(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).filter(|m| m % 2 == 0).collect()
}

/// The set of signatures achieved by the family on the surface of genus g
/// with n boundary components.
pub fn value_set(family: Family, g: usize, n: usize) -> Result<BTreeSet<i64>> {
    let chi = 2 - 2 * (g as i64) - n as i64;
    match family {
        Family::MainSp { p } => {
            if chi >= 0 {
                return Err(Error::UnsupportedSurface("needs chi < 0".into()));
            }
            Ok(interval(2 * p as i64 * chi, -2 * p as i64 * chi))
        }
        Family::HyperparabolicSL2 => {
            if chi >= 0 {
                return Err(Error::UnsupportedSurface("needs chi < 0".into()));
            }
            Ok(interval(2 * chi, -2 * chi))
        }
        Family::EllipticSL2 => {
            if n == 0 || chi >= 0 {
                return Err(Error::UnsupportedSurface("needs nonempty boundary, chi < 0".into()));
            }
            Ok(match g {
                0 => (0..=chi.abs()).map(|a| 2 * chi + 4 * a).collect(),
                1 if n == 1 => [-2i64, 2].into_iter().collect(),
                _ => evens(2 * chi, -2 * chi),
            })
        }
        Family::Up { p } => {
            let p = p as i64;
            if g == 0 {
                if n < 2 {
                    return Err(Error::UnsupportedSurface("genus 0 needs n >= 2".into()));
                }
                Ok(interval(-p * (n as i64 - 2), p * (n as i64 - 2)))
            } else {
                if n < 1 {
                    return Err(Error::UnsupportedSurface("needs n >= 1".into()));
                }
                let cap = (n as i64) * p - 2;
                let mut s: BTreeSet<i64> =
                    if cap >= 0 { interval(-cap, cap) } else { BTreeSet::new() };
                s.insert(0);
                Ok(s)
            }
        }
        Family::UpqGenus0 { p, q } => {
            if g != 0 || n < 2 {
                return Err(Error::UnsupportedSurface("genus 0 with n >= 2 only".into()));
            }
            let r = (p + q) as i64;
            Ok(interval(-r * (n as i64 - 2), r * (n as i64 - 2)))
        }
        Family::UppTimes { p, q } => {
            if q < p {
                return Err(Error::UnsupportedSurface("needs q >= p".into()));
            }
            let (pp, qq, nn, gg) = (p as i64, q as i64, n as i64, g as i64);
            if g == 0 {
                if n < 2 {
                    return Err(Error::UnsupportedSurface("genus 0 needs n >= 2".into()));
                }
                Ok(interval(-(pp + qq) * (nn - 2), (pp + qq) * (nn - 2)))
            } else if nn * (qq - pp) <= 1 {
                let cap = 2 * pp * (2 * gg - 2 + nn);
                Ok(interval(-cap, cap))
            } else {
                let cap = pp * (nn + 4 * gg - 4) + qq * nn - 2;
                Ok(interval(-cap, cap))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_genus1_one_boundary() {
        let s = value_set(Family::EllipticSL2, 1, 1).unwrap();
        assert_eq!(s, [-2i64, 2].into_iter().collect());
    }

    #[test]
    fn up_torus_with_one_boundary() {
        // np = 2: the interval [2-np, np-2] collapses to {0}.
        let s = value_set(Family::Up { p: 2 }, 1, 1).unwrap();
        assert_eq!(s, [0i64].into_iter().collect());
        let s = value_set(Family::Up { p: 2 }, 1, 2).unwrap();
        assert_eq!(s, (-2..=2).collect());
        // U(1) on (1,1): only 0.
        let s = value_set(Family::Up { p: 1 }, 1, 1).unwrap();
        assert_eq!(s, [0i64].into_iter().collect());
    }

    #[test]
    fn main_sp_pants() {
        let s = value_set(Family::MainSp { p: 1 }, 0, 3).unwrap();
        assert_eq!(s, (-2..=2).collect());
    }

    #[test]
    fn elliptic_genus0_steps_of_four() {
        let s = value_set(Family::EllipticSL2, 0, 4).unwrap();
        assert_eq!(s, [-4i64, 0, 4].into_iter().collect());
    }

    #[test]
    fn sets_are_symmetric_and_bounded() {
        for (fam, g, n) in [
            (Family::MainSp { p: 2 }, 0, 3),
            (Family::HyperparabolicSL2, 1, 2),
            (Family::EllipticSL2, 2, 1),
            (Family::Up { p: 3 }, 1, 2),
            (Family::UpqGenus0 { p: 2, q: 1 }, 0, 4),
            (Family::UppTimes { p: 1, q: 2 }, 1, 2),
        ] {
            let s = value_set(fam, g, n).unwrap();
            for m in &s {
                assert!(s.contains(&-m));
            }
        }
    }
}
