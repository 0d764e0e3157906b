//! Independent signature oracle: the intersection form on twisted cohomology,
//! evaluated on a concrete Delta-complex model of the surface.
//!
//! The model cones the identification polygon with side word
//! prod [a_i,b_i] prod (d_j c_j d_j^-1) from an interior vertex: one triangle
//! per polygon side, radial edges to the polygon vertices, and the boundary
//! circles appearing as the c_j edge loops. Twisted cochains live on chosen
//! lifts; the differentials carry the holonomy of the deck translations read
//! off while walking the polygon word. The signature is computed on the image
//! of relative in absolute H^1, via the front-face/back-face cup product
//! against the relative fundamental cycle.

use crate::error::{Error, Result};
use crate::group::Unitary;
use crate::rational::{q_to_f64, QMat2};
use crate::surfaces::{GroupElement, Representation};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// Global orientation of the relative fundamental cycle. Pinned by the
/// reference signature sign(phi_-) = -1 and cross-checked by every other
/// catalog value.
const ORIENT: f64 = -1.0;

const EPS_DD: f64 = 1e-10;
const EPS_SYM: f64 = 1e-9;
const EPS_RANK_EIG: f64 = 1e-7;
const EPS_GAP: f64 = 1e-10;
/// Desk-scale caps.
const MAX_COEF_DIM: usize = 8;
const MAX_SIDES: usize = 40;

/// Coefficient matrix: dense f64, with exact 2x2 rational diagonal blocks
/// when the representation is exact.
#[derive(Clone, Debug)]
struct Coef {
    f: DMatrix<f64>,
    exact: Option<Vec<QMat2>>,
}

impl Coef {
    fn identity(dim: usize, exact_blocks: Option<usize>) -> Self {
        Coef {
            f: DMatrix::identity(dim, dim),
            exact: exact_blocks.map(|p| vec![QMat2::identity(); p]),
        }
    }

    fn mul(&self, o: &Coef) -> Coef {
        let exact = match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()),
            _ => None,
        };
        Coef { f: &self.f * &o.f, exact }
    }

    fn inverse(&self) -> Coef {
        let exact = self
            .exact
            .as_ref()
            .map(|v| v.iter().map(QMat2::inv_unimodular).collect());
        let f = self.f.clone().try_inverse().expect("coefficient matrix invertible");
        Coef { f, exact }
    }
}

fn sl2_coef(g: &crate::group::Sl2) -> Coef {
    let f = DMatrix::from_row_slice(2, 2, &g.m);
    Coef { f, exact: g.exact_mat().map(|m| vec![m]) }
}

fn blocks_coef(v: &[crate::group::Sl2]) -> Coef {
    let p = v.len();
    let mut f = DMatrix::zeros(2 * p, 2 * p);
    let mut exact = Vec::new();
    let mut all_exact = true;
    for (k, g) in v.iter().enumerate() {
        f[(2 * k, 2 * k)] = g.m[0];
        f[(2 * k, 2 * k + 1)] = g.m[1];
        f[(2 * k + 1, 2 * k)] = g.m[2];
        f[(2 * k + 1, 2 * k + 1)] = g.m[3];
        match g.exact_mat() {
            Some(m) => exact.push(m),
            None => all_exact = false,
        }
    }
    Coef { f, exact: all_exact.then_some(exact) }
}

fn rot2(theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    [c, -s, s, c]
}

/// Realification of a unitary element to Sp(2(p+q), R): each U(1) factor
/// becomes a rotation block, with the angle reversed on the negative factors
/// so the standard per-block symplectic form works throughout.
fn unitary_coef(u: &Unitary) -> Result<Coef> {
    match u {
        Unitary::Sl2Blocks(v) => Ok(blocks_coef(v)),
        Unitary::DiagonalTorus { p, q, angles } => {
            let n = p + q;
            let mut f = DMatrix::zeros(2 * n, 2 * n);
            for (j, t) in angles.iter().enumerate() {
                let mut th = q_to_f64(t) * PI;
                if j >= *p {
                    th = -th;
                }
                let r = rot2(th);
                f[(2 * j, 2 * j)] = r[0];
                f[(2 * j, 2 * j + 1)] = r[1];
                f[(2 * j + 1, 2 * j)] = r[2];
                f[(2 * j + 1, 2 * j + 1)] = r[3];
            }
            Ok(Coef { f, exact: None })
        }
        Unitary::BlockMatrix { p, q, entries } => {
            if *q != 0 {
                return Err(Error::RealificationUnsupported(
                    "general U(p,q) matrices with q > 0".into(),
                ));
            }
            let n = *p;
            let mut f = DMatrix::zeros(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    let (re, im) = entries[i * n + j];
                    f[(2 * i, 2 * j)] = re;
                    f[(2 * i, 2 * j + 1)] = -im;
                    f[(2 * i + 1, 2 * j)] = im;
                    f[(2 * i + 1, 2 * j + 1)] = re;
                }
            }
            Ok(Coef { f, exact: None })
        }
    }
}

fn element_coef(g: &GroupElement) -> Result<Coef> {
    match g {
        GroupElement::Sl2(x) => Ok(sl2_coef(x)),
        GroupElement::Unitary(u) => unitary_coef(u),
    }
}

/// Standard symplectic pairing on the coefficients, blockwise x0*y1 - x1*y0.
fn omega(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let mut acc = 0.0;
    let p = x.len() / 2;
    for b in 0..p {
        acc += x[2 * b] * y[2 * b + 1] - x[2 * b + 1] * y[2 * b];
    }
    acc
}

struct CupTerm {
    eps: f64,
    front_edge: usize,
    cross_edge: usize,
    deck: DMatrix<f64>,
}

/// The twisted cochain complex of the coned polygon model.
pub struct TwistedComplex {
    /// Coefficient dimension 2p.
    pub coef_dim: usize,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_triangles: usize,
    pub d0: DMatrix<f64>,
    pub d1: DMatrix<f64>,
    /// Edge indices of the boundary loops c_j.
    pub boundary_edges: Vec<usize>,
    cup: Vec<CupTerm>,
    exact_d: Option<(RMat, RMat)>,
    genus: usize,
    boundary: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    A(usize),
    B(usize),
    D(usize),
    C(usize),
}

fn word(g: usize, n: usize) -> Vec<(Letter, bool)> {
    let mut w = Vec::new();
    for i in 0..g {
        w.push((Letter::A(i), true));
        w.push((Letter::B(i), true));
        w.push((Letter::A(i), false));
        w.push((Letter::B(i), false));
    }
    for j in 0..n {
        w.push((Letter::D(j), true));
        w.push((Letter::C(j), true));
        w.push((Letter::D(j), false));
    }
    w
}

/// Build the twisted complex for a representation.
pub fn build_model(rep: &Representation) -> Result<TwistedComplex> {
    let g = rep.surface.genus;
    let n = rep.surface.boundary;
    let ell = 4 * g + 3 * n;
    if ell > MAX_SIDES {
        return Err(Error::UnsupportedSurface(format!(
            "polygon with {ell} sides exceeds the desk-scale cap {MAX_SIDES}"
        )));
    }
    // Coefficient images of the generators.
    let mut handle_coefs = Vec::new();
    for (a, b) in &rep.handles {
        handle_coefs.push((element_coef(a)?, element_coef(b)?));
    }
    let mut boundary_coefs = Vec::new();
    for c in &rep.boundary {
        boundary_coefs.push(element_coef(c)?);
    }
    let dim = boundary_coefs
        .first()
        .map(|c| c.f.nrows())
        .unwrap_or_else(|| handle_coefs[0].0.f.nrows());
    if dim > MAX_COEF_DIM {
        return Err(Error::RealificationUnsupported(format!(
            "coefficient dimension {dim} exceeds the cap {MAX_COEF_DIM}"
        )));
    }
    let exact_blocks = boundary_coefs
        .iter()
        .chain(handle_coefs.iter().flat_map(|(a, b)| [a, b]))
        .all(|c| c.exact.is_some())
        .then_some(dim / 2);

    // Walk the polygon word.
    let w = word(g, n);
    // vertex indices: 0 = cone point O, 1 = v0, 2+j = w_j.
    // edge indices: 0..ell radial, then a_i, b_i, then d_j, c_j.
    let edge_a = |i: usize| ell + 2 * i;
    let edge_b = |i: usize| ell + 2 * i + 1;
    let edge_d = |j: usize| ell + 2 * g + 2 * j;
    let edge_c = |j: usize| ell + 2 * g + 2 * j + 1;
    let num_edges = ell + 2 * g + 2 * n;
    let num_vertices = 2 + n;

    struct Cross {
        edge: usize,
        positive: bool,
        deck: Coef,
    }
    let mut crossings: Vec<Cross> = Vec::new();
    let mut positions: Vec<(usize, Coef)> = Vec::new(); // pi_l = (vertex, deck)

    let mut at_vertex = 1usize;
    let mut deck = Coef::identity(dim, exact_blocks);
    for &(letter, positive) in &w {
        positions.push((at_vertex, deck.clone()));
        match (letter, positive) {
            (Letter::A(i), true) => {
                crossings.push(Cross { edge: edge_a(i), positive: true, deck: deck.clone() });
                deck = deck.mul(&handle_coefs[i].0);
            }
            (Letter::A(i), false) => {
                deck = deck.mul(&handle_coefs[i].0.inverse());
                crossings.push(Cross { edge: edge_a(i), positive: false, deck: deck.clone() });
            }
            (Letter::B(i), true) => {
                crossings.push(Cross { edge: edge_b(i), positive: true, deck: deck.clone() });
                deck = deck.mul(&handle_coefs[i].1);
            }
            (Letter::B(i), false) => {
                deck = deck.mul(&handle_coefs[i].1.inverse());
                crossings.push(Cross { edge: edge_b(i), positive: false, deck: deck.clone() });
            }
            (Letter::D(j), true) => {
                crossings.push(Cross { edge: edge_d(j), positive: true, deck: deck.clone() });
                at_vertex = 2 + j;
            }
            (Letter::C(j), true) => {
                crossings.push(Cross { edge: edge_c(j), positive: true, deck: deck.clone() });
                deck = deck.mul(&boundary_coefs[j]);
            }
            (Letter::D(j), false) => {
                crossings.push(Cross { edge: edge_d(j), positive: false, deck: deck.clone() });
                at_vertex = 1;
            }
            (Letter::C(_), false) => unreachable!(),
        }
    }

    // d0: rows edges, cols vertices (blocks of size dim).
    let mut d0 = DMatrix::zeros(num_edges * dim, num_vertices * dim);
    let mut d0x = exact_blocks.map(|p| RMat::zeros(num_edges * 2 * p, num_vertices * 2 * p));
    let id = Coef::identity(dim, exact_blocks);
    fn put(
        dim: usize,
        m: &mut DMatrix<f64>,
        mx: &mut Option<RMat>,
        row: usize,
        col: usize,
        c: &Coef,
        positive: bool,
    ) {
        let sgn = if positive { 1.0 } else { -1.0 };
        for i in 0..dim {
            for j in 0..dim {
                m[(row * dim + i, col * dim + j)] += sgn * c.f[(i, j)];
            }
        }
        if let (Some(mx), Some(bl)) = (mx.as_mut(), c.exact.as_ref()) {
            mx.add_block(row, col, bl, positive);
        }
    }
    for (l, (v, dk)) in positions.iter().enumerate() {
        put(dim, &mut d0, &mut d0x, l, *v, dk, true);
        put(dim, &mut d0, &mut d0x, l, 0, &id, false);
    }
    for i in 0..g {
        put(dim, &mut d0, &mut d0x, edge_a(i), 1, &handle_coefs[i].0, true);
        put(dim, &mut d0, &mut d0x, edge_a(i), 1, &id, false);
        put(dim, &mut d0, &mut d0x, edge_b(i), 1, &handle_coefs[i].1, true);
        put(dim, &mut d0, &mut d0x, edge_b(i), 1, &id, false);
    }
    for j in 0..n {
        put(dim, &mut d0, &mut d0x, edge_d(j), 2 + j, &id, true);
        put(dim, &mut d0, &mut d0x, edge_d(j), 1, &id, false);
        put(dim, &mut d0, &mut d0x, edge_c(j), 2 + j, &boundary_coefs[j], true);
        put(dim, &mut d0, &mut d0x, edge_c(j), 2 + j, &id, false);
    }

    // d1: rows triangles, cols edges; cup terms alongside.
    let mut d1 = DMatrix::zeros(ell * dim, num_edges * dim);
    let mut d1x = exact_blocks.map(|p| RMat::zeros(ell * 2 * p, num_edges * 2 * p));
    let mut cup = Vec::new();
    for (l, cr) in crossings.iter().enumerate() {
        let r_this = l;
        let r_next = (l + 1) % ell;
        put(dim, &mut d1, &mut d1x, l, cr.edge, &cr.deck, true);
        if cr.positive {
            put(dim, &mut d1, &mut d1x, l, r_next, &id, false);
            put(dim, &mut d1, &mut d1x, l, r_this, &id, true);
        } else {
            put(dim, &mut d1, &mut d1x, l, r_this, &id, false);
            put(dim, &mut d1, &mut d1x, l, r_next, &id, true);
        }
        cup.push(CupTerm {
            eps: if cr.positive { ORIENT } else { -ORIENT },
            front_edge: if cr.positive { r_this } else { r_next },
            cross_edge: cr.edge,
            deck: cr.deck.f.clone(),
        });
    }

    // Structural sanity: d1 d0 = 0 and the Euler characteristic count.
    let dd = &d1 * &d0;
    let scale = d1.amax().max(d0.amax()).max(1.0);
    if dd.amax() > EPS_DD * scale {
        return Err(Error::RealificationUnsupported(format!(
            "d1 d0 = {} exceeds tolerance; group relation violated",
            dd.amax()
        )));
    }
    let chi = num_vertices as i64 - num_edges as i64 + ell as i64;
    debug_assert_eq!(chi, rep.surface.euler_characteristic());

    Ok(TwistedComplex {
        coef_dim: dim,
        num_vertices,
        num_edges,
        num_triangles: ell,
        d0,
        d1,
        boundary_edges: (0..n).map(edge_c).collect(),
        cup,
        exact_d: match (d0x, d1x) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        },
        genus: g,
        boundary: n,
    })
}

/// Oracle output: dimensions, spectrum of the symmetrized form on the
/// parabolic subspace, and the resulting signature (raw symplectic units).
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub dim_c: [usize; 3],
    pub dim_h1_abs: usize,
    pub dim_parabolic: usize,
    pub eigenvalues: Vec<f64>,
    pub signature: i64,
    pub spectral_gap: f64,
}

impl OracleResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim_c": self.dim_c,
            "dim_h1_abs": self.dim_h1_abs,
            "dim_parabolic": self.dim_parabolic,
            "eigenvalues": self.eigenvalues.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>(),
            "signature": self.signature,
            "spectral_gap": format!("{:.3e}", self.spectral_gap),
        })
    }
}

impl TwistedComplex {
    /// Verify d1 d0 = 0 exactly on the rational path; None when the
    /// representation is not fully rational.
    pub fn exact_dd_is_zero(&self) -> Option<bool> {
        let (d0x, d1x) = self.exact_d.as_ref()?;
        Some(d1x.mul(d0x).is_zero())
    }

    pub fn euler_count(&self) -> i64 {
        (self.num_vertices as i64 - self.num_edges as i64 + self.num_triangles as i64)
            * self.coef_dim as i64
    }

    pub fn untwisted_expected_h1(&self) -> usize {
        (2 * self.genus + self.boundary - 1) * self.coef_dim
    }
}

fn svd_full_v(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let (r, c) = m.shape();
    let padded = if r >= c {
        m.clone()
    } else {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.unwrap();
    (svd.singular_values.as_slice().to_vec(), vt)
}

/// Columns spanning the (numerical) nullspace.
fn nullspace(m: &DMatrix<f64>, tol_rel: f64) -> DMatrix<f64> {
    let (sv, vt) = svd_full_v(m);
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    let tol = tol_rel * smax;
    let cols: Vec<usize> = (0..m.ncols())
        .filter(|&i| sv.get(i).copied().unwrap_or(0.0) <= tol)
        .collect();
    let mut out = DMatrix::zeros(m.ncols(), cols.len());
    for (k, &i) in cols.iter().enumerate() {
        out.set_column(k, &vt.row(i).transpose());
    }
    out
}

/// Orthonormal columns spanning the range.
fn colspace(m: &DMatrix<f64>, tol_rel: f64) -> DMatrix<f64> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.unwrap();
    let sv = svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    let cols: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] > tol_rel * smax).collect();
    let mut out = DMatrix::zeros(m.nrows(), cols.len());
    for (k, &i) in cols.iter().enumerate() {
        out.set_column(k, &u.column(i));
    }
    out
}

const TOL_RANK: f64 = 1e-9;

/// Signature of the representation, computed directly from the intersection
/// form on the image of relative in absolute twisted H^1.
pub fn signature_direct(rep: &Representation) -> Result<OracleResult> {
    let cx = build_model(rep)?;
    signature_from_complex(&cx)
}

pub fn signature_from_complex(cx: &TwistedComplex) -> Result<OracleResult> {
    let dim = cx.coef_dim;
    let dims = [cx.num_vertices * dim, cx.num_edges * dim, cx.num_triangles * dim];

    // Absolute cocycles and coboundaries.
    let z1 = nullspace(&cx.d1, TOL_RANK);
    let b1 = colspace(&cx.d0, TOL_RANK);
    let h1_abs = z1.ncols() - b1.ncols();

    // Relative cocycles: kill the c_j edge blocks, take the kernel, embed.
    let keep: Vec<usize> = (0..cx.num_edges)
        .filter(|e| !cx.boundary_edges.contains(e))
        .collect();
    let mut d1r = DMatrix::zeros(cx.d1.nrows(), keep.len() * dim);
    for (kn, &e) in keep.iter().enumerate() {
        for j in 0..dim {
            d1r.set_column(kn * dim + j, &cx.d1.column(e * dim + j));
        }
    }
    let z1r_red = nullspace(&d1r, TOL_RANK);
    let mut z1r = DMatrix::zeros(cx.num_edges * dim, z1r_red.ncols());
    for (kn, &e) in keep.iter().enumerate() {
        for j in 0..dim {
            for c in 0..z1r_red.ncols() {
                z1r[(e * dim + j, c)] = z1r_red[(kn * dim + j, c)];
            }
        }
    }

    // Project relative cocycles to H^1_abs and pick a basis of the image.
    let proj = &z1r - &b1 * (b1.transpose() * &z1r);
    let svd = proj.clone().svd(false, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    let rank: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] > TOL_RANK * smax).collect();
    let vt = svd.v_t.unwrap();
    let k = rank.len();
    let mut reps: Vec<DVector<f64>> = Vec::with_capacity(k);
    for &i in &rank {
        let coeffs = vt.row(i).transpose();
        reps.push(&z1r * &coeffs);
    }

    // Cup-product pairing against the relative fundamental cycle.
    let mut q = DMatrix::zeros(k, k);
    for s in 0..k {
        for t in 0..k {
            let mut acc = 0.0;
            for term in &cx.cup {
                let u_front = reps[s].rows(term.front_edge * dim, dim).into_owned();
                let v_cross = reps[t].rows(term.cross_edge * dim, dim).into_owned();
                let tv = &term.deck * v_cross;
                acc += term.eps * omega(&u_front, &tv);
            }
            q[(s, t)] = acc;
        }
    }
    let qt = q.transpose();
    let asym = (&q - &qt).amax();
    let scale = q.amax();
    if k > 0 && asym > EPS_SYM * scale.max(1.0) {
        return Err(Error::RealificationUnsupported(format!(
            "cup form asymmetry {asym} exceeds tolerance"
        )));
    }
    let q_sym = (&q + &qt) * 0.5;

    let mut eigenvalues: Vec<f64> = if k == 0 {
        Vec::new()
    } else {
        q_sym.symmetric_eigen().eigenvalues.iter().cloned().collect()
    };
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let max_abs = eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let eps_rank = EPS_RANK_EIG * max_abs;
    let mut pos = 0i64;
    let mut neg = 0i64;
    let mut gap = f64::INFINITY;
    for &l in &eigenvalues {
        if l > eps_rank {
            pos += 1;
            gap = gap.min(l.abs());
        } else if l < -eps_rank {
            neg += 1;
            gap = gap.min(l.abs());
        }
    }
    let spectral_gap = if gap.is_finite() { gap } else { 0.0 };
    if max_abs > 0.0 && (pos + neg) > 0 && spectral_gap / max_abs < EPS_GAP {
        return Err(Error::IllConditioned(spectral_gap / max_abs));
    }

    Ok(OracleResult {
        dim_c: dims,
        dim_h1_abs: h1_abs,
        dim_parabolic: k,
        eigenvalues,
        signature: pos - neg,
        spectral_gap,
    })
}

/// Dense rational matrix used only for the exact d1 d0 = 0 verification.
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<crate::rational::Q>,
}

impl RMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        use num::Zero;
        RMat { rows, cols, data: vec![crate::rational::Q::zero(); rows * cols] }
    }

    fn add_block(&mut self, row_cell: usize, col_cell: usize, blocks: &[QMat2], positive: bool) {
        let p = blocks.len();
        let dim = 2 * p;
        for (b, m) in blocks.iter().enumerate() {
            let entries = [(0, 0, &m.a), (0, 1, &m.b), (1, 0, &m.c), (1, 1, &m.d)];
            for (i, j, v) in entries {
                let r = row_cell * dim + 2 * b + i;
                let c = col_cell * dim + 2 * b + j;
                let idx = r * self.cols + c;
                if positive {
                    self.data[idx] += v;
                } else {
                    self.data[idx] -= v;
                }
            }
        }
    }

    fn mul(&self, o: &RMat) -> RMat {
        use num::Zero;
        assert_eq!(self.cols, o.rows);
        let mut out = RMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        use num::Zero;
        self.data.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Sl2;
    use crate::rational::q;
    use crate::surfaces::{presentation, Provenance, Representation};

    fn trivial_rep(g: usize, n: usize) -> Representation {
        let id = Sl2::identity;
        Representation::sl2(
            presentation(g, n).unwrap(),
            (0..g).map(|_| (id(), id())).collect(),
            (0..n).map(|_| id()).collect(),
            Provenance::Direct { label: "trivial".into() },
        )
        .unwrap()
    }

    #[test]
    fn untwisted_dimensions() {
        for (g, n) in [(0, 3), (1, 1), (1, 2), (2, 1)] {
            let rep = trivial_rep(g, n);
            let cx = build_model(&rep).unwrap();
            assert_eq!(cx.euler_count(), rep.surface.euler_characteristic() * 2);
            let res = signature_from_complex(&cx).unwrap();
            assert_eq!(res.dim_h1_abs, cx.untwisted_expected_h1(), "(g,n)=({g},{n})");
            assert_eq!(res.signature, 0);
            assert_eq!(cx.exact_dd_is_zero(), Some(true));
        }
    }

    #[test]
    fn phi_minus_signature() {
        let c1 = Sl2::rotation_by_pi(q(1, 2));
        let c2 = Sl2::from_rational_i64(1, 1, 0, 1);
        let c3 = c1.mul(&c2).inverse();
        let rep = Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![c1, c2, c3],
            Provenance::Direct { label: "phi-".into() },
        )
        .unwrap();
        let res = signature_direct(&rep).unwrap();
        assert_eq!(res.signature, -1, "eigs {:?}", res.eigenvalues);
    }

    #[test]
    fn torus_borel_signature() {
        use crate::rational::QMat2;
        // A = diag(2,1/2), B = (1/2, 1; 0, 2), C = [A,B]^{-1}; signature +1.
        let a = Sl2::from_rational(QMat2::new(q(2, 1), q(0, 1), q(0, 1), q(1, 2)));
        let b = Sl2::from_rational(QMat2::new(q(1, 2), q(1, 1), q(0, 1), q(2, 1)));
        let comm = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
        let c = comm.inverse();
        let rep = Representation::sl2(
            presentation(1, 1).unwrap(),
            vec![(a, b)],
            vec![c],
            Provenance::Direct { label: "torus-borel".into() },
        )
        .unwrap();
        let res = signature_direct(&rep).unwrap();
        assert_eq!(res.signature, 1, "eigs {:?}", res.eigenvalues);
    }

    #[test]
    fn two_cusp_pants_signature_zero() {
        let a = Sl2::from_rational_i64(1, 1, 0, 1);
        let b = Sl2::from_rational_i64(1, 0, -5, 1);
        let c = a.mul(&b).inverse();
        let rep = Representation::sl2(
            presentation(0, 3).unwrap(),
            vec![],
            vec![a, b, c],
            Provenance::Direct { label: "2cusp".into() },
        )
        .unwrap();
        let res = signature_direct(&rep).unwrap();
        assert_eq!(res.signature, 0);
        assert_eq!(build_model(&rep).unwrap().exact_dd_is_zero(), Some(true));
    }
}
