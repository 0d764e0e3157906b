//! Assembly planners: given a surface, a target signature and a boundary
//! regime, produce a certified representation together with a replayable plan.
//!
//! Every planner output is re-certified through the formula pipeline before
//! it is returned, so a planning bug can only surface as an error, never as a
//! wrong representation. The plan tree is self-contained (block kinds, solved
//! angles, glue indices); executing it reproduces the construction.

use super::blocks;
use super::so2::{so2_angles, so2_rep_from_angles, So2Mode};
use crate::error::{Error, Result};
use crate::invariants::signature_of;
use crate::rational::{q, q_parse, q_render, qi, Q};
use crate::surfaces::{glue, glue_witness, Representation};
use num::{One, Signed};
use serde::{Deserialize, Serialize};

/// A replayable construction tree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum PlanNode {
    Block { kind: String, params: Vec<String> },
    So2 { g: usize, n: usize, angles: Vec<String> },
    Trivial { g: usize, n: usize },
    Mirror { inner: Box<PlanNode> },
    Glue {
        left: Box<PlanNode>,
        left_boundary: usize,
        right: Box<PlanNode>,
        right_boundary: usize,
    },
    UpRep { g: usize, n: usize, p: usize, rows: Vec<Vec<String>> },
    UpqRep { n: usize, p: usize, q: usize, m: i64 },
}

fn parse_q(s: &str) -> Result<Q> {
    q_parse(s).ok_or_else(|| Error::BadCertificate(format!("bad rational '{s}'")))
}

/// Execute a plan tree back into a representation.
pub fn execute(node: &PlanNode) -> Result<Representation> {
    match node {
        PlanNode::Block { kind, params } => {
            let ps: Result<Vec<Q>> = params.iter().map(|s| parse_q(s)).collect();
            blocks::block(kind, &ps?)
        }
        PlanNode::So2 { g, n, angles } => {
            let ts: Result<Vec<Q>> = angles.iter().map(|s| parse_q(s)).collect();
            so2_rep_from_angles(*g, *n, &ts?)
        }
        PlanNode::Trivial { g, n } => blocks::trivial_rep(*g, *n),
        PlanNode::Mirror { inner } => Ok(execute(inner)?.mirror()),
        PlanNode::Glue { left, left_boundary, right, right_boundary } => {
            let l = execute(left)?;
            let r = execute(right)?;
            glue_at(&l, *left_boundary, &r, *right_boundary)
        }
        PlanNode::UpRep { g, n, p, rows } => {
            let parsed: Result<Vec<Vec<Q>>> = rows
                .iter()
                .map(|row| row.iter().map(|s| parse_q(s)).collect())
                .collect();
            super::unitary::build_up_rep(*g, *n, *p, &parsed?)
        }
        PlanNode::UpqRep { n, p, q, m } => super::unitary::upq_genus0_rep(*n, *p, *q, *m),
    }
}

/// Glue with automatic boundary permutation and a rational witness.
pub fn glue_at(
    left: &Representation,
    left_boundary: usize,
    right: &Representation,
    right_boundary: usize,
) -> Result<Representation> {
    let l = left.with_boundary_last(left_boundary);
    let r = right.with_boundary_first(right_boundary);
    let lc = l.boundary[l.surface.boundary - 1]
        .as_sl2()
        .ok_or_else(|| Error::RealificationUnsupported("gluing is SL2-only".into()))?;
    let rc = r.boundary[0]
        .as_sl2()
        .ok_or_else(|| Error::RealificationUnsupported("gluing is SL2-only".into()))?;
    let w = glue_witness(lc, rc).ok_or(Error::HolonomyMismatch(f64::INFINITY))?;
    glue(&l, &r, &w)
}

/// Role of a boundary slot during assembly.
#[derive(Clone, Debug, PartialEq)]
enum Slot {
    /// Stays in the final surface.
    Surface,
    /// Reserved for an elliptic torus block; the value is the class angle of
    /// the slot's own holonomy.
    EllGlue(Q),
    /// Reserved for the hyperbolic boundary consumed by a psi torus.
    HypGlue,
    /// Running cuff of a hyperbolic chain.
    Cuff,
    /// Reserved host slot inside a chain chunk.
    Host,
}

/// Tag-tracked partial assembly.
struct Asm {
    rep: Representation,
    node: PlanNode,
    tags: Vec<Slot>,
}

impl Asm {
    fn new(rep: Representation, node: PlanNode, tags: Vec<Slot>) -> Self {
        debug_assert_eq!(rep.surface.boundary, tags.len());
        Asm { rep, node, tags }
    }

    fn find(&self, s: &Slot) -> Option<usize> {
        self.tags.iter().position(|t| t == s)
    }

    fn find_ell(&self) -> Option<(usize, Q)> {
        self.tags.iter().enumerate().find_map(|(i, t)| match t {
            Slot::EllGlue(a) => Some((i, a.clone())),
            _ => None,
        })
    }

    /// Glue `right` onto slot `li` of self, consuming right's slot `ri`.
    fn glue(self, li: usize, right: Asm, ri: usize) -> Result<Asm> {
        let n_l = self.tags.len();
        let n_r = right.tags.len();
        let rep = glue_at(&self.rep, li, &right.rep, ri)?;
        let rot_l = (li + 1) % n_l;
        let tags_l = (0..n_l - 1).map(|k| self.tags[(rot_l + k) % n_l].clone());
        let tags_r = (1..n_r).map(|k| right.tags[(ri + k) % n_r].clone());
        let tags: Vec<Slot> = tags_l.chain(tags_r).collect();
        let node = PlanNode::Glue {
            left: Box::new(self.node),
            left_boundary: li,
            right: Box::new(right.node),
            right_boundary: ri,
        };
        Ok(Asm::new(rep, node, tags))
    }

    fn mirror(self) -> Asm {
        let tags = self
            .tags
            .into_iter()
            .map(|t| match t {
                Slot::EllGlue(a) => Slot::EllGlue(qi(2) - a),
                other => other,
            })
            .collect();
        Asm::new(self.rep.mirror(), PlanNode::Mirror { inner: Box::new(self.node) }, tags)
    }
}

/// A planned, certified construction.
pub struct Planned {
    pub rep: Representation,
    pub node: PlanNode,
}

fn finish(asm: Asm, want: i64) -> Result<Planned> {
    if !asm.tags.iter().all(|t| *t == Slot::Surface || *t == Slot::Cuff) {
        return Err(Error::PlanIncomplete("unconsumed glue slots".into()));
    }
    let report = signature_of(&asm.rep)?;
    if report.signature_formula != want {
        return Err(Error::PlanIncomplete(format!(
            "certification failed: built signature {} instead of {want}",
            report.signature_formula
        )));
    }
    Ok(Planned { rep: asm.rep, node: asm.node })
}

fn mirror_planned(p: Planned) -> Planned {
    Planned { rep: p.rep.mirror(), node: PlanNode::Mirror { inner: Box::new(p.node) } }
}

fn block_asm(kind: &str, params: &[Q], tags: Vec<Slot>) -> Result<Asm> {
    let rep = blocks::block(kind, params)?;
    Ok(Asm::new(
        rep,
        PlanNode::Block { kind: kind.into(), params: params.iter().map(q_render).collect() },
        tags,
    ))
}

fn so2_asm(g: usize, n: usize, angles: Vec<Q>, tags: Vec<Slot>) -> Result<Asm> {
    let rep = so2_rep_from_angles(g, n, &angles)?;
    Ok(Asm::new(
        rep,
        PlanNode::So2 { g, n, angles: angles.iter().map(q_render).collect() },
        tags,
    ))
}

/// Attach the elliptic torus block matching the tagged slot; the mate class
/// is 2 - slot_angle and the mate sign is forced by it (+2 below angle pi).
fn attach_ell_torus(acc: Asm, idx: usize, slot_angle: &Q) -> Result<Asm> {
    let torus = block_asm("torus-elliptic", &[qi(2) - slot_angle], vec![Slot::Surface])?;
    acc.glue(idx, torus, 0)
}

/// Signature of the torus block a glue slot of this angle will receive.
fn mate_sign(slot_angle: &Q) -> i64 {
    if *slot_angle > Q::one() {
        2
    } else {
        -2
    }
}

/// Class angles whose rotation matrices have rational trace; glue slots for
/// elliptic torus blocks are drawn from this set.
fn glue_angle_candidates() -> Vec<Q> {
    vec![q(3, 2), q(1, 2), q(5, 3), q(1, 3), q(4, 3), q(2, 3)]
}

/// Solve a rotation angle assignment where `fixed` slots are pinned and
/// `flex_slots` take rational-trace class angles, such that the core rho sum
/// plus the forced signs of the torus mates on the flex slots reaches
/// `total`. Returns the full angle vector and the chosen flex angles.
fn so2_core_for_total(
    n: usize,
    fixed: &[(usize, Q)],
    flex_slots: &[usize],
    total: i64,
    mode: So2Mode,
) -> Result<(Vec<Q>, Vec<Q>)> {
    fn rec(
        n: usize,
        fixed: &[(usize, Q)],
        flex_slots: &[usize],
        chosen: &mut Vec<Q>,
        total: i64,
        mode: So2Mode,
    ) -> Result<Vec<Q>> {
        if chosen.len() == flex_slots.len() {
            let mut pres = fixed.to_vec();
            let mut mates = 0i64;
            for (k, s) in flex_slots.iter().enumerate() {
                pres.push((*s, chosen[k].clone()));
                mates += mate_sign(&chosen[k]);
            }
            return so2_angles(n, &pres, total - mates, mode);
        }
        let mut last = None;
        for cand in glue_angle_candidates() {
            chosen.push(cand);
            match rec(n, fixed, flex_slots, chosen, total, mode) {
                Ok(v) => {
                    return Ok(v);
                }
                Err(e) => last = Some(e),
            }
            chosen.pop();
        }
        Err(last.unwrap_or(Error::PlanIncomplete("no flex angles".into())))
    }
    let mut chosen = Vec::new();
    let angles = rec(n, fixed, flex_slots, &mut chosen, total, mode)?;
    Ok((angles, chosen))
}

fn range_check(g: usize, n: usize, m: i64, cap: i64, family: &str) -> Result<()> {
    let chi = 2 - 2 * (g as i64) - (n as i64);
    if chi >= 0 || n == 0 {
        return Err(Error::UnsupportedSurface(format!(
            "{family} planner needs chi < 0 and nonempty boundary, got (g,n) = ({g},{n})"
        )));
    }
    if m.abs() > cap {
        return Err(Error::UnachievableValue {
            m,
            reason: format!("{family} signatures on (g,n) = ({g},{n}) lie in [-{cap}, {cap}]"),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Boundary elliptic planner.
// ---------------------------------------------------------------------------

/// Boundary elliptic targets: 2 chi + 4a in genus 0, and the congruence class
/// 2n mod 4 within [2 chi, -2 chi] for positive genus (the even Euler-number
/// obstruction for lifts to SL(2,R) rules out the other even values).
pub fn elliptic(g: usize, n: usize, m: i64) -> Result<Planned> {
    range_check(g, n, m, 2 * (2 * g as i64 + n as i64 - 2), "elliptic")?;
    if m % 2 != 0 {
        return Err(Error::UnachievableValue {
            m,
            reason: "boundary elliptic representations have even signatures".into(),
        });
    }
    let chi = 2 - 2 * (g as i64) - n as i64;
    if g >= 1 && (m - 2 * n as i64).rem_euclid(4) != 0 {
        return Err(Error::PlanIncomplete(format!(
            "boundary elliptic signatures on genus >= 1 satisfy sign = 2n mod 4 \
             (closed-surface SL(2,R) representations have even Euler number); \
             m = {m} on (g,n) = ({g},{n}) is not constructible"
        )));
    }
    if m < 0 && g >= 1 {
        return Ok(mirror_planned(elliptic(g, n, -m)?));
    }
    match g {
        0 => {
            if (m - 2 * chi) % 4 != 0 {
                return Err(Error::UnachievableValue {
                    m,
                    reason: "genus-0 elliptic signatures have the form 2 chi + 4a".into(),
                });
            }
            let angles = so2_angles(n, &[], m, So2Mode::Elliptic)?;
            finish(so2_asm(0, n, angles, vec![Slot::Surface; n])?, m)
        }
        1 if n == 1 => {
            if m.abs() != 2 {
                return Err(Error::UnachievableValue {
                    m,
                    reason: "one-holed torus elliptic signatures are -2 and 2".into(),
                });
            }
            let asm = block_asm("torus-elliptic", &[q(1, 2)], vec![Slot::Surface])?;
            finish(if m == 2 { asm } else { asm.mirror() }, m)
        }
        1 => finish(elliptic_genus1(n, m, 0)?, m),
        _ => {
            // Core on (1, n+g-1) carrying g-1 elliptic glue slots whose torus
            // signs are absorbed into the total.
            let n1 = n + g - 1;
            let base = elliptic_genus1(n1, m, g - 1)?;
            finish(attach_all_ell(base)?, m)
        }
    }
}

/// Attach the forced elliptic torus block to every tagged glue slot.
fn attach_all_ell(mut acc: Asm) -> Result<Asm> {
    while let Some((idx, angle)) = acc.find_ell() {
        acc = attach_ell_torus(acc, idx, &angle)?;
    }
    Ok(acc)
}

/// Genus-1 elliptic core on (1, n) with `glue_slots` extra reserved slots;
/// `m` is the total including the forced signs of the slots' future mates.
fn elliptic_genus1(n: usize, m: i64, glue_slots: usize) -> Result<Asm> {
    let mut last_err = None;
    {
        // Rotation core glued to an elliptic torus block; covers the extremes
        // and everything the angle solver can reach directly.
        let n0 = n + 1;
        let flex: Vec<usize> = (0..glue_slots).chain([n0 - 1]).collect();
        match so2_core_for_total(n0, &[], &flex, m, So2Mode::Elliptic) {
            Ok((angles, chosen)) => {
                let mut tags = vec![Slot::Surface; n0];
                for (k, s) in flex.iter().enumerate() {
                    tags[*s] = Slot::EllGlue(chosen[k].clone());
                }
                let core = so2_asm(0, n0, angles, tags)?;
                let own_angle = chosen.last().unwrap().clone();
                let asm = attach_ell_torus(core, n0 - 1, &own_angle)?;
                return Ok(asm);
            }
            Err(e) => last_err = Some(e),
        }
    }
    {
        // Central-inversion genus-0 piece with a hyperbolic boundary, capped
        // by the matching one-holed torus. The rho-0 variant has trace 17/4
        // and pairs with the signature-0 psi+ family; the rho +/-2 variants
        // have trace -5/2 and pair with a Fuchsian torus of signature +/-2
        // (no signature-0 mate exists at negative trace).
        for (v, t) in [(0i64, 0i64), (2, 2), (2, -2), (-2, 2), (-2, -2)] {
            match elliptic_hyp_genus0(n + 1, m - t, v, glue_slots) {
                Ok(core) => {
                    let mate = match t {
                        0 => block_asm("torus-commutator-plus", &[q(17, 4)], vec![Slot::Surface])?,
                        2 => block_asm("torus-fuchsian", &[], vec![Slot::Surface])?,
                        -2 => block_asm("torus-fuchsian-neg", &[], vec![Slot::Surface])?,
                        _ => unreachable!(),
                    };
                    let idx = core.find(&Slot::HypGlue).expect("hyperbolic glue slot");
                    match core.glue(idx, mate, 0) {
                        Ok(asm) => return Ok(asm),
                        Err(e) => last_err = Some(e),
                    }
                }
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or(Error::PlanIncomplete(format!(
        "elliptic genus-1 core failed at (1,{n}) m = {m}"
    ))))
}

/// Genus-0 representation, elliptic except for one hyperbolic boundary
/// (tagged HypGlue), signature m; the trace family of the hyperbolic boundary
/// is fixed by the central-inversion variant v (0 <-> 17/4, +/-2 <-> -241/100).
fn elliptic_hyp_genus0(n: usize, m: i64, v: i64, glue_slots: usize) -> Result<Asm> {
    let kind = match v {
        0 => "pants-centralinv-0",
        2 => "pants-centralinv-+2",
        -2 => "pants-centralinv--2",
        _ => unreachable!(),
    };
    // Boundary order of the inversion pants: (J1, J2, hyperbolic); classes of
    // the inversion slots by variant.
    let (j1_class, j2_class) = match v {
        0 => (q(1, 2), q(3, 2)),
        2 => (q(1, 2), q(1, 2)),
        -2 => (q(3, 2), q(3, 2)),
        _ => unreachable!(),
    };
    if n == 3 {
        // The inversion pants carries signature v; its J-slots may double as
        // glue slots, each forcing a mate of sign -2 (both J classes are
        // below pi... the J1 class is 1/2 or 3/2 by variant).
        let mut tags = vec![Slot::Surface, Slot::Surface, Slot::HypGlue];
        let mut mates = 0i64;
        if glue_slots >= 1 {
            mates += mate_sign(&j1_class);
            tags[0] = Slot::EllGlue(j1_class);
        }
        if glue_slots == 2 {
            mates += mate_sign(&j2_class);
            tags[1] = Slot::EllGlue(j2_class.clone());
        }
        if m != v + mates || glue_slots > 2 {
            return Err(Error::PlanIncomplete(
                "three-holed inversion piece carries a fixed signature".into(),
            ));
        }
        return block_asm(kind, &[], tags);
    }
    let inv_tags = vec![Slot::Surface, Slot::Surface, Slot::HypGlue];
    let inv = block_asm(kind, &[], inv_tags)?;
    // Rotation extension glued along the J2 slot (pants index 1).
    let core_n = n - 1;
    if glue_slots > core_n - 1 {
        return Err(Error::PlanIncomplete("too many glue slots for the rotation core".into()));
    }
    let fixed = vec![(core_n - 1, qi(2) - &j2_class)];
    let flex: Vec<usize> = (0..glue_slots).collect();
    let (angles, chosen) = so2_core_for_total(core_n, &fixed, &flex, m - v, So2Mode::Elliptic)?;
    let mut tags = vec![Slot::Surface; core_n];
    for (k, s) in flex.iter().enumerate() {
        tags[*s] = Slot::EllGlue(chosen[k].clone());
    }
    *tags.last_mut().unwrap() = Slot::Surface; // consumed by the pants glue
    let core = so2_asm(0, core_n, angles, tags)?;
    core.glue(core_n - 1, inv, 1)
}

// ---------------------------------------------------------------------------
// Boundary paraelliptic planner.
// ---------------------------------------------------------------------------

/// Every integer in [2 chi, -2 chi] with boundary traces in [-2, 2].
pub fn paraelliptic(g: usize, n: usize, m: i64) -> Result<Planned> {
    range_check(g, n, m, 2 * (2 * g as i64 + n as i64 - 2), "paraelliptic")?;
    if m < 0 {
        return Ok(mirror_planned(paraelliptic(g, n, -m)?));
    }
    if g == 0 {
        return finish(paraelliptic_genus0(n, m)?, m);
    }
    if (g, n) == (1, 1) {
        let asm = match m {
            0 => Asm::new(
                blocks::trivial_rep(1, 1)?,
                PlanNode::Trivial { g: 1, n: 1 },
                vec![Slot::Surface],
            ),
            1 => block_asm("torus-borel", &[qi(2), qi(1)], vec![Slot::Surface])?,
            2 => block_asm("torus-elliptic", &[q(1, 2)], vec![Slot::Surface])?,
            _ => unreachable!(),
        };
        return finish(asm, m);
    }
    if m % 2 == 0 {
        // Rotation core with one relaxed (possibly trivial) slot plus
        // elliptic torus blocks: covers both mod-4 classes.
        let n0 = n + g;
        let flex: Vec<usize> = (n..n0).collect();
        let (angles, chosen) = so2_core_for_total(n0, &[], &flex, m, So2Mode::Relaxed)?;
        let mut tags = vec![Slot::Surface; n0];
        for (k, sl) in flex.iter().enumerate() {
            tags[*sl] = Slot::EllGlue(chosen[k].clone());
        }
        let core = so2_asm(0, n0, angles, tags)?;
        return finish(attach_all_ell(core)?, m);
    }
    if n == 1 {
        // Odd targets on (g, 1): parabolic boundary via the hyperbolic chain;
        // trace +/-2 is paraelliptic.
        return hyperparabolic(g, 1, m);
    }
    // Odd targets, n >= 2: rotation core with g glue slots and a phi block.
    let n0 = n + g;
    let mut last_err = None;
    for (phi_sign, slot_angle) in [(1i64, q(1, 2)), (-1, q(3, 2))] {
        let core_n = n0 - 1;
        let fixed = vec![(core_n - 1, slot_angle.clone())];
        let flex: Vec<usize> = (core_n - 1 - g..core_n - 1).collect();
        let (angles, chosen) =
            match so2_core_for_total(core_n, &fixed, &flex, m - phi_sign, So2Mode::Relaxed) {
                Ok(r) => r,
                Err(e) => {
                    last_err = Some(e);
                    continue;
                }
            };
        let mut tags = vec![Slot::Surface; core_n];
        for (k, s) in flex.iter().enumerate() {
            tags[*s] = Slot::EllGlue(chosen[k].clone());
        }
        let core = so2_asm(0, core_n, angles, tags)?;
        let phi = block_asm(
            "phi",
            &[qi(phi_sign)],
            vec![Slot::Surface, Slot::Surface, Slot::Surface],
        )?;
        let glued = core.glue(core_n - 1, phi, 0)?;
        match attach_all_ell(glued) {
            Ok(acc) => return finish(acc, m),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::PlanIncomplete(format!(
        "paraelliptic: no decomposition reaches m = {m} on ({g},{n})"
    ))))
}

/// Genus-0 paraelliptic piece: rotation representation for even targets, a
/// rotation core glued to a phi block for odd ones.
fn paraelliptic_genus0(n: usize, m: i64) -> Result<Asm> {
    if m % 2 == 0 {
        let angles = so2_angles(n, &[], m, So2Mode::Relaxed)?;
        return so2_asm(0, n, angles, vec![Slot::Surface; n]);
    }
    if n == 3 {
        return block_asm("phi", &[qi(m.signum())], vec![Slot::Surface; 3]);
    }
    let mut last_err = None;
    for (phi_sign, slot_angle) in [(1i64, q(1, 2)), (-1, q(3, 2))] {
        let m_core = m - phi_sign;
        let core_n = n - 1;
        if m_core.abs() > 2 * (core_n as i64 - 2) {
            continue;
        }
        let pres = vec![(core_n - 1, slot_angle.clone())];
        let angles = match so2_angles(core_n, &pres, m_core, So2Mode::Relaxed) {
            Ok(a) => a,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let core = so2_asm(0, core_n, angles, vec![Slot::Surface; core_n])?;
        let phi = block_asm(
            "phi",
            &[qi(phi_sign)],
            vec![Slot::Surface, Slot::Surface, Slot::Surface],
        )?;
        return core.glue(core_n - 1, phi, 0);
    }
    Err(last_err.unwrap_or(Error::PlanIncomplete(format!(
        "odd paraelliptic base failed at (0,{n}) m = {m}"
    ))))
}

// ---------------------------------------------------------------------------
// Boundary hyperparabolic planner.
// ---------------------------------------------------------------------------

/// Chain moves: a step adds one surface boundary, a chunk adds a handle; the
/// state is the rational eigenvalue of the running cuff.
#[derive(Clone, Debug, PartialEq)]
enum Move {
    Step(i64),
    Chunk { pants: i64, torus: i64 },
    /// Terminal parabolic chunk (n = 1, odd targets).
    ParChunk { s: i64, torus: i64 },
}

fn trace_of(l: &Q) -> Q {
    l + qi(1) / l
}

/// Possible moves from cuff state lambda, with the new state.
fn moves(l: &Q, allow_step: bool, allow_chunk: bool, terminal_par: bool) -> Vec<(Move, Q, i64)> {
    let tr = trace_of(l);
    let mut out = Vec::new();
    if allow_step {
        // step0: borel reset toward lambda' = 2 (or 4 when lambda = 2).
        let nl = if *l == qi(2) { qi(4) } else { qi(2) };
        out.push((Move::Step(0), nl, 0));
        for s in [1i64, -1] {
            out.push((Move::Step(s), l.clone(), s));
        }
        if tr == q(5, 2) || tr == q(17, 4) {
            out.push((Move::Step(2), qi(-2), 2));
            out.push((Move::Step(-2), qi(-2), -2));
        }
        if tr == q(-5, 2) {
            out.push((Move::Step(2), qi(2), 2));
            out.push((Move::Step(-2), qi(2), -2));
        }
    }
    if allow_chunk {
        // Borel hosts: schottky (sign 0) and fuchsian torus (sign +/-2).
        for alpha in [qi(4), q(1, 4)] {
            let prod = l * &alpha;
            if prod.abs() != Q::one() {
                out.push((Move::Chunk { pants: 0, torus: 0 }, prod.clone(), 0));
                break;
            }
        }
        for alpha in [qi(-2), q(-1, 2)] {
            let prod = l * &alpha;
            if prod.abs() != Q::one() {
                for t in [2i64, -2] {
                    out.push((Move::Chunk { pants: 0, torus: t }, prod.clone(), t));
                }
                break;
            }
        }
        if tr == q(-5, 2) {
            for ps in [2i64, -2] {
                for t in [2i64, -2] {
                    out.push((Move::Chunk { pants: ps, torus: t }, qi(-2), ps + t));
                }
            }
        }
        if terminal_par {
            if tr == q(17, 4) {
                for s in [1i64, -1] {
                    out.push((Move::ParChunk { s, torus: 0 }, l.clone(), s));
                }
            }
            if tr == q(-5, 2) {
                for s in [1i64, -1] {
                    for t in [2i64, -2] {
                        out.push((Move::ParChunk { s, torus: t }, l.clone(), s + t));
                    }
                }
            }
        }
    }
    out
}

/// Depth-first search for a chain realizing the target sign with the given
/// numbers of chunks and steps.
fn search_chain(l0: Q, chunks: usize, steps: usize, target: i64, terminal_par: bool) -> Option<Vec<Move>> {
    fn rec(
        l: &Q,
        chunks_left: usize,
        steps_left: usize,
        need: i64,
        terminal_par: bool,
        acc: &mut Vec<Move>,
    ) -> bool {
        if chunks_left == 0 && steps_left == 0 {
            return need == 0;
        }
        // Capacity pruning.
        let cap = 4 * chunks_left as i64 + 2 * steps_left as i64 - if terminal_par { 1 } else { 0 };
        if need.abs() > cap {
            return false;
        }
        let doing_chunk = chunks_left > 0;
        let last_chunk = chunks_left == 1 && terminal_par;
        let mut options = moves(l, !doing_chunk && steps_left > 0, doing_chunk, last_chunk);
        // Prefer larger contributions first to hit extremes quickly.
        options.sort_by_key(|(_, _, s)| -(s.abs() * 2 + if *s > 0 { 1 } else { 0 }));
        for (mv, nl, s) in options {
            // The final chunk of a (g,1) odd target must be the parabolic one.
            if terminal_par && chunks_left == 1 && !matches!(mv, Move::ParChunk { .. }) {
                continue;
            }
            let is_step = matches!(mv, Move::Step(_));
            acc.push(mv);
            let (ncl, nsl) = if is_step {
                (chunks_left, steps_left - 1)
            } else {
                (chunks_left - 1, steps_left)
            };
            if rec(&nl, ncl, nsl, need - s, terminal_par, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    if rec(&l0, chunks, steps, target, terminal_par, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

fn torus_asm(sign: i64) -> Result<Asm> {
    match sign {
        0 => block_asm("torus-schottky", &[], vec![Slot::Surface]),
        2 => block_asm("torus-fuchsian", &[], vec![Slot::Surface]),
        -2 => block_asm("torus-fuchsian-neg", &[], vec![Slot::Surface]),
        1 => block_asm("torus-borel", &[qi(2), qi(1)], vec![Slot::Surface]),
        -1 => block_asm("torus-borel", &[qi(2), qi(-1)], vec![Slot::Surface]),
        _ => unreachable!(),
    }
}

/// Apply one chain move to the assembly. Returns the new cuff eigenvalue.
fn apply_move(acc: Asm, l: &Q, mv: &Move) -> Result<(Asm, Q)> {
    let cuff_idx = acc.find(&Slot::Cuff).expect("chain cuff");
    let tr = trace_of(l);
    match mv {
        Move::Step(0) => {
            let (alpha, nl) = if *l == qi(2) { (qi(2), qi(4)) } else { (qi(2) / l, qi(2)) };
            let blk = block_asm(
                "chain-borel",
                &[l.clone(), alpha],
                vec![Slot::Surface, Slot::Surface, Slot::Cuff],
            )?;
            Ok((acc.glue(cuff_idx, blk, 0)?, nl))
        }
        Move::Step(s @ (1 | -1)) => {
            let mu = if *s > 0 { qi(-1) } else { qi(1) };
            let blk = block_asm(
                "chain-par",
                &[l.clone(), mu],
                vec![Slot::Surface, Slot::Surface, Slot::Cuff],
            )?;
            Ok((acc.glue(cuff_idx, blk, 0)?, l.clone()))
        }
        Move::Step(s @ (2 | -2)) => {
            let (base_kind, in_idx, nl) = if tr == q(5, 2) {
                ("pants-fuchsian-52", 0, qi(-2))
            } else if tr == q(17, 4) {
                ("pants-fuchsian-174", 0, qi(-2))
            } else if tr == q(-5, 2) {
                ("pants-fuchsian-52", 2, qi(2))
            } else {
                return Err(Error::PlanIncomplete(format!(
                    "no +/-2 step from cuff trace {}",
                    q_render(&tr)
                )));
            };
            let kind = if *s == 2 { base_kind.to_string() } else { format!("{base_kind}-neg") };
            let mut tags = vec![Slot::Surface; 3];
            tags[if in_idx == 0 { 2 } else { 1 }] = Slot::Cuff;
            let blk = block_asm(&kind, &[], tags)?;
            Ok((acc.glue(cuff_idx, blk, in_idx)?, nl))
        }
        Move::Step(_) => unreachable!(),
        Move::Chunk { pants: 0, torus } => {
            let alphas: &[Q] = if *torus == 0 {
                &[qi(4), q(1, 4)]
            } else {
                &[qi(-2), q(-1, 2)]
            };
            let alpha = alphas
                .iter()
                .find(|a| (l.clone() * (*a).clone()).abs() != Q::one())
                .cloned()
                .ok_or_else(|| Error::PlanIncomplete("no borel host parameter".into()))?;
            let nl = l * &alpha;
            let pants = block_asm(
                "chain-borel",
                &[l.clone(), alpha],
                vec![Slot::Surface, Slot::Host, Slot::Cuff],
            )?;
            let host = pants.find(&Slot::Host).unwrap();
            let ch = pants.glue(host, torus_asm(*torus)?, 0)?;
            let in_idx = ch.tags.iter().position(|t| *t == Slot::Surface).unwrap();
            Ok((acc.glue(cuff_idx, ch, in_idx)?, nl))
        }
        Move::Chunk { pants: ps @ (2 | -2), torus } => {
            if tr != q(-5, 2) {
                return Err(Error::PlanIncomplete("fuchsian double chunk needs a -5/2 cuff".into()));
            }
            let kind = if *ps == 2 { "pants-fuchsian-double" } else { "pants-fuchsian-double-neg" };
            let pants = block_asm(kind, &[], vec![Slot::Surface, Slot::Host, Slot::Cuff])?;
            let host = pants.find(&Slot::Host).unwrap();
            let ch = pants.glue(host, torus_asm(*torus)?, 0)?;
            let in_idx = ch.tags.iter().position(|t| *t == Slot::Surface).unwrap();
            Ok((acc.glue(cuff_idx, ch, in_idx)?, qi(-2)))
        }
        Move::Chunk { .. } => unreachable!(),
        Move::ParChunk { s, torus } => {
            let lam = if tr == q(17, 4) {
                qi(4)
            } else if tr == q(-5, 2) {
                qi(-2)
            } else {
                return Err(Error::PlanIncomplete("parabolic chunk flow mismatch".into()));
            };
            let c = if (*s > 0) == lam.is_positive() { qi(1) } else { qi(-1) };
            let pants = block_asm(
                "chain-par-host",
                &[lam, c],
                vec![Slot::Surface, Slot::Host, Slot::Cuff],
            )?;
            let host = pants.find(&Slot::Host).unwrap();
            let ch = pants.glue(host, torus_asm(*torus)?, 0)?;
            let in_idx = ch.tags.iter().position(|t| *t == Slot::Surface).unwrap();
            let mut glued = acc.glue(cuff_idx, ch, in_idx)?;
            // The parabolic slot is the final surface boundary.
            let idx = glued.find(&Slot::Cuff).unwrap();
            glued.tags[idx] = Slot::Surface;
            Ok((glued, l.clone()))
        }
    }
}

/// Every integer in [2 chi, -2 chi] with hyperbolic-or-parabolic boundary.
pub fn hyperparabolic(g: usize, n: usize, m: i64) -> Result<Planned> {
    range_check(g, n, m, 2 * (2 * g as i64 + n as i64 - 2), "hyperparabolic")?;
    if m < 0 {
        return Ok(mirror_planned(hyperparabolic(g, n, -m)?));
    }
    if (g, n) == (1, 1) {
        return finish(torus_asm(m)?, m);
    }
    let terminal_par = n == 1 && m % 2 != 0;
    // Base and its cuff state.
    let bases: Vec<(i64, Result<Asm>, Q)> = if g >= 1 {
        [2i64, 0]
            .into_iter()
            .map(|t0| {
                let asm = torus_asm(t0).map(|mut a| {
                    a.tags = vec![Slot::Cuff];
                    a
                });
                (t0, asm, if t0 == 2 { qi(-2) } else { qi(4) })
            })
            .collect()
    } else {
        vec![
            (
                2,
                block_asm("pants-fuchsian-52", &[], vec![Slot::Surface, Slot::Surface, Slot::Cuff]),
                qi(-2),
            ),
            (
                1,
                block_asm("chain-par", &[qi(2), qi(-1)], vec![Slot::Surface, Slot::Surface, Slot::Cuff]),
                qi(2),
            ),
            (
                0,
                block_asm("chain-borel", &[qi(2), qi(2)], vec![Slot::Surface, Slot::Surface, Slot::Cuff]),
                qi(4),
            ),
            (
                -1,
                block_asm("chain-par", &[qi(2), qi(1)], vec![Slot::Surface, Slot::Surface, Slot::Cuff]),
                qi(2),
            ),
            (
                -2,
                block_asm(
                    "pants-fuchsian-52-neg",
                    &[],
                    vec![Slot::Surface, Slot::Surface, Slot::Cuff],
                ),
                qi(-2),
            ),
        ]
    };
    let chunks = if g >= 1 { g - 1 } else { 0 };
    let steps = if g >= 1 { n - 1 } else { n - 3 };
    let mut last_err = None;
    for (b, asm, l0) in bases {
        let asm = match asm {
            Ok(a) => a,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let Some(plan) = search_chain(l0.clone(), chunks, steps, m - b, terminal_par) else {
            continue;
        };
        let mut acc = Some(asm);
        let mut l = l0;
        for mv in &plan {
            match apply_move(acc.take().unwrap(), &l, mv) {
                Ok((a, nl)) => {
                    acc = Some(a);
                    l = nl;
                }
                Err(e) => {
                    last_err = Some(e);
                    break;
                }
            }
        }
        let Some(mut acc) = acc else { continue };
        if let Some(idx) = acc.find(&Slot::Cuff) {
            acc.tags[idx] = Slot::Surface;
        }
        return finish(acc, m);
    }
    Err(last_err.unwrap_or(Error::PlanIncomplete(format!(
        "hyperparabolic: no chain reaches m = {m} on ({g},{n})"
    ))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ConjClass;

    fn boundary_paraelliptic(rep: &Representation) -> bool {
        rep.boundary.iter().all(|c| c.as_sl2().map(|g| g.trace().abs() <= 2.0 + 1e-12) == Some(true))
    }

    fn boundary_hyperparabolic(rep: &Representation) -> bool {
        rep.boundary_classes.iter().all(|c| {
            matches!(
                c.as_sl2(),
                Some(ConjClass::Hyperbolic { .. })
                    | Some(ConjClass::ParPosTrace { .. })
                    | Some(ConjClass::ParNegTrace { .. })
            )
        })
    }

    fn boundary_elliptic(rep: &Representation) -> bool {
        rep.boundary_classes
            .iter()
            .all(|c| matches!(c.as_sl2(), Some(ConjClass::Elliptic(_))))
    }

    #[test]
    fn paraelliptic_pants_values() {
        for m in -2..=2 {
            let p = paraelliptic(0, 3, m).unwrap();
            assert!(boundary_paraelliptic(&p.rep), "m={m}");
            let replay = execute(&p.node).unwrap();
            assert_eq!(signature_of(&replay).unwrap().signature_formula, m);
        }
        assert!(paraelliptic(0, 3, 3).is_err());
    }

    #[test]
    fn paraelliptic_one_holed_torus() {
        for m in -2..=2 {
            let p = paraelliptic(1, 1, m).unwrap();
            assert!(boundary_paraelliptic(&p.rep), "m={m}");
        }
    }

    #[test]
    fn hyperparabolic_small_grid() {
        for (g, n) in [(0usize, 3usize), (0, 4), (1, 1), (1, 2)] {
            let cap = 2 * (2 * g as i64 + n as i64 - 2);
            for m in -cap..=cap {
                let p = hyperparabolic(g, n, m)
                    .unwrap_or_else(|e| panic!("({g},{n}) m={m}: {e}"));
                assert!(boundary_hyperparabolic(&p.rep), "({g},{n}) m={m}");
            }
        }
    }

    #[test]
    fn hyperparabolic_genus2() {
        for m in [-6i64, -5, -1, 0, 3, 5, 6] {
            let p = hyperparabolic(2, 1, m).unwrap_or_else(|e| panic!("m={m}: {e}"));
            assert!(boundary_hyperparabolic(&p.rep), "m={m}");
        }
    }

    #[test]
    fn elliptic_values_and_refusals() {
        // genus 0: 2chi + 4a only.
        assert!(elliptic(0, 3, 0).is_err());
        assert!(elliptic(0, 3, 2).is_ok());
        assert!(elliptic(0, 4, 0).is_ok());
        assert!(elliptic(0, 4, 2).is_err());
        // (1,1): only +/-2.
        assert!(elliptic(1, 1, 0).is_err());
        assert!(elliptic(1, 1, 2).is_ok());
        // (1,2): the reachable class is sign = 2n = 0 mod 4.
        for m in [-4i64, 0, 4] {
            let p = elliptic(1, 2, m).unwrap_or_else(|e| panic!("m={m}: {e}"));
            assert!(boundary_elliptic(&p.rep), "m={m}");
        }
        assert!(matches!(elliptic(1, 2, 2), Err(Error::PlanIncomplete(_))));
        assert!(elliptic(1, 2, 1).is_err());
    }

    #[test]
    fn elliptic_genus2() {
        // (2,1): class 2n = 2 mod 4 within [-6, 6].
        for m in [-6i64, -2, 2, 6] {
            let p = elliptic(2, 1, m).unwrap_or_else(|e| panic!("m={m}: {e}"));
            assert!(boundary_elliptic(&p.rep), "m={m}");
        }
        assert!(matches!(elliptic(2, 1, 0), Err(Error::PlanIncomplete(_))));
        assert!(matches!(elliptic(2, 1, 4), Err(Error::PlanIncomplete(_))));
        assert!(elliptic(2, 1, 1).is_err());
        // (2,2): class 2n = 0 mod 4 within [-8, 8].
        for m in [-8i64, -4, 0, 8] {
            let p = elliptic(2, 2, m).unwrap_or_else(|e| panic!("m={m}: {e}"));
            assert!(boundary_elliptic(&p.rep), "m={m}");
        }
    }

    #[test]
    fn plans_replay() {
        let p = hyperparabolic(1, 2, 3).unwrap();
        let replay = execute(&p.node).unwrap();
        assert_eq!(signature_of(&replay).unwrap().signature_formula, 3);
    }
}
