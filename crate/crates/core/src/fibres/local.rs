//! Local invariants: δ by iterated blowups and the contact of tangent lines.

use serde::{Deserialize, Serialize};

use crate::algebra::{GfElem, MPoly, Mono, UPoly};

use super::points::{base_change, local_germ, split_roots, PointFq, MAX_SEARCH_BITS, UV};
use super::{FibreError, PlaneCurveFq};

/// Depth at which a chain of singular infinitely near points is taken to mean a
/// non-reduced component.
const MAX_DEPTH: usize = 24;

/// Outcome of resolving a singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaResult {
    pub delta: u32,
    /// Multiplicities of the infinitely near points, depth first.
    pub mult_sequence: Vec<u32>,
    /// Number of branches through the point.
    pub branches: u32,
}

/// Strict transform in the chart `v = u v'`.
fn chart_u(f: &MPoly<GfElem>, m: u32) -> MPoly<GfElem> {
    let mut r = MPoly::zero(f.field(), UV);
    for (mo, c) in f.terms() {
        let (i, j) = (mo.0[0] as u32, mo.0[1] as u32);
        r.add_term(Mono([(i + j - m) as u16, j as u16, 0, 0]), *c);
    }
    r
}

/// Strict transform in the chart `u = u' v`.
fn chart_v(f: &MPoly<GfElem>, m: u32) -> MPoly<GfElem> {
    let mut r = MPoly::zero(f.field(), UV);
    for (mo, c) in f.terms() {
        let (i, j) = (mo.0[0] as u32, mo.0[1] as u32);
        r.add_term(Mono([i as u16, (i + j - m) as u16, 0, 0]), *c);
    }
    r
}

fn shift_v(f: &MPoly<GfElem>, r: GfElem) -> MPoly<GfElem> {
    let w = f.field();
    let u = MPoly::var(w, UV, 0);
    let v = MPoly::var(w, UV, 1).add(&MPoly::constant(w, UV, r));
    f.compose(&[u, v])
}

fn blow_up(f: &MPoly<GfElem>, depth: usize, out: &mut DeltaResult) -> Result<(), FibreError> {
    let m = f.min_degree().expect("nonzero germ");
    out.mult_sequence.push(m);
    if m <= 1 {
        out.branches += 1;
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(FibreError::NonReduced);
    }
    out.delta += m * (m - 1) / 2;
    // Tangent cone dehomogenized at u = 1, as a polynomial in v.
    let w = f.field();
    let mut cone = vec![w.zero(); m as usize + 1];
    for (mo, c) in f.terms() {
        if mo.degree() == m {
            cone[mo.0[1] as usize] = *c;
        }
    }
    let cone = UPoly::from_coeffs(w, &cone);
    let f1 = chart_u(f, m);
    let (emb, roots) = split_roots(&cone, MAX_SEARCH_BITS)?;
    let f1 = f1.map_coeffs(emb.big, |c| emb.map(*c));
    for r in roots {
        blow_up(&shift_v(&f1, r), depth + 1, out)?;
    }
    if cone.degree() < Some(m as usize) {
        blow_up(&chart_v(f, m), depth + 1, out)?;
    }
    Ok(())
}

/// δ of a singular point as the sum of `m (m - 1) / 2` over its infinitely near points.
pub fn delta_invariant(c: &PlaneCurveFq, p: &PointFq) -> Result<DeltaResult, FibreError> {
    let g = base_change(&c.form, &p.emb);
    let f = local_germ(&g, &p.coords)?;
    if f.min_degree() < Some(2) {
        return Err(FibreError::NotSingular);
    }
    delta_of_germ(&f)
}

/// δ of an affine germ in `u, v` that vanishes at the origin.
pub fn delta_of_germ(f: &MPoly<GfElem>) -> Result<DeltaResult, FibreError> {
    let mut out = DeltaResult { delta: 0, mult_sequence: Vec::new(), branches: 0 };
    blow_up(f, 0, &mut out)?;
    Ok(out)
}

/// How the tangent line at a smooth point meets a quartic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum TangentType {
    /// One contact point of multiplicity 4.
    Hyperflex4,
    /// Two contact points of multiplicity 2, possibly conjugate.
    Bitangent22,
    /// Any other profile of intersection multiplicities.
    Other { profile: Vec<u32> },
}

/// Two vectors spanning the kernel of a nonzero linear form.
fn kernel(l: &[GfElem; 3]) -> [[GfElem; 3]; 2] {
    let i = l.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let zero = l[i].field().zero();
    let mut out = [[zero; 3]; 2];
    for (slot, j) in (0..3).filter(|&j| j != i).enumerate() {
        out[slot][j] = l[i];
        out[slot][i] = l[j];
    }
    out
}

fn proportional(a: &[GfElem; 3], b: &[GfElem; 3]) -> bool {
    (0..3).all(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a[j] * b[k] == a[k] * b[j]
    })
}

/// Restriction of a form to the line through `p` and `q`, as a binary form in `s, u`.
pub(crate) fn restrict_to_line(g: &MPoly<GfElem>, p: &[GfElem; 3], q: &[GfElem; 3]) -> MPoly<GfElem> {
    let w = g.field();
    let s = MPoly::var(w, SU, 0);
    let u = MPoly::var(w, SU, 1);
    let images: Vec<MPoly<GfElem>> = (0..3).map(|i| s.scale(&p[i]).add(&u.scale(&q[i]))).collect();
    g.compose(&images)
}

const SU: &[&str] = &["s", "u"];

/// Classifies the tangent line at a smooth point of a quartic by the
/// multiplicities with which it meets the curve.
pub fn tangent_contact_type(c: &PlaneCurveFq, p: &PointFq) -> Result<TangentType, FibreError> {
    if c.degree() != 4 {
        return Err(FibreError::NotQuartic(c.degree()));
    }
    let g = base_change(&c.form, &p.emb);
    if !g.eval(&p.coords).is_zero() {
        return Err(FibreError::PointNotOnCurve);
    }
    let grad = [0, 1, 2].map(|i| g.derivative(i).eval(&p.coords));
    if grad.iter().all(|c| c.is_zero()) {
        return Err(FibreError::NotSmoothPoint);
    }
    let q = kernel(&grad).into_iter().find(|q| !proportional(q, &p.coords)).expect("kernel has rank two");
    let h = restrict_to_line(&g, &p.coords, &q);
    // Coefficient of s^(4-k) u^k; u = 0 is the point p.
    let coef = |k: u16| h.coeff(&Mono([4 - k, k, 0, 0]));
    let ord = (0..=4).find(|&k| !coef(k).is_zero());
    Ok(match ord {
        None => TangentType::Other { profile: vec![] },
        Some(4) => TangentType::Hyperflex4,
        Some(3) => TangentType::Other { profile: vec![3, 1] },
        // Remaining factor a s^2 + b s u + c u^2 with a != 0: in characteristic 2
        // it is a square exactly when b = 0.
        Some(2) if coef(3).is_zero() => TangentType::Bitangent22,
        Some(2) => TangentType::Other { profile: vec![2, 1, 1] },
        Some(k) => return Err(FibreError::Internal(format!("tangent line meets the curve with order {k}"))),
    })
}
