//! Resolution of the base points of a pencil of plane curves by point
//! blowups, with intersection numbers computed from divisor classes.
//!
//! A curve on the blown-up plane has class `d H - Σ m_j e_j`, where `e_j` is
//! the total transform of the `j`-th exceptional line. The strict transform of
//! the `k`-th exceptional curve is `e_k - Σ e_j` over the later centers `j`
//! lying on it. Then `C·D = d_C d_D - Σ m_j(C) m_j(D)`.

mod covering;
mod dynkin;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FieldSpec, FormFq, GfElem, MPoly, UPoly, XYZ};
use crate::fibres::{common_zeros, local_germ, split_roots, FibreError, PointFq, MAX_SEARCH_BITS, UV};

pub use covering::{covering_check, covering_check_with, psi, CoveringReport, CurveCover};
pub use dynkin::{dynkin_type, DynkinLabel};

/// Upper bound on the number of blowups.
const MAX_CENTERS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("pencil members must be nonzero forms of equal degree")]
    BadPencil,
    #[error("the pencil members share a component")]
    NotCoprime,
    #[error("blowup center is not rational over the base field")]
    NonRationalCenter,
    #[error("resolution exceeds {MAX_CENTERS} blowups")]
    DoesNotTerminate,
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("factorization of a member does not match: {0}")]
    BadFactors(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Fibre(#[from] FibreError),
}

/// Two members of a pencil of plane curves and the named plane curves into
/// which they factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpec {
    pub label: String,
    pub f0: FormFq,
    pub f1: FormFq,
    /// Named plane curves, each an irreducible factor of `f0` or `f1`.
    pub named: Vec<(String, FormFq)>,
    /// `f0` and `f1` as products of named curves with exponents.
    pub factors: [Vec<(usize, u32)>; 2],
    /// Appended to the letters of exceptional curves.
    pub suffix: String,
}

fn form(f: FieldSpec, terms: &[([u16; 3], u64)]) -> FormFq {
    let t: Vec<([u16; 3], GfElem)> = terms.iter().map(|(m, c)| (*m, f.elem(*c))).collect();
    FormFq::from_terms(f, XYZ, &t)
}

impl PencilSpec {
    /// Checks equal degrees, the factorizations, and that the common zeros are finite.
    pub fn new(
        label: &str,
        f0: FormFq,
        f1: FormFq,
        named: Vec<(String, FormFq)>,
        factors: [Vec<(usize, u32)>; 2],
        suffix: &str,
    ) -> Result<Self, ResolutionError> {
        let d = f0.total_degree();
        if f0.is_zero() || f1.is_zero() || d != f1.total_degree() || !f0.is_homogeneous() || !f1.is_homogeneous() {
            return Err(ResolutionError::BadPencil);
        }
        for (k, f) in [&f0, &f1].into_iter().enumerate() {
            let mut prod = FormFq::one(f.field(), XYZ);
            for (i, e) in &factors[k] {
                let (_, g) = named.get(*i).ok_or_else(|| ResolutionError::BadFactors(format!("no named curve {i}")))?;
                prod = prod.mul(&g.pow(*e));
            }
            if prod.scalar_ratio(f).is_none() {
                return Err(ResolutionError::BadFactors(format!("{f} != {prod}")));
            }
        }
        let spec = PencilSpec { label: label.into(), f0, f1, named, factors, suffix: suffix.into() };
        let bound = (d.unwrap_or(0) * d.unwrap_or(0)) as usize;
        if spec.base_points_over(4)?.len() > bound {
            return Err(ResolutionError::NotCoprime);
        }
        Ok(spec)
    }

    /// `t0 (y^4 + x z^3) + t1 x^3 z` with `W = V(y^4 + x z^3)`, `X = V(x)`, `Z = V(z)`.
    pub fn quartic() -> Self {
        let f = FieldSpec::binary();
        let w = form(f, &[([0, 4, 0], 1), ([1, 0, 3], 1)]);
        let x = form(f, &[([1, 0, 0], 1)]);
        let z = form(f, &[([0, 0, 1], 1)]);
        let f1 = x.pow(3).mul(&z);
        let named = vec![("W".into(), w.clone()), ("X".into(), x), ("Z".into(), z)];
        Self::new("quartic", w, f1, named, [vec![(0, 1)], vec![(1, 3), (2, 1)]], "").expect("valid pencil")
    }

    /// `t0 (u v^2 + w^3) + t1 u^2 w` in coordinates `(u:v:w)` stored as `(x:y:z)`,
    /// with `W' = V(u v^2 + w^3)`, `X' = V(u)`, `Z' = V(w)`.
    pub fn cubic() -> Self {
        let f = FieldSpec::binary();
        let w = form(f, &[([1, 2, 0], 1), ([0, 0, 3], 1)]);
        let u = form(f, &[([1, 0, 0], 1)]);
        let ww = form(f, &[([0, 0, 1], 1)]);
        let f1 = u.pow(2).mul(&ww);
        let named = vec![("W'".into(), w.clone()), ("X'".into(), u), ("Z'".into(), ww)];
        Self::new("cubic", w, f1, named, [vec![(0, 1)], vec![(1, 2), (2, 1)]], "'").expect("valid pencil")
    }

    pub fn field(&self) -> FieldSpec {
        self.f0.field()
    }

    pub fn degree(&self) -> u32 {
        self.f0.total_degree().expect("nonzero")
    }

    fn base_points_over(&self, r: u32) -> Result<Vec<[GfElem; 3]>, ResolutionError> {
        let emb = self.field().extension(r).map_err(FibreError::from)?;
        let map = |g: &FormFq| crate::fibres::base_change(g, &emb);
        Ok(common_zeros(&[map(&self.f0), map(&self.f1)]))
    }
}

/// Rational common zeros of the two members, in descending lexicographic order of coordinates.
pub fn base_points(p: &PencilSpec) -> Result<Vec<PointFq>, ResolutionError> {
    let mut pts: Vec<PointFq> = p.base_points_over(1)?.into_iter().map(PointFq::rational).collect();
    pts.sort_by_key(|q| std::cmp::Reverse(q.coords.map(|c| c.bits())));
    Ok(pts)
}

/// Data of a blowup center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Center {
    /// Index into the base points.
    pub base_point: usize,
    /// Order of the adjusted pencil at the center.
    pub multiplicity: u32,
    /// Names of the curves whose strict transforms pass through the center.
    pub on: Vec<String>,
}

/// A curve on the resolved surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub name: String,
    /// Plane degree; zero for exceptional curves.
    pub degree: u32,
    /// Coefficients `m_j` of the class, indexed by center.
    pub class: BTreeMap<usize, i64>,
    /// Set for exceptional curves.
    pub exceptional: Option<ExcData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcData {
    pub center: usize,
    /// Vanishing orders of the two adjusted members along the curve.
    pub mult_f0: u32,
    pub mult_f1: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub pencil: String,
    pub base_points: Vec<PointFq>,
    /// Number of blowups over each base point.
    pub counts: Vec<usize>,
    pub centers: Vec<Center>,
    pub curves: Vec<CurveRecord>,
    /// Number of distinct meeting points of pairs of curves, by index.
    meetings: HashMap<(usize, usize), usize>,
    factors: [Vec<(usize, u32)>; 2],
}

/// Name of the strict transform of a general member.
pub const GENERIC: &str = "G";

struct Local {
    g: [MPoly<GfElem>; 2],
    curves: Vec<(usize, MPoly<GfElem>)>,
}

struct Builder<'a> {
    spec: &'a PencilSpec,
    centers: Vec<Center>,
    curves: Vec<CurveRecord>,
    meetings: HashMap<(usize, usize), usize>,
    per_base: Vec<usize>,
    generic: usize,
}

/// `f(u, u v) / u^k`.
fn chart_u(f: &MPoly<GfElem>, k: u32) -> MPoly<GfElem> {
    let mut r = MPoly::zero(f.field(), UV);
    for (m, c) in f.terms() {
        let (i, j) = (m.0[0] as u32, m.0[1] as u32);
        r.add_term(crate::algebra::Mono([(i + j - k) as u16, j as u16, 0, 0]), *c);
    }
    r
}

/// `f(u v, v) / v^k`.
fn chart_v(f: &MPoly<GfElem>, k: u32) -> MPoly<GfElem> {
    let mut r = MPoly::zero(f.field(), UV);
    for (m, c) in f.terms() {
        let (i, j) = (m.0[0] as u32, m.0[1] as u32);
        r.add_term(crate::algebra::Mono([i as u16, (i + j - k) as u16, 0, 0]), *c);
    }
    r
}

/// Restriction to `u = 0` as a polynomial in `v`.
fn on_axis(f: &MPoly<GfElem>) -> UPoly {
    let w = f.field();
    let mut c = vec![w.zero(); f.degree_in(1) as usize + 1];
    for (m, k) in f.terms() {
        if m.0[0] == 0 {
            c[m.0[1] as usize] = *k;
        }
    }
    UPoly::from_coeffs(w, &c)
}

fn at_origin(f: &MPoly<GfElem>) -> bool {
    f.coeff(&crate::algebra::Mono::default()).is_zero()
}

fn shift_v(f: &MPoly<GfElem>, r: GfElem) -> MPoly<GfElem> {
    let w = f.field();
    f.compose(&[MPoly::var(w, UV, 0), MPoly::var(w, UV, 1).add(&MPoly::constant(w, UV, r))])
}

fn distinct_roots(p: &UPoly) -> Result<usize, ResolutionError> {
    if p.is_zero() {
        return Err(ResolutionError::NotCoprime);
    }
    Ok(split_roots(p, MAX_SEARCH_BITS)?.1.len())
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Builder<'_> {
    fn blow_up(&mut self, base: usize, local: Local) -> Result<(), ResolutionError> {
        let j = self.centers.len();
        if j >= MAX_CENTERS {
            return Err(ResolutionError::DoesNotTerminate);
        }
        let [m0, m1] = [0, 1].map(|i| local.g[i].min_degree().expect("nonzero member"));
        let m = m0.min(m1);
        for (id, eq) in &local.curves {
            let mu = eq.min_degree().expect("nonzero curve") as i64;
            self.curves[*id].class.insert(j, mu);
        }
        self.curves[self.generic].class.insert(j, m as i64);
        self.per_base[base] += 1;
        let letter = (b'E' + base as u8) as char;
        let e = self.curves.len();
        self.curves.push(CurveRecord {
            name: format!("{letter}{}{}", self.spec.suffix, self.per_base[base]),
            degree: 0,
            class: BTreeMap::from([(j, -1)]),
            exceptional: Some(ExcData { center: j, mult_f0: m0 - m, mult_f1: m1 - m }),
        });
        let on = local.curves.iter().map(|(id, _)| self.curves[*id].name.clone()).collect();
        self.centers.push(Center { base_point: base, multiplicity: m, on });

        let w = local.g[0].field();
        let g1 = [chart_u(&local.g[0], m), chart_u(&local.g[1], m)];
        let g2 = [chart_v(&local.g[0], m), chart_v(&local.g[1], m)];
        let mut c1 = Vec::new();
        let mut c2 = Vec::new();
        for (id, eq) in &local.curves {
            let mu = eq.min_degree().expect("nonzero curve");
            c1.push((*id, chart_u(eq, mu)));
            c2.push((*id, chart_v(eq, mu)));
        }
        c1.push((e, MPoly::var(w, UV, 0)));
        c2.push((e, MPoly::var(w, UV, 1)));

        // Base points on the new exceptional curve.
        let common = on_axis(&g1[0]).gcd(&on_axis(&g1[1]));
        let (emb, mut roots) = if common.is_zero() {
            return Err(ResolutionError::NotCoprime);
        } else {
            split_roots(&common, MAX_SEARCH_BITS)?
        };
        if emb.degree() > 1 {
            return Err(ResolutionError::NonRationalCenter);
        }
        roots.sort_by_key(|r| r.bits());
        let at_infinity = at_origin(&g2[0]) && at_origin(&g2[1]);

        self.record_meetings(e, &c1, &c2, &roots, at_infinity)?;

        for r in roots {
            let g = [shift_v(&g1[0], r), shift_v(&g1[1], r)];
            let curves = c1.iter().map(|(id, f)| (*id, shift_v(f, r))).filter(|(_, f)| at_origin(f)).collect();
            self.blow_up(base, Local { g, curves })?;
        }
        if at_infinity {
            let curves = c2.into_iter().filter(|(_, f)| at_origin(f)).collect();
            self.blow_up(base, Local { g: g2, curves })?;
        }
        Ok(())
    }

    /// Meeting points on the new curve `e` that are not blown up later.
    fn record_meetings(
        &mut self,
        e: usize,
        c1: &[(usize, MPoly<GfElem>)],
        c2: &[(usize, MPoly<GfElem>)],
        centers: &[GfElem],
        center_at_infinity: bool,
    ) -> Result<(), ResolutionError> {
        let n = c1.len();
        for a in 0..n {
            for b in a + 1..n {
                let (ia, ib) = (c1[a].0, c1[b].0);
                // The restriction of `e` to itself is zero; use the other curve alone.
                let pa = on_axis(&c1[a].1);
                let pb = on_axis(&c1[b].1);
                let common = if ia == e {
                    pb
                } else if ib == e {
                    pa
                } else {
                    pa.gcd(&pb)
                };
                let mut count = distinct_roots(&common)?;
                count -= centers.iter().filter(|&&r| common.eval(r).is_zero()).count();
                let inf = at_origin(&c2[a].1) && at_origin(&c2[b].1);
                if inf && !center_at_infinity {
                    count += 1;
                }
                if count > 0 {
                    *self.meetings.entry(key(ia, ib)).or_default() += count;
                }
            }
        }
        Ok(())
    }
}

/// Blows up base points until the pencil has none, tracking every curve.
pub fn resolve_pencil(p: &PencilSpec) -> Result<ResolutionReport, ResolutionError> {
    let bps = base_points(p)?;
    if p.base_points_over(2)?.len() != bps.len() {
        return Err(ResolutionError::NonRationalCenter);
    }
    let mut curves: Vec<CurveRecord> = p
        .named
        .iter()
        .map(|(name, f)| CurveRecord {
            name: name.clone(),
            degree: f.total_degree().expect("nonzero"),
            class: BTreeMap::new(),
            exceptional: None,
        })
        .collect();
    let generic = curves.len();
    curves.push(CurveRecord { name: GENERIC.into(), degree: p.degree(), class: BTreeMap::new(), exceptional: None });
    let mut b = Builder { spec: p, centers: Vec::new(), curves, meetings: HashMap::new(), per_base: vec![0; bps.len()], generic };
    for (k, bp) in bps.iter().enumerate() {
        let g = [local_germ(&p.f0, &bp.coords)?, local_germ(&p.f1, &bp.coords)?];
        let mut local_curves = Vec::new();
        for (i, (_, f)) in p.named.iter().enumerate() {
            match local_germ(f, &bp.coords) {
                Ok(eq) => local_curves.push((i, eq)),
                Err(FibreError::PointNotOnCurve) => {}
                Err(e) => return Err(e.into()),
            }
        }
        b.blow_up(k, Local { g, curves: local_curves })?;
    }
    // Meeting points of named plane curves away from the base points.
    for i in 0..p.named.len() {
        for j in i + 1..p.named.len() {
            let emb = p.field().extension(4).map_err(FibreError::from)?;
            let map = |g: &FormFq| crate::fibres::base_change(g, &emb);
            let pts = common_zeros(&[map(&p.named[i].1), map(&p.named[j].1)]);
            let away = pts.iter().filter(|q| !bps.iter().any(|bp| bp.coords.map(|c| emb.map(c)) == **q)).count();
            if away > 0 {
                *b.meetings.entry(key(i, j)).or_default() += away;
            }
        }
    }
    let report = ResolutionReport {
        pencil: p.label.clone(),
        base_points: bps,
        counts: b.per_base,
        centers: b.centers,
        curves: b.curves,
        meetings: b.meetings,
        factors: p.factors.clone(),
    };
    // Base points over larger extensions leave the generic member with positive square.
    if report.self_intersection(GENERIC)? != 0 {
        return Err(ResolutionError::NonRationalCenter);
    }
    Ok(report)
}

impl ResolutionReport {
    pub fn index(&self, name: &str) -> Result<usize, ResolutionError> {
        self.curves.iter().position(|c| c.name == name).ok_or_else(|| ResolutionError::UnknownCurve(name.into()))
    }

    pub fn curve(&self, name: &str) -> Result<&CurveRecord, ResolutionError> {
        Ok(&self.curves[self.index(name)?])
    }

    fn dot(&self, i: usize, j: usize) -> i64 {
        let (a, b) = (&self.curves[i], &self.curves[j]);
        let s: i64 = a.class.iter().map(|(k, m)| m * b.class.get(k).copied().unwrap_or(0)).sum();
        (a.degree * b.degree) as i64 - s
    }

    pub fn intersection(&self, a: &str, b: &str) -> Result<i64, ResolutionError> {
        Ok(self.dot(self.index(a)?, self.index(b)?))
    }

    pub fn self_intersection(&self, a: &str) -> Result<i64, ResolutionError> {
        self.intersection(a, a)
    }

    pub fn intersection_matrix(&self, names: &[&str]) -> Result<Vec<Vec<i64>>, ResolutionError> {
        let idx = names.iter().map(|n| self.index(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(idx.iter().map(|&i| idx.iter().map(|&j| self.dot(i, j)).collect()).collect())
    }

    /// Number of distinct points where two different curves meet.
    pub fn meeting_points(&self, a: &str, b: &str) -> Result<usize, ResolutionError> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.meetings.get(&key(i, j)).copied().unwrap_or(0))
    }

    /// Components with multiplicities of the member `t0 f0 + t1 f1`.
    pub fn fibre_divisor(&self, member: [GfElem; 2]) -> Vec<(String, u32)> {
        let k = match (member[0].is_zero(), member[1].is_zero()) {
            (false, true) => 0,
            (true, false) => 1,
            _ => return vec![(GENERIC.into(), 1)],
        };
        let mut out: Vec<(String, u32)> = self.factors[k].iter().map(|(i, e)| (self.curves[*i].name.clone(), *e)).collect();
        for c in &self.curves {
            if let Some(x) = &c.exceptional {
                let m = if k == 0 { x.mult_f0 } else { x.mult_f1 };
                if m > 0 {
                    out.push((c.name.clone(), m));
                }
            }
        }
        out
    }

    /// `D·C` for each component `C` of a divisor `D`.
    pub fn divisor_dot_components(&self, d: &[(String, u32)]) -> Result<Vec<(String, i64)>, ResolutionError> {
        d.iter()
            .map(|(c, _)| {
                let s = d.iter().map(|(n, k)| Ok(*k as i64 * self.intersection(n, c)?)).sum::<Result<i64, ResolutionError>>()?;
                Ok((c.clone(), s))
            })
            .collect()
    }

    /// Exceptional curves in creation order.
    pub fn exceptional(&self) -> impl Iterator<Item = &CurveRecord> {
        self.curves.iter().filter(|c| c.exceptional.is_some())
    }

    pub fn names(&self) -> Vec<&str> {
        self.curves.iter().map(|c| c.name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mults(d: &[(String, u32)]) -> Vec<u32> {
        d.iter().map(|(_, m)| *m).collect()
    }

    fn member(t0: u64, t1: u64) -> [GfElem; 2] {
        let f = FieldSpec::binary();
        [f.elem(t0), f.elem(t1)]
    }

    #[test]
    fn base_points_and_counts() {
        let q = resolve_pencil(&PencilSpec::quartic()).unwrap();
        let pts: Vec<String> = q.base_points.iter().map(|p| p.to_string()).collect();
        assert_eq!(pts, ["(1:0:0)", "(0:0:1)"]);
        assert_eq!(q.counts, [4, 12]);
        let c = resolve_pencil(&PencilSpec::cubic()).unwrap();
        let pts: Vec<String> = c.base_points.iter().map(|p| p.to_string()).collect();
        assert_eq!(pts, ["(1:0:0)", "(0:1:0)"]);
        assert_eq!(c.counts, [2, 7]);
    }

    #[test]
    fn two_lines_need_one_blowup() {
        let f = FieldSpec::binary();
        let (x, y) = (form(f, &[([1, 0, 0], 1)]), form(f, &[([0, 1, 0], 1)]));
        let p = PencilSpec::new("lines", x.clone(), y.clone(), vec![("L0".into(), x), ("L1".into(), y)], [vec![(0, 1)], vec![(1, 1)]], "").unwrap();
        let r = resolve_pencil(&p).unwrap();
        assert_eq!(r.counts, [1]);
        assert_eq!(r.self_intersection("L0").unwrap(), 0);
        assert_eq!(r.self_intersection("E1").unwrap(), -1);
    }

    #[test]
    fn conjugate_base_points() {
        let f = FieldSpec::binary();
        let q = form(f, &[([2, 0, 0], 1), ([1, 1, 0], 1), ([0, 2, 0], 1)]);
        let z = form(f, &[([0, 0, 1], 1)]);
        // x^2 + xy + y^2 and z^2 meet only at two points conjugate over F_4.
        let p = PencilSpec::new("conj", q.clone(), z.pow(2), vec![("Q".into(), q), ("Z".into(), z)], [vec![(0, 1)], vec![(1, 2)]], "").unwrap();
        assert!(base_points(&p).unwrap().is_empty());
        assert_eq!(resolve_pencil(&p), Err(ResolutionError::NonRationalCenter));

        // x^3 + xz^2 + z^3 and y^3 meet at three points defined over F_8 only.
        let c = form(f, &[([3, 0, 0], 1), ([1, 0, 2], 1), ([0, 0, 3], 1)]);
        let y = form(f, &[([0, 1, 0], 1)]);
        let p = PencilSpec::new("cubic", c.clone(), y.pow(3), vec![("C".into(), c), ("Y".into(), y)], [vec![(0, 1)], vec![(1, 3)]], "").unwrap();
        assert_eq!(resolve_pencil(&p), Err(ResolutionError::NonRationalCenter));
    }

    #[test]
    fn bad_pencils() {
        let f = FieldSpec::binary();
        let x = form(f, &[([1, 0, 0], 1)]);
        let xy = form(f, &[([1, 1, 0], 1)]);
        let xz = form(f, &[([1, 0, 1], 1)]);
        assert_eq!(PencilSpec::new("deg", x.clone(), xy.clone(), vec![], [vec![], vec![]], "").unwrap_err(), ResolutionError::BadPencil);
        let named = vec![("X".into(), x), ("Y".into(), form(f, &[([0, 1, 0], 1)])), ("Z".into(), form(f, &[([0, 0, 1], 1)]))];
        let common = PencilSpec::new("common", xy, xz, named, [vec![(0, 1), (1, 1)], vec![(0, 1), (2, 1)]], "");
        assert_eq!(common.unwrap_err(), ResolutionError::NotCoprime);
    }

    #[test]
    fn fibre_divisors() {
        let q = resolve_pencil(&PencilSpec::quartic()).unwrap();
        let d0 = q.fibre_divisor(member(1, 0));
        assert_eq!(d0.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(), ["W", "E1", "E2", "E3"]);
        assert_eq!(mults(&d0), [1, 2, 2, 1]);
        let d1 = q.fibre_divisor(member(0, 1));
        assert_eq!(d1[0].0, "X");
        assert_eq!(d1[12].0, "F11");
        assert_eq!(mults(&d1), [3, 1, 2, 4, 6, 8, 7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(q.fibre_divisor(member(1, 1)), [(GENERIC.to_string(), 1)]);
        let c = resolve_pencil(&PencilSpec::cubic()).unwrap();
        let d = c.fibre_divisor(member(0, 1));
        assert_eq!(d.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(), ["X'", "Z'", "F'1", "F'2", "F'3", "F'4", "F'5", "F'6"]);
        assert_eq!(mults(&d), [2, 1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(mults(&c.fibre_divisor(member(1, 0))), [1, 1]);
    }

    #[test]
    fn intersection_numbers() {
        let q = resolve_pencil(&PencilSpec::quartic()).unwrap();
        let m = q.intersection_matrix(&["W", "E1", "E2", "E3"]).unwrap();
        assert_eq!(m, [[-6, 2, 1, 0], [2, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]]);
        for (a, b, v) in [("X", "X", -3), ("Z", "Z", -3), ("E4", "E4", -1), ("F12", "F12", -1), ("W", "F12", 1), ("Z", "E4", 1), ("G", "G", 0)] {
            assert_eq!(q.intersection(a, b).unwrap(), v, "{a}.{b}");
        }
        for k in 1..=11 {
            assert_eq!(q.self_intersection(&format!("F{k}")).unwrap(), -2);
        }
        assert!(matches!(q.intersection("W", "Q"), Err(ResolutionError::UnknownCurve(_))));
        for r in [q, resolve_pencil(&PencilSpec::cubic()).unwrap()] {
            for t in [member(1, 0), member(0, 1)] {
                let d = r.fibre_divisor(t);
                assert!(r.divisor_dot_components(&d).unwrap().iter().all(|(_, v)| *v == 0));
                assert!(d.iter().all(|(n, _)| r.self_intersection(n).unwrap() != -1));
            }
            assert_eq!(r.self_intersection(GENERIC).unwrap(), 0);
        }
    }

    #[test]
    fn meetings() {
        let c = resolve_pencil(&PencilSpec::cubic()).unwrap();
        assert_eq!(c.intersection("W'", "E'1").unwrap(), 2);
        assert_eq!(c.meeting_points("W'", "E'1").unwrap(), 1);
        let q = resolve_pencil(&PencilSpec::quartic()).unwrap();
        assert_eq!(q.meeting_points("X", "Z").unwrap(), 1);
        assert_eq!(q.meeting_points("E1", "E2").unwrap(), 1);
        assert_eq!(q.meeting_points("E1", "E3").unwrap(), 0);
    }

    #[test]
    fn dynkin_labels() {
        let q = resolve_pencil(&PencilSpec::quartic()).unwrap();
        assert_eq!(dynkin_type(&q, &["E1", "E2", "E3"]).unwrap(), DynkinLabel::A(3));
        let f: Vec<String> = (1..=11).map(|k| format!("F{k}")).collect();
        let f: Vec<&str> = f.iter().map(String::as_str).collect();
        assert_eq!(dynkin_type(&q, &f).unwrap(), DynkinLabel::A(11));
        assert_eq!(dynkin_type(&q, &["W", "E1"]).unwrap(), DynkinLabel::Unrecognized);
        let c = resolve_pencil(&PencilSpec::cubic()).unwrap();
        let t = dynkin_type(&c, &["W'", "E'1"]).unwrap();
        assert_eq!((t.to_string(), t.kodaira()), ("Ã1*".into(), Some("III".into())));
        let names: Vec<String> = c.fibre_divisor(member(0, 1)).into_iter().map(|(n, _)| n).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let t = dynkin_type(&c, &names).unwrap();
        assert_eq!((t.to_string(), t.kodaira()), ("Ẽ7".into(), Some("III*".into())));
    }

    #[test]
    fn covering() {
        let r = covering_check().unwrap();
        assert_eq!(r.common_factor, "x^2");
        let find = |s: &str| r.curves.iter().find(|c| c.source == s).unwrap().clone();
        assert_eq!((find("W").target, find("W").degree), ("W'".to_string(), 2));
        assert_eq!((find("Z").target, find("Z").degree), ("Z'".to_string(), 2));
        assert_eq!(find("X").target, "(0:1:0)");
        let id = [0, 1, 2].map(|i| MPoly::var(FieldSpec::binary(), XYZ, i));
        assert!(matches!(covering_check_with(&id), Err(ResolutionError::IdentityFailed(_))));
    }
}
