//! Shape of a quartic member: double conic, line configurations, or an
//! integral quartic with one unibranch singular point.

use crate::algebra::{Embedding, FormFq, GfElem, MPoly, UPoly, XYZ};

use super::local::{delta_invariant, tangent_contact_type, TangentType};
use super::points::{base_change, roots_in, singular_locus, singular_points_over, smooth_points, PointFq};
use super::{multiplicity_at, FibreError, PlaneCurveFq};

/// Search limits for classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest extension degree searched for singular points and line components.
    pub max_ext: u32,
    /// Largest field, in bits, searched by enumeration of points.
    pub max_bits: u32,
    /// Number of smooth points whose tangent lines are examined.
    pub tangent_samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_ext: 4, max_bits: 8, tangent_samples: 4 }
    }
}

impl Bounds {
    /// Extension degrees to search over a field of degree `m`; at least 1.
    pub fn ext_limit(&self, m: u32) -> u32 {
        self.max_ext.min(self.max_bits / m).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreClass {
    IntegralQuartic {
        sing_point: PointFq,
        multiplicity: u32,
        delta: u32,
        /// Common contact type of the sampled tangent lines; `None` when they
        /// disagree or no smooth point was found.
        tangent_type: Option<TangentType>,
        samples: usize,
    },
    ConicPlusDoubleLine { line: FormFq, conic: FormFq },
    DoubleConic { conic: FormFq },
    LinePlusTripleLine { line: FormFq, triple_line: FormFq },
    Other { components: Vec<String> },
}

impl FibreClass {
    pub fn variant(&self) -> &'static str {
        match self {
            FibreClass::IntegralQuartic { .. } => "IntegralQuartic",
            FibreClass::ConicPlusDoubleLine { .. } => "ConicPlusDoubleLine",
            FibreClass::DoubleConic { .. } => "DoubleConic",
            FibreClass::LinePlusTripleLine { .. } => "LinePlusTripleLine",
            FibreClass::Other { .. } => "Other",
        }
    }
}

pub fn classify_fibre(c: &PlaneCurveFq) -> Result<FibreClass, FibreError> {
    classify_fibre_with(c, &Bounds::default())
}

/// A conic that is not a square and has no singular point over extensions of degree at most 2.
pub fn is_smooth_conic(q: &FormFq) -> Result<bool, FibreError> {
    if q.total_degree() != Some(2) || !q.is_homogeneous() || q.square_root().is_some() {
        return Ok(false);
    }
    for r in 1..=2 {
        let emb = q.field().extension(r)?;
        if !singular_points_over(&base_change(q, &emb)).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify_fibre_with(c: &PlaneCurveFq, b: &Bounds) -> Result<FibreClass, FibreError> {
    if c.degree() != 4 {
        return Err(FibreError::NotQuartic(c.degree()));
    }
    if let Some(r) = c.form.square_root() {
        return Ok(if is_smooth_conic(&r)? {
            FibreClass::DoubleConic { conic: r.monic() }
        } else {
            FibreClass::Other { components: vec![format!("({})^2", r.monic())] }
        });
    }
    for r in 1..=b.ext_limit(c.field.m()) {
        let emb = c.field.extension(r)?;
        let g = base_change(&c.form, &emb);
        let lines = line_components(&g);
        if !lines.is_empty() {
            return shape_from_lines(&g, &lines);
        }
    }
    integral_or_other(c, b)
}

fn line_form(l: [GfElem; 3]) -> FormFq {
    FormFq::from_terms(l[0].field(), XYZ, &[([1, 0, 0], l[0]), ([0, 1, 0], l[1]), ([0, 0, 1], l[2])]).monic()
}

fn cross(p: &[GfElem; 3], q: &[GfElem; 3]) -> [GfElem; 3] {
    [p[1] * q[2] + p[2] * q[1], p[2] * q[0] + p[0] * q[2], p[0] * q[1] + p[1] * q[0]]
}

const SUL: &[&str] = &["s", "u", "l"];

/// Lines contained in `V(g)` that pass through a singular point, all over `g`'s field.
fn line_components(g: &FormFq) -> Vec<FormFq> {
    let w = g.field();
    let mut lines: Vec<FormFq> = Vec::new();
    for p in singular_points_over(g) {
        if lines.iter().any(|l| l.eval(&p).is_zero()) {
            continue;
        }
        // Directions e_j + l e_k and e_k complete p to a basis.
        let i = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let unit = |n: usize| {
            let mut e = [w.zero(); 3];
            e[n] = w.one();
            e
        };
        let s = MPoly::var(w, SUL, 0);
        let u = MPoly::var(w, SUL, 1);
        let lu = MPoly::var(w, SUL, 2).mul(&u);
        let images: Vec<MPoly<GfElem>> = (0..3)
            .map(|n| {
                let mut im = s.scale(&p[n]);
                if n == j {
                    im = im.add(&u);
                }
                if n == k {
                    im = im.add(&lu);
                }
                im
            })
            .collect();
        let h = g.compose(&images);
        // Collect the coefficient of each s^a u^b as a polynomial in l.
        let mut by_su: std::collections::BTreeMap<(u16, u16), Vec<GfElem>> = Default::default();
        for (m, c) in h.terms() {
            let v = by_su.entry((m.0[0], m.0[1])).or_default();
            let e = m.0[2] as usize;
            if v.len() <= e {
                v.resize(e + 1, w.zero());
            }
            v[e] = *c;
        }
        let gcd = by_su.values().fold(UPoly::zero(w), |acc, v| acc.gcd(&UPoly::from_coeffs(w, v)));
        let mut dirs: Vec<[GfElem; 3]> = if gcd.is_zero() {
            Vec::new()
        } else {
            roots_in(&gcd)
                .into_iter()
                .map(|l| {
                    let mut d = unit(j);
                    d[k] = l;
                    d
                })
                .collect()
        };
        if super::local::restrict_to_line(g, &p, &unit(k)).is_zero() {
            dirs.push(unit(k));
        }
        for d in dirs {
            let l = line_form(cross(&p, &d));
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    lines
}

fn divides_power(g: &FormFq, l: &FormFq, e: u32) -> Option<FormFq> {
    g.divide(&l.pow(e)).ok().flatten()
}

fn shape_from_lines(g: &FormFq, lines: &[FormFq]) -> Result<FibreClass, FibreError> {
    for m in lines {
        if let Some(rest) = divides_power(g, m, 3) {
            if let Some(l) = lines.iter().find(|l| *l != m && rest.scalar_ratio(l).is_some()) {
                return Ok(FibreClass::LinePlusTripleLine { line: l.clone(), triple_line: m.clone() });
            }
        }
    }
    for l in lines {
        if let Some(q) = divides_power(g, l, 2) {
            if is_smooth_conic(&q)? {
                return Ok(FibreClass::ConicPlusDoubleLine { line: l.clone(), conic: q.monic() });
            }
        }
    }
    let mut rest = g.clone();
    let mut components = Vec::new();
    for l in lines {
        while let Some(q) = divides_power(&rest, l, 1) {
            components.push(l.to_string());
            rest = q;
        }
    }
    if rest.total_degree() > Some(0) {
        components.push(rest.monic().to_string());
    }
    Ok(FibreClass::Other { components })
}

fn integral_or_other(c: &PlaneCurveFq, b: &Bounds) -> Result<FibreClass, FibreError> {
    let locus = singular_locus(c, b.ext_limit(c.field.m()))?;
    let other = |why: String| Ok(FibreClass::Other { components: vec![why] });
    let [p] = locus.as_slice() else {
        return other(format!("{} singular points", locus.len()));
    };
    let multiplicity = multiplicity_at(c, p)?;
    let d = match delta_invariant(c, p) {
        Ok(d) => d,
        Err(FibreError::NonReduced) => return other("multiple component".into()),
        Err(e) => return Err(e),
    };
    if d.branches != 1 || d.delta != 3 {
        return other(format!("singular point {p} with delta {} and {} branches", d.delta, d.branches));
    }
    let mut samples = Vec::new();
    for r in 1..=b.ext_limit(c.field.m()) {
        let emb: Embedding = c.field.extension(r)?;
        samples = smooth_points(c, &emb, b.tangent_samples);
        if !samples.is_empty() {
            break;
        }
    }
    let types = samples.iter().map(|q| tangent_contact_type(c, q)).collect::<Result<Vec<_>, _>>()?;
    let tangent_type = match types.split_first() {
        Some((t, rest)) if rest.iter().all(|s| s == t) => Some(t.clone()),
        _ => None,
    };
    Ok(FibreClass::IntegralQuartic { sing_point: *p, multiplicity, delta: d.delta, tangent_type, samples: types.len() })
}
