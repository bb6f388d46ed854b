//! Points of plane curves over finite fields, singular loci and local germs.

use std::fmt;

use crate::algebra::{Embedding, FieldSpec, FormFq, GfElem, MPoly, Mono, UPoly};

use super::{FibreError, PlaneCurveFq};

/// Variable names of affine germs.
pub const UV: &[&str] = &["u", "v"];

/// Largest field, in bits, that brute-force searches will enumerate.
pub const MAX_SEARCH_BITS: u32 = 16;

/// A point of P^2 whose coordinates live in the field `emb.big`, an extension of
/// the curve's field. The first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointFq {
    pub coords: [GfElem; 3],
    pub emb: Embedding,
}

impl PointFq {
    /// Normalizes `coords`, which must not all vanish.
    pub fn new(coords: [GfElem; 3], emb: Embedding) -> Self {
        let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let k = lead.inv().expect("nonzero");
        PointFq { coords: coords.map(|c| c * k), emb }
    }

    /// A point over the curve's own field.
    pub fn rational(coords: [GfElem; 3]) -> Self {
        Self::new(coords, Embedding::identity(coords[0].field()))
    }

    /// Degree of the coordinate field over the curve's field.
    pub fn degree(&self) -> u32 {
        self.emb.degree()
    }
}

impl fmt::Display for PointFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a}:{b}:{c})")
    }
}

/// The form with coefficients pushed along an embedding.
pub fn base_change(f: &FormFq, emb: &Embedding) -> FormFq {
    if emb.small == emb.big {
        return f.clone();
    }
    f.map_coeffs(emb.big, |c| emb.map(*c))
}

pub fn map_upoly(p: &UPoly, emb: &Embedding) -> UPoly {
    let c: Vec<GfElem> = (0..p.len()).map(|i| emb.map(p.coeff(i))).collect();
    UPoly::from_coeffs(emb.big, &c)
}

/// Distinct roots lying in the coefficient field, by enumeration.
pub fn roots_in(p: &UPoly) -> Vec<GfElem> {
    match p.degree() {
        None => p.field().elements().collect(),
        Some(0) => Vec::new(),
        Some(1) => vec![p.coeff(0) * p.coeff(1).inv().expect("nonzero lead")],
        Some(_) => p.field().elements().filter(|&x| p.eval(x).is_zero()).collect(),
    }
}

fn root_multiplicity(p: &UPoly, x: GfElem) -> usize {
    let lin = UPoly::from_coeffs(p.field(), &[x, p.field().one()]);
    let mut q = p.clone();
    let mut k = 0;
    loop {
        let (quo, rem) = q.divrem(&lin);
        if !rem.is_zero() {
            return k;
        }
        q = quo;
        k += 1;
    }
}

/// Distinct roots of a nonzero polynomial over its splitting field, found by
/// trying extensions of degree 1, 2, ... up to `max_bits` bits.
pub fn split_roots(p: &UPoly, max_bits: u32) -> Result<(Embedding, Vec<GfElem>), FibreError> {
    let f = p.field();
    let deg = p.degree().expect("nonzero polynomial");
    if deg == 0 {
        return Ok((Embedding::identity(f), Vec::new()));
    }
    for r in 1.. {
        if f.m() * r > max_bits.min(MAX_SEARCH_BITS) {
            return Err(FibreError::FieldTooLarge(f.m() * r));
        }
        let emb = f.extension(r)?;
        let q = map_upoly(p, &emb);
        let roots = roots_in(&q);
        let total: usize = roots.iter().map(|&x| root_multiplicity(&q, x)).sum();
        if total == deg {
            return Ok((emb, roots));
        }
    }
    unreachable!()
}

/// Coefficients in `z` of `f(x, y, z)` for fixed `x, y`.
fn in_last_var(f: &FormFq, x: GfElem, y: GfElem) -> UPoly {
    let w = x.field();
    let n = f.degree_in(2) as usize + 1;
    let mut c = vec![w.zero(); n];
    for (m, k) in f.terms() {
        c[m.0[2] as usize] = c[m.0[2] as usize] + *k * x.pow(m.0[0] as u64) * y.pow(m.0[1] as u64);
    }
    UPoly::from_coeffs(w, &c)
}

/// Common zeros in P^2 of `forms`, all over the same field, in chart order
/// `(1:y:z)`, `(0:1:z)`, `(0:0:1)`.
pub fn common_zeros(forms: &[FormFq]) -> Vec<[GfElem; 3]> {
    let w = forms[0].field();
    let (zero, one) = (w.zero(), w.one());
    let z_roots = |x: GfElem, y: GfElem| {
        let g = forms.iter().fold(UPoly::zero(w), |acc, p| acc.gcd(&in_last_var(p, x, y)));
        roots_in(&g)
    };
    let mut out = Vec::new();
    for y in w.elements() {
        out.extend(z_roots(one, y).into_iter().map(|z| [one, y, z]));
    }
    out.extend(z_roots(zero, one).into_iter().map(|z| [zero, one, z]));
    let e = [zero, zero, one];
    if forms.iter().all(|p| p.eval(&e).is_zero()) {
        out.push(e);
    }
    out
}

/// Points where the form and its three partials vanish, over the form's own field.
pub fn singular_points_over(g: &FormFq) -> Vec<[GfElem; 3]> {
    common_zeros(&[g.clone(), g.derivative(0), g.derivative(1), g.derivative(2)])
}

/// Whether every coordinate lies in the subfield of degree `d` over `base`.
fn in_subfield(coords: &[GfElem; 3], base: FieldSpec, d: u32) -> bool {
    coords.iter().all(|&c| {
        let mut x = c;
        for _ in 0..base.m() * d {
            x = x.square();
        }
        x == c
    })
}

/// Singular points over extensions of degree `1..=max_ext`, each listed once at
/// the smallest degree over which it is defined.
pub fn singular_locus(c: &PlaneCurveFq, max_ext: u32) -> Result<Vec<PointFq>, FibreError> {
    if max_ext == 0 {
        return Err(FibreError::BadInput("max_ext must be at least 1".into()));
    }
    let base = c.field;
    let mut out = Vec::new();
    for r in 1..=max_ext {
        if base.m() * r > MAX_SEARCH_BITS {
            return Err(FibreError::FieldTooLarge(base.m() * r));
        }
        let emb = base.extension(r)?;
        for p in singular_points_over(&base_change(&c.form, &emb)) {
            let minimal = (1..=r).find(|d| r % d == 0 && in_subfield(&p, base, *d)) == Some(r);
            if minimal {
                out.push(PointFq::new(p, emb));
            }
        }
    }
    Ok(out)
}

/// The affine germ of `g` at `pt`, moved to the origin of the chart where the
/// first nonzero coordinate of `pt` is 1.
pub fn local_germ(g: &FormFq, pt: &[GfElem; 3]) -> Result<MPoly<GfElem>, FibreError> {
    let w = g.field();
    let i = pt.iter().position(|c| !c.is_zero()).ok_or(FibreError::PointNotOnCurve)?;
    let k = pt[i].inv().expect("nonzero");
    let mut next = 0;
    let images: Vec<MPoly<GfElem>> = (0..3)
        .map(|j| {
            if j == i {
                MPoly::one(w, UV)
            } else {
                let v = MPoly::var(w, UV, next);
                next += 1;
                v.add(&MPoly::constant(w, UV, pt[j] * k))
            }
        })
        .collect();
    let f = g.compose(&images);
    if !f.coeff(&Mono::default()).is_zero() {
        return Err(FibreError::PointNotOnCurve);
    }
    Ok(f)
}

/// Order of vanishing of the curve at a point.
pub fn multiplicity_at(c: &PlaneCurveFq, p: &PointFq) -> Result<u32, FibreError> {
    let g = base_change(&c.form, &p.emb);
    Ok(local_germ(&g, &p.coords)?.min_degree().expect("nonzero germ"))
}

/// Up to `limit` smooth points over `emb.big`, in chart order.
pub fn smooth_points(c: &PlaneCurveFq, emb: &Embedding, limit: usize) -> Vec<PointFq> {
    let g = base_change(&c.form, emb);
    let grads = [g.derivative(0), g.derivative(1), g.derivative(2)];
    let w = emb.big;
    let smooth = |p: &[GfElem; 3]| grads.iter().any(|d| !d.eval(p).is_zero());
    let mut out = Vec::new();
    let mut push = |p: [GfElem; 3]| {
        if out.len() < limit && smooth(&p) {
            out.push(PointFq::new(p, *emb));
        }
        out.len() >= limit
    };
    for y in w.elements() {
        for z in roots_in(&in_last_var(&g, w.one(), y)) {
            if push([w.one(), y, z]) {
                return out;
            }
        }
    }
    for z in roots_in(&in_last_var(&g, w.zero(), w.one())) {
        if push([w.zero(), w.one(), z]) {
            return out;
        }
    }
    let e = [w.zero(), w.zero(), w.one()];
    if g.eval(&e).is_zero() {
        push(e);
    }
    out
}
