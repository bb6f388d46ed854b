//! The degree-two cover of the cubic pencil's plane by the quartic pencil's
//! plane, `psi(x:y:z) = (x^2 : y^2 : xz)`.

use serde::Serialize;

use crate::algebra::{FieldSpec, FormFq, GfElem, MPoly, Mono, XYZ};

use super::{PencilSpec, ResolutionError};

const SR: &[&str] = &["s", "r"];

/// Image of a named curve under the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCover {
    pub source: String,
    /// A named curve of the cubic pencil, or a point when the curve is contracted.
    pub target: String,
    /// Degree of the map onto the target; zero when contracted.
    pub degree: u32,
    /// The map factors through the Frobenius of the source parametrization.
    pub inseparable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    /// `λ` with `τ' ∘ ψ = λ · τ`.
    pub common_factor: String,
    pub curves: Vec<CurveCover>,
    /// Claims about the birational map between the resolved surfaces that are not checked.
    pub unverified: Vec<String>,
}

fn sr(w: FieldSpec, terms: &[(u16, u16)]) -> MPoly<GfElem> {
    let mut p = MPoly::zero(w, SR);
    for &(a, b) in terms {
        p.add_term(Mono([a, b, 0, 0]), w.one());
    }
    p
}

fn frobenius(p: &[MPoly<GfElem>; 3]) -> [MPoly<GfElem>; 3] {
    let w = p[0].field();
    let sq = [sr(w, &[(2, 0)]), sr(w, &[(0, 2)])];
    p.clone().map(|c| c.compose(&sq))
}

/// `Some(μ)` with `a = μ · b` coordinatewise for a form `μ`.
fn proportional(a: &[MPoly<GfElem>; 3], b: &[MPoly<GfElem>; 3]) -> Option<MPoly<GfElem>> {
    let i = (0..3).find(|&i| !b[i].is_zero())?;
    let mu = a[i].divide(&b[i]).ok().flatten()?;
    (0..3).all(|j| a[j] == b[j].mul(&mu)).then_some(mu)
}

/// The default cover `(x^2 : y^2 : xz)`.
pub fn psi(w: FieldSpec) -> [FormFq; 3] {
    let x = MPoly::var(w, XYZ, 0);
    let y = MPoly::var(w, XYZ, 1);
    let z = MPoly::var(w, XYZ, 2);
    [x.pow(2), y.pow(2), x.mul(&z)]
}

pub fn covering_check() -> Result<CoveringReport, ResolutionError> {
    covering_check_with(&psi(FieldSpec::binary()))
}

/// Verifies `τ' ∘ map = λ · τ` for a form `λ` and follows the named curves.
pub fn covering_check_with(map: &[FormFq; 3]) -> Result<CoveringReport, ResolutionError> {
    let (q, c) = (PencilSpec::quartic(), PencilSpec::cubic());
    let w = q.field();
    let tau = [q.f1.clone(), q.f0.clone()];
    let tau_c = [c.f1.compose(map), c.f0.compose(map)];
    let lambda = tau_c[0]
        .divide(&tau[0])
        .ok()
        .flatten()
        .filter(|l| tau_c[1] == tau[1].mul(l))
        .ok_or_else(|| ResolutionError::IdentityFailed(format!("({}, {}) is not a multiple of ({}, {})", tau_c[0], tau_c[1], tau[0], tau[1])))?;

    let params: [(&str, [MPoly<GfElem>; 3]); 3] = [
        ("W", [sr(w, &[(4, 0)]), sr(w, &[(1, 3)]), sr(w, &[(0, 4)])]),
        ("X", [MPoly::zero(w, SR), sr(w, &[(1, 0)]), sr(w, &[(0, 1)])]),
        ("Z", [sr(w, &[(1, 0)]), sr(w, &[(0, 1)]), MPoly::zero(w, SR)]),
    ];
    let params_c: [(&str, [MPoly<GfElem>; 3]); 2] = [
        ("W'", [sr(w, &[(3, 0)]), sr(w, &[(0, 3)]), sr(w, &[(1, 2)])]),
        ("Z'", [sr(w, &[(1, 0)]), sr(w, &[(0, 1)]), MPoly::zero(w, SR)]),
    ];
    let on = |spec: &PencilSpec, name: &str, p: &[MPoly<GfElem>; 3]| -> Result<(), ResolutionError> {
        let (_, f) = spec.named.iter().find(|(n, _)| n == name).ok_or_else(|| ResolutionError::UnknownCurve(name.into()))?;
        if f.compose(p).is_zero() {
            Ok(())
        } else {
            Err(ResolutionError::IdentityFailed(format!("parametrization does not lie on {name}")))
        }
    };
    for (n, p) in &params {
        on(&q, n, p)?;
    }
    for (n, p) in &params_c {
        on(&c, n, p)?;
    }

    let mut curves = Vec::new();
    for (name, p) in &params {
        let image: [MPoly<GfElem>; 3] = [0, 1, 2].map(|i| map[i].compose(p));
        let hit = params_c.iter().find_map(|(n, pc)| proportional(&image, &frobenius(pc)).map(|_| *n));
        let cover = match hit {
            Some(n) => CurveCover { source: name.to_string(), target: n.into(), degree: 2, inseparable: true },
            None => match contracted(&image) {
                Some(pt) => CurveCover { source: name.to_string(), target: pt, degree: 0, inseparable: false },
                None => return Err(ResolutionError::IdentityFailed(format!("image of {name} is not a named curve"))),
            },
        };
        curves.push(cover);
    }
    Ok(CoveringReport {
        common_factor: lambda.to_string(),
        curves,
        unverified: vec!["the induced map between the resolved surfaces is undefined only where X meets Z".into()],
    })
}

/// The point an image collapses to, when all coordinates are proportional to one binary form.
fn contracted(image: &[MPoly<GfElem>; 3]) -> Option<String> {
    let i = (0..3).find(|&i| !image[i].is_zero())?;
    let coords: Option<Vec<GfElem>> = image
        .iter()
        .map(|c| if c.is_zero() { Some(c.field().zero()) } else { c.scalar_ratio(&image[i]) })
        .collect();
    let c = coords?;
    Some(format!("({}:{}:{})", c[0], c[1], c[2]))
}
