//! Fibres of the universal quartic fibrations and of the two pencils over
//! finite fields: singular loci, multiplicities, δ-invariants, tangent
//! contact and the shape of degenerate members.

mod classify;
mod local;
mod points;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, FieldSpec, FormFq, GfElem, XYZ};
use crate::families::{family_form, Tag};

pub use classify::{classify_fibre, classify_fibre_with, is_smooth_conic, Bounds, FibreClass};
pub use local::{delta_invariant, delta_of_germ, tangent_contact_type, DeltaResult, TangentType};
pub use points::{
    base_change, common_zeros, local_germ, multiplicity_at, singular_locus, singular_points_over, smooth_points,
    split_roots, PointFq, MAX_SEARCH_BITS, UV,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibreError {
    #[error("the specialized form vanishes identically")]
    ZeroForm,
    #[error("{fibration} takes {expected} parameters, got {got}")]
    Arity { fibration: Fibration, expected: usize, got: usize },
    #[error("not a plane cubic or quartic: {0}")]
    BadCurve(String),
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(u32),
    #[error("the point is not on the curve")]
    PointNotOnCurve,
    #[error("the point is singular")]
    NotSmoothPoint,
    #[error("the point is smooth")]
    NotSingular,
    #[error("search over GF(2^{0}) exceeds the enumeration bound")]
    FieldTooLarge(u32),
    #[error("resolution does not terminate: the curve has a multiple component")]
    NonReduced,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The families of plane curves whose fibres are studied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fibration {
    Pi3,
    Pi4,
    Pi5,
    /// `t0 (y^4 + x z^3) + t1 x^3 z`.
    QuarticPencil,
    /// `t0 (x y^2 + z^3) + t1 x^2 z`.
    CubicPencil,
}

impl Fibration {
    pub const ALL: [Fibration; 5] =
        [Fibration::Pi3, Fibration::Pi4, Fibration::Pi5, Fibration::QuarticPencil, Fibration::CubicPencil];

    pub fn arity(self) -> usize {
        match self {
            Fibration::Pi4 => 3,
            Fibration::Pi3 | Fibration::Pi5 => 4,
            Fibration::QuarticPencil | Fibration::CubicPencil => 2,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Fibration::Pi4 => &["a", "b", "c"],
            Fibration::Pi3 | Fibration::Pi5 => &["a", "b", "c", "d"],
            Fibration::QuarticPencil | Fibration::CubicPencil => &["t0", "t1"],
        }
    }

    pub fn is_pencil(self) -> bool {
        matches!(self, Fibration::QuarticPencil | Fibration::CubicPencil)
    }

    pub fn name(self) -> &'static str {
        match self {
            Fibration::Pi3 => "pi3",
            Fibration::Pi4 => "pi4",
            Fibration::Pi5 => "pi5",
            Fibration::QuarticPencil => "quartic-pencil",
            Fibration::CubicPencil => "cubic-pencil",
        }
    }
}

impl fmt::Display for Fibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fibration {
    type Err = FibreError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pi3" => Ok(Fibration::Pi3),
            "pi4" => Ok(Fibration::Pi4),
            "pi5" => Ok(Fibration::Pi5),
            "pencil" | "quartic" | "quartic-pencil" => Ok(Fibration::QuarticPencil),
            "cubic" | "cubic-pencil" => Ok(Fibration::CubicPencil),
            _ => Err(FibreError::BadInput(format!("unknown fibration {s:?}"))),
        }
    }
}

/// A plane cubic or quartic over GF(2^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveFq {
    pub form: FormFq,
    pub field: FieldSpec,
}

impl PlaneCurveFq {
    pub fn new(form: FormFq) -> Result<Self, FibreError> {
        if form.is_zero() {
            return Err(FibreError::ZeroForm);
        }
        if !form.is_homogeneous() || !matches!(form.total_degree(), Some(3 | 4)) {
            return Err(FibreError::BadCurve(form.to_string()));
        }
        Ok(PlaneCurveFq { field: form.field(), form })
    }

    pub fn degree(&self) -> u32 {
        self.form.total_degree().expect("nonzero form")
    }
}

impl fmt::Display for PlaneCurveFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

fn pencil(field: FieldSpec, t: &[GfElem], f0: &[[u16; 3]], f1: &[[u16; 3]]) -> FormFq {
    let terms: Vec<([u16; 3], GfElem)> = f0.iter().map(|m| (*m, t[0])).chain(f1.iter().map(|m| (*m, t[1]))).collect();
    FormFq::from_terms(field, XYZ, &terms)
}

/// The member of `fib` over a parameter point.
pub fn specialize_fibre(fib: Fibration, field: FieldSpec, point: &[GfElem]) -> Result<PlaneCurveFq, FibreError> {
    if point.len() != fib.arity() {
        return Err(FibreError::Arity { fibration: fib, expected: fib.arity(), got: point.len() });
    }
    if point.iter().any(|c| c.field() != field) {
        return Err(FibreError::BadInput("parameter outside the chosen field".into()));
    }
    let form = match fib {
        Fibration::Pi3 => family_form(Tag::III, &[point[0], point[1], point[2], point[3]], field),
        Fibration::Pi4 => family_form(Tag::IV, &[point[0], point[1], point[2], field.zero()], field),
        Fibration::Pi5 => family_form(Tag::V, &[point[0], point[1], point[2], point[3]], field),
        Fibration::QuarticPencil => pencil(field, point, &[[0, 4, 0], [1, 0, 3]], &[[3, 0, 1]]),
        Fibration::CubicPencil => pencil(field, point, &[[1, 2, 0], [0, 0, 3]], &[[2, 0, 1]]),
    };
    PlaneCurveFq::new(form)
}

fn root4(x: GfElem) -> GfElem {
    x.sqrt().sqrt()
}

/// Location of the unique singular point of an integral member, from the
/// closed formulas; `None` on the degenerate locus.
pub fn closed_form_singular_point(fib: Fibration, point: &[GfElem]) -> Option<[GfElem; 3]> {
    let f = point.first()?.field();
    let (zero, one) = (f.zero(), f.one());
    match fib {
        Fibration::Pi3 => {
            let (a, b) = (point[0], point[1]);
            (!b.is_zero()).then(|| [one, root4(a), a.sqrt()])
        }
        Fibration::Pi4 => {
            let [a, b, c] = [point[0], point[1], point[2]];
            Some([one, root4(a * b * b + c), b.sqrt()])
        }
        Fibration::Pi5 => {
            let [a, b, d] = [point[0], point[1], point[3]];
            (!d.is_zero()).then(|| [one, root4(a * b * b + b), b.sqrt()])
        }
        Fibration::QuarticPencil | Fibration::CubicPencil => {
            let [t0, t1] = [point[0], point[1]];
            let c = t1 * t0.inv()?;
            Some([one, zero, c.sqrt()])
        }
    }
}

/// Parameter points of a fibration over GF(2^m): the affine grid in
/// lexicographic order, or `(1:c)` for each `c` followed by `(0:1)` for pencils.
pub fn parameter_grid(fib: Fibration, field: FieldSpec) -> Vec<Vec<GfElem>> {
    if fib.is_pencil() {
        let mut out: Vec<Vec<GfElem>> = field.elements().map(|c| vec![field.one(), c]).collect();
        out.push(vec![field.zero(), field.one()]);
        return out;
    }
    let mut out = vec![Vec::new()];
    for _ in 0..fib.arity() {
        out = out.into_iter().flat_map(|p| field.elements().map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

/// One classified member of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub params: Vec<GfElem>,
    pub class: Result<FibreClass, FibreError>,
}

/// Classifies the members over `points`, in parallel, keeping the input order.
pub fn scan(fib: Fibration, field: FieldSpec, points: &[Vec<GfElem>], bounds: &Bounds) -> Vec<ScanEntry> {
    points
        .par_iter()
        .map(|p| ScanEntry {
            params: p.clone(),
            class: specialize_fibre(fib, field, p).and_then(|c| classify_fibre_with(&c, bounds)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn f4() -> FieldSpec {
        FieldSpec::smallest(2).unwrap()
    }

    fn curve(text: &str, f: FieldSpec) -> PlaneCurveFq {
        PlaneCurveFq::new(parse_form(text, f).unwrap().map_coeffs(f, |c| c.as_constant().unwrap())).unwrap()
    }

    #[test]
    fn pencil_members() {
        let f = f2();
        let c = specialize_fibre(Fibration::QuarticPencil, f, &[f.one(), f.zero()]).unwrap();
        assert_eq!(c.form.to_string(), "y^4+x*z^3");
        let c = specialize_fibre(Fibration::QuarticPencil, f, &[f.zero(), f.one()]).unwrap();
        assert_eq!(c.form.to_string(), "x^3*z");
        let c = specialize_fibre(Fibration::Pi4, f, &[f.zero(); 3]).unwrap();
        assert_eq!(c.form.to_string(), "y^4+x*z^3");
        assert_eq!(specialize_fibre(Fibration::QuarticPencil, f, &[f.zero(); 2]), Err(FibreError::ZeroForm));
        assert!(matches!(specialize_fibre(Fibration::Pi4, f, &[f.zero(); 4]), Err(FibreError::Arity { .. })));
    }

    #[test]
    fn singular_loci() {
        let f = f4();
        let g = f.gen();
        let c = specialize_fibre(Fibration::QuarticPencil, f, &[f.one(), g]).unwrap();
        let locus = singular_locus(&c, 2).unwrap();
        assert_eq!(locus.len(), 1);
        assert_eq!(locus[0].coords, [f.one(), f.zero(), g * g]);
        assert_eq!(locus[0].to_string(), "(1:0:g+1)");
        let c = curve("y^4+x*z^3", f2());
        assert_eq!(singular_locus(&c, 3).unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["(1:0:0)"]);
        let conic = parse_form("y^2+x*z", f2()).unwrap().map_coeffs(f2(), |c| c.as_constant().unwrap());
        assert!(is_smooth_conic(&conic).unwrap());
        assert!(singular_points_over(&conic).is_empty());
    }

    #[test]
    fn multiplicities() {
        let c = curve("y^4+x*z^3", f2());
        let p = PointFq::rational([f2().one(), f2().zero(), f2().zero()]);
        assert_eq!(multiplicity_at(&c, &p).unwrap(), 3);
        let f = f4();
        let g = f.gen();
        let c = specialize_fibre(Fibration::QuarticPencil, f, &[f.one(), g]).unwrap();
        let p = PointFq::rational([f.one(), f.zero(), g.sqrt()]);
        assert_eq!(multiplicity_at(&c, &p).unwrap(), 2);
        let q = PointFq::rational([f.zero(), f.zero(), f.one()]);
        assert_eq!(multiplicity_at(&c, &q).unwrap(), 1);
        let off = PointFq::rational([f.one(), f.one(), f.zero()]);
        assert_eq!(multiplicity_at(&c, &off), Err(FibreError::PointNotOnCurve));
    }

    #[test]
    fn deltas() {
        let f = f2();
        let origin = PointFq::rational([f.one(), f.zero(), f.zero()]);
        let d = delta_invariant(&curve("y^4+x*z^3", f), &origin).unwrap();
        assert_eq!((d.delta, d.branches, d.mult_sequence.clone()), (3, 1, vec![3, 1]));
        let d = delta_invariant(&curve("x*y^2+z^3", f), &origin).unwrap();
        assert_eq!((d.delta, d.branches), (1, 1));
        // A node has two branches.
        let d = delta_invariant(&curve("x*y*z+y^3+z^3", f), &origin).unwrap();
        assert_eq!((d.delta, d.branches), (1, 2));
        let smooth = PointFq::rational([f.zero(), f.zero(), f.one()]);
        assert_eq!(delta_invariant(&curve("y^4+x*z^3", f), &smooth), Err(FibreError::NotSingular));
    }

    #[test]
    fn tangent_types() {
        let f = f2();
        let c = specialize_fibre(Fibration::Pi4, f, &[f.zero(), f.one(), f.zero()]).unwrap();
        let pts = smooth_points(&c, &f.extension(2).unwrap(), 6);
        assert!(!pts.is_empty());
        for p in &pts {
            assert_eq!(tangent_contact_type(&c, p).unwrap(), TangentType::Hyperflex4);
        }
        let cubic = curve("x*y^2+z^3", f);
        let p = PointFq::rational([f.zero(), f.one(), f.zero()]);
        assert_eq!(tangent_contact_type(&cubic, &p), Err(FibreError::NotQuartic(3)));
    }

    #[test]
    fn degenerate_shapes() {
        let f = f2();
        let one = f.one();
        let c = specialize_fibre(Fibration::Pi3, f, &[one, f.zero(), one, one]).unwrap();
        match classify_fibre(&c).unwrap() {
            FibreClass::ConicPlusDoubleLine { line, conic } => {
                assert_eq!(line.to_string(), "x+z");
                assert_eq!(conic.to_string(), "x^2+y^2+x*z+z^2");
            }
            other => panic!("{other:?}"),
        }
        let c = specialize_fibre(Fibration::Pi5, f, &[one, one, one, f.zero()]).unwrap();
        assert_eq!(classify_fibre(&c).unwrap().variant(), "DoubleConic");
        let c = specialize_fibre(Fibration::QuarticPencil, f, &[f.zero(), one]).unwrap();
        match classify_fibre(&c).unwrap() {
            FibreClass::LinePlusTripleLine { line, triple_line } => {
                assert_eq!(line.to_string(), "z");
                assert_eq!(triple_line.to_string(), "x");
            }
            other => panic!("{other:?}"),
        }
        let c = specialize_fibre(Fibration::Pi4, f, &[one, f.zero(), one]).unwrap();
        match classify_fibre(&c).unwrap() {
            FibreClass::IntegralQuartic { multiplicity, delta, tangent_type, .. } => {
                assert_eq!((multiplicity, delta), (3, 3));
                assert_eq!(tangent_type, Some(TangentType::Hyperflex4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reducible_quartics_are_not_integral() {
        let f = f2();
        // Two conics, and a line with a cubic.
        for text in ["(y^2+x*z)*(x^2+y*z)", "(x+y+z)*(x*y^2+z^3+x^2*z)", "(x^2+y^2+x*z)*(x^2+z^2+y*z)"] {
            let c = curve(text, f);
            let class = classify_fibre(&c).unwrap();
            assert!(!matches!(class, FibreClass::IntegralQuartic { .. }), "{text}: {class:?}");
        }
    }

    #[test]
    fn grids() {
        assert_eq!(parameter_grid(Fibration::Pi4, f2()).len(), 8);
        assert_eq!(parameter_grid(Fibration::QuarticPencil, f4()).len(), 5);
        let g = parameter_grid(Fibration::Pi3, f2());
        assert_eq!(g[1], vec![f2().zero(), f2().zero(), f2().zero(), f2().one()]);
    }
}
