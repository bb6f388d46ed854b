//! The five normal forms of quasi-elliptic plane quartics over K, their
//! singular points, residue-field data and invariants.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    eval_form_insep, parse_modulus, parse_scalar, subalgebra_dimension, AlgebraError, Coeff, FieldSpec, InsepElem,
    MPoly, Mono, ScalarK, TriForm, XYZ,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    I,
    II,
    III,
    IV,
    V,
}

impl Tag {
    pub const ALL: [Tag; 5] = [Tag::I, Tag::II, Tag::III, Tag::IV, Tag::V];

    /// Number of parameters the normal form uses.
    pub fn arity(self) -> usize {
        match self {
            Tag::I | Tag::IV => 3,
            Tag::II | Tag::III | Tag::V => 4,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::I => "I",
            Tag::II => "II",
            Tag::III => "III",
            Tag::IV => "IV",
            Tag::V => "V",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Tag {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Tag::I),
            "II" | "2" => Ok(Tag::II),
            "III" | "3" => Ok(Tag::III),
            "IV" | "4" => Ok(Tag::IV),
            "V" | "5" => Ok(Tag::V),
            other => Err(FamilyError::BadInput(format!("unknown family tag '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("no singular point found: {0}")]
    NoSingularPoint(String),
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error("operation not supported for family {0}")]
    UnsupportedFamily(Tag),
    #[error("no row of the classification table matches")]
    NoSuchRow,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parameters `a, b, c, d` of a normal form; unused slots hold 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub tag: Tag,
    pub a: ScalarK,
    pub b: ScalarK,
    pub c: ScalarK,
    pub d: ScalarK,
}

impl FamilyParams {
    pub fn new(tag: Tag, a: ScalarK, b: ScalarK, c: ScalarK, d: ScalarK) -> Self {
        FamilyParams { tag, a, b, c, d }
    }

    /// Parses each parameter from text; missing trailing ones default to 0.
    pub fn parse(tag: Tag, field: FieldSpec, values: &[&str]) -> Result<Self, FamilyError> {
        if values.len() > 4 {
            return Err(FamilyError::BadInput("at most four parameters".into()));
        }
        let mut v: Vec<ScalarK> = Vec::new();
        for s in values {
            v.push(parse_scalar(s, field)?);
        }
        while v.len() < 4 {
            v.push(ScalarK::zero(field));
        }
        let [a, b, c, d]: [ScalarK; 4] = v.try_into().expect("four");
        Ok(FamilyParams { tag, a, b, c, d })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn as_array(&self) -> [ScalarK; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    /// Checks the membership constraints that define the family.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let ns = |x: &ScalarK, n: &str| {
            if x.is_square() {
                Err(FamilyError::ConstraintViolation(format!("{n} = {x} must not be a square")))
            } else {
                Ok(())
            }
        };
        let nz = |x: &ScalarK, n: &str| {
            if x.is_zero() {
                Err(FamilyError::ConstraintViolation(format!("{n} must be nonzero")))
            } else {
                Ok(())
            }
        };
        match self.tag {
            Tag::I => ns(&self.c, "c"),
            Tag::II => ns(&self.a, "a").and(nz(&self.b, "b")),
            Tag::III => ns(&self.a, "a").and(nz(&self.b, "b")).and(nz(&self.c, "c")),
            Tag::IV => ns(&self.b, "b"),
            Tag::V => ns(&self.a, "a").and(ns(&self.b, "b")).and(nz(&self.d, "d")),
        }
    }
}

/// A validated normal form together with its quartic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticModel {
    pub params: FamilyParams,
    pub form: TriForm,
}

/// The quartic of family `tag` with coefficients in any characteristic-2 field.
pub fn family_form<C: Coeff>(tag: Tag, p: &[C; 4], field: FieldSpec) -> MPoly<C> {
    let [a, b, c, d] = p;
    let one = C::one(field);
    let terms: Vec<([u16; 3], C)> = match tag {
        Tag::I => vec![
            ([0, 4, 0], one.clone()),
            ([0, 0, 4], a.clone()),
            ([1, 0, 3], one),
            ([2, 0, 2], b.clone()),
            ([4, 0, 0], c.clone()),
        ],
        Tag::II => vec![
            ([0, 4, 0], one),
            ([0, 0, 4], a.clone()),
            ([2, 2, 0], b.clone()),
            ([2, 0, 2], c.clone()),
            ([3, 0, 1], b.clone()),
            ([4, 0, 0], d.clone()),
        ],
        Tag::III => {
            let b2c3 = b.mul(b).mul(c).mul(c).mul(c);
            vec![
                ([0, 4, 0], b.clone()),
                ([0, 0, 4], d.clone()),
                ([0, 2, 2], one.clone()),
                ([1, 0, 3], one),
                ([2, 0, 2], b.add(&b2c3)),
                ([2, 2, 0], a.clone()),
                ([3, 0, 1], a.clone()),
                ([4, 0, 0], a.mul(&b2c3).add(&a.mul(a).mul(d))),
            ]
        }
        Tag::IV => vec![
            ([0, 4, 0], one.clone()),
            ([0, 0, 4], a.clone()),
            ([1, 0, 3], one),
            ([3, 0, 1], b.clone()),
            ([4, 0, 0], c.clone()),
        ],
        Tag::V => {
            let bd = b.mul(d);
            vec![
                ([0, 4, 0], one.clone()),
                ([0, 2, 2], d.clone()),
                ([0, 0, 4], c.add(a)),
                ([1, 0, 3], d.clone()),
                ([2, 2, 0], bd.clone()),
                ([2, 0, 2], one),
                ([3, 0, 1], bd),
                ([4, 0, 0], b.mul(b).mul(c)),
            ]
        }
    };
    MPoly::from_terms(field, XYZ, &terms)
}

pub fn build_family(params: &FamilyParams) -> Result<QuarticModel, FamilyError> {
    params.validate()?;
    let form = family_form(params.tag, &params.as_array(), params.field());
    Ok(QuarticModel { params: params.clone(), form })
}

/// A point of P^2 over K^{1/4}.
pub type InsepPoint = [InsepElem; 3];

fn check_singular(model: &QuarticModel, pt: &InsepPoint) -> Result<(), FamilyError> {
    for (what, f) in [("F", model.form.clone()), ("F_x", model.form.derivative(0)), ("F_y", model.form.derivative(1)), ("F_z", model.form.derivative(2))] {
        if !eval_form_insep(&f, pt).is_zero() {
            return Err(FamilyError::InternalCheckFailed(format!("{what} does not vanish at the computed point")));
        }
    }
    Ok(())
}

/// The unique non-smooth point, with coordinates in K^{1/4}.
pub fn singular_point(model: &QuarticModel) -> Result<InsepPoint, FamilyError> {
    let p = &model.params;
    let f = p.field();
    let one = InsepElem::one(f);
    let zero = InsepElem::zero(f);
    let pt = match p.tag {
        // F_x = z^3 forces z = 0, then y^4 = c x^4.
        Tag::I => [one, InsepElem::root4(&p.c), zero],
        // F_z = b x^3 forces x = 0, then y^4 = a z^4.
        Tag::II => [zero, InsepElem::root4(&p.a), one],
        Tag::III => [one, InsepElem::root4(&p.a), InsepElem::root2(&p.a)],
        Tag::IV => {
            let ab2c = p.a.mul(&p.b.square()).add(&p.c);
            [one, InsepElem::root4(&ab2c), InsepElem::root2(&p.b)]
        }
        Tag::V => {
            let ab2b = p.a.mul(&p.b.square()).add(&p.b);
            [one, InsepElem::root4(&ab2b), InsepElem::root2(&p.b)]
        }
    };
    check_singular(model, &pt)?;
    Ok(pt)
}

/// Residue-field degrees of the point and its successors, and the two
/// ramification indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueProfile {
    pub deg_p: usize,
    pub deg_p1: usize,
    pub deg_p2: usize,
    pub deg_p3: Option<usize>,
    pub e: usize,
    pub e1: usize,
}

pub fn residue_profile(model: &QuarticModel) -> Result<ResidueProfile, FamilyError> {
    let p = &model.params;
    let f = p.field();
    let dim = |g: Vec<InsepElem>| subalgebra_dimension(&g, f);
    let r2 = InsepElem::root2;
    let r4 = InsepElem::root4;
    match p.tag {
        Tag::III => Ok(ResidueProfile {
            deg_p: dim(vec![r4(&p.a)]),
            deg_p1: dim(vec![r2(&p.a)]),
            deg_p2: 1,
            deg_p3: None,
            e: 1,
            e1: 1,
        }),
        Tag::IV | Tag::V => {
            let (gp, gp1, gp2) = if p.tag == Tag::IV {
                let w = p.a.mul(&p.b.square()).add(&p.c);
                (vec![r2(&p.b), r4(&w)], vec![r2(&p.b), r2(&w)], vec![r2(&p.b)])
            } else {
                let w = p.a.mul(&p.b.square()).add(&p.b);
                (vec![r2(&p.a), r2(&p.b), r4(&w)], vec![r2(&p.a), r2(&p.b)], vec![r2(&p.a)])
            };
            let deg_p = dim(gp);
            let deg_p1 = dim(gp1);
            let e1 = 4 / deg_p1;
            Ok(ResidueProfile { deg_p, deg_p1, deg_p2: dim(gp2), deg_p3: Some(1), e: 8 / (deg_p * e1), e1 })
        }
        t => Err(FamilyError::UnsupportedFamily(t)),
    }
}

/// The K-invariant of the family; `None` for the families without one.
pub fn invariant(p: &FamilyParams) -> Option<ScalarK> {
    let f = p.field();
    match p.tag {
        Tag::II => Some(p.a.mul(&p.b.square()).add(&p.c.square()).add(&ScalarK::one(f))),
        Tag::III => Some(p.b.mul(&p.c.pow(3))),
        Tag::V => Some(p.a.mul(&p.b.square()).mul(&p.d.square())),
        Tag::I | Tag::IV => None,
    }
}

/// Inputs of the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableQuery {
    /// Whether the second successor of the singular point is rational.
    pub p2_rational: bool,
    /// Whether the singular point is canonical.
    pub p_canonical: bool,
    /// Whether the field of the pseudo-canonical curve equals the function field of the Frobenius twist.
    pub e_equals_f2: bool,
}

pub fn classify_by_table(q: TableQuery) -> Result<Tag, FamilyError> {
    match (q.p_canonical, q.p2_rational, q.e_equals_f2) {
        (true, true, true) => Ok(Tag::I),
        (true, false, false) => Ok(Tag::II),
        (false, true, false) => Ok(Tag::III),
        (false, false, true) => Ok(Tag::IV),
        (false, false, false) => Ok(Tag::V),
        _ => Err(FamilyError::NoSuchRow),
    }
}

/// A plane curve in characteristic 2 is strange exactly when its `y`-partial vanishes.
pub fn is_strange<C: Coeff>(form: &MPoly<C>) -> Result<bool, FamilyError> {
    if !form.is_homogeneous() {
        return Err(FamilyError::NotHomogeneous);
    }
    Ok(form.derivative(1).is_zero())
}

/// The affine quartic in `(y, z)` obtained by setting `x = 1`.
pub fn affine_quartic<C: Coeff>(form: &MPoly<C>) -> MPoly<C> {
    form.substitute_const(0, &C::one(form.field()))
}

/// Coefficient of `x^i y^j z^k` in a model.
pub fn model_coeff(m: &QuarticModel, e: [u16; 3]) -> ScalarK {
    m.form.coeff(&Mono([e[0], e[1], e[2], 0]))
}

/// Serialized field description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

impl FieldJson {
    pub fn from_field(f: FieldSpec) -> Self {
        let default = FieldSpec::smallest(f.m()).ok();
        FieldJson { m: f.m(), modulus: if Some(f) == default { None } else { Some(f.modulus_string()) } }
    }

    pub fn to_field(&self) -> Result<FieldSpec, AlgebraError> {
        match &self.modulus {
            None => FieldSpec::smallest(self.m),
            Some(s) => FieldSpec::new(self.m, parse_modulus(s)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParamsJson {
    pub tag: Tag,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub field: FieldJson,
}

impl From<&FamilyParams> for FamilyParamsJson {
    fn from(p: &FamilyParams) -> Self {
        FamilyParamsJson {
            tag: p.tag,
            a: p.a.to_string(),
            b: p.b.to_string(),
            c: p.c.to_string(),
            d: p.d.to_string(),
            field: FieldJson::from_field(p.field()),
        }
    }
}

impl TryFrom<&FamilyParamsJson> for FamilyParams {
    type Error = FamilyError;
    fn try_from(j: &FamilyParamsJson) -> Result<Self, FamilyError> {
        let f = j.field.to_field()?;
        FamilyParams::parse(j.tag, f, &[&j.a, &j.b, &j.c, &j.d])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_form;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn params(tag: Tag, v: &[&str]) -> FamilyParams {
        FamilyParams::parse(tag, f2(), v).unwrap()
    }

    #[test]
    fn build_examples() {
        let m = build_family(&params(Tag::III, &["t", "1", "1", "0"])).unwrap();
        assert_eq!(m.form, parse_form("y^4+y^2*z^2+x*z^3+t*x^2*y^2+t*x^3*z+t*x^4", f2()).unwrap());
        let m = build_family(&params(Tag::IV, &["0", "t", "0"])).unwrap();
        assert_eq!(m.form, parse_form("y^4+x*z^3+t*x^3*z", f2()).unwrap());
        assert!(matches!(build_family(&params(Tag::I, &["0", "0", "t^2"])), Err(FamilyError::ConstraintViolation(_))));
    }

    #[test]
    fn singular_points() {
        let f = f2();
        let m = build_family(&params(Tag::II, &["t", "1", "0", "0"])).unwrap();
        let p = singular_point(&m).unwrap();
        assert!(p[0].is_zero());
        assert_eq!(p[1], InsepElem::s_pow(f, 1));
        assert_eq!(p[2], InsepElem::one(f));
        for (tag, v) in [
            (Tag::I, vec!["t+1", "t", "t"]),
            (Tag::III, vec!["t", "t^2+1", "1/t", "t"]),
            (Tag::IV, vec!["1", "t", "t^3"]),
            (Tag::V, vec!["t", "t^3", "1", "t+1"]),
        ] {
            let m = build_family(&params(tag, &v)).unwrap();
            assert!(singular_point(&m).is_ok(), "{tag}");
        }
    }

    #[test]
    fn residue_profiles() {
        let m = build_family(&params(Tag::IV, &["0", "t", "0"])).unwrap();
        let r = residue_profile(&m).unwrap();
        assert_eq!((r.deg_p, r.deg_p1, r.deg_p2, r.deg_p3, r.e1, r.e), (2, 2, 2, Some(1), 2, 2));
        let m = build_family(&params(Tag::III, &["t", "1", "1", "0"])).unwrap();
        let r = residue_profile(&m).unwrap();
        assert_eq!((r.deg_p, r.deg_p1, r.deg_p2, r.deg_p3), (4, 2, 1, None));
        let m = build_family(&params(Tag::I, &["0", "0", "t"])).unwrap();
        assert!(matches!(residue_profile(&m), Err(FamilyError::UnsupportedFamily(Tag::I))));
    }

    #[test]
    fn invariants() {
        assert!(invariant(&params(Tag::III, &["t", "1", "1", "0"])).unwrap().is_one());
        assert_eq!(invariant(&params(Tag::V, &["t", "t", "1", "1"])).unwrap().to_string(), "t^3");
        assert_eq!(invariant(&params(Tag::IV, &["0", "t", "0"])), None);
    }

    #[test]
    fn table() {
        let q = |r, c, e| TableQuery { p2_rational: r, p_canonical: c, e_equals_f2: e };
        assert_eq!(classify_by_table(q(true, true, true)), Ok(Tag::I));
        assert_eq!(classify_by_table(q(false, true, false)), Ok(Tag::II));
        assert_eq!(classify_by_table(q(true, false, false)), Ok(Tag::III));
        assert_eq!(classify_by_table(q(false, false, true)), Ok(Tag::IV));
        assert_eq!(classify_by_table(q(false, false, false)), Ok(Tag::V));
        assert_eq!(classify_by_table(q(true, false, true)), Err(FamilyError::NoSuchRow));
    }

    #[test]
    fn strangeness() {
        let f = f2();
        assert!(!is_strange(&parse_form("x^4+y^3*z+y*z^3", f).unwrap()).unwrap());
        assert!(is_strange(&parse_form("y^4", f).unwrap()).unwrap());
        assert_eq!(is_strange(&parse_form("y^4+x", f).unwrap()), Err(FamilyError::NotHomogeneous));
    }

    #[test]
    fn json_round_trip() {
        let p = params(Tag::III, &["t", "1", "1", "0"]);
        let j = FamilyParamsJson::from(&p);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"tag":"III","a":"t","b":"1","c":"1","d":"0","field":{"m":1}}"#);
        let back: FamilyParamsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FamilyParams::try_from(&back).unwrap(), p);
    }
}
