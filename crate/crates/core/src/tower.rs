//! Presentations of the function field by its Frobenius tower, and the maps
//! from those presentations to the quartic normal forms.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{parse_scalar, AlgebraError, FieldSpec, MPoly, Mono, ScalarK};
use crate::families::{FamilyParams, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TowerKind {
    A,
    B,
    C,
    D,
}

impl TowerKind {
    /// Names of the constants, in order.
    pub fn constant_names(self) -> &'static [&'static str] {
        match self {
            TowerKind::A => &["c0", "c1", "A2", "B0", "B1"],
            TowerKind::B => &["a2", "b0", "b2"],
            TowerKind::C => &["a0", "a2", "b1", "c3", "c4"],
            TowerKind::D => &["a0", "a2", "c0", "c2"],
        }
    }

    /// Generator names in relation order.
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            TowerKind::A | TowerKind::D => &["x", "z", "y"],
            TowerKind::B | TowerKind::C => &["x", "w", "z", "y"],
        }
    }
}

impl std::str::FromStr for TowerKind {
    type Err = TowerError;
    fn from_str(s: &str) -> Result<Self, TowerError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TowerKind::A),
            "B" => Ok(TowerKind::B),
            "C" => Ok(TowerKind::C),
            "D" => Ok(TowerKind::D),
            o => Err(TowerError::BadInput(format!("unknown presentation kind '{o}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("presentation is hyperelliptic")]
    Hyperelliptic,
    #[error("elimination mismatch at {monomial}: expected {expected}, found {found}")]
    EliminationMismatch { monomial: String, expected: String, found: String },
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error("operation not supported for kind {0:?}")]
    UnsupportedKind(TowerKind),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A presentation: its kind and constants in the order of `TowerKind::constant_names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPresentation {
    pub kind: TowerKind,
    pub consts: Vec<ScalarK>,
}

type Rel = MPoly<ScalarK>;

/// A defining relation `lhs = rhs`, stored as `lhs + rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Rel,
    pub rhs: Rel,
}

impl Relation {
    pub fn poly(&self) -> Rel {
        self.lhs.add(&self.rhs)
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl TowerPresentation {
    pub fn new(kind: TowerKind, consts: Vec<ScalarK>) -> Result<Self, TowerError> {
        if consts.len() != kind.constant_names().len() {
            return Err(TowerError::BadInput(format!(
                "kind {kind:?} takes {} constants",
                kind.constant_names().len()
            )));
        }
        Ok(TowerPresentation { kind, consts })
    }

    pub fn parse(kind: TowerKind, field: FieldSpec, values: &[&str]) -> Result<Self, TowerError> {
        let consts = values.iter().map(|s| parse_scalar(s, field)).collect::<Result<Vec<_>, _>>()?;
        Self::new(kind, consts)
    }

    pub fn field(&self) -> FieldSpec {
        self.consts[0].field()
    }

    /// Constant by name.
    pub fn get(&self, name: &str) -> &ScalarK {
        let i = self.kind.constant_names().iter().position(|n| *n == name).expect("known constant");
        &self.consts[i]
    }

    fn set(&mut self, name: &str, v: ScalarK) {
        let i = self.kind.constant_names().iter().position(|n| *n == name).expect("known constant");
        self.consts[i] = v;
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(format!("{:?}", self.kind)));
        for (n, c) in self.kind.constant_names().iter().zip(&self.consts) {
            m.insert(n.to_string(), json!(c.to_string()));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, field: FieldSpec) -> Result<Self, TowerError> {
        let kind: TowerKind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| TowerError::BadInput("missing kind".into()))?
            .parse()?;
        let mut vals = Vec::new();
        for n in kind.constant_names() {
            let s = v.get(*n).and_then(|x| x.as_str()).ok_or_else(|| TowerError::BadInput(format!("missing {n}")))?;
            vals.push(s);
        }
        Self::parse(kind, field, &vals)
    }
}

fn k_one(f: FieldSpec) -> ScalarK {
    ScalarK::one(f)
}

fn inv(x: &ScalarK, what: &str) -> Result<ScalarK, TowerError> {
    x.inv().ok_or_else(|| TowerError::ConstraintViolation(format!("{what} must be nonzero")))
}

/// Polynomial `sum c_i x^i` in generator 0.
fn poly_in_x(f: FieldSpec, names: &'static [&'static str], cs: &[ScalarK]) -> Rel {
    let mut p = Rel::zero(f, names);
    for (i, c) in cs.iter().enumerate() {
        p.add_term(Mono::var(0, i as u16), c.clone());
    }
    p
}

fn var(f: FieldSpec, names: &'static [&'static str], i: usize) -> Rel {
    Rel::var(f, names, i)
}

fn cst(f: FieldSpec, names: &'static [&'static str], c: &ScalarK) -> Rel {
    Rel::constant(f, names, c.clone())
}

/// Checks the defining constraints and returns the relations.
pub fn validate_presentation(p: &TowerPresentation) -> Result<Vec<Relation>, TowerError> {
    let ns = |n: &str| {
        if p.get(n).is_square() {
            Err(TowerError::ConstraintViolation(format!("{n} = {} must not be a square", p.get(n))))
        } else {
            Ok(())
        }
    };
    match p.kind {
        TowerKind::A => {
            if p.get("c1").is_zero() {
                return Err(TowerError::ConstraintViolation("c1 must be nonzero".into()));
            }
            ns("A2")?;
        }
        TowerKind::B => ns("a2")?,
        TowerKind::C => {
            ns("a2")?;
            ns("b1")?;
        }
        TowerKind::D => {
            ns("a2")?;
            let q = p.get("c2").div(p.get("a2"))?;
            if !q.is_square() {
                return Err(TowerError::ConstraintViolation("c2 must lie in K^2 a2".into()));
            }
        }
    }
    Ok(relations(p))
}

fn relations(p: &TowerPresentation) -> Vec<Relation> {
    let f = p.field();
    let names = p.kind.generators();
    let sq = |i: usize| var(f, names, i).pow(2);
    let g = |n: &str| p.get(n).clone();
    match p.kind {
        TowerKind::A => {
            let (c0, c1, a2, b0, b1) = (g("c0"), g("c1"), g("A2"), g("B0"), g("B1"));
            let cx = poly_in_x(f, names, &[c0.clone(), c1.clone(), k_one(f)]);
            let ax = poly_in_x(f, names, &[c0.mul(&a2).add(&c1.inv().expect("c1 nonzero")), c1.mul(&a2), a2]);
            let bz = poly_in_x(f, names, &[b0, b1]).add(&var(f, names, 1));
            vec![Relation { lhs: sq(1), rhs: cx.mul(&ax) }, Relation { lhs: sq(2), rhs: cx.mul(&bz) }]
        }
        TowerKind::B => {
            let (a2, b0, b2) = (g("a2"), g("b0"), g("b2"));
            vec![
                Relation { lhs: sq(1), rhs: poly_in_x(f, names, &[ScalarK::zero(f), k_one(f), a2]) },
                Relation {
                    lhs: sq(2),
                    rhs: poly_in_x(f, names, &[b0, ScalarK::zero(f), b2]).add(&var(f, names, 1)),
                },
                Relation { lhs: sq(3), rhs: var(f, names, 0).mul(&var(f, names, 2)) },
            ]
        }
        TowerKind::C => {
            let (a0, a2, b1, c3, c4) = (g("a0"), g("a2"), g("b1"), g("c3"), g("c4"));
            let w = var(f, names, 1);
            vec![
                Relation { lhs: sq(1), rhs: poly_in_x(f, names, &[a0, k_one(f), a2]) },
                Relation { lhs: sq(2), rhs: sq(1).scale(&b1).add(&w) },
                Relation { lhs: sq(3), rhs: poly_in_x(f, names, &[c3, c4]).add(&var(f, names, 2)).mul(&w) },
            ]
        }
        TowerKind::D => {
            let (a0, a2, c0, c2) = (g("a0"), g("a2"), g("c0"), g("c2"));
            let z = var(f, names, 1);
            vec![
                Relation { lhs: z.pow(4), rhs: poly_in_x(f, names, &[a0, k_one(f), a2]) },
                Relation { lhs: sq(2), rhs: cst(f, names, &c0).add(&z).add(&z.pow(2).scale(&c2)) },
            ]
        }
    }
}

pub fn is_nonhyperelliptic(p: &TowerPresentation) -> bool {
    match p.kind {
        TowerKind::A => !p.get("B1").is_zero(),
        TowerKind::B => true,
        TowerKind::C => !p.get("c4").is_zero(),
        TowerKind::D => false,
    }
}

/// Shifts `x` so that `B0 = 0` (kind A) or `c3 = 0` (kind C); other kinds are returned unchanged.
pub fn normalize(p: &TowerPresentation) -> Result<TowerPresentation, TowerError> {
    let mut q = p.clone();
    match p.kind {
        TowerKind::A if !p.get("B0").is_zero() => {
            let delta = p.get("B0").div(p.get("B1")).map_err(|_| TowerError::Hyperelliptic)?;
            let c0 = p.get("c0").add(&p.get("c1").mul(&delta)).add(&delta.square());
            q.set("c0", c0);
            q.set("B0", ScalarK::zero(p.field()));
        }
        TowerKind::C if !p.get("c3").is_zero() => {
            let delta = p.get("c3").div(p.get("c4")).map_err(|_| TowerError::Hyperelliptic)?;
            let a0 = p.get("a0").add(&delta).add(&p.get("a2").mul(&delta.square()));
            q.set("a0", a0);
            q.set("c3", ScalarK::zero(p.field()));
        }
        _ => {}
    }
    Ok(q)
}

/// The model-parameter formulas without the hyperellipticity guard.
pub fn raw_model_params(p: &TowerPresentation) -> Result<FamilyParams, TowerError> {
    let f = p.field();
    let z = ScalarK::zero(f);
    match p.kind {
        TowerKind::A => {
            let q = normalize(p)?;
            let (c0, c1, a2, b1) = (q.get("c0"), q.get("c1"), q.get("A2"), q.get("B1"));
            let b = inv(&c1.square().mul(b1), "c1^2 B1")?;
            Ok(FamilyParams::new(Tag::III, a2.clone(), b, c1.mul(b1), b1.mul(c0)))
        }
        TowerKind::B => {
            let (a2, b0, b2) = (p.get("a2"), p.get("b0"), p.get("b2"));
            Ok(FamilyParams::new(Tag::IV, b0.clone(), a2.clone(), b2.add(&b0.mul(&a2.square())), z))
        }
        TowerKind::C => {
            let q = normalize(p)?;
            let (a0, a2, b1, c4) = (q.get("a0"), q.get("a2"), q.get("b1"), q.get("c4"));
            let a2i = inv(a2, "a2")?;
            let b1i2 = inv(b1, "b1")?.square();
            let c42 = c4.square();
            Ok(FamilyParams::new(
                Tag::V,
                a2i.mul(&b1i2).mul(&c42),
                b1.clone(),
                a2i.mul(&c42).mul(&a0.add(&b1i2)),
                c4.mul(&a2i),
            ))
        }
        TowerKind::D => Err(TowerError::UnsupportedKind(TowerKind::D)),
    }
}

/// Parameters of the quartic normal form with the same function field.
pub fn to_quartic_model(p: &TowerPresentation) -> Result<FamilyParams, TowerError> {
    validate_presentation(p)?;
    if p.kind == TowerKind::D || !is_nonhyperelliptic(p) {
        return Err(TowerError::Hyperelliptic);
    }
    raw_model_params(p)
}

/// Inverse of the kind-A map on family III.
pub fn invert_model_map(params: &FamilyParams) -> Result<TowerPresentation, TowerError> {
    if params.tag != Tag::III {
        return Err(TowerError::BadInput("expected a family III model".into()));
    }
    let f = params.field();
    let (a, b, c, d) = (&params.a, &params.b, &params.c, &params.d);
    let bc2 = b.mul(&c.square());
    let c1 = inv(&b.mul(c), "b c")?;
    let c0 = d.div(&bc2).map_err(|_| TowerError::ConstraintViolation("b c^2 must be nonzero".into()))?;
    let p = TowerPresentation::new(TowerKind::A, vec![c0, c1, a.clone(), ScalarK::zero(f), bc2])?;
    validate_presentation(&p)?;
    Ok(p)
}

/// Variables of the eliminated relation.
pub const BREVE_ZY: &[&str] = &["z", "y"];
pub const BREVE_WY: &[&str] = &["w", "y"];

/// The quartic relation between the two breve generators, as printed for each kind.
pub fn printed_breve_relation(p: &TowerPresentation) -> Result<Rel, TowerError> {
    if !is_nonhyperelliptic(p) {
        return Err(TowerError::Hyperelliptic);
    }
    let q = normalize(p)?;
    let f = p.field();
    let g = |n: &str| q.get(n).clone();
    let mut r;
    let put = |r: &mut Rel, i: u16, j: u16, c: ScalarK| r.add_term(Mono([i, j, 0, 0]), c);
    match p.kind {
        TowerKind::A => {
            let (c0, c1, a2, b1) = (g("c0"), g("c1"), g("A2"), g("B1"));
            let c1i = inv(&c1, "c1")?;
            let b1i = inv(&b1, "B1")?;
            let k = b1i.square().mul(&c1i.square());
            r = Rel::zero(f, BREVE_ZY);
            put(&mut r, 0, 4, k.clone());
            put(&mut r, 4, 0, c0.clone());
            put(&mut r, 2, 2, b1i.clone());
            put(&mut r, 3, 0, b1i.clone());
            put(&mut r, 2, 0, c1i.add(&k));
            put(&mut r, 0, 2, b1i.mul(&a2));
            put(&mut r, 1, 0, b1i.mul(&a2));
            put(&mut r, 0, 0, c1i.mul(&a2).add(&c0.mul(&a2.square())));
        }
        TowerKind::B => {
            let (a2, b0, b2) = (g("a2"), g("b0"), g("b2"));
            r = Rel::zero(f, BREVE_WY);
            put(&mut r, 0, 4, k_one(f));
            put(&mut r, 0, 0, b2.add(&b0.mul(&a2.square())));
            put(&mut r, 1, 0, a2);
            put(&mut r, 3, 0, k_one(f));
            put(&mut r, 4, 0, b0);
        }
        TowerKind::C => {
            let (a0, a2, b1, c4) = (g("a0"), g("a2"), g("b1"), g("c4"));
            let c42 = c4.square();
            r = Rel::zero(f, BREVE_ZY);
            put(&mut r, 0, 4, a2.clone());
            put(&mut r, 2, 2, c4.clone());
            put(&mut r, 4, 0, c42.mul(&a0));
            put(&mut r, 3, 0, c4.clone());
            put(&mut r, 0, 2, c4.mul(&b1));
            put(&mut r, 2, 0, a2);
            put(&mut r, 1, 0, c4.mul(&b1));
            put(&mut r, 0, 0, c42.mul(&b1.square().mul(&a0).add(&k_one(f))));
        }
        TowerKind::D => return Err(TowerError::UnsupportedKind(TowerKind::D)),
    }
    Ok(r)
}

/// Fraction of two polynomials in the breve variables, never reduced.
#[derive(Clone)]
struct Frac {
    num: Rel,
    den: Rel,
}

impl Frac {
    fn poly(p: Rel) -> Frac {
        let one = Rel::one(p.field(), p.names());
        Frac { num: p, den: one }
    }
    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            Frac { num: self.num.add(&o.num), den: self.den.clone() }
        } else {
            Frac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
        }
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }
}

/// Substitutes rational functions for the generators and returns the numerator
/// with every factor of `base` removed.
fn substitute(rel: &Rel, images: &[Frac], base: &Rel) -> Rel {
    let f = rel.field();
    let names = base.names();
    let zero = Frac::poly(Rel::zero(f, names));
    let v = rel.eval_with(images, |c| Frac::poly(Rel::constant(f, names, c.clone())), Frac::add, Frac::mul, zero);
    let mut n = v.num;
    if n.is_zero() {
        return n;
    }
    while let Ok(Some(q)) = n.divide(base) {
        n = q;
    }
    n
}

/// Runs the elimination for `p` and compares the outcome with `printed`.
pub fn check_breve_relation_against(p: &TowerPresentation, printed: &Rel) -> Result<(), TowerError> {
    if !is_nonhyperelliptic(p) {
        return Err(TowerError::Hyperelliptic);
    }
    let q = normalize(p)?;
    let f = p.field();
    let g = |n: &str| q.get(n).clone();
    let (names, eliminated, others, base): (_, Rel, Vec<Rel>, Rel) = match p.kind {
        TowerKind::A => {
            let names = BREVE_ZY;
            let (c0, c1, a2, b1) = (g("c0"), g("c1"), g("A2"), g("B1"));
            let z = Rel::var(f, names, 0);
            let y = Rel::var(f, names, 1);
            let e = cst(f, names, &a2).add(&z.pow(2));
            // (A2 + z^2)(x^2 + c1 x + c0) + 1/c1 in the variables (x, z, y).
            let rn: &'static [&'static str] = &["x", "z", "y"];
            let ez = Rel::constant(f, rn, a2).add(&Rel::var(f, rn, 1).pow(2));
            let cx = poly_in_x(f, rn, &[c0, c1.clone(), k_one(f)]);
            let rel = ez.mul(&cx).add(&Rel::constant(f, rn, inv(&c1, "c1")?));
            let x = Frac { num: y.pow(2).add(&z), den: e.scale(&c1.mul(&b1)) };
            let imgs = [x, Frac::poly(z), Frac::poly(y)];
            (names, substitute(&rel, &imgs, &e), vec![], e)
        }
        TowerKind::B => {
            let names = BREVE_WY;
            let a2 = g("a2");
            let w = Rel::var(f, names, 0);
            let y = Rel::var(f, names, 1);
            let e = cst(f, names, &a2).add(&w.pow(2));
            let imgs = [
                Frac { num: Rel::one(f, names), den: e.clone() },
                Frac { num: w, den: e.clone() },
                Frac { num: y.pow(2), den: e.clone() },
                Frac { num: y, den: e.clone() },
            ];
            let rels = relations(&q);
            let main = substitute(&rels[1].poly(), &imgs, &e);
            let others = [0, 2].iter().map(|&i| substitute(&rels[i].poly(), &imgs, &e)).collect();
            (names, main, others, e)
        }
        TowerKind::C => {
            let names = BREVE_ZY;
            let (b1, c4) = (g("b1"), g("c4"));
            let z = Rel::var(f, names, 0);
            let y = Rel::var(f, names, 1);
            let e = cst(f, names, &b1).add(&z.pow(2));
            let imgs = [
                Frac { num: y.pow(2).add(&z), den: e.scale(&c4) },
                Frac { num: Rel::one(f, names), den: e.clone() },
                Frac { num: z, den: e.clone() },
                Frac { num: y, den: e.clone() },
            ];
            let rels = relations(&q);
            let main = substitute(&rels[0].poly(), &imgs, &e);
            let others = [1, 2].iter().map(|&i| substitute(&rels[i].poly(), &imgs, &e)).collect();
            (names, main, others, e)
        }
        TowerKind::D => return Err(TowerError::UnsupportedKind(TowerKind::D)),
    };
    let _ = (names, base);
    for o in &others {
        if let Some((m, c)) = o.leading() {
            return Err(TowerError::EliminationMismatch {
                monomial: MPoly::monomial(f, o.names(), *m, k_one(f)).to_string(),
                expected: "0".into(),
                found: c.to_string(),
            });
        }
    }
    if eliminated.scalar_ratio(printed).is_some() {
        return Ok(());
    }
    // Report the first coefficient that disagrees after matching leading terms.
    let scaled = match (eliminated.leading(), printed.coeff(eliminated.leading().map(|t| t.0).unwrap_or(&Mono::default()))) {
        (Some((_, c)), pc) if !pc.is_zero() => printed.scale(&c.mul(&pc.inv().expect("nonzero"))),
        _ => printed.clone(),
    };
    let diff = eliminated.add(&scaled);
    let (m, _) = diff.leading().expect("they differ");
    Err(TowerError::EliminationMismatch {
        monomial: MPoly::monomial(f, diff.names(), *m, k_one(f)).to_string(),
        expected: scaled.coeff(m).to_string(),
        found: eliminated.coeff(m).to_string(),
    })
}

pub fn check_breve_relation(p: &TowerPresentation) -> Result<(), TowerError> {
    let printed = printed_breve_relation(p)?;
    check_breve_relation_against(p, &printed)
}

/// True when eliminating `x` reproduces the printed quartic relation.
pub fn verify_breve_relation(p: &TowerPresentation) -> bool {
    check_breve_relation(p).is_ok()
}

/// An automorphism `x -> x + shift` fixing the other generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XShift {
    pub shift: ScalarK,
}

/// The invariant and, when it vanishes, the order-two automorphism.
pub fn tower_invariant_and_aut(p: &TowerPresentation) -> Result<(Option<ScalarK>, Option<XShift>), TowerError> {
    let (iota, shift) = match p.kind {
        TowerKind::A => {
            let c1 = p.get("c1");
            (c1.mul(&p.get("B1").square()), c1.clone())
        }
        TowerKind::C => {
            let a2 = p.get("a2");
            (p.get("c4").pow(4).div(&a2.pow(3))?, inv(a2, "a2")?)
        }
        TowerKind::B => return Ok((None, None)),
        TowerKind::D => return Err(TowerError::UnsupportedKind(TowerKind::D)),
    };
    if !iota.is_zero() {
        return Ok((Some(iota), None));
    }
    let aut = XShift { shift };
    if !preserves_relations(p, &aut) {
        return Err(TowerError::InternalCheckFailed("automorphism does not preserve the relations".into()));
    }
    Ok((Some(iota), Some(aut)))
}

/// Whether substituting `x + shift` for `x` leaves every relation unchanged.
pub fn preserves_relations(p: &TowerPresentation, aut: &XShift) -> bool {
    let f = p.field();
    let names = p.kind.generators();
    let mut imgs: Vec<Rel> = (0..names.len()).map(|i| Rel::var(f, names, i)).collect();
    imgs[0] = imgs[0].add(&Rel::constant(f, names, aut.shift.clone()));
    relations(p).iter().all(|r| r.poly().compose(&imgs) == r.poly())
}

/// Whether the pseudo-canonical field equals the second Frobenius pullback.
#[allow(non_snake_case)]
pub fn pseudocanonical_E_equals_F2(p: &TowerPresentation) -> Result<bool, TowerError> {
    match p.kind {
        TowerKind::D => Err(TowerError::UnsupportedKind(TowerKind::D)),
        k => Ok(k == TowerKind::B),
    }
}

/// Membership of `x` in the K^2-span of `{1, a}`.
pub fn in_square_span(x: &ScalarK, a: &ScalarK) -> bool {
    let (_, v) = x.square_parts();
    let (_, q) = a.square_parts();
    // With a outside K^2 the span is all of K, since [K : K^2] = 2.
    v.is_zero() || !q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn pres(kind: TowerKind, v: &[&str]) -> TowerPresentation {
        TowerPresentation::parse(kind, f2(), v).unwrap()
    }

    fn fam(tag: Tag, v: &[&str]) -> FamilyParams {
        FamilyParams::parse(tag, f2(), v).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(validate_presentation(&pres(TowerKind::A, &["0", "1", "t", "0", "1"])).unwrap().len(), 2);
        assert!(validate_presentation(&pres(TowerKind::A, &["0", "1", "t^2", "0", "1"])).is_err());
        assert!(validate_presentation(&pres(TowerKind::C, &["0", "t", "1", "0", "t"])).is_err());
        assert_eq!(validate_presentation(&pres(TowerKind::B, &["t", "0", "1"])).unwrap().len(), 3);
        assert_eq!(validate_presentation(&pres(TowerKind::D, &["0", "t", "1", "t^3"])).unwrap().len(), 2);
        assert!(validate_presentation(&pres(TowerKind::D, &["0", "t", "1", "t^2"])).is_err());
    }

    #[test]
    fn hyperellipticity() {
        assert!(!is_nonhyperelliptic(&pres(TowerKind::A, &["0", "1", "t", "0", "0"])));
        assert!(is_nonhyperelliptic(&pres(TowerKind::B, &["t", "0", "1"])));
        assert!(!is_nonhyperelliptic(&pres(TowerKind::D, &["0", "t", "1", "t^3"])));
    }

    #[test]
    fn model_maps() {
        assert_eq!(to_quartic_model(&pres(TowerKind::A, &["0", "1", "t", "0", "1"])).unwrap(), fam(Tag::III, &["t", "1", "1", "0"]));
        assert_eq!(to_quartic_model(&pres(TowerKind::B, &["t", "0", "1"])).unwrap(), fam(Tag::IV, &["0", "t", "1"]));
        assert_eq!(
            to_quartic_model(&pres(TowerKind::C, &["0", "t", "t", "0", "t"])).unwrap(),
            fam(Tag::V, &["1/t", "t", "1/t", "1"])
        );
        assert_eq!(to_quartic_model(&pres(TowerKind::A, &["0", "1", "t", "0", "0"])), Err(TowerError::Hyperelliptic));
        assert_eq!(invert_model_map(&fam(Tag::III, &["t", "1", "1", "0"])).unwrap(), pres(TowerKind::A, &["0", "1", "t", "0", "1"]));
    }

    #[test]
    fn breve_relations() {
        assert!(verify_breve_relation(&pres(TowerKind::A, &["0", "1", "t", "0", "1"])));
        assert!(verify_breve_relation(&pres(TowerKind::A, &["t", "t+1", "t^3", "1/t", "t^2+t"])));
        assert!(verify_breve_relation(&pres(TowerKind::B, &["t", "0", "1"])));
        assert!(verify_breve_relation(&pres(TowerKind::C, &["1", "t", "t^3+1", "t", "1/t"])));
        let p = pres(TowerKind::A, &["0", "1", "t", "0", "1"]);
        let mut bad = printed_breve_relation(&p).unwrap();
        bad.add_term(Mono([1, 1, 0, 0]), ScalarK::one(f2()));
        assert!(matches!(check_breve_relation_against(&p, &bad), Err(TowerError::EliminationMismatch { .. })));
    }

    #[test]
    fn invariants_and_automorphisms() {
        let (i, a) = tower_invariant_and_aut(&pres(TowerKind::A, &["0", "1", "t", "0", "1"])).unwrap();
        assert!(i.unwrap().is_one() && a.is_none());
        let (i, a) = tower_invariant_and_aut(&pres(TowerKind::A, &["0", "1", "t", "0", "0"])).unwrap();
        assert!(i.unwrap().is_zero());
        assert!(a.unwrap().shift.is_one());
        let (_, a) = tower_invariant_and_aut(&pres(TowerKind::C, &["0", "t", "t", "0", "0"])).unwrap();
        assert_eq!(a.unwrap().shift.to_string(), "1/t");
        assert_eq!(tower_invariant_and_aut(&pres(TowerKind::B, &["t", "0", "1"])).unwrap(), (None, None));
        // The shift is not an automorphism once B1 is nonzero.
        let p = pres(TowerKind::A, &["0", "1", "t", "0", "1"]);
        assert!(!preserves_relations(&p, &XShift { shift: ScalarK::one(f2()) }));
    }

    #[test]
    fn pseudocanonical() {
        assert_eq!(pseudocanonical_E_equals_F2(&pres(TowerKind::B, &["t", "0", "1"])), Ok(true));
        assert_eq!(pseudocanonical_E_equals_F2(&pres(TowerKind::A, &["0", "1", "t", "0", "1"])), Ok(false));
        assert!(pseudocanonical_E_equals_F2(&pres(TowerKind::D, &["0", "t", "1", "t^3"])).is_err());
    }

    #[test]
    fn square_span() {
        let f = f2();
        let t = ScalarK::t(f);
        assert!(in_square_span(&t, &t));
        assert!(!in_square_span(&t, &t.square()));
        assert!(in_square_span(&t.square(), &ScalarK::one(f)));
    }

    #[test]
    fn json() {
        let p = pres(TowerKind::A, &["0", "1", "t", "0", "1"]);
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"{"kind":"A","c0":"0","c1":"1","A2":"t","B0":"0","B1":"1"}"#);
        assert_eq!(TowerPresentation::from_json(&v, f2()).unwrap(), p);
    }
}
