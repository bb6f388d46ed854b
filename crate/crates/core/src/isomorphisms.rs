//! Explicit K-isomorphisms between models of one family: the parameter
//! transformation, the coordinate substitution, and a substitution check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_scalar, AlgebraError, FieldSpec, MPoly, ScalarK, TriForm, XYZ};
use crate::families::{affine_quartic, build_family, family_form, FamilyError, FamilyParams, QuarticModel, Tag};
use crate::rng::{self, Rng64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("epsilon vanishes for this witness")]
    EpsilonZero,
    #[error("witness tag {witness} does not match model tag {model}")]
    TagMismatch { witness: Tag, model: Tag },
    #[error("no isomorphism formulas for family {0}")]
    UnsupportedFamily(Tag),
    #[error("substitution mismatch, residual {0}")]
    SubstitutionMismatch(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Constants of an isomorphism. For III and V these are `(mu2, mu3, mu4, mu5)`,
/// for IV `(mu1, mu2, mu4, mu5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub tag: Tag,
    pub mu: [ScalarK; 4],
}

impl IsoWitness {
    pub fn names(tag: Tag) -> [&'static str; 4] {
        if tag == Tag::IV {
            ["mu1", "mu2", "mu4", "mu5"]
        } else {
            ["mu2", "mu3", "mu4", "mu5"]
        }
    }

    pub fn identity(tag: Tag, f: FieldSpec) -> Self {
        let z = ScalarK::zero(f);
        IsoWitness { tag, mu: [z.clone(), z.clone(), ScalarK::one(f), z] }
    }

    pub fn parse(tag: Tag, f: FieldSpec, v: &[&str]) -> Result<Self, IsoError> {
        if v.len() != 4 {
            return Err(AlgebraError::Syntax { pos: 0, msg: "a witness has four constants".into() }.into());
        }
        let mut mu = Vec::new();
        for s in v {
            mu.push(parse_scalar(s, f)?);
        }
        Ok(IsoWitness { tag, mu: mu.try_into().expect("four") })
    }
}

/// JSON shape `{"tag":"III","mu2":"0","mu3":"0","mu4":"0","mu5":"1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu1: Option<String>,
    pub mu2: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu3: Option<String>,
    pub mu4: String,
    pub mu5: String,
}

impl From<&IsoWitness> for WitnessJson {
    fn from(w: &IsoWitness) -> Self {
        let s: Vec<String> = w.mu.iter().map(|x| x.to_string()).collect();
        if w.tag == Tag::IV {
            WitnessJson { tag: w.tag, mu1: Some(s[0].clone()), mu2: s[1].clone(), mu3: None, mu4: s[2].clone(), mu5: s[3].clone() }
        } else {
            WitnessJson { tag: w.tag, mu1: None, mu2: s[0].clone(), mu3: Some(s[1].clone()), mu4: s[2].clone(), mu5: s[3].clone() }
        }
    }
}

impl WitnessJson {
    pub fn to_witness(&self, f: FieldSpec) -> Result<IsoWitness, IsoError> {
        let missing = || IsoError::Algebra(AlgebraError::Syntax { pos: 0, msg: "missing witness constant".into() });
        let first = if self.tag == Tag::IV { self.mu1.as_ref() } else { Some(&self.mu2) }.ok_or_else(missing)?;
        let second = if self.tag == Tag::IV { Some(&self.mu2) } else { self.mu3.as_ref() }.ok_or_else(missing)?;
        IsoWitness::parse(self.tag, f, &[first, second, &self.mu4, &self.mu5])
    }
}

/// `(epsilon, gamma)` of a witness relative to the source parameters.
pub fn epsilon_gamma(p: &FamilyParams, w: &IsoWitness) -> Result<(ScalarK, ScalarK), IsoError> {
    if p.tag != w.tag {
        return Err(IsoError::TagMismatch { witness: w.tag, model: p.tag });
    }
    let base = match p.tag {
        Tag::III => &p.a,
        Tag::IV | Tag::V => &p.b,
        t => return Err(IsoError::UnsupportedFamily(t)),
    };
    let [m0, m1, m4, m5] = &w.mu;
    let eps = m4.square().add(&m5.square().mul(base));
    let ei = eps.inv().ok_or(IsoError::EpsilonZero)?;
    let gamma = ei.mul(&m0.square().add(&m1.square().mul(base)));
    Ok((eps, gamma))
}

/// Target parameters given by the transformation formulas, without validation.
pub fn transformed_params(p: &FamilyParams, w: &IsoWitness) -> Result<FamilyParams, IsoError> {
    let (e, g) = epsilon_gamma(p, w)?;
    let (a, b, c, d) = (&p.a, &p.b, &p.c, &p.d);
    let [m0, m1, m4, m5] = &w.mu;
    let ei = e.inv().expect("nonzero");
    let out = match p.tag {
        Tag::III => {
            let (m2, m3) = (m0, m1);
            let _ = m2;
            let k = m4.mul(m5).add(&m3.square());
            let e2 = e.square();
            let d_new = e
                .mul(&k.square())
                .mul(b)
                .add(&e2.mul(&k))
                .add(&e2.mul(&m5.square().mul(&b.square()).mul(&c.pow(3)).add(&e.mul(d))));
            FamilyParams::new(Tag::III, ei.pow(6).mul(&a.add(&g.square())), ei.pow(3).mul(b), e.mul(c), d_new)
        }
        Tag::IV => {
            let (_m1, m2) = (m0, m1);
            let cab2 = c.add(&a.mul(&b.square()));
            let em45 = e.mul(&m4.mul(m5));
            let a_new = e.square().mul(a).add(&em45).add(&m2.pow(4)).add(&m5.pow(4).mul(&cab2));
            let ei2b2 = ei.square().mul(&b.square());
            let inner = c
                .add(&g.square())
                .add(&em45.add(&m2.pow(4)).mul(&ei2b2))
                .add(&ei2b2.mul(&m5.pow(4)).mul(&cab2));
            FamilyParams::new(Tag::IV, a_new, ei.pow(4).mul(b), ei.pow(6).mul(&inner), ScalarK::zero(p.field()))
        }
        Tag::V => {
            let m3 = m1;
            let bg = b.add(&g.square());
            let bgi2 = bg.inv().ok_or(IsoError::EpsilonZero)?.square();
            let ab2 = a.mul(&b.square());
            let e2 = e.square();
            let a_new = e2.mul(&ab2).mul(&bgi2);
            // The middle term is (k + eps d) k with k = mu3^2 + mu4 mu5; the
            // variant with (1 + eps d) k fails the substitution by k^2 + k.
            let k = m3.square().add(&m4.mul(m5));
            let c_new = e2
                .mul(&c.add(a))
                .add(&k.add(&e.mul(d)).mul(&k))
                .add(&ab2.mul(&m5.pow(4).add(&e2.mul(&bgi2))));
            FamilyParams::new(Tag::V, a_new, ei.square().mul(&bg), c_new, e.mul(d))
        }
        t => return Err(IsoError::UnsupportedFamily(t)),
    };
    Ok(out)
}

/// The target model of the isomorphism.
pub fn apply_iso(m: &QuarticModel, w: &IsoWitness) -> Result<QuarticModel, IsoError> {
    let p = transformed_params(&m.params, w)?;
    Ok(build_family(&p)?)
}

/// `z' = z_num / den` and `y' = y_num / den`, polynomials in `y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMaps {
    pub z_num: TriForm,
    pub y_num: TriForm,
    pub den: TriForm,
}

impl IsoMaps {
    pub fn is_identity(&self) -> bool {
        let f = self.den.field();
        let y = TriForm::var(f, XYZ, 1);
        let z = TriForm::var(f, XYZ, 2);
        self.z_num == z.mul(&self.den) && self.y_num == y.mul(&self.den)
    }
}

pub fn iso_maps(w: &IsoWitness, p: &FamilyParams) -> Result<IsoMaps, IsoError> {
    let (e, g) = epsilon_gamma(p, w)?;
    let f = p.field();
    let k = |c: &ScalarK| TriForm::constant(f, XYZ, c.clone());
    let y = TriForm::var(f, XYZ, 1);
    let z = TriForm::var(f, XYZ, 2);
    let [m0, m1, m4, m5] = &w.mu;
    let ei = e.inv().expect("nonzero");
    let den = k(m4).add(&z.scale(m5));
    let base = if p.tag == Tag::III { &p.a } else { &p.b };
    // mu5 * base + mu4 * z
    let moeb = k(&m5.mul(base)).add(&z.scale(m4));
    let (z_num, y_num) = match p.tag {
        Tag::III => (
            den.scale(&g).add(&moeb).scale(&ei.pow(3)),
            den.scale(m0).add(&moeb.scale(m1)).add(&y.scale(&e)).scale(&ei.square()),
        ),
        Tag::IV => (
            moeb.scale(&ei.square()),
            den.scale(m0).add(&moeb.scale(m1)).add(&y.scale(&e)).scale(&ei.square()),
        ),
        Tag::V => (
            den.scale(&g).add(&moeb).scale(&ei),
            den.scale(m0).add(&moeb.scale(m1)).add(&y.scale(&e)).scale(&ei),
        ),
        t => return Err(IsoError::UnsupportedFamily(t)),
    };
    Ok(IsoMaps { z_num, y_num, den })
}

/// Result of a successful check: `target(maps) * den^4 = scalar * source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub scalar: ScalarK,
}

/// Substitutes the maps into the target's affine quartic and compares with the source.
pub fn check_iso(source: &QuarticModel, target: &FamilyParams, w: &IsoWitness) -> Result<IsoCheck, IsoError> {
    let maps = iso_maps(w, &source.params)?;
    let f = source.params.field();
    let t_form = affine_quartic(&family_form(target.tag, &target.as_array(), f));
    let s_form = affine_quartic(&source.form);
    let mut acc = TriForm::zero(f, XYZ);
    let mut den_pows = vec![TriForm::one(f, XYZ)];
    for _ in 0..4 {
        let next = den_pows.last().unwrap().mul(&maps.den);
        den_pows.push(next);
    }
    for (m, c) in t_form.terms() {
        let (j, k) = (m.0[1] as u32, m.0[2] as u32);
        let term = maps.y_num.pow(j).mul(&maps.z_num.pow(k)).mul(&den_pows[(4 - j - k) as usize]).scale(c);
        acc = acc.add(&term);
    }
    match acc.scalar_ratio(&s_form) {
        Some(scalar) => Ok(IsoCheck { scalar }),
        None => {
            // Residual after matching the leading coefficient.
            let lead = s_form.leading().map(|(m, c)| acc.coeff(m).mul(&c.inv().expect("nonzero")));
            let residual = match lead {
                Some(k) if !k.is_zero() => acc.add(&s_form.scale(&k)),
                _ => acc,
            };
            Err(IsoError::SubstitutionMismatch(residual.to_string()))
        }
    }
}

pub fn verify_iso(source: &QuarticModel, target: &QuarticModel, w: &IsoWitness) -> bool {
    check_iso(source, &target.params, w).is_ok()
}

/// A witness drawn with numerator and denominator degrees at most 2; retried until epsilon is nonzero.
pub fn random_witness(rng: &mut Rng64, p: &FamilyParams) -> IsoWitness {
    let f = p.field();
    loop {
        let mu: [ScalarK; 4] = std::array::from_fn(|_| rng::scalar(rng, f, 2));
        let w = IsoWitness { tag: p.tag, mu };
        if epsilon_gamma(p, &w).is_ok() {
            return w;
        }
    }
}

/// A kept witness whose maps are not the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutViolation {
    pub witness: IsoWitness,
    pub maps: IsoMaps,
}

/// Draws `n` witnesses; those fixing the parameters must act as the identity.
pub fn search_automorphisms(m: &QuarticModel, rng: &mut Rng64, n: usize) -> Result<(Vec<IsoWitness>, Vec<AutViolation>), IsoError> {
    let mut kept = Vec::new();
    let mut bad = Vec::new();
    for _ in 0..n {
        let w = random_witness(rng, &m.params);
        if transformed_params(&m.params, &w)? == m.params {
            let maps = iso_maps(&w, &m.params)?;
            if !maps.is_identity() {
                bad.push(AutViolation { witness: w.clone(), maps });
            }
            kept.push(w);
        }
    }
    Ok((kept, bad))
}

/// The empty-variable form of a model, used by reports.
pub fn affine_form(m: &QuarticModel) -> MPoly<ScalarK> {
    affine_quartic(&m.form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn model(tag: Tag, v: &[&str]) -> QuarticModel {
        build_family(&FamilyParams::parse(tag, f2(), v).unwrap()).unwrap()
    }

    fn witness(tag: Tag, v: &[&str]) -> IsoWitness {
        IsoWitness::parse(tag, f2(), v).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        for (tag, v) in [(Tag::III, vec!["t", "1", "1", "0"]), (Tag::IV, vec!["0", "t", "0"]), (Tag::V, vec!["t", "t", "1", "1"])] {
            let m = model(tag, &v);
            let w = IsoWitness::identity(tag, f2());
            let t = apply_iso(&m, &w).unwrap();
            assert_eq!(t, m);
            assert!(iso_maps(&w, &m.params).unwrap().is_identity());
            assert!(check_iso(&m, &t.params, &w).unwrap().scalar.is_one());
        }
    }

    #[test]
    fn worked_examples() {
        let m = model(Tag::III, &["t", "1", "1", "0"]);
        let w = witness(Tag::III, &["0", "0", "0", "1"]);
        let t = apply_iso(&m, &w).unwrap();
        assert_eq!(t.params, FamilyParams::parse(Tag::III, f2(), &["1/t^5", "1/t^3", "t", "t^2"]).unwrap());
        assert!(verify_iso(&m, &t, &w));

        let m = model(Tag::IV, &["0", "t", "0"]);
        let w = witness(Tag::IV, &["0", "1", "1", "0"]);
        let t = apply_iso(&m, &w).unwrap();
        assert_eq!(t.params, FamilyParams::parse(Tag::IV, f2(), &["1", "t", "0"]).unwrap());
        let maps = iso_maps(&w, &m.params).unwrap();
        assert_eq!(maps.den.to_string(), "1");
        assert_eq!(maps.z_num.to_string(), "z");
        assert_eq!(maps.y_num.to_string(), "y+z");
        assert!(check_iso(&m, &t.params, &w).unwrap().scalar.is_one());
    }

    #[test]
    fn wrong_target_is_rejected() {
        let m = model(Tag::IV, &["0", "t", "0"]);
        let w = witness(Tag::IV, &["0", "1", "1", "0"]);
        let wrong = FamilyParams::parse(Tag::IV, f2(), &["0", "t", "0"]).unwrap();
        assert!(matches!(check_iso(&m, &wrong, &w), Err(IsoError::SubstitutionMismatch(_))));
    }

    #[test]
    fn epsilon_zero() {
        let m = model(Tag::III, &["t", "1", "1", "0"]);
        let w = witness(Tag::III, &["0", "0", "0", "0"]);
        assert_eq!(apply_iso(&m, &w), Err(IsoError::EpsilonZero));
    }

    #[test]
    fn automorphism_search() {
        let m = model(Tag::III, &["t", "1", "1", "0"]);
        let mut r = rng::stream(7, "aut");
        let (_, bad) = search_automorphisms(&m, &mut r, 100).unwrap();
        assert!(bad.is_empty());
        assert_eq!(search_automorphisms(&m, &mut r, 0).unwrap().0.len(), 0);
    }

    #[test]
    fn random_witnesses_verify() {
        let mut r = rng::stream(11, "iso-unit");
        for tag in [Tag::III, Tag::IV, Tag::V] {
            for _ in 0..20 {
                let p = loop {
                    let v: [ScalarK; 4] = std::array::from_fn(|_| rng::scalar(&mut r, f2(), 2));
                    let mut p = FamilyParams::new(tag, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
                    if tag == Tag::IV {
                        p.d = ScalarK::zero(f2());
                    }
                    if p.validate().is_ok() {
                        break p;
                    }
                };
                let m = build_family(&p).unwrap();
                let w = random_witness(&mut r, &p);
                let t = transformed_params(&p, &w).unwrap();
                check_iso(&m, &t, &w).unwrap_or_else(|e| panic!("{tag} {p:?} {w:?}: {e}"));
            }
        }
    }

    #[test]
    fn family_v_constant_term() {
        // With k = mu3^2 + mu4 mu5 = t^2 + 1, the factor (1 + eps d) in place of
        // (k + eps d) shifts c' by k^2 + k and the substitution no longer matches.
        let m = model(Tag::V, &["t/(t+1)", "t", "t", "1"]);
        let w = witness(Tag::V, &["t^2", "t+1", "1", "0"]);
        let good = transformed_params(&m.params, &w).unwrap();
        assert!(check_iso(&m, &good, &w).is_ok());
        let k = ScalarK::t(f2()).square().add(&ScalarK::one(f2()));
        let mut bad = good.clone();
        bad.c = bad.c.add(&k.square()).add(&k);
        assert!(matches!(check_iso(&m, &bad, &w), Err(IsoError::SubstitutionMismatch(_))));
    }

    #[test]
    fn witness_json() {
        let w = witness(Tag::III, &["0", "0", "0", "1"]);
        let j = WitnessJson::from(&w);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"tag":"III","mu2":"0","mu3":"0","mu4":"0","mu5":"1"}"#);
        assert_eq!(j.to_witness(f2()).unwrap(), w);
    }
}
