//! K^{1/4} = K(s) with s^4 = t, the field where singular points of the models live.

use std::fmt;

use super::gf::FieldSpec;
use super::mpoly::TriForm;
use super::scalar::ScalarK;
use super::upoly::UPoly;
use super::AlgebraError;

/// `c[0] + c[1] s + c[2] s^2 + c[3] s^3` with `s = t^{1/4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InsepElem {
    pub c: [ScalarK; 4],
}

impl InsepElem {
    pub fn from_scalar(x: ScalarK) -> Self {
        let f = x.field();
        InsepElem { c: [x, ScalarK::zero(f), ScalarK::zero(f), ScalarK::zero(f)] }
    }

    pub fn zero(f: FieldSpec) -> Self {
        Self::from_scalar(ScalarK::zero(f))
    }

    pub fn one(f: FieldSpec) -> Self {
        Self::from_scalar(ScalarK::one(f))
    }

    /// `s^k` for `k < 4`.
    pub fn s_pow(f: FieldSpec, k: usize) -> Self {
        let mut e = Self::zero(f);
        e.c[k] = ScalarK::one(f);
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.c[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        InsepElem { c: std::array::from_fn(|i| self.c[i].add(&o.c[i])) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = self.field();
        let t = ScalarK::t(f);
        let mut r: [ScalarK; 4] = std::array::from_fn(|_| ScalarK::zero(f));
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if o.c[j].is_zero() {
                    continue;
                }
                let mut p = self.c[i].mul(&o.c[j]);
                if i + j >= 4 {
                    p = p.mul(&t);
                }
                r[(i + j) % 4] = r[(i + j) % 4].add(&p);
            }
        }
        InsepElem { c: r }
    }

    /// `self^4`, which always lies in K.
    pub fn pow4(&self) -> ScalarK {
        let f = self.field();
        let t = ScalarK::t(f);
        let mut acc = ScalarK::zero(f);
        for (i, ci) in self.c.iter().enumerate() {
            acc = acc.add(&ci.pow(4).mul(&t.pow(i as u32)));
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.pow4().inv()?;
        let cube = self.mul(self).mul(self);
        Some(cube.mul(&Self::from_scalar(n)))
    }

    pub fn in_k(&self) -> Option<&ScalarK> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// The fourth root of an element of K.
    pub fn root4(x: &ScalarK) -> Self {
        let num = root4_poly(x.num());
        let den = root4_poly(x.den());
        num.mul(&den.inv().expect("nonzero denominator"))
    }

    /// The square root of an element of K.
    pub fn root2(x: &ScalarK) -> Self {
        let r = Self::root4(x);
        r.mul(&r)
    }

    /// Square root inside K^{1/4}; requires `self` in K^{1/2} = span{1, s^2}.
    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if !self.c[1].is_zero() || !self.c[3].is_zero() {
            return Err(AlgebraError::NotASquare(self.to_string()));
        }
        let f = self.field();
        let a = Self::root2(&self.c[0]);
        let b = Self::root2(&self.c[2]).mul(&Self::s_pow(f, 1));
        Ok(a.add(&b))
    }

    pub fn as_vector(&self) -> [ScalarK; 4] {
        self.c.clone()
    }
}

fn root4_poly(p: &UPoly) -> InsepElem {
    let f = p.field();
    let mut parts: [Vec<u64>; 4] = Default::default();
    for (k, c) in p.terms_desc() {
        let r = c.sqrt().sqrt();
        let v = &mut parts[k % 4];
        let idx = k / 4;
        if v.len() <= idx {
            v.resize(idx + 1, 0);
        }
        v[idx] = r.bits();
    }
    InsepElem { c: parts.map(|v| ScalarK::from_poly(UPoly::from_bits(f, v))) }
}

/// Evaluates a form over K at a point with coordinates in K^{1/4}.
pub fn eval_form(form: &TriForm, pt: &[InsepElem; 3]) -> InsepElem {
    let f = form.field();
    form.eval_with(pt, |c| InsepElem::from_scalar(c.clone()), |a, b| a.add(b), |a, b| a.mul(b), InsepElem::zero(f))
}

/// Gaussian elimination over K: rank of a list of vectors in K^4.
pub fn rank(vectors: &[[ScalarK; 4]]) -> usize {
    let mut rows: Vec<[ScalarK; 4]> = vectors.to_vec();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].col_zero(col)) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let k = rows[i][col].mul(&inv);
                for j in 0..4 {
                    let v = rows[i][j].add(&k.mul(&rows[r][j]));
                    rows[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

trait ColZero {
    fn col_zero(&self, c: usize) -> bool;
}

impl ColZero for [ScalarK; 4] {
    fn col_zero(&self, c: usize) -> bool {
        self[c].is_zero()
    }
}

/// K-dimension of the K-subalgebra of K^{1/4} generated by `gens`.
pub fn subalgebra_dimension(gens: &[InsepElem], field: FieldSpec) -> usize {
    let mut basis: Vec<InsepElem> = vec![InsepElem::one(field)];
    let independent = |basis: &Vec<InsepElem>, x: &InsepElem| {
        let mut v: Vec<[ScalarK; 4]> = basis.iter().map(|b| b.as_vector()).collect();
        v.push(x.as_vector());
        rank(&v) == v.len()
    };
    for g in gens {
        if independent(&basis, g) {
            basis.push(g.clone());
        }
    }
    loop {
        let mut grew = false;
        let snapshot = basis.clone();
        'outer: for a in &snapshot {
            for b in &snapshot {
                let p = a.mul(b);
                if basis.len() < 4 && independent(&basis, &p) {
                    basis.push(p);
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return basis.len();
        }
    }
}

impl fmt::Display for InsepElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "t^(1/4)", "t^(1/2)", "t^(3/4)"];
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match (i, c.is_one(), c.is_compound()) {
                (0, _, _) => c.to_string(),
                (_, true, _) => names[i].to_string(),
                (_, false, true) => format!("({c})*{}", names[i]),
                (_, false, false) => format!("{c}*{}", names[i]),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    #[test]
    fn fourth_roots() {
        let f = f2();
        let x = ScalarK::t(f).pow(3).add(&ScalarK::one(f)).div(&ScalarK::t(f).add(&ScalarK::one(f))).unwrap();
        assert_eq!(InsepElem::root4(&x).pow4(), x);
        assert_eq!(InsepElem::root4(&ScalarK::t(f)), InsepElem::s_pow(f, 1));
    }

    #[test]
    fn inverse() {
        let f = f2();
        let a = InsepElem::s_pow(f, 1).add(&InsepElem::one(f));
        let i = a.inv().unwrap();
        assert_eq!(a.mul(&i), InsepElem::one(f));
    }

    #[test]
    fn subalgebra_dimensions() {
        let f = f2();
        let t = ScalarK::t(f);
        assert_eq!(subalgebra_dimension(&[InsepElem::root4(&t)], f), 4);
        assert_eq!(subalgebra_dimension(&[InsepElem::root2(&t)], f), 2);
        assert_eq!(subalgebra_dimension(&[InsepElem::root2(&t), InsepElem::root2(&t.pow(3))], f), 2);
        assert_eq!(subalgebra_dimension(&[InsepElem::root2(&t.pow(2))], f), 1);
        assert_eq!(subalgebra_dimension(&[], f), 1);
    }
}
