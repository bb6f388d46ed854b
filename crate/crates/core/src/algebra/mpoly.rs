//! Sparse polynomials in up to four variables over a characteristic-2 coefficient field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::gf::{FieldSpec, GfElem};
use super::scalar::ScalarK;
use super::AlgebraError;

/// Coefficient fields used by `MPoly`. All of them have characteristic 2.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero(f: FieldSpec) -> Self;
    fn one(f: FieldSpec) -> Self;
    fn from_gf(c: GfElem) -> Self;
    fn field(&self) -> FieldSpec;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Square root when it exists in the field.
    fn sqrt(&self) -> Option<Self>;
    fn compound(&self) -> bool;
}

impl Coeff for GfElem {
    fn zero(f: FieldSpec) -> Self {
        f.zero()
    }
    fn one(f: FieldSpec) -> Self {
        f.one()
    }
    fn from_gf(c: GfElem) -> Self {
        c
    }
    fn field(&self) -> FieldSpec {
        GfElem::field(self)
    }
    fn is_zero(&self) -> bool {
        GfElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        GfElem::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn inv(&self) -> Option<Self> {
        GfElem::inv(self)
    }
    fn sqrt(&self) -> Option<Self> {
        Some(GfElem::sqrt(self))
    }
    fn compound(&self) -> bool {
        self.is_compound()
    }
}

impl Coeff for ScalarK {
    fn zero(f: FieldSpec) -> Self {
        ScalarK::zero(f)
    }
    fn one(f: FieldSpec) -> Self {
        ScalarK::one(f)
    }
    fn from_gf(c: GfElem) -> Self {
        ScalarK::from_gf(c)
    }
    fn field(&self) -> FieldSpec {
        ScalarK::field(self)
    }
    fn is_zero(&self) -> bool {
        ScalarK::is_zero(self)
    }
    fn is_one(&self) -> bool {
        ScalarK::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        ScalarK::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ScalarK::mul(self, o)
    }
    fn inv(&self) -> Option<Self> {
        ScalarK::inv(self)
    }
    fn sqrt(&self) -> Option<Self> {
        ScalarK::sqrt(self).ok()
    }
    fn compound(&self) -> bool {
        self.is_compound()
    }
}

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; 4]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = [0u16; 4];
        for i in 0..4 {
            r[i] = self.0[i] + o.0[i];
        }
        Mono(r)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = [0u16; 4];
        for i in 0..4 {
            r[i] = self.0[i] - o.0[i];
        }
        Mono(r)
    }

    pub fn var(i: usize, e: u16) -> Mono {
        let mut r = [0u16; 4];
        r[i] = e;
        Mono(r)
    }
}

/// Graded reverse lexicographic order with variable 0 largest.
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        for i in (0..4).rev() {
            if self.0[i] != o.0[i] {
                return o.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub const XYZ: &[&str] = &["x", "y", "z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<C: Coeff> {
    field: FieldSpec,
    names: &'static [&'static str],
    terms: BTreeMap<Mono, C>,
}

/// Ternary forms over K.
pub type TriForm = MPoly<ScalarK>;
/// Ternary forms over a finite field.
pub type FormFq = MPoly<GfElem>;

impl<C: Coeff> MPoly<C> {
    pub fn zero(field: FieldSpec, names: &'static [&'static str]) -> Self {
        assert!(names.len() <= 4);
        MPoly { field, names, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, names: &'static [&'static str], c: C) -> Self {
        let mut p = Self::zero(field, names);
        p.add_term(Mono::default(), c);
        p
    }

    pub fn one(field: FieldSpec, names: &'static [&'static str]) -> Self {
        Self::constant(field, names, C::one(field))
    }

    pub fn var(field: FieldSpec, names: &'static [&'static str], i: usize) -> Self {
        Self::monomial(field, names, Mono::var(i, 1), C::one(field))
    }

    pub fn monomial(field: FieldSpec, names: &'static [&'static str], m: Mono, c: C) -> Self {
        let mut p = Self::zero(field, names);
        p.add_term(m, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs.
    pub fn from_terms(field: FieldSpec, names: &'static [&'static str], terms: &[([u16; 3], C)]) -> Self {
        let mut p = Self::zero(field, names);
        for (e, c) in terms {
            p.add_term(Mono([e[0], e[1], e[2], 0]), c.clone());
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &'static [&'static str] {
        self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn with_names(mut self, names: &'static [&'static str]) -> Self {
        assert!(names.len() >= self.names.len());
        self.names = names;
        self
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero(self.field))
    }

    /// Coefficient of `x^i y^j z^k`.
    pub fn coeff3(&self, i: u16, j: u16, k: u16) -> C {
        self.coeff(&Mono([i, j, k, 0]))
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree among the terms: the order of vanishing at the origin.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.keys().next() {
            None => true,
            Some(first) => self.terms.keys().all(|m| m.degree() == first.degree()),
        }
    }

    /// Degree in one variable.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::zero(self.field, self.names);
        for (m, c) in &self.terms {
            r.add_term(*m, c.mul(s));
        }
        r
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        let mut r = Self::zero(self.field, self.names);
        for (m, c) in &self.terms {
            r.terms.insert(m.mul(mono), c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.field, self.names);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field, self.names);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Partial derivative; in characteristic 2 only odd exponents survive.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.field, self.names);
        for (m, c) in &self.terms {
            if m.0[i] % 2 == 1 {
                let mut e = m.0;
                e[i] -= 1;
                r.add_term(Mono(e), c.clone());
            }
        }
        r
    }

    /// Evaluates at a point with coordinates in the coefficient field.
    pub fn eval(&self, pt: &[C]) -> C {
        let mut acc = C::zero(self.field);
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in pt.iter().enumerate() {
                for _ in 0..m.0[i] {
                    v = v.mul(x);
                }
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// Generic evaluation into another ring given by closures.
    pub fn eval_with<R: Clone>(
        &self,
        pt: &[R],
        lift: impl Fn(&C) -> R,
        add: impl Fn(&R, &R) -> R,
        mul: impl Fn(&R, &R) -> R,
        zero: R,
    ) -> R {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut v = lift(c);
            for (i, x) in pt.iter().enumerate() {
                for _ in 0..m.0[i] {
                    v = mul(&v, x);
                }
            }
            acc = add(&acc, &v);
        }
        acc
    }

    /// Substitutes variable `i` by the polynomial `images[i]` for every variable.
    pub fn compose(&self, images: &[MPoly<C>]) -> MPoly<C> {
        assert_eq!(images.len(), self.nvars());
        let target = images.first().map(|p| p.names).unwrap_or(self.names);
        let mut powers: Vec<Vec<MPoly<C>>> = images
            .iter()
            .map(|p| vec![MPoly::one(self.field, target), p.clone()])
            .collect();
        let mut r = MPoly::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(self.field, target, c.clone());
            for i in 0..self.nvars() {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e]);
                }
            }
            r = r.add(&term);
        }
        r
    }

    /// Sets variable `i` to a constant.
    pub fn substitute_const(&self, i: usize, v: &C) -> Self {
        let mut r = Self::zero(self.field, self.names);
        for (m, c) in &self.terms {
            let mut k = c.clone();
            for _ in 0..m.0[i] {
                k = k.mul(v);
            }
            let mut e = m.0;
            e[i] = 0;
            r.add_term(Mono(e), k);
        }
        r
    }

    pub fn map_coeffs<D: Coeff>(&self, field: FieldSpec, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut r = MPoly::zero(field, self.names);
        for (m, c) in &self.terms {
            r.add_term(*m, f(c));
        }
        r
    }

    /// Square root taken term by term; exists iff every exponent is even
    /// and every coefficient is a square.
    pub fn square_root(&self) -> Option<Self> {
        let mut r = Self::zero(self.field, self.names);
        for (m, c) in &self.terms {
            if m.0.iter().any(|e| e % 2 == 1) {
                return None;
            }
            let mut e = m.0;
            for x in e.iter_mut() {
                *x /= 2;
            }
            r.add_term(Mono(e), c.sqrt()?);
        }
        Some(r)
    }

    /// Exact division: `Some(q)` with `q * d == self`, `None` when the remainder is nonzero.
    pub fn divide(&self, d: &Self) -> Result<Option<Self>, AlgebraError> {
        let (lm, lc) = match d.leading() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(AlgebraError::ZeroDivisor),
        };
        let linv = lc.inv().ok_or(AlgebraError::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.field, self.names);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = m.div(&lm);
            let qc = c.mul(&linv);
            rem = rem.add(&d.mul_mono(&qm).scale(&qc));
            q.add_term(qm, qc);
        }
        Ok(Some(q))
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|(_, c)| c.inv()) {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    /// Ratio `k` with `self == k * other`, if there is one.
    pub fn scalar_ratio(&self, other: &Self) -> Option<C> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (m, c) = other.leading()?;
        let k = self.coeff(m).mul(&c.inv()?);
        if k.is_zero() {
            return None;
        }
        if other.scale(&k) == *self {
            Some(k)
        } else {
            None
        }
    }

    fn mono_string(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.0[i] {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            let mono = self.mono_string(m);
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.compound() {
                format!("({c})*{mono}")
            } else {
                format!("{c}*{mono}")
            });
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn one() -> GfElem {
        f2().one()
    }

    #[test]
    fn grevlex_orders_by_degree_then_last_variable() {
        let xz = Mono([1, 0, 1, 0]);
        let y2 = Mono([0, 2, 0, 0]);
        let x2 = Mono([2, 0, 0, 0]);
        assert!(x2 > y2 && y2 > xz);
        assert!(Mono([1, 1, 0, 0]) > Mono([0, 2, 0, 0]));
        assert!(Mono([0, 0, 3, 0]) > Mono([1, 1, 0, 0]));
    }

    #[test]
    fn derivatives_in_char_two() {
        let p: FormFq = MPoly::from_terms(f2(), XYZ, &[([1, 0, 3], one())]);
        assert_eq!(p.derivative(2), MPoly::from_terms(f2(), XYZ, &[([1, 0, 2], one())]));
        let q: FormFq = MPoly::from_terms(f2(), XYZ, &[([3, 0, 1], one())]);
        assert_eq!(q.derivative(0), MPoly::from_terms(f2(), XYZ, &[([2, 0, 1], one())]));
    }

    #[test]
    fn exact_division() {
        let d: FormFq = MPoly::from_terms(f2(), XYZ, &[([0, 0, 2], one()), ([2, 0, 0], one())]);
        let q: FormFq = MPoly::from_terms(
            f2(),
            XYZ,
            &[([0, 2, 0], one()), ([1, 0, 1], one()), ([0, 0, 2], one()), ([2, 0, 0], one())],
        );
        let f = d.mul(&q);
        assert_eq!(f.divide(&d).unwrap(), Some(q));
        let g: FormFq = MPoly::from_terms(f2(), XYZ, &[([0, 4, 0], one()), ([1, 0, 3], one())]);
        let x = MPoly::var(f2(), XYZ, 0);
        assert_eq!(g.divide(&x).unwrap(), None);
        assert!(g.divide(&MPoly::zero(f2(), XYZ)).is_err());
    }
}
