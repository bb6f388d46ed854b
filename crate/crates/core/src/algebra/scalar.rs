//! Elements of K = GF(2^m)(t) as reduced fractions with monic denominator.

use std::fmt;

use super::gf::{FieldSpec, GfElem};
use super::upoly::UPoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarK {
    num: UPoly,
    den: UPoly,
}

impl ScalarK {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        let f = den.field();
        if num.is_zero() {
            return ScalarK { num: UPoly::zero(f), den: UPoly::one(f) };
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let lc = d.lead().inv().expect("nonzero");
        ScalarK { num: n.scale(lc), den: d.scale(lc) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        let f = p.field();
        ScalarK { num: p, den: UPoly::one(f) }
    }

    pub fn from_gf(c: GfElem) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero(f: FieldSpec) -> Self {
        Self::from_poly(UPoly::zero(f))
    }

    pub fn one(f: FieldSpec) -> Self {
        Self::from_poly(UPoly::one(f))
    }

    /// The transcendental `t`.
    pub fn t(f: FieldSpec) -> Self {
        Self::from_poly(UPoly::monomial(f, 1))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant in GF(2^m), if it is one.
    pub fn as_constant(&self) -> Option<GfElem> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &ScalarK) -> ScalarK {
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &ScalarK) -> ScalarK {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        // Cross-cancel first to keep degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.divrem(&g1).0.mul(&o.num.divrem(&g2).0);
        let d = self.den.divrem(&g2).0.mul(&o.den.divrem(&g1).0);
        let lc = d.lead().inv().expect("nonzero");
        ScalarK { num: n.scale(lc), den: d.scale(lc) }
    }

    pub fn inv(&self) -> Option<ScalarK> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &ScalarK) -> Result<ScalarK, AlgebraError> {
        Ok(self.mul(&o.inv().ok_or(AlgebraError::DivisionByZero)?))
    }

    pub fn pow(&self, e: u32) -> ScalarK {
        ScalarK { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer powers, negative meaning inverse.
    pub fn powi(&self, e: i32) -> Result<ScalarK, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv().ok_or(AlgebraError::DivisionByZero)?.pow((-e) as u32))
        }
    }

    pub fn square(&self) -> ScalarK {
        self.pow(2)
    }

    /// Membership in K^2: both parts of the reduced fraction use even exponents only.
    pub fn is_square(&self) -> bool {
        self.num.is_square() && self.den.is_square()
    }

    pub fn sqrt(&self) -> Result<ScalarK, AlgebraError> {
        match (self.num.sqrt(), self.den.sqrt()) {
            (Some(n), Some(d)) => Ok(ScalarK { num: n, den: d }),
            _ => Err(AlgebraError::NotASquare(self.to_string())),
        }
    }

    /// Writes `self = u^2 + t v^2` and returns `(u, v)`.
    pub fn square_parts(&self) -> (ScalarK, ScalarK) {
        let nd = self.num.mul(&self.den);
        let (e, o) = nd.even_odd();
        let d = ScalarK::from_poly(self.den.clone());
        let u = ScalarK::from_poly(e.sqrt().expect("even part")).div(&d).expect("nonzero den");
        let v = ScalarK::from_poly(o.sqrt().expect("odd part")).div(&d).expect("nonzero den");
        (u, v)
    }

    /// Whether the printed form needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        let s = self.to_string();
        s.contains('+') || s.contains('/')
    }
}

fn wrap(s: String) -> String {
    if s.contains('+') || s.contains('*') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for ScalarK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(self.num.to_string()), wrap(self.den.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: &[u64]) -> UPoly {
        UPoly::from_bits(FieldSpec::binary(), bits.to_vec())
    }

    #[test]
    fn reduction_cancels() {
        let x = ScalarK::new(p(&[0, 1, 0, 1]), p(&[0, 0, 1, 0, 1])).unwrap();
        assert_eq!(x.to_string(), "1/t");
    }

    #[test]
    fn squares() {
        let f = FieldSpec::binary();
        let t = ScalarK::t(f);
        assert!(!t.is_square());
        assert!(t.square().add(&ScalarK::one(f)).is_square());
        let q = t.square().div(&t.square().add(&ScalarK::one(f))).unwrap();
        assert!(q.is_square());
        assert_eq!(q.sqrt().unwrap().square(), q);
    }

    #[test]
    fn square_parts_recombine() {
        let f = FieldSpec::smallest(2).unwrap();
        let x = ScalarK::new(UPoly::from_bits(f, vec![2, 1, 3, 1]), UPoly::from_bits(f, vec![1, 3, 0, 1])).unwrap();
        let (u, v) = x.square_parts();
        assert_eq!(u.square().add(&ScalarK::t(f).mul(&v.square())), x);
    }
}
