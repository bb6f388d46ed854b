//! Univariate polynomials over GF(2^m), used as numerators and denominators in F_q(t).

use std::fmt;

use super::gf::{FieldSpec, GfElem};

/// Dense polynomial; `coeffs[i]` multiplies `t^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl UPoly {
    pub fn from_bits(field: FieldSpec, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.elem(*c).bits();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: &[GfElem]) -> Self {
        Self::from_bits(field, coeffs.iter().map(|c| c.bits()).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        UPoly { field, coeffs: vec![] }
    }

    pub fn constant(c: GfElem) -> Self {
        Self::from_bits(c.field(), vec![c.bits()])
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    /// `t^k`.
    pub fn monomial(field: FieldSpec, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        UPoly { field, coeffs: c }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> GfElem {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn lead(&self) -> GfElem {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![0; n];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] ^= x;
        }
        for (i, x) in o.coeffs.iter().enumerate() {
            c[i] ^= x;
        }
        Self::from_bits(self.field, c)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if b != 0 {
                    c[i + j] ^= self.field.mul_bits(a, b);
                }
            }
        }
        Self::from_bits(self.field, c)
    }

    pub fn scale(&self, s: GfElem) -> UPoly {
        Self::from_bits(self.field, self.coeffs.iter().map(|&a| self.field.mul_bits(a, s.bits())).collect())
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut acc = Self::one(self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let inv = d.lead().inv().expect("nonzero lead").bits();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let k = f.mul_bits(c, inv);
            q[i - dd] = k;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] ^= f.mul_bits(k, b);
            }
        }
        (Self::from_bits(f, q), Self::from_bits(f, r))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead().inv() {
            Some(i) if !self.is_zero() => self.scale(i),
            _ => self.clone(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: GfElem) -> GfElem {
        let mut acc = self.field.zero();
        for i in (0..self.coeffs.len()).rev() {
            acc = acc * x + self.coeff(i);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect();
        Self::from_bits(self.field, c)
    }

    /// True when only even powers of `t` occur, i.e. the polynomial is a square.
    pub fn is_square(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &a)| i % 2 == 0 || a == 0)
    }

    /// Square root of a square; `None` otherwise.
    pub fn sqrt(&self) -> Option<UPoly> {
        if !self.is_square() {
            return None;
        }
        let c = self.coeffs.iter().step_by(2).map(|&a| self.field.elem(a).sqrt().bits()).collect();
        Some(Self::from_bits(self.field, c))
    }

    /// Splits into even and odd parts: `p = e(t) + t * o(t)` with `e`, `o` squares.
    pub fn even_odd(&self) -> (UPoly, UPoly) {
        let mut e = vec![0; self.coeffs.len()];
        let mut o = vec![0; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                e[i] = a;
            } else {
                o[i - 1] = a;
            }
        }
        (Self::from_bits(self.field, e), Self::from_bits(self.field, o))
    }

    /// Terms as `(exponent, coefficient)`, highest first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (usize, GfElem)> + '_ {
        (0..self.coeffs.len()).rev().filter(|&i| self.coeffs[i] != 0).map(|i| (i, self.coeff(i)))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.terms_desc() {
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            parts.push(if k == 0 {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if c.is_compound() {
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

    #[test]
    fn divrem_reconstructs() {
        let f = FieldSpec::smallest(2).unwrap();
        let a = UPoly::from_bits(f, vec![1, 2, 3, 1, 2]);
        let b = UPoly::from_bits(f, vec![3, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = FieldSpec::binary();
        let p = UPoly::from_bits(f, vec![1, 1]);
        let q = UPoly::from_bits(f, vec![1, 1, 1]);
        let r = UPoly::from_bits(f, vec![0, 1]);
        assert_eq!(p.mul(&q).gcd(&p.mul(&r)), p);
    }

    #[test]
    fn square_roots() {
        let f = FieldSpec::binary();
        let p = UPoly::from_bits(f, vec![1, 0, 1]);
        assert_eq!(p.sqrt().unwrap(), UPoly::from_bits(f, vec![1, 1]));
        assert!(UPoly::monomial(f, 1).sqrt().is_none());
    }
}
