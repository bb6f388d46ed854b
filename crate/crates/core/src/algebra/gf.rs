//! Binary fields GF(2^m) as bit vectors reduced by an irreducible modulus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::AlgebraError;

/// Largest supported extension degree; products must fit in a `u64`.
pub const MAX_DEGREE: u32 = 32;

/// A binary field given by its degree and modulus (bit `i` = coefficient of `u^i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    m: u32,
    modulus: u64,
}

/// An element of some `FieldSpec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem {
    bits: u64,
    field: FieldSpec,
}

fn deg(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product; callers keep the operands below 2^32.
pub(crate) fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of binary polynomials.
pub(crate) fn bin_rem(mut a: u64, b: u64) -> u64 {
    let db = deg(b);
    while a != 0 && deg(a) >= db {
        a ^= b << (deg(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree at most half.
pub fn is_irreducible(p: u64) -> bool {
    let d = deg(p);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if deg(q) >= 1 && deg(q) <= d / 2 && bin_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    pub fn new(m: u32, modulus: u64) -> Result<Self, AlgebraError> {
        if m == 0 || m > MAX_DEGREE {
            return Err(AlgebraError::BadField(format!("degree {m} out of range 1..={MAX_DEGREE}")));
        }
        if deg(modulus) != m as i32 {
            return Err(AlgebraError::BadField(format!("modulus degree differs from m = {m}")));
        }
        if !is_irreducible(modulus) {
            return Err(AlgebraError::BadField("modulus is reducible".into()));
        }
        Ok(FieldSpec { m, modulus })
    }

    /// F_2, presented with modulus `u + 1` so that the generator `g` is 1.
    pub fn binary() -> Self {
        FieldSpec { m: 1, modulus: 0b11 }
    }

    /// The field of degree `m` whose modulus is the numerically smallest irreducible one.
    pub fn smallest(m: u32) -> Result<Self, AlgebraError> {
        if m == 1 {
            return Ok(Self::binary());
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(AlgebraError::BadField(format!("degree {m} out of range 1..={MAX_DEGREE}")));
        }
        let mut p = (1u64 << m) | 1;
        loop {
            if is_irreducible(p) {
                return Ok(FieldSpec { m, modulus: p });
            }
            p += 2;
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    pub fn elem(&self, bits: u64) -> GfElem {
        GfElem { bits: bin_rem(bits, self.modulus), field: *self }
    }

    pub fn zero(&self) -> GfElem {
        GfElem { bits: 0, field: *self }
    }

    pub fn one(&self) -> GfElem {
        GfElem { bits: 1, field: *self }
    }

    /// The class of `u`.
    pub fn gen(&self) -> GfElem {
        self.elem(0b10)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        let f = *self;
        (0..self.size()).map(move |b| GfElem { bits: b, field: f })
    }

    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        bin_rem(clmul(a, b), self.modulus)
    }

    /// Modulus printed as a polynomial in `u`.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for i in (0..=self.m).rev() {
            if self.modulus >> i & 1 == 1 {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => "u".to_string(),
                    _ => format!("u^{i}"),
                });
            }
        }
        parts.join("+")
    }

    /// Builds GF(2^{m r}) and an embedding of `self` into it.
    pub fn extension(&self, r: u32) -> Result<Embedding, AlgebraError> {
        if r == 1 {
            return Ok(Embedding::identity(*self));
        }
        static CACHE: OnceLock<Mutex<HashMap<(FieldSpec, u32), Embedding>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(e) = cache.lock().expect("cache lock").get(&(*self, r)) {
            return Ok(*e);
        }
        let big = FieldSpec::smallest(self.m.checked_mul(r).unwrap_or(u32::MAX))?;
        let e = Embedding::new(*self, big)?;
        cache.lock().expect("cache lock").insert((*self, r), e);
        Ok(e)
    }
}

impl GfElem {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    pub fn pow(&self, mut e: u64) -> GfElem {
        let mut base = self.bits;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.field.mul_bits(acc, base);
            }
            base = self.field.mul_bits(base, base);
            e >>= 1;
        }
        GfElem { bits: acc, field: self.field }
    }

    pub fn inv(&self) -> Option<GfElem> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.size() - 2))
        }
    }

    pub fn square(&self) -> GfElem {
        *self * *self
    }

    /// The unique square root, `a^(2^(m-1))`.
    pub fn sqrt(&self) -> GfElem {
        let mut r = *self;
        for _ in 1..self.field.m {
            r = r.square();
        }
        r
    }

    /// Whether the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.bits.count_ones() > 1
    }
}

impl std::ops::Add for GfElem {
    type Output = GfElem;
    fn add(self, o: GfElem) -> GfElem {
        debug_assert_eq!(self.field, o.field);
        GfElem { bits: self.bits ^ o.bits, field: self.field }
    }
}

impl std::ops::Mul for GfElem {
    type Output = GfElem;
    fn mul(self, o: GfElem) -> GfElem {
        debug_assert_eq!(self.field, o.field);
        GfElem { bits: self.field.mul_bits(self.bits, o.bits), field: self.field }
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for i in (0..self.field.m).rev() {
            if self.bits >> i & 1 == 1 {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                });
            }
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// A field embedding GF(2^m) -> GF(2^{m r}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub small: FieldSpec,
    pub big: FieldSpec,
    image_of_gen: GfElem,
}

impl Embedding {
    pub fn new(small: FieldSpec, big: FieldSpec) -> Result<Self, AlgebraError> {
        if big.m % small.m != 0 {
            return Err(AlgebraError::BadField("degree does not divide".into()));
        }
        // Any root of the small modulus in the big field.
        let root = big
            .elements()
            .find(|x| {
                let mut acc = big.zero();
                for i in (0..=small.m).rev() {
                    acc = acc * *x;
                    if small.modulus >> i & 1 == 1 {
                        acc = acc + big.one();
                    }
                }
                acc.is_zero()
            })
            .ok_or_else(|| AlgebraError::BadField("no embedding found".into()))?;
        Ok(Embedding { small, big, image_of_gen: root })
    }

    pub fn identity(f: FieldSpec) -> Self {
        Embedding { small: f, big: f, image_of_gen: f.gen() }
    }

    pub fn map(&self, x: GfElem) -> GfElem {
        debug_assert_eq!(x.field, self.small);
        let mut acc = self.big.zero();
        let mut p = self.big.one();
        for i in 0..self.small.m {
            if x.bits >> i & 1 == 1 {
                acc = acc + p;
            }
            p = p * self.image_of_gen;
        }
        acc
    }

    /// Degree of the extension.
    pub fn degree(&self) -> u32 {
        self.big.m / self.small.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldSpec {
        FieldSpec::new(2, 0b111).unwrap()
    }

    #[test]
    fn sqrt_of_generator_in_f4() {
        let f = f4();
        assert_eq!(f.gen().sqrt(), f.gen() + f.one());
    }

    #[test]
    fn inverses_and_roots_everywhere() {
        for f in [FieldSpec::binary(), f4(), FieldSpec::smallest(4).unwrap(), FieldSpec::smallest(8).unwrap()] {
            for x in f.elements() {
                assert_eq!(x.sqrt().square(), x);
                if let Some(i) = x.inv() {
                    assert!((x * i).is_one());
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(FieldSpec::new(2, 0b101).is_err());
        assert!(FieldSpec::new(3, 0b1011).is_ok());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let e = f4().extension(2).unwrap();
        for a in e.small.elements() {
            for b in e.small.elements() {
                assert_eq!(e.map(a * b), e.map(a) * e.map(b));
                assert_eq!(e.map(a + b), e.map(a) + e.map(b));
            }
        }
    }

    #[test]
    fn binary_generator_is_one() {
        assert!(FieldSpec::binary().gen().is_one());
    }
}
