//! Seeded sampling of field elements and scalars.
//!
//! Every consumer derives its own stream from a master seed and a label so
//! that adding draws in one place never shifts the draws seen elsewhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FieldSpec, GfElem, ScalarK, UPoly};

pub type Rng64 = ChaCha8Rng;

/// An independent stream for `(seed, label)`.
pub fn stream(seed: u64, label: &str) -> Rng64 {
    // FNV-1a over the label, mixed into the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

pub fn gf(rng: &mut Rng64, f: FieldSpec) -> GfElem {
    f.elem(rng.gen_range(0..f.size()))
}

/// Polynomial of degree at most `max_deg` with uniform coefficients.
pub fn poly(rng: &mut Rng64, f: FieldSpec, max_deg: usize) -> UPoly {
    let c: Vec<u64> = (0..=max_deg).map(|_| rng.gen_range(0..f.size())).collect();
    UPoly::from_bits(f, c)
}

/// `num/den` with both degrees at most `max_deg`; zero with probability about 1/4.
pub fn scalar(rng: &mut Rng64, f: FieldSpec, max_deg: usize) -> ScalarK {
    if rng.gen_ratio(1, 4) {
        return ScalarK::zero(f);
    }
    loop {
        let n = poly(rng, f, max_deg);
        let d = if rng.gen_ratio(1, 2) { UPoly::one(f) } else { poly(rng, f, max_deg) };
        if !d.is_zero() {
            return ScalarK::new(n, d).expect("nonzero denominator");
        }
    }
}

pub fn nonzero_scalar(rng: &mut Rng64, f: FieldSpec, max_deg: usize) -> ScalarK {
    loop {
        let x = scalar(rng, f, max_deg);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A scalar outside K^2.
pub fn nonsquare_scalar(rng: &mut Rng64, f: FieldSpec, max_deg: usize) -> ScalarK {
    loop {
        let x = scalar(rng, f, max_deg);
        if !x.is_square() {
            return x;
        }
    }
}
