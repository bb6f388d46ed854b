//! Field and polynomial kernel: GF(2^m), K = GF(2^m)(t), forms over K and over
//! finite fields, the purely inseparable extension K^{1/4}, and a text syntax.

pub mod gf;
pub mod insep;
pub mod mpoly;
pub mod parse;
pub mod scalar;
pub mod upoly;

pub use gf::{Embedding, FieldSpec, GfElem};
pub use insep::{eval_form as eval_form_insep, subalgebra_dimension, InsepElem};
pub use mpoly::{Coeff, FormFq, MPoly, Mono, TriForm, XYZ};
pub use parse::{parse_form, parse_modulus, parse_poly, parse_scalar};
pub use scalar::ScalarK;
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("division by the zero form")]
    ZeroDivisor,
    #[error("bad field: {0}")]
    BadField(String),
}

/// Partial derivative of a form with respect to variable `i` (0 = x, 1 = y, 2 = z).
pub fn partial<C: Coeff>(f: &MPoly<C>, i: usize) -> MPoly<C> {
    f.derivative(i)
}

/// `Some(g)` with `g^2 = f` when `f` is a square of a form.
pub fn form_square_root<C: Coeff>(f: &MPoly<C>) -> Option<MPoly<C>> {
    f.square_root()
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
pub fn divide_form<C: Coeff>(f: &MPoly<C>, g: &MPoly<C>) -> Result<Option<MPoly<C>>, AlgebraError> {
    f.divide(g)
}

/// Evaluates a form over GF(2^m) at a point.
pub fn eval_form(f: &FormFq, pt: &[GfElem]) -> GfElem {
    f.eval(pt)
}
