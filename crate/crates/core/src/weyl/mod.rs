//! The localized Weyl algebra ℚ[λ, λ⁻¹]⟨∂⟩ in one variable.

mod indicial;
mod laurent;
mod op;
mod parse;
mod transform;

pub use indicial::{
    euler_expansion, indicial_polynomial, singular_support, top_euler_part, IndicialPolynomial,
    Place, SingularSupport,
};
pub use laurent::LaurentPoly;
pub use op::WeylOp;
pub use parse::parse_op;
pub use transform::{fourier, ft_sign, mobius_infinity, Direction, FT_CALIBRATION};

use crate::rational::int;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division at byte {pos} is only allowed inside a rational literal")]
    DivisionOutsideLiteral { pos: usize },
    #[error("negative exponent at byte {pos}: only t may be raised to a negative power")]
    NegativeExponent { pos: usize },
    #[error("operator involves t^-1; the Fourier transform needs a polynomial operator")]
    NotPolynomial,
    #[error("the zero operator has no local data")]
    ZeroOperator,
}

/// ∏_{j=0}^{d−1} (D − j), which equals λ^d ∂^d.
pub fn euler_factorization(d: usize) -> WeylOp {
    let roots: Vec<_> = (0..d as i64).map(int).collect();
    WeylOp::euler_product(&roots)
}
