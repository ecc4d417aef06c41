use num_traits::One;

use super::{gamma_n, DworkError, Weights};
use crate::hypergeom::{make_hyp, ExpMultiset, HypModule};
use crate::rational::{int, pow, Rational};
use crate::weyl::{fourier, ft_sign, Direction, WeylOp};

/// The operator pair related by the Fourier transform, plus the module the
/// transform lands on: the pullback along λ ↦ λ^d of H_{d^d γ}(j/wᵢ; ∅).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtPair {
    pub p: WeylOp,
    pub q: WeylOp,
    pub pullback_degree: u64,
    pub rhs: HypModule,
}

impl FtPair {
    /// `fourier(P, inverse) == ft_sign(d)·Q`
    pub fn relation_holds(&self) -> Result<bool, DworkError> {
        let lhs = fourier(&self.p, Direction::Inverse)?;
        Ok(lhs == self.q.scale(&ft_sign(self.pullback_degree)))
    }
}

/// P = γ∏ᵢ∏ⱼ(D − d·j/wᵢ) − λ^d and Q = ∂^d − γ∏ᵢ∏ⱼ(∂λ + d·j/wᵢ), j = 1..wᵢ.
pub fn ft_pair(w: &Weights) -> Result<FtPair, DworkError> {
    let d = w.d();
    let gamma = gamma_n(w);
    let shifts: Vec<Rational> = w
        .weight_fractions()
        .values()
        .iter()
        .map(|f| f * int(d as i64))
        .collect();
    let p = &WeylOp::euler_product(&shifts).scale(&gamma) - &WeylOp::lambda_pow(d as i64);
    let del_lam = &WeylOp::del() * &WeylOp::lambda();
    let q_prod = shifts.iter().fold(WeylOp::one(), |acc, c| {
        &acc * &(&del_lam + &WeylOp::constant(c.clone()))
    });
    let q = &WeylOp::monomial(Rational::one(), 0, d as usize) - &q_prod.scale(&gamma);
    let rhs_gamma = pow(&int(d as i64), d as i64) * &gamma;
    let rhs = make_hyp(rhs_gamma, w.weight_fractions(), ExpMultiset::empty(), false)?;
    Ok(FtPair {
        p,
        q,
        pullback_degree: d,
        rhs,
    })
}
