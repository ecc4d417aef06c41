//! Ring substitutions: the Fourier transform and the change of coordinate
//! λ ↦ 1/λ.

use num_traits::One;

use super::{WeylError, WeylOp};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Images of λ, λ⁻¹ and ∂ under a ring map.
struct Images {
    lam: WeylOp,
    lam_inv: Option<WeylOp>,
    del: WeylOp,
}

fn substitute(op: &WeylOp, img: &Images) -> Result<WeylOp, WeylError> {
    let mut del_pows = vec![WeylOp::one()];
    let mut lam_pows = vec![WeylOp::one()];
    let mut inv_pows = vec![WeylOp::one()];
    let mut out = WeylOp::zero();
    for (j, k, c) in op.terms() {
        while del_pows.len() <= k {
            let next = del_pows.last().unwrap() * &img.del;
            del_pows.push(next);
        }
        let lam_part = if j >= 0 {
            let j = j as usize;
            while lam_pows.len() <= j {
                let next = lam_pows.last().unwrap() * &img.lam;
                lam_pows.push(next);
            }
            &lam_pows[j]
        } else {
            let inv = img.lam_inv.as_ref().ok_or(WeylError::NotPolynomial)?;
            let j = (-j) as usize;
            while inv_pows.len() <= j {
                let next = inv_pows.last().unwrap() * inv;
                inv_pows.push(next);
            }
            &inv_pows[j]
        };
        out = &out + &(lam_part * &del_pows[k]).scale(c);
    }
    Ok(out)
}

/// Forward: λ ↦ ∂, ∂ ↦ −λ. Inverse: λ ↦ −∂, ∂ ↦ λ.
///
/// Only defined on the unlocalized algebra; operators with λ⁻¹ are rejected.
pub fn fourier(op: &WeylOp, dir: Direction) -> Result<WeylOp, WeylError> {
    if !op.is_polynomial() {
        return Err(WeylError::NotPolynomial);
    }
    let img = match dir {
        Direction::Forward => Images {
            lam: WeylOp::del(),
            lam_inv: None,
            del: -&WeylOp::lambda(),
        },
        Direction::Inverse => Images {
            lam: -&WeylOp::del(),
            lam_inv: None,
            del: WeylOp::lambda(),
        },
    };
    substitute(op, &img)
}

/// Rewrite in the coordinate μ = 1/λ: λ ↦ μ⁻¹, ∂_λ ↦ −μ²∂_μ (so D_λ ↦ −D_μ).
/// The result is again written with the letters λ, ∂.
pub fn mobius_infinity(op: &WeylOp) -> WeylOp {
    let img = Images {
        lam: WeylOp::lambda_pow(-1),
        lam_inv: Some(WeylOp::lambda()),
        del: WeylOp::monomial(-Rational::one(), 2, 1),
    };
    substitute(op, &img).expect("inverse image supplied")
}

/// The constant in front of [`ft_sign`], calibrated once on the
/// two-variable tuple (1,1).
pub const FT_CALIBRATION: i64 = -1;

/// Sign `s` with `fourier(P, Inverse) = s·Q` for the operator pair of a
/// weight tuple of total degree `d`. The `(−1)^d` part comes from each of the
/// d Euler factors picking up a sign under the transform.
pub fn ft_sign(d: u64) -> Rational {
    let parity = if d % 2 == 0 { 1 } else { -1 };
    int(FT_CALIBRATION * parity)
}
