//! Local data at 0 and ∞: indicial polynomials, singular points, regularity.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{WeylError, WeylOp};
use crate::factor::{factor, Factorization};
use crate::rational::{int, Rational};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Zero,
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Place::Zero => "zero",
            Place::Infinity => "infinity",
        })
    }
}

/// Monic polynomial in s whose roots are the local exponents at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialPolynomial {
    pub place: Place,
    pub poly: UPoly,
    pub factorization: Factorization,
}

impl IndicialPolynomial {
    /// Rational roots with multiplicity, ascending.
    pub fn roots(&self) -> Vec<Rational> {
        self.factorization.rational_roots()
    }

    /// Irreducible factors of degree ≥ 2 (irrational exponents), with multiplicity.
    pub fn irrational_factors(&self) -> Vec<(UPoly, usize)> {
        self.factorization.nonlinear()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// Expansion op = Σ_m λ^m q_m(D), keyed by m.
pub fn euler_expansion(op: &WeylOp) -> BTreeMap<i64, UPoly> {
    let mut out: BTreeMap<i64, UPoly> = BTreeMap::new();
    let mut fall = vec![UPoly::one()];
    for (j, k, c) in op.terms() {
        while fall.len() <= k {
            let i = fall.len() - 1;
            let next = &fall[i] * &UPoly::linear_root(&int(i as i64));
            fall.push(next);
        }
        let m = j - k as i64;
        let e = out.entry(m).or_default();
        *e = &*e + &fall[k].scale(c);
    }
    out.retain(|_, q| !q.is_zero());
    out
}

fn lowest_part(op: &WeylOp) -> Result<UPoly, WeylError> {
    let exp = euler_expansion(op);
    let (_, q) = exp.into_iter().next().ok_or(WeylError::ZeroOperator)?;
    Ok(q.monic())
}

/// Indicial polynomial at 0 or ∞. At ∞ the roots are reported with the
/// module convention, so that `D − a` has exponent `a` at both places.
pub fn indicial_polynomial(op: &WeylOp, place: Place) -> Result<IndicialPolynomial, WeylError> {
    let poly = match place {
        Place::Zero => lowest_part(op)?,
        Place::Infinity => top_euler_part(op)?,
    };
    let factorization = factor(&poly);
    Ok(IndicialPolynomial {
        place,
        poly,
        factorization,
    })
}

/// Highest λ-graded part of the Euler expansion, made monic. Under λ ↦ 1/λ
/// it becomes the lowest part with s ↦ −s, so this is the indicial
/// polynomial at ∞ in the module convention.
pub fn top_euler_part(op: &WeylOp) -> Result<UPoly, WeylError> {
    let exp = euler_expansion(op);
    let (_, q) = exp.into_iter().next_back().ok_or(WeylError::ZeroOperator)?;
    Ok(q.monic())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSupport {
    /// Distinct nonzero rational roots of the leading coefficient, ascending.
    pub rational_points: Vec<Rational>,
    /// Irreducible factors of degree ≥ 2 of the leading coefficient, with multiplicity.
    pub irreducible_factors: Vec<(UPoly, usize)>,
    pub regular_at_zero: bool,
    pub regular_at_infinity: bool,
}

/// Fuchs' criterion at λ = 0: ord(p_k) − k ≥ ord(p_r) − r for every k.
fn fuchsian_at_zero(op: &WeylOp) -> bool {
    let r = op.order().unwrap_or(0) as i64;
    let Some(top) = op.leading().order() else {
        return true;
    };
    op.coeffs()
        .iter()
        .enumerate()
        .all(|(k, p)| p.order().is_none_or(|o| o - k as i64 >= top - r))
}

/// Fuchs' criterion at λ = ∞: deg(p_k) − k ≤ deg(p_r) − r for every k.
fn fuchsian_at_infinity(op: &WeylOp) -> bool {
    let r = op.order().unwrap_or(0) as i64;
    let Some(top) = op.leading().degree() else {
        return true;
    };
    op.coeffs()
        .iter()
        .enumerate()
        .all(|(k, p)| p.degree().is_none_or(|g| g - k as i64 <= top - r))
}

pub fn singular_support(op: &WeylOp) -> Result<SingularSupport, WeylError> {
    if op.is_zero() {
        return Err(WeylError::ZeroOperator);
    }
    let lead = op.leading().stripped();
    let fac = factor(&lead);
    let mut rational_points: Vec<Rational> = fac
        .factors
        .iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeff(0))
        .filter(|r| !r.is_zero())
        .collect();
    rational_points.sort();
    Ok(SingularSupport {
        rational_points,
        irreducible_factors: fac.nonlinear(),
        regular_at_zero: fuchsian_at_zero(op),
        regular_at_infinity: fuchsian_at_infinity(op),
    })
}
