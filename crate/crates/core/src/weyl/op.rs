use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::LaurentPoly;
use crate::rational::{binomial, int, Rational};

/// Σ p_k(λ)·∂^k with every ∂ to the right of its coefficient.
///
/// `coeffs[k]` is p_k; the vector is trimmed so the last entry is nonzero,
/// which makes the representation of each operator unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeylOp {
    coeffs: Vec<LaurentPoly>,
}

impl WeylOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![LaurentPoly::constant(c)])
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::from_coeffs(vec![p])
    }

    /// c·λ^j·∂^k
    pub fn monomial(c: Rational, j: i64, k: usize) -> Self {
        let mut v = vec![LaurentPoly::zero(); k + 1];
        v[k] = LaurentPoly::monomial(c, j);
        Self::from_coeffs(v)
    }

    pub fn lambda() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn lambda_pow(j: i64) -> Self {
        Self::monomial(Rational::one(), j, 0)
    }

    pub fn del() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// The Euler operator D = λ∂.
    pub fn euler() -> Self {
        Self::monomial(Rational::one(), 1, 1)
    }

    /// D − a
    pub fn euler_shift(a: &Rational) -> Self {
        &Self::euler() - &Self::constant(a.clone())
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        WeylOp { coeffs }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in ∂; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of the highest ∂-power.
    pub fn leading(&self) -> LaurentPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// `true` when no coefficient involves λ⁻¹.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_polynomial)
    }

    /// All monomials as (λ-exponent, ∂-exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().map(move |(j, c)| (j, k, c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Product of `(D - a)` over the given roots, in order.
    pub fn euler_product<'a, I: IntoIterator<Item = &'a Rational>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, a| &acc * &Self::euler_shift(a))
    }
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOp::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WeylOp::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.scale(&-Rational::one())
    }
}

/// Normal ordering uses ∂^i·b = Σ_l C(i,l) b^{(l)} ∂^{i−l}.
impl Mul for &WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        if self.is_zero() || rhs.is_zero() {
            return WeylOp::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, b) in rhs.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut deriv = b.clone();
            for l in 0..self.coeffs.len() {
                if deriv.is_zero() {
                    break;
                }
                for (i, a) in self.coeffs.iter().enumerate().skip(l) {
                    if a.is_zero() {
                        continue;
                    }
                    let t = &(a * &deriv).scale(&int(binomial(i as i64, l as i64) as i64));
                    out[i - l + j] = &out[i - l + j] + t;
                }
                deriv = deriv.derivative();
            }
        }
        WeylOp::from_coeffs(out)
    }
}
