use std::fmt;

use num_traits::One;

use super::{c_set, gamma_n, invariant_hyp, DworkError, Weights};
use crate::hypergeom::{
    euler_char, power_pushforward_list, pushed_exponents, ExpMultiset, Factor, FactorList,
    HypModule,
};
use crate::rational::Rational;

/// The hypergeometric constituent of the degree-zero block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GHyp {
    Direct(HypModule),
    /// [e]_+ of the module attached to w/e. No γ is asserted for the pushforward itself.
    Pushed {
        e: u64,
        base: HypModule,
    },
}

impl GHyp {
    pub fn as_factor(&self) -> Factor {
        match self {
            GHyp::Direct(h) => Factor::Hyp(h.clone()),
            GHyp::Pushed { e, base } => Factor::PushedHyp {
                e: *e,
                base: base.clone(),
            },
        }
    }

    /// The irreducible module the operator-level checks run on.
    pub fn underlying(&self) -> &HypModule {
        match self {
            GHyp::Direct(h) | GHyp::Pushed { base: h, .. } => h,
        }
    }

    pub fn pushforward_degree(&self) -> u64 {
        match self {
            GHyp::Direct(_) => 1,
            GHyp::Pushed { e, .. } => *e,
        }
    }

    pub fn alpha(&self) -> ExpMultiset {
        pushed_exponents(&self.underlying().alpha, self.pushforward_degree())
    }

    pub fn beta(&self) -> ExpMultiset {
        pushed_exponents(&self.underlying().beta, self.pushforward_degree())
    }
}

impl fmt::Display for GHyp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_factor())
    }
}

/// 0 → left → middle → right → 0. Whether it splits is not claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    pub left: String,
    pub middle: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBlock {
    pub rank: u64,
    pub c_set: ExpMultiset,
    pub hyp: GHyp,
    pub exps_zero: ExpMultiset,
    pub exps_infinity: ExpMultiset,
    pub finite_singularity: Rational,
    pub chi: i64,
    /// Kummer composition factors indexed by `c_set`.
    pub kummer_factors: FactorList,
    pub sequences: Vec<ExactSequence>,
}

impl GBlock {
    /// All composition factors: the hypergeometric one plus the Kummer ones.
    pub fn factor_list(&self) -> FactorList {
        let mut l = FactorList::new(vec![self.hyp.as_factor()]);
        l.extend(&self.kummer_factors);
        l
    }
}

fn sequences(hyp: &GHyp, kummer: &FactorList, quotient: &FactorList) -> Vec<ExactSequence> {
    vec![
        ExactSequence {
            left: "G".into(),
            middle: "H^0 K".into(),
            right: quotient.to_string(),
        },
        ExactSequence {
            left: hyp.to_string(),
            middle: "G".into(),
            right: kummer.to_string(),
        },
    ]
}

/// Quotient of H⁰K by G: ⊕_{a=1}^{e} K_{a/e}^n.
pub(crate) fn constant_quotient(w: &Weights) -> FactorList {
    let e = w.e() as i64;
    let mut out = FactorList::empty();
    for a in 1..=e {
        for _ in 0..w.n() {
            out.push(Factor::kummer(&crate::rational::rat(a, e)));
        }
    }
    out
}

pub fn g_block(w: &Weights) -> Result<GBlock, DworkError> {
    let e = w.e();
    if e > 1 {
        return pushed_block(&g_block(&w.divided(e))?, e, w);
    }
    let hyp = GHyp::Direct(invariant_hyp(w)?);
    let c = c_set(w);
    let mut exps_zero = w.weight_fractions();
    exps_zero.remove_class(&Rational::one());
    let mut exps_infinity = w.degree_fractions();
    exps_infinity.remove_class(&Rational::one());
    let kummer_factors: FactorList = c.values().iter().map(Factor::kummer).collect();
    let mut block = GBlock {
        rank: w.d() - 1,
        c_set: c,
        hyp,
        exps_zero,
        exps_infinity,
        finite_singularity: gamma_n(w),
        chi: 0,
        kummer_factors,
        sequences: Vec::new(),
    };
    block.chi = euler_char(&block.factor_list())?;
    block.sequences = sequences(&block.hyp, &block.kummer_factors, &constant_quotient(w));
    Ok(block)
}

/// Block for w = e·base_w, obtained by pushing the base block forward along z ↦ z^e.
pub(crate) fn pushed_block(base: &GBlock, e: u64, w: &Weights) -> Result<GBlock, DworkError> {
    let hyp = match &base.hyp {
        GHyp::Direct(h) => GHyp::Pushed { e, base: h.clone() },
        GHyp::Pushed { e: e0, base } => GHyp::Pushed {
            e: e0 * e,
            base: base.clone(),
        },
    };
    let kummer_factors = power_pushforward_list(&base.kummer_factors, e)?;
    let mut block = GBlock {
        rank: w.d() - e,
        c_set: pushed_exponents(&base.c_set, e),
        hyp,
        exps_zero: pushed_exponents(&base.exps_zero, e),
        exps_infinity: pushed_exponents(&base.exps_infinity, e),
        finite_singularity: gamma_n(w),
        chi: 0,
        kummer_factors,
        sequences: Vec::new(),
    };
    block.chi = euler_char(&block.factor_list())?;
    block.sequences = sequences(&block.hyp, &block.kummer_factors, &constant_quotient(w));
    Ok(block)
}
