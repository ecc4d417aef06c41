//! From a weight tuple to the structure of the invariant Gauss–Manin
//! cohomology of the associated Dwork family.

mod ft;
mod gblock;
mod report;
mod tables;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

pub use ft::{ft_pair, FtPair};
pub use gblock::{g_block, ExactSequence, GBlock, GHyp};
pub use report::{full_report, wrap_pushforward, Check, FtSummary, GMReport, InvariantStatement};
pub use tables::{coarse_rank_bounds_hold, k_table, m_table, CohomologyTable, TopExtension};

use crate::hypergeom::{make_hyp, ExpMultiset, HypError, HypModule};
use crate::rational::{exact_root, int, pow, rat, Rational};
use crate::upoly::UPoly;
use crate::weyl::WeylError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DworkError {
    #[error("need at least two weights, got {0}")]
    TooFewWeights(usize),
    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(i64),
    #[error("weights {0} share the common factor {1}")]
    NonPrimitive(Weights, u64),
    #[error("this table needs at least three weights (n >= 2)")]
    NeedTwoVariables,
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Weight tuple (w₀, …, wₙ) with all wᵢ ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weights {
    w: Vec<u64>,
}

impl Weights {
    pub fn new(raw: &[i64]) -> Result<Self, DworkError> {
        if raw.len() < 2 {
            return Err(DworkError::TooFewWeights(raw.len()));
        }
        if let Some(&bad) = raw.iter().find(|&&x| x < 1) {
            return Err(DworkError::NonPositiveWeight(bad));
        }
        Ok(Weights {
            w: raw.iter().map(|&x| x as u64).collect(),
        })
    }

    pub fn from_u64(raw: &[u64]) -> Result<Self, DworkError> {
        let v: Vec<i64> = raw.iter().map(|&x| x as i64).collect();
        Self::new(&v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.w
    }

    /// Number of affine variables; the tuple has n + 1 entries.
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn d(&self) -> u64 {
        self.w.iter().sum()
    }

    /// w₀ + ⋯ + w_r
    pub fn d_prefix(&self, r: usize) -> u64 {
        self.w[..=r].iter().sum()
    }

    /// gcd(w₀, …, w_r)
    pub fn e_prefix(&self, r: usize) -> u64 {
        self.w[..=r].iter().fold(0, |g, &x| g.gcd(&x))
    }

    pub fn e(&self) -> u64 {
        self.e_prefix(self.n())
    }

    pub fn is_primitive(&self) -> bool {
        self.e() == 1
    }

    /// w / k; `k` must divide every weight.
    pub fn divided(&self, k: u64) -> Weights {
        Weights {
            w: self.w.iter().map(|x| x / k).collect(),
        }
    }

    pub fn scaled(&self, k: u64) -> Weights {
        Weights {
            w: self.w.iter().map(|x| x * k).collect(),
        }
    }

    pub fn sorted(&self) -> Weights {
        let mut w = self.w.clone();
        w.sort_unstable();
        Weights { w }
    }

    /// {j/wᵢ : i = 0..n, j = 1..wᵢ}
    pub fn weight_fractions(&self) -> ExpMultiset {
        self.w
            .iter()
            .flat_map(|&wi| (1..=wi).map(move |j| rat(j as i64, wi as i64)))
            .collect()
    }

    /// {k/d : k = 1..d}
    pub fn degree_fractions(&self) -> ExpMultiset {
        let d = self.d() as i64;
        (1..=d).map(|k| rat(k, d)).collect()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.w.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// d^{−d}·∏ wᵢ^{wᵢ}
pub fn gamma_n(w: &Weights) -> Rational {
    let d = w.d() as i64;
    w.as_slice().iter().fold(pow(&int(d), -d), |acc, &wi| {
        acc * pow(&int(wi as i64), wi as i64)
    })
}

/// The parameters λ with γλ^d = 1, described by the monic polynomial
/// λ^d − 1/γ and its rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFibers {
    pub poly: UPoly,
    pub rational_roots: Vec<Rational>,
}

pub fn singular_fibers(w: &Weights) -> SingularFibers {
    fibers_for(&gamma_n(w), w.d())
}

fn fibers_for(gamma: &Rational, d: u64) -> SingularFibers {
    let target = gamma.recip();
    let poly = &UPoly::monomial(Rational::one(), d as usize) - &UPoly::constant(target.clone());
    let mut rational_roots = Vec::new();
    if let Some(r) = exact_root(&target.abs(), d as u32) {
        if target.is_positive() {
            if d % 2 == 0 {
                rational_roots.push(-r.clone());
            }
            rational_roots.push(r);
        } else if d % 2 == 1 {
            rational_roots.push(-r);
        }
    }
    SingularFibers {
        poly,
        rational_roots,
    }
}

/// Classes k/d, 0 < k < d, that equal some j/wᵢ with 0 < j < wᵢ; each once.
pub fn c_set(w: &Weights) -> ExpMultiset {
    let d = w.d();
    let mut set = BTreeSet::new();
    for &wi in w.as_slice() {
        for j in 1..wi {
            if (d * j) % wi == 0 {
                set.insert(rat(j as i64, wi as i64));
            }
        }
    }
    set.into_iter().collect()
}

/// H_γ(cancel({j/wᵢ} ; {k/d})) for primitive weights.
pub fn invariant_hyp(w: &Weights) -> Result<HypModule, DworkError> {
    if !w.is_primitive() {
        return Err(DworkError::NonPrimitive(w.clone(), w.e()));
    }
    Ok(make_hyp(
        gamma_n(w),
        w.weight_fractions(),
        w.degree_fractions(),
        true,
    )?)
}
