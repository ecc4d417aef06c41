use std::collections::BTreeMap;

use super::gblock::constant_quotient;
use super::{DworkError, Weights};
use crate::hypergeom::{Factor, FactorList};
use crate::rational::{binomial, rat};

/// Degree-zero entry that is an extension rather than a plain sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopExtension {
    /// Rank of the nonconstant sub-block G.
    pub sub_rank: u64,
    pub quotient: FactorList,
}

/// Degree ↦ composition factors, supported on `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub lo: i64,
    pub hi: i64,
    pub sums: BTreeMap<i64, FactorList>,
    pub top: Option<TopExtension>,
}

impl CohomologyTable {
    /// Generic rank in degree `i`.
    pub fn rank_at(&self, i: i64) -> u64 {
        let mut r = self.sums.get(&i).map_or(0, |l| l.len() as u64);
        if i == self.hi {
            if let Some(t) = &self.top {
                r += t.sub_rank + t.quotient.len() as u64;
            }
        }
        r
    }

    /// Every stored degree lies inside the window.
    pub fn within_window(&self) -> bool {
        self.sums.keys().all(|i| (self.lo..=self.hi).contains(i))
    }

    /// Structure-sheaf summands in degree `i`, counting the extension's quotient.
    pub fn structure_count(&self, i: i64) -> u64 {
        let mut c = self.sums.get(&i).map_or(0, |l| l.structure_count() as u64);
        if i == self.hi {
            if let Some(t) = &self.top {
                c += t.quotient.structure_count() as u64;
            }
        }
        c
    }
}

/// ⊕_{a=1}^{e} K_{a/e}^{mult}
fn kummer_block(e: u64, mult: u64) -> FactorList {
    let mut out = FactorList::empty();
    for a in 1..=e as i64 {
        for _ in 0..mult {
            out.push(Factor::kummer(&rat(a, e as i64)));
        }
    }
    out
}

/// Cohomology of K: ⊕K_{a/e}^{C(n, i+n−1)} in degree i < 0, and in degree 0
/// the extension of ⊕K_{a/e}^n by G.
pub fn k_table(w: &Weights) -> CohomologyTable {
    let n = w.n() as i64;
    let e = w.e();
    let mut sums = BTreeMap::new();
    for i in -(n - 1)..=-1 {
        sums.insert(i, kummer_block(e, binomial(n, i + n - 1)));
    }
    CohomologyTable {
        lo: -(n - 1),
        hi: 0,
        sums,
        top: Some(TopExtension {
            sub_rank: w.d() - e,
            quotient: constant_quotient(w),
        }),
    }
}

/// Cohomology of M, built from the first n weights: d' = d − wₙ, e' = e_{n−1}.
pub fn m_table(w: &Weights) -> Result<CohomologyTable, DworkError> {
    let n = w.n() as i64;
    if n < 2 {
        return Err(DworkError::NeedTwoVariables);
    }
    let d_prev = w.d_prefix(w.n() - 1);
    let e_prev = w.e_prefix(w.n() - 1);
    let mut sums = BTreeMap::new();
    for i in -(n - 2)..=-1 {
        sums.insert(i, kummer_block(e_prev, binomial(n - 1, i + n - 2)));
    }
    let mut top = kummer_block(e_prev, (n - 2) as u64);
    top.extend(&kummer_block(d_prev, 1));
    sums.insert(0, top);
    Ok(CohomologyTable {
        lo: -(n - 2),
        hi: 0,
        sums,
        top: None,
    })
}

/// The coarser rank statements available before the sharp table, checked
/// against it: the constant quotient of rank n in degree 0, the bounds
/// C(n, i+n−1) ± 1 in negative degrees, and the paired sums C(n+1, i+n−1).
pub fn coarse_rank_bounds_hold(w: &Weights, table: &CohomologyTable) -> bool {
    if !w.is_primitive() {
        return true;
    }
    let n = w.n() as i64;
    let quotient_ok = table
        .top
        .as_ref()
        .is_some_and(|t| t.quotient.len() as i64 == n && t.quotient.structure_count() as i64 == n);
    let rk = |i: i64| table.rank_at(i) as i64;
    let bounds_ok = (-(n - 1)..=-1).all(|i| {
        let c = binomial(n, i + n - 1) as i64;
        (c - 1..=c + 1).contains(&rk(i))
    });
    let top_ok = n < 2 || rk(-1) <= binomial(n, n - 2) as i64 + 1;
    let pairs_ok = (-(n - 2)..=-1)
        .filter(|i| (i + n) % 2 != 0)
        .all(|i| rk(i - 1) + rk(i) == binomial(n + 1, i + n - 1) as i64);
    quotient_ok && bounds_ok && top_ok && pairs_ok
}
