//! Cohomology dimensions of the hyperplane arrangements met along the way,
//! in closed form and through matroid combinatorics.
//!
//! Closed-form tables use the shifted convention of direct images: a variety
//! of dimension m has its cohomology in degrees −m..=m. Oracle tables are
//! classical Betti numbers; `DimensionTable::shifted` converts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dwork::{m_table, DworkError, Weights};
use crate::rational::binomial;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("need n >= 2, got {0}")]
    TooSmall(i64),
    #[error(transparent)]
    Dwork(#[from] DworkError),
}

/// Degree ↦ dimension. Zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DimensionTable {
    dims: BTreeMap<i64, u64>,
}

impl DimensionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, degree: i64, dim: u64) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(&i, &d)| (i, d))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries()
            .map(|(i, d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Degree i moves to i − by.
    pub fn shifted(&self, by: i64) -> Self {
        DimensionTable {
            dims: self.dims.iter().map(|(&i, &d)| (i - by, d)).collect(),
        }
    }
}

impl FromIterator<(i64, u64)> for DimensionTable {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut t = Self::new();
        for (i, d) in iter {
            t.set(i, t.get(i) + d);
        }
        t
    }
}

fn need_two(n: i64) -> Result<(), ArrangementError> {
    if n < 2 {
        Err(ArrangementError::TooSmall(n))
    } else {
        Ok(())
    }
}

/// Local cohomology of ℙ^{n−1} along x₁⋯xₙ(x₁+⋯+xₙ) = 0, degrees −(n−2)..=1.
pub fn local_cohomology_dims(n: i64) -> Result<DimensionTable, ArrangementError> {
    need_two(n)?;
    Ok((-(n - 2)..=1)
        .map(|i| {
            let c = binomial(n, i + n - 2);
            (i, if (i + n) % 2 == 0 { c } else { c + 1 })
        })
        .collect())
}

/// Milnor fiber of a generic central arrangement of n + 1 hyperplanes in
/// 𝔸ⁿ with the given multiplicities.
pub fn milnor_fiber_dims(w: &Weights) -> Result<DimensionTable, ArrangementError> {
    let n = w.n() as i64;
    need_two(n)?;
    if !w.is_primitive() {
        return Err(DworkError::NonPrimitive(w.clone(), w.e()).into());
    }
    let mut t: DimensionTable = (-(n - 1)..=-1)
        .map(|i| (i, binomial(n, i + n - 1)))
        .collect();
    t.set(0, (n + w.d() as i64 - 1) as u64);
    Ok(t)
}

/// {x ∈ 𝔾ₘ^{n−1} : x₁+⋯+x_{n−1} ≠ 0}
pub fn tn_dims(n: i64) -> Result<DimensionTable, ArrangementError> {
    need_two(n)?;
    let mut t: DimensionTable = (-(n - 1)..=-1)
        .map(|i| (i, binomial(n, i + n - 1)))
        .collect();
    t.set(0, (n - 1) as u64);
    Ok(t)
}

/// Betti numbers of ℙᵐ.
pub fn projective_space_betti(m: i64) -> DimensionTable {
    (0..=m).map(|k| (2 * k, 1)).collect()
}

const MAX_ELEMENTS: usize = 20;

fn popcount(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Betti numbers of the complement of a central arrangement in general
/// position: `num_hyperplanes` through the origin of 𝔸^{ambient_dim}, any
/// `ambient_dim` of them independent. Counts no-broken-circuit sets of the
/// uniform matroid by size.
pub fn central_oracle(num_hyperplanes: usize, ambient_dim: usize) -> DimensionTable {
    let n = num_hyperplanes;
    assert!(n <= MAX_ELEMENTS, "at most {MAX_ELEMENTS} hyperplanes");
    let r = n.min(ambient_dim);
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    // circuits are the (r+1)-subsets; drop the least element of each
    let broken: Vec<u32> = (0..=all)
        .filter(|&c| popcount(c) == r + 1)
        .map(|c| c & (c - 1))
        .collect();

    let mut counts = vec![0u64; r + 1];
    for s in 0..=all {
        if popcount(s) > r {
            continue;
        }
        if broken.iter().any(|&b| b & s == b) {
            continue;
        }
        counts[popcount(s)] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| (k as i64, c))
        .collect()
}

/// Same Betti numbers from the Möbius function of the lattice of flats.
pub fn mobius_betti(num_hyperplanes: usize, ambient_dim: usize) -> DimensionTable {
    let n = num_hyperplanes;
    assert!(n <= MAX_ELEMENTS, "at most {MAX_ELEMENTS} hyperplanes");
    let r = n.min(ambient_dim);
    let all: u32 = (1u32 << n) - 1;
    // flats: the subsets of size < r, and the whole ground set
    let is_flat = |s: u32| popcount(s) < r || s == all;
    let rank = |s: u32| popcount(s).min(r);

    let mut flats: Vec<u32> = (0..=all).filter(|&s| is_flat(s)).collect();
    flats.sort_by_key(|&s| popcount(s));
    let mut mu: BTreeMap<u32, i64> = BTreeMap::new();
    for &x in &flats {
        let m = if x == 0 {
            1
        } else {
            // proper subflats of x
            let mut sum = 0;
            let mut y = (x - 1) & x;
            loop {
                if is_flat(y) {
                    sum += mu[&y];
                }
                if y == 0 {
                    break;
                }
                y = (y - 1) & x;
            }
            -sum
        };
        mu.insert(x, m);
    }
    flats
        .iter()
        .map(|&x| (rank(x) as i64, mu[&x].unsigned_abs()))
        .collect()
}

/// Betti numbers of the complement of `num_hyperplanes` affine hyperplanes in
/// general position in 𝔸^{ambient_dim}: cone to a central arrangement one
/// dimension up, count, and divide the Poincaré polynomial by 1 + t.
pub fn nbc_oracle(num_hyperplanes: usize, ambient_dim: usize) -> DimensionTable {
    let cone = central_oracle(num_hyperplanes + 1, ambient_dim + 1);
    let top = cone.entries().map(|(i, _)| i).max().unwrap_or(0);
    let mut out = DimensionTable::new();
    let mut carry: i64 = 0;
    for k in 0..top {
        let b = cone.get(k) as i64 - carry;
        assert!(b >= 0, "cone polynomial is divisible by 1 + t");
        out.set(k, b as u64);
        carry = b;
    }
    assert_eq!(
        cone.get(top) as i64,
        carry,
        "cone polynomial is divisible by 1 + t"
    );
    out
}

/// Alternating sums on both sides of the triangle
/// RΓ_[A]𝒪 → 𝒪 → 𝒪(*A) over ℙ^{n−1}, as (local cohomology table, difference).
pub fn local_cohomology_euler_sides(n: i64) -> Result<(i64, i64), ArrangementError> {
    let lhs = local_cohomology_dims(n)?.euler_characteristic();
    let shift = n - 1;
    let proj = projective_space_betti(n - 1)
        .shifted(shift)
        .euler_characteristic();
    let complement = nbc_oracle(n as usize, (n - 1) as usize)
        .shifted(shift)
        .euler_characteristic();
    Ok((lhs, proj - complement))
}

/// Dimensions forced by the long exact sequence when 𝒪 → 𝒪(*A) is zero on
/// cohomology: for i + n odd in −(n−2)..=0, H^i is the previous complement
/// degree plus one and H^{i+1} the next one; for n even H¹ = n + 1.
pub fn les_fragments_hold(n: i64) -> Result<bool, ArrangementError> {
    let table = local_cohomology_dims(n)?;
    let shift = n - 1;
    let complement = nbc_oracle(n as usize, (n - 1) as usize).shifted(shift);
    let proj = projective_space_betti(n - 1).shifted(shift);
    let mut ok = true;
    for i in (-(n - 2)..=0).filter(|i| (i + n) % 2 != 0) {
        ok &= table.get(i) == complement.get(i - 1) + proj.get(i);
        ok &= proj.get(i + 1) == 0;
        ok &= table.get(i + 1) == complement.get(i);
    }
    if (1 + n) % 2 != 0 {
        ok &= table.get(1) == complement.get(0) + proj.get(1);
    }
    Ok(ok)
}

/// T_n is the complement of n central hyperplanes in 𝔸^{n−1}.
pub fn tn_matches_oracle(n: i64) -> Result<bool, ArrangementError> {
    Ok(tn_dims(n)? == central_oracle(n as usize, (n - 1) as usize).shifted(n - 1))
}

/// Global cohomology of M read off its table: only the 𝒪 summands contribute,
/// each in degrees −1 and 0.
pub fn m_global_dims(w: &Weights) -> Result<DimensionTable, ArrangementError> {
    let t = m_table(w)?;
    let c = |i: i64| t.structure_count(i);
    Ok((t.lo - 1..=t.hi).map(|i| (i, c(i) + c(i + 1))).collect())
}

pub fn tn_matches_m_table(w: &Weights) -> Result<bool, ArrangementError> {
    Ok(m_global_dims(w)? == tn_dims(w.n() as i64)?)
}

/// Milnor fiber table against the ranks of M one index up, built from w
/// followed by an extra weight.
pub fn milnor_matches_m_table(w: &Weights) -> Result<bool, ArrangementError> {
    let fiber = milnor_fiber_dims(w)?;
    let mut ext = w.as_slice().to_vec();
    ext.push(1);
    let m = m_table(&Weights::from_u64(&ext)?)?;
    let ranks: DimensionTable = (m.lo..=m.hi).map(|i| (i, m.rank_at(i))).collect();
    Ok(fiber == ranks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(v: &[(i64, u64)]) -> DimensionTable {
        v.iter().copied().collect()
    }

    fn w(v: &[i64]) -> Weights {
        Weights::new(v).unwrap()
    }

    #[test]
    fn local_cohomology_examples() {
        assert_eq!(local_cohomology_dims(2).unwrap(), table(&[(0, 1), (1, 3)]));
        assert_eq!(
            local_cohomology_dims(3).unwrap(),
            table(&[(-1, 1), (0, 4), (1, 3)])
        );
        assert_eq!(local_cohomology_dims(4).unwrap().get(-2), 1);
        assert_eq!(local_cohomology_dims(1), Err(ArrangementError::TooSmall(1)));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(
            milnor_fiber_dims(&w(&[1, 1, 1])).unwrap(),
            table(&[(-1, 1), (0, 4)])
        );
        assert_eq!(
            milnor_fiber_dims(&w(&[1, 1, 1, 1])).unwrap(),
            table(&[(-2, 1), (-1, 3), (0, 6)])
        );
        assert_eq!(
            milnor_fiber_dims(&w(&[2, 2, 1])).unwrap(),
            table(&[(-1, 1), (0, 6)])
        );
        assert!(matches!(
            milnor_fiber_dims(&w(&[2, 2, 2])),
            Err(ArrangementError::Dwork(DworkError::NonPrimitive(..)))
        ));
    }

    #[test]
    fn tn_examples() {
        assert_eq!(tn_dims(2).unwrap(), table(&[(-1, 1), (0, 1)]));
        assert_eq!(tn_dims(3).unwrap(), table(&[(-2, 1), (-1, 3), (0, 2)]));
        assert_eq!(tn_dims(5).unwrap().get(-4), 1);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(nbc_oracle(2, 1), table(&[(0, 1), (1, 2)]));
        assert_eq!(nbc_oracle(3, 2), table(&[(0, 1), (1, 3), (2, 3)]));
        assert_eq!(nbc_oracle(1, 4), table(&[(0, 1), (1, 1)]));
        assert_eq!(central_oracle(3, 2), table(&[(0, 1), (1, 3), (2, 2)]));
    }

    #[test]
    fn nbc_and_mobius_agree() {
        for n in 1..=9 {
            for l in 1..=8 {
                assert_eq!(central_oracle(n, l), mobius_betti(n, l), "{n} {l}");
            }
        }
    }

    #[test]
    fn fragments_and_tn() {
        for n in 2..=7 {
            assert!(les_fragments_hold(n).unwrap(), "n = {n}");
            assert!(tn_matches_oracle(n).unwrap(), "n = {n}");
        }
        assert!(tn_matches_m_table(&w(&[1, 2, 3])).unwrap());
        assert!(milnor_matches_m_table(&w(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn euler_sides_differ() {
        // n = 2: the table {0: 1, 1: 3} has χ = −2, the triangle gives −3
        assert_eq!(local_cohomology_euler_sides(2).unwrap(), (-2, -3));
        for n in 2..=7 {
            let (a, b) = local_cohomology_euler_sides(n).unwrap();
            assert_ne!(a, b, "n = {n}");
        }
    }
}
