//! Jacobian syzygies of f = x₁^{w₁}⋯xₙ^{wₙ}(x₁+⋯+xₙ)^{w₀}.

mod linalg;
mod poly;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

pub use linalg::{rank, Echelon, Row};
pub use poly::{monomials_of_degree, Monomial, MultiPoly, PolyError};

use crate::dwork::Weights;
use crate::rational::int;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyzygyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("quotient for the ({i},{j}) syzygy is {got}, expected {expected}")]
    KoszulMismatch {
        i: usize,
        j: usize,
        got: String,
        expected: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SyzygyKind {
    Euler,
    Koszul(usize, usize),
}

impl fmt::Display for SyzygyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyzygyKind::Euler => f.write_str("euler"),
            SyzygyKind::Koszul(i, j) => write!(f, "koszul({i},{j})"),
        }
    }
}

/// Coefficients paired with (f, f′₁, …, f′ₙ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub components: Vec<MultiPoly>,
    pub kind: SyzygyKind,
}

impl SyzygyVector {
    pub fn dot(&self, generators: &[MultiPoly]) -> MultiPoly {
        let nv = generators[0].nvars();
        self.components
            .iter()
            .zip(generators)
            .fold(MultiPoly::zero(nv), |acc, (a, g)| &acc + &(a * g))
    }
}

/// The product f; with `homogeneous` off, the affine form x^w·(1 − σ)^{w₀}.
pub fn family_poly(w: &Weights, homogeneous: bool) -> MultiPoly {
    let n = w.n();
    let ws = w.as_slice();
    let mut exps = vec![0u32; n];
    for i in 0..n {
        exps[i] = ws[i + 1] as u32;
    }
    let mono = MultiPoly::term(int(1), Monomial(exps));
    let base = if homogeneous {
        MultiPoly::sigma(n)
    } else {
        &MultiPoly::one(n) - &MultiPoly::sigma(n)
    };
    &mono * &base.pow(ws[0] as u32)
}

/// (f, f′₁, …, f′ₙ)
pub fn jacobian_generators(w: &Weights) -> Vec<MultiPoly> {
    let f = family_poly(w, true);
    let mut out = vec![f.clone()];
    out.extend((1..=w.n()).map(|i| f.partial(i)));
    out
}

/// lᵢ = wᵢσ + w₀xᵢ
pub fn l_factor(w: &Weights, i: usize) -> MultiPoly {
    let n = w.n();
    let ws = w.as_slice();
    &MultiPoly::sigma(n).scale(&int(ws[i] as i64)) + &MultiPoly::var(n, i).scale(&int(ws[0] as i64))
}

/// Euler vector first, then Koszul(i, j) for i < j in lexicographic order.
pub fn syzygy_generators(w: &Weights) -> Result<Vec<SyzygyVector>, SyzygyError> {
    let n = w.n();
    let gens = jacobian_generators(w);
    let f = &gens[0];
    let sigma = MultiPoly::sigma(n);

    let mut euler = vec![MultiPoly::constant(n, -int(w.d() as i64))];
    euler.extend((1..=n).map(|i| MultiPoly::var(n, i)));
    let mut out = vec![SyzygyVector {
        components: euler,
        kind: SyzygyKind::Euler,
    }];

    for i in 1..=n {
        for j in i + 1..=n {
            let xij_sigma = &(&MultiPoly::var(n, i) * &MultiPoly::var(n, j)) * &sigma;
            let slot_i = (&xij_sigma * &gens[j]).exact_divide(f)?;
            let slot_j = (&xij_sigma * &gens[i]).exact_divide(f)?;
            for (got, a, b) in [(&slot_i, i, j), (&slot_j, j, i)] {
                let expected = &MultiPoly::var(n, a) * &l_factor(w, b);
                if *got != expected {
                    return Err(SyzygyError::KoszulMismatch {
                        i,
                        j,
                        got: got.render(),
                        expected: expected.render(),
                    });
                }
            }
            let mut comps = vec![MultiPoly::zero(n); n + 1];
            comps[i] = slot_i;
            comps[j] = -&slot_j;
            out.push(SyzygyVector {
                components: comps,
                kind: SyzygyKind::Koszul(i, j),
            });
        }
    }
    Ok(out)
}

pub fn verify_syzygies(w: &Weights) -> bool {
    let gens = jacobian_generators(w);
    match syzygy_generators(w) {
        Ok(s) => s.iter().all(|v| v.dot(&gens).is_zero()),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    /// Degree of a₀f + Σ aᵢf′ᵢ.
    pub degree: u32,
    pub kernel: usize,
    pub span: usize,
}

/// Syzygy-space and generated-span dimensions for every degree from d − 1 up to
/// `degree_bound`. Below d − 1 both are zero.
pub fn generation_dims(w: &Weights, degree_bound: u32) -> Vec<DegreeDims> {
    let n = w.n();
    let d = w.d() as u32;
    let gens = jacobian_generators(w);
    let syz = syzygy_generators(w).expect("syzygy generators must divide exactly");
    let slot_shift = |slot: usize| if slot == 0 { 0 } else { 1 };

    let mut out = Vec::new();
    for m in d.saturating_sub(1)..=degree_bound {
        // unknown coordinates: (slot, monomial of the coefficient)
        let mut coord: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut columns = Vec::new();
        for slot in 0..=n {
            let Some(k) = (m + slot_shift(slot)).checked_sub(d) else {
                continue;
            };
            for u in monomials_of_degree(n, k) {
                coord.insert((slot, u.clone()), columns.len());
                columns.push((slot, u));
            }
        }

        let targets: HashMap<Monomial, usize> = monomials_of_degree(n, m)
            .into_iter()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();
        let image_rank = rank(columns.iter().map(|(slot, u)| {
            gens[*slot]
                .mul_monomial(u)
                .terms()
                .map(|(t, c)| (targets[t], c.clone()))
                .collect::<Row>()
        }));
        let kernel = columns.len() - image_rank;

        let mut span = Echelon::new();
        for s in &syz {
            // every nonzero component of s has degree slot_shift(slot) + deg
            let sdeg = s
                .components
                .iter()
                .enumerate()
                .find_map(|(slot, c)| c.degree().map(|dg| dg + d - slot_shift(slot)))
                .expect("syzygy has a nonzero component");
            let Some(k) = m.checked_sub(sdeg) else {
                continue;
            };
            for g in monomials_of_degree(n, k) {
                let mut row = Row::new();
                for (slot, c) in s.components.iter().enumerate() {
                    for (t, a) in c.mul_monomial(&g).terms() {
                        row.insert(coord[&(slot, t.clone())], a.clone());
                    }
                }
                span.insert(row);
            }
        }
        out.push(DegreeDims {
            degree: m,
            kernel,
            span: span.rank(),
        });
    }
    out
}

pub fn generation_oracle(w: &Weights, degree_bound: u32) -> bool {
    generation_dims(w, degree_bound)
        .iter()
        .all(|r| r.kernel == r.span)
}

/// x^{w−eᵢ}σ^{w₀−1}lᵢ
pub fn factored_partial(w: &Weights, i: usize) -> MultiPoly {
    let n = w.n();
    let ws = w.as_slice();
    let mut exps: Vec<u32> = ws[1..].iter().map(|&x| x as u32).collect();
    exps[i - 1] -= 1;
    let mono = MultiPoly::term(int(1), Monomial(exps));
    &(&mono * &MultiPoly::sigma(n).pow(ws[0] as u32 - 1)) * &l_factor(w, i)
}
