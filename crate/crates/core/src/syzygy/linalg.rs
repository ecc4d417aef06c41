//! Exact rank by incremental row echelon form over ℚ.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

/// Sparse row: column ↦ nonzero entry.
pub type Row = BTreeMap<usize, Rational>;

/// Rows are reduced against the stored pivots as they arrive; a row that
/// survives becomes a new pivot with leading entry 1.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns `true` if the row was independent of everything inserted so far.
    pub fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&col, lead)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = lead.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
    }
}

pub fn rank<I: IntoIterator<Item = Row>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
