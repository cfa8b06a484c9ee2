//! Incremental row echelon form for sparse vectors.

use std::collections::BTreeMap;

use super::field::FieldElement;
use super::ScalarError;

pub type SparseVec = BTreeMap<usize, FieldElement>;

/// A growing set of linearly independent sparse vectors, kept in echelon
/// form: every stored row has coefficient 1 at its pivot (its smallest
/// index) and no two rows share a pivot.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` modulo the span. Zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> Result<SparseVec, ScalarError> {
        v.retain(|_, x| !x.is_zero());
        let mut cursor = 0;
        while let Some((&k, c)) = v.range(cursor..).next() {
            cursor = k + 1;
            let Some(row) = self.rows.get(&k) else {
                continue;
            };
            let c = c.clone();
            for (&j, r) in row {
                let t = c.try_mul(r)?;
                let slot = v.entry(j).or_insert_with(|| t.zero_like());
                *slot = slot.try_sub(&t)?;
                if slot.is_zero() {
                    v.remove(&j);
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: SparseVec) -> Result<bool, ScalarError> {
        Ok(self.reduce(v)?.is_empty())
    }

    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool, ScalarError> {
        let r = self.reduce(v)?;
        let Some((&p, lead)) = r.iter().next() else {
            return Ok(false);
        };
        let inv = lead.inv()?;
        let row = r
            .iter()
            .map(|(&j, x)| x.try_mul(&inv).map(|y| (j, y)))
            .collect::<Result<SparseVec, _>>()?;
        self.rows.insert(p, row);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn vec_of(f: &Field, xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(i, c)| (i, f.from_int(c))).collect()
    }

    #[test]
    fn detects_dependence() {
        let f = Field::rational();
        let mut e = SparseEchelon::new();
        assert!(e.insert(vec_of(&f, &[(0, 1), (2, 3)])).unwrap());
        assert!(e.insert(vec_of(&f, &[(0, 2), (1, 1)])).unwrap());
        // 2·v1 + v2 and 4·v1 − 2·v2
        assert!(!e.insert(vec_of(&f, &[(0, 4), (1, 1), (2, 6)])).unwrap());
        assert!(e.contains(vec_of(&f, &[(1, -2), (2, 12)])).unwrap());
        assert!(!e.contains(vec_of(&f, &[(2, 1)])).unwrap());
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots().collect::<Vec<_>>(), vec![0, 1]);
    }
}
