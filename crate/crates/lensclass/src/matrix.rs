//! Dense rectangular integer matrices. Entries are `i128` and every
//! arithmetic step is overflow-checked; the counts and unimodular factors
//! handled here stay far below that width, so a checked overflow is always a
//! logic error worth a loud panic.
//!
//! A matrix may carry two annotations: a block poset (upper-triangular
//! support constraint for the equivalence machinery) and a residue mask
//! marking positions whose value is only determined modulo a given modulus.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

/// Positions whose entries are normalized representatives modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueMask {
    pub modulus: u64,
    pub positions: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
    pub block_poset: Option<Poset>,
    pub residue_mask: Option<ResidueMask>,
}

fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer matrix arithmetic overflow")
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer matrix arithmetic overflow")
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            block_poset: None,
            residue_mask: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: i128) {
        let cur = self.get(i, j);
        self.set(i, j, checked_add(cur, v));
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Entries as a flat slice, row-major.
    pub fn flat(&self) -> &[i128] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_assign_at(i, j, checked_mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self - I`; requires a square matrix. Annotations are preserved.
    pub fn minus_identity(&self) -> IntMatrix {
        assert!(self.is_square(), "minus_identity on non-square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i);
            out.set(i, i, checked_add(v, -1));
        }
        out
    }

    /// Whether every nonzero off-diagonal entry sits at a poset-related
    /// position `i` below `j`.
    pub fn respects_poset(&self, poset: &Poset) -> bool {
        if !self.is_square() || self.rows != poset.size() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && self.get(i, j) != 0 && !poset.le(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Reverses both row and column order (entry `(i, j)` moves to
    /// `(n-1-j, n-1-i)` after the transpose); used to compare matrices that
    /// are mirror images of each other.
    pub fn anti_transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(self.cols - 1 - j, self.rows - 1 - i, self.get(i, j));
            }
        }
        out
    }

    /// Equality that treats masked positions as residue classes: masked
    /// entries compare modulo the mask modulus, everything else exactly.
    /// The mask is the union of both operands' masks.
    pub fn eq_with_mask(&self, other: &IntMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let masked = |m: &IntMatrix, i: usize, j: usize| {
            m.residue_mask
                .as_ref()
                .map_or(None, |mask| mask.positions.contains(&(i, j)).then_some(mask.modulus))
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                let b = other.get(i, j);
                match masked(self, i, j).or(masked(other, i, j)) {
                    Some(modulus) => {
                        if (a - b).rem_euclid(modulus as i128) != 0 {
                            return false;
                        }
                    }
                    None => {
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_identity() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let b = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_rows(), vec![vec![1, 3], vec![0, 1]]);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = IntMatrix::zero(2, 3);
        let b = IntMatrix::zero(2, 3);
        assert_eq!(a.mul(&b), Err(MatrixError::ShapeMismatch(2, 3, 2, 3)));
    }

    #[test]
    fn poset_support_check() {
        let p = Poset::from_relations(3, &[(0, 1)]).unwrap();
        let ok = IntMatrix::from_rows(&[vec![1, 5, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(ok.respects_poset(&p));
        let bad = IntMatrix::from_rows(&[vec![1, 0, 2], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(!bad.respects_poset(&p));
    }

    #[test]
    fn anti_transpose_is_involutive() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let j = a.anti_transpose();
        assert_eq!(j.get(0, 0), 9);
        assert_eq!(j.get(2, 2), 1);
        assert_eq!(j.anti_transpose(), a);
    }

    #[test]
    fn masked_equality_reduces_modulo() {
        let mut a = IntMatrix::from_rows(&[vec![1, 5], vec![0, 1]]);
        let b = IntMatrix::from_rows(&[vec![1, 13], vec![0, 1]]);
        assert!(!a.eq_with_mask(&b));
        a.residue_mask = Some(ResidueMask {
            modulus: 4,
            positions: [(0, 1)].into_iter().collect(),
        });
        assert!(a.eq_with_mask(&b));
        let c = IntMatrix::from_rows(&[vec![1, 12], vec![0, 1]]);
        assert!(!a.eq_with_mask(&c));
    }
}
