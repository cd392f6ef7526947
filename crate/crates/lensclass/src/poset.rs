//! Finite partial orders on `{0, .., n-1}` subject to the block-matrix
//! ordering assumption: `i` below `j` implies `i <= j` as integers. Under that
//! assumption antisymmetry is automatic, so construction only has to close
//! the generating relations reflexively and transitively.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("relation ({0}, {1}) violates the ordering assumption i <= j")]
    OrderViolation(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    le: Vec<bool>,
}

impl Poset {
    /// Reflexive-transitive closure of the given `i <= j` generators.
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut le = vec![false; size * size];
        for i in 0..size {
            le[i * size + i] = true;
        }
        for &(i, j) in relations {
            if i >= size || j >= size {
                return Err(PosetError::OutOfRange(i, j));
            }
            if i > j {
                return Err(PosetError::OrderViolation(i, j));
            }
            le[i * size + j] = true;
        }
        // Warshall closure; generators all point upward so the result stays
        // antisymmetric.
        for k in 0..size {
            for i in 0..size {
                if le[i * size + k] {
                    for j in 0..size {
                        if le[k * size + j] {
                            le[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Ok(Poset { size, le })
    }

    /// The linear order `0 <= 1 <= ... <= size-1`.
    pub fn chain(size: usize) -> Self {
        let gens: Vec<(usize, usize)> = (1..size).map(|j| (j - 1, j)).collect();
        Poset::from_relations(size, &gens).expect("chain generators are valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        assert!(i < self.size && j < self.size);
        self.le[i * self.size + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    pub fn is_linear(&self) -> bool {
        (0..self.size).all(|i| (i + 1..self.size).all(|j| self.comparable(i, j)))
    }

    /// Strictly related pairs `(i, j)` with `i` below `j`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j && self.le(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_linear() {
        let p = Poset::chain(4);
        assert!(p.is_linear());
        assert!(p.le(0, 3));
        assert!(!p.le(3, 0));
        assert_eq!(p.strict_pairs().len(), 6);
    }

    #[test]
    fn closure_is_transitive() {
        let p = Poset::from_relations(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert!(p.le(0, 3));
        assert!(!p.comparable(1, 2));
        assert!(!p.is_linear());
    }

    #[test]
    fn rejects_downward_generators() {
        assert_eq!(
            Poset::from_relations(3, &[(2, 1)]),
            Err(PosetError::OrderViolation(2, 1))
        );
        assert_eq!(
            Poset::from_relations(3, &[(0, 3)]),
            Err(PosetError::OutOfRange(0, 3))
        );
    }
}
