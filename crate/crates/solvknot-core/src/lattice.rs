//! Finitely generated sublattices of Z^n in canonical (Hermite) form.

use crate::imat::{hermite_rows, integer_kernel, solve_integer, IMat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattices have different ambient dimension")]
    DimensionMismatch,
    #[error("index is only defined for a finite-index sublattice pair")]
    InfiniteIndex,
    #[error("not a sublattice")]
    NotSublattice,
}

/// A sublattice of Z^ambient, stored via its canonical Hermite basis (rows).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntegerLattice {
    pub ambient: usize,
    /// Canonical basis, one row per basis vector; empty for the zero lattice.
    pub basis: Vec<Vec<i64>>,
}

impl IntegerLattice {
    pub fn zero(ambient: usize) -> Self {
        IntegerLattice { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        IntegerLattice::from_generators(
            ambient,
            &(0..ambient)
                .map(|i| {
                    let mut v = vec![0; ambient];
                    v[i] = 1;
                    v
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<i64>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient);
        }
        if gens.is_empty() {
            return IntegerLattice::zero(ambient);
        }
        let h = hermite_rows(&IMat::from_rows(gens));
        IntegerLattice {
            ambient,
            basis: (0..h.rows).map(|r| h.row(r).to_vec()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if self.basis.is_empty() {
            return v.iter().all(|&x| x == 0);
        }
        // solve basis^T x = v over Z
        let bt = IMat::from_rows(&self.basis).transpose();
        solve_integer(&bt, v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Lattice sum (join).
    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::DimensionMismatch);
        }
        let mut gens = self.basis.clone();
        gens.extend(other.basis.clone());
        Ok(IntegerLattice::from_generators(self.ambient, &gens))
    }

    /// Lattice intersection via the kernel of `[B1^T | -B2^T]`.
    pub fn intersect(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::DimensionMismatch);
        }
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(IntegerLattice::zero(self.ambient));
        }
        let r1 = self.rank();
        let r2 = other.rank();
        // rows: ambient, cols: r1 + r2
        let mut rows = Vec::with_capacity(self.ambient);
        for i in 0..self.ambient {
            let mut row = Vec::with_capacity(r1 + r2);
            for b in &self.basis {
                row.push(b[i]);
            }
            for b in &other.basis {
                row.push(-b[i]);
            }
            rows.push(row);
        }
        let kernel = integer_kernel(&IMat::from_rows(&rows));
        let gens: Vec<Vec<i64>> = kernel
            .iter()
            .map(|k| {
                let mut v = vec![0i64; self.ambient];
                for (c, b) in k[..r1].iter().zip(&self.basis) {
                    for i in 0..self.ambient {
                        v[i] += c * b[i];
                    }
                }
                v
            })
            .collect();
        Ok(IntegerLattice::from_generators(self.ambient, &gens))
    }

    /// Index `[other : self]` for a finite-index sublattice `self <= other`.
    pub fn index_in(&self, other: &IntegerLattice) -> Result<u64, LatticeError> {
        if self.ambient != other.ambient {
            return Err(LatticeError::DimensionMismatch);
        }
        if !self.is_sublattice_of(other) {
            return Err(LatticeError::NotSublattice);
        }
        if self.rank() != other.rank() {
            return Err(LatticeError::InfiniteIndex);
        }
        if self.rank() == 0 {
            return Ok(1);
        }
        // write self's basis in coordinates of other's basis; index = |det|
        let bt = IMat::from_rows(&other.basis).transpose();
        let mut coords = Vec::new();
        for b in &self.basis {
            let (x, _) = solve_integer(&bt, b).ok_or(LatticeError::NotSublattice)?;
            coords.push(x[..other.rank()].to_vec());
        }
        let d = IMat::from_rows(&coords).det().abs();
        Ok(d as u64)
    }

    /// Scale every basis vector by `c`.
    pub fn scaled(&self, c: i64) -> IntegerLattice {
        IntegerLattice::from_generators(
            self.ambient,
            &self
                .basis
                .iter()
                .map(|b| b.iter().map(|&x| c * x).collect())
                .collect::<Vec<_>>(),
        )
    }

    /// Canonical representative of `v` modulo this lattice.
    ///
    /// Reduction runs down the Hermite basis: at each pivot column the
    /// coordinate is brought into `[0, pivot)`. The result depends only on
    /// the coset of `v` and the lattice (Hermite bases are unique).
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for b in &self.basis {
            let pivot_col = b.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let p = b[pivot_col];
            let q = w[pivot_col].div_euclid(p);
            for i in 0..self.ambient {
                w[i] -= q * b[i];
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_sum_intersection() {
        let a = IntegerLattice::from_generators(2, &[vec![2, 0], vec![0, 3]]);
        let b = IntegerLattice::from_generators(2, &[vec![3, 0], vec![0, 2]]);
        assert!(a.contains(&[4, 3]));
        assert!(!a.contains(&[1, 0]));
        let s = a.sum(&b).unwrap();
        assert_eq!(s, IntegerLattice::full(2));
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, IntegerLattice::from_generators(2, &[vec![6, 0], vec![0, 6]]));
    }

    #[test]
    fn index_computation() {
        let full = IntegerLattice::full(3);
        let two = full.scaled(2);
        assert_eq!(two.index_in(&full).unwrap(), 8);
        assert_eq!(full.index_in(&full).unwrap(), 1);
        assert_eq!(
            two.index_in(&IntegerLattice::from_generators(3, &[vec![1, 0, 0]]))
                .unwrap_err(),
            LatticeError::NotSublattice
        );
    }

    #[test]
    fn coset_reduction_is_well_defined() {
        let l = IntegerLattice::from_generators(3, &[vec![2, 0, 0], vec![1, 1, -1]]);
        let r1 = l.reduce(&[5, 3, -3]);
        assert_eq!(l.reduce(&[7, 3, -3]), r1); // + (2,0,0)
        assert_eq!(l.reduce(&[6, 4, -4]), r1); // + (1,1,-1)
        assert_ne!(l.reduce(&[5, 4, -3]), r1);
    }
}
