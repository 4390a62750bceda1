//! Affine isometries `(v, A): x -> v + A x` over the rationals.

use crate::qmat::{qvec_add, qvec_is_zero, qvec_sub, qvec_zero, QMat, QVec};
use crate::rat::Rat;
use serde::{Deserialize, Serialize};

/// An invertible affine map `x -> v + A x` of Q^n.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineIso {
    pub v: QVec,
    pub a: QMat,
}

impl AffineIso {
    pub fn new(v: QVec, a: QMat) -> Self {
        assert_eq!(a.rows, a.cols);
        assert_eq!(v.len(), a.rows);
        AffineIso { v, a }
    }

    pub fn identity(dim: usize) -> Self {
        AffineIso { v: qvec_zero(dim), a: QMat::identity(dim) }
    }

    pub fn translation(v: QVec) -> Self {
        let n = v.len();
        AffineIso { v, a: QMat::identity(n) }
    }

    pub fn linear(a: QMat) -> Self {
        let n = a.rows;
        AffineIso { v: qvec_zero(n), a }
    }

    pub fn dim(&self) -> usize {
        self.a.rows
    }

    pub fn apply(&self, x: &[Rat]) -> QVec {
        qvec_add(&self.v, &self.a.mul_vec(x))
    }

    /// `(v,A)(w,B) = (v + Aw, AB)` — apply `other` first, then `self`.
    pub fn compose(&self, other: &AffineIso) -> AffineIso {
        AffineIso {
            v: qvec_add(&self.v, &self.a.mul_vec(&other.v)),
            a: self.a.mul(&other.a),
        }
    }

    /// `(v,A)^{-1} = (-A^{-1} v, A^{-1})`.
    pub fn inverse(&self) -> AffineIso {
        let ainv = self.a.inverse().expect("affine isometry has invertible linear part");
        let w = ainv.mul_vec(&self.v);
        AffineIso { v: w.iter().map(|x| -x).collect(), a: ainv }
    }

    pub fn conjugate(&self, by: &AffineIso) -> AffineIso {
        by.compose(self).compose(&by.inverse())
    }

    pub fn is_identity(&self) -> bool {
        qvec_is_zero(&self.v) && self.a.is_identity()
    }

    pub fn pow(&self, k: i64) -> AffineIso {
        let mut out = AffineIso::identity(self.dim());
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        for _ in 0..k.abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Fixed set `{x : v + Ax = x}`, i.e. solutions of `(I - A)x = v`.
    pub fn fixed_set(&self) -> Option<AffineSubspace> {
        let ia = QMat::identity(self.dim()).sub(&self.a);
        let (p, kernel) = ia.solve(&self.v)?;
        Some(AffineSubspace { point: p, directions: kernel })
    }
}

/// A nonempty affine subspace: `point + span(directions)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub point: QVec,
    pub directions: Vec<QVec>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Does the subspace contain `x`?
    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.directions.is_empty() {
            return qvec_is_zero(&qvec_sub(x, &self.point));
        }
        let m = QMat::from_rows(self.directions.clone()).transpose();
        m.solve(&qvec_sub(x, &self.point)).is_some()
    }

    /// Is this the same subspace as `point + span(dirs)` given by another?
    pub fn same_as(&self, other: &AffineSubspace) -> bool {
        self.dim() == other.dim()
            && self.contains(&other.point)
            && other
                .directions
                .iter()
                .all(|d| self.contains(&qvec_add(&other.point, d)))
            && other.contains(&self.point)
    }
}
