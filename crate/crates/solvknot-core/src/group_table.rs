//! Explicit finite groups as multiplication tables over canonical labels.
//!
//! Tables are built by closing a generating set under multiplication; for a
//! finite group this reaches the identity and all inverses. Element indices
//! refer to the sorted label order, so a table built from the same labels is
//! always identical.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub size: usize,
    /// mul[i][j] = index of element i * element j
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub id: usize,
}

/// Close `gens` under `mul_fn` and build the table. Labels are sorted to fix
/// the indexing. Panics if the closure exceeds `bound` elements (signals a
/// non-group or a canonicalization bug).
pub fn build_table<T, F>(gens: &[T], mul_fn: F, bound: usize) -> (Vec<T>, FiniteGroupTable)
where
    T: Ord + Clone,
    F: Fn(&T, &T) -> T,
{
    let mut set: BTreeSet<T> = gens.iter().cloned().collect();
    loop {
        let snapshot: Vec<T> = set.iter().cloned().collect();
        let before = set.len();
        for a in &snapshot {
            for b in &snapshot {
                set.insert(mul_fn(a, b));
                assert!(set.len() <= bound, "group closure exceeded bound {}", bound);
            }
        }
        if set.len() == before {
            break;
        }
    }
    let elements: Vec<T> = set.into_iter().collect();
    let index: BTreeMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elements.len();
    let mul: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&mul_fn(a, b)]).collect())
        .collect();
    let id = (0..n)
        .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
        .expect("closure of a finite group contains the identity");
    let inv: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| mul[x][y] == id).expect("inverse exists"))
        .collect();
    (elements, FiniteGroupTable { size: n, mul, inv, id })
}

impl FiniteGroupTable {
    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.id {
            acc = self.mul[acc][x];
            k += 1;
            assert!(k <= self.size, "element order exceeds group order");
        }
        k
    }

    /// Multiset of element orders, sorted.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.size).map(|x| self.order_of(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul[self.mul[g][x]][self.inv[g]]
    }

    /// Conjugacy classes as sorted lists of indices, ordered by minimum element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut classes = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for g in 0..self.size {
                class.insert(self.conjugate(g, x));
            }
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| (0..self.size).all(|y| self.mul[x][y] == self.mul[y][x]))
            .collect()
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(self.id);
        loop {
            let snapshot: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    set.insert(self.mul[a][b]);
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    /// All subgroups generated by at most two elements, of the given order.
    pub fn two_generated_subgroups_of_order(&self, order: usize) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..self.size {
            for b in a..self.size {
                let s = self.subgroup_generated(&[a, b]);
                if s.len() == order {
                    found.insert(s.into_iter().collect());
                }
            }
        }
        found
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect()
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = self.id;
        for _ in 0..k {
            acc = self.mul[acc][x];
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // S3 as permutations of [0,1,2] encoded as arrays
    fn perm_mul(a: &[usize; 3], b: &[usize; 3]) -> [usize; 3] {
        [a[b[0]], a[b[1]], a[b[2]]]
    }

    #[test]
    fn s3_table() {
        let gens = [[1usize, 0, 2], [1usize, 2, 0]];
        let (els, t) = build_table(&gens, |a, b| perm_mul(a, b), 10);
        assert_eq!(els.len(), 6);
        assert_eq!(t.order_profile(), vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(t.center(), vec![t.id]);
        assert_eq!(t.conjugacy_classes().len(), 3);
        // S3 has a unique subgroup of order 3
        assert_eq!(t.two_generated_subgroups_of_order(3).len(), 1);
    }
}
