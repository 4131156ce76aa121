//! Difference sets, Singer constructions, S2-sets and their search.

mod difference;
mod search;

pub use difference::{is_difference_set, singer_difference_set, singer_difference_set_lfsr, DifferenceSet};
pub use search::{search_max_s2, search_s2_of_size, SearchOutcome, SearchStats, Searcher, DEFAULT_BUDGET, SEARCH_LIMIT};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groups::{mixed_digits, mixed_index, FiniteGroup, GroupKind};

/// `Z_{m1} x ... x Z_{mt}` with mixed-radix element indices (first factor most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::InvalidParameter("group moduli must be positive"));
        }
        let order = moduli.iter().product();
        Ok(AbelianGroup { moduli, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.moduli.len() || tuple.iter().zip(&self.moduli).any(|(&x, &m)| x >= m) {
            return Err(Error::InvalidParameter("tuple outside the group"));
        }
        Ok(mixed_index(tuple, &self.moduli))
    }

    pub fn tuple(&self, idx: usize) -> Vec<usize> {
        mixed_digits(idx, &self.moduli)
    }

    /// Imports a tuple written with 1-based residue labels (value `m` stands for 0 in `Z_m`).
    pub fn index_one_based(&self, tuple: &[usize]) -> Result<usize> {
        let t: Vec<usize> = tuple.iter().zip(&self.moduli).map(|(&x, &m)| (x + m - 1) % m).collect();
        self.index(&t)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            return (a + b) % self.order;
        }
        let (x, y) = (self.tuple(a), self.tuple(b));
        let s: Vec<usize> = x.iter().zip(&y).zip(&self.moduli).map(|((&p, &q), &m)| (p + q) % m).collect();
        mixed_index(&s, &self.moduli)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = self.tuple(a).iter().zip(&self.moduli).map(|(&p, &m)| (m - p) % m).collect();
        mixed_index(&s, &self.moduli)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        let kind = if self.moduli.len() == 1 {
            GroupKind::Cyclic(self.moduli[0])
        } else {
            GroupKind::DirectProduct(self.moduli.clone())
        };
        FiniteGroup::new(kind).expect("moduli are positive")
    }

    /// Size of the subgroup of elements of order at most 2.
    pub fn involution_subgroup_order(&self) -> usize {
        self.moduli.iter().map(|m| if m % 2 == 0 { 2 } else { 1 }).product()
    }
}

/// A verified S2-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S2Set {
    pub group: AbelianGroup,
    pub members: Vec<usize>,
    pub is_modified: bool,
}

impl S2Set {
    /// Checks the S2 property and records whether the set is also modified.
    pub fn new(group: AbelianGroup, members: Vec<usize>) -> Result<Self> {
        if !is_s2_set(&group, &members) {
            return Err(Error::Hypothesis("not an S2-set"));
        }
        let is_modified = is_modified_s2_set(&group, &members);
        Ok(S2Set { group, members, is_modified })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| self.group.tuple(m)).collect()
    }
}

fn distinct(members: &[usize], order: usize) -> bool {
    let mut seen = vec![false; order];
    members.iter().all(|&m| m < order && !core::mem::replace(&mut seen[m], true))
}

/// Sums of two distinct members are pairwise distinct.
pub fn is_s2_set(h: &AbelianGroup, members: &[usize]) -> bool {
    if !distinct(members, h.order()) {
        return false;
    }
    let mut seen = vec![false; h.order()];
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if core::mem::replace(&mut seen[h.add(a, b)], true) {
                return false;
            }
        }
    }
    true
}

/// S2 and no double `2d` equals a sum of two distinct members.
pub fn is_modified_s2_set(h: &AbelianGroup, members: &[usize]) -> bool {
    if !is_s2_set(h, members) {
        return false;
    }
    let mut sums = vec![false; h.order()];
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            sums[h.add(a, b)] = true;
        }
    }
    members.iter().all(|&d| !sums[h.add(d, d)])
}

/// Every solution of `d1 - d2 = d3 - d4` (`d1 != d2`, `d3 != d4`) is trivial:
/// `(d1, d2) = (d3, d4)`, `d1 = d4` or `d2 = d3`.
pub fn differences_only_trivially_repeat(h: &AbelianGroup, members: &[usize]) -> bool {
    if !distinct(members, h.order()) {
        return false;
    }
    let mut by_diff: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h.order()];
    for &a in members {
        for &b in members {
            if a != b {
                by_diff[h.sub(a, b)].push((a, b));
            }
        }
    }
    by_diff
        .iter()
        .all(|pairs| pairs.iter().all(|&(d1, d2)| pairs.iter().all(|&(d3, d4)| (d1, d2) == (d3, d4) || d1 == d4 || d2 == d3)))
}

/// All pairwise differences of distinct members are distinct.
pub fn differences_distinct(h: &AbelianGroup, members: &[usize]) -> bool {
    let mut seen = vec![false; h.order()];
    for &a in members {
        for &b in members {
            if a != b && core::mem::replace(&mut seen[h.sub(a, b)], true) {
                return false;
            }
        }
    }
    true
}

/// `floor((3 + sqrt(1 + 4 h_y)) / 2)` with `h_y = |H| (n2 + 1) / n2` and `n2` the index
/// of the subgroup of elements of order at most 2.
pub fn s2_upper_bound(h: &AbelianGroup) -> usize {
    let n = h.order() as u128;
    let n2 = n / h.involution_subgroup_order() as u128;
    // largest k with n2 (2k - 3)^2 <= n2 + 4 n (n2 + 1)
    let rhs = n2 + 4 * n * (n2 + 1);
    let mut k = 1u128;
    while {
        let t = 2 * (k + 1) - 3;
        n2 * t * t <= rhs
    } {
        k += 1;
    }
    k as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let z11 = AbelianGroup::cyclic(11).unwrap();
        assert!(is_s2_set(&z11, &[0, 1, 2, 4, 7]));
        assert!(is_s2_set(&z11, &[0, 1, 2, 4]));
        assert!(!is_modified_s2_set(&z11, &[0, 1, 2, 4]));
        let h = AbelianGroup::new(vec![3, 3, 2]).unwrap();
        let d: Vec<usize> = [[1, 2, 2], [1, 3, 2], [2, 2, 2], [2, 3, 1]].iter().map(|t| h.index_one_based(t).unwrap()).collect();
        assert_eq!(h.tuple(d[0]), [0, 1, 1]);
        assert!(is_modified_s2_set(&h, &d));
    }

    #[test]
    fn bounds() {
        assert_eq!(s2_upper_bound(&AbelianGroup::cyclic(11).unwrap()), 5);
        assert_eq!(s2_upper_bound(&AbelianGroup::new(vec![2, 2, 2, 2]).unwrap()), 7);
        assert!(s2_upper_bound(&AbelianGroup::cyclic(1).unwrap()) >= 1);
    }

    #[test]
    fn literal_difference_form_is_not_equivalent() {
        let z5 = AbelianGroup::cyclic(5).unwrap();
        assert!(is_s2_set(&z5, &[0, 1, 2]));
        assert!(!differences_distinct(&z5, &[0, 1, 2]));
        assert!(differences_only_trivially_repeat(&z5, &[0, 1, 2]));
    }

    #[test]
    fn difference_form_equivalence_on_random_subsets() {
        let groups = [vec![7], vec![12], vec![2, 2, 2], vec![3, 4], vec![2, 6], vec![5, 5], vec![16], vec![2, 2, 2, 2]];
        let mut s = 0x1234_5678u64;
        let mut checked = 0;
        for m in &groups {
            let h = AbelianGroup::new(m.clone()).unwrap();
            for _ in 0..1300 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                let k = 2 + (s >> 60) as usize % 5;
                let mut members = Vec::new();
                let mut t = s;
                while members.len() < k.min(h.order()) {
                    t = t.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let x = (t >> 33) as usize % h.order();
                    if !members.contains(&x) {
                        members.push(x);
                    }
                }
                assert_eq!(is_s2_set(&h, &members), differences_only_trivially_repeat(&h, &members), "{m:?} {members:?}");
                checked += 1;
            }
        }
        assert!(checked >= 10_000);
    }

    #[test]
    fn modified_property_is_translation_invariant() {
        for m in [vec![11], vec![3, 3, 2], vec![4, 4], vec![2, 2, 2, 2], vec![3, 4, 4]] {
            let h = AbelianGroup::new(m).unwrap();
            let mut s = 99u64;
            for _ in 0..300 {
                let mut members = Vec::new();
                for _ in 0..4 {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let x = (s >> 33) as usize % h.order();
                    if !members.contains(&x) {
                        members.push(x);
                    }
                }
                let base = (is_s2_set(&h, &members), is_modified_s2_set(&h, &members));
                for t in 0..h.order() {
                    let moved: Vec<usize> = members.iter().map(|&d| h.add(d, t)).collect();
                    assert_eq!((is_s2_set(&h, &moved), is_modified_s2_set(&h, &moved)), base);
                }
            }
        }
    }
}
