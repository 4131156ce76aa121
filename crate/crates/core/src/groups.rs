//! Finite groups with a fixed element listing.
//!
//! Index 0 is always the identity. Listings:
//! cyclic `Z_n`: powers `a^k` at index `k`; direct products: mixed radix with the
//! first factor most significant; dihedral of order `2n`: `1, r, .., r^{n-1}, s, rs, .., r^{n-1}s`;
//! quaternion: `1, -1, i, -i, j, -j, k, -k`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Groups up to this order keep a full Cayley table.
pub const TABLE_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    DirectProduct(Vec<usize>),
    /// Dihedral group of the given (even) order.
    Dihedral(usize),
    Quaternion,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    kind: GroupKind,
    order: usize,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for FiniteGroup {}

// quaternion units 1,i,j,k: product sign and unit
const QUAT: [[(bool, usize); 4]; 4] = [
    [(false, 0), (false, 1), (false, 2), (false, 3)],
    [(false, 1), (true, 0), (false, 3), (true, 2)],
    [(false, 2), (true, 3), (true, 0), (false, 1)],
    [(false, 3), (false, 2), (true, 1), (true, 0)],
];

impl FiniteGroup {
    pub fn new(kind: GroupKind) -> Result<Self> {
        let order = match &kind {
            GroupKind::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("cyclic order must be positive"));
                }
                *n
            }
            GroupKind::DirectProduct(f) => {
                if f.is_empty() || f.contains(&0) {
                    return Err(Error::InvalidParameter("direct product factors must be positive"));
                }
                f.iter().product()
            }
            GroupKind::Dihedral(m) => {
                if *m < 2 || m % 2 != 0 {
                    return Err(Error::InvalidParameter("dihedral order must be even and at least 2"));
                }
                *m
            }
            GroupKind::Quaternion => 8,
        };
        let mut g = FiniteGroup { kind, order, table: None, inv: Vec::new() };
        g.inv = (0..order).map(|i| g.compute_inv(i) as u32).collect();
        if order <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(order * order);
            for i in 0..order {
                for j in 0..order {
                    t.push(g.compute_mul(i, j) as u32);
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(GroupKind::Cyclic(n))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order + j] as usize,
            None => self.compute_mul(i, j),
        }
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Cyclic(_) | GroupKind::DirectProduct(_) => true,
            GroupKind::Dihedral(m) => *m <= 4,
            GroupKind::Quaternion => false,
        }
    }

    /// Cyclic factor orders for Abelian kinds, in listing order.
    pub fn cyclic_factors(&self) -> Option<Vec<usize>> {
        match &self.kind {
            GroupKind::Cyclic(n) => Some(alloc::vec![*n]),
            GroupKind::DirectProduct(f) => Some(f.clone()),
            _ => None,
        }
    }

    /// Order of an element.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, i| lcm(acc, self.element_order(i)))
    }

    /// Human readable name of an element.
    pub fn label(&self, i: usize) -> String {
        match &self.kind {
            GroupKind::Cyclic(_) => format!("a^{i}"),
            GroupKind::DirectProduct(f) => format!("{:?}", mixed_digits(i, f)),
            GroupKind::Dihedral(m) => {
                let n = m / 2;
                if i < n {
                    format!("r^{i}")
                } else {
                    format!("r^{}s", i - n)
                }
            }
            GroupKind::Quaternion => {
                const L: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
                String::from(L[i])
            }
        }
    }

    fn compute_mul(&self, i: usize, j: usize) -> usize {
        match &self.kind {
            GroupKind::Cyclic(n) => (i + j) % n,
            GroupKind::DirectProduct(f) => {
                let mut idx = 0;
                let mut a = i;
                let mut b = j;
                let mut scale = 1;
                for &m in f.iter().rev() {
                    idx += ((a % m + b % m) % m) * scale;
                    a /= m;
                    b /= m;
                    scale *= m;
                }
                idx
            }
            GroupKind::Dihedral(m) => {
                let n = m / 2;
                let (a, x) = (i % n, i >= n);
                let (b, y) = (j % n, j >= n);
                // r^a s^x r^b s^y = r^(a +- b) s^(x+y)
                let e = if x { (a + n - b) % n } else { (a + b) % n };
                if x ^ y {
                    n + e
                } else {
                    e
                }
            }
            GroupKind::Quaternion => {
                let (ua, sa) = (i / 2, i % 2 == 1);
                let (ub, sb) = (j / 2, j % 2 == 1);
                let (s, u) = QUAT[ua][ub];
                2 * u + (s ^ sa ^ sb) as usize
            }
        }
    }

    fn compute_inv(&self, i: usize) -> usize {
        match &self.kind {
            GroupKind::Cyclic(n) => (n - i) % n,
            GroupKind::DirectProduct(f) => {
                let d = mixed_digits(i, f);
                let neg: Vec<usize> = d.iter().zip(f).map(|(&x, &m)| (m - x) % m).collect();
                mixed_index(&neg, f)
            }
            GroupKind::Dihedral(m) => {
                let n = m / 2;
                if i < n {
                    (n - i) % n
                } else {
                    i
                }
            }
            GroupKind::Quaternion => {
                if i < 2 {
                    i
                } else {
                    i ^ 1
                }
            }
        }
    }
}

/// Mixed-radix digits, first radix most significant.
pub fn mixed_digits(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    let mut d = alloc::vec![0; radices.len()];
    for (k, &m) in radices.iter().enumerate().rev() {
        d[k] = idx % m;
        idx /= m;
    }
    d
}

pub fn mixed_index(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &m)| acc * m + d)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn all_kinds() -> Vec<FiniteGroup> {
        let mut out = Vec::new();
        for n in 1..=12 {
            out.push(FiniteGroup::cyclic(n).unwrap());
        }
        for f in [vec![2, 2], vec![2, 4], vec![3, 3, 2], vec![2, 2, 2, 2], vec![4, 4, 4]] {
            out.push(FiniteGroup::new(GroupKind::DirectProduct(f)).unwrap());
        }
        for m in [2, 4, 6, 8, 10, 16] {
            out.push(FiniteGroup::new(GroupKind::Dihedral(m)).unwrap());
        }
        out.push(FiniteGroup::new(GroupKind::Quaternion).unwrap());
        out
    }

    #[test]
    fn group_axioms_exhaustive() {
        for g in all_kinds() {
            let n = g.order();
            for i in 0..n {
                assert_eq!(g.mul(0, i), i);
                assert_eq!(g.mul(i, 0), i);
                assert_eq!(g.mul(i, g.inv(i)), 0, "{:?}", g.kind());
                for j in 0..n {
                    assert!(g.mul(i, j) < n);
                    for k in 0..n {
                        assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)), "{:?}", g.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn commutativity_matches_kind() {
        for g in all_kinds() {
            let n = g.order();
            let comm = (0..n).all(|i| (0..n).all(|j| g.mul(i, j) == g.mul(j, i)));
            assert_eq!(comm, g.is_abelian(), "{:?}", g.kind());
        }
    }

    #[test]
    fn small_examples() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(1, 2), 0);
        assert_eq!(z3.elements().collect::<Vec<_>>(), [0, 1, 2]);

        let d8 = FiniteGroup::new(GroupKind::Dihedral(8)).unwrap();
        // s r = r^3 s
        assert_eq!(d8.mul(4, 1), 7);
        assert_eq!(d8.label(7), "r^3s");

        let q8 = FiniteGroup::new(GroupKind::Quaternion).unwrap();
        assert_eq!(q8.mul(2, 4), 6); // ij = k
        assert_eq!(q8.mul(4, 2), 7); // ji = -k
        assert_eq!(q8.mul(2, 2), 1); // i^2 = -1

        let v = FiniteGroup::new(GroupKind::DirectProduct(vec![2, 2])).unwrap();
        assert_eq!(mixed_digits(1, &[2, 2]), [0, 1]);
        assert_eq!(mixed_digits(2, &[2, 2]), [1, 0]);
        assert_eq!(v.mul(1, 2), 3);
    }

    #[test]
    fn exponents() {
        assert_eq!(FiniteGroup::cyclic(8).unwrap().exponent(), 8);
        assert_eq!(FiniteGroup::new(GroupKind::Quaternion).unwrap().exponent(), 4);
        assert_eq!(FiniteGroup::new(GroupKind::Dihedral(8)).unwrap().exponent(), 4);
        assert_eq!(FiniteGroup::new(GroupKind::DirectProduct(vec![2, 4])).unwrap().exponent(), 4);
    }

    #[test]
    fn large_group_without_table() {
        let g = FiniteGroup::cyclic(1000).unwrap();
        assert_eq!(g.mul(999, 2), 1);
        assert!(FiniteGroup::new(GroupKind::Dihedral(7)).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
    }
}
