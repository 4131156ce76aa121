//! Exponent matrices from group-ring elements and their lifting to parity-check matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{is_modified_s2_set, is_s2_set, S2Set};
use crate::error::{Error, Result};
use crate::field::{is_supported, neg_exponent, FieldExponent};
use crate::gf2::BinaryMatrix;
use crate::groups::{mixed_index, FiniteGroup};
use crate::ring::TensorRing;

/// `rows x cols` array of exponent tuples over the ring moduli `(q1 - 1, .., qt - 1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    moduli: Vec<usize>,
    entries: Vec<FieldExponent>,
}

impl ExponentMatrix {
    pub fn new(rows: usize, cols: usize, moduli: Vec<usize>, entries: Vec<FieldExponent>) -> Result<Self> {
        let t = moduli.len();
        if t == 0 || moduli.contains(&0) {
            return Err(Error::InvalidParameter("moduli must be positive"));
        }
        if entries.len() != rows * cols * t {
            return Err(Error::Mismatch("entry count differs from rows*cols*t"));
        }
        for (k, e) in entries.iter().enumerate() {
            if e.get().is_some_and(|x| x as usize >= moduli[k % t]) {
                return Err(Error::InvalidParameter("exponent out of range"));
            }
        }
        Ok(ExponentMatrix { rows, cols, moduli, entries })
    }

    /// Single-field matrix from optional exponents.
    pub fn from_rows(modulus: usize, rows: &[Vec<Option<u32>>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Mismatch("ragged rows"));
        }
        let entries = rows.iter().flatten().map(|&e| FieldExponent::from_option(e)).collect();
        Self::new(rows.len(), cols, vec![modulus], entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    /// Lifting degree `b`.
    pub fn b(&self) -> usize {
        self.moduli.iter().product()
    }

    pub fn entry(&self, i: usize, j: usize) -> &[FieldExponent] {
        let t = self.moduli.len();
        let k = (i * self.cols + j) * t;
        &self.entries[k..k + t]
    }

    /// First component of each entry, for single-field matrices.
    pub fn scalar_rows(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.entry(i, j)[0].get()).collect()).collect()
    }

    pub fn has_neg_inf(&self) -> bool {
        self.entries.iter().any(|e| e.is_neg_inf())
    }

    fn finite_index(&self, i: usize, j: usize) -> Option<usize> {
        let e = self.entry(i, j);
        let mut digits = Vec::with_capacity(e.len());
        for x in e {
            digits.push(x.get()? as usize);
        }
        Some(mixed_index(&digits, &self.moduli))
    }

    /// Rows and columns picked by index.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::InvalidParameter("selection outside the matrix"));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len() * self.moduli.len());
        for &i in rows {
            for &j in cols {
                entries.extend_from_slice(self.entry(i, j));
            }
        }
        Ok(ExponentMatrix { rows: rows.len(), cols: cols.len(), moduli: self.moduli.clone(), entries })
    }

    /// Upper-left `rho x gamma` block.
    pub fn subarray(&self, rho: usize, gamma: usize) -> Result<Self> {
        let rows: Vec<usize> = (0..rho).collect();
        let cols: Vec<usize> = (0..gamma).collect();
        self.select(&rows, &cols)
    }

    /// `[W | V]` side by side.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.moduli != other.moduli {
            return Err(Error::Mismatch("hstack of incompatible exponent matrices"));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries.extend_from_slice(self.entry(i, j));
            }
            for j in 0..other.cols {
                entries.extend_from_slice(other.entry(i, j));
            }
        }
        Ok(ExponentMatrix { rows: self.rows, cols: self.cols + other.cols, moduli: self.moduli.clone(), entries })
    }

    /// Entrywise negation mod the moduli.
    pub fn negate(&self) -> Self {
        let t = self.moduli.len();
        let entries = self.entries.iter().enumerate().map(|(k, &e)| neg_exponent(self.moduli[k % t] as u32, e)).collect();
        ExponentMatrix { entries, ..self.clone() }
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExponentMatrix {}x{} over {:?}", self.rows, self.cols, self.moduli)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:?} ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// RG-matrix of `sum alpha^(exps[g]) g` in exponent form.
pub fn rg_exponent_matrix(group: &FiniteGroup, moduli: &[usize], exps: &[Vec<FieldExponent>]) -> Result<ExponentMatrix> {
    let n = group.order();
    if exps.len() != n || exps.iter().any(|e| e.len() != moduli.len()) {
        return Err(Error::Mismatch("one exponent tuple per group element required"));
    }
    let mut entries = Vec::with_capacity(n * n * moduli.len());
    for i in 0..n {
        for j in 0..n {
            entries.extend_from_slice(&exps[group.mul(group.inv(i), j)]);
        }
    }
    ExponentMatrix::new(n, n, moduli.to_vec(), entries)
}

/// `w = sum alpha^(p^i) g_i` over `GF(p^n)`, `n = |G|`.
pub fn construct_theorem2(group: &FiniteGroup, p: u32) -> Result<ExponentMatrix> {
    let n = group.order() as u32;
    if !is_supported(p, n) {
        return Err(Error::UnsupportedField { p, beta: n });
    }
    let modulus = (p as u64).pow(n) - 1;
    let exps: Vec<Vec<FieldExponent>> = (0..n)
        .map(|i| {
            let e = (p as u64).pow(i) % modulus;
            vec![FieldExponent::new(e as u32)]
        })
        .collect();
    rg_exponent_matrix(group, &[modulus as usize], &exps)
}

/// Which hypotheses an S2-set satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypotheses {
    pub s2: bool,
    pub modified: bool,
    pub doubles_distinct: bool,
    pub moduli_odd: bool,
}

impl Hypotheses {
    pub fn of(set: &S2Set) -> Self {
        let h = &set.group;
        let mut seen = vec![false; h.order()];
        let doubles_distinct = set.members.iter().all(|&d| !core::mem::replace(&mut seen[h.add(d, d)], true));
        Hypotheses {
            s2: is_s2_set(h, &set.members),
            modified: is_modified_s2_set(h, &set.members),
            doubles_distinct,
            moduli_odd: h.moduli().iter().all(|m| m % 2 == 1),
        }
    }

    /// Conditions under which every row pair provably avoids 4-cycles, for `W` and for `[W | W^-1]`.
    pub fn guarantees_girth6(&self) -> bool {
        self.s2 && self.modified && (self.doubles_distinct || self.moduli_odd)
    }
}

/// A constructed matrix with its constraint report.
#[derive(Debug, Clone)]
pub struct Construction {
    pub matrix: ExponentMatrix,
    pub hypotheses: Hypotheses,
    pub report: ConstraintReport,
}

fn s2_exponents(set: &S2Set) -> Vec<Vec<FieldExponent>> {
    set.tuples().into_iter().map(|t| t.into_iter().map(|x| FieldExponent::new(x as u32)).collect()).collect()
}

/// `w = sum alpha^(d_i) g_i` for an S2-set `D` with `|D| = |G|`.
///
/// Accepts sets that are modified S2-sets or live in a group with all moduli odd.
pub fn construct_from_s2(set: &S2Set, group: &FiniteGroup) -> Result<Construction> {
    if set.len() != group.order() {
        return Err(Error::Mismatch("S2-set size differs from group order"));
    }
    let hyp = Hypotheses::of(set);
    if !hyp.s2 {
        return Err(Error::Hypothesis("not an S2-set"));
    }
    if !(hyp.modified || hyp.moduli_odd) {
        return Err(Error::Hypothesis("need a modified S2-set or odd moduli"));
    }
    let matrix = rg_exponent_matrix(group, set.group.moduli(), &s2_exponents(set))?;
    let report = check_constraints(&matrix);
    Ok(Construction { matrix, hypotheses: hyp, report })
}

/// `[W | W^-1]` with `w^-1 = sum alpha^(-d_i) g_i`.
///
/// Accepts sets in groups with odd moduli or whose doubles are distinct.
pub fn construct_extended(set: &S2Set, group: &FiniteGroup) -> Result<Construction> {
    if set.len() != group.order() {
        return Err(Error::Mismatch("S2-set size differs from group order"));
    }
    let hyp = Hypotheses::of(set);
    if !hyp.s2 {
        return Err(Error::Hypothesis("not an S2-set"));
    }
    if !(hyp.moduli_odd || hyp.doubles_distinct) {
        return Err(Error::Hypothesis("need odd moduli or distinct doubles"));
    }
    let w = rg_exponent_matrix(group, set.group.moduli(), &s2_exponents(set))?;
    let matrix = w.hstack(&w.negate())?;
    let report = check_constraints(&matrix);
    Ok(Construction { matrix, hypotheses: hyp, report })
}

/// `[sub(W) | sub(-W)]`: the first `rho` rows and `gamma` columns of each half of `[W | -W]`.
pub fn extended_subarray(w: &ExponentMatrix, rho: usize, gamma: usize) -> Result<ExponentMatrix> {
    w.subarray(rho, gamma)?.hstack(&w.negate().subarray(rho, gamma)?)
}

/// First violation of the row constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintViolation {
    /// 1: a row against a scaled copy of itself; 2: two different rows.
    pub constraint: u8,
    pub rows: (usize, usize),
    /// Ring index of `alpha^(l - k)` relating the two rows.
    pub offset: usize,
    pub positions: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    pub violation: Option<ConstraintViolation>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks both row constraints: for all scalars `k != l` a row and its scaled copy share at most
/// one position, and for all `k, l` two different rows share at most one position after scaling.
/// Scalars only matter through `alpha^(l - k)`, so every offset of the ring is tried.
pub fn check_constraints(w: &ExponentMatrix) -> ConstraintReport {
    let ring = TensorRing::new(w.moduli.clone()).expect("moduli are positive");
    let idx: Vec<Vec<Option<usize>>> = (0..w.rows).map(|i| (0..w.cols).map(|j| w.finite_index(i, j)).collect()).collect();
    for i in 0..w.rows {
        for j in i..w.rows {
            for offset in 0..ring.b() {
                if i == j && offset == 0 {
                    continue;
                }
                let mut first = None;
                for (p, (&x, &y)) in idx[i].iter().zip(&idx[j]).enumerate() {
                    let (Some(a), Some(c)) = (x, y) else { continue };
                    if ring.add_index(a, offset) == c {
                        match first {
                            None => first = Some(p),
                            Some(p0) => {
                                let constraint = if i == j { 1 } else { 2 };
                                return ConstraintReport {
                                    violation: Some(ConstraintViolation { constraint, rows: (i, j), offset, positions: (p0, p) }),
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    ConstraintReport { violation: None }
}

/// Lifted parity-check matrix with its block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCode {
    pub h: BinaryMatrix,
    pub b: usize,
    pub rho: usize,
    pub gamma: usize,
}

impl LiftedCode {
    pub fn length(&self) -> usize {
        self.h.cols()
    }

    pub fn rank(&self) -> usize {
        self.h.rank()
    }

    /// `gamma b - rank(H)`, always recomputed.
    pub fn dimension(&self) -> usize {
        self.length() - self.rank()
    }
}

/// Replaces every entry by its Kronecker product of circulant permutation matrices
/// (zero block for any `-inf` component).
pub fn lift(w: &ExponentMatrix) -> LiftedCode {
    let ring = TensorRing::new(w.moduli.clone()).expect("moduli are positive");
    let b = ring.b();
    let mut h = BinaryMatrix::zeros(w.rows * b, w.cols * b);
    for i in 0..w.rows {
        for j in 0..w.cols {
            if let Some(e) = w.finite_index(i, j) {
                for r in 0..b {
                    h.set(i * b + r, j * b + ring.add_index(e, r), true);
                }
            }
        }
    }
    LiftedCode { h, b, rho: w.rows, gamma: w.cols }
}

/// Necessary condition `b >= n` for girth 6 with an `m x n` (`m <= n`) exponent matrix without `-inf`.
pub fn prop2_holds(n: usize, b: usize) -> bool {
    b >= n
}

pub fn prop2_check(w: &ExponentMatrix) -> bool {
    w.has_neg_inf() || prop2_holds(w.rows.max(w.cols), w.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::AbelianGroup;
    use crate::field::cpm;
    use crate::groups::GroupKind;

    fn e(x: u32) -> FieldExponent {
        FieldExponent::new(x)
    }

    #[test]
    fn theorem2_z8_is_circulant() {
        let w = construct_theorem2(&FiniteGroup::cyclic(8).unwrap(), 2).unwrap();
        let rows = w.scalar_rows();
        assert_eq!(rows[0], [1, 2, 4, 8, 16, 32, 64, 128].map(Some));
        assert_eq!(rows[1], [128, 1, 2, 4, 8, 16, 32, 64].map(Some));
        assert!(check_constraints(&w).passed());
    }

    #[test]
    fn identical_rows_violate() {
        let w = ExponentMatrix::from_rows(7, &[vec![Some(0), Some(1), Some(3)], vec![Some(0), Some(1), Some(3)]]).unwrap();
        let v = check_constraints(&w).violation.unwrap();
        assert_eq!((v.constraint, v.rows, v.offset), (2, (0, 1), 0));
    }

    fn difference_oracle(w: &ExponentMatrix) -> bool {
        // rows i, j (possibly equal) clash iff some difference W_j[p] - W_i[p] repeats (nonzero when i == j)
        let rows = w.scalar_rows();
        let m = w.moduli()[0] as i64;
        for i in 0..w.rows() {
            for j in i..w.rows() {
                let mut seen = vec![0; m as usize];
                for (&x, &y) in rows[i].iter().zip(&rows[j]) {
                    if let (Some(a), Some(c)) = (x, y) {
                        let d = (c as i64 - a as i64).rem_euclid(m) as usize;
                        if i != j || d != 0 {
                            seen[d] += 1;
                        }
                    }
                }
                if seen.iter().any(|&s| s >= 2) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn random_gf8_matrices_agree_with_oracles() {
        let mut s = 17u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as u32
        };
        let mut passes = 0;
        for _ in 0..100 {
            let rows: Vec<Vec<Option<u32>>> =
                (0..3).map(|_| (0..3).map(|_| if next() % 9 == 0 { None } else { Some(next() % 7) }).collect()).collect();
            let w = ExponentMatrix::from_rows(7, &rows).unwrap();
            let ok = check_constraints(&w).passed();
            assert_eq!(ok, difference_oracle(&w), "{rows:?}");
            assert_eq!(ok, !lift(&w).h.has_4cycle(), "{rows:?}");
            passes += ok as usize;
        }
        assert!(passes > 5 && passes < 95);
    }

    #[test]
    fn lift_matches_kronecker_products() {
        let w = ExponentMatrix::new(1, 1, vec![3, 4], vec![e(1), e(3)]).unwrap();
        assert_eq!(lift(&w).h, cpm(3, e(1)).kron(&cpm(4, e(3))));
        let z = ExponentMatrix::new(1, 1, vec![3, 4], vec![FieldExponent::NEG_INF, e(3)]).unwrap();
        assert!(lift(&z).h.is_zero());
        let id = ExponentMatrix::new(1, 1, vec![2, 2, 2], vec![e(0); 3]).unwrap();
        assert_eq!(lift(&id).h, BinaryMatrix::identity(8));
    }

    #[test]
    fn regular_weights() {
        let w = construct_theorem2(&FiniteGroup::cyclic(5).unwrap(), 2).unwrap();
        let sub = w.subarray(3, 5).unwrap();
        let h = lift(&sub);
        let (cols, rows) = h.h.weights();
        assert!(cols.iter().all(|&c| c == 3));
        assert!(rows.iter().all(|&r| r == 5));
        assert!(!h.h.has_4cycle());
    }

    #[test]
    fn s2_constructions() {
        let z3 = AbelianGroup::cyclic(3).unwrap();
        let one = S2Set::new(z3, vec![0]).unwrap();
        let c = construct_from_s2(&one, &FiniteGroup::cyclic(1).unwrap()).unwrap();
        assert_eq!(c.matrix.scalar_rows(), [[Some(0)]]);

        let z11 = AbelianGroup::cyclic(11).unwrap();
        let d = S2Set::new(z11, vec![0, 1, 2, 4, 7]).unwrap();
        let c = construct_extended(&d, &FiniteGroup::cyclic(5).unwrap()).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (5, 10));
        // not a modified set, and the brute-force check finds the 4-cycle
        assert!(!c.hypotheses.modified);
        assert!(!c.report.passed());
        assert_eq!(c.report.passed(), !lift(&c.matrix).h.has_4cycle());
        // the second half negates the first
        for i in 0..5 {
            for j in 0..5 {
                let a = c.matrix.entry(i, j)[0].get().unwrap();
                let b = c.matrix.entry(i, j + 5)[0].get().unwrap();
                assert_eq!((a + b) % 11, 0);
            }
        }
    }

    #[test]
    fn hypothesis_rejections() {
        // {0,1,2,4} in Z_12: S2, not modified, even modulus
        let z12 = AbelianGroup::cyclic(12).unwrap();
        let d = S2Set::new(z12, vec![0, 1, 2, 4]).unwrap();
        assert!(construct_from_s2(&d, &FiniteGroup::cyclic(4).unwrap()).is_err());
        assert!(construct_from_s2(&d, &FiniteGroup::cyclic(5).unwrap()).is_err());
    }

    #[test]
    fn non_cyclic_theorem2_groups_pass() {
        for kind in [GroupKind::Dihedral(8), GroupKind::Quaternion, GroupKind::DirectProduct(vec![2, 4]), GroupKind::Dihedral(6)]
        {
            let g = FiniteGroup::new(kind.clone()).unwrap();
            let w = construct_theorem2(&g, 2).unwrap();
            assert!(check_constraints(&w).passed(), "{kind:?}");
        }
    }

    #[test]
    fn prop2() {
        assert!(prop2_holds(8, 255));
        assert!(prop2_holds(6, 16));
        assert!(!prop2_holds(10, 9));
    }
}
