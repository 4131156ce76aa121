//! The binary tensor ring `F2[x1]/(x1^b1 - 1) (x) ... (x) F2[xt]/(xt^bt - 1)`.
//!
//! A coefficient is a bit vector of length `b = b1 * ... * bt`; the monomial
//! `x1^i1 .. xt^it` sits at the mixed-radix position `psi(i1, .., it)` with `i1` most significant.

use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::field::FieldExponent;
use crate::gf2::BinaryMatrix;
use crate::groups::{mixed_digits, mixed_index};
use crate::poly::Gf2Poly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorRing {
    moduli: Vec<usize>,
    b: usize,
}

impl TensorRing {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::InvalidParameter("ring moduli must be positive"));
        }
        let b = moduli.iter().product();
        Ok(TensorRing { moduli, b })
    }

    /// Single-variable ring `F2[x]/(x^b - 1)`.
    pub fn cyclic(b: usize) -> Result<Self> {
        Self::new(alloc::vec![b])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    /// Block size.
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn psi(&self, digits: &[usize]) -> usize {
        mixed_index(digits, &self.moduli)
    }

    pub fn psi_inv(&self, idx: usize) -> Vec<usize> {
        mixed_digits(idx, &self.moduli)
    }

    pub fn zero(&self) -> BitVec {
        BitVec::zeros(self.b)
    }

    pub fn one(&self) -> BitVec {
        BitVec::unit(self.b, 0)
    }

    /// Monomial with the given exponent tuple; any `-inf` component gives zero.
    pub fn monomial(&self, exps: &[FieldExponent]) -> BitVec {
        debug_assert_eq!(exps.len(), self.moduli.len());
        let mut digits = Vec::with_capacity(exps.len());
        for (e, &m) in exps.iter().zip(&self.moduli) {
            match e.get() {
                Some(e) => digits.push(e as usize % m),
                None => return self.zero(),
            }
        }
        BitVec::unit(self.b, self.psi(&digits))
    }

    pub fn check(&self, a: &BitVec) -> Result<()> {
        if a.len() == self.b {
            Ok(())
        } else {
            Err(Error::Mismatch("coefficient length differs from ring size"))
        }
    }

    /// Position of `psi(i) + psi(j)` under componentwise addition.
    #[inline]
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        if self.moduli.len() == 1 {
            return (i + j) % self.b;
        }
        let (mut a, mut b) = (i, j);
        let mut idx = 0;
        let mut scale = 1;
        for &m in self.moduli.iter().rev() {
            idx += ((a % m + b % m) % m) * scale;
            a /= m;
            b /= m;
            scale *= m;
        }
        idx
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let d: Vec<usize> = self.psi_inv(i).iter().zip(&self.moduli).map(|(&x, &m)| (m - x) % m).collect();
        self.psi(&d)
    }

    /// `X^shift * a`.
    pub fn shift(&self, a: &BitVec, shift: usize) -> BitVec {
        let mut out = self.zero();
        for i in a.iter_ones() {
            out.set(self.add_index(i, shift), true);
        }
        out
    }

    /// `a(x^-1)`: exponents negated componentwise.
    pub fn reverse(&self, a: &BitVec) -> BitVec {
        let mut out = self.zero();
        for i in a.iter_ones() {
            out.set(self.neg_index(i), true);
        }
        out
    }

    pub fn add(&self, a: &BitVec, b: &BitVec) -> BitVec {
        let mut out = a.clone();
        out.xor_assign(b);
        out
    }

    pub fn mul(&self, a: &BitVec, b: &BitVec) -> BitVec {
        if self.moduli.len() == 1 {
            let mut sink = 0;
            return Gf2Poly::mul_cyclic(a, b, &mut sink);
        }
        let (sparse, dense) = if a.count_ones() <= b.count_ones() { (a, b) } else { (b, a) };
        let mut out = self.zero();
        for i in sparse.iter_ones() {
            for j in dense.iter_ones() {
                out.flip(self.add_index(i, j));
            }
        }
        out
    }

    /// The `b x b` binary matrix of multiplication by `a`: row `r` is `X^psi_inv(r) * a`.
    pub fn lift(&self, a: &BitVec) -> BinaryMatrix {
        let rows = (0..self.b).map(|r| self.shift(a, r)).collect();
        BinaryMatrix::from_rows(self.b, rows).expect("rows have ring length")
    }
}
