//! GF(p^beta) with exp/log tables, location vectors and circulant permutation matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// Exponent of the primitive element, or `-inf` for the zero element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldExponent(u32);

impl FieldExponent {
    pub const NEG_INF: FieldExponent = FieldExponent(u32::MAX);

    pub fn new(e: u32) -> Self {
        debug_assert!(e != u32::MAX);
        FieldExponent(e)
    }

    pub fn from_option(e: Option<u32>) -> Self {
        e.map_or(Self::NEG_INF, FieldExponent)
    }

    pub fn get(self) -> Option<u32> {
        (self.0 != u32::MAX).then_some(self.0)
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == u32::MAX
    }
}

impl fmt::Debug for FieldExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(e) => write!(f, "{e}"),
            None => f.write_str("-inf"),
        }
    }
}

/// `alpha^e1 * alpha^e2` in exponent form over a field with `q - 1 = modulus`.
pub fn mul_exponents(modulus: u32, a: FieldExponent, b: FieldExponent) -> FieldExponent {
    match (a.get(), b.get()) {
        (Some(x), Some(y)) => FieldExponent((((x as u64) + (y as u64)) % modulus as u64) as u32),
        _ => FieldExponent::NEG_INF,
    }
}

/// Additive inverse of an exponent mod `modulus` (the exponent of `alpha^-e`).
pub fn neg_exponent(modulus: u32, a: FieldExponent) -> FieldExponent {
    match a.get() {
        Some(x) => FieldExponent((modulus - x % modulus) % modulus),
        None => a,
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether the field size is inside the table range.
pub fn is_supported(p: u32, beta: u32) -> bool {
    if !is_prime(p as u64) || beta == 0 {
        return false;
    }
    let q = (p as u64).checked_pow(beta);
    match q {
        Some(q) if p == 2 => beta <= 16 && q <= 1 << 16,
        Some(q) => beta <= 4 && q <= 1 << 20,
        None => false,
    }
}

/// Elements are stored as integers whose base-`p` digits are polynomial coefficients.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    beta: u32,
    q: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) poly {:?}", self.p, self.beta, self.poly)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.beta == other.beta
    }
}

impl GaloisField {
    pub fn new(p: u32, beta: u32) -> Result<Self> {
        if !is_supported(p, beta) {
            return Err(Error::UnsupportedField { p, beta });
        }
        let q = p.pow(beta);
        // smallest primitive polynomial, coefficients low to high, monic
        for low in 1..q {
            let mut poly = digits(low, p, beta as usize);
            if poly[0] == 0 {
                continue;
            }
            poly.push(1);
            if let Some(exp) = power_table(p, &poly, q) {
                let mut log = vec![u32::MAX; q as usize];
                for (i, &x) in exp.iter().enumerate() {
                    log[x as usize] = i as u32;
                }
                return Ok(GaloisField { p, beta, q, poly, exp, log });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Multiplicative order `q - 1`, the CPM size.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Coefficients of the defining primitive polynomial, low degree first.
    pub fn primitive_poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn alpha_pow(&self, e: FieldExponent) -> u32 {
        match e.get() {
            Some(e) => self.exp[(e % (self.q - 1)) as usize],
            None => 0,
        }
    }

    pub fn log(&self, x: u32) -> FieldExponent {
        if x == 0 {
            FieldExponent::NEG_INF
        } else {
            FieldExponent(self.log[x as usize])
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let e = (self.log[a as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn mul_exponents(&self, a: FieldExponent, b: FieldExponent) -> FieldExponent {
        mul_exponents(self.q - 1, a, b)
    }

    /// Trace down to the subfield of degree `d` (`d` divides `beta`).
    pub fn trace(&self, x: u32, d: u32) -> u32 {
        debug_assert!(self.beta % d == 0);
        let sub_q = (self.p as u64).pow(d);
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.beta / d {
            acc = self.add(acc, y);
            y = self.pow(y, sub_q);
        }
        acc
    }

    pub fn location_vector(&self, e: FieldExponent) -> BitVec {
        location_vector(self.q - 1, e)
    }

    pub fn cpm(&self, e: FieldExponent) -> BinaryMatrix {
        cpm(self.q - 1, e)
    }
}

/// One-hot vector of length `size` at `e`, all-zero for `-inf`.
pub fn location_vector(size: u32, e: FieldExponent) -> BitVec {
    match e.get() {
        Some(e) => BitVec::unit(size as usize, (e % size) as usize),
        None => BitVec::zeros(size as usize),
    }
}

/// Row `r` is the location vector of `alpha^(e + r)`.
pub fn cpm(size: u32, e: FieldExponent) -> BinaryMatrix {
    let n = size as usize;
    let mut m = BinaryMatrix::zeros(n, n);
    if let Some(e) = e.get() {
        for r in 0..n {
            m.set(r, (e as usize + r) % n, true);
        }
    }
    m
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len + 1);
    for _ in 0..len {
        d.push(x % p);
        x /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// Powers of x modulo `poly`, or None if x does not have order q - 1.
fn power_table(p: u32, poly: &[u32], q: u32) -> Option<Vec<u32>> {
    let beta = poly.len() - 1;
    let mut cur = vec![0u32; beta];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    for k in 0..q - 1 {
        let x = from_digits(&cur, p);
        if k > 0 && x == 1 {
            return None;
        }
        exp.push(x);
        // multiply by x and reduce by the monic polynomial
        let top = cur[beta - 1];
        for i in (1..beta).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (c, &pc) in cur.iter_mut().zip(poly) {
                *c = (*c + (p - pc % p) * top) % p;
            }
        }
    }
    (from_digits(&cur, p) == 1).then_some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        for (p, beta) in [(2, 1), (2, 2), (2, 3), (2, 8), (2, 9), (3, 1), (3, 2), (3, 4), (5, 1), (7, 2), (2, 16)] {
            let f = GaloisField::new(p, beta).unwrap();
            let n = f.order();
            let mut seen = vec![false; f.q() as usize];
            for e in 0..n {
                let x = f.alpha_pow(FieldExponent::new(e));
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
                assert_eq!(f.log(x), FieldExponent::new(e));
            }
            assert_eq!(f.alpha_pow(FieldExponent::new(n)), 1);
            assert!(!seen[0]);
        }
    }

    #[test]
    fn smallest_primitive_polys() {
        assert_eq!(GaloisField::new(2, 3).unwrap().primitive_poly(), [1, 1, 0, 1]);
        assert_eq!(GaloisField::new(2, 2).unwrap().primitive_poly(), [1, 1, 1]);
        assert_eq!(GaloisField::new(2, 8).unwrap().primitive_poly(), [1, 0, 1, 1, 1, 0, 0, 0, 1]);
        // x + 2 over F5: alpha = 3
        assert_eq!(GaloisField::new(5, 1).unwrap().alpha_pow(FieldExponent::new(1)), 3);
    }

    #[test]
    fn unsupported_sizes() {
        assert!(GaloisField::new(2, 17).is_err());
        assert!(GaloisField::new(3, 5).is_err());
        assert!(GaloisField::new(4, 1).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, beta) in [(2, 4), (3, 2), (5, 2)] {
            let f = GaloisField::new(p, beta).unwrap();
            for a in 0..f.q() {
                for b in 0..f.q() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, f.q() - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_arithmetic() {
        let f8 = GaloisField::new(2, 3).unwrap();
        let e = FieldExponent::new;
        assert_eq!(f8.mul_exponents(e(3), e(6)), e(2));
        assert_eq!(f8.mul_exponents(FieldExponent::NEG_INF, e(4)), FieldExponent::NEG_INF);
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.mul_exponents(e(2), e(2)), e(1));
        assert_eq!(neg_exponent(7, e(3)), e(4));
        assert_eq!(neg_exponent(7, e(0)), e(0));
    }

    #[test]
    fn location_vectors() {
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.location_vector(FieldExponent::new(0)).to_bits(), [1, 0, 0]);
        assert_eq!(f4.location_vector(FieldExponent::NEG_INF).to_bits(), [0, 0, 0]);
        let f8 = GaloisField::new(2, 3).unwrap();
        assert_eq!(f8.location_vector(FieldExponent::new(5)).iter_ones().collect::<Vec<_>>(), [5]);
    }

    #[test]
    fn printed_cpms() {
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.cpm(FieldExponent::new(1)), BinaryMatrix::from_bits(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        let f5 = GaloisField::new(5, 1).unwrap();
        assert_eq!(
            f5.cpm(FieldExponent::new(3)),
            BinaryMatrix::from_bits(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])
        );
        assert_eq!(f5.cpm(FieldExponent::new(0)), BinaryMatrix::identity(4));
        assert!(f5.cpm(FieldExponent::NEG_INF).is_zero());
    }

    #[test]
    fn cpm_is_a_homomorphism_over_gf8() {
        let f8 = GaloisField::new(2, 3).unwrap();
        for a in 0..7 {
            let ca = f8.cpm(FieldExponent::new(a));
            let (cols, rows) = ca.weights();
            assert!(cols.iter().chain(&rows).all(|&w| w == 1));
            for b in 0..7 {
                let prod = ca.matmul(&f8.cpm(FieldExponent::new(b))).unwrap();
                assert_eq!(prod, f8.cpm(FieldExponent::new((a + b) % 7)));
            }
        }
    }

    #[test]
    fn trace_over_gf8() {
        let f = GaloisField::new(2, 3).unwrap();
        let zeros: Vec<u32> = (0..7).filter(|&i| f.trace(f.alpha_pow(FieldExponent::new(i)), 1) == 0).collect();
        assert_eq!(zeros, [1, 2, 4]);
    }
}
