//! Polynomials over GF(2), packed into 64-bit limbs.
//!
//! Multiplication is Karatsuba over limbs with a software carry-less 64x64 base case.
//! The optional counter charges 64*64 bit products per base case.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{words_for, BitVec};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

/// Bit products charged per limb product.
pub const LIMB_PRODUCT_COST: u64 = 64 * 64;

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0; k / 64 + 1];
        limbs[k / 64] = 1 << (k % 64);
        Gf2Poly { limbs }
    }

    /// Sum of `x^e` over the given exponents (repeats cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p.trim();
        p
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Gf2Poly { limbs };
        p.trim();
        p
    }

    pub fn from_bitvec(v: &BitVec) -> Self {
        Self::from_limbs(v.words().to_vec())
    }

    /// Coefficients `0..len`; higher terms must be absent.
    pub fn to_bitvec(&self, len: usize) -> BitVec {
        debug_assert!(self.degree().map_or(true, |d| d < len));
        BitVec::from_words(len, self.limbs.clone())
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.limbs.get(k / 64).is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.limbs.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    fn flip(&mut self, k: usize) {
        if self.limbs.len() <= k / 64 {
            self.limbs.resize(k / 64 + 1, 0);
        }
        self.limbs[k / 64] ^= 1 << (k % 64);
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() { (self, other) } else { (other, self) };
        let mut limbs = long.limbs.clone();
        for (a, b) in limbs.iter_mut().zip(&short.limbs) {
            *a ^= b;
        }
        Self::from_limbs(limbs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut sink = 0;
        self.mul_counted(other, &mut sink)
    }

    /// Product, adding the number of bit products performed to `count`.
    pub fn mul_counted(&self, other: &Self, count: &mut u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + other.limbs.len()];
        let mut limb_products = 0;
        karatsuba(&self.limbs, &other.limbs, &mut out, &mut limb_products);
        *count += limb_products * LIMB_PRODUCT_COST;
        Self::from_limbs(out)
    }

    /// Shift left by `k` (multiply by `x^k`).
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (w, b) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + w + 1];
        for (i, &x) in self.limbs.iter().enumerate() {
            limbs[i + w] ^= x << b;
            if b > 0 {
                limbs[i + w + 1] ^= x >> (64 - b);
            }
        }
        Self::from_limbs(limbs)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.limbs.clone();
        let mut quo = vec![0u64; self.limbs.len()];
        let Some(da) = self.degree() else { return (Self::zero(), Self::zero()) };
        let mut i = da;
        while i >= db {
            if (rem[i / 64] >> (i % 64)) & 1 == 1 {
                let s = i - db;
                quo[s / 64] ^= 1 << (s % 64);
                xor_shifted(&mut rem, &divisor.limbs, s);
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
        (Self::from_limbs(quo), Self::from_limbs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// `(g, s, t)` with `s*self + t*other = g = gcd(self, other)`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s2 = s0.add(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s2);
            let t2 = t0.add(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    /// `x^n - 1`.
    pub fn x_n_minus_1(n: usize) -> Self {
        Self::from_exponents(&[0, n])
    }

    /// Reduction modulo `x^n - 1` by folding.
    pub fn fold(&self, n: usize) -> BitVec {
        let mut out = BitVec::zeros(n);
        for e in self.exponents() {
            out.flip(e % n);
        }
        out
    }

    /// Product in `F2[x]/(x^n - 1)`.
    pub fn mul_cyclic(a: &BitVec, b: &BitVec, count: &mut u64) -> BitVec {
        let n = a.len();
        let p = Self::from_bitvec(a).mul_counted(&Self::from_bitvec(b), count);
        fold_limbs(p.limbs(), n)
    }

    /// Cyclotomic polynomial `Phi_d` over GF(2).
    pub fn cyclotomic(d: usize) -> Self {
        let mut p = Self::x_n_minus_1(d);
        for e in 1..d {
            if d % e == 0 {
                p = p.div_rem(&Self::cyclotomic(e)).0;
            }
        }
        p
    }

    pub fn eval_at_one(&self) -> bool {
        self.limbs.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1
    }
}

/// Folds a linear product of length up to `2n` modulo `x^n - 1`.
pub(crate) fn fold_limbs(limbs: &[u64], n: usize) -> BitVec {
    let total = limbs.len() * 64;
    let mut out = vec![0u64; words_for(n)];
    let mut start = 0;
    while start < total {
        // bits start..start+n shifted down to 0
        let (w, b) = (start / 64, start % 64);
        for k in 0..out.len() {
            let lo = limbs.get(w + k).copied().unwrap_or(0) >> b;
            let hi = if b > 0 { limbs.get(w + k + 1).copied().unwrap_or(0) << (64 - b) } else { 0 };
            let mut x = lo | hi;
            if k == out.len() - 1 && n % 64 != 0 {
                x &= (1u64 << (n % 64)) - 1;
            }
            out[k] ^= x;
        }
        start += n;
    }
    BitVec::from_words(n, out)
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (w, b) = (shift / 64, shift % 64);
    for (i, &x) in src.iter().enumerate() {
        if i + w < dst.len() {
            dst[i + w] ^= x << b;
        }
        if b > 0 && i + w + 1 < dst.len() {
            dst[i + w + 1] ^= x >> (64 - b);
        }
    }
}

#[inline]
fn clmul(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    let mut x = a;
    while x != 0 {
        let i = x.trailing_zeros();
        lo ^= b << i;
        if i > 0 {
            hi ^= b >> (64 - i);
        }
        x &= x - 1;
    }
    (lo, hi)
}

// out ^= a * b; out.len() >= a.len() + b.len()
fn karatsuba(a: &[u64], b: &[u64], out: &mut [u64], products: &mut u64) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() == 1 {
        for (i, &x) in a.iter().enumerate() {
            let (lo, hi) = clmul(x, b[0]);
            out[i] ^= lo;
            out[i + 1] ^= hi;
        }
        *products += a.len() as u64;
        return;
    }
    let m = a.len().div_ceil(2);
    if b.len() <= m {
        karatsuba(&a[..m], b, out, products);
        karatsuba(&a[m..], b, &mut out[m..], products);
        return;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let mut z0 = vec![0u64; 2 * m];
    let mut z2 = vec![0u64; a1.len() + b1.len()];
    karatsuba(a0, b0, &mut z0, products);
    karatsuba(a1, b1, &mut z2, products);
    let mut sa = a0.to_vec();
    for (x, y) in sa.iter_mut().zip(a1) {
        *x ^= y;
    }
    let mut sb = b0.to_vec();
    for (x, y) in sb.iter_mut().zip(b1) {
        *x ^= y;
    }
    let mut z1 = vec![0u64; 2 * m];
    karatsuba(&sa, &sb, &mut z1, products);
    for (x, y) in z1.iter_mut().zip(&z0) {
        *x ^= y;
    }
    for (x, y) in z1.iter_mut().zip(&z2) {
        *x ^= y;
    }
    for (o, x) in out.iter_mut().zip(&z0) {
        *o ^= x;
    }
    for (o, x) in out[2 * m..].iter_mut().zip(&z2) {
        *o ^= x;
    }
    for (o, x) in out[m..].iter_mut().zip(&z1) {
        *o ^= x;
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exponents();
        if e.is_empty() {
            return f.write_str("0");
        }
        for (k, &x) in e.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            match x {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{x}")?,
            }
        }
        Ok(())
    }
}
