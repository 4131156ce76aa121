//! Group-ring encoding through one long binary polynomial product.
//!
//! An Abelian `G = Z_{n1} x .. x Z_{ns}` turns `R'G` into a multivariate cyclic ring with
//! dimensions `(n1, .., ns, q1-1, .., qt-1)`. Pairwise coprime dimensions collapse to a
//! single cyclic ring by the CRT; otherwise Kronecker substitution packs the dimensions
//! into one polynomial and the product is folded back. Either way the work is a single
//! Karatsuba product over 64-bit limbs.

use alloc::vec::Vec;

use super::{encode_groupring, encode_zero_divisor, EncodingCase, EncodingContext};
use crate::bits::BitVec;
use crate::error::Result;
use crate::group_ring::{crt, pairwise_coprime, GroupRing};
use crate::groups::mixed_digits;
use crate::poly::Gf2Poly;

/// Feasibility of a length-`exp(G)` DFT over the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fft2Gate {
    pub group_exponent: usize,
    /// Multiplicative order available in the residue field of `R'`; `F2` has only `1`.
    pub ring_order: usize,
    pub holds: bool,
}

pub fn fft2_gate(ring: &GroupRing) -> Fft2Gate {
    let group_exponent = ring.group().exponent();
    let ring_order = 1;
    Fft2Gate { group_exponent, ring_order, holds: group_exponent % 2 == 1 && ring_order % group_exponent == 0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastMethod {
    Crt,
    KroneckerSubstitution,
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastReport {
    pub gate: Fft2Gate,
    pub method: FastMethod,
    pub fallback_reason: Option<&'static str>,
    /// Bit products spent (64 * 64 per limb product).
    pub multiplications: u64,
    /// `(nb)^2`, schoolbook product of two elements.
    pub naive_multiplications: u64,
    /// `k n b^2`, schoolbook product skipping the empty message blocks.
    pub naive_block_multiplications: u64,
}

/// Bit-identical to [`encode_groupring`] (or [`encode_zero_divisor`]), with operation counts.
pub fn encode_fast(m: &BitVec, ctx: &EncodingContext) -> Result<(BitVec, FastReport)> {
    let ring = ctx.ring();
    let (n, b) = (ring.n() as u64, ring.b() as u64);
    let k = ctx.info_blocks().len() as u64;
    let mut report = FastReport {
        gate: fft2_gate(ring),
        method: FastMethod::Fallback,
        fallback_reason: None,
        multiplications: 0,
        naive_multiplications: (n * b) * (n * b),
        naive_block_multiplications: k * n * b * b,
    };
    let fallback = |reason, mut report: FastReport| -> Result<(BitVec, FastReport)> {
        report.fallback_reason = Some(reason);
        let c = match ctx.case() {
            EncodingCase::ZeroDivisorGeneral => encode_zero_divisor(m, ctx)?,
            _ => encode_groupring(m, ctx)?,
        };
        Ok((c, report))
    };
    if ctx.case() == EncodingCase::ZeroDivisorGeneral {
        return fallback("general zero-divisor case", report);
    }
    let Some(mut dims) = ring.group().cyclic_factors() else {
        return fallback("non-Abelian group", report);
    };
    dims.extend_from_slice(ring.ring().moduli());
    let a = ctx.message_element(m)?.to_bits();
    let u = ctx.u_t().to_bits();
    let mut count = 0;
    let c = if pairwise_coprime(&dims) {
        report.method = FastMethod::Crt;
        let total = a.len();
        let pos: Vec<usize> = (0..total).map(|i| crt(&mixed_digits(i, &dims), &dims)).collect();
        let scatter = |v: &BitVec| {
            let mut out = BitVec::zeros(total);
            for i in v.iter_ones() {
                out.set(pos[i], true);
            }
            out
        };
        let prod = Gf2Poly::mul_cyclic(&scatter(&a), &scatter(&u), &mut count);
        let mut out = BitVec::zeros(total);
        for (i, &p) in pos.iter().enumerate() {
            if prod.get(p) {
                out.set(i, true);
            }
        }
        out
    } else {
        report.method = FastMethod::KroneckerSubstitution;
        kronecker_cyclic(&a, &u, &dims, &mut count)
    };
    report.multiplications = count;
    Ok((c, report))
}

/// Multivariate cyclic product of mixed-radix bit arrays via Kronecker substitution.
fn kronecker_cyclic(a: &BitVec, b: &BitVec, dims: &[usize], count: &mut u64) -> BitVec {
    // each variable gets room for degree 2 d - 2
    let mut strides = alloc::vec![1usize; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * (2 * dims[j + 1] - 1);
    }
    let pack = |v: &BitVec| {
        let exps: Vec<usize> =
            v.iter_ones().map(|i| mixed_digits(i, dims).iter().zip(&strides).map(|(d, s)| d * s).sum()).collect();
        Gf2Poly::from_exponents(&exps)
    };
    let prod = pack(a).mul_counted(&pack(b), count);
    let mut out = BitVec::zeros(a.len());
    for e in prod.exponents() {
        let mut rem = e;
        let mut idx = 0;
        for (j, &d) in dims.iter().enumerate() {
            let digit = rem / strides[j];
            rem %= strides[j];
            idx = idx * d + digit % d;
        }
        out.flip(idx);
    }
    out
}
