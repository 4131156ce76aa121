//! Encoders for codes defined by group-ring elements.
//!
//! For a unit `w` with inverse `u`, the parity-check matrix is the lift of the rows `L`
//! of the RG-matrix of `w`, and a message placed on the complementary blocks `L'` is
//! encoded as `m_{L'} * u^t`. Zero divisors need an annihilator `u` with `w u = 0`.

mod fast;
mod invertibility;

pub use fast::{encode_fast, fft2_gate, FastMethod, FastReport, Fft2Gate};
pub use invertibility::{invertibility_test_cyclic, InvertibilityReport, Verdict};

use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::group_ring::{GroupRing, GroupRingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingCase {
    Unit,
    /// Zero divisor whose annihilator alone spans the code.
    ZeroDivisorSimple,
    /// Zero divisor needing extra generators from a right inverse of the checks.
    ZeroDivisorGeneral,
}

/// Extra generators for the general zero-divisor case.
#[derive(Debug, Clone)]
pub struct Complement {
    /// Rows of the lifted RG-matrix of `w` kept as independent checks (`H'`).
    pub independent_rows: Vec<usize>,
    /// Solution of `H' C = I`.
    pub right_inverse: BinaryMatrix,
    /// Columns of `C` belonging to rows outside `H`, as generator rows.
    pub extra: BinaryMatrix,
}

#[derive(Debug, Clone)]
pub struct EncodingContext {
    ring: GroupRing,
    w: GroupRingElement,
    u: GroupRingElement,
    /// `u^t`, the right factor of every group-ring encoding.
    u_t: GroupRingElement,
    check_rows: Vec<usize>,
    info_blocks: Vec<usize>,
    case: EncodingCase,
    h: BinaryMatrix,
    generator: BinaryMatrix,
    /// Positions (block * b + offset) of the independent columns of the lifted `U`.
    annihilator_cols: Vec<usize>,
    lifted_rank_w: usize,
    complement: Option<Complement>,
}

impl EncodingContext {
    /// Context for a unit `w`; the parity checks are the block rows `check_rows` of its RG-matrix.
    pub fn unit(ring: GroupRing, w: GroupRingElement, check_rows: &[usize]) -> Result<Self> {
        ring.check(&w)?;
        let n = ring.n();
        let check_rows = normalize_rows(check_rows, n)?;
        let u = ring.invert(&w)?.ok_or(Error::NotInvertible)?;
        let info_blocks: Vec<usize> = (0..n).filter(|i| !check_rows.contains(i)).collect();
        let h = lifted_rows(&ring, &w, &check_rows);
        let u_t = ring.transpose_element(&u);
        let generator = lifted_rows(&ring, &u_t, &info_blocks);
        let b = ring.b();
        let annihilator_cols = info_blocks.iter().flat_map(|&l| l * b..(l + 1) * b).collect();
        Ok(EncodingContext {
            ring,
            w,
            u,
            u_t,
            check_rows,
            info_blocks,
            case: EncodingCase::Unit,
            h,
            generator,
            annihilator_cols,
            lifted_rank_w: n * b,
            complement: None,
        })
    }

    /// Context for a zero divisor `w` with a supplied annihilator `u` (`w u = 0`).
    ///
    /// Generators are the independent columns of the lifted RG-matrix of `u`; if they do not span
    /// the whole code, independent rows `H'` of the lifted `W` are solved against `H' C = I` and
    /// the columns of `C` for rows outside `H` are added.
    pub fn zero_divisor(ring: GroupRing, w: GroupRingElement, u: GroupRingElement, check_rows: &[usize]) -> Result<Self> {
        ring.check(&w)?;
        ring.check(&u)?;
        let n = ring.n();
        let b = ring.b();
        let check_rows = normalize_rows(check_rows, n)?;
        if u.is_zero() || !ring.mul(&w, &u)?.is_zero() {
            return Err(Error::InvalidParameter("u must be a nonzero annihilator of w"));
        }
        let lifted_w = ring.lift_element(&w);
        let lifted_u = ring.lift_element(&u);
        let annihilator_cols = lifted_u.transpose().independent_rows();
        let h = lifted_rows(&ring, &w, &check_rows);
        let dimension = n * b - h.rank();
        let u_t = ring.transpose_element(&u);
        let u_part = lifted_u.transpose().select_rows(&annihilator_cols);

        let independent_rows = lifted_w.independent_rows();
        let lifted_rank_w = independent_rows.len();
        let (case, generator, complement) = if annihilator_cols.len() == dimension {
            (EncodingCase::ZeroDivisorSimple, u_part, None)
        } else {
            let h_prime = lifted_w.select_rows(&independent_rows);
            let c = h_prime.right_inverse()?;
            let in_h = |row: usize| check_rows.contains(&(row / b));
            let extra_cols: Vec<usize> = independent_rows.iter().enumerate().filter(|(_, &r)| !in_h(r)).map(|(k, _)| k).collect();
            let extra = c.select_cols(&extra_cols).transpose();
            let generator = u_part.vstack(&extra)?;
            (EncodingCase::ZeroDivisorGeneral, generator, Some(Complement { independent_rows, right_inverse: c, extra }))
        };
        let info_blocks = (0..n).filter(|i| !check_rows.contains(i)).collect();
        Ok(EncodingContext {
            ring,
            w,
            u,
            u_t,
            check_rows,
            info_blocks,
            case,
            h,
            generator,
            annihilator_cols,
            lifted_rank_w,
            complement,
        })
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    pub fn w(&self) -> &GroupRingElement {
        &self.w
    }

    pub fn u(&self) -> &GroupRingElement {
        &self.u
    }

    pub fn case(&self) -> EncodingCase {
        self.case
    }

    pub fn check_rows(&self) -> &[usize] {
        &self.check_rows
    }

    pub fn info_blocks(&self) -> &[usize] {
        &self.info_blocks
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    /// Generator rows; full rank in the unit case.
    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn annihilator_cols(&self) -> &[usize] {
        &self.annihilator_cols
    }

    /// Binary rank of the lifted RG-matrix of `w`.
    pub fn lifted_rank_w(&self) -> usize {
        self.lifted_rank_w
    }

    pub fn complement(&self) -> Option<&Complement> {
        self.complement.as_ref()
    }

    /// Accepted message length.
    pub fn message_len(&self) -> usize {
        self.generator.rows()
    }

    pub fn codeword_len(&self) -> usize {
        self.ring.n() * self.ring.b()
    }

    /// `nb - rank(H)`.
    pub fn code_dimension(&self) -> usize {
        self.codeword_len() - self.h.rank()
    }

    pub(crate) fn u_t(&self) -> &GroupRingElement {
        &self.u_t
    }

    /// Message as a group-ring element supported on the information blocks.
    pub(crate) fn message_element(&self, m: &BitVec) -> Result<GroupRingElement> {
        if m.len() != self.message_len() {
            return Err(Error::Mismatch("message length differs from the generator row count"));
        }
        let b = self.ring.b();
        let mut coeffs = alloc::vec![BitVec::zeros(b); self.ring.n()];
        for (j, &pos) in self.annihilator_cols.iter().enumerate().take(m.len()) {
            if m.get(j) {
                coeffs[pos / b].set(pos % b, true);
            }
        }
        self.ring.element(coeffs)
    }
}

fn normalize_rows(rows: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    if rows.iter().any(|&r| r >= n) {
        return Err(Error::InvalidParameter("check row outside the group"));
    }
    Ok(rows)
}

fn lifted_rows(ring: &GroupRing, w: &GroupRingElement, rows: &[usize]) -> BinaryMatrix {
    let rg = ring.rg_matrix(w);
    let picked: Vec<_> = rows.iter().map(|&r| rg[r].clone()).collect();
    if picked.is_empty() {
        return BinaryMatrix::zeros(0, ring.n() * ring.b());
    }
    ring.lift_matrix(&picked)
}

/// `m G`.
pub fn encode_matrix(m: &BitVec, g: &BinaryMatrix) -> Result<BitVec> {
    g.left_mul(m)
}

/// `m_{L'} * u^t` in the group ring.
pub fn encode_groupring(m: &BitVec, ctx: &EncodingContext) -> Result<BitVec> {
    if ctx.case == EncodingCase::ZeroDivisorGeneral {
        return Err(Error::UnsupportedStructure("general zero-divisor codes need encode_zero_divisor"));
    }
    let msg = ctx.message_element(m)?;
    Ok(ctx.ring.mul(&msg, &ctx.u_t)?.to_bits())
}

/// `m1 U1^t + m2 C1^t`, the first part computed in the group ring.
pub fn encode_zero_divisor(m: &BitVec, ctx: &EncodingContext) -> Result<BitVec> {
    if ctx.case == EncodingCase::Unit {
        return Err(Error::UnsupportedStructure("unit codes use encode_groupring"));
    }
    if m.len() != ctx.message_len() {
        return Err(Error::Mismatch("message length differs from the generator row count"));
    }
    let k1 = ctx.annihilator_cols.len();
    let mut m1 = m.slice(0, k1);
    m1 = BitVec::concat([&m1, &BitVec::zeros(m.len() - k1)]);
    let msg = ctx.message_element(&m1)?;
    let mut c = ctx.ring.mul(&msg, &ctx.u_t)?.to_bits();
    if let Some(comp) = &ctx.complement {
        c.xor_assign(&comp.extra.left_mul(&m.slice(k1, m.len() - k1))?);
    }
    Ok(c)
}
