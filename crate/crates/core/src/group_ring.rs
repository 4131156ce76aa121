//! Group rings `R'G` over the binary tensor ring.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::groups::{gcd, FiniteGroup, GroupKind};
use crate::poly::Gf2Poly;
use crate::ring::TensorRing;

/// Coefficient of every group element, in listing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    coeffs: Vec<BitVec>,
}

impl GroupRingElement {
    pub fn coeffs(&self) -> &[BitVec] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &BitVec {
        &self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BitVec::is_zero)
    }

    /// Concatenated coefficient bits, the binary image of the element.
    pub fn to_bits(&self) -> BitVec {
        BitVec::concat(&self.coeffs)
    }
}

/// Square matrix with ring entries.
pub type RingMatrix = Vec<Vec<BitVec>>;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupRing {
    group: FiniteGroup,
    ring: TensorRing,
}

/// How an inverse was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseMethod {
    Euclid,
    LiftedMatrix,
}

impl GroupRing {
    pub fn new(group: FiniteGroup, ring: TensorRing) -> Self {
        GroupRing { group, ring }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ring(&self) -> &TensorRing {
        &self.ring
    }

    /// Number of group elements.
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn b(&self) -> usize {
        self.ring.b()
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement { coeffs: vec![self.ring.zero(); self.n()] }
    }

    pub fn one(&self) -> GroupRingElement {
        let mut z = self.zero();
        z.coeffs[0] = self.ring.one();
        z
    }

    pub fn element(&self, coeffs: Vec<BitVec>) -> Result<GroupRingElement> {
        if coeffs.len() != self.n() {
            return Err(Error::Mismatch("coefficient count differs from group order"));
        }
        for c in &coeffs {
            self.ring.check(c)?;
        }
        Ok(GroupRingElement { coeffs })
    }

    /// Reads an element back from its concatenated binary image.
    pub fn from_bits(&self, bits: &BitVec) -> Result<GroupRingElement> {
        if bits.len() != self.n() * self.b() {
            return Err(Error::Mismatch("bit length differs from n*b"));
        }
        Ok(GroupRingElement { coeffs: (0..self.n()).map(|g| bits.slice(g * self.b(), self.b())).collect() })
    }

    pub fn check(&self, a: &GroupRingElement) -> Result<()> {
        if a.coeffs.len() != self.n() || a.coeffs.iter().any(|c| c.len() != self.b()) {
            return Err(Error::Mismatch("element does not belong to this group ring"));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.ring.add(x, y)).collect();
        Ok(GroupRingElement { coeffs })
    }

    /// Convolution product: the coefficient of `g` is the sum of `a(h) b(h^-1 g)`.
    pub fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (h, ah) in a.coeffs.iter().enumerate() {
            if ah.is_zero() {
                continue;
            }
            for (k, bk) in b.coeffs.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let p = self.ring.mul(ah, bk);
                out.coeffs[self.group.mul(h, k)].xor_assign(&p);
            }
        }
        Ok(out)
    }

    /// Entry `(i, j)` is the coefficient of `g_i^-1 g_j`.
    pub fn rg_matrix(&self, w: &GroupRingElement) -> RingMatrix {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| w.coeffs[self.group.mul(self.group.inv(i), j)].clone()).collect()).collect()
    }

    /// `sum f_g(x^-1) g^-1`.
    pub fn transpose_element(&self, u: &GroupRingElement) -> GroupRingElement {
        let mut out = self.zero();
        for (g, c) in u.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(g)] = self.ring.reverse(c);
        }
        out
    }

    /// Replaces every ring entry by its `b x b` binary matrix.
    pub fn lift_matrix(&self, m: &[Vec<BitVec>]) -> BinaryMatrix {
        let b = self.b();
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut out = BinaryMatrix::zeros(rows * b, cols * b);
        for (i, row) in m.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if !f.is_zero() {
                    out.paste(i * b, j * b, &self.ring.lift(f));
                }
            }
        }
        out
    }

    /// The `nb x nb` binary image of the RG-matrix of `w`.
    pub fn lift_element(&self, w: &GroupRingElement) -> BinaryMatrix {
        self.lift_matrix(&self.rg_matrix(w))
    }

    /// Whether the Euclid route applies: cyclic G with `n, b1, .., bt` pairwise coprime.
    pub fn crt_flattenable(&self) -> bool {
        let GroupKind::Cyclic(n) = *self.group.kind() else { return false };
        let mut orders = vec![n];
        orders.extend_from_slice(self.ring.moduli());
        pairwise_coprime(&orders)
    }

    /// CRT position in `Z_N` of (group index, ring index); only valid when flattenable.
    pub fn crt_position(&self, g: usize, r: usize) -> usize {
        let mut orders = vec![self.n()];
        orders.extend_from_slice(self.ring.moduli());
        let mut residues = vec![g];
        residues.extend(self.ring.psi_inv(r));
        crt(&residues, &orders)
    }

    /// Image in `F2[x]/(x^N - 1)` when flattenable.
    pub fn flatten(&self, a: &GroupRingElement) -> BitVec {
        let total = self.n() * self.b();
        let mut out = BitVec::zeros(total);
        for (g, c) in a.coeffs.iter().enumerate() {
            for r in c.iter_ones() {
                out.set(self.crt_position(g, r), true);
            }
        }
        out
    }

    pub fn unflatten(&self, v: &BitVec) -> GroupRingElement {
        let mut out = self.zero();
        for g in 0..self.n() {
            for r in 0..self.b() {
                if v.get(self.crt_position(g, r)) {
                    out.coeffs[g].set(r, true);
                }
            }
        }
        out
    }

    /// Inverse of a unit, `None` for zero divisors.
    pub fn invert(&self, w: &GroupRingElement) -> Result<Option<GroupRingElement>> {
        Ok(self.invert_with_method(w)?.map(|(u, _)| u))
    }

    pub fn invert_with_method(&self, w: &GroupRingElement) -> Result<Option<(GroupRingElement, InverseMethod)>> {
        self.check(w)?;
        if self.crt_flattenable() {
            let total = self.n() * self.b();
            let f = Gf2Poly::from_bitvec(&self.flatten(w));
            return Ok(f
                .inv_mod(&Gf2Poly::x_n_minus_1(total))
                .map(|inv| (self.unflatten(&inv.to_bitvec(total)), InverseMethod::Euclid)));
        }
        let lifted = self.lift_element(w);
        let Ok(inv) = lifted.inverse() else { return Ok(None) };
        // block row 0 of the inverse lists the coefficients of u
        let u = self.from_bits(inv.row(0))?;
        debug_assert_eq!(self.mul(w, &u)?, self.one());
        Ok(Some((u, InverseMethod::LiftedMatrix)))
    }

    /// Determinant of a square ring matrix. Over characteristic 2 it equals the permanent,
    /// computed by dynamic programming over column subsets (sizes up to 20).
    pub fn determinant(&self, m: &[Vec<BitVec>]) -> Result<BitVec> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch("determinant of a non-square matrix"));
        }
        if n > 20 {
            return Err(Error::InvalidParameter("determinant limited to 20x20"));
        }
        let mut dp = vec![self.ring.zero(); 1 << n];
        dp[0] = self.ring.one();
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) == 0 && !m[row][c].is_zero() {
                    let p = self.ring.mul(&dp[mask], &m[row][c]);
                    dp[mask | (1 << c)].xor_assign(&p);
                }
            }
        }
        Ok(dp[(1 << n) - 1].clone())
    }
}

pub fn pairwise_coprime(orders: &[usize]) -> bool {
    orders.iter().enumerate().all(|(i, &a)| orders[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

/// Solution of `z = r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[usize], moduli: &[usize]) -> usize {
    let total: usize = moduli.iter().product();
    let mut z = 0u128;
    for (&r, &m) in residues.iter().zip(moduli) {
        if m == 1 {
            continue;
        }
        let rest = (total / m) as u128;
        let inv = mod_inverse((rest % m as u128) as u64, m as u64).expect("coprime moduli") as u128;
        z = (z + (r as u128 % m as u128) * rest % total as u128 * inv) % total as u128;
    }
    z as usize
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}
