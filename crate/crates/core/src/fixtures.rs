//! Named codes with their expected parameters, and seeded unit-element encoder setups.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitVec;
use crate::construction::{construct_theorem2, extended_subarray, lift, ExponentMatrix, LiftedCode};
use crate::encoder::EncodingContext;
use crate::error::Result;
use crate::group_ring::{GroupRing, GroupRingElement};
use crate::groups::{FiniteGroup, GroupKind};
use crate::ring::TensorRing;

/// A code from the cyclic-group construction over `GF(p^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFixture {
    pub name: &'static str,
    pub group_order: usize,
    pub p: u32,
    pub rho: usize,
    pub gamma: usize,
    /// `[sub(W) | sub(-W)]` instead of `sub(W)`.
    pub extended: bool,
    pub length: usize,
    pub dimension: usize,
    pub note: &'static str,
}

impl CodeFixture {
    pub fn exponent_matrix(&self) -> Result<ExponentMatrix> {
        let w = construct_theorem2(&FiniteGroup::cyclic(self.group_order)?, self.p)?;
        if self.extended {
            extended_subarray(&w, self.rho, self.gamma)
        } else {
            w.subarray(self.rho, self.gamma)
        }
    }

    pub fn build(&self) -> Result<LiftedCode> {
        Ok(lift(&self.exponent_matrix()?))
    }
}

pub fn code_fixtures() -> Vec<CodeFixture> {
    let f = |name, group_order, rho, gamma, extended, length, dimension, note| CodeFixture {
        name,
        group_order,
        p: 2,
        rho,
        gamma,
        extended,
        length,
        dimension,
        note,
    };
    vec![
        f("c1", 8, 4, 8, false, 2040, 1031, "Z8 over GF(256), 4x8 subarray: (2040,1031), rate 0.505"),
        f("c2", 8, 3, 8, false, 2040, 1279, "Z8 over GF(256), 3x8 subarray: (2040,1279)"),
        f("c3", 9, 3, 6, false, 3066, 1538, "Z9 over GF(512), 3x6 subarray: (3066,1538), rate 0.501"),
        f("c4", 7, 4, 7, true, 1778, 1273, "Z7 over GF(128), [H(4,7) | -H(4,7)]: (1778,1273)"),
        f("c5", 8, 3, 8, true, 4080, 3319, "Z8 over GF(256), [H(3,8) | -H(3,8)]: (4080,3319)"),
    ]
}

pub fn code_fixture(name: &str) -> Option<CodeFixture> {
    code_fixtures().into_iter().find(|f| f.name == name)
}

/// First unit drawn from a seeded ChaCha8 stream of uniform elements.
pub fn random_unit(ring: &GroupRing, seed: u64) -> Result<GroupRingElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = ring.n() * ring.b();
    loop {
        let bools: Vec<bool> = (0..len).map(|_| rng.next_u32() & 1 == 1).collect();
        let w = ring.from_bits(&BitVec::from_bools(&bools))?;
        if ring.invert(&w)?.is_some() {
            return Ok(w);
        }
    }
}

/// Unit-derived code in `F2[x1..xt]/(..)[G]` with the given check block rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderFixture {
    pub name: &'static str,
    pub group: GroupKind,
    pub moduli: Vec<usize>,
    pub check_rows: Vec<usize>,
    pub seed: u64,
}

impl EncoderFixture {
    pub fn ring(&self) -> Result<GroupRing> {
        Ok(GroupRing::new(FiniteGroup::new(self.group.clone())?, TensorRing::new(self.moduli.clone())?))
    }

    pub fn build(&self) -> Result<EncodingContext> {
        let ring = self.ring()?;
        let w = random_unit(&ring, self.seed)?;
        EncodingContext::unit(ring, w, &self.check_rows)
    }
}

pub fn encoder_fixtures() -> Vec<EncoderFixture> {
    let f = |name, group, moduli: &[usize], rows: &[usize], seed| EncoderFixture {
        name,
        group,
        moduli: moduli.to_vec(),
        check_rows: rows.to_vec(),
        seed,
    };
    vec![
        f("e1", GroupKind::Cyclic(3), &[7], &[0], 1),
        f("e2", GroupKind::Cyclic(5), &[31], &[0, 1], 2),
        f("e3", GroupKind::DirectProduct(vec![2, 2]), &[3, 5], &[0, 3], 3),
        f("e4", GroupKind::Dihedral(8), &[7], &[0, 2, 5], 4),
        f("e5", GroupKind::Quaternion, &[3], &[1], 5),
        f("e6", GroupKind::Cyclic(9), &[511], &[0, 1, 2], 6),
    ]
}

pub fn encoder_fixture(name: &str) -> Option<EncoderFixture> {
    encoder_fixtures().into_iter().find(|f| f.name == name)
}
