use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{is_prime, is_supported, FieldExponent, GaloisField};
use crate::groups::FiniteGroup;

/// A `(v, k, lambda)` difference set in `Z_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub members: Vec<usize>,
}

impl DifferenceSet {
    /// `n' = k - lambda`.
    pub fn order(&self) -> usize {
        self.k - self.lambda
    }
}

/// Every non-identity element occurs exactly `lambda` times as `d1 d2^-1`, `d1 != d2`.
pub fn is_difference_set(group: &FiniteGroup, members: &[usize], lambda: usize) -> bool {
    let n = group.order();
    let mut seen = vec![false; n];
    for &m in members {
        if m >= n || core::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    let mut count = vec![0usize; n];
    for &a in members {
        for &b in members {
            if a != b {
                count[group.mul(a, group.inv(b))] += 1;
            }
        }
    }
    count[1..].iter().all(|&c| c == lambda)
}

/// `(p, d)` with `q = p^d`.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q % p == 0)?;
    let (mut x, mut d) = (q, 0);
    while x % p == 0 {
        x /= p;
        d += 1;
    }
    (x == 1 && is_prime(p as u64)).then_some((p, d))
}

/// Singer set `{ i in Z_v : trace(alpha^i) = 0 }` with trace from `F_{q^m}` to `F_q`.
pub fn singer_difference_set(q: u32, m: u32) -> Result<DifferenceSet> {
    let (p, d) = prime_power(q).ok_or(Error::InvalidParameter("q must be a prime power"))?;
    if m < 3 {
        return Err(Error::InvalidParameter("Singer sets need m >= 3"));
    }
    if !is_supported(p, d * m) {
        return Err(Error::UnsupportedField { p, beta: d * m });
    }
    let field = GaloisField::new(p, d * m)?;
    let (v, k, lambda) = singer_parameters(q as usize, m);
    let members = (0..v).filter(|&i| field.trace(field.alpha_pow(FieldExponent::new(i as u32)), d) == 0).collect();
    Ok(DifferenceSet { v, k, lambda, members })
}

/// `((q^m - 1)/(q - 1), (q^(m-1) - 1)/(q - 1), (q^(m-2) - 1)/(q - 1))`.
pub fn singer_parameters(q: usize, m: u32) -> (usize, usize, usize) {
    let s = |e: u32| (q.pow(e) - 1) / (q - 1);
    (s(m), s(m - 1), s(m - 2))
}

/// The same parameters from the zeros of a linear recurring sequence over a prime field,
/// driven by a primitive polynomial of degree `m` and a nonzero start state.
pub fn singer_difference_set_lfsr(q: u32, m: u32, start: &[u32]) -> Result<DifferenceSet> {
    if !is_prime(q as u64) {
        return Err(Error::InvalidParameter("recurrence route needs a prime q"));
    }
    if m < 3 || start.len() != m as usize || start.iter().all(|&s| s % q == 0) {
        return Err(Error::InvalidParameter("need m >= 3 and a nonzero start state of length m"));
    }
    let poly = GaloisField::new(q, m)?.primitive_poly().to_vec();
    let (v, k, lambda) = singer_parameters(q as usize, m);
    let mut state: Vec<u32> = start.iter().map(|s| s % q).collect();
    let mut members = Vec::new();
    for i in 0..v {
        if state[0] == 0 {
            members.push(i);
        }
        // s_{i+m} = -sum_j c_j s_{i+j}
        let mut next = 0;
        for (j, &s) in state.iter().enumerate() {
            next = (next + (q - poly[j] % q) * s) % q;
        }
        state.rotate_left(1);
        state[m as usize - 1] = next;
    }
    Ok(DifferenceSet { v, k, lambda, members })
}
