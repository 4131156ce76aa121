//! Invertibility of `sum alpha^(d_i) g_i` in `F2[x]/(x^(q-1) - 1) [Z_n]` via cyclotomic gcds.

use alloc::vec::Vec;

use crate::field::{is_prime, FieldExponent};
use crate::group_ring::crt;
use crate::groups::gcd;
use crate::poly::Gf2Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Invertible,
    NotInvertible,
    /// `n` and `q - 1` are not distinct odd primes, or `q` is not a power of two.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertibilityReport {
    pub verdict: Verdict,
    /// Exponents of the flattened polynomial `f`, one per nonzero coefficient.
    pub flat_exponents: Vec<usize>,
    /// `(d, gcd(f, Phi_d) == 1)` for `d` in `1, n, q-1, n(q-1)`.
    pub cyclotomic_coprime: Vec<(usize, bool)>,
    /// Whether 2 generates the units mod `n(q-1)`.
    pub two_is_primitive: bool,
}

/// Multiplicative order of `a` mod `m` (`gcd(a, m) = 1`).
fn mult_order(a: usize, m: usize) -> usize {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

fn totient(m: usize) -> usize {
    (1..=m).filter(|&k| gcd(k, m) == 1).count()
}

/// CRT exponents `d'_i = d_i (mod q-1)`, `d'_i = i (mod n)` and the gcd conditions
/// against the cyclotomic factors of `x^(n(q-1)) - 1`.
pub fn invertibility_test_cyclic(exps: &[FieldExponent], n: usize, q: usize) -> InvertibilityReport {
    let m = q.saturating_sub(1);
    let hypotheses = exps.len() == n
        && q.is_power_of_two()
        && q >= 4
        && n != m
        && n % 2 == 1
        && m % 2 == 1
        && is_prime(n as u64)
        && is_prime(m as u64);
    if !hypotheses {
        return InvertibilityReport {
            verdict: Verdict::Inconclusive,
            flat_exponents: Vec::new(),
            cyclotomic_coprime: Vec::new(),
            two_is_primitive: false,
        };
    }
    let total = n * m;
    let flat_exponents: Vec<usize> =
        exps.iter().enumerate().filter_map(|(i, e)| e.get().map(|d| crt(&[i, d as usize % m], &[n, m]))).collect();
    let mut f = Gf2Poly::zero();
    for &e in &flat_exponents {
        f = f.add(&Gf2Poly::monomial(e));
    }
    let cyclotomic_coprime: Vec<(usize, bool)> =
        [1, n, m, total].iter().map(|&d| (d, f.gcd(&Gf2Poly::cyclotomic(d)).is_one())).collect();
    let verdict = if cyclotomic_coprime.iter().all(|&(_, ok)| ok) { Verdict::Invertible } else { Verdict::NotInvertible };
    InvertibilityReport { verdict, flat_exponents, cyclotomic_coprime, two_is_primitive: mult_order(2, total) == totient(total) }
}
