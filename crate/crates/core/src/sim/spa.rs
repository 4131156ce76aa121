//! Log-domain sum-product decoding.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::gf2::BinaryMatrix;

/// Messages are clamped to this magnitude.
pub const LLR_CLAMP: f64 = 30.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub bits: BitVec,
    pub converged: bool,
    pub iterations: usize,
}

/// Tanner graph of a parity-check matrix with message buffers, reusable across frames.
#[derive(Debug, Clone)]
pub struct SpaDecoder {
    n: usize,
    // edges grouped by check: check c owns check_ptr[c]..check_ptr[c + 1]
    check_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    // edge ids grouped by variable
    var_ptr: Vec<usize>,
    var_edges: Vec<usize>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    scratch: Vec<f64>,
}

// the platform routines are several times faster than libm's portable ones
#[cfg(feature = "std")]
fn exp(x: f64) -> f64 {
    x.exp()
}

#[cfg(feature = "std")]
fn ln(x: f64) -> f64 {
    x.ln()
}

#[cfg(not(feature = "std"))]
use libm::{exp, log as ln};

fn clamp(x: f64) -> f64 {
    x.clamp(-LLR_CLAMP, LLR_CLAMP)
}

impl SpaDecoder {
    pub fn new(h: &BinaryMatrix) -> Self {
        let n = h.cols();
        let mut check_ptr = vec![0];
        let mut edge_var = Vec::new();
        for r in 0..h.rows() {
            edge_var.extend(h.row(r).iter_ones());
            check_ptr.push(edge_var.len());
        }
        let mut degree = vec![0usize; n];
        for &v in &edge_var {
            degree[v] += 1;
        }
        let mut var_ptr = vec![0usize; n + 1];
        for v in 0..n {
            var_ptr[v + 1] = var_ptr[v] + degree[v];
        }
        let mut fill = var_ptr.clone();
        let mut var_edges = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        let max_row = check_ptr.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        SpaDecoder {
            n,
            check_ptr,
            v2c: vec![0.0; edge_var.len()],
            c2v: vec![0.0; edge_var.len()],
            edge_var,
            var_ptr,
            var_edges,
            scratch: vec![0.0; max_row],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn checks(&self) -> usize {
        self.check_ptr.len() - 1
    }

    // positive llr means 0; an exact zero is an erasure and blocks convergence
    fn hard_decision(&self, totals: &[f64], bits: &mut BitVec) -> bool {
        let mut erased = false;
        for (v, &t) in totals.iter().enumerate() {
            bits.set(v, t < 0.0);
            erased |= t == 0.0;
        }
        !erased
    }

    fn syndrome_ok(&self, bits: &BitVec) -> bool {
        (0..self.checks()).all(|c| {
            let edges = self.check_ptr[c]..self.check_ptr[c + 1];
            edges.filter(|&e| bits.get(self.edge_var[e])).count() % 2 == 0
        })
    }

    /// Decodes channel LLRs (`log P(0)/P(1)`), stopping as soon as every check holds.
    pub fn decode(&mut self, llr: &[f64], max_iters: usize) -> DecodeOutcome {
        assert_eq!(llr.len(), self.n, "llr length differs from code length");
        let mut bits = BitVec::zeros(self.n);
        let mut totals: Vec<f64> = llr.iter().map(|&x| clamp(x)).collect();
        if self.hard_decision(&totals, &mut bits) && self.syndrome_ok(&bits) {
            return DecodeOutcome { bits, converged: true, iterations: 0 };
        }
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.v2c[e] = totals[v];
        }
        for it in 1..=max_iters {
            self.check_update();
            for v in 0..self.n {
                let edges = &self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]];
                let total = clamp(llr[v]) + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
                totals[v] = total;
                for &e in edges {
                    self.v2c[e] = clamp(total - self.c2v[e]);
                }
            }
            if self.hard_decision(&totals, &mut bits) && self.syndrome_ok(&bits) {
                return DecodeOutcome { bits, converged: true, iterations: it };
            }
        }
        DecodeOutcome { bits, converged: false, iterations: max_iters }
    }

    // tanh rule with prefix/suffix products to exclude each edge;
    // tanh(x/2) = (1 - e^-|x|)/(1 + e^-|x|) and 2 atanh(p) = ln((1 + p)/(1 - p))
    fn check_update(&mut self) {
        const LIMIT: f64 = 1.0 - 1e-13;
        for c in 0..self.checks() {
            let (lo, hi) = (self.check_ptr[c], self.check_ptr[c + 1]);
            let d = hi - lo;
            let t = &mut self.scratch[..d];
            for (k, e) in (lo..hi).enumerate() {
                let x = self.v2c[e];
                let z = exp(-x.abs());
                t[k] = ((1.0 - z) / (1.0 + z)).copysign(x);
            }
            let mut prefix = 1.0;
            for (out, &tk) in self.c2v[lo..hi].iter_mut().zip(t.iter()) {
                *out = prefix;
                prefix *= tk;
            }
            let mut suffix = 1.0;
            for k in (0..d).rev() {
                let p = (self.c2v[lo + k] * suffix).clamp(-LIMIT, LIMIT);
                suffix *= t[k];
                self.c2v[lo + k] = clamp(ln((1.0 + p) / (1.0 - p)));
            }
        }
    }
}

/// One-shot decode.
pub fn spa_decode(h: &BinaryMatrix, llr: &[f64], max_iters: usize) -> DecodeOutcome {
    SpaDecoder::new(h).decode(llr, max_iters)
}
