//! BPSK over AWGN with sum-product decoding.
//!
//! Every frame sends the all-zero codeword and draws its noise from a ChaCha8 stream
//! keyed by `(snr index, frame index)`, so results do not depend on how frames are
//! scheduled. Frames run in fixed batches and the stopping rule is checked only between
//! batches.

mod spa;

pub use spa::{spa_decode, DecodeOutcome, SpaDecoder, LLR_CLAMP};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

pub const DEFAULT_ITERATIONS: usize = 30;
pub const BATCH: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub seed: u64,
}

impl ChannelConfig {
    /// `1 / (2 R 10^(Eb/N0 / 10))`.
    pub fn noise_variance(&self) -> f64 {
        1.0 / (2.0 * self.rate * libm::pow(10.0, self.ebn0_db / 10.0))
    }

    pub fn sigma(&self) -> f64 {
        libm::sqrt(self.noise_variance())
    }
}

/// `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// Uncoded BPSK bit error rate.
pub fn uncoded_ber(ebn0_db: f64) -> f64 {
    q_function(libm::sqrt(2.0 * libm::pow(10.0, ebn0_db / 10.0)))
}

/// Parity-check matrix plus the information positions used to count bit errors.
#[derive(Debug, Clone)]
pub struct SimCode {
    h: BinaryMatrix,
    info_set: Vec<usize>,
}

impl SimCode {
    /// The non-pivot columns of the reduced `H` form an information set.
    pub fn new(h: BinaryMatrix) -> Self {
        let pivots = h.rref().pivots;
        let info_set = (0..h.cols()).filter(|c| !pivots.contains(c)).collect();
        SimCode { h, info_set }
    }

    /// No checks at all: plain BPSK.
    pub fn uncoded(n: usize) -> Self {
        Self::new(BinaryMatrix::zeros(0, n))
    }

    pub fn h(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn length(&self) -> usize {
        self.h.cols()
    }

    pub fn dimension(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.length() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub iterations: u64,
}

impl Tally {
    pub fn merge(&mut self, other: &Tally) {
        self.frames += other.frames;
        self.bit_errors += other.bit_errors;
        self.frame_errors += other.frame_errors;
        self.iterations += other.iterations;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRecord {
    pub ebn0_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub wer: f64,
    pub avg_iterations: f64,
}

impl SimRecord {
    pub fn from_tally(ebn0_db: f64, t: &Tally, k: usize) -> Self {
        let frames = t.frames.max(1) as f64;
        SimRecord {
            ebn0_db,
            frames: t.frames,
            bit_errors: t.bit_errors,
            frame_errors: t.frame_errors,
            ber: t.bit_errors as f64 / (frames * k as f64),
            wer: t.frame_errors as f64 / frames,
            avg_iterations: t.iterations as f64 / frames,
        }
    }
}

/// Noise stream for one frame.
pub fn frame_rng(seed: u64, snr_index: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((snr_index as u64) << 32) | (frame & 0xffff_ffff));
    rng
}

/// Sends one all-zero frame and decodes it.
pub fn run_frame(
    code: &SimCode,
    decoder: &mut SpaDecoder,
    cfg: &ChannelConfig,
    snr_index: usize,
    frame: u64,
    max_iters: usize,
    llr: &mut Vec<f64>,
) -> Tally {
    let mut rng = frame_rng(cfg.seed, snr_index, frame);
    let sigma = cfg.sigma();
    let scale = 2.0 / (sigma * sigma);
    llr.clear();
    for _ in 0..code.length() {
        let noise: f64 = StandardNormal.sample(&mut rng);
        llr.push((1.0 + sigma * noise) * scale);
    }
    let out = decoder.decode(llr, max_iters);
    let bit_errors = code.info_set.iter().filter(|&&i| out.bits.get(i)).count() as u64;
    Tally { frames: 1, bit_errors, frame_errors: (!out.bits.is_zero()) as u64, iterations: out.iterations as u64 }
}

/// Frames `start..end` of one SNR point, sequentially.
pub fn run_frames(
    code: &SimCode,
    cfg: &ChannelConfig,
    snr_index: usize,
    frames: core::ops::Range<u64>,
    max_iters: usize,
) -> Tally {
    let mut decoder = SpaDecoder::new(&code.h);
    let mut llr = Vec::with_capacity(code.length());
    let mut t = Tally::default();
    for f in frames {
        t.merge(&run_frame(code, &mut decoder, cfg, snr_index, f, max_iters, &mut llr));
    }
    t
}

/// Runs batches through `run_batch` until the stopping rule fires.
pub fn simulate_point_with<F>(stop: &StopRule, mut run_batch: F) -> Tally
where
    F: FnMut(core::ops::Range<u64>) -> Tally,
{
    let mut total = Tally::default();
    while total.frames < stop.max_frames && total.frame_errors < stop.min_frame_errors {
        let start = total.frames;
        let end = (start + BATCH).min(stop.max_frames);
        total.merge(&run_batch(start..end));
    }
    total
}

/// Sequential simulation over an SNR list.
pub fn simulate(code: &SimCode, snrs: &[f64], stop: &StopRule, max_iters: usize, seed: u64) -> Result<Vec<SimRecord>> {
    if code.dimension() == 0 {
        return Err(Error::InvalidParameter("code has dimension zero"));
    }
    let mut decoder = SpaDecoder::new(&code.h);
    let mut llr = Vec::with_capacity(code.length());
    let rate = code.rate();
    Ok(snrs
        .iter()
        .enumerate()
        .map(|(i, &ebn0_db)| {
            let cfg = ChannelConfig { ebn0_db, rate, seed };
            let t = simulate_point_with(stop, |range| {
                let mut t = Tally::default();
                for f in range {
                    t.merge(&run_frame(code, &mut decoder, &cfg, i, f, max_iters, &mut llr));
                }
                t
            });
            SimRecord::from_tally(ebn0_db, &t, code.dimension())
        })
        .collect())
}

pub const CSV_HEADER: &str = "ebn0_db,frames,bit_errors,frame_errors,ber,wer,avg_iters";

pub fn to_csv(records: &[SimRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{:.6e},{:.6e},{:.4}",
            r.ebn0_db, r.frames, r.bit_errors, r.frame_errors, r.ber, r.wer, r.avg_iterations
        );
    }
    s
}
