//! Rayon driver for the simulation harness.
//!
//! Batches are evaluated in parallel in fixed-size rounds and folded in batch order, so the
//! stopping point and every counter match the sequential harness for any thread count.

use qcgr_core::sim::{run_frames, ChannelConfig, SimCode, SimRecord, StopRule, Tally, BATCH};
use rayon::prelude::*;

const ROUND: u64 = 16;

pub fn simulate_point(code: &SimCode, cfg: &ChannelConfig, snr_index: usize, stop: &StopRule, max_iters: usize) -> Tally {
    let mut total = Tally::default();
    let done = |t: &Tally| t.frames >= stop.max_frames || t.frame_errors >= stop.min_frame_errors;
    while !done(&total) {
        let base = total.frames;
        let batches: Vec<Tally> = (0..ROUND)
            .into_par_iter()
            .map(|j| {
                let start = (base + j * BATCH).min(stop.max_frames);
                let end = (start + BATCH).min(stop.max_frames);
                run_frames(code, cfg, snr_index, start..end, max_iters)
            })
            .collect();
        for b in &batches {
            if done(&total) || b.frames == 0 {
                break;
            }
            total.merge(b);
        }
    }
    total
}

pub fn simulate(code: &SimCode, snrs: &[f64], stop: &StopRule, max_iters: usize, seed: u64) -> Vec<SimRecord> {
    snrs.iter()
        .enumerate()
        .map(|(i, &ebn0_db)| {
            let cfg = ChannelConfig { ebn0_db, rate: code.rate(), seed };
            let t = simulate_point(code, &cfg, i, stop, max_iters);
            log::info!("{ebn0_db} dB: {} frames, {} frame errors", t.frames, t.frame_errors);
            SimRecord::from_tally(ebn0_db, &t, code.dimension())
        })
        .collect()
}
