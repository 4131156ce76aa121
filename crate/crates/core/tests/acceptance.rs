//! Acceptance criteria, one PASS/FAIL line each.
//!
//! The simulation criterion runs about ten minutes on one core with an optimized build.

use std::io::Write;
use std::time::Instant;

use qcgr_core::combinatorics::{
    is_difference_set, s2_upper_bound, search_max_s2, search_s2_of_size, singer_difference_set, AbelianGroup, DEFAULT_BUDGET,
};
use qcgr_core::construction::{check_constraints, construct_theorem2, lift, ExponentMatrix};
use qcgr_core::encoder::{encode_fast, encode_groupring, encode_matrix, encode_zero_divisor, EncodingContext};
use qcgr_core::fixtures::{code_fixtures, encoder_fixtures};
use qcgr_core::sim::{self, uncoded_ber, SimCode, StopRule, DEFAULT_ITERATIONS};
use qcgr_core::{BinaryMatrix, BitVec, FieldExponent, FiniteGroup, GroupKind, GroupRing, TensorRing};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

/// Writes to the stderr handle directly so the lines show up even when output is captured.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bits_matrix(rows: &[&str]) -> BinaryMatrix {
    let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|c| c - b'0').collect()).collect();
    let rows: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
    BinaryMatrix::from_bits(&rows)
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> BitVec {
    let bools: Vec<bool> = (0..len).map(|_| rng.next_u32() & 1 == 1).collect();
    BitVec::from_bools(&bools)
}

const Z8_W: [[u32; 8]; 8] = [
    [1, 2, 4, 8, 16, 32, 64, 128],
    [128, 1, 2, 4, 8, 16, 32, 64],
    [64, 128, 1, 2, 4, 8, 16, 32],
    [32, 64, 128, 1, 2, 4, 8, 16],
    [16, 32, 64, 128, 1, 2, 4, 8],
    [8, 16, 32, 64, 128, 1, 2, 4],
    [4, 8, 16, 32, 64, 128, 1, 2],
    [2, 4, 8, 16, 32, 64, 128, 1],
];

const D8_W: [[u32; 8]; 8] = [
    [1, 2, 4, 8, 16, 32, 64, 128],
    [8, 1, 2, 4, 128, 16, 32, 64],
    [4, 8, 1, 2, 64, 128, 16, 32],
    [2, 4, 8, 1, 32, 64, 128, 16],
    [16, 32, 64, 128, 1, 2, 4, 8],
    [128, 16, 32, 64, 8, 1, 2, 4],
    [64, 128, 16, 32, 4, 8, 1, 2],
    [32, 64, 128, 16, 2, 4, 8, 1],
];

const Q8_W: [[u32; 8]; 8] = [
    [1, 2, 4, 8, 16, 32, 64, 128],
    [2, 1, 8, 4, 32, 16, 128, 64],
    [8, 4, 1, 2, 128, 64, 16, 32],
    [4, 8, 2, 1, 64, 128, 32, 16],
    [32, 16, 64, 128, 1, 2, 8, 4],
    [16, 32, 128, 64, 2, 1, 4, 8],
    [128, 64, 32, 16, 4, 8, 1, 2],
    [64, 128, 16, 32, 8, 4, 2, 1],
];

fn theorem2_matrix(kind: GroupKind) -> Result<ExponentMatrix, String> {
    construct_theorem2(&FiniteGroup::new(kind).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())
}

fn matches(w: &ExponentMatrix, printed: &[[u32; 8]; 8]) -> Result<(), String> {
    for (i, row) in printed.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let got = w.entry(i, j)[0].get();
            ensure(got == Some(e), || format!("entry ({i},{j}): {got:?} != {e}"))?;
        }
    }
    Ok(())
}

/// Whether some identity-first listing of `group` gives `printed` as the matrix with
/// entry (i, j) = 2^pos(g_i^-1 g_j).
fn some_listing_reproduces(group: &FiniteGroup, printed: &[[u32; 8]; 8]) -> bool {
    fn permute(rest: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == rest.len() {
            return visit(rest);
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            if permute(rest, k + 1, visit) {
                return true;
            }
            rest.swap(k, i);
        }
        false
    }
    let mut rest: Vec<usize> = (1..8).collect();
    permute(&mut rest, 0, &mut |perm| {
        let listing: Vec<usize> = core::iter::once(0).chain(perm.iter().copied()).collect();
        let mut pos = [0usize; 8];
        for (p, &g) in listing.iter().enumerate() {
            pos[g] = p;
        }
        (0..8).all(|i| (0..8).all(|j| printed[i][j] == 1 << pos[group.mul(group.inv(listing[i]), listing[j])]))
    })
}

fn exponent_matrices() -> Outcome {
    for (kind, printed) in [(GroupKind::Cyclic(8), &Z8_W), (GroupKind::Quaternion, &Q8_W)] {
        let w = theorem2_matrix(kind.clone())?;
        ensure(w.rows() == 8 && w.cols() == 8 && w.moduli() == [255], || format!("{kind:?}: shape {w:?}"))?;
        matches(&w, printed).map_err(|e| format!("{kind:?} {e}"))?;
    }
    let d8 = theorem2_matrix(GroupKind::Dihedral(8))?;
    match matches(&d8, &D8_W) {
        Ok(()) => Ok("Z8, D8, Q8 match entry for entry".into()),
        Err(first) => {
            // the printed D8 matrix is commutative in disguise: no listing of D8 produces it
            let dihedral = FiniteGroup::new(GroupKind::Dihedral(8)).unwrap();
            let no_listing = !some_listing_reproduces(&dihedral, &D8_W);
            let abelian = matches(&theorem2_matrix(GroupKind::DirectProduct(vec![2, 4]))?, &D8_W).is_ok();
            Err(format!(
                "Z8 and Q8 match; D8 differs at {first}; no listing of D8 reproduces the printed matrix: {no_listing}; \
                 it equals the matrix of Z2 x Z4: {abelian}"
            ))
        }
    }
}

const QCPM_13: [&str; 12] = [
    "000000010000",
    "000010000000",
    "000001000000",
    "000000100000",
    "000000000001",
    "000000001000",
    "000000000100",
    "000000000010",
    "000100000000",
    "100000000000",
    "010000000000",
    "001000000000",
];

const QCPM_0010: [&str; 16] = [
    "0010000000000000",
    "0001000000000000",
    "1000000000000000",
    "0100000000000000",
    "0000001000000000",
    "0000000100000000",
    "0000100000000000",
    "0000010000000000",
    "0000000000100000",
    "0000000000010000",
    "0000000010000000",
    "0000000001000000",
    "0000000000000010",
    "0000000000000001",
    "0000000000001000",
    "0000000000000100",
];

fn qcpm_lifts() -> Outcome {
    let a =
        ExponentMatrix::new(1, 1, vec![3, 4], vec![FieldExponent::new(1), FieldExponent::new(3)]).map_err(|e| e.to_string())?;
    let got = lift(&a).h;
    ensure(got == bits_matrix(&QCPM_13), || format!("(1,3) over F4 x F5:\n{got:?}"))?;
    let b = ExponentMatrix::new(
        1,
        1,
        vec![2, 2, 2, 2],
        vec![FieldExponent::new(0), FieldExponent::new(0), FieldExponent::new(1), FieldExponent::new(0)],
    )
    .map_err(|e| e.to_string())?;
    let got = lift(&b).h;
    ensure(got == bits_matrix(&QCPM_0010), || format!("(0,0,1,0) over Z2^4:\n{got:?}"))?;
    Ok("12x12 and 16x16 match bit for bit".into())
}

fn code_parameters() -> Outcome {
    let mut seen = Vec::new();
    for f in code_fixtures() {
        let code = f.build().map_err(|e| e.to_string())?;
        let got = (code.length(), code.dimension());
        ensure(got == (f.length, f.dimension), || format!("{}: {got:?} != ({}, {})", f.name, f.length, f.dimension))?;
        seen.push(format!("{} {got:?}", f.name));
    }
    let names: Vec<&str> = code_fixtures().iter().map(|f| f.name).collect();
    ensure(["c1", "c2", "c3", "c4"].iter().all(|n| names.contains(n)), || format!("fixtures {names:?}"))?;
    Ok(seen.join(", "))
}

fn girth_property() -> Outcome {
    for f in code_fixtures() {
        let w = f.exponent_matrix().map_err(|e| e.to_string())?;
        let report = check_constraints(&w);
        ensure(report.passed(), || format!("{}: {:?}", f.name, report.violation))?;
        let code = lift(&w);
        ensure(!code.h.has_4cycle(), || format!("{}: lifted matrix has a 4-cycle", f.name))?;
    }
    Ok(format!("{} fixtures 4-cycle free, constraints pass", code_fixtures().len()))
}

const PRINTED_M1_U1T: [u8; 21] = [0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1];

fn worked_zero_divisor() -> Outcome {
    let ring = GroupRing::new(FiniteGroup::cyclic(3).unwrap(), TensorRing::cyclic(7).unwrap());
    let mono = |k: usize| BitVec::from_ones(7, &[k]);
    let w = ring.element(vec![mono(1), mono(2), mono(4)]).map_err(|e| e.to_string())?;
    let f = BitVec::from_ones(7, &[0, 1, 2, 4]);
    let u = ring.element(vec![f.clone(), f.clone(), f]).map_err(|e| e.to_string())?;

    let det = ring.determinant(&ring.rg_matrix(&w)).map_err(|e| e.to_string())?;
    ensure(det == BitVec::from_ones(7, &[0, 3, 5, 6]), || format!("det(W) = {:?}", det.iter_ones().collect::<Vec<_>>()))?;
    let rank_w = ring.lift_element(&w).rank();
    let rank_u = ring.lift_element(&u).rank();
    ensure(rank_w == 16 && rank_u == 3, || format!("rank(W) = {rank_w}, rank(U) = {rank_u}"))?;

    let ctx = EncodingContext::zero_divisor(ring, w, u, &[0]).map_err(|e| e.to_string())?;
    let m = BitVec::from_bits(&[1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1]);
    let m1 = BitVec::from_bits(&[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    let part = encode_zero_divisor(&m1, &ctx).map_err(|e| e.to_string())?;
    ensure(part.to_bits() == PRINTED_M1_U1T, || format!("m1 U1^t = {:?}", part.to_bits()))?;
    let c = encode_zero_divisor(&m, &ctx).map_err(|e| e.to_string())?;
    ensure(ctx.parity_check().mul_vec(&c).unwrap().is_zero(), || "full codeword fails the checks".into())?;
    Ok("det = x^6+x^5+x^3+1, ranks 16/3, printed m1 U1^t reproduced".into())
}

fn encoder_equivalence() -> Outcome {
    const MESSAGES: usize = 200;
    let mut summary = Vec::new();
    for f in encoder_fixtures() {
        let ctx = f.build().map_err(|e| e.to_string())?;
        let h = ctx.parity_check();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + f.seed);
        for i in 0..MESSAGES {
            let m = random_bits(&mut rng, ctx.message_len());
            let c = encode_matrix(&m, ctx.generator()).map_err(|e| e.to_string())?;
            let g = encode_groupring(&m, &ctx).map_err(|e| e.to_string())?;
            let (fast, _) = encode_fast(&m, &ctx).map_err(|e| e.to_string())?;
            ensure(c == g && c == fast, || format!("{} message {i}: paths disagree", f.name))?;
            ensure(h.mul_vec(&c).unwrap().is_zero(), || format!("{} message {i}: c H^t != 0", f.name))?;
        }
        summary.push(f.name);
    }
    Ok(format!("{MESSAGES} messages on each of {}", summary.join(", ")))
}

fn s2_search() -> Outcome {
    let table = [1usize, 2, 3, 6, 11, 19, 28, 40];
    let mut lower = 1;
    for (i, &v) in table.iter().enumerate() {
        let k = i + 1;
        // an S2-set of size k contains one of size k - 1, so orders below v(k - 1) are excluded already
        for order in lower..v {
            let h = AbelianGroup::cyclic(order).map_err(|e| e.to_string())?;
            let (set, certified, _) = search_s2_of_size(&h, false, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(set.is_none() && certified, || format!("Z{order} size {k}: {set:?}, certified {certified}"))?;
        }
        let h = AbelianGroup::cyclic(v).map_err(|e| e.to_string())?;
        let (set, _, _) = search_s2_of_size(&h, false, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let set = set.ok_or_else(|| format!("no size-{k} set in Z{v}"))?;
        ensure(set.len() <= s2_upper_bound(&h), || format!("Z{v}: {} exceeds the bound", set.len()))?;
        lower = v;
    }
    // non-cyclic groups: order 16 is the first to hold 6 elements
    for moduli in [vec![2, 2], vec![2, 4], vec![2, 2, 2], vec![3, 3], vec![2, 2, 3]] {
        let h = AbelianGroup::new(moduli.clone()).map_err(|e| e.to_string())?;
        let out = search_max_s2(&h, false, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(out.certified && out.set.len() < 6, || format!("{moduli:?}: {} certified {}", out.set.len(), out.certified))?;
    }
    for moduli in [vec![2, 2, 2, 2], vec![2, 2, 4], vec![4, 4]] {
        let h = AbelianGroup::new(moduli.clone()).map_err(|e| e.to_string())?;
        let out = search_max_s2(&h, false, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(out.certified && out.set.len() == 6, || format!("{moduli:?}: {} certified {}", out.set.len(), out.certified))?;
        ensure(out.set.len() <= s2_upper_bound(&h), || format!("{moduli:?}: above the bound"))?;
    }
    Ok(format!("v(k) = {table:?} certified; v(6) = 16 in Z2^4"))
}

fn singer() -> Outcome {
    let mut found = Vec::new();
    for (q, m) in [(2u32, 3u32), (2, 4)] {
        let s = |e: u32| (q.pow(e) as usize - 1) / (q as usize - 1);
        let (v, k, lambda) = (s(m), s(m - 1), s(m - 2));
        let d = singer_difference_set(q, m).map_err(|e| e.to_string())?;
        ensure(d.members.len() == k && d.v == v, || format!("({q},{m}): {d:?}"))?;
        let g = FiniteGroup::cyclic(v).unwrap();
        ensure(is_difference_set(&g, &d.members, lambda), || format!("({q},{m}): {:?} is not a difference set", d.members))?;
        found.push(format!("({v},{k},{lambda}) {:?}", d.members));
    }
    Ok(found.join("; "))
}

fn simulation() -> Outcome {
    // uncoded BPSK against the Q-function
    let uncoded = SimCode::uncoded(1000);
    let stop = StopRule { min_frame_errors: u64::MAX, max_frames: 500 };
    let records = sim::simulate(&uncoded, &[2.0, 4.0], &stop, 0, 3).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for r in &records {
        let p = uncoded_ber(r.ebn0_db);
        let bits = (r.frames * 1000) as f64;
        let se = (p * (1.0 - p) / bits).sqrt();
        let z = (r.ber - p) / se;
        ensure(z.abs() < 3.0, || format!("uncoded {} dB: {} vs {p} ({z:.2} SE)", r.ebn0_db, r.ber))?;
        notes.push(format!("uncoded {} dB {z:+.2} SE", r.ebn0_db));
    }

    // the (2040,1031) code: BER strictly decreasing with at least 100 frame errors per point
    let f = code_fixtures().into_iter().find(|f| f.name == "c1").unwrap();
    let code = SimCode::new(f.build().map_err(|e| e.to_string())?.h);
    let stop = StopRule { min_frame_errors: 100, max_frames: 2_000_000 };
    let records = sim::simulate(&code, &[1.5, 2.5, 3.5], &stop, DEFAULT_ITERATIONS, 42).map_err(|e| e.to_string())?;
    report(sim::to_csv(&records).trim_end());
    for r in &records {
        ensure(r.frame_errors >= 100, || {
            format!("{} dB: only {} frame errors in {} frames", r.ebn0_db, r.frame_errors, r.frames)
        })?;
    }
    for pair in records.windows(2) {
        ensure(pair[1].ber < pair[0].ber, || format!("BER not decreasing: {} then {}", pair[0].ber, pair[1].ber))?;
    }
    notes.push(format!("(2040,1031) BER {:.2e} > {:.2e} > {:.2e}", records[0].ber, records[1].ber, records[2].ber));

    // fixed seed, identical CSV
    let small = code_fixtures().into_iter().find(|f| f.name == "c4").unwrap();
    let small = SimCode::new(small.build().map_err(|e| e.to_string())?.h);
    let stop = StopRule { min_frame_errors: 10, max_frames: 500 };
    let a = sim::to_csv(&sim::simulate(&small, &[2.0, 2.5], &stop, DEFAULT_ITERATIONS, 9).map_err(|e| e.to_string())?);
    let b = sim::to_csv(&sim::simulate(&small, &[2.0, 2.5], &stop, DEFAULT_ITERATIONS, 9).map_err(|e| e.to_string())?);
    ensure(a == b, || format!("CSV differs:\n{a}\n{b}"))?;
    notes.push("CSV reproducible".into());
    Ok(notes.join(", "))
}

fn fast_path_count() -> Outcome {
    let f = encoder_fixtures().into_iter().find(|f| f.name == "e6").unwrap();
    let ctx = f.build().map_err(|e| e.to_string())?;
    ensure(ctx.ring().n() == 9 && ctx.ring().b() == 511, || "e6 is not n = 9, b = 511".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let m = random_bits(&mut rng, ctx.message_len());
    let (c, report) = encode_fast(&m, &ctx).map_err(|e| e.to_string())?;
    ensure(c == encode_matrix(&m, ctx.generator()).unwrap(), || "fast path codeword differs".into())?;
    let naive = (9u64 * 511).pow(2);
    ensure(report.naive_multiplications == naive, || format!("naive count {} != {naive}", report.naive_multiplications))?;
    let ratio = report.multiplications as f64 / naive as f64;
    ensure(ratio < 0.25, || format!("{} / {naive} = {ratio:.3}", report.multiplications))?;
    Ok(format!("{:?}: {} / {naive} = {:.1}%", report.method, report.multiplications, 100.0 * ratio))
}

const KNOWN_UNATTAINABLE: &[u32] = &[1];

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        (1, "exponent matrices for Z8, D8, Q8", exponent_matrices),
        (2, "QCPM lifts", qcpm_lifts),
        (3, "code parameters", code_parameters),
        (4, "girth and row constraints", girth_property),
        (5, "worked zero-divisor example", worked_zero_divisor),
        (6, "encoder equivalence", encoder_equivalence),
        (7, "S2-set search", s2_search),
        (8, "Singer difference sets", singer),
        (9, "simulation", simulation),
        (10, "fast encoder multiplication count", fast_path_count),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => report(&format!("criterion {id:2} PASS  {name} ({secs:.1} s): {detail}")),
            Err(why) => {
                report(&format!("criterion {id:2} FAIL  {name} ({secs:.1} s): {why}"));
                failed.push((id, why));
            }
        }
    }
    // Criterion 1 cannot pass: the printed D8 matrix is not the group-ring matrix of any
    // listing of D8 (checked exhaustively above). It stays red; anything else failing,
    // or criterion 1 turning green, fails the test.
    let ids: Vec<u32> = failed.iter().map(|(id, _)| *id).collect();
    assert_eq!(ids, KNOWN_UNATTAINABLE, "failed criteria: {failed:?}");
    let why = &failed[0].1;
    assert!(
        why.starts_with("Z8 and Q8 match") && why.ends_with("printed matrix: true; it equals the matrix of Z2 x Z4: true"),
        "{why}"
    );
}
