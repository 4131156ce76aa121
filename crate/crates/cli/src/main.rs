use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcgr::spec::{self, BuiltCode, CodeSpec};
use qcgr::{alist, bitio, parallel, parse_count, parse_snr_list, ValidationError};
use qcgr_core::combinatorics::{s2_upper_bound, search_max_s2, search_s2_of_size, AbelianGroup, DEFAULT_BUDGET};
use qcgr_core::encoder::{encode_fast, encode_groupring, encode_matrix};
use qcgr_core::fixtures::{code_fixture, code_fixtures, encoder_fixture, encoder_fixtures};
use qcgr_core::sim::{to_csv, SimCode, SpaDecoder, StopRule, DEFAULT_ITERATIONS};
use qcgr_core::{BinaryMatrix, BitVec};

#[derive(Parser)]
#[command(name = "qcgr", version, about = "Group-ring QC-LDPC codes: construct, check, encode, decode, simulate")]
struct Cli {
    /// Seed for simulations.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for generated files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct CodeSource {
    /// JSON code spec.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Built-in fixture name (see `fixtures`).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct MatrixSource {
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
    /// Parity-check matrix in alist format.
    #[arg(long)]
    alist: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodePath {
    Matrix,
    Groupring,
    Fast,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write H.alist, spec.json and report.txt to --out-dir.
    Construct(CodeSource),
    /// Report girth, rank, dimension, regularity and constraint checks.
    Check {
        #[command(flatten)]
        source: MatrixSource,
        /// Longest cycle length searched for the girth.
        #[arg(long, default_value_t = 12)]
        girth_cap: usize,
    },
    /// Search for a large S2-set (or modified S2-set) in Z_m1 x .. x Z_mt.
    SearchS2 {
        /// Comma-separated moduli.
        #[arg(long)]
        moduli: String,
        #[arg(long)]
        modified: bool,
        /// Stop at the first set of this size.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Encode raw bit-packed messages (LSB first); short input is zero-padded.
    Encode {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "matrix")]
        path: EncodePath,
    },
    /// Decode whitespace-separated LLRs (positive means 0), one frame per code length.
    Decode {
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
        iters: usize,
    },
    /// BPSK/AWGN Monte-Carlo BER and WER, written as CSV.
    Simulate {
        #[arg(long, conflicts_with_all = ["fixture", "alist", "uncoded"])]
        code: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["alist", "uncoded"])]
        fixture: Option<String>,
        #[arg(long, conflicts_with = "uncoded")]
        alist: Option<PathBuf>,
        /// Uncoded BPSK with frames of this many bits.
        #[arg(long)]
        uncoded: Option<usize>,
        /// `start:step:stop` in dB, or a comma list.
        #[arg(long, default_value = "1.0:0.5:4.0")]
        snr: String,
        #[arg(long, default_value_t = 100)]
        min_errors: u64,
        #[arg(long, default_value = "1e6")]
        max_frames: String,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
        iters: usize,
        /// CSV destination (stdout when absent).
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// List built-in fixtures and write their specs to --out-dir.
    Fixtures {
        /// Also write <name>.json files.
        #[arg(long)]
        write: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<ValidationError>().is_some() => {
            eprintln!("validation failed: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_spec(code: &Option<PathBuf>, fixture: &Option<String>) -> Result<CodeSpec> {
    match (code, fixture) {
        (Some(path), _) => spec::load(path),
        (None, Some(name)) => {
            if let Some(f) = code_fixture(name) {
                Ok(CodeSpec::from_code_fixture(&f))
            } else if let Some(f) = encoder_fixture(name) {
                Ok(CodeSpec::from_encoder_fixture(&f))
            } else {
                Err(ValidationError(format!("unknown fixture {name:?}")).into())
            }
        }
        (None, None) => bail!("no code given"),
    }
}

fn load_matrix(src: &MatrixSource) -> Result<(BinaryMatrix, Option<BuiltCode>)> {
    if let Some(path) = &src.alist {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let h = alist::from_alist(&text).map_err(|e| ValidationError(format!("{e:#}")))?;
        return Ok((h, None));
    }
    let built = load_spec(&src.code, &src.fixture)?.build()?;
    Ok((built.h.clone(), Some(built)))
}

fn uniform(v: &[usize]) -> String {
    match (v.iter().min(), v.iter().max()) {
        (Some(a), Some(b)) if a == b => format!("{a} (regular)"),
        (Some(a), Some(b)) => format!("{a}..{b} (irregular)"),
        _ => "none".into(),
    }
}

/// Text report; the flag is false when a 4-cycle or a constraint violation was found.
fn report(h: &BinaryMatrix, built: Option<&BuiltCode>, girth_cap: usize) -> (String, bool) {
    let (cols, rows) = h.weights();
    let rank = built.map_or_else(|| h.rank(), BuiltCode::rank);
    let four = h.four_cycle();
    let mut s = String::new();
    let _ = writeln!(s, "length {}", h.cols());
    let _ = writeln!(s, "checks {}", h.rows());
    let _ = writeln!(s, "rank {rank}");
    let _ = writeln!(s, "dimension {}", h.cols() - rank);
    let _ = writeln!(s, "column weights {}", uniform(&cols));
    let _ = writeln!(s, "row weights {}", uniform(&rows));
    match h.girth(girth_cap) {
        Some(g) => _ = writeln!(s, "girth {g}"),
        None => _ = writeln!(s, "girth > {girth_cap}"),
    }
    match &four {
        None => _ = writeln!(s, "4-cycle free yes"),
        Some(c) => _ = writeln!(s, "4-cycle free no (rows {:?}, columns {:?})", c.rows, c.cols),
    }
    let mut ok = four.is_none();
    if let Some(b) = built {
        let _ = writeln!(s, "lifting degree {}", b.b);
        if let Some(c) = &b.constraints {
            match &c.violation {
                None => _ = writeln!(s, "row constraints pass"),
                Some(v) => {
                    ok = false;
                    _ = writeln!(
                        s,
                        "row constraints fail: constraint {} rows {:?} offset {} positions {:?}",
                        v.constraint, v.rows, v.offset, v.positions
                    )
                }
            }
        }
        if let Some(p) = b.prop2() {
            let _ = writeln!(s, "b >= n necessary condition {}", if p { "holds" } else { "fails" });
        }
    }
    (s, ok)
}

fn write_file(path: &Path, data: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Construct(src) => {
            let spec = load_spec(&src.code, &src.fixture)?;
            let built = spec.build()?;
            std::fs::create_dir_all(&cli.out_dir)?;
            write_file(&cli.out_dir.join("H.alist"), alist::to_alist(&built.h))?;
            write_file(&cli.out_dir.join("spec.json"), spec.with_derived(&built).to_json() + "\n")?;
            let (text, ok) = report(&built.h, Some(&built), 12);
            write_file(&cli.out_dir.join("report.txt"), &text)?;
            println!("({},{}) code written to {}", built.length(), built.dimension(), cli.out_dir.display());
            if !ok {
                eprintln!("{text}");
                return Err(ValidationError("constructed matrix fails the girth checks".into()).into());
            }
        }
        Command::Check { source, girth_cap } => {
            let (h, built) = load_matrix(source)?;
            let (text, ok) = report(&h, built.as_ref(), *girth_cap);
            print!("{text}");
            if !ok {
                return Err(ValidationError("girth below 6 or row constraints violated".into()).into());
            }
        }
        Command::SearchS2 { moduli, modified, size, budget } => {
            let h = AbelianGroup::new(spec::parse_moduli(moduli).map_err(|e| ValidationError(format!("{e:#}")))?)?;
            let (set, certified, nodes) = match size {
                Some(k) => {
                    let (set, certified, stats) = search_s2_of_size(&h, *modified, *k, *budget)?;
                    (set, certified, stats.nodes)
                }
                None => {
                    let out = search_max_s2(&h, *modified, *budget)?;
                    (Some(out.set), out.certified, out.stats.nodes)
                }
            };
            let json = serde_json::json!({
                "moduli": h.moduli(),
                "modified": modified,
                "set": set.as_ref().map(|s| s.tuples()),
                "size": set.as_ref().map(|s| s.len()),
                "certified": certified,
                "nodes": nodes,
                "upper_bound": s2_upper_bound(&h),
            });
            println!("{}", serde_json::to_string_pretty(&json)?);
            if set.is_none() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Encode { source, input, output, path } => {
            let built = load_spec(&source.code, &source.fixture)?.build()?;
            let bytes = std::fs::read(input).with_context(|| format!("reading {}", input.display()))?;
            let words = encode_all(&built, &bytes, *path)?;
            write_file(output, bitio::join_words(&words))?;
            println!("{} message(s) encoded to {} bits each", words.len(), built.length());
        }
        Command::Decode { source, input, output, iters } => {
            let (h, _) = load_matrix(source)?;
            let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let llr: Vec<f64> = text.split_whitespace().map(str::parse).collect::<Result<_, _>>().context("parsing LLRs")?;
            let n = h.cols();
            if n == 0 || llr.is_empty() || llr.len() % n != 0 {
                return Err(ValidationError(format!("{} LLRs is not a whole number of {n}-bit frames", llr.len())).into());
            }
            let mut dec = SpaDecoder::new(&h);
            let mut words = Vec::new();
            for (f, frame) in llr.chunks(n).enumerate() {
                let out = dec.decode(frame, *iters);
                println!("frame {f}: converged {} after {} iterations", out.converged, out.iterations);
                words.push(out.bits);
            }
            write_file(output, bitio::join_words(&words))?;
        }
        Command::Simulate { code, fixture, alist: alist_path, uncoded, snr, min_errors, max_frames, iters, output } => {
            let h = match (uncoded, alist_path) {
                (Some(n), _) => BinaryMatrix::zeros(0, *n),
                (None, Some(_)) => load_matrix(&MatrixSource { code: None, fixture: None, alist: alist_path.clone() })?.0,
                (None, None) => load_spec(code, fixture)?.build()?.h,
            };
            let sim_code = SimCode::new(h);
            if sim_code.dimension() == 0 {
                return Err(ValidationError("code has dimension zero".into()).into());
            }
            let snrs = parse_snr_list(snr).map_err(|e| ValidationError(format!("--snr: {e:#}")))?;
            let stop = StopRule {
                min_frame_errors: *min_errors,
                max_frames: parse_count(max_frames).map_err(|e| ValidationError(format!("--max-frames: {e:#}")))?,
            };
            let records = parallel::simulate(&sim_code, &snrs, &stop, *iters, cli.seed);
            let csv = to_csv(&records);
            match output {
                Some(p) => write_file(p, &csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Fixtures { write } => {
            let mut specs = Vec::new();
            for f in code_fixtures() {
                println!("{:4} ({},{})  {}", f.name, f.length, f.dimension, f.note);
                specs.push((f.name, CodeSpec::from_code_fixture(&f)));
            }
            for f in encoder_fixtures() {
                println!("{:4} unit code over {:?} with moduli {:?}, check rows {:?}", f.name, f.group, f.moduli, f.check_rows);
                specs.push((f.name, CodeSpec::from_encoder_fixture(&f)));
            }
            if *write {
                std::fs::create_dir_all(&cli.out_dir)?;
                for (name, spec) in specs {
                    write_file(&cli.out_dir.join(format!("{name}.json")), spec.to_json() + "\n")?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn encode_all(built: &BuiltCode, bytes: &[u8], path: EncodePath) -> Result<Vec<BitVec>> {
    if let Some(ctx) = &built.encoder {
        let messages = bitio::split_messages(bytes, ctx.message_len());
        return messages
            .iter()
            .map(|m| {
                Ok(match path {
                    EncodePath::Matrix => encode_matrix(m, ctx.generator())?,
                    EncodePath::Groupring => encode_groupring(m, ctx)?,
                    EncodePath::Fast => {
                        let (c, report) = encode_fast(m, ctx)?;
                        if let Some(reason) = report.fallback_reason {
                            log::info!("fast path fell back: {reason}");
                        }
                        log::info!("{} bit products against {} naive", report.multiplications, report.naive_multiplications);
                        c
                    }
                })
            })
            .collect();
    }
    if !matches!(path, EncodePath::Matrix) {
        return Err(ValidationError("group-ring encoding needs a unit construction; use --path matrix".into()).into());
    }
    // generator rows: a nullspace basis of H
    let g = BinaryMatrix::from_rows(built.length(), built.h.nullspace())?;
    bitio::split_messages(bytes, g.rows()).iter().map(|m| Ok(encode_matrix(m, &g)?)).collect()
}
