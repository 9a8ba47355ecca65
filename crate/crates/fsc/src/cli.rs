//! Command-line surface.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a capped budget left
//! a search incomplete.

use std::error::Error;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::bits::BitString;
use crate::constructions::{
    coin_program, coin_transducer, hierarchy_witness, w_string, witness_default_m,
    witness_string, witness_transducer, CoinSystem,
};
use crate::encodings::{nth_prime, snm_build, CodeStructure, Scheme};
use crate::search::{
    complexity, power_probe, scan, state_size_membership, with_workers, SearchOptions,
};
use crate::transducer::Transducer;

#[derive(Parser)]
#[command(name = "fsc", version, about = "Finite-state complexity of binary strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a transducer file on a program and print the output
    Eval {
        #[arg(short = 't', long = "transducer", value_name = "FILE")]
        transducer: PathBuf,
        /// Program bits; pass "" for the empty program
        #[arg(short = 'p', long = "program", value_name = "BITS")]
        program: String,
    },
    /// Print the code of a transducer under a scheme
    Encode {
        #[arg(short = 't', long = "transducer", value_name = "FILE")]
        transducer: PathBuf,
        #[arg(short = 's', long = "scheme", default_value = "s0")]
        scheme: String,
    },
    /// Decode a code string into a transducer file on stdout
    Decode {
        #[arg(short = 'e', long = "encoding", value_name = "BITS")]
        encoding: String,
        #[arg(short = 's', long = "scheme", default_value = "s0")]
        scheme: String,
    },
    /// Exact complexity of a string, as JSON
    Complexity {
        /// Input bits; pass "" for the empty string
        #[arg(short = 'x', long = "input", value_name = "BITS")]
        input: String,
        #[arg(short = 's', long = "scheme", default_value = "s0")]
        scheme: String,
        /// Cap the enumerated code length (marks the result inexact when the
        /// cap is below the proven cutoff)
        #[arg(long)]
        budget: Option<u64>,
        /// Search worker threads
        #[arg(long)]
        jobs: Option<usize>,
        /// List every minimal description instead of only the witness
        #[arg(long = "all-minimal")]
        all_minimal: bool,
        /// Omit the stats block so identical runs are byte-identical
        #[arg(long = "no-stats")]
        no_stats: bool,
    },
    /// Complexity table for every string up to a length cap, as TSV
    Scan {
        #[arg(long = "max-len", value_name = "L")]
        max_len: usize,
        #[arg(short = 's', long = "scheme", default_value = "s0")]
        scheme: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Write construction files (transducers, programs, strings)
    Construct {
        #[command(subcommand)]
        target: ConstructTarget,
    },
    /// Check the built-in constructions and print PASS/FAIL lines
    Verify {
        /// One of: example1, theorem2, s1, snm
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Complexity of w^k for k up to a bound, flagging state-count drops
    ProbePower {
        /// Base word bits; pass "" for the empty word
        #[arg(short = 'w', long = "word", value_name = "BITS")]
        word: String,
        #[arg(long, value_name = "K")]
        kmax: usize,
        #[arg(short = 's', long = "scheme", default_value = "s0")]
        scheme: String,
    },
}

#[derive(Subcommand)]
enum ConstructTarget {
    /// The staircase string 1 01 0²1 ... 0^m 1
    W {
        #[arg(long)]
        m: usize,
        #[arg(short = 'o', long = "output-dir", default_value = ".")]
        out: PathBuf,
    },
    /// The 12-state coin transducer
    CoinT1 {
        #[arg(short = 'o', long = "output-dir", default_value = ".")]
        out: PathBuf,
    },
    /// A program for the coin transducer producing the staircase string
    CoinProgram {
        #[arg(long)]
        m: usize,
        #[arg(short = 'o', long = "output-dir", default_value = ".")]
        out: PathBuf,
    },
    /// The 2n-state hierarchy witness, its program and its string
    Xnm {
        #[arg(long)]
        n: usize,
        /// Repetition parameter; defaults to 16n² + 36n + 19
        #[arg(long)]
        m: Option<usize>,
        #[arg(short = 'o', long = "output-dir", default_value = ".")]
        out: PathBuf,
    },
}

/// Parses and executes; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

type CliResult = Result<i32, Box<dyn Error>>;

fn execute(command: Command) -> CliResult {
    match command {
        Command::Eval { transducer, program } => {
            let t = load_transducer(&transducer)?;
            let p: BitString = program.parse()?;
            println!("{}", t.evaluate(&p));
            Ok(0)
        }
        Command::Encode { transducer, scheme } => {
            let t = load_transducer(&transducer)?;
            let scheme = Scheme::parse_id(&scheme)?;
            let record = scheme.encode(&t);
            match (&record.explicit, &record.structure) {
                (Some(bits), _) => println!("{bits}"),
                (None, CodeStructure::Padded { inner, pad }) => {
                    println!("symbolic\tlength={}\tinner={inner}\tpad={pad}", record.length)
                }
                (None, CodeStructure::Literal(bits)) => println!("{bits}"),
            }
            Ok(0)
        }
        Command::Decode { encoding, scheme } => {
            let code: BitString = encoding.parse()?;
            let scheme = Scheme::parse_id(&scheme)?;
            let t = scheme.decode(&code)?;
            print!("{}", t.serialize());
            Ok(0)
        }
        Command::Complexity { input, scheme, budget, jobs, all_minimal, no_stats } => {
            let x: BitString = input.parse()?;
            let scheme = Scheme::parse_id(&scheme)?;
            let opts = SearchOptions { budget, ..Default::default() };
            let report = with_workers(jobs, || complexity(&x, &scheme, &opts));
            print!("{}", report.to_json(!no_stats, all_minimal));
            Ok(if report.exact { 0 } else { 2 })
        }
        Command::Scan { max_len, scheme, jobs, output } => {
            let scheme = Scheme::parse_id(&scheme)?;
            let opts = SearchOptions::default();
            let table = with_workers(jobs, || scan(max_len, &scheme, &opts));
            let tsv = table.to_tsv();
            match output {
                Some(path) => fs::write(path, tsv)?,
                None => print!("{tsv}"),
            }
            Ok(if table.complete { 0 } else { 2 })
        }
        Command::Construct { target } => construct(target),
        Command::Verify { target, n, m } => verify(&target, n, m),
        Command::ProbePower { word, kmax, scheme } => {
            let w: BitString = word.parse()?;
            let scheme = Scheme::parse_id(&scheme)?;
            let probe = power_probe(&w, kmax, &scheme, &SearchOptions::default());
            print!("{}", probe.to_tsv());
            Ok(if probe.rows.iter().all(|r| r.exact) { 0 } else { 2 })
        }
    }
}

fn load_transducer(path: &Path) -> Result<Transducer, Box<dyn Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Transducer::parse(&text)?)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("{}", path.display());
    Ok(0)
}

fn construct(target: ConstructTarget) -> CliResult {
    match target {
        ConstructTarget::W { m, out } => {
            if m < 1 {
                return Err("w strings start at m = 1".into());
            }
            write_file(&out, &format!("w_{m}.txt"), &format!("{}\n", w_string(m)))
        }
        ConstructTarget::CoinT1 { out } => {
            write_file(&out, "coin_t1.fst", &coin_transducer().serialize())
        }
        ConstructTarget::CoinProgram { m, out } => {
            let p = coin_program(m)?;
            write_file(&out, &format!("coin_program_{m}.txt"), &format!("{p}\n"))
        }
        ConstructTarget::Xnm { n, m, out } => {
            if n < 1 {
                return Err("the witness family starts at n = 1".into());
            }
            let m = m.unwrap_or_else(|| witness_default_m(n));
            if m < 1 {
                return Err("the repetition parameter starts at m = 1".into());
            }
            let (t, p) = witness_transducer(n, m);
            let x = witness_string(n, m);
            write_file(&out, &format!("xnm_{n}_{m}.fst"), &t.serialize())?;
            write_file(&out, &format!("xnm_{n}_{m}.program.txt"), &format!("{p}\n"))?;
            write_file(&out, &format!("xnm_{n}_{m}.string.txt"), &format!("{x}\n"))?;
            Ok(0)
        }
    }
}

struct Checks {
    all_pass: bool,
}

impl Checks {
    fn new() -> Self {
        Self { all_pass: true }
    }

    fn check(&mut self, name: &str, pass: bool, computed: impl ToString, expected: impl ToString) {
        self.all_pass &= pass;
        println!(
            "{}\t{name}\t{}\t{}",
            if pass { "PASS" } else { "FAIL" },
            computed.to_string(),
            expected.to_string()
        );
    }

    fn note(&self, name: &str, value: impl ToString) {
        println!("NOTE\t{name}\t{}", value.to_string());
    }

    fn exit_code(&self) -> i32 {
        if self.all_pass {
            0
        } else {
            1
        }
    }
}

fn verify(target: &str, n: Option<usize>, m: Option<usize>) -> CliResult {
    let mut checks = Checks::new();
    match target {
        "example1" => {
            let code_len = crate::codec::encode_std(&coin_transducer()).len();
            checks.check("coin_code_len", code_len == 352, code_len, 352);
            let total = CoinSystem::default().total_coins_0_to_99();
            checks.check("mean_coins_0_99", total == 318, format!("{}.{:02}", total / 100, total % 100), "3.18");
            let w99 = w_string(99);
            checks.check("w99_len", w99.len() == 5050, w99.len(), 5050);
            let p99 = coin_program(99)?;
            let output_ok = coin_transducer().evaluate(&p99) == w99;
            checks.check("coin_program_output", output_ok, output_ok, true);
            checks.check("coin_program_len", p99.len() <= 2008, p99.len(), "<= 2008");
            let total_size = code_len + p99.len();
            checks.check("description_size", total_size <= 2360, total_size, "<= 2360");
        }
        "theorem2" => {
            let n = n.ok_or("verify --target theorem2 needs --n")?;
            if n < 1 {
                return Err("--n must be at least 1".into());
            }
            let w = hierarchy_witness(n);
            checks.note("m", w.m);
            checks.check("output_matches", w.output_matches, w.output_matches, true);
            checks.check(
                "program_len",
                w.program.len() as u64 == w.program_len_formula,
                w.program.len(),
                w.program_len_formula,
            );
            checks.check(
                "code_len_bound",
                w.code_len <= w.code_len_bound,
                w.code_len,
                format!("<= {}", w.code_len_bound),
            );
            let size = w.description_size();
            let msq = (w.m as u64) * (w.m as u64);
            checks.check("half_m_squared", 2 * size < msq, size, format!("< {msq}/2"));
            checks.note("minimal_state_upper_bound", w.minimal_state_upper_bound());
        }
        "s1" => {
            let m = m.ok_or("verify --target s1 needs --m")?;
            if m < 1 {
                return Err("--m must be at least 1".into());
            }
            let x = BitString::zeros(nth_prime(m) as usize);
            let report = complexity(&x, &Scheme::S1, &SearchOptions::default());
            let expected = crate::codec::bin_len(m as u64) + 1;
            checks.check("complexity", report.exact && report.complexity == expected, report.complexity, expected);
            checks.check("unique_minimal", report.descriptions.len() == 1, report.descriptions.len(), 1);
            checks.check(
                "minimal_states",
                report.min_states == Some(m),
                report.min_states.map_or("-".into(), |v| v.to_string()),
                m,
            );
            let ceil_log = (m as u64).next_power_of_two().trailing_zeros() as u64 + 1;
            if ceil_log != expected {
                checks.note("ceil_log2_expression_differs", format!("{ceil_log} vs {expected}"));
            }
        }
        "snm" => {
            let n = n.ok_or("verify --target snm needs --n")?;
            let m = m.ok_or("verify --target snm needs --m")?;
            let (scheme, witness) = snm_build(n, m)?;
            let report = complexity(&witness, &scheme, &SearchOptions::default());
            checks.check("complexity", report.exact && report.complexity == 3, report.complexity, 3);
            let sizes = report.state_sizes.clone();
            checks.check("state_sizes", sizes == vec![n, m], format!("{sizes:?}"), format!("[{n}, {m}]"));
            let membership = state_size_membership(&report, m)?;
            checks.check("exists_min_m", membership.in_exists_min_m, membership.in_exists_min_m, true);
            checks.check("eq_m_differs", !membership.in_eq_m, membership.in_eq_m, false);
        }
        other => return Err(format!("unknown verify target {other:?}").into()),
    }
    Ok(checks.exit_code())
}
