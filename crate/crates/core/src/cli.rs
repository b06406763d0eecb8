//! The `qhash` command line. Every subcommand parses its flags, calls one or
//! two library operations and prints JSON.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or parse error, 3 capacity
//! error, 4 certification or construction failure. Failures print a JSON
//! object `{"error": kind, "exit_code": n, "message": text}` on stderr.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bias::{
    aghp_set, bias_exact, bias_sampled, greedy_biased_set, load_set_from_path, random_biased_set, save_set, BiasedSet,
    Certification, Provenance, CERTIFICATION_TOLERANCE, DEFAULT_SAMPLING_CONSTANT,
};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::protocols::{equality_protocol, irreversibility_report, swap_test_sample};
use crate::qhash::{code_matrix, collision_spectrum, hash, inner_product, size_report, QuantumHash};

#[derive(Debug, Parser)]
#[command(name = "qhash", version, about = "Quantum hashing over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct and certify an ε-biased set.
    GenSet(GenSetArgs),
    /// Recompute a set's bias and compare it to the stored certificate.
    Certify {
        file: PathBuf,
        /// Estimate on N random characters instead of all of them.
        #[arg(long, value_name = "N")]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hash one message.
    Hash {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        message: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print |⟨h1|h2⟩| for two hash files.
    Compare { first: PathBuf, second: PathBuf },
    /// Overlap statistics over all distinct message pairs.
    Spectrum {
        #[command(flatten)]
        set: SetArg,
    },
    /// Run the SWAP-test equality protocol on two messages.
    SwapTest {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1)]
        rounds: u32,
        /// Additionally sample K SWAP tests and report the acceptance count.
        #[arg(long, value_name = "K")]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the protocol transcript here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hash size and irreversibility accounting.
    Report {
        #[command(flatten)]
        set: SetArg,
        /// Bias to report against; defaults to the sampling target of a random
        /// set, then to the stored certificate.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Binary code matrix of a set over Z_2^n with its balance report.
    CodeMatrix {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SetArg {
    /// Set file produced by gen-set.
    #[arg(long = "set")]
    path: PathBuf,
    /// Recheck the stored certificate while loading.
    #[arg(long)]
    verify: bool,
}

impl SetArg {
    fn load(&self) -> Result<BiasedSet> {
        load_set_from_path(&self.path, self.verify)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Random,
    Greedy,
    Aghp,
}

#[derive(Debug, Args)]
struct GenSetArgs {
    /// Cyclic factor orders, e.g. 2,2,2,2.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "cyclic",
        required_unless_present = "cyclic"
    )]
    group: Option<Vec<u64>>,
    /// Shorthand for a single cyclic factor Z_q.
    #[arg(long, value_name = "Q")]
    cyclic: Option<u64>,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLING_CONSTANT)]
    c: f64,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_attempts: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Normal output goes to `out`, error reports to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => return report_error(err, &Error::Usage(e.to_string())),
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => report_error(err, &e),
    }
}

fn report_error(err: &mut dyn Write, e: &Error) -> i32 {
    let code = e.exit_code();
    let body = json!({ "error": e.kind(), "exit_code": code, "message": e.to_string() });
    let _ = writeln!(err, "{body}");
    code
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::GenSet(args) => gen_set(args, out),
        Command::Certify { file, sampled, seed } => certify(&file, sampled, seed, out),
        Command::Hash {
            set,
            message,
            out: path,
        } => {
            let set = set.load()?;
            let message = parse_message(set.group(), &message)?;
            let h = hash(&set, &message)?;
            match path {
                Some(p) => write_file(&p, |w| h.to_writer(w))?,
                None => h.to_writer(&mut *out)?,
            }
            Ok(0)
        }
        Command::Compare { first, second } => {
            let h1 = QuantumHash::from_reader(BufReader::new(File::open(first)?))?;
            let h2 = QuantumHash::from_reader(BufReader::new(File::open(second)?))?;
            let modulus = inner_product(&h1, &h2)?.norm();
            writeln!(out, "{:?}", (modulus * 1e12).round() / 1e12)?;
            Ok(0)
        }
        Command::Spectrum { set } => {
            let set = set.load()?;
            print_json(out, &collision_spectrum(&set)?)?;
            Ok(0)
        }
        Command::SwapTest {
            set,
            a,
            b,
            rounds,
            shots,
            seed,
            out: path,
        } => {
            let set = set.load()?;
            let a = parse_message(set.group(), &a)?;
            let b = parse_message(set.group(), &b)?;
            let transcript = equality_protocol(&set, &a, &b, rounds, seed)?;
            let sample = match shots {
                Some(k) => Some(swap_test_sample(&hash(&set, &a)?, &hash(&set, &b)?, k, seed)?),
                None => None,
            };
            if let Some(p) = path {
                write_file(&p, |w| {
                    serde_json::to_writer(&mut *w, &transcript).map_err(|e| Error::Io(e.into()))?;
                    w.write_all(b"\n")?;
                    Ok(())
                })?;
            }
            print_json(out, &json!({ "transcript": transcript, "sample": sample }))?;
            Ok(0)
        }
        Command::Report { set, epsilon } => {
            let set = set.load()?;
            let target = match set.provenance() {
                Provenance::Random { epsilon, .. } => Some(*epsilon),
                _ => None,
            };
            let eps = epsilon
                .or(target)
                .or(set.certified_epsilon())
                .ok_or_else(|| Error::Usage("the set carries no certificate; pass --epsilon".into()))?;
            let size = size_report(&set, eps)?;
            let irreversibility = irreversibility_report(&set);
            print_json(out, &json!({ "size": size, "irreversibility": irreversibility }))?;
            Ok(0)
        }
        Command::CodeMatrix { set, out: path } => {
            let set = set.load()?;
            let m = code_matrix(&set)?;
            match path {
                Some(p) => {
                    write_file(&p, |w| m.to_writer(w))?;
                    print_json(out, &m.balance())?;
                }
                None => m.to_writer(&mut *out)?,
            }
            Ok(0)
        }
    }
}

fn gen_set(args: GenSetArgs, out: &mut dyn Write) -> Result<i32> {
    let group = match (&args.group, args.cyclic) {
        (Some(orders), None) => AbelianGroup::new(orders.clone())?,
        (None, Some(q)) => AbelianGroup::cyclic(q)?,
        _ => return Err(Error::Usage("give exactly one of --group and --cyclic".into())),
    };
    let set = match args.method {
        Method::Random => {
            let eps = args
                .epsilon
                .ok_or_else(|| Error::Usage("--method random needs --epsilon".into()))?;
            random_biased_set(&group, eps, args.c, args.seed, args.max_attempts)?
        }
        Method::Greedy => {
            let size = args
                .size
                .ok_or_else(|| Error::Usage("--method greedy needs --size".into()))?;
            greedy_biased_set(&group, size)?
        }
        Method::Aghp => {
            let m = args.m.ok_or_else(|| Error::Usage("--method aghp needs --m".into()))?;
            if !group.is_boolean() {
                return Err(Error::Usage("--method aghp needs a Boolean group 2,2,...,2".into()));
            }
            aghp_set(group.rank(), m)?
        }
    };
    match &args.out {
        Some(p) => {
            write_file(p, |w| save_set(&set, w))?;
            print_json(
                out,
                &json!({
                    "out": p.display().to_string(),
                    "size": set.len(),
                    "set_id": set.content_id(),
                    "certified_epsilon": set.certified_epsilon(),
                    "certification": certification_name(set.certification()),
                    "provenance": set.provenance(),
                }),
            )?;
        }
        None => save_set(&set, &mut *out)?,
    }
    Ok(0)
}

fn certify(file: &Path, sampled: Option<usize>, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let set = load_set_from_path(file, false)?;
    let (bias, mode) = match sampled {
        Some(k) => (bias_sampled(&set, k, seed)?, "sampled"),
        None => (bias_exact(&set)?, "exact"),
    };
    let stored = set.certified_epsilon();
    let certified = stored.is_some_and(|eps| bias <= eps + CERTIFICATION_TOLERANCE);
    print_json(
        out,
        &json!({
            "bias": bias,
            "mode": mode,
            "stored_epsilon": stored,
            "stored_certification": certification_name(set.certification()),
            "certified": certified,
        }),
    )?;
    Ok(if certified {
        0
    } else {
        Error::CertificationMismatch {
            stored,
            recomputed: bias,
        }
        .exit_code()
    })
}

fn certification_name(c: Option<Certification>) -> Option<&'static str> {
    c.map(|c| match c {
        Certification::Exact => "exact",
        Certification::Sampled { .. } => "sampled",
        Certification::AnalyticBound => "analytic_bound",
    })
}

/// Comma-separated residues, or `0b...` bits (coordinate 0 first) on Z_2^n.
pub fn parse_message(group: &AbelianGroup, text: &str) -> Result<GroupElement> {
    let text = text.trim();
    let residues: Vec<u64> = if let Some(bits) = text.strip_prefix("0b") {
        if !group.is_boolean() {
            return Err(Error::Usage("0b bitstrings are accepted only on Z_2^n".into()));
        }
        bits.chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Usage(format!("invalid bit {ch:?} in {text}"))),
            })
            .collect::<Result<_>>()?
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("invalid residue {s:?} in {text:?}")))
            })
            .collect::<Result<_>>()?
    };
    let e = GroupElement::from_residues(residues);
    group
        .check(&e)
        .map_err(|err| Error::Usage(format!("message {text}: {err}")))?;
    Ok(e)
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qhash").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn message_forms() {
        let cube = AbelianGroup::boolean_cube(4).unwrap();
        assert_eq!(parse_message(&cube, "0b1011").unwrap().residues(), &[1, 0, 1, 1]);
        assert_eq!(parse_message(&cube, "1,0,1,1").unwrap().residues(), &[1, 0, 1, 1]);
        assert!(parse_message(&cube, "0b101").is_err());
        assert!(parse_message(&cube, "0b1021").is_err());
        let z = AbelianGroup::new(vec![5, 3]).unwrap();
        assert_eq!(parse_message(&z, " 4, 2 ").unwrap().residues(), &[4, 2]);
        assert!(matches!(parse_message(&z, "5,0"), Err(Error::Usage(_))));
        assert!(parse_message(&z, "0b10").is_err());
        assert!(parse_message(&z, "x,1").is_err());
    }

    #[test]
    fn usage_errors_exit_2_with_json() {
        let (code, _, err) = run_capture(&["gen-set", "--method", "random"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "usage");

        let (code, _, _) = run_capture(&["gen-set", "--group", "2,2", "--method", "greedy"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["gen-set", "--cyclic", "5", "--method", "aghp", "--m", "3"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn capacity_errors_exit_3() {
        let (code, _, err) = run_capture(&[
            "gen-set",
            "--group",
            "2,2,2,2,2,2,2,2,2,2,2,2,2,2,2",
            "--method",
            "greedy",
            "--size",
            "4",
        ]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("gen-set"));
    }

    #[test]
    fn gen_set_to_stdout_is_a_set_file() {
        let (code, out, _) = run_capture(&["gen-set", "--cyclic", "7", "--method", "greedy", "--size", "3"]);
        assert_eq!(code, 0);
        let set = crate::bias::load_set(out.as_bytes(), true).unwrap();
        assert_eq!(set.len(), 3);
    }
}
