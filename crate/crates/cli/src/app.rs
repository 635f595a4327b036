use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::RngCore;
use serde::Serialize;
use serde_json::{json, Value};

use deltakit::compose::joint_ground;
use deltakit::oracle::{check_symmetric_exchange, enumerate_family};
use deltakit::{
    delta_sum, elementary_projection, search_covering, search_delta_covering, search_intersection,
    search_parity, search_partition, seeded_rng, union, weighted_intersection_search,
    weighted_intersection_value, max_weight_feasible, DeltaMatroid, Error, Labels, PairPartition,
    PrimeField, Representation, SeededRng, SetPair, WeightMap, DEFAULT_EPS,
};

use crate::bench::bench;
use crate::instance::{load_instance, to_instance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RANDOMIZED: i32 = 3;

/// Largest ground set `family` output and `check-axioms` will enumerate.
const ENUMERATION_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "deltakit", version, about = "Linear delta-matroids over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random choice; drawn from the OS when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Failure probability allowed per randomized construction.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Prime modulus in [2^31, 2^63). Defaults to $DELTAKIT_PRIME, then 2^61 - 1.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Shrink the contraction set of every input before use.
    #[arg(long, global = true)]
    reduce: bool,
    /// Add the elapsed milliseconds to the output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the feasible sets and check the symmetric exchange axiom.
    CheckAxioms { file: PathBuf },
    /// Rewrite an instance in another form.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Form,
    },
    /// {F1 ∪ F2 : F1 ∩ F2 = ∅}.
    Union {
        a: PathBuf,
        b: PathBuf,
        /// Also enumerate the resulting family.
        #[arg(long)]
        family: bool,
    },
    /// {F1 Δ F2}.
    Deltasum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        family: bool,
    },
    /// Project elements away.
    Project {
        file: PathBuf,
        /// Comma-separated labels to project away.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        /// Re-represent with at most one projected element.
        #[arg(long)]
        elementary: bool,
        #[arg(long)]
        family: bool,
    },
    /// Maximum weight feasible set.
    Maxweight {
        file: PathBuf,
        /// `label=weight,...`; unlisted elements weigh 0. Defaults to the
        /// file's weights, then to all ones.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Disjoint feasible F1, F2 covering as much as possible.
    Cover { a: PathBuf, b: PathBuf },
    /// Feasible F1, F2 with |F1 Δ F2| maximum.
    Deltacover { a: PathBuf, b: PathBuf },
    /// A set feasible in both.
    Intersect { a: PathBuf, b: PathBuf },
    /// Feasible F1, F2 partitioning the joint ground set.
    Partition { a: PathBuf, b: PathBuf },
    /// A feasible set breaking the fewest pairs.
    Parity {
        file: PathBuf,
        /// `a:b,c:d,...`; defaults to the file's pairs.
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Maximum weight common feasible set, for nonnegative weights.
    Wintersect {
        a: PathBuf,
        b: PathBuf,
        /// `label=weight,...`; defaults to the first file's weights, then
        /// the second's, then all ones.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Time random instances, as CSV.
    Bench {
        /// Comma-separated sizes; an empty list prints the header only.
        #[arg(long, default_value = "100,200,400")]
        sizes: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Twist,
    Contraction,
    Reduced,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckAxioms { .. } => "check-axioms",
            Command::Convert { .. } => "convert",
            Command::Union { .. } => "union",
            Command::Deltasum { .. } => "deltasum",
            Command::Project { .. } => "project",
            Command::Maxweight { .. } => "maxweight",
            Command::Cover { .. } => "cover",
            Command::Deltacover { .. } => "deltacover",
            Command::Intersect { .. } => "intersect",
            Command::Partition { .. } => "partition",
            Command::Parity { .. } => "parity",
            Command::Wintersect { .. } => "wintersect",
            Command::Bench { .. } => "bench",
        }
    }
}

#[derive(Serialize, Default)]
struct Output {
    command: &'static str,
    seed: u64,
    eps: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    /// Nothing was found; `stderr` explains, and the output is still printed.
    NotFound(String),
    Randomized(String),
}

/// Exit code for a library error: nothing found, an unlucky random
/// choice, or bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFound | Error::NoCommonSet | Error::InfeasibleTarget => EXIT_NOT_FOUND,
        Error::RandomizationFailure { .. } => EXIT_RANDOMIZED,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match exit_code(&e) {
            EXIT_NOT_FOUND => Failure::NotFound(e.to_string()),
            EXIT_RANDOMIZED => Failure::Randomized(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Ctx {
    field: PrimeField,
    eps: f64,
    reduce: bool,
    rng: SeededRng,
}

impl Ctx {
    fn load(&mut self, path: &Path) -> Result<crate::instance::Instance, Failure> {
        let mut inst = load_instance(path, self.field, &mut self.rng, self.eps)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if self.reduce {
            inst.rep = inst.rep.reduce();
        }
        Ok(inst)
    }

    fn rep(&mut self, path: &Path) -> Result<Representation, Failure> {
        Ok(self.load(path)?.rep)
    }
}

fn set_json(set: &[String]) -> Value {
    json!(set)
}

fn pair_json(p: &SetPair) -> Value {
    json!({ "f1": p.f1, "f2": p.f2 })
}

fn family_of(rep: &Representation) -> Result<Vec<Vec<String>>, Failure> {
    let n = rep.ground().len();
    if n > ENUMERATION_LIMIT {
        return Err(Failure::Usage(format!(
            "ground set of {n} elements is too large to enumerate (limit {ENUMERATION_LIMIT})"
        )));
    }
    Ok(enumerate_family(rep)?.label_sets())
}

fn emitted(rep: &Representation, family: bool, out: &mut Output) -> Result<(), Failure> {
    out.value = Some(serde_json::to_value(to_instance(rep)).expect("instances serialize"));
    if family {
        out.family = Some(family_of(rep)?);
    }
    Ok(())
}

fn parse_weights(text: &str) -> Result<BTreeMap<String, i64>, Failure> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (l, w) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("weight `{item}` is not of the form label=weight")))?;
        let w: i64 = w
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("weight `{item}` is not an integer")))?;
        if out.insert(l.trim().to_string(), w).is_some() {
            return Err(Failure::Usage(format!("`{}` is weighted twice", l.trim())));
        }
    }
    Ok(out)
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            item.split_once(':')
                .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                .ok_or_else(|| Failure::Usage(format!("pair `{item}` is not of the form a:b")))
        })
        .collect()
}

/// Weights over `rep`'s ground, unlisted elements weighing 0.
fn weight_map(ground: &Labels, w: &BTreeMap<String, i64>) -> Result<WeightMap, Failure> {
    if let Some(l) = w.keys().find(|l| !ground.contains(l)) {
        return Err(Failure::Usage(format!("weighted label `{l}` is not in the ground set")));
    }
    let full: Vec<(&str, i64)> = ground
        .iter()
        .map(|l| (l, w.get(l).copied().unwrap_or(0)))
        .collect();
    Ok(WeightMap::new(ground, &full)?)
}

fn uniform(ground: &Labels) -> BTreeMap<String, i64> {
    ground.iter().map(|l| (l.to_string(), 1)).collect()
}

fn execute(cmd: &Command, ctx: &mut Ctx, out: &mut Output) -> Result<(), Failure> {
    match cmd {
        Command::CheckAxioms { file } => {
            let rep = ctx.rep(file)?;
            if rep.ground().len() > ENUMERATION_LIMIT {
                return Err(family_of(&rep).unwrap_err());
            }
            let fam = enumerate_family(&rep)?;
            out.family = Some(fam.label_sets());
            match check_symmetric_exchange(&fam) {
                Ok(()) => out.value = Some(json!(true)),
                Err(v) => {
                    out.value = Some(json!(false));
                    return Err(Failure::NotFound(format!("exchange axiom violated: {v}")));
                }
            }
        }
        Command::Convert { file, to } => {
            let rep = ctx.rep(file)?;
            let converted: Representation = match (to, &rep) {
                (Form::Reduced, r) => r.reduce(),
                (Form::Twist, Representation::Twist(_)) => rep.clone(),
                (Form::Twist, Representation::Contraction(c)) => c.to_twist()?.into(),
                (Form::Contraction, Representation::Twist(t)) => t.to_contraction().into(),
                (Form::Contraction, Representation::Contraction(_)) => rep.clone(),
                (_, Representation::Projected(p)) if p.projected().is_empty() => {
                    let c: Representation = p.inner().clone().into();
                    match to {
                        Form::Twist => c.to_contraction().expect("linear").to_twist()?.into(),
                        _ => c,
                    }
                }
                (_, Representation::Projected(_)) => {
                    return Err(Failure::Usage(
                        "a projected representation with projected elements has no twist or contraction form"
                            .into(),
                    ))
                }
            };
            emitted(&converted, false, out)?;
        }
        Command::Union { a, b, family } | Command::Deltasum { a, b, family } => {
            let (d1, d2) = (ctx.rep(a)?, ctx.rep(b)?);
            let r = if matches!(cmd, Command::Union { .. }) {
                union(&d1, &d2, &mut ctx.rng, ctx.eps)?
            } else {
                delta_sum(&d1, &d2, &mut ctx.rng, ctx.eps)?
            };
            emitted(&r, *family, out)?;
        }
        Command::Project {
            file,
            set,
            elementary,
            family,
        } => {
            let rep = ctx.rep(file)?;
            let idx = rep.ground().positions(set)?;
            let mut p = rep.project_idx(&idx);
            if *elementary {
                p = elementary_projection(&p.to_projected(), &mut ctx.rng, ctx.eps)?.into();
            }
            emitted(&p, *family, out)?;
        }
        Command::Maxweight { file, weights } => {
            let inst = ctx.load(file)?;
            let w = match weights {
                Some(s) => parse_weights(s)?,
                None => inst.weights.clone().unwrap_or_else(|| uniform(inst.rep.ground())),
            };
            let w = weight_map(inst.rep.ground(), &w)?;
            let (set, value) = max_weight_feasible(&inst.rep, w.as_slice())?;
            out.value = Some(json!(value));
            out.witness = Some(set_json(&inst.rep.ground().select(&set)));
        }
        Command::Cover { a, b } | Command::Deltacover { a, b } | Command::Partition { a, b } => {
            let (d1, d2) = (ctx.rep(a)?, ctx.rep(b)?);
            let (pair, value) = match cmd {
                Command::Cover { .. } => {
                    let p = search_covering(&d1, &d2, &mut ctx.rng, ctx.eps)?;
                    let v = p.f1.len() + p.f2.len();
                    (p, json!(v))
                }
                Command::Deltacover { .. } => {
                    let p = search_delta_covering(&d1, &d2, &mut ctx.rng, ctx.eps)?;
                    let v = p.f1.iter().filter(|l| !p.f2.contains(l)).count()
                        + p.f2.iter().filter(|l| !p.f1.contains(l)).count();
                    (p, json!(v))
                }
                _ => (search_partition(&d1, &d2, &mut ctx.rng)?, json!(true)),
            };
            out.value = Some(value);
            out.witness = Some(pair_json(&pair));
        }
        Command::Intersect { a, b } => {
            let (d1, d2) = (ctx.rep(a)?, ctx.rep(b)?);
            let set = search_intersection(&d1, &d2, &mut ctx.rng)?;
            out.value = Some(json!(true));
            out.witness = Some(set_json(&set));
        }
        Command::Parity { file, pairs } => {
            let inst = ctx.load(file)?;
            let pairs = match pairs {
                Some(s) => parse_pairs(s)?,
                None => inst.pairs.clone().ok_or_else(|| {
                    Failure::Usage("no pairs given: pass --pairs or add `pairs` to the file".into())
                })?,
            };
            let pairs = PairPartition::new(inst.rep.ground(), &pairs)?;
            let w = search_parity(&inst.rep, &pairs, &mut ctx.rng, ctx.eps)?;
            out.value = Some(json!(w.broken));
            out.witness = Some(set_json(&w.set));
        }
        Command::Wintersect { a, b, weights } => {
            let ia = ctx.load(a)?;
            let ib = ctx.load(b)?;
            let joint = joint_ground(ia.rep.ground(), ib.rep.ground());
            let w = match weights {
                Some(s) => parse_weights(s)?,
                None => ia
                    .weights
                    .clone()
                    .or_else(|| ib.weights.clone())
                    .unwrap_or_else(|| uniform(&joint)),
            };
            let w = weight_map(&joint, &w)?;
            let value = weighted_intersection_value(&ia.rep, &ib.rep, &w, &mut ctx.rng)?;
            let set = weighted_intersection_search(&ia.rep, &ib.rep, &w, &mut ctx.rng)?;
            out.value = Some(json!(value));
            out.witness = Some(set_json(&set));
        }
        Command::Bench { .. } => unreachable!("handled before dispatch"),
    }
    Ok(())
}

fn resolve_prime(flag: Option<u64>) -> Result<PrimeField, String> {
    let p = match flag {
        Some(p) => p,
        None => match std::env::var("DELTAKIT_PRIME") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("DELTAKIT_PRIME=`{s}` is not an integer"))?,
            Err(_) => return Ok(PrimeField::default()),
        },
    };
    PrimeField::new(p).map_err(|e| e.to_string())
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|x| x.parse().map_err(|_| format!("size `{x}` is not a nonnegative integer")))
        .collect()
}

/// Runs the command line `args` (program name first), writing the result
/// to stdout and diagnostics to stderr, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let usage = |msg: String| {
        eprintln!("error: {msg}");
        EXIT_USAGE
    };
    let field = match resolve_prime(cli.prime) {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    if !(cli.eps > 0.0 && cli.eps <= 1.0) {
        return usage(Error::InvalidEpsilon(cli.eps).to_string());
    }
    let seed = cli.seed.unwrap_or_else(|| rand::rngs::OsRng.next_u64());
    if let Command::Bench { sizes } = &cli.command {
        let sizes = match parse_sizes(sizes) {
            Ok(s) => s,
            Err(e) => return usage(e),
        };
        return match bench(&sizes, seed, field, std::io::stdout().lock()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_RANDOMIZED
            }
        };
    }
    let mut ctx = Ctx {
        field,
        eps: cli.eps,
        reduce: cli.reduce,
        rng: seeded_rng(seed),
    };
    let mut out = Output {
        command: cli.command.name(),
        seed,
        eps: cli.eps,
        ..Output::default()
    };
    let start = Instant::now();
    let result = execute(&cli.command, &mut ctx, &mut out);
    if cli.timing {
        out.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let print = |out: &Output| {
        let mut stdout = std::io::stdout().lock();
        let _ = serde_json::to_writer(&mut stdout, out);
        let _ = writeln!(stdout);
    };
    match result {
        Ok(()) => {
            print(&out);
            EXIT_OK
        }
        Err(Failure::NotFound(msg)) => {
            print(&out);
            eprintln!("{msg}");
            EXIT_NOT_FOUND
        }
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Randomized(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("hint: rerun with a different --seed (this run used --seed {seed})");
            EXIT_RANDOMIZED
        }
    }
}
