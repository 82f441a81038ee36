//! The `kpf` command line, as a library so tests can drive it in-process.
//!
//! [`run`] takes argv plus explicit stdin/stdout/stderr handles and returns
//! the exit status: 0 on success, 1 on invalid input, 2 on an empty
//! instance. Errors are written to stderr as one JSON object.

use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kpf_core::enumeration::{enumerate_kostant_par, KostantIter};
use kpf_core::logcount::{
    dominance_monotonicity_check, log_count, rect_log_count, DominanceVerdict, LogCount,
};
use kpf_core::markov::{simulate, sweep, sweep_to_csv, WalkConfig};
use kpf_core::orders::{
    build_poset, mobius, poset_to_dot, poset_to_json, rank_function, search_order_discrepancy,
    LabelStyle, OrderKind,
};
use kpf_core::structures::{kostant_to_lusztig, kostant_to_tesler, Representation, Structure};
use kpf_core::{height_from_weight, kpf_count, Height, HookSum, KpfError, Weight};
use num_bigint::BigUint;
use serde_json::json;

/// Seed used by `simulate` and `sweep` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Parser)]
#[command(
    name = "kpf",
    version,
    about = "Kostant partition function combinatorics"
)]
struct Cli {
    /// Worker threads for enumeration and simulation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact number of decompositions.
    Count(InstanceArgs),
    /// Stream every object of an instance as JSON Lines.
    Enumerate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long = "as", value_name = "REPR", default_value = "kostant")]
        repr: Repr,
    },
    /// Convert JSON Lines on stdin between representations.
    Convert {
        #[arg(long)]
        from: Repr,
        #[arg(long)]
        to: Repr,
    },
    /// Build a poset and print it as DOT or JSON.
    Poset {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        #[arg(long, value_enum, default_value = "kostant")]
        label: Label,
    },
    /// Möbius values from the bottom, with the n! comparison.
    Mobius {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Search small heights for a pair ordered differently than in the dictionary order.
    CompareOrders {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_sum: u32,
    },
    /// Monte-Carlo run of the random down-walk on Tesler matrices.
    Simulate {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        hooks: IntList,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// One simulation summary row per step count.
    Sweep {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        hooks: IntList,
        #[arg(long, value_parser = parse_ints)]
        steps: IntList,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact count and its natural logarithm.
    Logcount {
        #[arg(
            long,
            value_parser = parse_ints,
            allow_hyphen_values = true,
            conflicts_with = "rect",
            required_unless_present = "rect"
        )]
        hooks: Option<IntList>,
        /// Rectangle `n,m`: the hook sum `(n, 0^(m-1))`.
        #[arg(long, value_parser = parse_ints)]
        rect: Option<IntList>,
    },
    /// Check count monotonicity for two heights under dominance.
    Dominance {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        height: IntList,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        than: IntList,
    },
}

#[derive(Debug, Clone)]
struct IntList(Vec<i64>);

fn parse_ints(s: &str) -> std::result::Result<IntList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(IntList)
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct InstanceArgs {
    /// Comma-separated hook sums.
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    hooks: Option<IntList>,
    /// Comma-separated weight (must sum to zero).
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    weight: Option<IntList>,
    /// Comma-separated height (prefix sums of the weight).
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    height: Option<IntList>,
}

impl InstanceArgs {
    fn height(&self) -> kpf_core::Result<Height> {
        if let Some(h) = &self.hooks {
            Ok(HookSum::new(h.0.clone())?.height())
        } else if let Some(w) = &self.weight {
            Ok(height_from_weight(&Weight::new(w.0.clone())?))
        } else if let Some(e) = &self.height {
            Height::new(e.0.clone())
        } else {
            Err(KpfError::InvalidInput(
                "one of --hooks, --weight, --height is required".into(),
            ))
        }
    }
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[arg(long, default_value = "merge")]
    order: String,
    /// Allow the excess-merge-shift order.
    #[arg(long)]
    experimental: bool,
}

impl OrderArgs {
    fn kind(&self) -> kpf_core::Result<OrderKind> {
        let kind: OrderKind = self.order.parse()?;
        if kind == OrderKind::ExcessMergeShift && !self.experimental {
            return Err(KpfError::InvalidInput(
                "excess-merge-shift requires --experimental".into(),
            ));
        }
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Repr {
    Tesler,
    Kostant,
    Lusztig,
    Flow,
}

impl From<Repr> for Representation {
    fn from(r: Repr) -> Self {
        match r {
            Repr::Tesler => Representation::Tesler,
            Repr::Kostant => Representation::Kostant,
            Repr::Lusztig => Representation::Lusztig,
            Repr::Flow => Representation::Flow,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Label {
    Kostant,
    Lusztig,
    Tesler,
}

impl From<Label> for LabelStyle {
    fn from(l: Label) -> Self {
        match l {
            Label::Kostant => LabelStyle::Kostant,
            Label::Lusztig => LabelStyle::Lusztig,
            Label::Tesler => LabelStyle::Tesler,
        }
    }
}

enum Failure {
    Lib(KpfError),
    Io(std::io::Error),
}

impl From<KpfError> for Failure {
    fn from(e: KpfError) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and executes one subcommand.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.render().to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            write_error(err, "invalid-arguments", first);
            return 1;
        }
    };
    let pool = match cli.jobs {
        Some(0) => Err(KpfError::InvalidInput("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(Some)
            .map_err(|e| KpfError::InvalidInput(e.to_string())),
        None => Ok(None),
    };
    let result = match pool {
        Ok(pool) => dispatch(&cli.command, &Workers(pool), stdin, out, err),
        Err(e) => Err(e.into()),
    };
    match result.and_then(|()| out.flush().map_err(Failure::Io)) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            write_error(err, e.kind(), &e.to_string());
            if matches!(e, KpfError::EmptyInstance(_)) {
                2
            } else {
                1
            }
        }
        // A closed pipe downstream is not an error.
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            write_error(err, "io", &e.to_string());
            1
        }
    }
}

fn write_error(err: &mut dyn Write, kind: &str, message: &str) {
    let _ = writeln!(err, "{}", json!({ "error": message, "kind": kind }));
}

fn nonempty(eta: Height) -> kpf_core::Result<Height> {
    if eta.is_empty_instance() {
        Err(KpfError::EmptyInstance(eta.entries().to_vec()))
    } else {
        Ok(eta)
    }
}

/// Optional dedicated thread pool from `--jobs`.
struct Workers(Option<rayon::ThreadPool>);

impl Workers {
    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.0 {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn threads(&self) -> usize {
        self.install(rayon::current_num_threads)
    }
}

fn dispatch(
    cmd: &Command,
    workers: &Workers,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    match cmd {
        Command::Count(instance) => {
            let eta = instance.height()?;
            if eta.is_empty_instance() {
                writeln!(out, "0")?;
                return Err(KpfError::EmptyInstance(eta.entries().to_vec()).into());
            }
            writeln!(out, "{}", kpf_count(&eta.hooks().weight()))?;
        }
        Command::Enumerate { instance, repr } => {
            let eta = nonempty(instance.height()?)?;
            let repr = Representation::from(*repr);
            if workers.threads() > 1 {
                for p in workers.install(|| enumerate_kostant_par(&eta)).iter() {
                    writeln!(out, "{}", Structure::from_kostant(p, repr).to_json())?;
                }
            } else {
                for p in KostantIter::new(&eta) {
                    writeln!(out, "{}", Structure::from_kostant(&p, repr).to_json())?;
                }
            }
        }
        Command::Convert { from, to } => {
            let (from, to) = (Representation::from(*from), Representation::from(*to));
            for (lineno, line) in stdin.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let s = Structure::from_json(from, &line).map_err(|e| match e {
                    KpfError::InvalidInput(m) => {
                        KpfError::InvalidInput(format!("line {}: {m}", lineno + 1))
                    }
                    other => other,
                })?;
                writeln!(
                    out,
                    "{}",
                    Structure::from_kostant(&s.to_kostant(), to).to_json()
                )?;
            }
        }
        Command::Poset {
            instance,
            order,
            emit,
            label,
        } => {
            let eta = nonempty(instance.height()?)?;
            let p = build_poset(&eta, order.kind()?)?;
            match emit {
                Emit::Dot => write!(out, "{}", poset_to_dot(&p, (*label).into()))?,
                Emit::Json => writeln!(out, "{}", poset_to_json(&p, (*label).into()))?,
            }
        }
        Command::Mobius { instance, order } => {
            let eta = nonempty(instance.height()?)?;
            let p = build_poset(&eta, order.kind()?)?;
            let mu = mobius(&p);
            let ranks = rank_function(&p).ok();
            let n = eta.len();
            let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
            let max_abs = mu.max_abs();
            let rows: Vec<_> = p
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "index": i,
                        "lusztig": kostant_to_lusztig(e).entries(),
                        "tesler": kostant_to_tesler(e).upper(),
                        "rank": ranks.as_ref().map(|r| r[i]),
                        "mobius": big_json(&mu.values[i].to_string()),
                    })
                })
                .collect();
            let within = max_abs.magnitude() <= &factorial;
            writeln!(
                out,
                "{}",
                json!({
                    "height": eta.entries(),
                    "order": p.kind.name(),
                    "synthetic_bottom": mu.synthetic_bottom(),
                    "elements": rows,
                    "max_abs_mobius": big_json(&max_abs.to_string()),
                    "n": n,
                    "n_factorial": big_json(&factorial.to_string()),
                    "within_n_factorial": within,
                })
            )?;
        }
        Command::CompareOrders {
            order,
            max_n,
            max_sum,
        } => {
            let kind = order.kind()?;
            match search_order_discrepancy(kind, *max_n, *max_sum)? {
                Some(d) => writeln!(
                    out,
                    "{}",
                    json!({
                        "height": d.height.entries(),
                        "order": kind.name(),
                        "lower": kostant_to_lusztig(&d.lower).entries(),
                        "upper": kostant_to_lusztig(&d.upper).entries(),
                        "less_in_order": d.in_candidate,
                        "less_in_dictionary": !d.in_candidate,
                    })
                )?,
                None => writeln!(out, "equivalent on searched range")?,
            }
        }
        Command::Simulate {
            hooks,
            steps,
            trials,
            seed,
        } => {
            let seed = resolve_seed(*seed, err)?;
            let cfg = WalkConfig {
                hooks: HookSum::new(hooks.0.clone())?,
                steps: *steps,
                trials: *trials,
                seed,
            };
            write!(out, "{}", workers.install(|| simulate(&cfg))?.to_csv())?;
        }
        Command::Sweep {
            hooks,
            steps,
            trials,
            seed,
        } => {
            let seed = resolve_seed(*seed, err)?;
            let steps = steps
                .0
                .iter()
                .map(|&r| {
                    u64::try_from(r)
                        .map_err(|_| KpfError::InvalidInput(format!("negative step count {r}")))
                })
                .collect::<kpf_core::Result<Vec<_>>>()?;
            let hooks = HookSum::new(hooks.0.clone())?;
            let reports = workers.install(|| sweep(&hooks, &steps, *trials, seed))?;
            write!(out, "{}", sweep_to_csv(&reports))?;
        }
        Command::Logcount { hooks, rect } => {
            let lc: LogCount = match (hooks, rect) {
                (Some(h), _) => {
                    let h = HookSum::new(h.0.clone())?;
                    nonempty(h.height())?;
                    log_count(&h)?
                }
                (None, Some(r)) => match r.0[..] {
                    [n, m] if n >= 0 && m >= 1 => {
                        let n = u32::try_from(n).map_err(|_| {
                            KpfError::InvalidInput(format!("rectangle height {n} too large"))
                        })?;
                        rect_log_count(n, m as usize)?
                    }
                    _ => {
                        return Err(KpfError::InvalidInput(
                            "--rect takes n,m with n >= 0 and m >= 1".into(),
                        )
                        .into())
                    }
                },
                (None, None) => unreachable!("clap requires one of --hooks, --rect"),
            };
            writeln!(out, "count,log_count\n{},{}", lc.count, lc.value)?;
        }
        Command::Dominance { height, than } => {
            let a = nonempty(Height::new(height.0.clone())?)?;
            let b = nonempty(Height::new(than.0.clone())?)?;
            writeln!(out, "verdict,count,count2")?;
            match dominance_monotonicity_check(&a, &b) {
                DominanceVerdict::Holds { count, count2 } => {
                    writeln!(out, "holds,{count},{count2}")?
                }
                DominanceVerdict::Violated { count, count2 } => {
                    writeln!(out, "violated,{count},{count2}")?
                }
                DominanceVerdict::NotApplicable => writeln!(out, "not-applicable,,")?,
            }
        }
    }
    Ok(())
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> std::result::Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None => {
            writeln!(err, "using default seed {DEFAULT_SEED}")?;
            Ok(DEFAULT_SEED)
        }
    }
}

/// Small integers as JSON numbers, anything wider as a decimal string.
fn big_json(s: &str) -> serde_json::Value {
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}
