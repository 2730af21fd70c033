use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use tnsrank::hackbusch::{DEFAULT_SAMPLED_TRIALS, EXHAUSTIVE_MAX_LEAVES};
use tnsrank::{
    compare_models, construct_hard_subset, estimate_generic_rank, hackbusch_verdict,
    max_colour_cut, min_exponent_over_permutations, min_mono_cut, optimalize, predict_rank,
    tt_exponent, ErrorKind, FieldPrime, LeafSet, PermutationMode, TnsModel, Tree,
};

/// Flattening ranks of tensor network states from cuts on trees.
#[derive(Parser)]
#[command(name = "tnsrank", version)]
struct Cli {
    /// Emit JSON (`--json false` prints one `key: value` line per field instead).
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal monochromatic cut and maximal colour cut for a leaf subset.
    Minmono {
        #[command(flatten)]
        tree: TreeArg,
        #[arg(long)]
        subset: String,
    },
    /// Min-product bound on a flattening rank.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        subset: String,
    },
    /// Compares the prediction with the exact rank of sampled tensors.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        subset: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Tensor train bonds needed for the hierarchical model on n leaves.
    Hackbusch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u64,
    },
    /// Necessary condition for the first model to lie inside the second.
    Compare {
        /// Model file or inline JSON; give it twice, first model then second.
        #[arg(long, required = true, num_args = 1..=2, action = clap::ArgAction::Append)]
        model: Vec<String>,
    },
    /// Greedy leaf subset with a large minimal monochromatic cut.
    Hardset {
        #[command(flatten)]
        tree: TreeArg,
        #[arg(long, default_value_t = 2)]
        r: u64,
    },
    /// Lowers every bond to the smallest value implied by the others.
    Optimalize {
        /// Model file, or inline JSON.
        #[arg(long)]
        model: String,
    },
    /// Smallest prefix exponent over relabellings of the leaves.
    #[command(group(ArgGroup::new("input").required(true).args(["tree", "n"])))]
    Permscan {
        /// Tree file, or inline tree text.
        #[arg(long)]
        tree: Option<String>,
        /// Use the almost perfect binary tree on `n` leaves.
        #[arg(long)]
        n: Option<usize>,
        /// Defaults to exhaustive up to 8 leaves and sampled above.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = DEFAULT_SAMPLED_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct TreeArg {
    /// Tree file, or inline tree text such as "((1,2),(3,4))".
    #[arg(long)]
    tree: String,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct ModelArgs {
    /// Model file, or inline JSON.
    #[arg(long, conflicts_with_all = ["tree", "r"])]
    model: Option<String>,
    /// Tree for a constant model, used with `--r`.
    #[arg(long, requires = "r")]
    tree: Option<String>,
    /// Constant bond and leaf dimension.
    #[arg(long, requires = "tree")]
    r: Option<u64>,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, default_value_t = FieldPrime::DEFAULT.get())]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

enum Failure {
    Core(tnsrank::Error),
    Read(String, std::io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Assertion => 2,
                ErrorKind::ResourceCap => 3,
            },
            Failure::Read(..) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Read(path, e) => write!(f, "cannot read {path}: {e}"),
        }
    }
}

impl From<tnsrank::Error> for Failure {
    fn from(e: tnsrank::Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_source(arg: &str, inline_start: char) -> Outcome<String> {
    if arg.trim_start().starts_with(inline_start) {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Failure::Read(arg.to_string(), e))
}

fn load_tree(arg: &str) -> Outcome<Tree> {
    Ok(read_source(arg, '(')?.trim().parse()?)
}

fn load_model(arg: &str) -> Outcome<TnsModel> {
    Ok(TnsModel::from_json(&read_source(arg, '{')?)?)
}

fn resolve_model(args: &ModelArgs) -> Outcome<TnsModel> {
    match (&args.model, &args.tree, args.r) {
        (Some(m), _, _) => load_model(m),
        (None, Some(t), Some(r)) => Ok(TnsModel::constant(load_tree(t)?, r)?),
        _ => unreachable!("clap enforces --model or --tree with --r"),
    }
}

fn subset(text: &str) -> Outcome<LeafSet> {
    Ok(text.parse()?)
}

#[derive(Serialize)]
struct HardSet {
    subset: LeafSet,
    minmono: usize,
    r: u64,
    #[serde(serialize_with = "tnsrank::json::big")]
    rank_bound: BigUint,
}

fn run(command: Command) -> Outcome<Value> {
    let value = match command {
        Command::Minmono { tree, subset: s } => {
            let tree = load_tree(&tree.tree)?;
            let a = subset(&s)?;
            let mono = min_mono_cut(&tree, &a)?;
            let colour = max_colour_cut(&tree, &a)?;
            json!({
                "size": mono.size,
                "witness": mono.witness,
                "colour_cut_size": colour.as_ref().map(|c| c.size),
                "colour_witness": colour.map(|c| c.witness),
            })
        }
        Command::Predict { model, subset: s } => {
            let model = resolve_model(&model)?;
            serde_json::to_value(predict_rank(&model, &subset(&s)?)?).expect("serializable")
        }
        Command::Verify {
            model,
            subset: s,
            trials,
            field,
        } => {
            let model = resolve_model(&model)?;
            let a = subset(&s)?;
            let prime = FieldPrime::new(field.prime)?;
            let predicted = predict_rank(&model, &a)?;
            let oracle = BigUint::from(estimate_generic_rank(
                &model, &a, trials, field.seed, prime,
            )?);
            let agree = if predicted.exact {
                oracle == predicted.value
            } else {
                oracle <= predicted.value
            };
            json!({
                "predicted": big(&predicted.value),
                "exact": predicted.exact,
                "oracle": big(&oracle),
                "agree": agree,
                "trials": trials,
                "seed": field.seed,
                "prime": prime.get(),
            })
        }
        Command::Hackbusch { n, r } => {
            serde_json::to_value(hackbusch_verdict(n, r)?).expect("serializable")
        }
        Command::Compare { model } => {
            if model.len() != 2 {
                return Err(tnsrank::Error::InvalidArgument(format!(
                    "compare needs exactly two models, got {}",
                    model.len()
                ))
                .into());
            }
            let first = load_model(&model[0])?;
            let second = load_model(&model[1])?;
            serde_json::to_value(compare_models(&first, &second)?).expect("serializable")
        }
        Command::Hardset { tree, r } => {
            let tree = load_tree(&tree.tree)?;
            let a = construct_hard_subset(&tree)?;
            let k = min_mono_cut(&tree, &a)?.size;
            let report = HardSet {
                subset: a,
                minmono: k,
                r,
                rank_bound: BigUint::from(r).pow(k as u32),
            };
            serde_json::to_value(report).expect("serializable")
        }
        Command::Optimalize { model } => {
            let optimal = optimalize(&load_model(&model)?)?;
            serde_json::from_str(&optimal.to_json()).expect("model JSON parses")
        }
        Command::Permscan {
            tree,
            n,
            mode,
            trials,
            seed,
        } => {
            let tree = match (tree, n) {
                (Some(t), _) => load_tree(&t)?,
                (None, Some(n)) => Tree::almost_perfect_binary(n)?,
                (None, None) => unreachable!("clap requires --tree or --n"),
            };
            let mode = match mode {
                Some(Mode::Exhaustive) => PermutationMode::Exhaustive,
                Some(Mode::Sampled) => PermutationMode::Sampled { trials, seed },
                None if tree.n() <= EXHAUSTIVE_MAX_LEAVES => PermutationMode::Exhaustive,
                None => PermutationMode::Sampled { trials, seed },
            };
            let natural = tt_exponent(&tree);
            let scan = min_exponent_over_permutations(&tree, mode)?;
            json!({
                "n": tree.n(),
                "tree": tree.to_string(),
                "natural_k": natural.k,
                "natural_witness_j": natural.witness_j,
                "k_min": scan.k_min,
                "permutation": scan.permutation,
                "examined": scan.examined,
                "search": mode,
                "natural_is_minimal": natural.k == scan.k_min,
            })
        }
    };
    Ok(value)
}

fn big(x: &BigUint) -> Value {
    serde_json::to_value(BigWrap(x)).expect("serializable")
}

struct BigWrap<'a>(&'a BigUint);

impl Serialize for BigWrap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        tnsrank::json::big(self.0, s)
    }
}

fn render(value: &Value, as_json: bool) -> String {
    if as_json {
        return serde_json::to_string_pretty(value).expect("serializable") + "\n";
    }
    match value {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        other => format!("{other}\n"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(value) => {
            print!("{}", render(&value, cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
