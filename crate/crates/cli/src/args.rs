use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mfo", version, about = "Mallows permutations, first-order logic and limit-law experiments")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw permutations from Mallows(n, q).
    Sample(SampleArgs),
    /// Mallows probability of given permutations.
    Pmf(PmfArgs),
    /// Evaluate a formula on permutations.
    Eval(EvalArgs),
    /// Relativize or reverse a formula.
    Transform(TransformArgs),
    /// Ehrenfeucht–Fraïssé types and equivalence.
    Ef(EfArgs),
    /// Structural statistics: J1, K1, W_k, interval graphs.
    Stats(StatsArgs),
    /// Total variation distances.
    Tv(TvArgs),
    /// Satisfaction-probability and displacement experiments.
    Experiment(ExperimentArgs),
    /// Trace the regeneration chain M_n.
    Chain(ChainArgs),
    /// Print one of the constructed sentences.
    BuildSentence(BuildArgs),
    /// Tower and wowzer functions and their inverses.
    Towers(TowersArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("perms").required(true).args(["perm", "perm_file"])))]
pub struct PermInput {
    /// Permutation in one-line notation, e.g. 2,3,1.
    #[arg(long)]
    pub perm: Option<String>,
    /// File with one permutation per line.
    #[arg(long)]
    pub perm_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = positive_f64, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[command(flatten)]
    pub input: PermInput,
    /// Real q; with --exact a rational such as 1/2.
    #[arg(long)]
    pub q: String,
    /// Exact rational arithmetic.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct FormulaInput {
    /// Formula text.
    #[arg(long)]
    pub formula: String,
    /// Signature; inferred from the relations used when absent.
    #[arg(long, value_enum)]
    pub sig: Option<SigArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigArg {
    Toob,
    Toto,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: PermInput,
    #[command(flatten)]
    pub formula: FormulaInput,
    /// Values of free variables, e.g. x=1,y=3.
    #[arg(long)]
    pub assign: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("op").required(true).args(["relativize", "reverse"])))]
pub struct TransformArgs {
    #[command(flatten)]
    pub formula: FormulaInput,
    /// φ^≤(y): guard every quantifier by the prefix bound y.
    #[arg(long)]
    pub relativize: bool,
    /// Name of the bound variable for --relativize (fresh when absent).
    #[arg(long, requires = "relativize")]
    pub var: Option<String>,
    /// With --relativize: relativize to the unique witness of this one-variable formula.
    #[arg(long, requires = "relativize", conflicts_with = "var")]
    pub witness: Option<String>,
    /// Swap the arguments of every <2 atom.
    #[arg(long)]
    pub reverse: bool,
}

#[derive(Debug, Args)]
pub struct EfArgs {
    #[arg(long)]
    pub perm: String,
    /// Second permutation; prints whether the two are d-equivalent.
    #[arg(long)]
    pub other: Option<String>,
    #[arg(long, short = 'd')]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = SigArg::Toto)]
    pub sig: SigArg,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("stat").required(true).args(["j1", "k1", "wk", "hgraph", "admissible"])))]
pub struct StatsArgs {
    #[arg(long)]
    pub perm: String,
    #[arg(long)]
    pub j1: bool,
    #[arg(long)]
    pub k1: bool,
    /// W_k(I) and the minimal intervals I_k(I).
    #[arg(long, requires_all = ["i", "k"])]
    pub wk: bool,
    /// Arcs of H(I_k(I); I_k(J)).
    #[arg(long, requires_all = ["i", "j", "k"])]
    pub hgraph: bool,
    /// Whether I is k-admissible.
    #[arg(long, requires_all = ["i", "k"])]
    pub admissible: bool,
    /// Interval a-b.
    #[arg(long = "I", id = "i")]
    pub i: Option<String>,
    /// Interval a-b.
    #[arg(long = "J", id = "j")]
    pub j: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TvMode {
    /// d_TV(Mallows(n, q1), Mallows(n, q2)) by enumeration.
    Mallows,
    /// d_TV(TGeo(m, 1-q), Uniform[m]).
    Tgeo,
    /// The coupling bound Σ_i d_TV(TGeo(n-i+1, 1-q), Uniform).
    Coupling,
    /// Cycle counts (C_1..C_b) against independent Poisson(1/i).
    Cycles,
}

#[derive(Debug, Args)]
pub struct TvArgs {
    #[arg(long, value_enum, default_value_t = TvMode::Mallows)]
    pub mode: TvMode,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_parser = positive_f64, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, value_parser = positive_f64, allow_negative_numbers = true)]
    pub q1: Option<f64>,
    #[arg(long, value_parser = positive_f64, allow_negative_numbers = true)]
    pub q2: Option<f64>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cycles mode: enumerate S_n instead of sampling.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    /// P(Π_n ⊨ φ) per size.
    Sat,
    /// E|Π(1) - 1| against min(2q/(1-q), n-1).
    Displacement,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum, default_value_t = ExperimentKind::Sat)]
    pub kind: ExperimentKind,
    /// Sentence text (sat experiments).
    #[arg(long)]
    pub formula: Option<String>,
    #[arg(long, value_enum)]
    pub sig: Option<SigArg>,
    /// q schedule: a number, fixed:Q, n4:C, n1:C, logstar:+ or logstar:-.
    #[arg(long, default_value = "1")]
    pub schedule: String,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Also report the exact probability (sizes <= 8).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long, value_parser = positive_f64, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, short = 'd', default_value_t = 1)]
    pub depth: usize,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long)]
    pub seed: u64,
    /// Instead of one trace, the occupancy law at n_max over this many streams.
    #[arg(long)]
    pub runs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SentenceName {
    /// ζ(i, a, b): i ∈ W_k([a, b]).
    Zeta,
    /// ξ(x): x = J1.
    J1Witness,
    /// ψ(x): x = K1.
    K1Witness,
    /// ρ: Π(1) > Π(n).
    Rho,
    /// λ(y): Π(y + 1) = 1.
    Lambda,
    /// The parity sentence on interval graphs.
    Oscillating,
    /// ω: the parity sentence relativized to K1.
    Omega,
    Xi1,
    Xi2,
    /// The universal sentence φ.
    Phi,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub name: SentenceName,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("fn").required(true).args(["tower", "wowzer", "logstar", "logstarstar"])))]
pub struct TowersArgs {
    /// T(n).
    #[arg(long)]
    pub tower: Option<usize>,
    /// W(n).
    #[arg(long)]
    pub wowzer: Option<usize>,
    /// log*(x); x decimal or 2^e.
    #[arg(long)]
    pub logstar: Option<String>,
    /// log**(x); x decimal or 2^e.
    #[arg(long)]
    pub logstarstar: Option<String>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let q: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if q.is_finite() && q > 0.0 {
        Ok(q)
    } else {
        Err(format!("q must be positive, got {s}"))
    }
}
