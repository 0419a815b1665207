use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "flagrank", version, about = "Generic transitivity of diagonal actions on multiple flag varieties")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Nilradical,
    Word,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Base seed; the FLAGRANK_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random points tried before a rank deficit is reported.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub retries: u64,
    /// Coefficients of random group words are drawn from [-height, height].
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
    pub height: i64,
    /// Pairs of factors in a random word (word sampler only); default 2 * rank.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub word_length: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = SamplerArg::Nilradical)]
    pub sampler: SamplerArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest rank accepted by `table`.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rank: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide generic transitivity of G on (G/P_I)^n.
    Classify(ClassifyArgs),
    /// Recompute a classification table and compare with the reference data.
    Table(TableArgs),
    /// Irreducible Levi summands of the nilradical.
    Decompose(DecomposeArgs),
    /// Exact checks of the rational Levi invariants.
    VerifyInvariants(InvariantArgs),
    /// Constructive certificates: cross ratios and normal forms.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Cartan family, A..G.
    #[arg(long = "type")]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
    /// Removed nodes as a comma list, e.g. 1,6.
    #[arg(long, default_value = "")]
    pub parabolic: String,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Maximal parabolics, `n >= 3`.
    #[value(alias = "theorem1")]
    Maximal,
    /// Non-maximal parabolics at `n = 3`.
    #[value(name = "non-maximal", alias = "theorem2")]
    NonMaximal,
    /// Sphericity of `G/P x G/P`, i.e. finitely many orbits on `(G/P)^3`.
    #[value(alias = "corollary")]
    Sphericity,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, default_value_t = 1)]
    pub min_rank: usize,
    /// Defaults to --max-rank.
    #[arg(long = "to-rank")]
    pub to_rank: Option<usize>,
    /// Restrict to some families, e.g. --family D --family E.
    #[arg(long)]
    pub family: Vec<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    /// B, C, D-odd (P_{l-1,l}) or D-triple (P_{1,l-1,l}).
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertKind {
    #[value(name = "so6-cross-ratio")]
    So6CrossRatio,
    #[value(name = "so2l-p1l")]
    So2lP1l,
    #[value(name = "so2l-pl-1l")]
    So2lPlm1l,
    Quadruple,
    #[value(name = "transversal-basis")]
    TransversalBasis,
    #[value(name = "levi-canonical")]
    LeviCanonical,
    #[value(name = "d-odd-triple")]
    DOddTriple,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub kind: CertKind,
    /// Parameter of the free line T_1; repeat for several configurations.
    #[arg(long)]
    pub t1: Vec<String>,
    /// Full parameter set as a comma list (t1,x2,y2,x3,y3 or t1..t4); repeatable.
    #[arg(long)]
    pub params: Vec<String>,
    /// Rank of the classical group.
    #[arg(long)]
    pub l: Option<usize>,
    /// Family for the quadruple kind.
    #[arg(long = "type")]
    pub family: Option<String>,
    /// Nodes for the quadruple kind.
    #[arg(long)]
    pub parabolic: Option<String>,
    /// Levi case for levi-canonical: D-odd (P_{l-1,l}) or D1,l.
    #[arg(long)]
    pub case: Option<String>,
    /// Group elements (cross ratios) or random inputs (normal forms).
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}
