use clap::{Args, Parser, Subcommand, ValueEnum};

/// Finite groupoids, spans, Burnside rings and global Mackey functors at desk scale.
///
/// Documents are given inline as JSON, as a path to a JSON file, or (for groups) as a bare preset
/// name such as `symmetric:3`. Group elements on the command line are cycle strings like "(1 2)"
/// resolved inside the named group, or plain element indices. The group-order cap defaults to 48
/// and can be changed with BURNSIDE_MAX_ORDER.
#[derive(Debug, Parser)]
#[command(name = "burnside", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. TSV is a projection of the main table of each result.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Size bound. For `hom` it caps |G_i|·|H_j|/|L| per transitive piece (unbounded when absent);
    /// for `verify-main` it is the largest object of the free category (default 6).
    #[arg(long, global = true)]
    pub bound: Option<usize>,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of isomorphism classes of spans from the source to the target groupoid.
    Hom {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Canonical class of a composite of spans, listed first-applied first.
    Compose {
        /// A JSON array of span documents.
        #[arg(long)]
        spans: String,
    },
    /// Canonical class of one span.
    SpanCanon {
        #[arg(long)]
        span: String,
    },
    /// Burnside ring of a group: basis, table of marks and structure constants.
    BurnsideRing {
        group: String,
    },
    /// Double cosets K\G/H for subgroups given by generators.
    DoubleCoset {
        #[arg(long)]
        group: String,
        /// Generators of K (repeatable).
        #[arg(long = "left", num_args = 1..)]
        left: Vec<String>,
        /// Generators of H (repeatable).
        #[arg(long = "right", num_args = 1..)]
        right: Vec<String>,
    },
    /// Indecomposable G-objects of a permutative category.
    Swan {
        #[arg(long)]
        category: String,
        #[arg(long)]
        group: String,
    },
    /// Multiplicative induction of an H-object to a G-object.
    Norm(NormArgs),
    /// Tabulates a Mackey functor (or reads a tabulation) and checks the Mackey axioms.
    MackeyCheck(MackeyArgs),
    /// Compares the Swan functor of a free category with the representable span functor.
    VerifyMain {
        /// Coefficient group of the free category.
        #[arg(long)]
        coefficients: String,
        /// Groups to evaluate at (repeatable).
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long)]
    pub category: String,
    #[arg(long)]
    pub group: String,
    /// Generators of the subgroup H (repeatable; none for the trivial subgroup).
    #[arg(long = "subgroup")]
    pub subgroup: Vec<String>,
    /// G-object document for H. The action lists one morphism per element of H, in increasing
    /// order of element index in G.
    #[arg(long)]
    pub object: String,
    /// Coset representatives, first one the identity. Defaults to the least element of each coset.
    #[arg(long = "rep")]
    pub reps: Vec<String>,
}

#[derive(Debug, Args)]
pub struct MackeyArgs {
    /// A tabulated Mackey functor document to check instead of tabulating one.
    #[arg(long, conflicts_with_all = ["functor", "groups"])]
    pub data: Option<String>,
    /// `burnside` or `swan`.
    #[arg(long, default_value = "burnside")]
    pub functor: String,
    /// Category for the Swan functor.
    #[arg(long)]
    pub category: Option<String>,
    /// Groups generating the family (repeatable); closed under subgroups automatically.
    #[arg(long = "group")]
    pub groups: Vec<String>,
    /// Random span pairs for the functoriality check.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Largest group order swept by the double coset check.
    #[arg(long, default_value_t = 24)]
    pub max_order: usize,
    /// Also write the tabulation as a document to this path.
    #[arg(long)]
    pub emit: Option<String>,
}
