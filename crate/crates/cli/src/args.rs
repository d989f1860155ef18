use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sphrig", version, about = "Sphere-complex rigidity checks and reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here (relative paths resolve under $SPHRIG_OUT_DIR when set).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Also write a DOT drawing of the main object here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build complexes and compute their invariants.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Pants decompositions of the s-holed sphere.
    Pants {
        #[command(subcommand)]
        cmd: PantsCmd,
    },
    /// Dual multigraphs of pants decompositions.
    Dual {
        #[command(subcommand)]
        cmd: DualCmd,
    },
    /// Edge isomorphisms of multigraphs.
    Whitney {
        #[command(subcommand)]
        cmd: WhitneyCmd,
    },
    /// Automorphisms, rigidity certificates and related scans.
    Rigidity {
        #[command(subcommand)]
        cmd: RigidityCmd,
    },
    /// Check that no injective simplicial map source -> target exists.
    Nonembed(NonembedArgs),
    /// Label-level censuses.
    Census {
        #[command(subcommand)]
        cmd: CensusCmd,
    },
    /// List the reference complexes, or emit one.
    Catalog(CatalogArgs),
}

/// Where a complex comes from.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Sphere complex of the s-holed 3-sphere.
    #[arg(long, value_name = "S")]
    pub genus_zero: Option<usize>,
    /// Caterpillar window z:-m ..= z:m.
    #[arg(long, value_name = "M")]
    pub caterpillar: Option<usize>,
    /// A catalog complex by name.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// A complex JSON file.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ComplexCmd {
    Build {
        #[command(flatten)]
        source: Source,
        /// Write the complex JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    Stats {
        #[command(flatten)]
        source: Source,
    },
    Homology {
        #[command(flatten)]
        source: Source,
        /// Highest degree reported (defaults to the dimension).
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PantsCmd {
    Enumerate {
        #[arg(long)]
        s: usize,
    },
    FlipGraph {
        #[arg(long)]
        s: usize,
        /// Fail unless the flip graph is connected.
        #[arg(long)]
        check_connected: bool,
    },
    Dual {
        #[arg(long)]
        s: usize,
        /// Sides of the spheres, e.g. "1,2;1,2,3;5,6".
        #[arg(long)]
        spheres: String,
        /// Write the dual JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DualCmd {
    Classify {
        /// Dual JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Bond indices or labels, comma separated (labels use ';').
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WhitneyCmd {
    Check {
        /// Edge-map JSON file.
        #[arg(long, required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Instead, run this many seeded scramble roundtrips.
        #[arg(long, conflicts_with = "input")]
        random: Option<usize>,
    },
    Lift {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Plain,
    OverMaximalMaps,
}

#[derive(Debug, Subcommand)]
pub enum RigidityCmd {
    /// Automorphism group of a complex.
    Aut {
        #[command(flatten)]
        source: Source,
        /// For genus-zero complexes, compare with the boundary-label action.
        #[arg(long)]
        label_action: bool,
    },
    /// Certify that locally injective maps extend uniquely.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Vertex ids of the subcomplex, ';' separated (default: the whole complex).
        #[arg(long)]
        vertices: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
    },
    /// Split spheres of a pants decomposition at a member, and split pairs.
    Split {
        #[arg(long)]
        s: usize,
        /// Sides of the pants decomposition, e.g. "1,2;1,2,3;5,6".
        #[arg(long)]
        pants: String,
        /// Side of the member to split at.
        #[arg(long)]
        at: String,
        /// Also list split pairs relative to the whole complex.
        #[arg(long)]
        pairs: bool,
    },
    /// The subcomplex spanned by a pants decomposition and its flip partners.
    Xsigma {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        pants: String,
    },
    /// A non-extendable locally injective map of a caterpillar subcomplex.
    Witness {
        /// Window half-width.
        #[arg(long)]
        window: usize,
        /// Vertex ids, ';' or ',' separated, e.g. "z:0,w:0".
        #[arg(long)]
        vertices: String,
    },
    /// Equivalence classes on the link of a sphere system.
    Classes {
        #[arg(long)]
        s: usize,
        /// Sides of the system (empty for the empty system).
        #[arg(long, default_value = "")]
        spheres: String,
    },
    /// Flip-related pants decompositions inside a vertex set.
    Detect {
        #[arg(long)]
        s: usize,
        /// Sides of the vertices of X.
        #[arg(long)]
        within: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug, Args)]
pub struct NonembedArgs {
    /// Catalog name, `genus-zero:S`, `caterpillar:M`, or a complex JSON file.
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub target: String,
    /// Skip the size and acyclicity shortcuts.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Subcommand)]
pub enum CensusCmd {
    GoodPairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Which cut pair A_i to decorate.
        #[arg(long, default_value_t = 1)]
        pair: usize,
        /// Include the pairs themselves.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub name: Option<String>,
    /// Write the complex JSON here.
    #[arg(long)]
    pub save: Option<PathBuf>,
}
