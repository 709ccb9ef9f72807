//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "m0n",
    version,
    about = "Strata, Keel rings, arrangements and the x -> 1 - x involution on M_{0,n}"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Shorthand for `--format dot`.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Lift the default size guards (n <= 10, pairs <= 4).
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn output_format(&self) -> Format {
        if self.dot {
            Format::Dot
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Braid,
    M0n,
    M0nHalf,
    Ny,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Once,
    PerFactor,
}

#[derive(Debug, Args)]
pub struct Marked {
    /// Number of marked points.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boundary strata poset, counts by codimension and Betti numbers.
    Strata(Marked),
    /// Zero-dimensional strata (trivalent trees).
    Maxdeg(Marked),
    /// Stable trees of a given grade.
    Trees {
        #[command(flatten)]
        marked: Marked,
        #[arg(long)]
        grade: Option<usize>,
    },
    /// Operations on a single stable tree given as JSON (or `@path`).
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    /// Graded pieces of the Keel ring.
    Keel {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        n: u32,
        #[arg(long)]
        degree: Option<usize>,
        /// List a monomial basis of the requested degree.
        #[arg(long, requires = "degree")]
        basis: bool,
        /// List the four-point relations and crossing pairs, and reduce each.
        #[arg(long)]
        relations: bool,
        /// Whether two divisors cross, each given as one side, e.g. `1,2 1,3`.
        #[arg(long, num_args = 2, value_names = ["SIDE", "SIDE"])]
        crossing: Option<Vec<String>>,
        /// Normal form of `c:side|side;...`, e.g. `1:1,2|1,3;-1:1,4|1,5`.
        #[arg(long, allow_hyphen_values = true)]
        reduce: Option<String>,
    },
    /// Intersection poset, characteristic and Poincaré polynomials.
    Arrangement {
        #[arg(long, value_enum)]
        builder: Builder,
        #[arg(long)]
        param: usize,
        /// Compare χ(p) with a direct count of the complement over F_p.
        #[arg(long)]
        verify_fp: Option<u64>,
        /// Check χ(A) = χ(A - H) - χ(A^H) for every hyperplane.
        #[arg(long)]
        deletion_restriction: bool,
        /// Flats meeting the fixed locus of x -> 1 - x (ny builder only).
        #[arg(long)]
        fixed_locus: bool,
    },
    /// Graded dimensions of the gravity pieces.
    Grav {
        #[command(flatten)]
        marked: Marked,
        /// The NY variant: tensor square of the complement of the half mirrors.
        #[arg(long)]
        ny: bool,
        #[arg(long, value_enum, default_value_t = Convention::Once, requires = "ny")]
        convention: Convention,
        /// Compare three computations for every one-edge stratum.
        #[arg(long)]
        residue: bool,
    },
    /// The involution on paired labels and on stable trees.
    Involution {
        #[arg(long)]
        pairs: u32,
        #[arg(long, default_value_t = 0)]
        grade: usize,
        #[arg(long)]
        orbits: bool,
        /// Check the involution laws on labels, points and trees.
        #[arg(long)]
        monad: bool,
        /// Points to send through x -> 1 - x (`inf` allowed).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rho: Vec<String>,
    },
    /// Compose paired label sets at a slot.
    Compose {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        slot: u32,
    },
    /// Stratum of a configuration `z_1..z_p` in the NY base space.
    Classify {
        /// Coordinates, e.g. `1/3,1/2,inf`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required_unless_present = "table"
        )]
        z: Vec<String>,
        #[arg(long)]
        epsilon: Option<String>,
        /// Classify the witness of every row of the strata table.
        #[arg(long)]
        table: bool,
    },
    /// Betti numbers from point counts against Keel ring dimensions.
    CrossCheck {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreeOp {
    Canonical {
        tree: String,
    },
    Contract {
        tree: String,
        #[arg(long)]
        edge: usize,
    },
    /// Split a vertex; `--flags` lists the side that moves, leaves by label
    /// and half-edges as `h<k>`.
    Split {
        tree: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_delimiter = ',')]
        flags: Vec<String>,
    },
    Graft {
        tree: String,
        #[arg(long)]
        leaf: u32,
        #[arg(long)]
        guest: String,
        #[arg(long)]
        root: u32,
    },
}
