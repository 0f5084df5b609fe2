//! Command-line front end for `ttfkit-core`.
//!
//! [`run`] parses arguments, dispatches to the owning module and renders a
//! [`report::Report`]. Exit codes: 0 success, certified or true; 1 refuted
//! or false (with a witness where one exists); 2 usage or input error;
//! 3 budget exceeded.

pub mod formats;
pub mod report;

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::CliError;
use report::echo;

#[derive(Parser, Debug)]
#[command(
    name = "ttfkit",
    version,
    about = "Torsion-freeness checks for groups, extensions, Witt vectors and Galois ring stages"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak total torsion freeness of finitely presented groups.
    #[command(subcommand)]
    Ttf(TtfCommand),
    /// Abelian invariants, Smith forms and Pontryagin duality.
    #[command(subcommand)]
    Ab(AbCommand),
    /// Virtually abelian extensions.
    #[command(subcommand)]
    Virtab(VirtabCommand),
    /// Approximation systems and their fiber products.
    #[command(subcommand)]
    Approx(ApproxCommand),
    /// Truncated Witt vectors over finite fields.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Finite stages of the Laurent tower.
    #[command(subcommand)]
    Galois(GaloisCommand),
    /// Wreath-product and permutation-lattice embeddings.
    #[command(subcommand)]
    Embed(EmbedCommand),
}

#[derive(Subcommand, Debug)]
pub enum TtfCommand {
    /// Sweep finite-index subgroups for torsion in their abelianizations.
    /// Several inputs are combined by free product.
    Check {
        /// `.grp` files or `builtin:<spec>`, e.g. `builtin:surface(2)`.
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        max_index: usize,
        /// Search-node budget per index.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        all_witnesses: bool,
        /// Examine one subgroup per conjugacy class.
        #[arg(long)]
        conjugacy_reps: bool,
    },
    /// Abelianization of the subgroup generated by the given words.
    Subgroup {
        input: String,
        /// A generator word, e.g. `"x x"`; repeat for each generator.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Maximum number of live cosets.
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AbCommand {
    /// Abelianization of a presentation.
    Invariants { input: String },
    /// Smith normal form of an integer matrix.
    Snf {
        /// Rows separated by `;`, e.g. `"2 4 ; 6 8"`.
        #[arg(long)]
        rows: String,
    },
    /// Pontryagin dual of `Z/m₁ × … × Z/m_k`.
    Dual {
        #[arg(long, num_args = 0.., required = true)]
        moduli: Vec<u64>,
    },
    /// Both sides of the torsion-free / divisible-dual criterion.
    Profinite {
        /// `p:r` for a factor `Z_p^r`; repeatable.
        #[arg(long = "local")]
        local: Vec<String>,
        /// Cyclic orders of the finite part.
        #[arg(long = "finite", num_args = 0..)]
        finite: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum VirtabCommand {
    /// Parse and re-serialize extension data.
    Show { input: PathBuf },
    /// Decide torsion freeness.
    Torsion { input: PathBuf },
    /// Order of one element, written `q | v₁ … v_n`.
    Order {
        input: PathBuf,
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ApproxCommand {
    /// Is the fibre over `g` free of elements of order `p`?
    Check {
        input: PathBuf,
        #[arg(long)]
        p: u64,
        /// Label of an element of the target group.
        #[arg(long)]
        g: String,
    },
    /// Fiber product of two systems.
    Fiber { first: PathBuf, second: PathBuf },
    /// Fold fiber products until every listed pair is torsion free.
    Build {
        #[arg(long, num_args = 1.., required = true)]
        systems: Vec<PathBuf>,
        /// `p:label`, one per prime-order element of the target.
        #[arg(long, num_args = 0..)]
        pairs: Vec<String>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WittArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Degree of the field over its prime field.
    #[arg(long, default_value_t = 1)]
    pub deg: u32,
    /// Truncation level.
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum WittCommand {
    /// Cokernel of `π = F − id` on `W_n(F_q)`.
    Coker(WittArgs),
    /// `F̃ = F̃V` on the cokernels at levels `n` and `n + 1`.
    CheckFtilde {
        #[command(flatten)]
        args: WittArgs,
        /// Seed used only when the ring is too large to sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// `V` of every level-`n` class is `p` times a level-`(n+1)` class.
    CheckDiv {
        #[command(flatten)]
        args: WittArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Universal sum, product and negation polynomials.
    Polys {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct StageArgs {
    #[arg(long)]
    pub q: u64,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Denominator; must divide `q − 1`.
    #[arg(long)]
    pub s: u64,
}

#[derive(Subcommand, Debug)]
pub enum GaloisCommand {
    /// Trivial inertia at every rational point with unit coordinates.
    Check {
        #[command(flatten)]
        stage: StageArgs,
        /// `.sub` file of generators.
        #[arg(long)]
        subgroup: PathBuf,
    },
    /// Decomposition and inertia groups at one point.
    Inertia {
        #[command(flatten)]
        stage: StageArgs,
        #[arg(long)]
        subgroup: PathBuf,
        /// Field elements, one per variable.
        #[arg(long, num_args = 1.., required = true)]
        point: Vec<String>,
    },
    /// Fixed ring and free basis over the integral-exponent ring.
    Basis {
        #[command(flatten)]
        stage: StageArgs,
        /// Exponent box checked on each side of zero.
        #[arg(long)]
        bound: Option<i64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Left,
    RightInverse,
}

#[derive(Subcommand, Debug)]
pub enum EmbedCommand {
    /// Kaloujnine–Krasner embedding into `Q ≀ Zⁿ`.
    Kk {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Left)]
        convention: Convention,
    },
    /// Embedding into a permutation lattice `Σ_N ⋉ Z^N`.
    Sigma { input: PathBuf },
}

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let argv = std::iter::once("ttfkit".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(mut report) => {
            report.command = echo(args);
            let _ = write!(out, "{report}");
            report.status.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}
