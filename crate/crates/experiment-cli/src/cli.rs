//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "experiment-cli", version, about = "Reproducible experiments on positive paths and their length functionals")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every experiment. Unset values fall back to per-experiment defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Half dimension of the symplectic space.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Time horizon.
    #[arg(long = "T", global = true)]
    pub t: Option<f64>,
    /// Integration steps.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Spatial resolution (circle grid points, or cells per radius on the disk).
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance of the experiment's main check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write JSON Lines here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print JSON Lines on stdout (otherwise a short text summary is printed).
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Morse co-index of t -> exp(tX): closed form vs finite elements.
    Coindex {
        /// Rotation rates theta_j (comma separated); a single value is repeated n times.
        #[arg(long, default_value = "1")]
        theta: String,
        /// Element counts (comma separated).
        #[arg(long, default_value = "64,128")]
        elements: String,
    },
    /// Conjugate instants of a random X in the positive cone: numeric vs closed-form multiplicities.
    Conjugate {
        /// Rotation rates; random with separation >= 0.2 if omitted.
        #[arg(long)]
        theta: Option<String>,
    },
    /// Length of a random timelike path: generator quadrature vs integrated path.
    Length {},
    /// Maslov lift of the standard loop, or monotonicity checks along random paths.
    Maslov {
        /// Check random causal and timelike paths instead of the standard loop.
        #[arg(long)]
        random: bool,
    },
    /// Length bound in the positively elliptic region.
    Distbound {
        /// Use an equal-angle geodesic (equality case) instead of a random path.
        #[arg(long)]
        geodesic: bool,
        /// Rotation rate of the geodesic.
        #[arg(long, default_value_t = 0.9)]
        theta: f64,
    },
    /// Long timelike path to a hyperbolic lift in AdS3 coordinates.
    Longpath {
        /// Required minimal length.
        #[arg(long, default_value_t = 10.0)]
        length: f64,
        /// Target is the lift of diag(lambda, 1/lambda) with tau = target_tau.
        #[arg(long, default_value_t = 3.0)]
        lambda: f64,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        target_tau: f64,
    },
    /// AdS3 chart and inverse round trip.
    Ads3 {
        #[arg(long, default_value_t = 0.4)]
        phi: f64,
        #[arg(long, default_value_t = 1.1)]
        theta: f64,
        #[arg(long, default_value_t = 5.0)]
        tau: f64,
    },
    /// Time functions along random positive paths.
    Timefn {
        /// Use positive circle paths and the Diff(S^1) time function.
        #[arg(long)]
        circle: bool,
        /// Spatial degree of the random circle path.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Flow of a circle Hamiltonian H(t, x).
    CircleFlow {
        #[arg(long, default_value = "2+cos")]
        h: String,
    },
    /// Translation number of the time-T flow of an autonomous H vs T V(H).
    Rotnumb {
        /// Autonomous Hamiltonian; a random positive trigonometric polynomial if omitted.
        #[arg(long)]
        h: Option<String>,
        /// Degree of the random polynomial.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Iterations of the weighted Birkhoff average.
        #[arg(long, default_value_t = 4096)]
        iterations: usize,
    },
    /// Nazarov inequality int|p'| <= 4k int p for a nonnegative trigonometric polynomial.
    Nazarov {
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Use 1 + cos(2 pi k x) instead of a random Fejer-Riesz square.
        #[arg(long)]
        extremal: bool,
    },
    /// Length bound for random P_k paths with small endpoint displacement.
    Quantum {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        /// Target displacement as a fraction of s / (4k); above 1 the hypothesis fails.
        #[arg(long, default_value_t = 0.9)]
        fraction: f64,
    },
    /// j_k embedding of a positive quadratic form and its V-length scaling.
    JkEmbed {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Entries of S = [[a, b], [b, c]]; random when omitted.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
    },
    /// Long positive circle path with endpoint close to the identity.
    CircleLong {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 100.0)]
        length: f64,
    },
    /// Second variation of V-length at a constant circle path.
    Secondvar {
        /// Spatial frequencies.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Temporal sine modes.
        #[arg(long, default_value_t = 4)]
        l: usize,
    },
    /// The functional G-cal of H = |z|^2 / 2 + a (x^4 + y^4) on the unit disk.
    MaG {
        #[arg(long, default_value_t = 0.05)]
        a: f64,
    },
    /// Length vs boundary functional for the quartic path (quadratic when a = 0).
    MaVarthm {
        #[arg(long, default_value_t = 0.0)]
        a: f64,
    },
    /// Average pointwise length of linearized flows vs G-cal length.
    Fiberwise {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Coefficient of s^2 in the radial profile f(s) = theta s + twist s^2, s = |z|^2 / 2.
        #[arg(long, default_value_t = 0.8)]
        twist: f64,
        #[arg(long, default_value_t = 1.2)]
        theta: f64,
        /// Use seeded uniform samples instead of the Halton sequence.
        #[arg(long)]
        random: bool,
    },
    /// Averaged Maslov quasimorphism of the linearized flow and the length bound.
    Ruelle {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0.3)]
        twist: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long)]
        random: bool,
    },
    /// Cartesian sweep of an experiment over parameter lists, with a pass-rate summary.
    Sweep {
        /// Experiment to run.
        experiment: String,
        /// Parameter list such as `k=1,2,3` (repeatable; flags are given without dashes).
        #[arg(long = "vary")]
        vary: Vec<String>,
        /// Independent seeded runs per grid cell.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Extra flags passed to every run.
        #[arg(last = true, allow_hyphen_values = true)]
        rest: Vec<String>,
    },
    /// Convert a JSON Lines result file into a CSV table.
    Plot {
        /// Result file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: PlotKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Columns t, phi, theta, tau, min_eig_s.
    Longpath,
    /// Columns elements, coindex.
    Coindex,
    /// Columns coeff, gap.
    Varthm,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Coindex { .. } => "coindex",
            Command::Conjugate { .. } => "conjugate",
            Command::Length {} => "length",
            Command::Maslov { .. } => "maslov",
            Command::Distbound { .. } => "distbound",
            Command::Longpath { .. } => "longpath",
            Command::Ads3 { .. } => "ads3",
            Command::Timefn { .. } => "timefn",
            Command::CircleFlow { .. } => "circle-flow",
            Command::Rotnumb { .. } => "rotnumb",
            Command::Nazarov { .. } => "nazarov",
            Command::Quantum { .. } => "quantum",
            Command::JkEmbed { .. } => "jk-embed",
            Command::CircleLong { .. } => "circle-long",
            Command::Secondvar { .. } => "secondvar",
            Command::MaG { .. } => "ma-g",
            Command::MaVarthm { .. } => "ma-varthm",
            Command::Fiberwise { .. } => "fiberwise",
            Command::Ruelle { .. } => "ruelle",
            Command::Sweep { .. } => "sweep",
            Command::Plot { .. } => "plot",
        }
    }
}
