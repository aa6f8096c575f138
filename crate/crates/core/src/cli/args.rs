use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser, Serialize)]
#[command(name = "qwalk", version, about = "Quantum walks for free quantum fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Unitarity, kernel and isotropy checks for a walk or a kernel file.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// ω(k) and ∇ω over the momentum grid or a Cartesian slice.
    #[command(args_override_self = true)]
    Dispersion(DispersionArgs),
    /// Wavepacket trajectory with a reference evolution alongside.
    #[command(args_override_self = true)]
    Evolve(EvolveArgs),
    /// Final-time walk-versus-reference metrics.
    #[command(args_override_self = true)]
    Compare(CompareArgs),
    #[command(subcommand)]
    Lorentz(LorentzCmd),
    #[command(subcommand)]
    Maxwell(MaxwellCmd),
    /// Commutator of pair operators on an explicit Fock space.
    #[command(args_override_self = true)]
    Fock(FockArgs),
    #[command(subcommand)]
    Cayley(CayleyCmd),
    /// Planck-scale standards from one anchor.
    #[command(args_override_self = true)]
    Units(UnitsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct WalkArgs {
    /// weyl1d, weyl2d±, weyl3d±, dirac1d, dirac3d±; trailing T selects the transpose.
    #[arg(long, default_value = "weyl3d+")]
    pub walk: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub walk: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mass: f64,
    /// Kernel JSON file instead of a named walk.
    #[arg(long, conflicts_with = "walk")]
    pub kernel: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    /// Also write the checked kernel as JSON.
    #[arg(long)]
    pub emit_kernel: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    #[arg(long, default_value_t = 32)]
    pub grid: usize,
    /// Cartesian square slice at this k_z (3d) instead of the lattice grid.
    #[arg(long, allow_hyphen_values = true)]
    pub slice_z: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceKind {
    None,
    Schrodinger,
    Continuum,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionKind {
    None,
    Center,
    PerFiber,
}

#[derive(Debug, Args, Serialize)]
pub struct PacketArgs {
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Central wave-vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.1")]
    pub k0: Vec<f64>,
    #[arg(long, default_value_t = 20.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 200)]
    pub steps: u64,
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Center in lattice coordinates; defaults to the middle of the grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
    /// Spinor as re,im pairs; defaults to the first basis vector.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub spinor: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "per-fiber")]
    pub projection: ProjectionKind,
    /// +1 follows the e^{−iω} band, −1 the e^{+iω} band.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub band: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub packet: PacketArgs,
    #[arg(long, value_enum, default_value = "schrodinger")]
    pub compare: ReferenceKind,
    /// Steps between trajectory rows; defaults to steps/20.
    #[arg(long)]
    pub stride: Option<u64>,
    /// Number of probability-profile snapshots.
    #[arg(long, default_value_t = 4)]
    pub snapshots: usize,
    /// Exit 1 when the final L1 distance exceeds this.
    #[arg(long)]
    pub max_l1: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Trajectory table.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comparison JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Probability profiles along the first axis at the snapshot steps.
    #[arg(long)]
    pub profiles: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub packet: PacketArgs,
    #[arg(long, value_enum, default_value = "schrodinger")]
    pub reference: ReferenceKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FKind {
    Default,
    Unit,
    Secant,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LorentzCmd {
    /// Orbit of k under rotations about an axis or boosts along a direction.
    #[command(args_override_self = true)]
    Orbit(OrbitArgs),
    /// One nonlinear boost.
    #[command(args_override_self = true)]
    Boost(BoostArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    #[arg(long, default_value = "weyl3d+")]
    pub walk: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.3,0,0")]
    pub k: Vec<f64>,
    /// Rotation axis: x, y, z or a comma-separated vector.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "boost")]
    pub rotation: Option<String>,
    /// Boost direction, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub boost: Option<Vec<f64>>,
    #[arg(long, default_value_t = 4.0)]
    pub eta_max: f64,
    #[arg(long, default_value_t = 360)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "default")]
    pub f: FKind,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoostArgs {
    #[arg(long, default_value = "weyl3d+")]
    pub walk: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value = "default")]
    pub f: FKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaxwellCmd {
    /// Photon dispersion, helicity vector, group velocity and frame along a ray.
    #[command(args_override_self = true)]
    Dispersion(RayArgs),
    /// Speed of light c(κ) along a ray, log-spaced.
    #[command(args_override_self = true)]
    Speed(SpeedArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct RayArgs {
    #[arg(long, default_value = "weyl3d+")]
    pub walk: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1,1")]
    pub direction: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub kmax: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SpeedArgs {
    #[arg(long, default_value = "weyl3d+")]
    pub walk: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1,1")]
    pub direction: Vec<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub kmin: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub kmax: f64,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON with the fitted slope of c − 1.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FockArgs {
    /// Modes per species (two spin states per momentum).
    #[arg(long, default_value_t = 8)]
    pub modes: usize,
    #[arg(long, default_value_t = 4)]
    pub nk: usize,
    /// Occupied modes as species:index, e.g. phi:0,psi:3.
    #[arg(long, value_delimiter = ',')]
    pub fill: Vec<String>,
    /// Also verify {a_i, a_j†} = δ_ij on the full space.
    #[arg(long)]
    pub anticommutators: bool,
    /// Exit 1 when the maximal deviation exceeds this.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CayleyCmd {
    /// Ball of the Cayley graph.
    #[command(args_override_self = true)]
    Ball(BallArgs),
    /// Coset reduction of a walk on a virtually Abelian group.
    #[command(args_override_self = true)]
    Reduce(ReduceArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BallArgs {
    #[arg(long)]
    pub presentation: String,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    #[arg(long, default_value_t = crate::cayley::DEFAULT_RADIUS_CAP)]
    pub radius_cap: usize,
    /// Run the homogeneity checks; exit 1 if any fails.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ReduceArgs {
    /// index2, index4, z2 or a JSON file {presentation, subgroup, representatives}.
    #[arg(long, default_value = "index4")]
    pub coset: String,
    /// Scalar kernel entries word=re+imi, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "a=1")]
    pub entries: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct UnitsArgs {
    /// length=…, time=… or mass=… in SI units.
    #[arg(long, default_value = "length=1.616255e-35")]
    pub anchor: String,
    /// k,c pair for the mass estimator (k in units of 1/a, c normalized).
    #[arg(long, value_delimiter = ',')]
    pub estimate: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
