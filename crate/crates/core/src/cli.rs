//! Command-line front end: one subcommand per pipeline stage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytics::{dense_oracle_check, sweep_syk_geometries, weight_stats, write_csv, SweepConfig};
use crate::basis::{basis_verify, BasisChoice, BasisKind};
use crate::encoder::{build_encoding, Encoding};
use crate::error::{Error, Result};
use crate::fermion::{
    build_lattice_model, build_syk2, interaction_graph_from_hamiltonian, transform_hamiltonian, FermionOperator,
    LatticeModel, RoutingPolicy, SykCouplings,
};
use crate::graph::{
    gen_blocked_square, gen_heavy_hex, gen_lattice, gen_syk_geometry, qubit_report, Boundary, GeometryParams,
    LatticeKind, SykGeometry, SystemGraph,
};
use crate::pauli::PauliSum;

/// Default qubit cap for dense verification.
pub const DENSE_MAX_QUBITS: usize = 12;
/// Default qubit cap for symbolic work.
pub const SYMBOLIC_MAX_QUBITS: usize = 65536;

#[derive(Parser, Debug)]
#[command(name = "fermicode", version, about = "Local fermion-to-qubit encodings on arbitrary graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a system graph or a fermionic Hamiltonian.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Build the encoding of a graph and write it as JSON.
    Encode(EncodeArgs),
    /// Compile a fermionic Hamiltonian into a Pauli sum.
    Transform(TransformArgs),
    /// Sweep the quadratic SYK model over geometries and sizes into CSV.
    Bench(BenchArgs),
    /// Check an encoding symbolically, and densely with `--dense`.
    Verify(VerifyArgs),
    /// Print resource statistics of a Pauli sum, graph or encoding.
    Stats(StatsArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Regular lattice.
    Lattice {
        #[arg(long, value_enum)]
        lattice: LatticeArg,
        /// Comma-separated sizes: `n` for the chain, `side` or `rows,cols` otherwise.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value = "open")]
        boundary: BoundaryArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometry for all-to-all coupled modes.
    Syk {
        #[arg(long)]
        geometry: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        layers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Square lattice grouped into blocks.
    Blocked {
        #[arg(long)]
        side: usize,
        /// Block shape as `rows,cols`.
        #[arg(long, value_delimiter = ',', num_args = 2, required = true)]
        block: Vec<usize>,
        #[arg(long, value_enum, default_value = "open")]
        boundary: BoundaryArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 49-mode system graph laid out on the 65-qubit heavy-hexagon device.
    HeavyHex {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interaction graph read off a Hamiltonian.
    Interaction {
        #[arg(long)]
        hamiltonian: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hopping model on a lattice.
    Model {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        t_diag: f64,
        #[arg(long, default_value_t = 0.0)]
        u: f64,
        #[arg(long, value_enum, default_value = "open")]
        boundary: BoundaryArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quadratic SYK Hamiltonian with Gaussian couplings.
    SykModel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LatticeArg {
    Linear,
    Square,
    Triangular,
    SquareDiagonal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundaryArg {
    Open,
    Periodic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModelArg {
    Chain,
    SquareNn,
    SquareNnDiag,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BasisArg {
    Jw,
    Fenwick,
    Ternary,
}

impl From<LatticeArg> for LatticeKind {
    fn from(a: LatticeArg) -> Self {
        match a {
            LatticeArg::Linear => LatticeKind::Linear,
            LatticeArg::Square => LatticeKind::Square,
            LatticeArg::Triangular => LatticeKind::Triangular,
            LatticeArg::SquareDiagonal => LatticeKind::SquareDiagonal,
        }
    }
}

impl From<BoundaryArg> for Boundary {
    fn from(a: BoundaryArg) -> Self {
        match a {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Periodic => Boundary::Periodic,
        }
    }
}

impl From<ModelArg> for LatticeModel {
    fn from(a: ModelArg) -> Self {
        match a {
            ModelArg::Chain => LatticeModel::Chain,
            ModelArg::SquareNn => LatticeModel::SquareNn,
            ModelArg::SquareNnDiag => LatticeModel::SquareNnDiag,
        }
    }
}

impl From<BasisArg> for BasisKind {
    fn from(a: BasisArg) -> Self {
        match a {
            BasisArg::Jw => BasisKind::Jw,
            BasisArg::Fenwick => BasisKind::Fenwick,
            BasisArg::Ternary => BasisKind::Ternary,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BasisOpts {
    #[arg(long, value_enum, default_value = "jw")]
    pub basis: BasisArg,
    /// JSON map from vertex id to explicit local Majoranas, e.g. `{"0": ["Y1", "X1"]}`.
    #[arg(long)]
    pub basis_overrides: Option<PathBuf>,
}

impl BasisOpts {
    fn choice(&self) -> Result<BasisChoice> {
        let choice = BasisChoice::uniform(self.basis.into());
        match &self.basis_overrides {
            Some(p) => choice.parse_overrides(&read(p)?),
            None => Ok(choice),
        }
    }
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub basis: BasisOpts,
    #[arg(long, default_value_t = SYMBOLIC_MAX_QUBITS)]
    pub max_qubits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// System graph; defaults to the interaction graph of the Hamiltonian.
    #[arg(long, conflicts_with = "encoding")]
    pub graph: Option<PathBuf>,
    /// Previously written encoding file.
    #[arg(long)]
    pub encoding: Option<PathBuf>,
    #[command(flatten)]
    pub basis: BasisOpts,
    /// `auto` or `explicit:<path-file>`.
    #[arg(long, default_value = "auto")]
    pub route: String,
    #[arg(long, default_value_t = SYMBOLIC_MAX_QUBITS)]
    pub max_qubits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated geometry names.
    #[arg(long, value_delimiter = ',', required = true)]
    pub geometries: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "fenwick")]
    pub basis: BasisArg,
    #[arg(long, default_value_t = SYMBOLIC_MAX_QUBITS)]
    pub max_qubits: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Record wall times instead of zeros.
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub basis: BasisOpts,
    /// Compare spectra against exact diagonalization.
    #[arg(long)]
    pub dense: bool,
    /// Hamiltonian for the dense check; defaults to a quadratic SYK model.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub max_qubits: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct StatsArgs {
    #[arg(long)]
    pub pauli: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub encoding: Option<PathBuf>,
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn check_cap(q: usize, cap: usize) -> Result<()> {
    if cap == 0 {
        return Err(Error::Parse("--max-qubits must be at least 1".into()));
    }
    if q > cap {
        return Err(Error::Resource(format!("{q} qubits exceed --max-qubits {cap}")));
    }
    Ok(())
}

fn load_graph(p: &Path) -> Result<SystemGraph> {
    SystemGraph::from_json(&read(p)?)
}

fn encode(g: &SystemGraph, basis: &BasisOpts, cap: usize) -> Result<Encoding> {
    check_cap(crate::graph::qubit_count(g), cap)?;
    build_encoding(g, &basis.choice()?)
}

fn run_gen(what: GenCommand, stdout: &mut dyn Write) -> Result<()> {
    let (text, out) = match what {
        GenCommand::Lattice {
            lattice,
            dims,
            boundary,
            out,
        } => (gen_lattice(lattice.into(), &dims, boundary.into())?.to_json_pretty(), out),
        GenCommand::Syk {
            geometry,
            n,
            layers,
            out,
        } => {
            let g = gen_syk_geometry(SykGeometry::from_name(&geometry)?, n, GeometryParams { layers })?;
            (g.to_json_pretty(), out)
        }
        GenCommand::Blocked {
            side,
            block,
            boundary,
            out,
        } => (gen_blocked_square(side, block[0], block[1], boundary.into())?.to_json_pretty(), out),
        GenCommand::HeavyHex { out } => (gen_heavy_hex()?.0.to_json_pretty(), out),
        GenCommand::Interaction { hamiltonian, out } => {
            let f = FermionOperator::from_text(&read(&hamiltonian)?, None)?;
            let g = interaction_graph_from_hamiltonian(&f)?.to_system_graph()?;
            (g.to_json_pretty(), out)
        }
        GenCommand::Model {
            model,
            dims,
            t,
            t_diag,
            u,
            boundary,
            out,
        } => (
            build_lattice_model(model.into(), &dims, t, t_diag, u, boundary.into())?.to_text(),
            out,
        ),
        GenCommand::SykModel { n, seed, out } => (build_syk2(&SykCouplings::gaussian(n, seed))?.to_text(), out),
    };
    emit(&out, &with_newline(text), stdout)
}

fn run_transform(a: TransformArgs, stdout: &mut dyn Write) -> Result<()> {
    let f = FermionOperator::from_text(&read(&a.hamiltonian)?, None)?;
    let enc = match (&a.encoding, &a.graph) {
        (Some(p), _) => {
            let enc = Encoding::from_json(&read(p)?)?;
            check_cap(enc.n_qubits(), a.max_qubits)?;
            enc
        }
        (None, Some(p)) => encode(&load_graph(p)?, &a.basis, a.max_qubits)?,
        (None, None) => encode(
            &interaction_graph_from_hamiltonian(&f)?.to_system_graph()?,
            &a.basis,
            a.max_qubits,
        )?,
    };
    let policy = match a.route.as_str() {
        "auto" => RoutingPolicy::Auto,
        other => match other.strip_prefix("explicit:") {
            Some(path) => RoutingPolicy::parse_path_file(&read(Path::new(path))?, &enc)?,
            None => return Err(Error::Parse(format!("--route expects auto or explicit:<file>, got `{other}`"))),
        },
    };
    let h = transform_hamiltonian(&f, &enc, &policy)?;
    emit(&a.out, &h.to_text(), stdout)
}

fn run_bench(a: BenchArgs, stdout: &mut dyn Write) -> Result<()> {
    let geoms = a
        .geometries
        .iter()
        .map(|s| SykGeometry::from_name(s))
        .collect::<Result<Vec<_>>>()?;
    let cfg = SweepConfig {
        seed: a.seed,
        max_qubits: a.max_qubits,
        basis: a.basis.into(),
        params: GeometryParams::default(),
        timing: a.timing,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Error::Resource(e.to_string()))?;
    let records = pool.install(|| sweep_syk_geometries(&geoms, &a.n, &cfg))?;
    let mut buf = Vec::new();
    write_csv(&records, &mut buf)?;
    emit(&a.out, &String::from_utf8_lossy(&buf), stdout)
}

fn run_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let cap = a
        .max_qubits
        .unwrap_or(if a.dense { DENSE_MAX_QUBITS } else { SYMBOLIC_MAX_QUBITS });
    let enc = encode(&g, &a.basis, cap)?;
    let mut failures = 0;
    for v in 0..g.n_vertices() {
        let r = basis_verify(enc.basis(v));
        if !r.is_valid() {
            failures += 1;
            writeln!(stdout, "vertex {v}: {r}")?;
        }
    }
    if a.dense {
        let f = match &a.hamiltonian {
            Some(p) => FermionOperator::from_text(&read(p)?, Some(enc.n_modes()))?,
            None => build_syk2(&SykCouplings::gaussian(enc.n_modes(), a.seed))?,
        };
        let report = dense_oracle_check(&f, &enc, a.tol, cap)?;
        writeln!(stdout, "{report}")?;
        if !report.passed {
            failures += 1;
        }
    } else {
        let r = enc.check_algebra();
        writeln!(
            stdout,
            "algebra: {} relations checked, {} violations",
            r.checked,
            r.violations.len()
        )?;
        for v in &r.violations {
            writeln!(stdout, "  {v}")?;
        }
        if !r.is_ok() {
            failures += 1;
        }
        writeln!(stdout, "result: {}", if failures == 0 { "pass" } else { "FAIL" })?;
    }
    if failures > 0 {
        return Err(Error::Verify(format!("{} check(s) failed", failures)));
    }
    Ok(())
}

fn run_stats(a: StatsArgs, stdout: &mut dyn Write) -> Result<()> {
    if let Some(p) = &a.pauli {
        let h = PauliSum::from_text(&read(p)?, None)?;
        let s = weight_stats(&h);
        writeln!(stdout, "qubits: {}", s.qubit_total)?;
        writeln!(stdout, "terms: {}", s.term_count)?;
        writeln!(stdout, "max_weight: {}", s.max_term_weight)?;
        writeln!(stdout, "total_weight: {}", s.total_weight)?;
        writeln!(stdout, "mean_weight: {:.6}", s.mean_weight)?;
    } else if let Some(p) = &a.graph {
        let g = load_graph(p)?;
        let r = qubit_report(&g);
        writeln!(stdout, "vertices: {}", g.n_vertices())?;
        writeln!(stdout, "physical: {}", g.physical_vertices().len())?;
        writeln!(stdout, "virtual: {}", g.virtual_vertices().len())?;
        writeln!(stdout, "edges: {}", g.n_edges())?;
        writeln!(stdout, "qubits: {}", r.total)?;
    } else if let Some(p) = &a.encoding {
        let enc = Encoding::from_json(&read(p)?)?;
        let g = enc.graph();
        let max_edge = (0..g.n_edges()).map(|e| enc.edge_op(e).weight()).max().unwrap_or(0);
        let max_vertex = (0..g.n_vertices())
            .map(|v| enc.vertex_operator(v).map(|p| p.weight()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        writeln!(stdout, "qubits: {}", enc.n_qubits())?;
        writeln!(stdout, "edge_ops: {}", g.n_edges())?;
        writeln!(stdout, "vertex_ops: {}", g.n_vertices())?;
        writeln!(stdout, "stabilizers: {}", enc.stabilizers().len())?;
        writeln!(stdout, "max_edge_weight: {max_edge}")?;
        writeln!(stdout, "max_vertex_weight: {max_vertex}")?;
    }
    Ok(())
}

/// Executes one subcommand, writing console output to `stdout`.
pub fn run(cfg: RunConfig, stdout: &mut dyn Write) -> Result<()> {
    match cfg.command {
        Command::Gen { what } => run_gen(what, stdout),
        Command::Encode(a) => {
            let enc = encode(&load_graph(&a.graph)?, &a.basis, a.max_qubits)?;
            match &a.out {
                Some(_) => {
                    emit(&a.out, &with_newline(enc.to_json()), stdout)?;
                    writeln!(
                        stdout,
                        "qubits {}, edge operators {}, vertex operators {}, stabilizers {}",
                        enc.n_qubits(),
                        enc.graph().n_edges(),
                        enc.graph().n_vertices(),
                        enc.stabilizers().len()
                    )?;
                    Ok(())
                }
                None => emit(&None, &with_newline(enc.to_json()), stdout),
            }
        }
        Command::Transform(a) => run_transform(a, stdout),
        Command::Bench(a) => run_bench(a, stdout),
        Command::Verify(a) => run_verify(a, stdout),
        Command::Stats(a) => run_stats(a, stdout),
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cfg, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            e.exit_code()
        }
    }
}
