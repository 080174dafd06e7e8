//! The `polymut` command line.
//!
//! Exit codes: 0 success, 2 unreadable or invalid input (including usage
//! errors), 3 a mathematically valid negative result (not convex, not
//! Laurent, search cutoff exceeded), 4 a broken invariant.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bridge::{
    classify, polygon_mutation_graph, polygon_seed, random_mutation_walk, BridgeError, ClassifyOptions,
    ExploreOptions,
};
use crate::cluster::{
    cluster_exchange_graph, dynkin_type, quiver_mutate, quiver_mutation_ball, seed_mutate, FrozenMode, QuiverError,
    SearchStatus, Seed,
};
use crate::highdim::{
    alternating_orbit, b5_collection, b5_start, check_seed_commutation, collection_mutate, collection_quiver,
    from_cluster_seed, pentagon_walk, CompatibleCollection, HighDimError, MutationRule, PolytopeModel,
};
use crate::io::{
    self, BallMember, ClassifyFile, CollectionFile, ExchangeFile, IoError, OrbitFile, PolytopeFile, QuiverClassFile,
    QuiverFile, WalkFile,
};
use crate::lattice::LatticeVector;
use crate::laurent::LaurentPolynomial;
use crate::mutation::{algebraic_mutate, combinatorial_mutate, pl_transform, MutationData, MutationError};
use crate::polygon::{FanoPolytope, PolygonError};
use crate::render;

#[derive(Parser, Debug)]
#[command(name = "polymut", version, about = "Exact mutation of Fano polytopes, quivers and cluster algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Node cutoff for graph and class searches.
    #[arg(long, global = true, default_value_t = 10000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_nodes: u64,
    /// Coordinate cutoff for polygon searches (normal-form coordinates).
    #[arg(long, global = true, default_value = "1000000", value_parser = positive_int)]
    pub max_coord: BigInt,
    /// Depth of level-bounded searches and number of walk steps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the polygon search; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Seed for randomized drivers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FrozenArg::Unit)]
    pub frozen_mode: FrozenArg,
    /// Write the main output here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a JSON file and print it back in normal layout.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Mutate a Fano polytope (combinatorially) or a Laurent polynomial
    /// (algebraically).
    Mutate {
        file: PathBuf,
        /// Use the data of this unfrozen index of the polygon seed.
        #[arg(long, conflicts_with_all = ["w", "f"])]
        edge: Option<usize>,
        /// Weight, comma separated.
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        w: Option<String>,
        /// Factor, comma separated.
        #[arg(long, allow_hyphen_values = true, requires = "w")]
        f: Option<String>,
        /// Instead, take this many random edge mutations (seeded by
        /// `--seed`) checking invariants at each step.
        #[arg(long, conflicts_with_all = ["edge", "w", "f"])]
        random_walk: Option<usize>,
        /// Treat the file as a polytope in M (any rational polytope, may
        /// carry `den`) and apply the piecewise linear map of `--w`, `--f`.
        #[arg(long, requires = "w", conflicts_with_all = ["edge", "random_walk"])]
        piecewise: bool,
    },
    /// Finite-type verdict for a Fano polygon.
    Classify {
        file: PathBuf,
        /// Run the polygon search even when the quiver has a Kronecker pair.
        #[arg(long)]
        no_fast_path: bool,
    },
    /// Mutation graph of a Fano polygon up to GL(2,Z).
    Explore {
        file: PathBuf,
        /// Directory for graph.json, graph.dot and (with `--format svg`) one
        /// SVG per node.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check intertwining and singularity content at every edge.
        #[arg(long)]
        verify: bool,
    },
    Quiver {
        #[command(subcommand)]
        action: QuiverCmd,
    },
    Cluster {
        #[command(subcommand)]
        action: ClusterCmd,
    },
    Highdim {
        #[command(subcommand)]
        action: HighdimCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuiverCmd {
    /// Mutate at an unfrozen vertex.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// Mutation class up to isomorphism, to `--depth` levels if given.
    Class { file: PathBuf },
    /// Mutation type among A1^n, A2, A3, D4.
    Type { file: PathBuf },
    /// The quiver of a Fano polygon.
    FromPolygon { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ClusterCmd {
    /// Exchange graph of the seed of a quiver.
    Graph { file: PathBuf },
    /// Cluster variables after a sequence of mutations.
    Mutate {
        file: PathBuf,
        /// Comma separated vertices.
        #[arg(long)]
        sequence: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum HighdimCmd {
    /// Validate a collection and print its quiver.
    Check { file: PathBuf },
    /// Mutate a collection at an item.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        at: usize,
    },
    /// Alternating orbit of a two-item collection.
    Orbit {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RuleArg::Linear)]
        rule: RuleArg,
    },
    /// Alternating walk of M-side polytopes; defaults to the B5 pentagon.
    Pentagon {
        #[arg(long)]
        collection: Option<PathBuf>,
        /// M-side start polytope (may carry a denominator).
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModelArg::Raw)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = RuleArg::Linear)]
        rule: RuleArg,
    },
    /// The collection of a quiver without frozen vertices and a subspace of
    /// the kernel of its exchange matrix.
    FromSeed {
        file: PathBuf,
        /// A kernel vector, comma separated; repeat for more.
        #[arg(long, allow_hyphen_values = true)]
        kernel: Vec<String>,
    },
    /// Check that seed mutation at `--at` and projection commute on `z^u`.
    Commute {
        file: PathBuf,
        #[arg(long)]
        at: usize,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        kernel: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrozenArg {
    Symbolic,
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Auto,
    Polytope,
    Laurent,
    Quiver,
    Collection,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Linear,
    SignCoherent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Raw,
    Dilated,
}

fn positive_int(s: &str) -> Result<BigInt, String> {
    let n: BigInt = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if !n.is_positive() {
        return Err("must be positive".into());
    }
    Ok(n)
}

/// A failed command, with the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn finding(message: impl ToString) -> Failure {
    Failure { code: 3, message: message.to_string() }
}

fn broken(message: impl ToString) -> Failure {
    Failure { code: 4, message: message.to_string() }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        input(e)
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        input(e)
    }
}

impl From<MutationError> for Failure {
    fn from(e: MutationError) -> Self {
        match e {
            MutationError::NotConvex | MutationError::NotLaurent | MutationError::NotFano => finding(e),
            _ => input(e),
        }
    }
}

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::InternalNonLaurent => broken(e),
            QuiverError::Overflow => finding(e),
            _ => input(e),
        }
    }
}

impl From<BridgeError> for Failure {
    fn from(e: BridgeError) -> Self {
        match e {
            BridgeError::Mutation(m) => m.into(),
            BridgeError::Quiver(q) => q.into(),
            BridgeError::InvariantViolation(_) => broken(e),
            BridgeError::Overflow => finding(e),
            _ => input(e),
        }
    }
}

impl From<HighDimError> for Failure {
    fn from(e: HighDimError) -> Self {
        match e {
            HighDimError::Mutation(m) => m.into(),
            HighDimError::Quiver(q) => q.into(),
            HighDimError::CompatibilityBroken(_) | HighDimError::NotSignCoherent(_) => broken(e),
            HighDimError::Overflow => finding(e),
            _ => input(e),
        }
    }
}

/// What a successful command produced: the main text, extra files, and
/// the exit code (3 when a search stopped at its cutoff).
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub files: Vec<(PathBuf, String)>,
    pub code: i32,
}

impl Output {
    fn text(text: String) -> Self {
        Output { text, ..Default::default() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_vector(s: &str) -> Result<LatticeVector, Failure> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| input(format!("{s:?} is not a list of integers"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.is_empty() {
        return Err(input("empty vector"));
    }
    Ok(LatticeVector::new(coords))
}

fn read_polygon(path: &Path) -> Result<FanoPolytope, Failure> {
    Ok(io::parse_polytope(&read(path)?)?)
}

fn read_quiver(path: &Path) -> Result<crate::cluster::Quiver, Failure> {
    Ok(io::parse_quiver(&read(path)?)?)
}

fn read_collection(path: &Path) -> Result<CompatibleCollection, Failure> {
    Ok(io::from_json::<CollectionFile>(&read(path)?)?.to_collection_imprimitive()?)
}

fn detect(text: &str) -> Result<Kind, Failure> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| input(format!("malformed JSON: {e}")))?;
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("nodes") {
        Kind::Graph
    } else if has("vertices") {
        Kind::Polytope
    } else if has("terms") {
        Kind::Laurent
    } else if has("b") {
        Kind::Quiver
    } else if has("items") {
        Kind::Collection
    } else {
        return Err(input("cannot tell the kind of this file; use --kind"));
    })
}

fn rule(r: RuleArg) -> (MutationRule, &'static str) {
    match r {
        RuleArg::Linear => (MutationRule::Linear, "linear"),
        RuleArg::SignCoherent => (MutationRule::SignCoherent, "sign-coherent"),
    }
}

fn frozen(m: FrozenArg) -> FrozenMode {
    match m {
        FrozenArg::Symbolic => FrozenMode::Symbolic,
        FrozenArg::Unit => FrozenMode::Unit,
    }
}

fn exceeded(status: SearchStatus) -> i32 {
    if status == SearchStatus::Exceeded {
        3
    } else {
        0
    }
}

fn explore_options(cli: &Cli, verify: bool) -> ExploreOptions {
    ExploreOptions {
        max_nodes: cli.max_nodes as usize,
        max_coord: cli.max_coord.clone(),
        jobs: cli.jobs as usize,
        verify,
    }
}

fn kernel(v: &[String]) -> Result<Vec<LatticeVector>, Failure> {
    v.iter().map(|s| parse_vector(s)).collect()
}

fn cmd_validate(file: &Path, kind: Kind) -> Result<Output, Failure> {
    let text = read(file)?;
    let kind = if kind == Kind::Auto { detect(&text)? } else { kind };
    let out = match kind {
        Kind::Polytope => {
            let f: PolytopeFile = io::from_json(&text)?;
            if f.den.is_some() {
                io::rational_polytope_to_json(&f.to_rational()?)
            } else {
                io::polytope_to_json(&f.to_fano()?)
            }
        }
        Kind::Laurent => io::laurent_to_json(&io::parse_laurent(&text)?),
        Kind::Quiver => io::quiver_to_json(&io::parse_quiver(&text)?),
        Kind::Collection => io::to_json(&CollectionFile::from_collection(
            &io::from_json::<CollectionFile>(&text)?.to_collection_imprimitive()?,
        )),
        Kind::Graph => io::graph_to_json(&io::parse_graph(&text)?),
        Kind::Auto => unreachable!("resolved above"),
    };
    Ok(Output::text(out))
}

fn newton_edge_data(w: &LaurentPolynomial, k: usize) -> Result<MutationData, Failure> {
    let p = crate::polygon::make_fano(&w.support()).map_err(|e| input(format!("Newton polytope: {e}")))?;
    let seed = polygon_seed(&p)?;
    Ok(seed.mutation_data(k)?.flip_factor())
}

fn cmd_mutate(
    cli: &Cli,
    file: &Path,
    edge: Option<usize>,
    w: Option<&str>,
    f: Option<&str>,
    walk: Option<usize>,
    piecewise: bool,
) -> Result<Output, Failure> {
    let text = read(file)?;
    let explicit = match (w, f) {
        (Some(w), Some(f)) => Some(MutationData::new(parse_vector(w)?, parse_vector(f)?)?),
        _ => None,
    };
    if piecewise {
        let q = io::parse_rational_polytope(&text)?;
        let d = explicit.expect("clap requires --w and --f");
        if d.dim() != q.dim() {
            return Err(input("mutation data and polytope have different dimensions"));
        }
        return Ok(Output::text(io::rational_polytope_to_json(&pl_transform(&q, &d)?)));
    }
    if detect(&text)? == Kind::Laurent {
        let poly = io::parse_laurent(&text)?;
        let d = match (explicit, edge) {
            (Some(d), _) => d,
            (None, Some(k)) => newton_edge_data(&poly, k)?,
            (None, None) => return Err(input("give --edge or --w and --f")),
        };
        return Ok(Output::text(io::laurent_to_json(&algebraic_mutate(&poly, &d)?)));
    }
    let p = io::parse_polytope(&text)?;
    if let Some(steps) = walk {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let path = random_mutation_walk(&p, steps, &mut rng)?;
        return Ok(Output::text(io::polytope_to_json(path.last().expect("walk starts at p"))));
    }
    let d = match (explicit, edge) {
        (Some(d), _) => d,
        (None, Some(k)) => polygon_seed(&p)?.mutation_data(k)?,
        (None, None) => return Err(input("give --edge, --w and --f, or --random-walk")),
    };
    if d.dim() != p.dim() {
        return Err(input("mutation data and polytope have different dimensions"));
    }
    Ok(Output::text(io::polytope_to_json(&combinatorial_mutate(&p, &d)?)))
}

fn cmd_classify(cli: &Cli, file: &Path, no_fast_path: bool) -> Result<Output, Failure> {
    let p = read_polygon(file)?;
    let opts = ClassifyOptions {
        explore: explore_options(cli, false),
        quiver_cutoff: cli.max_nodes as usize,
        kronecker_fast_path: !no_fast_path,
    };
    let report = classify(&p, &opts)?;
    let seed = polygon_seed(&p)?;
    Ok(Output::text(io::to_json(&ClassifyFile::new(&p, &seed.quiver, &p.singularity_content()?, &report))))
}

fn cmd_explore(cli: &Cli, file: &Path, out: Option<&Path>, verify: bool) -> Result<Output, Failure> {
    let p = read_polygon(file)?;
    let g = polygon_mutation_graph(&p, &explore_options(cli, verify))?;
    let code = exceeded(g.status);
    let json = io::graph_to_json(&g);
    let dot = render::graph_to_dot(&g);
    let Some(dir) = out else {
        let text = match cli.format {
            Format::Json => json,
            Format::Dot => dot,
            Format::Svg => return Err(input("--format svg needs --out")),
        };
        return Ok(Output { text, files: Vec::new(), code });
    };
    let mut files = vec![(dir.join("graph.json"), json), (dir.join("graph.dot"), dot)];
    if cli.format == Format::Svg {
        for n in &g.nodes {
            if let Some(svg) = render::polygon_to_svg(n) {
                files.push((dir.join("nodes").join(format!("{}.svg", io::node_id(n))), svg));
            }
        }
    }
    let summary = format!("{} nodes, {} edges, {}\n", g.nodes.len(), g.edges.len(), io::status_name(g.status));
    Ok(Output { text: summary, files, code })
}

fn cmd_quiver(cli: &Cli, action: &QuiverCmd) -> Result<Output, Failure> {
    match action {
        QuiverCmd::Mutate { file, at } => {
            let q = quiver_mutate(&read_quiver(file)?, *at)?;
            Ok(Output::text(match cli.format {
                Format::Dot => render::quiver_to_dot(&q),
                _ => io::quiver_to_json(&q),
            }))
        }
        QuiverCmd::Class { file } => {
            let q = read_quiver(file)?;
            let (members, status) = match cli.depth {
                Some(d) => quiver_mutation_ball(&q, d as usize)?,
                None => {
                    let c = crate::cluster::quiver_mutation_class(&q, cli.max_nodes as usize)?;
                    (c.members.into_iter().map(|m| (m, 0)).collect(), c.status)
                }
            };
            let f = QuiverClassFile {
                status: io::status_name(status).to_string(),
                members: members
                    .iter()
                    .map(|(q, depth)| BallMember { depth: *depth, quiver: QuiverFile::from_quiver(q) })
                    .collect(),
            };
            Ok(Output { text: io::to_json(&f), files: Vec::new(), code: exceeded(status) })
        }
        QuiverCmd::Type { file } => {
            let t = dynkin_type(&read_quiver(file)?, cli.max_nodes as usize)?;
            Ok(Output::text(format!("{t}\n")))
        }
        QuiverCmd::FromPolygon { file } => {
            let q = polygon_seed(&read_polygon(file)?)?.quiver;
            Ok(Output::text(match cli.format {
                Format::Dot => render::quiver_to_dot(&q),
                _ => io::quiver_to_json(&q),
            }))
        }
    }
}

fn cmd_cluster(cli: &Cli, action: &ClusterCmd) -> Result<Output, Failure> {
    match action {
        ClusterCmd::Graph { file } => {
            let s = Seed::initial(&read_quiver(file)?, frozen(cli.frozen_mode));
            let g = cluster_exchange_graph(&s, cli.max_nodes as usize)?;
            let text = match cli.format {
                Format::Dot => render::exchange_graph_to_dot(&g),
                _ => io::to_json(&ExchangeFile::from_graph(&g)),
            };
            Ok(Output { text, files: Vec::new(), code: exceeded(g.status) })
        }
        ClusterCmd::Mutate { file, sequence } => {
            let mut s = Seed::initial(&read_quiver(file)?, frozen(cli.frozen_mode));
            for k in sequence.split(',').filter(|t| !t.trim().is_empty()) {
                let k: usize = k.trim().parse().map_err(|_| input(format!("{k:?} is not a vertex")))?;
                s = seed_mutate(&s, k)?;
            }
            let vars: Vec<io::LaurentFile> = s.cluster().iter().map(io::LaurentFile::from_laurent).collect();
            Ok(Output::text(io::to_json(&vars)))
        }
    }
}

fn cmd_highdim(cli: &Cli, action: &HighdimCmd) -> Result<Output, Failure> {
    match action {
        HighdimCmd::Check { file } => {
            let q = collection_quiver(&read_collection(file)?)?;
            Ok(Output::text(io::quiver_to_json(&q)))
        }
        HighdimCmd::Mutate { file, at } => {
            let e = collection_mutate(&read_collection(file)?, *at)?;
            Ok(Output::text(io::to_json(&CollectionFile::from_collection(&e))))
        }
        HighdimCmd::Orbit { file, rule: r } => {
            let (r, name) = rule(*r);
            let steps = cli.depth.unwrap_or(20) as usize;
            let o = alternating_orbit(&read_collection(file)?, r, steps)?;
            let f = OrbitFile {
                rule: name.to_string(),
                period: o.period,
                collections: o.collections.iter().map(CollectionFile::from_collection).collect(),
            };
            Ok(Output { text: io::to_json(&f), files: Vec::new(), code: if o.period.is_some() { 0 } else { 3 } })
        }
        HighdimCmd::Pentagon { collection, start, model, rule: r } => {
            let (r, name) = rule(*r);
            let e = match collection {
                Some(path) => read_collection(path)?,
                None => b5_collection(),
            };
            let q = match start {
                Some(path) => io::parse_rational_polytope(&read(path)?)?,
                None => b5_start(match model {
                    ModelArg::Raw => PolytopeModel::Raw,
                    ModelArg::Dilated => PolytopeModel::Dilated,
                }),
            };
            let w = pentagon_walk(&q, &e, cli.depth.unwrap_or(12) as usize, r)?;
            let code = if w.not_convex_at.is_some() || w.closed_at.is_none() { 3 } else { 0 };
            Ok(Output { text: io::to_json(&WalkFile::new(name, &w)), files: Vec::new(), code })
        }
        HighdimCmd::FromSeed { file, kernel: v } => {
            let p = from_cluster_seed(&read_quiver(file)?, &kernel(v)?)?;
            Ok(Output::text(io::to_json(&CollectionFile::from_collection(p.collection()))))
        }
        HighdimCmd::Commute { file, at, u, kernel: v } => {
            let p = from_cluster_seed(&read_quiver(file)?, &kernel(v)?)?;
            if check_seed_commutation(&p, *at, &parse_vector(u)?)? {
                Ok(Output::text("commutes\n".into()))
            } else {
                Err(broken("seed mutation and projection do not commute"))
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate { file, kind } => cmd_validate(file, *kind),
        Command::Mutate { file, edge, w, f, random_walk, piecewise } => {
            cmd_mutate(cli, file, *edge, w.as_deref(), f.as_deref(), *random_walk, *piecewise)
        }
        Command::Classify { file, no_fast_path } => cmd_classify(cli, file, *no_fast_path),
        Command::Explore { file, out, verify } => cmd_explore(cli, file, out.as_deref(), *verify),
        Command::Quiver { action } => cmd_quiver(cli, action),
        Command::Cluster { action } => cmd_cluster(cli, action),
        Command::Highdim { action } => cmd_highdim(cli, action),
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli).and_then(|out| {
        for (path, text) in &out.files {
            write(path, text)?;
        }
        match &cli.output {
            Some(path) => write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("polymut: {}", f.message);
            f.code
        }
    }
}
