//! `sandpark`: command-line front end for sandpile and parking-function
//! checks, enumeration, decomposition, simulation and path rendering.
//!
//! Exit status: 0 when the property holds (or the command simply ran),
//! 1 when a checked property is false, 2 on bad input or a breached cap.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sandpile_parking::classical::{
    breakpoints, is_parking_function, is_pf_by_condition, simulate_park, to_path, Condition, PathKind,
    PreferenceVector, SUBSET_CONDITION_CAP,
};
use sandpile_parking::enumeration::{
    collect_class, count_class, expected_count, graph_expected_count, reports_to_json, standard_suite,
    verify_counts, write_reports_csv, EnumClass, EnumerationReport, DEFAULT_SPACE_CAP,
};
use sandpile_parking::families::{
    make_family, path_from_a, path_from_b, pq_svg, FamilySpec, MonotonePath,
};
use sandpile_parking::io::{parse_values, tuple_string};
use sandpile_parking::parking::{
    decomposing_partition_with_cap, is_g_parking_fast, parking_violation_with_cap, prime_decomposition_with_cap,
    prime_decompositions_with_cap, prime_failures, v_m_parking, ParkingCandidate, DEFAULT_PARTITION_CAP,
    DEFAULT_SUBSET_CAP,
};
use sandpile_parking::sandpile::{
    is_recurrent, is_recurrent_burning, is_stable, markov_run, max_forbidden_set, strong_recurrence_failures,
    v_m_set, Configuration, OrientationOracle, Quantifier, DEFAULT_ORIENTATION_EDGE_CAP,
};
use sandpile_parking::{RootedMultigraph, VertexSet};

#[derive(Parser)]
#[command(name = "sandpark", version, about = "Sandpile configurations and graphical parking functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one property of a configuration or parking function.
    Check(CheckArgs),
    /// Enumerate a class on a family or file graph.
    Enumerate(EnumerateArgs),
    /// Prime decompositions of a parking function.
    Decompose(DecomposeArgs),
    /// Run the sandpile Markov chain.
    Simulate(SimulateArgs),
    /// Dyck / Łukasiewicz paths of a parking function, or the lattice paths
    /// of a tripartite pair.
    Paths(PathsArgs),
    /// Run the classical parking process and its four characterisations.
    Park(ParkArgs),
    /// Check every closed-form and matrix-tree count on the standard family
    /// instances.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Recurrent,
    StronglyRecurrent,
    MinimalRecurrent,
    Parking,
    Prime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Burning,
    Forbidden,
    Orientation,
    Bruteforce,
    Fast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantifierArg {
    Forall,
    Exists,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Values file: `{"values": {"v1": 1, ...}}`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    property: Property,
    #[arg(long, value_enum, default_value = "forall")]
    quantifier: QuantifierArg,
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Largest number of non-sink vertices for the subset parking test.
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
    /// Largest number of non-sink vertices for partition searches.
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    partition_cap: usize,
    /// Largest number of distinct non-sink edges for the orientation oracle.
    #[arg(long, default_value_t = DEFAULT_ORIENTATION_EDGE_CAP)]
    orientation_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Complete,
    Wheel,
    Tripartite,
    Bipartite,
    Split,
}

#[derive(Args)]
struct GraphSource {
    #[arg(long, value_enum, conflicts_with = "graph")]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    List,
    Csv,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: GraphSource,
    /// stable, recurrent, sr-forall, sr-exists, minrecurrent, pf, ppf,
    /// pf-inc or ppf-inc.
    #[arg(long)]
    class: EnumClass,
    #[arg(long, value_enum, default_value = "list")]
    output: OutputFormat,
    /// Compare against the closed form or matrix-tree count.
    #[arg(long)]
    expected: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Largest search space to enumerate.
    #[arg(long, default_value_t = DEFAULT_SPACE_CAP)]
    cap: u128,
    /// Write machine output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pf: PathBuf,
    /// Print every prime decomposition rather than one.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    partition_cap: usize,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop distribution: `{"values": {"v1": 0.5, ...}}`, summing to 1.
    #[arg(long)]
    mu: Option<PathBuf>,
    /// Start configuration (values file); all zeros by default.
    #[arg(long)]
    start: Option<PathBuf>,
    /// Write the step-by-step trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Dyck,
    Lukasiewicz,
}

#[derive(Args)]
struct PathsArgs {
    /// Classical parking function, e.g. "1,1,3".
    #[arg(long, conflicts_with = "pq", required_unless_present = "pq")]
    pf: Option<String>,
    #[arg(long, value_enum, default_value = "dyck")]
    kind: KindArg,
    /// Vectors `a;b` (non-decreasing, 0-based) for the tripartite paths.
    #[arg(long)]
    pq: Option<String>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ParkArgs {
    /// Preference vector, e.g. "3,1,3,1".
    #[arg(long)]
    pf: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "list")]
    output: OutputFormat,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Bad input or a breached cap: exit 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Paths(a) => cmd_paths(a),
        Command::Park(a) => cmd_park(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<RootedMultigraph, UsageError> {
    Ok(RootedMultigraph::from_json(&read(path)?)?)
}

fn load_values(graph: &RootedMultigraph, path: &Path) -> Result<Vec<i64>, UsageError> {
    Ok(parse_values(graph, &read(path)?)?)
}

fn set_string(graph: &RootedMultigraph, set: VertexSet) -> String {
    let names: Vec<&str> = set.iter().map(|v| graph.name(v)).collect();
    format!("{{{}}}", names.join(","))
}

fn names_string(graph: &RootedMultigraph, vs: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<&str> = vs.into_iter().map(|v| graph.name(v)).collect();
    names.join(", ")
}

fn cmd_check(args: CheckArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let values = load_values(&graph, &args.input)?;
    match args.property {
        Property::Recurrent | Property::StronglyRecurrent | Property::MinimalRecurrent => {
            let c = Configuration::new(values);
            if !c.is_non_negative() {
                return Err(UsageError("configuration has a negative value".into()));
            }
            if !is_stable(&graph, &c) {
                return Err(UsageError("configuration is not stable".into()));
            }
            match args.property {
                Property::Recurrent => check_recurrent(&graph, &c, args.oracle, args.caps),
                Property::StronglyRecurrent => check_strong(&graph, &c, args.quantifier),
                _ => check_minimal(&graph, &c),
            }
        }
        Property::Parking | Property::Prime => {
            let p = ParkingCandidate::new(values)?;
            if args.property == Property::Parking {
                check_parking(&graph, &p, args.oracle, args.caps)
            } else {
                check_prime(&graph, &p, args.oracle, args.caps)
            }
        }
    }
}

fn check_recurrent(graph: &RootedMultigraph, c: &Configuration, oracle: Option<Oracle>, caps: CapArgs) -> CmdResult {
    let print_forbidden = || {
        let f = max_forbidden_set(graph, c);
        println!("forbidden set: {}", set_string(graph, f));
    };
    match oracle.unwrap_or(Oracle::Burning) {
        Oracle::Burning => match is_recurrent_burning(graph, c)? {
            Some(seq) => {
                println!("recurrent: true");
                println!("burning sequence: {}", names_string(graph, seq));
                Ok(true)
            }
            None => {
                println!("recurrent: false");
                print_forbidden();
                Ok(false)
            }
        },
        Oracle::Forbidden => {
            let f = max_forbidden_set(graph, c);
            println!("recurrent: {}", f.is_empty());
            if !f.is_empty() {
                println!("forbidden set: {}", set_string(graph, f));
            }
            Ok(f.is_empty())
        }
        Oracle::Orientation => {
            let oracle = OrientationOracle::with_cap(graph, caps.orientation_cap)?;
            match oracle.compatible(c) {
                Some(o) => {
                    println!("recurrent: true");
                    let arcs: Vec<String> = o
                        .arcs
                        .iter()
                        .map(|&(a, b, m)| {
                            let arc = format!("{}->{}", graph.name(a), graph.name(b));
                            if m > 1 {
                                format!("{arc} x{m}")
                            } else {
                                arc
                            }
                        })
                        .collect();
                    println!("compatible orientation: {}", arcs.join(", "));
                    Ok(true)
                }
                None => {
                    println!("recurrent: false");
                    print_forbidden();
                    Ok(false)
                }
            }
        }
        Oracle::Bruteforce | Oracle::Fast => Err(UsageError(
            "recurrence oracles are burning, forbidden and orientation".into(),
        )),
    }
}

fn check_strong(graph: &RootedMultigraph, c: &Configuration, quantifier: QuantifierArg) -> CmdResult {
    if !is_recurrent(graph, c) {
        println!("strongly recurrent: false");
        println!("not recurrent; forbidden set: {}", set_string(graph, max_forbidden_set(graph, c)));
        return Ok(false);
    }
    let vm = v_m_set(graph, c);
    let failures = strong_recurrence_failures(graph, c);
    let holds = match quantifier {
        QuantifierArg::Forall => failures.is_empty(),
        QuantifierArg::Exists => failures.len() < vm.len(),
    };
    let q = match quantifier {
        QuantifierArg::Forall => Quantifier::ForAll,
        QuantifierArg::Exists => Quantifier::Exists,
    };
    println!("strongly recurrent ({}): {holds}", serde_json::to_value(q)?.as_str().unwrap_or_default());
    println!("V_M: {}", set_string(graph, vm));
    if !failures.is_empty() {
        println!("c^(v-) not recurrent for: {}", names_string(graph, failures));
    }
    Ok(holds)
}

fn check_minimal(graph: &RootedMultigraph, c: &Configuration) -> CmdResult {
    if !is_recurrent(graph, c) {
        println!("minimal recurrent: false");
        println!("not recurrent; forbidden set: {}", set_string(graph, max_forbidden_set(graph, c)));
        return Ok(false);
    }
    let removable: Vec<usize> = (0..c.len())
        .filter(|&i| is_recurrent(graph, &c.add_at(i, -1)))
        .map(|i| graph.non_sink()[i])
        .collect();
    let holds = removable.is_empty();
    println!("minimal recurrent: {holds}");
    if !holds {
        println!("still recurrent after removing a grain at: {}", names_string(graph, removable));
    }
    Ok(holds)
}

/// A set `S` with `p(v) > deg^{S^c}(v)` on all of `S`, from the maximal
/// forbidden set of `deg - p`.
fn parking_witness(graph: &RootedMultigraph, p: &ParkingCandidate) -> VertexSet {
    if let Some(i) = (0..p.len()).find(|&i| p.values()[i] > graph.degree(graph.non_sink()[i]) as i64) {
        return VertexSet::singleton(graph.non_sink()[i]);
    }
    let c: Vec<i64> = graph
        .non_sink()
        .iter()
        .zip(p.values())
        .map(|(&v, &x)| graph.degree(v) as i64 - x)
        .collect();
    max_forbidden_set(graph, &Configuration::new(c))
}

fn check_parking(graph: &RootedMultigraph, p: &ParkingCandidate, oracle: Option<Oracle>, caps: CapArgs) -> CmdResult {
    if p.len() != graph.size() {
        return Err(UsageError(format!(
            "expected {} values, got {}",
            graph.size(),
            p.len()
        )));
    }
    let (holds, witness) = match oracle.unwrap_or(Oracle::Fast) {
        Oracle::Fast => {
            let holds = is_g_parking_fast(graph, p);
            (holds, (!holds).then(|| parking_witness(graph, p)))
        }
        Oracle::Bruteforce => {
            let violation = parking_violation_with_cap(graph, p, caps.subset_cap)?;
            (violation.is_none(), violation)
        }
        _ => return Err(UsageError("parking oracles are fast and bruteforce".into())),
    };
    println!("parking: {holds}");
    if let Some(s) = witness {
        println!("violating set: {}", set_string(graph, s));
    }
    Ok(holds)
}

fn check_prime(graph: &RootedMultigraph, p: &ParkingCandidate, oracle: Option<Oracle>, caps: CapArgs) -> CmdResult {
    if p.len() != graph.size() {
        return Err(UsageError(format!(
            "expected {} values, got {}",
            graph.size(),
            p.len()
        )));
    }
    if !is_g_parking_fast(graph, p) {
        println!("prime: false");
        println!("not a parking function; violating set: {}", set_string(graph, parking_witness(graph, p)));
        return Ok(false);
    }
    let holds = match oracle.unwrap_or(Oracle::Fast) {
        Oracle::Fast => {
            let failures = prime_failures(graph, p)?;
            println!("prime: {}", failures.is_empty());
            println!("V_M: {}", set_string(graph, v_m_parking(graph, p)));
            if !failures.is_empty() {
                println!("p^(v+) not parking for: {}", names_string(graph, failures.iter().copied()));
            }
            failures.is_empty()
        }
        Oracle::Bruteforce => {
            let split = decomposing_partition_with_cap(graph, p, caps.partition_cap)?;
            println!("prime: {}", split.is_none());
            split.is_none()
        }
        _ => return Err(UsageError("primeness oracles are fast and bruteforce".into())),
    };
    if !holds && graph.size() <= caps.partition_cap {
        if let Some(split) = decomposing_partition_with_cap(graph, p, caps.partition_cap)? {
            println!("decomposing partition: {}", split.display(graph));
        }
    }
    Ok(holds)
}

fn family_spec(src: &GraphSource) -> Result<FamilySpec, UsageError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| UsageError(format!("--{flag} is required for this family")));
    let spec = match src.family.expect("family given") {
        FamilyArg::Complete => FamilySpec::Complete { n: need(src.n, "n")? },
        FamilyArg::Wheel => FamilySpec::Wheel { n: need(src.n, "n")? },
        FamilyArg::Tripartite => FamilySpec::Tripartite {
            p: need(src.p, "p")?,
            q: need(src.q, "q")?,
        },
        FamilyArg::Bipartite => FamilySpec::Bipartite {
            p: need(src.p, "p")?,
            q: need(src.q, "q")?,
        },
        FamilyArg::Split => FamilySpec::Split {
            m: need(src.m, "m")?,
            n: need(src.n, "n")?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let (graph, spec) = match (&args.source.family, &args.source.graph) {
        (Some(_), _) => {
            let spec = family_spec(&args.source)?;
            (make_family(spec)?, Some(spec))
        }
        (None, Some(path)) => (load_graph(path)?, None),
        (None, None) => return Err(UsageError("give --family or --graph".into())),
    };
    let start = Instant::now();
    let elements = match args.output {
        OutputFormat::Csv => None,
        _ => Some(collect_class(&graph, args.class, args.jobs, args.cap)?),
    };
    let count = match &elements {
        Some(e) => e.len().into(),
        None => count_class(&graph, args.class, args.jobs, args.cap)?,
    };
    let millis = start.elapsed().as_millis();
    let expected = if args.expected {
        match spec {
            Some(spec) => expected_count(spec, args.class)?,
            None => graph_expected_count(&graph, args.class),
        }
    } else {
        None
    };
    let (family, params) = match (spec, &args.source.graph) {
        (Some(spec), _) => (spec.family_name().to_owned(), spec.params()),
        (None, Some(path)) => ("graph".to_owned(), path.display().to_string()),
        (None, None) => unreachable!(),
    };
    let report = EnumerationReport::new(family, params, args.class, count, expected, millis);

    match args.output {
        OutputFormat::List => {
            let mut text = String::new();
            for e in elements.as_deref().unwrap_or_default() {
                text.push_str(&tuple_string(e));
                text.push('\n');
            }
            emit(&args.out, &text)?;
            println!("count: {}", report.count);
        }
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(std::slice::from_ref(&report), &mut buf)?;
            emit(&args.out, &String::from_utf8(buf)?)?;
        }
        OutputFormat::Json => {
            let doc = json!({
                "report": serde_json::to_value(&report)?,
                "vertices": (0..graph.size()).map(|i| graph.ordinal_name(i)).collect::<Vec<_>>(),
                "elements": elements.unwrap_or_default(),
            });
            emit(&args.out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
    }
    if args.expected {
        match (&report.expected, &report.expected_source) {
            (Some(e), Some(src)) => {
                let verdict = if report.matches { "match" } else { "MISMATCH" };
                eprintln!("expected: {e} ({src}), {verdict}");
            }
            _ => eprintln!("expected: no reference count for {}", report.class),
        }
    }
    Ok(report.matches)
}

fn cmd_decompose(args: DecomposeArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let p = ParkingCandidate::new(load_values(&graph, &args.pf)?)?;
    if p.len() != graph.size() || !is_g_parking_fast(&graph, &p) {
        return Err(UsageError("input is not a parking function on this graph".into()));
    }
    if args.all {
        let all = prime_decompositions_with_cap(&graph, &p, args.partition_cap)?;
        for d in &all {
            println!("{}", d.display(&graph));
        }
        println!("decompositions: {}", all.len());
    } else {
        let d = prime_decomposition_with_cap(&graph, &p, args.partition_cap)?;
        println!("{}", d.display(&graph));
    }
    Ok(true)
}

fn load_weights(graph: &RootedMultigraph, path: &Path) -> Result<Vec<f64>, UsageError> {
    let root: Value = serde_json::from_str(&read(path)?)?;
    let map = root
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| UsageError("expected {\"values\": {...}}".into()))?;
    for key in map.keys() {
        if graph.vertex(key).ok().is_none_or(|v| v == graph.sink()) {
            return Err(UsageError(format!("`{key}` is not a non-sink vertex")));
        }
    }
    (0..graph.size())
        .map(|i| {
            let name = graph.ordinal_name(i);
            map.get(name)
                .and_then(Value::as_f64)
                .ok_or_else(|| UsageError(format!("no numeric weight for `{name}`")))
        })
        .collect()
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let mu = args.mu.as_deref().map(|p| load_weights(&graph, p)).transpose()?;
    let start = match &args.start {
        Some(path) => Configuration::new(load_values(&graph, path)?),
        None => Configuration::zeros(&graph),
    };
    let run = markov_run(&graph, &start, mu.as_deref(), args.steps, args.seed)?;
    let recurrent_states = run.visits.keys().filter(|c| is_recurrent(&graph, c)).count();
    println!("steps: {}", args.steps);
    println!("start: {}", run.start);
    println!("distinct states visited: {}", run.visits.len());
    println!("recurrent states visited: {recurrent_states}");
    match run.first_recurrent_step(&graph) {
        Some(step) => {
            let after = run.states_from(step);
            let all = after.iter().all(|c| is_recurrent(&graph, c));
            println!("first recurrent step: {step}");
            println!("all states from then on recurrent: {all}");
            println!("recurrent configurations of the graph: {}", graph.spanning_tree_count());
        }
        None => println!("first recurrent step: none"),
    }
    if let Some(path) = &args.trace {
        let file = fs::File::create(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        run.write_trace_csv(&graph, std::io::BufWriter::new(file))?;
    }
    Ok(true)
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, UsageError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| UsageError(format!("`{}` is not a non-negative integer", t.trim())))
        })
        .collect()
}

fn points_string(points: &[(usize, usize)]) -> String {
    let parts: Vec<String> = points.iter().map(|(x, y)| format!("({x},{y})")).collect();
    parts.join(" ")
}

fn cmd_paths(args: PathsArgs) -> CmdResult {
    if let Some(pf) = &args.pf {
        let p: PreferenceVector = pf.parse()?;
        if !is_parking_function(&p) {
            println!("not a parking function");
            return Ok(false);
        }
        let kind = match args.kind {
            KindArg::Dyck => PathKind::Dyck,
            KindArg::Lukasiewicz => PathKind::Lukasiewicz,
        };
        let path = to_path(&p, kind)?;
        let touches: Vec<String> = path.touch_points().iter().map(ToString::to_string).collect();
        let bps = breakpoints(&p)?;
        println!("path: {}", path.render());
        println!("touch points: {{{}}}", touches.join(","));
        println!("prime: {}", bps == vec![p.len()]);
        if let Some(svg) = &args.svg {
            fs::write(svg, path.to_svg()).map_err(|e| UsageError(format!("{}: {e}", svg.display())))?;
        }
        return Ok(true);
    }
    let pq = args.pq.as_deref().expect("clap requires --pf or --pq");
    let (a_text, b_text) = pq
        .split_once(';')
        .ok_or_else(|| UsageError("--pq expects `a;b`".into()))?;
    let a = parse_usize_list(a_text)?;
    let b = parse_usize_list(b_text)?;
    let (p, q) = (a.len(), b.len());
    if p == 0 || q == 0 {
        return Err(UsageError("both vectors must be non-empty".into()));
    }
    let la: MonotonePath = path_from_a(&a, q)?;
    let lb = path_from_b(&b, p)?;
    let above = lb.weakly_above(&la);
    let common = lb.common_points(&la);
    println!("L_a: {}", la.render());
    println!("L_b: {}", lb.render());
    println!("weakly above: {above}");
    println!("common points: {}", points_string(&common));
    println!("endpoints only: {}", common == vec![(0, 0), (p, q)]);
    println!("prime: {}", above && common == vec![(0, 0), (p, q)]);
    if let Some(svg) = &args.svg {
        fs::write(svg, pq_svg(&la, &lb)).map_err(|e| UsageError(format!("{}: {e}", svg.display())))?;
    }
    Ok(true)
}

fn cmd_park(args: ParkArgs) -> CmdResult {
    let p: PreferenceVector = args.pf.parse()?;
    let outcome = simulate_park(&p);
    let spots: Vec<String> = outcome
        .spots
        .iter()
        .map(|s| s.map_or("-".to_owned(), |k| k.to_string()))
        .collect();
    println!("spots: ({})", spots.join(","));
    println!("parks: {}", outcome.success());
    for (k, cond) in Condition::ALL.into_iter().enumerate() {
        if cond == Condition::Subsets && p.len() > SUBSET_CONDITION_CAP {
            println!("condition {}: skipped (n > {SUBSET_CONDITION_CAP})", k + 1);
            continue;
        }
        println!("condition {}: {}", k + 1, is_pf_by_condition(&p, cond)?);
    }
    if outcome.success() {
        let bps: Vec<String> = breakpoints(&p)?.iter().map(ToString::to_string).collect();
        println!("breakpoints: {{{}}}", bps.join(","));
    }
    Ok(outcome.success())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let reports = verify_counts(&standard_suite(), args.jobs, DEFAULT_SPACE_CAP)?;
    match args.output {
        OutputFormat::List => {
            for r in &reports {
                let expected = r.expected.as_ref().map(ToString::to_string).unwrap_or_default();
                println!(
                    "{:<10} {:<9} {:<10} count={:<6} expected={:<6} {}",
                    r.family,
                    r.params,
                    r.class,
                    r.count,
                    expected,
                    if r.matches { "ok" } else { "MISMATCH" }
                );
            }
        }
        OutputFormat::Csv => write_reports_csv(&reports, std::io::stdout())?,
        OutputFormat::Json => println!("{}", reports_to_json(&reports)),
    }
    Ok(reports.iter().all(|r| r.matches))
}
