//! `fuzzydist` — distances and clustering for fuzzy sets over finite
//! domains.
//!
//! Thin orchestration over the `fuzzydist` library: load a dataset (a CSV
//! path or the embedded `fixture:table1` survey table), turn rows into
//! fuzzy sets, and dispatch to one of five commands. Every command is
//! deterministic given its full flag set; repeated runs produce
//! byte-identical files.
//!
//! Exit status contract: 0 success, 1 I/O or parse failure, 2 user-input
//! error, 3 self-test property failure.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzydist::{
    build_distance_matrix_parallel, cluster_report, format_significant, kmeans,
    run_suite, run_suite_with, Dataset, DistanceMatrix, FuzzySet, Metric, SuiteConfig,
    WeightVector, DEFAULT_ALPHA_LEVELS,
};

/// Pseudo-path selecting the embedded 28-country survey table.
const FIXTURE_TABLE1: &str = "fixture:table1";

#[derive(Parser)]
#[command(
    name = "fuzzydist",
    version,
    about = "Entropy-based distances, baselines, and clustering for fuzzy sets",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the distance between two named entities
    Dist(DistArgs),
    /// Write the full pairwise distance matrix
    Matrix(MatrixArgs),
    /// Cluster entities by their distance-matrix rows (seeded k-means)
    Cluster(ClusterArgs),
    /// Write membership profiles (entity, attribute, membership)
    Profiles(ProfilesArgs),
    /// Run the built-in property suites
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input dataset: a CSV path, or "fixture:table1" for the embedded table
    input: String,

    /// Min-max rescale each attribute column onto [0, 1] before analysis
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct MetricArgs {
    /// Distance to use
    #[arg(long, value_enum, default_value_t = MetricName::Entropy)]
    metric: MetricName,

    /// Minkowski order (>= 1); required by --metric minkowski, else rejected
    #[arg(long)]
    r: Option<f64>,

    /// Alpha-level count (>= 1) for --metric hausdorff, else rejected [default: 100]
    #[arg(long)]
    levels: Option<usize>,

    /// Weights file for --metric weighted, else rejected: CSV of one
    /// non-negative real per attribute, summing to 1, in column order
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricName {
    Entropy,
    Weighted,
    Minkowski,
    Hausdorff,
    S1,
    Bonissone,
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    input: InputArgs,

    /// First entity name
    a: String,

    /// Second entity name
    b: String,

    #[command(flatten)]
    metric: MetricArgs,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    metric: MetricArgs,

    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Matrix file format
    #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
    format: FileFormat,

    /// Worker threads for pair evaluation (output is identical for any count)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    metric: MetricArgs,

    /// Number of clusters
    #[arg(long, default_value_t = fuzzydist::DEFAULT_K)]
    k: usize,

    /// Seed for centroid initialization
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Iteration cap for the update loop
    #[arg(long, default_value_t = fuzzydist::DEFAULT_MAX_ITER)]
    max_iter: usize,

    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Worker threads for the matrix build (output is identical for any count)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ProfilesArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Entities to emit; all of them when none are named
    names: Vec<String>,

    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    /// Iteration count for the randomized properties
    #[arg(long, default_value_t = 10_000)]
    triples: usize,

    /// Test hook: run the suite against a deliberately broken metric
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

/// A command failure carrying its exit status.
enum Failure {
    /// I/O or parse failure → status 1.
    Load(String),
    /// User-input error (names, flag combinations, ranges) → status 2.
    User(String),
    /// Self-test property failure → status 3.
    Selftest(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Load(_) => 1,
            Failure::User(_) => 2,
            Failure::Selftest(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Load(m) | Failure::User(m) | Failure::Selftest(m) => m,
        }
    }
}

fn main() -> ExitCode {
    // Clap itself exits with status 2 on usage errors, matching the
    // user-input slot of the contract.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Profiles(args) => cmd_profiles(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

/// Loads the input and guarantees membership grades on return: either the
/// caller asked for normalization, the data was already declared as
/// memberships (the fixture), or raw values validate as grades.
fn load_dataset(input: &InputArgs) -> Result<Dataset, Failure> {
    let data = if input.input == FIXTURE_TABLE1 {
        Dataset::table1()
    } else {
        Dataset::from_csv_path(&input.input, true)
            .map_err(|e| Failure::Load(e.to_string()))?
    };
    if input.normalize {
        Ok(data.normalize_minmax())
    } else if data.has_memberships() {
        Ok(data)
    } else {
        data.into_memberships().map_err(|e| {
            Failure::User(format!(
                "{e}; pass --normalize to rescale raw columns onto [0, 1]"
            ))
        })
    }
}

fn load_sets(input: &InputArgs) -> Result<Vec<(String, FuzzySet)>, Failure> {
    load_dataset(input)?
        .to_fuzzy_sets()
        .map_err(|e| Failure::Load(e.to_string()))
}

/// Resolves the metric flags, enforcing that parameters are present iff
/// the chosen metric uses them.
fn resolve_metric(args: &MetricArgs, n_attributes: usize) -> Result<Metric, Failure> {
    if args.r.is_some() && args.metric != MetricName::Minkowski {
        return Err(Failure::User("--r applies only to --metric minkowski".into()));
    }
    if args.levels.is_some() && args.metric != MetricName::Hausdorff {
        return Err(Failure::User("--levels applies only to --metric hausdorff".into()));
    }
    if args.weights.is_some() && args.metric != MetricName::Weighted {
        return Err(Failure::User("--weights applies only to --metric weighted".into()));
    }
    match args.metric {
        MetricName::Entropy => Ok(Metric::Entropy),
        MetricName::Weighted => {
            let path = args.weights.as_ref().ok_or_else(|| {
                Failure::User("--metric weighted requires --weights <path>".into())
            })?;
            Ok(Metric::WeightedEntropy(load_weights(path, n_attributes)?))
        }
        MetricName::Minkowski => {
            let r = args.r.ok_or_else(|| {
                Failure::User("--metric minkowski requires --r <order>".into())
            })?;
            if !r.is_finite() || r < 1.0 {
                return Err(Failure::User(format!(
                    "--r must be a finite order >= 1, got {r}"
                )));
            }
            Ok(Metric::Minkowski { r })
        }
        MetricName::Hausdorff => {
            let levels = args.levels.unwrap_or(DEFAULT_ALPHA_LEVELS);
            if levels == 0 {
                return Err(Failure::User("--levels must be at least 1".into()));
            }
            Ok(Metric::Hausdorff { levels })
        }
        MetricName::S1 => Ok(Metric::S1),
        MetricName::Bonissone => Ok(Metric::Bonissone),
    }
}

/// Reads a weights file: comma- or line-separated reals, one per attribute.
fn load_weights(path: &Path, n_attributes: usize) -> Result<WeightVector, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Load(format!("cannot read {}: {e}", path.display())))?;
    let mut weights = Vec::new();
    for token in text.split([',', '\n', '\r']).map(str::trim).filter(|t| !t.is_empty()) {
        let value: f64 = token.parse().map_err(|_| {
            Failure::Load(format!(
                "{}: cannot parse {token:?} as a number",
                path.display()
            ))
        })?;
        weights.push(value);
    }
    if weights.len() != n_attributes {
        return Err(Failure::User(format!(
            "{}: expected {n_attributes} weights (one per attribute), got {}",
            path.display(),
            weights.len()
        )));
    }
    WeightVector::new(weights).map_err(|e| Failure::User(e.to_string()))
}

fn find_entity<'a>(
    sets: &'a [(String, FuzzySet)],
    name: &str,
) -> Result<&'a FuzzySet, Failure> {
    sets.iter()
        .find(|(label, _)| label == name)
        .map(|(_, set)| set)
        .ok_or_else(|| Failure::User(format!("unknown entity {name:?}")))
}

fn cmd_dist(args: DistArgs) -> Result<(), Failure> {
    let sets = load_sets(&args.input)?;
    let n_attributes = sets[0].1.len();
    let metric = resolve_metric(&args.metric, n_attributes)?;
    let a = find_entity(&sets, &args.a)?;
    let b = find_entity(&sets, &args.b)?;
    let d = metric.distance(a, b).map_err(|e| Failure::User(e.to_string()))?;
    println!("{d:.6}");
    Ok(())
}

fn build_matrix(
    sets: &[(String, FuzzySet)],
    metric: &Metric,
    threads: usize,
) -> Result<DistanceMatrix, Failure> {
    build_distance_matrix_parallel(sets, metric, threads)
        .map_err(|e| Failure::User(e.to_string()))
}

fn create_out_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Load(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .map_err(|e| Failure::Load(format!("cannot write {}: {e}", path.display())))
}

/// Serializes `value` as pretty JSON with a trailing newline.
fn to_json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Failure::Load(format!("cannot serialize: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn cmd_matrix(args: MatrixArgs) -> Result<(), Failure> {
    let sets = load_sets(&args.input)?;
    let n_attributes = sets[0].1.len();
    let metric = resolve_metric(&args.metric, n_attributes)?;
    let matrix = build_matrix(&sets, &metric, args.threads)?;

    create_out_dir(&args.out)?;
    let path = match args.format {
        FileFormat::Csv => {
            let path = args.out.join("matrix.csv");
            let mut bytes = Vec::new();
            matrix
                .write_csv(&mut bytes)
                .map_err(|e| Failure::Load(e.to_string()))?;
            write_file(&path, &bytes)?;
            path
        }
        FileFormat::Json => {
            let path = args.out.join("matrix.json");
            write_file(&path, &to_json_bytes(&matrix)?)?;
            path
        }
    };
    println!("wrote {} ({} entities, metric {})", path.display(), matrix.len(), metric);
    Ok(())
}

fn cmd_cluster(args: ClusterArgs) -> Result<(), Failure> {
    let sets = load_sets(&args.input)?;
    let n_attributes = sets[0].1.len();
    let metric = resolve_metric(&args.metric, n_attributes)?;
    let matrix = build_matrix(&sets, &metric, args.threads)?;

    let model = kmeans(&matrix, args.k, args.seed, args.max_iter)
        .map_err(|e| Failure::User(e.to_string()))?;
    let report = cluster_report(&model, matrix.labels())
        .map_err(|e| Failure::User(e.to_string()))?;

    create_out_dir(&args.out)?;

    #[derive(serde::Serialize)]
    struct ClustersFile<'a> {
        model: &'a fuzzydist::ClusterModel,
        report: &'a fuzzydist::ClusterReport,
    }
    let json_path = args.out.join("clusters.json");
    write_file(&json_path, &to_json_bytes(&ClustersFile { model: &model, report: &report })?)?;

    // One row per entity, in input order: the data behind a
    // cluster-colored scatter of distance-to-centroid.
    let scatter_path = args.out.join("cluster_scatter.csv");
    let mut scatter = Vec::new();
    writeln!(scatter, "cluster_index,entity,distance_to_centroid")
        .expect("writing to a Vec cannot fail");
    for (i, label) in matrix.labels().iter().enumerate() {
        writeln!(
            scatter,
            "{},{},{}",
            model.assignments[i],
            escape_csv_field(label),
            format_significant(model.point_distances[i], 12)
        )
        .expect("writing to a Vec cannot fail");
    }
    write_file(&scatter_path, &scatter)?;

    println!(
        "wrote {} and {} (k={}, seed={}, {} iterations)",
        json_path.display(),
        scatter_path.display(),
        model.k,
        model.seed,
        model.iterations
    );
    Ok(())
}

/// Quotes a CSV field when it contains a delimiter, quote, or line break.
fn escape_csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn cmd_profiles(args: ProfilesArgs) -> Result<(), Failure> {
    let data = load_dataset(&args.input)?;

    // All-or-nothing name resolution: reject the whole request before
    // writing anything.
    let indices: Vec<usize> = if args.names.is_empty() {
        (0..data.n_entities()).collect()
    } else {
        let unknown: Vec<&str> = args
            .names
            .iter()
            .filter(|n| data.entity_index(n).is_none())
            .map(String::as_str)
            .collect();
        if !unknown.is_empty() {
            return Err(Failure::User(format!("unknown entities: {}", unknown.join(", "))));
        }
        args.names.iter().map(|n| data.entity_index(n).expect("checked above")).collect()
    };

    let rows = data.normalized().expect("load_dataset guarantees memberships");
    create_out_dir(&args.out)?;
    let path = args.out.join("profiles.csv");
    let mut out = Vec::new();
    writeln!(out, "entity,attribute,membership").expect("writing to a Vec cannot fail");
    for &i in &indices {
        for (j, attribute) in data.attribute_labels().iter().enumerate() {
            writeln!(
                out,
                "{},{},{}",
                escape_csv_field(&data.entity_labels()[i]),
                escape_csv_field(attribute),
                format_significant(rows[i][j], 12)
            )
            .expect("writing to a Vec cannot fail");
        }
    }
    write_file(&path, &out)?;

    println!(
        "wrote {} ({} entities x {} attributes)",
        path.display(),
        indices.len(),
        data.n_attributes()
    );
    Ok(())
}

fn cmd_selftest(args: SelftestArgs) -> Result<(), Failure> {
    if args.triples == 0 {
        return Err(Failure::User("--triples must be at least 1".into()));
    }
    let config = SuiteConfig { triples: args.triples, ..SuiteConfig::default() };

    let report = match args.inject_fault.as_deref() {
        None => run_suite(&config),
        // Negative-path hook: a wrapper that computes entropy with
        // base-10 logarithms and biases the result when the first
        // argument has the larger cardinality, breaking the unit scale
        // and symmetry at once. The suite must catch it.
        Some("base10-asym") => run_suite_with(&config, &|a, b| {
            let diff = a.symmetric_difference(b)?;
            let n = diff.len() as f64;
            let mean = diff
                .membership()
                .iter()
                .map(|&p| {
                    if p == 0.0 || p == 1.0 {
                        0.0
                    } else {
                        -p * p.log10() - (1.0 - p) * (1.0 - p).log10()
                    }
                })
                .sum::<f64>()
                / n;
            let bias = if fuzzydist::cardinality(a) > fuzzydist::cardinality(b) {
                1e-3
            } else {
                0.0
            };
            Ok(mean + bias)
        }),
        Some(other) => {
            return Err(Failure::User(format!("unknown fault {other:?}")));
        }
    };

    for outcome in &report.outcomes {
        if outcome.passed {
            println!("PASS {} ({})", outcome.name, outcome.detail);
        } else {
            println!("FAIL {}: {}", outcome.name, outcome.detail);
        }
    }
    match report.first_failure() {
        None => {
            println!("all {} properties passed", report.outcomes.len());
            Ok(())
        }
        Some(first) => {
            println!("first counterexample — {}: {}", first.name, first.detail);
            Err(Failure::Selftest(format!("property failed: {}", first.name)))
        }
    }
}
