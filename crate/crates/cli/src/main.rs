//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification returned false (the report with
//! its witness is still printed), 2 usage or input error, 3 resource
//! budget exceeded.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use regdecomp::json::{
    enumeration_csv_header, system_from_names, DecompositionJson, EnumerationJson, GraphJson,
    PartitionJson, VerifierReportJson,
};
use regdecomp::liealg::{
    construct_k1k, construct_kk, extend_partition_to_decomposition, extend_two_block,
    is_regular_decomposition, rat, rat_from_string, Rat,
};
use regdecomp::regpart::{
    build_partition_graph, check_graph_properties, enumerate_regular_partitions,
    is_regular_partition, reconstruct_from_graph, stirling_count_upper, EnumerationConfig,
    IntPartition, DEFAULT_NODE_BUDGET,
};
use regdecomp::weyl::canonicalize;
use regdecomp::{Equivalences, Error};

#[derive(Parser)]
#[command(
    name = "regdecomp",
    about = "Exact engine for closed root subsets, regular partitions and regular decompositions of sl(n+1)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Root system family: A, B, C, D, E, F or G.
    #[arg(long)]
    family: String,
    /// Rank of the system.
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a root system and print its roots and chain basis.
    Build {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Exhaustively enumerate regular partitions with closure pruning.
    Enumerate {
        #[command(flatten)]
        system: SystemArgs,
        /// Keep partitions with at least this many blocks.
        #[arg(long, default_value_t = 3)]
        min_blocks: usize,
        /// Equivalences to quotient by: comma list of renumber, sign,
        /// weyl; or none. No default — the counts differ per quotient.
        #[arg(long)]
        modulo: String,
        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Abort after this many visited search nodes.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        /// Parallel workers for the search fan-out.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Omit the class list from the JSON report.
        #[arg(long)]
        no_classes: bool,
    },
    /// Check that a partition (JSON file or -) is regular.
    VerifyPartition { input: String },
    /// Verify a decomposition (JSON file or -) and report its type.
    VerifyDecomposition { input: String },
    /// Build the labeled multigraph of a partition over the chain basis.
    Graph {
        input: String,
        /// Attach the A1–A5 and star-shape property report.
        #[arg(long)]
        check: bool,
    },
    /// Reconstruct the unique partition of a star graph (type A, m >= 3).
    Reconstruct { input: String },
    /// Build a regular decomposition from one of the constructive families.
    Construct(ConstructArgs),
    /// Canonicalize a partition under chosen equivalences.
    Canonicalize {
        input: String,
        /// Comma list of renumber, sign, weyl; or none.
        #[arg(long)]
        modulo: String,
    },
    /// The classification count for A_n: classes of (m >= 3)-regular
    /// partitions modulo renumbering and sign swap.
    Count {
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ConstructMode {
    /// The (k+1, k) family from an integer partition of n.
    #[arg(long)]
    family_k1k: bool,
    /// The (k, k) family from an integer partition of n and a shift X.
    #[arg(long)]
    family_kk: bool,
    /// Extend a regular partition (JSON file or -) to a decomposition.
    #[arg(long, value_name = "FILE")]
    extend: Option<String>,
    /// Extend a two-block partition (JSON file or -) to a decomposition.
    #[arg(long, value_name = "FILE")]
    two_block: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    mode: ConstructMode,
    /// Rank n of sl(n+1), for the matrix families.
    #[arg(long)]
    n: Option<usize>,
    /// Integer partition of n, e.g. 2,1.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    /// Shift X for the (k,k) family: coefficients over H_1..H_n as
    /// rationals, e.g. 1/2,0,-1. Defaults to zero.
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<String>>,
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("reading {path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Build { system } => {
            let rs = system_from_names(&system.family, system.rank)?;
            let roots: Vec<Vec<i64>> = rs.roots().iter().map(|r| r.coeffs().to_vec()).collect();
            let basis: Vec<Vec<i64>> = rs
                .beta_chain_basis()
                .iter()
                .map(|&i| rs.root(i).coeffs().to_vec())
                .collect();
            print_json(&serde_json::json!({
                "family": system.family.to_ascii_uppercase(),
                "rank": system.rank,
                "num_roots": rs.num_roots(),
                "beta_basis": basis,
                "roots": roots,
            }));
            Ok(0)
        }
        Command::Enumerate {
            system,
            min_blocks,
            modulo,
            format,
            node_budget,
            jobs,
            no_classes,
        } => {
            let rs = system_from_names(&system.family, system.rank)?;
            let modulo = Equivalences::parse(&modulo)?;
            let config = EnumerationConfig {
                min_blocks,
                modulo,
                node_budget,
                jobs: jobs.max(1),
            };
            let started = Instant::now();
            let report = enumerate_regular_partitions(&rs, &config)?;
            let wall = started.elapsed().as_secs_f64();
            let j = EnumerationJson::new(
                &rs,
                min_blocks,
                modulo,
                &report.classes,
                report.nodes_visited,
                wall,
                !no_classes,
            );
            match format.as_str() {
                "json" => print_json(&j),
                "csv" => {
                    println!("{}", enumeration_csv_header());
                    println!("{}", j.to_csv_row());
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown format {other:?} (expected json or csv)"
                    )))
                }
            }
            Ok(0)
        }
        Command::VerifyPartition { input } => {
            let j: PartitionJson = parse_json(&read_input(&input)?)?;
            let (rs, p) = j.to_partition()?;
            let regular = is_regular_partition(&rs, &p)?;
            print_json(&serde_json::json!({
                "family": rs.rtype().family().letter().to_string(),
                "rank": rs.rank(),
                "blocks": p.num_blocks(),
                "regular": regular,
            }));
            Ok(u8::from(!regular))
        }
        Command::VerifyDecomposition { input } => {
            let j: DecompositionJson = parse_json(&read_input(&input)?)?;
            let (rs, d) = j.to_decomposition()?;
            let report = is_regular_decomposition(&rs, &d)?;
            print_json(&VerifierReportJson::from_report(&report));
            Ok(u8::from(!report.valid))
        }
        Command::Graph { input, check } => {
            let j: PartitionJson = parse_json(&read_input(&input)?)?;
            let (rs, p) = j.to_partition()?;
            let g = build_partition_graph(&rs, &p, &rs.beta_chain_basis())?;
            let mut out = GraphJson::from_graph(&g);
            if check {
                out = out.with_properties(check_graph_properties(&g));
            }
            print_json(&out);
            Ok(0)
        }
        Command::Reconstruct { input } => {
            let j: GraphJson = parse_json(&read_input(&input)?)?;
            let g = j.to_graph()?;
            let rs = system_from_names("A", g.num_labels())?;
            let p = reconstruct_from_graph(&rs, &g)?;
            print_json(&PartitionJson::from_partition(&rs, &p));
            Ok(0)
        }
        Command::Construct(args) => {
            let d_json = run_construct(args)?;
            print_json(&d_json);
            Ok(0)
        }
        Command::Canonicalize { input, modulo } => {
            let j: PartitionJson = parse_json(&read_input(&input)?)?;
            let (rs, p) = j.to_partition()?;
            let modulo = Equivalences::parse(&modulo)?;
            let c = canonicalize(&rs, &p, modulo)?;
            print_json(&PartitionJson::from_partition(&rs, &c));
            Ok(0)
        }
        Command::Count { rank } => {
            if rank < 2 {
                return Err(Error::InvalidArgument(
                    "the count is defined for A_n with n >= 2".into(),
                ));
            }
            let count = stirling_count_upper(rank);
            let value = u64::try_from(count)
                .map(serde_json::Value::from)
                .unwrap_or_else(|_| serde_json::Value::from(count.to_string()));
            print_json(&serde_json::json!({
                "family": "A",
                "rank": rank,
                "min_blocks": 3,
                "modulo": "renumber+sign",
                "class_count": value,
            }));
            Ok(0)
        }
    }
}

fn run_construct(args: ConstructArgs) -> Result<DecompositionJson, Error> {
    let need = |opt: Option<usize>, what: &str| {
        opt.ok_or_else(|| Error::InvalidArgument(format!("--{what} is required here")))
    };
    if args.mode.family_k1k || args.mode.family_kk {
        let n = need(args.n, "n")?;
        let rs = system_from_names("A", n)?;
        let lambda = IntPartition::new(args.lambda.clone().ok_or_else(|| {
            Error::InvalidArgument("--lambda is required for the matrix families".into())
        })?)?;
        let d = if args.mode.family_k1k {
            if args.x.is_some() {
                return Err(Error::InvalidArgument(
                    "--x applies to the (k,k) family only".into(),
                ));
            }
            construct_k1k(&rs, &lambda)?
        } else {
            let x: Vec<Rat> = match &args.x {
                None => vec![rat(0); n],
                Some(parts) => parts
                    .iter()
                    .map(|s| rat_from_string(s))
                    .collect::<Result<_, _>>()?,
            };
            construct_kk(&rs, &lambda, &x)?
        };
        return DecompositionJson::from_decomposition(&rs, &d);
    }
    if let Some(path) = &args.mode.extend {
        let j: PartitionJson = parse_json(&read_input(path)?)?;
        let (rs, p) = j.to_partition()?;
        let d = extend_partition_to_decomposition(&rs, &p)?;
        return DecompositionJson::from_decomposition(&rs, &d);
    }
    if let Some(path) = &args.mode.two_block {
        let j: PartitionJson = parse_json(&read_input(path)?)?;
        let (rs, p) = j.to_partition()?;
        if p.num_blocks() != 2 {
            return Err(Error::InvalidArgument(format!(
                "--two-block expects exactly 2 blocks, got {}",
                p.num_blocks()
            )));
        }
        let d = extend_two_block(&rs, &p.blocks()[0], &p.blocks()[1])?;
        return DecompositionJson::from_decomposition(&rs, &d);
    }
    unreachable!("clap enforces one construct mode");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NodeBudgetExceeded { .. } | Error::CapacityExceeded { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}
