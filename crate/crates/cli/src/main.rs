use std::io::{self, BufRead, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use separable::bijections::{big_phi, eta, eta_inv, l_inv, l_op, phi, phi_inv, psi, psi_inv, theta, theta_inv};
use separable::enumeration::{distribution, gen_avoiders, gen_disk_trees, DistributionTable, StatMatrix, StatSource};
use separable::perm::{parse_patterns, separable_patterns};
use separable::verify::{self, CHECKS};
use separable::{DiSkTree, Error, NodeRef, Permutation};

#[derive(Parser)]
#[command(name = "separable", version, about = "Separable permutations and di-sk trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Trees,
    Perms,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    Eta,
    EtaInv,
    L,
    LInv,
    Phi,
    PhiInv,
    #[value(name = "Phi")]
    BigPhi,
    Theta,
    ThetaInv,
    Psi,
    PsiInv,
}

#[derive(Subcommand)]
enum Command {
    /// List every object of a class, one per line.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Permutation length; trees have n - 1 nodes.
        #[arg(long)]
        n: usize,
        /// Patterns to avoid, e.g. "2413,3142" (permutations only).
        #[arg(long)]
        patterns: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print all statistics of one permutation or tree.
    Stats {
        #[arg(long, conflicts_with = "tree", required_unless_present = "tree")]
        perm: Option<String>,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a bijection to one object, or to each line of a file.
    Map {
        #[arg(long, value_enum)]
        name: MapName,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        input: Option<String>,
        /// File with one object per line; "-" reads standard input.
        #[arg(long)]
        file: Option<String>,
        /// Inorder position of the node for l and l-inv.
        #[arg(long)]
        node: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Joint distribution of two integer statistics as a matrix.
    Table {
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "trees")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification checks.
    Verify {
        /// "all" or a check id.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotApplicable { .. } | Error::NotSeparable(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { kind, n, patterns, format } => enumerate(kind, n, patterns.as_deref(), format),
        Command::Stats { perm, tree, format } => stats(perm.as_deref(), tree.as_deref(), format),
        Command::Map { name, input, file, node, iterations, format } => {
            map(name, input.as_deref(), file.as_deref(), node, iterations, format)
        }
        Command::Table { rows, cols, n, kind, format } => table(&rows, &cols, n, kind, format),
        Command::Verify { suite, max_n, jobs, format, list } => {
            if list {
                for c in CHECKS {
                    println!("{:<26} {:<11} n <= {:<2} {}", c.id, format!("{:?}", c.scope).to_lowercase(), c.default_n, c.summary);
                }
                Ok(ExitCode::SUCCESS)
            } else {
                run_verify(&suite, max_n, jobs, format)
            }
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn enumerate(kind: Kind, n: usize, patterns: Option<&str>, format: Format) -> CliResult<ExitCode> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let items: Vec<(String, Value)> = match kind {
        Kind::Trees => {
            if patterns.is_some() {
                return Err(Failure::Usage("--patterns applies to permutations only".into()));
            }
            gen_disk_trees(n - 1)
                .map(|t| (t.to_string(), serde_json::to_value(&t).expect("json")))
                .collect()
        }
        Kind::Perms => {
            let patterns = match patterns {
                Some(s) => parse_patterns(s)?,
                None => separable_patterns().to_vec(),
            };
            let listed: Vec<(String, Value)> = gen_avoiders(n, &patterns)?
                .map(|p| (p.to_string(), json!(p.values())))
                .collect();
            listed
        }
    };
    match format {
        Format::Text => items.iter().for_each(|(s, _)| println!("{s}")),
        Format::Json => print_json(&Value::Array(items.into_iter().map(|(_, v)| v).collect())),
        Format::Csv => {
            println!("object");
            items.iter().for_each(|(s, _)| println!("{s}"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn stats(perm: Option<&str>, tree: Option<&str>, format: Format) -> CliResult<ExitCode> {
    let rows: Vec<(String, Value, String)> = if let Some(p) = perm {
        let p = parse_perm(p)?;
        Permutation::STAT_NAMES
            .iter()
            .map(|&name| {
                let v = p.stat_value(name).expect("listed statistic");
                (name.to_string(), serde_json::to_value(&v).expect("json"), v.to_string())
            })
            .collect()
    } else {
        let t = parse_tree(tree.expect("clap requires one of --perm, --tree"))?;
        DiSkTree::STAT_NAMES
            .iter()
            .map(|&name| {
                let v = t.stat(name).expect("listed statistic");
                (name.to_string(), json!(v), v.to_string())
            })
            .collect()
    };
    match format {
        Format::Text => rows.iter().for_each(|(k, _, s)| println!("{k}={s}")),
        Format::Json => print_json(&Value::Object(rows.into_iter().map(|(k, v, _)| (k, v)).collect())),
        Format::Csv => {
            println!("statistic,value");
            rows.iter().for_each(|(k, _, s)| println!("{k},{s}"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_perm(s: &str) -> CliResult<Permutation> {
    let s = s.trim();
    if s.starts_with('[') {
        serde_json::from_str(s).map_err(|e| Failure::Usage(format!("invalid permutation: {e}")))
    } else {
        Ok(s.parse()?)
    }
}

fn parse_tree(s: &str) -> CliResult<DiSkTree> {
    let s = s.trim();
    if s.starts_with('{') || s == "null" {
        serde_json::from_str(s).map_err(|e| Failure::Usage(format!("invalid tree: {e}")))
    } else {
        Ok(s.parse()?)
    }
}

enum Object {
    Perm(Permutation),
    Tree(DiSkTree),
}

impl Object {
    fn text(&self) -> String {
        match self {
            Object::Perm(p) => p.to_string(),
            Object::Tree(t) => t.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Object::Perm(p) => json!(p.values()),
            Object::Tree(t) => serde_json::to_value(t).expect("json"),
        }
    }
}

fn apply_map(name: MapName, input: &str, node: Option<usize>, iterations: usize) -> CliResult<Object> {
    let needs_node = || node.map(NodeRef).ok_or_else(|| Failure::Usage("--node is required for l and l-inv".into()));
    let on_perm = matches!(name, MapName::Eta | MapName::BigPhi);
    let mut current = if on_perm { Object::Perm(parse_perm(input)?) } else { Object::Tree(parse_tree(input)?) };
    for _ in 0..iterations {
        current = match (name, current) {
            (MapName::Eta, Object::Perm(p)) => Object::Tree(eta(&p)?),
            (MapName::BigPhi, Object::Perm(p)) => Object::Perm(big_phi(&p)?),
            (MapName::EtaInv, Object::Tree(t)) => Object::Perm(eta_inv(&t)),
            (MapName::L, Object::Tree(t)) => Object::Tree(l_op(needs_node()?, &t)?),
            (MapName::LInv, Object::Tree(t)) => Object::Tree(l_inv(needs_node()?, &t)?),
            (MapName::Phi, Object::Tree(t)) => Object::Tree(phi(&t)?),
            (MapName::PhiInv, Object::Tree(t)) => Object::Tree(phi_inv(&t)?),
            (MapName::Theta, Object::Tree(t)) => Object::Tree(theta(&t)),
            (MapName::ThetaInv, Object::Tree(t)) => Object::Tree(theta_inv(&t)),
            (MapName::Psi, Object::Tree(t)) => Object::Tree(psi(&t)?),
            (MapName::PsiInv, Object::Tree(t)) => Object::Tree(psi_inv(&t)?),
            _ => return Err(Failure::Usage("eta and eta-inv change the object type; use --iterations 1".into())),
        };
    }
    Ok(current)
}

fn map(
    name: MapName,
    input: Option<&str>,
    file: Option<&str>,
    node: Option<usize>,
    iterations: usize,
    format: Format,
) -> CliResult<ExitCode> {
    let lines: Vec<String> = match (input, file) {
        (Some(s), _) => vec![s.to_string()],
        (None, Some("-")) => io::stdin()
            .lock()
            .lines()
            .collect::<io::Result<_>>()
            .map_err(|e| Failure::Usage(e.to_string()))?,
        (None, Some(path)) => {
            let mut text = String::new();
            std::fs::File::open(path)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            text.lines().map(str::to_string).collect()
        }
        (None, None) => unreachable!("clap requires --input or --file"),
    };
    let mut outputs = Vec::new();
    for line in lines.iter().filter(|l| !l.trim().is_empty()) {
        outputs.push(apply_map(name, line, node, iterations)?);
    }
    match format {
        Format::Json if input.is_some() => print_json(&outputs[0].json()),
        Format::Json => print_json(&Value::Array(outputs.iter().map(Object::json).collect())),
        Format::Text | Format::Csv => outputs.iter().for_each(|o| println!("{}", o.text())),
    }
    Ok(ExitCode::SUCCESS)
}

fn table(rows: &str, cols: &str, n: usize, kind: Kind, format: Format) -> CliResult<ExitCode> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let stats = [rows, cols];
    let (dist, offset): (DistributionTable, usize) = match kind {
        Kind::Trees => (distribution(gen_disk_trees(n - 1), &stats)?, 0),
        Kind::Perms => (distribution(separable::enumeration::separable(n), &stats)?, 1),
    };
    let matrix = StatMatrix::from_table(&dist, n, offset)?;
    match format {
        Format::Text => print!("{}", matrix.to_text()),
        Format::Csv => print!("{}", matrix.to_csv()),
        Format::Json => print_json(&serde_json::to_value(&matrix).expect("json")),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(suite: &str, max_n: Option<usize>, jobs: usize, format: Format) -> CliResult<ExitCode> {
    let report = if suite == "all" {
        verify::run_suite(&verify::all_ids(), max_n, jobs)?
    } else {
        let result = verify::check(suite, max_n)?;
        verify::SuiteReport { results: vec![result], skipped: vec![] }
    };
    match format {
        Format::Json => print_json(&report.to_json()),
        Format::Text | Format::Csv => print!("{}", report.to_text()),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}
