use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sarc::permgroup::DEFAULT_SEED;
use sarc::subgroups::DEFAULT_ELEMENT_CAP;
use sarc_cli::commands::{self, DigraphArgs, GeometryArgs, Options};
use sarc_cli::repro::{run_repro, REGISTRY};
use sarc_cli::{Outcome, Status};

const GRAMMAR: &str = "\
Group expressions:
  expr := 'wr' '(' expr ',' INT ')'          A wr S_k on k blocks
        | 'x' '(' expr { ',' expr } ')'      direct product, intransitive
        | NAME '(' INT { ',' INT } ')'
  S(n) A(n) C(n) D(n)   symmetric, alternating, cyclic, dihedral (n >= 3) on n points
  MC(n,r,m)             x -> x+1, x -> r*x on Z/n; needs gcd(r,n) = 1 and r^m = 1 mod n
  Sp(d,q) GO-(d,q)      on the q^d - 1 nonzero vectors; d even, GO- needs q odd
  PSp(d,q)              on the (q^d - 1)/(q - 1) projective points
  PSL2(q) PGL2(q)       on the q + 1 points of the projective line
Spaces between tokens are ignored; errors report a byte offset.
Permutations use 1-based cycle notation, e.g. (1,2,3)(4,5); several
generators are separated by ';'.

Exit status: 0 match, 1 mismatch, 2 usage or invalid input,
3 resource limit or uncertified search.";

#[derive(Parser)]
#[command(name = "sarc", version, about = "Permutation group, coset digraph and factorisation toolkit", after_long_help = GRAMMAR)]
struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: all cores for searches, 1 otherwise)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest permutation degree built
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_degree: usize,
    /// Largest group order enumerated element by element
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_order: u64,
    /// Smallest subgroup order reported
    #[arg(long, global = true)]
    min_order: Option<u64>,
    /// Only count factorisations with conjugate factors
    #[arg(long, global = true)]
    require_conjugate: bool,
    /// Write the JSON report here instead of standard output
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Order, base and degree of a group
    Order { expr: String },
    /// Conjugacy classes of subgroups
    Subgroups { expr: String },
    /// Homogeneous factorisations G = HK with H and K isomorphic
    Homfac {
        expr: String,
        /// Only factors whose order is divisible by this
        #[arg(long)]
        order_divisor: Option<u64>,
    },
    /// s-arc transitivity of Cos(G, H, g)
    DigraphAnalyze {
        expr: String,
        /// Generators of H
        #[arg(long)]
        stabiliser: String,
        /// The connecting element g
        #[arg(long)]
        connector: String,
        /// Largest s tried
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        /// Exponent in the valency p-part test
        #[arg(long, default_value_t = 2)]
        p_part_s: u32,
    },
    /// Whether each orbital of a transitive group is self-paired
    SelfpairedScan { expr: String },
    /// Divisibility and primitive-prime-divisor audit of the factorisation tables
    TableAudit,
    /// Whether an isometry reverses a pair of symplectic subspaces
    Geometry {
        /// Half the dimension of the space
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// File with a basis of W1, one row per line
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
    },
    /// A named reproduction run
    Repro {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn dispatch(cli: &Cli, opts: &Options) -> sarc::Result<Outcome> {
    match &cli.command {
        Command::Order { expr } => commands::order(expr, opts),
        Command::Subgroups { expr } => commands::subgroups(expr, opts),
        Command::Homfac { expr, order_divisor } => commands::homfac(expr, *order_divisor, opts),
        Command::DigraphAnalyze { expr, stabiliser, connector, max_s, p_part_s } => {
            let args = DigraphArgs { stabiliser, connector, max_s: *max_s, p_part_s: *p_part_s };
            commands::digraph_analyze(expr, &args, opts)
        }
        Command::SelfpairedScan { expr } => commands::selfpaired_scan(expr, opts),
        Command::TableAudit => commands::table_audit(),
        Command::Geometry { n, q, w1, w2 } => {
            commands::geometry(&GeometryArgs { n: *n, q: *q, w1: w1.as_deref(), w2: w2.as_deref() }, opts)
        }
        Command::Repro { list: true, .. } => {
            let names: Vec<_> = REGISTRY
                .iter()
                .map(|e| serde_json::json!({ "name": e.name, "description": e.description }))
                .collect();
            let summary = REGISTRY.iter().map(|e| format!("{:20} {}", e.name, e.description)).collect::<Vec<_>>();
            Ok(Outcome::new(Status::Match, serde_json::json!(names), summary.join("\n")))
        }
        Command::Repro { name, .. } => run_repro(name.as_deref().unwrap_or_default(), opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        seed: cli.seed,
        threads: cli.threads,
        cap_degree: cli.cap_degree,
        cap_order: cli.cap_order,
        min_order: cli.min_order,
        require_conjugate: cli.require_conjugate,
    };
    let outcome = dispatch(&cli, &opts).unwrap_or_else(|e| Outcome::error(&e));
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("serialisable"),
        Format::Text => outcome.summary.clone(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, body + "\n") {
                eprintln!("cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => println!("{body}"),
    }
    if matches!(cli.format, Format::Json) || cli.out.is_some() {
        eprintln!("{}", outcome.summary);
    }
    ExitCode::from(outcome.status.code() as u8)
}
