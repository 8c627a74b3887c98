use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cmorder::afunction::{a_value, ANormalization, AContext};
use cmorder::blocks::{
    check_ce_stable_param, cm_blocks_jclass, cm_blocks_kappa, cm_blocks_regular, glen_blocks, BlockPartition,
};
use cmorder::orders::{comb_order, order_poset};
use cmorder::params::{
    alcove_rep, classify_theta_l2, git_walls, h_to_mr, Alcove, Classification, ParamH, ParamTheta, Sign,
};
use cmorder::rational::parse_list;
use cmorder::symbols::{kappa, kappa_compare, min_size_all, n_value, shifted_symbol};
use cmorder::tau::{ell_core, j_heart, tau, tau_inverse, Charge, ResidueSet};
use cmorder::verify::{verify, Grid, SUITES};
use cmorder::{enumerate_multipartitions, Error, Multipartition, Partition, Permutation, Rational};

#[derive(Parser)]
#[command(name = "cmorder", version, about = "Symbols, κ-sequences, τ and Calogero–Moser block orders")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest n for verification grids.
    #[arg(long = "max-n", global = true)]
    max_n: Option<u32>,
    /// Level ℓ.
    #[arg(long = "l", global = true)]
    level: Option<usize>,
    /// The divisor e of ℓ for G(ℓ,e,n).
    #[arg(long, global = true)]
    e: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SymbolArgs {
    #[arg(long)]
    m: String,
    #[arg(long)]
    s: i64,
    #[arg(long)]
    lambda: String,
}

#[derive(Args)]
struct AlcoveArgs {
    /// Parameter θ (level 2 only).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Alcove charge.
    #[arg(long = "s", allow_hyphen_values = true)]
    charge: Option<String>,
    /// Alcove permutation, images of 1..ℓ.
    #[arg(long)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Shifted m-symbol of a multipartition.
    Symbol(SymbolArgs),
    /// κ-sequence of a multipartition.
    Kappa(SymbolArgs),
    /// The N-value.
    Nvalue(SymbolArgs),
    /// Dominance comparison of two κ-sequences.
    Kcompare {
        #[arg(long)]
        m: String,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The partition τ_s(λ).
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        lambda: String,
    },
    /// Charge and multipartition with τ_s(λ) = ρ.
    Tauinv {
        #[arg(long)]
        rho: String,
    },
    /// The ℓ-core attached to a charge.
    Core {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// J-heart of a partition.
    Jheart {
        #[arg(long)]
        rho: String,
        #[arg(long, default_value = "")]
        j: String,
    },
    /// Alcove or wall containing a level-2 parameter θ.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// GIT walls through a parameter h.
    Walls {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Representative parameter of an alcove.
    Alcoverep {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
    },
    /// Compare two multipartitions in ◁_θ.
    Order {
        #[command(flatten)]
        at: AlcoveArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Hasse diagram of ◁_θ on P(ℓ, n).
    Hasse {
        #[command(flatten)]
        at: AlcoveArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The a-function.
    Afn {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: Option<u32>,
        /// Symbol size fixing the additive normalization.
        #[arg(long = "s", default_value_t = 4)]
        size: i64,
        /// Use the bare valuation (a(∅) = 0).
        #[arg(long, conflicts_with = "size")]
        intrinsic: bool,
    },
    /// Calogero–Moser partition of P(ℓ, n).
    Blocks {
        #[arg(long)]
        n: u32,
        /// m-parameter: blocks are the fibers of κ.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Symbol size (default: smallest admissible).
        #[arg(long)]
        s: Option<i64>,
        /// Charge for J-class blocks.
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<String>,
        /// Residues J for J-class blocks.
        #[arg(long)]
        j: Option<String>,
    },
    /// Calogero–Moser partition of Irr G(ℓ,e,n).
    #[command(name = "blocks-e")]
    BlocksE {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<String>,
        #[arg(long)]
        j: Option<String>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure { code, message: format!("{}: {e}", e.name()) }
    }
}

type Outcome = Result<(String, Value), Failure>;

fn mp(s: &str) -> Result<Multipartition, Failure> {
    Ok(Multipartition::parse_json(s)?)
}

fn rationals(s: &str) -> Result<Vec<Rational>, Failure> {
    Ok(parse_list(s)?)
}

fn partition(s: &str) -> Result<Partition, Failure> {
    serde_json::from_str(s).map_err(|e| Failure { code: 2, message: format!("Parse: {e}") })
}

fn need_level(cli: &Cli) -> Result<usize, Failure> {
    cli.level.ok_or_else(|| Failure { code: 2, message: "missing --l".into() })
}

fn check_level(cli: &Cli, got: usize) -> Result<(), Failure> {
    match cli.level {
        Some(l) if l != got => Err(Error::LevelMismatch { expected: l, got }.into()),
        _ => Ok(()),
    }
}

fn alcove(cli: &Cli, at: &AlcoveArgs) -> Result<Alcove, Failure> {
    if let Some(theta) = &at.theta {
        let theta = ParamTheta::parse(theta)?;
        check_level(cli, theta.level())?;
        return match classify_theta_l2(&theta)? {
            Classification::Alcove { alcove, .. } => Ok(alcove),
            _ => Err(Error::OnWall.into()),
        };
    }
    let (Some(s), Some(w), Some(sign)) = (&at.charge, &at.w, &at.sign) else {
        return Err(Failure { code: 2, message: "give --theta, or --s, --w and --sign".into() });
    };
    let s = Charge::parse(s)?;
    check_level(cli, s.level())?;
    Ok(Alcove::new(s, Permutation::parse(w)?, sign.parse()?)?)
}

fn blocks_json(b: &BlockPartition) -> Value {
    json!({ "provenance": b.provenance, "classes": b.labeled_classes() })
}

fn blocks_text(b: &BlockPartition) -> String {
    b.labeled_classes()
        .iter()
        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Symbol(a) => {
            let lambda = mp(&a.lambda)?;
            check_level(cli, lambda.level())?;
            let sym = shifted_symbol(&lambda, &rationals(&a.m)?, a.s)?;
            let text = sym
                .rows
                .iter()
                .map(|r| cmorder::rational::format_list(r))
                .collect::<Vec<_>>()
                .join("\n");
            Ok((text, serde_json::to_value(&sym).unwrap()))
        }
        Command::Kappa(a) => {
            let lambda = mp(&a.lambda)?;
            check_level(cli, lambda.level())?;
            let k = kappa(&lambda, &rationals(&a.m)?, a.s)?;
            Ok((k.to_string(), serde_json::to_value(&k).unwrap()))
        }
        Command::Nvalue(a) => {
            let lambda = mp(&a.lambda)?;
            check_level(cli, lambda.level())?;
            let v = n_value(&lambda, &rationals(&a.m)?, a.s)?;
            Ok((v.to_string(), json!(v)))
        }
        Command::Kcompare { m, s, a, b } => {
            let v = kappa_compare(&mp(a)?, &mp(b)?, &rationals(m)?, *s)?;
            Ok((v.to_string(), json!(v.to_string())))
        }
        Command::Tau { s, lambda } => {
            let s = Charge::parse(s)?;
            let rho = tau(&s, &mp(lambda)?)?;
            Ok((rho.to_string(), json!(rho)))
        }
        Command::Tauinv { rho } => {
            let (s, lambda) = tau_inverse(need_level(cli)?, &partition(rho)?);
            Ok((format!("{s} {lambda}"), json!({ "s": s, "lambda": lambda })))
        }
        Command::Core { s } => {
            let s = Charge::parse(s)?;
            check_level(cli, s.level())?;
            let core = ell_core(&s)?;
            Ok((core.to_string(), json!(core)))
        }
        Command::Jheart { rho, j } => {
            let j = ResidueSet::parse(need_level(cli)?, j)?;
            let heart = j_heart(&partition(rho)?, &j);
            Ok((heart.to_string(), json!(heart)))
        }
        Command::Classify { theta } => {
            let theta = ParamTheta::parse(theta)?;
            check_level(cli, theta.level())?;
            let c = classify_theta_l2(&theta)?;
            let text = match &c {
                Classification::Alcove { index, alcove } => format!("A_{index} = {alcove}"),
                Classification::Wall { d, sign } => format!("wall d={d} ({sign})"),
                Classification::Degenerate => "degenerate (h = 0)".to_string(),
            };
            Ok((text, serde_json::to_value(&c).unwrap()))
        }
        Command::Walls { n, h } => {
            let h = ParamH::parse(h)?;
            check_level(cli, h.level())?;
            let walls = git_walls(&h, *n);
            let text = if walls.is_empty() {
                "regular".to_string()
            } else {
                walls.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            };
            Ok((text, json!({ "regular": walls.is_empty(), "walls": walls })))
        }
        Command::Alcoverep { s, w, sign } => {
            let s = Charge::parse(s)?;
            check_level(cli, s.level())?;
            let sign: Sign = sign.parse()?;
            let a = Alcove::new(s, Permutation::parse(w)?, sign)?;
            let theta = alcove_rep(&a);
            Ok((theta.to_string(), json!(theta)))
        }
        Command::Order { at, a, b } => {
            let al = alcove(cli, at)?;
            let v = comb_order(&al, &mp(a)?, &mp(b)?)?;
            Ok((v.to_string(), json!({ "alcove": al, "verdict": v.to_string() })))
        }
        Command::Hasse { at, n, format } => {
            let al = alcove(cli, at)?;
            let p = order_poset(&al, *n)?;
            let covers = p.hasse()?;
            let text = match format {
                Format::Dot => p.to_dot()?.trim_end().to_string(),
                Format::Json => serde_json::to_string(&json!({ "elements": p.elements(), "covers": covers })).unwrap(),
                Format::Text => covers
                    .iter()
                    .map(|&(i, j)| format!("{} < {}", p.elements()[i], p.elements()[j]))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok((text, json!({ "alcove": al, "elements": p.elements(), "covers": covers })))
        }
        Command::Afn { m, r, lambda, n, size, intrinsic } => {
            let lambda = mp(lambda)?;
            check_level(cli, lambda.level())?;
            if let Some(n) = n {
                if lambda.weight() != *n {
                    return Err(Error::Invalid(format!("{lambda} has weight {}, not {n}", lambda.weight())).into());
                }
            }
            let r: Rational = r.parse()?;
            let norm = if *intrinsic { ANormalization::Intrinsic } else { ANormalization::SymbolSize(*size) };
            let v = a_value(&lambda, &AContext::new(rationals(m)?, r, norm)?)?;
            Ok((v.to_string(), json!(v)))
        }
        Command::Blocks { n, m, s, charge, j } => {
            let b = match (m, charge) {
                (Some(m), None) => {
                    let m = rationals(m)?;
                    check_level(cli, m.len())?;
                    let size = match s {
                        Some(s) => *s,
                        None => min_size_all(&enumerate_multipartitions(m.len(), *n), &m),
                    };
                    cm_blocks_kappa(m.len(), *n, &m, size)?
                }
                (None, Some(c)) => {
                    let c = Charge::parse(c)?;
                    check_level(cli, c.level())?;
                    let j = ResidueSet::parse(c.level(), j.as_deref().unwrap_or(""))?;
                    cm_blocks_jclass(c.level(), *n, &c, &j)?
                }
                (None, None) => cm_blocks_regular(need_level(cli)?, *n),
                (Some(_), Some(_)) => {
                    return Err(Failure { code: 2, message: "give either --m or --charge".into() })
                }
            };
            Ok((blocks_text(&b), blocks_json(&b)))
        }
        Command::BlocksE { n, h, charge, j } => {
            let h = ParamH::parse(h)?;
            let l = h.level();
            check_level(cli, l)?;
            let e = cli.e.ok_or_else(|| Failure { code: 2, message: "missing --e".into() })?;
            check_ce_stable_param(&h, e)?;
            let w = if let Some(c) = charge {
                let c = Charge::parse(c)?;
                let j = ResidueSet::parse(l, j.as_deref().unwrap_or(""))?;
                cm_blocks_jclass(l, *n, &c, &j)?
            } else if git_walls(&h, *n).is_empty() {
                cm_blocks_regular(l, *n)
            } else if l == 2 {
                let mr = h_to_mr(&h, Rational::ZERO)?;
                let size = min_size_all(&enumerate_multipartitions(2, *n), &mr.m);
                cm_blocks_kappa(2, *n, &mr.m, size)?
            } else {
                return Err(Error::Invalid("a wall parameter at level > 2 needs --charge and --j".into()).into());
            };
            let g = glen_blocks(l, e, *n, &w)?;
            let text = g
                .classes
                .iter()
                .zip(&g.unresolved)
                .map(|(c, &u)| {
                    let names = c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                    if u {
                        format!("{names} (split)")
                    } else {
                        names
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok((text, serde_json::to_value(&g).unwrap()))
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut failed = false;
            for name in names {
                let mut grid = Grid::default_for(name);
                if let Some(l) = cli.level {
                    grid.levels = vec![l];
                }
                if let Some(n) = cli.max_n {
                    grid.max_n = n;
                }
                grid.e = cli.e;
                grid.seed = cli.seed;
                let r = verify(name, &grid)?;
                failed |= !r.passed();
                text.push_str(&r.to_string());
                reports.push(r);
            }
            let value = serde_json::to_value(&reports).unwrap();
            if failed {
                let out = if cli.json { serde_json::to_string_pretty(&value).unwrap() } else { text };
                emit(out.trim_end());
                return Err(Failure { code: 1, message: "verification found counterexamples".into() });
            }
            Ok((text.trim_end().to_string(), value))
        }
    }
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, value)) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&value).unwrap());
            } else {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
