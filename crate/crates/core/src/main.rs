use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use multiquad::audit::{run_audit, AuditParams, LemmaId};
use multiquad::definable::{four_squares, leading_constant, poly_f, w_member};
use multiquad::enumerator::{default_order, family_set, totally_bounded_box, BoxQuery};
use multiquad::field::{Element, FieldSpec};
use multiquad::formula::{define_set, evaluate, parse, parse_element, Assignment, Domains};
use multiquad::units::{
    hasse_square_decompose, is_unit, pell_fundamental, roots_of_unity, unit_power_in_k,
};
use multiquad::{Error, Result};

#[derive(Parser)]
#[command(
    name = "multiquad",
    version,
    about = "Exact arithmetic and audits in multiquadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one audit and print its table
    Audit(AuditArgs),
    /// List the order elements with every conjugate in (lower, t)
    EnumerateBox {
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 0)]
        lower: i64,
        #[arg(long)]
        maximal: bool,
    },
    /// Members of the four-squares family with their witnesses
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long, value_parser = parse_range)]
        pool: Option<(u64, u64)>,
    },
    /// The polynomial (x + √(x²+1))^2N + (x − √(x²+1))^2N
    PolyF {
        #[arg(long = "N")]
        n: u64,
    },
    /// Iterated forward difference of f with step k
    Delta {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        k: u64,
        /// number of differences, default 2N
        #[arg(long)]
        times: Option<usize>,
    },
    FourSquares {
        #[arg(long)]
        n: u64,
    },
    /// Certificate that x lies in W
    WMember {
        #[arg(long)]
        x: u64,
        #[arg(long = "N", default_value_t = 1)]
        n: u64,
        #[arg(long = "C")]
        c: Option<BigInt>,
    },
    Units {
        #[command(subcommand)]
        command: UnitsCommand,
    },
    RootsOfUnity {
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Evaluate a formula file, or the set it defines over a pool
    Eval {
        #[arg(long)]
        formula: PathBuf,
        /// name=value pairs, values written like `3` or `1 + sqrt2`
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
        /// NAME=a..b or NAME=v1;v2;..., repeatable
        #[arg(long)]
        domain: Vec<String>,
        /// designated variable for set definition
        #[arg(long)]
        var: Option<String>,
        #[arg(long, value_parser = parse_range)]
        pool: Option<(u64, u64)>,
    },
    /// Field arithmetic on elements written like `1 + sqrt2*i`
    Element(ElementArgs),
}

#[derive(Subcommand)]
enum UnitsCommand {
    Pell {
        #[arg(long)]
        d: u64,
    },
    IsUnit {
        #[arg(long)]
        element: String,
    },
    Power {
        #[arg(long)]
        element: String,
        #[arg(long = "N")]
        n: u64,
    },
    Hasse {
        #[arg(long)]
        element: String,
    },
}

#[derive(Args)]
struct AuditArgs {
    #[arg(value_parser = parse_lemma)]
    lemma: LemmaId,
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    maximal: bool,
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long = "N")]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long = "C")]
    c: Option<BigInt>,
    #[arg(long)]
    max_x: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_parser = parse_range)]
    pool: Option<(u64, u64)>,
    /// also write the machine-readable report here
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ElementOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Norm,
    Trace,
    Conjugates,
    CharPoly,
    IsIntegral,
    Json,
}

#[derive(Args)]
struct ElementArgs {
    op: ElementOp,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    /// extra primes for the ambient field
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    #[arg(long)]
    imaginary: bool,
}

fn parse_lemma(s: &str) -> std::result::Result<LemmaId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn integers(range: (u64, u64)) -> Vec<Element> {
    let q = FieldSpec::rationals();
    (range.0..=range.1)
        .map(|v| Element::from_integer(&q, v))
        .collect()
}

fn read_element(src: &str, field: Option<&FieldSpec>) -> Result<Element> {
    if src.trim_start().starts_with('{') {
        let x = Element::from_json(src)?;
        return match field {
            Some(f) => x.coerce(&x.field().join(f)),
            None => Ok(x),
        };
    }
    parse_element(src, field)
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Audit(args) => {
            let params = AuditParams {
                primes: args.primes,
                t: args.t,
                maximal: args.maximal,
                bound: args.bound,
                n: args.n,
                k: args.k,
                constant: args.c,
                max_x: args.max_x,
                p: args.p,
                q: args.q,
                pool: args.pool,
            };
            let report = run_audit(args.lemma, &params)?;
            print!("{}", report.table());
            if let Some(path) = args.json {
                std::fs::write(&path, report.to_json() + "\n")
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
            }
            return Ok(report.exit_code());
        }
        Command::EnumerateBox {
            primes,
            t,
            lower,
            maximal,
        } => {
            let field = FieldSpec::new(&primes, false)?;
            let query = BoxQuery::new(
                default_order(&field, maximal)?,
                BigRational::from_integer(lower.into()),
                BigRational::from_integer(t.into()),
            )?;
            let elements = totally_bounded_box(&query);
            let shown: Vec<String> = elements.iter().map(Element::to_string).collect();
            print_json(&json!({ "count": elements.len(), "display": shown, "elements": elements }));
        }
        Command::Family { p, q, n, pool } => {
            let pool = integers(pool.unwrap_or((0, q)));
            print_json(&family_set(p, q, n, &pool)?);
        }
        Command::PolyF { n } => {
            let f = poly_f(n);
            println!("{f}");
        }
        Command::Delta { n, k, times } => {
            let d = poly_f(n).delta_iter(&k.into(), times.unwrap_or(2 * n as usize));
            println!("{d}");
        }
        Command::FourSquares { n } => {
            let [a, b, c, d] = four_squares(n);
            println!("{n} = {a}^2 + {b}^2 + {c}^2 + {d}^2");
        }
        Command::WMember { x, n, c } => {
            let c = c.unwrap_or_else(|| leading_constant(n));
            match w_member(x, n, &c)? {
                Some(chain) => println!("{}", chain.to_json()),
                None => {
                    eprintln!("no certificate for {x} with C = {c}");
                    return Ok(1);
                }
            }
        }
        Command::Units { command } => return units(command),
        Command::RootsOfUnity { bound } => {
            let report = roots_of_unity(bound)?;
            println!("N = {} in {}", report.order_n, report.host_field);
            for (k, root) in report.roots.iter().enumerate() {
                println!("zeta^{k:<2}  order {:<2}  {root}", report.order_of(k));
            }
        }
        Command::Eval {
            formula,
            assign,
            domain,
            var,
            pool,
        } => {
            let src = std::fs::read_to_string(&formula)
                .map_err(|e| Error::InvalidParameter(format!("{}: {e}", formula.display())))?;
            let f = parse(&src)?;
            let mut a = Assignment::new();
            for pair in assign {
                let (name, value) = pair.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!("expected name=value, got `{pair}`"))
                })?;
                a.insert(name.trim().to_string(), read_element(value, None)?);
            }
            let mut domains = Domains::new();
            for entry in domain {
                let (name, values) = entry.split_once('=').ok_or_else(|| {
                    Error::InvalidParameter(format!("expected NAME=values, got `{entry}`"))
                })?;
                let values = match parse_range(values) {
                    Ok(range) => integers(range),
                    Err(_) => values
                        .split(';')
                        .map(|v| read_element(v, None))
                        .collect::<Result<_>>()?,
                };
                domains.insert(name.trim().to_string(), values);
            }
            match var {
                Some(var) => {
                    let pool = integers(
                        pool.ok_or_else(|| Error::InvalidParameter("--var needs --pool".into()))?,
                    );
                    let members = define_set(&f, &a, &var, &pool, &domains)?;
                    let shown: Vec<String> = members.iter().map(Element::to_string).collect();
                    println!("{{{}}}", shown.join(", "));
                }
                None => println!("{}", evaluate(&f, &a, &domains)?),
            }
        }
        Command::Element(args) => element(args)?,
    }
    Ok(0)
}

fn units(command: UnitsCommand) -> Result<i32> {
    match command {
        UnitsCommand::Pell { d } => print_json(&pell_fundamental(d)?),
        UnitsCommand::IsUnit { element } => {
            let x = read_element(&element, None)?;
            match is_unit(&x) {
                Some(w) => print_json(&w),
                None => {
                    println!("{x} is not a unit");
                    return Ok(1);
                }
            }
        }
        UnitsCommand::Power { element, n } => {
            let x = read_element(&element, None)?;
            let w =
                is_unit(&x).ok_or_else(|| Error::InvalidParameter(format!("{x} is not a unit")))?;
            let record = unit_power_in_k(&w, n);
            print_json(&record);
            return Ok(if record.passed() { 0 } else { 1 });
        }
        UnitsCommand::Hasse { element } => {
            let x = read_element(&element, None)?;
            let w =
                is_unit(&x).ok_or_else(|| Error::InvalidParameter(format!("{x} is not a unit")))?;
            match hasse_square_decompose(&w, &roots_of_unity(200)?) {
                Some(h) => println!("u^2 = ({}) * ({})", h.zeta, h.w),
                None => {
                    println!("no factorization found");
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn element(args: ElementArgs) -> Result<()> {
    let extra = FieldSpec::new(&args.primes, args.imaginary)?;
    let a = read_element(&args.a, Some(&extra))?;
    let b = || -> Result<Element> {
        let src = args
            .b
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("this operation needs --b".into()))?;
        read_element(src, Some(&extra))
    };
    match args.op {
        ElementOp::Add => println!("{}", a.try_add(&b()?)?),
        ElementOp::Sub => println!("{}", a.try_sub(&b()?)?),
        ElementOp::Mul => println!("{}", a.try_mul(&b()?)?),
        ElementOp::Div => println!("{}", a.try_div(&b()?)?),
        ElementOp::Inv => println!("{}", a.inv()?),
        ElementOp::Norm => println!("{}", a.norm()),
        ElementOp::Trace => println!("{}", a.trace()),
        ElementOp::Conjugates => {
            for c in a.conjugates() {
                println!("{c}");
            }
        }
        ElementOp::CharPoly => println!("{}", a.char_poly()),
        ElementOp::IsIntegral => println!("{}", a.is_integral()),
        ElementOp::Json => println!("{}", a.to_json()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
