//! The `wallkit` commands.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use wallkit_core::colouring::{betti_numbers, build_complex_with, SignRule};
use wallkit_core::smodule::{
    boxtimes_dims, factorial, free_proto_dims, free_proto_dims_level_oracle, free_weight2_closed, val_boxtimes_induced_dims, DimSeq,
};
use wallkit_core::wall::enumerate_walls;
use wallkit_core::{Budget, Error};

use crate::cache::Cache;
use crate::format::{bricks_field, parse_wall, relations_field, write_csv, ComplexReport, WallJson};
use crate::verify::{run_all, VerifyConfig};
use crate::{exit, CliError};

#[derive(Parser, Debug)]
#[command(name = "wallkit", version, about = "Exact combinatorics of walls, connected products and colouring complexes")]
pub struct Cli {
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Overrides for the enumeration limits.
#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArgs {
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub budget_ground: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub budget_bricks: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub budget_arity: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub budget_weight: Option<u32>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        let pick = |o: Option<u32>, v: usize| o.map_or(v, |x| x as usize);
        Budget {
            max_ground: pick(self.budget_ground, d.max_ground),
            max_bricks: pick(self.budget_bricks, d.max_bricks),
            max_arity: pick(self.budget_arity, d.max_arity),
            max_weight: pick(self.budget_weight, d.max_weight),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignChoice {
    Incidence,
    Lambda,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the canonical walls with a given ground size and brick count.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        ground: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bricks: u32,
        #[arg(long)]
        connected: bool,
    },
    /// Dimensions of the free protoperad on a generating sequence.
    FreeDims {
        /// Generator dimensions from arity 1, e.g. "0,1".
        #[arg(long)]
        gens: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_arity: u32,
        /// Add the levelled-partition evaluation as a second column.
        #[arg(long)]
        oracle: bool,
    },
    /// Colouring complex report for a wall file.
    Colouring {
        wall: PathBuf,
        #[arg(long)]
        betti: bool,
        #[arg(long = "check-d2")]
        check_d2: bool,
        #[arg(long, value_enum, default_value_t = SignChoice::Incidence)]
        sign_rule: SignChoice,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        max_ground: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_bricks: u32,
        /// Test hook: make every sign positive.
        #[arg(long, hide = true)]
        corrupt_signs: bool,
    },
    /// Compare induced products with the connected product.
    IndCheck {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_arity: u32,
    },
}

/// Output bytes and exit status of one command.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub code: i32,
}

impl Outcome {
    fn ok(bytes: Vec<u8>) -> Self {
        Outcome { bytes, code: exit::SUCCESS }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::VALIDATION } else { exit::SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli, &Cache::from_env()).and_then(|o| {
        match &cli.out {
            Some(p) => std::fs::write(p, &o.bytes).map_err(|e| CliError::Io(e.to_string()))?,
            None => stdout.write_all(&o.bytes).map_err(|e| CliError::Io(e.to_string()))?,
        }
        Ok(o.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "wallkit: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, cache: &Cache) -> Result<Outcome, CliError> {
    let budget = cli.budget.budget();
    let fmt = cli.format;
    let budget_key = format!("{}.{}.{}.{}", budget.max_ground, budget.max_bricks, budget.max_arity, budget.max_weight);
    match &cli.command {
        Command::Enum { ground, bricks, connected } => {
            let params = format!("{ground}-{bricks}-{connected}-{fmt:?}-{budget_key}");
            cache
                .get_or_compute("enum", &params, || cmd_enum(*ground as usize, *bricks as usize, *connected, fmt, &budget))
                .map(Outcome::ok)
        }
        Command::FreeDims { gens, max_weight, max_arity, oracle } => {
            let gen: DimSeq = gens.parse().map_err(|e: Error| CliError::Parse(e.to_string()))?;
            let params = format!("{gen}-{max_weight}-{max_arity}-{oracle}-{fmt:?}-{budget_key}");
            cache
                .get_or_compute("free-dims", &params, || {
                    cmd_free_dims(&gen, *max_weight as usize, *max_arity as usize, *oracle, fmt, &budget)
                })
                .map(Outcome::ok)
        }
        Command::Colouring { wall, betti, check_d2, sign_rule } => {
            let rule = match sign_rule {
                SignChoice::Incidence => SignRule::Incidence,
                SignChoice::Lambda => SignRule::Lambda,
            };
            cmd_colouring(wall, *betti, *check_d2, rule, fmt, &budget)
        }
        Command::Verify { max_ground, max_bricks, corrupt_signs } => {
            let cfg = VerifyConfig {
                max_ground: *max_ground as usize,
                max_bricks: *max_bricks as usize,
                sign_rule: if *corrupt_signs { SignRule::AllPositive } else { SignRule::Incidence },
            };
            cmd_verify(&cfg, &budget, fmt)
        }
        Command::IndCheck { v, w, max_arity } => {
            let v: DimSeq = v.parse().map_err(|e: Error| CliError::Parse(e.to_string()))?;
            let w: DimSeq = w.parse().map_err(|e: Error| CliError::Parse(e.to_string()))?;
            cmd_ind_check(&v, &w, *max_arity as usize, fmt, &budget)
        }
    }
}

/// A JSON number when it fits in `u64`, else a decimal string.
fn num(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn json_bytes(v: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    Ok(buf)
}

pub fn cmd_enum(n: usize, r: usize, connected: bool, fmt: Format, budget: &Budget) -> Result<Vec<u8>, CliError> {
    let walls = enumerate_walls(n, r, connected, budget)?;
    match fmt {
        Format::Json => {
            let list: Vec<WallJson> = walls.iter().map(WallJson::from_wall).collect();
            Ok(json_bytes(&json!({ "ground": n, "bricks": r, "connected": connected, "count": walls.len(), "walls": list })))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = walls
                .iter()
                .enumerate()
                .map(|(i, w)| vec![(i + 1).to_string(), n.to_string(), bricks_field(w), relations_field(w)])
                .collect();
            csv_bytes(&["index", "ground", "bricks", "relations"], &rows)
        }
    }
}

pub fn cmd_free_dims(
    gen: &DimSeq,
    max_weight: usize,
    max_arity: usize,
    oracle: bool,
    fmt: Format,
    budget: &Budget,
) -> Result<Vec<u8>, CliError> {
    if max_weight > budget.max_weight {
        return Err(Error::BudgetExceeded { what: "weight", requested: max_weight }.into());
    }
    if max_arity > budget.max_arity {
        return Err(Error::BudgetExceeded { what: "arity", requested: max_arity }.into());
    }
    let mut rows = Vec::new();
    for rho in 1..=max_weight {
        for n in 1..=max_arity {
            let dim = free_proto_dims(gen, rho, n, budget)?;
            let closed = (rho == 2).then(|| free_weight2_closed(gen, n));
            let levels = if oracle { Some(free_proto_dims_level_oracle(gen, rho, n, budget)?) } else { None };
            if let Some(l) = &levels {
                if *l != dim {
                    return Err(CliError::Invariant(format!("weight {rho}, arity {n}: walls {dim}, levels {l}")));
                }
            }
            if let Some(c) = &closed {
                if *c != dim {
                    return Err(CliError::Invariant(format!("arity {n}: walls {dim}, closed form {c}")));
                }
            }
            rows.push((rho, n, dim, closed, levels));
        }
    }
    match fmt {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(rho, n, d, c, l)| {
                    let mut o = json!({ "weight": rho, "arity": n, "dim": num(d) });
                    if let Some(c) = c {
                        o["closed_form"] = num(c);
                    }
                    if let Some(l) = l {
                        o["oracle"] = num(l);
                    }
                    o
                })
                .collect();
            Ok(json_bytes(&json!({ "gens": gen.to_string(), "rows": list })))
        }
        Format::Csv => {
            let mut header = vec!["weight", "arity", "dim", "closed_form"];
            if oracle {
                header.push("oracle");
            }
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(rho, n, d, c, l)| {
                    let mut r = vec![rho.to_string(), n.to_string(), d.to_string(), c.as_ref().map_or(String::new(), |x| x.to_string())];
                    if oracle {
                        r.push(l.as_ref().map_or(String::new(), |x| x.to_string()));
                    }
                    r
                })
                .collect();
            csv_bytes(&header, &rows)
        }
    }
}

pub fn cmd_colouring(
    path: &PathBuf,
    betti: bool,
    check_d2: bool,
    rule: SignRule,
    fmt: Format,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let w = parse_wall(&text)?;
    let cx = build_complex_with(&w, budget, rule)?;
    let d2 = cx.d_squared_failure();
    let mut report = ComplexReport::new(&w, &cx);
    if check_d2 {
        report.d_squared_zero = Some(d2.is_none());
    }
    if betti {
        if let Some(k) = d2 {
            return Err(Error::SignConventionBroken(k).into());
        }
        report = report.with_homology(&betti_numbers(&cx));
    }
    let code = if check_d2 && d2.is_some() { exit::INVARIANT } else { exit::SUCCESS };
    let bytes = match fmt {
        Format::Json => json_bytes(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .graded_counts
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let b = report.betti.as_ref().map_or(String::new(), |b| b[i].to_string());
                    let t = report.torsion.as_ref().map_or(String::new(), |t| t[i].join(" "));
                    vec![(i + 1).to_string(), c.to_string(), b, t]
                })
                .collect();
            csv_bytes(&["degree", "count", "betti", "torsion"], &rows)?
        }
    };
    Ok(Outcome { bytes, code })
}

pub fn cmd_verify(cfg: &VerifyConfig, budget: &Budget, fmt: Format) -> Result<Outcome, CliError> {
    if cfg.max_ground > budget.max_ground {
        return Err(Error::BudgetExceeded { what: "walls", requested: cfg.max_ground }.into());
    }
    if cfg.max_bricks > budget.max_bricks {
        return Err(Error::BudgetExceeded { what: "walls", requested: cfg.max_bricks }.into());
    }
    let results = run_all(cfg);
    let code = if results.iter().all(|c| c.passed) { exit::SUCCESS } else { exit::INVARIANT };
    let bytes = match fmt {
        Format::Json => {
            let list: Vec<Value> = results.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
            json_bytes(
                &json!({ "max_ground": cfg.max_ground, "max_bricks": cfg.max_bricks, "passed": code == exit::SUCCESS, "checks": list }),
            )
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = results.iter().map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]).collect();
            csv_bytes(&["name", "passed", "detail"], &rows)?
        }
    };
    Ok(Outcome { bytes, code })
}

pub fn cmd_ind_check(v: &DimSeq, w: &DimSeq, max_arity: usize, fmt: Format, budget: &Budget) -> Result<Outcome, CliError> {
    let prod = boxtimes_dims(v, w, max_arity)?;
    let mut rows = Vec::new();
    for n in 1..=max_arity {
        let lhs = factorial(n) * prod.get(n);
        let rhs = val_boxtimes_induced_dims(v, w, n, budget)?;
        rows.push((n, lhs.clone(), rhs.clone(), lhs == rhs));
    }
    let code = if rows.iter().all(|r| r.3) { exit::SUCCESS } else { exit::INVARIANT };
    let bytes = match fmt {
        Format::Json => {
            let list: Vec<Value> =
                rows.iter().map(|(n, a, b, e)| json!({ "arity": n, "connected": num(a), "induced": num(b), "equal": e })).collect();
            json_bytes(&json!({ "v": v.to_string(), "w": w.to_string(), "rows": list }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                rows.iter().map(|(n, a, b, e)| vec![n.to_string(), a.to_string(), b.to_string(), e.to_string()]).collect();
            csv_bytes(&["arity", "connected", "induced", "equal"], &rows)?
        }
    };
    Ok(Outcome { bytes, code })
}
