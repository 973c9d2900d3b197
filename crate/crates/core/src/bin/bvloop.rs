use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bvloop::expr::{self, Value};
use bvloop::kernel::rat;
use bvloop::sample::{DegreeWindow, MonomialTable};
use bvloop::verify::{self, CheckReport, Selection};
use bvloop::{Degree, Element, ModelSpec, Mutation, Ring, StringAlgebra};

/// Exact string topology on free loop spaces of manifolds with exterior
/// rational cohomology.
#[derive(Parser)]
#[command(name = "bvloop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its value, degree and ring.
    Eval {
        #[arg(long)]
        model: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
        /// Print with Unicode subscripts and Greek letters.
        #[arg(long)]
        unicode: bool,
    },
    /// Run the identity checker; exits nonzero iff an identity fails.
    Check {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated identity names.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Re-run every report in a JSON-lines file and compare.
        #[arg(long, conflicts_with_all = ["only"])]
        replay: Option<String>,
        /// Inject a known defect, to see the checker catch it.
        #[arg(long)]
        mutation: Option<Mutation>,
        /// List identity names and statements instead of checking.
        #[arg(long)]
        list: bool,
    },
    /// Tabulate an operation on basis monomials up to a degree.
    Table {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        op: TableOp,
        #[arg(long)]
        max_degree: i64,
        #[arg(long)]
        json: bool,
    },
    /// Loops in a family meeting given cycles at the base point or anywhere.
    Intersect {
        #[arg(long)]
        model: String,
        /// Comma-separated classes of H*(M) met at the base point.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        at: String,
        /// Comma-separated classes of H*(M) met at free times.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        free: String,
        /// The family, a loop homology class.
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in models.
    Models,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableOp {
    Product,
    Bracket,
    Delta,
    Cap,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(model: &str, mutation: Option<Mutation>) -> Result<StringAlgebra, String> {
    let spec = ModelSpec::resolve(model).map_err(|e| e.to_string())?;
    Ok(match mutation {
        Some(m) => StringAlgebra::mutated(spec, m),
        None => StringAlgebra::new(spec),
    })
}

fn evaluate_str(alg: &StringAlgebra, src: &str) -> Result<Value, String> {
    let e = expr::parse_for_rank(src, alg.rank()).map_err(|e| format!("in `{src}`: {e}"))?;
    expr::evaluate(alg, &e).map_err(|e| format!("in `{src}`: {e}"))
}

fn degree_json(d: Degree) -> serde_json::Value {
    match d {
        Degree::Homogeneous(d) => json!(d),
        _ => serde_json::Value::Null,
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mut out = io::stdout().lock();
    let mut emit = |line: String| writeln!(out, "{line}").map_err(|e| e.to_string());
    match cli.command {
        Command::Eval {
            model,
            expr,
            json,
            unicode,
        } => {
            let alg = load(&model, None)?;
            let value = evaluate_str(&alg, &expr)?;
            if json {
                let ring = value.ring().map_or("scalar", Ring::as_str);
                emit(
                    json!({
                        "model": alg.model().name(),
                        "value": value.to_string(),
                        "ring": ring,
                        "degree": degree_json(value.degree(&alg)),
                    })
                    .to_string(),
                )?;
            } else if unicode {
                let plain = value.describe(&alg);
                let suffix = &plain[value.to_string().len()..];
                emit(format!("{}{suffix}", value.pretty()))?;
            } else {
                emit(value.describe(&alg))?;
            }
        }
        Command::Check {
            model,
            trials,
            seed,
            only,
            json,
            replay,
            mutation,
            list,
        } => {
            let alg = load(&model, mutation)?;
            if list {
                for case in verify::catalog() {
                    emit(format!("{:<32} {}", case.id, case.statement))?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let suite = verify::Suite::new(&alg);
            let reports = match replay {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read {path}: {e}"))?;
                    let mut mismatched = false;
                    let mut reports = Vec::new();
                    for line in text.lines().filter(|l| !l.trim().is_empty()) {
                        let recorded =
                            CheckReport::from_json_line(line).map_err(|e| e.to_string())?;
                        let again = suite.replay(&recorded).map_err(|e| e.to_string())?;
                        if again != recorded {
                            mismatched = true;
                            eprintln!("replay differs for `{}`", recorded.identity);
                        }
                        reports.push(again);
                    }
                    if mismatched {
                        for r in &reports {
                            emit(r.to_json_line())?;
                        }
                        return Ok(ExitCode::from(1));
                    }
                    reports
                }
                None => {
                    let selection = if only.is_empty() {
                        Selection::All
                    } else {
                        Selection::Only(only)
                    };
                    suite
                        .run(trials, seed, &selection)
                        .map_err(|e| e.to_string())?
                }
            };
            let failed = reports.iter().filter(|r| !r.passed()).count();
            for r in &reports {
                if json {
                    emit(r.to_json_line())?;
                    continue;
                }
                match &r.witness {
                    None => emit(format!("pass  {}", r.identity))?,
                    Some(w) => {
                        emit(format!("FAIL  {}  (trial {})", r.identity, w.trial))?;
                        emit(format!("      inputs:    {}", w.inputs.join(" ; ")))?;
                        emit(format!("      minimized: {}", w.minimized.join(" ; ")))?;
                        emit(format!("      lhs: {}", w.lhs))?;
                        emit(format!("      rhs: {}", w.rhs))?;
                    }
                }
            }
            if !json {
                let (trials, seed) = reports
                    .first()
                    .map_or((trials, seed), |r| (r.trials, r.seed));
                emit(format!(
                    "{} identities, {} passed, {} failed (model {}, {} trials, seed {})",
                    reports.len(),
                    reports.len() - failed,
                    failed,
                    alg.model().name(),
                    trials,
                    seed
                ))?;
            }
            return Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Table {
            model,
            op,
            max_degree,
            json,
        } => {
            let alg = load(&model, None)?;
            for (name, args, value) in table(&alg, op, max_degree)? {
                if json {
                    emit(
                        json!({"op": name, "args": args, "value": value.to_string()}).to_string(),
                    )?;
                } else {
                    emit(format!("{name}({}) = {value}", args.join(", ")))?;
                }
            }
        }
        Command::Intersect {
            model,
            at,
            free,
            family,
            json,
        } => {
            let alg = load(&model, None)?;
            let classes = |list: &str| -> Result<Vec<Element>, String> {
                split_top_level(list)
                    .into_iter()
                    .map(|src| {
                        let v = evaluate_str(&alg, &src)?;
                        let x = v.into_ring(&alg, Ring::BaseCohomology);
                        alg.base_part(&x).map_err(|e| format!("in `{src}`: {e}"))
                    })
                    .collect()
            };
            let (at, free) = (classes(&at)?, classes(&free)?);
            let b = evaluate_str(&alg, &family)?.into_ring(&alg, Ring::LoopHomology);
            if b.ring() != Ring::LoopHomology {
                return Err(format!(
                    "in `{family}`: the family must be a loop homology class"
                ));
            }
            let result = alg
                .loop_intersection(&at, &free, &b)
                .map_err(|e| e.to_string())?;
            if json {
                emit(
                    json!({
                        "model": alg.model().name(),
                        "value": result.to_string(),
                        "degree": degree_json(alg.model().degree(&result)),
                    })
                    .to_string(),
                )?;
            } else {
                emit(result.to_string())?;
            }
        }
        Command::Models => {
            emit("s<n>                  sphere S^n, n odd: one generator of degree n".into())?;
            emit(
                "su<n>                 SU(n), n >= 2: generators of degree 3, 5, ..., 2n-1".into(),
            )?;
            emit(
                "exterior:d1,d2,...    product of odd spheres, generators of the listed degrees"
                    .into(),
            )?;
            emit("<path>.json           {\"name\": ..., \"generator_degrees\": [...]}".into())?;
            emit(String::new())?;
            for name in [
                "s1",
                "s3",
                "s5",
                "s7",
                "su2",
                "su3",
                "su4",
                "exterior:3,5,7",
            ] {
                let m = ModelSpec::resolve(name).map_err(|e| e.to_string())?;
                emit(format!(
                    "{:<22} degrees {:?}, dimension {}",
                    name,
                    m.generator_degrees(),
                    m.dimension()
                ))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Splits at commas that are not inside parentheses or brackets.
fn split_top_level(list: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in list.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    parts.push(current);
    parts.into_iter().filter(|p| !p.trim().is_empty()).collect()
}

type Row = (&'static str, Vec<String>, Element);

fn table(alg: &StringAlgebra, op: TableOp, max_degree: i64) -> Result<Vec<Row>, String> {
    let model = alg.model();
    let dim = model.dimension();
    if max_degree < -dim {
        return Err(format!(
            "--max-degree must be at least {} for this model",
            -dim
        ));
    }
    // Every u_i has degree d_i - 1 > 0 unless d_i = 1, so the degree bound
    // caps the exponents.
    let min_even = model
        .generator_degrees()
        .iter()
        .map(|d| d - 1)
        .min()
        .unwrap_or(0);
    let cap = if min_even > 0 {
        ((max_degree + dim) / min_even).clamp(0, 12) as u32
    } else {
        4
    };
    let basis = |ring: Ring, window: DegreeWindow| -> Vec<Element> {
        MonomialTable::new(model, ring, window, cap)
            .all()
            .map(|(_, m)| Element::monomial(ring, m.clone(), rat(1)))
            .collect()
    };
    let loops = basis(Ring::LoopHomology, DegreeWindow::new(-dim, max_degree));
    let mut rows = Vec::new();
    match op {
        TableOp::Delta => {
            for x in &loops {
                rows.push(("Delta", vec![x.to_string()], alg.bv_delta(x)));
            }
        }
        TableOp::Product | TableOp::Bracket => {
            for x in &loops {
                for y in &loops {
                    let (name, z) = match op {
                        TableOp::Product => ("product", alg.loop_product(x, y)),
                        _ => ("bracket", alg.loop_bracket(x, y)),
                    };
                    rows.push((name, vec![x.to_string(), y.to_string()], z));
                }
            }
        }
        TableOp::Cap => {
            let cohomology = basis(Ring::Cohomology, DegreeWindow::new(0, max_degree.max(0)));
            for omega in &cohomology {
                for b in &loops {
                    rows.push((
                        "cap",
                        vec![omega.to_string(), b.to_string()],
                        alg.cap(omega, b),
                    ));
                }
            }
        }
    }
    Ok(rows)
}
