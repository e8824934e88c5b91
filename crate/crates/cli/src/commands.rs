//! Command dispatch for the `qalg` binary.

use crate::error::{CliError, CliResult};
use crate::eval::{eval, eval_poly_matrix, eval_rat, eval_s, Context};
use crate::expr::{parse, parse_matrix};
use clap::{Parser, Subcommand};
use quiveralg::leavitt::witness_basic_transformation;
use quiveralg::modtools::{higman_linearize, vnreg_regularize};
use quiveralg::monoid::{equivalent, refinement_search, relation_pairs, Certificate, MonoidElem, MonoidVerdict};
use quiveralg::pathalg::PolyMatrix;
use quiveralg::quiver::{a2, check_complete_hom, complete_subquiver_containing, loop_quiver, rose, GraphHom, Quiver};
use quiveralg::ratseries::RatRep;
use quiveralg::regalg::{q_equal, q_relation_suite, QVerdict};
use serde_json::{json, Value as Json};

#[derive(Debug, Parser)]
#[command(name = "qalg", version, about = "Exact algebra over finite quivers")]
pub struct Cli {
    /// Quiver JSON file, or one of the built-in quivers `loop`, `a2`, `roseN`.
    #[arg(short, long, global = true)]
    pub quiver: Option<String>,
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation order for power series.
    #[arg(long, global = true, default_value_t = 8)]
    pub trunc: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the relation suites on a quiver.
    Check {
        /// Quiver file or built-in name; overrides --quiver.
        file: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the normal form of an expression.
    Nf {
        expr: String,
        #[arg(short, long, value_enum, default_value = "poly")]
        context: Context,
    },
    /// Multiply two expressions.
    Mul {
        a: String,
        b: String,
        #[arg(short, long, value_enum, default_value = "poly")]
        context: Context,
    },
    /// Truncate a rational expression at --trunc.
    SeriesTrunc { expr: String },
    /// Decide equality of two rational series.
    RatEq { a: String, b: String },
    /// Decide equality in the quotient by the q-idempotents.
    Qeq {
        a: String,
        b: String,
        /// Expansion depth; defaults to one more than the longest bar path.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Search for a chain of monoid relations between two vertex sums.
    MonoidEq {
        x: String,
        y: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Search for a refinement of x1 + x2 = y1 + y2.
    MonoidRefine {
        x1: String,
        x2: String,
        y1: String,
        y2: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Show and verify the row and column of arrows into a vertex.
    Witness { vertex: String },
    /// Linearize a polynomial matrix such as `[[a*b, 1], [b, 0]]`.
    Higman { matrix: String },
    /// Regularize p − D for an idempotent scalar matrix p and a linear D.
    Regularize { p: String, d: String },
    /// The smallest complete subquiver containing the given vertices.
    Subquiver { vertices: Vec<String> },
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Json,
    negative: bool,
}

impl Report {
    fn ok(text: String, json: Json) -> Report {
        Report { text, json, negative: false }
    }
}

/// Reads a quiver from a JSON file or a built-in name.
pub fn load_quiver(spec: &str) -> CliResult<Quiver> {
    match spec {
        "loop" => return Ok(loop_quiver()),
        "a2" => return Ok(a2()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("rose").and_then(|n| n.parse::<usize>().ok()) {
        if (1..=26).contains(&n) {
            return Ok(rose(n));
        }
    }
    let text = std::fs::read_to_string(spec).map_err(|source| CliError::Io {
        path: spec.to_string(),
        source,
    })?;
    Ok(Quiver::from_json(&text)?)
}

fn quiver_of(cli: &Cli) -> CliResult<Quiver> {
    match &cli.quiver {
        Some(s) => load_quiver(s),
        None => Err(CliError::Usage("this command needs --quiver".into())),
    }
}

fn render_matrix(m: &PolyMatrix) -> String {
    m.render()
}

fn render_rat_matrix(m: &[Vec<RatRep>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(RatRep::render_compact).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn certificate_text(c: &Certificate) -> String {
    let mut lines = vec![c.states[0].render()];
    for (step, state) in c.steps.iter().zip(&c.states[1..]) {
        let arrow = if step.forward { "->" } else { "<-" };
        lines.push(format!("  {arrow}[{}] {}", step.vertex, state.render()));
    }
    lines.join("\n")
}

fn certificate_json(c: &Certificate) -> Json {
    json!({
        "states": c.states.iter().map(MonoidElem::render).collect::<Vec<_>>(),
        "steps": c.steps.iter().map(|s| json!({"vertex": s.vertex, "forward": s.forward})).collect::<Vec<_>>(),
    })
}

fn check(q: &Quiver, samples: usize, seed: u64) -> CliResult<Report> {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let pairs = relation_pairs(q);
    for (v, s) in &pairs {
        lines.push(format!("relation {v} ~ {s}"));
    }
    for v in q.receiving_vertices() {
        let name = q.vertex_name(v);
        let ok = witness_basic_transformation(q, v)?.verify();
        lines.push(format!("witness at {name}: {}", if ok { "ok" } else { "FAILED" }));
        if !ok {
            failures.push(format!("witness at {name}"));
        }
    }
    let report = q_relation_suite(q, samples, seed);
    lines.push(format!(
        "q relations: {} checks, {} violations",
        report.checks,
        report.violations.len()
    ));
    failures.extend(report.violations.iter().cloned());
    let passed = failures.is_empty();
    lines.push(if passed { "all checks passed".into() } else { "checks FAILED".into() });
    Ok(Report {
        text: lines.join("\n"),
        json: json!({
            "relations": pairs.iter().map(|(v, s)| json!([v.render(), s.render()])).collect::<Vec<_>>(),
            "q_checks": report.checks,
            "failures": failures,
            "passed": passed,
        }),
        negative: !passed,
    })
}

fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Check { file, samples, seed } => {
            let q = match file {
                Some(f) => load_quiver(f)?,
                None => quiver_of(cli)?,
            };
            check(&q, *samples, *seed)
        }
        Command::Nf { expr, context } => {
            let q = quiver_of(cli)?;
            let v = eval(&parse(expr, &q)?, &q, *context, cli.trunc)?.render();
            Ok(Report::ok(v.clone(), json!({ "normal_form": v })))
        }
        Command::Mul { a, b, context } => {
            let q = quiver_of(cli)?;
            let prod = crate::expr::Expr::Prod(Box::new(parse(a, &q)?), Box::new(parse(b, &q)?));
            let v = eval(&prod, &q, *context, cli.trunc)?.render();
            Ok(Report::ok(v.clone(), json!({ "product": v })))
        }
        Command::SeriesTrunc { expr } => {
            let q = quiver_of(cli)?;
            let v = eval_rat(&parse(expr, &q)?, &q)?.truncate(cli.trunc).render();
            Ok(Report::ok(v.clone(), json!({ "truncation": v, "order": cli.trunc })))
        }
        Command::RatEq { a, b } => {
            let q = quiver_of(cli)?;
            let x = eval_rat(&parse(a, &q)?, &q)?;
            let y = eval_rat(&parse(b, &q)?, &q)?;
            let equal = x.equals(&y)?;
            Ok(Report {
                text: if equal { "equal".into() } else { "not equal".into() },
                json: json!({ "equal": equal }),
                negative: !equal,
            })
        }
        Command::Qeq { a, b, depth } => {
            let q = quiver_of(cli)?;
            let x = eval_s(&parse(a, &q)?, &q)?;
            let y = eval_s(&parse(b, &q)?, &q)?;
            Ok(match q_equal(&x, &y, *depth)? {
                QVerdict::Equal { depth } => Report::ok(
                    format!("equal (depth {depth})"),
                    json!({ "equal": true, "depth": depth }),
                ),
                QVerdict::NotEqualAtDepth { depth, conclusive } => Report {
                    text: if conclusive {
                        format!("not equal (depth {depth})")
                    } else {
                        format!("not equal at depth {depth} (inconclusive)")
                    },
                    json: json!({ "equal": false, "depth": depth, "conclusive": conclusive }),
                    negative: true,
                },
            })
        }
        Command::MonoidEq { x, y, depth } => {
            let q = quiver_of(cli)?;
            let x = MonoidElem::parse_in(&q, x)?;
            let y = MonoidElem::parse_in(&q, y)?;
            Ok(match equivalent(&q, &x, &y, *depth)? {
                MonoidVerdict::Equivalent(c) => Report::ok(
                    format!("equivalent in {} step{}\n{}", c.depth(), if c.depth() == 1 { "" } else { "s" }, certificate_text(&c)),
                    json!({ "equivalent": true, "certificate": certificate_json(&c) }),
                ),
                MonoidVerdict::NotFoundWithin(d) => Report {
                    text: format!("no chain found within {d} steps"),
                    json: json!({ "equivalent": false, "depth": d }),
                    negative: true,
                },
            })
        }
        Command::MonoidRefine { x1, x2, y1, y2, depth } => {
            let q = quiver_of(cli)?;
            let p = |t: &String| MonoidElem::parse_in(&q, t);
            match refinement_search(&q, &p(x1)?, &p(x2)?, &p(y1)?, &p(y2)?, *depth) {
                Ok(Some(z)) => Ok(Report::ok(
                    format!("z11 = {}\nz12 = {}\nz21 = {}\nz22 = {}", z.z11, z.z12, z.z21, z.z22),
                    json!({
                        "found": true,
                        "z11": z.z11.render(), "z12": z.z12.render(),
                        "z21": z.z21.render(), "z22": z.z22.render(),
                    }),
                )),
                Ok(None) => Ok(Report {
                    text: format!("no refinement found within depth {depth}"),
                    json: json!({ "found": false }),
                    negative: true,
                }),
                Err(quiveralg::Error::NotEquivalent) => Ok(Report {
                    text: "the two sums are not equivalent within the search depth".into(),
                    json: json!({ "found": false, "equivalent": false }),
                    negative: true,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Witness { vertex } => {
            let q = quiver_of(cli)?;
            let w = witness_basic_transformation(&q, q.vertex(vertex)?)?;
            let row: Vec<String> = w.row.iter().map(|x| x.render()).collect();
            let column: Vec<String> = w.column.iter().map(|x| x.render()).collect();
            let ok = w.verify();
            Ok(Report {
                text: format!("row: {}\ncolumn: {}\nverified: {ok}", row.join(", "), column.join(", ")),
                json: json!({ "row": row, "column": column, "verified": ok }),
                negative: !ok,
            })
        }
        Command::Higman { matrix } => {
            let q = quiver_of(cli)?;
            let m = eval_poly_matrix(&parse_matrix(matrix, &q)?, &q)?;
            let lin = higman_linearize(&m);
            let ok = lin.verify(&m);
            Ok(Report {
                text: format!(
                    "ell = {}\nP = {}\nQ = {}\nL = {}\nP^-1 = {}\nQ^-1 = {}\nverified: {ok}",
                    lin.ell,
                    render_matrix(&lin.p),
                    render_matrix(&lin.q),
                    render_matrix(&lin.l),
                    render_matrix(&lin.p_inv),
                    render_matrix(&lin.q_inv)
                ),
                json: json!({
                    "ell": lin.ell,
                    "P": render_matrix(&lin.p), "Q": render_matrix(&lin.q), "L": render_matrix(&lin.l),
                    "P_inv": render_matrix(&lin.p_inv), "Q_inv": render_matrix(&lin.q_inv),
                    "verified": ok,
                }),
                negative: !ok,
            })
        }
        Command::Regularize { p, d } => {
            let q = quiver_of(cli)?;
            let pm = eval_poly_matrix(&parse_matrix(p, &q)?, &q)?;
            if pm.degree().unwrap_or(0) > 0 {
                return Err(CliError::Usage("p must be a matrix of vertex combinations".into()));
            }
            let dm = eval_poly_matrix(&parse_matrix(d, &q)?, &q)?;
            let r = vnreg_regularize(&pm.augmentation(), &dm)?;
            let ok = r.verify()?;
            let q_list: Vec<String> = r.q_list.iter().map(|k| render_matrix(&k.to_poly_matrix())).collect();
            let vu = render_matrix(&r.vu()?);
            Ok(Report {
                text: format!(
                    "stages = {}\nu = {}\nv = {}\nvu = {vu}\nverified: {ok}",
                    q_list.len(),
                    render_matrix(&r.u),
                    render_rat_matrix(&r.v)
                ),
                json: json!({
                    "q_list": q_list,
                    "u": render_matrix(&r.u),
                    "v": render_rat_matrix(&r.v),
                    "vu": vu,
                    "verified": ok,
                }),
                negative: !ok,
            })
        }
        Command::Subquiver { vertices } => {
            let q = quiver_of(cli)?;
            let sub = complete_subquiver_containing(&q, vertices)?;
            let incl = GraphHom::inclusion(&sub, &q)?;
            let complete = check_complete_hom(&incl, &sub, &q)?;
            Ok(Report::ok(
                sub.to_json(),
                json!({ "quiver": serde_json::from_str::<Json>(&sub.to_json()).expect("valid JSON"), "complete": complete }),
            ))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Nf { .. } => "nf",
        Command::Mul { .. } => "mul",
        Command::SeriesTrunc { .. } => "series-trunc",
        Command::RatEq { .. } => "rat-eq",
        Command::Qeq { .. } => "qeq",
        Command::MonoidEq { .. } => "monoid-eq",
        Command::MonoidRefine { .. } => "monoid-refine",
        Command::Witness { .. } => "witness",
        Command::Higman { .. } => "higman",
        Command::Regularize { .. } => "regularize",
        Command::Subquiver { .. } => "subquiver",
    }
}

/// Runs a full command line (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(report) => {
            let code = if report.negative { 1 } else { 0 };
            let stdout = if cli.json {
                json!({ "command": name, "result": report.json }).to_string()
            } else {
                report.text
            };
            Output { code, stdout: stdout + "\n", stderr: String::new() }
        }
        Err(e) => {
            if cli.json {
                Output {
                    code: 2,
                    stdout: json!({ "command": name, "error": e.to_string() }).to_string() + "\n",
                    stderr: String::new(),
                }
            } else {
                Output { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}
