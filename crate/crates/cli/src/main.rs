//! `smilelab` command-line front end.
//!
//! Exit codes: 0 success or all PASS, 1 FAIL verdicts present, 2 invariant
//! violation, 3 parse error, 4 budget exceeded, 5 unbound name or other
//! usage error.

mod error;
mod workspace;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use smilelab::algebra::check_algebra;
use smilelab::duality::dual_module;
use smilelab::format::{self, FileKind};
use smilelab::modrep::Submodule;
use smilelab::proplab::{check_property, Battery, Property, Sizes, Suite};
use smilelab::residual::{rho, test_ideal, TestIdealOptions};

use error::{CliError, CliResult};
use workspace::Workspace;

#[derive(Parser)]
#[command(name = "smilelab", version, about = "Submodule selectors, their smile duals and a falsification suite")]
struct Cli {
    /// Bind NAME to the module, vector list or ideal stored at PATH (repeatable).
    #[arg(long = "bind", value_name = "NAME=PATH", global = true)]
    bind: Vec<String>,
    /// Battery seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Battery sizes: minimal, default or large.
    #[arg(long, global = true)]
    sizes: Option<Sizes>,
    /// Largest submodule dimension for `enumerate`.
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
    /// Enumeration budget (number of submodules).
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra, module, vector list, ideal or suite file.
    Check { path: PathBuf },
    /// Evaluate a selector expression on a module.
    Apply { selector: String, module: PathBuf },
    /// Apply the residual closure of a selector to a submodule L of M.
    Closure { selector: String, submodule: PathBuf, module: PathBuf },
    /// Print the Matlis dual of a module in module file format.
    Dual { module: PathBuf },
    /// Compute the test ideal chain of a selector.
    Testideal {
        selector: String,
        /// Algebra file (defaults to the algebra of the first bound module).
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify { suite: PathBuf },
    /// List the submodules of a module.
    Enumerate { module: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {}", e.message),
                Format::Machine => println!("{}", json!({ "error": e.message, "exit_code": e.code })),
            }
            ExitCode::from(e.code)
        }
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn vectors_text(vs: &[Vec<u32>]) -> String {
    vs.iter()
        .map(|v| format!("[{}]\n", v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")))
        .collect()
}

fn submodule_output(cli: &Cli, heading: String, s: &Submodule) -> Output {
    Output::ok(match cli.format {
        Format::Text => format!(
            "{heading}: submodule of dimension {} in dimension {}\n{}",
            s.dim(),
            s.ambient_dim(),
            vectors_text(&s.basis())
        ),
        Format::Machine => format!(
            "{}\n",
            json!({ "selector": heading, "dim": s.dim(), "ambient_dim": s.ambient_dim(), "basis": s.basis() })
        ),
    })
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Check { path } => cmd_check(cli, path),
        Command::Apply { selector, module } => {
            let loaded = format::load_module(module)?;
            let ws = Workspace::new(&loaded.algebra, &cli.bind, cli.budget)?;
            let alpha = ws.compile(selector)?;
            let s = alpha.eval(&loaded.module).map_err(CliError::from_selector)?;
            Ok(submodule_output(cli, format!("{}({})", alpha.name(), module.display()), &s))
        }
        Command::Closure {
            selector,
            submodule,
            module,
        } => {
            let loaded = format::load_module(module)?;
            let ws = Workspace::new(&loaded.algebra, &cli.bind, cli.budget)?;
            let alpha = ws.compile(selector)?;
            let l = load_submodule(submodule, &loaded.module)?;
            let cl = rho(&ws.env.lab(), &alpha)
                .apply(&l, &loaded.module)
                .map_err(CliError::from_residual)?;
            Ok(submodule_output(cli, format!("closure of L under rho({})", alpha.name()), &cl))
        }
        Command::Dual { module } => {
            let src = read(module)?;
            let reference = format::module_algebra_ref(&src).map_err(|error| format::LoadError::Parse {
                path: module.clone(),
                error,
            })?;
            let loaded = format::load_module(module)?;
            let d = dual_module(&loaded.module);
            Ok(Output::ok(match cli.format {
                Format::Text => format::write_module(&d, &reference),
                Format::Machine => format!(
                    "{}\n",
                    json!({
                        "algebra": reference,
                        "dim": d.dim(),
                        "actions": d.actions().iter().map(|a| a.row_vectors()).collect::<Vec<_>>(),
                    })
                ),
            }))
        }
        Command::Testideal { selector, algebra } => cmd_testideal(cli, selector, algebra.as_deref()),
        Command::Verify { suite } => {
            let mut s = Suite::load(suite)?;
            if let Some(seed) = cli.seed {
                s = s.with_seed(seed);
            }
            if let Some(sizes) = cli.sizes {
                s = s.with_sizes(sizes);
            }
            let report = smilelab::proplab::run_suite(&s);
            let code = if report.passed() { 0 } else { 1 };
            let text = match cli.format {
                Format::Text => report.render_text(),
                Format::Machine => {
                    let (pass, fail) = report.counts();
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&json!({
                            "verdict": if report.passed() { "PASS" } else { "FAIL" },
                            "pass": pass,
                            "fail": fail,
                            "report": report,
                        }))
                        .expect("report serializes")
                    )
                }
            };
            Ok(Output { text, code })
        }
        Command::Enumerate { module } => {
            let loaded = format::load_module(module)?;
            let m = &loaded.module;
            let subs = m
                .enumerate_submodules(cli.max_dim.unwrap_or(m.dim()), cli.budget)
                .map_err(|e| CliError::budget(e.to_string()))?;
            Ok(Output::ok(match cli.format {
                Format::Text => {
                    let mut out = format!("{} submodules\n", subs.len());
                    for (i, s) in subs.iter().enumerate() {
                        let basis: Vec<String> = s
                            .basis()
                            .iter()
                            .map(|v| format!("[{}]", v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")))
                            .collect();
                        out.push_str(&format!("{i}: dim {} <{}>\n", s.dim(), basis.join(", ")));
                    }
                    out
                }
                Format::Machine => format!(
                    "{}\n",
                    json!({ "count": subs.len(), "submodules": subs.iter().map(|s| s.basis()).collect::<Vec<_>>() })
                ),
            }))
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| {
        format::LoadError::Io {
            path: path.to_path_buf(),
            source,
        }
        .into()
    })
}

fn load_submodule(path: &Path, m: &Arc<smilelab::modrep::ModuleRep>) -> CliResult<Submodule> {
    let src = read(path)?;
    let vs = format::parse_vectors(&src, m.dim(), m.p()).map_err(|error| format::LoadError::Parse {
        path: path.to_path_buf(),
        error,
    })?;
    m.submodule_spanned(&vs)
        .map_err(|e| CliError::invalid(format!("{}: not a submodule: {e}", path.display())))
}

fn cmd_check(cli: &Cli, path: &Path) -> CliResult<Output> {
    let (src, kind) = format::read_with_kind(path)?;
    let parse_err = |error| format::LoadError::Parse {
        path: path.to_path_buf(),
        error,
    };
    let (summary, machine) = match kind {
        FileKind::Algebra => {
            let table = format::parse_algebra_table(&src).map_err(parse_err)?;
            let report = check_algebra(&table);
            if !report.passed() {
                return Err(CliError::invalid(format!("{}: {report}", path.display())));
            }
            let n = report.nilpotency_index.unwrap_or(0);
            (
                format!(
                    "algebra over F_{} of dimension {}: {report}",
                    table.p,
                    table.dim()
                ),
                json!({ "kind": "algebra", "p": table.p, "dim": table.dim(), "nilpotency_index": n }),
            )
        }
        FileKind::Module => {
            let loaded = format::load_module(path)?;
            let m = &loaded.module;
            (
                format!(
                    "module of dimension {} over {}: PASS",
                    m.dim(),
                    loaded.algebra_path.display()
                ),
                json!({ "kind": "module", "dim": m.dim() }),
            )
        }
        FileKind::Vectors | FileKind::Ideal => {
            let table: toml::Table = toml::from_str(&src).map_err(|e| CliError::parse(e.message().to_string()))?;
            let n = table.values().next().and_then(|v| v.as_array()).map_or(0, Vec::len);
            let what = if kind == FileKind::Ideal { "ideal generators" } else { "vectors" };
            (
                format!("{n} {what}: PASS (shape checked when bound to a module)"),
                json!({ "kind": what, "count": n }),
            )
        }
    };
    Ok(Output::ok(match cli.format {
        Format::Text => format!("{}: {summary}\n", path.display()),
        Format::Machine => format!("{}\n", machine),
    }))
}

fn cmd_testideal(cli: &Cli, selector: &str, algebra: Option<&Path>) -> CliResult<Output> {
    let algebra = match algebra {
        Some(p) => format::load_algebra(p)?,
        None => Workspace::algebra_of_first_module(&cli.bind)?,
    };
    let ws = Workspace::new(&algebra, &cli.bind, cli.budget)?;
    let alpha = ws.compile(selector)?;
    let battery = Battery::generate(&algebra, cli.seed.unwrap_or(1), cli.sizes.unwrap_or(Sizes::Default));
    let functorial = check_property(&alpha, Property::Functorial, &battery).passed();
    let mut modules = battery.module_arcs();
    modules.extend(ws.modules());
    let opts = TestIdealOptions {
        budget: cli.budget,
        ..TestIdealOptions::default()
    };
    let report = test_ideal(&ws.env.lab(), &alpha, &modules, functorial, &opts).map_err(CliError::from_residual)?;
    let code = if report.passed() { 0 } else { 1 };
    let text = match cli.format {
        Format::Text => format!(
            "test ideal: {}\n{}",
            algebra.format_ideal(&report.via_smile),
            report.render(&algebra)
        ),
        Format::Machine => format!(
            "{}\n",
            json!({
                "selector": report.selector,
                "test_ideal": report.via_smile.basis(),
                "gorenstein": report.gorenstein,
                "hypotheses_verified": report.hypotheses_verified,
                "complete_enumeration": report.complete_enumeration,
                "via_smile": report.via_smile.basis(),
                "via_annE": report.via_ann_e.basis(),
                "via_modules": report.via_modules.basis(),
                "finitistic": report.finitistic.basis(),
                "finitistic_via_smile": report.finitistic_via_smile.basis(),
                "via_cyclic": report.via_cyclic.basis(),
                "via_ideal_colons": report.via_ideal_colons.basis(),
                "relations": report.relations.iter().map(|r| json!({ "name": r.name, "holds": r.holds })).collect::<Vec<_>>(),
                "verdict": if report.passed() { "PASS" } else { "FAIL" },
            })
        ),
    };
    Ok(Output { text, code })
}
