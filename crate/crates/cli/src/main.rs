use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tlwb_core::adqbf_eval::eval_adqbf_with;
use tlwb_core::error::SourceSpan;
use tlwb_core::formula::{FreshNames, FuncSymbol, PropVar, So2Formula};
use tlwb_core::frontend::difftest::{difftest, DiffConfig};
use tlwb_core::frontend::files::{load_gdas, load_kripke, load_team};
use tlwb_core::frontend::{self, print, Logic, Value};
use tlwb_core::gda::GdaRegistry;
use tlwb_core::so2_eval::is_true_with;
use tlwb_core::team_eval::{eval_minc, eval_team_with, is_true_sentence_team_with, team_satisfiable_with};
use tlwb_core::translate::*;
use tlwb_core::{Budget, Error};

#[derive(Parser)]
#[command(name = "tlwb", version, about = "Evaluate and translate quantified propositional logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and print it in canonical form.
    Parse {
        #[arg(long)]
        logic: Logic,
        file: PathBuf,
    },
    /// Decide truth: exit 0 when true, 1 when false.
    Eval {
        #[arg(long)]
        logic: Logic,
        file: PathBuf,
        /// Team file for team and propositional formulas.
        #[arg(long)]
        team: Option<PathBuf>,
        /// Kripke-model file for modal formulas.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Generalized-atom definitions.
        #[arg(long)]
        gda: Option<PathBuf>,
    },
    /// Run one translation pass and print its output.
    Translate {
        #[arg(long)]
        pass: String,
        file: PathBuf,
        #[arg(long)]
        gda: Option<PathBuf>,
    },
    /// Differential test of a pass over generated inputs.
    Difftest {
        #[arg(long)]
        pass: String,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
    },
}

/// A failure with its exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded { .. }) { 3 } else { 2 };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

/// `file:line:col: reason` for errors that carry a span into `text`.
fn located(path: &Path, text: &str, e: Error) -> Failure {
    match e {
        Error::Parse(p) => Failure(2, format!("{}:{}: {}", path.display(), position(text, p.span), p.kind)),
        other => other.into(),
    }
}

fn position(text: &str, span: SourceSpan) -> String {
    let before = &text[..span.begin.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    format!("{line}:{col}")
}

fn load(logic: Logic, path: &Path) -> Result<Value, Failure> {
    let text = read(path)?;
    frontend::parse(logic, &text).map_err(|e| located(path, &text, e.into()))
}

fn gdas(path: Option<&Path>) -> Result<GdaRegistry, Failure> {
    match path {
        None => Ok(GdaRegistry::new()),
        Some(p) => {
            let text = read(p)?;
            load_gdas(&text).map_err(|e| located(p, &text, e))
        }
    }
}

fn verdict(value: bool) -> Result<u8, Failure> {
    println!("{value}");
    Ok(if value { 0 } else { 1 })
}

fn eval(logic: Logic, file: &Path, team: Option<&Path>, model: Option<&Path>, gda: Option<&Path>) -> Result<u8, Failure> {
    let budget = Budget::default();
    let gdas = gdas(gda)?;
    let team = match team {
        Some(p) => {
            let text = read(p)?;
            Some(load_team(&text).map_err(|e| located(p, &text, e))?)
        }
        None => None,
    };
    match load(logic, file)? {
        Value::So2(phi) => verdict(is_true_with(&phi, &budget)?),
        Value::Adqbf(inst) => verdict(eval_adqbf_with(&inst, &budget)?),
        Value::Prop(theta) => {
            // Flat truth on a team, or validity without one.
            let rows: Vec<Vec<(PropVar, bool)>> = match &team {
                Some(x) => x.assignments().map(|r| x.domain().iter().cloned().zip(r).collect()).collect(),
                None => {
                    let vars: Vec<PropVar> = theta.vars().into_iter().collect();
                    if vars.len() > 20 {
                        return Err(Error::BudgetExceeded { what: "propositional variables", needed: vars.len() as u128, cap: 20 }.into());
                    }
                    (0..1u32 << vars.len()).map(|m| vars.iter().enumerate().map(|(i, v)| (v.clone(), m >> i & 1 == 1)).collect()).collect()
                }
            };
            let mut all = true;
            for row in rows {
                let value = |v: &PropVar| row.iter().find(|(w, _)| w == v).map(|(_, b)| *b);
                if let Some(v) = theta.vars().into_iter().find(|v| value(v).is_none()) {
                    return Err(Error::FreeVarOutsideDomain(v.to_string()).into());
                }
                all &= theta.eval(&|v| value(v).unwrap_or(false));
            }
            verdict(all)
        }
        Value::Team(phi) => match team {
            Some(x) => verdict(eval_team_with(&phi, &x, &gdas, &budget)?),
            None if phi.free_vars().is_empty() => verdict(is_true_sentence_team_with(&phi, &gdas, &budget)?),
            None => verdict(team_satisfiable_with(&phi, &gdas, &budget)?),
        },
        Value::Modal(phi) => {
            let p = model.ok_or_else(|| Failure(2, "modal formulas need --model".into()))?;
            let text = read(p)?;
            let k = load_kripke(&text).map_err(|e| located(p, &text, e))?;
            verdict(eval_minc(&phi, &k.model, k.team)?)
        }
    }
}

fn input_logic(pass: Pass) -> Logic {
    match pass {
        Pass::Swap | Pass::Simplify | Pass::PrenexUnique | Pass::So2uToAdqbf | Pass::CloseSentence => Logic::So2,
        Pass::Collapse | Pass::AdqbfToQptlDep | Pass::QptlToPtlDep => Logic::Adqbf,
        _ => Logic::Team,
    }
}

/// The leading `∀x∃f` or `∃x∀f` of a swap input.
fn swap_pair(phi: &So2Formula) -> Option<(FuncSymbol, FuncSymbol)> {
    let (x, inner) = match phi {
        So2Formula::Exists(x, body) => (x, body.as_ref()),
        _ => phi.as_forall()?,
    };
    let f = match inner {
        So2Formula::Exists(f, _) => f,
        _ => inner.as_forall()?.0,
    };
    Some((x.clone(), f.clone()))
}

fn translate(pass_name: &str, file: &Path, gda: Option<&Path>) -> Result<u8, Failure> {
    let pass = Pass::from_name(pass_name).ok_or_else(|| Failure(2, format!("unknown pass `{pass_name}`")))?;
    let input = load(input_logic(pass), file)?;
    let out = match (pass, input) {
        (Pass::Swap, Value::So2(phi)) => {
            let (x, f) = swap_pair(&phi).ok_or_else(|| Failure(2, "expected a formula starting with A x. E f/k. or E x. A f/k.".into()))?;
            Value::So2(swap_quantifier(&phi, &x, &f)?)
        }
        (Pass::Simplify, Value::So2(phi)) => Value::So2(simplify_applications(&phi)),
        (Pass::PrenexUnique, Value::So2(phi)) => Value::So2(to_prenex_unique(&phi)?),
        (Pass::So2uToAdqbf, Value::So2(phi)) => Value::Adqbf(so2u_to_adqbf(&phi)?),
        (Pass::CloseSentence, Value::So2(psi)) => {
            let f = psi.free_symbols().into_iter().next().ok_or_else(|| Failure(2, "expected one free function symbol".into()))?;
            let mut fresh = FreshNames::new(psi.names());
            let vars: Vec<PropVar> = (0..f.arity()).map(|_| fresh.fresh_var("p")).collect();
            Value::So2(close_sentence(&psi, &vars)?)
        }
        (Pass::Collapse, Value::Adqbf(i)) => Value::Adqbf(collapse_last_universal_block(&i)?),
        (Pass::AdqbfToQptlDep, Value::Adqbf(i)) => Value::Team(adqbf_to_qptl_dep(&i)?),
        (Pass::QptlToPtlDep, Value::Adqbf(i)) => Value::Team(qptl_dep_to_ptl_dep(&i)?),
        (Pass::DepToUnary, Value::Team(phi)) => Value::Team(dep_to_unary_sentence(&phi)),
        (Pass::UnaryDepElim, Value::Team(phi)) => Value::Team(unary_dep_elim(&phi)),
        (Pass::QplincToMinc, Value::Team(phi)) => Value::Modal(qplinc_to_minc(&phi)?),
        (Pass::PdValidityWrapper, Value::Team(phi)) => Value::Team(pd_validity_wrapper(&phi)?),
        (Pass::TeamToSo2, Value::Team(phi)) => {
            let vars: Vec<PropVar> = phi.free_vars().into_iter().collect();
            let mut fresh = FreshNames::new(phi.all_vars().iter().map(|v| v.name().to_string()));
            let f = fresh.fresh_symbol("f", vars.len());
            Value::So2(team_to_so2(&phi, &vars, &f, &gdas(gda)?)?)
        }
        _ => unreachable!("input logic matches the pass"),
    };
    println!("{}", print(&out));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { logic, file } => {
            println!("{}", print(&load(logic, &file)?));
            Ok(0)
        }
        Command::Eval { logic, file, team, model, gda } => eval(logic, &file, team.as_deref(), model.as_deref(), gda.as_deref()),
        Command::Translate { pass, file, gda } => translate(&pass, &file, gda.as_deref()),
        Command::Difftest { pass, seeds, size, vars, first_seed } => {
            let p = Pass::from_name(&pass).ok_or_else(|| Failure(2, format!("unknown pass `{pass}`")))?;
            let report = difftest(p, first_seed..first_seed + seeds, DiffConfig { size, vars }, &Budget::default());
            println!("{report}");
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
