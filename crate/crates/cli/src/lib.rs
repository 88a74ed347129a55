//! Command-line front end. Exit codes: 0 when the relation holds, the
//! formula is true, or the oracle agrees; 1 when it fails, is false, or
//! mismatches (evidence on stdout); 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use simcheck_core::{
    agreement_report, default_max_level, distinguishing_formula, equiv, eval, holds, parse_formula,
    parse_model, random_formula, random_lts, Alphabet, CheckResult, Evidence, Fragment, Lts, Model,
    Pairing, PreorderKind, StateId, StateRef, Variance,
};

#[derive(Parser)]
#[command(
    name = "simcheck",
    version,
    about = "Simulation preorders and their modal logics over finite labelled transition systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and report its size
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the left state is below the right one
    Preorder {
        #[arg(long, value_enum)]
        kind: KindArg,
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula at a state
    Eval {
        file: PathBuf,
        state: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Produce a formula telling the left state apart from the right one
    Distinguish {
        #[arg(long, value_enum)]
        kind: KindArg,
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two states are equivalent (the preorder both ways)
    Equiv {
        #[arg(long, value_enum)]
        kind: KindArg,
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the refinement engine against brute-force enumeration
    Oracle {
        file: PathBuf,
        /// Restrict to one kind/fragment pairing (default: all four)
        #[arg(long, value_enum)]
        pairing: Option<PairingArg>,
        /// Enumeration budget (default: 2n² levels)
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Generate reproducible random inputs
    Random {
        #[command(subcommand)]
        what: RandomCommand,
    },
}

#[derive(Subcommand)]
enum RandomCommand {
    /// Print a random model in flat form
    Lts {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        /// Expected out-degree per state and action
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, value_enum, default_value_t = VarianceArg::Mixed)]
        variance: VarianceArg,
    },
    /// Print a random formula
    Formula {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FragmentArg::Any)]
        fragment: FragmentArg,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long, value_enum, default_value_t = VarianceArg::Mixed)]
        variance: VarianceArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "sim")]
    Sim,
    #[value(name = "cc")]
    Cc,
    #[value(name = "conf")]
    Conf,
}

impl KindArg {
    fn label(self) -> &'static str {
        match self {
            KindArg::Sim => "sim",
            KindArg::Cc => "cc",
            KindArg::Conf => "conf",
        }
    }
}

impl From<KindArg> for PreorderKind {
    fn from(kind: KindArg) -> PreorderKind {
        match kind {
            KindArg::Sim => PreorderKind::Sim,
            KindArg::Cc => PreorderKind::Cc,
            KindArg::Conf => PreorderKind::Conf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FragmentArg {
    #[value(name = "s")]
    S,
    #[value(name = "sbar")]
    SBar,
    #[value(name = "cc")]
    Cc,
    #[value(name = "cs")]
    Cs,
    #[value(name = "any")]
    Any,
}

impl From<FragmentArg> for Fragment {
    fn from(fragment: FragmentArg) -> Fragment {
        match fragment {
            FragmentArg::S => Fragment::S,
            FragmentArg::SBar => Fragment::SBar,
            FragmentArg::Cc => Fragment::Cc,
            FragmentArg::Cs => Fragment::Cs,
            FragmentArg::Any => Fragment::Any,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    #[value(name = "sim-s")]
    SimS,
    #[value(name = "sim-sbar")]
    SimSBar,
    #[value(name = "cc-cc")]
    CcCc,
    #[value(name = "conf-cs")]
    ConfCs,
}

impl From<PairingArg> for Pairing {
    fn from(pairing: PairingArg) -> Pairing {
        match pairing {
            PairingArg::SimS => Pairing::SimS,
            PairingArg::SimSBar => Pairing::SimSBar,
            PairingArg::CcCc => Pairing::CcCc,
            PairingArg::ConfCs => Pairing::ConfCs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VarianceArg {
    #[value(name = "covariant")]
    Covariant,
    #[value(name = "contravariant")]
    Contravariant,
    #[value(name = "bivariant")]
    Bivariant,
    /// Cycle covariant, contravariant, bivariant across the actions
    #[value(name = "mixed")]
    Mixed,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Parse { file, json } => cmd_parse(&file, json),
        Command::Preorder { kind, file, left, right, json } => {
            cmd_preorder(kind, &file, &left, &right, json)
        }
        Command::Eval { file, state, formula, json } => cmd_eval(&file, &state, &formula, json),
        Command::Distinguish { kind, file, left, right, json } => {
            cmd_distinguish(kind, &file, &left, &right, json)
        }
        Command::Equiv { kind, file, left, right, json } => {
            cmd_equiv(kind, &file, &left, &right, json)
        }
        Command::Oracle { file, pairing, max_level, json } => {
            cmd_oracle(&file, pairing, max_level, json)
        }
        Command::Random { what } => cmd_random(what),
    }
}

fn load_model(path: &Path) -> Result<Model, String> {
    let text =
        fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))?;
    parse_model(&text).map_err(|err| format!("{}: {err}", path.display()))
}

/// Rebuilds the model with one extra isolated state named `0`, so the nil
/// process can be named on the command line even when the file never binds it.
fn with_nil(model: &Model) -> Result<Model, String> {
    let lts = &model.lts;
    let alphabet = lts.alphabet();
    let mut states: Vec<String> = lts.states().map(|s| lts.state_name(s).to_string()).collect();
    states.push("0".to_string());
    let transitions: Vec<(String, String, String)> = lts
        .transitions()
        .map(|(p, a, q)| {
            (
                lts.state_name(p).to_string(),
                alphabet.name(a).to_string(),
                lts.state_name(q).to_string(),
            )
        })
        .collect();
    let rebuilt =
        Lts::new(alphabet.clone(), states, transitions).map_err(|err| err.to_string())?;
    let names = model
        .names
        .iter()
        .map(|(name, &id)| {
            let moved = rebuilt.state(lts.state_name(id)).expect("state survives rebuild");
            (name.clone(), moved)
        })
        .collect();
    Ok(Model { lts: rebuilt, names })
}

fn resolve_states(model: Model, wanted: &[&str]) -> Result<(Model, Vec<StateId>), String> {
    let model = if wanted.iter().any(|w| *w == "0" && model.state(w).is_none()) {
        with_nil(&model)?
    } else {
        model
    };
    let ids = wanted
        .iter()
        .map(|w| model.state(w).ok_or_else(|| format!("unknown state `{w}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((model, ids))
}

fn cmd_parse(file: &Path, json: bool) -> Result<i32, String> {
    let model = load_model(file)?;
    let lts = &model.lts;
    let alphabet = lts.alphabet();
    let n_transitions = lts.transitions().count();
    if json {
        let actions: Vec<_> = alphabet
            .actions()
            .map(|a| {
                let variance = match alphabet.variance(a) {
                    Variance::Covariant => "covariant",
                    Variance::Contravariant => "contravariant",
                    Variance::Bivariant => "bivariant",
                };
                json!({"name": alphabet.name(a), "variance": variance})
            })
            .collect();
        println!(
            "{}",
            json!({
                "states": lts.n_states(),
                "transitions": n_transitions,
                "alphabet": actions,
            })
        );
    } else {
        println!(
            "{} states, {} transitions, {} actions",
            lts.n_states(),
            n_transitions,
            alphabet.actions().count()
        );
    }
    Ok(0)
}

fn cmd_preorder(
    kind: KindArg,
    file: &Path,
    left: &str,
    right: &str,
    json: bool,
) -> Result<i32, String> {
    let (model, ids) = resolve_states(load_model(file)?, &[left, right])?;
    let result = holds(
        kind.into(),
        StateRef::new(&model.lts, ids[0]),
        StateRef::new(&model.lts, ids[1]),
    )
    .map_err(|err| err.to_string())?;
    match result {
        CheckResult::Holds { witness } => {
            if json {
                let pairs: Vec<_> = witness.iter().map(|(p, q)| json!([p, q])).collect();
                println!(
                    "{}",
                    json!({
                        "kind": kind.label(), "left": left, "right": right,
                        "holds": true, "witness": pairs,
                    })
                );
            } else {
                println!("holds");
                println!("witness ({} pairs):", witness.len());
                for (p, q) in &witness {
                    println!("  ({p}, {q})");
                }
            }
            Ok(0)
        }
        CheckResult::Fails { formula } => {
            let rendered = formula.map(|f| f.display(model.lts.alphabet()).to_string());
            if json {
                println!(
                    "{}",
                    json!({
                        "kind": kind.label(), "left": left, "right": right,
                        "holds": false, "formula": rendered,
                    })
                );
            } else {
                println!("fails");
                if let Some(text) = rendered {
                    println!("formula: {text}");
                }
            }
            Ok(1)
        }
    }
}

fn cmd_eval(file: &Path, state: &str, formula: &str, json: bool) -> Result<i32, String> {
    let (model, ids) = resolve_states(load_model(file)?, &[state])?;
    let parsed =
        parse_formula(formula, model.lts.alphabet()).map_err(|err| err.to_string())?;
    let value = eval(&model.lts, ids[0], &parsed);
    if json {
        println!(
            "{}",
            json!({"state": state, "formula": formula, "value": value})
        );
    } else {
        println!("{value}");
    }
    Ok(if value { 0 } else { 1 })
}

fn cmd_distinguish(
    kind: KindArg,
    file: &Path,
    left: &str,
    right: &str,
    json: bool,
) -> Result<i32, String> {
    if kind == KindArg::Sim {
        return Err("plain simulation has no distinguishing fragment here; use cc or conf".into());
    }
    let (model, ids) = resolve_states(load_model(file)?, &[left, right])?;
    let formula = distinguishing_formula(
        kind.into(),
        StateRef::new(&model.lts, ids[0]),
        StateRef::new(&model.lts, ids[1]),
    )
    .map_err(|err| err.to_string())?;
    let rendered = formula.map(|f| f.display(model.lts.alphabet()).to_string());
    if json {
        println!(
            "{}",
            json!({
                "kind": kind.label(), "left": left, "right": right,
                "holds": rendered.is_none(), "formula": rendered,
            })
        );
    } else {
        match &rendered {
            None => println!("related"),
            Some(text) => println!("{text}"),
        }
    }
    Ok(if rendered.is_none() { 0 } else { 1 })
}

fn cmd_equiv(
    kind: KindArg,
    file: &Path,
    left: &str,
    right: &str,
    json: bool,
) -> Result<i32, String> {
    let (model, ids) = resolve_states(load_model(file)?, &[left, right])?;
    let value = equiv(
        kind.into(),
        StateRef::new(&model.lts, ids[0]),
        StateRef::new(&model.lts, ids[1]),
    )
    .map_err(|err| err.to_string())?;
    if json {
        println!(
            "{}",
            json!({"kind": kind.label(), "left": left, "right": right, "holds": value})
        );
    } else {
        println!("{}", if value { "equivalent" } else { "not equivalent" });
    }
    Ok(if value { 0 } else { 1 })
}

fn cmd_oracle(
    file: &Path,
    pairing: Option<PairingArg>,
    max_level: Option<u32>,
    json: bool,
) -> Result<i32, String> {
    let model = load_model(file)?;
    let lts = &model.lts;
    let cap = max_level.unwrap_or_else(|| default_max_level(lts));
    let pairings: Vec<Pairing> = match pairing {
        Some(p) => vec![p.into()],
        None => Pairing::all().to_vec(),
    };

    let mut saturated = true;
    let mut mismatches = Vec::new();
    let mut lines = Vec::new();
    for pairing in pairings {
        let report = agreement_report(lts, pairing, cap);
        saturated &= report.saturated;
        for mismatch in &report.mismatches {
            let left = lts.state_name(mismatch.left);
            let right = lts.state_name(mismatch.right);
            let evidence = match &mismatch.evidence {
                Evidence::SeparatingFormula(f) => {
                    json!({"formula": f.display(lts.alphabet()).to_string()})
                }
                Evidence::ViolatedClause(removal) => json!({"round": removal.round}),
            };
            mismatches.push(json!({
                "pairing": pairing.label(), "left": left, "right": right,
                "behavioral": mismatch.behavioral, "logical": mismatch.logical,
                "evidence": evidence,
            }));
        }
        lines.push(format!(
            "{}: {}{}",
            pairing.label(),
            if report.agrees() { "agreement" } else { "MISMATCH" },
            if report.saturated { "" } else { " (budget exhausted before saturation)" },
        ));
    }

    let ok = saturated && mismatches.is_empty();
    if json {
        println!("{}", json!({"saturated": saturated, "mismatches": mismatches}));
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn build_alphabet(actions: usize, variance: VarianceArg) -> Result<Alphabet, String> {
    if actions == 0 || actions > 26 {
        return Err("action count must be between 1 and 26".into());
    }
    let entries = (0..actions).map(|i| {
        let name = ((b'a' + i as u8) as char).to_string();
        let v = match variance {
            VarianceArg::Covariant => Variance::Covariant,
            VarianceArg::Contravariant => Variance::Contravariant,
            VarianceArg::Bivariant => Variance::Bivariant,
            VarianceArg::Mixed => match i % 3 {
                0 => Variance::Covariant,
                1 => Variance::Contravariant,
                _ => Variance::Bivariant,
            },
        };
        (name, v)
    });
    Alphabet::new(entries).map_err(|err| err.to_string())
}

fn cmd_random(what: RandomCommand) -> Result<i32, String> {
    match what {
        RandomCommand::Lts { seed, states, actions, density, variance } => {
            if states == 0 {
                return Err("need at least one state".into());
            }
            if !(0.0..=1000.0).contains(&density) {
                return Err("density must be between 0 and 1000".into());
            }
            let alphabet = build_alphabet(actions, variance)?;
            let lts = random_lts(seed, states, &alphabet, density);
            print!("{}", Model { lts, names: Default::default() }.to_flat_text());
            Ok(0)
        }
        RandomCommand::Formula { seed, fragment, depth, width, actions, variance } => {
            let alphabet = build_alphabet(actions, variance)?;
            let formula = random_formula(seed, fragment.into(), &alphabet, depth, width);
            println!("{}", formula.display(&alphabet));
            Ok(0)
        }
    }
}
