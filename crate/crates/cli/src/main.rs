use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rsafe_core::dot::{game_to_dot, tree_to_dot, word_to_dot};
use rsafe_core::game::emptiness_game;
use rsafe_core::{
    analyze, monitor_equivalent, parse_ltl, read_hoa, read_hoa_with_signature, write_hoa,
    CheckOptions, Error, Formula, MooreChecker, MooreMachine, ParityTreeAutomaton,
    ParityWordAutomaton, Property, SafetyClass, Signature, DEFAULT_STATE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "rsafe",
    version,
    about = "Decide whether a property is a reactive safety property"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full decision procedure and report the safety class.
    Check {
        #[command(flatten)]
        source: Source,
        /// Write the tight monitor (HOA) to this file when the property is safe.
        #[arg(long, value_name = "FILE")]
        emit_monitor: Option<PathBuf>,
        /// Print a counterexample lasso when the property is not reactive safe.
        #[arg(long)]
        witness: bool,
        /// Dump every pipeline stage as a Graphviz file into this directory.
        #[arg(long, value_name = "DIR")]
        dot_dir: Option<PathBuf>,
    },
    /// Decide only whether the word property is a linear-time safety property.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Decide whether two deterministic safety automata (HOA) have the same language.
    Equiv { first: PathBuf, second: PathBuf },
    /// Decide whether a Moore machine satisfies the property on every input.
    Accepts {
        #[command(flatten)]
        source: Source,
        /// Moore machine in the line-based text format.
        #[arg(long, value_name = "FILE")]
        machine: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Origin {
    /// LTL formula.
    #[arg(long, value_name = "TEXT")]
    ltl: Option<String>,
    /// Word automaton in HOA format.
    #[arg(long, value_name = "FILE")]
    hoa: Option<PathBuf>,
    /// Deterministic tree automaton in the line-based text format.
    #[arg(long, value_name = "FILE")]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    origin: Origin,
    /// Input propositions, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    inputs: Option<Vec<String>>,
    /// Output propositions, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    outputs: Option<Vec<String>>,
    /// Cap on the number of states produced by determinization.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_STATE_BUDGET)]
    max_states: usize,
}

enum Loaded {
    Ltl(Formula),
    Word(ParityWordAutomaton),
    Tree(ParityTreeAutomaton),
}

impl Loaded {
    fn property(&self) -> Property<'_> {
        match self {
            Loaded::Ltl(f) => Property::Ltl(f),
            Loaded::Word(a) => Property::Word(a),
            Loaded::Tree(t) => Property::Tree(t),
        }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => e.fmt(f),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_resource_limit() => 3,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

impl Source {
    fn declared_signature(&self) -> Result<Option<Signature>, Failure> {
        match (&self.inputs, &self.outputs) {
            (None, None) => Ok(None),
            (i, o) => {
                let i = i.clone().unwrap_or_default();
                let o = o.clone().unwrap_or_default();
                Ok(Some(Signature::new(&i, &o)?))
            }
        }
    }

    fn load(&self) -> Result<(Loaded, Signature), Failure> {
        let declared = self.declared_signature()?;
        if let Some(text) = &self.origin.ltl {
            let sig = declared.ok_or_else(|| {
                Failure::Usage("--ltl needs --inputs and/or --outputs".to_owned())
            })?;
            let f = parse_ltl(text, &sig)?;
            return Ok((Loaded::Ltl(f), sig));
        }
        if let Some(path) = &self.origin.hoa {
            let text = read(path)?;
            let a = match &declared {
                Some(sig) => read_hoa_with_signature(&text, sig)?,
                None => read_hoa(&text)?,
            };
            let sig = a.signature().clone();
            return Ok((Loaded::Word(a), sig));
        }
        let path = self.origin.tree.as_ref().expect("clap enforces one source");
        let t = ParityTreeAutomaton::parse(&read(path)?)?;
        let sig = t.signature().clone();
        if let Some(d) = declared {
            if d != sig {
                return Err(Error::SignatureMismatch(
                    "declared propositions differ from the tree automaton header".to_owned(),
                )
                .into());
            }
        }
        Ok((Loaded::Tree(t), sig))
    }

    fn options(&self) -> CheckOptions {
        CheckOptions {
            max_states: self.max_states,
        }
    }
}

fn verdict_line(class: SafetyClass) -> &'static str {
    match class {
        SafetyClass::LinearSafe => "LINEAR-SAFE",
        SafetyClass::ReactiveSafeNotLinear => "REACTIVE-SAFE (not linear-time safe)",
        SafetyClass::NotReactiveSafe => "NOT-REACTIVE-SAFE",
    }
}

fn check(
    source: &Source,
    emit_monitor: Option<&Path>,
    witness: bool,
    dot_dir: Option<&Path>,
) -> Result<u8, Failure> {
    let (loaded, sig) = source.load()?;
    let analysis = analyze(loaded.property(), &sig, &source.options())?;
    let verdict = &analysis.verdict;
    println!("{}", verdict_line(verdict.class()));
    if witness {
        if let Some(w) = verdict.witness() {
            println!("{}", w.display(&sig));
        }
    }
    if let (Some(path), Some(monitor)) = (emit_monitor, verdict.monitor()) {
        write(path, &write_hoa(monitor))?;
    }
    if let Some(dir) = dot_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        if let Some(nba) = &analysis.nba {
            write(&dir.join("nba.dot"), &word_to_dot(nba))?;
        }
        write(&dir.join("dpw.dot"), &word_to_dot(&analysis.dpw))?;
        write(&dir.join("spread.dot"), &tree_to_dot(&analysis.spread))?;
        write(
            &dir.join("game.dot"),
            &game_to_dot(&emptiness_game(&analysis.spread)),
        )?;
        write(
            &dir.join("pruned.dot"),
            &tree_to_dot(&analysis.pruned.automaton),
        )?;
        if let Some(monitor) = verdict.monitor() {
            write(&dir.join("monitor.dot"), &word_to_dot(monitor))?;
        }
    }
    Ok(u8::from(!verdict.class().is_reactive_safe()))
}

fn deterministic_word(
    loaded: Loaded,
    sig: &Signature,
    options: &CheckOptions,
) -> Result<ParityWordAutomaton, Failure> {
    Ok(match loaded {
        Loaded::Ltl(f) => {
            let nba = rsafe_core::translate(&f, sig)?;
            rsafe_core::determinize(&nba, options.max_states)?
        }
        Loaded::Word(a) if a.is_deterministic() => a.complete()?,
        Loaded::Word(a) => rsafe_core::determinize(&a, options.max_states)?,
        Loaded::Tree(t) => t.unspread()?.complete()?,
    })
}

fn classify(source: &Source) -> Result<u8, Failure> {
    let (loaded, sig) = source.load()?;
    let dpw = deterministic_word(loaded, &sig, &source.options())?;
    if dpw.classify_linear_safety()? {
        println!("LINEAR-SAFE");
        Ok(0)
    } else {
        println!("NOT-LINEAR-SAFE");
        Ok(1)
    }
}

fn equiv(first: &Path, second: &Path) -> Result<u8, Failure> {
    let a = read_hoa(&read(first)?)?;
    let b = read_hoa(&read(second)?)?;
    if monitor_equivalent(&a, &b)? {
        println!("EQUIVALENT");
        Ok(0)
    } else {
        println!("NOT-EQUIVALENT");
        Ok(1)
    }
}

fn accepts(source: &Source, machine: &Path) -> Result<u8, Failure> {
    let (loaded, sig) = source.load()?;
    let m = MooreMachine::parse(&read(machine)?)?;
    if m.signature() != &sig {
        return Err(Error::SignatureMismatch(
            "machine propositions differ from the property".to_owned(),
        )
        .into());
    }
    let checker = match loaded {
        Loaded::Tree(t) => MooreChecker::for_tree(&t)?,
        other => MooreChecker::for_word(&deterministic_word(other, &sig, &source.options())?)?,
    };
    if checker.accepts(&m)? {
        println!("ACCEPTED");
        Ok(0)
    } else {
        println!("REJECTED");
        Ok(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check {
            source,
            emit_monitor,
            witness,
            dot_dir,
        } => check(
            source,
            emit_monitor.as_deref(),
            *witness,
            dot_dir.as_deref(),
        ),
        Command::Classify { source } => classify(source),
        Command::Equiv { first, second } => equiv(first, second),
        Command::Accepts { source, machine } => accepts(source, machine),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rsafe: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
