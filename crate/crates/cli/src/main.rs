//! `mucheck`: promise model checking from the command line.

mod reduce;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use mucheck_core::classifier::{classify, inline_mvf, ComplexityLabel, TemplatePair};
use mucheck_core::eval::{eval, find_witnesses, Assignment};
use mucheck_core::homomorphisms::{
    candidate_count, enumerate_homomorphisms, enumerate_muhoms, enumerate_smuhoms, maximal_muhoms,
    smuhom_profile,
};
use mucheck_core::logic::{parse_formula, to_special_form, Formula, Fragment};
use mucheck_core::structure::Structure;
use mucheck_core::sweeps::{run_suite, Suite};
use mucheck_core::text::parse_structure;

use report::{read, Failure, Outcome, RunReport};

/// Above this many candidate functions `enumerate` asks for `--force`.
const ENUMERATION_WARNING: u128 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "mucheck",
    version,
    about = "Promise model checking over finite structures"
)]
struct Cli {
    /// Print command, input digest, rules and wall time to stderr.
    #[arg(long, global = true)]
    report: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula in a structure.
    Check {
        structure: PathBuf,
        formula: PathBuf,
        /// Also print witness functions for the existential variables.
        #[arg(long)]
        witnesses: bool,
        /// Values of free variables, 1-based, e.g. `--assign x=2`.
        #[arg(long, value_name = "VAR=ELEM")]
        assign: Vec<String>,
        /// `key: value` output.
        #[arg(long)]
        json_like: bool,
    },
    /// Print witness functions for a negation-free formula, or `none`.
    Witnesses {
        structure: PathBuf,
        formula: PathBuf,
        #[arg(long, value_name = "VAR=ELEM")]
        assign: Vec<String>,
    },
    /// List maps of one kind from A to B.
    Enumerate {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Smuhom)]
        kind: Kind,
        /// Run even when the candidate space is very large.
        #[arg(long)]
        force: bool,
    },
    /// Smuhoms from A to B and which special kinds occur.
    Profile {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json_like: bool,
    },
    /// Complexity of the promise problem of (A, B) for a fragment.
    Classify {
        a: PathBuf,
        b: PathBuf,
        /// `ea`, `eao`, `eaforall` or `eao-forall`, optionally followed by
        /// `-eq`, `-neq`, `-neg`.
        #[arg(long)]
        fragment: String,
        #[arg(long)]
        json_like: bool,
    },
    /// Build a formula or structures for one of the reductions.
    Reduce(reduce::ReduceArgs),
    /// Run a verification sweep.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hom,
    Muhom,
    Smuhom,
    Maximal,
}

pub(crate) fn load_structure(path: &Path, rep: &mut RunReport) -> Outcome<Structure> {
    let text = read(path)?;
    rep.input(&text);
    Ok(parse_structure(&text)?)
}

pub(crate) fn load_formula(path: &Path, s: &Structure, rep: &mut RunReport) -> Outcome<Formula> {
    let text = read(path)?;
    rep.input(&text);
    Ok(parse_formula(&text, s.signature())?)
}

pub(crate) fn load_pair(a: &Path, b: &Path, rep: &mut RunReport) -> Outcome<TemplatePair> {
    let a = load_structure(a, rep)?;
    let b = load_structure(b, rep)?;
    Ok(TemplatePair::new(a, b)?)
}

fn assignment(pairs: &[String], s: &Structure) -> Outcome<Assignment> {
    let mut a = Assignment::new();
    for p in pairs {
        let (var, val) = p
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("bad assignment `{p}`; expected VAR=ELEM")))?;
        match val.trim().parse::<usize>() {
            Ok(e) if e >= 1 && e <= s.size() => a.set(var.trim(), e - 1),
            _ => {
                return Err(Failure::Usage(format!(
                    "`{val}` is not an element of a universe of size {}",
                    s.size()
                )))
            }
        }
    }
    Ok(a)
}

fn check(
    structure: &Path,
    formula: &Path,
    witnesses: bool,
    assign: &[String],
    json_like: bool,
    rep: &mut RunReport,
) -> Outcome<String> {
    let s = load_structure(structure, rep)?;
    let f = load_formula(formula, &s, rep)?;
    let a = assignment(assign, &s)?;
    let truth = eval(&s, &f, &a)?;
    let mut out = if json_like {
        format!("result: {truth}\n")
    } else {
        format!("{truth}\n")
    };
    if witnesses && truth {
        let sf = to_special_form(&f)?;
        if let Some(w) = find_witnesses(&s, &sf, &a)? {
            out.push_str(&format!("special form: {sf}\n"));
            for line in w.to_string().lines() {
                if json_like {
                    out.push_str(&format!("witness: {line}\n"));
                } else {
                    out.push_str(&format!("  {line}\n"));
                }
            }
        }
    }
    Ok(out)
}

fn witnesses(
    structure: &Path,
    formula: &Path,
    assign: &[String],
    rep: &mut RunReport,
) -> Outcome<String> {
    let s = load_structure(structure, rep)?;
    let f = load_formula(formula, &s, rep)?;
    let a = assignment(assign, &s)?;
    let sf = to_special_form(&f)?;
    Ok(match find_witnesses(&s, &sf, &a)? {
        Some(w) if sf.m() == 0 => format!("# {sf}\n# no quantifier blocks; the matrix holds\n{w}"),
        Some(w) => format!("# {sf}\n{w}"),
        None => "none\n".into(),
    })
}

fn enumerate(a: &Path, b: &Path, kind: Kind, force: bool, rep: &mut RunReport) -> Outcome<String> {
    let a = load_structure(a, rep)?;
    let b = load_structure(b, rep)?;
    let candidates = match kind {
        Kind::Hom => (b.size() as u128).saturating_pow(a.size() as u32),
        _ => candidate_count(&a, &b),
    };
    if candidates > ENUMERATION_WARNING {
        if !force {
            return Err(Failure::Core(mucheck_core::Error::EnumerationLimit {
                candidates,
                limit: ENUMERATION_WARNING,
            }));
        }
        eprintln!("warning: about {candidates} candidate maps");
    }
    let lines: Vec<String> = match kind {
        Kind::Hom => enumerate_homomorphisms(&a, &b)?
            .iter()
            .map(|h| {
                let img: Vec<String> = h.iter().map(|e| (e + 1).to_string()).collect();
                format!("[{}]", img.join(" "))
            })
            .collect(),
        Kind::Muhom => enumerate_muhoms(&a, &b)?.iter().map(inline_mvf).collect(),
        Kind::Smuhom => enumerate_smuhoms(&a, &b)?.iter().map(inline_mvf).collect(),
        Kind::Maximal => maximal_muhoms(&a, &b)?.iter().map(inline_mvf).collect(),
    };
    let mut out = String::new();
    for l in &lines {
        out.push_str(l);
        out.push('\n');
    }
    out.push_str(&format!("# count: {}\n", lines.len()));
    Ok(out)
}

fn profile(a: &Path, b: &Path, json_like: bool, rep: &mut RunReport) -> Outcome<String> {
    let a = load_structure(a, rep)?;
    let b = load_structure(b, rep)?;
    let p = smuhom_profile(&a, &b)?;
    let fw = p
        .forall_smuhom()
        .map(|(f, x)| format!("{} a*={}", inline_mvf(f), x + 1));
    let ew = p
        .exists_smuhom()
        .map(|(f, y)| format!("{} b*={}", inline_mvf(f), y + 1));
    let aw = p
        .ae_smuhom()
        .map(|(f, x, y)| format!("{} a*={} b*={}", inline_mvf(f), x + 1, y + 1));
    let show = |w: Option<String>| w.unwrap_or_else(|| "none".into());
    Ok(if json_like {
        format!(
            "smuhoms: {}\nforall: {}\nexists: {}\nexists-forall: {}\n",
            p.all_smuhoms.len(),
            show(fw),
            show(ew),
            show(aw)
        )
    } else {
        format!(
            "{} surjective multi-homomorphisms\n  ∀-smuhom   {}\n  ∃-smuhom   {}\n  ∃∀-smuhom  {}\n",
            p.all_smuhoms.len(),
            show(fw),
            show(ew),
            show(aw)
        )
    })
}

fn classify_cmd(
    a: &Path,
    b: &Path,
    fragment: &str,
    json_like: bool,
    rep: &mut RunReport,
) -> Outcome<(String, u8)> {
    let l: Fragment = fragment.parse()?;
    let t = load_pair(a, b, rep)?;
    let v = classify(&t, l)?;
    rep.citations.push(v.rule.citation().to_string());
    let code = if v.label == ComplexityLabel::NotATemplate {
        4
    } else {
        0
    };
    Ok((v.report(json_like), code))
}

fn verify(suite: &str, rep: &mut RunReport) -> Outcome<String> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let mut out = String::new();
    let mut failed = Vec::new();
    for s in suites {
        let r = run_suite(s)?;
        rep.citations.push(format!("{s}: {:.2?}", r.elapsed));
        out.push_str(&format!(
            "{} {s}: {} checks, {} failures\n",
            if r.passed() { "PASS" } else { "FAIL" },
            r.checked,
            r.failure_count
        ));
        for n in &r.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for f in &r.failures {
            out.push_str(&format!("  counterexample: {f}\n"));
        }
        if !r.passed() {
            failed.push(s.to_string());
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Failed(format!("failed: {}", failed.join(", "))))
    }
}

fn run(cli: &Cli, rep: &mut RunReport) -> Outcome<(String, u8)> {
    let ok = |s: String| Ok((s, 0));
    match &cli.command {
        Command::Check {
            structure,
            formula,
            witnesses,
            assign,
            json_like,
        } => ok(check(
            structure, formula, *witnesses, assign, *json_like, rep,
        )?),
        Command::Witnesses {
            structure,
            formula,
            assign,
        } => ok(witnesses(structure, formula, assign, rep)?),
        Command::Enumerate { a, b, kind, force } => ok(enumerate(a, b, *kind, *force, rep)?),
        Command::Profile { a, b, json_like } => ok(profile(a, b, *json_like, rep)?),
        Command::Classify {
            a,
            b,
            fragment,
            json_like,
        } => classify_cmd(a, b, fragment, *json_like, rep),
        Command::Reduce(args) => ok(reduce::run(args, rep)?),
        Command::Verify { suite } => ok(verify(suite, rep)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut rep = RunReport::new(std::env::args().collect::<Vec<_>>().join(" "));
    let code = match run(&cli, &mut rep) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if cli.report {
        eprint!("{}", rep.render(start.elapsed(), code));
    }
    ExitCode::from(code)
}
