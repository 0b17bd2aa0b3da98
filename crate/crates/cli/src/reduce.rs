//! `mucheck reduce`: writes generated formulas and structures.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use mucheck_core::catalog::all_structures;
use mucheck_core::classifier::TemplatePair;
use mucheck_core::eval::holds;
use mucheck_core::logic::{dualize, to_special_form, Fragment};
use mucheck_core::reductions::{
    check_semantics, closure_formula, dual_template, endo_formula, equality_pspace_gadget,
    muhom_formula, nae_structure, quotient_reduction, rainbow_structure, smuhom_formula,
    verify_equality_gadget, verify_p_definition, GeneratedFormula, Limits,
};
use mucheck_core::structure::{Elem, Structure};
use mucheck_core::text::structure_to_text;

use crate::report::{write, Failure, Outcome, RunReport};
use crate::{load_formula, load_pair, load_structure};

/// Largest number of structures per universe size that `--verify` sweeps.
const SWEEP_CAP: u128 = 3000;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gadget {
    Endo,
    Muhom,
    Smuhom,
    Closure,
    Rbnae,
    EqPspace,
    Dual,
    Quotient,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    gadget: Gadget,
    /// Structure files: the source `A`, then `B` for the template gadgets.
    inputs: Vec<PathBuf>,
    /// Sentence file (`eq-pspace`, optional for `dual`).
    #[arg(long)]
    formula: Option<PathBuf>,
    /// Universe size of the rainbow and NAE structures.
    #[arg(long)]
    d: Option<usize>,
    /// Multiplicity, or the arity for `rbnae`.
    #[arg(long)]
    n: Option<usize>,
    /// Largest target size covered by the surjective formulas.
    #[arg(long)]
    m: Option<usize>,
    /// Size of the strong equality structure for `eq-pspace`.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Tuple for `closure`, 1-based, e.g. `"1 2"`.
    #[arg(long)]
    tuple: Option<String>,
    /// Fragment for `closure`.
    #[arg(long, default_value = "eao")]
    fragment: String,
    /// Directory to write the artifacts to; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check the artifacts against a direct computation.
    #[arg(long)]
    verify: bool,
}

/// Limits from `MUCHECK_MAX_NODES`, or the default.
fn limits() -> Outcome<Limits> {
    match std::env::var("MUCHECK_MAX_NODES") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_nodes| Limits { max_nodes })
            .map_err(|_| Failure::Usage(format!("MUCHECK_MAX_NODES=`{v}` is not a number"))),
        Err(_) => Ok(Limits::default()),
    }
}

struct Artifacts {
    files: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Artifacts {
    fn new() -> Self {
        Artifacts {
            files: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, text: String) {
        self.files.push((name.to_string(), text));
    }

    fn structure(&mut self, name: &str, header: &str, s: &Structure) {
        self.add(name, format!("# {header}\n{}", structure_to_text(s)));
    }
}

fn inputs(args: &ReduceArgs, want: usize) -> Outcome<()> {
    if args.inputs.len() != want {
        return Err(Failure::Usage(format!(
            "this gadget takes {want} structure file(s), {} given",
            args.inputs.len()
        )));
    }
    Ok(())
}

fn parse_tuple(text: &str, size: usize) -> Outcome<Vec<Elem>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| match w.parse::<usize>() {
            Ok(e) if e >= 1 && e <= size => Ok(e - 1),
            _ => Err(Failure::Usage(format!("bad tuple entry `{w}`"))),
        })
        .collect()
}

/// `check_semantics` on every strict structure similar to `a` of each
/// size in `sizes`, when there are at most [`SWEEP_CAP`] of them, and on
/// `a` itself.
fn sweep_semantics(
    g: &GeneratedFormula,
    a: &Structure,
    sizes: &[usize],
    notes: &mut Vec<String>,
) -> Outcome<()> {
    let mut checked = 0usize;
    let mut targets = vec![a.clone()];
    for &k in sizes {
        let count = a.signature().symbols().iter().try_fold(1u128, |acc, s| {
            let cells = (k as u32).checked_pow(s.arity as u32)?;
            let rels = 1u128.checked_shl(cells)?.checked_sub(2)?;
            acc.checked_mul(rels)
        });
        match count {
            Some(c) if c <= SWEEP_CAP => targets.extend(all_structures(a.signature(), k)?),
            _ => notes.push(format!("size {k}: too many structures to sweep, skipped")),
        }
    }
    for e in &targets {
        if let Some(t) = check_semantics(g, e)? {
            let t: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
            return Err(Failure::Failed(format!(
                "semantics fail on a structure of size {} at ({})",
                e.size(),
                t.join(",")
            )));
        }
        checked += 1;
    }
    notes.push(format!("semantics verified on {checked} structures"));
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of maps `[n] → [d]` that hit every element.
fn surjections(n: usize, d: usize) -> u128 {
    let mut total: i128 = 0;
    for j in 0..=d {
        let term = binomial(d as u128, j as u128) as i128 * ((d - j) as i128).pow(n as u32);
        total += if j % 2 == 0 { term } else { -term };
    }
    total as u128
}

fn build(args: &ReduceArgs, rep: &mut RunReport) -> Outcome<Artifacts> {
    let limits = limits()?;
    let mut art = Artifacts::new();
    match args.gadget {
        Gadget::Endo | Gadget::Muhom | Gadget::Smuhom | Gadget::Closure => {
            inputs(args, 1)?;
            let a = load_structure(&args.inputs[0], rep)?;
            let n = args.n.unwrap_or(1);
            let m = args.m.unwrap_or(a.size());
            let (name, g, sizes): (&str, GeneratedFormula, Vec<usize>) = match args.gadget {
                Gadget::Endo => ("endo.formula", endo_formula(&a), vec![2, 3]),
                Gadget::Muhom => ("muhom.formula", muhom_formula(&a, n, &limits)?, vec![2, 3]),
                Gadget::Smuhom => (
                    "smuhom.formula",
                    smuhom_formula(&a, n, m, &limits)?,
                    (2..=m.min(3)).collect(),
                ),
                _ => {
                    let text = args
                        .tuple
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("closure needs --tuple".into()))?;
                    let t = parse_tuple(text, a.size())?;
                    let l: Fragment = args.fragment.parse()?;
                    let most = t
                        .iter()
                        .map(|e| t.iter().filter(|f| *f == e).count())
                        .max()
                        .unwrap_or(1);
                    let g = closure_formula(&a, &t, l, args.n.unwrap_or(most), m, &limits)?;
                    let sizes = if l.contains(Fragment::FORALL) {
                        (2..=m.min(3)).collect()
                    } else {
                        vec![2, 3]
                    };
                    ("closure.formula", g, sizes)
                }
            };
            if args.verify {
                sweep_semantics(&g, &a, &sizes, &mut art.notes)?;
            }
            art.add(name, g.to_text());
        }
        Gadget::Rbnae => {
            inputs(args, 0)?;
            let d = args
                .d
                .ok_or_else(|| Failure::Usage("rbnae needs --d".into()))?;
            let n = args.n.unwrap_or(2 * d);
            let rb = rainbow_structure(d, n)?;
            let nae = nae_structure(d, n)?;
            if args.verify {
                let (r, s) = (rb.relation_at(0), nae.relation_at(0));
                if r.len() as u128 != surjections(n, d)
                    || s.len() as u128 != (d as u128).pow(n as u32) - d as u128
                    || !r.is_subset(s)
                {
                    return Err(Failure::Failed(
                        "rainbow or NAE relation has the wrong size".into(),
                    ));
                }
                art.notes.push(format!(
                    "|Rb| = {} surjections, |NAE| = {} = {d}^{n} - {d}, Rb ⊆ NAE",
                    r.len(),
                    s.len()
                ));
            }
            art.structure("rb.structure", &format!("rainbow {n}-tuples on [{d}]"), &rb);
            art.structure(
                "nae.structure",
                &format!("not-all-equal {n}-tuples on [{d}]"),
                &nae,
            );
        }
        Gadget::EqPspace => {
            inputs(args, 0)?;
            let path = args
                .formula
                .as_ref()
                .ok_or_else(|| Failure::Usage("eq-pspace needs --formula".into()))?;
            let text = crate::report::read(path)?;
            rep.input(&text);
            let f = mucheck_core::logic::parse_formula_untyped(&text)?;
            let sf = to_special_form(&f)?;
            let g = equality_pspace_gadget(&sf, args.k, &limits)?;
            if args.verify {
                let c = verify_equality_gadget(&g)?;
                if !c.holds() {
                    return Err(Failure::Failed(format!("gadget contract fails: {c:?}")));
                }
                art.notes.push(format!(
                    "([2]; =) ⊨ φ: {}, ([{}]; =) ⊨ ψ: {}, ([2]; =) ⊨ ψ: {}",
                    c.b_phi, args.k, c.a_psi, c.b_psi
                ));
            }
            art.add("eq-pspace.formula", g.to_text());
        }
        Gadget::Dual => {
            inputs(args, 2)?;
            let t = load_pair(&args.inputs[0], &args.inputs[1], rep)?;
            let d = dual_template(&t)?;
            if args.verify && dual_template(&d)? != t {
                return Err(Failure::Failed(
                    "dualizing twice does not give the template back".into(),
                ));
            }
            art.structure("dual-a.structure", "complement of B", d.a());
            art.structure("dual-b.structure", "complement of A", d.b());
            if let Some(path) = &args.formula {
                let f = load_formula(path, t.a(), rep)?;
                let fd = dualize(&f)?;
                if args.verify {
                    let (ya, yb) = (holds(t.a(), &f)?, holds(t.b(), &f)?);
                    let (da, db) = (holds(d.a(), &fd)?, holds(d.b(), &fd)?);
                    if da != !yb || db != !ya {
                        return Err(Failure::Failed(
                            "dual instance does not swap Yes and No".into(),
                        ));
                    }
                    art.notes.push(format!(
                        "A ⊨ φ: {ya}, B ⊨ φ: {yb}; B̄ ⊨ φ^d: {da}, Ā ⊨ φ^d: {db}"
                    ));
                }
                art.add("dual.formula", format!("# dual sentence\n{fd}\n"));
            }
        }
        Gadget::Quotient => {
            inputs(args, 2)?;
            let t: TemplatePair = load_pair(&args.inputs[0], &args.inputs[1], rep)?;
            let chain = quotient_reduction(&t)?;
            let defs = chain.definitions(&limits)?;
            if args.verify {
                if !chain.relaxation_holds()? {
                    return Err(Failure::Failed(
                        "the equality pair does not relax (C, D)".into(),
                    ));
                }
                let bad = chain.non_preserving_smuhoms()?;
                if !bad.is_empty() {
                    return Err(Failure::Failed(format!(
                        "{} smuhoms do not preserve ∼",
                        bad.len()
                    )));
                }
                for d in defs.values() {
                    if let Some(v) = verify_p_definition(d, &t)? {
                        return Err(Failure::Failed(v));
                    }
                }
                art.notes.push(format!(
                    "∼ has {} and {} classes; every smuhom preserves ∼; the sim definition verifies",
                    chain.partition_a.class_count(),
                    chain.partition_b.class_count()
                ));
            }
            let e = chain.equality.a();
            let f = chain.equality.b();
            art.structure(
                "quotient-a.structure",
                &format!("equality on the {} classes of A", e.size()),
                e,
            );
            art.structure(
                "quotient-b.structure",
                &format!("equality on the {} classes of B", f.size()),
                f,
            );
            for (sym, d) in &defs {
                art.add(&format!("{sym}.formula"), d.to_text());
            }
        }
    }
    Ok(art)
}

pub fn run(args: &ReduceArgs, rep: &mut RunReport) -> Outcome<String> {
    let art = build(args, rep)?;
    let mut out = String::new();
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Failure::Io(dir.clone(), e))?;
            for (name, text) in &art.files {
                let path = dir.join(name);
                write(&path, text)?;
                out.push_str(&format!("wrote {}\n", path.display()));
            }
        }
        None => {
            for (name, text) in &art.files {
                out.push_str(&format!("# file: {name}\n{text}"));
            }
        }
    }
    for n in &art.notes {
        out.push_str(&format!("# verified: {n}\n"));
    }
    Ok(out)
}
