//! Exhaustive checks at small sizes, grouped into named suites.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::catalog::{
    equality_sentences, gap_examples, small_digraphs, small_sentences, special_forms,
    two_point_sentence,
};
use crate::classifier::{classify, ComplexityLabel, TemplatePair};
use crate::error::{Error, Result};
use crate::eval::{
    ae_fast_path, conp_algorithm, holds, np_algorithm, pmc_reference_decide, Answer, Compiled,
    InstanceStatus,
};
use crate::homomorphisms::{
    digraph_combine, enumerate_homomorphisms, enumerate_muhoms, enumerate_smuhoms,
    exists_constant_homomorphism, is_ae_smuhom, smuhom_profile, MultiValuedFunction,
};
use crate::logic::{dualize, Formula, Fragment, SpecialForm, Var};
use crate::reductions::{
    check_semantics, closure_formula, endo_formula, equality_pspace_gadget, muhom_formula,
    p_def_rewrite, p_definitions, quotient_reduction, rbnae_counterexample, rbnae_template,
    smuhom_formula, verify_equality_gadget, verify_p_definition, Limits,
};
use crate::structure::{for_each_product, rank, Elem, Structure};

/// The named sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Example11,
    LemmaPreservation,
    MuhomFormula,
    SmuhomFormula,
    Dichotomy,
    Algorithms,
    DigraphCombine,
    EqPspaceContract,
    GapExamples,
    Quotient,
    Duality,
    PDefinability,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Example11,
        Suite::LemmaPreservation,
        Suite::MuhomFormula,
        Suite::SmuhomFormula,
        Suite::Dichotomy,
        Suite::Algorithms,
        Suite::DigraphCombine,
        Suite::EqPspaceContract,
        Suite::GapExamples,
        Suite::Quotient,
        Suite::Duality,
        Suite::PDefinability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Example11 => "example-1-1",
            Suite::LemmaPreservation => "lemma-preservation",
            Suite::MuhomFormula => "muhom-formula",
            Suite::SmuhomFormula => "smuhom-formula",
            Suite::Dichotomy => "dichotomy",
            Suite::Algorithms => "algorithms",
            Suite::DigraphCombine => "digraph-combine",
            Suite::EqPspaceContract => "eq-pspace-contract",
            Suite::GapExamples => "gap-examples",
            Suite::Quotient => "quotient",
            Suite::Duality => "duality",
            Suite::PDefinability => "p-definability",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Example11 => "the two-point sentence is true in ([2]; =) and false in ([3]; =)",
            Suite::LemmaPreservation => "multi-homomorphisms preserve {∃,∧,∨} formulas and smuhoms preserve {∃,∀,∧,∨} formulas",
            Suite::MuhomFormula => "homomorphism, multi-homomorphism and closure formulas define what they claim",
            Suite::SmuhomFormula => "smuhom formulas and surjective closure formulas define what they claim",
            Suite::Dichotomy => "{∃,∧,∨}: L iff a constant homomorphism, else NP-complete with a rainbow definition",
            Suite::Algorithms => "NP, coNP and ∃∀ membership algorithms agree with direct evaluation",
            Suite::DigraphCombine => "digraph templates with both smuhom kinds have a combined ∃∀-smuhom",
            Suite::EqPspaceContract => "the equality gadget keeps Yes instances Yes and No instances No",
            Suite::GapExamples => "profiles and labels of the named open-case templates",
            Suite::Quotient => "smuhoms of complementation-closed templates preserve ∼ and the quotient chain relaxes",
            Suite::Duality => "complementing a structure and dualizing a sentence negates its truth value",
            Suite::PDefinability => "rainbow and NAE definitions verify and rewritten sentences keep their promise status",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const KEPT_FAILURES: usize = 20;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub suite: Suite,
    /// Number of individual checks performed.
    pub checked: u64,
    /// Total number of failed checks.
    pub failure_count: u64,
    /// The first failures, verbatim.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}: {} checks, {} failures, {:.2?}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.checked,
            self.failure_count,
            self.elapsed
        )?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  counterexample: {x}")?;
        }
        if self.failure_count as usize > self.failures.len() {
            writeln!(
                f,
                "  ... {} more",
                self.failure_count as usize - self.failures.len()
            )?;
        }
        Ok(())
    }
}

struct Tally {
    checked: u64,
    failure_count: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

pub fn run_suite(suite: Suite) -> Result<SweepReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    match suite {
        Suite::Example11 => example_1_1(&mut t)?,
        Suite::LemmaPreservation => lemma_preservation(&mut t)?,
        Suite::MuhomFormula => muhom_formulas(&mut t)?,
        Suite::SmuhomFormula => smuhom_formulas(&mut t)?,
        Suite::Dichotomy => dichotomy(&mut t)?,
        Suite::Algorithms => algorithms(&mut t)?,
        Suite::DigraphCombine => digraph_combination(&mut t)?,
        Suite::EqPspaceContract => eq_pspace_contract(&mut t)?,
        Suite::GapExamples => gap_profiles(&mut t)?,
        Suite::Quotient => quotient(&mut t)?,
        Suite::Duality => duality(&mut t)?,
        Suite::PDefinability => p_definability(&mut t)?,
    }
    Ok(SweepReport {
        suite,
        checked: t.checked,
        failure_count: t.failure_count,
        failures: t.failures,
        notes: t.notes,
        elapsed: start.elapsed(),
    })
}

fn text(s: &Structure) -> String {
    crate::text::structure_to_text(s).replace('\n', " ")
}

fn pair_text(t: &TemplatePair) -> String {
    format!("A = [{}] B = [{}]", text(t.a()), text(t.b()))
}

fn mvf_text(f: &MultiValuedFunction) -> String {
    crate::classifier::inline_mvf(f)
}

fn pairs_of(structs: &[Structure]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..structs.len()).flat_map(move |i| (0..structs.len()).map(move |j| (i, j)))
}

fn example_1_1(t: &mut Tally) -> Result<()> {
    let phi = two_point_sentence();
    let two = holds(&Structure::equality("Q", 2)?, &phi)?;
    let three = holds(&Structure::equality("Q", 3)?, &phi)?;
    t.check(two, || format!("{phi} is false in ([2]; =)"));
    t.check(!three, || format!("{phi} is true in ([3]; =)"));
    Ok(())
}

/// Truth tables over `A^p` as bitmasks, in lexicographic order.
fn table_mask(c: &Compiled, s: &Structure) -> u64 {
    c.truth_table(s)
        .iter()
        .enumerate()
        .fold(0u64, |acc, (r, &b)| acc | (b as u64) << r)
}

/// For each `a ∈ A^p` (by rank), the ranks of `f(a) ⊆ B^p` as a bitmask.
fn image_masks(f: &MultiValuedFunction, p: usize) -> Vec<u64> {
    let (ka, kb) = (f.source_size(), f.target_size());
    let total = ka.pow(p as u32);
    let mut a = vec![0; p];
    (0..total)
        .map(|r| {
            crate::structure::unrank_into(r, ka, &mut a);
            let lists: Vec<Vec<Elem>> = a.iter().map(|&x| f.values(x)).collect();
            let mut m = 0u64;
            for_each_product(&lists, |b| {
                m |= 1 << rank(b, kb);
                true
            });
            m
        })
        .collect()
}

fn preserved(images: &[u64], in_a: u64, in_b: u64) -> bool {
    images
        .iter()
        .enumerate()
        .all(|(r, img)| in_a >> r & 1 == 0 || img & !in_b == 0)
}

struct Family {
    p: usize,
    formulas: Vec<Formula>,
}

fn lemma_preservation(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let sig = digraphs[0].signature().clone();
    // Existential closures of the matrices for multi-homomorphisms, the
    // special forms themselves for smuhoms.
    let mut exist = Vec::new();
    let mut alt = Vec::new();
    for p in 0..=2 {
        let mut fe = Vec::new();
        let mut fa = Vec::new();
        for m in 1..=2 {
            for sf in special_forms("R", p, m) {
                let vars: Vec<Var> = sf
                    .blocks
                    .iter()
                    .flat_map(|(y, z)| [y.clone(), z.clone()])
                    .collect();
                fe.push(Formula::exists_all(&vars, sf.matrix.clone()));
                fa.push(sf.to_formula());
            }
        }
        exist.push(Family { p, formulas: fe });
        alt.push(Family { p, formulas: fa });
    }
    let tables = |fams: &[Family]| -> Result<Vec<Vec<Vec<u64>>>> {
        fams.iter()
            .map(|fam| {
                let free = crate::catalog::free_names(fam.p);
                fam.formulas
                    .iter()
                    .map(|f| {
                        let c = Compiled::new(f, &sig, &free)?;
                        Ok(digraphs.iter().map(|s| table_mask(&c, s)).collect())
                    })
                    .collect()
            })
            .collect()
    };
    let te = tables(&exist)?;
    let ta = tables(&alt)?;
    let formulas = exist.iter().map(|f| f.formulas.len()).sum::<usize>();
    t.notes.push(format!(
        "{} structures, {} formulas per quantifier prefix",
        digraphs.len(),
        formulas
    ));
    let (mut muhoms, mut smuhoms) = (0u64, 0u64);
    for (i, j) in pairs_of(&digraphs) {
        let (a, b) = (&digraphs[i], &digraphs[j]);
        for (surjective, fs) in [
            (false, enumerate_muhoms(a, b)?),
            (true, enumerate_smuhoms(a, b)?),
        ] {
            let (fams, tabs) = if surjective {
                (&alt, &ta)
            } else {
                (&exist, &te)
            };
            for f in &fs {
                if surjective {
                    smuhoms += 1;
                } else {
                    muhoms += 1;
                }
                for (fam, tab) in fams.iter().zip(tabs) {
                    let images = image_masks(f, fam.p);
                    for (phi, row) in fam.formulas.iter().zip(tab) {
                        t.check(preserved(&images, row[i], row[j]), || {
                            format!(
                                "{} {} from [{}] to [{}] does not preserve {phi}",
                                if surjective { "smuhom" } else { "muhom" },
                                mvf_text(f),
                                text(a),
                                text(b)
                            )
                        });
                    }
                }
            }
        }
    }
    t.notes
        .push(format!("{muhoms} multi-homomorphisms, {smuhoms} smuhoms"));
    Ok(())
}

fn muhom_formulas(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let limits = Limits::default();
    for a in &digraphs {
        let mut gens = vec![
            endo_formula(a),
            muhom_formula(a, 1, &limits)?,
            muhom_formula(a, 2, &limits)?,
        ];
        for len in 1..=2 {
            for_each_product(&vec![(0..a.size()).collect::<Vec<_>>(); len], |tuple| {
                let n = if len == 2 && tuple[0] == tuple[1] {
                    2
                } else {
                    1
                };
                gens.push(closure_formula(a, tuple, Fragment::EAO, n, 1, &limits).unwrap());
                true
            });
        }
        for e in &digraphs {
            for g in &gens {
                let bad = check_semantics(g, e)?;
                t.check(bad.is_none(), || {
                    format!(
                        "{} on A = [{}], E = [{}] at {:?}",
                        g.semantics,
                        text(a),
                        text(e),
                        bad
                    )
                });
            }
        }
    }
    Ok(())
}

fn smuhom_formulas(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let limits = Limits::default();
    let m = 3;
    for a in &digraphs {
        let gens = [
            smuhom_formula(a, 1, m, &limits)?,
            smuhom_formula(a, 2, m, &limits)?,
        ];
        for e in &digraphs {
            for g in &gens {
                let bad = check_semantics(g, e)?;
                t.check(bad.is_none(), || {
                    format!(
                        "{} on A = [{}], E = [{}] at {:?}",
                        g.semantics,
                        text(a),
                        text(e),
                        bad
                    )
                });
            }
        }
    }
    // Surjective closure formulas: all tuples of length at most two over
    // two-element sources, single elements over three-element sources
    // against two-element targets.
    for a in &digraphs {
        let lens: &[usize] = if a.size() == 2 { &[1, 2] } else { &[1] };
        let mut gens = Vec::new();
        for &len in lens {
            for_each_product(&vec![(0..a.size()).collect::<Vec<_>>(); len], |tuple| {
                let n = if len == 2 && tuple[0] == tuple[1] {
                    2
                } else {
                    1
                };
                gens.push(closure_formula(a, tuple, Fragment::EFAO, n, m, &limits).unwrap());
                true
            });
        }
        for e in digraphs.iter().filter(|e| a.size() == 2 || e.size() == 2) {
            for g in &gens {
                let bad = check_semantics(g, e)?;
                t.check(bad.is_none(), || {
                    format!(
                        "{} on A = [{}], E = [{}] at {:?}",
                        g.semantics,
                        text(a),
                        text(e),
                        bad
                    )
                });
            }
        }
    }
    Ok(())
}

fn dichotomy(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let (mut easy, mut hard, mut non) = (0, 0, 0);
    for (i, j) in pairs_of(&digraphs) {
        let tp = TemplatePair::new(digraphs[i].clone(), digraphs[j].clone())?;
        let has_hom = !enumerate_homomorphisms(tp.a(), tp.b())?.is_empty();
        let v = classify(&tp, Fragment::EAO)?;
        if !has_hom {
            non += 1;
            t.check(v.label == ComplexityLabel::NotATemplate, || {
                format!(
                    "{}: no homomorphism but labelled {}",
                    pair_text(&tp),
                    v.label
                )
            });
            continue;
        }
        let constant = exists_constant_homomorphism(tp.a(), tp.b())?.is_some();
        let expected = if constant {
            easy += 1;
            ComplexityLabel::InL
        } else {
            hard += 1;
            ComplexityLabel::NPComplete
        };
        t.check(v.label == expected, || {
            format!("{}: expected {expected}, got {}", pair_text(&tp), v.label)
        });
        if !constant {
            let bad = rbnae_counterexample(&tp, Fragment::EAO)?;
            t.check(bad.is_none(), || {
                format!(
                    "{}: multi-homomorphism {} is not one of the rainbow template",
                    pair_text(&tp),
                    mvf_text(bad.as_ref().unwrap())
                )
            });
        }
    }
    t.notes.push(format!(
        "{easy} in L, {hard} NP-complete, {non} not templates"
    ));
    Ok(())
}

fn status(in_a: bool, in_b: bool) -> InstanceStatus {
    match (in_a, in_b) {
        (true, _) => InstanceStatus::Yes,
        (false, false) => InstanceStatus::No,
        (false, true) => InstanceStatus::OutsidePromise,
    }
}

fn agrees(answer: Answer, s: InstanceStatus) -> bool {
    match s {
        InstanceStatus::Yes => answer == Answer::Yes,
        InstanceStatus::No => answer == Answer::No,
        InstanceStatus::OutsidePromise => true,
    }
}

fn algorithms(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let sentences: Vec<SpecialForm> = small_sentences("R", 2);
    let formulas: Vec<Formula> = sentences.iter().map(SpecialForm::to_formula).collect();
    let truth: Vec<Vec<bool>> = digraphs
        .iter()
        .map(|s| {
            formulas
                .iter()
                .map(|f| holds(s, f))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (mut np, mut conp, mut ae) = (0u64, 0u64, 0u64);
    for (i, j) in pairs_of(&digraphs) {
        let tp = TemplatePair::new(digraphs[i].clone(), digraphs[j].clone())?;
        let p = tp.profile()?;
        if p.is_empty() {
            continue;
        }
        let mut a_stars: Vec<Elem> = p.all_smuhoms.iter().flat_map(|f| f.full_points()).collect();
        let mut b_stars: Vec<Elem> = p
            .all_smuhoms
            .iter()
            .flat_map(|f| f.common_values())
            .collect();
        let mut ae_pairs: Vec<(Elem, Elem)> = p
            .all_smuhoms
            .iter()
            .flat_map(|f| {
                let bs = f.common_values();
                f.full_points()
                    .into_iter()
                    .flat_map(move |a| bs.clone().into_iter().map(move |b| (a, b)))
            })
            .collect();
        for v in [&mut a_stars, &mut b_stars] {
            v.sort_unstable();
            v.dedup();
        }
        ae_pairs.sort_unstable();
        ae_pairs.dedup();
        for (s, sf) in sentences.iter().enumerate() {
            let st = status(truth[i][s], truth[j][s]);
            for &a in &a_stars {
                np += 1;
                let ans = np_algorithm(&tp, a, sf)?;
                t.check(agrees(ans, st), || {
                    format!(
                        "np a*={} on {} for {sf}: {ans}, status {st:?}",
                        a + 1,
                        pair_text(&tp)
                    )
                });
            }
            for &b in &b_stars {
                conp += 1;
                let ans = conp_algorithm(&tp, b, sf)?;
                t.check(agrees(ans, st), || {
                    format!(
                        "conp b*={} on {} for {sf}: {ans}, status {st:?}",
                        b + 1,
                        pair_text(&tp)
                    )
                });
            }
            for &(a, b) in &ae_pairs {
                ae += 1;
                let ans = ae_fast_path(&tp, a, b, sf)?;
                t.check(agrees(ans, st), || {
                    format!(
                        "ae a*={} b*={} on {} for {sf}: {ans}, status {st:?}",
                        a + 1,
                        b + 1,
                        pair_text(&tp)
                    )
                });
            }
        }
        // Spot-check the cached statuses against the reference decider.
        let (ans, st) = pmc_reference_decide(&tp, &formulas[0])?;
        t.check(
            st == status(truth[i][0], truth[j][0]) && agrees(ans, st),
            || {
                format!(
                    "reference decider disagrees with the cache on {}",
                    pair_text(&tp)
                )
            },
        );
    }
    t.notes.push(format!(
        "{} sentences; {np} NP, {conp} coNP and {ae} ∃∀ runs",
        sentences.len()
    ));
    Ok(())
}

fn digraph_combination(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let mut both = 0;
    for (i, j) in pairs_of(&digraphs) {
        let (a, b) = (&digraphs[i], &digraphs[j]);
        let p = smuhom_profile(a, b)?;
        if p.has_forall.is_none() || p.has_exists.is_none() {
            continue;
        }
        both += 1;
        t.check(p.has_ae.is_some(), || {
            format!(
                "A = [{}] B = [{}] has both kinds but no ∃∀-smuhom",
                text(a),
                text(b)
            )
        });
        let foralls: Vec<&MultiValuedFunction> = p
            .all_smuhoms
            .iter()
            .filter(|f| !f.full_points().is_empty())
            .take(20)
            .collect();
        let exists: Vec<&MultiValuedFunction> = p
            .all_smuhoms
            .iter()
            .filter(|f| !f.common_values().is_empty())
            .take(20)
            .collect();
        for f in &foralls {
            for g in &exists {
                let (h, a_star, b_star, case) = digraph_combine(f, g, a, b)?;
                let ok = is_ae_smuhom(&h, a, b, a_star, b_star)?;
                t.check(ok, || {
                    format!(
                        "combining {} and {} on A = [{}] B = [{}] gave {} ({case:?})",
                        mvf_text(f),
                        mvf_text(g),
                        text(a),
                        text(b),
                        mvf_text(&h)
                    )
                });
            }
        }
    }
    t.notes.push(format!("{both} templates with both kinds"));
    Ok(())
}

fn eq_pspace_contract(t: &mut Tally) -> Result<()> {
    let limits = Limits::default();
    let sentences = equality_sentences("Q", 2);
    t.notes.push(format!(
        "{} sentences up to equivalence, k = 3",
        sentences.len()
    ));
    let mut true_in_two = 0;
    for sf in &sentences {
        let g = equality_pspace_gadget(sf, 3, &limits)?;
        let c = verify_equality_gadget(&g)?;
        true_in_two += c.b_phi as usize;
        t.check(c.forward(), || {
            format!("{sf}: true in [2] but ψ false in [3]")
        });
        t.check(c.backward(), || {
            format!("{sf}: ψ true in [2] but φ false in [2]")
        });
    }
    t.notes.push(format!("{true_in_two} of them true in [2]"));
    let phi = crate::logic::to_special_form(&two_point_sentence())?;
    let c = verify_equality_gadget(&equality_pspace_gadget(&phi, 3, &limits)?)?;
    t.check(c.b_phi && c.a_psi, || {
        "two-point sentence: ψ false in [3]".into()
    });
    Ok(())
}

fn gap_profiles(t: &mut Tally) -> Result<()> {
    for (name, tp, forall, exists) in gap_examples() {
        let p = tp.profile()?;
        t.check(p.has_forall.is_some() == forall, || {
            format!("{name}: ∀-smuhom presence")
        });
        t.check(p.has_exists.is_some() == exists, || {
            format!("{name}: ∃-smuhom presence")
        });
        t.check(p.has_ae.is_none(), || {
            format!("{name}: unexpected ∃∀-smuhom")
        });
        let expected = match (forall, exists) {
            (true, true) => ComplexityLabel::InNPcapCoNPHardnessOpen,
            _ => ComplexityLabel::NPHardAndCoNPHardMembershipOpen,
        };
        let v = classify(&tp, Fragment::EFAO)?;
        t.check(v.label == expected, || {
            format!("{name}: labelled {}", v.label)
        });
        t.notes
            .push(format!("{name}: {} smuhoms", p.all_smuhoms.len()));
    }
    Ok(())
}

fn quotient(t: &mut Tally) -> Result<()> {
    let closed: Vec<Structure> = small_digraphs()
        .iter()
        .map(Structure::complementation_closure)
        .collect::<Result<_>>()?;
    let mut templates = 0;
    for (i, j) in pairs_of(&closed) {
        let tp = TemplatePair::new(closed[i].clone(), closed[j].clone())?;
        if tp.profile()?.is_empty() {
            continue;
        }
        templates += 1;
        let chain = quotient_reduction(&tp)?;
        let bad = chain.non_preserving_smuhoms()?;
        t.check(bad.is_empty(), || {
            format!("{}: smuhom {} breaks ∼", pair_text(&tp), mvf_text(&bad[0]))
        });
        t.check(chain.relaxation_holds()?, || {
            format!("{}: quotient maps are not smuhoms", pair_text(&tp))
        });
        let v = classify(&tp, Fragment::EFAO)?;
        t.check(v.label == ComplexityLabel::PSPACEComplete, || {
            format!("{}: labelled {}", pair_text(&tp), v.label)
        });
    }
    t.notes.push(format!("{templates} closed templates"));
    Ok(())
}

fn duality(t: &mut Tally) -> Result<()> {
    let digraphs = small_digraphs();
    let sentences: Vec<Formula> = small_sentences("R", 2)
        .iter()
        .map(SpecialForm::to_formula)
        .collect();
    let dual: Vec<Formula> = sentences.iter().map(dualize).collect::<Result<_>>()?;
    let mut truth = Vec::new();
    for s in &digraphs {
        let c = s.complement()?;
        let mut row = Vec::new();
        for (phi, psi) in sentences.iter().zip(&dual) {
            let x = holds(s, phi)?;
            t.check(x != holds(&c, psi)?, || {
                format!("[{}]: {phi} and the dual in the complement agree", text(s))
            });
            row.push(x);
        }
        truth.push(row);
    }
    // Yes and No trade places between a template (A, B) and (B̄, Ā).
    for (i, j) in pairs_of(&digraphs) {
        if crate::homomorphisms::find_smuhom(&digraphs[i], &digraphs[j])?.is_none() {
            continue;
        }
        for (s, (&in_a, &in_b)) in truth[i].iter().zip(&truth[j]).enumerate() {
            let st = status(in_a, in_b);
            let swapped = status(!in_b, !in_a);
            let ok = matches!(
                (st, swapped),
                (InstanceStatus::Yes, InstanceStatus::No)
                    | (InstanceStatus::No, InstanceStatus::Yes)
                    | (
                        InstanceStatus::OutsidePromise,
                        InstanceStatus::OutsidePromise
                    )
            );
            t.check(ok, || {
                format!("status swap failed for pair ({i}, {j}), sentence {s}")
            });
        }
    }
    Ok(())
}

/// Sentences over the 4-ary rainbow symbol: single atoms with one block,
/// and every eighth single atom with two.
fn rainbow_sentences() -> Vec<Formula> {
    let mut out = Vec::new();
    for m in 1..=2usize {
        let vars: Vec<Var> = crate::catalog::block_names(m)
            .into_iter()
            .flat_map(|(y, z)| [y, z])
            .collect();
        let mut atoms = Vec::new();
        for_each_product(&vec![(0..vars.len()).collect::<Vec<_>>(); 4], |ix| {
            atoms.push(Formula::atom_owned(
                "S",
                ix.iter().map(|&i| vars[i].clone()).collect(),
            ));
            true
        });
        let step = if m == 1 { 1 } else { 8 };
        for atom in atoms.into_iter().step_by(step) {
            let sf = SpecialForm::new(Vec::new(), crate::catalog::block_names(m), atom).unwrap();
            out.push(sf.to_formula());
        }
    }
    out
}

fn p_definability(t: &mut Tally) -> Result<()> {
    let limits = Limits::default();
    let two = crate::catalog::binary_representatives(2);
    let sentences = rainbow_sentences();
    let (mut eao, mut efao) = (0, 0);
    let all = small_digraphs();
    for (a, b) in two.iter().flat_map(|a| all.iter().map(move |b| (a, b))) {
        let tp = TemplatePair::new(a.clone(), b.clone())?;
        let rb = rbnae_template(2, b.size())?;
        let profile = tp.profile()?;
        let cases = [
            (
                Fragment::EAO,
                !enumerate_homomorphisms(tp.a(), tp.b())?.is_empty()
                    && exists_constant_homomorphism(tp.a(), tp.b())?.is_none(),
            ),
            (
                Fragment::EFAO,
                !profile.is_empty() && profile.has_exists.is_none(),
            ),
        ];
        for (l, applies) in cases {
            if !applies {
                continue;
            }
            if l == Fragment::EAO {
                eao += 1;
            } else {
                efao += 1;
            }
            t.check(rbnae_counterexample(&tp, l)?.is_none(), || {
                format!(
                    "{}: rainbow template not p-definable over {l}",
                    pair_text(&tp)
                )
            });
            let defs = p_definitions(&tp, &rb, l, &limits)?;
            for def in defs.values() {
                let bad = verify_p_definition(def, &tp)?;
                t.check(bad.is_none(), || {
                    format!("{} over {l}: {}", pair_text(&tp), bad.unwrap())
                });
            }
            for phi in &sentences {
                let psi = p_def_rewrite(phi, &defs)?;
                let yes = holds(rb.a(), phi)?;
                let no = !holds(rb.b(), phi)?;
                if yes {
                    t.check(holds(tp.a(), &psi)?, || {
                        format!(
                            "{}: Yes instance {phi} rewritten to a sentence false in A",
                            pair_text(&tp)
                        )
                    });
                }
                if no {
                    t.check(!holds(tp.b(), &psi)?, || {
                        format!(
                            "{}: No instance {phi} rewritten to a sentence true in B",
                            pair_text(&tp)
                        )
                    });
                }
            }
        }
    }
    t.notes.push(format!(
        "{eao} hard {{∃,∧,∨}} and {efao} {{∃,∀,∧,∨}} templates without ∃-smuhoms with a two-element A; {} rainbow sentences",
        sentences.len()
    ));
    Ok(())
}

/// Runs every suite in order.
pub fn run_all() -> Result<Vec<SweepReport>> {
    Suite::ALL.into_iter().map(run_suite).collect()
}
