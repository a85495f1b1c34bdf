//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use aspsc_core::analysis::classify;
use aspsc_core::embedding::{
    embed_brave_query, embed_cautious_query, embed_coherence, recover_answer_sets, shift_transform,
    strat_shift, strat_transform, FAIL_ATOM, QUERY_ATOM,
};
use aspsc_core::generate::{
    all_qbf2_single, all_qbf3_single, hcf_programs, programs, random_qbf2, rng, Shape,
};
use aspsc_core::qbf::{
    encode_disjunctive, encode_normal, qbf2_valid, qbf3_valid, verify_phi_norm_reduction,
    verify_phi_reduction, ReductionReport,
};
use aspsc_core::supercoherence::{
    exists_coherent_extension, is_super_coherent, is_super_coherent_with, projected_uniform_equiv,
    projected_uniform_equiv_with,
};
use aspsc_core::{
    answer_sets, answer_sets_with, query, reduct, satisfies, AtomId, Limits, Program, QueryMode,
    Result,
};
use common::{
    has_classical_model, interpretations, is_antichain, name_sets, subsets_of, without_rule,
};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: aspsc_core::Error) -> String {
    e.to_string()
}

/// Counts mutants (one rule deleted) that the verifier rejects with at least
/// one localized violation.
fn count_detected(
    p: &Program,
    verify: impl Fn(&Program) -> Result<ReductionReport>,
) -> (usize, usize) {
    let mut detected = 0;
    for i in 0..p.len() {
        if let Ok(report) = verify(&without_rule(p, i)) {
            if !report.passed && report.violations.iter().all(|v| !v.item.is_empty()) {
                detected += 1;
            }
        }
    }
    (detected, p.len())
}

fn reduction_soundness_disjunctive() -> Outcome {
    // The required family has no valid member (a true instance needs four
    // terms), so the remaining term sets are checked as well.
    let family = all_qbf3_single(8);
    let required = all_qbf3_single(3).len();
    let mut valid = 0;
    for f in &family {
        let p = encode_disjunctive(f).map_err(err)?;
        let truth = qbf3_valid(f).map_err(err)?;
        let sc = is_super_coherent(&p).map_err(err)?.holds;
        ensure(sc == truth, || format!("mismatch on\n{f}"))?;
        valid += usize::from(truth);
    }
    Ok(format!(
        "{required} required + {} larger instances ({valid} valid)",
        family.len() - required
    ))
}

fn reduction_soundness_normal() -> Outcome {
    let mut instances = all_qbf2_single();
    let exhaustive = instances.len();
    let mut r = rng(2);
    for k in 0..200 {
        let (nx, ny) = [(1, 2), (2, 1), (2, 2), (1, 1)][k % 4];
        let clauses = 1 + k % 5;
        instances.push(random_qbf2(&mut r, nx, ny, clauses));
    }
    let (mut valid, mut on_true, mut on_false) = (0, 0, 0);
    let mut first = None;
    for f in &instances {
        let p = encode_normal(f).map_err(err)?;
        let truth = qbf2_valid(f).map_err(err)?;
        let verdict = is_super_coherent(&p).map_err(err)?;
        valid += usize::from(truth);
        if verdict.holds != truth {
            if truth {
                on_true += 1;
            } else {
                on_false += 1;
            }
            first.get_or_insert_with(|| {
                format!(
                    "{}witness {:?}",
                    f,
                    verdict.witness_names().unwrap_or_default()
                )
            });
        }
    }
    let summary = format!("{exhaustive} exhaustive + 200 sampled ({valid} valid)");
    match first {
        None => Ok(summary),
        Some(example) => Err(format!(
            "{summary}; super-coherence disagrees with validity on {on_true} true and {on_false} false \
             instances, first:\n{example}"
        )),
    }
}

fn disjunctive_encoding_structure() -> Outcome {
    let family = all_qbf3_single(3);
    for f in &family {
        let p = encode_disjunctive(f).map_err(err)?;
        let report = verify_phi_reduction(&p, f).map_err(err)?;
        ensure(report.passed, || {
            format!("violations {:?} on\n{f}", report.violations)
        })?;
    }
    let (mut detected, mut total) = (0, 0);
    for f in family.iter().step_by(10) {
        let p = encode_disjunctive(f).map_err(err)?;
        let (d, t) = count_detected(&p, |m| verify_phi_reduction(m, f));
        detected += d;
        total += t;
    }
    ensure(detected >= 20, || {
        format!("only {detected} of {total} mutants detected")
    })?;
    Ok(format!(
        "{} instances verified; {detected}/{total} mutants rejected",
        family.len()
    ))
}

fn normal_encoding_structure() -> Outcome {
    let family = all_qbf2_single();
    let (mut detected, mut total) = (0, 0);
    for f in &family {
        let p = encode_normal(f).map_err(err)?;
        let report = verify_phi_norm_reduction(&p, f).map_err(err)?;
        ensure(report.passed, || {
            format!("violations {:?} on\n{f}", report.violations)
        })?;
        let (d, t) = count_detected(&p, |m| verify_phi_norm_reduction(m, f));
        detected += d;
        total += t;
    }
    ensure(detected >= 20, || {
        format!("only {detected} of {total} mutants detected")
    })?;
    Ok(format!(
        "{} instances verified; {detected}/{total} mutants rejected",
        family.len()
    ))
}

fn strat_recovery() -> Outcome {
    let sample = programs(5, &Shape::new(4, 6), 500);
    for p in &sample {
        let art = strat_transform(p).map_err(err)?;
        let recovered = recover_answer_sets(&art).map_err(err)?;
        let direct = answer_sets(p).map_err(err)?;
        ensure(
            name_sets(&art.program, &recovered) == direct.name_sets(),
            || format!("recovery differs on\n{p}"),
        )?;
        ensure(classify(&art.program).is_stratified, || {
            format!("strat not stratified on\n{p}")
        })?;
    }
    Ok(format!("{} programs", sample.len()))
}

fn shift_equivalence() -> Outcome {
    let sample = hcf_programs(6, &Shape::new(4, 6).with_constraints(), 300);
    let mut checks = 0;
    for p in &sample {
        let shifted = shift_transform(p);
        let atoms: Vec<AtomId> = p.atoms_of().into_iter().collect();
        for facts in subsets_of(p, &atoms) {
            let lhs = answer_sets(&p.with_facts(facts.atoms())).map_err(err)?;
            let rhs = answer_sets(&shifted.with_facts(facts.atoms())).map_err(err)?;
            ensure(lhs.name_sets() == rhs.name_sets(), || {
                format!("differs on\n{p}with facts {}", facts.display(p.atoms()))
            })?;
            checks += 1;
        }
    }
    Ok(format!("{} programs, {checks} fact sets", sample.len()))
}

fn strat_shift_and_queries() -> Outcome {
    let sample = programs(7, &Shape::new(3, 5).normal(), 300);
    for p in &sample {
        let art = strat_shift(p).map_err(err)?;
        ensure(is_super_coherent(&art.program).map_err(err)?.holds, || {
            format!("strat-shift not super-coherent on\n{p}")
        })?;
        let direct = answer_sets(p).map_err(err)?;
        let recovered = recover_answer_sets(&art).map_err(err)?;
        ensure(
            name_sets(&art.program, &recovered) == direct.name_sets(),
            || format!("strat-shift recovery differs on\n{p}"),
        )?;

        let coherence = embed_coherence(p).map_err(err)?;
        let fail_cautious =
            query(&coherence.program, FAIL_ATOM, QueryMode::Cautious).map_err(err)?;
        ensure(fail_cautious == !direct.is_coherent(), || {
            format!("coherence embedding wrong on\n{p}")
        })?;

        for name in p.atom_names(p.atoms_of()) {
            let brave = embed_brave_query(p, &name).map_err(err)?;
            ensure(
                query(&brave.program, QUERY_ATOM, QueryMode::Brave).map_err(err)?
                    == query(p, &name, QueryMode::Brave).map_err(err)?,
                || format!("brave embedding wrong for {name} on\n{p}"),
            )?;
            let cautious = embed_cautious_query(p, &name).map_err(err)?;
            ensure(
                query(&cautious.program, QUERY_ATOM, QueryMode::Cautious).map_err(err)?
                    == query(p, &name, QueryMode::Cautious).map_err(err)?,
                || format!("cautious embedding wrong for {name} on\n{p}"),
            )?;
        }
    }
    Ok(format!("{} programs", sample.len()))
}

fn equivalence_to_empty_program() -> Outcome {
    let sample = programs(8, &Shape::new(4, 6).with_constraints(), 300);
    let empty = Program::new();
    let mut refuted = 0;
    for p in &sample {
        let sc = is_super_coherent(p).map_err(err)?.holds;
        let context = p.atom_names(p.atoms_of());
        let eq = projected_uniform_equiv(p, &empty, &context, &[] as &[String])
            .map_err(err)?
            .holds;
        ensure(sc == eq, || format!("disagreement on\n{p}"))?;
        refuted += usize::from(!sc);
    }
    Ok(format!(
        "{} programs ({refuted} not super-coherent)",
        sample.len()
    ))
}

fn foundational_properties() -> Outcome {
    let disjunctive = programs(9, &Shape::new(4, 5).with_constraints(), 1000);
    let normal = programs(10, &Shape::new(4, 5).normal().with_constraints(), 1000);

    for p in &disjunctive {
        let all = interpretations(p);
        for k in &all {
            let pk = reduct(p, k).map_err(err)?;
            for j in all.iter().filter(|j| j.is_subset(k)) {
                let pj = reduct(p, j).map_err(err)?;
                for i in all.iter().filter(|i| i.is_subset(j)) {
                    if satisfies(i, &pj).map_err(err)? {
                        ensure(satisfies(i, &pk).map_err(err)?, || {
                            format!("P1 fails on\n{p}")
                        })?;
                    }
                }
            }
        }
    }
    for p in &normal {
        let all = interpretations(p);
        for k in &all {
            let pk = reduct(p, k).map_err(err)?;
            let below: Vec<_> = all.iter().filter(|i| i.is_subset(k)).collect();
            let models: Vec<_> = below
                .iter()
                .filter(|i| satisfies(i, &pk).unwrap_or(false))
                .collect();
            for a in &models {
                for b in &models {
                    ensure(satisfies(&a.intersection(b), &pk).map_err(err)?, || {
                        format!("P2 fails on\n{p}")
                    })?;
                }
            }
        }
    }
    let mut runs = 0;
    for p in disjunctive.iter().chain(&normal) {
        ensure(
            exists_coherent_extension(p).map_err(err)? == has_classical_model(p),
            || format!("coherent-extension criterion fails on\n{p}"),
        )?;
        let report = answer_sets(p).map_err(err)?;
        ensure(is_antichain(&report.answer_sets), || {
            format!("answer sets not an antichain on\n{p}")
        })?;
        runs += 1;
    }
    Ok(format!(
        "P1 on {}, P2 on {}, extension and antichain on {runs}",
        disjunctive.len(),
        normal.len()
    ))
}

/// JSON lines for a fixed corpus, computed with parallel enumeration inside
/// the current rayon pool.
fn report_corpus() -> Result<String> {
    let limits = Limits::default().parallel(true);
    let mut out = Vec::new();
    for p in programs(11, &Shape::new(5, 6).with_constraints(), 60) {
        out.push(answer_sets_with(&p, &limits)?.to_json());
        out.push(classify(&p).to_json());
        out.push(is_super_coherent_with(&p, &limits)?.to_json());
        let context = p.atom_names(p.atoms_of());
        let projection: Vec<String> = context.iter().take(2).cloned().collect();
        out.push(
            projected_uniform_equiv_with(&p, &Program::new(), &context, &projection, &limits)?
                .to_json(),
        );
        out.push(strat_transform(&p)?.to_json());
    }
    for f in all_qbf3_single(3).iter().step_by(7) {
        let p = encode_disjunctive(f)?;
        out.push(is_super_coherent_with(&p, &limits)?.to_json());
        out.push(verify_phi_reduction(&without_rule(&p, 3), f)?.to_json());
    }
    for f in all_qbf2_single() {
        let p = encode_normal(&f)?;
        out.push(is_super_coherent_with(&p, &limits)?.to_json());
        out.push(verify_phi_norm_reduction(&without_rule(&p, 1), &f)?.to_json());
    }
    Ok(out.join("\n"))
}

fn determinism() -> Outcome {
    let run = |threads: usize| -> std::result::Result<String, String> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?
            .install(report_corpus)
            .map_err(err)
    };
    let one = run(1)?;
    let eight = run(8)?;
    ensure(one == eight, || {
        "reports differ between 1 and 8 threads".into()
    })?;
    let lines: BTreeSet<&str> = one.lines().collect();
    Ok(format!(
        "{} report lines byte-identical ({} distinct)",
        one.lines().count(),
        lines.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "disjunctive reduction soundness",
            reduction_soundness_disjunctive,
        ),
        ("normal reduction soundness", reduction_soundness_normal),
        (
            "disjunctive encoding structure",
            disjunctive_encoding_structure,
        ),
        ("normal encoding structure", normal_encoding_structure),
        ("strat answer-set recovery", strat_recovery),
        (
            "shift equivalence on head-cycle-free programs",
            shift_equivalence,
        ),
        (
            "strat-shift super-coherence and query embeddings",
            strat_shift_and_queries,
        ),
        (
            "super-coherence as equivalence to the empty program",
            equivalence_to_empty_program,
        ),
        (
            "reduct properties, extension criterion, antichains",
            foundational_properties,
        ),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
