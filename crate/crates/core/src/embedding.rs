//! Transformations that make a program super-coherent while keeping its
//! answer sets recoverable.
//!
//! `strat` replaces every `not b` by a fresh `_f_b` and adds a guess-and-check
//! scaffold per atom `a`:
//!
//! ```text
//! _t_a | _f_a.
//! _t_a :- a.
//! _fail :- _t_a, not a.
//! ```
//!
//! The result is stratified, hence super-coherent, and its answer sets without
//! `_fail` project onto the answer sets of the input. `shift` splits
//! disjunctive heads into normal rules, which is exact for head-cycle-free
//! programs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::classify;
use crate::error::{Error, Result};
use crate::semantics::{answer_sets_with, Interpretation, Limits, QueryMode};
use crate::syntax::{eliminate_constraints, render_program, AtomId, AtomSet, Program, Rule};

pub const FAIL_ATOM: &str = "_fail";
pub const QUERY_ATOM: &str = "_q_prime";

pub fn true_name(atom: &str) -> String {
    format!("_t_{atom}")
}

pub fn false_name(atom: &str) -> String {
    format!("_f_{atom}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Strat,
    Shift,
    StratShift,
}

impl std::str::FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strat" => Ok(Transform::Strat),
            "shift" => Ok(Transform::Shift),
            "strat-shift" | "strat_shift" => Ok(Transform::StratShift),
            other => Err(Error::InvariantViolation(format!(
                "unknown transform `{other}`"
            ))),
        }
    }
}

/// A transformed program together with what is needed to read it back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingArtifact {
    pub program: Program,
    /// Atoms answer sets are projected onto when recovering.
    pub original_universe: AtomSet,
    pub fail_atom: Option<AtomId>,
    pub query_atom: Option<AtomId>,
    pub transform: Transform,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct ArtifactJson<'a> {
    program: String,
    universe: Vec<String>,
    fail_atom: Option<&'a str>,
    query_atom: Option<&'a str>,
    transform: Transform,
    warnings: &'a [String],
}

impl EmbeddingArtifact {
    pub fn universe_names(&self) -> Vec<String> {
        self.program
            .atom_names(self.original_universe.iter().copied())
    }

    pub fn fail_name(&self) -> Option<&str> {
        self.fail_atom.map(|a| self.program.atoms().name(a))
    }

    pub fn query_name(&self) -> Option<&str> {
        self.query_atom.map(|a| self.program.atoms().name(a))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ArtifactJson {
            program: render_program(&self.program),
            universe: self.universe_names(),
            fail_atom: self.fail_name(),
            query_atom: self.query_name(),
            transform: self.transform,
            warnings: &self.warnings,
        })
        .expect("serializable")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StratOptions {
    /// Atoms to build the scaffold for; defaults to the program's atoms and
    /// must cover them when given.
    pub universe: Option<Vec<String>>,
    /// Refuse constraints instead of eliminating them.
    pub reject_constraints: bool,
}

impl StratOptions {
    pub fn with_universe<S: AsRef<str>>(universe: &[S]) -> Self {
        Self {
            universe: Some(universe.iter().map(|s| s.as_ref().to_string()).collect()),
            reject_constraints: false,
        }
    }
}

pub fn strat_transform(p: &Program) -> Result<EmbeddingArtifact> {
    strat_transform_with(p, &StratOptions::default())
}

pub fn strat_transform_with(p: &Program, options: &StratOptions) -> Result<EmbeddingArtifact> {
    let mut warnings = Vec::new();
    let constraints = p.rules().iter().filter(|r| r.is_constraint()).count();
    let base = if constraints > 0 {
        if options.reject_constraints {
            return Err(Error::ConstraintPresent);
        }
        warnings.push(format!(
            "eliminated {constraints} constraint(s) into rules over fresh `_co` atoms"
        ));
        eliminate_constraints(p)
    } else {
        p.clone()
    };

    let mut out = Program::with_table(base.atoms().clone());
    let mut original: AtomSet = p.atoms_of();
    if let Some(names) = &options.universe {
        let given: AtomSet = names.iter().map(|n| out.intern(n)).collect::<Result<_>>()?;
        if let Some(missing) = original.difference(&given).next() {
            return Err(Error::InvariantViolation(format!(
                "universe does not contain program atom `{}`",
                out.atoms().name(*missing)
            )));
        }
        original = given;
    }
    // Fresh constraint atoms need the scaffold too, but are not recovered.
    let scaffolded: AtomSet = original.iter().copied().chain(base.atoms_of()).collect();
    let mut order: Vec<(String, AtomId)> = scaffolded
        .iter()
        .map(|&a| (out.atoms().name(a).to_string(), a))
        .collect();
    order.sort();

    let mut pairs = Vec::with_capacity(order.len());
    for (name, atom) in &order {
        let t = out.mint(&true_name(name))?;
        let f = out.mint(&false_name(name))?;
        pairs.push((*atom, t, f));
    }
    let fail = out.mint(FAIL_ATOM)?;
    let false_of = |a: AtomId| pairs.iter().find(|(x, _, _)| *x == a).map(|p| p.2);

    for rule in base.rules() {
        let mut pos = rule.pos_body().to_vec();
        pos.extend(
            rule.neg_body()
                .iter()
                .map(|&a| false_of(a).expect("scaffolded")),
        );
        out.push(Rule::new(rule.head().to_vec(), pos, vec![]));
    }
    for &(a, t, f) in &pairs {
        out.push(Rule::new(vec![t, f], vec![], vec![]));
        out.push(Rule::new(vec![t], vec![a], vec![]));
        out.push(Rule::new(vec![fail], vec![t], vec![a]));
    }
    Ok(EmbeddingArtifact {
        program: out,
        original_universe: original,
        fail_atom: Some(fail),
        query_atom: None,
        transform: Transform::Strat,
        warnings,
    })
}

/// `P→`: each head atom gets its own rule with the other head atoms negated
/// in the body. Constraints are copied unchanged.
pub fn shift_transform(p: &Program) -> Program {
    let mut out = Program::with_table(p.atoms().clone());
    for rule in p.rules() {
        if rule.head().len() <= 1 {
            out.push(rule.clone());
            continue;
        }
        for &a in rule.head() {
            let mut neg = rule.neg_body().to_vec();
            neg.extend(rule.head().iter().copied().filter(|&b| b != a));
            out.push(Rule::new(vec![a], rule.pos_body().to_vec(), neg));
        }
    }
    out
}

/// `shift_transform` packaged as an artifact, warning when the input is not
/// head-cycle-free and the answer sets may therefore change.
pub fn shift_embedding(p: &Program) -> EmbeddingArtifact {
    let mut warnings = Vec::new();
    if !classify(p).is_head_cycle_free {
        warnings.push("program is not head-cycle-free; shifting may change its answer sets".into());
    }
    EmbeddingArtifact {
        program: shift_transform(p),
        original_universe: p.atoms_of(),
        fail_atom: None,
        query_atom: None,
        transform: Transform::Shift,
        warnings,
    }
}

pub fn strat_shift(p: &Program) -> Result<EmbeddingArtifact> {
    strat_shift_with(p, &StratOptions::default())
}

/// `strat` followed by `shift` for normal programs: the only disjunctions are
/// the guesses, which become `_t_a :- not _f_a.` and `_f_a :- not _t_a.`.
pub fn strat_shift_with(p: &Program, options: &StratOptions) -> Result<EmbeddingArtifact> {
    if let Some(i) = p.rules().iter().position(|r| !r.is_normal()) {
        return Err(Error::NotNormal(i));
    }
    let strat = strat_transform_with(p, options)?;
    Ok(EmbeddingArtifact {
        program: shift_transform(&strat.program),
        transform: Transform::StratShift,
        ..strat
    })
}

pub fn recover_answer_sets(art: &EmbeddingArtifact) -> Result<Vec<Interpretation>> {
    recover_answer_sets_with(art, &Limits::default())
}

/// Answer sets of the transformed program without the fail atom, projected
/// onto the original universe, deduplicated, in canonical order.
pub fn recover_answer_sets_with(
    art: &EmbeddingArtifact,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    let report = answer_sets_with(&art.program, limits)?;
    let width = art.program.atoms().len();
    let keep = Interpretation::from_atoms(width, art.original_universe.iter().copied());
    let recovered: BTreeSet<Interpretation> = report
        .answer_sets
        .iter()
        .filter(|m| art.fail_atom.is_none_or(|f| !m.contains(f)))
        .map(|m| m.intersection(&keep))
        .collect();
    Ok(recovered.into_iter().collect())
}

/// `strat(p)`: `p` has no answer set iff the fail atom is cautiously true.
pub fn embed_coherence(p: &Program) -> Result<EmbeddingArtifact> {
    strat_transform(p)
}

/// `strat(p)` plus `_q_prime :- q, not _fail.`
pub fn embed_brave_query(p: &Program, q: &str) -> Result<EmbeddingArtifact> {
    embed_query(p, q, QueryMode::Brave)
}

/// `strat(p)` plus `_q_prime :- q.` and `_q_prime :- _fail.`
pub fn embed_cautious_query(p: &Program, q: &str) -> Result<EmbeddingArtifact> {
    embed_query(p, q, QueryMode::Cautious)
}

/// Embeds `q` so that asking `_q_prime` in the same mode on the super-coherent
/// result answers the original query.
pub fn embed_query(p: &Program, q: &str, mode: QueryMode) -> Result<EmbeddingArtifact> {
    let q_id = p.id(q)?;
    if !p.atoms_of().contains(&q_id) {
        return Err(Error::UnknownAtom(q.to_string()));
    }
    let mut art = strat_transform(p)?;
    let fail = art.fail_atom.expect("strat mints a fail atom");
    let q_prime = art.program.mint(QUERY_ATOM)?;
    match mode {
        QueryMode::Brave => art
            .program
            .push(Rule::new(vec![q_prime], vec![q_id], vec![fail])),
        QueryMode::Cautious => {
            art.program
                .push(Rule::new(vec![q_prime], vec![q_id], vec![]));
            art.program
                .push(Rule::new(vec![q_prime], vec![fail], vec![]));
        }
    }
    art.query_atom = Some(q_prime);
    Ok(art)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{answer_sets, query};
    use crate::supercoherence::is_super_coherent;
    use crate::syntax::parse_program;

    fn parse(text: &str) -> Program {
        parse_program(text).unwrap()
    }

    fn names(art: &EmbeddingArtifact, sets: &[Interpretation]) -> Vec<Vec<String>> {
        sets.iter().map(|m| m.names(art.program.atoms())).collect()
    }

    #[test]
    fn strat_templates() {
        let art = strat_transform_with(
            &parse("a :- not b."),
            &StratOptions::with_universe(&["a", "b"]),
        )
        .unwrap();
        let expected = parse(
            "a :- _f_b.
             _t_a | _f_a. _t_a :- a. _fail :- _t_a, not a.
             _t_b | _f_b. _t_b :- b. _fail :- _t_b, not b.",
        );
        assert!(art.program.same_rules(&expected), "{}", art.program);
        assert_eq!(
            render_program(&art.program).lines().next(),
            Some("a :- _f_b.")
        );
        assert_eq!(art.program.len(), 1 + 3 * 2);
        assert!(classify(&art.program).is_stratified);
        assert_eq!(art.fail_name(), Some("_fail"));
    }

    #[test]
    fn universe_must_cover_program() {
        let err = strat_transform_with(&parse("a :- not b."), &StratOptions::with_universe(&["a"]));
        assert!(matches!(err, Err(Error::InvariantViolation(_))));
        let art = strat_transform_with(
            &parse("a :- not b."),
            &StratOptions::with_universe(&["a", "b", "c"]),
        )
        .unwrap();
        assert_eq!(art.universe_names(), ["a", "b", "c"]);
        assert_eq!(art.program.len(), 1 + 3 * 3);
    }

    #[test]
    fn constraints_are_eliminated_or_rejected() {
        let p = parse("a | b. :- a.");
        let art = strat_transform(&p).unwrap();
        assert_eq!(art.warnings.len(), 1);
        assert_eq!(art.universe_names(), ["a", "b"]);
        assert!(art.program.atoms().contains("_t__co0"));
        assert_eq!(names(&art, &recover_answer_sets(&art).unwrap()), [["b"]]);
        let options = StratOptions {
            reject_constraints: true,
            ..StratOptions::default()
        };
        assert_eq!(
            strat_transform_with(&p, &options),
            Err(Error::ConstraintPresent)
        );
    }

    #[test]
    fn minted_name_collision() {
        let p = parse("_t_a :- not a.");
        assert!(matches!(strat_transform(&p), Err(Error::NameCollision(_))));
    }

    #[test]
    fn shift_examples() {
        assert!(shift_transform(&parse("a | b.")).same_rules(&parse("a :- not b. b :- not a.")));
        assert!(shift_transform(&parse("a :- b.")).same_rules(&parse("a :- b.")));
        assert!(shift_transform(&parse(":- a.")).same_rules(&parse(":- a.")));
        assert!(shift_transform(&parse("a | b | c :- d, not e."))
            .same_rules(&parse("a :- d, not e, not b, not c. b :- d, not e, not a, not c. c :- d, not e, not a, not b.")));
    }

    #[test]
    fn shift_flags_head_cycles() {
        assert!(shift_embedding(&parse("a | b.")).warnings.is_empty());
        let art = shift_embedding(&parse("a | b. a :- b. b :- a."));
        assert_eq!(art.warnings.len(), 1);
        assert_eq!(art.transform, Transform::Shift);
    }

    #[test]
    fn strat_shift_uses_paired_guesses() {
        let p = parse("a :- not b.");
        let art = strat_shift(&p).unwrap();
        let expected = parse(
            "a :- _f_b.
             _t_a :- not _f_a. _f_a :- not _t_a. _t_a :- a. _fail :- _t_a, not a.
             _t_b :- not _f_b. _f_b :- not _t_b. _t_b :- b. _fail :- _t_b, not b.",
        );
        assert!(art.program.same_rules(&expected));
        assert!(classify(&art.program).is_normal);
        assert!(is_super_coherent(&art.program).unwrap().holds);
        assert_eq!(strat_shift(&parse("a | b.")), Err(Error::NotNormal(0)));
    }

    #[test]
    fn recovery_examples() {
        let art = strat_transform(&parse("a :- not b.")).unwrap();
        assert_eq!(names(&art, &recover_answer_sets(&art).unwrap()), [["a"]]);
        let art = strat_transform(&parse("a :- not a.")).unwrap();
        assert!(recover_answer_sets(&art).unwrap().is_empty());
        let art =
            strat_transform_with(&Program::new(), &StratOptions::with_universe(&["a"])).unwrap();
        assert_eq!(
            names(&art, &recover_answer_sets(&art).unwrap()),
            [Vec::<String>::new()]
        );
        let p = parse("a | b. c :- a, not b.");
        let art = strat_transform(&p).unwrap();
        assert_eq!(
            names(&art, &recover_answer_sets(&art).unwrap()),
            answer_sets(&p).unwrap().named()
        );
    }

    #[test]
    fn coherence_embedding() {
        for (text, incoherent) in [("a :- not a.", true), ("a.", false), ("", false)] {
            let art = embed_coherence(&parse(text)).unwrap();
            assert_eq!(
                query(&art.program, FAIL_ATOM, QueryMode::Cautious).unwrap(),
                incoherent,
                "{text}"
            );
        }
    }

    #[test]
    fn query_embeddings() {
        let cases = [
            ("a | b.", QueryMode::Brave, true),
            ("a :- not a.", QueryMode::Brave, false),
            ("a | b.", QueryMode::Cautious, false),
            ("a.", QueryMode::Cautious, true),
            ("a :- not a.", QueryMode::Cautious, true),
        ];
        for (text, mode, expected) in cases {
            let p = parse(text);
            let art = embed_query(&p, "a", mode).unwrap();
            assert_eq!(art.query_name(), Some(QUERY_ATOM));
            assert_eq!(
                query(&art.program, QUERY_ATOM, mode).unwrap(),
                expected,
                "{text} {mode}"
            );
            assert_eq!(query(&p, "a", mode).unwrap(), expected);
        }
        assert_eq!(
            embed_brave_query(&parse("a."), "zz").unwrap_err(),
            Error::UnknownAtom("zz".into())
        );
    }

    #[test]
    fn artifact_json() {
        let art = embed_brave_query(&parse("a :- not b."), "a").unwrap();
        let json: serde_json::Value = serde_json::from_str(&art.to_json()).unwrap();
        assert_eq!(json["universe"], serde_json::json!(["a", "b"]));
        assert_eq!(json["fail_atom"], "_fail");
        assert_eq!(json["query_atom"], "_q_prime");
        assert_eq!(json["transform"], "strat");
        assert!(json["program"]
            .as_str()
            .unwrap()
            .ends_with("_q_prime :- a, not _fail.\n"));
    }
}
