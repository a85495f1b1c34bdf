//! Models, Gelfond-Lifschitz reducts and exhaustive answer-set enumeration.

pub(crate) mod engine;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::syntax::{AtomId, AtomTable, Program, Rule};
use engine::{canonical_key, MaskProgram};

pub use engine::MASK_WIDTH;

/// Default limit on `|At(P)|` for answer-set enumeration.
pub const SOLVE_GUARD: usize = 24;

/// Enumeration limits shared by every exhaustive procedure.
///
/// `max_atoms` overrides the procedure's default guard. `parallel` spreads the
/// enumeration over the current rayon pool; results are identical either way.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: Option<usize>,
    pub parallel: bool,
}

impl Limits {
    pub fn with_max_atoms(max_atoms: usize) -> Self {
        Self {
            max_atoms: Some(max_atoms),
            parallel: false,
        }
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub(crate) fn check(&self, atoms: usize, default: usize) -> Result<()> {
        let limit = self.max_atoms.unwrap_or(default).min(MASK_WIDTH - 1);
        if atoms > limit {
            Err(Error::GuardExceeded { atoms, limit })
        } else {
            Ok(())
        }
    }
}

/// A set of atoms drawn from a universe of `universe_size` ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interpretation {
    bits: u64,
    universe_size: usize,
}

impl Interpretation {
    pub fn empty(universe_size: usize) -> Self {
        assert!(
            universe_size <= MASK_WIDTH,
            "interpretations hold at most {MASK_WIDTH} atoms"
        );
        Self {
            bits: 0,
            universe_size,
        }
    }

    pub fn from_atoms(universe_size: usize, atoms: impl IntoIterator<Item = AtomId>) -> Self {
        let mut i = Self::empty(universe_size);
        for a in atoms {
            i.insert(a);
        }
        i
    }

    /// Interprets `names` against `table`; unknown names are an error.
    pub fn from_names<S: AsRef<str>>(table: &AtomTable, names: &[S]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|n| {
                table
                    .get(n.as_ref())
                    .ok_or_else(|| Error::UnknownAtom(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_atoms(table.len(), ids))
    }

    pub(crate) fn from_bits(universe_size: usize, bits: u64) -> Self {
        debug_assert!(universe_size == MASK_WIDTH || bits >> universe_size == 0);
        Self {
            bits,
            universe_size,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        atom.index() < self.universe_size && self.bits >> atom.index() & 1 == 1
    }

    pub fn insert(&mut self, atom: AtomId) {
        assert!(atom.index() < self.universe_size, "atom outside universe");
        self.bits |= 1 << atom.index();
    }

    pub fn remove(&mut self, atom: AtomId) {
        if atom.index() < self.universe_size {
            self.bits &= !(1 << atom.index());
        }
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &Interpretation) -> Interpretation {
        Self::from_bits(self.universe_size, self.bits & other.bits)
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.universe_size)
            .filter(|&i| self.bits >> i & 1 == 1)
            .map(AtomId::from_index)
    }

    /// Sorted atom names.
    pub fn names(&self, table: &AtomTable) -> Vec<String> {
        let mut v: Vec<String> = self.atoms().map(|a| table.name(a).to_string()).collect();
        v.sort();
        v
    }

    /// `{a, b}` with names sorted.
    pub fn display(&self, table: &AtomTable) -> String {
        format!("{{{}}}", self.names(table).join(", "))
    }
}

/// Ascending by cardinality, then by numeric bit value.
impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_key(self.bits)
            .cmp(&canonical_key(other.bits))
            .then(self.universe_size.cmp(&other.universe_size))
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.atoms().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

/// `AS(P)` together with the table it is expressed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerSetReport {
    pub answer_sets: Vec<Interpretation>,
    pub universe: AtomTable,
    /// Number of candidate interpretations visited.
    pub enumerated: u64,
}

#[derive(Serialize)]
struct AnswerSetJson<'a> {
    answer_sets: &'a [Vec<String>],
    enumerated: u64,
}

impl AnswerSetReport {
    pub fn is_coherent(&self) -> bool {
        !self.answer_sets.is_empty()
    }

    /// Each answer set as a sorted name list, in report order.
    pub fn named(&self) -> Vec<Vec<String>> {
        self.answer_sets
            .iter()
            .map(|m| m.names(&self.universe))
            .collect()
    }

    /// Answer sets as a set of name sets, independent of atom numbering.
    pub fn name_sets(&self) -> BTreeSet<Vec<String>> {
        self.named().into_iter().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AnswerSetJson {
            answer_sets: &self.named(),
            enumerated: self.enumerated,
        })
        .expect("serializable")
    }
}

fn check_universe(i: &Interpretation, p: &Program) -> Result<()> {
    if i.universe_size() < p.atoms().len() {
        return Err(Error::UniverseMismatch(format!(
            "interpretation covers {} atoms but the program has {}",
            i.universe_size(),
            p.atoms().len()
        )));
    }
    if p.atoms().len() > MASK_WIDTH {
        return Err(Error::GuardExceeded {
            atoms: p.atoms().len(),
            limit: MASK_WIDTH,
        });
    }
    Ok(())
}

fn body_true(rule: &Rule, i: &Interpretation) -> bool {
    rule.pos_body().iter().all(|&a| i.contains(a))
        && !rule.neg_body().iter().any(|&a| i.contains(a))
}

/// Is `i` a model of `p`?
pub fn satisfies(i: &Interpretation, p: &Program) -> Result<bool> {
    check_universe(i, p)?;
    Ok(p.rules()
        .iter()
        .all(|r| !body_true(r, i) || r.head().iter().any(|&a| i.contains(a))))
}

/// `P^I`: drops rules whose negative body meets `i`, strips `not` from the rest.
pub fn reduct(p: &Program, i: &Interpretation) -> Result<Program> {
    check_universe(i, p)?;
    let mut out = Program::with_table(p.atoms().clone());
    for r in p.rules() {
        if r.neg_body().iter().any(|&a| i.contains(a)) {
            continue;
        }
        out.push(Rule::new(
            r.head().to_vec(),
            r.pos_body().to_vec(),
            Vec::new(),
        ));
    }
    Ok(out)
}

/// Checks `m` against every proper subset for the reduct `P^m`.
///
/// This is the definitional check and is exponential in `|m|`; enumeration
/// uses a pruned equivalent.
pub fn is_answer_set(p: &Program, m: &Interpretation) -> Result<bool> {
    let reduct = reduct(p, m)?;
    if !satisfies(m, &reduct)? {
        return Ok(false);
    }
    let members: Vec<AtomId> = m.atoms().collect();
    for index in 0..(1u64 << members.len()) - 1 {
        let n = Interpretation::from_atoms(
            m.universe_size(),
            members
                .iter()
                .enumerate()
                .filter(|(k, _)| index >> k & 1 == 1)
                .map(|(_, &a)| a),
        );
        if satisfies(&n, &reduct)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn answer_sets(p: &Program) -> Result<AnswerSetReport> {
    answer_sets_with(p, &Limits::default())
}

/// Every `M ⊆ At(P)` that is an answer set, in (cardinality, value) order.
pub fn answer_sets_with(p: &Program, limits: &Limits) -> Result<AnswerSetReport> {
    let compiled = MaskProgram::compile(p)?;
    limits.check(compiled.atoms.count_ones() as usize, SOLVE_GUARD)?;
    let (found, enumerated) = compiled.answer_sets(0, limits.parallel);
    let width = p.atoms().len();
    Ok(AnswerSetReport {
        answer_sets: found
            .into_iter()
            .map(|bits| Interpretation::from_bits(width, bits))
            .collect(),
        universe: p.atoms().clone(),
        enumerated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryMode {
    Brave,
    Cautious,
}

impl std::str::FromStr for QueryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brave" => Ok(QueryMode::Brave),
            "cautious" => Ok(QueryMode::Cautious),
            other => Err(Error::InvariantViolation(format!(
                "unknown query mode `{other}`"
            ))),
        }
    }
}

impl fmt::Display for QueryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryMode::Brave => "brave",
            QueryMode::Cautious => "cautious",
        })
    }
}

pub fn query(p: &Program, q: &str, mode: QueryMode) -> Result<bool> {
    query_with(p, q, mode, &Limits::default())
}

/// Brave: `q` in some answer set. Cautious: `q` in every answer set, so true
/// for an incoherent program.
pub fn query_with(p: &Program, q: &str, mode: QueryMode, limits: &Limits) -> Result<bool> {
    let report = answer_sets_with(p, limits)?;
    Ok(query_report(&report, q, mode))
}

pub(crate) fn query_report(report: &AnswerSetReport, q: &str, mode: QueryMode) -> bool {
    let atom = report.universe.get(q);
    let holds = |m: &Interpretation| atom.is_some_and(|a| m.contains(a));
    match mode {
        QueryMode::Brave => report.answer_sets.iter().any(holds),
        QueryMode::Cautious => report.answer_sets.iter().all(holds),
    }
}
