//! Propositional rules and programs over an interned atom table.

mod parse;
mod render;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub use parse::parse_program;
pub use render::{render_program, render_rule};

/// Dense index of an atom inside its program's [`AtomTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub(crate) u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Self {
        AtomId(u32::try_from(index).expect("atom table overflow"))
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type AtomSet = BTreeSet<AtomId>;

/// Returns true for names of the form `[a-z_][A-Za-z0-9_]*`, excluding the keyword `not`.
pub fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    name != "not" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Bijection between atom names and dense ids `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: AtomId) -> &str {
        &self.names[id.index()]
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn intern(&mut self, name: &str) -> Result<AtomId> {
        if let Some(id) = self.get(name) {
            return Ok(id);
        }
        if !is_valid_atom_name(name) {
            return Err(Error::InvariantViolation(format!(
                "`{name}` is not a valid atom name"
            )));
        }
        let id = AtomId::from_index(self.names.len());
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Interns a tool-generated name, refusing names that already exist.
    pub(crate) fn mint(&mut self, name: &str) -> Result<AtomId> {
        if self.contains(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        self.intern(name)
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.names.len()).map(AtomId::from_index)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// `head :- pos, not neg.` with each part kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    head: Vec<AtomId>,
    pos: Vec<AtomId>,
    neg: Vec<AtomId>,
}

fn sorted_unique(mut ids: Vec<AtomId>) -> Vec<AtomId> {
    ids.sort_unstable();
    ids.dedup();
    ids
}

impl Rule {
    pub fn new(head: Vec<AtomId>, pos: Vec<AtomId>, neg: Vec<AtomId>) -> Self {
        Self {
            head: sorted_unique(head),
            pos: sorted_unique(pos),
            neg: sorted_unique(neg),
        }
    }

    pub fn fact(atom: AtomId) -> Self {
        Self::new(vec![atom], Vec::new(), Vec::new())
    }

    pub fn head(&self) -> &[AtomId] {
        &self.head
    }

    pub fn pos_body(&self) -> &[AtomId] {
        &self.pos
    }

    pub fn neg_body(&self) -> &[AtomId] {
        &self.neg
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.head.len() <= 1
    }

    pub fn is_positive(&self) -> bool {
        self.neg.is_empty()
    }

    pub fn has_empty_body(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// `H(r) ∪ B+(r) ∪ B-(r)`.
    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.head
            .iter()
            .chain(self.pos.iter())
            .chain(self.neg.iter())
            .copied()
    }

    fn max_atom(&self) -> Option<AtomId> {
        self.atoms().max()
    }
}

/// Rule in name space, used to compare programs up to atom renumbering.
pub type NamedRule = (Vec<String>, Vec<String>, Vec<String>);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    atoms: AtomTable,
    rules: Vec<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Empty program that shares `atoms` as its table.
    pub fn with_table(atoms: AtomTable) -> Self {
        Self {
            atoms,
            rules: Vec::new(),
        }
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.atoms
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn intern(&mut self, name: &str) -> Result<AtomId> {
        self.atoms.intern(name)
    }

    pub(crate) fn mint(&mut self, name: &str) -> Result<AtomId> {
        self.atoms.mint(name)
    }

    pub fn id(&self, name: &str) -> Result<AtomId> {
        self.atoms
            .get(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    /// Appends a rule whose ids must already be interned.
    pub fn push(&mut self, rule: Rule) {
        if let Some(max) = rule.max_atom() {
            assert!(
                max.index() < self.atoms.len(),
                "rule references atom {max} outside the table"
            );
        }
        self.rules.push(rule);
    }

    /// Interns the given names and appends the rule.
    pub fn add_rule<S: AsRef<str>>(&mut self, head: &[S], pos: &[S], neg: &[S]) -> Result<()> {
        let mut ids = |names: &[S]| -> Result<Vec<AtomId>> {
            names
                .iter()
                .map(|n| self.atoms.intern(n.as_ref()))
                .collect()
        };
        let head = ids(head)?;
        let pos = ids(pos)?;
        let neg = ids(neg)?;
        self.rules.push(Rule::new(head, pos, neg));
        Ok(())
    }

    /// `At(P)`: atoms occurring in some rule.
    pub fn atoms_of(&self) -> AtomSet {
        self.rules.iter().flat_map(Rule::atoms).collect()
    }

    pub fn has_constraints(&self) -> bool {
        self.rules.iter().any(Rule::is_constraint)
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(Rule::is_normal)
    }

    /// Drops repeated rules, keeping first occurrences.
    pub fn normalized(&self) -> Program {
        let mut seen = HashSet::new();
        let rules = self
            .rules
            .iter()
            .filter(|r| seen.insert((*r).clone()))
            .cloned()
            .collect();
        Program {
            atoms: self.atoms.clone(),
            rules,
        }
    }

    /// `P ∪ F`: appends a fact per atom of `facts` not already present as a fact.
    pub fn with_facts(&self, facts: impl IntoIterator<Item = AtomId>) -> Program {
        let mut out = self.clone();
        let existing: HashSet<AtomId> = self
            .rules
            .iter()
            .filter(|r| r.is_fact())
            .map(|r| r.head[0])
            .collect();
        let mut added = HashSet::new();
        for atom in facts {
            if !existing.contains(&atom) && added.insert(atom) {
                out.push(Rule::fact(atom));
            }
        }
        out
    }

    /// Same rules with every atom name re-interned into `table`.
    pub fn rebase(&self, table: &mut AtomTable) -> Result<Vec<Rule>> {
        let map: Vec<AtomId> = self
            .atoms
            .names()
            .iter()
            .map(|n| table.intern(n))
            .collect::<Result<_>>()?;
        let tr = |ids: &[AtomId]| ids.iter().map(|a| map[a.index()]).collect::<Vec<_>>();
        Ok(self
            .rules
            .iter()
            .map(|r| Rule::new(tr(&r.head), tr(&r.pos), tr(&r.neg)))
            .collect())
    }

    pub fn named_rule(&self, rule: &Rule) -> NamedRule {
        let names = |ids: &[AtomId]| {
            let mut v: Vec<String> = ids
                .iter()
                .map(|a| self.atoms.name(*a).to_string())
                .collect();
            v.sort();
            v
        };
        (names(&rule.head), names(&rule.pos), names(&rule.neg))
    }

    /// The rule set in name space; equal for programs that differ only in rule
    /// order, duplicates and atom numbering.
    pub fn canonical_rules(&self) -> BTreeSet<NamedRule> {
        self.rules.iter().map(|r| self.named_rule(r)).collect()
    }

    pub fn same_rules(&self, other: &Program) -> bool {
        self.canonical_rules() == other.canonical_rules()
    }

    pub fn atom_names(&self, ids: impl IntoIterator<Item = AtomId>) -> Vec<String> {
        let mut v: Vec<String> = ids
            .into_iter()
            .map(|a| self.atoms.name(a).to_string())
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_program(self))
    }
}

/// `At(P)`.
pub fn atoms_of(p: &Program) -> AtomSet {
    p.atoms_of()
}

/// Rewrites every constraint `:- B.` into `_co<k> :- B, not _co<k>.` with a
/// fresh `_co<k>` per constraint. Other rules are kept in place.
pub fn eliminate_constraints(p: &Program) -> Program {
    if !p.has_constraints() {
        return p.clone();
    }
    let mut out = Program::with_table(p.atoms.clone());
    let mut next = 0usize;
    for rule in &p.rules {
        if !rule.is_constraint() {
            out.rules.push(rule.clone());
            continue;
        }
        let co = loop {
            let name = format!("_co{next}");
            next += 1;
            if !out.atoms.contains(&name) {
                break out.atoms.intern(&name).expect("generated name is valid");
            }
        };
        let mut neg = rule.neg.clone();
        neg.push(co);
        out.rules.push(Rule::new(vec![co], rule.pos.clone(), neg));
    }
    out
}
