//! Super-coherence by exhaustive fact-set enumeration, and uniform
//! equivalence with projection.
//!
//! Only fact sets over `At(P)` are enumerated: atoms outside the program are
//! defined by their facts alone, so adding them cannot remove the last
//! answer set.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::semantics::engine::{mask_of, subsets_canonical, MaskProgram};
use crate::semantics::{Interpretation, Limits, SOLVE_GUARD};
use crate::syntax::{AtomTable, Program};

/// Default limit on `|At(P)|` for the fact-set loop.
pub const SC_GUARD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScVerdict {
    pub holds: bool,
    /// First fact set in (cardinality, value) order with `AS(P ∪ F) = ∅`.
    pub witness: Option<Interpretation>,
    /// Fact sets examined up to and including the witness, or all of them.
    pub facts_checked: u64,
    pub universe: AtomTable,
}

#[derive(Serialize)]
struct ScJson {
    super_coherent: bool,
    witness: Option<Vec<String>>,
    facts_checked: u64,
}

impl ScVerdict {
    pub fn witness_names(&self) -> Option<Vec<String>> {
        self.witness.map(|w| w.names(&self.universe))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ScJson {
            super_coherent: self.holds,
            witness: self.witness_names(),
            facts_checked: self.facts_checked,
        })
        .expect("serializable")
    }
}

pub fn exists_coherent_extension(p: &Program) -> Result<bool> {
    exists_coherent_extension_with(p, &Limits::default())
}

/// Some `F` gives `P ∪ F` an answer set iff `P` has a classical model.
pub fn exists_coherent_extension_with(p: &Program, limits: &Limits) -> Result<bool> {
    let compiled = MaskProgram::compile(p)?;
    limits.check(compiled.atoms.count_ones() as usize, SOLVE_GUARD)?;
    Ok(compiled.has_model(limits.parallel))
}

pub fn is_super_coherent(p: &Program) -> Result<ScVerdict> {
    is_super_coherent_with(p, &Limits::default())
}

/// Checks `AS(P ∪ F) ≠ ∅` for every `F ⊆ At(P)`, in canonical order.
///
/// With `limits.parallel` the fact sets are checked concurrently, and the
/// first failing one in canonical order is still the one reported.
pub fn is_super_coherent_with(p: &Program, limits: &Limits) -> Result<ScVerdict> {
    let compiled = MaskProgram::compile(p)?;
    limits.check(compiled.atoms.count_ones() as usize, SC_GUARD)?;
    let fact_sets = subsets_canonical(compiled.atoms);
    let fails = |facts: &u64| !compiled.has_answer_set(*facts, false);
    let first = if limits.parallel {
        fact_sets.par_iter().position_first(fails)
    } else {
        fact_sets.iter().position(fails)
    };
    let width = p.atoms().len();
    Ok(match first {
        Some(k) => ScVerdict {
            holds: false,
            witness: Some(Interpretation::from_bits(width, fact_sets[k])),
            facts_checked: k as u64 + 1,
            universe: p.atoms().clone(),
        },
        None => ScVerdict {
            holds: true,
            witness: None,
            facts_checked: fact_sets.len() as u64,
            universe: p.atoms().clone(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivVerdict {
    pub holds: bool,
    /// First context fact set, in canonical order, where the projections differ.
    pub witness: Option<Interpretation>,
    pub lhs_projection: Option<Vec<Interpretation>>,
    pub rhs_projection: Option<Vec<Interpretation>>,
    pub facts_checked: u64,
    /// Merged table of both programs, the context and the projection.
    pub universe: AtomTable,
    pub context: Vec<String>,
    pub projection: Vec<String>,
}

#[derive(Serialize)]
struct EquivJson<'a> {
    equivalent: bool,
    witness: Option<Vec<String>>,
    lhs_projection: Option<Vec<Vec<String>>>,
    rhs_projection: Option<Vec<Vec<String>>>,
    facts_checked: u64,
    context: &'a [String],
    projection: &'a [String],
}

impl EquivVerdict {
    fn family_names(&self, family: &Option<Vec<Interpretation>>) -> Option<Vec<Vec<String>>> {
        family
            .as_ref()
            .map(|f| f.iter().map(|i| i.names(&self.universe)).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&EquivJson {
            equivalent: self.holds,
            witness: self.witness.map(|w| w.names(&self.universe)),
            lhs_projection: self.family_names(&self.lhs_projection),
            rhs_projection: self.family_names(&self.rhs_projection),
            facts_checked: self.facts_checked,
            context: &self.context,
            projection: &self.projection,
        })
        .expect("serializable")
    }
}

fn sorted_unique<S: AsRef<str>>(names: &[S]) -> Vec<String> {
    let set: BTreeSet<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
    set.into_iter().collect()
}

pub fn projected_uniform_equiv<S: AsRef<str>>(
    p: &Program,
    q: &Program,
    context: &[S],
    projection: &[S],
) -> Result<EquivVerdict> {
    projected_uniform_equiv_with(p, q, context, projection, &Limits::default())
}

/// `P ≡^A_B Q`: for every `F ⊆ A`, `{I ∩ B | I ∈ AS(P ∪ F)} = {I ∩ B | I ∈ AS(Q ∪ F)}`.
pub fn projected_uniform_equiv_with<S: AsRef<str>>(
    p: &Program,
    q: &Program,
    context: &[S],
    projection: &[S],
    limits: &Limits,
) -> Result<EquivVerdict> {
    let context = sorted_unique(context);
    let projection = sorted_unique(projection);
    let mut table = AtomTable::new();
    let lhs_rules = p.rebase(&mut table)?;
    let rhs_rules = q.rebase(&mut table)?;
    let context_ids = context
        .iter()
        .map(|n| table.intern(n))
        .collect::<Result<Vec<_>>>()?;
    let projection_ids = projection
        .iter()
        .map(|n| table.intern(n))
        .collect::<Result<Vec<_>>>()?;
    limits.check(context_ids.len(), SC_GUARD)?;

    let build = |rules: Vec<crate::syntax::Rule>| {
        let mut prog = Program::with_table(table.clone());
        rules.into_iter().for_each(|r| prog.push(r));
        MaskProgram::compile(&prog)
    };
    let lhs = build(lhs_rules)?;
    let rhs = build(rhs_rules)?;
    let context_mask = mask_of(context_ids);
    let projection_mask = mask_of(projection_ids);
    for side in [&lhs, &rhs] {
        limits.check(
            (side.atoms | context_mask).count_ones() as usize,
            SOLVE_GUARD,
        )?;
    }

    let project = |prog: &MaskProgram, facts: u64| -> BTreeSet<u64> {
        prog.answer_sets(facts, false)
            .0
            .into_iter()
            .map(|m| m & projection_mask)
            .collect()
    };
    let fact_sets = subsets_canonical(context_mask);
    let differs = |facts: &u64| project(&lhs, *facts) != project(&rhs, *facts);
    let first = if limits.parallel {
        fact_sets.par_iter().position_first(differs)
    } else {
        fact_sets.iter().position(differs)
    };

    let width = table.len();
    let family = |set: BTreeSet<u64>| {
        let mut v: Vec<Interpretation> = set
            .into_iter()
            .map(|b| Interpretation::from_bits(width, b))
            .collect();
        v.sort();
        v
    };
    Ok(match first {
        Some(k) => {
            let facts = fact_sets[k];
            EquivVerdict {
                holds: false,
                witness: Some(Interpretation::from_bits(width, facts)),
                lhs_projection: Some(family(project(&lhs, facts))),
                rhs_projection: Some(family(project(&rhs, facts))),
                facts_checked: k as u64 + 1,
                universe: table,
                context,
                projection,
            }
        }
        None => EquivVerdict {
            holds: true,
            witness: None,
            lhs_projection: None,
            rhs_projection: None,
            facts_checked: fact_sets.len() as u64,
            universe: table,
            context,
            projection,
        },
    })
}
