//! Exhaustive checks that a program has exactly the model and reduct-model
//! structure required of a QBF encoding.
//!
//! Reduct models are only collected among subsets of the interpretation the
//! reduct is taken for; those are the ones that decide answer-set minimality.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::encode::{bar_name, AUX_U, AUX_V, AUX_W};
use super::{Qbf2, Qbf3};
use crate::error::{Error, Result};
use crate::semantics::engine::{canonical_key, reduct_submodels, scatter, MaskProgram};
use crate::semantics::Limits;
use crate::syntax::Program;

/// Default limit on the encoding's universe for the verifiers.
pub const VERIFY_GUARD: usize = 12;

/// One way in which the program departs from the required structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Numbered requirement, e.g. `"2"` or `"4(c)"`.
    pub item: String,
    /// Interpretation whose reduct was inspected, if any.
    pub reduct_of: Option<Vec<String>>,
    pub interpretation: Vec<String>,
    pub description: String,
    #[serde(skip)]
    key: (String, Option<(u32, u64)>, (u32, u64)),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ReductionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn items(&self) -> BTreeSet<&str> {
        self.violations.iter().map(|v| v.item.as_str()).collect()
    }
}

struct Checker<'a> {
    program: &'a Program,
    compiled: MaskProgram,
    violations: Vec<Violation>,
}

impl<'a> Checker<'a> {
    fn new(program: &'a Program, expected: &BTreeSet<String>, limits: &Limits) -> Result<Self> {
        let actual: BTreeSet<String> = program.atom_names(program.atoms_of()).into_iter().collect();
        if &actual != expected {
            let extra: Vec<&String> = actual.difference(expected).collect();
            let missing: Vec<&String> = expected.difference(&actual).collect();
            return Err(Error::UniverseMismatch(format!(
                "program atoms differ from the encoding universe (extra: {extra:?}, missing: {missing:?})"
            )));
        }
        limits.check(actual.len(), VERIFY_GUARD)?;
        Ok(Self {
            program,
            compiled: MaskProgram::compile(program)?,
            violations: Vec::new(),
        })
    }

    fn bit(&self, name: &str) -> u64 {
        1 << self.program.id(name).expect("universe checked").index()
    }

    fn names(&self, bits: u64) -> Vec<String> {
        self.program.atom_names(
            (0..64)
                .filter(|i| bits >> i & 1 == 1)
                .map(crate::syntax::AtomId::from_index),
        )
    }

    fn violation(&mut self, item: &str, reduct_of: Option<u64>, bits: u64, description: String) {
        self.violations.push(Violation {
            item: item.to_string(),
            reduct_of: reduct_of.map(|r| self.names(r)),
            interpretation: self.names(bits),
            description,
            key: (
                item.to_string(),
                reduct_of.map(canonical_key),
                canonical_key(bits),
            ),
        });
    }

    /// Records the difference between the found and the required family.
    fn compare(
        &mut self,
        item: &str,
        reduct_of: Option<u64>,
        found: &BTreeSet<u64>,
        expected: &BTreeSet<u64>,
    ) {
        let what = if reduct_of.is_some() {
            "reduct model"
        } else {
            "model"
        };
        for &m in found.difference(expected) {
            self.violation(item, reduct_of, m, format!("unexpected {what}"));
        }
        for &m in expected.difference(found) {
            self.violation(item, reduct_of, m, format!("required {what} is missing"));
        }
    }

    fn models(&self) -> BTreeSet<u64> {
        let universe = self.compiled.atoms;
        (0..1u64 << universe.count_ones())
            .map(|i| scatter(i, universe))
            .filter(|&m| self.compiled.is_model(m))
            .collect()
    }

    fn submodels(&self, m: u64) -> BTreeSet<u64> {
        reduct_submodels(&self.compiled, m, m).into_iter().collect()
    }

    fn finish(mut self) -> ReductionReport {
        self.violations.sort_by(|a, b| a.key.cmp(&b.key));
        ReductionReport {
            passed: self.violations.is_empty(),
            violations: self.violations,
        }
    }
}

/// `(positive atom bit, complement atom bit)` per variable.
fn var_bits(c: &Checker<'_>, vars: &[String]) -> Vec<(u64, u64)> {
    vars.iter()
        .map(|v| (c.bit(v), c.bit(&bar_name(v))))
        .collect()
}

/// Atoms encoding the assignment `chosen` (bit i set: variable i true).
fn assignment(vars: &[(u64, u64)], chosen: u64) -> u64 {
    vars.iter()
        .enumerate()
        .map(|(i, &(pos, neg))| if chosen >> i & 1 == 1 { pos } else { neg })
        .fold(0, |a, b| a | b)
}

fn both(vars: &[(u64, u64)]) -> u64 {
    vars.iter().fold(0, |a, &(p, n)| a | p | n)
}

fn true_vars(vars: &[String], chosen: u64) -> impl Iterator<Item = &str> {
    vars.iter()
        .enumerate()
        .filter(move |(i, _)| chosen >> i & 1 == 1)
        .map(|(_, v)| v.as_str())
}

fn universe_names(blocks: &[&[String]], aux: &[&str]) -> BTreeSet<String> {
    blocks
        .iter()
        .flat_map(|b| b.iter().flat_map(|v| [v.clone(), bar_name(v)]))
        .chain(aux.iter().map(|a| a.to_string()))
        .collect()
}

pub fn verify_phi_reduction(p: &Program, f: &Qbf3) -> Result<ReductionReport> {
    verify_phi_reduction_with(p, f, &Limits::default())
}

/// Checks the model structure of a disjunctive encoding of `f`:
///
/// * the models are `U`, `M[I,J]` and `M'[I,J]` for all `I ⊆ X`, `J ⊆ Y`;
/// * below `M[I,J]` the reduct has exactly the models `M[I,J]` and `O[I]`;
/// * below `M'[I,J]` it has `M'[I,J]` and `N[I,J,K]` for each `K ⊆ Z` with
///   `I ∪ J ∪ K ⊭ φ`;
/// * below `U` it has all of the above.
pub fn verify_phi_reduction_with(
    p: &Program,
    f: &Qbf3,
    limits: &Limits,
) -> Result<ReductionReport> {
    f.validate()?;
    let expected = universe_names(&[&f.x_vars, &f.y_vars, &f.z_vars], &[AUX_U, AUX_V, AUX_W]);
    let mut c = Checker::new(p, &expected, limits)?;
    let xs = var_bits(&c, &f.x_vars);
    let ys = var_bits(&c, &f.y_vars);
    let zs = var_bits(&c, &f.z_vars);
    let (u, v, w) = (c.bit(AUX_U), c.bit(AUX_V), c.bit(AUX_W));
    let universe = c.compiled.atoms;
    let z_all = both(&zs);

    let o = |i: u64| assignment(&xs, i);
    let m = |i: u64, j: u64| o(i) | assignment(&ys, j) | z_all | u | v;
    let m_prime = |i: u64, j: u64| o(i) | assignment(&ys, j) | z_all | v | w;
    let n = |i: u64, j: u64, k: u64| o(i) | assignment(&ys, j) | assignment(&zs, k) | v;
    let falsifies = |i: u64, j: u64, k: u64| {
        let truth: HashSet<&str> = true_vars(&f.x_vars, i)
            .chain(true_vars(&f.y_vars, j))
            .chain(true_vars(&f.z_vars, k))
            .collect();
        !f.matrix_holds(&truth)
    };

    let (nx, ny, nz) = (xs.len(), ys.len(), zs.len());
    let pairs: Vec<(u64, u64)> = (0..1u64 << nx)
        .flat_map(|i| (0..1u64 << ny).map(move |j| (i, j)))
        .collect();
    let counter = |i: u64, j: u64| -> Vec<u64> {
        (0..1u64 << nz)
            .filter(|&k| falsifies(i, j, k))
            .map(|k| n(i, j, k))
            .collect()
    };

    let mut required: BTreeSet<u64> = BTreeSet::from([universe]);
    for &(i, j) in &pairs {
        required.insert(m(i, j));
        required.insert(m_prime(i, j));
    }
    let models = c.models();
    c.compare("2", None, &models, &required);

    for &(i, j) in &pairs {
        let mij = m(i, j);
        let found = c.submodels(mij);
        c.compare("3", Some(mij), &found, &BTreeSet::from([mij, o(i)]));
    }
    for &(i, j) in &pairs {
        let mp = m_prime(i, j);
        let mut want: BTreeSet<u64> = counter(i, j).into_iter().collect();
        want.insert(mp);
        let found = c.submodels(mp);
        c.compare("4", Some(mp), &found, &want);
    }

    let mut want: BTreeSet<u64> = BTreeSet::from([universe]);
    for &(i, j) in &pairs {
        want.extend([m(i, j), m_prime(i, j), o(i)]);
        want.extend(counter(i, j));
    }
    let found = c.submodels(universe);
    c.compare("5", Some(universe), &found, &want);
    Ok(c.finish())
}

pub fn verify_phi_norm_reduction(p: &Program, f: &Qbf2) -> Result<ReductionReport> {
    verify_phi_norm_reduction_with(p, f, &Limits::default())
}

/// Checks the model structure of a normal encoding of `f`:
///
/// * the models are `O[J*]` (every `J*` between a complete assignment to `Y`
///   and `Y ∪ Ȳ`), `M[I]`, and `N[I,J]` whenever `I ∪ J ⊨ φ`;
/// * below `M[I]` the reduct has exactly `M[I]` and `M[I] \ {v}`, below
///   `N[I,J]` only `N[I,J]`;
/// * every reduct model below an `O[J*]` satisfies the closure conditions
///   (a) to (e).
pub fn verify_phi_norm_reduction_with(
    p: &Program,
    f: &Qbf2,
    limits: &Limits,
) -> Result<ReductionReport> {
    f.validate()?;
    let expected = universe_names(&[&f.x_vars, &f.y_vars], &[AUX_V, AUX_W]);
    let mut c = Checker::new(p, &expected, limits)?;
    let xs = var_bits(&c, &f.x_vars);
    let ys = var_bits(&c, &f.y_vars);
    let (v, w) = (c.bit(AUX_V), c.bit(AUX_W));
    let x_all = both(&xs);
    let y_all = both(&ys);

    let m = |i: u64| assignment(&xs, i) | v;
    let n = |i: u64, j: u64| assignment(&xs, i) | assignment(&ys, j) | w;
    let satisfies = |i: u64, j: u64| {
        let truth: HashSet<&str> = true_vars(&f.x_vars, i)
            .chain(true_vars(&f.y_vars, j))
            .collect();
        f.matrix_holds(&truth)
    };
    // Each y contributes y, ȳ or both.
    let j_stars: Vec<u64> = (0..3u64.pow(ys.len() as u32))
        .map(|mut code| {
            ys.iter().fold(0, |acc, &(pos, neg)| {
                let pick = code % 3;
                code /= 3;
                acc | match pick {
                    0 => pos,
                    1 => neg,
                    _ => pos | neg,
                }
            })
        })
        .collect();
    let o = |j_star: u64| x_all | j_star | v | w;

    let (nx, ny) = (xs.len(), ys.len());
    let mut required: BTreeSet<u64> = j_stars.iter().map(|&js| o(js)).collect();
    for i in 0..1u64 << nx {
        required.insert(m(i));
        for j in 0..1u64 << ny {
            if satisfies(i, j) {
                required.insert(n(i, j));
            }
        }
    }
    let models = c.models();
    c.compare("2", None, &models, &required);

    for i in 0..1u64 << nx {
        let mi = m(i);
        let found = c.submodels(mi);
        c.compare("3", Some(mi), &found, &BTreeSet::from([mi, mi & !v]));
        for j in 0..1u64 << ny {
            if satisfies(i, j) {
                let nij = n(i, j);
                let found = c.submodels(nij);
                c.compare("3", Some(nij), &found, &BTreeSet::from([nij]));
            }
        }
    }

    let clause_bodies: Vec<u64> = f
        .clauses
        .iter()
        .map(|cl| {
            cl.iter()
                .map(|l| {
                    if l.positive {
                        c.bit(&bar_name(&l.var))
                    } else {
                        c.bit(&l.var)
                    }
                })
                .fold(0, |a, b| a | b)
        })
        .collect();
    for &js in &j_stars {
        let oj = o(js);
        for model in c.submodels(oj) {
            let has_w = model & w != 0;
            for &(pos, neg) in &ys {
                if oj & pos != 0 && oj & neg == 0 && has_w && model & pos == 0 {
                    c.violation(
                        "4(a)",
                        Some(oj),
                        model,
                        format!("contains w but lacks {}", c.names(pos)[0]),
                    );
                }
                if oj & neg != 0 && oj & pos == 0 && has_w && model & neg == 0 {
                    c.violation(
                        "4(b)",
                        Some(oj),
                        model,
                        format!("contains w but lacks {}", c.names(neg)[0]),
                    );
                }
            }
            if model & y_all != 0 && !has_w {
                c.violation(
                    "4(c)",
                    Some(oj),
                    model,
                    "contains a Y atom but not w".into(),
                );
            }
            if model & v == 0 && clause_bodies.iter().any(|&b| b & !model == 0) {
                c.violation(
                    "4(d)",
                    Some(oj),
                    model,
                    "falsifies a clause but lacks v".into(),
                );
            }
            let inconsistent = xs
                .iter()
                .chain(&ys)
                .any(|&(p, q)| model & p != 0 && model & q != 0);
            let saturated = x_all | v | w;
            if (inconsistent || model & (v | w) == v | w) && model & saturated != saturated {
                c.violation(
                    "4(e)",
                    Some(oj),
                    model,
                    "triggers saturation but is not saturated".into(),
                );
            }
        }
    }
    Ok(c.finish())
}
