#![allow(dead_code)]

use std::collections::BTreeSet;

use aspsc_core::{AtomId, Interpretation, Program, Rule};

/// Every subset of `atoms` as an interpretation over `p`'s table.
pub fn subsets_of(p: &Program, atoms: &[AtomId]) -> Vec<Interpretation> {
    let width = p.atoms().len();
    (0..1u32 << atoms.len())
        .map(|mask| {
            Interpretation::from_atoms(
                width,
                (0..atoms.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| atoms[i]),
            )
        })
        .collect()
}

/// Every subset of `At(p)`.
pub fn interpretations(p: &Program) -> Vec<Interpretation> {
    let atoms: Vec<AtomId> = p.atoms_of().into_iter().collect();
    subsets_of(p, &atoms)
}

pub fn name_sets(p: &Program, family: &[Interpretation]) -> BTreeSet<Vec<String>> {
    family.iter().map(|m| m.names(p.atoms())).collect()
}

pub fn is_antichain(family: &[Interpretation]) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family
            .iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.is_subset(b))
    })
}

/// `p` with rule `index` removed, over the same atom table.
pub fn without_rule(p: &Program, index: usize) -> Program {
    let mut out = Program::with_table(p.atoms().clone());
    for (i, r) in p.rules().iter().enumerate() {
        if i != index {
            out.push(r.clone());
        }
    }
    out
}

/// Brute-force classical model existence over `At(p)`.
pub fn has_classical_model(p: &Program) -> bool {
    interpretations(p).iter().any(|i| {
        p.rules().iter().all(|r: &Rule| {
            let body = r.pos_body().iter().all(|&a| i.contains(a))
                && r.neg_body().iter().all(|&a| !i.contains(a));
            !body || r.head().iter().any(|&a| i.contains(a))
        })
    })
}

/// Programs over the atoms `a`, `b`, ... given as bit masks per rule, so
/// proptest can shrink rules and atoms independently.
pub mod strategy {
    use aspsc_core::generate::atom_name;
    use aspsc_core::{AtomId, Program, Rule};
    use proptest::prelude::*;

    #[derive(Debug, Clone, Copy)]
    pub struct Bounds {
        pub atoms: usize,
        pub max_rules: usize,
        pub max_head: usize,
        pub constraints: bool,
    }

    pub const fn bounds(atoms: usize, max_rules: usize) -> Bounds {
        Bounds {
            atoms,
            max_rules,
            max_head: 2,
            constraints: false,
        }
    }

    impl Bounds {
        pub const fn normal(self) -> Self {
            Bounds {
                max_head: 1,
                ..self
            }
        }

        pub const fn constraints(self) -> Self {
            Bounds {
                constraints: true,
                ..self
            }
        }
    }

    fn ids(atoms: &[AtomId], mask: u32, limit: usize) -> Vec<AtomId> {
        (0..atoms.len())
            .filter(|i| mask >> i & 1 == 1)
            .take(limit)
            .map(|i| atoms[i])
            .collect()
    }

    pub fn program(b: Bounds) -> impl Strategy<Value = Program> {
        let full = 1u32 << b.atoms;
        proptest::collection::vec((0..full, 0..full, 0..full), 0..=b.max_rules).prop_map(
            move |rules| {
                let mut p = Program::new();
                let atoms: Vec<AtomId> = (0..b.atoms)
                    .map(|i| p.intern(&atom_name(i)).unwrap())
                    .collect();
                for (h, pos, neg) in rules {
                    let mut head = ids(&atoms, h, b.max_head);
                    if head.is_empty() && !b.constraints {
                        head = vec![atoms[(h.trailing_zeros() as usize) % b.atoms]];
                    }
                    p.push(Rule::new(head, ids(&atoms, pos, 32), ids(&atoms, neg, 32)));
                }
                p
            },
        )
    }
}
