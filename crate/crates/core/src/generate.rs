//! Seeded generators for small programs and QBF instances, used by the
//! property tests and the acceptance runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::classify;
use crate::qbf::{Literal, Qbf2, Qbf3};
use crate::syntax::{AtomId, Program, Rule};

/// Bounds for random programs. Atoms are named `a`, `b`, `c`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub atoms: usize,
    pub max_rules: usize,
    pub max_head: usize,
    pub max_pos: usize,
    pub max_neg: usize,
    pub constraints: bool,
}

impl Shape {
    pub fn new(atoms: usize, max_rules: usize) -> Self {
        Self {
            atoms,
            max_rules,
            max_head: 2,
            max_pos: 2,
            max_neg: 2,
            constraints: false,
        }
    }

    pub fn normal(self) -> Self {
        Self {
            max_head: 1,
            ..self
        }
    }

    pub fn with_constraints(self) -> Self {
        Self {
            constraints: true,
            ..self
        }
    }
}

pub fn atom_name(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("p{i}")
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pick(rng: &mut impl Rng, pool: &[AtomId], max: usize) -> Vec<AtomId> {
    let n = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, n).copied().collect()
}

/// A program with up to `shape.max_rules` rules over the first
/// `shape.atoms` atoms. The empty rule is never produced.
pub fn random_program(rng: &mut impl Rng, shape: &Shape) -> Program {
    let mut p = Program::new();
    let pool: Vec<AtomId> = (0..shape.atoms)
        .map(|i| p.intern(&atom_name(i)).expect("valid name"))
        .collect();
    if pool.is_empty() {
        return p;
    }
    for _ in 0..rng.gen_range(0..=shape.max_rules) {
        let min_head = usize::from(!shape.constraints);
        let head_len = rng.gen_range(min_head..=shape.max_head.max(min_head).min(pool.len()));
        let head: Vec<AtomId> = pool.choose_multiple(rng, head_len).copied().collect();
        let mut pos = pick(rng, &pool, shape.max_pos);
        let neg = pick(rng, &pool, shape.max_neg);
        if head.is_empty() && pos.is_empty() && neg.is_empty() {
            pos.push(*pool.choose(rng).expect("nonempty pool"));
        }
        p.push(Rule::new(head, pos, neg));
    }
    p
}

/// `count` programs from one seed; identical seeds give identical samples.
pub fn programs(seed: u64, shape: &Shape, count: usize) -> Vec<Program> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_program(&mut rng, shape))
        .collect()
}

/// Like [`programs`] but keeps only head-cycle-free programs.
pub fn hcf_programs(seed: u64, shape: &Shape, count: usize) -> Vec<Program> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_program(&mut rng, shape);
        if classify(&p).is_head_cycle_free {
            out.push(p);
        }
    }
    out
}

fn block(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn literal(var: &str, positive: bool) -> Literal {
    if positive {
        Literal::pos(var)
    } else {
        Literal::neg(var)
    }
}

/// A random line with at least one variable from each block.
fn random_line(rng: &mut impl Rng, blocks: &[&[String]]) -> Vec<Literal> {
    let mut line = Vec::new();
    for vars in blocks {
        let n = rng.gen_range(1..=vars.len());
        for v in vars.choose_multiple(rng, n) {
            line.push(literal(v, rng.gen_bool(0.5)));
        }
    }
    line.sort();
    line
}

/// `∀X ∃Y` CNF with `|X| = nx`, `|Y| = ny` and `clauses` random clauses.
pub fn random_qbf2(rng: &mut impl Rng, nx: usize, ny: usize, clauses: usize) -> Qbf2 {
    let (x, y) = (block("x", nx), block("y", ny));
    let matrix = (0..clauses).map(|_| random_line(rng, &[&x, &y])).collect();
    Qbf2::new(x, y, matrix).expect("generated instance is admissible")
}

/// `∀X ∃Y ∀Z` DNF with the given block sizes and `terms` random terms.
pub fn random_qbf3(rng: &mut impl Rng, nx: usize, ny: usize, nz: usize, terms: usize) -> Qbf3 {
    let (x, y, z) = (block("x", nx), block("y", ny), block("z", nz));
    let matrix = (0..terms)
        .map(|_| random_line(rng, &[&x, &y, &z]))
        .collect();
    Qbf3::new(x, y, z, matrix).expect("generated instance is admissible")
}

/// Every full-width line over single-variable blocks, in sign order.
fn full_lines(vars: &[&str]) -> Vec<Vec<Literal>> {
    (0..1u32 << vars.len())
        .map(|signs| {
            vars.iter()
                .enumerate()
                .map(|(i, v)| literal(v, signs >> (vars.len() - 1 - i) & 1 == 0))
                .collect()
        })
        .collect()
}

fn subsets_up_to<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for mask in 0..1u32 << items.len() {
        if mask.count_ones() as usize <= max {
            out.push(
                (0..items.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| items[i].clone())
                    .collect(),
            );
        }
    }
    out.sort_by_key(Vec::len);
    out
}

/// All DNF instances with one variable per block and at most `max_terms`
/// distinct terms, each term using all three variables.
pub fn all_qbf3_single(max_terms: usize) -> Vec<Qbf3> {
    subsets_up_to(&full_lines(&["x", "y", "z"]), max_terms)
        .into_iter()
        .map(|terms| {
            Qbf3::new(vec!["x".into()], vec!["y".into()], vec!["z".into()], terms)
                .expect("admissible")
        })
        .collect()
}

/// All CNF instances with one variable per block: every set of the four
/// two-literal clauses.
pub fn all_qbf2_single() -> Vec<Qbf2> {
    subsets_up_to(&full_lines(&["x", "y"]), 4)
        .into_iter()
        .map(|clauses| Qbf2::new(vec!["x".into()], vec!["y".into()], clauses).expect("admissible"))
        .collect()
}
