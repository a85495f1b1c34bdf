//! Bit-mask evaluation core shared by solving, super-coherence and the
//! reduction verifiers. Atom `i` of the program's table is bit `i`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::syntax::{AtomId, Program};

/// Largest table the mask representation can hold.
pub const MASK_WIDTH: usize = 64;

pub(crate) fn mask_of(ids: impl IntoIterator<Item = AtomId>) -> u64 {
    ids.into_iter().fold(0, |m, a| m | (1u64 << a.index()))
}

/// Deposits the low bits of `index` into the set positions of `mask`.
pub(crate) fn scatter(mut index: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut rest = mask;
    while rest != 0 && index != 0 {
        let bit = rest & rest.wrapping_neg();
        if index & 1 == 1 {
            out |= bit;
        }
        index >>= 1;
        rest &= rest - 1;
    }
    out
}

/// Canonical (cardinality, numeric value) order used for every reported set family.
pub(crate) fn canonical_key(bits: u64) -> (u32, u64) {
    (bits.count_ones(), bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct MaskRule {
    pub head: u64,
    pub pos: u64,
    pub neg: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct MaskProgram {
    pub rules: Vec<MaskRule>,
    /// `At(P)`.
    pub atoms: u64,
}

impl MaskProgram {
    pub fn compile(p: &Program) -> Result<Self> {
        let width = p.atoms().len();
        if width > MASK_WIDTH {
            return Err(Error::GuardExceeded {
                atoms: width,
                limit: MASK_WIDTH,
            });
        }
        let rules: Vec<MaskRule> = p
            .rules()
            .iter()
            .map(|r| MaskRule {
                head: mask_of(r.head().iter().copied()),
                pos: mask_of(r.pos_body().iter().copied()),
                neg: mask_of(r.neg_body().iter().copied()),
            })
            .collect();
        let atoms = rules.iter().fold(0, |m, r| m | r.head | r.pos | r.neg);
        Ok(Self { rules, atoms })
    }

    pub fn is_model(&self, i: u64) -> bool {
        self.rules
            .iter()
            .all(|r| r.pos & !i != 0 || r.neg & i != 0 || r.head & i != 0)
    }

    /// Does `n` satisfy the reduct `P^m`?
    pub fn is_reduct_model(&self, m: u64, n: u64) -> bool {
        self.rules
            .iter()
            .all(|r| r.neg & m != 0 || r.pos & !n != 0 || r.head & n != 0)
    }

    /// Is `m` an answer set of `P ∪ facts`?
    ///
    /// Every model `n ⊆ m` of `(P ∪ facts)^m` contains the closure of `facts`
    /// under the reduct rules whose head meets `m` in a single atom, so only
    /// subsets between that closure and `m` are enumerated.
    pub fn is_answer_set(&self, facts: u64, m: u64) -> bool {
        if facts & !m != 0 || !self.is_model(m) {
            return false;
        }
        // Reduct rules whose body can hold inside `m`, heads cut down to `m`.
        let active: Vec<(u64, u64)> = self
            .rules
            .iter()
            .filter(|r| r.neg & m == 0 && r.pos & !m == 0)
            .map(|r| (r.head & m, r.pos))
            .collect();
        let mut least = facts;
        loop {
            let mut next = least;
            for &(head, pos) in &active {
                if head.count_ones() == 1 && pos & !next == 0 {
                    next |= head;
                }
            }
            if next == least {
                break;
            }
            least = next;
        }
        if least == m {
            return true;
        }
        if active.iter().all(|(head, _)| head.count_ones() == 1) {
            // `least` is itself a smaller model.
            return false;
        }
        let free = m & !least;
        let total = 1u64 << free.count_ones();
        for index in 0..total - 1 {
            let n = least | scatter(index, free);
            if active
                .iter()
                .all(|&(head, pos)| pos & !n != 0 || head & n != 0)
            {
                return false;
            }
        }
        true
    }

    fn candidate_space(&self, facts: u64) -> (u64, u64) {
        let free = (self.atoms | facts) & !facts;
        (free, 1u64 << free.count_ones())
    }

    /// All answer sets of `P ∪ facts`, in canonical order, and the number of
    /// candidates visited.
    pub fn answer_sets(&self, facts: u64, parallel: bool) -> (Vec<u64>, u64) {
        let (free, total) = self.candidate_space(facts);
        let test = |index: u64| {
            let m = facts | scatter(index, free);
            self.is_answer_set(facts, m).then_some(m)
        };
        let mut found: Vec<u64> = if parallel {
            (0..total).into_par_iter().filter_map(test).collect()
        } else {
            (0..total).filter_map(test).collect()
        };
        found.sort_by_key(|&m| canonical_key(m));
        (found, total)
    }

    pub fn has_answer_set(&self, facts: u64, parallel: bool) -> bool {
        let (free, total) = self.candidate_space(facts);
        let test = |index: u64| self.is_answer_set(facts, facts | scatter(index, free));
        if parallel {
            (0..total).into_par_iter().any(test)
        } else {
            (0..total).any(test)
        }
    }

    pub fn has_model(&self, parallel: bool) -> bool {
        let total = 1u64 << self.atoms.count_ones();
        let test = |index: u64| self.is_model(scatter(index, self.atoms));
        if parallel {
            (0..total).into_par_iter().any(test)
        } else {
            (0..total).any(test)
        }
    }
}

/// All subsets of `mask` in canonical (cardinality, numeric value) order.
pub(crate) fn subsets_canonical(mask: u64) -> Vec<u64> {
    let total = 1u64 << mask.count_ones();
    let mut out: Vec<u64> = (0..total).map(|i| scatter(i, mask)).collect();
    out.sort_by_key(|&s| canonical_key(s));
    out
}

/// Subsets of `within` (including `within` itself) that satisfy `P^m`.
pub(crate) fn reduct_submodels(p: &MaskProgram, m: u64, within: u64) -> Vec<u64> {
    let total = 1u64 << within.count_ones();
    let mut out: Vec<u64> = (0..total)
        .map(|i| scatter(i, within))
        .filter(|&n| p.is_reduct_model(m, n))
        .collect();
    out.sort_by_key(|&s| canonical_key(s));
    out
}
