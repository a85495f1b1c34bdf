//! Two-block (`∀X ∃Y`, CNF) and three-block (`∀X ∃Y ∀Z`, DNF) QBFs, their
//! truth-table evaluation, and the program encodings whose super-coherence
//! coincides with QBF validity.

mod encode;
mod parse;
mod verify;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::semantics::Limits;

pub use encode::{bar_name, encode, encode_disjunctive, encode_normal};
pub use parse::parse_qbf;
pub use verify::{
    verify_phi_norm_reduction, verify_phi_norm_reduction_with, verify_phi_reduction,
    verify_phi_reduction_with, ReductionReport, Violation, VERIFY_GUARD,
};

/// Default limit on the number of QBF variables for truth-table evaluation.
pub const QBF_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: impl Into<String>) -> Self {
        Self {
            var: var.into(),
            positive: true,
        }
    }

    pub fn neg(var: impl Into<String>) -> Self {
        Self {
            var: var.into(),
            positive: false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

/// `∀X ∃Y ∀Z φ` with `φ` a disjunction of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf3 {
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    pub z_vars: Vec<String>,
    pub terms: Vec<Vec<Literal>>,
}

/// `∀X ∃Y φ` with `φ` a conjunction of clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf2 {
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    pub clauses: Vec<Vec<Literal>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Qbf {
    Dnf3(Qbf3),
    Cnf2(Qbf2),
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

fn check_blocks(blocks: &[(&str, &[String])]) -> Result<()> {
    let mut seen = HashSet::new();
    for (label, vars) in blocks {
        if vars.is_empty() {
            return Err(violation(format!("quantifier block {label} is empty")));
        }
        for v in vars.iter() {
            if !crate::syntax::is_valid_atom_name(v) || v.starts_with('_') {
                return Err(violation(format!(
                    "`{v}` is not a valid variable name (must match [a-z][A-Za-z0-9_]*)"
                )));
            }
            if !seen.insert(v.as_str()) {
                return Err(violation(format!(
                    "variable `{v}` occurs in more than one block"
                )));
            }
        }
    }
    Ok(())
}

/// Every literal's variable is bound, no variable repeats within the line, and
/// each block is represented.
fn check_matrix(kind: &str, lines: &[Vec<Literal>], blocks: &[(&str, &[String])]) -> Result<()> {
    for (i, line) in lines.iter().enumerate() {
        let n = i + 1;
        if line.is_empty() {
            return Err(violation(format!("{kind} {n} is empty")));
        }
        let mut vars = HashSet::new();
        for lit in line {
            if !blocks.iter().any(|(_, vs)| vs.contains(&lit.var)) {
                return Err(violation(format!(
                    "{kind} {n} uses unquantified variable `{}`",
                    lit.var
                )));
            }
            if !vars.insert(lit.var.as_str()) {
                return Err(violation(format!(
                    "{kind} {n} mentions variable `{}` twice",
                    lit.var
                )));
            }
        }
        for (label, vs) in blocks {
            if !line.iter().any(|l| vs.contains(&l.var)) {
                return Err(violation(format!(
                    "each {kind} must contain a variable from every block, but {kind} {n} has none from {label}"
                )));
            }
        }
    }
    Ok(())
}

impl Qbf3 {
    pub fn new(
        x_vars: Vec<String>,
        y_vars: Vec<String>,
        z_vars: Vec<String>,
        terms: Vec<Vec<Literal>>,
    ) -> Result<Self> {
        let f = Self {
            x_vars,
            y_vars,
            z_vars,
            terms,
        };
        f.validate()?;
        Ok(f)
    }

    fn blocks(&self) -> [(&str, &[String]); 3] {
        [
            ("X", &self.x_vars),
            ("Y", &self.y_vars),
            ("Z", &self.z_vars),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        check_blocks(&self.blocks())?;
        check_matrix("term", &self.terms, &self.blocks())
    }

    pub fn var_count(&self) -> usize {
        self.x_vars.len() + self.y_vars.len() + self.z_vars.len()
    }

    fn vars(&self) -> Vec<&String> {
        self.x_vars
            .iter()
            .chain(&self.y_vars)
            .chain(&self.z_vars)
            .collect()
    }

    /// Does the assignment (true variables listed in `truth`) satisfy some term?
    pub fn matrix_holds(&self, truth: &HashSet<&str>) -> bool {
        self.terms.iter().any(|t| {
            t.iter()
                .all(|l| truth.contains(l.var.as_str()) == l.positive)
        })
    }
}

impl Qbf2 {
    pub fn new(
        x_vars: Vec<String>,
        y_vars: Vec<String>,
        clauses: Vec<Vec<Literal>>,
    ) -> Result<Self> {
        let f = Self {
            x_vars,
            y_vars,
            clauses,
        };
        f.validate()?;
        Ok(f)
    }

    fn blocks(&self) -> [(&str, &[String]); 2] {
        [("X", &self.x_vars), ("Y", &self.y_vars)]
    }

    pub fn validate(&self) -> Result<()> {
        check_blocks(&self.blocks())?;
        check_matrix("clause", &self.clauses, &self.blocks())
    }

    pub fn var_count(&self) -> usize {
        self.x_vars.len() + self.y_vars.len()
    }

    fn vars(&self) -> Vec<&String> {
        self.x_vars.iter().chain(&self.y_vars).collect()
    }

    /// Does the assignment satisfy every clause?
    pub fn matrix_holds(&self, truth: &HashSet<&str>) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| truth.contains(l.var.as_str()) == l.positive)
        })
    }
}

/// Literal as (bit index in the assignment, polarity).
type MaskLit = (u32, bool);

fn compile_lines(vars: &[&String], lines: &[Vec<Literal>]) -> Vec<Vec<MaskLit>> {
    lines
        .iter()
        .map(|line| {
            line.iter()
                .map(|l| {
                    let idx = vars
                        .iter()
                        .position(|v| **v == l.var)
                        .expect("bound variable");
                    (idx as u32, l.positive)
                })
                .collect()
        })
        .collect()
}

fn lit_true(assignment: u64, (idx, positive): MaskLit) -> bool {
    (assignment >> idx & 1 == 1) == positive
}

pub fn qbf3_valid(f: &Qbf3) -> Result<bool> {
    qbf3_valid_with(f, &Limits::default())
}

/// Truth-table evaluation of `∀X ∃Y ∀Z φ`.
pub fn qbf3_valid_with(f: &Qbf3, limits: &Limits) -> Result<bool> {
    f.validate()?;
    limits.check(f.var_count(), QBF_GUARD)?;
    let terms = compile_lines(&f.vars(), &f.terms);
    let (nx, ny, nz) = (f.x_vars.len(), f.y_vars.len(), f.z_vars.len());
    let holds = |a: u64| terms.iter().any(|t| t.iter().all(|&l| lit_true(a, l)));
    Ok((0..1u64 << nx).all(|x| {
        (0..1u64 << ny).any(|y| (0..1u64 << nz).all(|z| holds(x | y << nx | z << (nx + ny))))
    }))
}

pub fn qbf2_valid(f: &Qbf2) -> Result<bool> {
    qbf2_valid_with(f, &Limits::default())
}

/// Truth-table evaluation of `∀X ∃Y φ`.
pub fn qbf2_valid_with(f: &Qbf2, limits: &Limits) -> Result<bool> {
    f.validate()?;
    limits.check(f.var_count(), QBF_GUARD)?;
    let clauses = compile_lines(&f.vars(), &f.clauses);
    let nx = f.x_vars.len();
    let holds = |a: u64| clauses.iter().all(|c| c.iter().any(|&l| lit_true(a, l)));
    Ok((0..1u64 << nx).all(|x| (0..1u64 << f.y_vars.len()).any(|y| holds(x | y << nx))))
}

pub fn qbf_valid(f: &Qbf) -> Result<bool> {
    qbf_valid_with(f, &Limits::default())
}

pub fn qbf_valid_with(f: &Qbf, limits: &Limits) -> Result<bool> {
    match f {
        Qbf::Dnf3(f) => qbf3_valid_with(f, limits),
        Qbf::Cnf2(f) => qbf2_valid_with(f, limits),
    }
}

fn write_lines(f: &mut fmt::Formatter<'_>, lines: &[Vec<Literal>]) -> fmt::Result {
    for line in lines {
        let lits: Vec<String> = line.iter().map(Literal::to_string).collect();
        writeln!(f, "{}", lits.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for Qbf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "forall {}", self.x_vars.join(" "))?;
        writeln!(f, "exists {}", self.y_vars.join(" "))?;
        writeln!(f, "forall {}", self.z_vars.join(" "))?;
        writeln!(f, "dnf")?;
        write_lines(f, &self.terms)
    }
}

impl fmt::Display for Qbf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "forall {}", self.x_vars.join(" "))?;
        writeln!(f, "exists {}", self.y_vars.join(" "))?;
        writeln!(f, "cnf")?;
        write_lines(f, &self.clauses)
    }
}

impl fmt::Display for Qbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qbf::Dnf3(q) => q.fmt(f),
            Qbf::Cnf2(q) => q.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn lits(text: &str) -> Vec<Literal> {
        text.split_whitespace()
            .map(|t| match t.strip_prefix('-') {
                Some(var) => Literal::neg(var),
                None => Literal::pos(t),
            })
            .collect()
    }

    fn q3(terms: &[&str]) -> Qbf3 {
        Qbf3::new(
            v(&["x"]),
            v(&["y"]),
            v(&["z"]),
            terms.iter().map(|t| lits(t)).collect(),
        )
        .unwrap()
    }

    fn q2(clauses: &[&str]) -> Qbf2 {
        Qbf2::new(
            v(&["x"]),
            v(&["y"]),
            clauses.iter().map(|t| lits(t)).collect(),
        )
        .unwrap()
    }

    /// Assignment-by-assignment evaluation through the name-based matrix check.
    fn qbf3_by_names(f: &Qbf3) -> bool {
        fn assign(vars: &[String], bits: u64) -> Vec<&str> {
            vars.iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, v)| v.as_str())
                .collect()
        }
        (0..1u64 << f.x_vars.len()).all(|x| {
            (0..1u64 << f.y_vars.len()).any(|y| {
                (0..1u64 << f.z_vars.len()).all(|z| {
                    let truth: HashSet<&str> = assign(&f.x_vars, x)
                        .into_iter()
                        .chain(assign(&f.y_vars, y))
                        .chain(assign(&f.z_vars, z))
                        .collect();
                    f.matrix_holds(&truth)
                })
            })
        })
    }

    #[test]
    fn qbf3_examples() {
        let f = q3(&["x y z", "x y -z", "-x -y z", "-x -y -z"]);
        assert!(qbf3_valid(&f).unwrap());
        assert!(qbf3_by_names(&f));
        let f = q3(&["x y z"]);
        assert!(!qbf3_valid(&f).unwrap());
        assert!(!qbf3_by_names(&f));
        let f = q3(&["x y z", "x y -z", "-x y z", "-x y -z"]);
        assert!(qbf3_valid(&f).unwrap());
    }

    #[test]
    fn qbf2_examples() {
        assert!(qbf2_valid(&q2(&["x y", "-x -y"])).unwrap());
        assert!(!qbf2_valid(&q2(&["x y", "x -y"])).unwrap());
        assert!(qbf2_valid(&q2(&["x y"])).unwrap());
    }

    #[test]
    fn empty_matrices() {
        assert!(!qbf3_valid(&q3(&[])).unwrap());
        assert!(qbf2_valid(&q2(&[])).unwrap());
    }

    #[test]
    fn admissibility_is_enforced() {
        let err = Qbf3::new(v(&["x"]), v(&["y"]), v(&["z"]), vec![lits("x z")]).unwrap_err();
        assert!(err.to_string().contains("from Y"));
        assert!(Qbf3::new(v(&["x"]), v(&[]), v(&["z"]), vec![]).is_err());
        assert!(Qbf2::new(v(&["x"]), v(&["x"]), vec![]).is_err());
        assert!(Qbf2::new(v(&["x"]), v(&["y"]), vec![lits("x y -y")]).is_err());
        assert!(Qbf2::new(v(&["x"]), v(&["y"]), vec![lits("x w")]).is_err());
        assert!(Qbf2::new(v(&["_x"]), v(&["y"]), vec![]).is_err());
    }

    #[test]
    fn guard() {
        let xs: Vec<String> = (0..11).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (0..11).map(|i| format!("y{i}")).collect();
        let f = Qbf2::new(xs, ys, vec![lits("x0 y0")]).unwrap();
        assert_eq!(
            qbf2_valid(&f).unwrap_err(),
            Error::GuardExceeded {
                atoms: 22,
                limit: 20
            }
        );
    }
}
