//! Program encodings of QBFs. A variable `v` becomes atom `v`, its complement
//! `_n_v`; `_u`, `_v`, `_w` are auxiliary atoms.

use super::{Literal, Qbf, Qbf2, Qbf3};
use crate::error::Result;
use crate::syntax::Program;

pub const AUX_U: &str = "_u";
pub const AUX_V: &str = "_v";
pub const AUX_W: &str = "_w";

/// Atom standing for the complement of `var`.
pub fn bar_name(var: &str) -> String {
    format!("_n_{var}")
}

/// Atom true when the literal is true.
fn literal_atom(l: &Literal) -> String {
    if l.positive {
        l.var.clone()
    } else {
        bar_name(&l.var)
    }
}

/// Atom true when the literal is false.
fn complement_atom(l: &Literal) -> String {
    if l.positive {
        bar_name(&l.var)
    } else {
        l.var.clone()
    }
}

struct Emitter {
    program: Program,
}

impl Emitter {
    fn rule(&mut self, head: &[&str], pos: &[&str], neg: &[&str]) {
        self.program
            .add_rule(head, pos, neg)
            .expect("validated variable names form valid atoms");
    }
}

/// The disjunctive encoding of `∀X ∃Y ∀Z φ`: super-coherent iff the QBF is
/// true. `5|X| + 7|Y| + 10|Z| + n + 3` rules over `2(|X|+|Y|+|Z|) + 3` atoms.
pub fn encode_disjunctive(f: &Qbf3) -> Result<Program> {
    f.validate()?;
    let (u, v, w) = (AUX_U, AUX_V, AUX_W);
    let mut e = Emitter {
        program: Program::new(),
    };
    for x in &f.x_vars {
        let nx = bar_name(x);
        let (x, nx) = (x.as_str(), nx.as_str());
        e.rule(&[x, nx], &[], &[]);
        e.rule(&[u], &[x, nx], &[]);
        e.rule(&[w], &[x, nx], &[]);
        e.rule(&[x], &[u, w], &[]);
        e.rule(&[nx], &[u, w], &[]);
    }
    for y in &f.y_vars {
        let ny = bar_name(y);
        let (y, ny) = (y.as_str(), ny.as_str());
        e.rule(&[y, ny], &[v], &[]);
        e.rule(&[u], &[y, ny], &[]);
        e.rule(&[w], &[y, ny], &[]);
        e.rule(&[y], &[u, w], &[]);
        e.rule(&[ny], &[u, w], &[]);
        e.rule(&[v], &[y], &[]);
        e.rule(&[v], &[ny], &[]);
    }
    for z in &f.z_vars {
        let nz = bar_name(z);
        let (z, nz) = (z.as_str(), nz.as_str());
        e.rule(&[z, nz], &[v], &[]);
        e.rule(&[u], &[z], &[w]);
        e.rule(&[u], &[nz], &[w]);
        e.rule(&[v], &[z], &[]);
        e.rule(&[v], &[nz], &[]);
        e.rule(&[z], &[w], &[]);
        e.rule(&[nz], &[w], &[]);
        e.rule(&[z], &[u], &[]);
        e.rule(&[nz], &[u], &[]);
        e.rule(&[w, u], &[z, nz], &[]);
    }
    for term in &f.terms {
        let body: Vec<String> = term.iter().map(literal_atom).collect();
        let body: Vec<&str> = body.iter().map(String::as_str).collect();
        e.rule(&[w, u], &body, &[]);
    }
    e.rule(&[v], &[w], &[]);
    e.rule(&[v], &[u], &[]);
    e.rule(&[v], &[], &[u]);
    Ok(e.program)
}

/// The normal encoding of `∀X ∃Y φ`: super-coherent iff the QBF is true.
/// `2|X| + 4|Y| + (2|X|+2)(1+|X|+|Y|) + n + 1` rules over `2(|X|+|Y|) + 2` atoms.
pub fn encode_normal(f: &Qbf2) -> Result<Program> {
    f.validate()?;
    let (v, w) = (AUX_V, AUX_W);
    let mut e = Emitter {
        program: Program::new(),
    };
    for x in &f.x_vars {
        let nx = bar_name(x);
        e.rule(&[x], &[], &[&nx]);
        e.rule(&[&nx], &[], &[x]);
    }
    for y in &f.y_vars {
        let ny = bar_name(y);
        e.rule(&[y], &[w], &[&ny]);
        e.rule(&[&ny], &[w], &[y]);
        e.rule(&[w], &[y], &[]);
        e.rule(&[w], &[&ny], &[]);
    }
    let mut saturated: Vec<String> = Vec::new();
    for x in &f.x_vars {
        saturated.push(x.clone());
        saturated.push(bar_name(x));
    }
    saturated.push(v.to_string());
    saturated.push(w.to_string());
    for z in &saturated {
        e.rule(&[z], &[v, w], &[]);
        for x in &f.x_vars {
            e.rule(&[z], &[x, &bar_name(x)], &[]);
        }
        for y in &f.y_vars {
            e.rule(&[z], &[y, &bar_name(y)], &[]);
        }
    }
    for clause in &f.clauses {
        let body: Vec<String> = clause.iter().map(complement_atom).collect();
        let body: Vec<&str> = body.iter().map(String::as_str).collect();
        e.rule(&[v], &body, &[]);
    }
    e.rule(&[w], &[], &[v]);
    Ok(e.program)
}

/// Picks the encoding matching the matrix kind.
pub fn encode(f: &Qbf) -> Result<Program> {
    match f {
        Qbf::Dnf3(f) => encode_disjunctive(f),
        Qbf::Cnf2(f) => encode_normal(f),
    }
}
