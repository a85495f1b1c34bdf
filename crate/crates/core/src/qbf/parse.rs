//! QBF text format:
//!
//! ```text
//! forall x1 x2
//! exists y1
//! forall z1        % only for dnf
//! dnf              % or cnf
//! x1 -y1 z1        % one term (dnf) or clause (cnf) per line
//! ```

use super::{Literal, Qbf, Qbf2, Qbf3};
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    Forall,
    Exists,
}

fn literal(word: &str, line: usize, column: usize) -> std::result::Result<Literal, ParseError> {
    let (var, positive) = match word.strip_prefix('-') {
        Some(rest) => (rest, false),
        None => (word, true),
    };
    let valid = var.chars().next().is_some_and(|c| c.is_ascii_lowercase())
        && var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(ParseError::new(
            line,
            column,
            format!("invalid literal `{word}`"),
        ));
    }
    Ok(Literal {
        var: var.to_string(),
        positive,
    })
}

/// Words of a line with their 1-based columns, comments removed.
fn words(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('%').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code
        .char_indices()
        .chain(std::iter::once((code.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((code[..s].chars().count() + 1, &code[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn parse_qbf(text: &str) -> Result<Qbf> {
    let mut prefix: Vec<(Quant, Vec<String>, usize)> = Vec::new();
    let mut kind: Option<(&str, usize)> = None;
    let mut matrix: Vec<Vec<Literal>> = Vec::new();
    let mut last_line = 1;

    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        last_line = n;
        let ws = words(line);
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        if kind.is_some() {
            let lits = ws
                .iter()
                .map(|&(c, w)| literal(w, n, c))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            matrix.push(lits);
            continue;
        }
        match head {
            "forall" | "exists" => {
                let q = if head == "forall" {
                    Quant::Forall
                } else {
                    Quant::Exists
                };
                let mut vars = Vec::new();
                for &(c, w) in &ws[1..] {
                    let lit = literal(w, n, c)?;
                    if !lit.positive {
                        return Err(ParseError::new(n, c, format!("invalid variable `{w}`")).into());
                    }
                    vars.push(lit.var);
                }
                prefix.push((q, vars, n));
            }
            "dnf" | "cnf" => {
                if ws.len() > 1 {
                    return Err(
                        ParseError::new(n, ws[1].0, "unexpected text after matrix kind").into(),
                    );
                }
                kind = Some((head, n));
            }
            other => {
                return Err(ParseError::new(
                    n,
                    col,
                    format!("expected `forall`, `exists`, `dnf` or `cnf`, found `{other}`"),
                )
                .into())
            }
        }
    }

    let Some((kind, kind_line)) = kind else {
        return Err(ParseError::new(last_line, 1, "missing `dnf` or `cnf` line").into());
    };
    let shape: Vec<Quant> = prefix.iter().map(|(q, _, _)| *q).collect();
    let expected: &[Quant] = if kind == "dnf" {
        &[Quant::Forall, Quant::Exists, Quant::Forall]
    } else {
        &[Quant::Forall, Quant::Exists]
    };
    if shape != expected {
        let want = if kind == "dnf" {
            "forall/exists/forall"
        } else {
            "forall/exists"
        };
        return Err(ParseError::new(
            kind_line,
            1,
            format!("a {kind} matrix requires the quantifier prefix {want}"),
        )
        .into());
    }
    let mut blocks = prefix.into_iter().map(|(_, vars, _)| vars);
    let x = blocks.next().unwrap();
    let y = blocks.next().unwrap();
    let qbf = if kind == "dnf" {
        let z = blocks.next().unwrap();
        Qbf::Dnf3(Qbf3::new(x, y, z, matrix)?)
    } else {
        Qbf::Cnf2(Qbf2::new(x, y, matrix)?)
    };
    Ok(qbf)
}

impl std::str::FromStr for Qbf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_qbf(s)
    }
}
