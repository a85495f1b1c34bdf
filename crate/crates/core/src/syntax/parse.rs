//! Text syntax:
//!
//! ```text
//! statement = rule "." ;
//! rule      = [head] [":-" body] ;
//! head      = atom ("|" atom)* ;
//! body      = literal ("," literal)* ;
//! literal   = ["not"] atom ;
//! ```
//!
//! `%` starts a comment running to the end of the line.

use super::{AtomId, Program, Rule};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Pipe,
    If,
    Comma,
    Dot,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("atom `{s}`"),
        Tok::Not => "`not`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::If => "`:-`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
    }
}

fn lex(text: &str) -> Result<(Vec<Token>, (usize, usize)), ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => bump(&mut chars),
            '|' | ',' | '.' => {
                bump(&mut chars);
                let tok = match c {
                    '|' => Tok::Pipe,
                    ',' => Tok::Comma,
                    _ => Tok::Dot,
                };
                tokens.push(Token {
                    tok,
                    line: l,
                    column: col,
                });
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() != Some(&'-') {
                    return Err(ParseError::new(l, col, "expected `:-`"));
                }
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::If,
                    line: l,
                    column: col,
                });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    ident.push(c);
                    bump(&mut chars);
                }
                let first = ident.chars().next().unwrap();
                if !(first.is_ascii_lowercase() || first == '_') {
                    return Err(ParseError::new(
                        l,
                        col,
                        format!("atom `{ident}` must start with a lowercase letter or `_`"),
                    ));
                }
                let tok = if ident == "not" {
                    Tok::Not
                } else {
                    Tok::Ident(ident)
                };
                tokens.push(Token {
                    tok,
                    line: l,
                    column: col,
                });
            }
            other => {
                return Err(ParseError::new(
                    l,
                    col,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok((tokens, (line, column)))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    program: Program,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::new(line, column, message)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<AtomId, ParseError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Ident(name)) => {
                let id = self
                    .program
                    .intern(&name)
                    .map_err(|e| self.error(e.to_string()))?;
                self.pos += 1;
                Ok(id)
            }
            Some(tok) => Err(self.error(format!("expected an atom, found {}", describe(&tok)))),
            None => Err(self.error("expected an atom, found end of input")),
        }
    }

    fn statement(&mut self) -> Result<Rule, ParseError> {
        let mut head = Vec::new();
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Ident(_))) {
            head.push(self.atom()?);
            while self.eat(&Tok::Pipe) {
                head.push(self.atom()?);
            }
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.eat(&Tok::If) {
            // A bare `:- .` is the empty rule; a head followed by `:-` needs a body.
            let empty_rule = head.is_empty() && self.peek().map(|t| &t.tok) == Some(&Tok::Dot);
            if !empty_rule {
                loop {
                    if self.peek().map(|t| &t.tok) == Some(&Tok::Dot) {
                        return Err(self.error("empty rule body after `:-`"));
                    }
                    if self.eat(&Tok::Not) {
                        neg.push(self.atom()?);
                    } else {
                        pos.push(self.atom()?);
                    }
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
        } else if head.is_empty() {
            return Err(match self.peek() {
                Some(t) if t.tok == Tok::Dot => self.error("empty statement"),
                Some(t) => self.error(format!("unexpected {}", describe(&t.tok))),
                None => self.error("unexpected end of input"),
            });
        }
        match self.peek() {
            Some(t) if t.tok == Tok::Dot => {
                self.pos += 1;
                Ok(Rule::new(head, pos, neg))
            }
            Some(t) => Err(self.error(format!("expected `.`, found {}", describe(&t.tok)))),
            None => Err(self.error("rule is missing the terminating `.`")),
        }
    }
}

/// Parses a ground program; rules keep their textual order, duplicates included.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let (tokens, end) = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        program: Program::new(),
    };
    while parser.peek().is_some() {
        let rule = parser.statement()?;
        parser.program.push(rule);
    }
    Ok(parser.program)
}
