use super::{AtomId, Program, Rule};

fn sorted_names<'a>(p: &'a Program, ids: &[AtomId]) -> Vec<&'a str> {
    let mut v: Vec<&str> = ids.iter().map(|&a| p.atoms().name(a)).collect();
    v.sort_unstable();
    v
}

/// Canonical single-line form of `rule`, without a trailing newline.
pub fn render_rule(p: &Program, rule: &Rule) -> String {
    let mut out = sorted_names(p, rule.head()).join(" | ");
    let mut body: Vec<String> = sorted_names(p, rule.pos_body())
        .into_iter()
        .map(str::to_string)
        .collect();
    body.extend(
        sorted_names(p, rule.neg_body())
            .into_iter()
            .map(|n| format!("not {n}")),
    );
    if !body.is_empty() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(":- ");
        out.push_str(&body.join(", "));
    } else if out.is_empty() {
        out.push_str(":- ");
    }
    out.push('.');
    out
}

/// One rule per line in program order; atoms sorted by name inside each part.
pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    for rule in p.rules() {
        out.push_str(&render_rule(p, rule));
        out.push('\n');
    }
    out
}
