//! Text format for derivations.
//!
//! ```text
//! agents: a,b
//! premises:
//!   P -> Q
//! 1. P -> Q ; prem:1
//! 2. [m]a (P -> Q) ; nec:1,[m]a
//! ```
//!
//! The `agents:` header is optional and overrides the caller's universe.
//! Premises are indented lines under `premises:`. `#` starts a comment.

use thiserror::Error;

use super::{AxiomName, Derivation, Justification};
use crate::syntax::{parse_agent, parse_formula, parse_message, render, SyntaxError, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("derivation line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn syntax(line: usize) -> impl Fn(SyntaxError) -> FormatError {
    move |e| err(line, e.to_string())
}

pub fn render_derivation(d: &Derivation, universe: Option<&Universe>) -> String {
    let mut out = String::new();
    if let Some(u) = universe {
        let names: Vec<&str> = u.agents().map(|a| a.as_str()).collect();
        out.push_str(&format!("agents: {}\n", names.join(",")));
    }
    if !d.premises.is_empty() {
        out.push_str("premises:\n");
        for p in &d.premises {
            out.push_str(&format!("  {}\n", render(p)));
        }
    }
    for (i, l) in d.lines.iter().enumerate() {
        out.push_str(&format!("{}. {} ; {}\n", i + 1, render(&l.formula), l.justification));
    }
    out
}

fn parse_justification(text: &str, line: usize, u: &Universe) -> Result<Justification, FormatError> {
    let index = |s: &str| s.trim().parse::<usize>().map_err(|_| err(line, format!("bad line number `{}`", s.trim())));
    let text = text.trim();
    if text == "taut" {
        return Ok(Justification::Taut);
    }
    let (kind, rest) = text.split_once(':').ok_or_else(|| err(line, format!("unknown justification `{text}`")))?;
    match kind.trim() {
        "ax" => AxiomName::from_name(rest.trim())
            .map(Justification::Axiom)
            .ok_or_else(|| err(line, format!("unknown axiom `{}`", rest.trim()))),
        "g1" => Ok(Justification::Gamma1(rest.trim().to_string())),
        "prem" => Ok(Justification::Premise(index(rest)?)),
        "mp" => {
            let (i, j) = rest.split_once(',').ok_or_else(|| err(line, "mp needs two line numbers"))?;
            Ok(Justification::MP(index(i)?, index(j)?))
        }
        "nec" => {
            let (i, modality) = rest.split_once(',').ok_or_else(|| err(line, "nec needs a line number and a modality"))?;
            let modality = modality.trim();
            let close = modality.rfind(']').filter(|_| modality.starts_with('['));
            let close = close.ok_or_else(|| err(line, format!("bad modality `{modality}`")))?;
            let msg = parse_message(&modality[1..close], Some(u)).map_err(syntax(line))?;
            let agent = parse_agent(&modality[close + 1..], u).map_err(syntax(line))?;
            Ok(Justification::Nec(index(i)?, msg, agent))
        }
        other => Err(err(line, format!("unknown justification kind `{other}`"))),
    }
}

pub fn parse_derivation(text: &str, universe: &Universe) -> Result<Derivation, FormatError> {
    let mut u = universe.clone();
    let mut d = Derivation::default();
    let mut in_premises = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with([' ', '\t']);
        let content = content.trim();
        if let Some(list) = content.strip_prefix("agents:") {
            if !d.premises.is_empty() || !d.lines.is_empty() {
                return Err(err(n, "agents header must come first"));
            }
            u = Universe::from_list(list).map_err(syntax(n))?;
            continue;
        }
        if content == "premises:" {
            in_premises = true;
            continue;
        }
        if in_premises && indented {
            d.premises.push(parse_formula(content, &u).map_err(syntax(n))?);
            continue;
        }
        in_premises = false;
        let (number, rest) = content.split_once('.').ok_or_else(|| err(n, "expected `N. formula ; justification`"))?;
        let number: usize = number.trim().parse().map_err(|_| err(n, format!("bad line number `{}`", number.trim())))?;
        if number != d.lines.len() + 1 {
            return Err(err(n, format!("expected line number {}, found {number}", d.lines.len() + 1)));
        }
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| err(n, "missing `; justification`"))?;
        let formula = parse_formula(formula, &u).map_err(syntax(n))?;
        let just = parse_justification(just, n, &u)?;
        d.push(formula, just);
    }
    Ok(d)
}
