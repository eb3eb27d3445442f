//! Text form of finite models.
//!
//! ```text
//! STATES
//! s0 s1
//! TRANS
//! m a : s0 -> s1
//! m a : s1 -> s1
//! BASES
//! a @ s1 : m
//! VAL
//! P : s1
//! ```
//!
//! `#` starts a comment line. Rendering is canonical: sections in the order
//! above, lines sorted, empty bases omitted. Parsing a rendered model and
//! rendering it again gives the same bytes.

use super::{FiniteModel, ModelError};
use crate::knowledge::DataBase;
use crate::syntax::{parse_message, AgentName, Modality, PropName};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    States,
    Trans,
    Bases,
    Val,
}

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Parse { line, message: message.into() }
}

fn valid_state_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

// Splits on commas outside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

pub fn parse_model(text: &str) -> Result<FiniteModel, ModelError> {
    let mut section = Section::None;
    let mut names: Vec<String> = Vec::new();
    let mut model: Option<FiniteModel> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let next = match line {
            "STATES" => Some(Section::States),
            "TRANS" => Some(Section::Trans),
            "BASES" => Some(Section::Bases),
            "VAL" => Some(Section::Val),
            _ => None,
        };
        if let Some(next) = next {
            if next != Section::States && model.is_none() {
                if names.is_empty() {
                    return Err(err(n, "STATES must come first and list at least one state"));
                }
                model = Some(FiniteModel::new(std::mem::take(&mut names)));
            }
            if next == Section::States && model.is_some() {
                return Err(err(n, "STATES must come first"));
            }
            section = next;
            continue;
        }
        match section {
            Section::None => return Err(err(n, "expected a section header")),
            Section::States => {
                for name in line.split_whitespace() {
                    if !valid_state_name(name) {
                        return Err(err(n, format!("bad state name `{name}`")));
                    }
                    if names.iter().any(|x| x == name) {
                        return Err(err(n, format!("duplicate state `{name}`")));
                    }
                    names.push(name.to_string());
                }
            }
            Section::Trans => {
                let m = model.as_mut().expect("created at header");
                let (lhs, rhs) = line.split_once(':').ok_or_else(|| err(n, "expected `M a : s -> t`"))?;
                let (msg, agent) = lhs.trim().rsplit_once(char::is_whitespace).ok_or_else(|| err(n, "expected `M a` before `:`"))?;
                let msg = parse_message(msg.trim(), None).map_err(|e| err(n, e.to_string()))?;
                let agent = AgentName::new(agent).map_err(|e| err(n, e.to_string()))?;
                let (from, to) = rhs.split_once("->").ok_or_else(|| err(n, "expected `s -> t`"))?;
                let from = m.state_index(from.trim()).map_err(|e| err(n, e.to_string()))?;
                let to = m.state_index(to.trim()).map_err(|e| err(n, e.to_string()))?;
                m.add_edge(&Modality::new(msg, agent), from, to)?;
            }
            Section::Bases => {
                let m = model.as_mut().expect("created at header");
                let (lhs, rhs) = line.split_once(':').ok_or_else(|| err(n, "expected `a @ s : M, ...`"))?;
                let (agent, state) = lhs.split_once('@').ok_or_else(|| err(n, "expected `a @ s`"))?;
                let agent = AgentName::new(agent.trim()).map_err(|e| err(n, e.to_string()))?;
                let s = m.state_index(state.trim()).map_err(|e| err(n, e.to_string()))?;
                let mut base = m.base(&agent, s);
                if !rhs.trim().is_empty() {
                    for part in split_top_level(rhs) {
                        base.insert(parse_message(part.trim(), None).map_err(|e| err(n, e.to_string()))?);
                    }
                }
                m.set_base(agent, s, base)?;
            }
            Section::Val => {
                let m = model.as_mut().expect("created at header");
                let (prop, states) = line.split_once(':').ok_or_else(|| err(n, "expected `P : s ...`"))?;
                let prop = PropName::new(prop.trim()).map_err(|e| err(n, e.to_string()))?;
                m.declare_prop(prop.clone());
                for name in states.split_whitespace() {
                    let s = m.state_index(name).map_err(|e| err(n, e.to_string()))?;
                    m.set_prop(prop.clone(), s, true)?;
                }
            }
        }
    }
    match model {
        Some(m) => Ok(m),
        None if !names.is_empty() => Ok(FiniteModel::new(names)),
        None => Err(err(text.lines().count().max(1), "no STATES section")),
    }
}

pub fn render_model(m: &FiniteModel) -> String {
    let mut out = String::from("STATES\n");
    out.push_str(&m.state_names().join(" "));
    out.push_str("\nTRANS\n");
    for (modality, rel) in &m.trans {
        for (s, succ) in rel.iter().enumerate() {
            for &t in succ {
                out.push_str(&format!("{} {} : {} -> {}\n", modality.msg, modality.agent, m.states[s], m.states[t]));
            }
        }
    }
    out.push_str("BASES\n");
    let mut bases: Vec<(&(AgentName, usize), &DataBase)> = m.nonempty_bases().collect();
    bases.sort_by(|x, y| x.0.cmp(y.0));
    for ((agent, s), base) in bases {
        let items: Vec<String> = base.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{agent} @ {} : {}\n", m.states[*s], items.join(", ")));
    }
    out.push_str("VAL\n");
    for (p, set) in &m.props {
        let names: Vec<&str> = set.iter().map(|&s| m.states[s].as_str()).collect();
        if names.is_empty() {
            out.push_str(&format!("{p} :\n"));
        } else {
            out.push_str(&format!("{p} : {}\n", names.join(" ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "STATES\ns0 s1\nTRANS\nm a : s0 -> s1\nm a : s1 -> s1\n(m, n) b : s0 -> s0\n(m, n) b : s1 -> s1\nBASES\na @ s1 : m\nb @ s0 : (m, n), sig(k, b)\nb @ s1 : (m, n)\nVAL\nP : s1\nQ :\n";

    #[test]
    fn round_trip_is_bit_exact() {
        let m = parse_model(SAMPLE).unwrap();
        let text = render_model(&m);
        assert_eq!(parse_model(&text).unwrap(), m);
        assert_eq!(render_model(&parse_model(&text).unwrap()), text);
    }

    #[test]
    fn parsed_content() {
        let m = parse_model(SAMPLE).unwrap();
        assert_eq!(m.len(), 2);
        let b = AgentName::new("b").unwrap();
        assert_eq!(m.base(&b, 0).len(), 2);
        assert!(m.validate().is_valid(), "{}", m.validate());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_model("STATES\ns0\nTRANS\nm a : s0 -> s9\n").unwrap_err();
        assert!(matches!(e, ModelError::Parse { line: 4, .. }), "{e}");
        assert!(parse_model("TRANS\n").is_err());
        assert!(parse_model("STATES\ns0 s0\n").is_err());
    }
}
