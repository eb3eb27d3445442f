use super::{Formula, MessageTerm};

pub fn render_message(m: &MessageTerm) -> String {
    let mut out = String::new();
    write_message(m, &mut out);
    out
}

fn write_message(m: &MessageTerm, out: &mut String) {
    match m {
        MessageTerm::Atom(a) => out.push_str(a.as_str()),
        MessageTerm::Pair(l, r) => {
            out.push('(');
            write_message(l, out);
            out.push_str(", ");
            write_message(r, out);
            out.push(')');
        }
        MessageTerm::Sig(body, signer) => {
            out.push_str("sig(");
            write_message(body, out);
            out.push_str(", ");
            out.push_str(signer.as_str());
            out.push(')');
        }
    }
}

/// Prints a core formula. Macros are not re-folded, so `P -> Q` comes
/// back as `~(~~P & ~Q)`.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Prop(p) => out.push_str(p.as_str()),
        Formula::Knows(a, m) => {
            out.push_str(a.as_str());
            out.push_str(" knows ");
            write_message(m, out);
        }
        Formula::Not(x) => {
            out.push('~');
            write_operand(x, out);
        }
        Formula::And(l, r) => {
            write_formula(l, out);
            out.push_str(" & ");
            if matches!(**r, Formula::And(..)) {
                out.push('(');
                write_formula(r, out);
                out.push(')');
            } else {
                write_formula(r, out);
            }
        }
        Formula::Proves(m, a, body) => {
            out.push('[');
            write_message(m, out);
            out.push(']');
            out.push_str(a.as_str());
            out.push(' ');
            write_operand(body, out);
        }
    }
}

// Operand of a prefix operator.
fn write_operand(f: &Formula, out: &mut String) {
    if matches!(f, Formula::And(..) | Formula::Knows(..)) {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;
    use crate::syntax::{parse_formula, Universe};

    #[test]
    fn prints_core_connectives() {
        assert_eq!(render(&proves(atom("m"), "a", prop("P"))), "[m]a P");
        assert_eq!(render(&knows("a", pair(atom("m"), atom("n")))), "a knows (m, n)");
        assert_eq!(render(&prop("P").and(prop("Q")).not()), "~(P & Q)");
        assert_eq!(render(&prop("P").implies(prop("Q"))), "~(~~P & ~Q)");
    }

    #[test]
    fn right_nested_conjunction_keeps_parentheses() {
        let f = prop("P").and(prop("Q").and(prop("R")));
        assert_eq!(render(&f), "P & (Q & R)");
        assert_eq!(parse_formula(&render(&f), &Universe::default()).unwrap(), f);
    }
}
