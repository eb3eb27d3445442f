//! Recursive descent parser.
//!
//! Precedence, loosest first: `<->` (left), `->` (right), `|` (left),
//! `&` (left), then the prefix operators `~` and `[M]a`.

use std::collections::HashMap;

use super::lexer::{tokenize, Spanned, SyntaxError, Tok};
use super::schema::{AgentPat, MessagePat, Pattern, Schema};
use super::{AgentName, Formula, MessageTerm, PropName, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    Formula,
    Message,
    Agent,
}

impl Sort {
    fn name(self) -> &'static str {
        match self {
            Sort::Formula => "formula",
            Sort::Message => "message",
            Sort::Agent => "agent",
        }
    }
}

pub(crate) struct Parser<'u> {
    toks: Vec<Spanned>,
    pos: usize,
    universe: Option<&'u Universe>,
    allow_meta: bool,
    sorts: HashMap<String, Sort>,
}

impl<'u> Parser<'u> {
    pub(crate) fn new(text: &str, universe: Option<&'u Universe>) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0, universe, allow_meta: false, sorts: HashMap::new() })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn column(&self) -> usize {
        self.toks[self.pos].column
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Unexpected {
            column: self.column(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok, expected: &str) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(expected)
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    pub(crate) fn lower(&mut self, expected: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(expected),
        }
    }

    fn meta(&mut self, name: String, sort: Sort) -> Result<String, SyntaxError> {
        let column = self.column();
        if !self.allow_meta {
            return Err(SyntaxError::Metavariable {
                name,
                column,
                message: "is only allowed in schemas".into(),
            });
        }
        match self.sorts.get(&name) {
            Some(s) if *s != sort => Err(SyntaxError::Metavariable {
                name,
                column,
                message: format!("used as a {} but earlier as a {}", sort.name(), s.name()),
            }),
            _ => {
                self.sorts.insert(name.clone(), sort);
                self.bump();
                Ok(name)
            }
        }
    }

    pub(crate) fn agent(&mut self) -> Result<AgentName, SyntaxError> {
        let column = self.column();
        let name = self.lower("an agent name")?;
        let agent = AgentName::new(&name)?;
        if let Some(u) = self.universe {
            if !u.contains(&agent) {
                return Err(SyntaxError::UnknownAgent { name, column });
            }
        }
        Ok(agent)
    }

    fn agent_pat(&mut self) -> Result<AgentPat, SyntaxError> {
        if let Tok::Meta(name) = self.peek().clone() {
            return Ok(AgentPat::Var(self.meta(name, Sort::Agent)?));
        }
        Ok(AgentPat::Name(self.agent()?))
    }

    pub(crate) fn message(&mut self) -> Result<MessageTerm, SyntaxError> {
        let pat = self.message_pat()?;
        Ok(pat.instantiate(&Default::default()).expect("closed message pattern"))
    }

    fn message_pat(&mut self) -> Result<MessagePat, SyntaxError> {
        match self.peek().clone() {
            Tok::Meta(name) => Ok(MessagePat::Var(self.meta(name, Sort::Message)?)),
            Tok::Lower(name) => {
                self.bump();
                Ok(MessagePat::Atom(AgentName::new(&name)?))
            }
            Tok::LParen => {
                self.bump();
                let l = self.message_pat()?;
                self.expect(&Tok::Comma, "`,` in a message pair")?;
                let r = self.message_pat()?;
                self.expect(&Tok::RParen, "`)` closing a message pair")?;
                Ok(MessagePat::Pair(Box::new(l), Box::new(r)))
            }
            Tok::Sig => {
                self.bump();
                self.expect(&Tok::LParen, "`(` after `sig`")?;
                let body = self.message_pat()?;
                self.expect(&Tok::Comma, "`,` in a signature")?;
                let signer = self.agent_pat()?;
                self.expect(&Tok::RParen, "`)` closing a signature")?;
                Ok(MessagePat::Sig(Box::new(body), signer))
            }
            _ => self.error("a message term"),
        }
    }

    fn formula(&mut self) -> Result<Pattern, SyntaxError> {
        let mut left = self.implication()?;
        while self.eat(&Tok::DoubleArrow) {
            let right = self.implication()?;
            left = left.iff(right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Pattern, SyntaxError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let right = self.implication()?;
            return Ok(left.implies(right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Pattern, SyntaxError> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            let right = self.conjunction()?;
            left = left.or(right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Pattern, SyntaxError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::Amp) {
            let right = self.unary()?;
            left = left.and(right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Pattern, SyntaxError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::LBracket => {
                self.bump();
                let msg = self.message_pat()?;
                self.expect(&Tok::RBracket, "`]` closing the proof term")?;
                let agent = self.agent_pat()?;
                let body = self.unary()?;
                Ok(Pattern::proves(msg, agent, body))
            }
            _ => self.primary(),
        }
    }

    fn constant_agent(&mut self) -> Result<AgentPat, SyntaxError> {
        if self.eat(&Tok::At) {
            return self.agent_pat();
        }
        match self.universe {
            Some(u) => Ok(AgentPat::Name(u.first().clone())),
            None => self.error("`@agent` (no agent universe to pick a default from)"),
        }
    }

    fn primary(&mut self) -> Result<Pattern, SyntaxError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Pattern::truth(self.constant_agent()?))
            }
            Tok::False => {
                self.bump();
                Ok(Pattern::falsity(self.constant_agent()?))
            }
            Tok::Upper(name) => {
                self.bump();
                Ok(Pattern::Prop(PropName::new(&name)?))
            }
            Tok::Meta(name) => {
                // `$x knows M` puts `$x` in agent position.
                if self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Knows) {
                    let who = self.agent_pat()?;
                    self.bump();
                    let msg = self.message_pat()?;
                    return Ok(Pattern::Knows(who, msg));
                }
                Ok(Pattern::Var(self.meta(name, Sort::Formula)?))
            }
            Tok::Lower(_) => {
                let who = self.agent_pat()?;
                self.expect(&Tok::Knows, "`knows` after an agent name")?;
                let msg = self.message_pat()?;
                Ok(Pattern::Knows(who, msg))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.error("a formula"),
        }
    }
}

/// Parses a formula and expands all surface macros.
pub fn parse_formula(text: &str, universe: &Universe) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, Some(universe))?;
    let pat = p.formula()?;
    p.expect_end()?;
    Ok(pat.to_formula().expect("metavariables are rejected outside schemas"))
}

/// Parses a schema. `$name` introduces a metavariable whose sort is fixed
/// by the position it first appears in.
pub fn parse_schema(name: &str, text: &str, universe: &Universe) -> Result<Schema, SyntaxError> {
    let mut p = Parser::new(text, Some(universe))?;
    p.allow_meta = true;
    let pat = p.formula()?;
    p.expect_end()?;
    Ok(Schema::new(name, pat))
}

/// Parses a message term. With a universe, signers are checked against it.
pub fn parse_message(text: &str, universe: Option<&Universe>) -> Result<MessageTerm, SyntaxError> {
    let mut p = Parser::new(text, universe)?;
    let m = p.message()?;
    p.expect_end()?;
    Ok(m)
}

pub fn parse_agent(text: &str, universe: &Universe) -> Result<AgentName, SyntaxError> {
    let mut p = Parser::new(text, Some(universe))?;
    let a = p.agent()?;
    p.expect_end()?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::build::*;

    fn parse(text: &str) -> Formula {
        parse_formula(text, &Universe::default()).unwrap()
    }

    #[test]
    fn self_knowledge_instance() {
        assert_eq!(parse("[m]a (a knows m)"), proves(atom("m"), "a", knows("a", atom("m"))));
    }

    #[test]
    fn agent_may_touch_an_uppercase_body() {
        assert_eq!(parse("[m]aP"), parse("[m]a P"));
        assert_eq!(parse("([m]aP) | [m]a~P"), parse("([m]a P) | [m]a ~P"));
        assert_eq!(parse("[m]a[m]aP"), parse("[m]a [m]a P"));
    }

    #[test]
    fn implication_expands_to_core() {
        let p = prop("P");
        let expected = p.clone().not().not().and(p.clone().not()).not();
        assert_eq!(parse("P -> P"), expected);
    }

    #[test]
    fn falsity_uses_first_agent() {
        let u = Universe::from_list("a").unwrap();
        let expected = proves(atom("a"), "a", knows("a", atom("a"))).not();
        assert_eq!(parse_formula("false", &u).unwrap(), expected);
        assert_eq!(parse("true@b"), Formula::truth(&agent("b")));
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (prop("P"), prop("Q"), prop("R"));
        assert_eq!(parse("P -> Q -> R"), p.clone().implies(q.clone().implies(r.clone())));
        assert_eq!(parse("P & Q | R"), p.clone().and(q.clone()).or(r.clone()));
        assert_eq!(parse("~P & Q"), p.clone().not().and(q.clone()));
        assert_eq!(parse("[m]a P -> P"), proves(atom("m"), "a", p.clone()).implies(p.clone()));
        assert_eq!(parse("P <-> Q -> R"), p.clone().iff(q.clone().implies(r.clone())));
        assert_eq!(parse("P & Q & R"), p.clone().and(q.clone()).and(r));
    }

    #[test]
    fn structured_messages() {
        assert_eq!(
            parse("a knows sig((m, n), b)"),
            knows("a", sig(pair(atom("m"), atom("n")), "b"))
        );
    }

    #[test]
    fn error_positions() {
        let err = parse_formula("[m]a", &Universe::default()).unwrap_err();
        assert_eq!(err.column(), Some(5));
        let err = parse_formula("P & c knows m", &Universe::default()).unwrap_err();
        assert_eq!(err, SyntaxError::UnknownAgent { name: "c".into(), column: 5 });
        let err = parse_formula("a knows sig(m, z)", &Universe::default()).unwrap_err();
        assert!(matches!(err, SyntaxError::UnknownAgent { column: 16, .. }));
        assert!(parse_formula("P Q", &Universe::default()).is_err());
    }

    #[test]
    fn metavariables_only_in_schemas() {
        assert!(parse_formula("$phi", &Universe::default()).is_err());
        let s = parse_schema("T", "[$M]$a $phi -> ($a knows $M -> $phi)", &Universe::default()).unwrap();
        let f = parse("[m]b P -> (b knows m -> P)");
        assert!(crate::syntax::match_schema(&s, &f).is_some());
        let clash = parse_schema("X", "[$x]a $x", &Universe::default()).unwrap_err();
        assert!(matches!(clash, SyntaxError::Metavariable { .. }));
    }
}
