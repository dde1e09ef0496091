//! Scripted pure strategies.
//!
//! One rule per line, numbers are labels in the instance's base:
//!
//! ```text
//! boy 4: propose 1
//! boy 9: if step = 0 propose 1
//! boy 9: if was_proposed(1, 3) propose 10 else propose 9
//! ```
//!
//! At each step an uncoupled boy takes the first rule that names a girl he
//! has not proposed to yet; when none does he continues naively down his own
//! list.

use super::play::ConcurrentPlay;
use super::sim::GameState;
use super::DynamicError;
use crate::model::{BoyId, GirlId, Instance, ParseError};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Always,
    /// Number of completed steps equals `k`.
    StepIs(usize),
    Holds(BoyId, GirlId),
    WasProposed(BoyId, GirlId),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl Predicate {
    pub fn eval(&self, state: &GameState) -> bool {
        match self {
            Predicate::Always => true,
            Predicate::StepIs(k) => state.step() == *k,
            Predicate::Holds(b, g) => state.holder[g.0] == Some(*b),
            Predicate::WasProposed(b, g) => state.proposed[b.0][g.0],
            Predicate::Not(p) => !p.eval(state),
            Predicate::And(a, b) => a.eval(state) && b.eval(state),
            Predicate::Or(a, b) => a.eval(state) || b.eval(state),
        }
    }

    fn render(&self, base: usize, out: &mut String) {
        let _ = match self {
            Predicate::Always => write!(out, "always"),
            Predicate::StepIs(k) => write!(out, "step = {k}"),
            Predicate::Holds(b, g) => write!(out, "holds({}, {})", b.0 + base, g.0 + base),
            Predicate::WasProposed(b, g) => write!(out, "was_proposed({}, {})", b.0 + base, g.0 + base),
            Predicate::Not(p) => {
                out.push_str("not (");
                p.render(base, out);
                write!(out, ")")
            }
            Predicate::And(a, b) | Predicate::Or(a, b) => {
                let op = if matches!(self, Predicate::And(..)) { "and" } else { "or" };
                out.push('(');
                a.render(base, out);
                let _ = write!(out, " {op} ");
                b.render(base, out);
                write!(out, ")")
            }
        };
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub when: Predicate,
    pub then: GirlId,
    pub otherwise: Option<GirlId>,
}

impl Rule {
    pub fn always(g: GirlId) -> Self {
        Rule { when: Predicate::Always, then: g, otherwise: None }
    }

    pub fn choose(&self, state: &GameState) -> Option<GirlId> {
        if self.when.eval(state) {
            Some(self.then)
        } else {
            self.otherwise
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScriptedStrategy {
    pub rules: Vec<Rule>,
}

impl ScriptedStrategy {
    /// The scripted choice, if any rule names a girl still open to `boy`.
    pub fn scripted(&self, boy: BoyId, state: &GameState) -> Option<GirlId> {
        self.rules.iter().filter_map(|r| r.choose(state)).find(|g| !state.proposed[boy.0][g.0])
    }
}

/// Scripts for some boys; the rest play naively.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrategySet {
    pub scripts: BTreeMap<BoyId, ScriptedStrategy>,
}

impl StrategySet {
    pub fn naive() -> Self {
        StrategySet::default()
    }

    pub fn push(&mut self, boy: BoyId, rule: Rule) {
        self.scripts.entry(boy).or_default().rules.push(rule);
    }

    pub fn get(&self, boy: BoyId) -> Option<&ScriptedStrategy> {
        self.scripts.get(&boy)
    }

    /// Script text that parses back to `self`.
    pub fn render(&self, base: usize) -> String {
        let mut out = String::new();
        for (b, s) in &self.scripts {
            for r in &s.rules {
                let _ = write!(out, "boy {}: ", b.0 + base);
                if r.when != Predicate::Always || r.otherwise.is_some() {
                    out.push_str("if ");
                    r.when.render(base, &mut out);
                    out.push(' ');
                }
                let _ = write!(out, "propose {}", r.then.0 + base);
                if let Some(g) = r.otherwise {
                    let _ = write!(out, " else propose {}", g.0 + base);
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    Sym(char),
}

fn tokenize(line: usize, text: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut v = 0usize;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                v = v * 10 + d as usize;
                chars.next();
            }
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut w = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                w.push(c);
                chars.next();
            }
            out.push(Tok::Word(w.to_ascii_lowercase()));
        } else if "(),=!&|".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(ParseError::new(line, format!("unexpected `{c}`")));
        }
    }
    Ok(out)
}

struct RuleParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
    inst: &'a Instance,
}

impl RuleParser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(x)) if x == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(&Tok::Num(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn index(&mut self, what: &str) -> Result<usize, ParseError> {
        let v = self.number()?;
        v.checked_sub(self.inst.base())
            .filter(|&i| i < self.inst.n())
            .ok_or_else(|| self.err(format!("{what} {v} is out of range")))
    }

    fn girl(&mut self) -> Result<GirlId, ParseError> {
        self.index("girl").map(GirlId)
    }

    fn pair(&mut self) -> Result<(BoyId, GirlId), ParseError> {
        self.expect_sym('(')?;
        let b = BoyId(self.index("boy")?);
        self.expect_sym(',')?;
        let g = self.girl()?;
        self.expect_sym(')')?;
        Ok((b, g))
    }

    fn or_expr(&mut self) -> Result<Predicate, ParseError> {
        let mut left = self.and_expr()?;
        while self.eat_word("or") {
            left = Predicate::Or(Box::new(left), Box::new(self.and_expr()?));
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Predicate, ParseError> {
        let mut left = self.unary()?;
        while self.eat_word("and") {
            left = Predicate::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate, ParseError> {
        if self.eat_word("not") {
            return Ok(Predicate::Not(Box::new(self.unary()?)));
        }
        if matches!(self.peek(), Some(Tok::Sym('('))) {
            self.pos += 1;
            let p = self.or_expr()?;
            self.expect_sym(')')?;
            return Ok(p);
        }
        if self.eat_word("always") {
            return Ok(Predicate::Always);
        }
        if self.eat_word("step") {
            self.expect_sym('=')?;
            return Ok(Predicate::StepIs(self.number()?));
        }
        if self.eat_word("holds") {
            let (b, g) = self.pair()?;
            return Ok(Predicate::Holds(b, g));
        }
        if self.eat_word("was_proposed") {
            let (b, g) = self.pair()?;
            return Ok(Predicate::WasProposed(b, g));
        }
        Err(self.err("expected a predicate"))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let when = if self.eat_word("if") { self.or_expr()? } else { Predicate::Always };
        if !self.eat_word("propose") {
            return Err(self.err("expected `propose`"));
        }
        let then = self.girl()?;
        let otherwise = if self.eat_word("else") {
            if !self.eat_word("propose") {
                return Err(self.err("expected `propose` after `else`"));
            }
            Some(self.girl()?)
        } else {
            None
        };
        if self.pos != self.toks.len() {
            return Err(self.err("trailing tokens"));
        }
        Ok(Rule { when, then, otherwise })
    }
}

/// Parses a strategy script for `inst`.
pub fn parse_strategies(text: &str, inst: &Instance) -> Result<StrategySet, ParseError> {
    let mut set = StrategySet::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, body) = content.split_once(':').ok_or_else(|| ParseError::new(line, "expected `boy N: rule`"))?;
        let mut parser = RuleParser { toks: tokenize(line, head)?, pos: 0, line, inst };
        if !parser.eat_word("boy") {
            return Err(ParseError::new(line, "expected `boy N: rule`"));
        }
        let boy = BoyId(parser.index("boy")?);
        let mut parser = RuleParser { toks: tokenize(line, body)?, pos: 0, line, inst };
        set.push(boy, parser.rule()?);
    }
    Ok(set)
}

/// Scripts that make every boy repeat his proposals from `play` at the same
/// time indices.
pub fn strategies_from_play(play: &ConcurrentPlay) -> Result<StrategySet, DynamicError> {
    let mut set = StrategySet::default();
    let mut seen: BTreeMap<(BoyId, usize), GirlId> = BTreeMap::new();
    for (t, b, g) in play.proposals() {
        if seen.insert((b, t), g).is_some() {
            return Err(DynamicError::Implausible(1));
        }
        set.push(b, Rule { when: Predicate::StepIs(t), then: g, otherwise: None });
    }
    Ok(set)
}
