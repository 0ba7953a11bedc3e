use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{ParseError, ParseErrorKind};

/// Hennessy–Milner formulas over named actions.
///
/// Values built through [`Formula::and`] are canonical: conjunctions are
/// flattened, `T` conjuncts are dropped and the rest sorted and deduplicated.
/// Double negations are kept. Diamond actions are plain strings so formulas
/// over product labels such as `a@b` need no separate type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Neg(Box<Formula>),
    And(Vec<Formula>),
    Diamond(String, Box<Formula>),
}

impl Formula {
    pub fn top() -> Self {
        Formula::Top
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn diamond(action: impl Into<String>, body: Formula) -> Self {
        Formula::Diamond(action.into(), Box::new(body))
    }

    /// Canonical conjunction; the empty conjunction is `T`.
    pub fn and<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::Top => {}
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 => Formula::Top,
            1 => flat.pop().unwrap(),
            _ => Formula::And(flat),
        }
    }

    /// Modal depth: nesting of diamonds.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Top => 0,
            Formula::Neg(f) => f.depth(),
            Formula::And(fs) => fs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Diamond(_, f) => 1 + f.depth(),
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top => 1,
            Formula::Neg(f) | Formula::Diamond(_, f) => 1 + f.size(),
            Formula::And(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
        }
    }

    /// Total number of conjuncts over all conjunction nodes.
    pub fn conjunct_count(&self) -> usize {
        match self {
            Formula::Top => 0,
            Formula::Neg(f) | Formula::Diamond(_, f) => f.conjunct_count(),
            Formula::And(fs) => fs.len() + fs.iter().map(Formula::conjunct_count).sum::<usize>(),
        }
    }

    /// Diamond actions in pre-order.
    pub fn actions(&self) -> Vec<&str> {
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::Top => {}
                Formula::Neg(g) => go(g, out),
                Formula::And(gs) => gs.iter().for_each(|g| go(g, out)),
                Formula::Diamond(a, g) => {
                    out.push(a);
                    go(g, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Top => true,
            Formula::Neg(_) => false,
            Formula::And(fs) => fs.iter().all(Formula::is_positive),
            Formula::Diamond(_, f) => f.is_positive(),
        }
    }

    pub fn negation_count(&self) -> usize {
        match self {
            Formula::Top => 0,
            Formula::Neg(f) => 1 + f.negation_count(),
            Formula::Diamond(_, f) => f.negation_count(),
            Formula::And(fs) => fs.iter().map(Formula::negation_count).sum(),
        }
    }

    /// Ordering used to pick among equally valid witnesses: depth, then
    /// conjunct count, then the pre-order action sequence, then the text.
    pub(crate) fn witness_key(&self) -> (usize, usize, Vec<&str>, String) {
        (self.depth(), self.conjunct_count(), self.actions(), self.to_string())
    }

    fn fmt_unary(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::And(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("T"),
            Formula::Neg(g) => {
                f.write_str("!")?;
                g.fmt_unary(f)
            }
            Formula::Diamond(a, g) => {
                write!(f, "<{a}>")?;
                g.fmt_unary(f)
            }
            Formula::And(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("&")?;
                    }
                    g.fmt_unary(f)?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct FormulaParser {
    chars: Vec<char>,
    pos: usize,
}

impl FormulaParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        // formulas are single-line; columns are 1-based
        ParseError::new(kind, 1, self.pos + 1, msg)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some('&') {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::and(parts) })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('T') => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some('!') => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some('<') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos] != '>' {
                    self.pos += 1;
                }
                if self.pos == self.chars.len() {
                    return Err(self.err(ParseErrorKind::Syntax, "unclosed `<`"));
                }
                let action: String = self.chars[start..self.pos].iter().collect::<String>().trim().to_string();
                if action.is_empty() {
                    return Err(self.err(ParseErrorKind::Syntax, "empty action in diamond"));
                }
                self.pos += 1;
                Ok(Formula::diamond(action, self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.conj()?;
                if self.peek() != Some(')') {
                    return Err(self.err(ParseErrorKind::Syntax, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.err(ParseErrorKind::Lexical, format!("unexpected character `{c}`"))),
            None => Err(self.err(ParseErrorKind::Syntax, "unexpected end of formula")),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    /// Grammar: `T`, `!f`, `f&g` (left-associative), `<a>f`, `(f)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = FormulaParser { chars: s.chars().collect(), pos: 0 };
        let f = p.conj()?;
        if let Some(c) = p.peek() {
            return Err(p.err(ParseErrorKind::Syntax, format!("unexpected `{c}` after formula")));
        }
        Ok(f)
    }
}

/// A formula without negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PositiveFormula(Formula);

impl PositiveFormula {
    /// `None` if the formula contains a negation.
    pub fn new(f: Formula) -> Option<Self> {
        f.is_positive().then_some(PositiveFormula(f))
    }

    pub(crate) fn new_unchecked(f: Formula) -> Self {
        debug_assert!(f.is_positive());
        PositiveFormula(f)
    }

    pub fn into_inner(self) -> Formula {
        self.0
    }
}

impl Deref for PositiveFormula {
    type Target = Formula;

    fn deref(&self) -> &Formula {
        &self.0
    }
}

impl fmt::Display for PositiveFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
