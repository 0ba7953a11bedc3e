use std::collections::HashMap;

use super::{DefinitionSet, ProcessTerm};
use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Def,
    Action(String),
    Name(String),
    Zero,
    Dot,
    Plus,
    Amp,
    LParen,
    RParen,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Def => "`def`".into(),
            Tok::Action(a) => format!("action `{a}`"),
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Zero => "`0`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Amp => "`&`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let single = match c {
            '0' => Some(Tok::Zero),
            '.' => Some(Tok::Dot),
            '+' => Some(Tok::Plus),
            '&' => Some(Tok::Amp),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            if tok == Tok::Zero && chars.peek().is_some_and(|&c| is_ident_char(c)) {
                return Err(ParseError::new(
                    ParseErrorKind::Lexical,
                    tl,
                    tc,
                    "identifiers must not start with a digit",
                ));
            }
            toks.push(Spanned { tok, line: tl, col: tc });
            continue;
        }
        if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                word.push(c);
                chars.next();
                col += 1;
            }
            let tok = if word == "def" {
                Tok::Def
            } else if c.is_ascii_lowercase() {
                if word.chars().any(|c| c.is_ascii_uppercase()) {
                    return Err(ParseError::new(
                        ParseErrorKind::Lexical,
                        tl,
                        tc,
                        format!("action `{word}` may only contain lowercase letters, digits and `_`"),
                    ));
                }
                Tok::Action(word)
            } else {
                Tok::Name(word)
            };
            toks.push(Spanned { tok, line: tl, col: tc });
            continue;
        }
        return Err(ParseError::new(ParseErrorKind::Lexical, tl, tc, format!("unexpected character `{c}`")));
    }
    toks.push(Spanned { tok: Tok::Eof, line, col });
    Ok(toks)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    // first occurrence of each referenced name
    refs: Vec<(String, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(ParseErrorKind::Syntax, t.line, t.col, msg)
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, ParseError> {
        if self.peek().tok == want {
            Ok(self.bump())
        } else {
            Err(self.error(format!("expected {}, found {}", want.describe(), self.peek().tok.describe())))
        }
    }

    fn term(&mut self) -> Result<ProcessTerm, ParseError> {
        let first = self.join()?;
        if self.peek().tok == Tok::Plus {
            self.bump();
            let rest = self.term()?;
            Ok(ProcessTerm::sum(first, rest))
        } else {
            Ok(first)
        }
    }

    fn join(&mut self) -> Result<ProcessTerm, ParseError> {
        let first = self.prefix()?;
        if self.peek().tok == Tok::Amp {
            self.bump();
            let rest = self.join()?;
            Ok(ProcessTerm::join(first, rest))
        } else {
            Ok(first)
        }
    }

    fn prefix(&mut self) -> Result<ProcessTerm, ParseError> {
        if let Tok::Action(a) = &self.peek().tok {
            let a = a.clone();
            self.bump();
            if self.peek().tok == Tok::Dot {
                self.bump();
                let body = self.prefix()?;
                return Ok(ProcessTerm::prefix(a, body));
            }
            return Ok(ProcessTerm::action(a));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ProcessTerm, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Zero => {
                self.bump();
                Ok(ProcessTerm::Nil)
            }
            Tok::Name(n) => {
                self.bump();
                if !self.refs.iter().any(|(m, ..)| *m == n) {
                    self.refs.push((n.clone(), t.line, t.col));
                }
                Ok(ProcessTerm::Ref(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(self.error(format!("expected a process term, found {}", other.describe()))),
        }
    }
}

/// Parses a process-language source into its definitions and optional root term.
pub fn parse(text: &str) -> Result<(DefinitionSet, Option<ProcessTerm>), ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, refs: Vec::new() };
    let mut defs = DefinitionSet::new();
    let mut def_pos: HashMap<String, (usize, usize)> = HashMap::new();
    while p.peek().tok == Tok::Def {
        p.bump();
        let name_tok = p.bump();
        let Tok::Name(name) = name_tok.tok else {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                name_tok.line,
                name_tok.col,
                format!("expected a capitalised definition name, found {}", name_tok.tok.describe()),
            ));
        };
        p.expect(Tok::Eq)?;
        let body = p.term()?;
        p.expect(Tok::Semi)?;
        if defs.insert(name.clone(), body).is_some() {
            return Err(ParseError::new(
                ParseErrorKind::Syntax,
                name_tok.line,
                name_tok.col,
                format!("`{name}` is defined twice"),
            ));
        }
        def_pos.insert(name, (name_tok.line, name_tok.col));
    }
    let root = if p.peek().tok == Tok::Eof { None } else { Some(p.term()?) };
    if p.peek().tok != Tok::Eof {
        return Err(p.error(format!("unexpected {} after term", p.peek().tok.describe())));
    }
    for (name, line, col) in &p.refs {
        if !defs.contains(name) {
            return Err(ParseError::new(ParseErrorKind::UnboundName, *line, *col, format!("`{name}` is not defined")));
        }
    }
    if let Some(name) = defs.find_unguarded_cycle() {
        let (line, col) = def_pos[&name];
        return Err(ParseError::new(
            ParseErrorKind::UnguardedRecursion,
            line,
            col,
            format!("`{name}` recurses without passing an action prefix"),
        ));
    }
    Ok((defs, root))
}

/// Like [`parse`], but a root term is mandatory.
pub fn parse_term(text: &str) -> Result<(DefinitionSet, ProcessTerm), ParseError> {
    let (defs, root) = parse(text)?;
    match root {
        Some(t) => Ok((defs, t)),
        None => {
            let lines = text.lines().count().max(1);
            let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
            Err(ParseError::new(ParseErrorKind::Syntax, lines, col, "expected a process term"))
        }
    }
}
