//! S-expression reader with source positions.

use num_bigint::BigInt;

use super::ParseError;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Symbol(String),
    /// A `|...|` symbol. Never treated as a builtin.
    Quoted(String),
    Keyword(String),
    Numeral(BigInt),
    Decimal(Rat),
    Str(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SexpKind {
    Atom(Atom),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub line: usize,
    pub column: usize,
}

impl Sexp {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: self.column, message: message.into() }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            SexpKind::Atom(_) => None,
        }
    }

    /// Unquoted symbol text.
    pub fn as_symbol(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(Atom::Symbol(s)) => Some(s),
            _ => None,
        }
    }

    /// Symbol text, quoted or not.
    pub fn as_name(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(Atom::Symbol(s)) | SexpKind::Atom(Atom::Quoted(s)) => Some(s),
            _ => None,
        }
    }

    pub fn as_keyword(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(Atom::Keyword(s)) => Some(s),
            _ => None,
        }
    }

    pub fn is_symbol(&self, s: &str) -> bool {
        self.as_symbol() == Some(s)
    }

    pub fn expect_list(&self, what: &str) -> Result<&[Sexp], ParseError> {
        self.as_list().ok_or_else(|| self.error(format!("expected {what}")))
    }

    pub fn expect_name(&self, what: &str) -> Result<&str, ParseError> {
        self.as_name().ok_or_else(|| self.error(format!("expected {what}")))
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

fn is_symbol_char(c: char) -> bool {
    c.is_alphanumeric() || "~!@$%^&*_-+=<>.?/'".contains(c)
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line, column, message: message.into() }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn read_atom(&mut self, line: usize, column: usize) -> Result<Atom, ParseError> {
        let c = self.peek().unwrap();
        if c == '|' {
            self.bump();
            let text = self.take_while(|c| c != '|' && c != '\\');
            if self.bump() != Some('|') {
                return Err(self.err(line, column, "unterminated quoted symbol"));
            }
            return Ok(Atom::Quoted(text.to_string()));
        }
        if c == '"' {
            self.bump();
            let mut s = String::new();
            loop {
                match self.bump() {
                    None => return Err(self.err(line, column, "unterminated string literal")),
                    Some('"') if self.peek() == Some('"') => {
                        self.bump();
                        s.push('"');
                    }
                    Some('"') => return Ok(Atom::Str(s)),
                    Some(c) => s.push(c),
                }
            }
        }
        if c == ':' {
            self.bump();
            let name = self.take_while(is_symbol_char);
            if name.is_empty() {
                return Err(self.err(line, column, "empty keyword"));
            }
            return Ok(Atom::Keyword(name.to_string()));
        }
        let text = self.take_while(is_symbol_char);
        if text.is_empty() {
            return Err(self.err(line, column, format!("unexpected character `{c}`")));
        }
        if text.starts_with(|c: char| c.is_ascii_digit()) {
            return parse_number(text).ok_or_else(|| self.err(line, column, format!("malformed number `{text}`")));
        }
        Ok(Atom::Symbol(text.to_string()))
    }

    fn read(&mut self) -> Result<Option<Sexp>, ParseError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        match self.peek() {
            None => Ok(None),
            Some(')') => Err(self.err(line, column, "unbalanced `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.peek() {
                        None => return Err(self.err(line, column, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            break;
                        }
                        Some(_) => items.push(self.read()?.expect("input is not exhausted")),
                    }
                }
                Ok(Some(Sexp { kind: SexpKind::List(items), line, column }))
            }
            Some(_) => {
                let atom = self.read_atom(line, column)?;
                Ok(Some(Sexp { kind: SexpKind::Atom(atom), line, column }))
            }
        }
    }
}

fn parse_number(text: &str) -> Option<Atom> {
    if let Some((int, frac)) = text.split_once('.') {
        if int.is_empty() || frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
            return None;
        }
        let numer: BigInt = format!("{int}{frac}").parse().ok()?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        return Rat::new(numer, denom).ok().map(Atom::Decimal);
    }
    if text.chars().all(|c| c.is_ascii_digit()) {
        return text.parse().ok().map(Atom::Numeral);
    }
    None
}

/// Reads every top-level S-expression in `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut reader = Reader { src, pos: 0, line: 1, column: 1 };
    let mut out = Vec::new();
    while let Some(s) = reader.read()? {
        out.push(s);
    }
    Ok(out)
}
