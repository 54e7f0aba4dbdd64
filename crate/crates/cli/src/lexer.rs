//! Tokens of the command language.

use num_bigint::BigInt;

use crate::error::CliError;

/// Command names written with inner hyphens, joined into one word.
pub const HYPHENATED: &[&str] = &[
    "char-eval",
    "induce-f",
    "induce-t",
    "probe-const",
    "probe-action",
    "rep-scalar",
    "is-constant",
    "is-rotation",
    "conj-char",
    "rho0-orbit",
    "from-partitions",
    "matrix-coeff",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// `n/m` written without spaces.
    Rat(BigInt, BigInt),
    Float(f64),
    /// `--name`
    Flag(String),
    Str(String),
    Punct(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Whether whitespace separates this token from the previous one.
    pub spaced: bool,
}

const PUNCT: &[&str] = &[
    "=>", "(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "*", "^", "+", "-", "/", "|", ".",
];

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            s.push(c);
            self.bump();
        }
        s
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Tok, CliError> {
        let int_part = self.digits();
        let is_frac = self.peek(0) == Some('.') && self.peek(1).is_some_and(|c| c.is_ascii_digit());
        let is_exp = matches!(self.peek(0), Some('e' | 'E'))
            && (self.peek(1).is_some_and(|c| c.is_ascii_digit())
                || (matches!(self.peek(1), Some('+' | '-')) && self.peek(2).is_some_and(|c| c.is_ascii_digit())));
        if is_frac || is_exp {
            let mut text = int_part;
            if is_frac {
                self.bump();
                text.push('.');
                text.push_str(&self.digits());
            }
            if matches!(self.peek(0), Some('e' | 'E'))
                && (self.peek(1).is_some_and(|c| c.is_ascii_digit())
                    || (matches!(self.peek(1), Some('+' | '-')) && self.peek(2).is_some_and(|c| c.is_ascii_digit())))
            {
                text.push('e');
                self.bump();
                if let Some(sign @ ('+' | '-')) = self.peek(0) {
                    text.push(sign);
                    self.bump();
                }
                text.push_str(&self.digits());
            }
            let v: f64 = text
                .parse()
                .map_err(|_| self.err(line, col, format!("bad float `{text}`")))?;
            if !v.is_finite() {
                return Err(self.err(line, col, format!("float `{text}` is out of range")));
            }
            return Ok(Tok::Float(v));
        }
        if self.peek(0) == Some('/') && self.peek(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            let den = self.digits();
            let den: BigInt = den.parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(self.err(line, col, "zero denominator"));
            }
            return Ok(Tok::Rat(int_part.parse().expect("digits"), den));
        }
        Ok(Tok::Int(int_part.parse().expect("digits")))
    }

    fn string(&mut self, line: usize, col: usize) -> Result<Tok, CliError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err(line, col, "unterminated string")),
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some(c @ ('"' | '\\')) => s.push(c),
                    _ => return Err(self.err(line, col, "bad escape in string")),
                },
                Some(c) => s.push(c),
            }
        }
    }
}

/// Splits one line (or a whole script) into tokens; `#` starts a comment.
pub fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let mut lx = Lexer {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out: Vec<Token> = Vec::new();
    let mut spaced = true;
    while let Some(c) = lx.peek(0) {
        if c.is_whitespace() {
            lx.bump();
            spaced = true;
            continue;
        }
        if c == '#' {
            while lx.peek(0).is_some_and(|c| c != '\n') {
                lx.bump();
            }
            continue;
        }
        let (line, col) = (lx.line, lx.col);
        let tok = if c.is_ascii_digit() {
            lx.number(line, col)?
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = lx.ident();
            // join `probe-const` style names, but leave `a-b` alone
            while lx.peek(0) == Some('-') && lx.peek(1).is_some_and(|c| c.is_ascii_alphabetic()) {
                let save = (lx.pos, lx.line, lx.col);
                lx.bump();
                let joined = format!("{word}-{}", lx.ident());
                if HYPHENATED.contains(&joined.as_str()) {
                    word = joined;
                } else {
                    (lx.pos, lx.line, lx.col) = save;
                    break;
                }
            }
            Tok::Ident(word)
        } else if c == '"' {
            lx.string(line, col)?
        } else if c == '-' && lx.peek(1) == Some('-') && lx.peek(2).is_some_and(|c| c.is_ascii_alphabetic()) {
            lx.bump();
            lx.bump();
            let mut name = lx.ident();
            while lx.peek(0) == Some('-') && lx.peek(1).is_some_and(|c| c.is_ascii_alphabetic()) {
                lx.bump();
                name.push('-');
                name.push_str(&lx.ident());
            }
            Tok::Flag(name)
        } else {
            let rest: String = lx.chars[lx.pos..].iter().take(2).collect();
            let p = PUNCT
                .iter()
                .find(|p| rest.starts_with(**p))
                .ok_or_else(|| lx.err(line, col, format!("unexpected character `{c}`")))?;
            for _ in 0..p.len() {
                lx.bump();
            }
            Tok::Punct(p)
        };
        out.push(Token { tok, line, col, spaced });
        spaced = false;
    }
    Ok(out)
}
