use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Unsigned rational literal: `3`, `1/2`, `2.5`.
    Num(BigRational),
    /// Rational literal immediately followed by `i`: `3i`, `1/2i`.
    Imag(BigRational),
    Str(String),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

const PUNCT: &str = ";:,(){}[]+-*^=";

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let (tl, tc) = (line, col);
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                bump!();
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                column: tc,
            });
        } else if c.is_ascii_digit() {
            let digits = |i: &mut usize, col: &mut usize| {
                let mut s = String::new();
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    s.push(chars[*i]);
                    *i += 1;
                    *col += 1;
                }
                s
            };
            let whole = digits(&mut i, &mut col);
            let mut value = BigRational::from_integer(whole.parse::<BigInt>().expect("digits"));
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                col += 1;
                let frac = digits(&mut i, &mut col);
                let scale = BigInt::from(10u32).pow(frac.len() as u32);
                value += BigRational::new(frac.parse::<BigInt>().expect("digits"), scale);
            } else if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                col += 1;
                let den = digits(&mut i, &mut col).parse::<BigInt>().expect("digits");
                if den.is_zero() {
                    return Err(syntax(tl, tc, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
            }
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars
                    .get(i + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_');
            let tok = if imaginary {
                i += 1;
                col += 1;
                Tok::Imag(value)
            } else {
                Tok::Num(value)
            };
            out.push(Token {
                tok,
                line: tl,
                column: tc,
            });
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            while i < chars.len() && chars[i] != '"' {
                s.push(chars[i]);
                bump!();
            }
            if i == chars.len() {
                return Err(syntax(tl, tc, "unterminated string"));
            }
            bump!();
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                column: tc,
            });
        } else if PUNCT.contains(c) || c == '×' {
            bump!();
            out.push(Token {
                tok: Tok::Punct(if c == '×' { 'x' } else { c }),
                line: tl,
                column: tc,
            });
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    /// Over an already tokenized slice; the last token must be `Eof`.
    pub fn from_tokens(toks: Vec<Token>) -> Self {
        debug_assert!(matches!(toks.last().map(|t| &t.tok), Some(Tok::Eof)));
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, message)
    }

    pub fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `{c}`, found {}",
                describe(&self.peek().tok)
            )))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `{kw}`, found {}",
                describe(&self.peek().tok)
            )))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            t => Err(self.error(format!("expected identifier, found {}", describe(t)))),
        }
    }

    pub fn expect_nat(&mut self) -> Result<u32> {
        match &self.peek().tok {
            Tok::Num(q) if q.is_integer() => {
                let v = q
                    .to_integer()
                    .to_string()
                    .parse::<u32>()
                    .map_err(|_| self.error("natural number too large"))?;
                self.next();
                Ok(v)
            }
            t => Err(self.error(format!("expected natural number, found {}", describe(t)))),
        }
    }

    pub fn expect_eof(&mut self) -> Result<()> {
        match &self.peek().tok {
            Tok::Eof => Ok(()),
            t => Err(self.error(format!("unexpected {} after end of input", describe(t)))),
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }
}

pub fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(q) => format!("number `{q}`"),
        Tok::Imag(q) => format!("imaginary `{q}i`"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}
