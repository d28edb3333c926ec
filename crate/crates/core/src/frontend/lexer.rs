//! Tokens shared by all concrete syntaxes. `#` at the start of a token
//! comments out the rest of the line; inside a name it is kept, so
//! generated fresh names survive a print/parse round trip.

use crate::error::{ParseError, SourceSpan};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    Name(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Colon,
    Slash,
    Amp,
    Bar,
    Arrow,
    Iff,
    Minus,
    Tilde,
    Diamond,
    Boxed,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Diamond => "`<>`".into(),
            Tok::Boxed => "`[]`".into(),
        }
    }
}

fn name_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().expect("in bounds");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '#' {
            while i < text.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let rest = &text[i..];
        let (tok, len) = if name_start(c) {
            let len = rest.find(|ch: char| !(name_start(ch) || ch == '#')).unwrap_or(rest.len());
            (Tok::Name(rest[..len].to_string()), len)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("<>") {
            (Tok::Diamond, 2)
        } else if rest.starts_with("[]") {
            (Tok::Boxed, 2)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                '/' => Tok::Slash,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '-' => Tok::Minus,
                '~' => Tok::Tilde,
                _ => {
                    return Err(ParseError::syntax(
                        SourceSpan::new(start, start + c.len_utf8()),
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            (t, 1)
        };
        out.push((tok, SourceSpan::new(start, start + len)));
        i += len;
    }
    Ok(out)
}
