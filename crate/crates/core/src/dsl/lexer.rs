//! Tokenizer. Newlines end statements except inside brackets; `#` starts a
//! comment that runs to the end of the line.

use std::fmt;

use super::{DslError, ErrorKind, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Newline,
    Eof,
    Eq,
    Comma,
    Colon,
    Semi,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Amp,
    Pipe,
    Bang,
    Backslash,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "'{name}'"),
            Tok::Int(n) => return write!(f, "'{n}'"),
            Tok::Newline => "end of line",
            Tok::Eof => "end of input",
            Tok::Eq => "'='",
            Tok::Comma => "','",
            Tok::Colon => "':'",
            Tok::Semi => "';'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::LBracket => "'['",
            Tok::RBracket => "']'",
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::Amp => "'&'",
            Tok::Pipe => "'|'",
            Tok::Bang => "'!'",
            Tok::Backslash => "'\\'",
            Tok::Arrow => "'->'",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let mut depth = 0usize;
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            chars.next();
            column += 1;
        };
        match c {
            '\n' => {
                chars.next();
                if depth == 0
                    && !matches!(
                        out.last(),
                        Some(Token {
                            tok: Tok::Newline,
                            ..
                        }) | None
                    )
                {
                    out.push(Token {
                        tok: Tok::Newline,
                        pos,
                    });
                }
                line += 1;
                column = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                advance(&mut chars);
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            _ => {}
        }
        let tok = if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                text.push(d);
                advance(&mut chars);
            }
            let n = text.parse::<u64>().map_err(|_| {
                DslError::new(
                    ErrorKind::Syntax,
                    pos,
                    format!("integer literal {text} is too large"),
                )
            })?;
            Tok::Int(n)
        } else if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                text.push(d);
                advance(&mut chars);
            }
            Tok::Ident(text)
        } else {
            advance(&mut chars);
            match c {
                '=' => Tok::Eq,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                '(' | '[' | '{' => {
                    depth += 1;
                    match c {
                        '(' => Tok::LParen,
                        '[' => Tok::LBracket,
                        _ => Tok::LBrace,
                    }
                }
                ')' | ']' | '}' => {
                    depth = depth.saturating_sub(1);
                    match c {
                        ')' => Tok::RParen,
                        ']' => Tok::RBracket,
                        _ => Tok::RBrace,
                    }
                }
                '+' => Tok::Plus,
                '-' => {
                    if chars.peek() == Some(&'>') {
                        advance(&mut chars);
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '!' => Tok::Bang,
                '\\' => Tok::Backslash,
                other => {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        pos,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        };
        out.push(Token { tok, pos });
    }
    if !matches!(
        out.last(),
        Some(Token {
            tok: Tok::Newline,
            ..
        }) | None
    ) {
        out.push(Token {
            tok: Tok::Newline,
            pos: Pos { line, column },
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
    });
    Ok(out)
}
