//! Tokenizer for proof scripts.
//!
//! The surface syntax is ASCII; the usual logical glyphs are accepted as
//! alternate spellings and normalized here, so an input using the symbols
//! for quantifiers and connectives lexes exactly like its ASCII spelling.
//! `#` starts a comment running to end of line. Identifiers may start
//! with a digit (numerals name constants) and may end in primes.

use crate::diag::{Diagnostic, SourceSpan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Identifier, keyword, or numeral: `[A-Za-z0-9_]+'*`.
    Ident,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Dot,
    Arrow,
    Amp,
    Pipe,
    Tilde,
    Eq,
    Neq,
    Turnstile,
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: SourceSpan,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn lex(input: &str, file: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut diags = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;

    let span_at = |line: u32, col: u32, width: u32| SourceSpan {
        file: file.to_string(),
        start_line: line,
        start_col: col,
        end_line: line,
        end_col: col + width - 1,
    };

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                    col += 1;
                }
            }
            _ if ident_char(c) => {
                let (sl, sc) = (line, col);
                let mut text = String::new();
                while i < chars.len() && ident_char(chars[i]) {
                    text.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                while i < chars.len() && chars[i] == '\'' {
                    text.push('\'');
                    i += 1;
                    col += 1;
                }
                let width = col - sc;
                out.push(Token {
                    kind: TokenKind::Ident,
                    text,
                    span: span_at(sl, sc, width),
                });
            }
            _ => {
                let next = chars.get(i + 1).copied();
                // (token kind, normalized text, characters consumed)
                let hit: Option<(TokenKind, &str, u32)> = match c {
                    '(' => Some((TokenKind::LParen, "(", 1)),
                    ')' => Some((TokenKind::RParen, ")", 1)),
                    '[' => Some((TokenKind::LBracket, "[", 1)),
                    ']' => Some((TokenKind::RBracket, "]", 1)),
                    '{' => Some((TokenKind::LBrace, "{", 1)),
                    '}' => Some((TokenKind::RBrace, "}", 1)),
                    ',' => Some((TokenKind::Comma, ",", 1)),
                    ':' => Some((TokenKind::Colon, ":", 1)),
                    ';' => Some((TokenKind::Semi, ";", 1)),
                    '.' => Some((TokenKind::Dot, ".", 1)),
                    '&' | '∧' => Some((TokenKind::Amp, "&", 1)),
                    '~' | '¬' => Some((TokenKind::Tilde, "~", 1)),
                    '=' => Some((TokenKind::Eq, "=", 1)),
                    '∨' => Some((TokenKind::Pipe, "|", 1)),
                    '→' => Some((TokenKind::Arrow, "->", 1)),
                    '≠' => Some((TokenKind::Neq, "!=", 1)),
                    '⊢' => Some((TokenKind::Turnstile, "|-", 1)),
                    '∀' => Some((TokenKind::Ident, "all", 1)),
                    '∃' => Some((TokenKind::Ident, "ex", 1)),
                    '⊥' => Some((TokenKind::Ident, "false", 1)),
                    '|' if next == Some('-') => Some((TokenKind::Turnstile, "|-", 2)),
                    '|' => Some((TokenKind::Pipe, "|", 1)),
                    '-' if next == Some('>') => Some((TokenKind::Arrow, "->", 2)),
                    '!' if next == Some('=') => Some((TokenKind::Neq, "!=", 2)),
                    _ => None,
                };
                match hit {
                    Some((kind, text, consumed)) => {
                        out.push(Token {
                            kind,
                            text: text.to_string(),
                            span: span_at(line, col, consumed),
                        });
                        i += consumed as usize;
                        col += consumed;
                    }
                    None => {
                        let message = match c {
                            '-' => "stray `-`: did you mean `->`?".to_string(),
                            '!' => "stray `!`: did you mean `!=`?".to_string(),
                            other => format!("unexpected character `{other}`"),
                        };
                        diags.push(Diagnostic::error(span_at(line, col, 1), "lex", message));
                        i += 1;
                        col += 1;
                    }
                }
            }
        }
    }
    out.push(Token {
        kind: TokenKind::Eof,
        text: String::new(),
        span: span_at(line, col, 1),
    });
    (out, diags)
}
