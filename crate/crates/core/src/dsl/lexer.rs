//! Tokenizer for the `.itg` format.
//!
//! Produces identifier, string, and punctuation tokens with character-exact
//! spans. Keywords are not distinguished here; the parser matches identifier
//! text contextually. Stops at the first bad character, bad escape, or
//! unterminated string (code `LEX_ERROR`).

use super::{ParseDiagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Arrow,
}

impl TokenKind {
    /// Human-readable shape for diagnostics, e.g. `identifier` or `'{'`.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("identifier {name:?}"),
            TokenKind::Str(_) => "string".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::LBrace => "'{'".to_string(),
            TokenKind::RBrace => "'}'".to_string(),
            TokenKind::Comma => "','".to_string(),
            TokenKind::Colon => "':'".to_string(),
            TokenKind::Arrow => "'->'".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

/// Tokenizes `text`; the second tuple element is the end-of-input position
/// (used for unexpected-end-of-file spans).
pub fn lex(text: &str) -> Result<(Vec<Token>, SourceSpan), ParseDiagnostic> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next();
            match c {
                Some('\n') => {
                    line += 1;
                    column = 1;
                }
                Some(_) => column += 1,
                None => {}
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, column);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '(' | ')' | '{' | '}' | ',' | ':' => {
                bump!();
                let kind = match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    ',' => TokenKind::Comma,
                    _ => TokenKind::Colon,
                };
                tokens.push(Token {
                    kind,
                    span: SourceSpan::new(tok_line, tok_col, 1),
                });
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        span: SourceSpan::new(tok_line, tok_col, 2),
                    });
                } else {
                    return Err(ParseDiagnostic {
                        span: SourceSpan::new(tok_line, tok_col, 1),
                        code: "LEX_ERROR",
                        message: "expected '->' after '-'".to_string(),
                    });
                }
            }
            '"' => {
                bump!();
                let mut value = String::new();
                let mut length = 1usize;
                loop {
                    match chars.peek() {
                        None | Some('\n') => {
                            return Err(ParseDiagnostic {
                                span: SourceSpan::new(tok_line, tok_col, length),
                                code: "LEX_ERROR",
                                message: "unterminated string".to_string(),
                            });
                        }
                        Some('"') => {
                            bump!();
                            length += 1;
                            break;
                        }
                        Some('\\') => {
                            bump!();
                            length += 1;
                            match chars.peek() {
                                Some('"') | Some('\\') => {
                                    value.push(*chars.peek().unwrap());
                                    bump!();
                                    length += 1;
                                }
                                other => {
                                    let shown = other
                                        .map(|c| format!("{c:?}"))
                                        .unwrap_or_else(|| "end of input".to_string());
                                    return Err(ParseDiagnostic {
                                        span: SourceSpan::new(line, column.saturating_sub(1), 2),
                                        code: "LEX_ERROR",
                                        message: format!(
                                            "invalid escape \\{shown}; only \\\" and \\\\ are allowed"
                                        ),
                                    });
                                }
                            }
                        }
                        Some(&other) => {
                            value.push(other);
                            bump!();
                            length += 1;
                        }
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Str(value),
                    span: SourceSpan::new(tok_line, tok_col, length),
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                let length = name.chars().count();
                tokens.push(Token {
                    kind: TokenKind::Ident(name),
                    span: SourceSpan::new(tok_line, tok_col, length),
                });
            }
            other => {
                return Err(ParseDiagnostic {
                    span: SourceSpan::new(tok_line, tok_col, 1),
                    code: "LEX_ERROR",
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
    }

    Ok((tokens, SourceSpan::new(line, column, 0)))
}
