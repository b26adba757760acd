//! Recursive-descent parser for the `.itg` format.
//!
//! Builds the model in declaration order and records a span for every
//! declaration and transition row so later (model-level) diagnostics can
//! point back into the source text. Reports the earliest error only.

use super::lexer::{lex, Token, TokenKind};
use super::{ParseDiagnostic, SourceSpan};
use crate::model::{
    Agent, ChannelSignature, Direction, Parameter, Region, SystemModel, Transition,
};

/// Source positions of model elements, indexed like the model's own lists.
/// `transitions[r][t]` is the span of row `t` of region `r`.
#[derive(Clone, Debug, Default)]
pub struct SpanTable {
    pub system: Option<SourceSpan>,
    pub agents: Vec<SourceSpan>,
    pub channels: Vec<SourceSpan>,
    pub regions: Vec<SourceSpan>,
    pub transitions: Vec<Vec<SourceSpan>>,
}

/// A parsed model plus the source positions of its elements.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub model: SystemModel,
    pub spans: SpanTable,
}

/// Parses model text. On failure the list holds the earliest error.
pub fn parse(text: &str) -> Result<SystemModel, Vec<ParseDiagnostic>> {
    parse_with_spans(text).map(|p| p.model)
}

/// Like [`parse`], but also returns the element span table.
pub fn parse_with_spans(text: &str) -> Result<Parsed, Vec<ParseDiagnostic>> {
    let (tokens, eof) = lex(text).map_err(|d| vec![d])?;
    Parser {
        tokens,
        eof,
        pos: 0,
    }
    .model()
    .map_err(|d| vec![d])
}

struct Parser {
    tokens: Vec<Token>,
    eof: SourceSpan,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// Span to blame when the input ends or a token mismatches.
    fn here(&self) -> SourceSpan {
        self.peek().map(|t| t.span).unwrap_or(self.eof)
    }

    fn error(&self, expected: &str) -> ParseDiagnostic {
        let found = self
            .peek()
            .map(|t| t.kind.describe())
            .unwrap_or_else(|| "end of input".to_string());
        ParseDiagnostic {
            span: self.here(),
            code: "SYNTAX_ERROR",
            message: format!("expected {expected}, found {found}"),
        }
    }

    /// Consumes an identifier token with the exact text `word`.
    fn keyword(&mut self, word: &str) -> Result<SourceSpan, ParseDiagnostic> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Ident(name),
                span,
            }) if name == word => {
                let span = *span;
                self.pos += 1;
                Ok(span)
            }
            _ => Err(self.error(&format!("keyword '{word}'"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, SourceSpan), ParseDiagnostic> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Ident(name),
                span,
            }) => {
                let out = (name.clone(), *span);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error(what)),
        }
    }

    fn punct(&mut self, kind: &TokenKind, what: &str) -> Result<(), ParseDiagnostic> {
        match self.peek() {
            Some(t) if t.kind == *kind => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(what)),
        }
    }

    /// If the next token is a string, consumes and returns it.
    fn opt_string(&mut self) -> Option<String> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Str(value),
                ..
            }) => {
                let value = value.clone();
                self.pos += 1;
                Some(value)
            }
            _ => None,
        }
    }

    fn model(mut self) -> Result<Parsed, ParseDiagnostic> {
        let mut spans = SpanTable::default();
        spans.system = Some(self.keyword("system")?);
        let (name, _) = self.ident("system name")?;
        let mut model = SystemModel::new(name);

        // Declarations phase: actor/block/channel in any order.
        loop {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Ident(word),
                    span,
                }) => {
                    let span = *span;
                    match word.as_str() {
                        "actor" | "block" => {
                            let is_actor = word == "actor";
                            self.pos += 1;
                            let (id, _) = self.ident("agent id")?;
                            let mut agent = if is_actor {
                                Agent::actor(id)
                            } else {
                                Agent::block(id)
                            };
                            if let Some(display) = self.opt_string() {
                                agent = agent.with_display(display);
                            }
                            model.agents.push(agent);
                            spans.agents.push(span);
                        }
                        "channel" => {
                            self.pos += 1;
                            let (name, _) = self.ident("channel name")?;
                            let params = self.param_list()?;
                            model.channels.push(ChannelSignature::new(name, params));
                            spans.channels.push(span);
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }

        // Regions phase. Declarations may not follow a region.
        while self.peek().is_some() {
            let expected = if model.regions.is_empty() {
                "'actor', 'block', 'channel', 'region', or end of input"
            } else {
                "'region' or end of input"
            };
            let span = self.keyword("region").map_err(|_| self.error(expected))?;
            let (id, _) = self.ident("region id")?;
            self.keyword("initial")?;
            let (initial, _) = self.ident("initial state id")?;
            self.punct(&TokenKind::LBrace, "'{'")?;

            let mut transitions = Vec::new();
            let mut row_spans = Vec::new();
            loop {
                match self.peek() {
                    Some(Token {
                        kind: TokenKind::RBrace,
                        ..
                    }) => {
                        self.pos += 1;
                        break;
                    }
                    Some(Token {
                        kind: TokenKind::Ident(_),
                        ..
                    }) => {
                        let (source, source_span) = self.ident("source state id")?;
                        self.punct(&TokenKind::Arrow, "'->'")?;
                        let (target, _) = self.ident("target state id")?;
                        self.punct(&TokenKind::Colon, "':'")?;
                        let (caller, _) = self.ident("caller id")?;
                        let (channel, _) = self.ident("channel name")?;
                        let (callee, _) = self.ident("callee id")?;
                        transitions.push(Transition::new(source, caller, channel, callee, target));
                        row_spans.push(source_span);
                    }
                    _ => return Err(self.error("a transition or '}'")),
                }
            }

            model
                .regions
                .push(Region::from_transitions(id, initial, transitions));
            spans.regions.push(span);
            spans.transitions.push(row_spans);
        }

        Ok(Parsed { model, spans })
    }

    fn param_list(&mut self) -> Result<Vec<Parameter>, ParseDiagnostic> {
        self.punct(&TokenKind::LParen, "'('")?;
        let mut params = Vec::new();
        if matches!(
            self.peek(),
            Some(Token {
                kind: TokenKind::RParen,
                ..
            })
        ) {
            self.pos += 1;
            return Ok(params);
        }
        loop {
            let (dir_word, dir_span) = self.ident("parameter direction ('in', 'out', 'inout')")?;
            let direction = match dir_word.as_str() {
                "in" => Direction::In,
                "out" => Direction::Out,
                "inout" => Direction::Inout,
                other => {
                    return Err(ParseDiagnostic {
                        span: dir_span,
                        code: "SYNTAX_ERROR",
                        message: format!(
                            "expected parameter direction ('in', 'out', 'inout'), found identifier {other:?}"
                        ),
                    })
                }
            };
            let (name, _) = self.ident("parameter name")?;
            self.punct(&TokenKind::Colon, "':'")?;
            let (ptype, _) = self.ident("parameter type")?;
            params.push(Parameter::new(direction, name, ptype));

            match self.next() {
                Some(Token {
                    kind: TokenKind::Comma,
                    ..
                }) => continue,
                Some(Token {
                    kind: TokenKind::RParen,
                    ..
                }) => return Ok(params),
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.error("',' or ')'"));
                }
            }
        }
    }
}
