//! Recursive-descent parser for Wright configurations and styles.

use std::fmt;

use thiserror::Error;

use super::lexer::{tokenize, Tok, Token};
use crate::model::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct SyntaxError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
    pub note: Option<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: found {}", self.span, self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected {}", self.expected.join(" or "))?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Parses a Wright `Configuration … End Configuration` or
/// `Style … End Style` unit.
pub fn parse_wright(text: &str) -> Result<Configuration, SyntaxError> {
    let tokens = tokenize(text).map_err(|e| SyntaxError {
        span: e.span,
        expected: vec![],
        found: format!("`{}`", e.found),
        note: Some("unexpected character".into()),
    })?;
    let mut p = Parser { toks: tokens, pos: 0 };
    let unit = p.unit()?;
    p.expect_eof()?;
    Ok(unit)
}

/// Parses a single process expression (used by tests and examples).
pub fn parse_process(text: &str) -> Result<ProcessExpr, SyntaxError> {
    let tokens = tokenize(text).map_err(|e| SyntaxError {
        span: e.span,
        expected: vec![],
        found: format!("`{}`", e.found),
        note: Some("unexpected character".into()),
    })?;
    let mut p = Parser { toks: tokens, pos: 0 };
    let proc = p.process()?;
    p.expect_eof()?;
    Ok(proc)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn kw_eq(s: &str, kw: &str) -> bool {
    s.eq_ignore_ascii_case(kw)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
            note: None,
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if kw_eq(s, kw))
    }

    fn is_kw_at(&self, n: usize, kw: &str) -> bool {
        matches!(self.peek_at(n), Tok::Ident(s) if kw_eq(s, kw))
    }

    fn expect_kw(&mut self, kw: &str) -> Result<SourceSpan, SyntaxError> {
        if self.is_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.err(&[&format!("`{kw}`")]))
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<SourceSpan, SyntaxError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.err(&[&tok.describe()]))
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => Err(self.err(&["identifier"])),
        }
    }

    fn expect_eof(&mut self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.err(&["end of input"]))
        }
    }

    fn unit(&mut self) -> Result<Configuration, SyntaxError> {
        let is_style = if self.is_kw("Configuration") {
            false
        } else if self.is_kw("Style") {
            true
        } else {
            return Err(self.err(&["`Configuration`", "`Style`"]));
        };
        self.bump();
        let (name, name_span) = self.ident()?;
        let mut unit = Configuration {
            name,
            is_style,
            component_types: vec![],
            connector_types: vec![],
            component_instances: vec![],
            connector_instances: vec![],
            attachments: vec![],
            constraints: vec![],
            loc: Loc(name_span),
        };
        let mut instances: Vec<Instance> = Vec::new();
        loop {
            if self.is_kw("Component") {
                unit.component_types.push(self.component()?);
            } else if self.is_kw("Connector") {
                unit.connector_types.push(self.connector()?);
            } else {
                break;
            }
        }
        if !is_style && self.is_kw("Instances") {
            self.bump();
            while matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Colon {
                instances.push(self.instance()?);
            }
        }
        if !is_style && self.is_kw("Attachments") {
            self.bump();
            while matches!(self.peek(), Tok::Ident(s) if !kw_eq(s, "End") && !kw_eq(s, "Constraints")) {
                unit.attachments.push(self.attachment()?);
            }
        }
        if self.is_kw("Constraints") {
            self.bump();
            while !(self.is_kw("End") && (self.is_kw_at(1, "Style") || self.is_kw_at(1, "Configuration"))) {
                if *self.peek() == Tok::Eof {
                    return Err(self.err(&["`End`"]));
                }
                let t = self.bump();
                unit.constraints.push((tok_text(&t.tok), Loc(t.span)));
            }
        }
        self.expect_kw("End")?;
        self.expect_kw(if is_style { "Style" } else { "Configuration" })?;
        // Resolve instance kinds through the declared types.
        for mut inst in instances {
            let resolved = if unit.component_type(&inst.type_name).is_some() {
                Some(InstanceKind::Component)
            } else if unit.connector_type(&inst.type_name).is_some() {
                Some(InstanceKind::Connector)
            } else {
                None
            };
            inst.kind = resolved.or(inst.declared_kind).unwrap_or(InstanceKind::Component);
            match inst.kind {
                InstanceKind::Component => unit.component_instances.push(inst),
                InstanceKind::Connector => unit.connector_instances.push(inst),
            }
        }
        Ok(unit)
    }

    fn component(&mut self) -> Result<ComponentType, SyntaxError> {
        self.bump();
        let (name, span) = self.ident()?;
        let mut ports = Vec::new();
        let mut computation = None;
        loop {
            if self.is_kw("Port") {
                self.bump();
                ports.push(self.named_behavior()?);
            } else if self.is_kw("Computation") && computation.is_none() {
                self.bump();
                self.expect(Tok::Eq)?;
                computation = Some(self.behavior()?);
            } else {
                break;
            }
        }
        let Some((computation, local_defs)) = computation else {
            return Err(self.err(&["`Port`", "`Computation`"]));
        };
        Ok(ComponentType { name, ports, computation, local_defs, loc: Loc(span) })
    }

    fn connector(&mut self) -> Result<ConnectorType, SyntaxError> {
        self.bump();
        let (name, span) = self.ident()?;
        let mut roles = Vec::new();
        let mut glue = None;
        loop {
            if self.is_kw("Role") {
                self.bump();
                roles.push(self.named_behavior()?);
            } else if self.is_kw("Glue") && glue.is_none() {
                self.bump();
                self.expect(Tok::Eq)?;
                glue = Some(self.behavior()?);
            } else {
                break;
            }
        }
        let Some((glue, local_defs)) = glue else {
            return Err(self.err(&["`Role`", "`Glue`"]));
        };
        Ok(ConnectorType { name, roles, glue, local_defs, loc: Loc(span) })
    }

    fn named_behavior(&mut self) -> Result<NamedBehavior, SyntaxError> {
        let (name, span) = self.ident()?;
        self.expect(Tok::Eq)?;
        let (behavior, local_defs) = self.behavior()?;
        Ok(NamedBehavior { name, behavior, local_defs, loc: Loc(span) })
    }

    fn behavior(&mut self) -> Result<(ProcessExpr, Vec<LocalDef>), SyntaxError> {
        let p = self.process()?;
        let mut defs = Vec::new();
        if self.is_kw("where") {
            self.bump();
            self.expect(Tok::LBrace)?;
            while *self.peek() != Tok::RBrace {
                let (name, span) = self.ident()?;
                self.expect(Tok::Eq)?;
                let body = self.process()?;
                defs.push(LocalDef { name, body, loc: Loc(span) });
            }
            self.bump();
        }
        Ok((p, defs))
    }

    fn instance(&mut self) -> Result<Instance, SyntaxError> {
        let (name, span) = self.ident()?;
        self.expect(Tok::Colon)?;
        let declared_kind = if self.is_kw("Component") && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.bump();
            Some(InstanceKind::Component)
        } else if self.is_kw("Connector") && matches!(self.peek_at(1), Tok::Ident(_)) {
            self.bump();
            Some(InstanceKind::Connector)
        } else {
            None
        };
        let (type_name, _) = self.ident()?;
        Ok(Instance {
            name,
            type_name,
            kind: declared_kind.unwrap_or(InstanceKind::Component),
            declared_kind,
            loc: Loc(span),
        })
    }

    fn interface_ref(&mut self) -> Result<(String, String, SourceSpan), SyntaxError> {
        let (inst, span) = self.ident()?;
        match self.peek() {
            Tok::Minus | Tok::Dot => {
                self.bump();
            }
            _ => return Err(self.err(&["`-`", "`.`"])),
        }
        let (item, end) = self.ident()?;
        let length = if end.line == span.line { end.column + end.length - span.column } else { span.length };
        Ok((inst, item, SourceSpan { length, ..span }))
    }

    fn attachment(&mut self) -> Result<Attachment, SyntaxError> {
        let (ci, port, span) = self.interface_ref()?;
        self.expect_kw("As")?;
        let (cn, role, _) = self.interface_ref()?;
        Ok(Attachment { component_instance: ci, port, connector_instance: cn, role, loc: Loc(span) })
    }

    fn process(&mut self) -> Result<ProcessExpr, SyntaxError> {
        let start = self.span();
        let raw = self.raw_process()?;
        normalize_process(&raw).map_err(|e| SyntaxError {
            span: start,
            expected: vec![],
            found: "process".into(),
            note: Some(e.to_string()),
        })
    }

    fn raw_process(&mut self) -> Result<RawProcess, SyntaxError> {
        let first = self.raw_unit()?;
        let mut rest = Vec::new();
        loop {
            let op = match self.peek() {
                Tok::ExtChoice => ChoiceOp::External,
                Tok::IntChoice => ChoiceOp::Internal,
                _ => break,
            };
            self.bump();
            rest.push((op, self.raw_unit()?));
        }
        Ok(if rest.is_empty() { first } else { RawProcess::Chain(Box::new(first), rest) })
    }

    fn raw_unit(&mut self) -> Result<RawProcess, SyntaxError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.raw_process()?;
                self.expect(Tok::RParen)?;
                Ok(RawProcess::Paren(Box::new(inner)))
            }
            Tok::Section => {
                self.bump();
                Ok(RawProcess::Skip)
            }
            Tok::Underscore | Tok::Minus | Tok::Root => self.raw_prefix(),
            Tok::Ident(s) => {
                let next = self.peek_at(1).clone();
                let starts_event = matches!(next, Tok::Arrow | Tok::Dot | Tok::Question | Tok::Bang);
                if starts_event {
                    self.raw_prefix()
                } else if s == "SKIP" || s == "TICK" {
                    self.bump();
                    Ok(RawProcess::Skip)
                } else if s == "STOP" {
                    self.bump();
                    Ok(RawProcess::Stop)
                } else {
                    self.bump();
                    Ok(RawProcess::Name(s))
                }
            }
            _ => Err(self.err(&["process"])),
        }
    }

    fn raw_prefix(&mut self) -> Result<RawProcess, SyntaxError> {
        let ev_span = self.span();
        let event = self.event()?;
        self.expect(Tok::Arrow)?;
        let target = self.raw_unit()?;
        if event == EventExpr::Tick && !matches!(strip(&target), RawProcess::Stop) {
            return Err(SyntaxError {
                span: ev_span,
                expected: vec!["`STOP`".into()],
                found: "success event followed by a process".into(),
                note: Some("the success event must be written `V -> STOP`".into()),
            });
        }
        Ok(RawProcess::Prefix(event, Box::new(target)))
    }

    fn event(&mut self) -> Result<EventExpr, SyntaxError> {
        match self.peek().clone() {
            Tok::Root => {
                self.bump();
                Ok(EventExpr::Tick)
            }
            Tok::Underscore => {
                self.bump();
                let name = self.dotted()?;
                let data = self.data_tags()?;
                Ok(EventExpr::Signalled { name, data })
            }
            Tok::Minus => {
                self.bump();
                let (name, _) = self.ident()?;
                Ok(EventExpr::Internal(name))
            }
            Tok::Ident(s) if s == "V" && *self.peek_at(1) == Tok::Arrow => {
                self.bump();
                Ok(EventExpr::Tick)
            }
            Tok::Ident(_) => {
                let name = self.dotted()?;
                let data = self.data_tags()?;
                Ok(EventExpr::Observed { name, data })
            }
            _ => Err(self.err(&["event"])),
        }
    }

    fn dotted(&mut self) -> Result<String, SyntaxError> {
        let (mut name, _) = self.ident()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let (part, _) = self.ident()?;
            name.push('.');
            name.push_str(&part);
        }
        Ok(name)
    }

    fn data_tags(&mut self) -> Result<Vec<DataTag>, SyntaxError> {
        let mut tags = Vec::new();
        loop {
            let dir = match self.peek() {
                Tok::Question => DataDir::In,
                Tok::Bang => DataDir::Out,
                _ => break,
            };
            self.bump();
            let name = match self.peek().clone() {
                Tok::Ident(s) | Tok::Number(s) => {
                    self.bump();
                    s
                }
                _ => return Err(self.err(&["data name"])),
            };
            tags.push(DataTag { dir, name });
        }
        Ok(tags)
    }
}

fn strip(raw: &RawProcess) -> &RawProcess {
    match raw {
        RawProcess::Paren(inner) => strip(inner),
        other => other,
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Number(s) => s.clone(),
        other => other.describe().trim_matches('`').to_string(),
    }
}
