//! Parser for the Ada subset the generator emits.

use thiserror::Error;

use super::ast::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct AdaSyntaxError {
    pub line: usize,
    pub message: String,
}

/// Splits Ada text into tokens: identifiers/literals, `=>`, `;` and `.`.
/// `--` comments are dropped.
pub fn ada_tokens(text: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split("--").next().unwrap_or("");
        let mut chars = line.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_alphanumeric() || c == '_' {
                let mut w = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_') {
                    w.push(c);
                    chars.next();
                }
                out.push((w, n + 1));
            } else if c == '=' {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    out.push(("=>".into(), n + 1));
                } else {
                    out.push(("=".into(), n + 1));
                }
            } else {
                chars.next();
                out.push((c.to_string(), n + 1));
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<(String, usize)>,
    pos: usize,
}

type R<T> = Result<T, AdaSyntaxError>;

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|(t, _)| t.as_str())
    }

    fn peek_is(&self, kw: &str) -> bool {
        self.peek().is_some_and(|t| t.eq_ignore_ascii_case(kw))
    }

    fn err<T>(&self, message: impl Into<String>) -> R<T> {
        let line = self.toks.get(self.pos).or(self.toks.last()).map_or(1, |(_, l)| *l);
        Err(AdaSyntaxError { line, message: message.into() })
    }

    fn expect(&mut self, kw: &str) -> R<()> {
        if self.peek_is(kw) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{kw}`, found `{}`", self.peek().unwrap_or("end of input")))
        }
    }

    fn ident(&mut self) -> R<String> {
        match self.peek() {
            Some(t) if t.chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_') && !is_reserved(t) => {
                let t = t.to_string();
                self.pos += 1;
                Ok(t)
            }
            other => self.err(format!("expected identifier, found `{}`", other.unwrap_or("end of input"))),
        }
    }

    /// `end [name] ;`
    fn end_named(&mut self, name: &str) -> R<()> {
        self.expect("end")?;
        if !self.peek_is(";") {
            let closing = self.ident()?;
            if closing != name {
                return self.err(format!("`end {closing}` closes `{name}`"));
            }
        }
        self.expect(";")
    }

    fn unit(&mut self) -> R<AdaUnit> {
        self.expect("procedure")?;
        let procedure_name = self.ident()?;
        self.expect("is")?;
        let mut declarations = Vec::new();
        while !self.peek_is("begin") {
            declarations.push(self.decl()?);
        }
        self.expect("begin")?;
        let body = self.stmts(true)?;
        self.end_named(&procedure_name)?;
        if self.pos != self.toks.len() {
            return self.err("trailing input after the main procedure");
        }
        Ok(AdaUnit { procedure_name, declarations, body })
    }

    fn decl(&mut self) -> R<AdaDecl> {
        if self.peek_is("function") {
            self.pos += 1;
            let name = self.ident()?;
            self.expect("return")?;
            let return_type = self.ident()?;
            self.expect("is")?;
            let body = self.body(&name)?;
            Ok(AdaDecl::Function { name, return_type, body })
        } else if self.peek_is("procedure") {
            self.pos += 1;
            let name = self.ident()?;
            self.expect("is")?;
            let body = self.body(&name)?;
            Ok(AdaDecl::Procedure { name, body })
        } else if self.peek_is("task") {
            self.pos += 1;
            if self.peek_is("body") {
                self.pos += 1;
                let name = self.ident()?;
                self.expect("is")?;
                let body = self.body(&name)?;
                return Ok(AdaDecl::TaskBody { name, body });
            }
            let name = self.ident()?;
            let mut entries = Vec::new();
            if self.peek_is(";") {
                self.pos += 1;
                return Ok(AdaDecl::TaskSpec { name, entries });
            }
            self.expect("is")?;
            while self.peek_is("entry") {
                self.pos += 1;
                entries.push(self.ident()?);
                self.expect(";")?;
            }
            self.end_named(&name)?;
            Ok(AdaDecl::TaskSpec { name, entries })
        } else {
            self.err(format!("expected a declaration, found `{}`", self.peek().unwrap_or("end of input")))
        }
    }

    fn body(&mut self, name: &str) -> R<Vec<AdaStmt>> {
        self.expect("begin")?;
        let body = self.stmts(true)?;
        self.end_named(name)?;
        Ok(body)
    }

    fn at_sequence_end(&self) -> bool {
        ["end", "else", "or", "when"].iter().any(|k| self.peek_is(k)) || self.peek().is_none()
    }

    fn stmts(&mut self, non_empty: bool) -> R<Vec<AdaStmt>> {
        let mut out = Vec::new();
        while !self.at_sequence_end() {
            out.push(self.stmt()?);
        }
        if non_empty && out.is_empty() {
            return self.err("a sequence of statements needs at least one statement");
        }
        Ok(out)
    }

    fn stmt(&mut self) -> R<AdaStmt> {
        let kw = self.peek().unwrap_or("").to_ascii_lowercase();
        match kw.as_str() {
            "null" | "exit" => {
                self.pos += 1;
                self.expect(";")?;
                Ok(if kw == "null" { AdaStmt::Null } else { AdaStmt::Exit })
            }
            "return" => {
                self.pos += 1;
                let e = self.ident()?;
                self.expect(";")?;
                Ok(AdaStmt::Return(e))
            }
            "accept" => {
                self.pos += 1;
                let e = self.ident()?;
                self.expect(";")?;
                Ok(AdaStmt::Accept(e))
            }
            "loop" => {
                self.pos += 1;
                let body = self.stmts(true)?;
                self.expect("end")?;
                self.expect("loop")?;
                self.expect(";")?;
                Ok(AdaStmt::Loop(body))
            }
            "if" => {
                self.pos += 1;
                let condition = self.ident()?;
                self.expect("then")?;
                let then_branch = self.stmts(true)?;
                self.expect("else")?;
                let else_branch = self.stmts(true)?;
                self.expect("end")?;
                self.expect("if")?;
                self.expect(";")?;
                Ok(AdaStmt::IfElse { condition, then_branch, else_branch })
            }
            "case" => {
                self.pos += 1;
                let expr = self.ident()?;
                self.expect("is")?;
                let mut alternatives = Vec::new();
                while self.peek_is("when") {
                    self.pos += 1;
                    let choice = if self.peek_is("others") {
                        self.pos += 1;
                        "others".to_string()
                    } else {
                        self.ident()?
                    };
                    self.expect("=>")?;
                    alternatives.push((choice, self.stmts(true)?));
                }
                if alternatives.is_empty() {
                    return self.err("case statement without alternatives");
                }
                self.expect("end")?;
                self.expect("case")?;
                self.expect(";")?;
                Ok(AdaStmt::Case { expr, alternatives })
            }
            "select" => {
                self.pos += 1;
                let mut alternatives = Vec::new();
                let mut terminate = false;
                loop {
                    if terminate {
                        return self.err("`terminate` must be the last select alternative");
                    }
                    if self.peek_is("terminate") {
                        self.pos += 1;
                        self.expect(";")?;
                        terminate = true;
                    } else {
                        self.expect("accept")?;
                        let e = self.ident()?;
                        self.expect(";")?;
                        alternatives.push((e, self.stmts(false)?));
                    }
                    if !self.peek_is("or") {
                        break;
                    }
                    self.pos += 1;
                }
                self.expect("end")?;
                self.expect("select")?;
                self.expect(";")?;
                Ok(AdaStmt::Select { alternatives, terminate })
            }
            _ => {
                let first = self.ident()?;
                if self.peek_is(".") {
                    self.pos += 1;
                    let entry = self.ident()?;
                    self.expect(";")?;
                    Ok(AdaStmt::EntryCall(format!("{first}.{entry}")))
                } else {
                    self.expect(";")?;
                    Ok(AdaStmt::ProcedureCall(first))
                }
            }
        }
    }
}

const RESERVED: &[&str] = &[
    "accept",
    "begin",
    "body",
    "case",
    "else",
    "end",
    "entry",
    "exit",
    "function",
    "if",
    "is",
    "loop",
    "null",
    "or",
    "others",
    "procedure",
    "return",
    "select",
    "task",
    "terminate",
    "then",
    "when",
];

fn is_reserved(t: &str) -> bool {
    RESERVED.iter().any(|r| r.eq_ignore_ascii_case(t))
}

/// Parses a program of the generated Ada subset.
pub fn parse_ada(text: &str) -> Result<AdaUnit, AdaSyntaxError> {
    Parser { toks: ada_tokens(text), pos: 0 }.unit()
}
