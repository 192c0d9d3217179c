use std::fmt::Write;

use super::ast::*;

struct Out {
    text: String,
    depth: usize,
}

impl Out {
    fn line(&mut self, s: &str) {
        let _ = writeln!(self.text, "{}{s}", "  ".repeat(self.depth));
    }

    fn block(&mut self, stmts: &[AdaStmt]) {
        self.depth += 1;
        for s in stmts {
            self.stmt(s);
        }
        self.depth -= 1;
    }

    fn stmt(&mut self, s: &AdaStmt) {
        match s {
            AdaStmt::Null => self.line("null;"),
            AdaStmt::Exit => self.line("exit;"),
            AdaStmt::Return(e) => self.line(&format!("return {e};")),
            AdaStmt::Accept(e) => self.line(&format!("accept {e};")),
            AdaStmt::EntryCall(n) | AdaStmt::ProcedureCall(n) => self.line(&format!("{n};")),
            AdaStmt::Loop(b) => {
                self.line("loop");
                self.block(b);
                self.line("end loop;");
            }
            AdaStmt::IfElse { condition, then_branch, else_branch } => {
                self.line(&format!("if {condition} then"));
                self.block(then_branch);
                self.line("else");
                self.block(else_branch);
                self.line("end if;");
            }
            AdaStmt::Case { expr, alternatives } => {
                self.line(&format!("case {expr} is"));
                self.depth += 1;
                for (choice, b) in alternatives {
                    self.line(&format!("when {choice} =>"));
                    self.block(b);
                }
                self.depth -= 1;
                self.line("end case;");
            }
            AdaStmt::Select { alternatives, terminate } => {
                self.line("select");
                for (i, (entry, b)) in alternatives.iter().enumerate() {
                    if i > 0 {
                        self.line("or");
                    }
                    self.depth += 1;
                    self.line(&format!("accept {entry};"));
                    self.depth -= 1;
                    self.block(b);
                }
                if *terminate {
                    if !alternatives.is_empty() {
                        self.line("or");
                    }
                    self.depth += 1;
                    self.line("terminate;");
                    self.depth -= 1;
                }
                self.line("end select;");
            }
        }
    }

    fn subprogram(&mut self, header: String, name: &str, body: &[AdaStmt]) {
        self.line(&header);
        self.line("begin");
        self.block(body);
        self.line(&format!("end {name};"));
    }

    fn decl(&mut self, d: &AdaDecl) {
        match d {
            AdaDecl::Function { name, return_type, body } => {
                self.subprogram(format!("function {name} return {return_type} is"), name, body)
            }
            AdaDecl::Procedure { name, body } => self.subprogram(format!("procedure {name} is"), name, body),
            AdaDecl::TaskSpec { name, entries } if entries.is_empty() => self.line(&format!("task {name};")),
            AdaDecl::TaskSpec { name, entries } => {
                self.line(&format!("task {name} is"));
                self.depth += 1;
                for e in entries {
                    self.line(&format!("entry {e};"));
                }
                self.depth -= 1;
                self.line(&format!("end {name};"));
            }
            AdaDecl::TaskBody { name, body } => self.subprogram(format!("task body {name} is"), name, body),
        }
    }
}

/// Renders a unit with two-space indentation, one statement per line.
pub fn render_ada(unit: &AdaUnit) -> String {
    let mut out = Out { text: String::new(), depth: 0 };
    out.line(&format!("procedure {} is", unit.procedure_name));
    out.depth += 1;
    for d in &unit.declarations {
        out.decl(d);
    }
    out.depth -= 1;
    out.line("begin");
    out.block(&unit.body);
    out.line(&format!("end {};", unit.procedure_name));
    out.text
}
