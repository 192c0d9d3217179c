use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wright::{
    check_ada_wellformed, check_qos, check_static, check_ugatze, check_uml, emit_fdr_script, generate_ada, has_errors,
    parse_assembly, parse_wright, render_ada, script_assertions, verify_configuration_jobs, Configuration, Diagnostic,
    PropertyReport, DEFAULT_MAX_STATES,
};

#[derive(Parser)]
#[command(
    name = "wrightc",
    version,
    about = "Check, verify and translate Wright architectures and component assemblies"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Uml,
    Ugatze,
    Qos,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a unit and run the static checks.
    Check { file: PathBuf },
    /// Discharge the consistency properties of a unit.
    Verify {
        file: PathBuf,
        #[arg(long, env = "WRIGHT_VERIFY_MAX_STATES", default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write the CSP script of a unit.
    ExportCsp {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate the concurrent Ada program of a configuration.
    GenAda {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run contract suites over a JSON assembly.
    CheckAssembly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Violations = 1,
    Input = 2,
    Resource = 3,
}

struct Failure {
    kind: &'static str,
    message: String,
}

fn input(kind: &'static str, message: impl ToString) -> Failure {
    Failure { kind, message: message.to_string() }
}

struct Run {
    format: Format,
    command: &'static str,
    file: String,
}

impl Run {
    fn emit(&self, status: Status, body: Value, text: impl FnOnce()) -> ExitCode {
        match self.format {
            Format::Json => {
                let mut doc =
                    json!({ "version": 1, "command": self.command, "file": self.file, "exitCode": status as u8 });
                if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
                    d.extend(b);
                }
                out(&serde_json::to_string_pretty(&doc).expect("report serializes"));
            }
            Format::Text => text(),
        }
        ExitCode::from(status as u8)
    }

    fn fail(&self, f: Failure) -> ExitCode {
        let body = json!({ "error": { "kind": f.kind, "message": f.message } });
        self.emit(Status::Input, body, || eout(&format!("{}: {}: {}", self.file, f.kind, f.message)))
    }
}

/// Stdout writes ignore a closed pipe (e.g. `wrightc verify x | head`).
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn eout(text: &str) {
    eprintln!("{text}");
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input("io", e))
}

/// Parses and statically checks a unit; any static error is an input error
/// for the commands that need a well-formed unit.
fn load_checked(path: &Path) -> Result<(Configuration, Vec<Diagnostic>), Failure> {
    let unit = parse_wright(&read(path)?).map_err(|e| input("syntax", e))?;
    let diags = check_static(&unit);
    if has_errors(&diags) {
        let list: Vec<String> = diags.iter().filter(|d| d.is_error()).map(ToString::to_string).collect();
        return Err(input("static", list.join("\n")));
    }
    Ok((unit, diags))
}

fn print_diagnostics(diags: &[Diagnostic]) {
    for d in diags {
        eout(&d.to_string());
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input("io", e)),
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn check(run: &Run, file: &Path) -> ExitCode {
    let unit = match read(file).and_then(|t| parse_wright(&t).map_err(|e| input("syntax", e))) {
        Ok(u) => u,
        Err(f) => return run.fail(f),
    };
    let diags = check_static(&unit);
    let status = if has_errors(&diags) { Status::Violations } else { Status::Ok };
    run.emit(status, json!({ "unit": unit.name, "diagnostics": diags }), || {
        print_diagnostics(&diags);
        let errors = diags.iter().filter(|d| d.is_error()).count();
        out(&format!("{}: {} error(s), {} warning(s)", unit.name, errors, diags.len() - errors));
    })
}

fn report_line(r: &PropertyReport) -> String {
    let verdict = match &r.verdict {
        Ok(v) if v.holds => "holds".to_string(),
        Ok(v) => match &v.counterexample {
            Some(cx) => {
                let mut s =
                    format!("FAILS after <{}>: {}", cx.trace.join(", "), serde_json::to_string(&cx.kind).unwrap());
                if !cx.blocked.is_empty() {
                    s += &format!(" blocked [{}]", cx.blocked.join(", "));
                }
                s
            }
            None => "FAILS".to_string(),
        },
        Err(e) => format!("not decided: {e}"),
    };
    format!("P{:<3} {:<40} {} [FD= {}  {}", r.property_id, r.subject, r.assertion.0, r.assertion.1, verdict)
}

fn verify(run: &Run, file: &Path, max_states: usize, jobs: usize) -> ExitCode {
    let (unit, _) = match load_checked(file) {
        Ok(u) => u,
        Err(f) => return run.fail(f),
    };
    let reports = verify_configuration_jobs(&unit, max_states, jobs.max(1));
    let status = if reports.iter().any(PropertyReport::is_resource_error) {
        Status::Resource
    } else if reports.iter().all(PropertyReport::holds) {
        Status::Ok
    } else {
        Status::Violations
    };
    run.emit(status, json!({ "unit": unit.name, "maxStates": max_states, "reports": reports }), || {
        for r in &reports {
            out(&report_line(r));
        }
        let held = reports.iter().filter(|r| r.holds()).count();
        out(&format!("{}: {held}/{} properties hold", unit.name, reports.len()));
    })
}

fn export_csp(run: &Run, file: &Path, output: Option<&Path>) -> ExitCode {
    let result = load_checked(file).and_then(|(unit, _)| emit_fdr_script(&unit).map_err(|e| input("semantic", e)));
    let script = match result {
        Ok(s) => s,
        Err(f) => return run.fail(f),
    };
    let json_out = run.format == Format::Json;
    if json_out && output.is_none() {
        let asserts: Vec<Value> = script_assertions(&script).iter().map(|(l, r)| json!([l, r])).collect();
        return run.emit(Status::Ok, json!({ "assertions": asserts, "script": script }), || {});
    }
    if let Err(f) = write_output(output, &script) {
        return run.fail(f);
    }
    let asserts: Vec<Value> = script_assertions(&script).iter().map(|(l, r)| json!([l, r])).collect();
    run.emit(Status::Ok, json!({ "output": output, "assertions": asserts }), || {
        if let Some(p) = output {
            eout(&format!("wrote {} ({} assertions)", p.display(), asserts.len()));
        }
    })
}

fn gen_ada(run: &Run, file: &Path, output: Option<&Path>) -> ExitCode {
    let result = load_checked(file).and_then(|(unit, _)| generate_ada(&unit).map_err(|e| input("translation", e)));
    let unit = match result {
        Ok(u) => u,
        Err(f) => return run.fail(f),
    };
    let text = render_ada(&unit);
    let diags = check_ada_wellformed(&unit);
    let status = if diags.is_empty() { Status::Ok } else { Status::Violations };
    if run.format == Format::Json && output.is_none() {
        return run.emit(status, json!({ "diagnostics": diags, "program": text }), || {});
    }
    if let Err(f) = write_output(output, &text) {
        return run.fail(f);
    }
    run.emit(status, json!({ "output": output, "diagnostics": diags }), || {
        print_diagnostics(&diags);
        if let Some(p) = output {
            eout(&format!("wrote {} ({} tasks)", p.display(), unit.task_bodies().count()));
        }
    })
}

fn check_assembly(run: &Run, file: &Path, suite: Suite) -> ExitCode {
    let a = match read(file).and_then(|t| parse_assembly(&t).map_err(|e| input("format", e))) {
        Ok(a) => a,
        Err(f) => return run.fail(f),
    };
    let mut results: Vec<(&str, Vec<Diagnostic>)> = Vec::new();
    let dialect_suite = match suite {
        Suite::Uml => Some(check_uml(&a).map(|d| ("uml", d))),
        Suite::Ugatze => Some(check_ugatze(&a).map(|d| ("ugatze", d))),
        // `all` picks the structural suite matching the document's dialect.
        Suite::All => Some(match a.dialect {
            wright::assembly::Dialect::Uml => check_uml(&a).map(|d| ("uml", d)),
            wright::assembly::Dialect::Ugatze => check_ugatze(&a).map(|d| ("ugatze", d)),
        }),
        Suite::Qos => None,
    };
    match dialect_suite {
        Some(Ok(r)) => results.push(r),
        Some(Err(e)) => return run.fail(input("dialect", e)),
        None => {}
    }
    if matches!(suite, Suite::Qos | Suite::All) {
        results.push(("qos", check_qos(&a)));
    }
    let all: Vec<&Diagnostic> = results.iter().flat_map(|(_, d)| d).collect();
    let status = if all.iter().any(|d| d.is_error()) { Status::Violations } else { Status::Ok };
    let body: Vec<Value> = results.iter().map(|(s, d)| json!({ "suite": s, "diagnostics": d })).collect();
    run.emit(status, json!({ "assembly": a.name, "suites": body }), || {
        for d in &all {
            eout(&d.to_string());
        }
        let names: Vec<&str> = results.iter().map(|(s, _)| *s).collect();
        out(&format!("{}: {} finding(s) from {}", a.name, all.len(), names.join(", ")));
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, file) = match &cli.command {
        Command::Check { file } => ("check", file),
        Command::Verify { file, .. } => ("verify", file),
        Command::ExportCsp { file, .. } => ("export-csp", file),
        Command::GenAda { file, .. } => ("gen-ada", file),
        Command::CheckAssembly { file, .. } => ("check-assembly", file),
    };
    let run = Run { format: cli.format, command, file: file.display().to_string() };
    match &cli.command {
        Command::Check { file } => check(&run, file),
        Command::Verify { file, max_states, jobs } => verify(&run, file, *max_states, *jobs),
        Command::ExportCsp { file, output } => export_csp(&run, file, output.as_deref()),
        Command::GenAda { file, output } => gen_ada(&run, file, output.as_deref()),
        Command::CheckAssembly { file, suite } => check_assembly(&run, file, *suite),
    }
}
