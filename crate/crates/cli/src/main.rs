use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use pifrac::circuits::{self, NamedCircuit};
use pifrac::syntax::{parse, parse_val, pretty, ParseError, Parsed};
use pifrac::ValD;

/// Run, invert and check reversible programs with fractional types.
#[derive(Parser)]
#[command(name = "pifrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the inferred domain and codomain.
    Check { file: PathBuf },
    /// Run a program on one input value.
    Run {
        file: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Print the inverse program.
    Invert {
        file: PathBuf,
        /// Break long programs over several lines.
        #[arg(long)]
        pretty: bool,
    },
    /// Run the program on every input of its domain.
    TruthTable {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Show a circuit from the built-in gallery; lists the gallery without NAME.
    Example {
        name: Option<String>,
        /// Print the program extracted from the pointed version instead.
        #[arg(long)]
        extract: bool,
        /// Run the circuit's verification suite.
        #[arg(long)]
        verify: bool,
    },
    /// Check that the program is a bijection that its inverse undoes.
    Verify { file: PathBuf },
}

const OK: u8 = 0;
const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { file } => with_program(&file, |p| {
            println!("dom: {}", p.dom);
            println!("cod: {}", p.cod);
            OK
        }),
        Command::Run { file, input } => with_program(&file, |p| run(p, &input)),
        Command::Invert {
            file,
            pretty: multiline,
        } => with_program(&file, |p| {
            let inv = p.comb.invert();
            println!(
                "{}",
                if multiline {
                    pretty(&inv)
                } else {
                    inv.to_string()
                }
            );
            OK
        }),
        Command::TruthTable { file, json } => with_program(&file, |p| truth_table(p, json)),
        Command::Example { name: None, .. } => {
            for c in circuits::gallery() {
                println!("{:<16} {}", c.name, c.summary);
            }
            OK
        }
        Command::Example {
            name: Some(name),
            extract,
            verify,
        } => match circuits::find(&name) {
            Some(c) => example(&c, extract, verify),
            None => {
                eprintln!("error: no circuit named '{name}' (run `pifrac example` for the list)");
                BAD_INPUT
            }
        },
        Command::Verify { file } => with_program(&file, verify_program),
    };
    ExitCode::from(code)
}

fn with_program(file: &Path, body: impl FnOnce(&Parsed) -> u8) -> u8 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return BAD_INPUT;
        }
    };
    match parse(&text) {
        Ok(p) => body(&p),
        Err(e) => {
            report(file, &e);
            BAD_INPUT
        }
    }
}

fn report(file: &Path, e: &ParseError) {
    match e {
        ParseError::Syntax { line, col, msg } => {
            eprintln!("{}:{line}:{col}: syntax error: {msg}", file.display())
        }
        ParseError::Type { span, error } => {
            eprintln!(
                "{}:{}:{}: type error: {error}",
                file.display(),
                span.start.line,
                span.start.col
            );
            eprintln!("  in the term spanning {span}");
        }
    }
}

fn show(v: &Option<ValD>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "exception".into(),
    }
}

fn run(p: &Parsed, input: &str) -> u8 {
    let v = match parse_val(input) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: --input: {e}");
            return BAD_INPUT;
        }
    };
    if !v.has_type(&p.dom) {
        eprintln!("error: --input: {v} is not a value of {}", p.dom);
        return BAD_INPUT;
    }
    let out = p.comb.eval(&v).expect("typed program, typed input");
    println!("{}", show(&out));
    if out.is_some() {
        OK
    } else {
        FAILED
    }
}

fn truth_table(p: &Parsed, as_json: bool) -> u8 {
    let rows = p.comb.truth_table().expect("typed program");
    if as_json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(i, o)| json!({ "in": i.to_string(), "out": o.as_ref().map(ValD::to_string) }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        );
    } else {
        for (i, o) in &rows {
            println!("{i} ↦ {}", show(o));
        }
    }
    OK
}

fn verify_program(p: &Parsed) -> u8 {
    let inv = p.comb.invert();
    let rows = p.comb.truth_table().expect("typed program");
    let mut exceptions = 0;
    let mut round_trip_failures = 0;
    let mut seen = HashSet::new();
    for (i, o) in &rows {
        match o {
            None => exceptions += 1,
            Some(out) => {
                seen.insert(out.clone());
                if inv.eval(out).expect("typed output").as_ref() != Some(i) {
                    round_trip_failures += 1;
                }
            }
        }
    }
    let present = rows.len() - exceptions;
    let bijective = exceptions == 0 && seen.len() == present && p.cod.size() == p.dom.size();
    println!("inputs:     {}", rows.len());
    println!("exceptions: {exceptions}");
    println!("round trip: {}/{present}", present - round_trip_failures);
    println!("bijective:  {}", if bijective { "yes" } else { "no" });
    if bijective && round_trip_failures == 0 {
        OK
    } else {
        FAILED
    }
}

fn example(c: &NamedCircuit, extract: bool, verify: bool) -> u8 {
    if extract {
        match c.extracted() {
            None => {
                eprintln!("error: {} has no pointed version to extract from", c.name);
                return FAILED;
            }
            Some(Err(e)) => {
                eprintln!("error: building the pointed {} failed: {e}", c.name);
                return FAILED;
            }
            Some(Ok(prog)) => println!("{}", pretty(&prog)),
        }
    }
    if verify {
        let report = c.verify();
        for row in &report.rows {
            let ext = match &row.extraction {
                None => String::new(),
                Some(Ok(true)) => "  extraction ok".into(),
                Some(Ok(false)) => "  extraction FAILED".into(),
                Some(Err(e)) => format!("  pointed build failed: {e}"),
            };
            println!(
                "{} {} ↦ {} (expected {}){}{}",
                if row.passed() { "ok  " } else { "FAIL" },
                row.input,
                show(&row.got),
                show(&row.expected),
                if row.round_trip {
                    ""
                } else {
                    "  inverse FAILED"
                },
                ext
            );
        }
        if let Some(uniform) = report.uniform_extraction {
            println!(
                "extraction identical for every input: {}",
                if uniform { "yes" } else { "no" }
            );
        }
        println!("{}/{} rows pass", report.rows_passed(), report.rows.len());
        return if report.passed() { OK } else { FAILED };
    }
    if !extract {
        println!("; {}: {}", c.name, c.summary);
        println!("{}", pretty(&c.dynamic));
    }
    OK
}
