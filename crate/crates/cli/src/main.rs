use std::io::{self, BufRead, IsTerminal, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use thompson::{exit, render, run_script, Session};

/// Calculator for Thompson's groups F and T and their representations.
///
/// With trailing words, runs them as one line. With --script, runs the
/// file. Otherwise reads standard input, interactively on a terminal.
#[derive(Parser)]
#[command(name = "thompson", version)]
struct Cli {
    /// Run a script file, stopping at the first error.
    #[arg(long, value_name = "FILE")]
    script: Option<String>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default representation parameter for `numeval`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    s: f64,
    /// Print one JSON value per line.
    #[arg(long)]
    json: bool,
    /// A single line to run.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    line: Vec<String>,
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn batch(src: &str, session: &mut Session, json: bool) -> ExitCode {
    let r = run_script(src, session, json);
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    code(r.code)
}

fn repl(session: &mut Session, json: bool) -> ExitCode {
    let stdin = io::stdin();
    let mut n = 0;
    loop {
        print!("> ");
        let _ = io::stdout().flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return code(exit::INVALID);
            }
        }
        n += 1;
        match session.run_line(line.trim_end_matches(['\n', '\r']), n) {
            Ok(out) => print!("{}", render(&out, json)),
            Err(e) => eprintln!("error: {e}"),
        }
    }
    println!();
    code(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.s.is_finite() {
        eprintln!("error: --s must be finite");
        return code(exit::INVALID);
    }
    let mut session = Session::new(cli.seed, cli.s);
    if let Some(path) = &cli.script {
        if !cli.line.is_empty() {
            eprintln!("error: give either --script or a command line, not both");
            return code(exit::INVALID);
        }
        return match std::fs::read_to_string(path) {
            Ok(src) => batch(&src, &mut session, cli.json),
            Err(e) => {
                eprintln!("error: {path}: {e}");
                code(exit::INVALID)
            }
        };
    }
    if !cli.line.is_empty() {
        return batch(&cli.line.join(" "), &mut session, cli.json);
    }
    if io::stdin().is_terminal() {
        return repl(&mut session, cli.json);
    }
    let mut src = String::new();
    if let Err(e) = io::stdin().read_to_string(&mut src) {
        eprintln!("error: {e}");
        return code(exit::INVALID);
    }
    batch(&src, &mut session, cli.json)
}
