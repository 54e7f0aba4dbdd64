//! Command language, batch runner, and file formats for `thompson-core`.
//!
//! A line is either `let name = <pipeline>` or a pipeline of stages joined
//! by `|`; see [`parser`] for the grammar and [`commands`] for the command
//! table. [`io`] reads and writes session files, [`json`] the JSON forms.

pub mod ast;
pub mod commands;
pub mod error;
pub mod io;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod session;
pub mod value;

pub use error::{exit, CliError};
pub use session::{Outcome, Session};
pub use value::Value;

/// Parses a canonical value form and evaluates it in an empty session.
pub fn parse_value(text: &str) -> Result<Value, CliError> {
    let e = parser::parse_expr(text)?;
    Session::default().eval(&e, &mut Outcome::default())
}

/// Output of a batch run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Text printed for one statement: notes as `# …` lines, then the value.
pub fn render(out: &Outcome, json_mode: bool) -> String {
    let mut s = String::new();
    for n in &out.notes {
        if json_mode {
            s += &serde_json::json!({ "kind": "note", "value": n }).to_string();
        } else {
            s += "# ";
            s += n;
        }
        s.push('\n');
    }
    if let Some(v) = &out.value {
        if json_mode {
            s += &json::to_json(v).to_string();
        } else {
            s += &v.display();
        }
        s.push('\n');
    }
    s
}

/// Runs `src` line by line, stopping at the first error.
///
/// The exit code is that error's code; otherwise 3 if any probe gave a
/// negative verdict, else 0.
pub fn run_script(src: &str, session: &mut Session, json_mode: bool) -> Report {
    let mut report = Report::default();
    for (i, line) in src.lines().enumerate() {
        match session.run_line(line, i + 1) {
            Ok(out) => {
                report.stdout += &render(&out, json_mode);
                if out.negative {
                    report.code = exit::NEGATIVE;
                }
            }
            Err(e) => {
                report.stderr = match e {
                    CliError::Parse { .. } => format!("error: {e}\n"),
                    _ => format!("error: line {}: {e}\n", i + 1),
                };
                report.code = e.exit_code();
                break;
            }
        }
    }
    report
}
