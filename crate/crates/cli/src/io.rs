//! Versioned, line-oriented session files.
//!
//! ```text
//! thompson-session 1
//! seed 42
//! s 0.0
//! draws 0
//! let g = pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)]
//! ```
//!
//! Bindings are written in name order, each value in its canonical form.

use std::fmt::Write as _;

use crate::ast::Stmt;
use crate::error::CliError;
use crate::parser::parse_stmt;
use crate::session::Session;

pub const HEADER: &str = "thompson-session";
pub const VERSION: u32 = 1;

pub fn to_text(session: &Session) -> String {
    let mut out = format!(
        "{HEADER} {VERSION}\nseed {}\ns {:?}\ndraws {}\n",
        session.seed, session.s, session.draws
    );
    for (name, v) in &session.bindings {
        let _ = writeln!(out, "let {name} = {v}");
    }
    out
}

fn field<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<&'a str, CliError> {
    let (_, line) = lines
        .next()
        .ok_or_else(|| CliError::invalid(format!("session file ends before `{key}`")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| CliError::invalid(format!("expected `{key} …`, found `{line}`")))
}

pub fn from_text(text: &str) -> Result<Session, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| CliError::Version("empty file".into()))?;
    match header.strip_prefix(HEADER).map(str::trim) {
        Some(v) if v == VERSION.to_string() => {}
        Some(v) => return Err(CliError::Version(format!("version `{v}`, expected {VERSION}"))),
        None => return Err(CliError::Version(format!("missing `{HEADER}` header"))),
    }
    let seed = field(&mut lines, "seed")?
        .parse()
        .map_err(|_| CliError::invalid("bad seed line"))?;
    let s: f64 = field(&mut lines, "s")?
        .parse()
        .map_err(|_| CliError::invalid("bad s line"))?;
    let draws = field(&mut lines, "draws")?
        .parse()
        .map_err(|_| CliError::invalid("bad draws line"))?;
    let mut session = Session::new(seed, s);
    session.draws = draws;
    // values are literals, evaluated in a scratch session so a file cannot
    // refer to bindings or run commands
    let mut scratch = Session::default();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        match parse_stmt(line, n)? {
            Stmt::Let(name, p) if !p.runs_commands() => {
                let mut out = Default::default();
                let v = scratch.pipeline(&p, &mut out)?;
                session.bindings.insert(name, v);
            }
            _ => return Err(CliError::invalid(format!("line {n}: expected `let name = <literal>`"))),
        }
    }
    Ok(session)
}

pub fn save(session: &Session, path: &str) -> Result<(), CliError> {
    std::fs::write(path, to_text(session))?;
    Ok(())
}

pub fn load(path: &str) -> Result<Session, CliError> {
    from_text(&std::fs::read_to_string(path)?)
}
