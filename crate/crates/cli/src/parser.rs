//! Recursive-descent parser.
//!
//! ```text
//! stmt     := "let" IDENT "=" pipeline | pipeline
//! pipeline := stage ("|" stage)*
//! stage    := COMMAND arg* flag* | expr
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := postfix ("^" "-"? INT)?
//! postfix  := primary ("." IDENT)*
//! ```
//!
//! `name(args)` is a call only when `(` follows the name directly.

use num_rational::BigRational;

use crate::ast::{BinOp, Command, Expr, Pipeline, Stage, Stmt};
use crate::commands::is_command;
use crate::error::CliError;
use crate::lexer::{tokenize, Tok, Token};

/// Names that can never be rebound.
pub const RESERVED: &[&str] = &["let", "r2", "i", "ph", "true", "false"];

const MAX_DEPTH: usize = 256;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
    line_offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek_tok(), Some(Tok::Punct(q)) if *q == p)
    }

    /// Punctuation `p` directly attached to the previous token.
    fn at_tight_punct(&self, p: &str) -> bool {
        self.at_punct(p) && !self.peek().expect("checked").spaced
    }

    fn err_here(&self, msg: impl Into<String>) -> CliError {
        let (line, col) = match self.peek().or(self.toks.last()) {
            Some(t) if self.pos < self.toks.len() => (t.line, t.col),
            Some(t) => (t.line, t.col + 1),
            None => (1, 1),
        };
        CliError::Parse {
            line: line + self.line_offset,
            col,
            msg: msg.into(),
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), CliError> {
        if self.at_punct(p) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{p}`")))
        }
    }

    fn ident(&mut self) -> Result<String, CliError> {
        match self.peek_tok() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.err_here("expected a name")),
        }
    }

    fn enter(&mut self) -> Result<(), CliError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err_here("expression nested too deeply"));
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<Stmt, CliError> {
        if self.peek().is_none() {
            return Ok(Stmt::Empty);
        }
        if matches!(self.peek_tok(), Some(Tok::Ident(k)) if k == "let") {
            self.pos += 1;
            let name = self.ident()?;
            if RESERVED.contains(&name.as_str()) || is_command(&name) {
                self.pos -= 1;
                return Err(self.err_here(format!("`{name}` is reserved")));
            }
            self.expect_punct("=")?;
            return Ok(Stmt::Let(name, self.pipeline()?));
        }
        Ok(Stmt::Run(self.pipeline()?))
    }

    fn pipeline(&mut self) -> Result<Pipeline, CliError> {
        self.enter()?;
        let mut stages = vec![self.stage()?];
        while self.at_punct("|") {
            self.pos += 1;
            stages.push(self.stage()?);
        }
        self.depth -= 1;
        Ok(Pipeline { stages })
    }

    fn stage(&mut self) -> Result<Stage, CliError> {
        let is_cmd = match self.peek_tok() {
            Some(Tok::Ident(name)) => {
                let call = matches!(self.toks.get(self.pos + 1), Some(t) if t.tok == Tok::Punct("(") && !t.spaced);
                is_command(name) && !call
            }
            _ => false,
        };
        if !is_cmd {
            return Ok(Stage::Expr(self.expr()?));
        }
        let name = self.ident()?;
        let mut cmd = Command {
            name,
            args: Vec::new(),
            flags: Vec::new(),
        };
        loop {
            match self.peek_tok() {
                None | Some(Tok::Punct("|" | ")")) => break,
                Some(Tok::Flag(f)) => {
                    let f = f.clone();
                    self.pos += 1;
                    let value = match self.peek_tok() {
                        None | Some(Tok::Flag(_) | Tok::Punct("|" | ")")) => None,
                        _ => Some(self.arg()?),
                    };
                    cmd.flags.push((f, value));
                }
                _ => cmd.args.push(self.arg()?),
            }
        }
        Ok(Stage::Command(cmd))
    }

    /// A command argument: a power-level expression, optionally negated.
    fn arg(&mut self) -> Result<Expr, CliError> {
        if self.at_punct("-") {
            self.pos += 1;
            self.enter()?;
            let inner = self.arg()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = if self.at_punct("+") {
                BinOp::Add
            } else if self.at_punct("-") {
                BinOp::Sub
            } else {
                break;
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.at_punct("*") {
                BinOp::Mul
            } else if self.at_punct("/") {
                BinOp::Div
            } else {
                break;
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.at_punct("-") {
            self.pos += 1;
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.postfix()?;
        if !self.at_punct("^") {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.at_punct("-");
        if negative {
            self.pos += 1;
        }
        match self.peek_tok() {
            Some(Tok::Int(n)) => {
                let n = if negative { -n.clone() } else { n.clone() };
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), n))
            }
            _ => Err(self.err_here("expected an integer exponent")),
        }
    }

    fn postfix(&mut self) -> Result<Expr, CliError> {
        let mut e = self.primary()?;
        while self.at_tight_punct(".") {
            self.pos += 1;
            let field = self.ident()?;
            e = Expr::Field(Box::new(e), field);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        self.enter()?;
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err_here("unexpected end of input"))?;
        self.pos += 1;
        let e = match tok.tok {
            Tok::Int(n) => Expr::Num(BigRational::from_integer(n)),
            Tok::Rat(n, d) => Expr::Num(BigRational::new(n, d)),
            Tok::Float(x) => Expr::Float(x),
            Tok::Str(s) => Expr::Str(s),
            Tok::Ident(name) => self.after_ident(name)?,
            Tok::Punct("(") => {
                let inner = self.pipeline()?;
                self.expect_punct(")")?;
                Expr::Group(Box::new(inner))
            }
            Tok::Punct("[") => Expr::List(self.list_items("]", Self::expr)?),
            Tok::Punct("{") => Expr::Record(self.list_items("}", |p| {
                let name = p.ident()?;
                p.expect_punct(":")?;
                Ok((name, p.expr()?))
            })?),
            _ => {
                self.pos -= 1;
                return Err(self.err_here("unexpected token"));
            }
        };
        self.depth -= 1;
        Ok(e)
    }

    fn after_ident(&mut self, name: String) -> Result<Expr, CliError> {
        let tight_bracket = self.at_tight_punct("[");
        let tight_brace = self.at_tight_punct("{");
        match name.as_str() {
            "pl" | "circ" if tight_bracket => {
                self.pos += 1;
                let pairs = self.list_items("]", Self::pair)?;
                Ok(if name == "pl" {
                    Expr::Pl(pairs)
                } else {
                    Expr::Circ(pairs)
                })
            }
            "vec" if tight_bracket => {
                self.pos += 1;
                Ok(Expr::Vector(self.list_items("]", Self::triple)?))
            }
            "step" | "exp" if tight_brace => {
                self.pos += 1;
                let pieces = self.separated("}", ";", |p| {
                    let a = p.expr()?;
                    p.expect_punct(":")?;
                    let b = p.expr()?;
                    p.expect_punct("=>")?;
                    Ok((a, b, p.expr()?))
                })?;
                Ok(if name == "step" {
                    Expr::Step(pieces)
                } else {
                    Expr::Exp(pieces)
                })
            }
            _ if self.at_tight_punct("(") => {
                self.pos += 1;
                Ok(Expr::Call(name, self.list_items(")", Self::expr)?))
            }
            _ => Ok(Expr::Ident(name)),
        }
    }

    fn pair(&mut self) -> Result<(Expr, Expr), CliError> {
        self.expect_punct("(")?;
        let a = self.expr()?;
        self.expect_punct(",")?;
        let b = self.expr()?;
        self.expect_punct(")")?;
        Ok((a, b))
    }

    fn triple(&mut self) -> Result<(Expr, Expr, Expr), CliError> {
        self.expect_punct("(")?;
        let a = self.expr()?;
        self.expect_punct(",")?;
        let b = self.expr()?;
        self.expect_punct(",")?;
        let c = self.expr()?;
        self.expect_punct(")")?;
        Ok((a, b, c))
    }

    /// Comma-separated items up to `close`, which is consumed.
    fn list_items<T>(
        &mut self,
        close: &str,
        item: impl FnMut(&mut Self) -> Result<T, CliError>,
    ) -> Result<Vec<T>, CliError> {
        self.separated(close, ",", item)
    }

    fn separated<T>(
        &mut self,
        close: &str,
        sep: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, CliError>,
    ) -> Result<Vec<T>, CliError> {
        let mut out = Vec::new();
        if self.at_punct(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.at_punct(sep) {
                self.pos += 1;
            } else {
                self.expect_punct(close)?;
                return Ok(out);
            }
        }
    }
}

/// Parses one statement; `line` numbers error positions.
pub fn parse_stmt(src: &str, line: usize) -> Result<Stmt, CliError> {
    let toks = tokenize(src).map_err(|e| match e {
        CliError::Parse { line: l, col, msg } => CliError::Parse {
            line: l + line - 1,
            col,
            msg,
        },
        other => other,
    })?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        line_offset: line - 1,
    };
    let stmt = p.stmt()?;
    if p.pos < p.toks.len() {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(stmt)
}

/// Parses a single expression, as used for canonical value forms.
pub fn parse_expr(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        depth: 0,
        line_offset: 0,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Pipeline {
        match parse_stmt(src, 1).unwrap() {
            Stmt::Run(p) => p,
            other => panic!("not a pipeline: {other:?}"),
        }
    }

    #[test]
    fn literals() {
        let Stage::Expr(Expr::Pl(pts)) = &run("pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)]").stages[0] else {
            panic!("expected pl literal");
        };
        assert_eq!(pts.len(), 4);
        // non-dyadic breakpoints are a semantic matter
        assert!(parse_stmt("pl[(0,0),(1/3,1/2),(1,1)]", 1).is_ok());
        assert!(parse_stmt("step{0:1/4 => 1; 1/4:1 => (r2/4)*ph^-1}", 1).is_ok());
        assert!(parse_stmt("vec[(1/2, 1, 0), (circ[(0,1/2)], -1/2, 1/3)]", 1).is_ok());
        assert!(parse_stmt("vec[]", 1).is_ok());
    }

    #[test]
    fn precedence() {
        let Stage::Expr(e) = &run("a * b^-1").stages[0] else {
            panic!()
        };
        assert_eq!(
            e,
            &Expr::Bin(
                BinOp::Mul,
                Box::new(Expr::Ident("a".into())),
                Box::new(Expr::Pow(
                    Box::new(Expr::Ident("b".into())),
                    num_bigint::BigInt::from(-1)
                ))
            )
        );
        let Stage::Expr(Expr::Bin(BinOp::Mul, lhs, _)) = &run("a * b * c").stages[0] else {
            panic!()
        };
        assert!(matches!(**lhs, Expr::Bin(BinOp::Mul, _, _)));
    }

    #[test]
    fn commands_and_pipes() {
        let p = run("pi g one | norm");
        assert_eq!(p.stages.len(), 2);
        let Stage::Command(c) = &p.stages[0] else { panic!() };
        assert_eq!((c.name.as_str(), c.args.len()), ("pi", 2));
        let Stage::Command(c) = &run("orbit --p 1/2 --q 1/4 --count 3").stages[0] else {
            panic!()
        };
        assert_eq!(c.flags.len(), 3);
        let Stage::Command(c) = &run("inner (pi g one) one").stages[0] else {
            panic!()
        };
        assert!(matches!(c.args[0], Expr::Group(_)));
        let Stage::Command(c) = &run("equiv --s 0 --t -1.5").stages[0] else {
            panic!()
        };
        assert!(matches!(c.flags[1].1, Some(Expr::Neg(_))));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_stmt("pl[(0,0)", 3),
            Err(CliError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_stmt("let r2 = 1", 1),
            Err(CliError::Parse { col: 5, .. })
        ));
        assert!(parse_stmt("a b", 1).is_err());
        let deep = "(".repeat(400) + "1" + &")".repeat(400);
        assert!(parse_stmt(&deep, 1).is_err());
        assert_eq!(parse_stmt("   # only a comment", 1).unwrap(), Stmt::Empty);
    }
}
