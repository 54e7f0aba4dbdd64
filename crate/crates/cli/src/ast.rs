//! Parse tree of the command language.

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Float(f64),
    Str(String),
    Ident(String),
    Call(String, Vec<Expr>),
    Pl(Vec<(Expr, Expr)>),
    Circ(Vec<(Expr, Expr)>),
    /// `step{a:b => v; …}`
    Step(Vec<(Expr, Expr, Expr)>),
    /// `exp{a:b => m; …}`
    Exp(Vec<(Expr, Expr, Expr)>),
    /// `vec[(label, amp, angle), …]`
    Vector(Vec<(Expr, Expr, Expr)>),
    List(Vec<Expr>),
    Record(Vec<(String, Expr)>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigInt),
    Field(Box<Expr>, String),
    Group(Box<Pipeline>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Command {
    pub name: String,
    pub args: Vec<Expr>,
    /// `--name value`; a flag followed by nothing binds `None`.
    pub flags: Vec<(String, Option<Expr>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stage {
    Command(Command),
    Expr(Expr),
}

/// `stage | stage | …`: each result is prepended to the next stage's
/// arguments.
#[derive(Clone, Debug, PartialEq)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Let(String, Pipeline),
    Run(Pipeline),
    Empty,
}

impl Pipeline {
    /// Whether evaluating this would run any command.
    pub fn runs_commands(&self) -> bool {
        self.stages.iter().any(|s| match s {
            Stage::Command(_) => true,
            Stage::Expr(e) => e.runs_commands(),
        })
    }
}

impl Expr {
    fn runs_commands(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Float(_) | Expr::Str(_) | Expr::Ident(_) => false,
            Expr::Call(_, args) | Expr::List(args) => args.iter().any(Expr::runs_commands),
            Expr::Pl(pts) | Expr::Circ(pts) => pts.iter().any(|(a, b)| a.runs_commands() || b.runs_commands()),
            Expr::Step(ps) | Expr::Exp(ps) | Expr::Vector(ps) => ps
                .iter()
                .any(|(a, b, c)| a.runs_commands() || b.runs_commands() || c.runs_commands()),
            Expr::Record(fields) => fields.iter().any(|(_, e)| e.runs_commands()),
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Field(e, _) => e.runs_commands(),
            Expr::Bin(_, a, b) => a.runs_commands() || b.runs_commands(),
            Expr::Group(p) => p.runs_commands(),
        }
    }
}
