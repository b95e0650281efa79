//! Syntax tree and its canonical pretty-printer. Printing a parsed program
//! and parsing the text again yields the same tree.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::poly::fmt_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Nat,
    Ap(u64, u64),
    Finite(Vec<u64>),
    Name(String),
    Not(Box<SetExpr>),
    And(Box<SetExpr>, Box<SetExpr>),
    Minus(Box<SetExpr>, Box<SetExpr>),
    Or(Box<SetExpr>, Box<SetExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(u64),
    Const(BigRational),
    Id,
    Ind(SetExpr),
    Piecewise(Vec<(SetExpr, Expr)>),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Except(Box<Expr>, BTreeMap<u64, BigRational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Eval {
        expr: Expr,
        at: Option<u64>,
    },
    Eq(Expr, Expr),
    Leq(Expr, Expr),
    ZeroDivisors,
    Archimedean(Expr),
    Commutes {
        grid: String,
        samples: Option<u64>,
    },
    Oracle(u64),
    Ideal {
        generators: Vec<Expr>,
        frechet: bool,
    },
    Apply {
        hom: String,
        expr: Expr,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Index {
        name: String,
        set: SetExpr,
    },
    Filter {
        name: String,
        carrier: Option<String>,
        generators: Vec<SetExpr>,
    },
    Elem {
        name: String,
        carrier: Option<String>,
        expr: Expr,
    },
    Algebra {
        name: String,
        filter: String,
    },
    Hom {
        name: String,
        source: String,
        target: String,
    },
    Grid {
        name: String,
        rows: Vec<Vec<String>>,
    },
    Query(Query),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub stmts: Vec<Stmt>,
}

impl SetExpr {
    fn level(&self) -> u8 {
        match self {
            SetExpr::Or(..) => 1,
            SetExpr::Minus(..) => 2,
            SetExpr::And(..) => 3,
            SetExpr::Not(_) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            SetExpr::Nat => write!(f, "nat"),
            SetExpr::Ap(r, p) => write!(f, "AP({r},{p})"),
            SetExpr::Finite(items) => {
                let items: Vec<String> = items.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            SetExpr::Name(n) => write!(f, "{n}"),
            SetExpr::Not(s) => {
                write!(f, "!")?;
                s.write_at(f, 4)
            }
            SetExpr::And(a, b) => binary(f, a, " & ", b, 3),
            SetExpr::Minus(a, b) => binary(f, a, " \\ ", b, 2),
            SetExpr::Or(a, b) => binary(f, a, " | ", b, 1),
        }
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    a: &SetExpr,
    op: &str,
    b: &SetExpr,
    level: u8,
) -> fmt::Result {
    a.write_at(f, level)?;
    write!(f, "{op}")?;
    b.write_at(f, level + 1)
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Except(..) => 0,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Const(q) => write!(f, "const({})", fmt_rational(q)),
            Expr::Id => write!(f, "l"),
            Expr::Ind(s) => write!(f, "ind({s})"),
            Expr::Piecewise(pieces) => {
                write!(f, "piecewise[")?;
                for (i, (region, body)) in pieces.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{region}: {body}")?;
                }
                write!(f, "]")
            }
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            Expr::Add(a, b) => arith(f, a, " + ", b, 1),
            Expr::Sub(a, b) => arith(f, a, " - ", b, 1),
            Expr::Mul(a, b) => arith(f, a, " * ", b, 2),
            Expr::Div(a, b) => arith(f, a, " / ", b, 2),
            Expr::Pow(e, k) => {
                e.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            Expr::Except(e, exceptions) => {
                e.write_at(f, 1)?;
                write!(f, " except {{")?;
                for (i, (k, v)) in exceptions.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}: {}", fmt_rational(v))?;
                }
                write!(f, "}}")
            }
        }
    }
}

fn arith(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, level: u8) -> fmt::Result {
    a.write_at(f, level)?;
    write!(f, "{op}")?;
    b.write_at(f, level + 1)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Eval { expr, at: None } => write!(f, "eval {expr}"),
            Query::Eval { expr, at: Some(k) } => write!(f, "eval {expr} at {k}"),
            Query::Eq(a, b) => write!(f, "eq {a}, {b}"),
            Query::Leq(a, b) => write!(f, "leq {a}, {b}"),
            Query::ZeroDivisors => write!(f, "zerodivisors"),
            Query::Archimedean(u) => write!(f, "archimedean {u}"),
            Query::Commutes {
                grid,
                samples: None,
            } => write!(f, "commutes {grid}"),
            Query::Commutes {
                grid,
                samples: Some(n),
            } => write!(f, "commutes {grid} samples {n}"),
            Query::Oracle(n) => write!(f, "oracle {n}"),
            Query::Ideal {
                generators,
                frechet,
            } => {
                let gens: Vec<String> = generators.iter().map(Expr::to_string).collect();
                write!(f, "ideal({})", gens.join(", "))?;
                if *frechet {
                    write!(f, " + frechet")?;
                }
                Ok(())
            }
            Query::Apply { hom, expr } => write!(f, "apply {hom} {expr}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Index { name, set } => write!(f, "index {name} = {set}"),
            Stmt::Filter {
                name,
                carrier,
                generators,
            } => {
                write!(f, "filter {name}")?;
                if let Some(c) = carrier {
                    write!(f, " on {c}")?;
                }
                write!(f, " = frechet")?;
                if !generators.is_empty() {
                    let gens: Vec<String> = generators.iter().map(SetExpr::to_string).collect();
                    write!(f, " + [{}]", gens.join(", "))?;
                }
                Ok(())
            }
            Stmt::Elem {
                name,
                carrier,
                expr,
            } => write!(
                f,
                "elem {name} on {} = {expr}",
                carrier.as_deref().unwrap_or("nat")
            ),
            Stmt::Algebra { name, filter } => write!(f, "algebra {name} = {filter}"),
            Stmt::Hom {
                name,
                source,
                target,
            } => write!(f, "hom {name} : {source} -> {target}"),
            Stmt::Grid { name, rows } => {
                let rows: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
                write!(f, "grid {name} {{ {} }}", rows.join("; "))
            }
            Stmt::Query(q) => write!(f, "query {q}"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
