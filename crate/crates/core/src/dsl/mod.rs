//! The `redpow` program language: declarations of index sets, filters,
//! elements, algebras, homomorphisms and grids, and queries evaluated in
//! every declared algebra at once.
//!
//! ```text
//! index E = AP(0,2)
//! filter F on N = frechet + [E]
//! algebra A = F
//! query eq ind(!E), 0
//! ```

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;

pub use ast::{Expr, Program, Query, SetExpr, Stmt};
pub use eval::{evaluate, QueryReport, Report, ResultEntry, DEFAULT_SAMPLES};
pub use parser::{parse, MAX_EXPONENT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Name,
    Type,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {} error: {message}", match .kind {
    ErrorKind::Syntax => "syntax",
    ErrorKind::Name => "name",
    ErrorKind::Type => "type",
})]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub(crate) fn new(kind: ErrorKind, pos: Pos, message: String) -> Self {
        DslError { kind, pos, message }
    }
}

/// The value of an expression built from literals alone.
pub fn const_value(e: &Expr) -> Option<BigRational> {
    as_poly(e)?.as_constant()
}

/// Whether `e` is a polynomial in `l` (no sets, names or exceptions).
pub fn is_polynomial(e: &Expr) -> bool {
    as_poly(e).is_some()
}

pub(crate) fn as_poly(e: &Expr) -> Option<Poly> {
    Some(match e {
        Expr::Num(n) => Poly::constant(BigRational::from_integer(BigInt::from(*n))),
        Expr::Const(q) => Poly::constant(q.clone()),
        Expr::Id => Poly::identity(),
        Expr::Neg(a) => -&as_poly(a)?,
        Expr::Add(a, b) => &as_poly(a)? + &as_poly(b)?,
        Expr::Sub(a, b) => &as_poly(a)? - &as_poly(b)?,
        Expr::Mul(a, b) => &as_poly(a)? * &as_poly(b)?,
        Expr::Div(a, b) => {
            let d = as_poly(b)?.as_constant()?;
            if d.is_zero() {
                return None;
            }
            as_poly(a)?.scale(&(BigRational::one() / d))
        }
        Expr::Pow(a, k) => as_poly(a)?.pow(*k),
        Expr::Ind(_) | Expr::Piecewise(_) | Expr::Name(_) | Expr::Except(..) => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> DslError {
        parse(src).unwrap_err()
    }

    #[test]
    fn statements() {
        let p = parse("index E = AP(0,2)\nfilter F on E = frechet + [E & AP(0,4)]\n").unwrap();
        assert_eq!(p.stmts.len(), 2);
        assert_eq!(
            p.stmts[0],
            Stmt::Index {
                name: "E".into(),
                set: SetExpr::Ap(0, 2)
            }
        );
        let a = parse("filter G = frechet(nat)").unwrap();
        assert_eq!(a, parse("filter G on nat = frechet").unwrap());
        assert_eq!(a.to_string(), "filter G = frechet\n");
        assert!(parse("index N = nat\nfilter G = frechet(N)").is_ok());
    }

    #[test]
    fn name_and_type_errors() {
        let e = err("index N = nat\nelem x on N = ind(E) except {3: 5}");
        assert_eq!(
            (e.kind, e.pos),
            (
                ErrorKind::Name,
                Pos {
                    line: 2,
                    column: 19
                }
            )
        );
        let e = err("index N = nat\nfilter F on N = frechet\nindex E = F");
        assert_eq!(
            (e.kind, e.pos),
            (
                ErrorKind::Type,
                Pos {
                    line: 3,
                    column: 11
                }
            )
        );
        let e = err("index N = nat\nindex N = AP(0,3)");
        assert_eq!(
            (e.kind, e.pos),
            (ErrorKind::Name, Pos { line: 2, column: 7 })
        );
    }

    #[test]
    fn round_trip() {
        let src = "index E = AP(0,2)\nindex S = !(E | {1,3}) \\ (E \\ AP(0,4)) & nat\n\
                   elem x on E = -(id - 1)^2 * 3 / 2 - -const(-1/3)\n\
                   elem y on E = (x except {0: 1}) + piecewise[E & AP(0,4): l^2; E \\ AP(0,4): 0] except {2: -5/2, 4: 0}\n\
                   filter F on E = frechet + [AP(0,4) & E, E]\nalgebra A = F\n\
                   hom h : A -> A\ngrid G { A, A; A, A }\n\
                   query eval x at 4\nquery eq x y\nquery ideal(x, y) + frechet\nquery commutes G samples 5\n\
                   query apply h x - y\nquery oracle 3\nquery archimedean 1\nquery zerodivisors\nquery leq 0, x\n";
        let p = parse(src).unwrap();
        let printed = p.to_string();
        let q = parse(&printed).unwrap();
        assert_eq!(p, q);
        assert_eq!(printed, q.to_string());
    }

    #[test]
    fn constant_folding() {
        let p = parse("query eval (1 + 2) * 3 / 4").unwrap();
        let Stmt::Query(Query::Eval { expr, .. }) = &p.stmts[0] else {
            panic!()
        };
        assert_eq!(
            const_value(expr),
            Some(BigRational::new(9.into(), 4.into()))
        );
        assert_eq!(err("query eval id / (1 - 1)").kind, ErrorKind::Type);
        assert_eq!(err("query eval 1 / id").kind, ErrorKind::Type);
    }
}
