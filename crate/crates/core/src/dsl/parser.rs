//! Recursive-descent parser. Names are resolved while parsing: every
//! reference must name an earlier declaration of the right kind.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ast::{Expr, Program, Query, SetExpr, Stmt};
use super::lexer::{tokenize, Tok, Token};
use super::{const_value, is_polynomial, DslError, ErrorKind, Pos};

const RESERVED: &[&str] = &[
    "index",
    "filter",
    "elem",
    "algebra",
    "hom",
    "grid",
    "query",
    "on",
    "frechet",
    "nat",
    "AP",
    "id",
    "l",
    "const",
    "ind",
    "piecewise",
    "except",
    "eval",
    "eq",
    "leq",
    "zerodivisors",
    "archimedean",
    "commutes",
    "samples",
    "oracle",
    "ideal",
    "apply",
    "at",
];

pub const MAX_EXPONENT: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Index,
    Filter,
    Elem,
    Algebra,
    Hom,
    Grid,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Index => "index set",
            Kind::Filter => "filter",
            Kind::Elem => "element",
            Kind::Algebra => "algebra",
            Kind::Hom => "homomorphism",
            Kind::Grid => "grid",
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    names: HashMap<(Kind, String), Pos>,
}

pub fn parse(source: &str) -> Result<Program, DslError> {
    let mut p = Parser {
        tokens: tokenize(source)?,
        at: 0,
        names: HashMap::new(),
    };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        if p.eat(&Tok::Newline) {
            continue;
        }
        stmts.push(p.statement()?);
        p.expect_end()?;
    }
    Ok(Program { stmts })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if self.at_keyword(word) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> DslError {
        DslError::new(
            ErrorKind::Syntax,
            self.pos(),
            format!("expected {expected}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, tok: &Tok) -> Result<Pos, DslError> {
        if self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), DslError> {
        if self.eat_keyword(word) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{word}'")))
        }
    }

    fn expect_end(&mut self) -> Result<(), DslError> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of line")),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), DslError> {
        match *self.peek() {
            Tok::Int(n) => Ok((n, self.bump().pos)),
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(name) => Ok((name, self.bump().pos)),
            _ => Err(self.unexpected("a name")),
        }
    }

    /// A fresh name for a declaration of `kind`.
    fn declare(&mut self, kind: Kind) -> Result<String, DslError> {
        let (name, pos) = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(DslError::new(
                ErrorKind::Syntax,
                pos,
                format!("'{name}' is a reserved word"),
            ));
        }
        if let Some(prev) = self.names.get(&(kind, name.clone())) {
            return Err(DslError::new(
                ErrorKind::Name,
                pos,
                format!("{} '{name}' is already declared at {prev}", kind.noun()),
            ));
        }
        self.names.insert((kind, name.clone()), pos);
        Ok(name)
    }

    fn resolve_name(&self, kind: Kind, name: &str, pos: Pos) -> Result<(), DslError> {
        if self.names.contains_key(&(kind, name.to_string())) {
            return Ok(());
        }
        let other = [
            Kind::Index,
            Kind::Filter,
            Kind::Elem,
            Kind::Algebra,
            Kind::Hom,
            Kind::Grid,
        ]
        .into_iter()
        .find(|k| self.names.contains_key(&(*k, name.to_string())));
        Err(match other {
            Some(k) => DslError::new(
                ErrorKind::Type,
                pos,
                format!("'{name}' is a {}, expected a {}", k.noun(), kind.noun()),
            ),
            None => DslError::new(
                ErrorKind::Name,
                pos,
                format!("undefined {} '{name}'", kind.noun()),
            ),
        })
    }

    fn reference(&mut self, kind: Kind) -> Result<String, DslError> {
        let (name, pos) = self.ident()?;
        self.resolve_name(kind, &name, pos)?;
        Ok(name)
    }

    fn statement(&mut self) -> Result<Stmt, DslError> {
        let (word, pos) = self.ident().map_err(|_| self.unexpected("a statement"))?;
        match word.as_str() {
            "index" => {
                let name = self.declare(Kind::Index)?;
                self.expect(&Tok::Eq)?;
                let set = self.set_expr()?;
                Ok(Stmt::Index { name, set })
            }
            "filter" => self.filter_stmt(),
            "elem" => {
                let name = self.declare(Kind::Elem)?;
                self.expect_keyword("on")?;
                let carrier = self.carrier()?;
                self.expect(&Tok::Eq)?;
                let expr = self.expr()?;
                Ok(Stmt::Elem {
                    name,
                    carrier,
                    expr,
                })
            }
            "algebra" => {
                let name = self.declare(Kind::Algebra)?;
                self.expect(&Tok::Eq)?;
                let filter = self.reference(Kind::Filter)?;
                Ok(Stmt::Algebra { name, filter })
            }
            "hom" => {
                let name = self.declare(Kind::Hom)?;
                self.expect(&Tok::Colon)?;
                let source = self.reference(Kind::Algebra)?;
                self.expect(&Tok::Arrow)?;
                let target = self.reference(Kind::Algebra)?;
                Ok(Stmt::Hom {
                    name,
                    source,
                    target,
                })
            }
            "grid" => {
                let name = self.declare(Kind::Grid)?;
                self.expect(&Tok::LBrace)?;
                let mut rows = vec![vec![self.reference(Kind::Algebra)?]];
                loop {
                    if self.eat(&Tok::Comma) {
                        let a = self.reference(Kind::Algebra)?;
                        rows.last_mut().expect("rows start nonempty").push(a);
                    } else if self.eat(&Tok::Semi) {
                        rows.push(vec![self.reference(Kind::Algebra)?]);
                    } else if self.eat(&Tok::RBrace) {
                        break;
                    } else {
                        return Err(self.unexpected("',', ';' or '}'"));
                    }
                }
                Ok(Stmt::Grid { name, rows })
            }
            "query" => Ok(Stmt::Query(self.query()?)),
            _ => Err(DslError::new(
                ErrorKind::Syntax,
                pos,
                format!("expected a statement, found '{word}'"),
            )),
        }
    }

    /// An index set name, or `nat` (returned as `None`).
    fn carrier(&mut self) -> Result<Option<String>, DslError> {
        if self.eat_keyword("nat") {
            return Ok(None);
        }
        Ok(Some(self.reference(Kind::Index)?))
    }

    fn filter_stmt(&mut self) -> Result<Stmt, DslError> {
        let name = self.declare(Kind::Filter)?;
        let mut carrier = None;
        if self.eat_keyword("on") {
            carrier = self.carrier()?;
        }
        self.expect(&Tok::Eq)?;
        self.expect_keyword("frechet")?;
        if carrier.is_none() && self.eat(&Tok::LParen) {
            carrier = self.carrier()?;
            self.expect(&Tok::RParen)?;
        }
        let mut generators = Vec::new();
        if self.eat(&Tok::Plus) {
            self.expect(&Tok::LBracket)?;
            generators.push(self.set_expr()?);
            while self.eat(&Tok::Comma) {
                generators.push(self.set_expr()?);
            }
            self.expect(&Tok::RBracket)?;
        }
        Ok(Stmt::Filter {
            name,
            carrier,
            generators,
        })
    }

    fn query(&mut self) -> Result<Query, DslError> {
        let (word, pos) = self.ident().map_err(|_| self.unexpected("a query kind"))?;
        match word.as_str() {
            "eval" => {
                let expr = self.expr()?;
                let at = if self.eat_keyword("at") {
                    Some(self.int()?.0)
                } else {
                    None
                };
                Ok(Query::Eval { expr, at })
            }
            "eq" | "leq" => {
                let a = self.expr()?;
                self.eat(&Tok::Comma);
                let b = self.expr()?;
                Ok(if word == "eq" {
                    Query::Eq(a, b)
                } else {
                    Query::Leq(a, b)
                })
            }
            "zerodivisors" => Ok(Query::ZeroDivisors),
            "archimedean" => Ok(Query::Archimedean(self.expr()?)),
            "commutes" => {
                let grid = self.reference(Kind::Grid)?;
                let samples = if self.eat_keyword("samples") {
                    let (n, pos) = self.int()?;
                    if n == 0 {
                        return Err(DslError::new(
                            ErrorKind::Syntax,
                            pos,
                            "sample count must be positive".to_string(),
                        ));
                    }
                    Some(n)
                } else {
                    None
                };
                Ok(Query::Commutes { grid, samples })
            }
            "oracle" => Ok(Query::Oracle(self.int()?.0)),
            "ideal" => {
                self.expect(&Tok::LParen)?;
                let mut generators = vec![self.expr()?];
                while self.eat(&Tok::Comma) {
                    generators.push(self.expr()?);
                }
                self.expect(&Tok::RParen)?;
                let frechet = if self.eat(&Tok::Plus) {
                    self.expect_keyword("frechet")?;
                    true
                } else {
                    false
                };
                Ok(Query::Ideal {
                    generators,
                    frechet,
                })
            }
            "apply" => {
                let hom = self.reference(Kind::Hom)?;
                let expr = self.expr()?;
                Ok(Query::Apply { hom, expr })
            }
            _ => Err(DslError::new(
                ErrorKind::Syntax,
                pos,
                format!("unknown query '{word}'"),
            )),
        }
    }

    // set expressions, loosest first: '|', '\', '&', '!'

    fn set_expr(&mut self) -> Result<SetExpr, DslError> {
        let mut left = self.set_minus()?;
        while self.eat(&Tok::Pipe) {
            left = SetExpr::Or(Box::new(left), Box::new(self.set_minus()?));
        }
        Ok(left)
    }

    fn set_minus(&mut self) -> Result<SetExpr, DslError> {
        let mut left = self.set_and()?;
        while self.eat(&Tok::Backslash) {
            left = SetExpr::Minus(Box::new(left), Box::new(self.set_and()?));
        }
        Ok(left)
    }

    fn set_and(&mut self) -> Result<SetExpr, DslError> {
        let mut left = self.set_not()?;
        while self.eat(&Tok::Amp) {
            left = SetExpr::And(Box::new(left), Box::new(self.set_not()?));
        }
        Ok(left)
    }

    fn set_not(&mut self) -> Result<SetExpr, DslError> {
        if self.eat(&Tok::Bang) {
            return Ok(SetExpr::Not(Box::new(self.set_not()?)));
        }
        self.set_atom()
    }

    fn set_atom(&mut self) -> Result<SetExpr, DslError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let s = self.set_expr()?;
                self.expect(&Tok::RParen)?;
                Ok(s)
            }
            Tok::LBrace => {
                self.bump();
                let mut items = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    items.push(self.int()?.0);
                    while self.eat(&Tok::Comma) {
                        items.push(self.int()?.0);
                    }
                    self.expect(&Tok::RBrace)?;
                }
                Ok(SetExpr::Finite(items))
            }
            Tok::Ident(word) if word == "nat" => {
                self.bump();
                Ok(SetExpr::Nat)
            }
            Tok::Ident(word) if word == "AP" => {
                self.bump();
                self.expect(&Tok::LParen)?;
                let (r, rpos) = self.int()?;
                self.expect(&Tok::Comma)?;
                let (p, ppos) = self.int()?;
                self.expect(&Tok::RParen)?;
                if p == 0 {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        ppos,
                        "period must be positive".to_string(),
                    ));
                }
                if r >= p {
                    return Err(DslError::new(
                        ErrorKind::Syntax,
                        rpos,
                        format!("residue {r} must be below the period {p}"),
                    ));
                }
                Ok(SetExpr::Ap(r, p))
            }
            Tok::Ident(word) if !RESERVED.contains(&word.as_str()) => {
                let name = self.reference(Kind::Index)?;
                Ok(SetExpr::Name(name))
            }
            _ => Err(self.unexpected("a set")),
        }
    }

    // element expressions: 'except' < '+ -' < '* /' < unary '-' < '^'

    fn expr(&mut self) -> Result<Expr, DslError> {
        let e = self.sum()?;
        if !self.eat_keyword("except") {
            return Ok(e);
        }
        self.expect(&Tok::LBrace)?;
        let mut exceptions = BTreeMap::new();
        loop {
            let (k, pos) = self.int()?;
            self.expect(&Tok::Colon)?;
            let v = self.rational()?;
            if exceptions.insert(k, v).is_some() {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    pos,
                    format!("index {k} listed twice"),
                ));
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RBrace)?;
        Ok(Expr::Except(Box::new(e), exceptions))
    }

    fn sum(&mut self) -> Result<Expr, DslError> {
        let mut left = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                left = Expr::Add(Box::new(left), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                left = Expr::Sub(Box::new(left), Box::new(self.term()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut left = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                left = Expr::Mul(Box::new(left), Box::new(self.unary()?));
            } else if self.peek() == &Tok::Slash {
                self.bump();
                let pos = self.pos();
                let right = self.unary()?;
                match const_value(&right) {
                    None => {
                        return Err(DslError::new(
                            ErrorKind::Type,
                            pos,
                            "divisor must be a constant".to_string(),
                        ))
                    }
                    Some(c) if c.is_zero() => {
                        return Err(DslError::new(
                            ErrorKind::Type,
                            pos,
                            "division by zero".to_string(),
                        ))
                    }
                    Some(_) => {}
                }
                left = Expr::Div(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let (k, pos) = self.int()?;
            if k > MAX_EXPONENT {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    pos,
                    format!("exponent {k} exceeds {MAX_EXPONENT}"),
                ));
            }
            return Ok(Expr::Pow(Box::new(base), k as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(word) => match word.as_str() {
                "id" | "l" => {
                    self.bump();
                    Ok(Expr::Id)
                }
                "const" => {
                    self.bump();
                    self.expect(&Tok::LParen)?;
                    let q = self.rational()?;
                    self.expect(&Tok::RParen)?;
                    Ok(Expr::Const(q))
                }
                "ind" => {
                    self.bump();
                    self.expect(&Tok::LParen)?;
                    let s = self.set_expr()?;
                    self.expect(&Tok::RParen)?;
                    Ok(Expr::Ind(s))
                }
                "piecewise" => {
                    self.bump();
                    self.expect(&Tok::LBracket)?;
                    let mut pieces = Vec::new();
                    loop {
                        let region = self.set_expr()?;
                        self.expect(&Tok::Colon)?;
                        let pos = self.pos();
                        let body = self.expr()?;
                        if !is_polynomial(&body) {
                            return Err(DslError::new(
                                ErrorKind::Type,
                                pos,
                                "piece body must be a polynomial in l".to_string(),
                            ));
                        }
                        pieces.push((region, body));
                        if !self.eat(&Tok::Semi) {
                            break;
                        }
                    }
                    self.expect(&Tok::RBracket)?;
                    Ok(Expr::Piecewise(pieces))
                }
                w if RESERVED.contains(&w) => Err(self.unexpected("an element expression")),
                _ => Ok(Expr::Name(self.reference(Kind::Elem)?)),
            },
            _ => Err(self.unexpected("an element expression")),
        }
    }

    /// `[-] INT [/ INT]`.
    fn rational(&mut self) -> Result<BigRational, DslError> {
        let negative = self.eat(&Tok::Minus);
        let (n, _) = self.int()?;
        let mut d = 1;
        if self.eat(&Tok::Slash) {
            let (den, pos) = self.int()?;
            if den == 0 {
                return Err(DslError::new(
                    ErrorKind::Syntax,
                    pos,
                    "zero denominator".to_string(),
                ));
            }
            d = den;
        }
        let q = BigRational::new(BigInt::from(n), BigInt::from(d));
        Ok(if negative { -q } else { q })
    }
}
