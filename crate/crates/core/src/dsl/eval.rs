//! Runs a parsed program. Declarations are evaluated in order; every query
//! is answered in each declared algebra (equivalent algebras once, under
//! their first declaration) and collected into a [`Report`].
//!
//! Samples for `commutes` come from `ChaCha8Rng::seed_from_u64(seed)` with
//! the stream set to the square's index in row-major order, so each square
//! sees the same samples whatever else the program contains.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{filter_of_ideal, Algebra, FgIdeal, Grid, Hom, IdealImage};
use crate::element::Element;
use crate::epset::EpSet;
use crate::filter::Filter;
use crate::oracle::FiniteModel;
use crate::poly::fmt_rational;
use crate::sample;

use super::as_poly;
use super::ast::{Expr, Program, Query, SetExpr, Stmt};

pub const DEFAULT_SAMPLES: u64 = 50;

/// Longest explicit index list printed in a witness or certificate.
const LIST_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultEntry {
    pub algebra: String,
    pub verdict: Value,
    pub witness: Option<String>,
    pub certificate: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryReport {
    pub kind: String,
    pub inputs: Vec<String>,
    pub results: Vec<ResultEntry>,
    #[serde(skip)]
    pub failed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub queries: Vec<QueryReport>,
}

impl Report {
    /// A query failed: a grid square did not commute, the finite oracle
    /// failed, a certificate did not validate, or an error occurred.
    pub fn failed(&self) -> bool {
        self.queries.iter().any(|q| q.failed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }

    /// One line per query and one per result.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for q in &self.queries {
            out.push_str(&format!("{} {}\n", q.kind, q.inputs.join(", ")));
            for r in &q.results {
                match &r.error {
                    Some(e) => out.push_str(&format!("  {}: error: {e}\n", r.algebra)),
                    None => {
                        let verdict = match &r.verdict {
                            Value::String(s) => s.clone(),
                            v => v.to_string(),
                        };
                        out.push_str(&format!("  {}: {verdict}\n", r.algebra));
                        if let Some(w) = &r.witness {
                            out.push_str(&format!("    witness: {w}\n"));
                        }
                    }
                }
            }
        }
        out
    }
}

type Outcome<T> = Result<T, String>;

fn entry(algebra: String, result: Outcome<ResultEntry>) -> ResultEntry {
    result.unwrap_or_else(|error| ResultEntry {
        algebra,
        verdict: Value::Null,
        witness: None,
        certificate: None,
        error: Some(error),
    })
}

fn ok(algebra: &Algebra, verdict: Value) -> ResultEntry {
    ResultEntry {
        algebra: algebra.to_string(),
        verdict,
        witness: None,
        certificate: None,
        error: None,
    }
}

#[derive(Default)]
struct Env {
    sets: HashMap<String, EpSet>,
    filters: HashMap<String, Outcome<Filter>>,
    elems: HashMap<String, Outcome<Element>>,
    algebras: HashMap<String, Outcome<Algebra>>,
    homs: HashMap<String, Outcome<Hom>>,
    grids: HashMap<String, Outcome<Grid>>,
    /// Distinct algebras in declaration order.
    declared: Vec<Algebra>,
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn failed_decl(kind: &str, name: &str, e: &str) -> String {
    format!("{kind} '{name}' could not be declared: {e}")
}

pub fn evaluate(program: &Program, seed: u64) -> Report {
    let mut env = Env::default();
    let mut queries = Vec::new();
    for stmt in &program.stmts {
        if let Stmt::Query(q) = stmt {
            queries.push(env.query(q, seed));
        } else if let Err(e) = env.declare(stmt) {
            queries.push(QueryReport {
                kind: "declaration".to_string(),
                inputs: vec![stmt.to_string()],
                results: vec![entry(stmt_name(stmt).to_string(), Err(e))],
                failed: true,
            });
        }
    }
    Report {
        version: 1,
        queries,
    }
}

fn stmt_name(stmt: &Stmt) -> &str {
    match stmt {
        Stmt::Index { name, .. }
        | Stmt::Filter { name, .. }
        | Stmt::Elem { name, .. }
        | Stmt::Algebra { name, .. }
        | Stmt::Hom { name, .. }
        | Stmt::Grid { name, .. } => name,
        Stmt::Query(_) => "query",
    }
}

impl Env {
    fn carrier(&self, name: &Option<String>) -> EpSet {
        match name {
            None => EpSet::naturals(),
            Some(n) => self.sets[n].clone(),
        }
    }

    fn set(&self, s: &SetExpr) -> EpSet {
        match s {
            SetExpr::Nat => EpSet::naturals(),
            SetExpr::Ap(r, p) => EpSet::ap(*r, *p).expect("checked by the parser"),
            SetExpr::Finite(items) => EpSet::finite(items.iter().copied()),
            SetExpr::Name(n) => self.sets[n].clone(),
            SetExpr::Not(a) => self.set(a).complement(),
            SetExpr::And(a, b) => self.set(a).intersect(&self.set(b)),
            SetExpr::Minus(a, b) => self.set(a).difference(&self.set(b)),
            SetExpr::Or(a, b) => self.set(a).union(&self.set(b)),
        }
    }

    fn algebra(&self, name: &str) -> Outcome<Algebra> {
        self.algebras[name]
            .clone()
            .map_err(|e| failed_decl("algebra", name, &e))
    }

    /// Records the declaration; the name is bound even when evaluation
    /// fails, so later references report the original error.
    fn declare(&mut self, stmt: &Stmt) -> Outcome<()> {
        match stmt {
            Stmt::Index { name, set } => {
                let s = self.set(set);
                self.sets.insert(name.clone(), s);
                Ok(())
            }
            Stmt::Filter {
                name,
                carrier,
                generators,
            } => {
                let carrier = self.carrier(carrier);
                let gens = generators.iter().map(|g| self.set(g)).collect();
                let f = Filter::generated(&carrier, gens).map_err(err);
                self.filters.insert(name.clone(), f.clone());
                f.map(|_| ())
            }
            Stmt::Elem {
                name,
                carrier,
                expr,
            } => {
                let carrier = self.carrier(carrier);
                let x = self.elem(expr, &carrier);
                self.elems.insert(name.clone(), x.clone());
                x.map(|_| ())
            }
            Stmt::Algebra { name, filter } => {
                let a = self.filters[filter]
                    .clone()
                    .map(Algebra::new)
                    .map_err(|e| failed_decl("filter", filter, &e));
                if let Ok(a) = &a {
                    if !self.declared.contains(a) {
                        self.declared.push(a.clone());
                    }
                }
                self.algebras.insert(name.clone(), a.clone());
                a.map(|_| ())
            }
            Stmt::Hom {
                name,
                source,
                target,
            } => {
                let h = self
                    .algebra(source)
                    .and_then(|s| Ok((s, self.algebra(target)?)))
                    .and_then(|(s, t)| Hom::between(&s, &t).map_err(err));
                self.homs.insert(name.clone(), h.clone());
                h.map(|_| ())
            }
            Stmt::Grid { name, rows } => {
                let g = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|a| self.algebra(a))
                            .collect::<Outcome<Vec<_>>>()
                    })
                    .collect::<Outcome<Vec<_>>>()
                    .and_then(|nodes| Grid::new(nodes).map_err(err));
                self.grids.insert(name.clone(), g.clone());
                g.map(|_| ())
            }
            Stmt::Query(_) => Ok(()),
        }
    }

    /// Evaluates `e` as an element on `carrier`. Named elements declared on
    /// a superset are restricted.
    fn elem(&self, e: &Expr, carrier: &EpSet) -> Outcome<Element> {
        if let Some(p) = as_poly(e) {
            return Element::polynomial(p, carrier).map_err(err);
        }
        Ok(match e {
            Expr::Ind(s) => Element::indicator(&self.set(s), carrier).map_err(err)?,
            Expr::Piecewise(pieces) => {
                let pieces = pieces
                    .iter()
                    .map(|(region, body)| {
                        (
                            self.set(region).intersect(carrier),
                            as_poly(body).expect("checked by the parser"),
                        )
                    })
                    .filter(|(region, _)| !region.is_empty())
                    .collect();
                Element::piecewise(carrier, pieces, Default::default()).map_err(err)?
            }
            Expr::Name(n) => {
                let x = self.elems[n]
                    .clone()
                    .map_err(|e| failed_decl("element", n, &e))?;
                if x.carrier() == carrier {
                    x
                } else if carrier.is_subset(x.carrier()) {
                    x.restrict(carrier).map_err(err)?
                } else {
                    return Err(format!(
                        "element '{n}' lives on {} and does not restrict to {carrier}",
                        x.carrier()
                    ));
                }
            }
            Expr::Neg(a) => self.elem(a, carrier)?.neg(),
            Expr::Add(a, b) => self
                .elem(a, carrier)?
                .add(&self.elem(b, carrier)?)
                .map_err(err)?,
            Expr::Sub(a, b) => self
                .elem(a, carrier)?
                .sub(&self.elem(b, carrier)?)
                .map_err(err)?,
            Expr::Mul(a, b) => self
                .elem(a, carrier)?
                .mul(&self.elem(b, carrier)?)
                .map_err(err)?,
            Expr::Div(a, b) => {
                let d = as_poly(b)
                    .and_then(|p| p.as_constant())
                    .expect("checked by the parser");
                self.elem(a, carrier)?.scalar_mul(&(BigRational::one() / d))
            }
            Expr::Pow(a, k) => self.elem(a, carrier)?.pow(*k),
            Expr::Except(a, exceptions) => {
                let mut x = self.elem(a, carrier)?;
                for (k, v) in exceptions {
                    x = x.with_exception(*k, v.clone()).map_err(err)?;
                }
                x
            }
            Expr::Num(_) | Expr::Const(_) | Expr::Id => unreachable!("polynomial"),
        })
    }

    fn per_algebra(&self, mut f: impl FnMut(&Algebra) -> Outcome<ResultEntry>) -> Vec<ResultEntry> {
        self.declared
            .iter()
            .map(|a| entry(a.to_string(), f(a)))
            .collect()
    }

    fn query(&self, q: &Query, seed: u64) -> QueryReport {
        let (kind, inputs, results, mut failed) = match q {
            Query::Eval { expr, at } => {
                let results = self.per_algebra(|a| {
                    let x = a.coset(self.elem(expr, a.carrier())?).map_err(err)?;
                    let verdict = match at {
                        None => x.rep().to_string(),
                        Some(k) => fmt_rational(&x.rep().eval(*k).map_err(err)?),
                    };
                    Ok(ok(a, Value::String(verdict)))
                });
                let mut inputs = vec![expr.to_string()];
                inputs.extend(at.map(|k| k.to_string()));
                ("eval", inputs, results, false)
            }
            Query::Eq(x, y) | Query::Leq(x, y) => {
                let is_eq = matches!(q, Query::Eq(..));
                let results = self.per_algebra(|a| {
                    let cx = a.coset(self.elem(x, a.carrier())?).map_err(err)?;
                    let cy = a.coset(self.elem(y, a.carrier())?).map_err(err)?;
                    let core = a.filter().core();
                    // the indices of the core where the relation fails
                    let bad = if is_eq {
                        core.difference(&cx.rep().sub(cy.rep()).map_err(err)?.zero_set())
                    } else {
                        core.difference(&cx.rep().le_set(cy.rep()).map_err(err)?)
                    };
                    let holds = if is_eq {
                        cx.coset_eq(&cy).map_err(err)?
                    } else {
                        cx.leq(&cy).map_err(err)?
                    };
                    let mut r = ok(a, Value::Bool(holds));
                    if holds {
                        r.certificate = Some(format!(
                            "fails only on the finite set {} of the core {}",
                            bad.abbreviated(LIST_LIMIT),
                            core.abbreviated(LIST_LIMIT)
                        ));
                    } else {
                        r.witness = Some(format!(
                            "fails on the infinite set {}",
                            bad.abbreviated(LIST_LIMIT)
                        ));
                    }
                    Ok(r)
                });
                let kind = if is_eq { "eq" } else { "leq" };
                (kind, vec![x.to_string(), y.to_string()], results, false)
            }
            Query::ZeroDivisors => {
                let results = self.per_algebra(|a| {
                    let (x, y) = a.zero_divisor_pair();
                    let product = x.mul(&y).map_err(err)?;
                    let verified = product.is_zero() && !x.is_zero() && !y.is_zero();
                    let mut r = ok(a, Value::Bool(verified));
                    r.witness = Some(format!("x = {}, y = {}", x.rep(), y.rep()));
                    let (left, right) = a.filter().core().split_alternate();
                    r.certificate = Some(format!(
                        "x*y = 0; x = 1 on {left} and y = 1 on {right}, both infinite parts of the core"
                    ));
                    Ok(r)
                });
                ("zerodivisors", vec![], results, false)
            }
            Query::Archimedean(u) => {
                let mut invalid = false;
                let results = self.per_algebra(|a| {
                    let cu = a.coset(self.elem(u, a.carrier())?).map_err(err)?;
                    let (x, cert) = a.archimedean_counterexample(&cu).map_err(err)?;
                    if !cert.validate(a, &cu, &x) {
                        invalid = true;
                        return Err(format!("certificate did not validate: {cert}"));
                    }
                    let mut r = ok(a, Value::Bool(false));
                    r.witness = Some(x.rep().to_string());
                    r.certificate = Some(cert.to_string());
                    Ok(r)
                });
                ("archimedean", vec![u.to_string()], results, invalid)
            }
            Query::Commutes { grid, samples } => {
                let n = samples.unwrap_or(DEFAULT_SAMPLES);
                let mut inputs = vec![grid.clone()];
                inputs.extend(samples.map(|s| s.to_string()));
                let results = match &self.grids[grid] {
                    Err(e) => vec![entry(grid.clone(), Err(failed_decl("grid", grid, e)))],
                    Ok(g) => commutes(g, n, seed),
                };
                ("commutes", inputs, results, false)
            }
            Query::Oracle(k) => {
                let name = format!("finite model n={k}");
                let result = FiniteModel::new(*k as usize).map_err(err).map(|m| {
                    let report = m.verify_correspondence();
                    ResultEntry {
                        algebra: name.clone(),
                        verdict: Value::Bool(report.passed()),
                        witness: None,
                        certificate: Some(report.to_string()),
                        error: None,
                    }
                });
                (
                    "oracle",
                    vec![k.to_string()],
                    vec![entry(name, result)],
                    false,
                )
            }
            Query::Ideal {
                generators,
                frechet,
            } => {
                let results = self.per_algebra(|a| {
                    let gens = generators
                        .iter()
                        .map(|g| self.elem(g, a.carrier()))
                        .collect::<Outcome<Vec<_>>>()?;
                    let ideal = FgIdeal::new(a.carrier(), gens, *frechet).map_err(err)?;
                    let zeros = ideal.common_zero_set();
                    Ok(match filter_of_ideal(&ideal).map_err(err)? {
                        IdealImage::Admissible(f) => {
                            let mut r = ok(a, Value::String(f.to_string()));
                            r.witness = Some(format!("common zero set {zeros}"));
                            r.certificate = Some(format!(
                                "the filter equals that of {a}: {}",
                                f.equivalent(a.filter())
                            ));
                            r
                        }
                        IdealImage::Degenerate(d) => {
                            let mut r = ok(a, Value::String("degenerate".to_string()));
                            r.witness = Some(format!("common zero set {zeros}"));
                            r.certificate = Some(d.to_string());
                            r
                        }
                    })
                });
                let mut inputs: Vec<String> = generators.iter().map(Expr::to_string).collect();
                if *frechet {
                    inputs.push("frechet".to_string());
                }
                ("ideal", inputs, results, false)
            }
            Query::Apply { hom, expr } => {
                let result = self.homs[hom]
                    .clone()
                    .map_err(|e| failed_decl("hom", hom, &e))
                    .and_then(|h| {
                        let source = h.source();
                        let x = source
                            .coset(self.elem(expr, source.carrier())?)
                            .map_err(err)?;
                        let y = h.apply(&x).map_err(err)?;
                        let mut r = ok(h.target(), Value::String(y.rep().to_string()));
                        r.certificate = Some(h.to_string());
                        Ok(r)
                    });
                let results = vec![entry(hom.clone(), result)];
                ("apply", vec![hom.clone(), expr.to_string()], results, false)
            }
        };
        failed |= results.iter().any(|r| r.error.is_some());
        if matches!(q, Query::Commutes { .. } | Query::Oracle(_)) {
            failed |= results.iter().any(|r| r.verdict == Value::Bool(false));
        }
        QueryReport {
            kind: kind.to_string(),
            inputs,
            results,
            failed,
        }
    }
}

fn commutes(grid: &Grid, samples: u64, seed: u64) -> Vec<ResultEntry> {
    let outcome = grid.check(|index, square| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let source = square.right_then_down.source();
        (0..samples)
            .map(|_| sample::coset(&mut rng, source))
            .collect()
    });
    let squares = match (outcome, grid.squares()) {
        (Ok(o), Ok(s)) => o.into_iter().zip(s).collect::<Vec<_>>(),
        (Err(e), _) | (_, Err(e)) => return vec![entry("grid".to_string(), Err(err(e)))],
    };
    squares
        .into_iter()
        .map(|(o, sq)| ResultEntry {
            algebra: format!(
                "square ({},{}) from {}",
                o.row,
                o.col,
                sq.right_then_down.source()
            ),
            verdict: Value::Bool(o.commutes),
            witness: None,
            certificate: Some(format!(
                "{} samples {} along {} and along {}",
                o.samples,
                if o.commutes {
                    "agree"
                } else {
                    "do not all agree"
                },
                sq.right_then_down,
                sq.down_then_right
            )),
            error: None,
        })
        .collect()
}
