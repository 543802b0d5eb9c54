//! Text fixtures of the form `<algebra> <operation> <expr> = <rhs>`.
//!
//! ```text
//! D4 decompose ext3([0001]) = [1010]
//! B4 dim tensor([0101],[0001]) = [0002] + [0010] + ...
//! B4 invariants tensor([0001],ext3([0001])) = 0
//! B4 weyl_dim [0101] = 432
//! ```
//!
//! Expressions: Dynkin labels, `V` (vector module), `ext2(e)`, `ext3(e)`,
//! `tensor(e, e)`. A right-hand side is a `+`-separated list of labels, each
//! optionally prefixed by `k*`, or `0` for the zero module.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::{
    decompose, exterior_power_character, irreducible_character, tensor_character, weyl_alternation,
    weyl_dim, AlgebraType, Character, HighestWeight,
};
use crate::error::{Error, Result};

/// The fixture set shipped with the library.
pub const DEFAULT_FIXTURES: &str = include_str!("../../fixtures/decompositions.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Irrep(HighestWeight),
    Vector,
    Ext(u32, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Irrep(hw) => write!(f, "{hw}"),
            Expr::Vector => write!(f, "V"),
            Expr::Ext(k, e) => write!(f, "ext{k}({e})"),
            Expr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
        }
    }
}

impl Expr {
    pub fn character(&self, t: AlgebraType) -> Result<Character> {
        match self {
            Expr::Irrep(hw) => irreducible_character(t, hw),
            Expr::Vector => Ok(Character::vector(t)),
            Expr::Ext(k, e) => exterior_power_character(&e.character(t)?, *k),
            Expr::Tensor(a, b) => tensor_character(&a.character(t)?, &b.character(t)?),
        }
    }

    /// Dimension without building characters.
    pub fn dim(&self, t: AlgebraType) -> Result<u64> {
        Ok(match self {
            Expr::Irrep(hw) => weyl_dim(t, hw)?,
            Expr::Vector => (2 * t.rank() + (t.series() == super::Series::B) as usize) as u64,
            Expr::Ext(k, e) => binomial(e.dim(t)?, *k as u64),
            Expr::Tensor(a, b) => a.dim(t)? * b.dim(t)?,
        })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> std::result::Result<(), String> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(format!("expected `{tok}` at `{}`", &self.s[self.pos..]))
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, String> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        if rest.starts_with('[') {
            let end = rest.find(']').ok_or("unterminated label")? + 1;
            self.pos += end;
            return rest[..end]
                .parse()
                .map(Expr::Irrep)
                .map_err(|e: Error| e.to_string());
        }
        if self.eat("V") {
            return Ok(Expr::Vector);
        }
        for (name, k) in [("ext2", 2), ("ext3", 3)] {
            if self.eat(name) {
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(")")?;
                return Ok(Expr::Ext(k, Box::new(e)));
            }
        }
        if self.eat("tensor") {
            self.expect("(")?;
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Tensor(Box::new(a), Box::new(b)));
        }
        Err(format!("unknown expression `{rest}`"))
    }
}

pub fn parse_expr(s: &str) -> std::result::Result<Expr, String> {
    let mut c = Cursor { s, pos: 0 };
    let e = c.expr()?;
    c.skip_ws();
    if c.pos != s.len() {
        return Err(format!("trailing input `{}`", &s[c.pos..]));
    }
    Ok(e)
}

fn parse_sum(s: &str) -> std::result::Result<Vec<(HighestWeight, u64)>, String> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    s.split('+')
        .map(|term| {
            let term = term.trim();
            let (k, label) = match term.split_once('*') {
                Some((k, l)) => (k.trim().parse::<u64>().map_err(|e| e.to_string())?, l.trim()),
                None => (1, term),
            };
            let hw: HighestWeight = label.parse().map_err(|e: Error| e.to_string())?;
            Ok((hw, k))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureCheck {
    /// Full decomposition into irreducibles.
    Decompose(Vec<(HighestWeight, u64)>),
    /// Dimensions of the listed summands add up to the dimension of the expression.
    Dim(Vec<(HighestWeight, u64)>),
    /// Multiplicity of the trivial module, by Weyl alternation.
    Invariants(i64),
    /// Weyl dimension of an irreducible.
    WeylDim(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub line: usize,
    pub source: String,
    pub algebra: AlgebraType,
    pub expr: Expr,
    pub check: FixtureCheck,
}

/// Parses fixture text; `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (lhs, rhs) = content
            .split_once('=')
            .ok_or_else(|| err("missing `=`".into()))?;
        let mut words = lhs.trim().splitn(3, ' ');
        let algebra: AlgebraType = words
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|e: Error| err(e.to_string()))?;
        let op = words.next().ok_or_else(|| err("missing operation".into()))?;
        let expr = parse_expr(words.next().ok_or_else(|| err("missing expression".into()))?.trim())
            .map_err(err)?;
        let check = match op {
            "decompose" => FixtureCheck::Decompose(parse_sum(rhs).map_err(err)?),
            "dim" => FixtureCheck::Dim(parse_sum(rhs).map_err(err)?),
            "invariants" => FixtureCheck::Invariants(
                rhs.trim().parse().map_err(|_| err(format!("bad integer `{}`", rhs.trim())))?,
            ),
            "weyl_dim" => FixtureCheck::WeylDim(
                rhs.trim().parse().map_err(|_| err(format!("bad integer `{}`", rhs.trim())))?,
            ),
            other => return Err(err(format!("unknown operation `{other}`"))),
        };
        out.push(Fixture {
            line,
            source: content.to_string(),
            algebra,
            expr,
            check,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub fixture: String,
    pub computed: String,
    /// Total dimension of the evaluated expression.
    pub dim: u64,
    /// Weyl group order, for alternation checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_group_order: Option<u64>,
    pub passed: bool,
    pub wall_ms: u128,
}

fn fmt_sum(terms: &[(HighestWeight, u64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(hw, k)| if *k == 1 { hw.to_string() } else { format!("{k}*{hw}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn normalized(terms: &[(HighestWeight, u64)]) -> Vec<(HighestWeight, u64)> {
    let mut map = std::collections::BTreeMap::new();
    for (hw, k) in terms {
        *map.entry(hw.clone()).or_insert(0) += k;
    }
    map.into_iter().collect()
}

fn sum_dims(t: AlgebraType, terms: &[(HighestWeight, u64)]) -> Result<u64> {
    terms.iter().try_fold(0, |acc, (hw, k)| Ok(acc + k * weyl_dim(t, hw)?))
}

pub fn evaluate_fixture(f: &Fixture) -> Result<FixtureOutcome> {
    let start = Instant::now();
    let t = f.algebra;
    let dim = f.expr.dim(t)?;
    let (computed, passed, weyl_group_order) = match &f.check {
        FixtureCheck::Decompose(expected) => {
            let c = f.expr.character(t)?;
            let got = decompose(&c)?;
            let accounted = sum_dims(t, &got)? == c.dim() as u64 && c.dim() as u64 == dim;
            let mut sorted = got.clone();
            sorted.sort();
            let ok = accounted && normalized(&got) == normalized(expected);
            (fmt_sum(&sorted), ok, None)
        }
        FixtureCheck::Dim(expected) => {
            let listed = sum_dims(t, expected)?;
            (format!("{dim} = {listed}"), listed == dim, None)
        }
        FixtureCheck::Invariants(expected) => {
            let c = f.expr.character(t)?;
            let alt = weyl_alternation(&c);
            let ok = alt.multiplicity == *expected && alt.group_order == t.weyl_group_order();
            (alt.multiplicity.to_string(), ok, Some(alt.group_order))
        }
        FixtureCheck::WeylDim(expected) => (dim.to_string(), dim == *expected, None),
    };
    Ok(FixtureOutcome {
        fixture: f.source.clone(),
        computed,
        dim,
        weyl_group_order,
        passed,
        wall_ms: start.elapsed().as_millis(),
    })
}
