//! Propositional formulas and contract literals.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula := or ("->" formula)?        right-associative
//! or      := and ("|" and)*            left-associative
//! and     := unary ("&" unary)*        left-associative
//! unary   := "!" unary | atom
//! atom    := "0" | "1" | ident | "(" formula ")"
//! ```
//!
//! Contract expressions put contract literals `(A, G)` under `/\`, `\/`,
//! `->`, `!` and `cl`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::boolalg::{free_boolean_algebra, minterm_name, variable_mask, BoolAlg};
use crate::contract::Contract;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Formula::Not(x) => x.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            Formula::Const(_) | Formula::Var(_) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Const(b) => f.write_str(if *b { "1" } else { "0" })?,
            Formula::Var(v) => f.write_str(v)?,
            Formula::Not(x) => {
                f.write_str("!")?;
                x.write_at(f, 4)?;
            }
            Formula::And(l, r) => {
                l.write_at(f, 3)?;
                f.write_str(" & ")?;
                r.write_at(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" | ")?;
                r.write_at(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" -> ")?;
                r.write_at(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Canonical form with minimal parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Not,
    And,
    Or,
    Arrow,
    Wedge,
    Vee,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Zero => f.write_str("\"0\""),
            Tok::One => f.write_str("\"1\""),
            Tok::Not => f.write_str("\"!\""),
            Tok::And => f.write_str("\"&\""),
            Tok::Or => f.write_str("\"|\""),
            Tok::Arrow => f.write_str("\"->\""),
            Tok::Wedge => f.write_str("\"/\\\""),
            Tok::Vee => f.write_str("\"\\/\""),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::Comma => f.write_str("\",\""),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            _ if two == Some(b"->") => Tok::Arrow,
            _ if two == Some(b"/\\") => Tok::Wedge,
            _ if two == Some(b"\\/") => Tok::Vee,
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(Error::UnknownToken {
                    pos: i,
                    token: ch.to_string(),
                });
            }
        };
        i += match tok {
            Tok::Arrow | Tok::Wedge | Tok::Vee => 2,
            _ => 1,
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        let (pos, tok) = &self.toks[self.pos];
        Error::SyntaxError {
            pos: *pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Formula::Const(false))
            }
            Tok::One => {
                self.bump();
                Ok(Formula::Const(true))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(f)
            }
            _ => Err(self.error(&["\"0\"", "\"1\"", "identifier", "\"!\"", "\"(\""])),
        }
    }

    fn literal(&mut self) -> Result<(Formula, Formula)> {
        self.expect(Tok::LParen, "\"(\"")?;
        let a = self.formula()?;
        self.expect(Tok::Comma, "\",\"")?;
        let g = self.formula()?;
        self.expect(Tok::RParen, "\")\"")?;
        Ok((a, g))
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn contract_expr(&mut self) -> Result<ContractExpr> {
        let lhs = self.contract_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.contract_expr()?;
            return Ok(ContractExpr::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn contract_or(&mut self) -> Result<ContractExpr> {
        let mut lhs = self.contract_and()?;
        while *self.peek() == Tok::Vee {
            self.bump();
            lhs = ContractExpr::Join(Box::new(lhs), Box::new(self.contract_and()?));
        }
        Ok(lhs)
    }

    fn contract_and(&mut self) -> Result<ContractExpr> {
        let mut lhs = self.contract_unary()?;
        while *self.peek() == Tok::Wedge {
            self.bump();
            lhs = ContractExpr::Meet(Box::new(lhs), Box::new(self.contract_unary()?));
        }
        Ok(lhs)
    }

    fn contract_unary(&mut self) -> Result<ContractExpr> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(ContractExpr::Neg(Box::new(self.contract_unary()?)))
            }
            Tok::Ident(k) if k == "cl" => {
                self.bump();
                Ok(ContractExpr::Cl(Box::new(self.contract_unary()?)))
            }
            Tok::LParen => {
                let save = self.pos;
                match self.literal() {
                    Ok((a, g)) => Ok(ContractExpr::Literal(a, g)),
                    Err(literal_err) => {
                        self.pos = save + 1;
                        match self
                            .contract_expr()
                            .and_then(|e| self.expect(Tok::RParen, "\")\"").map(|_| e))
                        {
                            Ok(e) => Ok(e),
                            Err(_) => Err(literal_err),
                        }
                    }
                }
            }
            _ => Err(self.error(&["\"(\"", "\"!\"", "\"cl\""])),
        }
    }
}

/// Parse a formula.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Ordered variables and their free Boolean algebra.
#[derive(Clone, Debug)]
pub struct VarContext {
    vars: Vec<String>,
    alg: Arc<BoolAlg>,
}

impl VarContext {
    pub fn new(vars: &[impl AsRef<str>]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let alg = Arc::new(free_boolean_algebra(&vars)?);
        Ok(VarContext { vars, alg })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn algebra(&self) -> &Arc<BoolAlg> {
        &self.alg
    }

    pub fn var_mask(&self, name: &str) -> Result<u32> {
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))?;
        Ok(variable_mask(self.vars.len(), i))
    }

    /// Disjunction of minterms; `0` and `1` for the bounds.
    pub fn mask_to_formula(&self, mask: u32) -> String {
        if mask == 0 {
            return "0".into();
        }
        if mask == self.alg.top() {
            return "1".into();
        }
        (0..self.alg.atoms())
            .filter(|t| mask >> t & 1 == 1)
            .map(|t| minterm_name(&self.vars, t))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// `(A: <formula>, G: <formula>)`.
    pub fn render_contract(&self, c: Contract) -> String {
        format!("(A: {}, G: {})", self.mask_to_formula(c.a), self.mask_to_formula(c.g))
    }
}

/// Truth-table semantics: the mask of satisfying minterms.
pub fn eval(f: &Formula, ctx: &VarContext) -> Result<u32> {
    let b = ctx.algebra();
    Ok(match f {
        Formula::Const(false) => b.bot(),
        Formula::Const(true) => b.top(),
        Formula::Var(v) => ctx.var_mask(v)?,
        Formula::Not(x) => b.neg(eval(x, ctx)?),
        Formula::And(l, r) => b.meet(eval(l, ctx)?, eval(r, ctx)?),
        Formula::Or(l, r) => b.join(eval(l, ctx)?, eval(r, ctx)?),
        Formula::Implies(l, r) => b.implies(eval(l, ctx)?, eval(r, ctx)?),
    })
}

fn contract_from(a: &Formula, g: &Formula, ctx: &VarContext, saturate: bool) -> Result<Contract> {
    let b = ctx.algebra();
    let a = eval(a, ctx)?;
    let mut g = eval(g, ctx)?;
    if saturate {
        g |= b.neg(a);
    }
    Contract::new(b, a, g)
}

/// Parse `(<formula>, <formula>)` into a contract of the context's algebra.
///
/// With `saturate`, the guarantee is widened to `g | !a` first.
pub fn parse_contract(text: &str, ctx: &VarContext, saturate: bool) -> Result<Contract> {
    let mut p = Parser::new(text)?;
    let (a, g) = p.literal()?;
    p.finish()?;
    contract_from(&a, &g, ctx, saturate)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractExpr {
    Literal(Formula, Formula),
    Neg(Box<ContractExpr>),
    Cl(Box<ContractExpr>),
    Meet(Box<ContractExpr>, Box<ContractExpr>),
    Join(Box<ContractExpr>, Box<ContractExpr>),
    Implies(Box<ContractExpr>, Box<ContractExpr>),
}

impl ContractExpr {
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            ContractExpr::Literal(a, g) => {
                a.collect_vars(out);
                g.collect_vars(out);
            }
            ContractExpr::Neg(x) | ContractExpr::Cl(x) => x.collect_vars(out),
            ContractExpr::Meet(l, r) | ContractExpr::Join(l, r) | ContractExpr::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn eval(&self, ctx: &VarContext, saturate: bool) -> Result<Contract> {
        let b = ctx.algebra();
        Ok(match self {
            ContractExpr::Literal(a, g) => contract_from(a, g, ctx, saturate)?,
            ContractExpr::Neg(x) => x.eval(ctx, saturate)?.neg(b),
            ContractExpr::Cl(x) => x.eval(ctx, saturate)?.cl(b),
            ContractExpr::Meet(l, r) => l.eval(ctx, saturate)?.meet(r.eval(ctx, saturate)?),
            ContractExpr::Join(l, r) => l.eval(ctx, saturate)?.join(r.eval(ctx, saturate)?),
            ContractExpr::Implies(l, r) => l.eval(ctx, saturate)?.implies(r.eval(ctx, saturate)?, b),
        })
    }
}

/// Parse a contract expression such as `(1, p) /\ (1, q)` or `cl (1, 1)`.
pub fn parse_contract_expr(text: &str) -> Result<ContractExpr> {
    let mut p = Parser::new(text)?;
    let e = p.contract_expr()?;
    p.finish()?;
    Ok(e)
}
