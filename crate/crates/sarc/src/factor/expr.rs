//! Integer expressions over group orders, used by the table data.
//!
//! Grammar: `+ - * / ^`, parentheses, integer literals, parameter names and
//! calls such as `PSp(2*m, q^b)`. Division must be exact.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groups::{classical_order, Family};
use crate::numth::factorial;

pub type Env = BTreeMap<String, BigInt>;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize),
    Call(String, Vec<Expr>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp), at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr::Num(text.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string();
                if self.peek() != Some(b'(') {
                    return Ok(Expr::Var(name, start));
                }
                self.pos += 1;
                let mut args = vec![self.expr()?];
                while self.eat(b',') {
                    args.push(self.expr()?);
                }
                if !self.eat(b')') {
                    return self.err("expected ',' or ')'");
                }
                Ok(Expr::Call(name, args, start))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn small(v: &BigInt, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::InvalidArgument(format!("{what} out of range: {v}")))
}

fn family_call(name: &str) -> Option<Family> {
    Some(match name {
        "GO" => Family::GO(0),
        "SO" => Family::SO(0),
        "Omega" => Family::Omega(0),
        "GOP" => Family::GO(1),
        "GOM" => Family::GO(-1),
        "SOP" => Family::SO(1),
        "SOM" => Family::SO(-1),
        "OmegaP" => Family::Omega(1),
        "OmegaM" => Family::Omega(-1),
        "POmegaP" => Family::POmega(1),
        "POmegaM" => Family::POmega(-1),
        "G2" | "F4" | "Sz" | "Ree" => return None,
        other => other.parse().ok()?,
    })
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<BigInt> {
        match self {
            Expr::Num(n) => Ok(n.clone()),
            Expr::Var(v, at) => env
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Syntax { offset: *at, msg: format!("unknown parameter {v:?}") }),
            Expr::Neg(e) => Ok(-e.eval(env)?),
            Expr::Bin(op, a, b, at) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match op {
                    '+' => Ok(x + y),
                    '-' => Ok(x - y),
                    '*' => Ok(x * y),
                    '/' => {
                        if y.is_zero() || !(&x % &y).is_zero() {
                            return Err(Error::InvalidArgument(format!("inexact division {x}/{y} at offset {at}")));
                        }
                        Ok(x / y)
                    }
                    _ => {
                        let e = small(&y, "exponent")?;
                        Ok(num_traits::pow(x, e as usize))
                    }
                }
            }
            Expr::Call(name, args, at) => {
                let vals = args.iter().map(|a| a.eval(env)).collect::<Result<Vec<_>>>()?;
                call(name, &vals).map_err(|e| match e {
                    Error::InvalidArgument(m) => Error::InvalidArgument(format!("{name} at offset {at}: {m}")),
                    other => other,
                })
            }
        }
    }

    /// The expression with parameters replaced by values and arguments
    /// evaluated, so that equal groups print equally: `PSp(2*a,q^b)` with
    /// a = 1, q = 3, b = 3 becomes `PSp(2,27)`.
    pub fn instantiate(&self, env: &Env) -> Result<String> {
        match self {
            Expr::Call(name, args, _) => {
                let vals = args.iter().map(|a| a.eval(env).map(|v| v.to_string())).collect::<Result<Vec<_>>>()?;
                Ok(format!("{name}({})", vals.join(",")))
            }
            other => Ok(other.eval(env)?.to_string()),
        }
    }
}

fn arity(name: &str, vals: &[BigInt], n: usize) -> Result<()> {
    if vals.len() == n {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} takes {n} argument(s), got {}", vals.len())))
    }
}

fn pos(v: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v)
}

fn call(name: &str, vals: &[BigInt]) -> Result<BigInt> {
    let one_arg = |fam: Family| -> Result<BigInt> {
        arity(name, vals, 1)?;
        Ok(pos(classical_order(fam, 0, small(&vals[0], "q")?)?.value))
    };
    match name {
        "G2" => one_arg(Family::G2),
        "F4" => one_arg(Family::F4),
        "Sz" => one_arg(Family::Sz),
        "Ree" => one_arg(Family::Ree),
        // derived subgroups, which differ only for the smallest field
        "G2d" => {
            arity(name, vals, 1)?;
            if vals[0] == BigInt::from(2) {
                Ok(BigInt::from(6048))
            } else {
                one_arg(Family::G2)
            }
        }
        "Reed" => {
            arity(name, vals, 1)?;
            if vals[0] == BigInt::from(3) {
                Ok(BigInt::from(504))
            } else {
                one_arg(Family::Ree)
            }
        }
        "A" | "S" => {
            arity(name, vals, 1)?;
            let f = pos(factorial(small(&vals[0], "degree")?));
            Ok(if name == "A" && vals[0] > BigInt::one() { f / 2 } else { f })
        }
        "gcd" => {
            arity(name, vals, 2)?;
            Ok(vals[0].gcd(&vals[1]))
        }
        "prodpm" => {
            // ∏_{i=1}^{k} (q^i + s)
            arity(name, vals, 3)?;
            let k = small(&vals[0], "k")?;
            Ok((1..=k).fold(BigInt::one(), |acc, i| acc * (num_traits::pow(vals[1].clone(), i as usize) + &vals[2])))
        }
        _ => {
            let fam = family_call(name).ok_or_else(|| Error::InvalidArgument(format!("unknown family {name:?}")))?;
            arity(name, vals, 2)?;
            if vals.iter().any(|v| v.is_negative()) {
                return Err(Error::InvalidArgument("negative argument".into()));
            }
            let dim = small(&vals[0], "dimension")? as u32;
            Ok(pos(classical_order(fam, dim, small(&vals[1], "q")?)?.value))
        }
    }
}

/// Evaluates `lhs OP rhs` with OP one of `== != <= >= < >`.
pub fn eval_condition(text: &str, env: &Env) -> Result<bool> {
    for op in ["==", "!=", "<=", ">=", "<", ">"] {
        if let Some(i) = text.find(op) {
            let l = parse_expr(&text[..i])?.eval(env)?;
            let r = parse_expr(&text[i + op.len()..])?.eval(env)?;
            return Ok(match op {
                "==" => l == r,
                "!=" => l != r,
                "<=" => l <= r,
                ">=" => l >= r,
                "<" => l < r,
                _ => l > r,
            });
        }
    }
    Err(Error::Syntax { offset: 0, msg: format!("no comparison in condition {text:?}") })
}

pub fn eval_str(text: &str, env: &Env) -> Result<BigInt> {
    parse_expr(text)?.eval(env)
}
