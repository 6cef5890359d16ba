//! Recursive-descent parser for group expressions.
//!
//! ```text
//! expr  := 'wr' '(' expr ',' INT ')'
//!        | 'x' '(' expr { ',' expr } ')'
//!        | NAME '(' INT { ',' INT } ')'
//! NAME  := S | A | C | D | MC | Sp | PSp | GO- | PSL2 | PGL2
//! ```
//!
//! Spaces between tokens are ignored. Error offsets are byte offsets into
//! the input.

use num_integer::gcd;
use sarc::error::{Error, Result};
use sarc::groups::GroupSpec;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, offset: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => self.fail(self.pos, format!("expected '{}'", c as char)),
            None => self.fail(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn name(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return self.fail(start, "expected a group name");
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        if &self.src[start..self.pos] == "GO" && self.peek() == Some(b'-') {
            self.pos += 1;
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn int(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(start, "expected an integer");
        }
        match self.src[start..self.pos].parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => self.fail(start, "integer too large"),
        }
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let (at, name) = self.name()?;
        self.expect(b'(')?;
        let spec = match name {
            "wr" => {
                let a = self.expr()?;
                self.expect(b',')?;
                let (k_at, k) = self.int()?;
                if k == 0 {
                    return Err(out_of_range(k_at, "wreath needs k ≥ 1"));
                }
                GroupSpec::Wreath(Box::new(a), k)
            }
            "x" => {
                let mut parts = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    if self.peek() != Some(b',') {
                        break;
                    }
                    self.pos += 1;
                    parts.push(self.expr()?);
                }
                GroupSpec::DirectProduct(parts)
            }
            _ => {
                let arity = match name {
                    "S" | "A" | "C" | "D" | "PSL2" | "PGL2" => 1,
                    "Sp" | "PSp" | "GO-" => 2,
                    "MC" => 3,
                    _ => return self.fail(at, format!("unknown group name {name:?}")),
                };
                let mut args = Vec::with_capacity(arity);
                for i in 0..arity {
                    if i > 0 {
                        self.expect(b',')?;
                    }
                    args.push(self.int()?);
                }
                leaf(name, &args, at)?
            }
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

fn out_of_range(offset: usize, msg: &str) -> Error {
    Error::InvalidArgument(format!("at offset {offset}: {msg}"))
}

fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

fn leaf(name: &str, args: &[(usize, u32)], at: usize) -> Result<GroupSpec> {
    let v = |i: usize| args[i].1;
    let bad = |i: usize, msg: &str| Err(out_of_range(args[i].0, msg));
    match name {
        "S" | "A" | "C" if v(0) == 0 => bad(0, "degree must be at least 1"),
        "S" => Ok(GroupSpec::Sym(v(0))),
        "A" => Ok(GroupSpec::Alt(v(0))),
        "C" => Ok(GroupSpec::Cyc(v(0))),
        "D" if v(0) < 3 => bad(0, "D(n) needs n ≥ 3"),
        "D" => Ok(GroupSpec::Dih(v(0))),
        "PSL2" | "PGL2" if !is_prime_power(v(0)) => bad(0, "q must be a prime power"),
        "PSL2" => Ok(GroupSpec::PSL2(v(0))),
        "PGL2" => Ok(GroupSpec::PGL2(v(0))),
        "Sp" | "PSp" | "GO-" if v(0) < 2 || v(0) % 2 == 1 => bad(0, "dimension must be even and at least 2"),
        "Sp" | "PSp" | "GO-" if !is_prime_power(v(1)) => bad(1, "q must be a prime power"),
        "GO-" if v(1) % 2 == 0 => bad(1, "GO- needs q odd"),
        "Sp" => Ok(GroupSpec::Sp { dim: v(0), q: v(1) }),
        "PSp" => Ok(GroupSpec::PSp { dim: v(0), q: v(1) }),
        "GO-" => Ok(GroupSpec::GOMinus { dim: v(0), q: v(1) }),
        "MC" => {
            let (n, r, m) = (v(0) as u64, v(1) as u64, v(2) as u64);
            if n < 2 {
                return bad(0, "MC needs n ≥ 2");
            }
            if m == 0 {
                return bad(2, "MC needs m ≥ 1");
            }
            if gcd(r, n) != 1 {
                return bad(1, "r must be a unit mod n");
            }
            let rm = (0..m).fold(1u64, |acc, _| acc * r % n);
            if rm != 1 {
                return bad(2, "r^m must be 1 mod n");
            }
            Ok(GroupSpec::Metacyclic { n: v(0), r: v(1), m: v(2) })
        }
        _ => Err(Error::Syntax { offset: at, msg: format!("unknown group name {name:?}") }),
    }
}

/// Parses a whole expression; trailing input is an error.
pub fn parse_group_expr(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail(p.pos, "unexpected trailing input");
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested() {
        let s = parse_group_expr("wr(Sp(2,3),4)").unwrap();
        assert_eq!(s, GroupSpec::Wreath(Box::new(GroupSpec::Sp { dim: 2, q: 3 }), 4));
        let s = parse_group_expr(" x( A(5) , C(6) ) ").unwrap();
        assert_eq!(s.to_string(), "x(A(5),C(6))");
        assert_eq!(parse_group_expr("GO-(4,3)").unwrap(), GroupSpec::GOMinus { dim: 4, q: 3 });
    }

    #[test]
    fn syntax_offsets() {
        let cases = [("wr(S(3)", 7), ("S 6)", 2), ("Q(3)", 0), ("S(3,4)", 3), ("S(6))", 4), ("MC(17,4)", 7), ("", 0)];
        for (text, at) in cases {
            match parse_group_expr(text) {
                Err(Error::Syntax { offset, .. }) => assert_eq!(offset, at, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn range_errors() {
        for text in ["MC(17,3,4)", "Sp(3,3)", "PSL2(6)", "GO-(4,4)", "D(2)", "wr(S(2),0)", "S(0)"] {
            assert!(matches!(parse_group_expr(text), Err(Error::InvalidArgument(_))), "{text}");
        }
    }
}
