//! Parser for scalar and polynomial expressions.
//!
//! Grammar: signed sums of products of powers. `t` is the uniformizer and
//! may carry rational exponents (`t^1/2`, `t^(-3/2)`); variables carry
//! integer exponents. Division is allowed by monomials only.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::LatticeVec;
use crate::valfield::{PuiseuxScalar, Rational};

type Exps = BTreeMap<usize, i64>;

#[derive(Clone, Debug)]
struct Expr {
    terms: Vec<(Exps, PuiseuxScalar)>,
}

impl Expr {
    fn scalar(c: PuiseuxScalar) -> Expr {
        Expr {
            terms: vec![(Exps::new(), c)],
        }
    }

    fn normalize(self) -> Expr {
        let mut m: BTreeMap<Vec<(usize, i64)>, PuiseuxScalar> = BTreeMap::new();
        for (e, c) in self.terms {
            let key: Vec<(usize, i64)> = e.into_iter().filter(|(_, k)| *k != 0).collect();
            let entry = m.entry(key).or_insert_with(PuiseuxScalar::zero);
            *entry = &*entry + &c;
        }
        Expr {
            terms: m
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.into_iter().collect(), c))
                .collect(),
        }
    }

    fn add(self, other: Expr) -> Expr {
        let mut terms = self.terms;
        terms.extend(other.terms);
        Expr { terms }.normalize()
    }

    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }

    fn mul(&self, other: &Expr) -> Expr {
        let mut terms = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                for (k, v) in e2 {
                    *e.entry(*k).or_insert(0) += v;
                }
                terms.push((e, c1 * c2));
            }
        }
        Expr { terms }.normalize()
    }

    fn as_monomial(&self) -> Option<(&Exps, &PuiseuxScalar)> {
        match self.terms.as_slice() {
            [(e, c)] if c.is_monomial() => Some((e, c)),
            _ => None,
        }
    }

    fn inverse(&self) -> Option<Expr> {
        let (e, c) = self.as_monomial()?;
        let inv = c.inverse_monomial().ok()?;
        Some(Expr {
            terms: vec![(e.iter().map(|(k, v)| (*k, -v)).collect(), inv)],
        })
    }

    fn is_pure_scalar(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_empty())
    }
}

/// Maps an identifier to a variable index.
pub type Resolver<'a> = dyn Fn(&str) -> Option<usize> + 'a;

/// `x, y, z` map to 0, 1, 2 and `xN` to `N - 1`.
pub fn default_resolver(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            let n: usize = digits.parse().ok()?;
            if n == 0 {
                None
            } else {
                Some(n - 1)
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    resolve: &'a Resolver<'a>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: 1,
            col: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.chars[start..self.pos].iter().collect())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.add(t.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(')
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let f = self.factor()?;
                let Some(inv) = f.inverse() else {
                    self.pos = at;
                    return self.err("division is only allowed by a nonzero monomial");
                };
                acc = acc.mul(&inv);
            } else if self.starts_atom() {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        let paren = self.eat('(');
        self.skip_ws();
        let mut sign = 1i64;
        if self.eat('-') {
            sign = -1;
        } else {
            self.eat('+');
        }
        self.skip_ws();
        let Some(num) = self.digits() else {
            return self.err("expected an exponent");
        };
        let mut q = Rational::from_integer(num.parse::<num_bigint::BigInt>().unwrap());
        // `/` belongs to the exponent only when a digit follows directly
        if self.chars.get(self.pos) == Some(&'/')
            && self
                .chars
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            let den = self.digits().unwrap();
            let d: num_bigint::BigInt = den.parse().unwrap();
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            q /= Rational::from_integer(d);
        }
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(q * Rational::from_integer(sign.into()))
    }

    fn factor(&mut self) -> Result<Expr> {
        let start = self.pos;
        let (base, is_t) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_t {
            return Ok(Expr::scalar(PuiseuxScalar::monomial(Rational::one(), e)));
        }
        if !e.is_integer() {
            self.pos = start;
            return self.err("only t may carry a fractional exponent");
        }
        let k: i64 = match i64::try_from(e.to_integer()) {
            Ok(k) if k.abs() <= 4096 => k,
            _ => return self.err("exponent too large"),
        };
        let b = if k < 0 {
            match base.inverse() {
                Some(inv) => inv,
                None => {
                    self.pos = start;
                    return self.err("negative power of a non-monomial");
                }
            }
        } else {
            base
        };
        let mut acc = Expr::scalar(PuiseuxScalar::one());
        for _ in 0..k.abs() {
            acc = acc.mul(&b);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<(Expr, bool)> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok((e, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: num_bigint::BigInt = d.parse().unwrap();
                Ok((
                    Expr::scalar(PuiseuxScalar::constant(Rational::from_integer(n))),
                    false,
                ))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "t" {
                    return Ok((Expr::scalar(PuiseuxScalar::t()), true));
                }
                match (self.resolve)(&name) {
                    Some(i) => Ok((
                        Expr {
                            terms: vec![(Exps::from([(i, 1)]), PuiseuxScalar::one())],
                        },
                        false,
                    )),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable '{name}'"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(s: &str, resolve: &Resolver) -> Result<Expr> {
    let mut p = Parser {
        chars: s.chars().collect(),
        pos: 0,
        resolve,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err(format!("unexpected '{}'", p.chars[p.pos]));
    }
    Ok(e)
}

/// Parses a scalar such as `3 + t^1/2 - 1/2*t^2`.
pub fn parse_scalar(s: &str) -> Result<PuiseuxScalar> {
    let e = parse_expr(s, &|_| None)?;
    debug_assert!(e.is_pure_scalar());
    Ok(e.terms
        .into_iter()
        .fold(PuiseuxScalar::zero(), |acc, (_, c)| &acc + &c))
}

/// Parses a Laurent polynomial in `x, y, z` or `x1, …, xn`. The rank is
/// inferred from the largest variable used unless given.
pub fn parse_poly(s: &str, rank: Option<usize>) -> Result<LaurentPoly> {
    let e = parse_expr(s, &default_resolver)?;
    let used = e
        .terms
        .iter()
        .filter_map(|(ex, _)| ex.keys().max().copied())
        .max()
        .map(|m| m + 1)
        .unwrap_or(0);
    let used = used.max(rank_hint(s));
    let rank = match rank {
        Some(r) if r < used => {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("variable index exceeds rank {r}"),
            });
        }
        Some(r) => r,
        None => used.max(1),
    };
    Ok(to_poly(e, rank))
}

/// Largest variable index mentioned in the text, even in cancelled terms.
fn rank_hint(s: &str) -> usize {
    let mut best = 0;
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_alphabetic() && (i == 0 || !chars[i - 1].is_ascii_alphanumeric()) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if let Some(k) = default_resolver(&name) {
                best = best.max(k + 1);
            }
        } else {
            i += 1;
        }
    }
    best
}

/// Parses a polynomial over named variables (rank = number of names).
pub fn parse_poly_named(s: &str, names: &[String]) -> Result<LaurentPoly> {
    let resolve = |n: &str| names.iter().position(|m| m == n);
    let e = parse_expr(s, &resolve)?;
    Ok(to_poly(e, names.len()))
}

fn to_poly(e: Expr, rank: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        rank,
        e.terms.into_iter().map(|(ex, c)| {
            let mut v = vec![0i64; rank];
            for (k, x) in ex {
                v[k] = x;
            }
            (LatticeVec(v), c)
        }),
    )
}

/// Shifts the line number of a parse error produced on a single line.
pub fn at_line(e: Error, line: usize, col_offset: usize) -> Error {
    match e {
        Error::Parse { col, msg, .. } => Error::Parse {
            line,
            col: col + col_offset,
            msg,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{int, rat};

    #[test]
    fn scalars() {
        let a = parse_scalar("3 + t^1/2 + t^2").unwrap();
        assert_eq!(a.num_terms(), 3);
        assert_eq!(a.to_string(), "3 + t^1/2 + t^2");
        let b = parse_scalar("-2*t^-1/3 - 1/2*t").unwrap();
        assert_eq!(b.coefficient(&rat(-1, 3)), int(-2));
        assert_eq!(b.coefficient(&int(1)), rat(-1, 2));
        assert_eq!(b.to_string(), "-2*t^-1/3 - 1/2*t");
        assert_eq!(
            parse_scalar("(1 + t)^2").unwrap().to_string(),
            "1 + 2*t + t^2"
        );
        assert_eq!(parse_scalar("t^(-3/2)").unwrap().to_string(), "t^-3/2");
    }

    #[test]
    fn polynomials() {
        let f = parse_poly("x + y + 1", None).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.num_terms(), 3);
        let g = parse_poly("x/y + 1", None).unwrap();
        assert!(g.exponents().contains(&LatticeVec(vec![1, -1])));
        let h = parse_poly("2x^2 y - t x3", None).unwrap();
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn errors_carry_columns() {
        match parse_poly("x + (y", None) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x/(x+1)", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("x^1/2", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_scalar("x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn named_variables() {
        let names: Vec<String> = vec!["s".into(), "u".into()];
        let f = parse_poly_named("s*u - 1", &names).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.display_with(&names), "s*u - 1");
    }
}
