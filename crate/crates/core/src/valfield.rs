//! Exact model of the valued field: finite Puiseux polynomials in one
//! uniformizer `t` with rational exponents and rational coefficients.
//!
//! The valuation of a nonzero element is its smallest exponent. In
//! [`ValMode::Trivial`] only constants exist and every nonzero element has
//! valuation zero, which models a field carrying the trivial valuation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals; elements of the value group and residue coefficients.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 1,
        col: 1,
        msg: format!("invalid rational literal `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Rational to f64 without overflow for moderately sized inputs.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// The extended value line: rationals together with a maximal element `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn finite(q: Rational) -> Self {
        ExtRational::Finite(q)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn min_of<'a>(items: impl IntoIterator<Item = &'a ExtRational>) -> ExtRational {
        items
            .into_iter()
            .min()
            .cloned()
            .unwrap_or(ExtRational::Infinity)
    }

    /// Scales by a nonnegative integer; `0 · ∞ = 0` (empty product).
    pub fn scale(&self, k: u64) -> ExtRational {
        if k == 0 {
            return ExtRational::Finite(Rational::zero());
        }
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q * Rational::from_integer(k.into())),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, _) => Ordering::Greater,
            (_, ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => f.write_str(&fmt_rational(q)),
            ExtRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "+inf" => Ok(ExtRational::Infinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

/// Which valued field a scalar belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ValMode {
    /// Puiseux polynomials with the `t`-adic valuation.
    #[default]
    Puiseux,
    /// Constants with the trivial valuation.
    Trivial,
}

impl ValMode {
    fn join(self, other: ValMode) -> ValMode {
        if self == ValMode::Trivial && other == ValMode::Trivial {
            ValMode::Trivial
        } else {
            ValMode::Puiseux
        }
    }
}

/// A finite sum `Σ c_q t^q` with nonzero rational coefficients.
#[derive(Clone, Debug, Default)]
pub struct PuiseuxScalar {
    terms: BTreeMap<Rational, Rational>,
    mode: ValMode,
}

impl PartialEq for PuiseuxScalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for PuiseuxScalar {}

impl PuiseuxScalar {
    pub fn zero() -> Self {
        PuiseuxScalar::default()
    }

    pub fn zero_in(mode: ValMode) -> Self {
        PuiseuxScalar {
            terms: BTreeMap::new(),
            mode,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn one_in(mode: ValMode) -> Self {
        let mut s = Self::one();
        s.mode = mode;
        s
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// A trivially valued constant.
    pub fn trivial(c: Rational) -> Self {
        let mut s = Self::constant(c);
        s.mode = ValMode::Trivial;
        s
    }

    /// `c · t^e`.
    pub fn monomial(c: Rational, e: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PuiseuxScalar {
            terms,
            mode: ValMode::Puiseux,
        }
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut out = PuiseuxScalar::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Rational, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn mode(&self) -> ValMode {
        self.mode
    }

    /// Reinterprets the scalar in the given field. Fails when a non-constant
    /// is moved into the trivially valued field.
    pub fn with_mode(&self, mode: ValMode) -> Result<Self> {
        if mode == ValMode::Trivial && !self.is_constant() {
            return Err(Error::Domain(format!(
                "`{self}` is not a constant and cannot carry the trivial valuation"
            )));
        }
        Ok(PuiseuxScalar {
            terms: self.terms.clone(),
            mode,
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True for zero and for nonzero elements supported at exponent 0.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn coefficient(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// `ν(a)`: the least exponent, `∞` for zero, `0` for every nonzero element
    /// in trivial mode.
    pub fn valuation(&self) -> ExtRational {
        match self.terms.keys().next() {
            None => ExtRational::Infinity,
            Some(_) if self.mode == ValMode::Trivial => ExtRational::Finite(Rational::zero()),
            Some(e) => ExtRational::Finite(e.clone()),
        }
    }

    /// Coefficient of the lowest-order term, i.e. the residue of `a / t^ν(a)`.
    pub fn residue_leading(&self) -> Result<Rational> {
        self.terms
            .values()
            .next()
            .cloned()
            .ok_or_else(|| Error::Domain("residue of zero".into()))
    }

    pub fn leading_term(&self) -> Option<(Rational, Rational)> {
        self.terms
            .iter()
            .next()
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn inverse_monomial(&self) -> Result<Self> {
        if !self.is_monomial() {
            return Err(Error::UnsupportedInverse(self.to_string()));
        }
        let (e, c) = self.leading_term().expect("monomial");
        Ok(PuiseuxScalar {
            terms: BTreeMap::from([(-e, c.recip())]),
            mode: self.mode,
        })
    }

    /// Inverse of an arbitrary nonzero element, truncated so that every
    /// dropped term has exponent greater than `max_exp`.
    pub fn inverse_truncated(&self, max_exp: &Rational) -> Result<Self> {
        let (e0, c0) = self
            .leading_term()
            .ok_or_else(|| Error::UnsupportedInverse("0".into()))?;
        if self.is_monomial() {
            return self.inverse_monomial();
        }
        // a = c0 t^e0 (1 + h) with ν(h) > 0, so a^{-1} = c0^{-1} t^{-e0} Σ (-h)^k
        let lead_inv = PuiseuxScalar::monomial(c0.recip(), -e0.clone());
        let h = &(self * &lead_inv) - &PuiseuxScalar::one();
        let h_val = h.valuation().as_finite().cloned().expect("nonzero tail");
        let rel = max_exp + &e0;
        let mut sum = PuiseuxScalar::one();
        let mut power = PuiseuxScalar::one();
        let mut k = Rational::zero();
        loop {
            k += Rational::one();
            if &k * &h_val > rel {
                break;
            }
            power = (&power * &(-&h)).truncate(&rel);
            sum = &sum + &power;
        }
        let mut out = (&sum.truncate(&rel) * &lead_inv).truncate(max_exp);
        out.mode = self.mode;
        Ok(out)
    }

    /// Drops every term with exponent greater than `max_exp`.
    pub fn truncate(&self, max_exp: &Rational) -> Self {
        PuiseuxScalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e <= max_exp)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            mode: self.mode,
        }
    }

    /// Integer power; negative exponents require a monomial base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse_monomial()?.pow(-k);
        }
        let mut out = PuiseuxScalar::one();
        out.mode = self.mode;
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = PuiseuxScalar::zero_in(self.mode);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }
}

impl Add for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn add(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        let mut out = self.clone();
        out.mode = self.mode.join(rhs.mode);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn sub(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        PuiseuxScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
            mode: self.mode,
        }
    }
}

impl Mul for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn mul(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        let mut out = PuiseuxScalar::zero_in(self.mode.join(rhs.mode));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxScalar {
            type Output = PuiseuxScalar;
            fn $m(self, rhs: PuiseuxScalar) -> PuiseuxScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        -&self
    }
}

pub(crate) fn fmt_exponent(e: &Rational) -> String {
    fmt_rational(e)
}

/// Writes one term without sign handling of the leading coefficient beyond
/// what `fmt_rational` prints.
fn fmt_scalar_term(e: &Rational, c: &Rational) -> String {
    if e.is_zero() {
        return fmt_rational(c);
    }
    let tpow = if e.is_one() {
        "t".to_string()
    } else {
        format!("t^{}", fmt_exponent(e))
    };
    if c.is_one() {
        tpow
    } else if *c == -Rational::one() {
        format!("-{tpow}")
    } else {
        format!("{}*{tpow}", fmt_rational(c))
    }
}

impl fmt::Display for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                f.write_str(&fmt_scalar_term(e, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_scalar_term(e, &-c.clone()))?;
            } else {
                write!(f, " + {}", fmt_scalar_term(e, c))?;
            }
        }
        Ok(())
    }
}

impl FromStr for PuiseuxScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_scalar(s)
    }
}
