//! Laurent polynomials over the valued field, `Ψ_f`, and initial forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::polyhedra::LatticeVec;
use crate::torictrop::ExtendedPoint;
use crate::valfield::{fmt_rational, ExtRational, PuiseuxScalar, Rational, ValMode};

/// Default variable names: `x, y, z` up to rank 3, else `x1, …, xn`.
pub fn default_var_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["x", "y", "z"][..rank]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

pub(crate) fn fmt_monomial(u: &LatticeVec, names: &[String]) -> String {
    let parts: Vec<String> = u
        .entries()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, n)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Joins signed term strings into `a + b - c` form.
pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

/// `f = Σ a_i x^{u_i}` with exponents in `M = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<LatticeVec, PuiseuxScalar>,
    mode: ValMode,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
            mode: ValMode::Puiseux,
        }
    }

    pub fn zero_in(rank: usize, mode: ValMode) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
            mode,
        }
    }

    pub fn constant(rank: usize, c: PuiseuxScalar) -> Self {
        LaurentPoly::monomial(c, LatticeVec::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly::constant(rank, PuiseuxScalar::one())
    }

    pub fn monomial(c: PuiseuxScalar, u: LatticeVec) -> Self {
        let mut p = LaurentPoly {
            rank: u.rank(),
            terms: BTreeMap::new(),
            mode: c.mode(),
        };
        p.add_term(u, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(rank: usize, i: usize) -> Self {
        LaurentPoly::monomial(PuiseuxScalar::one(), LatticeVec::unit(rank, i))
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (LatticeVec, PuiseuxScalar)>,
    ) -> Self {
        let mut p = LaurentPoly::zero(rank);
        let mut all_trivial = true;
        let mut any = false;
        for (u, c) in terms {
            assert_eq!(u.rank(), rank, "exponent rank mismatch");
            any = true;
            all_trivial &= c.mode() == ValMode::Trivial;
            p.add_term(u, c);
        }
        if any && all_trivial {
            p.mode = ValMode::Trivial;
        }
        p
    }

    fn add_term(&mut self, u: LatticeVec, c: PuiseuxScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(u.clone())
            .or_insert_with(|| PuiseuxScalar::zero_in(c.mode()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> ValMode {
        self.mode
    }

    /// Reinterprets every coefficient in another valuation mode.
    pub fn with_mode(&self, mode: ValMode) -> Result<Self> {
        let mut out = LaurentPoly::zero_in(self.rank, mode);
        for (u, c) in &self.terms {
            out.terms.insert(u.clone(), c.with_mode(mode)?);
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &PuiseuxScalar)> {
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

    /// A nonzero constant (no exponent other than 0).
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero()
    }

    pub fn coefficient(&self, u: &LatticeVec) -> PuiseuxScalar {
        self.terms
            .get(u)
            .cloned()
            .unwrap_or_else(|| PuiseuxScalar::zero_in(self.mode))
    }

    pub fn exponents(&self) -> Vec<LatticeVec> {
        self.terms.keys().cloned().collect()
    }

    /// True when every coefficient is a constant (the trivially valued case).
    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    /// Multiplies by `x^u`.
    pub fn shift(&self, u: &LatticeVec) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(v, c)| (v + u, c.clone())).collect(),
            mode: self.mode,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one(self.rank)
            .with_mode(self.mode)
            .unwrap_or_else(|_| LaurentPoly::one(self.rank));
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Re-indexes exponents through an integer linear map `u ↦ A u`
    /// (`A` has `target` rows). Used for pullbacks along lattice maps.
    pub fn map_exponents(&self, a: &[Vec<i64>], target: usize) -> Self {
        let mut out = LaurentPoly::zero_in(target, self.mode);
        for (u, c) in &self.terms {
            let v: Vec<i64> = a
                .iter()
                .map(|row| row.iter().zip(u.entries()).map(|(x, y)| x * y).sum())
                .collect();
            out.add_term(LatticeVec(v), c.clone());
        }
        out
    }

    /// `(u_i, ν(a_i) + ⟨u_i, w⟩)` for every term.
    pub fn weights(&self, w: &[Rational]) -> Vec<(LatticeVec, Rational)> {
        self.terms
            .iter()
            .map(|(u, c)| {
                let v = c
                    .valuation()
                    .as_finite()
                    .cloned()
                    .expect("nonzero coefficient");
                (u.clone(), v + u.dot_q(w))
            })
            .collect()
    }

    /// `Ψ_f(w) = min_i ⟨u_i, w⟩ + ν(a_i)`.
    pub fn psi(&self, w: &[Rational]) -> Result<ExtRational> {
        if self.is_zero() {
            return domain("psi of the zero polynomial");
        }
        self.check_rank(w.len())?;
        Ok(ExtRational::Finite(
            self.weights(w).into_iter().map(|(_, x)| x).min().unwrap(),
        ))
    }

    /// `Ψ_f` at a point of `R̄^n`. Coordinates equal to `∞` require
    /// nonnegative exponents there; a positive exponent contributes `∞`.
    pub fn psi_ext(&self, w: &[ExtRational]) -> Result<ExtRational> {
        self.check_rank(w.len())?;
        let mut best = ExtRational::Infinity;
        for (u, c) in &self.terms {
            let mut acc = c.valuation();
            for (e, wj) in u.entries().iter().zip(w) {
                match wj {
                    ExtRational::Finite(q) => {
                        acc = &acc + &ExtRational::Finite(q * crate::valfield::int(*e))
                    }
                    ExtRational::Infinity => {
                        if *e < 0 {
                            return domain(format!(
                                "exponent {u} is negative at an infinite coordinate"
                            ));
                        }
                        if *e > 0 {
                            acc = ExtRational::Infinity;
                        }
                    }
                }
            }
            best = best.min(acc);
        }
        Ok(best)
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if n != self.rank {
            return domain(format!(
                "point of rank {n} for a polynomial of rank {}",
                self.rank
            ));
        }
        Ok(())
    }

    /// Exponents of the terms attaining the minimum weight at `v`.
    pub fn min_terms(&self, v: &[Rational]) -> Vec<LatticeVec> {
        let ws = self.weights(v);
        let Some(m) = ws.iter().map(|(_, x)| x.clone()).min() else {
            return Vec::new();
        };
        ws.into_iter()
            .filter(|(_, x)| *x == m)
            .map(|(u, _)| u)
            .collect()
    }

    /// `init_v(f)`: minimal-weight terms with their leading residues.
    pub fn initial_form(&self, v: &[Rational]) -> Result<ResiduePoly> {
        if self.is_zero() {
            return domain("initial form of the zero polynomial");
        }
        self.check_rank(v.len())?;
        let mut terms = BTreeMap::new();
        for u in self.min_terms(v) {
            terms.insert(u.clone(), self.terms[&u].residue_leading()?);
        }
        Ok(ResiduePoly {
            rank: self.rank,
            terms,
        })
    }

    /// Membership in the tilted ring: every weight is nonnegative.
    pub fn in_tilted_ring(&self, v: &[Rational]) -> bool {
        v.len() == self.rank && self.weights(v).iter().all(|(_, x)| !x.is_negative())
    }

    /// Evaluates at a point of the torus. Negative powers of non-monomial
    /// coordinates are expanded to the given precision.
    pub fn eval(&self, pt: &[PuiseuxScalar], prec: &Rational) -> Result<PuiseuxScalar> {
        self.check_rank(pt.len())?;
        let abs_val = |a: &PuiseuxScalar| {
            a.valuation()
                .as_finite()
                .map(|v| v.abs())
                .unwrap_or_else(Rational::zero)
        };
        // bound on how far below `prec` any term can reach
        let slack = self
            .terms
            .iter()
            .map(|(u, c)| {
                u.entries().iter().zip(pt).fold(abs_val(c), |acc, (e, y)| {
                    acc + abs_val(y) * crate::valfield::int(e.abs())
                })
            })
            .max()
            .unwrap_or_else(Rational::zero);
        let depth = prec + slack + Rational::one();
        let mut inv: Vec<Option<PuiseuxScalar>> = vec![None; pt.len()];
        let mut acc = PuiseuxScalar::zero_in(self.mode);
        for (u, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in u.entries().iter().enumerate() {
                if e >= 0 {
                    term = &term * &pt[j].pow(e)?;
                } else {
                    if inv[j].is_none() {
                        inv[j] = Some(pt[j].inverse_truncated(&depth)?);
                    }
                    term =
                        (&term * &inv[j].as_ref().unwrap().pow(-e)?).truncate(&(&depth + &depth));
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Evaluation at a point with all exponents nonnegative (exact).
    pub fn eval_poly(&self, pt: &[PuiseuxScalar]) -> Result<PuiseuxScalar> {
        if self
            .terms
            .keys()
            .any(|u| u.entries().iter().any(|&e| e < 0))
        {
            return domain("negative exponent in polynomial evaluation");
        }
        self.eval(pt, &Rational::zero())
    }

    /// Substitutes Laurent polynomials for the variables.
    pub fn compose(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        self.check_rank(images.len())?;
        let target = images.first().map(|p| p.rank).unwrap_or(0);
        let mut out = LaurentPoly::zero_in(target, self.mode);
        for (u, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (j, &e) in u.entries().iter().enumerate() {
                if e >= 0 {
                    term = &term * &images[j].pow(e as u32);
                } else {
                    if !images[j].is_monomial() {
                        return Err(Error::UnsupportedInverse(images[j].to_string()));
                    }
                    let (v, a) = images[j].terms.iter().next().unwrap();
                    let inv = LaurentPoly::monomial(a.inverse_monomial()?, -v);
                    term = &term * &inv.pow((-e) as u32);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Content monomial: the largest `x^u` dividing every term, when the
    /// polynomial has one (coordinatewise minimum of exponents).
    pub fn monomial_factor(&self) -> Option<LatticeVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        let m = it.fold(first, |acc, u| {
            LatticeVec(
                acc.entries()
                    .iter()
                    .zip(u.entries())
                    .map(|(a, b)| *a.min(b))
                    .collect(),
            )
        });
        if m.is_zero() {
            None
        } else {
            Some(m)
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(u, c)| fmt_term(c, &fmt_monomial(u, names)))
            .collect();
        join_terms(terms)
    }
}

fn fmt_term(c: &PuiseuxScalar, mono: &str) -> String {
    if mono.is_empty() {
        let s = c.to_string();
        return if c.num_terms() > 1 {
            format!("({s})")
        } else {
            s
        };
    }
    if *c == PuiseuxScalar::one() {
        return mono.to_string();
    }
    if *c == -PuiseuxScalar::one() {
        return format!("-{mono}");
    }
    if c.num_terms() > 1 {
        format!("({c})*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.rank)))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_poly(s, None)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        out.mode = if self.is_zero() {
            rhs.mode
        } else if rhs.is_zero() {
            self.mode
        } else {
            join(self.mode, rhs.mode)
        };
        for (u, c) in &rhs.terms {
            out.add_term(u.clone(), c.clone());
        }
        out
    }
}

fn join(a: ValMode, b: ValMode) -> ValMode {
    if a == ValMode::Trivial && b == ValMode::Trivial {
        ValMode::Trivial
    } else {
        ValMode::Puiseux
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(u, c)| (u.clone(), -c)).collect(),
            mode: self.mode,
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = LaurentPoly::zero_in(self.rank, join(self.mode, rhs.mode));
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u + v, a * b);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// A Laurent polynomial with rational (residue field) coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePoly {
    rank: usize,
    terms: BTreeMap<LatticeVec, Rational>,
}

impl ResiduePoly {
    pub fn new(rank: usize, terms: impl IntoIterator<Item = (LatticeVec, Rational)>) -> Self {
        let mut p = ResiduePoly {
            rank,
            terms: BTreeMap::new(),
        };
        for (u, c) in terms {
            p.add_term(u, c);
        }
        p
    }

    fn add_term(&mut self, u: LatticeVec, c: Rational) {
        let e = self.terms.entry(u.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn map_exponents(&self, a: &[Vec<i64>], target: usize) -> Self {
        ResiduePoly::new(
            target,
            self.terms.iter().map(|(u, c)| {
                (
                    LatticeVec(
                        a.iter()
                            .map(|row| row.iter().zip(u.entries()).map(|(x, y)| x * y).sum())
                            .collect(),
                    ),
                    c.clone(),
                )
            }),
        )
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(u, c)| {
                let mono = fmt_monomial(u, names);
                if mono.is_empty() {
                    fmt_rational(c)
                } else if c.is_one() {
                    mono
                } else if *c == -Rational::one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{mono}", fmt_rational(c))
                }
            })
            .collect();
        join_terms(terms)
    }
}

impl Mul for &ResiduePoly {
    type Output = ResiduePoly;
    fn mul(self, rhs: &ResiduePoly) -> ResiduePoly {
        let mut out = ResiduePoly {
            rank: self.rank,
            terms: BTreeMap::new(),
        };
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u + v, a * b);
            }
        }
        out
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.rank)))
    }
}

/// `min_i φ_p(u_i) + ν(a_i)` for a polynomial regular on the chart of `p`.
pub fn boundary_hom_value(f: &LaurentPoly, p: &ExtendedPoint) -> Result<ExtRational> {
    let mut best = ExtRational::Infinity;
    for (u, c) in f.terms() {
        let phi = p.value_of(u)?;
        best = best.min(&phi + &c.valuation());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valfield::{int, rat};

    #[test]
    fn boundary_values() {
        use crate::polyhedra::Fan;
        use std::sync::Arc;
        let inf = ExtRational::Infinity;
        let a1 = Arc::new(Fan::affine_space(1));
        let end = ExtendedPoint::from_values(a1, &[0], vec![inf.clone()]).unwrap();
        assert_eq!(
            boundary_hom_value(&"x".parse().unwrap(), &end).unwrap(),
            inf
        );
        assert_eq!(
            boundary_hom_value(&"x + 1".parse().unwrap(), &end).unwrap(),
            ExtRational::Finite(int(0))
        );
        assert!(boundary_hom_value(&"x^-1".parse().unwrap(), &end).is_err());
        let a2 = Arc::new(Fan::affine_space(2));
        let p = ExtendedPoint::from_values(a2, &[0, 1], vec![inf, ExtRational::Finite(int(1))])
            .unwrap();
        assert_eq!(
            boundary_hom_value(&"x + y".parse().unwrap(), &p).unwrap(),
            ExtRational::Finite(int(1))
        );
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(
            poly("x + y + 1").psi(&q(&[0, 0])).unwrap(),
            ExtRational::Finite(int(0))
        );
        assert_eq!(
            poly("x + y + t").psi(&q(&[1, 1])).unwrap(),
            ExtRational::Finite(int(1))
        );
        let f = LaurentPoly::monomial(PuiseuxScalar::t(), LatticeVec(vec![2, 0]));
        assert_eq!(f.psi(&q(&[2, 5])).unwrap(), ExtRational::Finite(int(5)));
        assert!(LaurentPoly::zero(2).psi(&q(&[0, 0])).is_err());
    }

    #[test]
    fn initial_form_examples() {
        assert_eq!(
            poly("x + y + 1")
                .initial_form(&q(&[0, 0]))
                .unwrap()
                .to_string(),
            "x + y + 1"
        );
        assert_eq!(
            poly("x + y + t")
                .initial_form(&q(&[0, 0]))
                .unwrap()
                .to_string(),
            "x + y"
        );
        let init = poly("x + y + t").initial_form(&q(&[2, 0])).unwrap();
        assert_eq!(init.to_string(), "y");
        assert!(init.is_monomial());
    }

    #[test]
    fn tilted_ring_examples() {
        assert!(poly("x + y + 1").in_tilted_ring(&q(&[0, 0])));
        let f = crate::text::parse_poly("x^-1", Some(2))
            .unwrap()
            .with_mode(ValMode::Trivial)
            .unwrap();
        assert!(f.in_tilted_ring(&q(&[0, 0])));
        // weight ⟨u, v⟩ with u = (-1, 0)
        assert!(!f.in_tilted_ring(&q(&[1, 0])));
        assert!(f.in_tilted_ring(&[rat(-1, 1), int(0)]));
        let g = crate::text::parse_poly("t^-1*x", Some(2)).unwrap();
        assert!(g.in_tilted_ring(&q(&[1, 0])));
    }

    #[test]
    fn ext_psi_uses_absorbing_infinity() {
        let f = poly("x + y");
        let w = [ExtRational::Infinity, ExtRational::Finite(int(1))];
        assert_eq!(f.psi_ext(&w).unwrap(), ExtRational::Finite(int(1)));
        let g = poly("x^-1 + y");
        assert!(g.psi_ext(&w).is_err());
    }

    #[test]
    fn printing_order() {
        assert_eq!(poly("1 + y + x").to_string(), "x + y + 1");
        assert_eq!(poly("x*y - t").to_string(), "x*y - t");
        assert_eq!(poly("(1 + t)*x^-2 + 3").to_string(), "3 + (1 + t)*x^-2");
    }

    #[test]
    fn evaluation() {
        let f = poly("x + y + 1");
        let pt = [PuiseuxScalar::from_int(2), PuiseuxScalar::from_int(-3)];
        assert!(f.eval(&pt, &int(3)).unwrap().is_zero());
        let g = poly("x^-1 - 1");
        let pt = ["1 + t".parse::<PuiseuxScalar>().unwrap()];
        let v = g.eval(&pt, &int(4)).unwrap();
        assert_eq!(v.valuation(), ExtRational::Finite(int(1)));
    }
}
