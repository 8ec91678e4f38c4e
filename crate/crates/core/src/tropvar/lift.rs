//! Newton–Puiseux lifting of tropical points on plane curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::laurent::LaurentPoly;
use crate::valfield::{int, rat, ExtRational, PuiseuxScalar, Rational};

const MAX_STEPS: usize = 200;

/// A point of the curve over `K`, correct up to the stated precision.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedPoint {
    pub coords: Vec<PuiseuxScalar>,
    pub precision: Rational,
}

impl LiftedPoint {
    pub fn trop(&self) -> Vec<ExtRational> {
        self.coords.iter().map(|c| c.valuation()).collect()
    }

    /// Finite valuations of the coordinates (all coordinates are nonzero).
    pub fn trop_finite(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|c| c.valuation().as_finite().cloned().expect("torus point"))
            .collect()
    }

    pub fn residual(&self, f: &LaurentPoly) -> Result<ExtRational> {
        Ok(f.eval(&self.coords, &self.precision)?.valuation())
    }
}

/// A univariate polynomial `Σ b_k y^k` with Puiseux coefficients.
#[derive(Clone, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<PuiseuxScalar>,
}

impl UniPoly {
    /// Restricts a rank-2 polynomial by fixing variable `fixed` to `value`;
    /// the result is shifted to have no negative powers.
    pub fn restrict(f: &LaurentPoly, fixed: usize, value: &PuiseuxScalar) -> Result<UniPoly> {
        let free = 1 - fixed;
        let lo = f.terms().map(|(u, _)| u[free]).min().unwrap_or(0);
        let hi = f.terms().map(|(u, _)| u[free]).max().unwrap_or(0);
        let mut coeffs = vec![PuiseuxScalar::zero(); (hi - lo + 1) as usize];
        for (u, c) in f.terms() {
            let k = (u[free] - lo) as usize;
            let term = c * &value.pow(u[fixed])?;
            coeffs[k] = &coeffs[k] + &term;
        }
        Ok(UniPoly { coeffs })
    }

    pub fn eval(&self, y: &PuiseuxScalar) -> PuiseuxScalar {
        let mut acc = PuiseuxScalar::zero();
        for b in self.coeffs.iter().rev() {
            acc = &(&acc * y) + b;
        }
        acc
    }

    /// Coefficients of `g(y0 + y)` for a monomial `y0`, truncated above `cut`.
    fn shift(&self, y0: &PuiseuxScalar, cut: &Rational) -> UniPoly {
        let d = self.coeffs.len();
        let mut out = vec![PuiseuxScalar::zero(); d];
        let mut powers = vec![PuiseuxScalar::one()];
        for i in 1..d {
            powers.push(&powers[i - 1] * y0);
        }
        for (k, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            for j in 0..=k {
                // C(k, j) b_k y0^(k-j) contributes to y^j
                let term = (b * &powers[k - j]).scale(&Rational::from_integer(binom.clone()));
                out[j] = (&out[j] + &term).truncate(cut);
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        UniPoly { coeffs: out }
    }

    /// Lower Newton polygon segments `(i, j, μ)`; roots of valuation `μ`
    /// come from the segment between degrees `i < j`.
    pub fn segments(&self) -> Vec<(usize, usize, Rational)> {
        let pts: Vec<(usize, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(k, b)| (k, b.valuation().as_finite().cloned().unwrap()))
            .collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < pts.len() {
            // steepest descent from pts[i]: smallest slope, farthest point on ties
            let mut best = i + 1;
            let slope = |a: &(usize, Rational), b: &(usize, Rational)| {
                (&b.1 - &a.1) / int((b.0 - a.0) as i64)
            };
            for j in i + 1..pts.len() {
                if slope(&pts[i], &pts[j]) <= slope(&pts[i], &pts[best]) {
                    best = j;
                }
            }
            out.push((pts[i].0, pts[best].0, -slope(&pts[i], &pts[best])));
            i = best;
        }
        out
    }

    /// Residue polynomial of the segment with root valuation `mu`.
    fn residue_poly(&self, i: usize, j: usize, mu: &Rational) -> Vec<Rational> {
        let line = self.coeffs[i].valuation().as_finite().cloned().unwrap() + mu * int(i as i64);
        (i..=j)
            .map(|k| {
                let b = &self.coeffs[k];
                if b.is_zero() {
                    return Rational::zero();
                }
                let v = b.valuation().as_finite().cloned().unwrap() + mu * int(k as i64);
                if v == line {
                    b.residue_leading().unwrap()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Nonzero rational roots, ordered positive first and by magnitude.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let lo = coeffs.iter().position(|c| !c.is_zero());
    let hi = coeffs.iter().rposition(|c| !c.is_zero());
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Vec::new();
    };
    if lo == hi {
        return Vec::new();
    }
    let den = coeffs[lo..=hi]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs[lo..=hi]
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(&ints[ints.len() - 1])) else {
        return Vec::new();
    };
    let mut roots: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = Rational::new(p * BigInt::from(s), q.clone());
                if roots.contains(&r) {
                    continue;
                }
                let val = ints.iter().rev().fold(Rational::zero(), |acc, c| {
                    acc * &r + Rational::from_integer(c.clone())
                });
                if val.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort_by(|a, b| (a.is_negative(), a.abs()).cmp(&(b.is_negative(), b.abs())));
    roots
}

/// Builds a root of `g` with leading exponent `first`, one term per step,
/// until `done` accepts it. `choose` picks among rational residue roots.
pub fn newton_puiseux_root(
    g: &UniPoly,
    first: &Rational,
    cut: &Rational,
    done: &dyn Fn(&PuiseuxScalar) -> bool,
    choose: &mut dyn FnMut(&[Rational]) -> usize,
) -> Result<PuiseuxScalar> {
    let mut y = PuiseuxScalar::zero();
    let mut cur = g.clone();
    let mut last: Option<Rational> = None;
    for _ in 0..MAX_STEPS {
        if last.is_some() && done(&y) {
            return Ok(y);
        }
        if last.is_some() && cur.coeffs[0].is_zero() {
            return Err(Error::UnsupportedResidue(
                "root truncated before reaching the requested precision".into(),
            ));
        }
        let segs = cur.segments();
        let seg = match &last {
            None => segs.iter().find(|s| &s.2 == first),
            Some(e) => segs
                .iter()
                .filter(|s| s.2 > *e && s.0 == 0)
                .min_by(|a, b| a.2.cmp(&b.2)),
        };
        let Some((i, j, mu)) = seg.cloned() else {
            return Err(Error::UnsupportedResidue(format!(
                "no Newton polygon edge for valuation {first}"
            )));
        };
        let roots = rational_roots(&cur.residue_poly(i, j, &mu));
        if roots.is_empty() {
            return Err(Error::UnsupportedResidue(
                "leading coefficient is not rational".into(),
            ));
        }
        let z = roots[choose(&roots)].clone();
        let term = PuiseuxScalar::monomial(z, mu.clone());
        y = &y + &term;
        cur = cur.shift(&term, cut);
        last = Some(mu);
    }
    Err(Error::UnsupportedResidue(
        "Newton–Puiseux iteration did not converge".into(),
    ))
}

/// Generic constants tried in order for the fixed coordinate.
pub fn generic_constants() -> Vec<Rational> {
    let mut out = vec![
        int(2),
        int(1),
        int(3),
        rat(1, 2),
        int(4),
        int(5),
        int(-1),
        int(-2),
        rat(1, 3),
        rat(3, 2),
    ];
    out.extend((6..30).map(int));
    out
}

fn check_plane(f: &LaurentPoly) -> Result<()> {
    if f.rank() != 2 {
        return Err(Error::UnsupportedRank {
            rank: f.rank(),
            limit: 2,
        });
    }
    Ok(())
}

/// Which coordinate to fix: the tie terms must use at least two distinct
/// powers of the free variable.
fn fixed_coordinate(f: &LaurentPoly, v: &[Rational]) -> usize {
    let tie = f.min_terms(v);
    let distinct_y: std::collections::BTreeSet<i64> = tie.iter().map(|u| u[1]).collect();
    if distinct_y.len() >= 2 {
        0
    } else {
        1
    }
}

fn cut_for(f: &LaurentPoly, v: &[Rational], prec: &Rational) -> Rational {
    let deg: i64 = f
        .terms()
        .map(|(u, _)| u[0].abs() + u[1].abs())
        .max()
        .unwrap_or(0);
    let coef: Rational = f
        .terms()
        .map(|(_, c)| c.valuation().as_finite().unwrap().abs())
        .sum();
    prec + coef + (v[0].abs() + v[1].abs()) * int(2 * deg + 2) + int(4)
}

/// Lifts `v ∈ trop(f)` to a point of `V(f)` with the fixed coordinate equal
/// to `c·t^{v_i}` for the given constant.
pub fn lift_point_with(
    f: &LaurentPoly,
    v: &[Rational],
    prec: &Rational,
    c: &Rational,
) -> Result<LiftedPoint> {
    check_plane(f)?;
    if !super::contains(f, v) {
        return domain(format!(
            "point {} is not in the tropicalization",
            crate::polyhedra::lattice::fmt_point(v)
        ));
    }
    let fixed = fixed_coordinate(f, v);
    let free = 1 - fixed;
    let fixed_val = PuiseuxScalar::monomial(c.clone(), v[fixed].clone());
    let g = UniPoly::restrict(f, fixed, &fixed_val)?;
    let cut = cut_for(f, v, prec);
    let assemble = |y: &PuiseuxScalar| -> Vec<PuiseuxScalar> {
        let mut coords = vec![PuiseuxScalar::zero(); 2];
        coords[fixed] = fixed_val.clone();
        coords[free] = y.clone();
        coords
    };
    let done = |y: &PuiseuxScalar| {
        f.eval(&assemble(y), prec)
            .map(|r| r.valuation() > ExtRational::Finite(prec.clone()))
            .unwrap_or(false)
    };
    let y = newton_puiseux_root(&g, &v[free], &cut, &done, &mut |_| 0)?;
    Ok(LiftedPoint {
        coords: assemble(&y),
        precision: prec.clone(),
    })
}

/// Lifts `v ∈ trop(f)` trying generic constants in a fixed order.
pub fn lift_point(f: &LaurentPoly, v: &[Rational], prec: &Rational) -> Result<LiftedPoint> {
    check_plane(f)?;
    let mut last = None;
    for c in generic_constants() {
        match lift_point_with(f, v, prec, &c) {
            Ok(p) => return Ok(p),
            Err(e @ Error::UnsupportedResidue(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::UnsupportedResidue("no constant worked".into())))
}

/// A random point of `V(f) ⊂ T^2(K)`: one coordinate is a random monomial,
/// the other a Newton–Puiseux root on a random edge with a random rational
/// residue root. Independent of the corner-locus computation.
pub fn sample_curve_point(
    f: &LaurentPoly,
    rng: &mut impl Rng,
    prec: &Rational,
) -> Result<LiftedPoint> {
    check_plane(f)?;
    for _ in 0..200 {
        let fixed = rng.gen_range(0..2usize);
        let free = 1 - fixed;
        let c = rat(
            rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 },
            rng.gen_range(1..=3),
        );
        let e = rat(rng.gen_range(-4..=4), 2);
        let fixed_val = PuiseuxScalar::monomial(c, e);
        let g = UniPoly::restrict(f, fixed, &fixed_val)?;
        let segs = g.segments();
        if segs.is_empty() {
            continue;
        }
        let mu = segs[rng.gen_range(0..segs.len())].2.clone();
        let mut v = vec![Rational::zero(); 2];
        v[fixed] = fixed_val.valuation().as_finite().cloned().unwrap();
        v[free] = mu.clone();
        let cut = cut_for(f, &v, prec);
        let assemble = |y: &PuiseuxScalar| -> Vec<PuiseuxScalar> {
            let mut coords = vec![PuiseuxScalar::zero(); 2];
            coords[fixed] = fixed_val.clone();
            coords[free] = y.clone();
            coords
        };
        let done = |y: &PuiseuxScalar| {
            f.eval(&assemble(y), prec)
                .map(|r| r.valuation() > ExtRational::Finite(prec.clone()))
                .unwrap_or(false)
        };
        let mut pick = |roots: &[Rational]| rng.gen_range(0..roots.len());
        if let Ok(y) = newton_puiseux_root(&g, &mu, &cut, &done, &mut pick) {
            return Ok(LiftedPoint {
                coords: assemble(&y),
                precision: prec.clone(),
            });
        }
    }
    Err(Error::UnsupportedResidue(
        "no rational branch found while sampling".into(),
    ))
}
