//! A finite model of the analytification `X^an`: K-points and Gauss
//! seminorms on a presented variety, their tropical projections, and the
//! embedding diagrams whose inverse limit recovers them.

mod check;
mod diagram;
mod image;

pub use check::{limit_check, sample_points, LimitReport};
pub use diagram::{
    coherence_check, pi, reconstruct, search_set, separate, translates_for, CoherentTuple, Edge,
    Embedding, EmbeddingDiagram,
};
pub use image::{image_check, ImageReport};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::LatticeVec;
use crate::valfield::{ExtRational, PuiseuxScalar, Rational, ValMode};

/// Whether the generators are affine coordinates or homogeneous ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Affine,
    /// Elements of the coordinate rings of charts are degree-zero Laurent
    /// polynomials in the homogeneous coordinates.
    Projective,
}

/// `X` cut out by relations in the ambient coordinates, together with a
/// dominant parametrization used for Gauss points and for deciding
/// identities in the coordinate ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    ambient: Ambient,
    rank: usize,
    relations: Vec<LaurentPoly>,
    param: Vec<LaurentPoly>,
    mode: ValMode,
}

impl Presentation {
    pub fn new(
        ambient: Ambient,
        relations: Vec<LaurentPoly>,
        param: Vec<LaurentPoly>,
    ) -> Result<Presentation> {
        let rank = param.len();
        if rank == 0 {
            return Err(Error::Presentation("no coordinates".into()));
        }
        let k = param[0].rank();
        if param.iter().any(|p| p.rank() != k) {
            return Err(Error::Presentation(
                "parametrization images have different ranks".into(),
            ));
        }
        let mode = param[0].mode();
        let p = Presentation {
            ambient,
            rank,
            relations,
            param,
            mode,
        };
        for r in &p.relations {
            if r.rank() != rank {
                return Err(Error::Presentation(format!(
                    "relation {r} has rank {}, expected {rank}",
                    r.rank()
                )));
            }
            if ambient == Ambient::Projective && !is_homogeneous(r) {
                return Err(Error::Presentation(format!(
                    "relation {r} is not homogeneous"
                )));
            }
            if !p.compose(r)?.is_zero() {
                return Err(Error::Presentation(format!(
                    "parametrization does not satisfy {r}"
                )));
            }
        }
        Ok(p)
    }

    /// The torus `T^n` (no relations, identity parametrization).
    pub fn torus(n: usize) -> Presentation {
        let param = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
        Presentation::new(Ambient::Affine, Vec::new(), param).expect("identity")
    }

    /// The same presentation with coefficients read in another valuation mode.
    pub fn with_mode(&self, mode: ValMode) -> Result<Presentation> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.with_mode(mode))
            .collect::<Result<_>>()?;
        let param = self
            .param
            .iter()
            .map(|r| r.with_mode(mode))
            .collect::<Result<_>>()?;
        Presentation::new(self.ambient, relations, param)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Number of ambient coordinates.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn param_rank(&self) -> usize {
        self.param[0].rank()
    }

    pub fn relations(&self) -> &[LaurentPoly] {
        &self.relations
    }

    pub fn param(&self) -> &[LaurentPoly] {
        &self.param
    }

    pub fn mode(&self) -> ValMode {
        self.mode
    }

    /// Checks that `g` is an element this presentation can evaluate.
    pub fn check_element(&self, g: &LaurentPoly) -> Result<()> {
        if g.rank() != self.rank {
            return Err(Error::Presentation(format!(
                "{g} has rank {}, expected {}",
                g.rank(),
                self.rank
            )));
        }
        if self.ambient == Ambient::Projective
            && g.terms().any(|(u, _)| u.entries().iter().sum::<i64>() != 0)
        {
            return Err(Error::Presentation(format!("{g} is not of degree zero")));
        }
        Ok(())
    }

    /// `g ∘ param`, with denominators handled multiplicatively.
    fn compose(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        let (h, _) = split_denominator(g);
        h.compose(&self.param)
    }

    /// Whether `g = h` in the coordinate ring, decided on the parametrization.
    pub fn equal_in_ring(&self, g: &LaurentPoly, h: &LaurentPoly) -> Result<bool> {
        self.check_element(g)?;
        self.check_element(h)?;
        let (ng, dg) = split_denominator(g);
        let (nh, dh) = split_denominator(h);
        // g = ng / x^dg and h = nh / x^dh; compare ng·x^dh with nh·x^dg
        let lhs = ng.shift(&dh).compose(&self.param)?;
        let rhs = nh.shift(&dg).compose(&self.param)?;
        Ok(lhs == rhs)
    }

    /// Whether `g` vanishes on `X`.
    pub fn is_zero_in_ring(&self, g: &LaurentPoly) -> Result<bool> {
        self.check_element(g)?;
        Ok(self.compose(g)?.is_zero())
    }

    /// The generators of the coordinate ring used by default: the affine
    /// coordinates, or for projective presentations the coordinates of
    /// the chart where `x_chart ≠ 0`.
    pub fn coordinates(&self, chart: usize) -> Vec<LaurentPoly> {
        match self.ambient {
            Ambient::Affine => (0..self.rank)
                .map(|i| LaurentPoly::var(self.rank, i).with_mode(self.mode).unwrap())
                .collect(),
            Ambient::Projective => (0..self.rank)
                .filter(|&i| i != chart)
                .map(|i| {
                    let u = &LatticeVec::unit(self.rank, i) - &LatticeVec::unit(self.rank, chart);
                    LaurentPoly::monomial(PuiseuxScalar::one_in(self.mode), u)
                })
                .collect(),
        }
    }
}

fn is_homogeneous(f: &LaurentPoly) -> bool {
    let mut degs = f.terms().map(|(u, _)| u.entries().iter().sum::<i64>());
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

/// `g = h / x^a` with `h` a polynomial and `a ≥ 0` minimal.
fn split_denominator(g: &LaurentPoly) -> (LaurentPoly, LatticeVec) {
    let n = g.rank();
    let mut a = vec![0i64; n];
    for (u, _) in g.terms() {
        for (x, &e) in a.iter_mut().zip(u.entries()) {
            *x = (*x).max(-e);
        }
    }
    let a = LatticeVec(a);
    (g.shift(&a), a)
}

/// A point of `X^an` of one of the two materialized kinds.
#[derive(Clone, Debug)]
pub enum Seminorm {
    /// `|f| = exp(−ν(f(y)))` for a K-point `y` (homogeneous for projective
    /// presentations).
    KPoint(Vec<PuiseuxScalar>),
    /// The Gauss seminorm of the polydisc around `center` with polyradius
    /// `exp(−v)` in the parameter space: `f ↦ Ψ_{f∘param(center + s)}(v)`.
    Gauss {
        center: Vec<PuiseuxScalar>,
        v: Vec<Rational>,
    },
}

#[derive(Clone, Debug)]
pub struct SeminormPoint {
    presentation: Arc<Presentation>,
    kind: Seminorm,
    // parametrization recentred at the Gauss point's center
    shifted: Option<Vec<LaurentPoly>>,
}

impl SeminormPoint {
    pub fn k_point(
        presentation: Arc<Presentation>,
        y: Vec<PuiseuxScalar>,
    ) -> Result<SeminormPoint> {
        if y.len() != presentation.rank() {
            return Err(Error::Presentation(format!(
                "point has {} coordinates, expected {}",
                y.len(),
                presentation.rank()
            )));
        }
        let y: Vec<PuiseuxScalar> = y
            .into_iter()
            .map(|c| c.with_mode(presentation.mode()))
            .collect::<Result<_>>()?;
        if presentation.ambient() == Ambient::Projective && y.iter().all(|c| c.is_zero()) {
            return Err(Error::Presentation(
                "all homogeneous coordinates vanish".into(),
            ));
        }
        for r in presentation.relations() {
            let (h, _) = split_denominator(r);
            if !h.eval_poly(&y)?.is_zero() {
                return Err(Error::Presentation(format!("point does not satisfy {r}")));
            }
        }
        Ok(SeminormPoint {
            presentation,
            kind: Seminorm::KPoint(y),
            shifted: None,
        })
    }

    /// The K-point `param(s)`.
    pub fn from_parameter(
        presentation: Arc<Presentation>,
        s: &[PuiseuxScalar],
    ) -> Result<SeminormPoint> {
        let mut y = Vec::new();
        for p in presentation.param() {
            let (h, a) = split_denominator(p);
            let mut val = h.eval_poly(s)?;
            for (j, &e) in a.entries().iter().enumerate() {
                if e > 0 {
                    val = &val * &s[j]
                        .inverse_monomial()
                        .map_err(|_| {
                            Error::Presentation(
                                "parameter must be a monomial where the parametrization has poles"
                                    .into(),
                            )
                        })?
                        .pow(e)?;
                }
            }
            y.push(val);
        }
        SeminormPoint::k_point(presentation, y)
    }

    pub fn gauss(
        presentation: Arc<Presentation>,
        center: Vec<PuiseuxScalar>,
        v: Vec<Rational>,
    ) -> Result<SeminormPoint> {
        let k = presentation.param_rank();
        if center.len() != k || v.len() != k {
            return Err(Error::Presentation(format!(
                "Gauss point needs {k} parameters"
            )));
        }
        let mode = presentation.mode();
        let center: Vec<PuiseuxScalar> = center
            .into_iter()
            .map(|c| c.with_mode(mode))
            .collect::<Result<_>>()?;
        let images: Vec<LaurentPoly> = (0..k)
            .map(|j| {
                &LaurentPoly::var(k, j).with_mode(mode).unwrap()
                    + &LaurentPoly::constant(k, center[j].clone())
            })
            .collect();
        let mut shifted = Vec::new();
        for p in presentation.param() {
            let moved = p.compose(&images).map_err(|_| {
                Error::Presentation(
                    "Gauss points away from 0 need a polynomial parametrization".into(),
                )
            })?;
            shifted.push(moved);
        }
        Ok(SeminormPoint {
            presentation,
            kind: Seminorm::Gauss { center, v },
            shifted: Some(shifted),
        })
    }

    /// The Gauss point around the origin of the parameter space.
    pub fn monomial(presentation: Arc<Presentation>, v: Vec<Rational>) -> Result<SeminormPoint> {
        let k = presentation.param_rank();
        let zero = vec![PuiseuxScalar::zero_in(presentation.mode()); k];
        SeminormPoint::gauss(presentation, zero, v)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn kind(&self) -> &Seminorm {
        &self.kind
    }

    /// Equality as seminorms: equal K-points, or equal polydiscs.
    pub fn same_seminorm(&self, other: &SeminormPoint) -> bool {
        match (&self.kind, &other.kind) {
            (Seminorm::KPoint(a), Seminorm::KPoint(b)) => {
                if self.presentation.ambient() == Ambient::Projective {
                    // proportional homogeneous tuples
                    let i = a.iter().position(|c| !c.is_zero());
                    match i {
                        Some(i) if !b[i].is_zero() => {
                            a.iter().zip(b).all(|(x, y)| x * &b[i] == y * &a[i])
                        }
                        _ => false,
                    }
                } else {
                    a == b
                }
            }
            (Seminorm::Gauss { center: c1, v: v1 }, Seminorm::Gauss { center: c2, v: v2 }) => {
                v1 == v2
                    && c1
                        .iter()
                        .zip(c2)
                        .zip(v1)
                        .all(|((a, b), r)| (a - b).valuation() >= ExtRational::Finite(r.clone()))
            }
            _ => false,
        }
    }

    /// The polynomial part of `−log|·|` without denominators.
    fn value_poly(&self, h: &LaurentPoly) -> Result<ExtRational> {
        match &self.kind {
            Seminorm::KPoint(y) => Ok(h.eval_poly(y)?.valuation()),
            Seminorm::Gauss { v, .. } => {
                let g = h.compose(self.shifted.as_ref().unwrap())?;
                if g.is_zero() {
                    Ok(ExtRational::Infinity)
                } else {
                    g.psi(v)
                }
            }
        }
    }
}

/// `−log|g|_x`, a valuation-like value in `R ∪ {∞}`.
pub fn seminorm_value(x: &SeminormPoint, g: &LaurentPoly) -> Result<ExtRational> {
    x.presentation.check_element(g)?;
    let g = g.with_mode(x.presentation.mode())?;
    let (h, a) = split_denominator(&g);
    let mut val = x.value_poly(&h)?;
    for (j, &e) in a.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let xj = LaurentPoly::var(g.rank(), j).with_mode(x.presentation.mode())?;
        match x.value_poly(&xj)? {
            ExtRational::Finite(c) => {
                val = &val + &ExtRational::Finite(-(c * crate::valfield::int(e)))
            }
            ExtRational::Infinity => {
                return Err(Error::Presentation(format!("{g} has a pole at the point")));
            }
        }
    }
    Ok(val)
}

impl fmt::Display for SeminormPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Seminorm::KPoint(y) => {
                let parts: Vec<String> = y.iter().map(|c| c.to_string()).collect();
                write!(f, "kpoint ({})", parts.join(", "))
            }
            Seminorm::Gauss { center, v } => {
                let c: Vec<String> = center.iter().map(|c| c.to_string()).collect();
                write!(
                    f,
                    "gauss center ({}) radius ({})",
                    c.join(", "),
                    crate::polyhedra::lattice::fmt_point(v).trim_matches(|c| c == '(' || c == ')')
                )
            }
        }
    }
}
