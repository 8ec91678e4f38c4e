//! Finite diagrams of toric embeddings and the maps `π_ι` into their
//! extended tropicalizations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::{Fan, LatticeVec};
use crate::torictrop::{trop_morphism, ExtendedMonoidMap, ExtendedPoint};
use crate::valfield::{ExtRational, PuiseuxScalar};

use super::{seminorm_value, Ambient, Presentation, Seminorm, SeminormPoint};

/// An embedding of (an open subset of) `X` into the affine toric chart
/// `U_chart`, given by the functions pulled back from the chart's Hilbert
/// basis characters, in basis order.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub name: String,
    fan: Arc<Fan>,
    chart: Vec<usize>,
    gens: Vec<LaurentPoly>,
    /// Chart embeddings of one quasiprojective embedding share a family;
    /// their images must glue.
    family: Option<usize>,
}

impl Embedding {
    pub fn toric(
        name: &str,
        fan: Arc<Fan>,
        chart: &[usize],
        gens: Vec<LaurentPoly>,
    ) -> Result<Embedding> {
        let mut chart = chart.to_vec();
        chart.sort();
        let m = fan.monoid(&chart)?;
        if m.basis().len() != gens.len() {
            return Err(Error::Presentation(format!(
                "chart has {} basis characters, got {} generators",
                m.basis().len(),
                gens.len()
            )));
        }
        Ok(Embedding {
            name: name.to_string(),
            fan,
            chart,
            gens,
            family: None,
        })
    }

    /// `X → A^m` given by `m` generators of the coordinate ring.
    pub fn affine(name: &str, gens: Vec<LaurentPoly>) -> Result<Embedding> {
        if gens.is_empty() {
            return Err(Error::Presentation("an embedding needs generators".into()));
        }
        let fan = Arc::new(Fan::affine_space(gens.len()));
        let all: Vec<usize> = (0..gens.len()).collect();
        Embedding::toric(name, fan, &all, gens)
    }

    /// The chart `x_i ≠ 0` of the embedding `X ⊂ P^m` of a projective
    /// presentation. Ray `j − 1` of the fan corresponds to `x_j`, the last
    /// ray to `x_0`.
    pub fn projective_chart(p: &Presentation, i: usize) -> Result<Embedding> {
        if p.ambient() != Ambient::Projective || i >= p.rank() {
            return Err(Error::Presentation(
                "projective charts need homogeneous coordinates".into(),
            ));
        }
        let m = p.rank() - 1;
        let fan = Arc::new(Fan::projective_space(m));
        let skip = if i == 0 { m } else { i - 1 };
        let chart: Vec<usize> = (0..=m).filter(|&r| r != skip).collect();
        let monoid = fan.monoid(&chart)?;
        let gens = monoid
            .basis()
            .iter()
            .map(|u| {
                let mut e = vec![-u.entries().iter().sum::<i64>()];
                e.extend_from_slice(u.entries());
                LaurentPoly::monomial(PuiseuxScalar::one_in(p.mode()), LatticeVec(e))
            })
            .collect();
        let mut e = Embedding::toric(&format!("chart x{i}"), fan, &chart, gens)?;
        e.family = Some(0);
        Ok(e)
    }

    /// `(f, g_1, …, g_m)` for an affine embedding `(g_1, …, g_m)`.
    pub fn graph(&self, f: LaurentPoly) -> Result<Embedding> {
        let mut gens = vec![f];
        gens.extend(self.gens.iter().cloned());
        Embedding::affine(&format!("graph over {}", self.name), gens)
    }

    /// `ι × ȷ` into `A^{m+n}`.
    pub fn product(&self, other: &Embedding) -> Result<Embedding> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Embedding::affine(&format!("{} x {}", self.name, other.name), gens)
    }

    /// The same embedding with coordinates `i` and `j` exchanged.
    pub fn transposed(&self, i: usize, j: usize) -> Result<Embedding> {
        let mut gens = self.gens.clone();
        gens.swap(i, j);
        Embedding::affine(&format!("{} ({i} {j})", self.name), gens)
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    pub fn gens(&self) -> &[LaurentPoly] {
        &self.gens
    }

    /// Charts sharing a family glue to one quasiprojective embedding.
    pub fn family(&self) -> Option<usize> {
        self.family
    }

    pub fn first_generator(&self) -> &LaurentPoly {
        &self.gens[0]
    }
}

/// `π_ι(x)`: the values `−log|g_k|_x` on the chart generators.
pub fn pi(iota: &Embedding, x: &SeminormPoint) -> Result<ExtendedPoint> {
    let values = iota
        .gens
        .iter()
        .map(|g| seminorm_value(x, g))
        .collect::<Result<Vec<ExtRational>>>()?;
    ExtendedPoint::from_values(iota.fan.clone(), &iota.chart, values)
}

/// An equivariant map between two nodes with `target = φ ∘ source`.
#[derive(Clone, Debug)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub map: ExtendedMonoidMap,
}

#[derive(Clone, Debug)]
pub struct EmbeddingDiagram {
    presentation: Arc<Presentation>,
    nodes: Vec<Embedding>,
    edges: Vec<Edge>,
}

impl EmbeddingDiagram {
    pub fn new(presentation: Arc<Presentation>) -> EmbeddingDiagram {
        EmbeddingDiagram {
            presentation,
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn nodes(&self) -> &[Embedding] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_node(&mut self, e: Embedding) -> Result<usize> {
        for g in &e.gens {
            self.presentation.check_element(g)?;
        }
        self.nodes.push(e);
        Ok(self.nodes.len() - 1)
    }

    /// Adds an edge after verifying `ȷ = φ ∘ ι` on every target generator.
    pub fn add_edge(&mut self, source: usize, target: usize, map: ExtendedMonoidMap) -> Result<()> {
        self.certify(source, target, &map)?;
        self.edges.push(Edge {
            source,
            target,
            map,
        });
        Ok(())
    }

    /// Adds an edge without certification; used for negative controls.
    pub fn add_edge_unchecked(&mut self, source: usize, target: usize, map: ExtendedMonoidMap) {
        self.edges.push(Edge {
            source,
            target,
            map,
        });
    }

    /// An edge given by an integer matrix `N_source → N_target`.
    pub fn add_linear_edge(&mut self, source: usize, target: usize, a: &[Vec<i64>]) -> Result<()> {
        let (s, t) = (&self.nodes[source], &self.nodes[target]);
        let map = ExtendedMonoidMap::from_lattice_map(
            s.fan.clone(),
            &s.chart,
            t.fan.clone(),
            &t.chart,
            a,
        )?;
        self.add_edge(source, target, map)
    }

    fn certify(&self, source: usize, target: usize, map: &ExtendedMonoidMap) -> Result<()> {
        let (s, t) = (&self.nodes[source], &self.nodes[target]);
        if **map.source() != *s.fan
            || map.source_chart() != s.chart
            || **map.target() != *t.fan
            || map.target_chart() != t.chart
        {
            return Err(Error::ChartMismatch(
                "edge map does not match its nodes".into(),
            ));
        }
        let sm = s.fan.monoid(&s.chart)?;
        for (k, img) in map.table().iter().enumerate() {
            let g = &t.gens[k];
            let fail = |reason: &str| Error::Certification {
                generator: g.to_string(),
                reason: reason.to_string(),
            };
            match img {
                None => {
                    if !self.presentation.is_zero_in_ring(g)? {
                        return Err(fail("pulled back to zero but does not vanish on X"));
                    }
                }
                Some(w) => {
                    let c = sm
                        .decompose(w)
                        .ok_or_else(|| fail("pullback outside the source monoid"))?;
                    let mut prod = LaurentPoly::one(self.presentation.rank())
                        .with_mode(self.presentation.mode())?;
                    for (e, h) in c.iter().zip(&s.gens) {
                        if *e > 0 {
                            prod = &prod * &h.pow(*e as u32);
                        }
                    }
                    if !self.presentation.equal_in_ring(g, &prod)? {
                        return Err(fail(&format!(
                            "differs from the pulled back monomial {prod}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The diagram from the injectivity/surjectivity argument: coordinates,
    /// the graphs of `f` and of `(f, g)`, their product, and the product
    /// with the two copies of `f` transposed.
    pub fn main_proof(
        presentation: Arc<Presentation>,
        f: &LaurentPoly,
        g: &LaurentPoly,
    ) -> Result<EmbeddingDiagram> {
        if presentation.ambient() != Ambient::Affine {
            return Err(Error::Presentation("affine presentation expected".into()));
        }
        let mut d = EmbeddingDiagram::new(presentation.clone());
        let base = Embedding::affine("coordinates", presentation.coordinates(0))?;
        let n = base.gens.len();
        let gf = base.graph(f.clone())?;
        let gfg = base.graph(g.clone())?.graph(f.clone())?;
        let prod = gf.product(&gfg)?;
        let swapped = prod.transposed(0, n + 1)?;
        let b = d.add_node(base)?;
        let i1 = d.add_node(gf)?;
        let i2 = d.add_node(gfg)?;
        let i3 = d.add_node(prod)?;
        let i4 = d.add_node(swapped)?;
        let drop = |k: usize, total: usize| -> Vec<Vec<i64>> {
            (0..total - k)
                .map(|r| (0..total).map(|c| i64::from(c == r + k)).collect())
                .collect()
        };
        d.add_linear_edge(i1, b, &drop(1, n + 1))?;
        d.add_linear_edge(i2, b, &drop(2, n + 2))?;
        let total = 2 * n + 3;
        let first: Vec<Vec<i64>> = (0..n + 1)
            .map(|r| (0..total).map(|c| i64::from(c == r)).collect())
            .collect();
        d.add_linear_edge(i3, i1, &first)?;
        d.add_linear_edge(i3, i2, &drop(n + 1, total))?;
        let swap: Vec<Vec<i64>> = (0..total)
            .map(|r| {
                let src = if r == 0 {
                    n + 1
                } else if r == n + 1 {
                    0
                } else {
                    r
                };
                (0..total).map(|c| i64::from(c == src)).collect()
            })
            .collect();
        d.add_linear_edge(i3, i4, &swap)?;
        d.add_linear_edge(i4, i3, &swap)?;
        Ok(d)
    }

    /// The standard charts of `X ⊂ P^m`.
    pub fn projective_charts(presentation: Arc<Presentation>) -> Result<EmbeddingDiagram> {
        let mut d = EmbeddingDiagram::new(presentation.clone());
        for i in 0..presentation.rank() {
            d.add_node(Embedding::projective_chart(&presentation, i)?)?;
        }
        Ok(d)
    }
}

/// Images of one seminorm point in every node; `None` where the point lies
/// outside a chart.
#[derive(Clone, Debug)]
pub struct CoherentTuple {
    pub points: Vec<Option<ExtendedPoint>>,
}

impl CoherentTuple {
    pub fn from_point(d: &EmbeddingDiagram, x: &SeminormPoint) -> Result<CoherentTuple> {
        let mut points = Vec::new();
        for node in &d.nodes {
            points.push(match pi(node, x) {
                Ok(p) => Some(p),
                Err(Error::Presentation(_)) if node.family.is_some() => None,
                Err(e) => return Err(e),
            });
        }
        Ok(CoherentTuple { points })
    }

    /// `Trop(φ)(y_ι) = y_ȷ` on every edge, chart images glue, and every
    /// chart family covers the point.
    pub fn is_coherent(&self, d: &EmbeddingDiagram) -> bool {
        for e in &d.edges {
            match (&self.points[e.source], &self.points[e.target]) {
                (Some(p), Some(q)) => match trop_morphism(&e.map, p) {
                    Ok(image) if image.glue_equal(q) => {}
                    _ => return false,
                },
                (Some(_), None) => return false,
                _ => {}
            }
        }
        let families: Vec<usize> = d.nodes.iter().filter_map(|n| n.family).collect();
        for fam in families {
            let members: Vec<&ExtendedPoint> = d
                .nodes
                .iter()
                .zip(&self.points)
                .filter(|(n, _)| n.family == Some(fam))
                .filter_map(|(_, p)| p.as_ref())
                .collect();
            if members.is_empty() || members.iter().any(|p| !p.glue_equal(members[0])) {
                return false;
            }
        }
        true
    }
}

/// Whether `π_ȷ = Trop(φ) ∘ π_ι` holds on `x` for every edge of the diagram.
pub fn coherence_check(d: &EmbeddingDiagram, x: &SeminormPoint) -> Result<bool> {
    Ok(CoherentTuple::from_point(d, x)?.is_coherent(d))
}

/// `−log|f|` read off the first coordinate of any node whose first
/// generator is `f`; all such nodes must agree.
pub fn reconstruct(
    d: &EmbeddingDiagram,
    tuple: &CoherentTuple,
    f: &LaurentPoly,
) -> Result<ExtRational> {
    let mut found: Option<ExtRational> = None;
    let mut eligible = false;
    for (node, p) in d.nodes.iter().zip(&tuple.points) {
        if !d.presentation.equal_in_ring(node.first_generator(), f)? {
            continue;
        }
        eligible = true;
        let Some(p) = p else { continue };
        let v = p.values()[0].clone();
        match &found {
            None => found = Some(v),
            Some(w) if *w != v => {
                return Err(Error::Domain(format!("nodes disagree on {f}: {w} vs {v}")));
            }
            _ => {}
        }
    }
    match found {
        Some(v) => Ok(v),
        None if eligible => Err(Error::DiagramTooSmall(format!(
            "the point lies in no chart with first generator {f}"
        ))),
        None => Err(Error::DiagramTooSmall(format!(
            "no node has first generator {f}"
        ))),
    }
}

/// Candidate values to translate coordinates by: the coordinates of
/// K-points and the images of Gauss centres.
pub fn translates_for(points: &[&SeminormPoint]) -> Vec<Vec<PuiseuxScalar>> {
    let mut out = Vec::new();
    for x in points {
        match x.kind() {
            Seminorm::KPoint(y) => out.push(y.clone()),
            Seminorm::Gauss { center, .. } => {
                if let Ok(k) = SeminormPoint::from_parameter(x.presentation().clone(), center) {
                    if let Seminorm::KPoint(y) = k.kind() {
                        out.push(y.clone());
                    }
                }
            }
        }
    }
    out
}

/// Products of at most `degree` chart coordinates `z_j`, also with every
/// coordinate translated as `z_j − a_j` for each translate `a`.
pub fn search_set(
    p: &Presentation,
    degree: usize,
    translates: &[Vec<PuiseuxScalar>],
) -> Vec<LaurentPoly> {
    let charts: Vec<usize> = match p.ambient() {
        Ambient::Affine => vec![0],
        Ambient::Projective => (0..p.rank()).collect(),
    };
    let mut out: Vec<LaurentPoly> = Vec::new();
    for &i in &charts {
        let mut bases: Vec<Vec<LaurentPoly>> = vec![p.coordinates(i)];
        for a in translates {
            let shifted: Vec<LaurentPoly> = match p.ambient() {
                Ambient::Affine => p
                    .coordinates(0)
                    .into_iter()
                    .zip(a)
                    .map(|(z, c)| &z - &LaurentPoly::constant(p.rank(), c.clone()))
                    .collect(),
                Ambient::Projective => {
                    // (a_i x_j − a_j x_i) / x_i
                    let inv = LaurentPoly::monomial(
                        PuiseuxScalar::one(),
                        -&LatticeVec::unit(p.rank(), i),
                    );
                    (0..p.rank())
                        .filter(|&j| j != i)
                        .map(|j| {
                            let lin = &(&LaurentPoly::var(p.rank(), j)
                                * &LaurentPoly::constant(p.rank(), a[i].clone()))
                                - &(&LaurentPoly::var(p.rank(), i)
                                    * &LaurentPoly::constant(p.rank(), a[j].clone()));
                            &lin * &inv
                        })
                        .collect()
                }
            };
            if shifted.iter().all(|g| !g.is_zero()) {
                bases.push(shifted);
            }
        }
        for base in bases {
            let mut layer: Vec<LaurentPoly> = vec![LaurentPoly::one(p.rank())];
            for _ in 0..degree {
                let mut next = Vec::new();
                for m in &layer {
                    for z in &base {
                        let prod = m * z;
                        if !out.contains(&prod) {
                            out.push(prod.clone());
                        }
                        next.push(prod);
                    }
                }
                layer = next;
            }
        }
    }
    out.into_iter()
        .map(|g| g.with_mode(p.mode()).unwrap())
        .collect()
}

/// An embedding whose first generator takes different values at `x` and
/// `x'`, found in the search set.
pub fn separate(x: &SeminormPoint, y: &SeminormPoint, search: &[LaurentPoly]) -> Result<Embedding> {
    let p = x.presentation();
    for f in search {
        let (Ok(a), Ok(b)) = (seminorm_value(x, f), seminorm_value(y, f)) else {
            continue;
        };
        if a != b {
            let base = match p.ambient() {
                Ambient::Affine => p.coordinates(0),
                Ambient::Projective => {
                    // a chart containing both points, where f is regular
                    let chart = (0..p.rank())
                        .find(|&i| {
                            p.coordinates(i).iter().all(|z| {
                                seminorm_value(x, z).is_ok() && seminorm_value(y, z).is_ok()
                            })
                        })
                        .ok_or_else(|| Error::NotFound("no common chart".into()))?;
                    p.coordinates(chart)
                }
            };
            let mut gens = vec![f.clone()];
            gens.extend(base);
            return Embedding::affine("separating", gens);
        }
    }
    if p.ambient() == Ambient::Projective {
        // points in no common chart are told apart by the charts themselves
        for i in 0..p.rank() {
            let node = Embedding::projective_chart(p, i)?;
            if pi(&node, x).is_ok() != pi(&node, y).is_ok() {
                return Ok(node);
            }
        }
    }
    Err(Error::NotFound(
        "the search set does not separate the two points".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;
    use crate::valfield::{int, Rational};

    fn poly(s: &str) -> LaurentPoly {
        parse_poly(s, Some(2)).unwrap()
    }

    fn p1(s: &str) -> LaurentPoly {
        parse_poly(s, Some(1)).unwrap()
    }

    fn line() -> Arc<Presentation> {
        Arc::new(
            Presentation::new(
                Ambient::Affine,
                vec![poly("x + y + 1")],
                vec![p1("x"), p1("-1 - x")],
            )
            .unwrap(),
        )
    }

    fn kp(p: &Arc<Presentation>, s: PuiseuxScalar) -> SeminormPoint {
        SeminormPoint::from_parameter(p.clone(), &[s]).unwrap()
    }

    #[test]
    fn projections() {
        let p = line();
        let id = Embedding::affine("id", p.coordinates(0)).unwrap();
        let x = kp(&p, PuiseuxScalar::t());
        let img = pi(&id, &x).unwrap();
        assert_eq!(
            img.values(),
            &[ExtRational::Finite(int(1)), ExtRational::Finite(int(0))]
        );
        let torus = Arc::new(Presentation::torus(2));
        let o = SeminormPoint::monomial(torus.clone(), vec![int(0), int(0)]).unwrap();
        let idt = Embedding::affine("id", torus.coordinates(0)).unwrap();
        assert!(pi(&idt, &o).unwrap().is_torus_point());
        let v = SeminormPoint::monomial(torus, vec![int(2), int(-1)]).unwrap();
        let g = idt.graph(poly("x + y")).unwrap();
        assert_eq!(
            pi(&g, &v).unwrap().values()[0],
            ExtRational::Finite(int(-1))
        );
    }

    #[test]
    fn main_diagram_is_coherent() {
        let p = line();
        let f = poly("x^2 + 3*y");
        let d = EmbeddingDiagram::main_proof(p.clone(), &f, &poly("x*y")).unwrap();
        assert_eq!(d.edges().len(), 6);
        for s in [
            PuiseuxScalar::t(),
            PuiseuxScalar::from_int(-1),
            "2 + t^1/2".parse().unwrap(),
        ] {
            let x = kp(&p, s);
            assert!(coherence_check(&d, &x).unwrap());
            let tuple = CoherentTuple::from_point(&d, &x).unwrap();
            assert_eq!(
                reconstruct(&d, &tuple, &f).unwrap(),
                seminorm_value(&x, &f).unwrap()
            );
        }
        let g =
            SeminormPoint::monomial(p.clone(), vec![Rational::new(1.into(), 3.into())]).unwrap();
        assert!(coherence_check(&d, &g).unwrap());
        let tuple = CoherentTuple::from_point(&d, &g).unwrap();
        assert!(matches!(
            reconstruct(&d, &tuple, &poly("y^3")),
            Err(Error::DiagramTooSmall(_))
        ));
    }

    #[test]
    fn corrupted_edge_detected() {
        let p = line();
        let mut d = EmbeddingDiagram::new(p.clone());
        let a = d
            .add_node(Embedding::affine("id", p.coordinates(0)).unwrap())
            .unwrap();
        let b = d
            .add_node(Embedding::affine("swap", vec![poly("y"), poly("x")]).unwrap())
            .unwrap();
        let id = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            d.add_linear_edge(a, b, &id),
            Err(Error::Certification { .. })
        ));
        let map = ExtendedMonoidMap::identity(d.nodes()[a].fan().clone(), &[0, 1]).unwrap();
        d.add_edge_unchecked(a, b, map);
        assert!(!coherence_check(&d, &kp(&p, PuiseuxScalar::t())).unwrap());
    }

    #[test]
    fn separation() {
        let p = line();
        let a = kp(&p, PuiseuxScalar::from_int(1));
        let b = kp(&p, PuiseuxScalar::t());
        let s = search_set(&p, 1, &[]);
        let e = separate(&a, &b, &s).unwrap();
        assert_eq!(e.first_generator(), &poly("x"));
        assert!(matches!(separate(&a, &a, &s), Err(Error::NotFound(_))));
        // equal valuations everywhere on monomials, told apart by a translate
        let c = kp(&p, PuiseuxScalar::from_int(2));
        assert!(separate(&a, &c, &s).is_err());
        let s = search_set(&p, 1, &translates_for(&[&a, &c]));
        assert!(separate(&a, &c, &s).is_ok());
        let torus = Arc::new(Presentation::torus(2));
        let u = SeminormPoint::monomial(torus.clone(), vec![int(0), int(0)]).unwrap();
        let v = SeminormPoint::monomial(torus.clone(), vec![int(1), int(1)]).unwrap();
        let e = separate(&u, &v, &search_set(&torus, 2, &[])).unwrap();
        assert_eq!(e.first_generator(), &poly("x"));
    }

    #[test]
    fn projective_line_charts() {
        let p = Arc::new(
            Presentation::new(
                Ambient::Projective,
                vec![parse_poly("x1 + x2 + x3", Some(3)).unwrap()],
                vec![p1("1"), p1("x"), p1("-1 - x")],
            )
            .unwrap(),
        );
        let d = EmbeddingDiagram::projective_charts(p.clone()).unwrap();
        assert_eq!(d.nodes().len(), 3);
        let x = kp(&p, PuiseuxScalar::t());
        assert!(coherence_check(&d, &x).unwrap());
        let inf = SeminormPoint::k_point(
            p.clone(),
            vec![
                PuiseuxScalar::zero(),
                PuiseuxScalar::one(),
                PuiseuxScalar::from_int(-1),
            ],
        )
        .unwrap();
        let t = CoherentTuple::from_point(&d, &inf).unwrap();
        assert!(t.points[0].is_none() && t.points[1].is_some());
        assert!(t.is_coherent(&d));
        let e = separate(&x, &inf, &search_set(&p, 1, &[])).unwrap();
        assert!(!e.gens().is_empty());
    }
}
