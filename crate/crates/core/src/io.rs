//! Line-oriented text formats for fans, complexes, extended points,
//! stratified tropicalizations and embedding diagrams.
//!
//! Blank lines and `#` comments are ignored everywhere. Every printer is
//! inverse to its parser.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::anlim::{Ambient, Embedding, EmbeddingDiagram, Presentation};
use crate::closure::{StratifiedTrop, Stratum};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedra::{Fan, GRatPolyComplex, LatticeVec, Polyhedron};
use crate::text::{parse_poly, parse_poly_named};
use crate::torictrop::{ExtendedMonoidMap, ExtendedPoint};
use crate::valfield::{parse_rational, ExtRational, Rational, ValMode};

/// Resolves a fan reference such as `P2` or a file path.
pub type FanResolver<'a> = dyn Fn(&str) -> Result<Arc<Fan>> + 'a;

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        col: 1,
        msg: msg.into(),
    })
}

/// Moves an error from a one-line sub-parser to its place in the file.
fn relocate<T>(r: Result<T>, line: usize, offset: usize) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { col, msg, .. } => Error::Parse {
            line,
            col: col + offset,
            msg,
        },
        other => Error::Parse {
            line,
            col: offset + 1,
            msg: other.to_string(),
        },
    })
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    rest: &'a str,
    /// Column of `rest` within the raw line, zero-based.
    offset: usize,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let start = content.len() - content.trim_start().len();
            let body = content.trim();
            if body.is_empty() {
                return None;
            }
            let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest_trim = rest.trim_start();
            let offset =
                start + key.len() + (rest.len() - rest_trim.len()) + usize::from(!rest.is_empty());
            Some(Line {
                no: i + 1,
                key,
                rest: rest_trim,
                offset,
            })
        })
        .collect()
}

fn ints(l: &Line<'_>) -> Result<Vec<i64>> {
    l.rest
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .or_else(|_| err(l.no, format!("expected an integer, found '{s}'")))
        })
        .collect()
}

fn usize_of(l: &Line<'_>) -> Result<usize> {
    l.rest
        .trim()
        .parse()
        .or_else(|_| err(l.no, format!("expected a count, found '{}'", l.rest)))
}

/// `(a, b) (c, d)` as a list of rational tuples.
fn tuples(s: &str, line: usize) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return err(line, format!("expected '(' at '{rest}'"));
        };
        let Some(end) = body.find(')') else {
            return err(line, "unclosed tuple");
        };
        let inner = body[..end].trim();
        let coords = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| relocate(parse_rational(x.trim()), line, 0))
                .collect::<Result<Vec<_>>>()?
        };
        out.push(coords);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

fn lattice(v: Vec<Rational>, line: usize) -> Result<LatticeVec> {
    v.iter()
        .map(|q| {
            if q.is_integer() {
                i64::try_from(q.to_integer()).or_else(|_| err(line, "integer out of range"))
            } else {
                err(line, format!("expected an integer vector entry, found {q}"))
            }
        })
        .collect::<Result<Vec<i64>>>()
        .map(LatticeVec)
}

fn join_ints(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_usize(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// fans

pub fn fan_to_text(fan: &Fan) -> String {
    let mut s = format!("fan {}\n", fan.rank());
    for r in fan.rays() {
        let _ = writeln!(s, "ray {}", join_ints(r.entries()));
    }
    for c in fan.maximal_cones() {
        let _ = writeln!(s, "cone {}", join_usize(c));
    }
    s
}

/// Reads `fan n`, then `ray` and `cone` records; faces are derived.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let ls = lines(text);
    parse_fan_lines(&ls, 0, ls.len())
}

fn parse_fan_lines(ls: &[Line<'_>], from: usize, to: usize) -> Result<Fan> {
    let mut rank = None;
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    for l in &ls[from..to] {
        match l.key {
            "fan" => rank = Some(usize_of(l)?),
            "ray" => rays.push(LatticeVec(ints(l)?)),
            "cone" => {
                let c = ints(l)?;
                if c.iter().any(|&i| i < 0) {
                    return err(l.no, "negative ray index");
                }
                cones.push(c.into_iter().map(|i| i as usize).collect());
            }
            k => return err(l.no, format!("unexpected record '{k}' in a fan")),
        }
    }
    let Some(rank) = rank else {
        let no = ls.get(from).map_or(1, |l| l.no);
        return err(no, "missing 'fan <rank>' record");
    };
    let no = ls.get(from).map_or(1, |l| l.no);
    relocate(Fan::new(rank, rays, cones), no, 0)
}

// complexes

fn parse_cell(l: &Line<'_>, rank: usize) -> Result<Polyhedron> {
    if l.key != "cell" {
        return err(l.no, format!("expected a cell, found '{}'", l.key));
    }
    let (vs, rs) = l.rest.split_once('|').unwrap_or((l.rest, ""));
    let vertices = tuples(vs, l.no)?;
    let rays = tuples(rs, l.no)?
        .into_iter()
        .map(|r| lattice(r, l.no))
        .collect::<Result<Vec<_>>>()?;
    if vertices.is_empty() {
        return err(l.no, "a cell needs a vertex");
    }
    if vertices.iter().any(|v| v.len() != rank) || rays.iter().any(|r| r.rank() != rank) {
        return err(l.no, format!("cell entries must have rank {rank}"));
    }
    Ok(Polyhedron::new(rank, vertices, rays))
}

/// Reads `complex n` followed by `cell v1 v2 .. | r1 r2 ..` lines.
pub fn parse_complex(text: &str) -> Result<GRatPolyComplex> {
    let ls = lines(text);
    let Some(head) = ls.first() else {
        return err(1, "empty input");
    };
    if head.key != "complex" {
        return err(head.no, "expected 'complex <rank>'");
    }
    let rank = usize_of(head)?;
    let cells = ls[1..]
        .iter()
        .map(|l| parse_cell(l, rank))
        .collect::<Result<Vec<_>>>()?;
    Ok(GRatPolyComplex::new(rank, cells))
}

pub fn complex_to_text(c: &GRatPolyComplex) -> String {
    c.to_string()
}

// points

pub fn point_to_text(fan_ref: &str, p: &ExtendedPoint) -> String {
    let mut s = format!("point {fan_ref}\nchart {}\n", join_usize(p.chart()));
    for (u, v) in p.monoid().basis().iter().zip(p.values()) {
        let _ = writeln!(s, "value {u} {v}");
    }
    s
}

/// Reads a point given by its values on the chart's Hilbert basis.
/// Returns the fan reference together with the point.
pub fn parse_point(text: &str, resolve: &FanResolver<'_>) -> Result<(String, ExtendedPoint)> {
    let ls = lines(text);
    let Some(head) = ls.first().filter(|l| l.key == "point") else {
        return err(ls.first().map_or(1, |l| l.no), "expected 'point <fan>'");
    };
    let fan_ref = head.rest.to_string();
    let fan = relocate(resolve(&fan_ref), head.no, head.offset)?;
    let mut chart: Option<Vec<usize>> = None;
    let mut given: Vec<(LatticeVec, ExtRational, usize)> = Vec::new();
    for l in &ls[1..] {
        match l.key {
            "chart" => chart = Some(ints(l)?.into_iter().map(|i| i.max(0) as usize).collect()),
            "value" => {
                let Some(close) = l.rest.find(')') else {
                    return err(l.no, "expected '(u) value'");
                };
                let u = lattice(tuples(&l.rest[..=close], l.no)?.remove(0), l.no)?;
                let v: ExtRational = relocate(
                    l.rest[close + 1..].trim().parse(),
                    l.no,
                    l.offset + close + 1,
                )?;
                given.push((u, v, l.no));
            }
            k => return err(l.no, format!("unexpected record '{k}' in a point")),
        }
    }
    let chart = chart.ok_or_else(|| Error::Parse {
        line: head.no,
        col: 1,
        msg: "missing chart".into(),
    })?;
    let monoid = relocate(fan.monoid(&chart), head.no, 0)?;
    let mut values = Vec::new();
    for b in monoid.basis() {
        match given.iter().find(|(u, _, _)| u == b) {
            Some((_, v, _)) => values.push(v.clone()),
            None => return err(head.no, format!("no value for the basis character {b}")),
        }
    }
    if let Some((u, _, no)) = given.iter().find(|(u, _, _)| !monoid.basis().contains(u)) {
        return err(
            *no,
            format!("{u} is not a Hilbert basis character of the chart"),
        );
    }
    let p = relocate(ExtendedPoint::from_values(fan, &chart, values), head.no, 0)?;
    Ok((fan_ref, p))
}

// stratified tropicalizations

pub fn stratified_to_text(fan_ref: &str, s: &StratifiedTrop) -> String {
    format!("extended {fan_ref}\n{s}")
}

/// Reads `extended <fan>` and one `stratum [..] empty|full|cells k` record
/// per cone, each `cells` record followed by its `k` cell lines.
pub fn parse_stratified(text: &str, resolve: &FanResolver<'_>) -> Result<(String, StratifiedTrop)> {
    let ls = lines(text);
    let Some(head) = ls.first().filter(|l| l.key == "extended") else {
        return err(ls.first().map_or(1, |l| l.no), "expected 'extended <fan>'");
    };
    let fan_ref = head.rest.to_string();
    let fan = relocate(resolve(&fan_ref), head.no, head.offset)?;
    let mut strata = BTreeMap::new();
    let mut i = 1;
    while i < ls.len() {
        let l = &ls[i];
        if l.key != "stratum" {
            return err(
                l.no,
                format!("expected a stratum record, found '{}'", l.key),
            );
        }
        let Some((idx, kind)) = l.rest.strip_prefix('[').and_then(|r| r.split_once(']')) else {
            return err(l.no, "expected 'stratum [i,j,..] kind'");
        };
        let cone: Vec<usize> = idx
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .or_else(|_| err(l.no, format!("bad ray index '{s}'")))
            })
            .collect::<Result<_>>()?;
        let kind: Vec<&str> = kind.split_whitespace().collect();
        i += 1;
        let s = match kind.as_slice() {
            ["empty"] => Stratum::Empty,
            ["full"] => Stratum::Full,
            ["cells", k] => {
                let k: usize = k.parse().or_else(|_| err(l.no, "bad cell count"))?;
                if i + k > ls.len() {
                    return err(l.no, "missing cell lines");
                }
                let rank = fan
                    .rank()
                    .checked_sub(cone.len())
                    .ok_or_else(|| Error::Parse {
                        line: l.no,
                        col: 1,
                        msg: "cone too large".into(),
                    })?;
                let cells = ls[i..i + k]
                    .iter()
                    .map(|c| parse_cell(c, rank))
                    .collect::<Result<Vec<_>>>()?;
                i += k;
                Stratum::Cells(GRatPolyComplex::new(rank, cells))
            }
            _ => return err(l.no, "stratum kind must be empty, full or cells <k>"),
        };
        if strata.insert(cone.clone(), s).is_some() {
            return err(l.no, format!("stratum {cone:?} listed twice"));
        }
    }
    let s = relocate(StratifiedTrop::from_strata(fan, strata), head.no, 0)?;
    Ok((fan_ref, s))
}

// presentations and diagrams

fn mode_name(m: ValMode) -> &'static str {
    match m {
        ValMode::Trivial => "trivial",
        _ => "puiseux",
    }
}

pub fn presentation_to_text(p: &Presentation) -> String {
    let amb = match p.ambient() {
        Ambient::Affine => "affine",
        Ambient::Projective => "projective",
    };
    let mut s = format!(
        "ambient {amb} {}\nparameters {}\nmode {}\n",
        p.rank(),
        p.param_rank(),
        mode_name(p.mode())
    );
    for r in p.relations() {
        let _ = writeln!(s, "relation {r}");
    }
    for q in p.param() {
        let _ = writeln!(s, "param {q}");
    }
    s
}

fn parse_presentation_lines(ls: &[Line<'_>]) -> Result<Presentation> {
    let mut ambient = None;
    let mut params_rank = None;
    let mut mode = ValMode::Puiseux;
    let mut rels: Vec<&Line<'_>> = Vec::new();
    let mut params: Vec<&Line<'_>> = Vec::new();
    for l in ls {
        match l.key {
            "ambient" => {
                let mut it = l.rest.split_whitespace();
                ambient = Some(match it.next() {
                    Some("affine") => Ambient::Affine,
                    Some("projective") => Ambient::Projective,
                    _ => return err(l.no, "ambient must be affine or projective"),
                });
            }
            "parameters" => params_rank = Some(usize_of(l)?),
            "mode" => {
                mode = match l.rest {
                    "trivial" => ValMode::Trivial,
                    "puiseux" => ValMode::Puiseux,
                    _ => return err(l.no, "mode must be puiseux or trivial"),
                }
            }
            "relation" => rels.push(l),
            "param" => params.push(l),
            k => return err(l.no, format!("unexpected record '{k}' in a presentation")),
        }
    }
    let ambient = ambient.ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: "missing ambient record".into(),
    })?;
    let k = match params_rank {
        Some(k) => k,
        None => {
            let mut k = 1;
            for l in &params {
                k = k.max(relocate(parse_poly(l.rest, None), l.no, l.offset)?.rank());
            }
            k
        }
    };
    let param = params
        .iter()
        .map(|l| {
            relocate(
                parse_poly(l.rest, Some(k)).and_then(|q| q.with_mode(mode)),
                l.no,
                l.offset,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let n = param.len();
    let relations = rels
        .iter()
        .map(|l| {
            relocate(
                parse_poly(l.rest, Some(n)).and_then(|q| q.with_mode(mode)),
                l.no,
                l.offset,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let no = ls.first().map_or(1, |l| l.no);
    relocate(
        Presentation::new(ambient, relations, param).and_then(|p| p.with_mode(mode)),
        no,
        0,
    )
}

/// Reads a presentation: `ambient affine|projective n`, optional
/// `parameters k` and `mode`, then `relation` and `param` records.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_lines(&lines(text))
}

fn gen_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("g{i}")).collect()
}

fn edge_expr(map: &ExtendedMonoidMap, k: usize) -> Result<Vec<String>> {
    let sm = map.source().monoid(map.source_chart())?;
    let names = gen_names(k);
    map.table()
        .iter()
        .map(|img| match img {
            None => Ok("0".to_string()),
            Some(w) => {
                let c = sm
                    .decompose(w)
                    .ok_or_else(|| Error::Domain(format!("{w} is outside the source monoid")))?;
                let parts: Vec<String> = c
                    .iter()
                    .zip(&names)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, n)| {
                        if *e == 1 {
                            n.clone()
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
                Ok(if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                })
            }
        })
        .collect()
}

fn projective_index(e: &Embedding) -> Option<usize> {
    e.family()?;
    let m = e.fan().rank();
    if **e.fan() != Fan::projective_space(m) {
        return None;
    }
    let skip = (0..=m).find(|r| !e.chart().contains(r))?;
    Some(if skip == m { 0 } else { skip + 1 })
}

pub fn diagram_to_text(d: &EmbeddingDiagram) -> Result<String> {
    let mut s = presentation_to_text(d.presentation());
    for e in d.nodes() {
        let _ = writeln!(s, "node {}", e.name);
        if let Some(i) = projective_index(e) {
            let _ = writeln!(s, "  projective {i}");
        } else {
            let k = e.gens().len();
            let all: Vec<usize> = (0..k).collect();
            if **e.fan() != Fan::affine_space(k) || e.chart() != all {
                for l in fan_to_text(e.fan()).lines() {
                    let _ = writeln!(s, "  {l}");
                }
                let _ = writeln!(s, "  chart {}", join_usize(e.chart()));
            } else {
                s.push_str("  affine\n");
            }
            let g: Vec<String> = e.gens().iter().map(|g| g.to_string()).collect();
            let _ = writeln!(s, "  gens {}", g.join(", "));
        }
        s.push_str("end\n");
    }
    for edge in d.edges() {
        let k = d.nodes()[edge.source].gens().len();
        let _ = writeln!(
            s,
            "edge {} -> {} : {}",
            edge.source,
            edge.target,
            edge_expr(&edge.map, k)?.join(", ")
        );
    }
    Ok(s)
}

fn split_top(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect()
}

/// Reads a presentation followed by `node NAME .. end` blocks and
/// `edge i -> j : e1, e2, ..` records. Each edge expression writes a target
/// generator as a monomial in the source generators `g1, g2, ..`, or `0`.
/// Edges are certified while reading.
pub fn parse_diagram(text: &str) -> Result<EmbeddingDiagram> {
    let ls = lines(text);
    let first_block = ls
        .iter()
        .position(|l| l.key == "node" || l.key == "edge")
        .unwrap_or(ls.len());
    let p = Arc::new(parse_presentation_lines(&ls[..first_block])?);
    let mut d = EmbeddingDiagram::new(p.clone());
    let mut i = first_block;
    while i < ls.len() {
        let l = &ls[i];
        match l.key {
            "node" => {
                let end = ls[i..]
                    .iter()
                    .position(|x| x.key == "end")
                    .map(|k| i + k)
                    .ok_or_else(|| Error::Parse {
                        line: l.no,
                        col: 1,
                        msg: "node without 'end'".into(),
                    })?;
                let e = parse_node(&p, l.rest, &ls[i + 1..end], l.no)?;
                relocate(d.add_node(e), l.no, 0)?;
                i = end + 1;
            }
            "edge" => {
                parse_edge(&mut d, l)?;
                i += 1;
            }
            k => return err(l.no, format!("unexpected record '{k}' in a diagram")),
        }
    }
    Ok(d)
}

fn parse_node(p: &Presentation, name: &str, body: &[Line<'_>], no: usize) -> Result<Embedding> {
    let mut gens: Option<Vec<LaurentPoly>> = None;
    let mut chart: Option<Vec<usize>> = None;
    let mut affine = false;
    let mut fan_lines = Vec::new();
    for (j, l) in body.iter().enumerate() {
        match l.key {
            "projective" => {
                let mut e = relocate(Embedding::projective_chart(p, usize_of(l)?), l.no, l.offset)?;
                e.name = name.to_string();
                return Ok(e);
            }
            "affine" => affine = true,
            "gens" => {
                let g = split_top(l.rest)
                    .into_iter()
                    .map(|s| {
                        relocate(
                            parse_poly(s, Some(p.rank())).and_then(|q| q.with_mode(p.mode())),
                            l.no,
                            l.offset,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                gens = Some(g);
            }
            "chart" => chart = Some(ints(l)?.into_iter().map(|x| x.max(0) as usize).collect()),
            "fan" | "ray" | "cone" => fan_lines.push(j),
            k => return err(l.no, format!("unexpected record '{k}' in a node")),
        }
    }
    let gens = gens.ok_or_else(|| Error::Parse {
        line: no,
        col: 1,
        msg: "node without generators".into(),
    })?;
    if affine {
        return relocate(Embedding::affine(name, gens), no, 0);
    }
    let (Some(&a), Some(&b)) = (fan_lines.first(), fan_lines.last()) else {
        return err(no, "node needs 'affine', 'projective i', or a fan");
    };
    let fan = Arc::new(parse_fan_lines(body, a, b + 1)?);
    let chart = chart.ok_or_else(|| Error::Parse {
        line: no,
        col: 1,
        msg: "toric node without chart".into(),
    })?;
    relocate(Embedding::toric(name, fan, &chart, gens), no, 0)
}

fn parse_edge(d: &mut EmbeddingDiagram, l: &Line<'_>) -> Result<()> {
    let Some((ends, exprs)) = l.rest.split_once(':') else {
        return err(l.no, "expected 'edge i -> j : exprs'");
    };
    let Some((a, b)) = ends.split_once("->") else {
        return err(l.no, "expected 'i -> j'");
    };
    let idx = |s: &str| -> Result<usize> {
        let k: usize = s
            .trim()
            .parse()
            .or_else(|_| err(l.no, format!("bad node index '{}'", s.trim())))?;
        if k >= d.nodes().len() {
            return err(l.no, format!("no node {k}"));
        }
        Ok(k)
    };
    let (si, ti) = (idx(a)?, idx(b)?);
    let (s, t) = (&d.nodes()[si], &d.nodes()[ti]);
    let sm = relocate(s.fan().monoid(s.chart()), l.no, 0)?;
    let names = gen_names(s.gens().len());
    let mut table = Vec::new();
    for x in split_top(exprs) {
        if x == "0" {
            table.push(None);
            continue;
        }
        let m = relocate(parse_poly_named(x, &names), l.no, 0)?;
        let Some((u, c)) = m.terms().next().filter(|_| m.num_terms() == 1) else {
            return err(
                l.no,
                format!("'{x}' is not a monomial in the source generators"),
            );
        };
        if !c.is_constant()
            || c.coefficient(&Rational::from_integer(0.into())) != Rational::from_integer(1.into())
        {
            return err(l.no, format!("'{x}' must have coefficient 1"));
        }
        if u.entries().iter().any(|&e| e < 0) {
            return err(l.no, format!("'{x}' has a negative exponent"));
        }
        let coeffs: Vec<u64> = u.entries().iter().map(|&e| e as u64).collect();
        table.push(Some(sm.combine(&coeffs)));
    }
    let map = relocate(
        ExtendedMonoidMap::from_table(
            s.fan().clone(),
            s.chart(),
            t.fan().clone(),
            t.chart(),
            table,
        ),
        l.no,
        0,
    )?;
    d.add_edge(si, ti, map).map_err(|e| match e {
        Error::Certification { .. } => e,
        other => Error::Parse {
            line: l.no,
            col: 1,
            msg: other.to_string(),
        },
    })
}

/// Built-in fans by name: `A<n>`, `P<n>`, `T<n>`.
pub fn builtin_fan(name: &str) -> Option<Fan> {
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().ok()?;
    if n == 0 || n > 8 {
        return None;
    }
    match kind {
        "A" => Some(Fan::affine_space(n)),
        "P" => Some(Fan::projective_space(n)),
        "T" => Some(Fan::torus(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::extended_trop;
    use crate::valfield::{int, rat};

    fn builtin(name: &str) -> Result<Arc<Fan>> {
        builtin_fan(name)
            .map(Arc::new)
            .ok_or_else(|| Error::Domain(format!("unknown fan {name}")))
    }

    #[test]
    fn fan_round_trip() {
        let f = Fan::projective_space(2);
        let t = fan_to_text(&f);
        assert_eq!(parse_fan(&t).unwrap(), f);
        let g = parse_fan("# a plane\nfan 2\nray 1 0\nray 0 1\ncone 0 1\n").unwrap();
        assert_eq!(g, Fan::affine_space(2));
        match parse_fan("fan 2\nray 1 0\nray 0 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_fan("fan 2\nray 2 0\n").is_err());
    }

    #[test]
    fn complex_round_trip() {
        let c = crate::tropvar::trop_hypersurface(&"x + y + t".parse().unwrap())
            .unwrap()
            .complex;
        let back = parse_complex(&complex_to_text(&c)).unwrap();
        assert!(back.support_eq(&c));
        assert_eq!(back.cells().len(), c.cells().len());
        let seg = parse_complex("complex 2\ncell (0, 0) (1/2, 1) |\n").unwrap();
        assert!(seg.contains_point(&[rat(1, 4), rat(1, 2)]));
    }

    #[test]
    fn point_round_trip() {
        let fan = builtin("P2").unwrap();
        let p = ExtendedPoint::new(fan.clone(), &[0, 1], &[0], vec![int(3)]).unwrap();
        let t = point_to_text("P2", &p);
        let (r, q) = parse_point(&t, &builtin).unwrap();
        assert_eq!(r, "P2");
        assert!(p.glue_equal(&q));
        assert_eq!(point_to_text("P2", &q), t);
        assert!(parse_point("point P2\nchart 0 1\nvalue (1, 0) 1\n", &builtin).is_err());
        assert!(parse_point("point Q7\n", &builtin).is_err());
    }

    #[test]
    fn stratified_round_trip() {
        let fan = builtin("P2").unwrap();
        let s = extended_trop(&"x + y + 1".parse().unwrap(), fan).unwrap();
        let t = stratified_to_text("P2", &s);
        let (_, back) = parse_stratified(&t, &builtin).unwrap();
        assert_eq!(stratified_to_text("P2", &back), t);
        let full = extended_trop(&"x + y".parse().unwrap(), builtin("A2").unwrap()).unwrap();
        let t = stratified_to_text("A2", &full);
        assert!(t.contains("full"));
        assert_eq!(
            stratified_to_text("A2", &parse_stratified(&t, &builtin).unwrap().1),
            t
        );
    }

    const LINE: &str = "\
ambient affine 2
parameters 1
relation x + y + 1
param x
param -1 - x
node coordinates
  affine
  gens x, y
end
node swap
  affine
  gens y, x
end
edge 0 -> 1 : g2, g1
";

    #[test]
    fn diagram_round_trip() {
        let d = parse_diagram(LINE).unwrap();
        assert_eq!(d.nodes().len(), 2);
        assert_eq!(d.edges().len(), 1);
        let t = diagram_to_text(&d).unwrap();
        let again = diagram_to_text(&parse_diagram(&t).unwrap()).unwrap();
        assert_eq!(t, again);
        let (f, g) = (
            parse_poly("x^2", Some(2)).unwrap(),
            parse_poly("x*y", Some(2)).unwrap(),
        );
        let proof = EmbeddingDiagram::main_proof(d.presentation().clone(), &f, &g).unwrap();
        let t = diagram_to_text(&proof).unwrap();
        assert_eq!(diagram_to_text(&parse_diagram(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn diagram_certification_names_generator() {
        let bad = LINE.replace("g2, g1", "g1, g2");
        match parse_diagram(&bad) {
            Err(Error::Certification { generator, .. }) => assert_eq!(generator, "y"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projective_diagram_round_trip() {
        let text = "\
ambient projective 3
parameters 1
relation x + y + z
param 1
param x
param -1 - x
node chart x0
  projective 0
end
node chart x1
  projective 1
end
node chart x2
  projective 2
end
";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.nodes().len(), 3);
        let t = diagram_to_text(&d).unwrap();
        assert_eq!(diagram_to_text(&parse_diagram(&t).unwrap()).unwrap(), t);
    }
}
