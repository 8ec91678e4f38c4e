//! SVG pictures of rank-2 extended tropicalizations.
//!
//! Torus cells are clipped to the window. A boundary stratum of a cone `τ`
//! lives at infinity in the directions of `τ`; a point `c` of `N(τ)` is drawn
//! where the line through a lift of `c` in the direction of the sum of the
//! rays of `τ` leaves the window.

use std::fmt::Write as _;

use crate::closure::{StratifiedTrop, Stratum};
use crate::error::{Error, Result};
use crate::polyhedra::{GRatPolyComplex, Polyhedron};
use crate::valfield::{fmt_rational, rational_to_f64, Rational};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
/// Stand-in for the unbounded end of a ray inside a one-dimensional stratum.
const FAR: f64 = 1.0e4;
const SAMPLES: usize = 48;

/// `[x_min, x_max] × [y_min, y_max]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x: (Rational, Rational),
    pub y: (Rational, Rational),
}

impl Window {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Window> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::Domain(
                "window must have positive width and height".into(),
            ));
        }
        Ok(Window {
            x: (x0, x1),
            y: (y0, y1),
        })
    }

    fn polyhedron(&self) -> Polyhedron {
        let (a, b) = &self.x;
        let (c, d) = &self.y;
        let corners = vec![
            vec![a.clone(), c.clone()],
            vec![b.clone(), c.clone()],
            vec![b.clone(), d.clone()],
            vec![a.clone(), d.clone()],
        ];
        Polyhedron::new(2, corners, Vec::new())
    }

    fn bounds(&self) -> [f64; 4] {
        [
            rational_to_f64(&self.x.0),
            rational_to_f64(&self.x.1),
            rational_to_f64(&self.y.0),
            rational_to_f64(&self.y.1),
        ]
    }
}

struct Canvas {
    b: [f64; 4],
}

impl Canvas {
    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.b;
        let sx = (SIZE - 2.0 * MARGIN) / (x1 - x0);
        let sy = (SIZE - 2.0 * MARGIN) / (y1 - y0);
        (MARGIN + (p[0] - x0) * sx, SIZE - MARGIN - (p[1] - y0) * sy)
    }

    /// Where the line `base + λ dir` leaves the window going forward.
    fn exit(&self, base: [f64; 2], dir: [f64; 2]) -> [f64; 2] {
        let [x0, x1, y0, y1] = self.b;
        let lo = [x0, y0];
        let hi = [x1, y1];
        let mut lambda = f64::INFINITY;
        for k in 0..2 {
            if dir[k] > 0.0 {
                lambda = lambda.min((hi[k] - base[k]) / dir[k]);
            } else if dir[k] < 0.0 {
                lambda = lambda.min((lo[k] - base[k]) / dir[k]);
            }
        }
        let p = [base[0] + lambda * dir[0], base[1] + lambda * dir[1]];
        [p[0].clamp(x0, x1), p[1].clamp(y0, y1)]
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn to_f64(v: &[Rational]) -> [f64; 2] {
    [rational_to_f64(&v[0]), rational_to_f64(&v[1])]
}

fn draw_cell(out: &mut String, cv: &Canvas, c: &Polyhedron) {
    match c.dim() {
        0 => {
            let (x, y) = cv.px(to_f64(&c.vertices()[0]));
            let _ = writeln!(
                out,
                "    <circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"3\"/>",
                f(x),
                f(y)
            );
        }
        1 => {
            let vs = c.vertices();
            let (a, b) = (
                cv.px(to_f64(&vs[0])),
                cv.px(to_f64(vs.last().expect("vertex"))),
            );
            let _ = writeln!(
                out,
                "    <line class=\"cell\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                f(a.0),
                f(a.1),
                f(b.0),
                f(b.1)
            );
        }
        _ => {
            let pts: Vec<[f64; 2]> = c.vertices().iter().map(|v| to_f64(v)).collect();
            let cx = pts.iter().map(|p| p[0]).sum::<f64>() / pts.len() as f64;
            let cy = pts.iter().map(|p| p[1]).sum::<f64>() / pts.len() as f64;
            let mut order: Vec<(f64, [f64; 2])> = pts
                .iter()
                .map(|p| ((p[1] - cy).atan2(p[0] - cx), *p))
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0));
            let s: Vec<String> = order
                .iter()
                .map(|(_, p)| {
                    let (x, y) = cv.px(*p);
                    format!("{},{}", f(x), f(y))
                })
                .collect();
            let _ = writeln!(
                out,
                "    <polygon class=\"cell\" points=\"{}\"/>",
                s.join(" ")
            );
        }
    }
}

/// Torus cells clipped to the window; only maximal cells are drawn.
fn torus_cells(c: &GRatPolyComplex, w: &Window) -> Vec<Polyhedron> {
    let frame = w.polyhedron();
    c.maximal_cells()
        .into_iter()
        .filter_map(|p| p.intersection(&frame))
        .collect()
}

/// Renders the extended tropicalization of a rank-2 fan into the window.
pub fn render_svg(s: &StratifiedTrop, w: &Window) -> Result<String> {
    let fan = s.fan();
    if fan.rank() != 2 {
        return Err(Error::UnsupportedRank {
            rank: fan.rank(),
            limit: 2,
        });
    }
    let cv = Canvas { b: w.bounds() };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{}\" viewBox=\"0 0 {SIZE} {}\">",
        SIZE + 20.0 * fan.cones().len() as f64,
        SIZE + 20.0 * fan.cones().len() as f64
    );
    out.push_str("  <style>.cell{stroke:#1f4e9c;stroke-width:2;fill:#1f4e9c33}.stratum{fill:#c0392b}.frame{fill:none;stroke:#555}text{font:12px sans-serif}</style>\n");
    let (a, b) = cv.px([cv.b[0], cv.b[3]]);
    let _ = writeln!(
        out,
        "  <rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        f(a),
        f(b),
        f(SIZE - 2.0 * MARGIN),
        f(SIZE - 2.0 * MARGIN)
    );
    out.push_str("  <g class=\"torus\">\n");
    if let Some(c) = s.complex(&[]) {
        for cell in torus_cells(&c, w) {
            draw_cell(&mut out, &cv, &cell);
        }
    }
    out.push_str("  </g>\n  <g class=\"boundary\">\n");
    let mut legend = Vec::new();
    for (tau, stratum) in s.strata() {
        if tau.is_empty() || stratum.is_empty() {
            continue;
        }
        let cone = fan.cone(tau);
        let dir = cone.rays().iter().fold([0.0, 0.0], |acc, r| {
            [
                acc[0] + r.entries()[0] as f64,
                acc[1] + r.entries()[1] as f64,
            ]
        });
        let perp: Vec<Vec<Rational>> = cone.perp_basis().iter().map(|l| l.to_rational()).collect();
        let lift = |c: &[f64]| -> [f64; 2] {
            // least-squares lift through the perp basis, exact enough for drawing
            match perp.len() {
                0 => [0.0, 0.0],
                _ => {
                    let l = to_f64(&perp[0]);
                    let n = l[0] * l[0] + l[1] * l[1];
                    [c[0] * l[0] / n, c[0] * l[1] / n]
                }
            }
        };
        let mark = |out: &mut String, c: &[f64]| {
            let (x, y) = cv.px(cv.exit(lift(c), dir));
            let _ = writeln!(
                out,
                "    <circle class=\"stratum\" cx=\"{}\" cy=\"{}\" r=\"4\"/>",
                f(x),
                f(y)
            );
        };
        // stratum coordinates seen by the window
        let reach = perp.first().map_or(0.0, |l| {
            let l = to_f64(l);
            let [x0, x1, y0, y1] = cv.b;
            [[x0, y0], [x0, y1], [x1, y0], [x1, y1]]
                .iter()
                .map(|p| (l[0] * p[0] + l[1] * p[1]).abs())
                .fold(0.0, f64::max)
        });
        let path = |out: &mut String, lo: f64, hi: f64| {
            let (lo, hi) = (lo.max(-reach), hi.min(reach));
            let pts: Vec<String> = (0..=SAMPLES)
                .map(|k| {
                    let t = lo + (hi - lo) * k as f64 / SAMPLES as f64;
                    let (x, y) = cv.px(cv.exit(lift(&[t]), dir));
                    format!("{},{}", f(x), f(y))
                })
                .collect();
            let _ = writeln!(
                out,
                "    <polyline class=\"cell\" fill=\"none\" points=\"{}\"/>",
                pts.join(" ")
            );
        };
        let idx: Vec<String> = tau.iter().map(|i| i.to_string()).collect();
        match stratum {
            Stratum::Empty => {}
            Stratum::Full if perp.is_empty() => mark(&mut out, &[]),
            Stratum::Full => path(&mut out, -FAR, FAR),
            Stratum::Cells(c) => {
                for cell in c.maximal_cells() {
                    let vs: Vec<f64> = cell
                        .vertices()
                        .iter()
                        .map(|v| v.first().map_or(0.0, rational_to_f64))
                        .collect();
                    if cell.dim() == 0 {
                        mark(&mut out, &vs[..vs.len().min(1)]);
                    } else {
                        let mut lo = vs.iter().cloned().fold(f64::INFINITY, f64::min);
                        let mut hi = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                        for r in cell.rays() {
                            if r.entries()[0] > 0 {
                                hi = FAR;
                            } else {
                                lo = -FAR;
                            }
                        }
                        path(&mut out, lo, hi);
                    }
                }
            }
        }
        let desc = match stratum {
            Stratum::Cells(c) => c
                .maximal_cells()
                .iter()
                .map(|p| {
                    p.vertices()
                        .iter()
                        .map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; "),
            _ => "whole orbit".into(),
        };
        legend.push(format!("cone [{}]: {}", idx.join(","), desc));
    }
    out.push_str("  </g>\n  <g class=\"legend\">\n");
    for (i, l) in legend.iter().enumerate() {
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">{}</text>",
            f(MARGIN),
            f(SIZE + 20.0 * i as f64),
            l
        );
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}
