//! The `troplim` command line.
//!
//! Every subcommand returns its text output and whether its checks passed;
//! the binary only prints and sets the exit status.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::anlim::{limit_check, sample_points};
use crate::basechange::{
    base_change_check, certify_projection, generic_projection, image_contained,
    pushforward_initial_check, LatticeSurjection,
};
use crate::closure::extended_trop;
use crate::error::{Error, Result};
use crate::io::{
    builtin_fan, complex_to_text, parse_complex, parse_diagram, parse_fan, parse_point,
    point_to_text, stratified_to_text,
};
use crate::laurent::LaurentPoly;
use crate::polyhedra::{Fan, GRatPolyComplex, LatticeVec};
use crate::svg::{render_svg, Window};
use crate::text::parse_poly;
use crate::torictrop::{
    cox_coordinates, cox_data, cox_preimage, moment_map, trop_morphism, ExtendedMonoidMap,
    PolarizedFanData,
};
use crate::tropvar::{
    contains, grid_check, lift_point, trivial_trop, trop_assumed_basis, trop_hypersurface,
};
use crate::valfield::{int, parse_rational, Rational, ValMode};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "troplim",
    version,
    about = "Exact extended tropicalizations and analytification checks"
)]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Grid step `p/q` for oracle comparisons.
    #[arg(long, global = true)]
    pub grid_step: Option<String>,
    /// Window `a,b,c,d` meaning `[a,b] x [c,d]`.
    #[arg(long = "box", global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Truncation order `p/q` for series lifts.
    #[arg(long, global = true, default_value = "4")]
    pub precision: String,
    #[arg(long, global = true, default_value_t = 4)]
    pub degree_bound: usize,
    /// Use the trivial valuation on constants.
    #[arg(long, global = true)]
    pub trivial: bool,
    /// Write the output here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Tropical hypersurface of a Laurent polynomial.
    Trop {
        poly: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Initial form at a weight.
    Init {
        poly: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Whether a weight lies on the tropical hypersurface.
    Member {
        poly: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// For a plane curve, also print a lifted point with these valuations.
        #[arg(long)]
        witness: bool,
    },
    /// Extended tropicalization over a fan (`A2`, `P2`, ... or a fan file).
    Extend {
        poly: String,
        #[arg(long)]
        fan: String,
    },
    /// Apply `Trop(φ)` for a lattice map to a point file.
    Map {
        point: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        chart: String,
        /// Rows indexed by the target, e.g. `1,0;1,1`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Moment map image of a point on a projective space or polarized fan.
    Moment {
        point: PathBuf,
        /// Characters `u_σ` per maximal cone, e.g. `0,0;1,0;0,1`.
        #[arg(long, allow_hyphen_values = true)]
        chars: Option<String>,
    },
    /// Cox quotient data, and the preimage of a point when given.
    Cox {
        fan: String,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Coherence, separation and round-trip report for a diagram file.
    LimitCheck { diagram: PathBuf },
    /// Tropicalization for the trivial valuation.
    Trivial { poly: String },
    /// Base change invariance, and initial forms along a surjection.
    Basechange {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Certified generic projection of a complex file or an assumed basis.
    Project {
        complex: Option<PathBuf>,
        /// Polynomials separated by `;`, intersected as a tropical basis.
        #[arg(long)]
        basis: Option<String>,
        /// A hypersurface of the target that must contain the image.
        #[arg(long)]
        image: Option<String>,
        /// Check this matrix instead of searching.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// SVG picture of a rank-2 extended tropicalization.
    Plot {
        poly: String,
        #[arg(long, default_value = "T2")]
        fan: String,
    },
}

/// Text produced by a job, and whether all of its checks held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

/// Built-in name or fan file path.
pub fn resolve_fan(name: &str) -> Result<Arc<Fan>> {
    if let Some(f) = builtin_fan(name) {
        return Ok(Arc::new(f));
    }
    let text = read(&PathBuf::from(name))?;
    parse_fan(&text).map(Arc::new)
}

fn poly_arg(s: &str, rank: Option<usize>, o: &Options) -> Result<LaurentPoly> {
    let text = match s.strip_prefix('@') {
        Some(path) => read(&PathBuf::from(path))?,
        None => s.to_string(),
    };
    let f = parse_poly(text.trim(), rank)?;
    if o.trivial {
        f.with_mode(ValMode::Trivial)
    } else {
        Ok(f)
    }
}

fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(parse_rational)
        .collect()
}

fn int_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Domain(format!("bad matrix entry '{}'", x.trim())))
                })
                .collect()
        })
        .collect()
}

fn index_list(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<usize>()
                .map_err(|_| Error::Domain(format!("bad index '{x}'")))
        })
        .collect()
}

fn window(o: &Options, rank: usize) -> Result<Vec<(Rational, Rational)>> {
    match &o.window {
        None => Ok(vec![(int(-5), int(5)); rank]),
        Some(s) => {
            let v = rational_list(s)?;
            if v.len() != 2 * rank {
                return Err(Error::Domain(format!("--box needs {} numbers", 2 * rank)));
            }
            Ok(v.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
        }
    }
}

/// Significant-digit formatting for floating-point output.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn trop_text(c: &GRatPolyComplex, f: &LaurentPoly, o: &Options, out: &mut String) -> Result<bool> {
    out.push_str(&complex_to_text(c));
    if let Some(step) = &o.grid_step {
        let r = grid_check(f, c, &parse_rational(step)?, &window(o, f.rank())?)?;
        let _ = writeln!(
            out,
            "grid {} points, {} on the hypersurface, {} discrepancies",
            r.points,
            r.members,
            r.discrepancies.len()
        );
        return Ok(r.discrepancies.is_empty());
    }
    Ok(true)
}

/// Runs one job.
pub fn run(job: &JobSpec) -> Result<Outcome> {
    let o = &job.options;
    match &job.command {
        Command::Trop { poly, rank } => {
            let f = poly_arg(poly, *rank, o)?;
            let t = trop_hypersurface(&f)?;
            let mut out = String::new();
            let ok = trop_text(&t.complex, &f, o, &mut out)?;
            for d in &t.diagnostics {
                let _ = writeln!(out, "note: {d}");
            }
            Ok(Outcome { text: out, ok })
        }
        Command::Trivial { poly } => {
            let f = poly_arg(poly, None, o)?;
            let t = trivial_trop(&f)?;
            let mut out = String::new();
            let ok = trop_text(&t.complex, &f.with_mode(ValMode::Trivial)?, o, &mut out)?;
            Ok(Outcome { text: out, ok })
        }
        Command::Init { poly, weight } => {
            let w = rational_list(weight)?;
            let f = poly_arg(poly, Some(w.len()), o)?;
            let g = f.initial_form(&w)?;
            let flag = if g.is_monomial() {
                "monomial"
            } else {
                "not a monomial"
            };
            Ok(Outcome::ok(format!("{g}\n{flag}\n")))
        }
        Command::Member {
            poly,
            weight,
            witness,
        } => {
            let w = rational_list(weight)?;
            let f = poly_arg(poly, Some(w.len()), o)?;
            let inside = contains(&f, &w);
            let mut out = format!("{inside}\n");
            if *witness && inside {
                let y = lift_point(&f, &w, &parse_rational(&o.precision)?)?;
                let c: Vec<String> = y.coords.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "witness ({})", c.join(", "));
            }
            Ok(Outcome::ok(out))
        }
        Command::Extend { poly, fan } => {
            let fan_arc = resolve_fan(fan)?;
            let f = poly_arg(poly, Some(fan_arc.rank()), o)?;
            let s = extended_trop(&f, fan_arc)?;
            Ok(Outcome::ok(stratified_to_text(fan, &s)))
        }
        Command::Map {
            point,
            target,
            chart,
            matrix,
        } => {
            let (_, p) = parse_point(&read(point)?, &resolve_fan)?;
            let t = resolve_fan(target)?;
            let phi = ExtendedMonoidMap::from_lattice_map(
                p.fan().clone(),
                p.chart(),
                t,
                &index_list(chart)?,
                &int_matrix(matrix)?,
            )?;
            let q = trop_morphism(&phi, &p)?;
            Ok(Outcome::ok(point_to_text(target, &q)))
        }
        Command::Moment { point, chars } => {
            let (fan_ref, p) = parse_point(&read(point)?, &resolve_fan)?;
            let pol = match chars {
                Some(c) => {
                    let rows = int_matrix(c)?.into_iter().map(LatticeVec).collect();
                    PolarizedFanData::new(p.fan().clone(), rows)?
                }
                None => {
                    let n = p.fan().rank();
                    if **p.fan() != Fan::projective_space(n) {
                        return Err(Error::Domain(format!(
                            "{fan_ref} is not a projective space; pass --chars"
                        )));
                    }
                    PolarizedFanData::projective_space(n)
                }
            };
            let m = moment_map(&p, &pol)?;
            let parts: Vec<String> = m.iter().map(|x| fmt_sig(*x, 12)).collect();
            Ok(Outcome::ok(format!("({})\n", parts.join(", "))))
        }
        Command::Cox { fan, point } => {
            let data = cox_data(resolve_fan(fan)?)?;
            let mut out = String::new();
            let rows: Vec<String> = data
                .projection
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let _ = writeln!(out, "projection {}", rows.join(";"));
            out.push_str(&crate::io::fan_to_text(&data.cover));
            if let Some(path) = point {
                let (_, p) = parse_point(&read(path)?, &resolve_fan)?;
                let pre = cox_preimage(&data, &p)?;
                let coords: Vec<String> = cox_coordinates(&data, &p)?
                    .iter()
                    .map(|c| {
                        c.as_ref()
                            .map_or("inf".to_string(), crate::valfield::fmt_rational)
                    })
                    .collect();
                let _ = writeln!(out, "preimage ({})", coords.join(", "));
                let back = trop_morphism(&data.morphism(pre.chart())?, &pre)?;
                let ok = back.glue_equal(&p);
                let _ = writeln!(out, "round trip {}", if ok { "ok" } else { "FAILED" });
                return Ok(Outcome { text: out, ok });
            }
            Ok(Outcome::ok(out))
        }
        Command::LimitCheck { diagram } => {
            let d = parse_diagram(&read(diagram)?)?;
            let pts = sample_points(d.presentation(), o.samples, o.seed);
            let r = limit_check(&d, &pts, o.degree_bound)?;
            let mut out = String::new();
            let _ = writeln!(out, "points {}", r.points);
            let _ = writeln!(out, "coherent {}/{}", r.coherent, r.points);
            let _ = writeln!(out, "separated {}/{}", r.separated, r.pairs);
            let _ = writeln!(out, "reconstructed {}/{}", r.reconstructed, r.values);
            for f in &r.failures {
                let _ = writeln!(out, "failure: {f}");
            }
            Ok(Outcome {
                text: out,
                ok: r.passed(),
            })
        }
        Command::Basechange {
            poly,
            matrix,
            weight,
        } => {
            let mut out = String::new();
            match (matrix, weight) {
                (Some(m), Some(w)) => {
                    let a = int_matrix(m)?;
                    let n = a.first().map_or(0, |r| r.len());
                    let phi = LatticeSurjection::new(a, n)?;
                    let f = poly_arg(poly, Some(phi.target_rank()), o)?;
                    let ok = pushforward_initial_check(&phi, &f, &rational_list(w)?)?;
                    let _ = writeln!(out, "initial forms commute: {ok}");
                    Ok(Outcome { text: out, ok })
                }
                (None, None) => {
                    let f = poly_arg(poly, None, o)?;
                    let ok = base_change_check(&f)?;
                    let _ = writeln!(out, "trivial and Puiseux tropicalizations agree: {ok}");
                    Ok(Outcome { text: out, ok })
                }
                _ => Err(Error::Domain("--matrix and --weight go together".into())),
            }
        }
        Command::Project {
            complex,
            basis,
            image,
            matrix,
        } => {
            let c = match (complex, basis) {
                (Some(path), None) => parse_complex(&read(path)?)?,
                (None, Some(b)) => {
                    let polys: Vec<LaurentPoly> = b
                        .split(';')
                        .map(|s| poly_arg(s.trim(), None, o))
                        .collect::<Result<_>>()?;
                    let n = polys.iter().map(|p| p.rank()).max().unwrap_or(1);
                    let polys: Vec<LaurentPoly> = polys
                        .into_iter()
                        .map(|p| p.map_exponents(&widen(p.rank(), n), n))
                        .collect();
                    trop_assumed_basis(&polys)?
                }
                _ => {
                    return Err(Error::Domain(
                        "give either a complex file or --basis".into(),
                    ))
                }
            };
            let phi = match matrix {
                Some(m) => LatticeSurjection::new(int_matrix(m)?, c.rank())?,
                None => generic_projection(&c, o.seed)?,
            };
            let mut ok = certify_projection(&c, &phi)?;
            let mut out = format!("projection {phi}\ncertified {ok}\n");
            if let Some(g) = image {
                let g = poly_arg(g, Some(phi.target_rank()), o)?;
                let inside = image_contained(&phi, &c, &g)?;
                let _ = writeln!(out, "image contained: {inside}");
                ok &= inside;
            }
            Ok(Outcome { text: out, ok })
        }
        Command::Plot { poly, fan } => {
            let fan_arc = resolve_fan(fan)?;
            let f = poly_arg(poly, Some(fan_arc.rank()), o)?;
            let s = extended_trop(&f, fan_arc)?;
            let b = window(o, 2)?;
            let w = Window::new(
                b[0].0.clone(),
                b[0].1.clone(),
                b[1].0.clone(),
                b[1].1.clone(),
            )?;
            Ok(Outcome::ok(render_svg(&s, &w)?))
        }
    }
}

/// Inclusion of `Z^k` into `Z^n` as the first coordinates.
fn widen(k: usize, n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Parses arguments, runs, writes output; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match JobSpec::try_parse_from(args) {
        Ok(s) => s,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&job) {
        Ok(out) => {
            let written = match &job.options.output {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Result<Outcome> {
        let mut v = vec!["troplim"];
        v.extend_from_slice(args);
        run(&JobSpec::try_parse_from(v).unwrap())
    }

    #[test]
    fn trop_prints_three_rays() {
        let out = job(&["trop", "x + y + 1", "--grid-step", "1/4"]).unwrap();
        assert!(out.ok);
        for r in ["(1, 0)", "(0, 1)", "(-1, -1)"] {
            assert!(out.text.contains(r), "{}", out.text);
        }
        assert!(out.text.contains("0 discrepancies"));
    }

    #[test]
    fn init_flags_monomial() {
        let out = job(&["init", "x + y + t", "2,0"]).unwrap();
        assert_eq!(out.text, "y\nmonomial\n");
        let out = job(&["member", "x + y + t", "1,1"]).unwrap();
        assert_eq!(out.text, "true\n");
        let out = job(&[
            "member",
            "x + y + t",
            "1,2",
            "--witness",
            "--precision",
            "3",
        ])
        .unwrap();
        assert_eq!(out.text, "true\nwitness (-t - 2*t^2, 2*t^2)\n");
        let out = job(&["init", "x + y + 1", "-1,-1"]).unwrap();
        assert!(out.text.ends_with("not a monomial\n"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match job(&["trop", "x + * y"]) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn checks_and_plots() {
        assert!(job(&["basechange", "x^2*y + x*y^2 + 1"]).unwrap().ok);
        assert!(
            job(&[
                "basechange",
                "x + y + 1",
                "--matrix",
                "1,0,1;0,1,1",
                "--weight",
                "1,-2,1/2"
            ])
            .unwrap()
            .ok
        );
        let p = job(&[
            "project",
            "--basis",
            "x + 2*y + 3*z; y + 2*z - 1; x - z + 2; 2*x + y + 3",
            "--matrix",
            "1,0,1;0,1,1",
            "--image",
            "4*x^2 + 4*x*y + y^2 + 3*x + 6*y",
        ])
        .unwrap();
        assert!(p.ok, "{}", p.text);
        let svg = job(&["plot", "x + y + 1", "--fan", "P2", "--box", "-3,3,-3,3"]).unwrap();
        assert_eq!(
            svg,
            job(&["plot", "x + y + 1", "--fan", "P2", "--box", "-3,3,-3,3"]).unwrap()
        );
        assert_eq!(svg.text.matches("class=\"stratum\"").count(), 3);
        assert!(matches!(
            job(&["plot", "x + y + z", "--fan", "P3"]),
            Err(Error::UnsupportedRank { .. })
        ));
        let e = job(&["extend", "x + y + 1", "--fan", "P2"]).unwrap();
        assert!(e.text.starts_with("extended P2\n"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.5, 12), "0.5");
        assert_eq!(fmt_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_sig(0.0, 12), "0");
    }
}
