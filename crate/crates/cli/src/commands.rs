use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use dedal::billiard::{orbit_with, verify_fagnano_with};
use dedal::classify::{regularity, similarity_witness, thm0_verify, thm1_class};
use dedal::dedal::{dedal, dedal_even, dedal_odd, develop};
use dedal::dynamics::{bgs_experiment, distance_to_attractor, iterate};
use dedal::spectral::{basis_vector, decompose, project_class};
use dedal::{Complex64, Convention, Error, Polygon, Termination};
use serde::Serialize;
use serde_json::{json, Value};

use crate::svg::{self, Panel};
use crate::{Cli, Command, Common, Format, Member};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, message: String },
    Parse { path: PathBuf, message: String },
    Domain(Error),
    CheckFailed { error: f64, bound: f64 },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Domain(Error::TooFewVertices(_) | Error::InvalidArgument(_)) => 2,
            CliError::Domain(_) | CliError::CheckFailed { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
            CliError::Io { path, message } => {
                json!({"error": "io", "path": path, "message": message})
            }
            CliError::Parse { path, message } => {
                json!({"error": "parse", "path": path, "message": message})
            }
            CliError::CheckFailed { error, bound } => json!({
                "error": "round_trip",
                "message": "developing the dedal polygon does not reproduce the input",
                "max_error": error,
                "bound": bound,
            }),
            CliError::Domain(e) => {
                let mut v = json!({"error": domain_code(e), "message": e.to_string()});
                match e {
                    Error::NoDedal { defect } => v["defect"] = json!([defect.re, defect.im]),
                    Error::Singular { side } => v["side"] = json!(side),
                    Error::WitnessVerification { residual } => v["residual"] = json!(residual),
                    Error::TooFewVertices(n) => v["n"] = json!(n),
                    _ => {}
                }
                v
            }
        }
    }
}

fn domain_code(e: &Error) -> &'static str {
    match e {
        Error::TooFewVertices(_) => "too_few_vertices",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::SizeMismatch(..) => "size_mismatch",
        Error::Parity { .. } => "parity",
        Error::NoDedal { .. } => "no_dedal",
        Error::PointPolygon => "point_polygon",
        Error::NotAffinelyRegular => "not_affinely_regular",
        Error::NotInList => "not_in_list",
        Error::NoAttractor => "no_attractor",
        Error::WitnessVerification { .. } => "witness_verification",
        Error::InsideHull => "inside_hull",
        Error::Singular { .. } => "singular",
        Error::DegenerateTable => "degenerate_table",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_polygon(path: &Path) -> Result<Polygon> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| CliError::Io {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn emit(common: &Common, body: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io {
            path: path.clone(),
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: PathBuf::from("-"),
                    message: e.to_string(),
                })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for `{command}`").to_lowercase())
}

fn polygon_csv(p: &Polygon) -> String {
    let mut s = String::from("vertex,re,im\n");
    for (i, z) in p.vertices().iter().enumerate() {
        let _ = writeln!(s, "{},{},{}", i + 1, z.re, z.im);
    }
    s
}

/// Table `P` filled and labelled `z_i`, dedal polygon `Q` labelled `w_i`.
fn pair_svg(p: &Polygon, q: &Polygon) -> String {
    svg::render(&[Panel {
        table: Some(p.clone()),
        overlays: vec![q.clone()],
        label_overlays: true,
        ..Panel::default()
    }])
}

fn member_param(member: &Member) -> Option<Complex64> {
    match (member.s_re, member.s_im) {
        (None, None) => None,
        (re, im) => Some(Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))),
    }
}

fn dedal_member(p: &Polygon, member: &Member, tol: f64) -> Result<Polygon> {
    let s = member_param(member);
    if p.n() % 2 == 1 {
        if s.is_some() {
            return Err(CliError::Usage(format!(
                "--s-re/--s-im select a family member for even n; n = {} has a unique dedal polygon",
                p.n()
            )));
        }
        return Ok(dedal_odd(p)?);
    }
    let family = dedal_even(p, tol)?;
    Ok(family.member(s.unwrap_or_default()))
}

pub fn run(cli: &Cli) -> Result<()> {
    let common = &cli.common;
    if common.tol.is_nan() || common.tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            common.tol
        )));
    }
    let tol = common.tol;
    match &cli.command {
        Command::Dedal {
            input,
            member,
            check,
        } => {
            let p = read_polygon(input)?;
            let q = dedal_member(&p, member, tol)?;
            if *check {
                let error = develop(&q).max_distance(&p);
                let bound = tol * (1.0 + p.max_modulus());
                if error > bound {
                    return Err(CliError::CheckFailed { error, bound });
                }
            }
            let body = match common.format {
                Format::Json => to_json(&q),
                Format::Csv => polygon_csv(&q),
                Format::Svg => pair_svg(&p, &q),
            };
            emit(common, &body)
        }
        Command::Develop { input } => {
            let q = read_polygon(input)?;
            let p = develop(&q);
            let body = match common.format {
                Format::Json => to_json(&p),
                Format::Csv => polygon_csv(&p),
                Format::Svg => pair_svg(&p, &q),
            };
            emit(common, &body)
        }
        Command::Iterate { input, steps } => {
            let q = read_polygon(input)?;
            let trace = iterate(&q, *steps);
            let body = match common.format {
                Format::Json => {
                    let distances: Vec<Option<f64>> = trace
                        .classes
                        .iter()
                        .map(|c| c.as_ref().map(distance_to_attractor))
                        .collect();
                    to_json(&json!({
                        "n": q.n(),
                        "steps": trace.steps,
                        "polygons": trace.polygons,
                        "classes": trace.classes,
                        "distance_to_attractor": distances,
                    }))
                }
                Format::Csv => {
                    let mut s = String::from("step,vertex,re,im\n");
                    for (m, p) in trace.polygons.iter().enumerate() {
                        for (i, z) in p.vertices().iter().enumerate() {
                            let _ = writeln!(s, "{m},{},{},{}", i + 1, z.re, z.im);
                        }
                    }
                    s
                }
                Format::Svg => svg::render(&[Panel {
                    table: Some(q.clone()),
                    overlays: trace.polygons[1..].to_vec(),
                    ..Panel::default()
                }]),
            };
            emit(common, &body)
        }
        Command::Classify { input } => {
            if common.format != Format::Json {
                return Err(unsupported(common.format, "classify"));
            }
            let p = read_polygon(input)?;
            let mut v = serde_json::to_value(regularity(&p, tol)?).expect("serializable");
            let class = thm1_class(&p, tol)?;
            v["n"] = json!(p.n());
            v["thm0"] = json!(thm0_verify(&p, tol));
            v["similar_to_dedal"] = json!(class.in_list());
            v["thm1"] = serde_json::to_value(class).expect("serializable");
            v["witness"] = match similarity_witness(&p, tol) {
                Ok(w) => serde_json::to_value(w).expect("serializable"),
                Err(Error::NotInList) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            emit(common, &to_json(&v))
        }
        Command::Spectrum { input } => {
            let p = read_polygon(input)?;
            let a = decompose(&p);
            let body = match common.format {
                Format::Json => {
                    let class = project_class(&p).ok();
                    to_json(&json!({
                        "n": p.n(),
                        "coeffs": a,
                        "moduli": a.coeffs().iter().map(|z| z.norm()).collect::<Vec<_>>(),
                        "support": if a.is_point() { vec![] } else { a.support(tol) },
                        "class": class,
                    }))
                }
                Format::Csv => {
                    let mut s = String::from("index,re,im,abs\n");
                    for (i, z) in a.coeffs().iter().enumerate() {
                        let _ = writeln!(s, "{i},{},{},{}", z.re, z.im, z.norm());
                    }
                    s
                }
                Format::Svg => return Err(unsupported(common.format, "spectrum")),
            };
            emit(common, &body)
        }
        Command::Orbit {
            input,
            start,
            steps,
            convention,
        } => {
            let p = read_polygon(input)?;
            let z = Complex64::new(start.z_re, start.z_im);
            let trace = orbit_with(&p, z, *steps, tol, (*convention).into())?;
            match common.format {
                Format::Json => emit(common, &to_json(&trace)),
                Format::Csv => {
                    let mut s = String::from("step,re,im,support_vertex_index\n");
                    for (k, w) in trace.points.iter().enumerate() {
                        let v = trace
                            .support
                            .get(k)
                            .map(|v| v.to_string())
                            .unwrap_or_default();
                        let _ = writeln!(s, "{k},{},{},{v}", w.re, w.im);
                    }
                    emit(common, &s)?;
                    if common.out.is_some() {
                        print!("{}", to_json(&json!({ "termination": trace.termination })));
                    }
                    Ok(())
                }
                Format::Svg => emit(
                    common,
                    &svg::render(&[orbit_panel(
                        &p,
                        &trace.points,
                        &trace.support,
                        trace.termination,
                    )]),
                ),
            }
        }
        Command::Fagnano {
            input,
            member,
            convention,
        } => {
            let p = read_polygon(input)?;
            let q = dedal_member(&p, member, tol)?;
            let convention = convention
                .map(Into::into)
                .unwrap_or_else(|| Convention::matching(&p));
            let fagnano = verify_fagnano_with(&p, &q, tol, convention);
            let body = match common.format {
                Format::Json => to_json(&json!({
                    "fagnano": fagnano,
                    "convention": convention,
                    "dedal": q,
                    "dedal_convex": q.is_convex(tol),
                })),
                Format::Svg => pair_svg(&p, &q),
                Format::Csv => return Err(unsupported(common.format, "fagnano")),
            };
            emit(common, &body)
        }
        Command::Bgs {
            n,
            samples,
            seed,
            max_m,
        } => {
            let report = bgs_experiment(*n, *samples, *seed, *max_m)?;
            let body = match common.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from("m,count\n");
                    for (m, count) in &report.histogram {
                        let _ = writeln!(s, "{m},{count}");
                    }
                    s
                }
                Format::Svg => return Err(unsupported(common.format, "bgs")),
            };
            emit(common, &body)
        }
        Command::Render {
            inputs,
            dedal: with_dedal,
            overlay,
            z_re,
            z_im,
            steps,
            eigen,
        } => {
            let mut tables: Vec<(Option<String>, Polygon)> = Vec::new();
            for path in inputs {
                tables.push((None, read_polygon(path)?));
            }
            if let Some(n) = *eigen {
                for j in 1..n.div_ceil(2) {
                    tables.push((Some(format!("X_{j}")), basis_vector(n, j)?));
                }
            }
            if tables.is_empty() {
                return Err(CliError::Usage(
                    "render needs an input polygon or --eigen".into(),
                ));
            }
            let extra: Vec<Polygon> = overlay
                .iter()
                .map(|p| read_polygon(p))
                .collect::<Result<_>>()?;
            let mut panels = Vec::new();
            for (title, p) in tables {
                let mut panel = Panel {
                    title,
                    ..Panel::default()
                };
                if *with_dedal {
                    panel.overlays.push(dedal(&p, tol)?);
                    panel.label_overlays = true;
                }
                panel.overlays.extend(extra.iter().cloned());
                if let (Some(re), Some(im)) = (z_re, z_im) {
                    let trace = orbit_with(
                        &p,
                        Complex64::new(*re, *im),
                        *steps,
                        tol,
                        Convention::matching(&p),
                    )?;
                    panel.dots =
                        orbit_panel(&p, &trace.points, &trace.support, trace.termination).dots;
                }
                panel.table = Some(p);
                panels.push(panel);
            }
            emit(common, &svg::render(&panels))
        }
    }
}

/// Dots at every point the map was applied to, plus a final singular point.
fn orbit_panel(
    p: &Polygon,
    points: &[Complex64],
    support: &[usize],
    termination: Termination,
) -> Panel {
    let mut dots = points[..support.len()].to_vec();
    if let Termination::SingularHit { step, .. } = termination {
        dots.push(points[step]);
    }
    Panel {
        table: Some(p.clone()),
        dots,
        ..Panel::default()
    }
}
