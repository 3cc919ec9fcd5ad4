//! Command-line interface: parse a scene file, dispatch one command, and
//! write a deterministic line-oriented report. Exit codes: 0 success, 1
//! check or verification failure, 2 parse error, 3 resource limit.

use std::fmt::Write as _;
use std::io::Read;
use std::panic;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vtri::error::Error;
use vtri::exactlin::{
    hausdorff_distance, lp_solve, set_pivot_cap, simplex_polyhedron, LPOutcome, Point,
};
use vtri::pipeline::{
    enforce_star_conditions, hausdorff_limit, lift_triangulation, set_dim_cap, v_triangulate,
    verify_v_triangulation, VTriangulation, DEFAULT_MAX_SUBDIVISIONS,
};
use vtri::plmap::{extend_over_subcomplex, v_good_direction, PLMap};
use vtri::scalar::FieldElement;
use vtri::scene::{parse_scene, print_scene, scene_of_complex, Scene};
use vtri::simplicial::{
    canonical_v_homeomorphism, complex_type, flag_subdivision_default, format_point,
    type_bijection, v_simplex_order, Complex, VComplex,
};

type F = FieldElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Line-oriented key/value report.
    Text,
    /// Machine-readable scene document where the result is a complex.
    Doc,
}

#[derive(Debug, Parser)]
#[command(name = "vtri", version, about = "Exact V-triangulation toolkit over Q(e)")]
struct Cli {
    /// Command: validate, st, prism, subdivide, gooddir, lift, triangulate,
    /// hausdorff, hauslim, type, homeo, extend, verify, or lp.
    command: String,
    /// Scene file to read; standard input when omitted.
    #[arg(long)]
    input: Option<String>,
    /// Report file to write; standard output when omitted.
    #[arg(long)]
    output: Option<String>,
    /// Seed for randomized probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rounds of subdivision (distinctness enforcement, `subdivide`).
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// Ambient-dimension cap for the triangulation pipeline.
    #[arg(long)]
    dim_cap: Option<usize>,
    /// Simplex-method pivot cap.
    #[arg(long)]
    pivot_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ParseError { .. } | Error::UnresolvedReference(_) | Error::NonRationalFamily(_) => 2,
        Error::ResourceLimit { .. } | Error::SearchExhausted { .. } => 3,
        _ => 1,
    }
}

fn first_complex(scene: &Scene) -> Result<Complex<F>, Error> {
    let (name, _) = scene
        .complexes
        .first()
        .ok_or_else(|| Error::UnresolvedReference("scene declares no complex".into()))?;
    scene.build_complex(name)
}

fn complex_named_or(scene: &Scene, name: &str, index: usize) -> Result<Complex<F>, Error> {
    if scene.complexes.iter().any(|(n, _)| n == name) {
        return scene.build_complex(name);
    }
    let (n, _) = scene.complexes.get(index).ok_or_else(|| {
        Error::UnresolvedReference(format!("scene declares no complex `{name}`"))
    })?;
    scene.build_complex(n)
}

fn rational_complex_to_field(k: &Complex<BigRational>) -> Result<Complex<F>, Error> {
    let tops: Vec<vtri::simplicial::Simplex<F>> = k
        .top_simplexes()
        .into_iter()
        .map(|s| {
            let verts: Vec<Point<F>> = s
                .vertices()
                .iter()
                .map(|v| v.iter().map(|c| F::from_rational(c.clone())).collect())
                .collect();
            vtri::simplicial::Simplex::new(verts)
        })
        .collect::<Result<_, _>>()?;
    vtri::simplicial::validate_complex(&tops)
}

fn complex_report(out: &mut String, label: &str, k: &Complex<F>) {
    let _ = writeln!(out, "{label}-vertices: {}", k.vertices().len());
    let _ = writeln!(out, "{label}-simplexes: {}", k.simplexes().len());
    let _ = writeln!(out, "{label}-dim: {}", k.dim());
    for s in k.top_simplexes() {
        let _ = writeln!(out, "{label}-top: {s}");
    }
}

fn emit_complex(cli: &Cli, name: &str, k: &Complex<F>, text: String) -> String {
    match cli.format {
        Format::Text => text,
        Format::Doc => print_scene(&scene_of_complex(name, k)),
    }
}

fn plmap_report(out: &mut String, label: &str, f: &PLMap<F>) {
    for (v, p) in f.vertex_table() {
        let _ = writeln!(out, "{label}: {} -> {}", format_point(&v), format_point(&p));
    }
}

fn verification_report_lines(
    y: &[Vec<Point<F>>],
    subsets: &[Vec<Vec<Point<F>>>],
    t: &VTriangulation,
) -> (String, bool) {
    let report = verify_v_triangulation(y, subsets, t);
    let mut out = report.to_string();
    if report.all_passed() {
        out.push_str("summary: all checks passed\n");
    } else {
        out.push_str("summary: verification failed\n");
    }
    (out, report.all_passed())
}

fn run(cli: &Cli, scene: &Scene) -> Result<(String, u8), Error> {
    let mut out = String::new();
    match cli.command.as_str() {
        "validate" => {
            if scene.complexes.is_empty() {
                for (name, _) in &scene.simplexes {
                    let s = scene.build_simplex(name)?;
                    let _ = writeln!(out, "simplex {name}: valid, dim {}", s.dim());
                }
            }
            for (name, _) in &scene.complexes {
                let k = scene.build_complex(name)?;
                let _ = writeln!(
                    out,
                    "complex {name}: valid, {} simplexes, dim {}",
                    k.simplexes().len(),
                    k.dim()
                );
            }
            Ok((out, 0))
        }
        "st" => {
            let k = first_complex(scene)?;
            let vk = VComplex::new(k)?;
            let st = rational_complex_to_field(vk.st_complex())?;
            for (v, sv) in vk.st_map() {
                let _ = writeln!(out, "st: {} -> {}", format_point(v), format_point(sv));
            }
            complex_report(&mut out, "st-complex", &st);
            Ok((emit_complex(cli, "st_k", &st, out), 0))
        }
        "prism" => {
            let (name, _) = scene
                .simplexes
                .first()
                .ok_or_else(|| Error::UnresolvedReference("scene declares no simplex".into()))?;
            let s = scene.build_simplex(name)?;
            let order = v_simplex_order(&s)?;
            let r = scene.point("r")?;
            let hs = scene.point("s")?;
            let prism = vtri::simplicial::prism_complex(&order, r, hs)?;
            complex_report(&mut out, "prism", prism.base());
            Ok((emit_complex(cli, "prism", prism.base(), out), 0))
        }
        "subdivide" => {
            let k = VComplex::new(first_complex(scene)?)?;
            let rounds = cli.max_subdivisions.unwrap_or(1);
            let mut sub = k;
            for _ in 0..rounds {
                sub = flag_subdivision_default(&sub)?;
            }
            complex_report(&mut out, "subdivision", sub.base());
            Ok((emit_complex(cli, "subdivision", sub.base(), out), 0))
        }
        "gooddir" => {
            let mut pieces: Vec<Vec<Point<F>>> = Vec::new();
            for (name, _) in &scene.complexes {
                pieces.extend(scene.build_complex(name)?.carrier());
            }
            for u in scene.all_subsets()? {
                pieces.extend(u);
            }
            if pieces.is_empty() {
                for (name, _) in &scene.simplexes {
                    pieces.push(scene.simplex_points(name)?);
                }
            }
            // A direction can only be good for sets of dimension below the
            // ambient one; search over the proper faces, as the pipeline
            // does.
            let mut faces: Vec<Vec<Point<F>>> = Vec::new();
            for p in &pieces {
                for verts in vtri::exactlin::hull_simplexes(p) {
                    let s = vtri::simplicial::Simplex::new(verts)?;
                    for face in s.faces() {
                        if face.dim() < scene.dim {
                            let key = face.key();
                            if !faces.contains(&key) {
                                faces.push(key);
                            }
                        }
                    }
                }
            }
            let u = v_good_direction(&faces)?;
            let _ = writeln!(out, "direction: {}", format_point(&u));
            Ok((out, 0))
        }
        "lift" => {
            let k = first_complex(scene)?;
            let (mf_name, _, member_names) = scene
                .multifunctions
                .first()
                .ok_or_else(|| {
                    Error::UnresolvedReference("scene declares no multifunction".into())
                })?
                .clone();
            let members: Vec<PLMap<F>> = member_names
                .iter()
                .map(|m| scene.build_plmap(m))
                .collect::<Result<_, _>>()?;
            let t = VTriangulation::identity(VComplex::new(k)?)?;
            let rounds = cli.max_subdivisions.unwrap_or(DEFAULT_MAX_SUBDIVISIONS);
            let (t2, mf) = enforce_star_conditions(&t, &members, rounds)?;
            let lifted = lift_triangulation(&t2, &mf)?;
            let _ = writeln!(out, "multifunction: {mf_name}");
            let _ = writeln!(out, "members: {}", mf.members().len());
            complex_report(&mut out, "lift", lifted.complex().base());
            Ok((emit_complex(cli, "lift", lifted.complex().base(), out), 0))
        }
        "triangulate" => {
            let k = first_complex(scene)?;
            let subsets = scene.all_subsets()?;
            let t = v_triangulate(&k, &subsets)?;
            let (lines, ok) = verification_report_lines(&k.carrier(), &subsets, &t);
            out.push_str(&lines);
            complex_report(&mut out, "triangulation", t.complex().base());
            let code = u8::from(!ok);
            Ok((emit_complex(cli, "t", t.complex().base(), out), code))
        }
        "hausdorff" => {
            let (x, y) = if scene.subsets.len() >= 2 {
                (
                    scene.subset_union(&scene.subsets[0].0)?,
                    scene.subset_union(&scene.subsets[1].0)?,
                )
            } else {
                (
                    complex_named_or(scene, "x", 0)?.carrier(),
                    complex_named_or(scene, "y", 1)?.carrier(),
                )
            };
            let d = hausdorff_distance(&x, &y)?;
            let _ = writeln!(out, "distance: {d}");
            let _ = writeln!(out, "valuation: {}", d.valuation());
            Ok((out, 0))
        }
        "hauslim" => {
            let (name, _, _) = scene
                .families
                .first()
                .ok_or_else(|| Error::UnresolvedReference("scene declares no family".into()))?;
            let family = scene.family_sections(name)?;
            let (limit, cert) = hausdorff_limit(&family)?;
            for piece in &limit {
                let coords: Vec<String> = piece
                    .iter()
                    .map(|v| {
                        let f: Point<F> =
                            v.iter().map(|c| F::from_rational(c.clone())).collect();
                        format_point(&f)
                    })
                    .collect();
                let _ = writeln!(out, "limit-piece: {}", coords.join(" "));
            }
            let _ = writeln!(out, "certificate-distance: {cert}");
            let _ = writeln!(out, "certificate-valuation: {}", cert.valuation());
            Ok((out, 0))
        }
        "type" => {
            let k = VComplex::new(first_complex(scene)?)?;
            let ta = complex_type(&k)?;
            let _ = writeln!(out, "vertices: {}", ta.n);
            for s in &ta.simplexes {
                let _ = writeln!(out, "simplex-labels: {s:?}");
            }
            for c in &ta.classes {
                let _ = writeln!(out, "st-class: {c:?}");
            }
            if scene.complexes.len() >= 2 {
                let k2 = VComplex::new(scene.build_complex(&scene.complexes[1].0)?)?;
                let tb = complex_type(&k2)?;
                let equal = vtri::simplicial::type_equal(&ta, &tb)?;
                let _ = writeln!(out, "equal: {equal}");
            }
            Ok((out, 0))
        }
        "homeo" => {
            let k = VComplex::new(complex_named_or(scene, "k", 0)?)?;
            let k2 = VComplex::new(complex_named_or(scene, "l", 1)?)?;
            let pi = type_bijection(&complex_type(&k)?, &complex_type(&k2)?)?
                .ok_or_else(|| Error::VerificationFailed("the types differ".into()))?;
            let h = canonical_v_homeomorphism(&k, &k2, &pi)?;
            plmap_report(&mut out, "homeo", &h);
            // Seeded probe: the inverse undoes the map at random interior
            // points of random simplexes.
            let inv = h.invert()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let simplexes = k.base().simplexes();
            for _ in 0..10 {
                let s = &simplexes[rng.gen_range(0..simplexes.len())];
                let weights: Vec<F> = s
                    .vertices()
                    .iter()
                    .map(|_| F::from_int(rng.gen_range(1..=8)))
                    .collect();
                let total = weights
                    .iter()
                    .fold(F::zero(), |acc, w| acc.add(w));
                let mut x = vec![F::zero(); s.ambient_dim()];
                for (v, w) in s.vertices().iter().zip(&weights) {
                    let c = w.div(&total)?;
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi = xi.add(&vi.mul(&c));
                    }
                }
                let back = inv.evaluate(&h.evaluate(&x)?)?;
                if back != x {
                    return Err(Error::VerificationFailed(format!(
                        "probe roundtrip failed at {}",
                        format_point(&x)
                    )));
                }
            }
            let _ = writeln!(out, "probe: ok (seed {})", cli.seed);
            Ok((out, 0))
        }
        "extend" => {
            let k = VComplex::new(first_complex(scene)?)?;
            let decl = scene
                .plmaps
                .first()
                .ok_or_else(|| Error::UnresolvedReference("scene declares no plmap".into()))?;
            let f = scene.build_plmap(&decl.name)?;
            let l = f.domain().clone();
            let g = extend_over_subcomplex(&k, &l, &f)?;
            plmap_report(&mut out, "extend", &g);
            Ok((out, 0))
        }
        "verify" => {
            let y = complex_named_or(scene, "y", 0)?;
            let t_complex = complex_named_or(scene, "t", 1)?;
            let subsets = scene.all_subsets()?;
            let t = VTriangulation::identity(VComplex::new(t_complex)?)?;
            let (lines, ok) = verification_report_lines(&y.carrier(), &subsets, &t);
            out.push_str(&lines);
            Ok((out, u8::from(!ok)))
        }
        "lp" => {
            let (name, _) = scene
                .simplexes
                .first()
                .ok_or_else(|| Error::UnresolvedReference("scene declares no simplex".into()))?;
            let poly = simplex_polyhedron(&scene.simplex_points(name)?);
            let objective = scene.point("objective")?;
            match lp_solve(objective, &poly)? {
                LPOutcome::Optimal { value, point } => {
                    let _ = writeln!(out, "outcome: optimal");
                    let _ = writeln!(out, "value: {value}");
                    let _ = writeln!(out, "point: {}", format_point(&point));
                }
                LPOutcome::Infeasible => {
                    let _ = writeln!(out, "outcome: infeasible");
                }
                LPOutcome::Unbounded => {
                    let _ = writeln!(out, "outcome: unbounded");
                }
            }
            Ok((out, 0))
        }
        other => Err(Error::UnresolvedReference(format!(
            "unknown command `{other}`"
        ))),
    }
}

fn write_output(cli: &Cli, report: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, report),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.pivot_cap {
        set_pivot_cap(cap);
    }
    if let Some(cap) = cli.dim_cap {
        set_dim_cap(cap);
    }
    let text = match &cli.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {path}: {e}");
                return ExitCode::from(2);
            }
        },
        None => {
            let mut buf = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                eprintln!("error: cannot read standard input: {e}");
                return ExitCode::from(2);
            }
            buf
        }
    };
    let scene = match parse_scene(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let outcome = panic::catch_unwind(|| run(&cli, &scene));
    match outcome {
        Ok(Ok((report, code))) => {
            if write_output(&cli, &report).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Ok(Err(e)) => {
            let report = format!("error: {e}\n");
            let _ = write_output(&cli, &report);
            ExitCode::from(exit_code_for(&e))
        }
        Err(_) => {
            eprintln!("error: internal panic (resource exhaustion or bug)");
            ExitCode::from(3)
        }
    }
}
