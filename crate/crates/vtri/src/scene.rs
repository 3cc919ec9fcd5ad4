//! Scene files: a line-oriented text format naming points, simplexes,
//! complexes, subset unions, PL maps, multifunctions, and parametrized
//! families, all over the exact scalar grammar. Scenes are the input and
//! output medium of the command-line interface.
//!
//! Grammar (one declaration per line, `#` starts a comment):
//!
//! ```text
//! dim N
//! scalar NAME = SCALAR
//! point NAME = (SCALAR, SCALAR, ...)
//! simplex NAME = POINT POINT ...
//! complex NAME = SIMPLEX SIMPLEX ...
//! subset NAME = SIMPLEX SIMPLEX ...
//! plmap NAME on COMPLEX = POINT -> POINT ; POINT -> POINT ; ...
//! multifunction NAME on COMPLEX = PLMAP PLMAP ...
//! family NAME param I = SIMPLEX SIMPLEX ...
//! ```
//!
//! All names share one namespace and must be unique; every reference must
//! resolve. `print_scene` emits the same grammar with canonical scalar
//! literals, so `parse_scene(print_scene(s)) == s` structurally.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::Point;
use crate::plmap::{validate_multifunction, Multifunction, PLMap};
use crate::scalar::{parse_scalar_at, FieldElement};
use crate::simplicial::{validate_complex, Complex, Simplex};

type F = FieldElement;

/// A PL map declaration: vertex-to-image pairs over a named base complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMapDecl {
    pub name: String,
    pub base: String,
    /// Pairs of (vertex point name, image point name).
    pub table: Vec<(String, String)>,
}

/// A parsed scene: named geometric objects in a fixed ambient dimension.
/// Declaration order is preserved; commands address objects by name or by
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scene {
    pub dim: usize,
    pub scalars: Vec<(String, F)>,
    pub points: Vec<(String, Point<F>)>,
    /// Simplexes as lists of point names.
    pub simplexes: Vec<(String, Vec<String>)>,
    /// Complexes as lists of simplex names.
    pub complexes: Vec<(String, Vec<String>)>,
    /// Subset unions as lists of simplex names.
    pub subsets: Vec<(String, Vec<String>)>,
    pub plmaps: Vec<PLMapDecl>,
    /// Multifunctions as (name, base complex, member plmap names).
    pub multifunctions: Vec<(String, String, Vec<String>)>,
    /// Families as (name, parameter coordinate, simplex names).
    pub families: Vec<(String, usize, Vec<String>)>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        column: 1,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Split on top-level commas (commas outside parentheses).
fn split_commas(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_point_literal(src: &str, line: usize) -> Result<Point<F>> {
    let src = src.trim();
    let inner = src
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err(line, "point literal must be parenthesized"))?;
    split_commas(inner)
        .iter()
        .map(|c| parse_scalar_at(c, line))
        .collect()
}

fn register(names: &mut Vec<String>, name: &str, line: usize) -> Result<()> {
    if !valid_name(name) {
        return Err(err(line, format!("invalid name `{name}`")));
    }
    if names.iter().any(|n| n == name) {
        return Err(err(line, format!("duplicate name `{name}`")));
    }
    names.push(name.to_string());
    Ok(())
}

impl Scene {
    pub fn scalar(&self, name: &str) -> Result<&F> {
        self.scalars
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    pub fn point(&self, name: &str) -> Result<&Point<F>> {
        self.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    /// The vertex list of a named simplex declaration.
    pub fn simplex_points(&self, name: &str) -> Result<Vec<Point<F>>> {
        let (_, verts) = self
            .simplexes
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        verts.iter().map(|v| self.point(v).cloned()).collect()
    }

    pub fn build_simplex(&self, name: &str) -> Result<Simplex<F>> {
        Simplex::new(self.simplex_points(name)?)
    }

    /// Validate a named complex declaration into a [`Complex`].
    pub fn build_complex(&self, name: &str) -> Result<Complex<F>> {
        let (_, members) = self
            .complexes
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        let simplexes: Vec<Simplex<F>> = members
            .iter()
            .map(|m| self.build_simplex(m))
            .collect::<Result<_>>()?;
        validate_complex(&simplexes)
    }

    /// A named subset as a union of closed simplex vertex lists.
    pub fn subset_union(&self, name: &str) -> Result<Vec<Vec<Point<F>>>> {
        let (_, members) = self
            .subsets
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        members.iter().map(|m| self.simplex_points(m)).collect()
    }

    /// All declared subsets, in declaration order.
    pub fn all_subsets(&self) -> Result<Vec<Vec<Vec<Point<F>>>>> {
        self.subsets
            .iter()
            .map(|(n, _)| self.subset_union(n))
            .collect()
    }

    pub fn build_plmap(&self, name: &str) -> Result<PLMap<F>> {
        let decl = self
            .plmaps
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        let base = self.build_complex(&decl.base)?;
        let mut table: Vec<(Point<F>, Point<F>)> = Vec::new();
        let mut codomain = 0usize;
        for (v, p) in &decl.table {
            let image = self.point(p)?.clone();
            codomain = image.len();
            table.push((self.point(v)?.clone(), image));
        }
        PLMap::new(base, codomain, &table)
    }

    pub fn build_multifunction(&self, name: &str) -> Result<Multifunction> {
        let (_, base, member_names) = self
            .multifunctions
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        let base = self.build_complex(base)?;
        let members: Vec<PLMap<F>> = member_names
            .iter()
            .map(|m| self.build_plmap(m))
            .collect::<Result<_>>()?;
        validate_multifunction(&base, members)
    }

    /// A named family as rational sections with the parameter moved to
    /// coordinate 0. Non-rational coordinates are rejected.
    pub fn family_sections(&self, name: &str) -> Result<Vec<Vec<Point<BigRational>>>> {
        let (_, param, members) = self
            .families
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
        let mut out = Vec::new();
        for m in members {
            let mut piece: Vec<Point<BigRational>> = Vec::new();
            for v in self.simplex_points(m)? {
                let mut q: Point<BigRational> = v
                    .iter()
                    .map(|c| {
                        c.as_rational().ok_or_else(|| {
                            Error::NonRationalFamily(format!(
                                "coordinate {c} of family `{name}` is not rational"
                            ))
                        })
                    })
                    .collect::<Result<_>>()?;
                q.swap(0, *param);
                piece.push(q);
            }
            out.push(piece);
        }
        Ok(out)
    }
}

fn take_name<'a>(tokens: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<String> {
    tokens
        .next()
        .map(str::to_string)
        .ok_or_else(|| err(line, "missing name"))
}

fn expect<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    word: &str,
    line: usize,
) -> Result<()> {
    match tokens.next() {
        Some(t) if t == word => Ok(()),
        other => Err(err(line, format!("expected `{word}`, found {other:?}"))),
    }
}

/// Parse a scene document; the first error is reported with its line.
pub fn parse_scene(text: &str) -> Result<Scene> {
    let mut scene = Scene::default();
    let mut names: Vec<String> = Vec::new();
    let mut saw_dim = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = match body.split_once('=') {
            Some((h, r)) => (h.trim(), Some(r.trim())),
            None => (body, None),
        };
        let mut tokens = head.split_whitespace();
        let kind = tokens.next().unwrap();
        match kind {
            "dim" => {
                if saw_dim {
                    return Err(err(line, "duplicate `dim` declaration"));
                }
                let n = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err(line, "expected `dim N`"))?;
                scene.dim = n;
                saw_dim = true;
                continue;
            }
            _ => {}
        }
        let rest = rest.ok_or_else(|| err(line, "missing `=`"))?;
        match kind {
            "scalar" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                scene.scalars.push((name, parse_scalar_at(rest, line)?));
            }
            "point" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                scene.points.push((name, parse_point_literal(rest, line)?));
            }
            "simplex" | "complex" | "subset" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                let members: Vec<String> =
                    rest.split_whitespace().map(str::to_string).collect();
                if members.is_empty() {
                    return Err(err(line, format!("empty `{kind}` declaration")));
                }
                match kind {
                    "simplex" => scene.simplexes.push((name, members)),
                    "complex" => scene.complexes.push((name, members)),
                    _ => scene.subsets.push((name, members)),
                }
            }
            "plmap" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                expect(&mut tokens, "on", line)?;
                let base = take_name(&mut tokens, line)?;
                let mut table = Vec::new();
                for entry in rest.split(';') {
                    let (v, p) = entry
                        .split_once("->")
                        .ok_or_else(|| err(line, "expected `VERTEX -> IMAGE`"))?;
                    table.push((v.trim().to_string(), p.trim().to_string()));
                }
                scene.plmaps.push(PLMapDecl { name, base, table });
            }
            "multifunction" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                expect(&mut tokens, "on", line)?;
                let base = take_name(&mut tokens, line)?;
                let members: Vec<String> =
                    rest.split_whitespace().map(str::to_string).collect();
                scene.multifunctions.push((name, base, members));
            }
            "family" => {
                let name = take_name(&mut tokens, line)?;
                register(&mut names, &name, line)?;
                expect(&mut tokens, "param", line)?;
                let param = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err(line, "expected `param I`"))?;
                let members: Vec<String> =
                    rest.split_whitespace().map(str::to_string).collect();
                scene.families.push((name, param, members));
            }
            other => return Err(err(line, format!("unknown declaration `{other}`"))),
        }
    }
    if !saw_dim {
        return Err(err(1, "missing `dim N` declaration"));
    }
    check_references(&scene)?;
    Ok(scene)
}

fn check_references(scene: &Scene) -> Result<()> {
    for (name, verts) in &scene.simplexes {
        for v in verts {
            let p = scene.point(v)?;
            if p.len() != scene.dim {
                return Err(Error::DimensionMismatch {
                    expected: scene.dim,
                    got: p.len(),
                });
            }
        }
        let _ = name;
    }
    for (_, members) in scene.complexes.iter().chain(&scene.subsets) {
        for m in members {
            if !scene.simplexes.iter().any(|(n, _)| n == m) {
                return Err(Error::UnresolvedReference(m.clone()));
            }
        }
    }
    for d in &scene.plmaps {
        if !scene.complexes.iter().any(|(n, _)| *n == d.base) {
            return Err(Error::UnresolvedReference(d.base.clone()));
        }
        for (v, p) in &d.table {
            scene.point(v)?;
            scene.point(p)?;
        }
    }
    for (_, base, members) in &scene.multifunctions {
        if !scene.complexes.iter().any(|(n, _)| n == base) {
            return Err(Error::UnresolvedReference(base.clone()));
        }
        for m in members {
            if !scene.plmaps.iter().any(|d| d.name == *m) {
                return Err(Error::UnresolvedReference(m.clone()));
            }
        }
    }
    for (name, param, members) in &scene.families {
        if *param >= scene.dim {
            return Err(Error::UnresolvedReference(format!(
                "family `{name}` parameter coordinate {param} out of range"
            )));
        }
        for m in members {
            if !scene.simplexes.iter().any(|(n, _)| n == m) {
                return Err(Error::UnresolvedReference(m.clone()));
            }
        }
    }
    Ok(())
}

/// Print a scene in the canonical grammar; parses back structurally equal.
pub fn print_scene(scene: &Scene) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("dim {}", scene.dim));
    for (n, s) in &scene.scalars {
        line(format!("scalar {n} = {s}"));
    }
    for (n, p) in &scene.points {
        let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        line(format!("point {n} = ({})", coords.join(", ")));
    }
    for (n, verts) in &scene.simplexes {
        line(format!("simplex {n} = {}", verts.join(" ")));
    }
    for (n, members) in &scene.complexes {
        line(format!("complex {n} = {}", members.join(" ")));
    }
    for (n, members) in &scene.subsets {
        line(format!("subset {n} = {}", members.join(" ")));
    }
    for d in &scene.plmaps {
        let entries: Vec<String> = d
            .table
            .iter()
            .map(|(v, p)| format!("{v} -> {p}"))
            .collect();
        line(format!("plmap {} on {} = {}", d.name, d.base, entries.join(" ; ")));
    }
    for (n, base, members) in &scene.multifunctions {
        line(format!("multifunction {n} on {base} = {}", members.join(" ")));
    }
    for (n, param, members) in &scene.families {
        line(format!("family {n} param {param} = {}", members.join(" ")));
    }
    out
}

/// Build a scene document around one complex, naming its vertices `p0,
/// p1, ...` and its simplexes `s0, s1, ...` with the given complex name.
pub fn scene_of_complex(name: &str, k: &Complex<F>) -> Scene {
    let verts = k.vertices();
    let mut scene = Scene {
        dim: if k.is_empty() { 0 } else { k.ambient_dim() },
        ..Scene::default()
    };
    for (i, v) in verts.iter().enumerate() {
        scene.points.push((format!("p{i}"), v.clone()));
    }
    let label = |v: &Point<F>| {
        let i = verts.iter().position(|w| w == v).unwrap();
        format!("p{i}")
    };
    let mut members = Vec::new();
    for (i, s) in k.simplexes().iter().enumerate() {
        let names: Vec<String> = s.vertices().iter().map(|v| label(v)).collect();
        scene.simplexes.push((format!("s{i}"), names));
        members.push(format!("s{i}"));
    }
    scene.complexes.push((name.to_string(), members));
    scene
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "\
dim 2
point a = (0, 0)
point b = (1, 0)
point c = (1, 1)
point d = (0, 1)
simplex s1 = a b c
simplex s2 = a c d
simplex diag = a c
complex k = s1 s2
subset dset = diag
";

    #[test]
    fn minimal_scene_has_one_point() {
        let s = parse_scene("dim 1\npoint a = (0)\n").unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.point("a").unwrap(), &vec![FieldElement::zero()]);
    }

    #[test]
    fn rational_function_literal_parses() {
        let s = parse_scene("dim 1\nscalar c = (1+2*e)/(1-e)\n").unwrap();
        let c = s.scalar("c").unwrap();
        assert_eq!(c.valuation(), crate::scalar::Valuation::Finite(0));
        assert_eq!(
            c.standard_part().unwrap(),
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn duplicate_name_is_named_in_the_error() {
        let res = parse_scene("dim 1\npoint a = (0)\npoint a = (1)\n");
        match res {
            Err(Error::ParseError { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains('a'), "{message}");
            }
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn unresolved_reference_is_rejected() {
        let res = parse_scene("dim 1\npoint a = (0)\nsimplex s = a b\n");
        assert!(matches!(res, Err(Error::UnresolvedReference(n)) if n == "b"));
    }

    #[test]
    fn square_scene_builds_and_round_trips() {
        let s = parse_scene(SQUARE).unwrap();
        let k = s.build_complex("k").unwrap();
        assert_eq!(k.top_simplexes().len(), 2);
        assert_eq!(s.all_subsets().unwrap().len(), 1);
        let printed = print_scene(&s);
        assert_eq!(parse_scene(&printed).unwrap(), s);
    }

    #[test]
    fn plmap_and_family_resolve() {
        let text = "\
dim 2
point a = (0, 0)
point b = (1, 0)
point ia = (0, 0)
point ib = (2, 0)
simplex s1 = a b
complex k = s1
plmap f on k = a -> ia ; b -> ib
family fam param 1 = s1
";
        let s = parse_scene(text).unwrap();
        let f = s.build_plmap("f").unwrap();
        assert_eq!(f.vertex_table().len(), 2);
        let fam = s.family_sections("fam").unwrap();
        // The parameter coordinate moves to position 0.
        assert_eq!(fam[0][1], vec![
            BigRational::from_integer(0.into()),
            BigRational::from_integer(1.into()),
        ]);
        let printed = print_scene(&s);
        assert_eq!(parse_scene(&printed).unwrap(), s);
    }
}
