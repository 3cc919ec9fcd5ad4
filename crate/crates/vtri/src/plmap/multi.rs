//! Multifunctions: finite lists of scalar PL functions on one base complex
//! satisfying the trichotomy property on every open piece, plus the region
//! decomposition of the space between consecutive graphs.

use crate::error::{Error, Result};
use crate::exactlin::Point;
use crate::scalar::{FieldElement, Scalar};
use crate::simplicial::{format_point, validate_complex, Complex, Simplex};

use super::map::PLMap;

/// A finite family of scalar PL functions on a common base complex such
/// that for any two members and any open top piece, one is pointwise less
/// than, equal to, or greater than the other on that piece.
#[derive(Debug, Clone)]
pub struct Multifunction {
    base: Complex<FieldElement>,
    members: Vec<PLMap<FieldElement>>,
}

impl Multifunction {
    pub fn base(&self) -> &Complex<FieldElement> {
        &self.base
    }

    pub fn members(&self) -> &[PLMap<FieldElement>] {
        &self.members
    }
}

fn sign_label(v: &FieldElement) -> &'static str {
    match v.sign() {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

/// Check the trichotomy property. On a piece `P` with vertices `a_i`, a
/// member difference `g - f` is affine, so its sign on the open piece is
/// constant iff the vertex values are not of mixed strict sign.
pub fn validate_multifunction(
    base: &Complex<FieldElement>,
    members: Vec<PLMap<FieldElement>>,
) -> Result<Multifunction> {
    for m in &members {
        if m.domain() != base {
            return Err(Error::PreconditionViolation(
                "member domain differs from the base complex".into(),
            ));
        }
        if m.codomain_dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: m.codomain_dim(),
            });
        }
    }
    for (pi, p) in base.top_simplexes().iter().enumerate() {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let fi = members[i].simplex_images(p);
                let fj = members[j].simplex_images(p);
                let diffs: Vec<FieldElement> = fi
                    .iter()
                    .zip(&fj)
                    .map(|(a, b)| b[0].sub(&a[0]))
                    .collect();
                let pos = diffs.iter().any(|d| d.is_positive());
                let neg = diffs.iter().any(|d| d.is_negative());
                if pos && neg {
                    return Err(Error::TrichotomyViolation {
                        piece: format!("{pi}: {p}"),
                        f: i,
                        g: j,
                        signs: diffs.iter().map(sign_label).collect::<Vec<_>>().join(""),
                    });
                }
            }
        }
    }
    Ok(Multifunction {
        base: base.clone(),
        members,
    })
}

/// Value of member `i` at the interior sample point of piece `p`.
fn sample_value(f: &Multifunction, p: &Simplex<FieldElement>, i: usize) -> FieldElement {
    let x = p.interior_point();
    f.members[i].evaluate(&x).expect("piece is in the domain")[0].clone()
}

/// The member directly above member `i` on the open piece `p`: the member
/// of smallest value exceeding `f_i` there, or `None` if `f_i` is topmost.
pub fn successor(f: &Multifunction, p: &Simplex<FieldElement>, i: usize) -> Option<usize> {
    let base_val = sample_value(f, p, i);
    let mut best: Option<(usize, FieldElement)> = None;
    for j in 0..f.members.len() {
        let v = sample_value(f, p, j);
        if v <= base_val {
            continue;
        }
        match &best {
            Some((_, bv)) if *bv <= v => {}
            _ => best = Some((j, v)),
        }
    }
    best.map(|(j, _)| j)
}

/// A global vertex order used to triangulate all prism bands compatibly:
/// primary key is the lex order of standard parts (so every band order is a
/// valid V-order), lex order as tiebreak. Falls back to plain lex when some
/// vertex is not finite.
pub fn st_coherent_vertex_order(k: &Complex<FieldElement>) -> Vec<Point<FieldElement>> {
    let mut verts = k.vertices();
    let all_finite = verts
        .iter()
        .all(|v| v.iter().all(|c| c.is_finite()));
    if all_finite {
        verts.sort_by(|a, b| {
            let sa: Vec<_> = a.iter().map(|c| c.standard_part().unwrap()).collect();
            let sb: Vec<_> = b.iter().map(|c| c.standard_part().unwrap()).collect();
            sa.cmp(&sb).then_with(|| a.cmp(b))
        });
    }
    verts
}

/// Triangulate the prism `{(x, y): x in P, r(x) <= y <= s(x)}` over the
/// base vertices in the given order with heights `r_i <= s_i`: the tops are
/// `[b_0..b_i, c_i..c_m]` with `b_i != c_i`; degenerate heights give the
/// single lifted simplex. Gluing across shared faces is compatible as long
/// as every call orders vertices by one global order.
pub fn band_simplexes<T: Scalar>(
    base: &[Point<T>],
    r: &[T],
    s: &[T],
) -> Result<Vec<Simplex<T>>> {
    assert_eq!(base.len(), r.len());
    assert_eq!(base.len(), s.len());
    for i in 0..r.len() {
        if r[i] > s[i] {
            return Err(Error::PreconditionViolation(format!(
                "lower height exceeds upper height at vertex {}",
                format_point(&base[i])
            )));
        }
    }
    let lift = |a: &Point<T>, h: &T| {
        let mut p = a.clone();
        p.push(h.clone());
        p
    };
    let b: Vec<Point<T>> = base.iter().zip(r).map(|(a, h)| lift(a, h)).collect();
    let c: Vec<Point<T>> = base.iter().zip(s).map(|(a, h)| lift(a, h)).collect();
    if b == c {
        return Ok(vec![Simplex::new(b)?]);
    }
    let m = base.len() - 1;
    let mut tops = Vec::new();
    for i in 0..=m {
        if b[i] == c[i] {
            continue;
        }
        let mut verts = b[..=i].to_vec();
        verts.extend(c[i..].iter().cloned());
        tops.push(Simplex::new(verts)?);
    }
    Ok(tops)
}

/// The region decomposition of a multifunction: graphs of every member on
/// every piece, and bands between consecutive members. Their union is the
/// set `X^F` between the bottom and top member.
#[derive(Debug, Clone)]
pub struct Regions {
    pub graphs: Vec<Simplex<FieldElement>>,
    pub bands: Vec<Simplex<FieldElement>>,
    /// All graphs and bands together, validated as a complex.
    pub complex: Complex<FieldElement>,
}

pub fn region_complexes(f: &Multifunction) -> Result<Regions> {
    let order = st_coherent_vertex_order(&f.base);
    let mut graphs = Vec::new();
    let mut bands = Vec::new();
    for p in f.base.top_simplexes() {
        // Base vertices of this piece in the global order.
        let verts: Vec<Point<FieldElement>> = order
            .iter()
            .filter(|v| p.vertices().contains(v))
            .cloned()
            .collect();
        let heights = |i: usize| -> Vec<FieldElement> {
            verts
                .iter()
                .map(|v| f.members[i].image_of_vertex(v).expect("piece vertex")[0].clone())
                .collect()
        };
        // Members sorted by value on the open piece, duplicates dropped.
        let mut by_value: Vec<usize> = (0..f.members.len()).collect();
        by_value.sort_by(|&a, &b| sample_value(f, p, a).cmp(&sample_value(f, p, b)));
        let mut levels: Vec<usize> = Vec::new();
        for i in by_value {
            if levels
                .last()
                .map_or(true, |&j| sample_value(f, p, j) != sample_value(f, p, i))
            {
                levels.push(i);
            }
        }
        for &i in &levels {
            let h = heights(i);
            graphs.extend(band_simplexes(&verts, &h, &h)?);
        }
        for w in levels.windows(2) {
            bands.extend(band_simplexes(&verts, &heights(w[0]), &heights(w[1]))?);
        }
    }
    let mut tops = graphs.clone();
    tops.extend(bands.clone());
    let complex = validate_complex(&tops)?;
    Ok(Regions {
        graphs,
        bands,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::union_set_equal;
    use crate::scalar::parse_scalar;

    fn f(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn fe(src: &str) -> FieldElement {
        parse_scalar(src).unwrap()
    }

    fn unit_edge() -> Complex<FieldElement> {
        validate_complex(&[Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]).unwrap()
    }

    fn affine_on_edge(k: &Complex<FieldElement>, v0: FieldElement, v1: FieldElement) -> PLMap<FieldElement> {
        PLMap::new(
            k.clone(),
            1,
            &[(vec![f(0)], vec![v0]), (vec![f(1)], vec![v1])],
        )
        .unwrap()
    }

    #[test]
    fn trichotomy_accepts_and_rejects() {
        let k = unit_edge();
        // {0, x} is fine: the difference has vertex signs 0, +.
        let zero = affine_on_edge(&k, f(0), f(0));
        let ident = affine_on_edge(&k, f(0), f(1));
        assert!(validate_multifunction(&k, vec![zero, ident]).is_ok());

        // {x, 1 - x} crosses inside the open piece: signs +, -.
        let ident = affine_on_edge(&k, f(0), f(1));
        let flip = affine_on_edge(&k, f(1), f(0));
        match validate_multifunction(&k, vec![ident, flip]) {
            Err(Error::TrichotomyViolation { f, g, signs, .. }) => {
                assert_eq!((f, g), (0, 1));
                assert_eq!(signs, "+-");
            }
            other => panic!("expected trichotomy violation, got {other:?}"),
        }
    }

    #[test]
    fn successor_orders_by_value() {
        let k = unit_edge();
        let members = vec![
            affine_on_edge(&k, f(0), f(0)),
            affine_on_edge(&k, f(2), f(2)),
            affine_on_edge(&k, f(0), f(2)), // between the two on the open piece
        ];
        let mf = validate_multifunction(&k, members).unwrap();
        let p = mf.base().top_simplexes()[0].clone();
        assert_eq!(successor(&mf, &p, 0), Some(2));
        assert_eq!(successor(&mf, &p, 2), Some(1));
        assert_eq!(successor(&mf, &p, 1), None);
    }

    #[test]
    fn regions_between_zero_and_identity() {
        let k = unit_edge();
        let zero = affine_on_edge(&k, f(0), f(0));
        let ident = affine_on_edge(&k, f(0), f(1));
        let mf = validate_multifunction(&k, vec![zero, ident]).unwrap();
        let r = region_complexes(&mf).unwrap();
        assert_eq!(r.graphs.len(), 2);
        assert_eq!(r.bands.len(), 1);
        // X^F is the triangle under the diagonal.
        let triangle = vec![vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), f(1)],
        ]];
        assert!(union_set_equal(&r.complex.carrier(), &triangle));
    }

    #[test]
    fn regions_of_a_flat_band_glue() {
        // Two edges [0,1], [1,2]; members 0 and e*x meet at x = 0 only.
        let k = validate_complex(&[
            Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap(),
            Simplex::new(vec![vec![f(1)], vec![f(2)]]).unwrap(),
        ])
        .unwrap();
        let zero = PLMap::new(
            k.clone(),
            1,
            &[
                (vec![f(0)], vec![f(0)]),
                (vec![f(1)], vec![f(0)]),
                (vec![f(2)], vec![f(0)]),
            ],
        )
        .unwrap();
        let slope = PLMap::new(
            k.clone(),
            1,
            &[
                (vec![f(0)], vec![f(0)]),
                (vec![f(1)], vec![fe("e")]),
                (vec![f(2)], vec![fe("2*e")]),
            ],
        )
        .unwrap();
        let mf = validate_multifunction(&k, vec![zero, slope]).unwrap();
        let r = region_complexes(&mf).unwrap();
        // The shared wall above x = 1 is the segment from (1,0) to (1,e),
        // and the complex validates: bands over both pieces glue there.
        assert!(r
            .complex
            .vertices()
            .contains(&vec![f(1), fe("e")]));
        // One triangle over [0,1] (the members meet at x = 0) and two over
        // [1,2] (a full quad).
        assert_eq!(r.bands.len(), 3);
    }
}
