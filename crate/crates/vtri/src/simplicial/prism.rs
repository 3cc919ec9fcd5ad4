//! The prism complex over an ordered V-simplex: the triangulation of the
//! convex hull of `{(a_i, r_i), (a_i, s_i)}` by the simplexes
//! `[b_0,...,b_i, c_i,...,c_m]` with `b_i != c_i` and their faces.

use crate::error::{Error, Result};
use crate::exactlin::{covered, Point};
use crate::scalar::FieldElement;

use super::complex::validate_complex;
use super::order::VSimplexOrder;
use super::simplex::Simplex;
use super::vcomplex::VComplex;

fn check_heights(order: &VSimplexOrder, label: &str, h: &[FieldElement]) -> Result<()> {
    if h.len() != order.vertices.len() {
        return Err(Error::DimensionMismatch {
            expected: order.vertices.len(),
            got: h.len(),
        });
    }
    for v in h {
        if !v.is_finite() {
            return Err(Error::NotFinite);
        }
    }
    // st must be constant on each st-class block.
    for j in 0..order.blocks.len() {
        let range = order.block_range(j);
        let rep = h[range.start].standard_part()?;
        for i in range {
            if h[i].standard_part()? != rep {
                return Err(Error::PreconditionViolation(format!(
                    "st({label}_{i}) differs from its block representative"
                )));
            }
        }
    }
    Ok(())
}

/// Build the prism V-complex over an ordered V-simplex with lower heights
/// `r` and upper heights `s` (`r_i <= s_i`, st constant per block). The
/// degenerate case `r = s` yields the faces of the single lifted simplex.
pub fn prism_complex(
    order: &VSimplexOrder,
    r: &[FieldElement],
    s: &[FieldElement],
) -> Result<VComplex> {
    check_heights(order, "r", r)?;
    check_heights(order, "s", s)?;
    for i in 0..r.len() {
        if r[i] > s[i] {
            return Err(Error::PreconditionViolation(format!(
                "r_{i} > s_{i} violates the height order"
            )));
        }
    }
    let m = order.vertices.len() - 1;
    let lift = |a: &Point<FieldElement>, h: &FieldElement| {
        let mut p = a.clone();
        p.push(h.clone());
        p
    };
    let b: Vec<Point<FieldElement>> = (0..=m)
        .map(|i| lift(&order.vertices[i], &r[i]))
        .collect();
    let c: Vec<Point<FieldElement>> = (0..=m)
        .map(|i| lift(&order.vertices[i], &s[i]))
        .collect();

    let mut tops: Vec<Simplex<FieldElement>> = Vec::new();
    if r == s {
        tops.push(Simplex::new(b.clone())?);
    } else {
        for i in 0..=m {
            if b[i] == c[i] {
                continue;
            }
            let mut verts = b[..=i].to_vec();
            verts.extend(c[i..].iter().cloned());
            tops.push(Simplex::new(verts)?);
        }
    }
    let complex = validate_complex(&tops)?;
    // |L| must be exactly the convex hull of all the b_i, c_i. Every vertex
    // of L is such a point, so it remains to cover the hull by |L|.
    let mut hull_points = b;
    for p in c {
        if !hull_points.contains(&p) {
            hull_points.push(p);
        }
    }
    if !covered(&hull_points, &complex.carrier()) {
        return Err(Error::VerificationFailed(
            "carrier of the prism complex is not the hull of its endpoints".into(),
        ));
    }
    VComplex::new(complex)
}
