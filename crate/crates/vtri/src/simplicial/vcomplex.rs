//! V-complexes: V-bounded complexes whose standard part is again a complex
//! over the residue field.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{affinely_independent_points, vertex_list_st, Point};
use crate::scalar::FieldElement;

use super::complex::{validate_complex, Complex};
use super::simplex::{format_point, Simplex};

/// Standard part of a simplex: the distinct st-images of its vertices must
/// be affinely independent, otherwise the simplex is not a V-simplex.
pub fn st_simplex(s: &Simplex<FieldElement>) -> Result<Simplex<BigRational>> {
    let st_verts = vertex_list_st(s.vertices())?;
    let mut distinct: Vec<Point<BigRational>> = Vec::new();
    for v in st_verts {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    distinct.sort();
    if !affinely_independent_points(&distinct) {
        return Err(Error::NotVSimplex {
            witness: format!(
                "st-vertices are affinely dependent: {}",
                distinct
                    .iter()
                    .map(|v| format_point(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }
    Simplex::new(distinct)
}

/// A V-bounded complex together with its validated standard part and the
/// vertex-level st map.
#[derive(Debug, Clone)]
pub struct VComplex {
    base: Complex<FieldElement>,
    st_complex: Complex<BigRational>,
    st_map: Vec<(Point<FieldElement>, Point<BigRational>)>,
}

impl VComplex {
    pub fn new(base: Complex<FieldElement>) -> Result<VComplex> {
        for s in base.simplexes() {
            if !s.is_v_bounded() {
                return Err(Error::NotFinite);
            }
        }
        let mut st_simplexes = Vec::new();
        for s in base.simplexes() {
            let t = st_simplex(s)?;
            if !st_simplexes.contains(&t) {
                st_simplexes.push(t);
            }
        }
        let st_complex = validate_complex(&st_simplexes)?;
        let mut st_map = Vec::new();
        for v in base.vertices() {
            let sv: Point<BigRational> = v
                .iter()
                .map(|c| c.standard_part())
                .collect::<Result<_>>()?;
            st_map.push((v, sv));
        }
        Ok(VComplex { base, st_complex, st_map })
    }

    pub fn base(&self) -> &Complex<FieldElement> {
        &self.base
    }

    pub fn st_complex(&self) -> &Complex<BigRational> {
        &self.st_complex
    }

    pub fn st_of_vertex(&self, v: &Point<FieldElement>) -> Option<&Point<BigRational>> {
        self.st_map.iter().find(|(a, _)| a == v).map(|(_, b)| b)
    }

    pub fn st_map(&self) -> &[(Point<FieldElement>, Point<BigRational>)] {
        &self.st_map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn f(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn fe(src: &str) -> FieldElement {
        parse_scalar(src).unwrap()
    }

    #[test]
    fn flat_triangle_is_a_v_complex() {
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), fe("e")],
        ])
        .unwrap();
        let k = validate_complex(&[s]).unwrap();
        let v = VComplex::new(k).unwrap();
        // st collapses the triangle to a segment complex.
        assert_eq!(v.st_complex().dim(), 1);
        assert_eq!(v.st_complex().vertices().len(), 2);
    }

    #[test]
    fn dependent_st_vertices_rejected() {
        // st-images (0,0),(1,0),(1/2,0) are collinear and pairwise distinct.
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![fe("1/2"), fe("e")],
        ])
        .unwrap();
        let k = validate_complex(&[s]).unwrap();
        assert!(matches!(VComplex::new(k), Err(Error::NotVSimplex { .. })));
    }

    #[test]
    fn infinite_vertex_rejected() {
        let s = Simplex::new(vec![vec![fe("1/e")], vec![f(0)]]).unwrap();
        let k = validate_complex(&[s]).unwrap();
        assert!(matches!(VComplex::new(k), Err(Error::NotFinite)));
    }
}
