//! V-triangulations: a simplexwise-affine homeomorphism onto a V-complex
//! whose standard part triangulates the standard part of the domain.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{union_set_equal, Point};
use crate::plmap::{induced_map, st_coherent_vertex_order, PLMap};
use crate::scalar::FieldElement;
use crate::simplicial::VComplex;

type F = FieldElement;

/// A V-triangulation `(phi, K)` of a closed bounded set `X`: `phi` is a
/// simplexwise-affine bijection of `X` onto `|K|`, `K` is a V-complex, and
/// the induced map over the residue field triangulates `st(X)`.
#[derive(Debug, Clone)]
pub struct VTriangulation {
    domain: Vec<Vec<Point<F>>>,
    map: PLMap<F>,
    complex: VComplex,
    induced: PLMap<BigRational>,
}

impl VTriangulation {
    /// Validate and assemble. `domain` is the triangulated set as a simplex
    /// union; it must equal the carrier of the map's domain complex.
    pub fn new(domain: Vec<Vec<Point<F>>>, map: PLMap<F>) -> Result<VTriangulation> {
        if map.domain().is_empty() {
            return Err(Error::EmptySet);
        }
        // The domain pieces must form a V-complex so st(X) is a carrier of
        // a complex, and the image must be one so K and st(K) are valid.
        VComplex::new(map.domain().clone())?;
        map.invert()?;
        let complex = VComplex::new(map.image_complex()?)?;
        let induced = induced_map(&map)?;
        induced.invert()?;
        if !union_set_equal(&map.domain().carrier(), &domain) {
            return Err(Error::PreconditionViolation(
                "domain set differs from the carrier of the map's domain complex".into(),
            ));
        }
        Ok(VTriangulation {
            domain,
            map,
            complex,
            induced,
        })
    }

    /// The identity triangulation of the carrier of a V-complex.
    pub fn identity(k: VComplex) -> Result<VTriangulation> {
        let map = PLMap::identity(k.base().clone());
        VTriangulation::new(k.base().carrier(), map)
    }

    /// The triangulated set as a simplex union.
    pub fn domain(&self) -> &[Vec<Point<F>>] {
        &self.domain
    }

    /// The homeomorphism `phi`.
    pub fn map(&self) -> &PLMap<F> {
        &self.map
    }

    /// The target V-complex `K` (with its validated standard part).
    pub fn complex(&self) -> &VComplex {
        &self.complex
    }

    /// The induced map `phi_st` over the residue field.
    pub fn induced(&self) -> &PLMap<BigRational> {
        &self.induced
    }

    /// Whether `phi` is the identity chart (every vertex maps to itself).
    pub fn is_identity(&self) -> bool {
        self.map.vertex_table().iter().all(|(a, b)| a == b)
    }
}

/// st-coherent total order on `Vert(K)`: st-classes are ordered
/// lexicographically by their st-coordinates and kept contiguous, members
/// of a class lexicographically. Fully deterministic.
pub fn order_vertices_st_coherent(k: &VComplex) -> Vec<Point<F>> {
    st_coherent_vertex_order(k.base())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;
    use crate::simplicial::{validate_complex, Simplex};

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    fn fe(src: &str) -> F {
        parse_scalar(src).unwrap()
    }

    #[test]
    fn st_coherent_order_groups_classes() {
        // Vertices 0, 1, e reorder to 0, e, 1: the class {0, e} stays
        // contiguous ahead of the class {1}.
        let k = validate_complex(&[
            Simplex::new(vec![vec![f(0)], vec![fe("e")]]).unwrap(),
            Simplex::new(vec![vec![fe("e")], vec![f(1)]]).unwrap(),
        ])
        .unwrap();
        let vk = VComplex::new(k).unwrap();
        let order = order_vertices_st_coherent(&vk);
        assert_eq!(order, vec![vec![f(0)], vec![fe("e")], vec![f(1)]]);
    }

    #[test]
    fn st_coherent_order_is_plain_lex_on_rationals() {
        let k = validate_complex(&[
            Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap(),
            Simplex::new(vec![vec![f(1)], vec![f(2)]]).unwrap(),
        ])
        .unwrap();
        let vk = VComplex::new(k).unwrap();
        let order = order_vertices_st_coherent(&vk);
        assert_eq!(order, vec![vec![f(0)], vec![f(1)], vec![f(2)]]);
    }

    #[test]
    fn identity_triangulation_of_a_flat_triangle() {
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), fe("e")],
        ])
        .unwrap();
        let vk = VComplex::new(validate_complex(&[s.clone()]).unwrap()).unwrap();
        let t = VTriangulation::identity(vk).unwrap();
        assert!(t.is_identity());
        // st(K) triangulates the segment st(X) = [0,1] x {0}.
        assert_eq!(t.complex().st_complex().dim(), 1);
        assert_eq!(t.induced().domain().dim(), 1);
        assert!(union_set_equal(&t.domain(), &[s.vertices().to_vec()]));
    }

    #[test]
    fn collapsing_map_is_rejected() {
        let k = validate_complex(&[Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]).unwrap();
        let collapse = PLMap::new(
            k.clone(),
            1,
            &[(vec![f(0)], vec![f(0)]), (vec![f(1)], vec![f(0)])],
        )
        .unwrap();
        assert!(matches!(
            VTriangulation::new(k.carrier(), collapse),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn non_induced_chart_is_rejected() {
        // phi maps [0, e] affinely onto [0, 1]: no induced map.
        let k = validate_complex(&[Simplex::new(vec![vec![f(0)], vec![fe("e")]]).unwrap()])
            .unwrap();
        let stretch = PLMap::new(
            k.clone(),
            1,
            &[(vec![f(0)], vec![f(0)]), (vec![fe("e")], vec![f(1)])],
        )
        .unwrap();
        assert!(matches!(
            VTriangulation::new(k.carrier(), stretch),
            Err(Error::NotInduced { .. })
        ));
    }
}
