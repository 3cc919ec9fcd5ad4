//! Flag subdivisions of V-complexes and, independently, the classical
//! barycentric subdivision over the residue field.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{union_set_equal, Point};
use crate::scalar::{FieldElement, Scalar};

use super::complex::{validate_complex, Complex};
use super::order::{v_simplex_order, VSimplexOrder};
use super::simplex::Simplex;
use super::vcomplex::{st_simplex, VComplex};

/// The interior point `sum t_i a_i` with weight `1/((k+1)|I_j|)` on every
/// vertex of the j-th st-class block; its st is the barycenter of st(S).
pub fn choose_interior_point(order: &VSimplexOrder) -> Point<FieldElement> {
    let k1 = FieldElement::from_int(order.blocks.len() as i64);
    let n = order.vertices[0].len();
    let mut out = vec![FieldElement::zero(); n];
    for j in 0..order.blocks.len() {
        let range = order.block_range(j);
        let w = FieldElement::one()
            .div(&k1.mul(&FieldElement::from_int(range.len() as i64)))
            .expect("nonzero weight denominator");
        for i in range {
            for (o, c) in out.iter_mut().zip(&order.vertices[i]) {
                *o = o.add(&c.mul(&w));
            }
        }
    }
    out
}

/// Barycenter of the distinct st-vertices of a V-bounded simplex.
fn st_barycenter(s: &Simplex<FieldElement>) -> Result<Point<BigRational>> {
    let t = st_simplex(s)?;
    let m = BigRational::from_integer((t.vertices().len() as i64).into());
    let n = t.ambient_dim();
    let mut out = vec![<BigRational as Zero>::zero(); n];
    for v in t.vertices() {
        for (o, c) in out.iter_mut().zip(v) {
            *o += c;
        }
    }
    Ok(out.into_iter().map(|c| c / &m).collect())
}

/// All flags (chains of proper faces) of the complex, as index lists into
/// `simplexes`, each ordered by increasing dimension.
fn flags<T: Scalar>(k: &Complex<T>) -> Vec<Vec<usize>> {
    let simplexes = k.simplexes();
    let mut order: Vec<usize> = (0..simplexes.len()).collect();
    order.sort_by_key(|&i| simplexes[i].dim());
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        let mut extended: Vec<Vec<usize>> = vec![vec![i]];
        for chain in &chains {
            let last = *chain.last().unwrap();
            if simplexes[last].dim() < simplexes[i].dim()
                && simplexes[last].is_face_of(&simplexes[i])
            {
                let mut c = chain.clone();
                c.push(i);
                extended.push(c);
            }
        }
        chains.extend(extended);
    }
    chains
}

/// The subdivision of `K` on all flags, with one chosen interior point per
/// simplex. The choice must be interior and must have the st-barycenter as
/// standard part; the default choice is [`choose_interior_point`] on a
/// V-simplex order.
pub fn flag_subdivision(
    k: &VComplex,
    choice: &dyn Fn(&Simplex<FieldElement>) -> Result<Point<FieldElement>>,
) -> Result<VComplex> {
    let simplexes = k.base().simplexes();
    let mut points = Vec::with_capacity(simplexes.len());
    for s in simplexes {
        let b = choice(s)?;
        if !s.contains_interior(&b) {
            return Err(Error::PreconditionViolation(format!(
                "chosen point is not interior to {s}"
            )));
        }
        let expected = st_barycenter(s)?;
        let got: Point<BigRational> = b
            .iter()
            .map(|c| c.standard_part())
            .collect::<Result<_>>()?;
        if got != expected {
            return Err(Error::PreconditionViolation(format!(
                "chosen point's st is not the st-barycenter of {s}"
            )));
        }
        points.push(b);
    }
    let mut members: Vec<Simplex<FieldElement>> = Vec::new();
    let mut keys: Vec<Vec<Point<FieldElement>>> = Vec::new();
    for chain in flags(k.base()) {
        let verts: Vec<Point<FieldElement>> =
            chain.iter().map(|&i| points[i].clone()).collect();
        let s = Simplex::new(verts)?;
        let key = s.key();
        if !keys.contains(&key) {
            keys.push(key);
            members.push(s);
        }
    }
    let subdivided = validate_complex(&members)?;
    if !union_set_equal(&subdivided.carrier(), &k.base().carrier()) {
        return Err(Error::VerificationFailed(
            "flag subdivision changed the carrier set".into(),
        ));
    }
    VComplex::new(subdivided)
}

/// Flag subdivision with the default block-weighted interior points.
pub fn flag_subdivision_default(k: &VComplex) -> Result<VComplex> {
    flag_subdivision(k, &|s| Ok(choose_interior_point(&v_simplex_order(s)?)))
}

fn barycenter<T: Scalar>(s: &Simplex<T>) -> Point<T> {
    s.interior_point()
}

/// Subdivide one simplex classically: cone the barycenter over the
/// subdivisions of the facets.
fn subdivide_simplex<T: Scalar>(s: &Simplex<T>) -> Result<Vec<Simplex<T>>> {
    if s.dim() == 0 {
        return Ok(vec![s.clone()]);
    }
    let apex = barycenter(s);
    let mut out = Vec::new();
    for facet in s.faces() {
        if facet.dim() + 1 != s.vertices().len() - 1 {
            continue;
        }
        for piece in subdivide_simplex(&facet)? {
            let mut verts = piece.vertices().to_vec();
            verts.push(apex.clone());
            out.push(Simplex::new(verts)?);
        }
    }
    Ok(out)
}

/// Classical barycentric subdivision, implemented by recursive coning and
/// independent of the flag machinery; used as an oracle for the st of flag
/// subdivisions.
pub fn barycentric_subdivision<T: Scalar>(k: &Complex<T>) -> Result<Complex<T>> {
    let mut tops = Vec::new();
    for s in k.top_simplexes() {
        tops.extend(subdivide_simplex(s)?);
    }
    validate_complex(&tops)
}
