//! The combinatorial type (N, C, E) of a V-complex: vertex count, simplex
//! hypergraph, and the st-equality equivalence — the invariant governing
//! V-homeomorphism.

use crate::error::{Error, Result};
use crate::exactlin::Point;
use crate::plmap::{induced_map, PLMap};
use crate::scalar::FieldElement;

use super::vcomplex::VComplex;

pub const TYPE_VERTEX_CAP: usize = 64;

/// `(N, C, E)` under the canonical labeling: vertices sorted
/// lexicographically and labeled `0..N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexType {
    pub n: usize,
    /// Vertex-label sets of the simplexes, each sorted, the list sorted.
    pub simplexes: Vec<Vec<usize>>,
    /// st-equality classes as sorted label sets, the list sorted.
    pub classes: Vec<Vec<usize>>,
}

pub fn complex_type(k: &VComplex) -> Result<ComplexType> {
    let verts = k.base().vertices();
    let n = verts.len();
    if n > TYPE_VERTEX_CAP {
        return Err(Error::ResourceLimit {
            what: format!("complex type computation is capped at {TYPE_VERTEX_CAP} vertices"),
        });
    }
    let label = |v: &Vec<crate::scalar::FieldElement>| -> usize {
        verts.iter().position(|w| w == v).unwrap()
    };
    let mut simplexes: Vec<Vec<usize>> = Vec::new();
    for s in k.base().simplexes() {
        let mut labels: Vec<usize> = s.vertices().iter().map(|v| label(v)).collect();
        labels.sort_unstable();
        if !simplexes.contains(&labels) {
            simplexes.push(labels);
        }
    }
    simplexes.sort();
    let mut classes: Vec<(Vec<num_rational::BigRational>, Vec<usize>)> = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        let sv = k.st_of_vertex(v).expect("registered vertex").clone();
        match classes.iter_mut().find(|(c, _)| *c == sv) {
            Some((_, members)) => members.push(i),
            None => classes.push((sv, vec![i])),
        }
    }
    let mut classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort();
    Ok(ComplexType { n, simplexes, classes })
}

fn class_of(t: &ComplexType, v: usize) -> usize {
    t.classes.iter().position(|c| c.contains(&v)).unwrap()
}

fn sorted_sizes(sets: &[Vec<usize>]) -> Vec<usize> {
    let mut sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
    sizes.sort_unstable();
    sizes
}

/// Decide whether a label bijection exists matching both the simplex
/// hypergraphs and the st-classes, by backtracking.
pub fn type_equal(a: &ComplexType, b: &ComplexType) -> Result<bool> {
    Ok(type_bijection(a, b)?.is_some())
}

/// A witness bijection `pi` with `pi(C_a) = C_b` and `pi(E_a) = E_b`, when
/// one exists; `pi[i]` is the b-label of a-label `i`.
pub fn type_bijection(a: &ComplexType, b: &ComplexType) -> Result<Option<Vec<usize>>> {
    if a.n > TYPE_VERTEX_CAP || b.n > TYPE_VERTEX_CAP {
        return Err(Error::ResourceLimit {
            what: format!("type comparison is capped at {TYPE_VERTEX_CAP} vertices"),
        });
    }
    if a.n != b.n
        || a.simplexes.len() != b.simplexes.len()
        || a.classes.len() != b.classes.len()
        || sorted_sizes(&a.simplexes) != sorted_sizes(&b.simplexes)
        || sorted_sizes(&a.classes) != sorted_sizes(&b.classes)
    {
        return Ok(None);
    }
    let cls_a: Vec<usize> = (0..a.n).map(|v| class_of(a, v)).collect();
    let cls_b: Vec<usize> = (0..b.n).map(|v| class_of(b, v)).collect();
    let mut pi: Vec<Option<usize>> = vec![None; a.n];
    let mut used = vec![false; b.n];
    // Class correspondence is induced by the vertex assignment; track it.
    let mut class_map: Vec<Option<usize>> = vec![None; a.classes.len()];
    let mut class_map_used = vec![false; b.classes.len()];
    if assign(
        a,
        b,
        &cls_a,
        &cls_b,
        0,
        &mut pi,
        &mut used,
        &mut class_map,
        &mut class_map_used,
    ) {
        Ok(Some(pi.into_iter().map(|x| x.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

/// The simplexwise-affine map determined by a type-bijection witness `pi`
/// over the canonical (lexicographic) labelings: vertex `i` of `K` goes to
/// vertex `pi[i]` of `K'`. The result is verified to be a V-homeomorphism:
/// invertible, with induced maps over the residue field both ways.
pub fn canonical_v_homeomorphism(
    k: &VComplex,
    k2: &VComplex,
    pi: &[usize],
) -> Result<PLMap<FieldElement>> {
    let ta = complex_type(k)?;
    let tb = complex_type(k2)?;
    // Validate the witness: a bijection matching simplex sets and classes.
    if pi.len() != ta.n || tb.n != ta.n {
        return Err(Error::PreconditionViolation(
            "witness bijection has the wrong length".into(),
        ));
    }
    let mut seen = vec![false; tb.n];
    for &w in pi {
        if w >= tb.n || seen[w] {
            return Err(Error::PreconditionViolation(
                "witness is not a bijection".into(),
            ));
        }
        seen[w] = true;
    }
    for s in &ta.simplexes {
        let mut img: Vec<usize> = s.iter().map(|&x| pi[x]).collect();
        img.sort_unstable();
        if !tb.simplexes.contains(&img) {
            return Err(Error::PreconditionViolation(
                "witness does not match the simplex sets".into(),
            ));
        }
    }
    if ta.simplexes.len() != tb.simplexes.len() {
        return Err(Error::PreconditionViolation(
            "witness does not match the simplex sets".into(),
        ));
    }
    let cls_a: Vec<usize> = (0..ta.n).map(|v| class_of(&ta, v)).collect();
    let cls_b: Vec<usize> = (0..tb.n).map(|v| class_of(&tb, v)).collect();
    for u in 0..ta.n {
        for v in u + 1..ta.n {
            if (cls_a[u] == cls_a[v]) != (cls_b[pi[u]] == cls_b[pi[v]]) {
                return Err(Error::PreconditionViolation(
                    "witness does not match the st-classes".into(),
                ));
            }
        }
    }
    let verts_a = k.base().vertices();
    let verts_b = k2.base().vertices();
    let table: Vec<(Point<FieldElement>, Point<FieldElement>)> = (0..ta.n)
        .map(|i| (verts_a[i].clone(), verts_b[pi[i]].clone()))
        .collect();
    let g = PLMap::new(k.base().clone(), k2.base().ambient_dim(), &table)?;
    let inv = g.invert()?;
    induced_map(&g)?;
    induced_map(&inv)?;
    Ok(g)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &ComplexType,
    b: &ComplexType,
    cls_a: &[usize],
    cls_b: &[usize],
    v: usize,
    pi: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    class_map: &mut Vec<Option<usize>>,
    class_map_used: &mut Vec<bool>,
) -> bool {
    if v == a.n {
        // All vertices mapped; the incremental checks already guarantee
        // simplex and class consistency, but confirm the simplex sets match
        // exactly (same cardinality, injective image => set equality).
        return a.simplexes.iter().all(|s| {
            let mut img: Vec<usize> = s.iter().map(|&x| pi[x].unwrap()).collect();
            img.sort_unstable();
            b.simplexes.contains(&img)
        });
    }
    let ca = cls_a[v];
    for w in 0..b.n {
        if used[w] {
            continue;
        }
        let cb = cls_b[w];
        let class_ok = match class_map[ca] {
            Some(mapped) => mapped == cb,
            None => {
                !class_map_used[cb] && a.classes[ca].len() == b.classes[cb].len()
            }
        };
        if !class_ok {
            continue;
        }
        // Prune: every fully-assigned simplex containing v must map into b.
        pi[v] = Some(w);
        used[w] = true;
        let fresh_class = class_map[ca].is_none();
        if fresh_class {
            class_map[ca] = Some(cb);
            class_map_used[cb] = true;
        }
        let consistent = a.simplexes.iter().all(|s| {
            if !s.contains(&v) || s.iter().any(|&x| pi[x].is_none()) {
                return true;
            }
            let mut img: Vec<usize> = s.iter().map(|&x| pi[x].unwrap()).collect();
            img.sort_unstable();
            b.simplexes.contains(&img)
        });
        if consistent
            && assign(a, b, cls_a, cls_b, v + 1, pi, used, class_map, class_map_used)
        {
            return true;
        }
        pi[v] = None;
        used[w] = false;
        if fresh_class {
            class_map[ca] = None;
            class_map_used[cb] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, FieldElement};
    use crate::simplicial::complex::validate_complex;
    use crate::simplicial::simplex::Simplex;

    fn f(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn fe(src: &str) -> FieldElement {
        parse_scalar(src).unwrap()
    }

    fn vc(tops: Vec<Simplex<FieldElement>>) -> VComplex {
        VComplex::new(validate_complex(&tops).unwrap()).unwrap()
    }

    #[test]
    fn flat_triangle_type() {
        let k = vc(vec![Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), fe("e")],
        ])
        .unwrap()]);
        let t = complex_type(&k).unwrap();
        assert_eq!(t.n, 3);
        // All nonempty subsets of a 3-set.
        assert_eq!(t.simplexes.len(), 7);
        // Classes {(0,0)} and {(1,0),(1,e)}.
        assert_eq!(sorted_sizes(&t.classes), vec![1, 2]);
    }

    #[test]
    fn type_forgets_geometry() {
        let a = vc(vec![Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]);
        let b = vc(vec![Simplex::new(vec![vec![f(3)], vec![f(7)]]).unwrap()]);
        let ta = complex_type(&a).unwrap();
        let tb = complex_type(&b).unwrap();
        assert!(type_equal(&ta, &tb).unwrap());
    }

    #[test]
    fn homeomorphism_from_witness() {
        // Identity witness on K = K'.
        let k = vc(vec![Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]);
        let g = canonical_v_homeomorphism(&k, &k, &[0, 1]).unwrap();
        assert_eq!(g.evaluate(&[fe("1/3")]).unwrap(), vec![fe("1/3")]);

        // [0,1] -> [0,2]: x -> 2x.
        let k2 = vc(vec![Simplex::new(vec![vec![f(0)], vec![f(2)]]).unwrap()]);
        let ta = complex_type(&k).unwrap();
        let tb = complex_type(&k2).unwrap();
        let pi = type_bijection(&ta, &tb).unwrap().unwrap();
        let g = canonical_v_homeomorphism(&k, &k2, &pi).unwrap();
        assert_eq!(g.evaluate(&[fe("1/2")]).unwrap(), vec![f(1)]);

        // [0,e] <-> [0,3e]: x -> 3x; the induced map is the identity of {0}.
        let a = vc(vec![Simplex::new(vec![vec![f(0)], vec![fe("e")]]).unwrap()]);
        let b = vc(vec![Simplex::new(vec![vec![f(0)], vec![fe("3*e")]]).unwrap()]);
        let ta = complex_type(&a).unwrap();
        let tb = complex_type(&b).unwrap();
        let pi = type_bijection(&ta, &tb).unwrap().unwrap();
        let g = canonical_v_homeomorphism(&a, &b, &pi).unwrap();
        assert_eq!(g.evaluate(&[fe("e")]).unwrap(), vec![fe("3*e")]);
        let gq = crate::plmap::induced_map(&g).unwrap();
        assert_eq!(
            gq.evaluate(&[num_rational::BigRational::from_integer(0.into())])
                .unwrap(),
            vec![num_rational::BigRational::from_integer(0.into())]
        );

        // A wrong witness is rejected.
        assert!(matches!(
            canonical_v_homeomorphism(&a, &k, &[0, 1]),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn st_classes_distinguish_types() {
        // [0, e] has one st-class; [0, 1] has two.
        let a = vc(vec![Simplex::new(vec![vec![f(0)], vec![fe("e")]]).unwrap()]);
        let b = vc(vec![Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]);
        let ta = complex_type(&a).unwrap();
        let tb = complex_type(&b).unwrap();
        assert!(!type_equal(&ta, &tb).unwrap());
        assert!(type_equal(&ta, &ta).unwrap());
    }
}
