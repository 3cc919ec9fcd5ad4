//! Independent verifier for V-triangulations: recomputes every axiom from
//! the candidate's raw data and reports each check with a witness, instead
//! of trusting anything the construction cached.

use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{st_of_simplex_union, union_set_equal, Point};
use crate::plmap::induced_map;
use crate::scalar::{FieldElement, Scalar};
use crate::simplicial::{st_simplex, validate_complex, Complex, Simplex};

use super::types::VTriangulation;

type F = FieldElement;

/// One verified axiom: its name, outcome, and a short witness on failure.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The verifier's report: one line per axiom, all independent of the
/// construction that produced the candidate.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    checks: Vec<CheckLine>,
}

impl VerificationReport {
    pub fn checks(&self) -> &[CheckLine] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn sorted_keys<T: Scalar>(k: &Complex<T>) -> Vec<Vec<Point<T>>> {
    let mut keys: Vec<Vec<Point<T>>> = k.simplexes().iter().map(|s| s.key()).collect();
    keys.sort();
    keys
}

/// Recompute a complex from its top simplexes and compare the full face
/// closure with the stored simplex set.
fn revalidate<T: Scalar>(k: &Complex<T>) -> std::result::Result<(), String> {
    let tops: Vec<Simplex<T>> = k.top_simplexes().into_iter().cloned().collect();
    match validate_complex(&tops) {
        Ok(rebuilt) => {
            if sorted_keys(&rebuilt) == sorted_keys(k) {
                Ok(())
            } else {
                Err("stored simplex set is not the face closure of its tops".into())
            }
        }
        Err(e) => Err(e.to_string()),
    }
}

fn random_domain_point(rng: &mut ChaCha8Rng, k: &Complex<F>) -> Point<F> {
    let tops = k.top_simplexes();
    let s = tops[rng.gen_range(0..tops.len())];
    let raw: Vec<F> = (0..s.vertices().len())
        .map(|_| F::from_int(rng.gen_range(1..=8)))
        .collect();
    let total = raw.iter().fold(F::zero(), |a, b| a.add(b));
    let weights: Vec<F> = raw.iter().map(|r| Scalar::div(r, &total)).collect();
    crate::exactlin::combine(s.vertices(), &weights)
}

/// Check a simplexwise-affine map for exact bijectivity by inverting it and
/// round-tripping vertices plus seeded random points.
fn check_bijective(t: &VTriangulation) -> std::result::Result<(), String> {
    let inv = t.map().invert().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut probes: Vec<Point<F>> = t.map().domain().vertices();
    for _ in 0..50 {
        probes.push(random_domain_point(&mut rng, t.map().domain()));
    }
    for x in probes {
        let y = t.map().evaluate(&x).map_err(|e| e.to_string())?;
        let back = inv.evaluate(&y).map_err(|e| e.to_string())?;
        if back != x {
            return Err(format!(
                "round trip moved {} to {}",
                crate::simplicial::format_point(&x),
                crate::simplicial::format_point(&back)
            ));
        }
    }
    Ok(())
}

/// Compatibility of a triangulation (over either field) with one subset:
/// each open simplex of `k` must lie in or miss the subset, and the chosen
/// open simplexes must union exactly to it.
fn check_compatible<T: Scalar>(
    k: &Complex<T>,
    subset: &[Vec<Point<T>>],
) -> std::result::Result<(), String> {
    let mut chosen: Vec<Vec<Point<T>>> = Vec::new();
    for s in k.simplexes() {
        if crate::exactlin::point_in_union(subset, &s.interior_point()) {
            chosen.push(s.vertices().to_vec());
        }
    }
    if chosen.is_empty() {
        return Err("no open simplex lies in the subset".into());
    }
    if !union_set_equal(subset, &chosen) {
        return Err("subset is not a union of open simplexes".into());
    }
    Ok(())
}

fn push(checks: &mut Vec<CheckLine>, name: &str, r: std::result::Result<(), String>) {
    match r {
        Ok(()) => checks.push(CheckLine {
            name: name.to_string(),
            passed: true,
            detail: String::new(),
        }),
        Err(detail) => checks.push(CheckLine {
            name: name.to_string(),
            passed: false,
            detail,
        }),
    }
}

/// Verify a candidate V-triangulation of `y` compatible with `subsets`.
/// Never errors: every failed axiom becomes a FAIL line in the report.
pub fn verify_v_triangulation(
    y: &[Vec<Point<F>>],
    subsets: &[Vec<Vec<Point<F>>>],
    t: &VTriangulation,
) -> VerificationReport {
    let mut checks: Vec<CheckLine> = Vec::new();

    push(&mut checks, "domain-complex-valid", revalidate(t.map().domain()));
    push(&mut checks, "target-complex-valid", revalidate(t.complex().base()));
    push(
        &mut checks,
        "target-v-bounded",
        match t
            .complex()
            .base()
            .simplexes()
            .iter()
            .find(|s| !s.is_v_bounded())
        {
            None => Ok(()),
            Some(s) => Err(format!("unbounded simplex {}", s)),
        },
    );
    push(
        &mut checks,
        "target-st-complex-valid",
        (|| {
            let sts: Vec<Simplex<BigRational>> = t
                .complex()
                .base()
                .top_simplexes()
                .into_iter()
                .map(st_simplex)
                .collect::<crate::error::Result<_>>()
                .map_err(|e| e.to_string())?;
            let rebuilt = validate_complex(&sts).map_err(|e| e.to_string())?;
            if sorted_keys(&rebuilt) == sorted_keys(t.complex().st_complex()) {
                Ok(())
            } else {
                Err("stored st complex differs from the recomputed one".into())
            }
        })(),
    );
    push(
        &mut checks,
        "triangulates-y",
        if union_set_equal(t.domain(), y) {
            Ok(())
        } else {
            Err("domain differs from the requested set".into())
        },
    );
    push(
        &mut checks,
        "domain-matches-chart",
        if union_set_equal(t.domain(), &t.map().domain().carrier()) {
            Ok(())
        } else {
            Err("chart domain carrier differs from the stored domain".into())
        },
    );
    push(&mut checks, "chart-bijective", check_bijective(t));
    push(
        &mut checks,
        "chart-image-is-target",
        (|| {
            let img = t.map().image_complex().map_err(|e| e.to_string())?;
            if sorted_keys(&img) == sorted_keys(t.complex().base()) {
                Ok(())
            } else {
                Err("image complex differs from the stored target".into())
            }
        })(),
    );
    push(
        &mut checks,
        "induced-map-exists",
        (|| {
            let ind = induced_map(t.map()).map_err(|e| e.to_string())?;
            if ind.vertex_table() == t.induced().vertex_table() {
                Ok(())
            } else {
                Err("recomputed induced map differs from the stored one".into())
            }
        })(),
    );
    push(
        &mut checks,
        "induced-triangulates-st",
        (|| {
            t.induced().invert().map_err(|e| e.to_string())?;
            let st_domain =
                st_of_simplex_union(t.domain()).map_err(|e| e.to_string())?;
            if !union_set_equal(&st_domain, &t.induced().domain().carrier()) {
                return Err("st of the domain differs from the induced chart's domain".into());
            }
            let img = t.induced().image_complex().map_err(|e| e.to_string())?;
            if sorted_keys(&img) != sorted_keys(t.complex().st_complex()) {
                return Err("induced image differs from st of the target".into());
            }
            Ok(())
        })(),
    );
    for (i, subset) in subsets.iter().enumerate() {
        let r = check_compatible(t.map().domain(), subset).and_then(|()| {
            let st_subset = st_of_simplex_union(subset).map_err(|e| e.to_string())?;
            check_compatible(t.induced().domain(), &st_subset)
                .map_err(|e| format!("over the residue field: {e}"))
        });
        push(&mut checks, &format!("compatible-with-subset-{i}"), r);
    }
    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;
    use crate::simplicial::VComplex;

    fn f(n: i64) -> F {
        F::from_int(n)
    }

    fn fe(src: &str) -> F {
        parse_scalar(src).unwrap()
    }

    #[test]
    fn identity_triangle_passes_all_checks() {
        let s = Simplex::new(vec![
            vec![f(0), f(0)],
            vec![f(1), f(0)],
            vec![f(1), fe("e")],
        ])
        .unwrap();
        let vk = VComplex::new(validate_complex(&[s.clone()]).unwrap()).unwrap();
        let t = VTriangulation::identity(vk).unwrap();
        let report = verify_v_triangulation(&[s.vertices().to_vec()], &[], &t);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn compatibility_is_checked_on_both_levels() {
        // [0,1] split at 1/2: the subset {1/2} is a vertex, so compatible;
        // the subset {1/4} is interior to a piece, so not.
        let k = validate_complex(&[
            Simplex::new(vec![vec![f(0)], vec![fe("1/2")]]).unwrap(),
            Simplex::new(vec![vec![fe("1/2")], vec![f(1)]]).unwrap(),
        ])
        .unwrap();
        let t = VTriangulation::identity(VComplex::new(k).unwrap()).unwrap();
        let good = vec![vec![vec![vec![fe("1/2")]]]];
        let bad = vec![vec![vec![vec![fe("1/4")]]]];
        let report = verify_v_triangulation(&t.domain().to_vec(), &good, &t);
        assert!(report.all_passed(), "{report}");
        let report = verify_v_triangulation(&t.domain().to_vec(), &bad, &t);
        assert!(!report.all_passed());
        let line = report
            .checks()
            .iter()
            .find(|c| c.name == "compatible-with-subset-0")
            .unwrap();
        assert!(!line.passed);
    }

    #[test]
    fn wrong_set_fails_the_triangulates_check() {
        let k = validate_complex(&[Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]).unwrap();
        let t = VTriangulation::identity(VComplex::new(k).unwrap()).unwrap();
        let other = vec![vec![vec![f(0)], vec![f(2)]]];
        let report = verify_v_triangulation(&other, &[], &t);
        assert!(!report.all_passed());
        let line = report
            .checks()
            .iter()
            .find(|c| c.name == "triangulates-y")
            .unwrap();
        assert!(!line.passed);
        assert!(report
            .checks()
            .iter()
            .filter(|c| c.name != "triangulates-y")
            .all(|c| c.passed));
    }

    #[test]
    fn report_prints_one_line_per_check() {
        let k = validate_complex(&[Simplex::new(vec![vec![f(0)], vec![f(1)]]).unwrap()]).unwrap();
        let t = VTriangulation::identity(VComplex::new(k).unwrap()).unwrap();
        let report = verify_v_triangulation(&t.domain().to_vec(), &[], &t);
        let text = report.to_string();
        assert_eq!(text.lines().count(), report.checks().len());
        assert!(text.lines().all(|l| l.starts_with("PASS ")));
    }
}
