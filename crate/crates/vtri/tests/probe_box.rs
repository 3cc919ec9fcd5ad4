use vtri::pipeline::v_triangulate;
use vtri::scalar::{parse_scalar, FieldElement};
use vtri::simplicial::{validate_complex, Simplex};

fn f(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

#[test]
fn thin_box() {
    let e = parse_scalar("e").unwrap();
    // [0,1]^2 x [0,e]: prism over two triangles, 6 tetrahedra.
    let sq = [
        vec![vec![f(0), f(0)], vec![f(1), f(0)], vec![f(1), f(1)]],
        vec![vec![f(0), f(0)], vec![f(0), f(1)], vec![f(1), f(1)]],
    ];
    let mut tops = Vec::new();
    for tri in &sq {
        // Prism over the triangle split into 3 tetrahedra.
        let lift = |v: &Vec<FieldElement>, h: &FieldElement| {
            let mut p = v.clone();
            p.push(h.clone());
            p
        };
        let b: Vec<_> = tri.iter().map(|v| lift(v, &f(0))).collect();
        let c: Vec<_> = tri.iter().map(|v| lift(v, &e)).collect();
        for i in 0..3 {
            let mut verts = b[..=i].to_vec();
            verts.extend(c[i..].iter().cloned());
            tops.push(Simplex::new(verts).unwrap());
        }
    }
    let k = validate_complex(&tops).unwrap();
    let t = v_triangulate(&k, &[]).unwrap();
    assert!(t.is_identity());
    eprintln!("tops: {}", t.complex().base().top_simplexes().len());
}
