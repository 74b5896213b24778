use wsa_core::algebra::{check_symmetric, presentations_agree, search_normalization, WeightedSurfaceAlgebra};
use wsa_core::families::Preset;
use wsa_core::field::Field;

fn wsa(p: &Preset) -> WeightedSurfaceAlgebra {
    let td = p.spec(Field::Rational).to_data(None).unwrap();
    WeightedSurfaceAlgebra::build(&td).unwrap()
}

#[test]
fn triangle_dims() {
    let a = wsa(&Preset::Triangle { lambda: "2".into() });
    assert_eq!(a.vertex_dims(), vec![6, 8, 6]);
    assert_eq!(a.expected_vertex_dims(), vec![6, 8, 6]);
    assert!(a.algebra.check_associative().is_none());
}

#[test]
fn triangle_full_quiver_agrees() {
    let p = Preset::Triangle { lambda: "2".into() };
    let td = p.spec(Field::Rational).to_data(None).unwrap();
    let full = WeightedSurfaceAlgebra::build_full_quiver(&td).unwrap();
    assert_eq!(full.dim(), 20);
    let a = wsa(&p);
    assert_eq!(full.cartan(), a.algebra.cartan());
    assert_eq!(a.full_relations.len(), 14);
}

#[test]
fn spherical_dims_and_presentation() {
    let p = Preset::Spherical { lambda: "3".into() };
    let a = wsa(&p);
    assert_eq!(a.vertex_dims(), vec![8, 6, 8, 6, 6, 6]);
    let g = p.build_gabriel(Field::Rational).unwrap().unwrap();
    assert!(presentations_agree(&a.algebra, &g));
    assert!(check_symmetric(&a.algebra).symmetric);
}

#[test]
fn triangle_presentation_and_search() {
    let p = Preset::Triangle { lambda: "2".into() };
    let g = p.build_gabriel(Field::Rational).unwrap().unwrap();
    assert_eq!(g.dim(), 20);
    let a = wsa(&p);
    assert!(presentations_agree(&a.algebra, &g));
    let mut td = a.data.clone();
    for c in td.params.iter_mut() {
        *c = Field::Rational.one();
    }
    let (norm, _) = search_normalization(&td, &Field::Rational.from_i64(2), &g).unwrap();
    println!("{norm:?}");
}

#[test]
fn n_spherical_dims() {
    let p = Preset::NSpherical { n: 3, m: 1, m_prime: 1, lambda: "2".into() };
    let a = wsa(&p);
    assert_eq!(a.vertex_dims(), a.expected_vertex_dims());
    assert_eq!(&a.vertex_dims()[..3], &[12, 12, 12]);
    let p = Preset::Mixed { n: 1, m: 1, lambda: "2".into() };
    let a = wsa(&p);
    assert_eq!(a.vertex_dims(), a.expected_vertex_dims());
    let p = Preset::Triangular { k: 2, lambda: "2".into() };
    let a = wsa(&p);
    assert_eq!(a.vertex_dims(), vec![10, 16, 10]);
}
