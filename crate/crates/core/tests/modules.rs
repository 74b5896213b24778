use std::sync::Arc;

use wsa_core::algebra::{BoundedAlgebra, WeightedSurfaceAlgebra};
use wsa_core::families::Preset;
use wsa_core::field::Field;
use wsa_core::modules::*;

fn alg(p: &Preset, field: Field) -> Arc<BoundedAlgebra> {
    let td = p.spec(field).to_data(None).unwrap();
    WeightedSurfaceAlgebra::build(&td).unwrap().algebra
}

#[test]
fn triangle_periodicity_and_shapes() {
    let a = alg(&Preset::Triangle { lambda: "2".into() }, Field::Rational);
    for v in 0..3 {
        let s = Representation::simple(&a, v);
        let o4 = omega_power(&s, 4);
        assert!(is_isomorphic(&s, &o4, IsoOptions::default()), "vertex {v}: {:?}", o4.dims());
        let o2 = omega_power(&s, 2);
        println!("Ω²S{v}: {:?} word {:?}", o2.dims(), composition_word(&o2));
        let back = omega_inverse(&omega(&s));
        assert!(is_isomorphic(&s, &back, IsoOptions::default()));
    }
}

#[test]
fn hom_methods_agree() {
    let a = alg(&Preset::Spherical { lambda: "3".into() }, Field::Rational);
    let mods: Vec<Representation> = (0..6)
        .flat_map(|v| {
            let s = Representation::simple(&a, v);
            vec![Representation::projective(&a, v), omega(&s), omega_power(&s, 2), s]
        })
        .collect();
    for m in &mods {
        assert!(m.satisfies_relations());
        for n in mods.iter().step_by(3) {
            let h1 = hom_space(m, n);
            let h2 = hom_space_from_cover(m, n);
            assert_eq!(h1.len(), h2.len(), "{} {}", m.label(), n.label());
            for h in &h2 {
                assert!(h.is_homomorphism(m, n));
            }
        }
    }
}

#[test]
fn ext_symmetry_triangle() {
    let a = alg(&Preset::Triangle { lambda: "2".into() }, Field::Rational);
    let mods: Vec<Representation> = (0..3)
        .flat_map(|v| {
            let s = Representation::simple(&a, v);
            vec![omega(&s), omega_power(&s, 2), s]
        })
        .collect();
    for m in &mods {
        for n in &mods {
            let e2 = ext_dim(m, n, 2).unwrap();
            let e1 = ext_dim(n, m, 1).unwrap();
            assert_eq!(e2, e1, "{} {}", m.label(), n.label());
        }
    }
}

#[test]
fn resolution_is_minimal() {
    let a = alg(&Preset::Triangular { k: 2, lambda: "2".into() }, Field::Rational);
    let s = Representation::simple(&a, 1);
    let r = Resolution::new(&s, 4);
    assert!(r.is_minimal());
    println!("{:?}", r.tops);
}
