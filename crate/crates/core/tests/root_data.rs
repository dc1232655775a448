use krcomb::virtual_kleber::embedding;
use krcomb::{dynkin_data, AffineType, Error, Weight};
use proptest::prelude::*;

const LABELS: &[&str] = &[
    "A1~1", "A2~1", "A5~1", "B3~1", "B4~1", "C2~1", "C3~1", "D4~1", "D5~1", "E6~1", "E7~1", "E8~1", "F4~1", "G2~1",
    "A2~2", "A4~2", "A4~2dag", "A6~2", "A5~2", "A7~2", "D3~2", "D4~2", "E6~2", "D4~3",
];

const FOLDED: &[&str] = &[
    "C2~1", "C3~1", "B3~1", "B4~1", "A4~2", "A4~2dag", "A6~2", "D3~2", "D4~2", "A5~2", "F4~1", "G2~1", "E6~2", "D4~3",
];

fn ty(s: &str) -> AffineType {
    s.parse().expect("valid label")
}

#[test]
fn labels_round_trip() {
    for &l in LABELS {
        assert_eq!(ty(l).label(), l);
    }
}

#[test]
fn bad_labels_are_parse_errors() {
    for l in ["", "A3", "A3~4", "Q2~1", "F3~1", "G3~1", "E5~2", "Ax~1"] {
        assert!(matches!(l.parse::<AffineType>(), Err(Error::Parse(_))), "{l}");
    }
    assert!("B2~1".parse::<AffineType>().is_err());
    assert!("A3~2".parse::<AffineType>().is_err());
}

#[test]
fn kac_labels_span_the_null_spaces() {
    for &l in LABELS {
        let d = dynkin_data(ty(l));
        let size = d.cartan.len();
        for i in 0..size {
            let right: i64 = (0..size).map(|j| d.cartan[i][j] * d.a[j]).sum();
            let left: i64 = (0..size).map(|j| d.a_dual[j] * d.cartan[j][i]).sum();
            assert_eq!((right, left), (0, 0), "{l} row {i}");
        }
    }
}

#[test]
fn symmetrized_form_is_symmetric() {
    for &l in LABELS {
        let d = dynkin_data(ty(l));
        let size = d.cartan.len();
        for i in 0..size {
            for j in 0..size {
                assert_eq!(d.form_entry(i, j), d.form_entry(j, i), "{l} ({i},{j})");
            }
        }
    }
}

#[test]
fn ambient_types_are_simply_laced() {
    for &l in FOLDED {
        let e = embedding(ty(l)).expect("embedding exists");
        assert!(e.y.is_simply_laced(), "{l}");
        let covered: usize = e.orbits.iter().map(Vec::len).sum();
        assert_eq!(covered, e.y.rank() + 1, "{l}: orbits partition the nodes of Y");
    }
}

#[test]
fn f4_node_one_maps_to_e6_node_six() {
    let e = embedding(ty("F4~1")).expect("F4 embeds");
    assert_eq!(e.orbits[1], vec![6]);
}

proptest! {
    #[test]
    fn root_coordinates_invert(idx in 0usize..LABELS.len(), coeffs in prop::collection::vec(-4i64..5, 8)) {
        let d = dynkin_data(ty(LABELS[idx]));
        let r: Vec<i64> = coeffs[..d.rank()].to_vec();
        let w = d.from_root_coords(&r);
        prop_assert_eq!(d.integral_root_coords(&w), Some(r));
    }

    #[test]
    fn psi_is_injective_and_keeps_dominance(idx in 0usize..FOLDED.len(), coeffs in prop::collection::vec(0i64..4, 8)) {
        let e = embedding(ty(FOLDED[idx])).expect("embedding exists");
        let w = Weight(coeffs[..e.x_rank()].to_vec());
        let image = e.psi_weight(&w);
        prop_assert!(image.is_dominant());
        prop_assert_eq!(e.unpsi_weight(&image), Some(w));
    }

    #[test]
    fn dominance_is_a_partial_order(idx in 0usize..LABELS.len(), a in prop::collection::vec(0i64..3, 8), b in prop::collection::vec(0i64..3, 8)) {
        let d = dynkin_data(ty(LABELS[idx]));
        let n = d.rank();
        let top = d.from_root_coords(&a[..n]);
        let lower = &top - &d.from_root_coords(&b[..n]);
        prop_assert!(d.dominates(&top, &lower));
        prop_assert!(d.dominates(&top, &top));
        if b[..n].iter().any(|&x| x > 0) {
            prop_assert!(!d.dominates(&lower, &top));
        }
    }
}
