use num_traits::Zero;
use so3wb_core::exforms::{self, hodge_star, parse_kform, stabilizer, KForm};
use so3wb_core::liealg::{self, AlgebraKind};
use so3wb_core::repring::named::tangent;
use so3wb_core::{Workbench, Q3};

#[test]
fn invariant_dims_match_trivial_multiplicities() {
    let wb = Workbench::reference();
    let dims: Vec<usize> = (0..=8).map(|k| wb.invariant_subspace(k).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 0, 0, 2, 2, 2, 0, 0, 1]);
    for (k, &d) in dims.iter().enumerate() {
        let predicted = tangent().exterior_power(k).unwrap().mult(0);
        assert_eq!(d as i64, predicted, "k={k}");
    }
}

#[test]
fn hodge_star_maps_invariants_to_invariants() {
    let wb = Workbench::reference();
    for k in 0..=8 {
        let inv = wb.invariant_subspace(k).unwrap();
        let dual = wb.invariant_subspace(8 - k).unwrap();
        for b in inv.basis() {
            let f = KForm::new(k, b.clone()).unwrap();
            let s = hodge_star(&f);
            assert!(dual.contains(s.coeffs()));
            assert_eq!(s.norm_sq(), f.norm_sq());
        }
    }
}

#[test]
fn located_forms() {
    let wb = Workbench::reference();
    let f = wb.invariant_forms().unwrap();
    assert_eq!(f.alpha, parse_kform("e1^e2^e3").unwrap());
    assert!(f.alpha.inner(&f.beta).is_zero());
    assert!(f.beta.bidegree_part(&[0, 1, 2], 3).is_zero());
    let expected_beta = parse_kform(
        "e1^e4^e7 + -1/2 e1^e5^e6 + -1/2 e2^e4^e6 + 1/2 e2^e5^e7 + 1/2*sqrt3 e2^e5^e8 \
         + -1/2 e3^e4^e5 + -1/2 e3^e6^e7 + 1/2*sqrt3 e3^e6^e8",
    )
    .unwrap();
    assert_eq!(f.beta, expected_beta);
    assert_eq!(f.norm_sq, [Q3::from_int(1), Q3::from_ratio(15, 4), Q3::from_int(15)]);
    assert!(f.gamma.bidegree_part(&[0, 1, 2], 1).is_zero());
    assert_eq!(f.gamma.bidegree_part(&[0, 1, 2], 2), f.gamma);
    assert_eq!(f.star_alpha.degree(), 5);
    for (name, form) in f.named() {
        assert!(
            wb.invariant_subspace(form.degree()).unwrap().contains(form.coeffs()),
            "{name}"
        );
    }
}

#[test]
fn pencil_has_two_quaternionic_rays() {
    let wb = Workbench::reference();
    let scan = wb.pencil_scan().unwrap();
    assert_eq!(scan.generic_dim, 3);
    let slopes: Vec<String> = scan.jumps.iter().map(|r| r.slope.to_string()).collect();
    assert_eq!(slopes, vec!["-1", "1"]);
    assert!(scan.jumps.iter().all(|r| r.stabilizer_dim == 13));
    let g = &wb.algebra(AlgebraKind::G).unwrap().space;
    for s in &scan.jump_stabilizers {
        assert!(s.contains_subspace(g));
        assert!(liealg::is_bracket_closed(s));
    }
    let both = scan.jump_stabilizers[0].intersect(&scan.jump_stabilizers[1]).unwrap();
    assert!(both.contains_subspace(g));
}

#[test]
fn stabilizers_are_subalgebras() {
    let wb = Workbench::reference();
    let f = wb.invariant_forms().unwrap();
    for (_, form) in f.named() {
        let s = stabilizer(form);
        assert!(liealg::is_bracket_closed(&s));
        assert!(s.contains_subspace(&wb.algebra(AlgebraKind::G).unwrap().space));
    }
    assert_eq!(stabilizer(&f.alpha).dim(), 13);
    let _ = exforms::binomial(4);
}

#[test]
fn display_round_trips_through_parser() {
    let wb = so3wb_core::Workbench::reference();
    let f = wb.invariant_forms().unwrap();
    for (name, form) in f.named() {
        assert_eq!(&parse_kform(&form.to_string()).unwrap(), form, "{name}");
    }
    let mixed = parse_kform("(1/2+sqrt3) e1^e2 - 3 e3^e4 + -e5^e6").unwrap();
    assert_eq!(mixed.to_string(), "(1/2+sqrt3) e1^e2 - 3 e3^e4 - e5^e6");
    assert!(parse_kform("e1^e2 e3").is_err());
    assert!(parse_kform("e9").is_err());
    assert!(parse_kform("").is_err());
}
