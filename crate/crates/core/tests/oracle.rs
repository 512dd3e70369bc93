use proptest::prelude::*;
use so3wb_core::charclass::GradedPoly;
use so3wb_core::field::rat;
use so3wb_core::oracle;
use so3wb_core::repring::{named, VirtualRep};

fn pairs(r: &VirtualRep) -> Vec<(u32, u32)> {
    r.terms().map(|(n, m)| (n, m as u32)).collect()
}

#[test]
fn exterior_powers_of_tangent_match_brute_force() {
    let t = named::tangent();
    for k in 0..=8 {
        let fast = t.exterior_power(k).unwrap();
        let slow = VirtualRep::from_pairs(oracle::exterior_power(&pairs(&t), k).unwrap());
        assert_eq!(fast, slow, "Λ^{k}");
    }
    assert_eq!(t.exterior_power(2).unwrap(), "2S6+S4+3S2".parse().unwrap());
}

#[test]
fn small_reps_all_powers_match_brute_force() {
    let reps = [
        "S1", "S2", "S3", "S4", "2S1", "S1+S2", "S0+S3", "S2+S2", "S1+S5", "S9", "S0+S1+S4",
    ];
    for s in reps {
        let r: VirtualRep = s.parse().unwrap();
        assert!(r.dim() <= 10);
        for k in 0..=4 {
            let ext = VirtualRep::from_pairs(oracle::exterior_power(&pairs(&r), k).unwrap());
            let sym = VirtualRep::from_pairs(oracle::symmetric_power(&pairs(&r), k).unwrap());
            assert_eq!(r.exterior_power(k).unwrap(), ext, "Λ^{k} {s}");
            assert_eq!(r.symmetric_power(k).unwrap(), sym, "S^{k} {s}");
        }
    }
}

proptest! {
    #[test]
    fn clebsch_gordan_matches_brute_force(a in 0u32..8, b in 0u32..8, ma in 1u32..3, mb in 1u32..3) {
        let x = VirtualRep::from_pairs([(a, ma as i64)]);
        let y = VirtualRep::from_pairs([(b, mb as i64)]);
        let slow = VirtualRep::from_pairs(oracle::tensor(&[(a, ma)], &[(b, mb)]).unwrap());
        prop_assert_eq!(x.tensor(&y), slow);
        prop_assert_eq!(x.tensor(&y).dim(), x.dim() * y.dim());
    }

    #[test]
    fn decompose_round_trip(ms in proptest::collection::vec(0i64..4, 1..7)) {
        let r = VirtualRep::from_pairs(ms.iter().enumerate().map(|(n, &m)| (n as u32, m)));
        prop_assert_eq!(r.to_character().decompose().unwrap(), r.clone());
        let back: VirtualRep = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn graded_ring_laws(c in proptest::collection::vec(-5i64..6, 15)) {
        let p = |o: usize| GradedPoly::new(std::array::from_fn(|i| rat(c[o + i], 1 + i as i64)));
        let (a, b, d) = (p(0), p(5), p(10));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
    }
}
