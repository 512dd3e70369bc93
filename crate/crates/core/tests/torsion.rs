use std::collections::BTreeSet;

use so3wb_core::exec::Exec;
use so3wb_core::torsion::{self, Family, GroupTag};
use so3wb_core::{VirtualRep, Workbench};

#[test]
fn full_space() {
    let t = torsion::full_torsion_space().unwrap();
    assert_eq!(t.multiplicities, vec![2, 5, 8, 10, 8, 3]);
    assert_eq!(t.dim, 200);
    assert_eq!(t.invariants, 3);
}

#[test]
fn table_rows() {
    let wb = Workbench::reference();
    let table = torsion::torsion_table(&wb).unwrap();
    let expect = [
        (GroupTag::So3So5, vec![1, 3, 5, 6, 5, 2], 120),
        (GroupTag::Psu3, vec![2, 4, 6, 8, 6, 2], 160),
        (GroupTag::Sp2Sp1, vec![1, 3, 5, 6, 5, 2], 120),
        (GroupTag::Full, vec![2, 5, 8, 10, 8, 3], 200),
    ];
    for (row, (tag, mults, dim)) in table.rows.iter().zip(expect) {
        assert_eq!(row.group, tag);
        assert_eq!(row.space.multiplicities, mults);
        assert_eq!(row.space.dim, dim);
        assert_eq!(row.matrix_dim, dim);
        assert!(row.routes_agree, "{tag}");
        assert_eq!(row.note.is_some(), tag == GroupTag::Psu3);
    }
    assert!(table.rows[1].note.as_ref().unwrap().contains("158"));
}

#[test]
fn class_splits_partition_the_rows() {
    for tag in [GroupTag::So3So5, GroupTag::Sp2Sp1] {
        let parts = torsion::class_split(tag).unwrap();
        let sum = parts.iter().fold(VirtualRep::zero(), |a, p| a.add(&p.rep));
        assert_eq!(sum, torsion::relative_torsion(tag).unwrap().rep);
    }
    let nav: Vec<i64> = torsion::class_split(GroupTag::So3So5)
        .unwrap()
        .iter()
        .map(|c| c.dim)
        .collect();
    assert_eq!(nav, vec![15, 25, 5, 30, 42, 3]);
    let quat = torsion::class_split(GroupTag::Sp2Sp1).unwrap();
    assert_eq!(quat.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![16, 64, 32, 8]);
    assert_eq!(quat[3].rep, "S4+S2".parse().unwrap());
    assert!(torsion::class_split(GroupTag::Psu3).is_err());
}

#[test]
fn cyclic_identities() {
    let wb = Workbench::reference();
    let r = torsion::verify_cyclic_identities(&wb).unwrap();
    assert!(r.holds, "{r:#?}");
    assert_eq!(r.total_dim, 200);
    let dims: Vec<usize> = r.total.iter().map(|t| t.1).collect();
    assert_eq!(dims, vec![80, 40, 80]);
}

#[test]
fn four_families() {
    let fams = torsion::enumerate_invariant_cases();
    assert_eq!(fams.len(), 4);
    let ranks: Vec<(BTreeSet<usize>, BTreeSet<usize>)> =
        fams.iter().map(|f| (f.rank_a.clone(), f.rank_b.clone())).collect();
    let s = |x: &[usize]| x.iter().copied().collect::<BTreeSet<_>>();
    assert_eq!(
        ranks,
        vec![
            (s(&[1]), s(&[1])),
            (s(&[1]), s(&[0, 1])),
            (s(&[1]), s(&[0, 1])),
            (s(&[0]), s(&[0, 1]))
        ]
    );
    assert!(fams.iter().all(|f| f.ba_zero));
    let d = |f: usize, k: usize| fams[f].differentials[k].1.clone();
    assert_eq!(d(0, 0), "a11 gamma");
    assert_eq!(d(0, 2), "0");
    assert_eq!(d(0, 3), "a11*m *alpha + b22 *beta");
    assert_eq!(d(1, 1), "a12 gamma + a22 *gamma");
    assert_eq!(d(1, 3), "-a12*b21/a22 *beta");
    assert_eq!(d(3, 2), "b21 *beta");
    assert_eq!(d(3, 3), "b22 *beta");
    assert!(fams
        .iter()
        .all(|f| f.differentials[4].1 == "0" && f.differentials[5].1 == "0"));
}

#[test]
fn ten_thousand_samples() {
    let r = torsion::sample_cases(10_000, torsion::DEFAULT_SEED, Exec::Parallel);
    assert!(r.holds(), "{r:#?}");
    assert_eq!(r.per_family.values().sum::<usize>(), 10_000);
    assert!(Family::ALL.iter().all(|f| r.per_family[f] > 0));
}
