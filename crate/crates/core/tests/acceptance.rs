//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Every expected value below is a literal, not read back from the library.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{One, Zero};
use so3wb_core::charclass::{self, Genus, WeightBundle};
use so3wb_core::exforms::{self, KForm};
use so3wb_core::liealg::{self, AlgebraKind};
use so3wb_core::linalg::Subspace;
use so3wb_core::repring::{named, VirtualRep};
use so3wb_core::torsion::{self, Family, GroupTag};
use so3wb_core::{model, oracle, Workbench};

fn rep(s: &str) -> VirtualRep {
    s.parse().unwrap()
}

fn c1(_: &Workbench) {
    let l2 = named::tangent().exterior_power(2).unwrap();
    assert_eq!(l2, rep("2S6+S4+3S2"));
    assert_eq!(l2.dim(), 28);
}

fn c2(wb: &Workbench) {
    let t = named::tangent();
    let l3 = t.exterior_power(3).unwrap();
    let l4 = t.exterior_power(4).unwrap();
    assert_eq!(l3, rep("S8+3S6+3S4+3S2+2S0"));
    assert_eq!(l3.dim(), 56);
    assert_eq!(l4, rep("2S8+2S6+6S4+2S2+2S0"));
    assert_eq!(l4.dim(), 70);
    assert_eq!(t.exterior_power(5).unwrap(), l3);

    // Hodge star is a g-equivariant isomorphism Λ³ → Λ⁵: it commutes with the action
    // and is invertible (** = −1 in degree 3).
    for g in &wb.model.g_gens {
        for i in 0..56 {
            let mut c = vec![Zero::zero(); 56];
            c[i] = so3wb_core::Q3::one();
            let f = KForm::new(3, c).unwrap();
            let lhs = exforms::hodge_star(&exforms::apply_action(g, &f));
            let rhs = exforms::apply_action(g, &exforms::hodge_star(&f));
            assert_eq!(lhs, rhs);
            assert_eq!(
                exforms::hodge_star(&exforms::hodge_star(&f)),
                f.scale(&-so3wb_core::Q3::one())
            );
        }
    }
}

fn c3(_: &Workbench) {
    let s = torsion::full_torsion_space().unwrap();
    assert_eq!(s.rep, rep("2S10+5S8+8S6+10S4+8S2+3S0"));
    assert_eq!(s.dim, 200);
    assert_eq!(s.invariants, 3);
}

fn c4(wb: &Workbench) {
    let table = torsion::torsion_table(wb).unwrap();
    let row = |g: GroupTag| table.rows.iter().find(|r| r.group == g).unwrap();
    for (g, m, d) in [
        (GroupTag::So3So5, [1, 3, 5, 6, 5, 2], 120),
        (GroupTag::Sp2Sp1, [1, 3, 5, 6, 5, 2], 120),
        (GroupTag::Psu3, [2, 4, 6, 8, 6, 2], 160),
    ] {
        let r = row(g);
        assert_eq!(r.space.multiplicities, m, "{g}");
        assert_eq!((r.space.dim, r.matrix_dim), (d, d), "{g}");
        assert!(r.routes_agree);
    }
    let note = row(GroupTag::Psu3).note.as_deref().expect("erratum note on psu3");
    assert!(note.contains("158") && note.contains("160"));
    assert!(row(GroupTag::So3So5).note.is_none());
}

fn c5(wb: &Workbench) {
    let g = &wb.algebra(AlgebraKind::G).unwrap().space;
    assert_eq!(g.dim(), 3);
    let algs: Vec<&Subspace> = AlgebraKind::INTERMEDIATE
        .iter()
        .map(|&k| &wb.algebra(k).unwrap().space)
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let x = algs[i].intersect(algs[j]).unwrap();
            assert_eq!(x.dim(), 3);
            assert_eq!(&x, g);
        }
    }
}

fn c6(wb: &Workbench) {
    let g = wb.algebra(AlgebraKind::G).unwrap().space.clone();
    let sp = |k| wb.algebra(k).unwrap().space.clone();
    let [a, b, c] = AlgebraKind::INTERMEDIATE.map(sp);
    let q: Vec<Subspace> = [&a, &b, &c]
        .iter()
        .map(|s| s.relative_complement(&g).unwrap())
        .collect();
    assert_eq!(q.iter().map(Subspace::dim).collect::<Vec<_>>(), [10, 5, 10]);
    let g_perp = g.orth_complement();
    assert_eq!(g_perp.dim(), 25);
    assert_eq!(q[0].sum(&q[1]).unwrap().sum(&q[2]).unwrap(), g_perp);
    for (i, s) in [&a, &b, &c].into_iter().enumerate() {
        let perp = s.orth_complement();
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let pj = perp.project_subspace(&q[j]);
        let pk = perp.project_subspace(&q[k]);
        assert_eq!(pj.dim() + pk.dim(), perp.dim());
        assert_eq!(pj.sum(&pk).unwrap(), perp);
    }
}

fn c7(wb: &Workbench) {
    assert_eq!(
        liealg::quotient_isotypes(wb, AlgebraKind::So3So5).unwrap(),
        rep("S2+S6")
    );
    assert_eq!(liealg::quotient_isotypes(wb, AlgebraKind::Su3).unwrap(), rep("S4"));
    assert_eq!(
        liealg::quotient_isotypes(wb, AlgebraKind::Sp2Sp1).unwrap(),
        rep("S6+S2")
    );
    assert_eq!(
        liealg::complement_isotypes(wb, AlgebraKind::Su3).unwrap(),
        rep("2S6+2S2")
    );
}

fn c8(wb: &Workbench) {
    let d: Vec<usize> = (3..=5).map(|k| wb.invariant_subspace(k).unwrap().dim()).collect();
    assert_eq!(d, [2, 2, 2]);
    let scan = wb.pencil_scan().unwrap();
    assert_eq!(scan.jumps.len(), 2);
    let g = &wb.algebra(AlgebraKind::G).unwrap().space;
    for s in &scan.jump_stabilizers {
        assert_eq!(s.dim(), 13);
        assert!(liealg::is_bracket_closed(s));
        assert!(s.contains_subspace(g));
        let alg = liealg::AlgebraModel {
            kind: AlgebraKind::Sp2Sp1,
            space: s.clone(),
            bracket_closed: true,
            contains_g: true,
        };
        let ideals: BTreeSet<usize> = liealg::simple_ideals(&alg).unwrap().iter().map(Subspace::dim).collect();
        assert_eq!(ideals, BTreeSet::from([10, 3]));
    }
}

fn c9(_: &Workbench) {
    let t = WeightBundle::tangent();
    // Printed as 3x⁴; the x⁴ coefficient of 2cosh x + 1 + 2cosh 2x + 2cosh x + 1 is 3/2.
    assert_eq!(charclass::chern_character(&t).to_string(), "8 + 6x^2 + (3/2)x^4");
    let (p1, p2) = charclass::pontrjagin(&t).unwrap();
    assert_eq!(p1.to_string(), "6x^2");
    assert_eq!(p2.to_string(), "9x^4");
    assert_eq!(&p1 * &p1, p2.scale(&so3wb_core::field::rat(4, 1)));
    let r = charclass::report(&t).unwrap();
    assert!(r.relations.euler_zero && r.relations.four_p2_eq_p1sq);
    assert_eq!(charclass::divisibility_bound().to_string(), "8640");
    assert_eq!(charclass::constrained_genus(Genus::L).to_string(), "1/60");
    assert_eq!(charclass::constrained_genus(Genus::AHat).to_string(), "1/960");
}

fn c10(wb: &Workbench) {
    let fams = torsion::enumerate_invariant_cases();
    assert_eq!(fams.len(), 4);
    let want = [
        (
            Family::I,
            4,
            [1].as_slice(),
            [1].as_slice(),
            ["a11 gamma", "a12 gamma", "0", "a11*m *alpha + b22 *beta"],
        ),
        (
            Family::II,
            4,
            &[1],
            &[0, 1],
            ["0", "a12 gamma + a22 *gamma", "b21 *beta", "-a12*b21/a22 *beta"],
        ),
        (Family::III, 2, &[1], &[0, 1], ["0", "a12 gamma", "0", "b22 *beta"]),
        (Family::IV, 4, &[0], &[0, 1], ["0", "0", "b21 *beta", "b22 *beta"]),
    ];
    for (f, (fam, npat, ra, rb, diffs)) in fams.iter().zip(want) {
        assert_eq!(f.family, fam);
        assert_eq!(f.patterns.len(), npat, "{fam}");
        assert_eq!(f.rank_a.iter().copied().collect::<Vec<_>>(), ra, "{fam}");
        assert_eq!(f.rank_b.iter().copied().collect::<Vec<_>>(), rb, "{fam}");
        let got: Vec<&str> = f.differentials.iter().map(|d| d.1.as_str()).collect();
        assert_eq!(got[..4], diffs, "{fam}");
        assert!(got[4..].iter().all(|d| *d == "0"));
        assert!(f.ba_zero);
        for p in &f.patterns {
            let z = |v: &str| !p.nz(v);
            let ok = match fam {
                Family::I => !z("a11") && !z("b12") && z("a22") && z("b21"),
                Family::II => z("a11") && z("b12") && !z("a22"),
                Family::III => z("a11") && z("b12") && z("a22") && !z("a12") && z("b21"),
                Family::IV => z("a11") && z("a12") && z("a22") && z("b12"),
            };
            assert!(ok, "{fam} pattern {p}");
        }
    }
    let s = torsion::sample_cases(10_000, torsion::DEFAULT_SEED, wb.exec);
    assert_eq!(s.samples, 10_000);
    assert!(s.ba_zero && s.exactly_one_family && s.classifier_agrees && s.every_family_hit);
    assert_eq!(s.per_family.values().sum::<usize>(), 10_000);
}

fn c11(wb: &Workbench) {
    let t = named::tangent();
    for k in 0..=5 {
        let slow = oracle::exterior_power(&[(2, 1), (4, 1)], k).unwrap();
        assert_eq!(t.exterior_power(k).unwrap(), VirtualRep::from_pairs(slow), "Λ^{k}");
    }
    assert_eq!(liealg::casimir_isotypes(&wb.model.g_gens, wb.exec).unwrap(), t);
    let so8 = liealg::subspace_isotypes(wb, &Subspace::full(model::SO8_DIM)).unwrap();
    assert_eq!(so8, t.exterior_power(2).unwrap());
    for tag in GroupTag::ROWS {
        let k = tag.algebra();
        let casimir = liealg::complement_isotypes(wb, k).unwrap();
        let ring = torsion::symbolic_complement(tag).unwrap();
        assert_eq!(casimir, ring, "{k}");
    }
    let g_perp = wb.algebra(AlgebraKind::G).unwrap().space.orth_complement();
    assert_eq!(
        liealg::subspace_isotypes(wb, &g_perp).unwrap(),
        t.exterior_power(2).unwrap().sub(&rep("S2"))
    );
}

type Criterion = (&'static str, fn(&Workbench));

fn main() {
    let wb = Workbench::reference();
    let criteria: [Criterion; 11] = [
        ("Λ²(S²⊕S⁴) = 2S⁶⊕S⁴⊕3S²", c1),
        ("Λ³, Λ⁴ decompositions; Λ⁵ ≅ Λ³ via Hodge star", c2),
        ("full torsion space, dim 200, 3 invariants", c3),
        ("relative torsion rows, psu3 erratum 158 → 160", c4),
        ("pairwise intersections equal g", c5),
        ("complement identities, 25 = 10 + 5 + 10", c6),
        ("quotient isotypes and su(3)^⊥ = 2S⁶ ⊕ 2S²", c7),
        ("invariant forms (2,2,2) and the two 13-dim pencil stabilizers", c8),
        ("characteristic classes, e = 0, bound 8640", c9),
        ("four case families and 10⁴ seeded samples", c10),
        ("plethysm and Casimir oracles agree", c11),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(|| f(&wb)));
        let tag = if res.is_ok() { "PASS" } else { "FAIL" };
        if let Err(e) = &res {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            println!("{tag} criterion {:>2}: {name} ({})", i + 1, msg.unwrap_or_default());
            failed += 1;
        } else {
            println!("{tag} criterion {:>2}: {name}", i + 1);
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
