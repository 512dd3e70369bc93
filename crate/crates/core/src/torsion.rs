//! Intrinsic torsion modules and the invariant-torsion case analysis.
//!
//! Torsion of a G-structure lives in `T* ⊗ 𝔤_G^⊥`. Everything here is
//! decomposed under the principal so(3), both symbolically through the
//! representation ring and concretely through Casimir kernels on so(8).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Q3;
use crate::liealg::{self, AlgebraKind};
use crate::linalg::Subspace;
use crate::model::{DIM, SO8_DIM};
use crate::repring::{named, VirtualRep};
use crate::symbolic::{Laurent, Mat2};
use crate::Workbench;

/// Labels of the torsion table columns.
pub const TABLE_LABELS: [u32; 6] = [10, 8, 6, 4, 2, 0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    So3So5,
    Psu3,
    Sp2Sp1,
    Full,
}

impl GroupTag {
    pub const ROWS: [GroupTag; 4] = [GroupTag::So3So5, GroupTag::Psu3, GroupTag::Sp2Sp1, GroupTag::Full];

    pub fn tag(self) -> &'static str {
        match self {
            GroupTag::So3So5 => "so3so5",
            GroupTag::Psu3 => "psu3",
            GroupTag::Sp2Sp1 => "sp2sp1",
            GroupTag::Full => "full",
        }
    }

    /// The Lie algebra whose complement carries the torsion.
    pub fn algebra(self) -> AlgebraKind {
        match self {
            GroupTag::So3So5 => AlgebraKind::So3So5,
            GroupTag::Psu3 => AlgebraKind::Su3,
            GroupTag::Sp2Sp1 => AlgebraKind::Sp2Sp1,
            GroupTag::Full => AlgebraKind::G,
        }
    }

    /// Dimension as printed in the published table.
    pub fn printed_dim(self) -> i64 {
        match self {
            GroupTag::So3So5 | GroupTag::Sp2Sp1 => 120,
            GroupTag::Psu3 => 158,
            GroupTag::Full => 200,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "so3so5" => Ok(GroupTag::So3So5),
            "psu3" | "su3" => Ok(GroupTag::Psu3),
            "sp2sp1" => Ok(GroupTag::Sp2Sp1),
            "full" | "g" => Ok(GroupTag::Full),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

/// `𝔤_G` restricted to the principal so(3), from branching rules alone.
pub fn symbolic_algebra(tag: GroupTag) -> Result<VirtualRep> {
    let (v, w) = (named::v(), named::w());
    Ok(match tag {
        GroupTag::So3So5 => v.exterior_power(2)?.add(&w.exterior_power(2)?),
        GroupTag::Psu3 => named::tangent(),
        GroupTag::Sp2Sp1 => named::e().symmetric_power(2)?.add(&named::h().symmetric_power(2)?),
        GroupTag::Full => v.clone(),
    })
}

/// `𝔤_G^⊥ = Λ²T − 𝔤_G`.
pub fn symbolic_complement(tag: GroupTag) -> Result<VirtualRep> {
    Ok(named::tangent().exterior_power(2)?.sub(&symbolic_algebra(tag)?))
}

pub fn symbolic_torsion(tag: GroupTag) -> Result<VirtualRep> {
    Ok(named::tangent().tensor(&symbolic_complement(tag)?))
}

/// Same space with `𝔤_G^⊥` decomposed from Casimir kernels on so(8).
pub fn concrete_torsion(wb: &Workbench, tag: GroupTag) -> Result<VirtualRep> {
    Ok(named::tangent().tensor(&liealg::complement_isotypes(wb, tag.algebra())?))
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionSpace {
    pub rep: VirtualRep,
    pub multiplicities: Vec<i64>,
    pub dim: i64,
    pub invariants: i64,
}

impl TorsionSpace {
    fn new(rep: VirtualRep) -> Self {
        TorsionSpace {
            multiplicities: rep.mult_vector(&TABLE_LABELS),
            dim: rep.real_dimension().total,
            invariants: rep.mult(0),
            rep,
        }
    }
}

pub fn full_torsion_space() -> Result<TorsionSpace> {
    Ok(TorsionSpace::new(symbolic_torsion(GroupTag::Full)?))
}

pub fn relative_torsion(tag: GroupTag) -> Result<TorsionSpace> {
    Ok(TorsionSpace::new(symbolic_torsion(tag)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionRow {
    pub group: GroupTag,
    #[serde(flatten)]
    pub space: TorsionSpace,
    /// `8 · dim 𝔤_G^⊥` from the matrix model.
    pub matrix_dim: i64,
    /// Symbolic and matrix routes give the same decomposition.
    pub routes_agree: bool,
    pub printed_dim: i64,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionTable {
    pub labels: Vec<String>,
    pub rows: Vec<TorsionRow>,
}

pub fn torsion_table(wb: &Workbench) -> Result<TorsionTable> {
    let rows = GroupTag::ROWS
        .iter()
        .map(|&tag| {
            let symbolic = symbolic_torsion(tag)?;
            let concrete = concrete_torsion(wb, tag)?;
            let perp = liealg::complement(wb, tag.algebra())?;
            let space = TorsionSpace::new(symbolic.clone());
            let note = (space.dim != tag.printed_dim()).then(|| {
                let terms: Vec<String> = TABLE_LABELS
                    .iter()
                    .zip(&space.multiplicities)
                    .filter(|(_, m)| **m != 0)
                    .map(|(l, m)| format!("{m}*{}", l + 1))
                    .collect();
                format!(
                    "erratum: printed dimension {} disagrees with the row's multiplicities ({} = {})",
                    tag.printed_dim(),
                    terms.join(" + "),
                    space.dim
                )
            });
            Ok(TorsionRow {
                group: tag,
                matrix_dim: (DIM * perp.dim()) as i64,
                routes_agree: symbolic == concrete,
                printed_dim: tag.printed_dim(),
                note,
                space,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TorsionTable {
        labels: TABLE_LABELS.iter().map(|l| format!("S{l}")).collect(),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassComponent {
    pub label: &'static str,
    pub rep: VirtualRep,
    pub dim: i64,
}

fn traceless_square(x: &VirtualRep) -> Result<VirtualRep> {
    Ok(x.symmetric_power(2)?.sub(&VirtualRep::irr(0)))
}

/// Irreducible torsion classes of the larger group, decomposed under so(3).
pub fn class_split(tag: GroupTag) -> Result<Vec<ClassComponent>> {
    let parts: Vec<(&'static str, VirtualRep)> = match tag {
        GroupTag::So3So5 => {
            let (v, w) = (named::v(), named::w());
            vec![
                ("L2V.W", v.exterior_power(2)?.tensor(&w)),
                ("S2_0V.W", traceless_square(&v)?.tensor(&w)),
                ("W", w.clone()),
                ("V.L2W", v.tensor(&w.exterior_power(2)?)),
                ("V.S2_0W", v.tensor(&traceless_square(&w)?)),
                ("V", v.clone()),
            ]
        }
        GroupTag::Sp2Sp1 => {
            let (e, h) = (named::e(), named::h());
            let s3h = VirtualRep::irr(3);
            let l2e0 = e.exterior_power(2)?.sub(&VirtualRep::irr(0));
            let k = l2e0.tensor(&e).sub(&e);
            vec![
                ("E.S3H", e.tensor(&s3h)),
                ("K.S3H", k.tensor(&s3h)),
                ("K.H", k.tensor(&h)),
                ("E.H", e.tensor(&h)),
            ]
        }
        other => return Err(Error::UnknownTag(other.tag().to_string())),
    };
    Ok(parts
        .into_iter()
        .map(|(label, rep)| ClassComponent {
            label,
            dim: rep.dim(),
            rep,
        })
        .collect())
}

/// `T ⊗ U` inside `R⁸ ⊗ so(8)`, coordinates `i·28 + a`.
pub fn tensor_with_tangent(u: &Subspace) -> Subspace {
    let n = DIM * SO8_DIM;
    let mut vecs = Vec::with_capacity(DIM * u.dim());
    for i in 0..DIM {
        for b in u.basis() {
            let mut v = vec![Q3::zero(); n];
            v[i * SO8_DIM..(i + 1) * SO8_DIM].clone_from_slice(b);
            vecs.push(v);
        }
    }
    Subspace::span(n, vecs)
}

fn is_direct(parts: &[&Subspace]) -> Result<(Subspace, bool)> {
    let n = parts[0].ambient();
    let sum = parts.iter().try_fold(Subspace::zero(n), |acc, p| acc.sum(p))?;
    let dims: usize = parts.iter().map(|p| p.dim()).sum();
    Ok((sum.clone(), sum.dim() == dims))
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicCheck {
    /// `τ^X`, the torsion of the X-structure.
    pub structure: AlgebraKind,
    /// `(Y, dim τ^X(Y))` where `τ^X(Y)` takes values in `T* ⊗ (𝔷/𝔤)`, Z the third algebra.
    pub components: Vec<(AlgebraKind, AlgebraKind, usize)>,
    pub dim: usize,
    pub direct_sum: bool,
    pub rep_sum_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub checks: Vec<CyclicCheck>,
    /// `τ^X(Y)` and `τ^Y(X)` are both modelled on `T* ⊗ (𝔷/𝔤)` and embed injectively.
    pub shared_spaces: bool,
    pub total: Vec<(AlgebraKind, usize)>,
    pub total_dim: usize,
    pub total_direct: bool,
    pub total_rep_holds: bool,
    pub holds: bool,
}

pub fn verify_cyclic_identities(wb: &Workbench) -> Result<CyclicReport> {
    let kinds = AlgebraKind::INTERMEDIATE;
    let t = named::tangent();
    let quots: Vec<Subspace> = kinds.iter().map(|&k| liealg::quotient(wb, k)).collect::<Result<_>>()?;
    let qreps: Vec<VirtualRep> = quots
        .iter()
        .map(|q| liealg::subspace_isotypes(wb, q))
        .collect::<Result<_>>()?;
    let results = wb.exec.map_range(3, |x| -> Result<(CyclicCheck, bool)> {
        let perp = liealg::complement(wb, kinds[x])?;
        let others: Vec<usize> = (0..3).filter(|&i| i != x).collect();
        // τ^X(Y) is the piece modelled on the third quotient Z.
        let mut comps = Vec::new();
        let mut spaces = Vec::new();
        let mut injective = true;
        for &y in &others {
            let z = 3 - x - y;
            let image = perp.project_subspace(&quots[z]);
            injective &= image.dim() == quots[z].dim();
            let s = tensor_with_tangent(&image);
            comps.push((kinds[y], kinds[z], s.dim()));
            spaces.push(s);
        }
        let (sum, direct) = is_direct(&[&spaces[0], &spaces[1]])?;
        let whole = tensor_with_tangent(&perp);
        let rep_sum = t.tensor(&qreps[others[0]]).add(&t.tensor(&qreps[others[1]]));
        let rep_sum_holds = rep_sum == t.tensor(&liealg::subspace_isotypes(wb, &perp)?);
        Ok((
            CyclicCheck {
                structure: kinds[x],
                components: comps,
                dim: whole.dim(),
                direct_sum: direct && sum == whole,
                rep_sum_holds,
            },
            injective,
        ))
    });
    let mut checks = Vec::new();
    let mut shared_spaces = true;
    for r in results {
        let (c, inj) = r?;
        shared_spaces &= inj;
        checks.push(c);
    }
    let total_spaces: Vec<Subspace> = quots.iter().map(tensor_with_tangent).collect();
    let (sum, direct) = is_direct(&total_spaces.iter().collect::<Vec<_>>())?;
    let g_perp = liealg::complement(wb, AlgebraKind::G)?;
    let total_direct = direct && sum == tensor_with_tangent(&g_perp);
    let total_rep = qreps.iter().fold(VirtualRep::zero(), |acc, q| acc.add(&t.tensor(q)));
    let total_rep_holds = total_rep == symbolic_torsion(GroupTag::Full)?;
    let holds =
        shared_spaces && total_direct && total_rep_holds && checks.iter().all(|c| c.direct_sum && c.rep_sum_holds);
    Ok(CyclicReport {
        checks,
        shared_spaces,
        total: kinds.iter().zip(&total_spaces).map(|(k, s)| (*k, s.dim())).collect(),
        total_dim: sum.dim(),
        total_direct,
        total_rep_holds,
        holds,
    })
}

// ---------------------------------------------------------------------------
// Invariant torsion: (dα, dβ) = (γ, *γ)A, (dγ, d*γ) = (*α, *β)B, BA = 0.

/// The entries of A and B that are not structurally zero (`a21 = b11 = 0`).
pub const CASE_VARS: [&str; 6] = ["a11", "a12", "a22", "b12", "b21", "b22"];

/// Zero/nonzero pattern over [`CASE_VARS`]; bit set means nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub u8);

impl Pattern {
    pub fn nz(self, var: &str) -> bool {
        let i = CASE_VARS.iter().position(|v| *v == var).expect("case variable");
        self.0 & (1 << i) != 0
    }

    /// Whether some (A, B) with this pattern satisfies all constraints.
    ///
    /// `b12 = m·a11` with `m ≠ 0`; `b12·a22 = b21·a11 = 0`; and
    /// `b21·a12 + b22·a22 = 0`, which fails exactly when one of its two
    /// terms is nonzero and the other is zero.
    pub fn feasible(self) -> bool {
        let n = |v| self.nz(v);
        let long1 = n("b21") && n("a12");
        let long2 = n("b22") && n("a22");
        n("a11") == n("b12") && !(n("b12") && n("a22")) && !(n("b21") && n("a11")) && long1 == long2
    }

    pub fn rank_a(self) -> usize {
        let n = |v| self.nz(v);
        if n("a11") && n("a22") {
            2
        } else if n("a11") || n("a12") || n("a22") {
            1
        } else {
            0
        }
    }

    pub fn rank_b(self) -> usize {
        let n = |v| self.nz(v);
        if n("b12") && n("b21") {
            2
        } else if n("b12") || n("b21") || n("b22") {
            1
        } else {
            0
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = CASE_VARS
            .iter()
            .map(|v| format!("{v}{}", if self.nz(v) { "!=0" } else { "=0" }))
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(CASE_VARS.iter().map(|v| (*v, self.nz(v))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::I, Family::II, Family::III, Family::IV];

    /// The cascade on `(a11, a22, a12)`.
    pub fn of(p: Pattern) -> Family {
        if p.nz("a11") {
            Family::I
        } else if p.nz("a22") {
            Family::II
        } else if p.nz("a12") {
            Family::III
        } else {
            Family::IV
        }
    }

    pub fn conditions(self) -> &'static [&'static str] {
        match self {
            Family::I => &["a11 != 0", "b12 = m*a11", "a22 = 0", "b21 = 0"],
            Family::II => &["a11 = 0", "b12 = 0", "a22 != 0", "b22 = -a12*b21/a22"],
            Family::III => &["a11 = 0", "b12 = 0", "a22 = 0", "a12 != 0", "b21 = 0"],
            Family::IV => &["A = 0", "b12 = 0"],
        }
    }

    pub fn free(self) -> &'static [&'static str] {
        match self {
            Family::I => &["a11", "a12", "b22", "m"],
            Family::II => &["a12", "a22", "b21"],
            Family::III => &["a12", "b22"],
            Family::IV => &["b21", "b22"],
        }
    }

    /// Generic A and B of the family.
    pub fn matrices(self) -> (Mat2, Mat2) {
        let v = Laurent::var;
        let z = || Laurent::int(0);
        match self {
            Family::I => (
                Mat2([[v("a11"), v("a12")], [z(), z()]]),
                Mat2([[z(), &v("m") * &v("a11")], [z(), v("b22")]]),
            ),
            Family::II => {
                let b22 = &(&-&v("a12") * &v("b21")) * &v("a22").monomial_inverse().unwrap();
                (
                    Mat2([[z(), v("a12")], [z(), v("a22")]]),
                    Mat2([[z(), z()], [v("b21"), b22]]),
                )
            }
            Family::III => (Mat2([[z(), v("a12")], [z(), z()]]), Mat2([[z(), z()], [z(), v("b22")]])),
            Family::IV => (Mat2([[z(), z()], [z(), z()]]), Mat2([[z(), z()], [v("b21"), v("b22")]])),
        }
    }

    /// Independent membership test on concrete matrices (already known to satisfy BA = 0).
    pub fn matches(self, a: &RatMat2, b: &RatMat2) -> bool {
        let nz = |x: &BigRational| !x.is_zero();
        let (a11, a12, a22) = (&a[0][0], &a[0][1], &a[1][1]);
        let (b12, b21, b22) = (&b[0][1], &b[1][0], &b[1][1]);
        match self {
            Family::I => nz(a11) && nz(b12) && !nz(a22) && !nz(b21),
            Family::II => !nz(a11) && !nz(b12) && nz(a22) && b22 * a22 == -(b21 * a12),
            Family::III => !nz(a11) && !nz(b12) && !nz(a22) && nz(a12) && !nz(b21),
            Family::IV => !nz(a11) && !nz(a12) && !nz(a22) && !nz(b12),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn combo(terms: &[(&Laurent, &str)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| {
            let s = c.to_string();
            if s == "1" {
                name.to_string()
            } else if s.contains(' ') {
                format!("({s}) {name}")
            } else {
                format!("{s} {name}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// The six differentials for given A, B.
pub fn differentials(a: &Mat2, b: &Mat2) -> Vec<(&'static str, String)> {
    let (a, b) = (&a.0, &b.0);
    vec![
        ("d alpha", combo(&[(&a[0][0], "gamma"), (&a[1][0], "*gamma")])),
        ("d beta", combo(&[(&a[0][1], "gamma"), (&a[1][1], "*gamma")])),
        ("d gamma", combo(&[(&b[0][0], "*alpha"), (&b[1][0], "*beta")])),
        ("d *gamma", combo(&[(&b[0][1], "*alpha"), (&b[1][1], "*beta")])),
        ("d *alpha", "0".into()),
        ("d *beta", "0".into()),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseFamily {
    pub family: Family,
    pub conditions: Vec<&'static str>,
    pub free: Vec<&'static str>,
    pub patterns: Vec<Pattern>,
    pub rank_a: BTreeSet<usize>,
    pub rank_b: BTreeSet<usize>,
    pub differentials: Vec<(&'static str, String)>,
    /// BA vanishes identically for the generic matrices.
    pub ba_zero: bool,
}

pub fn feasible_patterns() -> Vec<Pattern> {
    (0..64u8).map(Pattern).filter(|p| p.feasible()).collect()
}

pub fn enumerate_invariant_cases() -> Vec<CaseFamily> {
    let mut by: BTreeMap<Family, Vec<Pattern>> = BTreeMap::new();
    for p in feasible_patterns() {
        by.entry(Family::of(p)).or_default().push(p);
    }
    Family::ALL
        .iter()
        .map(|&f| {
            let patterns = by.remove(&f).unwrap_or_default();
            let (a, b) = f.matrices();
            CaseFamily {
                family: f,
                conditions: f.conditions().to_vec(),
                free: f.free().to_vec(),
                rank_a: patterns.iter().map(|p| p.rank_a()).collect(),
                rank_b: patterns.iter().map(|p| p.rank_b()).collect(),
                differentials: differentials(&a, &b),
                ba_zero: b.mul(&a).is_zero(),
                patterns,
            }
        })
        .collect()
}

pub type RatMat2 = [[BigRational; 2]; 2];

fn mul2(b: &RatMat2, a: &RatMat2) -> RatMat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &b[i][0] * &a[0][j] + &b[i][1] * &a[1][j]))
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub family: Option<Family>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub m: Option<BigRational>,
    pub reason: Option<String>,
}

fn ser_opt_rat<S: Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl Classification {
    fn reject(reason: &str) -> Self {
        Classification {
            family: None,
            m: None,
            reason: Some(reason.to_string()),
        }
    }

    pub fn tag(&self) -> String {
        self.family
            .map_or_else(|| "inadmissible".to_string(), |f| f.to_string())
    }
}

/// Sort concrete A, B into a family, or reject them.
pub fn case_classify(a: &RatMat2, b: &RatMat2) -> Classification {
    if !a[1][0].is_zero() {
        return Classification::reject("a21 must vanish");
    }
    if !b[0][0].is_zero() {
        return Classification::reject("b11 must vanish");
    }
    if mul2(b, a).iter().flatten().any(|x| !x.is_zero()) {
        return Classification::reject("BA != 0");
    }
    let (a11, b12) = (&a[0][0], &b[0][1]);
    let m = match (a11.is_zero(), b12.is_zero()) {
        (true, true) => None,
        (false, false) => Some(b12 / a11),
        _ => return Classification::reject("b12 is not a nonzero multiple of a11"),
    };
    let mask = CASE_VARS
        .iter()
        .enumerate()
        .filter(|(_, v)| {
            let x = match **v {
                "a11" => &a[0][0],
                "a12" => &a[0][1],
                "a22" => &a[1][1],
                "b12" => &b[0][1],
                "b21" => &b[1][0],
                _ => &b[1][1],
            };
            !x.is_zero()
        })
        .fold(0u8, |acc, (i, _)| acc | (1 << i));
    Classification {
        family: Some(Family::of(Pattern(mask))),
        m,
        reason: None,
    }
}

/// Parse `"p,q;r,s"` (rows separated by `;`).
pub fn parse_mat2(s: &str) -> Result<RatMat2> {
    let bad = || Error::Parse(format!("expected a 2x2 matrix like '1,0;0,2', got '{s}'"));
    let rows: Vec<Vec<BigRational>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<BigRational>().map_err(|_| bad()))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(bad());
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j].clone())))
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    pub samples: usize,
    pub shards: usize,
    pub per_family: BTreeMap<Family, usize>,
    pub ba_zero: bool,
    pub exactly_one_family: bool,
    pub classifier_agrees: bool,
    pub every_family_hit: bool,
}

impl SampleReport {
    pub fn holds(&self) -> bool {
        self.ba_zero && self.exactly_one_family && self.classifier_agrees && self.every_family_hit
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n: i64 = rng.random_range(-9..=8);
    if n >= 0 {
        n += 1;
    }
    BigRational::new(BigInt::from(n), BigInt::from(rng.random_range(1..=9i64)))
}

/// One constraint-satisfying pair: a feasible pattern by rejection, then values.
pub fn random_case(rng: &mut ChaCha8Rng) -> (RatMat2, RatMat2) {
    let p = loop {
        let p = Pattern(rng.random_range(0..64u8));
        if p.feasible() {
            break p;
        }
    };
    let mut val = |v: &str| {
        if p.nz(v) {
            random_nonzero(rng)
        } else {
            BigRational::zero()
        }
    };
    let (a11, a12, a22, b21) = (val("a11"), val("a12"), val("a22"), val("b21"));
    let b12 = if p.nz("b12") {
        random_nonzero(rng) * &a11
    } else {
        BigRational::zero()
    };
    let b22 = if p.nz("b22") && p.nz("a22") {
        -(&b21 * &a12) / &a22
    } else if p.nz("b22") {
        random_nonzero(rng)
    } else {
        BigRational::zero()
    };
    let z = BigRational::zero;
    ([[a11, a12], [z(), a22]], [[z(), b12], [b21, b22]])
}

pub const DEFAULT_SEED: u64 = 0x5eed_0803;
pub const SHARDS: usize = 16;

/// Draw `n` random admissible pairs over independently seeded shards.
pub fn sample_cases(n: usize, seed: u64, exec: Exec) -> SampleReport {
    struct Tally {
        per: BTreeMap<Family, usize>,
        ba: bool,
        one: bool,
        agree: bool,
    }
    let tallies = exec.map_range(SHARDS, |s| {
        let count = n / SHARDS + usize::from(s < n % SHARDS);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(s as u64);
        let mut t = Tally {
            per: BTreeMap::new(),
            ba: true,
            one: true,
            agree: true,
        };
        for _ in 0..count {
            let (a, b) = random_case(&mut rng);
            t.ba &= mul2(&b, &a).iter().flatten().all(Zero::is_zero);
            let hits: Vec<Family> = Family::ALL.into_iter().filter(|f| f.matches(&a, &b)).collect();
            t.one &= hits.len() == 1;
            let c = case_classify(&a, &b);
            t.agree &= c.family.is_some() && hits.first() == c.family.as_ref();
            if let Some(f) = hits.first() {
                *t.per.entry(*f).or_default() += 1;
            }
        }
        t
    });
    let mut per_family: BTreeMap<Family, usize> = Family::ALL.iter().map(|f| (*f, 0)).collect();
    let (mut ba, mut one, mut agree) = (true, true, true);
    for t in tallies {
        for (f, c) in t.per {
            *per_family.get_mut(&f).unwrap() += c;
        }
        ba &= t.ba;
        one &= t.one;
        agree &= t.agree;
    }
    SampleReport {
        seed,
        samples: n,
        shards: SHARDS,
        every_family_hit: per_family.values().all(|c| *c > 0),
        per_family,
        ba_zero: ba,
        exactly_one_family: one,
        classifier_agrees: agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn m2(x: [[i64; 2]; 2]) -> RatMat2 {
        x.map(|r| r.map(rat))
    }

    #[test]
    fn classify_examples() {
        let c = case_classify(&m2([[1, 0], [0, 0]]), &m2([[0, 1], [0, 5]]));
        assert_eq!(c.family, Some(Family::I));
        assert_eq!(c.m, Some(rat(1)));
        assert_eq!(
            case_classify(&m2([[0, 0], [0, 0]]), &m2([[0, 0], [2, 3]])).family,
            Some(Family::IV)
        );
        assert_eq!(
            case_classify(&m2([[1, 0], [0, 1]]), &m2([[1, 0], [0, 1]])).tag(),
            "inadmissible"
        );
        assert_eq!(
            case_classify(&m2([[0, 2], [0, 1]]), &m2([[0, 0], [1, -2]])).family,
            Some(Family::II)
        );
        assert_eq!(
            case_classify(&m2([[0, 2], [0, 0]]), &m2([[0, 0], [0, 7]])).family,
            Some(Family::III)
        );
        assert!(case_classify(&m2([[1, 0], [0, 0]]), &m2([[0, 0], [0, 1]]))
            .family
            .is_none());
    }

    #[test]
    fn parse_matrix() {
        assert_eq!(
            parse_mat2("1,0;0,1/2").unwrap()[1][1],
            BigRational::new(1.into(), 2.into())
        );
        assert!(parse_mat2("1,0,0;1").is_err());
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let a = sample_cases(500, 7, Exec::Parallel);
        let b = sample_cases(500, 7, Exec::Sequential);
        assert_eq!(a.per_family, b.per_family);
        assert!(a.holds());
    }
}
