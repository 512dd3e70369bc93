//! Subalgebras of so(8) containing the principal so(3), their intersections
//! and complements, and Casimir isotypic analysis.
//!
//! so(8) is coordinatized by the 28 entries `X_ij`, `i < j`. Orthogonality
//! for `−tr(XY)` is orthogonality for the coordinate dot product (the two
//! differ by a factor 2).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exforms;
use crate::field::Q3;
use crate::linalg::{Mat, Subspace};
use crate::model::{so8_index, so8_pairs, BlockSplit, Model, DIM, SO8_DIM};
use crate::repring::VirtualRep;
use crate::Workbench;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    G,
    So3So5,
    Su3,
    Sp2Sp1,
    /// Stabilizer of the anti-selfdual four-form `γ − *γ`.
    Sp2Sp1Asd,
    So8,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 6] = [
        AlgebraKind::G,
        AlgebraKind::So3So5,
        AlgebraKind::Su3,
        AlgebraKind::Sp2Sp1,
        AlgebraKind::Sp2Sp1Asd,
        AlgebraKind::So8,
    ];

    /// The three intermediate algebras, in cyclic order.
    pub const INTERMEDIATE: [AlgebraKind; 3] = [AlgebraKind::So3So5, AlgebraKind::Su3, AlgebraKind::Sp2Sp1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn tag(self) -> &'static str {
        match self {
            AlgebraKind::G => "g",
            AlgebraKind::So3So5 => "so3so5",
            AlgebraKind::Su3 => "su3",
            AlgebraKind::Sp2Sp1 => "sp2sp1",
            AlgebraKind::Sp2Sp1Asd => "sp2sp1-asd",
            AlgebraKind::So8 => "so8",
        }
    }

    pub fn expected_dim(self) -> usize {
        match self {
            AlgebraKind::G => 3,
            AlgebraKind::Su3 => 8,
            AlgebraKind::So3So5 | AlgebraKind::Sp2Sp1 | AlgebraKind::Sp2Sp1Asd => 13,
            AlgebraKind::So8 => SO8_DIM,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "g" => AlgebraKind::G,
            "so3so5" => AlgebraKind::So3So5,
            "su3" | "psu3" => AlgebraKind::Su3,
            "sp2sp1" => AlgebraKind::Sp2Sp1,
            "sp2sp1-asd" | "asd" => AlgebraKind::Sp2Sp1Asd,
            "so8" => AlgebraKind::So8,
            other => return Err(Error::UnknownTag(other.to_string())),
        })
    }
}

/// so(8) coordinates of an antisymmetric 8×8 matrix.
pub fn to_so8(m: &Mat) -> Result<Vec<Q3>> {
    if m.rows() != DIM || m.cols() != DIM || !m.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    Ok(so8_pairs().into_iter().map(|(i, j)| m[(i, j)].clone()).collect())
}

pub fn from_so8(v: &[Q3]) -> Mat {
    let mut m = Mat::zeros(DIM, DIM);
    for (k, (i, j)) in so8_pairs().into_iter().enumerate() {
        m[(i, j)] = v[k].clone();
        m[(j, i)] = -&v[k];
    }
    m
}

fn bracket_coords(a: &[Q3], b: &[Q3]) -> Vec<Q3> {
    to_so8(&from_so8(a).commutator(&from_so8(b))).expect("bracket of antisymmetric matrices")
}

/// `−tr(XY)` on so(8) coordinates.
pub fn trace_form(a: &[Q3], b: &[Q3]) -> Q3 {
    &crate::linalg::dot(a, b) * &Q3::from_int(2)
}

/// A subspace of so(8) with a name and a bracket-closure certificate.
#[derive(Clone, Debug)]
pub struct AlgebraModel {
    pub kind: AlgebraKind,
    pub space: Subspace,
    pub bracket_closed: bool,
    pub contains_g: bool,
}

impl AlgebraModel {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrices(&self) -> Vec<Mat> {
        self.space.basis().iter().map(|v| from_so8(v)).collect()
    }

    pub fn report(&self) -> AlgebraReport {
        AlgebraReport {
            name: self.kind.tag().to_string(),
            dim: self.dim(),
            contains_g: self.contains_g,
            bracket_closed: self.bracket_closed,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraReport {
    pub name: String,
    pub dim: usize,
    pub contains_g: bool,
    pub bracket_closed: bool,
}

/// `{"ambient": 28, "basis": [[["p/q", …], …], …]}`; each basis element is an 8×8 matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<Vec<String>>>,
}

impl SubspaceJson {
    pub fn from_so8(s: &Subspace) -> Self {
        let basis = s
            .basis()
            .iter()
            .map(|v| {
                let m = from_so8(v);
                (0..DIM)
                    .map(|r| m.row(r).iter().map(ToString::to_string).collect())
                    .collect()
            })
            .collect();
        SubspaceJson {
            ambient: s.ambient(),
            basis,
        }
    }

    pub fn to_so8(&self) -> Result<Subspace> {
        if self.ambient != SO8_DIM {
            return Err(Error::Dimension(format!("ambient {} is not so(8)", self.ambient)));
        }
        let vecs = self
            .basis
            .iter()
            .map(|rows| {
                let parsed: Vec<Vec<Q3>> = rows
                    .iter()
                    .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                if parsed.len() != DIM || parsed.iter().any(|r| r.len() != DIM) {
                    return Err(Error::Dimension("basis element is not 8×8".into()));
                }
                to_so8(&Mat::from_rows(parsed))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(SO8_DIM, vecs))
    }
}

/// Every bracket of basis elements lies back in the span.
pub fn is_bracket_closed(s: &Subspace) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains(&bracket_coords(&b[i], &b[j]))))
}

/// The reference frame, with its Gram matrix and V/W split.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceBasis {
    pub version: &'static str,
    pub labels: Vec<&'static str>,
    pub gram_is_identity: bool,
    pub blocks_orthogonal: bool,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

pub fn build_reference_basis(model: &Model) -> ReferenceBasis {
    let g = crate::model::gram();
    let split = &model.split;
    ReferenceBasis {
        version: crate::model::BASIS_VERSION,
        labels: Model::labels().to_vec(),
        gram_is_identity: g == Mat::identity(DIM),
        blocks_orthogonal: split.v.iter().all(|&i| split.w.iter().all(|&j| g[(i, j)].is_zero())),
        v: split.v.clone(),
        w: split.w.clone(),
    }
}

fn block_algebra(split: &BlockSplit) -> Subspace {
    let vecs = so8_pairs()
        .into_iter()
        .filter(|&(i, j)| split.is_v(i) == split.is_v(j))
        .map(|(i, j)| {
            let mut v = vec![Q3::zero(); SO8_DIM];
            v[so8_index(i, j)] = Q3::one();
            v
        })
        .collect();
    Subspace::span(SO8_DIM, vecs)
}

fn span_of(mats: &[Mat]) -> Result<Subspace> {
    Ok(Subspace::span(SO8_DIM, mats.iter().map(to_so8).collect::<Result<_>>()?))
}

pub fn build_algebra(wb: &Workbench, kind: AlgebraKind) -> Result<AlgebraModel> {
    let m = &wb.model;
    let space = match kind {
        AlgebraKind::G => span_of(&m.g_gens)?,
        AlgebraKind::So3So5 => block_algebra(&m.split),
        AlgebraKind::Su3 => span_of(&m.adjoint)?,
        AlgebraKind::Sp2Sp1 | AlgebraKind::Sp2Sp1Asd => {
            let scan = wb.pencil_scan()?;
            let pencil = wb.gamma_pencil(crate::DEFAULT_RESOLUTION)?;
            // Ω = γ + *γ is self-dual, Ω′ = γ − *γ anti-self-dual.
            let want = if kind == AlgebraKind::Sp2Sp1 { 1 } else { -1 };
            let pick = scan.jumps.iter().zip(&scan.jump_stabilizers).find(|(r, _)| {
                let f = pencil.form_at(&r.slope);
                exforms::hodge_star(&f) == f.scale(&Q3::from_int(want))
            });
            match pick {
                Some((_, s)) => s.clone(),
                None => {
                    return Err(Error::Dimension(format!(
                        "no {} ray among the pencil jumps",
                        kind.tag()
                    )))
                }
            }
        }
        AlgebraKind::So8 => Subspace::full(SO8_DIM),
    };
    if space.dim() != kind.expected_dim() {
        return Err(Error::Dimension(format!(
            "{} has dimension {} (expected {})",
            kind.tag(),
            space.dim(),
            kind.expected_dim()
        )));
    }
    let g = if kind == AlgebraKind::G {
        space.clone()
    } else {
        wb.algebra(AlgebraKind::G)?.space.clone()
    };
    Ok(AlgebraModel {
        kind,
        bracket_closed: is_bracket_closed(&space),
        contains_g: space.contains_subspace(&g),
        space,
    })
}

/// Decompose a representation of so(3) into irreducibles from Casimir kernels.
///
/// `gens` must satisfy `[e₁,e₂] = 2e₃` cyclically; the Casimir `Σeᵢ²` then
/// acts on `Sⁿ` by `−n(n+2)`.
pub fn casimir_isotypes(gens: &[Mat], exec: Exec) -> Result<VirtualRep> {
    if gens.len() != 3 {
        return Err(Error::NotSo3);
    }
    let n = gens[0].rows();
    if n == 0 {
        return Ok(VirtualRep::zero());
    }
    let two = Q3::from_int(2);
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        if gens[a].commutator(&gens[b]) != gens[c].scale(&two) {
            return Err(Error::NotSo3);
        }
    }
    let cas = gens.iter().fold(Mat::zeros(n, n), |acc, e| acc.add(&e.mul(e)));
    // Σ mult·(n+1)·n(n+2) = −tr C bounds the largest label.
    let budget = (-cas.trace()).to_f64().round() as i64;
    let max_label = (0..n as i64)
        .take_while(|l| (l + 1) * l * (l + 2) <= budget.max(0))
        .last()
        .unwrap_or(0);
    let kernels = exec.map_range(max_label as usize + 1, |l| {
        let shift = Q3::from_int((l * (l + 2)) as i64);
        cas.add(&Mat::identity(n).scale(&shift)).nullity()
    });
    let mut rep = VirtualRep::zero();
    let mut total = 0;
    for (l, k) in kernels.into_iter().enumerate() {
        if k % (l + 1) != 0 {
            return Err(Error::Casimir(format!(
                "kernel at S{l} has dimension {k}, not divisible by {}",
                l + 1
            )));
        }
        total += k;
        if k > 0 {
            rep = rep.add(&VirtualRep::from_pairs([(l as u32, (k / (l + 1)) as i64)]));
        }
    }
    if total != n {
        return Err(Error::Casimir(format!(
            "{} of {n} dimensions unaccounted for",
            n - total
        )));
    }
    Ok(rep)
}

/// Matrices of `X ↦ [eᵢ, X]` on a g-invariant subspace of so(8).
pub fn restricted_action(wb: &Workbench, u: &Subspace) -> Result<Vec<Mat>> {
    wb.model
        .g_gens
        .iter()
        .map(|e| {
            let ecoords = to_so8(e)?;
            let cols = u
                .basis()
                .iter()
                .map(|b| {
                    u.coords(&bracket_coords(&ecoords, b))
                        .ok_or_else(|| Error::Casimir("subspace is not g-invariant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::from_cols(&cols, u.dim()))
        })
        .collect()
}

pub fn subspace_isotypes(wb: &Workbench, u: &Subspace) -> Result<VirtualRep> {
    casimir_isotypes(&restricted_action(wb, u)?, wb.exec)
}

/// `big ⊖ g`, the trace-form complement of g inside `big`.
pub fn quotient(wb: &Workbench, big: AlgebraKind) -> Result<Subspace> {
    let g = &wb.algebra(AlgebraKind::G)?.space;
    let b = wb.algebra(big)?;
    if !b.contains_g {
        return Err(Error::Dimension(format!("{} does not contain g", big.tag())));
    }
    b.space.relative_complement(g)
}

pub fn quotient_isotypes(wb: &Workbench, big: AlgebraKind) -> Result<VirtualRep> {
    subspace_isotypes(wb, &quotient(wb, big)?)
}

pub fn complement(wb: &Workbench, kind: AlgebraKind) -> Result<Subspace> {
    Ok(wb.algebra(kind)?.space.orth_complement())
}

pub fn complement_isotypes(wb: &Workbench, kind: AlgebraKind) -> Result<VirtualRep> {
    subspace_isotypes(wb, &complement(wb, kind)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCheck {
    pub pair: (AlgebraKind, AlgebraKind),
    pub dim: usize,
    pub equals_g: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub checks: Vec<IntersectionCheck>,
    pub triple_dim: usize,
    pub triple_equals_g: bool,
    pub holds: bool,
}

pub fn verify_intersection_theorem(wb: &Workbench) -> Result<IntersectionReport> {
    let g = &wb.algebra(AlgebraKind::G)?.space;
    let [p, r, q] = AlgebraKind::INTERMEDIATE;
    let mut checks = Vec::new();
    for (a, b) in [(p, r), (r, q), (q, p)] {
        let s = wb.algebra(a)?.space.intersect(&wb.algebra(b)?.space)?;
        checks.push(IntersectionCheck {
            pair: (a, b),
            dim: s.dim(),
            equals_g: &s == g,
        });
    }
    let triple = wb
        .algebra(p)?
        .space
        .intersect(&wb.algebra(r)?.space)?
        .intersect(&wb.algebra(q)?.space)?;
    let triple_equals_g = &triple == g;
    Ok(IntersectionReport {
        holds: checks.iter().all(|c| c.equals_g) && triple_equals_g,
        checks,
        triple_dim: triple.dim(),
        triple_equals_g,
    })
}

/// One cyclic assignment `gᵢ^⊥ = (gⱼ/g) ⊕ (gₖ/g)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComplementCheck {
    pub target: AlgebraKind,
    pub summands: (AlgebraKind, AlgebraKind),
    pub target_dim: usize,
    pub summand_dims: (usize, usize),
    /// With `gⱼ/g ≅ gⱼ ⊖ g` embedded as trace-form complements inside so(8).
    pub literal_equal: bool,
    /// With `gⱼ/g` embedded as the projection of `gⱼ` to `gᵢ^⊥`, i.e. through `so(8)/gᵢ ≅ gᵢ^⊥`.
    pub projected_equal: bool,
    pub projected_direct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementReport {
    pub checks: Vec<ComplementCheck>,
    pub g_perp_dim: usize,
    pub quotient_dims: Vec<(AlgebraKind, usize)>,
    pub g_perp_is_direct_sum: bool,
    pub holds: bool,
}

pub fn verify_complement_theorem(wb: &Workbench) -> Result<ComplementReport> {
    let kinds = AlgebraKind::INTERMEDIATE;
    let quots: Vec<Subspace> = kinds.iter().map(|&k| quotient(wb, k)).collect::<Result<_>>()?;
    let mut checks = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let perp = complement(wb, kinds[i])?;
        let literal_equal = quots[j].sum(&quots[k])? == perp && quots[j].intersect(&quots[k])?.is_zero();
        let pj = perp.project_subspace(&quots[j]);
        let pk = perp.project_subspace(&quots[k]);
        let projected_direct = pj.intersect(&pk)?.is_zero() && pj.dim() == quots[j].dim() && pk.dim() == quots[k].dim();
        let projected_equal = projected_direct && pj.sum(&pk)? == perp;
        checks.push(ComplementCheck {
            target: kinds[i],
            summands: (kinds[j], kinds[k]),
            target_dim: perp.dim(),
            summand_dims: (quots[j].dim(), quots[k].dim()),
            literal_equal,
            projected_equal,
            projected_direct,
        });
    }
    let g_perp = complement(wb, AlgebraKind::G)?;
    let total = quots[0].sum(&quots[1])?.sum(&quots[2])?;
    let dims: usize = quots.iter().map(Subspace::dim).sum();
    let g_perp_is_direct_sum = total == g_perp && dims == g_perp.dim();
    Ok(ComplementReport {
        holds: g_perp_is_direct_sum && checks.iter().all(|c| c.projected_equal),
        checks,
        g_perp_dim: g_perp.dim(),
        quotient_dims: kinds.iter().zip(&quots).map(|(k, q)| (*k, q.dim())).collect(),
        g_perp_is_direct_sum,
    })
}

fn square(m: &Mat) -> Mat {
    m.mul(m)
}

/// Simple ideals of a compact semisimple algebra with at most two factors.
///
/// `M = T⁻¹K`, with `T` the trace form and `K` the Killing form on the algebra,
/// acts on each simple ideal by the scalar ratio of the two forms; its
/// eigenspaces are the ideals.
pub fn simple_ideals(alg: &AlgebraModel) -> Result<Vec<Subspace>> {
    let s = &alg.space;
    let b = s.basis();
    let d = b.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let ads: Vec<Mat> = b
        .iter()
        .map(|x| {
            let cols = b
                .iter()
                .map(|y| {
                    s.coords(&bracket_coords(x, y))
                        .ok_or_else(|| Error::Ideals("not bracket-closed".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::from_cols(&cols, d))
        })
        .collect::<Result<_>>()?;
    let mut killing = Mat::zeros(d, d);
    let mut trace = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            killing[(i, j)] = ads[i].mul(&ads[j]).trace();
            trace[(i, j)] = trace_form(&b[i], &b[j]);
        }
    }
    // M = T⁻¹K column by column.
    let cols = (0..d)
        .map(|c| {
            trace
                .solve(&killing.col(c))
                .ok_or_else(|| Error::Ideals("degenerate trace form".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_cols(&cols, d);
    // Minimal polynomial of degree ≤ 2.
    let id = Mat::identity(d);
    let flat = |x: &Mat| (0..d).flat_map(|r| x.row(r).to_vec()).collect::<Vec<Q3>>();
    let eigen: Vec<Q3> = if Mat::from_cols(&[flat(&id), flat(&m)], d * d).rank() == 1 {
        vec![m[(0, 0)].clone()]
    } else {
        let k = Mat::from_cols(&[flat(&id), flat(&m), flat(&square(&m))], d * d).kernel();
        if k.len() != 1 {
            return Err(Error::Ideals("more than two simple factors".into()));
        }
        let c2 = k[0][2].clone();
        let (c0, c1) = (&k[0][0] / &c2, &k[0][1] / &c2);
        let disc = &(&c1 * &c1) - &(&c0 * &Q3::from_int(4));
        let root = rational_sqrt(&disc).ok_or_else(|| Error::Ideals(format!("irrational eigenvalues ({disc})")))?;
        let half = Q3::from_ratio(1, 2);
        vec![&(&-&c1 + &root) * &half, &(&-&c1 - &root) * &half]
    };
    let mut ideals = Vec::new();
    for lam in eigen {
        let shifted = m.sub(&id.scale(&lam));
        let vecs = shifted
            .kernel()
            .into_iter()
            .map(|c| {
                let mut v = vec![Q3::zero(); SO8_DIM];
                for (ci, bi) in c.iter().zip(b) {
                    crate::linalg::axpy(&mut v, ci, bi);
                }
                v
            })
            .collect();
        let ideal = Subspace::span(SO8_DIM, vecs);
        let is_ideal = ideal
            .basis()
            .iter()
            .all(|y| b.iter().all(|x| ideal.contains(&bracket_coords(x, y))));
        if !is_ideal {
            return Err(Error::Ideals("eigenspace is not an ideal".into()));
        }
        ideals.push(ideal);
    }
    ideals.sort_by_key(|i| std::cmp::Reverse(i.dim()));
    Ok(ideals)
}

/// Square root inside Q when the argument is a rational square.
fn rational_sqrt(x: &Q3) -> Option<Q3> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;
    if !x.is_rational() || x.rat.is_negative() {
        return None;
    }
    let r: &BigRational = &x.rat;
    let (n, d): (&BigInt, &BigInt) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q3::from_rational(BigRational::new(sn, sd)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so8_roundtrip() {
        let v: Vec<Q3> = (0..28).map(|i| Q3::from_int(i as i64 - 7)).collect();
        assert_eq!(to_so8(&from_so8(&v)).unwrap(), v);
        assert!(to_so8(&Mat::identity(8)).is_err());
    }

    #[test]
    fn rejects_non_so3_input() {
        let z = Mat::identity(2);
        assert!(matches!(
            casimir_isotypes(&[z.clone(), z.clone(), z], Exec::Sequential),
            Err(Error::NotSo3)
        ));
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("psu3".parse::<AlgebraKind>().unwrap(), AlgebraKind::Su3);
        assert!("so7".parse::<AlgebraKind>().is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&Q3::from_ratio(9, 4)), Some(Q3::from_ratio(3, 2)));
        assert_eq!(rational_sqrt(&Q3::from_int(2)), None);
    }
}
