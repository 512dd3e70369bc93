//! Exterior algebra of (R⁸)* in the reference frame, with the induced
//! so(8)-action, Hodge star, invariant forms and form stabilizers.
//!
//! Λᵏ is indexed by k-subsets of `{0,…,7}` in lexicographic order. The
//! orientation is `e₁∧…∧e₈` in the reference basis.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Q3;
use crate::linalg::{dot, Mat, Subspace};
use crate::model::{so8_pairs, so8_unit, DIM, SO8_DIM};

/// k-subsets of the 8 reference indices, as bitmasks in lexicographic order.
struct Degree {
    masks: Vec<u16>,
    index: Vec<usize>,
}

fn degrees() -> &'static [Degree; DIM + 1] {
    static D: OnceLock<[Degree; DIM + 1]> = OnceLock::new();
    D.get_or_init(|| {
        std::array::from_fn(|k| {
            let mut masks = Vec::new();
            fn rec(start: usize, left: usize, acc: u16, out: &mut Vec<u16>) {
                if left == 0 {
                    out.push(acc);
                    return;
                }
                for i in start..DIM {
                    rec(i + 1, left - 1, acc | (1 << i), out);
                }
            }
            rec(0, k, 0, &mut masks);
            let mut index = vec![usize::MAX; 1 << DIM];
            for (n, &m) in masks.iter().enumerate() {
                index[m as usize] = n;
            }
            Degree { masks, index }
        })
    })
}

pub fn binomial(k: usize) -> usize {
    degrees()[k].masks.len()
}

/// Sorted reference indices of the `n`-th basis k-form.
pub fn multi_index(k: usize, n: usize) -> Vec<usize> {
    let m = degrees()[k].masks[n];
    (0..DIM).filter(|i| m & (1 << i) != 0).collect()
}

fn mask_index(k: usize, mask: u16) -> usize {
    degrees()[k].index[mask as usize]
}

/// `(−1)^{#{(i,j) : i ∈ a, j ∈ b, i > j}}`
fn merge_sign(a: u16, b: u16) -> i32 {
    let mut inv = 0;
    for i in 0..DIM {
        if a & (1 << i) != 0 {
            inv += (b & ((1u16 << i) - 1)).count_ones();
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_degree(k: usize) -> Result<()> {
    if k > DIM {
        Err(Error::Degree(k))
    } else {
        Ok(())
    }
}

/// Exterior k-form with coefficients over the lexicographic basis of Λᵏ.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    coeffs: Vec<Q3>,
}

impl KForm {
    pub fn zero(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(KForm {
            degree,
            coeffs: vec![Q3::zero(); binomial(degree)],
        })
    }

    pub fn new(degree: usize, coeffs: Vec<Q3>) -> Result<Self> {
        check_degree(degree)?;
        if coeffs.len() != binomial(degree) {
            return Err(Error::Dimension(format!(
                "{} coefficients for a {degree}-form (expected {})",
                coeffs.len(),
                binomial(degree)
            )));
        }
        Ok(KForm { degree, coeffs })
    }

    /// `e_{i₁}∧…∧e_{iₖ}` from 0-based indices in any order.
    pub fn basis(indices: &[usize]) -> Result<Self> {
        let k = indices.len();
        let mut f = KForm::zero(k)?;
        let mut mask = 0u16;
        let mut sign = 1;
        for &i in indices {
            if i >= DIM || mask & (1 << i) != 0 {
                return Err(Error::Parse(format!("bad multi-index {indices:?}")));
            }
            sign *= merge_sign(mask, 1 << i);
            mask |= 1 << i;
        }
        f.coeffs[mask_index(k, mask)] = Q3::from_int(sign as i64);
        Ok(f)
    }

    pub fn volume() -> Self {
        KForm::basis(&(0..DIM).collect::<Vec<_>>()).expect("volume form")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Q3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q3) -> KForm {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, o: &KForm) -> Result<KForm> {
        if self.degree != o.degree {
            return Err(Error::Dimension("adding forms of different degree".into()));
        }
        Ok(KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Induced inner product; the basis k-forms are orthonormal.
    pub fn inner(&self, o: &KForm) -> Q3 {
        if self.degree != o.degree {
            return Q3::zero();
        }
        dot(&self.coeffs, &o.coeffs)
    }

    pub fn norm_sq(&self) -> Q3 {
        self.inner(self)
    }

    pub fn wedge(&self, o: &KForm) -> Result<KForm> {
        let k = self.degree + o.degree;
        let mut out = KForm::zero(k)?;
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                if a & b != 0 {
                    continue;
                }
                let s = Q3::from_int(merge_sign(a, b) as i64);
                out.coeffs[mask_index(k, a | b)] += &(&(x * y) * &s);
            }
        }
        Ok(out)
    }

    fn terms(&self) -> impl Iterator<Item = (u16, &Q3)> + '_ {
        let masks = &degrees()[self.degree].masks;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (masks[n], c))
    }

    /// Scale so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> KForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Nonzero coefficients keyed by 1-based concatenated indices, e.g. `"125"`.
    pub fn labelled_terms(&self) -> Vec<(String, Q3)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| {
                let key: String = multi_index(self.degree, n)
                    .iter()
                    .map(|i| (b'1' + *i as u8) as char)
                    .collect();
                (key, c.clone())
            })
            .collect()
    }

    /// Portion of the form whose multi-indices contain exactly `v_count` entries of `v`.
    pub fn bidegree_part(&self, v: &[usize], v_count: usize) -> KForm {
        let vmask: u16 = v.iter().map(|i| 1u16 << i).sum();
        let masks = &degrees()[self.degree].masks;
        let coeffs = self
            .coeffs
            .iter()
            .zip(masks)
            .map(|(c, m)| {
                if (m & vmask).count_ones() as usize == v_count {
                    c.clone()
                } else {
                    Q3::zero()
                }
            })
            .collect();
        KForm {
            degree: self.degree,
            coeffs,
        }
    }
}

impl fmt::Display for KForm {
    /// Pretty e-notation, e.g. `e1^e2^e5 - 1/2*sqrt3 e3^e4^e8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.labelled_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = key.chars().map(|d| format!("e{d}")).collect();
            let mono = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.join("^")
            };
            let neg = c.signum() < 0;
            let a = if neg { -c } else { c.clone() };
            let sep = match (n, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            if a == Q3::one() {
                write!(f, "{sep}{mono}")?;
            } else if a.rat.is_zero() || a.irr.is_zero() {
                write!(f, "{sep}{a} {mono}")?;
            } else {
                write!(f, "{sep}({a}) {mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm[{}]({self})", self.degree)
    }
}

/// `{"degree": k, "coeffs": {"125": "p/q", …}}`
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct KFormJson {
    pub degree: usize,
    pub coeffs: serde_json::Map<String, serde_json::Value>,
}

impl From<&KForm> for KFormJson {
    fn from(f: &KForm) -> Self {
        KFormJson {
            degree: f.degree,
            coeffs: f
                .labelled_terms()
                .into_iter()
                .map(|(k, c)| (k, serde_json::Value::String(c.to_string())))
                .collect(),
        }
    }
}

impl TryFrom<KFormJson> for KForm {
    type Error = Error;
    fn try_from(j: KFormJson) -> Result<KForm> {
        let mut f = KForm::zero(j.degree)?;
        for (key, v) in j.coeffs {
            let idx: Vec<usize> = key
                .chars()
                .map(|c| c.to_digit(10).filter(|d| (1..=8).contains(d)).map(|d| d as usize - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("bad multi-index key '{key}'")))?;
            if idx.len() != j.degree {
                return Err(Error::Parse(format!("key '{key}' has wrong length")));
            }
            let c: Q3 = v
                .as_str()
                .ok_or_else(|| Error::Parse("coefficients must be strings".into()))?
                .parse()?;
            f = f.add(&KForm::basis(&idx)?.scale(&c))?;
        }
        Ok(f)
    }
}

impl Serialize for KForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KFormJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for KForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        KFormJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// Parse `e1^e2^e5`, optionally with a leading coefficient `3/2 e1^e2`, or a
/// sum of such terms joined by `+` or `-`, as printed by `Display`. A
/// coefficient with both a rational and a `sqrt3` part must be parenthesized.
/// `1` is the unit 0-form.
pub fn parse_kform(s: &str) -> Result<KForm> {
    let bad = || Error::Parse(format!("invalid form '{s}'"));
    let mut spaced = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                spaced.push_str(" + ");
                continue;
            }
            _ => {}
        }
        spaced.push(ch);
    }
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut acc: Option<KForm> = None;
    let mut i = 0;
    while i < tokens.len() {
        let mut sign = Q3::one();
        let mut signs = 0;
        while i < tokens.len() && matches!(tokens[i], "+" | "-") {
            if tokens[i] == "-" {
                sign = -sign;
            }
            i += 1;
            signs += 1;
        }
        if i == tokens.len() || (acc.is_some() && signs == 0) {
            return Err(bad());
        }
        let is_mono = |t: &str| t == "1" || t.starts_with('e') || t.starts_with("-e");
        let (coef, mono) = if is_mono(tokens[i]) && tokens.get(i + 1).is_none_or(|t| matches!(*t, "+" | "-")) {
            (Q3::one(), tokens[i])
        } else {
            let c = tokens[i].trim_start_matches('(').trim_end_matches(')');
            let c = if c == "-" { "-1" } else { c };
            i += 1;
            (c.parse::<Q3>()?, *tokens.get(i).ok_or_else(bad)?)
        };
        i += 1;
        let (mono, coef) = match mono.strip_prefix('-') {
            Some(m) => (m, -coef),
            None => (mono, coef),
        };
        let idx: Vec<usize> = if mono == "1" {
            Vec::new()
        } else {
            mono.split('^')
                .map(|p| {
                    p.strip_prefix('e')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|d| (1..=8).contains(d))
                        .map(|d| d - 1)
                })
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        };
        let f = KForm::basis(&idx)?.scale(&(&sign * &coef));
        acc = Some(match acc {
            None => f,
            Some(a) => a.add(&f)?,
        });
    }
    acc.ok_or_else(bad)
}

/// Apply the derivation induced by `x ∈ gl(8)` to a form.
///
/// The dual action on Λ¹ is `−xᵀ`; on k-forms it extends as a derivation.
pub fn apply_action(x: &Mat, f: &KForm) -> KForm {
    let k = f.degree;
    let mut out = vec![Q3::zero(); f.coeffs.len()];
    for (mask, c) in f.terms() {
        for i in (0..DIM).filter(|i| mask & (1 << i) != 0) {
            let rest = mask & !(1 << i);
            for j in 0..DIM {
                let xij = &x[(i, j)];
                if xij.is_zero() || rest & (1 << j) != 0 {
                    continue;
                }
                // e_i -> Σ_j (−x_ij) e_j at the same slot; sign from reinserting j
                let s = merge_sign(1 << i, rest) * merge_sign(1 << j, rest);
                let s = Q3::from_int(-(s as i64));
                out[mask_index(k, rest | (1 << j))] += &(&(c * xij) * &s);
            }
        }
    }
    KForm { degree: k, coeffs: out }
}

/// Matrix of the induced action of `x` on Λᵏ.
pub fn lie_action(x: &Mat, k: usize) -> Result<Mat> {
    check_degree(k)?;
    let n = binomial(k);
    let cols: Vec<Vec<Q3>> = (0..n)
        .map(|c| {
            let mut e = KForm::zero(k).unwrap();
            e.coeffs[c] = Q3::one();
            apply_action(x, &e).coeffs
        })
        .collect();
    Ok(Mat::from_cols(&cols, n))
}

/// Hodge star for the reference metric and orientation.
pub fn hodge_star(f: &KForm) -> KForm {
    let k = f.degree;
    let full: u16 = (1 << DIM) - 1;
    let mut out = KForm::zero(DIM - k).unwrap();
    for (mask, c) in f.terms() {
        let comp = full & !mask;
        let s = Q3::from_int(merge_sign(mask, comp) as i64);
        out.coeffs[mask_index(DIM - k, comp)] = c * &s;
    }
    out
}

/// `{X ∈ so(8) : X·f = 0}` in so(8) coordinates.
pub fn stabilizer(f: &KForm) -> Subspace {
    let cols: Vec<Vec<Q3>> = so8_pairs()
        .iter()
        .map(|&(i, j)| apply_action(&so8_unit(i, j), f).coeffs)
        .collect();
    let m = Mat::from_cols(&cols, f.coeffs.len());
    Subspace::span(SO8_DIM, m.kernel())
}

/// Common kernel of the actions of `gens` on Λᵏ.
pub fn invariant_subspace(gens: &[Mat], k: usize) -> Result<Subspace> {
    let blocks: Vec<Mat> = gens.iter().map(|g| lie_action(g, k)).collect::<Result<_>>()?;
    let stacked = Mat::vstack(&blocks);
    Ok(Subspace::span(binomial(k), stacked.kernel()))
}

/// The six invariant forms, normalized with first nonzero coefficient 1.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantForms {
    pub alpha: KForm,
    pub beta: KForm,
    pub gamma: KForm,
    pub star_gamma: KForm,
    pub star_alpha: KForm,
    pub star_beta: KForm,
    /// Exact squared norms, in the order α, β, γ.
    pub norm_sq: [Q3; 3],
}

impl InvariantForms {
    pub fn named(&self) -> [(&'static str, &KForm); 6] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("*gamma", &self.star_gamma),
            ("*alpha", &self.star_alpha),
            ("*beta", &self.star_beta),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&KForm> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f)
    }
}

/// The unique line in `space` whose coefficients vanish wherever `kill` holds.
fn line_by_support(space: &Subspace, k: usize, kill: impl Fn(u16) -> bool, what: &str) -> Result<KForm> {
    let masks = &degrees()[k].masks;
    let rows: Vec<Vec<Q3>> = (0..masks.len())
        .filter(|&n| kill(masks[n]))
        .map(|n| space.basis().iter().map(|b| b[n].clone()).collect())
        .collect();
    let combos = if rows.is_empty() {
        Mat::identity(space.dim()).row_vecs()
    } else {
        Mat::from_rows(rows).kernel()
    };
    if combos.len() != 1 {
        return Err(Error::Support(format!("{what}: {} candidates", combos.len())));
    }
    let mut v = vec![Q3::zero(); binomial(k)];
    for (c, b) in combos[0].iter().zip(space.basis()) {
        crate::linalg::axpy(&mut v, c, b);
    }
    Ok(KForm::new(k, v)?.normalized())
}

/// Locate α, β, γ by their V/W support, then take Hodge duals.
pub fn locate_invariant_forms(inv3: &Subspace, inv4: &Subspace, v: &[usize]) -> Result<InvariantForms> {
    let vmask: u16 = v.iter().map(|i| 1u16 << i).sum();
    let vdeg = |m: u16| (m & vmask).count_ones();
    let alpha = line_by_support(inv3, 3, |m| vdeg(m) != 3, "alpha")?;
    let beta = line_by_support(inv3, 3, |m| vdeg(m) == 3, "beta")?;
    let gamma = line_by_support(inv4, 4, |m| vdeg(m) == 1, "gamma")?;
    let star_gamma = hodge_star(&gamma);
    if !inv4.contains(&star_gamma.coeffs) || star_gamma.bidegree_part(v, 2) != KForm::zero(4)? {
        return Err(Error::Support("*gamma is not the complementary invariant".into()));
    }
    Ok(InvariantForms {
        norm_sq: [alpha.norm_sq(), beta.norm_sq(), gamma.norm_sq()],
        star_alpha: hodge_star(&alpha),
        star_beta: hodge_star(&beta),
        alpha,
        beta,
        gamma,
        star_gamma,
    })
}

/// Ray parameter of the pencil `first + slope·second`; `None` is the ray of `second`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Slope(#[serde(serialize_with = "ser_slope")] pub Option<BigRational>);

fn ser_slope<S: serde::Serializer>(s: &Option<BigRational>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match s {
        Some(r) => ser.serialize_str(&r.to_string()),
        None => ser.serialize_str("inf"),
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "inf"),
        }
    }
}

/// Two independent forms of equal degree and a scan resolution.
#[derive(Clone, Debug)]
pub struct FormPencil {
    pub first: KForm,
    pub second: KForm,
    pub resolution: u32,
}

impl FormPencil {
    pub fn new(first: KForm, second: KForm, resolution: u32) -> Result<Self> {
        if first.degree != second.degree {
            return Err(Error::Dimension("pencil forms differ in degree".into()));
        }
        let m = Mat::from_rows(vec![first.coeffs.clone(), second.coeffs.clone()]);
        if m.rank() != 2 {
            return Err(Error::Dimension("pencil forms are linearly dependent".into()));
        }
        Ok(FormPencil {
            first,
            second,
            resolution: resolution.max(1),
        })
    }

    /// Slopes `p/q` with `1 ≤ q ≤ n`, `|p| ≤ n`, in lowest terms, plus ±1 and ∞.
    pub fn slope_grid(&self) -> Vec<Slope> {
        let n = self.resolution as i64;
        let mut out: Vec<Slope> = Vec::new();
        for q in 1..=n {
            for p in -n..=n {
                if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                    out.push(Slope(Some(BigRational::new(p.into(), q.into()))));
                }
            }
        }
        for s in [1i64, -1] {
            let r = Slope(Some(BigRational::from_integer(BigInt::from(s))));
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out.push(Slope(None));
        out.sort();
        out.dedup();
        out
    }

    pub fn form_at(&self, s: &Slope) -> KForm {
        match &s.0 {
            Some(t) => self
                .first
                .add(&self.second.scale(&Q3::from_rational(t.clone())))
                .unwrap(),
            None => self.second.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RayResult {
    pub slope: Slope,
    pub stabilizer_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilScan {
    pub rays: Vec<RayResult>,
    pub generic_dim: usize,
    pub jumps: Vec<RayResult>,
    #[serde(skip)]
    pub jump_stabilizers: Vec<Subspace>,
}

pub fn pencil_scan(p: &FormPencil, exec: Exec) -> Result<PencilScan> {
    let grid = p.slope_grid();
    let stabs: Vec<Subspace> = exec.map(&grid, |s| stabilizer(&p.form_at(s)));
    let generic_dim = stabs.iter().map(Subspace::dim).min().unwrap_or(0);
    let rays: Vec<RayResult> = grid
        .iter()
        .zip(&stabs)
        .map(|(s, st)| RayResult {
            slope: s.clone(),
            stabilizer_dim: st.dim(),
        })
        .collect();
    let (jumps, jump_stabilizers): (Vec<_>, Vec<_>) = rays
        .iter()
        .zip(stabs)
        .filter(|(r, _)| r.stabilizer_dim > generic_dim)
        .map(|(r, s)| (r.clone(), s))
        .unzip();
    if jumps.is_empty() {
        return Err(Error::NoJump);
    }
    Ok(PencilScan {
        rays,
        generic_dim,
        jumps,
        jump_stabilizers,
    })
}

/// Sign of `*²` on Λᵏ in dimension 8.
pub fn star_square_sign(k: usize) -> i64 {
    if (k * (DIM - k)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Model;

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (0..=8).map(binomial).collect();
        assert_eq!(sizes, vec![1, 8, 28, 56, 70, 56, 28, 8, 1]);
        assert_eq!(multi_index(3, 0), vec![0, 1, 2]);
    }

    #[test]
    fn degree_zero_action_is_zero() {
        let x = so8_unit(0, 5);
        assert!(lie_action(&x, 0).unwrap().is_zero());
        assert!(lie_action(&x, 9).is_err());
    }

    #[test]
    fn degree_one_action_is_minus_transpose() {
        let m = Model::reference();
        for g in &m.g_gens {
            let a = lie_action(g, 1).unwrap();
            assert_eq!(a, g.transpose().scale(&Q3::from_int(-1)));
        }
    }

    #[test]
    fn action_is_traceless() {
        let m = Model::reference();
        for k in 0..=8 {
            for x in m.g_gens.iter().chain([&so8_unit(1, 6)]) {
                assert!(lie_action(x, k).unwrap().trace().is_zero());
            }
        }
    }

    #[test]
    fn hodge_star_on_basis_forms() {
        let f = KForm::basis(&[0, 1, 2]).unwrap();
        assert_eq!(hodge_star(&f), KForm::basis(&[3, 4, 5, 6, 7]).unwrap());
        assert_eq!(hodge_star(&KForm::volume()), KForm::basis(&[]).unwrap());
    }

    #[test]
    fn star_squared_sign_rule() {
        for k in 0..=8 {
            for n in 0..binomial(k) {
                let mut e = KForm::zero(k).unwrap();
                e.coeffs[n] = Q3::one();
                let ss = hodge_star(&hodge_star(&e));
                assert_eq!(ss, e.scale(&Q3::from_int(star_square_sign(k))), "k={k}");
            }
        }
        assert_eq!(star_square_sign(4), 1);
        assert_eq!(star_square_sign(3), -1);
    }

    #[test]
    fn star_defines_inner_product() {
        let a = parse_kform("e1^e2^e4 + 2 e3^e5^e8").unwrap();
        let b = parse_kform("e1^e2^e4 + -1 e3^e5^e8 + e6^e7^e8").unwrap();
        let lhs = a.wedge(&hodge_star(&b)).unwrap();
        assert_eq!(lhs, KForm::volume().scale(&a.inner(&b)));
    }

    #[test]
    fn derivation_rule() {
        let m = Model::reference();
        let a = parse_kform("e1^e4 + 3 e2^e7").unwrap();
        let b = parse_kform("e3^e5^e8 + -2 e1^e6^e8").unwrap();
        for x in m.g_gens.iter().chain([&so8_unit(2, 4)]) {
            let lhs = apply_action(x, &a.wedge(&b).unwrap());
            let rhs = apply_action(x, &a)
                .wedge(&b)
                .unwrap()
                .add(&a.wedge(&apply_action(x, &b)).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn parse_and_json() {
        let f = parse_kform("e1^e2^e5").unwrap();
        assert_eq!(f.to_string(), "e1^e2^e5");
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"degree":3,"coeffs":{"125":"1"}}"#);
        let back: KForm = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        assert_eq!(parse_kform("e2^e1").unwrap(), f_neg12());
        assert!(parse_kform("e9").is_err());
        assert!(parse_kform("e1^e1").is_err());
    }

    fn f_neg12() -> KForm {
        KForm::basis(&[0, 1]).unwrap().scale(&Q3::from_int(-1))
    }

    #[test]
    fn volume_stabilizer_is_everything() {
        assert_eq!(stabilizer(&KForm::volume()).dim(), 28);
    }
}
