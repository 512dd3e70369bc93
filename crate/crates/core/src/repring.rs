//! Virtual representations of Sp(1)/SO(3) and their characters.
//!
//! `Sⁿ` is the `(n+1)`-dimensional irreducible with weights `n, n−2, …, −n`.
//! Plethysms are computed from Adams operations `ψᵐχ(q) = χ(qᵐ)` and
//! Newton's identities over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Formal integer combination of irreducibles `Sⁿ`; zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VirtualRep {
    mults: BTreeMap<u32, i64>,
}

/// Laurent polynomial in the weight variable `q` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Character {
    coeffs: BTreeMap<i64, i64>,
}

/// Real or quaternionic type of an irreducible summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealType {
    Real,
    Quaternionic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealSummand {
    pub label: u32,
    pub mult: i64,
    pub kind: RealType,
    /// Real dimension of one copy.
    pub real_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealDimension {
    pub total: i64,
    pub summands: Vec<RealSummand>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        VirtualRep::default()
    }

    /// `Sⁿ`; negative labels are rejected.
    pub fn irreducible(n: i64) -> Result<Self> {
        let n = u32::try_from(n).map_err(|_| Error::Parse(format!("negative label {n}")))?;
        Ok(VirtualRep::irr(n))
    }

    pub fn irr(n: u32) -> Self {
        VirtualRep::from_pairs([(n, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut r = VirtualRep::zero();
        for (n, m) in pairs {
            r.add_term(n, m);
        }
        r
    }

    fn add_term(&mut self, n: u32, m: i64) {
        let e = self.mults.entry(n).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&n);
        }
    }

    pub fn mult(&self, n: u32) -> i64 {
        self.mults.get(&n).copied().unwrap_or(0)
    }

    /// `(label, multiplicity)` pairs by descending label.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.mults.iter().rev().map(|(&n, &m)| (n, m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn is_genuine(&self) -> bool {
        self.mults.values().all(|&m| m > 0)
    }

    /// Complex dimension `Σ mult(n)·(n+1)`.
    pub fn dim(&self) -> i64 {
        self.mults.iter().map(|(&n, &m)| m * (n as i64 + 1)).sum()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.mults.keys().next_back().copied()
    }

    /// Multiplicities for labels `top, top−step, …, bottom`.
    pub fn mult_vector(&self, labels: &[u32]) -> Vec<i64> {
        labels.iter().map(|&n| self.mult(n)).collect()
    }

    pub fn add(&self, o: &VirtualRep) -> VirtualRep {
        let mut r = self.clone();
        for (&n, &m) in &o.mults {
            r.add_term(n, m);
        }
        r
    }

    pub fn sub(&self, o: &VirtualRep) -> VirtualRep {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> VirtualRep {
        VirtualRep::from_pairs(self.mults.iter().map(|(&n, &m)| (n, m * k)))
    }

    /// Clebsch-Gordan, extended bilinearly.
    pub fn tensor(&self, o: &VirtualRep) -> VirtualRep {
        let mut r = VirtualRep::zero();
        for (&n, &a) in &self.mults {
            for (&m, &b) in &o.mults {
                let (hi, lo) = (n.max(m), n.min(m));
                let mut k = hi - lo;
                while k <= hi + lo {
                    r.add_term(k, a * b);
                    k += 2;
                }
            }
        }
        r
    }

    pub fn to_character(&self) -> Character {
        let mut c = BTreeMap::new();
        for (&n, &m) in &self.mults {
            let n = n as i64;
            for k in 0..=n {
                *c.entry(n - 2 * k).or_insert(0) += m;
            }
        }
        Character::from_map(c)
    }

    fn require_genuine(&self) -> Result<()> {
        match self.mults.iter().find(|(_, &m)| m < 0) {
            Some((&label, &mult)) => Err(Error::NegativeMultiplicity { label, mult }),
            None => Ok(()),
        }
    }

    /// `Λᵏ(self)` via `k·eₖ = Σᵢ (−1)^{i−1} ψⁱ·e_{k−i}`.
    pub fn exterior_power(&self, k: usize) -> Result<VirtualRep> {
        self.require_genuine()?;
        let e = newton(&RatLaurent::from_character(&self.to_character()), k, true);
        e.into_character()?.decompose()
    }

    /// `Sᵏ(self)` via `k·hₖ = Σᵢ ψⁱ·h_{k−i}`.
    pub fn symmetric_power(&self, k: usize) -> Result<VirtualRep> {
        self.require_genuine()?;
        let h = newton(&RatLaurent::from_character(&self.to_character()), k, false);
        h.into_character()?.decompose()
    }

    pub fn real_dimension(&self) -> RealDimension {
        let summands: Vec<RealSummand> = self
            .terms()
            .map(|(label, mult)| {
                let (kind, real_dim) = if label % 2 == 0 {
                    (RealType::Real, label as i64 + 1)
                } else {
                    (RealType::Quaternionic, 2 * (label as i64 + 1))
                };
                RealSummand {
                    label,
                    mult,
                    kind,
                    real_dim,
                }
            })
            .collect();
        let total = summands.iter().map(|s| s.mult * s.real_dim).sum();
        RealDimension { total, summands }
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, m)) in self.terms().enumerate() {
            let sign = if m < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match m.abs() {
                1 => write!(f, "S{n}")?,
                a => write!(f, "{a}S{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VirtualRep({self})")
    }
}

impl FromStr for VirtualRep {
    type Err = Error;

    /// Accepts sums such as `S2+S4`, `2S6 + S4 + 3S2`, `2*S6-S0` or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(VirtualRep::zero());
        }
        let bad = || Error::Parse(format!("invalid representation '{s}'"));
        let mut r = VirtualRep::zero();
        let mut rest = t.as_str();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, label) = term.split_once('S').ok_or_else(bad)?;
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse().map_err(|_| bad())?
            };
            let n: u32 = label.parse().map_err(|_| bad())?;
            r.add_term(n, sign * c);
        }
        Ok(r)
    }
}

impl Serialize for VirtualRep {
    /// `{"S6":2,"S4":1,"S2":3}` with keys by descending label.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.mults.len()))?;
        for (n, m) in self.terms() {
            map.serialize_entry(&format!("S{n}"), &m)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VirtualRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = VirtualRep;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from \"S<n>\" to integer multiplicity")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<VirtualRep, A::Error> {
                let mut r = VirtualRep::zero();
                while let Some((k, m)) = a.next_entry::<String, i64>()? {
                    let n: u32 = k
                        .strip_prefix('S')
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| serde::de::Error::custom(format!("bad key '{k}'")))?;
                    r.add_term(n, m);
                }
                Ok(r)
            }
        }
        d.deserialize_map(V)
    }
}

impl Character {
    pub fn from_map(c: BTreeMap<i64, i64>) -> Self {
        Character {
            coeffs: c.into_iter().filter(|&(_, v)| v != 0).collect(),
        }
    }

    /// Character of a weight multiset.
    pub fn from_weights(ws: impl IntoIterator<Item = i64>) -> Self {
        let mut c = BTreeMap::new();
        for w in ws {
            *c.entry(w).or_insert(0) += 1;
        }
        Character::from_map(c)
    }

    pub fn coeff(&self, w: i64) -> i64 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    /// Value at `q = 1`, the complex dimension.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn mul(&self, o: &Character) -> Character {
        let mut c = BTreeMap::new();
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &o.coeffs {
                *c.entry(a + b).or_insert(0) += x * y;
            }
        }
        Character::from_map(c)
    }

    /// Peel highest weights greedily.
    pub fn decompose(&self) -> Result<VirtualRep> {
        for (&w, &c) in &self.coeffs {
            if self.coeff(-w) != c {
                return Err(Error::AsymmetricCharacter(w));
            }
        }
        let mut rest = self.coeffs.clone();
        let mut out = VirtualRep::zero();
        while let Some((&top, &c)) = rest.iter().next_back() {
            if top < 0 {
                return Err(Error::InvalidCharacter(top));
            }
            out.add_term(top as u32, c);
            for k in 0..=top {
                let e = rest.entry(top - 2 * k).or_insert(0);
                *e -= c;
                if *e == 0 {
                    rest.remove(&(top - 2 * k));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&w, &c) in self.coeffs.iter().rev() {
            let sign = if c < 0 { "-" } else { "+" };
            if !first {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (w, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "q^{w}")?,
                _ => write!(f, "{a}q^{w}")?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomial with rational coefficients; scratch space for Newton's identities.
#[derive(Clone, Debug, Default)]
struct RatLaurent(BTreeMap<i64, BigRational>);

impl RatLaurent {
    fn one() -> Self {
        RatLaurent(BTreeMap::from([(0, BigRational::one())]))
    }

    fn from_character(c: &Character) -> Self {
        RatLaurent(
            c.coeffs
                .iter()
                .map(|(&w, &x)| (w, BigRational::from_integer(BigInt::from(x))))
                .collect(),
        )
    }

    fn adams(&self, m: i64) -> Self {
        RatLaurent(self.0.iter().map(|(&w, x)| (w * m, x.clone())).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut c: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                *c.entry(a + b).or_insert_with(BigRational::zero) += x * y;
            }
        }
        c.retain(|_, v| !v.is_zero());
        RatLaurent(c)
    }

    fn axpy(&mut self, a: &BigRational, o: &Self) {
        for (w, x) in &o.0 {
            *self.0.entry(*w).or_insert_with(BigRational::zero) += a * x;
        }
        self.0.retain(|_, v| !v.is_zero());
    }

    fn into_character(self) -> Result<Character> {
        let mut c = BTreeMap::new();
        for (w, x) in self.0 {
            if !x.is_integer() {
                return Err(Error::NonIntegral(format!("weight {w}: {x}")));
            }
            let v = x
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::NonIntegral(format!("weight {w}: coefficient overflows i64")))?;
            c.insert(w, v);
        }
        Ok(Character::from_map(c))
    }
}

/// Elementary (`alternating`) or complete homogeneous symmetric function of degree `k`.
fn newton(chi: &RatLaurent, k: usize, alternating: bool) -> RatLaurent {
    let powers: Vec<RatLaurent> = (1..=k as i64).map(|m| chi.adams(m)).collect();
    let mut e = vec![RatLaurent::one()];
    for j in 1..=k {
        let mut acc = RatLaurent::default();
        for i in 1..=j {
            let term = powers[i - 1].mul(&e[j - i]);
            let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
            acc.axpy(&BigRational::from_integer(sign.into()), &term);
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(j));
        let mut scaled = RatLaurent::default();
        scaled.axpy(&inv, &acc);
        e.push(scaled);
    }
    e.pop().unwrap_or_default()
}

/// Named modules used throughout: `H = S¹`, `V = S²`, `E = S³`, `W = S⁴`, `T = S² ⊕ S⁴`.
pub mod named {
    use super::VirtualRep;

    pub fn h() -> VirtualRep {
        VirtualRep::irr(1)
    }
    pub fn v() -> VirtualRep {
        VirtualRep::irr(2)
    }
    pub fn e() -> VirtualRep {
        VirtualRep::irr(3)
    }
    pub fn w() -> VirtualRep {
        VirtualRep::irr(4)
    }
    /// Complexified tangent space `S² ⊕ S⁴`.
    pub fn tangent() -> VirtualRep {
        v().add(&w())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> VirtualRep {
        s.parse().unwrap()
    }

    #[test]
    fn irreducibles() {
        assert_eq!(VirtualRep::irreducible(2).unwrap().dim(), 3);
        assert_eq!(VirtualRep::irreducible(0).unwrap().dim(), 1);
        assert_eq!(VirtualRep::irreducible(4).unwrap().dim(), 5);
        assert!(VirtualRep::irreducible(-1).is_err());
    }

    #[test]
    fn character_round_trip_and_peeling() {
        let h = VirtualRep::irr(1);
        assert_eq!(h.to_character().to_string(), "q^1 + q^-1");
        assert_eq!(h.to_character().decompose().unwrap(), h);
        let c = Character::from_map(BTreeMap::from([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(c.decompose().unwrap(), r("S2+S0"));
        assert_eq!(named::tangent().to_character().eval_at_one(), 8);
    }

    #[test]
    fn decompose_rejects_bad_characters() {
        let asym = Character::from_map(BTreeMap::from([(2, 1), (0, 1)]));
        assert!(matches!(asym.decompose(), Err(Error::AsymmetricCharacter(_))));
        // q^2 + q^-2 is symmetric but not a character: leaves -1 at weight 0
        let c = Character::from_map(BTreeMap::from([(2, 1), (-2, 1)]));
        let d = c.decompose().unwrap();
        assert_eq!(d, r("S2-S0"));
    }

    #[test]
    fn clebsch_gordan() {
        assert_eq!(r("S3").tensor(&r("S1")), r("S4+S2"));
        assert_eq!(r("S4").tensor(&r("S2")), r("S6+S4+S2"));
        assert_eq!(r("S0").tensor(&r("S5")), r("S5"));
    }

    #[test]
    fn plethysms() {
        let t = named::tangent();
        assert_eq!(t.exterior_power(2).unwrap(), r("2S6+S4+3S2"));
        assert_eq!(t.exterior_power(3).unwrap(), r("S8+3S6+3S4+3S2+2S0"));
        assert_eq!(t.exterior_power(4).unwrap(), r("2S8+2S6+6S4+2S2+2S0"));
        assert_eq!(t.exterior_power(1).unwrap(), t);
        assert_eq!(t.exterior_power(0).unwrap(), r("S0"));
        assert_eq!(r("S1").symmetric_power(2).unwrap(), r("S2"));
        assert_eq!(r("S2").symmetric_power(2).unwrap(), r("S4+S0"));
        assert_eq!(t.symmetric_power(0).unwrap(), r("S0"));
        assert!(r("S2-S0").exterior_power(2).is_err());
    }

    #[test]
    fn real_dimensions() {
        let d = r("S2").real_dimension();
        assert_eq!((d.total, d.summands[0].kind), (3, RealType::Real));
        assert_eq!(r("S4").real_dimension().total, 5);
        let d = r("S1").real_dimension();
        assert_eq!((d.total, d.summands[0].kind), (4, RealType::Quaternionic));
    }

    #[test]
    fn parse_print_json() {
        let x = r("2S6 + S4 + 3S2");
        assert_eq!(x.to_string(), "2S6 + S4 + 3S2");
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"S6":2,"S4":1,"S2":3}"#);
        let y: VirtualRep = serde_json::from_str(r#"{"S2":3,"S10":1}"#).unwrap();
        assert_eq!(serde_json::to_string(&y).unwrap(), r#"{"S10":1,"S2":3}"#);
        assert_eq!(r("2*S6-S0").mult(0), -1);
        assert_eq!(r("0"), VirtualRep::zero());
        assert!("S".parse::<VirtualRep>().is_err());
        assert!("T2".parse::<VirtualRep>().is_err());
        assert!("".parse::<VirtualRep>().is_err());
    }
}
