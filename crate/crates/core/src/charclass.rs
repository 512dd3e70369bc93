//! Characteristic classes on the splitting line: everything lives in
//! Q[x]/(x⁵) with `deg x = 2`, so the top coefficient is the degree-8 class.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::rat;

pub const TOP: usize = 4;

/// `c₀ + c₁x + … + c₄x⁴`, truncated above `x⁴`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedPoly {
    c: [BigRational; TOP + 1],
}

impl GradedPoly {
    pub fn new(c: [BigRational; TOP + 1]) -> Self {
        GradedPoly { c }
    }

    pub fn constant(a: BigRational) -> Self {
        GradedPoly::monomial(a, 0)
    }

    pub fn monomial(a: BigRational, deg: usize) -> Self {
        let mut p = GradedPoly::zero();
        if deg <= TOP {
            p.c[deg] = a;
        }
        p
    }

    pub fn x() -> Self {
        GradedPoly::monomial(BigRational::one(), 1)
    }

    pub fn coeff(&self, deg: usize) -> &BigRational {
        &self.c[deg]
    }

    pub fn coeffs(&self) -> &[BigRational; TOP + 1] {
        &self.c
    }

    /// Homogeneous part of degree `deg` in x.
    pub fn part(&self, deg: usize) -> GradedPoly {
        GradedPoly::monomial(self.c[deg].clone(), deg)
    }

    pub fn scale(&self, s: &BigRational) -> GradedPoly {
        GradedPoly {
            c: std::array::from_fn(|i| &self.c[i] * s),
        }
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        (0..n).fold(GradedPoly::one(), |acc, _| &acc * self)
    }

    /// `e^{w·x}` truncated.
    pub fn exp_weight(w: &BigRational) -> GradedPoly {
        let mut c: [BigRational; TOP + 1] = Default::default();
        let mut term = BigRational::one();
        for (k, ck) in c.iter_mut().enumerate() {
            if k > 0 {
                term = term * w / BigRational::from_integer(k.into());
            }
            *ck = term.clone();
        }
        GradedPoly { c }
    }

    /// Substitute `x ↦ w·x` into a power series given by its first coefficients.
    fn series_at(series: &[BigRational; TOP + 1], w: &BigRational) -> GradedPoly {
        let mut wk = BigRational::one();
        GradedPoly {
            c: std::array::from_fn(|k| {
                if k > 0 {
                    wk = &wk * w;
                }
                &series[k] * &wk
            }),
        }
    }
}

impl Zero for GradedPoly {
    fn zero() -> Self {
        GradedPoly { c: Default::default() }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for GradedPoly {
    fn one() -> Self {
        GradedPoly::constant(BigRational::one())
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        GradedPoly {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: &GradedPoly) -> GradedPoly {
        GradedPoly {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for i in 0..=TOP {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=TOP - i {
                out.c[i + j] += &self.c[i] * &o.c[j];
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl std::ops::$tr for GradedPoly {
            type Output = GradedPoly;
            fn $f(self, o: GradedPoly) -> GradedPoly {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for GradedPoly {
    /// `8 + 6x^2 + 3x^4`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let coef = if a.is_one() && k > 0 {
                String::new()
            } else if a.is_integer() || k == 0 {
                a.to_string()
            } else {
                format!("({a})")
            };
            write!(f, "{sep}{coef}{mono}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Formal sum of line bundles `L^w`, weights rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBundle {
    weights: Vec<BigRational>,
}

impl WeightBundle {
    pub fn new(mut weights: Vec<BigRational>) -> Self {
        weights.sort_by(|a, b| b.cmp(a));
        WeightBundle { weights }
    }

    pub fn from_ints(ws: &[i64]) -> Self {
        WeightBundle::new(ws.iter().map(|&w| BigRational::from_integer(w.into())).collect())
    }

    /// Complexified tangent bundle of an 8-manifold with this structure:
    /// `L ⊕ L̄ ⊕ ℂ` from S² and `L² ⊕ L ⊕ ℂ ⊕ L̄ ⊕ L̄²` from S⁴.
    pub fn tangent() -> Self {
        WeightBundle::from_ints(&[2, 1, 1, 0, 0, -1, -1, -2])
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn conjugate(&self) -> WeightBundle {
        WeightBundle::new(self.weights.iter().map(|w| -w).collect())
    }

    pub fn union(&self, o: &WeightBundle) -> WeightBundle {
        WeightBundle::new(self.weights.iter().chain(&o.weights).cloned().collect())
    }

    /// Weights `a + b` over all pairs.
    pub fn tensor(&self, o: &WeightBundle) -> WeightBundle {
        WeightBundle::new(
            self.weights
                .iter()
                .flat_map(|a| o.weights.iter().map(move |b| a + b))
                .collect(),
        )
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Positive weights, one per conjugate pair; `None` unless self-conjugate.
    fn half(&self) -> Option<(Vec<BigRational>, usize)> {
        if !self.is_self_conjugate() {
            return None;
        }
        let pos: Vec<BigRational> = self.weights.iter().filter(|w| w.is_positive()).cloned().collect();
        let zeros = self.weights.iter().filter(|w| w.is_zero()).count();
        Some((pos, zeros))
    }
}

impl FromStr for WeightBundle {
    type Err = Error;
    /// Comma-separated rationals, e.g. `2,-1,1/2,0`.
    fn from_str(s: &str) -> Result<Self> {
        let ws = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad weight '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightBundle::new(ws))
    }
}

impl fmt::Display for WeightBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for WeightBundle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.weights.iter().map(ToString::to_string))
    }
}

pub fn chern_character(b: &WeightBundle) -> GradedPoly {
    b.weights
        .iter()
        .fold(GradedPoly::zero(), |acc, w| &acc + &GradedPoly::exp_weight(w))
}

/// Total Chern class `Π(1 + w·x)`.
pub fn total_chern(b: &WeightBundle) -> GradedPoly {
    b.weights.iter().fold(GradedPoly::one(), |acc, w| {
        &acc * &(&GradedPoly::one() + &GradedPoly::monomial(w.clone(), 1))
    })
}

/// `cᵢ` as a homogeneous element.
pub fn chern_class(b: &WeightBundle, i: usize) -> GradedPoly {
    total_chern(b).part(i)
}

/// `(p₁, p₂)` from `Π_{w>0}(1 + w²x²)`.
pub fn pontrjagin(b: &WeightBundle) -> Result<(GradedPoly, GradedPoly)> {
    let (pos, _) = b.half().ok_or(Error::NotSelfConjugate)?;
    let total = pos.iter().fold(GradedPoly::one(), |acc, w| {
        &acc * &(&GradedPoly::one() + &GradedPoly::monomial(w * w, 2))
    });
    Ok((total.part(2), total.part(4)))
}

/// Euler class of the underlying real bundle, oriented by the positive weights.
pub fn euler(b: &WeightBundle) -> Result<GradedPoly> {
    let (pos, zeros) = b.half().ok_or(Error::NotSelfConjugate)?;
    if zeros > 0 {
        return Ok(GradedPoly::zero());
    }
    let prod: BigRational = pos.iter().product();
    Ok(GradedPoly::monomial(prod, pos.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Genus {
    #[serde(rename = "L")]
    L,
    #[serde(rename = "A-hat")]
    AHat,
    #[serde(rename = "Todd")]
    Todd,
}

impl Genus {
    pub const ALL: [Genus; 3] = [Genus::L, Genus::AHat, Genus::Todd];

    pub fn name(self) -> &'static str {
        match self {
            Genus::L => "L",
            Genus::AHat => "A-hat",
            Genus::Todd => "Todd",
        }
    }
}

impl FromStr for Genus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" | "signature" => Ok(Genus::L),
            "a" | "ahat" | "a-hat" => Ok(Genus::AHat),
            "td" | "todd" => Ok(Genus::Todd),
            _ => Err(Error::UnknownTag(s.to_string())),
        }
    }
}

fn q(n: i64, d: i64) -> BigRational {
    rat(n, d)
}

/// Degree-8 part of the genus as a polynomial in `p₁, p₂` (for L and Â) or
/// `c₁…c₄` (Todd), evaluated on scalars.
pub fn genus_top(which: Genus, c: [&BigRational; 4], p: [&BigRational; 2]) -> BigRational {
    let [c1, c2, c3, c4] = c;
    let [p1, p2] = p;
    match which {
        Genus::L => (q(7, 1) * p2 - p1 * p1) / q(45, 1),
        Genus::AHat => (q(7, 1) * p1 * p1 - q(4, 1) * p2) / q(5760, 1),
        Genus::Todd => (-c4 + c3 * c1 + q(3, 1) * c2 * c2 + q(4, 1) * c2 * c1 * c1 - c1 * c1 * c1 * c1) / q(720, 1),
    }
}

/// Full genus `1 + … + degree-8 term` for a bundle.
pub fn genus_eval(which: Genus, b: &WeightBundle) -> Result<GradedPoly> {
    match which {
        Genus::L | Genus::AHat => {
            let (p1, p2) = pontrjagin(b)?;
            let (s1, s2) = (p1.coeff(2), p2.coeff(4));
            let top = genus_top(which, [&q(0, 1); 4], [s1, s2]);
            let lin = if which == Genus::L {
                s1 / q(3, 1)
            } else {
                -s1 / q(24, 1)
            };
            Ok(&(&GradedPoly::one() + &GradedPoly::monomial(lin, 2)) + &GradedPoly::monomial(top, 4))
        }
        Genus::Todd => {
            let total = total_chern(b);
            let c: Vec<BigRational> = (1..=4).map(|i| total.coeff(i).clone()).collect();
            let (c1, c2) = (&c[0], &c[1]);
            let deg = [
                BigRational::one(),
                c1 / q(2, 1),
                (c1 * c1 + c2) / q(12, 1),
                c1 * c2 / q(24, 1),
                genus_top(which, [&c[0], &c[1], &c[2], &c[3]], [&q(0, 1), &q(0, 1)]),
            ];
            Ok(GradedPoly::new(deg))
        }
    }
}

/// Todd class from the product `Π wx/(1 − e^{−wx})`.
pub fn todd_product(b: &WeightBundle) -> GradedPoly {
    // t/(1 − e^{−t}) = 1 + t/2 + t²/12 − t⁴/720 + …
    let series = [q(1, 1), q(1, 2), q(1, 12), q(0, 1), q(-1, 720)];
    b.weights
        .iter()
        .fold(GradedPoly::one(), |acc, w| &acc * &GradedPoly::series_at(&series, w))
}

/// Degree-8 genus as a multiple of `p₁²` once `4p₂ = p₁²`, for a bundle with `c₁ = c₃ = 0`.
pub fn constrained_genus(which: Genus) -> BigRational {
    let (p1, p2) = (q(1, 1), q(1, 4));
    // c₂ = −p₁ and c₄ = p₂ for a complexified real bundle.
    genus_top(which, [&q(0, 1), &-&p1, &q(0, 1), &p2], [&p1, &p2])
}

/// Factor forced on `p₁²` by integrality of the Todd genus.
pub fn todd_factor() -> BigInt {
    constrained_genus(Genus::Todd).denom().clone()
}

/// Factor forced on `p₁²` by the PSU(3) relations.
pub const PSU3_FACTOR: i64 = 216;

pub fn divisibility_bound() -> BigInt {
    todd_factor().lcm(&BigInt::from(PSU3_FACTOR))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Relation {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub e: i64,
    pub p1_sq: i64,
    pub p2: i64,
    pub relations: Vec<Relation>,
    pub admissible: bool,
}

/// The numerical conditions on `(e, p₁², p₂)` for a closed 8-manifold with this structure.
pub fn obstruction_check(e: i64, p1_sq: i64, p2: i64) -> ObstructionReport {
    let bound = divisibility_bound();
    let relations = vec![
        Relation {
            name: "8e + p1^2 - 4p2 = 0",
            holds: 8 * e as i128 + p1_sq as i128 - 4 * p2 as i128 == 0,
        },
        Relation {
            name: "4p2 = p1^2",
            holds: 4 * p2 as i128 == p1_sq as i128,
        },
        Relation {
            name: "p1^2 divisible by bound",
            holds: (BigInt::from(p1_sq) % &bound).is_zero(),
        },
    ];
    ObstructionReport {
        e,
        p1_sq,
        p2,
        admissible: relations.iter().all(|r| r.holds),
        relations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusEntry {
    pub genus: Genus,
    pub value: GradedPoly,
    /// Degree-8 term over `p₁²` under `4p₂ = p₁²`.
    pub per_p1_sq: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Relations {
    pub four_p2_eq_p1sq: bool,
    pub euler_zero: bool,
    pub divisibility: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharClassReport {
    pub weights: WeightBundle,
    pub ch: GradedPoly,
    pub p1: GradedPoly,
    pub p2: GradedPoly,
    pub euler: GradedPoly,
    pub relations: Relations,
    pub genera: Vec<GenusEntry>,
}

pub fn report(b: &WeightBundle) -> Result<CharClassReport> {
    let (p1, p2) = pontrjagin(b)?;
    let e = euler(b)?;
    let p1sq = &p1 * &p1;
    let genera = Genus::ALL
        .iter()
        .map(|&g| {
            Ok(GenusEntry {
                genus: g,
                value: genus_eval(g, b)?,
                per_p1_sq: constrained_genus(g).to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CharClassReport {
        weights: b.clone(),
        ch: chern_character(b),
        relations: Relations {
            four_p2_eq_p1sq: p2.scale(&q(4, 1)) == p1sq,
            euler_zero: e.is_zero() && (&(&e.scale(&q(8, 1)) + &p1sq) - &p2.scale(&q(4, 1))).is_zero(),
            divisibility: divisibility_bound().to_string(),
        },
        p1,
        p2,
        euler: e,
        genera,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcsType {
    Quaternionic,
    NonQuaternionic,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcsReport {
    pub name: Option<String>,
    pub weights: WeightBundle,
    pub kind: AcsType,
    pub conjugate: WeightBundle,
    pub conjugate_kind: AcsType,
}

/// `E ⊗ L^{1/2}` with `E = S³`: weights `{3/2, 1/2, −1/2, −3/2} + 1/2`.
pub fn twistor_weights() -> WeightBundle {
    let e = WeightBundle::new(vec![q(3, 2), q(1, 2), q(-1, 2), q(-3, 2)]);
    e.tensor(&WeightBundle::new(vec![q(1, 2)]))
}

fn acs_type(j: &WeightBundle) -> AcsType {
    let t = twistor_weights();
    if *j == t || *j == t.conjugate() {
        AcsType::Quaternionic
    } else {
        AcsType::NonQuaternionic
    }
}

/// Classify an almost complex structure by the weights of `T^{1,0}`.
pub fn acs_classify(j: &WeightBundle) -> Result<AcsReport> {
    if j.rank() != 4 {
        return Err(Error::InconsistentWeights(format!(
            "T^(1,0) needs 4 weights, got {}",
            j.rank()
        )));
    }
    if j.union(&j.conjugate()) != WeightBundle::tangent() {
        return Err(Error::InconsistentWeights(format!(
            "{j} and its conjugate do not make up the tangent bundle"
        )));
    }
    let name = base_structures().into_iter().find_map(|(n, w)| {
        if w == *j {
            Some(n.to_string())
        } else if w.conjugate() == *j {
            Some(format!("{n}-bar"))
        } else {
            None
        }
    });
    let c = j.conjugate();
    Ok(AcsReport {
        name,
        kind: acs_type(j),
        conjugate_kind: acs_type(&c),
        conjugate: c,
        weights: j.clone(),
    })
}

/// `J = L² + 2L̄ + ℂ`, `J′ = L² + 2L + ℂ`, `J″ = L² + L + L̄ + ℂ`.
pub fn base_structures() -> [(&'static str, WeightBundle); 3] {
    [
        ("J", WeightBundle::from_ints(&[2, -1, -1, 0])),
        ("J'", WeightBundle::from_ints(&[2, 1, 1, 0])),
        ("J''", WeightBundle::from_ints(&[2, -1, 1, 0])),
    ]
}

/// All choices of `T^{1,0}` compatible with the tangent weights.
pub fn all_structures() -> Vec<WeightBundle> {
    let t = WeightBundle::tangent();
    let mut out: Vec<WeightBundle> = Vec::new();
    // pick one weight from each conjugate pair {±2}, {±1}, {±1}, {0,0}
    let pairs = [2i64, 1, 1];
    for mask in 0..8u32 {
        let ws: Vec<i64> = pairs
            .iter()
            .enumerate()
            .map(|(i, &w)| if mask & (1 << i) != 0 { -w } else { w })
            .chain([0])
            .collect();
        let b = WeightBundle::from_ints(&ws);
        if b.union(&b.conjugate()) == t && !out.contains(&b) {
            out.push(b);
        }
    }
    out
}
