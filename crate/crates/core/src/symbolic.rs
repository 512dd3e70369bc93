//! Laurent polynomials with rational coefficients in a fixed set of named
//! symbols, enough to check matrix identities after substituting solved
//! variables such as `b22 = −a12·b21/a22`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Symbol names, in display order.
pub const SYMBOLS: [&str; 9] = ["a11", "a12", "a21", "a22", "b11", "b12", "b21", "b22", "m"];

pub fn symbol_index(name: &str) -> Option<usize> {
    SYMBOLS.iter().position(|s| *s == name)
}

type Exponents = [i32; SYMBOLS.len()];

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    terms: BTreeMap<Exponents, BigRational>,
}

impl Laurent {
    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; SYMBOLS.len()], c);
        }
        Laurent { terms }
    }

    pub fn int(n: i64) -> Self {
        Laurent::constant(BigRational::from_integer(n.into()))
    }

    /// The symbol `name`; panics on an unknown name.
    pub fn var(name: &str) -> Self {
        let i = symbol_index(name).unwrap_or_else(|| panic!("unknown symbol {name}"));
        let mut e = [0; SYMBOLS.len()];
        e[i] = 1;
        Laurent {
            terms: BTreeMap::from([(e, BigRational::one())]),
        }
    }

    /// Inverse of a single monomial; `None` for sums.
    pub fn monomial_inverse(&self) -> Option<Laurent> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let mut inv = *e;
        inv.iter_mut().for_each(|x| *x = -*x);
        Some(Laurent {
            terms: BTreeMap::from([(inv, c.recip())]),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Exponents, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Evaluate at a point given for every symbol that occurs.
    pub fn eval(&self, at: &BTreeMap<&str, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = at.get(SYMBOLS[i])?;
                if k < 0 && v.is_zero() {
                    return None;
                }
                let p = num_traits::pow(v.clone(), k.unsigned_abs() as usize);
                t *= if k > 0 { p } else { p.recip() };
            }
            total += t;
        }
        Some(total)
    }
}

impl std::ops::Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl std::ops::Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl std::ops::Mul for &Laurent {
    type Output = Laurent;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                e.iter_mut().zip(e2).for_each(|(a, b)| *a += b);
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    /// e.g. `-a12*b21/a22`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let num: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        SYMBOLS[i].to_string()
                    } else {
                        format!("{}^{k}", SYMBOLS[i])
                    }
                })
                .collect();
            let den: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k < 0)
                .map(|(i, k)| {
                    if *k == -1 {
                        SYMBOLS[i].to_string()
                    } else {
                        format!("{}^{}", SYMBOLS[i], -k)
                    }
                })
                .collect();
            let mut body = num.join("*");
            if !a.is_one() || body.is_empty() {
                body = if body.is_empty() {
                    a.to_string()
                } else {
                    format!("{a}*{body}")
                };
            }
            write!(f, "{body}")?;
            if !den.is_empty() {
                write!(f, "/{}", den.join("*"))?;
            }
        }
        Ok(())
    }
}

/// 2×2 matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2(pub [[Laurent; 2]; 2]);

impl Mat2 {
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &(&self.0[i][0] * &o.0[0][j]) + &(&self.0[i][1] * &o.0[1][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Laurent::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = Laurent::var("a12");
        let b = Laurent::var("b21");
        let inv = Laurent::var("a22").monomial_inverse().unwrap();
        let x = &(&-&a * &b) * &inv;
        assert_eq!(x.to_string(), "-a12*b21/a22");
        let back = &x * &Laurent::var("a22");
        assert_eq!(back, &-&a * &b);
        assert!((&x - &x).is_zero());
        assert_eq!(Laurent::int(0).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let x = &Laurent::var("a11") * &Laurent::var("m").monomial_inverse().unwrap();
        let at = BTreeMap::from([
            ("a11", BigRational::from_integer(6.into())),
            ("m", BigRational::from_integer(3.into())),
        ]);
        assert_eq!(x.eval(&at), Some(BigRational::from_integer(2.into())));
        assert_eq!(x.eval(&BTreeMap::new()), None);
    }
}
