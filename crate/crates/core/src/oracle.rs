//! Brute-force weight enumeration, kept deliberately separate from the
//! representation ring so it can be used to check it.
//!
//! A representation is flattened to its multiset of weights; exterior
//! powers and tensor products are formed by enumerating subsets or pairs,
//! and the resulting weight multiset is peeled back into irreducibles.

use std::collections::BTreeMap;

/// Weights `n, n−2, …, −n` of each copy of each `Sⁿ`.
pub fn weights(irreducibles: &[(u32, u32)]) -> Vec<i64> {
    let mut out = Vec::new();
    for &(n, mult) in irreducibles {
        for _ in 0..mult {
            out.extend((0..=n).map(|k| n as i64 - 2 * k as i64));
        }
    }
    out
}

/// Peel highest weights off a weight multiset. `None` if something is left over.
pub fn peel(ws: &[i64]) -> Option<BTreeMap<u32, i64>> {
    let mut count: BTreeMap<i64, i64> = BTreeMap::new();
    for &w in ws {
        *count.entry(w).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    loop {
        count.retain(|_, c| *c != 0);
        let Some((&top, &c)) = count.iter().next_back() else {
            return Some(out);
        };
        if top < 0 || c < 0 {
            return None;
        }
        for k in 0..=top {
            *count.entry(top - 2 * k).or_default() -= c;
        }
        out.insert(top as u32, c);
    }
}

/// Weights of `Λᵏ` by enumerating k-subsets of positions.
pub fn exterior_weights(ws: &[i64], k: usize) -> Vec<i64> {
    let mut out = Vec::new();
    fn rec(ws: &[i64], start: usize, left: usize, acc: i64, out: &mut Vec<i64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=ws.len() - left {
            rec(ws, i + 1, left - 1, acc + ws[i], out);
        }
    }
    if k <= ws.len() {
        rec(ws, 0, k, 0, &mut out);
    }
    out
}

/// Weights of `Sᵏ` by enumerating multisets of positions.
pub fn symmetric_weights(ws: &[i64], k: usize) -> Vec<i64> {
    let mut out = Vec::new();
    fn rec(ws: &[i64], start: usize, left: usize, acc: i64, out: &mut Vec<i64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..ws.len() {
            rec(ws, i, left - 1, acc + ws[i], out);
        }
    }
    rec(ws, 0, k, 0, &mut out);
    out
}

pub fn tensor_weights(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

pub fn exterior_power(irreducibles: &[(u32, u32)], k: usize) -> Option<BTreeMap<u32, i64>> {
    peel(&exterior_weights(&weights(irreducibles), k))
}

pub fn symmetric_power(irreducibles: &[(u32, u32)], k: usize) -> Option<BTreeMap<u32, i64>> {
    peel(&symmetric_weights(&weights(irreducibles), k))
}

pub fn tensor(a: &[(u32, u32)], b: &[(u32, u32)]) -> Option<BTreeMap<u32, i64>> {
    peel(&tensor_weights(&weights(a), &weights(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_by_hand() {
        assert_eq!(tensor(&[(1, 1)], &[(1, 1)]), Some(BTreeMap::from([(2, 1), (0, 1)])));
        assert_eq!(exterior_power(&[(2, 1)], 2), Some(BTreeMap::from([(2, 1)])));
        assert_eq!(symmetric_power(&[(1, 1)], 2), Some(BTreeMap::from([(2, 1)])));
        assert_eq!(peel(&[2, 0, -2, 0]), Some(BTreeMap::from([(2, 1), (0, 1)])));
        assert_eq!(peel(&[1]), None);
        assert_eq!(exterior_weights(&[1, -1], 3), Vec::<i64>::new());
    }
}
