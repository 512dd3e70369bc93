//! Frozen reference model of R⁸ as the adjoint representation of su(3).
//!
//! An element of su(3) is written `A + iS` with `A` real antisymmetric and
//! `S` real symmetric traceless. The ordered basis is
//!
//! | index | element                 | block |
//! |-------|-------------------------|-------|
//! | 1     | `E12 − E21`             | V     |
//! | 2     | `E13 − E31`             | V     |
//! | 3     | `E23 − E32`             | V     |
//! | 4     | `i(E12 + E21)`          | W     |
//! | 5     | `i(E13 + E31)`          | W     |
//! | 6     | `i(E23 + E32)`          | W     |
//! | 7     | `i·diag(1,−1,0)`        | W     |
//! | 8     | `i·diag(1,1,−2)/√3`     | W     |
//!
//! It is orthonormal for `⟨X,Y⟩ = −½ Re tr(XY)`. The so(3) generators are
//! `eᵢ = 2·ad(Lᵢ)` with `L₁ = −(E23−E32)`, `L₂ = E13−E31`, `L₃ = −(E12−E21)`,
//! so that `[e₁,e₂] = 2e₃` cyclically and the Casimir `Σeᵢ²` acts on `Sⁿ`
//! by `−n(n+2)`.

use num_traits::{One, Zero};

use crate::field::Q3;
use crate::linalg::Mat;

pub const BASIS_VERSION: &str = "su3-gellmann-v1";
pub const DIM: usize = 8;
pub const SO8_DIM: usize = 28;

/// Element `A + iS` of su(3), stored as its two real 3×3 parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Su3Elem {
    pub re: Mat,
    pub im: Mat,
}

impl Su3Elem {
    fn zero() -> Self {
        Su3Elem {
            re: Mat::zeros(3, 3),
            im: Mat::zeros(3, 3),
        }
    }

    pub fn bracket(&self, o: &Su3Elem) -> Su3Elem {
        Su3Elem {
            re: self.re.commutator(&o.re).sub(&self.im.commutator(&o.im)),
            im: self.re.commutator(&o.im).add(&self.im.commutator(&o.re)),
        }
    }

    /// `−½ Re tr(XY)`
    pub fn form(&self, o: &Su3Elem) -> Q3 {
        let t = self.re.mul(&o.re).trace() - self.im.mul(&o.im).trace();
        &t * &Q3::from_ratio(-1, 2)
    }

    pub fn scale(&self, s: &Q3) -> Su3Elem {
        Su3Elem {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }
}

fn unit(i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(3, 3);
    m[(i, j)] = Q3::one();
    m
}

fn diag(d: [Q3; 3]) -> Mat {
    let mut m = Mat::zeros(3, 3);
    for (i, x) in d.into_iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

/// The eight reference vectors of R⁸ = su(3), in the order of the module table.
pub fn su3_basis() -> Vec<Su3Elem> {
    let mut out = Vec::with_capacity(DIM);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.push(Su3Elem {
            re: unit(i, j).sub(&unit(j, i)),
            im: Mat::zeros(3, 3),
        });
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.push(Su3Elem {
            re: Mat::zeros(3, 3),
            im: unit(i, j).add(&unit(j, i)),
        });
    }
    let q = Q3::from_int;
    out.push(Su3Elem {
        re: Mat::zeros(3, 3),
        im: diag([q(1), q(-1), q(0)]),
    });
    let s = Q3::sqrt3().inv().unwrap();
    out.push(Su3Elem {
        re: Mat::zeros(3, 3),
        im: diag([s.clone(), s.clone(), &s * &q(-2)]),
    });
    out
}

/// Gram matrix of the reference basis under `−½ Re tr(XY)`.
pub fn gram() -> Mat {
    let b = su3_basis();
    let mut g = Mat::zeros(DIM, DIM);
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            g[(i, j)] = x.form(y);
        }
    }
    g
}

/// Coordinates in the orthonormal reference basis.
pub fn coords(basis: &[Su3Elem], x: &Su3Elem) -> Vec<Q3> {
    basis.iter().map(|b| b.form(x)).collect()
}

/// `ad(x)` as an 8×8 matrix on R⁸.
pub fn ad(basis: &[Su3Elem], x: &Su3Elem) -> Mat {
    let cols: Vec<Vec<Q3>> = basis.iter().map(|b| coords(basis, &x.bracket(b))).collect();
    Mat::from_cols(&cols, DIM)
}

/// The rotation generators `L₁, L₂, L₃` of so(3) ⊂ su(3).
pub fn rotation_generators() -> [Su3Elem; 3] {
    let b = su3_basis();
    let m1 = Q3::from_int(-1);
    [b[2].scale(&m1), b[1].clone(), b[0].scale(&m1)]
}

/// Which reference indices form the V and W blocks of the almost product split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSplit {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

impl BlockSplit {
    pub fn reference() -> Self {
        BlockSplit {
            v: vec![0, 1, 2],
            w: vec![3, 4, 5, 6, 7],
        }
    }

    /// Deliberately wrong split used as a negative-path fixture.
    pub fn corrupted() -> Self {
        BlockSplit {
            v: vec![0, 1, 3],
            w: vec![2, 4, 5, 6, 7],
        }
    }

    pub fn is_v(&self, i: usize) -> bool {
        self.v.contains(&i)
    }
}

/// Frozen data shared by every computation.
#[derive(Clone, Debug)]
pub struct Model {
    pub basis: Vec<Su3Elem>,
    /// `ad(uₖ)` for the eight basis vectors.
    pub adjoint: Vec<Mat>,
    /// `eᵢ = 2·ad(Lᵢ)`
    pub g_gens: [Mat; 3],
    pub split: BlockSplit,
}

impl Model {
    pub fn new(split: BlockSplit) -> Self {
        let basis = su3_basis();
        let adjoint = basis.iter().map(|x| ad(&basis, x)).collect();
        let two = Q3::from_int(2);
        let g_gens = rotation_generators().map(|l| ad(&basis, &l).scale(&two));
        Model {
            basis,
            adjoint,
            g_gens,
            split,
        }
    }

    pub fn reference() -> Self {
        Model::new(BlockSplit::reference())
    }

    pub fn labels() -> [&'static str; DIM] {
        ["V1", "V2", "V3", "W1", "W2", "W3", "W4", "W5"]
    }
}

/// so(8) coordinates `(X_ij)_{i<j}` in lexicographic order.
pub fn so8_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    i * (2 * DIM - i - 1) / 2 + (j - i - 1)
}

pub fn so8_pairs() -> Vec<(usize, usize)> {
    (0..DIM).flat_map(|i| (i + 1..DIM).map(move |j| (i, j))).collect()
}

/// Elementary antisymmetric matrix `E_ij − E_ji`.
pub fn so8_unit(i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(DIM, DIM);
    m[(i, j)] = Q3::one();
    m[(j, i)] = -Q3::one();
    m
}

pub fn zero_su3() -> Su3Elem {
    Su3Elem::zero()
}

pub fn is_zero_vec(v: &[Q3]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_basis_is_orthonormal() {
        assert_eq!(su3_basis().len(), 8);
        assert_eq!(gram(), Mat::identity(8));
        assert_eq!(gram().det_bareiss(), Q3::one());
    }

    #[test]
    fn v_and_w_blocks_are_orthogonal() {
        let g = gram();
        for i in 0..3 {
            for j in 3..8 {
                assert!(g[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn so3_normalization() {
        let m = Model::reference();
        let [e1, e2, e3] = &m.g_gens;
        let two = Q3::from_int(2);
        assert_eq!(e1.commutator(e2), e3.scale(&two));
        assert_eq!(e2.commutator(e3), e1.scale(&two));
        assert_eq!(e3.commutator(e1), e2.scale(&two));
        for e in &m.g_gens {
            assert!(e.is_antisymmetric());
        }
    }

    #[test]
    fn adjoint_matrices_are_antisymmetric() {
        let m = Model::reference();
        assert!(m.adjoint.iter().all(Mat::is_antisymmetric));
    }

    #[test]
    fn so8_indexing() {
        let pairs = so8_pairs();
        assert_eq!(pairs.len(), SO8_DIM);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            assert_eq!(so8_index(i, j), k);
        }
    }
}
