//! Z/2-graded vector spaces with labeled homogeneous bases.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Not};

use serde::Serialize;

use crate::exact::{ExactMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_int(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(p q)` as a rational.
    pub fn koszul(self, other: Parity) -> Rational {
        if self.is_odd() && other.is_odd() {
            Rational::from_int(-1)
        } else {
            Rational::one()
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Not for Parity {
    type Output = Parity;
    fn not(self) -> Parity {
        self + Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A finite-dimensional superspace given by an ordered homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    basis: Vec<(String, Parity)>,
}

impl SuperSpace {
    pub fn new(basis: Vec<(String, Parity)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (label, _) in &basis {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(SuperSpace { basis })
    }

    /// `(even|odd)` space with generated labels `e0.., o0..`.
    pub fn with_dims(even: usize, odd: usize) -> Self {
        let mut basis: Vec<(String, Parity)> = (0..even).map(|i| (format!("e{i}"), Parity::Even)).collect();
        basis.extend((0..odd).map(|i| (format!("o{i}"), Parity::Odd)));
        SuperSpace { basis }
    }

    pub fn basis(&self) -> &[(String, Parity)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].1
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|(l, _)| l == label)
    }

    pub fn dims(&self) -> (usize, usize) {
        let even = self.basis.iter().filter(|(_, p)| *p == Parity::Even).count();
        (even, self.basis.len() - even)
    }

    pub fn superdimension(&self) -> i64 {
        let (e, o) = self.dims();
        e as i64 - o as i64
    }

    /// Basis `a_i ⊗ b_j` in `a`-major order; parity is additive.
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for (la, pa) in &self.basis {
            for (lb, pb) in &other.basis {
                basis.push((format!("{la}⊗{lb}"), *pa + *pb));
            }
        }
        SuperSpace { basis }
    }

    /// `Π^k`: flips every parity when `k` is odd.
    pub fn parity_shift(&self, k: i64) -> SuperSpace {
        if k.rem_euclid(2) == 0 {
            return self.clone();
        }
        SuperSpace { basis: self.basis.iter().map(|(l, p)| (format!("Π{l}"), !*p)).collect() }
    }

    /// Dual basis in the same order and parity.
    pub fn dual(&self) -> SuperSpace {
        SuperSpace { basis: self.basis.iter().map(|(l, p)| (format!("{l}*"), *p)).collect() }
    }

    /// `v ⊗ w ↦ (−1)^{p(v)p(w)} w ⊗ v` from `self ⊗ other` to `other ⊗ self`.
    pub fn braiding(&self, other: &SuperSpace) -> SuperMap {
        let source = self.tensor(other);
        let target = other.tensor(self);
        let (m, n) = (self.dim(), other.dim());
        let mut matrix = ExactMatrix::zeros(m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                matrix[(j * m + i, i * n + j)] = self.parity(i).koszul(other.parity(j));
            }
        }
        SuperMap { source, target, parity: Parity::Even, matrix }
    }
}

/// A parity-homogeneous linear map between superspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMap {
    pub source: SuperSpace,
    pub target: SuperSpace,
    pub parity: Parity,
    pub matrix: ExactMatrix,
}

impl SuperMap {
    pub fn new(source: SuperSpace, target: SuperSpace, parity: Parity, matrix: ExactMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "map matrix {}x{} does not fit {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for i in 0..target.dim() {
            for j in 0..source.dim() {
                if !matrix[(i, j)].is_zero() && target.parity(i) != source.parity(j) + parity {
                    return Err(Error::NotHomogeneous { row: i, col: j });
                }
            }
        }
        Ok(SuperMap { source, target, parity, matrix })
    }

    pub fn identity(space: &SuperSpace) -> Self {
        SuperMap {
            source: space.clone(),
            target: space.clone(),
            parity: Parity::Even,
            matrix: ExactMatrix::identity(space.dim()),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SuperMap) -> Result<SuperMap> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        Ok(SuperMap {
            source: first.source.clone(),
            target: self.target.clone(),
            parity: self.parity + first.parity,
            matrix: &self.matrix * &first.matrix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tensor_dims() {
        assert_eq!(SuperSpace::with_dims(1, 0).tensor(&SuperSpace::with_dims(1, 0)).dims(), (1, 0));
        assert_eq!(SuperSpace::with_dims(2, 2).tensor(&SuperSpace::with_dims(2, 2)).dims(), (8, 8));
        assert_eq!(SuperSpace::with_dims(1, 1).tensor(&SuperSpace::with_dims(0, 1)).dims(), (1, 1));
    }

    #[test]
    fn braiding_signs() {
        let even = SuperSpace::with_dims(1, 0);
        let odd = SuperSpace::with_dims(0, 1);
        assert_eq!(even.braiding(&even).matrix, ExactMatrix::identity(1));
        assert_eq!(odd.braiding(&odd).matrix, ExactMatrix::from_rows(&[[-1]]));
        let a = SuperSpace::with_dims(1, 1);
        let b = a.braiding(&a);
        let back = a.braiding(&a);
        assert_eq!(back.compose(&b).unwrap().matrix, ExactMatrix::identity(4));
        assert_eq!(b.parity, Parity::Even);
    }

    #[test]
    fn parity_shift_and_sdim() {
        let a = SuperSpace::with_dims(2, 3);
        assert_eq!(a.parity_shift(0).dims(), (2, 3));
        assert_eq!(a.parity_shift(1).dims(), (3, 2));
        assert_eq!(a.parity_shift(-1).dims(), (3, 2));
        assert_eq!(SuperSpace::with_dims(4, 4).superdimension(), 0);
        assert_eq!(SuperSpace::with_dims(1, 0).superdimension(), 1);
        assert_eq!(SuperSpace::with_dims(0, 1).superdimension(), -1);
    }

    #[test]
    fn rejects_inhomogeneous_map() {
        let a = SuperSpace::with_dims(1, 1);
        let swap = ExactMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert!(SuperMap::new(a.clone(), a.clone(), Parity::Even, swap.clone()).is_err());
        assert!(SuperMap::new(a.clone(), a, Parity::Odd, swap).is_ok());
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(SuperSpace::new(vec![("x".into(), Parity::Even), ("x".into(), Parity::Odd)]).is_err());
    }

    proptest! {
        #[test]
        fn sdim_multiplicative(a0 in 0usize..5, a1 in 0usize..5, b0 in 0usize..5, b1 in 0usize..5) {
            let a = SuperSpace::with_dims(a0, a1);
            let b = SuperSpace::with_dims(b0, b1);
            prop_assert_eq!(a.tensor(&b).superdimension(), a.superdimension() * b.superdimension());
            prop_assert_eq!(a.parity_shift(1).superdimension(), -a.superdimension());
        }

        #[test]
        fn braiding_is_an_even_involution(a0 in 0usize..3, a1 in 0usize..3, b0 in 0usize..3, b1 in 0usize..3) {
            let a = SuperSpace::with_dims(a0, a1);
            let b = SuperSpace::with_dims(b0, b1);
            let there = a.braiding(&b);
            let back = b.braiding(&a);
            prop_assert_eq!(back.compose(&there).unwrap().matrix, ExactMatrix::identity(a.dim() * b.dim()));
            prop_assert!(SuperMap::new(there.source.clone(), there.target.clone(), Parity::Even, there.matrix.clone()).is_ok());
        }
    }
}
