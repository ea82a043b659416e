//! The periplectic Lie superalgebra p(n) inside gl(n|n).
//!
//! `V_n` has basis `v_1..v_n` (even) followed by `v_1'..v_n'` (odd), and the
//! odd symmetric form pairs `v_i` with `v_i'`. An element is a block matrix
//! `(A B; C −Aᵗ)` with `B` symmetric and `C` antisymmetric. The basis is
//! ordered A-part (row-major `E_ij`), B-part (upper triangle), C-part
//! (strict upper triangle); the Cartan element `h_i` is the A-part `E_ii`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};
use crate::superspace::Parity;

/// Degree in the grading `p(n) = p_{-1} ⊕ p_0 ⊕ p_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Part {
    Minus1,
    Zero,
    Plus1,
}

impl Part {
    pub fn degree(self) -> i32 {
        match self {
            Part::Minus1 => -1,
            Part::Zero => 0,
            Part::Plus1 => 1,
        }
    }
}

/// Which algebra a basis describes: all of p(n), or only its even part gl(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Periplectic,
    GeneralLinear,
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    pub part: Part,
    /// Weight of the element under the adjoint action of the Cartan.
    pub root: Vec<i64>,
    /// Matrix on `V_n` (size 2n×2n), also for the gl(n) kind.
    pub matrix: ExactMatrix,
}

/// Sparse coordinates of an element in the algebra basis.
pub type Coords = Vec<(usize, Rational)>;

#[derive(Debug)]
pub struct PnAlgebra {
    n: usize,
    kind: AlgebraKind,
    basis: Vec<BasisElement>,
    brackets: Vec<Vec<Coords>>,
}

pub fn a_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

fn upper_pairs(n: usize, strict: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if strict && i == j {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

fn block_matrix(n: usize, a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    m.set_block(0, 0, a);
    m.set_block(0, n, b);
    m.set_block(n, 0, c);
    m.set_block(n, n, d);
    m
}

fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}

fn blocks_of(n: usize, m: &ExactMatrix) -> [ExactMatrix; 4] {
    let lo: Vec<usize> = (0..n).collect();
    let hi: Vec<usize> = (n..2 * n).collect();
    [m.select(&lo, &lo), m.select(&lo, &hi), m.select(&hi, &lo), m.select(&hi, &hi)]
}

/// Supertrace of a 2n×2n matrix with the even block first.
pub fn supertrace(n: usize, m: &ExactMatrix) -> Rational {
    let mut t = Rational::zero();
    for i in 0..n {
        t += &m[(i, i)];
        t -= &m[(n + i, n + i)];
    }
    t
}

fn parity_of_matrix(n: usize, m: &ExactMatrix) -> Option<Parity> {
    let [a, b, c, d] = blocks_of(n, m);
    let even = a.is_zero() && d.is_zero();
    let odd = b.is_zero() && c.is_zero();
    match (even, odd) {
        (true, true) => Some(Parity::Even),
        (false, true) => Some(Parity::Even),
        (true, false) => Some(Parity::Odd),
        (false, false) => None,
    }
}

/// Super commutator `xy − (−1)^{p(x)p(y)} yx` of homogeneous matrices.
pub fn super_bracket(x: &ExactMatrix, px: Parity, y: &ExactMatrix, py: Parity) -> ExactMatrix {
    let xy = x * y;
    let yx = y * x;
    if px.is_odd() && py.is_odd() {
        &xy + &yx
    } else {
        &xy - &yx
    }
}

impl PnAlgebra {
    /// p(n) with the deterministic basis described in the module docs.
    /// `n = 0` gives the zero algebra (used as the target of DS when `s = n`).
    pub fn build(n: usize) -> Arc<PnAlgebra> {
        Arc::new(Self::construct(n, AlgebraKind::Periplectic))
    }

    /// gl(n) realized as the part-0 subalgebra `A ↦ (A, −Aᵗ)` of p(n).
    pub fn gl(n: usize) -> Arc<PnAlgebra> {
        Arc::new(Self::construct(n, AlgebraKind::GeneralLinear))
    }

    fn construct(n: usize, kind: AlgebraKind) -> PnAlgebra {
        let z = ExactMatrix::zeros(n, n);
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let a = unit(n, i, j);
                let d = -&unit(n, j, i);
                let mut root = vec![0; n];
                root[i] += 1;
                root[j] -= 1;
                basis.push(BasisElement {
                    name: format!("a{}{}", i + 1, j + 1),
                    parity: Parity::Even,
                    part: Part::Zero,
                    root,
                    matrix: block_matrix(n, &a, &z, &z, &d),
                });
            }
        }
        if kind == AlgebraKind::Periplectic {
            for (i, j) in upper_pairs(n, false) {
                let b = if i == j { unit(n, i, i) } else { &unit(n, i, j) + &unit(n, j, i) };
                let mut root = vec![0; n];
                root[i] += 1;
                root[j] += 1;
                basis.push(BasisElement {
                    name: format!("b{}{}", i + 1, j + 1),
                    parity: Parity::Odd,
                    part: Part::Plus1,
                    root,
                    matrix: block_matrix(n, &z, &b, &z, &z),
                });
            }
            for (i, j) in upper_pairs(n, true) {
                let c = &unit(n, i, j) - &unit(n, j, i);
                let mut root = vec![0; n];
                root[i] -= 1;
                root[j] -= 1;
                basis.push(BasisElement {
                    name: format!("c{}{}", i + 1, j + 1),
                    parity: Parity::Odd,
                    part: Part::Minus1,
                    root,
                    matrix: block_matrix(n, &z, &z, &c, &z),
                });
            }
        }
        let mut alg = PnAlgebra { n, kind, basis, brackets: Vec::new() };
        alg.brackets = alg
            .basis
            .iter()
            .map(|ex| {
                alg.basis
                    .iter()
                    .map(|ey| {
                        let m = super_bracket(&ex.matrix, ex.parity, &ey.matrix, ey.parity);
                        alg.coordinates(&m).expect("p(n) basis is closed under the bracket")
                    })
                    .collect()
            })
            .collect();
        alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    /// `(even | odd)` dimensions.
    pub fn dims(&self) -> (usize, usize) {
        let even = self.basis.iter().filter(|e| e.parity == Parity::Even).count();
        (even, self.basis.len() - even)
    }

    /// Index of the Cartan element `h_i = E_ii`.
    pub fn cartan(&self, i: usize) -> usize {
        a_index(self.n, i, i)
    }

    pub fn indices_in_part(&self, part: Part) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].part == part).collect()
    }

    /// Coordinates of a 2n×2n matrix in the basis, or an error when the matrix
    /// is not in the span.
    pub fn coordinates(&self, m: &ExactMatrix) -> Result<Coords> {
        let n = self.n;
        let mut coords = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = &m[(i, j)];
                if !v.is_zero() {
                    coords.push((a_index(n, i, j), v.clone()));
                }
            }
        }
        if self.kind == AlgebraKind::Periplectic {
            let nb = n * (n + 1) / 2;
            for (k, (i, j)) in upper_pairs(n, false).into_iter().enumerate() {
                let v = &m[(i, n + j)];
                if !v.is_zero() {
                    coords.push((n * n + k, v.clone()));
                }
            }
            for (k, (i, j)) in upper_pairs(n, true).into_iter().enumerate() {
                let v = &m[(n + i, j)];
                if !v.is_zero() {
                    coords.push((n * n + nb + k, v.clone()));
                }
            }
        }
        if &self.matrix_of(&coords) != m {
            return Err(Error::NotInSpan(format!("{m:?}")));
        }
        Ok(coords)
    }

    pub fn matrix_of(&self, coords: &[(usize, Rational)]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(2 * self.n, 2 * self.n);
        for (i, c) in coords {
            m = &m + &self.basis[*i].matrix.scale(c);
        }
        m
    }

    /// Structure constants `[X_x, X_y]` in the basis.
    pub fn bracket_basis(&self, x: usize, y: usize) -> &Coords {
        &self.brackets[x][y]
    }

    /// Bracket of two homogeneous elements given in coordinates; errors if
    /// the result leaves the span (a construction bug).
    pub fn bracket(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Result<Coords> {
        let mx = self.matrix_of(x);
        let my = self.matrix_of(y);
        let px = parity_of_matrix(self.n, &mx).ok_or_else(|| Error::Invalid("inhomogeneous element".into()))?;
        let py = parity_of_matrix(self.n, &my).ok_or_else(|| Error::Invalid("inhomogeneous element".into()))?;
        self.coordinates(&super_bracket(&mx, px, &my, py))
    }

    /// Index in this algebra of the element of `big` obtained by shifting all
    /// coordinates by `shift` (the embedding `p(n−s) ⊂ p(n)` on the last
    /// `n − s` coordinates).
    pub fn embedding_into(&self, big: &PnAlgebra, shift: usize) -> Vec<usize> {
        assert_eq!(self.kind, big.kind);
        assert!(self.n + shift <= big.n);
        let (n, bn) = (self.n, big.n);
        self.basis
            .iter()
            .map(|e| {
                let mut m = ExactMatrix::zeros(2 * bn, 2 * bn);
                for r in 0..2 * n {
                    for c in 0..2 * n {
                        let rr = if r < n { r + shift } else { r - n + bn + shift };
                        let cc = if c < n { c + shift } else { c - n + bn + shift };
                        m[(rr, cc)] = e.matrix[(r, c)].clone();
                    }
                }
                let coords = big.coordinates(&m).expect("embedded element lies in p(n)");
                assert_eq!(coords.len(), 1);
                assert!(coords[0].1.is_one());
                coords[0].0
            })
            .collect()
    }
}

/// First triple `(x, y, z)` of basis elements violating
/// `[x,[y,z]] = [[x,y],z] + (−1)^{p(x)p(y)}[y,[x,z]]`, if any.
pub fn super_jacobi_violation(alg: &PnAlgebra) -> Option<(usize, usize, usize)> {
    let d = alg.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let (ex, ey, ez) = (alg.element(x), alg.element(y), alg.element(z));
                let yz = super_bracket(&ey.matrix, ey.parity, &ez.matrix, ez.parity);
                let lhs = super_bracket(&ex.matrix, ex.parity, &yz, ey.parity + ez.parity);
                let xy = super_bracket(&ex.matrix, ex.parity, &ey.matrix, ey.parity);
                let xz = super_bracket(&ex.matrix, ex.parity, &ez.matrix, ez.parity);
                let r1 = super_bracket(&xy, ex.parity + ey.parity, &ez.matrix, ez.parity);
                let r2 = super_bracket(&ey.matrix, ey.parity, &xz, ex.parity + ez.parity).scale(&ex.parity.koszul(ey.parity));
                if lhs != &r1 + &r2 {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Basis elements of `alg` that do not preserve the odd form.
pub fn form_violations(alg: &PnAlgebra) -> Vec<usize> {
    let form = OddForm::new(alg.n());
    (0..alg.dim()).filter(|&i| !form.preserved_by(&alg.element(i).matrix, alg.element(i).parity)).collect()
}

/// The odd symmetric form `β(v_i, v_j') = δ_ij` on `V_n`.
#[derive(Clone, Debug)]
pub struct OddForm {
    pub n: usize,
    pub matrix: ExactMatrix,
}

impl OddForm {
    pub fn new(n: usize) -> Self {
        let mut matrix = ExactMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            matrix[(i, n + i)] = Rational::one();
            matrix[(n + i, i)] = Rational::one();
        }
        OddForm { n, matrix }
    }

    pub fn parity(&self, i: usize) -> Parity {
        if i < self.n {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `β(Xv, w) + (−1)^{p(X)p(v)} β(v, Xw)` over all basis pairs.
    pub fn preserved_by(&self, x: &ExactMatrix, px: Parity) -> bool {
        let dim = 2 * self.n;
        let bx = &x.transpose() * &self.matrix; // (bx)[v][w] = β(Xv, w)
        let xb = &self.matrix * x; // (xb)[v][w] = β(v, Xw)
        (0..dim).all(|v| {
            (0..dim).all(|w| {
                let s = px.koszul(self.parity(v));
                (&bx[(v, w)] + &(&s * &xb[(v, w)])).is_zero()
            })
        })
    }
}

/// The involution of gl(n|n) whose fixed points are p(n).
pub fn involution(n: usize, m: &ExactMatrix) -> ExactMatrix {
    let [a, b, c, d] = blocks_of(n, m);
    block_matrix(n, &(-&d.transpose()), &b.transpose(), &(-&c.transpose()), &(-&a.transpose()))
}

/// Bases of p(n) and of its complement `p^⊥` (the −1 eigenspace of the
/// involution), dual under the supertrace pairing: `str(X^i X_j) = δ_ij`.
#[derive(Clone, Debug)]
pub struct DualBasisPair {
    pub n: usize,
    pub p_basis: Vec<ExactMatrix>,
    pub p_perp_basis: Vec<ExactMatrix>,
    pub parities: Vec<Parity>,
    pub roots: Vec<Vec<i64>>,
}

/// Natural basis of `p^⊥`: `(E_ij, E_ji)`, antisymmetric `B`, symmetric `C`.
pub fn p_perp_natural_basis(n: usize) -> Vec<ExactMatrix> {
    let z = ExactMatrix::zeros(n, n);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(block_matrix(n, &unit(n, i, j), &z, &z, &unit(n, j, i)));
        }
    }
    for (i, j) in upper_pairs(n, true) {
        out.push(block_matrix(n, &z, &(&unit(n, i, j) - &unit(n, j, i)), &z, &z));
    }
    for (i, j) in upper_pairs(n, false) {
        let c = if i == j { unit(n, i, i) } else { &unit(n, i, j) + &unit(n, j, i) };
        out.push(block_matrix(n, &z, &z, &c, &z));
    }
    out
}

pub fn dual_basis(alg: &PnAlgebra) -> DualBasisPair {
    assert_eq!(alg.kind(), AlgebraKind::Periplectic);
    let n = alg.n();
    let perp = p_perp_natural_basis(n);
    let dim = alg.dim();
    let gram = ExactMatrix::from_fn(dim, dim, |a, j| supertrace(n, &(&perp[a] * &alg.element(j).matrix)));
    let inv = gram.inverse().expect("supertrace pairing p^⊥ × p is nondegenerate");
    let p_perp_basis = (0..dim)
        .map(|i| {
            let mut m = ExactMatrix::zeros(2 * n, 2 * n);
            for (a, y) in perp.iter().enumerate() {
                if !inv[(i, a)].is_zero() {
                    m = &m + &y.scale(&inv[(i, a)]);
                }
            }
            m
        })
        .collect();
    DualBasisPair {
        n,
        p_basis: alg.basis().iter().map(|e| e.matrix.clone()).collect(),
        p_perp_basis,
        parities: alg.basis().iter().map(|e| e.parity).collect(),
        roots: alg.basis().iter().map(|e| e.root.iter().map(|r| -r).collect()).collect(),
    }
}

/// The square-zero element `x ∈ p_{−1}` with
/// `C = Σ_{j ≤ s/2} (E_{2j−1,2j} − E_{2j,2j−1})`; it has rank `s` on `V_n`.
pub fn standard_x(alg: &PnAlgebra, s: usize) -> Result<Coords> {
    let n = alg.n();
    if s == 0 || s % 2 == 1 || s > n || alg.kind() != AlgebraKind::Periplectic {
        return Err(Error::InvalidRank { n, s });
    }
    let nn = n * n + n * (n + 1) / 2;
    let strict = upper_pairs(n, true);
    Ok((0..s / 2)
        .map(|j| {
            let k = strict.iter().position(|&p| p == (2 * j, 2 * j + 1)).unwrap();
            (nn + k, Rational::one())
        })
        .collect())
}
