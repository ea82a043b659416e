//! Simple gl(n)-modules, built as cyclic submodules of tensor products of
//! exterior powers of `ℂⁿ`, twisted by a power of the determinant.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};
use crate::pn::{a_index, AlgebraKind, PnAlgebra};
use crate::rep::module::{BlockKey, Layout, PModule, Piece};
use crate::superspace::Parity;
use crate::weights::Weight;

/// `∧^k ℂⁿ` with basis the ascending `k`-subsets.
pub fn exterior_power(algebra: Arc<PnAlgebra>, k: usize) -> PModule {
    assert_eq!(algebra.kind(), AlgebraKind::GeneralLinear);
    let n = algebra.n();
    let subsets: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
    let vectors: Vec<BlockKey> =
        subsets.iter().map(|m| ((0..n).map(|i| ((m >> i) & 1) as i64).collect(), Parity::Even)).collect();
    let position = |m: u32| subsets.iter().position(|&s| s == m).unwrap();
    let (module, _) = PModule::from_sparse(algebra, &vectors, |x, j| {
        let (i, l) = (x / n, x % n);
        let s = subsets[j];
        if (s >> l) & 1 == 0 {
            return Vec::new();
        }
        if i == l {
            return vec![(j, Rational::one())];
        }
        if (s >> i) & 1 == 1 {
            return Vec::new();
        }
        // e_l replaced by e_i, then moved past the entries strictly between
        let (lo, hi) = if i < l { (i, l) } else { (l, i) };
        let between = (s >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
        let sign = if between.count_ones().is_multiple_of(2) { 1 } else { -1 };
        vec![(position(s & !(1 << l) | (1 << i)), Rational::from_int(sign))]
    })
    .expect("exterior powers are weight modules");
    module
}

/// Tensor by the character `det^c`: every weight moves by `(c, …, c)`.
pub fn twist_by_determinant(module: &PModule, c: i64) -> PModule {
    let alg = module.algebra().clone();
    assert_eq!(alg.kind(), AlgebraKind::GeneralLinear);
    if c == 0 {
        return module.clone();
    }
    let n = alg.n();
    let layout = Layout::new(
        module.blocks().iter().map(|b| ((b.weight.iter().map(|w| w + c).collect(), b.parity), b.dim)).collect(),
    );
    let mut actions = Vec::with_capacity(alg.dim());
    for x in 0..alg.dim() {
        let mut pieces: Vec<Option<Piece>> = (0..module.blocks().len()).map(|b| module.piece(x, b).cloned()).collect();
        if x / n == x % n {
            for (b, block) in module.blocks().iter().enumerate() {
                let add = ExactMatrix::scalar(block.dim, &Rational::from_int(c));
                let m = match &pieces[b] {
                    Some(p) => &p.matrix + &add,
                    None => add,
                };
                pieces[b] = Some(Piece { target: b, matrix: m });
            }
        }
        actions.push(pieces);
    }
    PModule::from_layout(alg, layout, actions)
}

/// Weyl dimension `Π_{i<j} (λ̄_j − λ̄_i)/(j − i)` of the simple gl(n)-module.
pub fn weyl_dimension(lambda: &Weight) -> u64 {
    let s = lambda.shifted();
    let mut d = Rational::one();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            d = &d * &Rational::new(s[j] - s[i], (j - i) as i64);
        }
    }
    d.to_i64().expect("Weyl dimension is an integer") as u64
}

/// The simple gl(n)-module `L⁰(λ)` (dominant: `λ_1 ≤ … ≤ λ_n`).
///
/// `λ − λ_1` is a sum of fundamental weights `ω_k = ε_{n−k+1} + … + ε_n`;
/// the module is grown one fundamental factor at a time, keeping only the
/// submodule generated by the tensor product of highest weight vectors.
pub fn gl_simple(algebra: Arc<PnAlgebra>, lambda: &Weight) -> Result<PModule> {
    if algebra.kind() != AlgebraKind::GeneralLinear {
        return Err(Error::AlgebraMismatch);
    }
    let n = algebra.n();
    if lambda.n() != n {
        return Err(Error::WeightLength { weight: lambda.entries().to_vec(), expected: n, found: lambda.n() });
    }
    let mut current = PModule::trivial(algebra.clone());
    if n == 0 {
        return Ok(current);
    }
    let l = lambda.entries();
    let mu: Vec<i64> = l.iter().map(|x| x - l[0]).collect();
    let mut highest = vec![0; n];
    let fundamentals: Vec<PModule> = (1..=n).map(|k| exterior_power(algebra.clone(), k)).collect();
    for k in 1..=n {
        let upper = mu[n - k];
        let lower = if n - k == 0 { 0 } else { mu[n - k - 1] };
        for _ in 0..(upper - lower) {
            let factor = &fundamentals[k - 1];
            let product = current.tensor(factor)?;
            for h in highest.iter_mut().skip(n - k) {
                *h += 1;
            }
            let b = product.block_index(&highest, Parity::Even).expect("highest weight occurs in the product");
            debug_assert_eq!(product.block(b).dim, 1);
            current = product.generated_submodule(&[(b, vec![Rational::one()])]);
        }
    }
    let simple = twist_by_determinant(&current, l[0]);
    let expected = weyl_dimension(lambda) as usize;
    if simple.dim() != expected {
        return Err(Error::Dimension(format!(
            "gl({n}) simple of highest weight {lambda} has dimension {}, Weyl formula gives {expected}",
            simple.dim()
        )));
    }
    Ok(simple)
}

/// `E_ii` index in gl(n), equal to its index in p(n).
pub fn gl_cartan(n: usize, i: usize) -> usize {
    a_index(n, i, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exterior_powers_are_modules() {
        for n in 1..=4 {
            let gl = PnAlgebra::gl(n);
            for k in 0..=n {
                let m = exterior_power(gl.clone(), k);
                m.validate().unwrap();
                assert_eq!(m.dim(), (1..=k).fold(1, |acc, i| acc * (n - i + 1) / i));
            }
        }
    }

    #[test]
    fn natural_gl_module_matches_first_exterior_power() {
        let gl = PnAlgebra::gl(3);
        let nat = PModule::natural(gl.clone());
        nat.validate().unwrap();
        assert_eq!(nat.character(), exterior_power(gl, 1).character());
    }

    #[test]
    fn simple_dimensions() {
        assert_eq!(gl_simple(PnAlgebra::gl(2), &w(&[0, 0])).unwrap().dim(), 1);
        assert_eq!(gl_simple(PnAlgebra::gl(2), &w(&[-1, 0])).unwrap().dim(), 2);
        assert_eq!(gl_simple(PnAlgebra::gl(3), &w(&[-1, 0, 0])).unwrap().dim(), 3);
        assert_eq!(gl_simple(PnAlgebra::gl(3), &w(&[-3, 0, 3])).unwrap().dim(), 64);
    }

    #[test]
    fn simples_sweep() {
        for n in 1..=3 {
            let gl = PnAlgebra::gl(n);
            for l in crate::weights::dominant_weights(n, 2) {
                let m = gl_simple(gl.clone(), &l).unwrap();
                m.validate().unwrap();
                let top = m.block_index(l.entries(), Parity::Even).unwrap();
                assert_eq!(m.block(top).dim, 1);
                // every weight lies below λ in the gl(n) dominance order
                for b in m.blocks() {
                    let mut partial = 0;
                    for i in (0..n).rev() {
                        partial += l.entries()[i] - b.weight[i];
                        assert!(partial >= 0);
                    }
                    assert_eq!(partial, 0);
                }
                // simplicity: the endomorphisms are scalars
                assert_eq!(m.hom_space(&m).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn weyl_formula() {
        assert_eq!(weyl_dimension(&w(&[0, 0])), 1);
        assert_eq!(weyl_dimension(&w(&[-1, 0])), 2);
        assert_eq!(weyl_dimension(&w(&[-1, 0, 0])), 3);
        assert_eq!(weyl_dimension(&w(&[0, 1, 2])), 8);
    }
}
