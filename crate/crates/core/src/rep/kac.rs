//! Kac modules and simple modules.
//!
//! Highest weight vectors are killed by `p_{−1}` and by the raising operators
//! `E_ji` (`j > i`), so dominant means `λ_1 ≤ … ≤ λ_n`.
//!
//! * `Δ(λ)`: induced from `p_0 ⊕ p_{−1}`, basis `∧(p_1) ⊗ L⁰(λ)`.
//! * `∇(λ)`: coinduced from `p_0 ⊕ p_1`; realized as the dual of the module
//!   induced from `p_0 ⊕ p_1` with `L⁰(λ^∨)`, `λ^∨ = (−λ_n, …, −λ_1)`, so it
//!   is free over `∧(p_{−1})`.
//! * `L(λ)`: the submodule of `∇(λ)` generated by its (even, one-dimensional)
//!   λ-weight space, i.e. the socle of `∇(λ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::pn::{AlgebraKind, Part, PnAlgebra};
use crate::rep::gl::gl_simple;
use crate::rep::module::{BlockKey, PModule, SparseVec};
use crate::superspace::Parity;
use crate::weights::{Weight, WEIGHT_BOUND};

type Vector = BTreeMap<usize, Rational>;

fn axpy(acc: &mut Vector, c: &Rational, v: &Vector) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        e.add_mul(c, x);
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// `Ind_{p_0 ⊕ p_kept}^{p(n)} W` for a gl(n)-module `W` on which `p_kept`
/// acts by zero. Basis `y_S ⊗ w` with `S` an ascending subset of the
/// complementary odd part, index `S·dim W + w`.
struct Induced<'a> {
    alg: &'a PnAlgebra,
    w: &'a PModule,
    comp: Vec<usize>,
    comp_pos: Vec<Option<usize>>,
    kept: Part,
}

impl Induced<'_> {
    fn index(&self, mask: u32, w: usize) -> usize {
        mask as usize * self.w.dim() + w
    }

    /// `y_t · v`.
    fn left_mul(&self, t: usize, v: &Vector) -> Vector {
        let dw = self.w.dim();
        let mut out = Vector::new();
        for (i, c) in v {
            let (mask, w) = ((i / dw) as u32, i % dw);
            if (mask >> t) & 1 == 1 {
                continue;
            }
            let below = (mask & ((1 << t) - 1)).count_ones();
            let c = if below.is_multiple_of(2) { c.clone() } else { -c };
            axpy(&mut out, &c, &Vector::from([(self.index(mask | (1 << t), w), Rational::one())]));
        }
        out
    }

    /// Action of basis element `x` on `y_mask ⊗ w_j`.
    fn act(&self, x: usize, mask: u32, j: usize) -> Vector {
        let part = self.alg.element(x).part;
        if let Some(t) = self.comp_pos[x] {
            return self.left_mul(t, &Vector::from([(self.index(mask, j), Rational::one())]));
        }
        let mut out = Vector::new();
        if part == Part::Zero {
            // [x, y_s] replaces each factor in turn
            let bits: Vec<usize> = (0..self.comp.len()).filter(|s| (mask >> s) & 1 == 1).collect();
            for &s in &bits {
                for (z, c) in self.alg.bracket_basis(x, self.comp[s]) {
                    let u = self.comp_pos[*z].expect("[p_0, p_{±1}] ⊆ p_{±1}");
                    let rest = mask & !(1 << s);
                    if (rest >> u) & 1 == 1 {
                        continue;
                    }
                    let (lo, hi) = if u < s { (u, s) } else { (s, u) };
                    let between = if hi > lo + 1 { (rest >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1) } else { 0 };
                    let c = if between.count_ones() % 2 == 0 { c.clone() } else { -c };
                    axpy(&mut out, &c, &Vector::from([(self.index(rest | (1 << u), j), Rational::one())]));
                }
            }
            for (i, c) in self.w.column(x, j) {
                axpy(&mut out, &c, &Vector::from([(self.index(mask, i), Rational::one())]));
            }
            return out;
        }
        debug_assert_eq!(part, self.kept);
        if mask == 0 {
            return out;
        }
        // x y_s1 R = [x, y_s1] R − y_s1 (x R)
        let s1 = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << s1);
        for (z, c) in self.alg.bracket_basis(x, self.comp[s1]) {
            axpy(&mut out, c, &self.act(*z, rest, j));
        }
        let tail = self.left_mul(s1, &self.act(x, rest, j));
        axpy(&mut out, &Rational::from_int(-1), &tail);
        out
    }
}

/// `Ind_{p_0 ⊕ p_kept} W`.
pub fn induce(algebra: Arc<PnAlgebra>, w: &PModule, kept: Part) -> Result<PModule> {
    if algebra.kind() != AlgebraKind::Periplectic || w.algebra().kind() != AlgebraKind::GeneralLinear {
        return Err(Error::AlgebraMismatch);
    }
    if w.dims().1 != 0 {
        return Err(Error::Invalid("inducing from a gl(n)-module with odd part".into()));
    }
    let other = if kept == Part::Plus1 { Part::Minus1 } else { Part::Plus1 };
    let comp = algebra.indices_in_part(other);
    let mut comp_pos = vec![None; algebra.dim()];
    for (k, &x) in comp.iter().enumerate() {
        comp_pos[x] = Some(k);
    }
    let ind = Induced { alg: &algebra, w, comp: comp.clone(), comp_pos, kept };
    let dw = w.dim();
    let mut vectors: Vec<BlockKey> = Vec::with_capacity((1 << comp.len()) * dw);
    for mask in 0u32..(1 << comp.len()) {
        let mut base = vec![0; algebra.n()];
        for (s, &y) in comp.iter().enumerate() {
            if (mask >> s) & 1 == 1 {
                for (b, r) in base.iter_mut().zip(&algebra.element(y).root) {
                    *b += r;
                }
            }
        }
        let parity = Parity::from_int(mask.count_ones() as i64);
        for j in 0..dw {
            let weight = base.iter().zip(w.weight_of(j)).map(|(a, b)| a + b).collect();
            vectors.push((weight, parity));
        }
    }
    let (module, _) = PModule::from_sparse(algebra.clone(), &vectors, |x, col| -> SparseVec {
        let (mask, j) = ((col / dw) as u32, col % dw);
        ind.act(x, mask, j).into_iter().collect()
    })?;
    Ok(module)
}

fn check_weight(algebra: &PnAlgebra, lambda: &Weight) -> Result<()> {
    if lambda.n() != algebra.n() {
        return Err(Error::WeightLength {
            weight: lambda.entries().to_vec(),
            expected: algebra.n(),
            found: lambda.n(),
        });
    }
    if lambda.entries().iter().any(|l| l.abs() > WEIGHT_BOUND) {
        return Err(Error::WeightOutOfRange { weight: lambda.entries().to_vec(), bound: WEIGHT_BOUND });
    }
    Ok(())
}

/// The standard (thick Kac) module `Δ(λ)`, of dimension `2^{n(n+1)/2}·dim L⁰(λ)`.
pub fn standard(algebra: Arc<PnAlgebra>, lambda: &Weight) -> Result<PModule> {
    check_weight(&algebra, lambda)?;
    let l0 = gl_simple(PnAlgebra::gl(algebra.n()), lambda)?;
    induce(algebra, &l0, Part::Minus1)
}

/// `λ^∨ = (−λ_n, …, −λ_1)`, the highest weight of `L⁰(λ)*`.
pub fn gl_dual_weight(lambda: &Weight) -> Weight {
    Weight::new(lambda.entries().iter().rev().map(|x| -x).collect()).expect("reversal keeps dominance")
}

/// The costandard (thin Kac) module `∇(λ)`, of dimension `2^{n(n−1)/2}·dim L⁰(λ)`.
pub fn costandard(algebra: Arc<PnAlgebra>, lambda: &Weight) -> Result<PModule> {
    check_weight(&algebra, lambda)?;
    let l0 = gl_simple(PnAlgebra::gl(algebra.n()), &gl_dual_weight(lambda))?;
    Ok(induce(algebra, &l0, Part::Plus1)?.dual())
}

/// The simple module `L(λ)` with even highest weight vector.
pub fn simple(algebra: Arc<PnAlgebra>, lambda: &Weight) -> Result<PModule> {
    let nabla = costandard(algebra, lambda)?;
    let top = nabla
        .block_index(lambda.entries(), Parity::Even)
        .ok_or_else(|| Error::Invalid(format!("∇{lambda} has no even vector of weight {lambda}")))?;
    if nabla.block(top).dim != 1 || nabla.block_index(lambda.entries(), Parity::Odd).is_some() {
        return Err(Error::Invalid(format!("weight space {lambda} of ∇{lambda} is not one-dimensional")));
    }
    Ok(nabla.generated_submodule(&[(top, vec![Rational::one()])]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::gl::weyl_dimension;
    use crate::weights::{dominant_weights, dominates};

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kac_dimensions() {
        for n in 1..=3 {
            let alg = PnAlgebra::build(n);
            for l in dominant_weights(n, 1) {
                let d = weyl_dimension(&l) as usize;
                let delta = standard(alg.clone(), &l).unwrap();
                let nabla = costandard(alg.clone(), &l).unwrap();
                assert_eq!(delta.dim(), d << (n * (n + 1) / 2));
                assert_eq!(nabla.dim(), d << (n * (n - 1) / 2));
                if n >= 2 {
                    assert_eq!(delta.superdimension(), 0);
                    assert_eq!(nabla.superdimension(), 0);
                }
            }
        }
    }

    #[test]
    fn kac_modules_satisfy_bracket_law() {
        for n in 1..=3 {
            let alg = PnAlgebra::build(n);
            for l in [Weight::zero(n), w(&{
                let mut v = vec![0; n];
                v[0] = -1;
                v
            })] {
                standard(alg.clone(), &l).unwrap().validate().unwrap();
                costandard(alg.clone(), &l).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn canonical_map_is_unique() {
        for n in 1..=2 {
            let alg = PnAlgebra::build(n);
            for l in dominant_weights(n, 2) {
                let delta = standard(alg.clone(), &l).unwrap();
                let nabla = costandard(alg.clone(), &l).unwrap();
                let homs = delta.hom_space(&nabla).unwrap();
                assert_eq!(homs.len(), 1, "Hom(Δ{l}, ∇{l})");
                // the image of the canonical map is the simple module
                let image = homs[0].rank();
                assert_eq!(image, simple(alg.clone(), &l).unwrap().dim());
            }
        }
    }

    #[test]
    fn simple_examples() {
        let alg = PnAlgebra::build(2);
        let triv = simple(alg.clone(), &w(&[0, 0])).unwrap();
        assert_eq!(triv.dims(), (1, 0));
        let v = PModule::natural(alg.clone());
        let l = simple(alg.clone(), &w(&[-1, 0])).unwrap();
        assert_eq!(l.character(), v.character().parity_shift());
        assert_eq!(l.character(), v.parity_shift(1).character());
        // L(−2ε_1) is a quotient of ∧²V_2, whose character is known explicitly
        let l2 = simple(alg, &w(&[-2, 0])).unwrap();
        let mut wedge = crate::rep::Character::zero();
        for (wt, p) in [([1, 1], Parity::Even), ([-2, 0], Parity::Even), ([-1, -1], Parity::Even), ([0, -2], Parity::Even)] {
            wedge.add_term(wt.to_vec(), p, 1);
        }
        for (wt, p) in [([0, 0], Parity::Odd), ([0, 0], Parity::Odd), ([1, -1], Parity::Odd), ([-1, 1], Parity::Odd)] {
            wedge.add_term(wt.to_vec(), p, 1);
        }
        assert!(wedge.sub(&l2.character()).is_effective() || wedge == l2.character());
        assert_eq!(l2.character().multiplicity(&[-2, 0], Parity::Even), 1);
    }

    #[test]
    fn simples_are_highest_weight_and_irreducible() {
        for n in 1..=3 {
            let alg = PnAlgebra::build(n);
            let bound = if n == 3 { 1 } else { 2 };
            for l in dominant_weights(n, bound) {
                let s = simple(alg.clone(), &l).unwrap();
                s.validate().unwrap();
                let ch = s.character();
                assert_eq!(ch.multiplicity(l.entries(), Parity::Even), 1);
                assert_eq!(ch.multiplicity(l.entries(), Parity::Odd), 0);
                for wt in ch.weights() {
                    assert!(wt == l.entries() || !dominates(&wt, l.entries()).unwrap(), "{wt:?} above {l}");
                }
                if n <= 2 {
                    assert_eq!(s.hom_space(&s).unwrap().len(), 1);
                }
            }
        }
    }

    #[test]
    fn n1_simples_are_one_dimensional() {
        let alg = PnAlgebra::build(1);
        for c in -4..=4 {
            assert_eq!(simple(alg.clone(), &w(&[c])).unwrap().dims(), (1, 0));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let alg = PnAlgebra::build(2);
        assert!(simple(alg.clone(), &w(&[0, 9])).is_err());
        assert!(simple(alg, &w(&[0])).is_err());
    }
}
