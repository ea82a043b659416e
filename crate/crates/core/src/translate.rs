//! The tensor Casimir `Ω_M` on `M ⊗ V_n` and the translation functors.
//!
//! `Ω_M = Σ_i X_i|_M ⊗ X^i|_{V_n}` where `{X_i}` is the basis of p(n) and
//! `{X^i}` the dual basis of `p^⊥` under the supertrace form, with the usual
//! Koszul rule `(a ⊗ b)(m ⊗ v) = (−1)^{p(b)p(m)} am ⊗ bv`. `Θ'_k(M)` is the
//! generalized `k`-eigenspace of `Ω_M` and `Θ_k = Π^k Θ'_k`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Subspace};
use crate::pn::{dual_basis, AlgebraKind, DualBasisPair, PnAlgebra};
use crate::rep::{Character, PModule};

/// `Ω_M` restricted to each weight space of `M ⊗ V_n` (it preserves weight
/// and parity).
#[derive(Clone, Debug)]
pub struct Casimir {
    pub tensor: PModule,
    /// `(m, v) ↦` global index of `m ⊗ v` in `tensor`, as `m·dim V + v`.
    pub tensor_map: Vec<usize>,
    pub blocks: Vec<ExactMatrix>,
}

/// The dual basis is taken with respect to `½·str`, i.e. twice the
/// supertrace-dual basis; with plain `str` every eigenvalue of `Ω` on
/// `V_n ⊗ V_n` would be `±1/2`.
pub const CASIMIR_SCALE: i64 = 2;

/// Dense matrices of the dual basis elements on `V_n` in the global basis of
/// the natural module.
fn dual_basis_on_natural(alg: &Arc<PnAlgebra>, pair: &DualBasisPair) -> (PModule, Vec<ExactMatrix>) {
    let (v, map) = PModule::natural_with_map(alg.clone());
    let d = v.dim();
    let scale = Rational::from_int(CASIMIR_SCALE);
    let mats = pair
        .p_perp_basis
        .iter()
        .map(|m| {
            let mut g = ExactMatrix::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    g[(map[r], map[c])] = &scale * &m[(r, c)];
                }
            }
            g
        })
        .collect();
    (v, mats)
}

impl Casimir {
    pub fn new(module: &PModule) -> Result<Casimir> {
        let alg = module.algebra().clone();
        if alg.kind() != AlgebraKind::Periplectic {
            return Err(Error::AlgebraMismatch);
        }
        let pair = dual_basis(&alg);
        let (v, duals) = dual_basis_on_natural(&alg, &pair);
        let (tensor, tensor_map) = module.tensor_with_map(&v)?;
        let dv = v.dim();
        let mut blocks: Vec<ExactMatrix> = tensor.blocks().iter().map(|b| ExactMatrix::zeros(b.dim, b.dim)).collect();
        for (i, xi) in duals.iter().enumerate() {
            let pi = alg.element(i).parity;
            for (a, block) in module.blocks().iter().enumerate() {
                let Some(piece) = module.piece(i, a) else { continue };
                let sign = pi.koszul(block.parity);
                let target = module.block(piece.target);
                for u in 0..dv {
                    for w in 0..dv {
                        let c = &xi[(w, u)];
                        if c.is_zero() {
                            continue;
                        }
                        let c = &sign * c;
                        for m in 0..block.dim {
                            let src = tensor_map[(block.offset + m) * dv + u];
                            let tb = tensor.block_of(src);
                            let toff = tensor.block(tb).offset;
                            for m2 in 0..target.dim {
                                let a_val = &piece.matrix[(m2, m)];
                                if a_val.is_zero() {
                                    continue;
                                }
                                let dst = tensor_map[(target.offset + m2) * dv + w];
                                debug_assert_eq!(tensor.block_of(dst), tb);
                                blocks[tb][(dst - toff, src - toff)].add_mul(a_val, &c);
                            }
                        }
                    }
                }
            }
        }
        Ok(Casimir { tensor, tensor_map, blocks })
    }

    /// Dense matrix of `Ω_M` in the global basis of `M ⊗ V_n`.
    pub fn matrix(&self) -> ExactMatrix {
        let d = self.tensor.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for (b, block) in self.tensor.blocks().iter().enumerate() {
            m.set_block(block.offset, block.offset, &self.blocks[b]);
        }
        m
    }

    /// Largest entry of `[Ω, ρ(x)]` over all basis elements `x`; zero iff
    /// `Ω` is a module endomorphism.
    pub fn equivariance_defect(&self) -> Rational {
        let mut worst = Rational::zero();
        for x in 0..self.tensor.algebra().dim() {
            for b in 0..self.tensor.blocks().len() {
                if let Some(p) = self.tensor.piece(x, b) {
                    let lhs = &self.blocks[p.target] * &p.matrix;
                    let rhs = &p.matrix * &self.blocks[b];
                    worst = worst.max((&lhs - &rhs).max_abs());
                }
            }
        }
        worst
    }

    /// Per-block generalized eigenspaces for every eigenvalue. Fails if some
    /// eigenvalue is not an integer (the eigenspaces then do not exhaust the block).
    pub fn eigenspaces(&self) -> Result<BTreeMap<i64, Vec<Subspace>>> {
        let nb = self.blocks.len();
        let mut out: BTreeMap<i64, Vec<Subspace>> = BTreeMap::new();
        for (b, m) in self.blocks.iter().enumerate() {
            let mut total = 0;
            for k in m.integer_eigenvalues() {
                let s = m.generalized_eigenspace_subspace(k);
                total += s.dim();
                out.entry(k).or_insert_with(|| {
                    self.tensor.blocks().iter().map(|bl| Subspace::zero(bl.dim)).collect::<Vec<_>>()
                })[b] = s;
            }
            if total != m.rows() {
                return Err(Error::NonIntegerEigenvalue(self.tensor.block(b).weight.clone()));
            }
        }
        debug_assert!(out.values().all(|v| v.len() == nb));
        Ok(out)
    }

    pub fn eigenvalues(&self) -> Result<BTreeSet<i64>> {
        Ok(self.eigenspaces()?.into_keys().collect())
    }
}

/// All nonzero `Θ'_k(M)` at once, keyed by `k`.
pub fn theta_prime_all(module: &PModule) -> Result<BTreeMap<i64, PModule>> {
    let cas = Casimir::new(module)?;
    let spaces = cas.eigenspaces()?;
    spaces.into_iter().map(|(k, s)| Ok((k, cas.tensor.submodule(&s)?))).collect()
}

/// `Θ'_k(M)`, the generalized `k`-eigenspace of `Ω_M`.
pub fn theta_prime(module: &PModule, k: i64) -> Result<PModule> {
    Ok(theta_prime_all(module)?.remove(&k).unwrap_or_else(|| PModule::zero(module.algebra().clone())))
}

/// `Θ_k(M) = Π^k Θ'_k(M)`.
pub fn theta(module: &PModule, k: i64) -> Result<PModule> {
    Ok(theta_prime(module, k)?.parity_shift(k))
}

/// `Θ_I = Θ_{i_1} ∘ … ∘ Θ_{i_k}`: the last letter is applied first.
pub fn theta_word(module: &PModule, word: &[i64]) -> Result<PModule> {
    let mut m = module.clone();
    for &i in word.iter().rev() {
        if m.is_zero() {
            break;
        }
        m = theta(&m, i)?;
    }
    Ok(m)
}

/// Both sides of `Hom(Θ_k M, N) ≅ Hom(M, Θ_{k−1} N)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub k: i64,
    pub left: usize,
    pub right: usize,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn check_adjunction(m: &PModule, n: &PModule, k: i64) -> Result<AdjunctionReport> {
    let left = theta(m, k)?.hom_space(n)?.len();
    let right = m.hom_space(&theta(n, k - 1)?)?.len();
    Ok(AdjunctionReport { k, left, right })
}

/// Outcome of the duality checks `Θ_k(M*) ≅ Π(Θ_{−k} M)*`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub k: i64,
    /// Characters of `Θ_k(M*)` and `Π(Θ_{−k} M)*` agree.
    pub characters_agree: bool,
    /// Transporting `Ω_M^*` along `M* ⊗ V ≅ (M ⊗ V)*` and `η` gives `−Ω_{M*}`.
    pub casimir_identity: bool,
    /// `η ∘ X^i = −X^i ∘ η` for every dual basis element.
    pub eta_anticommutes: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.characters_agree && self.casimir_identity && self.eta_anticommutes
    }
}

/// The isomorphism `η: V* → ΠV` induced by the odd form, as a dense matrix
/// from the global basis of `V*` to the global basis of `V` (forgetting the
/// parity shift), together with `V*` itself.
pub fn eta(alg: &Arc<PnAlgebra>) -> Result<(PModule, ExactMatrix)> {
    let v = PModule::natural(alg.clone());
    let vd = v.dual();
    let (pv, to_shifted) = v.parity_shift_with_map(1);
    let homs = vd.hom_space(&pv)?;
    if homs.len() != 1 {
        return Err(Error::HomDimension { expected: 1, found: homs.len() });
    }
    let h = &homs[0];
    let d = v.dim();
    let e = ExactMatrix::from_fn(d, d, |r, c| h[(to_shifted[r], c)].clone());
    Ok((vd, e))
}

pub fn check_duality_theorem(module: &PModule, k: i64) -> Result<DualityReport> {
    let alg = module.algebra().clone();
    let dual = module.dual();
    let lhs = theta(&dual, k)?.character();
    let rhs = theta(module, -k)?.dual().parity_shift(1).character();
    let characters_agree = lhs == rhs;
    let casimir_identity = duality_casimir_identity(module)?;
    let eta_anticommutes = eta_anticommutes(&alg)?;
    Ok(DualityReport { k, characters_agree, casimir_identity, eta_anticommutes })
}

/// `η ∘ X^i = −X^i ∘ η`, where `X^i` acts on `V*` by the dual action.
pub fn eta_anticommutes(alg: &Arc<PnAlgebra>) -> Result<bool> {
    let (vd, e) = eta(alg)?;
    let pair = dual_basis(alg);
    let (v, duals) = dual_basis_on_natural(alg, &pair);
    let (_, dmap) = v.dual_with_map();
    debug_assert_eq!(vd.dim(), v.dim());
    let d = v.dim();
    for (i, xi) in duals.iter().enumerate() {
        let p = pair.parities[i];
        // dual action on V*: (X f)(v) = −(−1)^{p(X)p(f)} f(Xv)
        let mut on_dual = ExactMatrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let sign = -&p.koszul(v.parity_of(b));
                on_dual[(dmap[a], dmap[b])] = &sign * &xi[(b, a)];
            }
        }
        if &e * &on_dual != -&(xi * &e) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Transports `Ω_M^*` to `M* ⊗ V` and compares with `−Ω_{M*}`.
pub fn duality_casimir_identity(module: &PModule) -> Result<bool> {
    let alg = module.algebra().clone();
    let cas = Casimir::new(module)?;
    let omega = cas.matrix();
    let (dual, dual_map) = module.dual_with_map();
    let dual_cas = Casimir::new(&dual)?;
    let dual_omega = dual_cas.matrix();
    let (vd, e) = eta(&alg)?;
    let v = PModule::natural(alg.clone());
    let (_, vd_map) = v.dual_with_map();
    debug_assert_eq!(vd.dim(), v.dim());
    let (dm, dv) = (module.dim(), v.dim());
    let pair_index = |f: usize, u: usize| f * dv + u;
    // φ on M* ⊗ V* in pair coordinates (dual global, V* global)
    let mut phi = ExactMatrix::zeros(dm * dv, dm * dv);
    for m in 0..dm {
        for u in 0..dv {
            let t = cas.tensor_map[m * dv + u];
            let s = module.parity_of(m).koszul(v.parity_of(u));
            for m2 in 0..dm {
                for u2 in 0..dv {
                    let t2 = cas.tensor_map[m2 * dv + u2];
                    let val = &omega[(t, t2)];
                    if val.is_zero() {
                        continue;
                    }
                    let s2 = module.parity_of(m2).koszul(v.parity_of(u2));
                    phi[(pair_index(dual_map[m2], vd_map[u2]), pair_index(dual_map[m], vd_map[u]))] = &(&s * &s2) * val;
                }
            }
        }
    }
    let lift = ExactMatrix::identity(dm).kron(&e);
    let lift_inv = lift.inverse().ok_or_else(|| Error::Invalid("η is not invertible".into()))?;
    let phi_prime = &(&lift * &phi) * &lift_inv;
    // −Ω_{M*} in pair coordinates (dual global, V global)
    let mut target = ExactMatrix::zeros(dm * dv, dm * dv);
    for a in 0..dm * dv {
        for b in 0..dm * dv {
            let val = &dual_omega[(dual_cas.tensor_map[a], dual_cas.tensor_map[b])];
            if !val.is_zero() {
                target[(a, b)] = -val;
            }
        }
    }
    Ok(phi_prime == target)
}

/// Summary of one translation.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaSummary {
    pub input_dims: (usize, usize),
    pub word: Vec<i64>,
    pub output_dims: (usize, usize),
    pub output_sdim: i64,
    pub character: Character,
}

impl ThetaSummary {
    pub fn new(input: &PModule, word: &[i64], output: &PModule) -> Self {
        ThetaSummary {
            input_dims: input.dims(),
            word: word.to_vec(),
            output_dims: output.dims(),
            output_sdim: output.superdimension(),
            character: output.character(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::Parity;

    fn char_of(even: &[[i64; 2]], odd: &[[i64; 2]]) -> Character {
        let mut c = Character::zero();
        for w in even {
            c.add_term(w.to_vec(), Parity::Even, 1);
        }
        for w in odd {
            c.add_term(w.to_vec(), Parity::Odd, 1);
        }
        c
    }

    // super exterior square of V_2: ∧²(V_0) ⊕ V_0⊗V_1 ⊕ S²(V_1)
    fn wedge2() -> Character {
        char_of(&[[1, 1], [-2, 0], [-1, -1], [0, -2]], &[[0, 0], [0, 0], [1, -1], [-1, 1]])
    }

    // super symmetric square of V_2: S²(V_0) ⊕ V_0⊗V_1 ⊕ ∧²(V_1)
    fn sym2() -> Character {
        char_of(&[[2, 0], [1, 1], [0, 2], [-1, -1]], &[[0, 0], [0, 0], [1, -1], [-1, 1]])
    }

    #[test]
    fn casimir_is_equivariant_with_integer_spectrum() {
        for n in 1..=3 {
            let alg = PnAlgebra::build(n);
            let v = PModule::natural(alg.clone());
            let corpus = [PModule::trivial(alg.clone()), v.clone(), v.dual(), v.tensor(&v).unwrap()];
            for m in &corpus {
                let cas = Casimir::new(m).unwrap();
                assert!(cas.equivariance_defect().is_zero(), "n={n}");
                let spaces = cas.eigenspaces().unwrap();
                let total: usize = spaces.values().flat_map(|v| v.iter().map(Subspace::dim)).sum();
                assert_eq!(total, m.dim() * v.dim());
            }
        }
    }

    #[test]
    fn casimir_on_trivial_module_is_zero() {
        let alg = PnAlgebra::build(2);
        let cas = Casimir::new(&PModule::trivial(alg)).unwrap();
        assert!(cas.matrix().max_abs().is_zero());
    }

    #[test]
    fn natural_square_splits_into_wedge_and_sym() {
        let v = PModule::natural(PnAlgebra::build(2));
        let all = theta_prime_all(&v).unwrap();
        assert_eq!(all.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(all[&-1].character(), wedge2());
        assert_eq!(all[&1].character(), sym2());
        assert_eq!(all[&-1].dims(), (4, 4));
    }

    #[test]
    fn theta_shifts_odd_eigenvalues() {
        let v = PModule::natural(PnAlgebra::build(2));
        assert_eq!(theta(&v, -1).unwrap().character(), wedge2().parity_shift());
        assert_eq!(theta(&v, 1).unwrap().character(), sym2().parity_shift());
        assert!(theta(&v, 0).unwrap().is_zero());
        assert!(theta(&v, 3).unwrap().is_zero());
    }

    #[test]
    fn theta_word_applies_rightmost_first() {
        let v = PModule::natural(PnAlgebra::build(2));
        let one = theta_word(&v, &[-1]).unwrap();
        assert_eq!(one.character(), theta(&v, -1).unwrap().character());
        let two = theta_word(&v, &[0, -1]).unwrap();
        assert_eq!(two.character(), theta(&theta(&v, -1).unwrap(), 0).unwrap().character());
        assert_eq!(theta_word(&v, &[]).unwrap().character(), v.character());
    }

    #[test]
    fn adjunction_on_small_corpus() {
        let alg = PnAlgebra::build(2);
        let triv = PModule::trivial(alg.clone());
        let v = PModule::natural(alg);
        for k in -1..=1 {
            for (a, b) in [(&triv, &v), (&v, &triv), (&v, &v), (&triv, &triv)] {
                assert!(check_adjunction(a, b, k).unwrap().holds(), "k={k}");
            }
        }
        let t = theta(&triv, 0).unwrap();
        assert!(check_adjunction(&triv, &t, 0).unwrap().holds());
    }

    #[test]
    fn duality_for_natural_and_trivial() {
        for n in 1..=2 {
            let alg = PnAlgebra::build(n);
            for m in [PModule::trivial(alg.clone()), PModule::natural(alg.clone())] {
                for k in -2..=2 {
                    assert!(check_duality_theorem(&m, k).unwrap().holds(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn eta_is_odd_and_unique() {
        let alg = PnAlgebra::build(3);
        let (vd, e) = eta(&alg).unwrap();
        assert!(e.inverse().is_some());
        let v = PModule::natural(alg);
        let (_, dmap) = v.dual_with_map();
        for a in 0..v.dim() {
            for b in 0..v.dim() {
                if !e[(b, dmap[a])].is_zero() {
                    assert_ne!(vd.parity_of(dmap[a]), v.parity_of(b));
                }
            }
        }
    }
}
