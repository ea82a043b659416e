//! The Duflo-Serganova functor `DS_x(M) = Ker(x|_M)/Im(x|_M)` for the standard
//! square-zero `x ∈ p_{−1}` of rank `s`, as a module over the copy of
//! `p(n − s)` on the last `n − s` coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Subspace};
use crate::groth::Peeler;
use crate::pn::{standard_x, Coords, PnAlgebra};
use crate::rep::{simple, BlockKey, Echelon, Layout, PModule, Piece};
use crate::translate::{theta, Casimir};
use crate::weights::{kappa, Weight};

/// The data fixing one DS functor `F_n → F_{n−s}`.
#[derive(Clone, Debug)]
pub struct DSContext {
    big: Arc<PnAlgebra>,
    small: Arc<PnAlgebra>,
    s: usize,
    x: Coords,
    embedding: Vec<usize>,
}

impl DSContext {
    /// Builds the context and checks `[x, x] = 0`, `rank x = s` on `V_n` and
    /// `[x, Y] = 0` for every `Y` in the embedded `p(n − s)`.
    pub fn new(big: Arc<PnAlgebra>, s: usize) -> Result<Self> {
        let n = big.n();
        let x = standard_x(&big, s)?;
        let small = PnAlgebra::build(n - s);
        let embedding = small.embedding_into(&big, s);
        let ctx = DSContext { big, small, s, x, embedding };
        ctx.check_invariants()?;
        Ok(ctx)
    }

    fn check_invariants(&self) -> Result<()> {
        let xx = self.big.bracket(&self.x, &self.x)?;
        if xx.iter().any(|(_, c)| !c.is_zero()) {
            return Err(Error::BracketLaw("x".into(), "x".into()));
        }
        if self.big.matrix_of(&self.x).rank() != self.s {
            return Err(Error::InvalidRank { n: self.n(), s: self.s });
        }
        for &e in &self.embedding {
            let b = self.big.bracket(&self.x, &[(e, Rational::one())])?;
            if b.iter().any(|(_, c)| !c.is_zero()) {
                return Err(Error::BracketLaw("x".into(), self.big.element(e).name.clone()));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.big.n()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn x(&self) -> &Coords {
        &self.x
    }

    pub fn big(&self) -> &Arc<PnAlgebra> {
        &self.big
    }

    pub fn small(&self) -> &Arc<PnAlgebra> {
        &self.small
    }

    /// For every basis element of `p(n − s)`, its index in `p(n)`.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }
}

/// Vectors of `M` with the same weight on the last `n − s` coordinates and
/// the same parity; `x` maps such a group into the group of opposite parity.
#[derive(Clone, Debug)]
struct Group {
    key: BlockKey,
    /// Global indices of `M` spanned by the group, block after block.
    globals: Vec<usize>,
    kernel: Subspace,
    image: Subspace,
    /// Representatives in group coordinates of a basis of `kernel / image`.
    reps: ExactMatrix,
    /// Quotient coordinates of a kernel vector, as a `q × dim` matrix.
    proj: ExactMatrix,
}

/// `DS_x(M)` together with the data relating it to `M`.
#[derive(Clone, Debug)]
pub struct DsImage {
    pub module: PModule,
    groups: Vec<Group>,
    /// For each block of `module`, the group it comes from.
    block_group: Vec<usize>,
    source_dim: usize,
}

impl DsImage {
    /// Representative in `M` (dense, global coordinates) of basis vector `i`.
    pub fn representative(&self, i: usize) -> Vec<Rational> {
        let b = self.module.block_of(i);
        let g = &self.groups[self.block_group[b]];
        let col = i - self.module.block(b).offset;
        let mut v = vec![Rational::zero(); self.source_dim];
        for (r, &gi) in g.globals.iter().enumerate() {
            v[gi] = g.reps[(r, col)].clone();
        }
        v
    }

    /// Class in `DS_x(M)` of a vector of `Ker x` (dense, global coordinates).
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.module.dim()];
        for (b, block) in self.module.blocks().iter().enumerate() {
            let g = &self.groups[self.block_group[b]];
            let local: Vec<Rational> = g.globals.iter().map(|&i| v[i].clone()).collect();
            for (k, c) in g.proj.mul_vec(&local).into_iter().enumerate() {
                out[block.offset + k] = c;
            }
        }
        out
    }

    /// Dense matrix whose columns are the representatives.
    pub fn representatives(&self) -> ExactMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.module.dim()).map(|i| self.representative(i)).collect();
        ExactMatrix::from_columns(self.source_dim, &cols)
    }

    /// Dense matrix of [`DsImage::project`].
    pub fn projection(&self) -> ExactMatrix {
        let mut p = ExactMatrix::zeros(self.module.dim(), self.source_dim);
        for (b, block) in self.module.blocks().iter().enumerate() {
            let g = &self.groups[self.block_group[b]];
            for r in 0..g.proj.rows() {
                for (c, &gi) in g.globals.iter().enumerate() {
                    p[(block.offset + r, gi)] = g.proj[(r, c)].clone();
                }
            }
        }
        p
    }
}

/// Dense matrix of `Σ c·ρ(e)` from group `src` to group `dst`.
fn group_matrix(
    module: &PModule,
    coords: &[(usize, Rational)],
    src: &[usize],
    dst: Option<&[usize]>,
    position: &[(usize, usize)],
    dst_group: Option<usize>,
) -> Result<ExactMatrix> {
    let rows = dst.map_or(0, <[usize]>::len);
    let mut m = ExactMatrix::zeros(rows, src.len());
    for (col, &gi) in src.iter().enumerate() {
        for (e, c) in coords {
            for (t, val) in module.column(*e, gi) {
                if val.is_zero() {
                    continue;
                }
                let (tg, tpos) = position[t];
                if Some(tg) != dst_group {
                    return Err(Error::Invalid("action leaves the expected weight group".into()));
                }
                m[(tpos, col)].add_mul(c, &val);
            }
        }
    }
    Ok(m)
}

/// `DS_x(M)` with its relation to `M`.
pub fn ds_image(module: &PModule, ctx: &DSContext) -> Result<DsImage> {
    if module.algebra().n() != ctx.n() || module.algebra().dim() != ctx.big.dim() {
        return Err(Error::AlgebraMismatch);
    }
    let s = ctx.s;
    let mut by_key: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
    for block in module.blocks() {
        by_key
            .entry((block.weight[s..].to_vec(), block.parity))
            .or_default()
            .extend(block.offset..block.offset + block.dim);
    }
    let keys: Vec<BlockKey> = by_key.keys().cloned().collect();
    let key_index: BTreeMap<BlockKey, usize> = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let globals: Vec<Vec<usize>> = by_key.into_values().collect();
    let mut position = vec![(0, 0); module.dim()];
    for (g, gl) in globals.iter().enumerate() {
        for (p, &i) in gl.iter().enumerate() {
            position[i] = (g, p);
        }
    }
    let partner = |g: usize| -> Option<usize> {
        let (w, p) = &keys[g];
        key_index.get(&(w.clone(), !*p)).copied()
    };
    // x on every group, into its partner
    let mut xmats = Vec::with_capacity(keys.len());
    for g in 0..keys.len() {
        let pg = partner(g);
        xmats.push(group_matrix(module, &ctx.x, &globals[g], pg.map(|p| globals[p].as_slice()), &position, pg)?);
    }
    let mut groups = Vec::with_capacity(keys.len());
    for g in 0..keys.len() {
        let d = globals[g].len();
        let kernel = if xmats[g].rows() == 0 { Subspace::full(d) } else { xmats[g].kernel_subspace() };
        let image = match partner(g) {
            Some(p) => xmats[p].image_subspace(),
            None => Subspace::zero(d),
        };
        if !kernel.contains(&image) {
            return Err(Error::Invalid("x does not square to zero on the module".into()));
        }
        let mut ech = Echelon::new(d);
        for c in image.basis.columns() {
            ech.insert(&c);
        }
        let mut quotient_cols = Vec::new();
        for c in kernel.basis.columns() {
            if ech.insert(&c) {
                quotient_cols.push(c);
            }
        }
        let reps = ExactMatrix::from_columns(d, &quotient_cols);
        let proj = if kernel.dim() == 0 {
            ExactMatrix::zeros(0, d)
        } else {
            // coordinates with respect to [image | reps], read off at the pivots
            let both = image.basis.hstack(&reps);
            let span = Subspace::span(&both);
            let t = span.coordinates_of(&both).expect("columns lie in their span");
            let t_inv = t.inverse().expect("independent columns");
            let sel = ExactMatrix::from_fn(span.dim(), d, |r, c| {
                if span.pivots[r] == c {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            });
            let full = &t_inv * &sel;
            let rows: Vec<usize> = (image.dim()..full.rows()).collect();
            full.select(&rows, &(0..d).collect::<Vec<_>>())
        };
        groups.push(Group { key: keys[g].clone(), globals: globals[g].clone(), kernel, image, reps, proj });
    }
    let layout = Layout::new(groups.iter().map(|g| (g.key.clone(), g.reps.cols())).collect());
    let block_group: Vec<usize> = layout.blocks.iter().map(|b| key_index[&b.key()]).collect();
    let small = ctx.small.clone();
    let mut actions = Vec::with_capacity(small.dim());
    for (j, &e) in ctx.embedding.iter().enumerate() {
        let el = small.element(j);
        let mut pieces: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
        for (b, block) in layout.blocks.iter().enumerate() {
            let g = block_group[b];
            let tkey: BlockKey =
                (block.weight.iter().zip(&el.root).map(|(a, r)| a + r).collect(), block.parity + el.parity);
            let tg = key_index.get(&tkey).copied();
            let y = group_matrix(
                module,
                &[(e, Rational::one())],
                &globals[g],
                tg.map(|t| globals[t].as_slice()),
                &position,
                tg,
            )?;
            let Some(tg) = tg else { continue };
            let grp = &groups[g];
            let tgt = &groups[tg];
            let name = || el.name.clone();
            if !tgt.kernel.contains(&Subspace::span(&(&y * &grp.kernel.basis))) {
                return Err(Error::NotSubmodule(format!("{} does not preserve Ker x", name())));
            }
            if !tgt.image.contains(&Subspace::span(&(&y * &grp.image.basis))) {
                return Err(Error::NotSubmodule(format!("{} does not preserve Im x", name())));
            }
            let Some(&tb) = layout.index.get(&tkey) else { continue };
            let m = &tgt.proj * &(&y * &grp.reps);
            if !m.is_zero() {
                pieces[b] = Some(Piece { target: tb, matrix: m });
            }
        }
        actions.push(pieces);
    }
    let out = PModule::from_layout(small, layout, actions);
    Ok(DsImage { module: out, groups, block_group, source_dim: module.dim() })
}

/// `DS_x(M)` as a `p(n − s)`-module.
pub fn ds(module: &PModule, ctx: &DSContext) -> Result<PModule> {
    Ok(ds_image(module, ctx)?.module)
}

/// `sdim DS_x(M) = sdim M`.
pub fn check_sdim_preserved(module: &PModule, ctx: &DSContext) -> Result<bool> {
    Ok(ds(module, ctx)?.superdimension() == module.superdimension())
}

/// `ch DS_x(M ⊗ N) = ch (DS_x M ⊗ DS_x N)`.
pub fn check_monoidal(m: &PModule, n: &PModule, ctx: &DSContext) -> Result<bool> {
    let lhs = ds(&m.tensor(n)?, ctx)?.character();
    let rhs = ds(m, ctx)?.tensor(&ds(n, ctx)?)?.character();
    Ok(lhs == rhs)
}

/// An isomorphism `V_{n−s} → DS_x(V_n)`, unique up to scalar.
pub fn natural_identification(ctx: &DSContext) -> Result<(DsImage, ExactMatrix)> {
    let dv = ds_image(&PModule::natural(ctx.big.clone()), ctx)?;
    let homs = PModule::natural(ctx.small.clone()).hom_space(&dv.module)?;
    if homs.len() != 1 {
        return Err(Error::HomDimension { expected: 1, found: homs.len() });
    }
    let phi = homs.into_iter().next().unwrap();
    if phi.inverse().is_none() {
        return Err(Error::Invalid("DS(V_n) is not isomorphic to V_{n−s}".into()));
    }
    Ok((dv, phi))
}

/// Transports `Ω^{(n−s)}` on `DS_x(M) ⊗ V_{n−s}` along
/// `[a] ⊗ φ(u) ↦ [a ⊗ φ(u)]` and compares with the operator `Ω^{(n)}_M`
/// induces on `DS_x(M ⊗ V_n)`.
pub fn check_casimir_lemma(module: &PModule, ctx: &DSContext) -> Result<bool> {
    if ctx.small.n() == 0 {
        return Err(Error::InvalidRank { n: ctx.n(), s: ctx.s });
    }
    let (dv, phi) = natural_identification(ctx)?;
    let dm = ds_image(module, ctx)?;
    let big_cas = Casimir::new(module)?;
    let dt = ds_image(&big_cas.tensor, ctx)?;
    let omega = big_cas.matrix();
    let reps = dt.representatives();
    let moved = &omega * &reps;
    let x_on_t = big_cas.tensor.action_of(&ctx.x);
    if !(&x_on_t * &moved).is_zero() {
        return Err(Error::Invalid("Ω does not preserve Ker x".into()));
    }
    let induced = &dt.projection() * &moved;
    let small_cas = Casimir::new(&dm.module)?;
    let small_omega = small_cas.matrix();
    let v_dim = ctx.big.n() * 2;
    let sv_dim = ctx.small.n() * 2;
    let dv_reps: Vec<Vec<Rational>> = (0..dv.module.dim()).map(|b| dv.representative(b)).collect();
    let dm_reps: Vec<Vec<Rational>> = (0..dm.module.dim()).map(|a| dm.representative(a)).collect();
    let size = dt.module.dim();
    if size != small_cas.tensor.dim() {
        return Ok(false);
    }
    let mut psi = ExactMatrix::zeros(size, size);
    for (a, ra) in dm_reps.iter().enumerate() {
        for u in 0..sv_dim {
            let mut vec = vec![Rational::zero(); big_cas.tensor.dim()];
            for (b, rb) in dv_reps.iter().enumerate() {
                let c = &phi[(b, u)];
                if c.is_zero() {
                    continue;
                }
                for (m, am) in ra.iter().enumerate() {
                    if am.is_zero() {
                        continue;
                    }
                    let cam = c * am;
                    for (v, bv) in rb.iter().enumerate() {
                        if bv.is_zero() {
                            continue;
                        }
                        vec[big_cas.tensor_map[m * v_dim + v]].add_mul(&cam, bv);
                    }
                }
            }
            let col = dt.project(&vec);
            let j = small_cas.tensor_map[a * sv_dim + u];
            for (i, c) in col.into_iter().enumerate() {
                psi[(i, j)] = c;
            }
        }
    }
    if psi.inverse().is_none() {
        return Ok(false);
    }
    Ok(&psi * &small_omega == &induced * &psi)
}

/// Outcome of comparing `DS_x Θ_k M` with `Θ_k DS_x M`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaCommutation {
    pub k: i64,
    pub characters_agree: bool,
    pub casimir_lemma: bool,
}

impl ThetaCommutation {
    pub fn holds(&self) -> bool {
        self.characters_agree && self.casimir_lemma
    }
}

pub fn check_theta_commutation(module: &PModule, k: i64, ctx: &DSContext) -> Result<ThetaCommutation> {
    let lhs = ds(&theta(module, k)?, ctx)?.character();
    let rhs = theta(&ds(module, ctx)?, k)?.character();
    let casimir_lemma = check_casimir_lemma(module, ctx)?;
    Ok(ThetaCommutation { k, characters_agree: lhs == rhs, casimir_lemma })
}

/// Block labels of the constituents of `DS_x L(λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockPreservation {
    pub lambda: Weight,
    pub kappa: i64,
    pub image_blocks: Vec<i64>,
    pub image_dims: (usize, usize),
}

impl BlockPreservation {
    /// Every constituent lies in block `κ(λ)`, and the image vanishes when
    /// `|κ(λ)| = n`.
    pub fn holds(&self, n: usize) -> bool {
        let all_same = self.image_blocks.iter().all(|&k| k == self.kappa);
        if self.kappa.unsigned_abs() as usize == n {
            all_same && self.image_dims == (0, 0)
        } else {
            all_same
        }
    }
}

pub fn block_preservation(lambda: &Weight, ctx: &DSContext, peeler: &mut Peeler) -> Result<BlockPreservation> {
    let l = simple(ctx.big.clone(), lambda)?;
    let image = ds(&l, ctx)?;
    let image_blocks = peeler.constituent_blocks(&image)?;
    Ok(BlockPreservation { lambda: lambda.clone(), kappa: kappa(lambda), image_blocks, image_dims: image.dims() })
}

pub fn check_block_preservation(lambda: &Weight, ctx: &DSContext) -> Result<bool> {
    let mut peeler = Peeler::new(ctx.small.clone());
    Ok(block_preservation(lambda, ctx, &mut peeler)?.holds(ctx.n()))
}

/// Summary of one DS computation.
#[derive(Clone, Debug, Serialize)]
pub struct DsSummary {
    pub n: usize,
    pub s: usize,
    pub input_dims: (usize, usize),
    pub output_dims: (usize, usize),
    pub input_sdim: i64,
    pub output_sdim: i64,
    pub blocks: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::costandard;
    use crate::weights::{dominant_weights, is_typical};

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn context_invariants() {
        for n in 2..=4 {
            let big = PnAlgebra::build(n);
            for s in (2..=n).step_by(2) {
                let ctx = DSContext::new(big.clone(), s).unwrap();
                assert_eq!(ctx.small().n(), n - s);
            }
            assert!(DSContext::new(big.clone(), 1).is_err());
        }
    }

    #[test]
    fn natural_module_goes_to_natural_module() {
        for n in 2..=4 {
            let big = PnAlgebra::build(n);
            let ctx = DSContext::new(big.clone(), 2).unwrap();
            let d = ds(&PModule::natural(big), &ctx).unwrap();
            assert_eq!(d.character(), PModule::natural(ctx.small().clone()).character());
            d.validate().unwrap();
        }
    }

    #[test]
    fn ds_of_v3_has_one_one_dims() {
        let big = PnAlgebra::build(3);
        let ctx = DSContext::new(big.clone(), 2).unwrap();
        let d = ds(&PModule::natural(big), &ctx).unwrap();
        assert_eq!(d.dims(), (1, 1));
    }

    #[test]
    fn trivial_goes_to_trivial() {
        let big = PnAlgebra::build(3);
        let ctx = DSContext::new(big.clone(), 2).unwrap();
        let d = ds(&PModule::trivial(big), &ctx).unwrap();
        assert_eq!(d.character(), PModule::trivial(ctx.small().clone()).character());
    }

    #[test]
    fn typical_costandard_is_annihilated() {
        for n in 2..=3 {
            let big = PnAlgebra::build(n);
            let ctx = DSContext::new(big.clone(), 2).unwrap();
            for l in dominant_weights(n, 2).into_iter().filter(is_typical) {
                let m = costandard(big.clone(), &l).unwrap();
                assert!(ds(&m, &ctx).unwrap().is_zero(), "{l}");
            }
        }
        let big = PnAlgebra::build(2);
        let ctx = DSContext::new(big.clone(), 2).unwrap();
        assert!(ds(&costandard(big, &w(&[-3, -2])).unwrap(), &ctx).unwrap().is_zero());
    }

    #[test]
    fn sdim_and_tensor_compatibility() {
        let big = PnAlgebra::build(3);
        let ctx = DSContext::new(big.clone(), 2).unwrap();
        let v = PModule::natural(big.clone());
        let t = PModule::trivial(big);
        let vv = v.tensor(&v).unwrap();
        for m in [&v, &t, &vv] {
            assert!(check_sdim_preserved(m, &ctx).unwrap());
        }
        assert!(check_monoidal(&t, &t, &ctx).unwrap());
        assert!(check_monoidal(&v, &t, &ctx).unwrap());
        assert!(check_monoidal(&v, &v, &ctx).unwrap());
    }

    #[test]
    fn casimir_lemma_and_theta_commutation() {
        let big = PnAlgebra::build(3);
        let ctx = DSContext::new(big.clone(), 2).unwrap();
        let v = PModule::natural(big.clone());
        assert!(check_casimir_lemma(&v, &ctx).unwrap());
        assert!(check_casimir_lemma(&PModule::trivial(big), &ctx).unwrap());
        for k in -1..=1 {
            assert!(check_theta_commutation(&v, k, &ctx).unwrap().holds(), "k={k}");
        }
        let wedge = ds(&theta(&v, -1).unwrap(), &ctx).unwrap();
        assert_eq!(wedge.dims(), (1, 1));
    }

    #[test]
    fn blocks_are_preserved() {
        let big = PnAlgebra::build(3);
        let ctx = DSContext::new(big, 2).unwrap();
        let mut peeler = Peeler::new(ctx.small().clone());
        let r = block_preservation(&w(&[-1, 0, 0]), &ctx, &mut peeler).unwrap();
        assert_eq!(r.kappa, -1);
        assert!(r.holds(3));
        assert!(check_block_preservation(&w(&[0, 0, 0]), &ctx).unwrap());
        let ctx2 = DSContext::new(PnAlgebra::build(2), 2).unwrap();
        assert!(check_block_preservation(&w(&[-3, -2]), &ctx2).unwrap());
    }
}
