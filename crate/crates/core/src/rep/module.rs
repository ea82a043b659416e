use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational, Subspace};
use crate::pn::{AlgebraKind, PnAlgebra};
use crate::rep::Character;
use crate::superspace::{Parity, SuperSpace};

/// Key of a weight space of fixed parity.
pub type BlockKey = (Vec<i64>, Parity);

/// Sparse vector in global coordinates.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub weight: Vec<i64>,
    pub parity: Parity,
    pub offset: usize,
    pub dim: usize,
}

impl Block {
    pub fn key(&self) -> BlockKey {
        (self.weight.clone(), self.parity)
    }
}

/// The action of one basis element on one block, landing in block `target`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub target: usize,
    pub matrix: ExactMatrix,
}

/// A finite-dimensional module over p(n) (or gl(n)), stored weight space by
/// weight space: the basis is grouped into blocks of constant weight and
/// parity, and every basis element of the algebra acts by one dense matrix
/// per source block.
#[derive(Clone, Debug)]
pub struct PModule {
    algebra: Arc<PnAlgebra>,
    blocks: Vec<Block>,
    index: HashMap<BlockKey, usize>,
    /// `actions[x][b]`: action of basis element `x` on block `b`.
    actions: Vec<Vec<Option<Piece>>>,
}

fn shift_key(key: &BlockKey, root: &[i64], parity: Parity) -> BlockKey {
    (key.0.iter().zip(root).map(|(a, b)| a + b).collect(), key.1 + parity)
}

pub(crate) struct Layout {
    pub blocks: Vec<Block>,
    pub index: HashMap<BlockKey, usize>,
}

impl Layout {
    pub fn new(mut keys: Vec<(BlockKey, usize)>) -> Layout {
        keys.retain(|(_, d)| *d > 0);
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        let mut blocks = Vec::with_capacity(keys.len());
        let mut index = HashMap::new();
        let mut offset = 0;
        for ((weight, parity), dim) in keys {
            index.insert((weight.clone(), parity), blocks.len());
            blocks.push(Block { weight, parity, offset, dim });
            offset += dim;
        }
        Layout { blocks, index }
    }
}

impl PModule {
    pub(crate) fn from_layout(algebra: Arc<PnAlgebra>, layout: Layout, actions: Vec<Vec<Option<Piece>>>) -> PModule {
        debug_assert_eq!(actions.len(), algebra.dim());
        PModule { algebra, blocks: layout.blocks, index: layout.index, actions }
    }

    /// Builds a module from a basis of weight vectors and sparse action
    /// columns. Returns the module and, for every input vector, its global
    /// index in the block ordering.
    pub fn from_sparse<F>(algebra: Arc<PnAlgebra>, vectors: &[BlockKey], mut column: F) -> Result<(PModule, Vec<usize>)>
    where
        F: FnMut(usize, usize) -> SparseVec,
    {
        let n = algebra.n();
        if let Some((w, _)) = vectors.iter().find(|(w, _)| w.len() != n) {
            return Err(Error::Dimension(format!("weight {w:?} for rank {n}")));
        }
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]).then(a.cmp(&b)));
        let mut counts: BTreeMap<BlockKey, usize> = BTreeMap::new();
        for v in vectors {
            *counts.entry(v.clone()).or_insert(0) += 1;
        }
        let layout = Layout::new(counts.into_iter().collect());
        let mut global = vec![0; vectors.len()];
        let mut local = vec![0; vectors.len()];
        let mut fill: Vec<usize> = vec![0; layout.blocks.len()];
        for &v in &order {
            let b = layout.index[&vectors[v]];
            local[v] = fill[b];
            global[v] = layout.blocks[b].offset + fill[b];
            fill[b] += 1;
        }
        let mut actions = Vec::with_capacity(algebra.dim());
        for x in 0..algebra.dim() {
            let e = algebra.element(x);
            let mut pieces: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
            for (j, key) in vectors.iter().enumerate() {
                let col = column(x, j);
                if col.iter().all(|(_, c)| c.is_zero()) {
                    continue;
                }
                let target_key = shift_key(key, &e.root, e.parity);
                let Some(&t) = layout.index.get(&target_key) else {
                    return Err(Error::Invalid(format!("{} maps a vector of weight {:?} outside the module", e.name, key.0)));
                };
                let sb = layout.index[key];
                let piece = pieces[sb].get_or_insert_with(|| Piece {
                    target: t,
                    matrix: ExactMatrix::zeros(layout.blocks[t].dim, layout.blocks[sb].dim),
                });
                for (i, c) in col {
                    if c.is_zero() {
                        continue;
                    }
                    if vectors[i] != target_key {
                        return Err(Error::Invalid(format!(
                            "{} does not shift weights by its root on vector {j}",
                            e.name
                        )));
                    }
                    piece.matrix[(local[i], local[j])] = c;
                }
            }
            actions.push(pieces);
        }
        Ok((PModule { algebra, blocks: layout.blocks, index: layout.index, actions }, global))
    }

    pub fn zero(algebra: Arc<PnAlgebra>) -> PModule {
        let d = algebra.dim();
        PModule { algebra, blocks: Vec::new(), index: HashMap::new(), actions: vec![Vec::new(); d] }
    }

    /// The one-dimensional even module with zero action.
    pub fn trivial(algebra: Arc<PnAlgebra>) -> PModule {
        let n = algebra.n();
        Self::from_sparse(algebra, &[(vec![0; n], Parity::Even)], |_, _| Vec::new()).unwrap().0
    }

    /// The natural module `V_n` (or `ℂⁿ` for gl(n)). The returned index map
    /// sends the defining basis `v_1..v_n, v_1'..v_n'` to global indices.
    pub fn natural_with_map(algebra: Arc<PnAlgebra>) -> (PModule, Vec<usize>) {
        let n = algebra.n();
        let unit = |i: usize, s: i64| {
            let mut w = vec![0; n];
            w[i] = s;
            w
        };
        let mut vectors: Vec<BlockKey> = (0..n).map(|i| (unit(i, 1), Parity::Even)).collect();
        let size = match algebra.kind() {
            AlgebraKind::Periplectic => {
                vectors.extend((0..n).map(|i| (unit(i, -1), Parity::Odd)));
                2 * n
            }
            AlgebraKind::GeneralLinear => n,
        };
        let alg = algebra.clone();
        Self::from_sparse(algebra, &vectors, |x, j| {
            let m = &alg.element(x).matrix;
            (0..size).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect()
        })
        .expect("natural representation is a weight module")
    }

    pub fn natural(algebra: Arc<PnAlgebra>) -> PModule {
        Self::natural_with_map(algebra).0
    }

    pub fn algebra(&self) -> &Arc<PnAlgebra> {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &Block {
        &self.blocks[b]
    }

    pub fn block_index(&self, weight: &[i64], parity: Parity) -> Option<usize> {
        self.index.get(&(weight.to_vec(), parity)).copied()
    }

    pub fn piece(&self, x: usize, b: usize) -> Option<&Piece> {
        self.actions[x].get(b).and_then(Option::as_ref)
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        let mut d = (0, 0);
        for b in &self.blocks {
            match b.parity {
                Parity::Even => d.0 += b.dim,
                Parity::Odd => d.1 += b.dim,
            }
        }
        d
    }

    pub fn superdimension(&self) -> i64 {
        let (e, o) = self.dims();
        e as i64 - o as i64
    }

    /// Block containing the global index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.partition_point(|b| b.offset + b.dim <= i)
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        self.blocks[self.block_of(i)].parity
    }

    pub fn weight_of(&self, i: usize) -> &[i64] {
        &self.blocks[self.block_of(i)].weight
    }

    /// Underlying superspace, basis labelled by global index and weight.
    pub fn space(&self) -> SuperSpace {
        let mut basis = Vec::with_capacity(self.dim());
        for b in &self.blocks {
            for k in 0..b.dim {
                basis.push((format!("m{}{:?}", b.offset + k, b.weight), b.parity));
            }
        }
        SuperSpace::new(basis).expect("labels carry the global index")
    }

    pub fn character(&self) -> Character {
        let mut ch = Character::zero();
        for b in &self.blocks {
            ch.add_term(b.weight.clone(), b.parity, b.dim as i64);
        }
        ch
    }

    /// Sparse column `j` of the action of `x`.
    pub fn column(&self, x: usize, j: usize) -> SparseVec {
        let b = self.block_of(j);
        let Some(p) = self.piece(x, b) else {
            return Vec::new();
        };
        let l = j - self.blocks[b].offset;
        let off = self.blocks[p.target].offset;
        (0..p.matrix.rows())
            .filter(|&r| !p.matrix[(r, l)].is_zero())
            .map(|r| (off + r, p.matrix[(r, l)].clone()))
            .collect()
    }

    /// Dense action matrix of basis element `x`.
    pub fn action_matrix(&self, x: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim(), self.dim());
        for (b, piece) in self.actions[x].iter().enumerate() {
            if let Some(p) = piece {
                m.set_block(self.blocks[p.target].offset, self.blocks[b].offset, &p.matrix);
            }
        }
        m
    }

    /// Dense action of a linear combination of basis elements.
    pub fn action_of(&self, coords: &[(usize, Rational)]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim(), self.dim());
        for (x, c) in coords {
            m = &m + &self.action_matrix(*x).scale(c);
        }
        m
    }

    /// Checks that every Cartan element `h_i` acts on each block by the
    /// scalar `w_i`.
    pub fn check_weights(&self) -> Result<()> {
        for i in 0..self.n() {
            let h = self.algebra.cartan(i);
            for (b, block) in self.blocks.iter().enumerate() {
                let expect = ExactMatrix::scalar(block.dim, &Rational::from_int(block.weight[i]));
                let ok = match self.piece(h, b) {
                    Some(p) => p.target == b && p.matrix == expect,
                    None => block.weight[i] == 0,
                };
                if !ok {
                    return Err(Error::NonIntegralCartan { index: i, weight: block.weight.clone(), parity: block.parity });
                }
            }
        }
        Ok(())
    }

    /// `x ∘ y` restricted to block `b`.
    fn compose_on_block(&self, x: usize, y: usize, b: usize) -> Option<Piece> {
        let py = self.piece(y, b)?;
        let px = self.piece(x, py.target)?;
        Some(Piece { target: px.target, matrix: &px.matrix * &py.matrix })
    }

    /// The bracket law `ρ([x,y]) = ρ(x)ρ(y) − (−1)^{p(x)p(y)} ρ(y)ρ(x)` for
    /// every ordered pair of basis elements.
    pub fn check_bracket_law(&self) -> Result<()> {
        let alg = &self.algebra;
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let sign = alg.element(x).parity.koszul(alg.element(y).parity);
                for b in 0..self.blocks.len() {
                    let mut acc: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
                    let add = |p: Option<Piece>, c: &Rational, acc: &mut BTreeMap<usize, ExactMatrix>| {
                        if let Some(p) = p {
                            let m = p.matrix.scale(c);
                            match acc.get_mut(&p.target) {
                                Some(e) => *e = &*e + &m,
                                None => {
                                    acc.insert(p.target, m);
                                }
                            }
                        }
                    };
                    add(self.compose_on_block(x, y, b), &Rational::one(), &mut acc);
                    add(self.compose_on_block(y, x, b), &-&sign, &mut acc);
                    for (z, c) in alg.bracket_basis(x, y) {
                        add(self.piece(*z, b).cloned(), &-c, &mut acc);
                    }
                    if acc.values().any(|m| !m.is_zero()) {
                        return Err(Error::BracketLaw(alg.element(x).name.clone(), alg.element(y).name.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Weights and bracket law together.
    pub fn validate(&self) -> Result<()> {
        self.check_weights()?;
        self.check_bracket_law()
    }

    fn same_algebra(&self, other: &PModule) -> Result<()> {
        if self.algebra.n() != other.algebra.n() || self.algebra.kind() != other.algebra.kind() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `self ⊗ other` with `x(m ⊗ v) = xm ⊗ v + (−1)^{p(x)p(m)} m ⊗ xv`.
    pub fn tensor(&self, other: &PModule) -> Result<PModule> {
        Ok(self.tensor_with_map(other)?.0)
    }

    /// Tensor product together with the map `i·dim(other) + j ↦` global
    /// index of `m_i ⊗ n_j`.
    pub fn tensor_with_map(&self, other: &PModule) -> Result<(PModule, Vec<usize>)> {
        self.same_algebra(other)?;
        let mut groups: BTreeMap<BlockKey, Vec<(usize, usize)>> = BTreeMap::new();
        for (bm, m) in self.blocks.iter().enumerate() {
            for (bn, nb) in other.blocks.iter().enumerate() {
                let key = shift_key(&m.key(), &nb.weight, nb.parity);
                groups.entry(key).or_default().push((bm, bn));
            }
        }
        let layout = Layout::new(
            groups
                .iter()
                .map(|(k, pairs)| (k.clone(), pairs.iter().map(|&(a, b)| self.blocks[a].dim * other.blocks[b].dim).sum()))
                .collect(),
        );
        // pair -> (tensor block, offset inside it)
        let mut place: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (key, pairs) in &groups {
            let t = layout.index[key];
            let mut off = 0;
            for &(a, b) in pairs {
                place.insert((a, b), (t, off));
                off += self.blocks[a].dim * other.blocks[b].dim;
            }
        }
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for x in 0..self.algebra.dim() {
            let px = self.algebra.element(x).parity;
            let mut pieces: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
            for (&(a, b), &(t, off)) in &place {
                let (da, db) = (self.blocks[a].dim, other.blocks[b].dim);
                let mut put = |target_pair: (usize, usize), m: ExactMatrix| {
                    let (tt, toff) = place[&target_pair];
                    let piece = pieces[t].get_or_insert_with(|| Piece {
                        target: tt,
                        matrix: ExactMatrix::zeros(layout.blocks[tt].dim, layout.blocks[t].dim),
                    });
                    debug_assert_eq!(piece.target, tt);
                    piece.matrix.add_block(toff, off, &m);
                };
                if let Some(p) = self.piece(x, a) {
                    put((p.target, b), p.matrix.kron(&ExactMatrix::identity(db)));
                }
                if let Some(p) = other.piece(x, b) {
                    let sign = px.koszul(self.blocks[a].parity);
                    put((a, p.target), ExactMatrix::identity(da).kron(&p.matrix).scale(&sign));
                }
            }
            actions.push(pieces);
        }
        let mut map = vec![0; self.dim() * other.dim()];
        for (&(a, b), &(t, off)) in &place {
            let (ba, bb) = (&self.blocks[a], &other.blocks[b]);
            let base = layout.blocks[t].offset + off;
            for i in 0..ba.dim {
                for j in 0..bb.dim {
                    map[(ba.offset + i) * other.dim() + bb.offset + j] = base + i * bb.dim + j;
                }
            }
        }
        Ok((PModule { algebra: self.algebra.clone(), blocks: layout.blocks, index: layout.index, actions }, map))
    }

    /// The dual module, `(x·f)(m) = −(−1)^{p(x)p(f)} f(x·m)`, in the dual basis.
    pub fn dual(&self) -> PModule {
        self.dual_with_map().0
    }

    /// Dual module and the map sending global index `i` (the functional
    /// dual to basis vector `i`) to its global index in the dual module.
    pub fn dual_with_map(&self) -> (PModule, Vec<usize>) {
        let layout = Layout::new(
            self.blocks.iter().map(|b| ((b.weight.iter().map(|w| -w).collect(), b.parity), b.dim)).collect(),
        );
        let to_dual: Vec<usize> =
            self.blocks.iter().map(|b| layout.index[&(b.weight.iter().map(|w| -w).collect(), b.parity)]).collect();
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for x in 0..self.algebra.dim() {
            let px = self.algebra.element(x).parity;
            let mut pieces: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
            for (c, piece) in self.actions[x].iter().enumerate() {
                if let Some(p) = piece {
                    let sign = -&px.koszul(self.blocks[p.target].parity);
                    pieces[to_dual[p.target]] = Some(Piece { target: to_dual[c], matrix: p.matrix.transpose().scale(&sign) });
                }
            }
            actions.push(pieces);
        }
        let mut map = vec![0; self.dim()];
        for (b, block) in self.blocks.iter().enumerate() {
            for k in 0..block.dim {
                map[block.offset + k] = layout.blocks[to_dual[b]].offset + k;
            }
        }
        (PModule { algebra: self.algebra.clone(), blocks: layout.blocks, index: layout.index, actions }, map)
    }

    /// `Π^k M`, realized as `M ⊗ Πℂ`: same matrices, parities flipped for odd `k`.
    pub fn parity_shift(&self, k: i64) -> PModule {
        self.parity_shift_with_map(k).0
    }

    /// `Π^k M` and the map from old to new global indices.
    pub fn parity_shift_with_map(&self, k: i64) -> (PModule, Vec<usize>) {
        if k.rem_euclid(2) == 0 {
            return (self.clone(), (0..self.dim()).collect());
        }
        let layout = Layout::new(self.blocks.iter().map(|b| ((b.weight.clone(), !b.parity), b.dim)).collect());
        let to_new: Vec<usize> = self.blocks.iter().map(|b| layout.index[&(b.weight.clone(), !b.parity)]).collect();
        let actions = self
            .actions
            .iter()
            .map(|pieces| {
                let mut out: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
                for (b, p) in pieces.iter().enumerate() {
                    if let Some(p) = p {
                        out[to_new[b]] = Some(Piece { target: to_new[p.target], matrix: p.matrix.clone() });
                    }
                }
                out
            })
            .collect();
        let mut map = vec![0; self.dim()];
        for (b, block) in self.blocks.iter().enumerate() {
            for k in 0..block.dim {
                map[block.offset + k] = layout.blocks[to_new[b]].offset + k;
            }
        }
        (PModule { algebra: self.algebra.clone(), blocks: layout.blocks, index: layout.index, actions }, map)
    }

    /// Submodule spanned blockwise by `spaces[b]` (one subspace per block).
    pub fn submodule(&self, spaces: &[Subspace]) -> Result<PModule> {
        assert_eq!(spaces.len(), self.blocks.len());
        let layout = Layout::new(self.blocks.iter().zip(spaces).map(|(b, s)| (b.key(), s.dim())).collect());
        let to_new: Vec<Option<usize>> = self.blocks.iter().map(|b| layout.index.get(&b.key()).copied()).collect();
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for x in 0..self.algebra.dim() {
            let mut out: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
            for (b, p) in self.actions[x].iter().enumerate() {
                let (Some(p), Some(nb)) = (p, to_new[b]) else { continue };
                let image = &p.matrix * &spaces[b].basis;
                if image.is_zero() {
                    continue;
                }
                let coords = to_new[p.target]
                    .and_then(|_| spaces[p.target].coordinates_of(&image))
                    .ok_or_else(|| Error::NotSubmodule(format!("{} leaves the subspace", self.algebra.element(x).name)))?;
                out[nb] = Some(Piece { target: to_new[p.target].unwrap(), matrix: coords });
            }
            actions.push(out);
        }
        Ok(PModule { algebra: self.algebra.clone(), blocks: layout.blocks, index: layout.index, actions })
    }

    /// Quotient by the submodule spanned blockwise by `spaces`. The quotient
    /// basis is represented by the unit vectors at non-pivot rows.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<PModule> {
        assert_eq!(spaces.len(), self.blocks.len());
        let free: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .zip(spaces)
            .map(|(b, s)| (0..b.dim).filter(|r| !s.pivots.contains(r)).collect())
            .collect();
        let layout =
            Layout::new(self.blocks.iter().zip(&free).map(|(b, f)| (b.key(), f.len())).collect());
        let to_new: Vec<Option<usize>> = self.blocks.iter().map(|b| layout.index.get(&b.key()).copied()).collect();
        let mut actions = Vec::with_capacity(self.algebra.dim());
        for x in 0..self.algebra.dim() {
            let mut out: Vec<Option<Piece>> = vec![None; layout.blocks.len()];
            for (b, p) in self.actions[x].iter().enumerate() {
                let (Some(p), Some(nb)) = (p, to_new[b]) else { continue };
                let t = p.target;
                // stability of the subspace itself
                let sub_image = &p.matrix * &spaces[b].basis;
                if spaces[t].coordinates_of(&sub_image).is_none() {
                    return Err(Error::NotSubmodule(format!("{} leaves the subspace", self.algebra.element(x).name)));
                }
                let Some(nt) = to_new[t] else { continue };
                let reps = p.matrix.select(&(0..p.matrix.rows()).collect::<Vec<_>>(), &free[b]);
                let proj = project_mod(&spaces[t], &free[t], &reps);
                if !proj.is_zero() {
                    out[nb] = Some(Piece { target: nt, matrix: proj });
                }
            }
            actions.push(out);
        }
        Ok(PModule { algebra: self.algebra.clone(), blocks: layout.blocks, index: layout.index, actions })
    }

    /// Blockwise span of the submodule generated by the given vectors
    /// (each a block index and a vector in that block's coordinates).
    pub fn cyclic_span(&self, generators: &[(usize, Vec<Rational>)]) -> Vec<Subspace> {
        let mut spans: Vec<Echelon> = self.blocks.iter().map(|b| Echelon::new(b.dim)).collect();
        let mut queue: Vec<(usize, Vec<Rational>)> = Vec::new();
        for (b, v) in generators {
            if spans[*b].insert(v) {
                queue.push((*b, v.clone()));
            }
        }
        while let Some((b, v)) = queue.pop() {
            for x in 0..self.algebra.dim() {
                if let Some(p) = self.piece(x, b) {
                    let w = p.matrix.mul_vec(&v);
                    if spans[p.target].insert(&w) {
                        queue.push((p.target, w));
                    }
                }
            }
        }
        spans.into_iter().map(Echelon::into_subspace).collect()
    }

    /// Submodule generated by `generators`.
    pub fn generated_submodule(&self, generators: &[(usize, Vec<Rational>)]) -> PModule {
        let spans = self.cyclic_span(generators);
        self.submodule(&spans).expect("a cyclic span is stable")
    }

    /// Basis of the even module maps `self → target`, as dense matrices of
    /// size `target.dim() × self.dim()`.
    pub fn hom_space(&self, target: &PModule) -> Result<Vec<ExactMatrix>> {
        self.same_algebra(target)?;
        // unknowns: one dN × dM matrix per common block key
        let mut var_off: HashMap<BlockKey, usize> = HashMap::new();
        let mut nvars = 0;
        for b in &self.blocks {
            if let Some(&nb) = target.index.get(&b.key()) {
                var_off.insert(b.key(), nvars);
                nvars += target.blocks[nb].dim * b.dim;
            }
        }
        let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for x in 0..self.algebra.dim() {
            let e = self.algebra.element(x);
            for (b, block) in self.blocks.iter().enumerate() {
                let key = block.key();
                let tkey = shift_key(&key, &e.root, e.parity);
                let Some(&nt) = target.index.get(&tkey) else { continue };
                let dn_t = target.blocks[nt].dim;
                let mut eqs: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dn_t * block.dim];
                // Φ_{t} · A_M
                if let (Some(p), Some(&off)) = (self.piece(x, b), var_off.get(&tkey)) {
                    let dm_t = self.blocks[p.target].dim;
                    for r in 0..dn_t {
                        for c in 0..block.dim {
                            for s in 0..dm_t {
                                let a = &p.matrix[(s, c)];
                                if !a.is_zero() {
                                    eqs[r * block.dim + c].entry(off + r * dm_t + s).or_insert_with(Rational::zero).add_mul(a, &Rational::one());
                                }
                            }
                        }
                    }
                }
                // − B_N · Φ_{key}
                if let (Some(&nb), Some(&off)) = (target.index.get(&key), var_off.get(&key)) {
                    if let Some(p) = target.piece(x, nb) {
                        let dn_b = target.blocks[nb].dim;
                        for r in 0..dn_t {
                            for c in 0..block.dim {
                                for s in 0..dn_b {
                                    let a = &p.matrix[(r, s)];
                                    if !a.is_zero() {
                                        eqs[r * block.dim + c]
                                            .entry(off + s * block.dim + c)
                                            .or_insert_with(Rational::zero)
                                            .add_mul(a, &Rational::from_int(-1));
                                    }
                                }
                            }
                        }
                    }
                }
                rows.extend(eqs.into_iter().filter(|e| e.values().any(|v| !v.is_zero())));
            }
        }
        let system = ExactMatrix::from_fn(rows.len(), nvars, |r, c| rows[r].get(&c).cloned().unwrap_or_else(Rational::zero));
        let kernel = if rows.is_empty() { ExactMatrix::identity(nvars) } else { system.kernel() };
        let mut maps = Vec::with_capacity(kernel.cols());
        for k in 0..kernel.cols() {
            let mut m = ExactMatrix::zeros(target.dim(), self.dim());
            for block in &self.blocks {
                let Some(&off) = var_off.get(&block.key()) else { continue };
                let nb = &target.blocks[target.index[&block.key()]];
                for r in 0..nb.dim {
                    for c in 0..block.dim {
                        m[(nb.offset + r, block.offset + c)] = kernel[(off + r * block.dim + c, k)].clone();
                    }
                }
            }
            maps.push(m);
        }
        Ok(maps)
    }

    /// Whether a dense matrix `target.dim() × self.dim()` intertwines the actions.
    pub fn is_morphism(&self, target: &PModule, phi: &ExactMatrix) -> bool {
        (0..self.algebra.dim()).all(|x| &target.action_matrix(x) * phi == phi * &self.action_matrix(x))
    }
}

/// Projects the columns of `vs` (block coordinates) onto the quotient by
/// `sub`, in the coordinates given by the unit vectors at `free` rows.
pub(crate) fn project_mod(sub: &Subspace, free: &[usize], vs: &ExactMatrix) -> ExactMatrix {
    let cols: Vec<usize> = (0..vs.cols()).collect();
    let at_pivots = vs.select(&sub.pivots, &cols);
    let correction = &sub.basis * &at_pivots;
    let reduced = vs - &correction;
    reduced.select(free, &cols)
}

/// Incrementally maintained row-echelon basis, for span closure.
pub(crate) struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    /// Adds `v` if it is not already in the span; returns whether it was new.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &(&f * b);
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for a in v.iter_mut() {
            *a = &*a * &inv;
        }
        self.rows.push((p, v));
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let cols: Vec<Vec<Rational>> = self.rows.into_iter().map(|(_, v)| v).collect();
        Subspace::span(&ExactMatrix::from_columns(self.dim, &cols))
    }
}
