//! Grothendieck classes via characters: decomposition into simple classes,
//! block labels of constituents, Temperley-Lieb relations and the search for
//! translation words into a typical block.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pn::PnAlgebra;
use crate::rep::{simple, Character, PModule};
use crate::superspace::Parity;
use crate::translate::theta;
use crate::weights::{kappa, Sign, Weight};

/// One simple constituent `Π^parity L(weight)` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Constituent {
    pub weight: Weight,
    pub parity: Parity,
    pub multiplicity: usize,
}

/// Peels characters of p(n)-modules into simple characters, caching the
/// characters of the simples it has built.
pub struct Peeler {
    algebra: Arc<PnAlgebra>,
    cache: HashMap<Weight, Character>,
}

/// `f(w) = Σ_i (i − 2n)·w_i` (1-based `i`) increases strictly along every
/// positive root, so an `f`-maximal weight of a character is a highest
/// weight; it is in particular maximal for the componentwise order.
fn height(w: &[i64]) -> i64 {
    let n = w.len() as i64;
    w.iter().enumerate().map(|(i, x)| (i as i64 + 1 - 2 * n) * x).sum()
}

impl Peeler {
    pub fn new(algebra: Arc<PnAlgebra>) -> Self {
        Peeler { algebra, cache: HashMap::new() }
    }

    pub fn algebra(&self) -> &Arc<PnAlgebra> {
        &self.algebra
    }

    /// Character of `L(λ)` (even highest weight vector).
    pub fn simple_character(&mut self, lambda: &Weight) -> Result<Character> {
        if let Some(c) = self.cache.get(lambda) {
            return Ok(c.clone());
        }
        let c = if self.algebra.n() == 0 {
            let mut c = Character::zero();
            c.add_term(Vec::new(), Parity::Even, 1);
            c
        } else {
            simple(self.algebra.clone(), lambda)?.character()
        };
        self.cache.insert(lambda.clone(), c.clone());
        Ok(c)
    }

    /// Writes `character` as a nonnegative combination of simple characters.
    pub fn decompose_character(&mut self, character: &Character) -> Result<Vec<Constituent>> {
        let mut rem = character.clone();
        let mut found: Vec<Constituent> = Vec::new();
        while !rem.is_zero() {
            let (top, _, _) = rem
                .terms()
                .max_by(|a, b| height(a.0).cmp(&height(b.0)).then_with(|| b.0.cmp(a.0)))
                .expect("nonzero character has a term");
            let top = top.to_vec();
            for parity in [Parity::Even, Parity::Odd] {
                let m = rem.multiplicity(&top, parity);
                if m < 0 {
                    return Err(Error::NegativeMultiplicity { weight: top, parity });
                }
                if m == 0 {
                    continue;
                }
                let lambda = Weight::new(top.clone())?;
                let mut ch = self.simple_character(&lambda)?;
                if parity.is_odd() {
                    ch = ch.parity_shift();
                }
                rem = rem.add_scaled(&ch, -m);
                found.push(Constituent { weight: lambda, parity, multiplicity: m as usize });
            }
        }
        found.sort();
        Ok(found)
    }

    pub fn decompose(&mut self, module: &PModule) -> Result<Vec<Constituent>> {
        if module.algebra().n() != self.algebra.n() {
            return Err(Error::AlgebraMismatch);
        }
        self.decompose_character(&module.character())
    }

    /// `κ` of every simple constituent, repeated by multiplicity, sorted.
    pub fn constituent_blocks(&mut self, module: &PModule) -> Result<Vec<i64>> {
        let mut out = Vec::new();
        for c in self.decompose(module)? {
            out.extend(std::iter::repeat_n(kappa(&c.weight), c.multiplicity));
        }
        out.sort();
        Ok(out)
    }
}

pub fn decompose(module: &PModule) -> Result<Vec<Constituent>> {
    Peeler::new(module.algebra().clone()).decompose(module)
}

pub fn constituent_blocks(module: &PModule) -> Result<Vec<i64>> {
    Peeler::new(module.algebra().clone()).constituent_blocks(module)
}

/// The four Temperley-Lieb identities at one index `j`, as character
/// equalities.
#[derive(Clone, Debug, Serialize)]
pub struct TlReport {
    pub j: i64,
    /// The far index used for the commutation relation.
    pub l: i64,
    pub square_vanishes: bool,
    pub up: bool,
    pub down: bool,
    pub commutes: bool,
}

impl TlReport {
    pub fn holds(&self) -> bool {
        self.square_vanishes && self.up && self.down && self.commutes
    }
}

/// `[Θ_jΘ_j M] = 0`, `[Θ_jΘ_{j±1}Θ_j M] = [Θ_j M]` and
/// `[Θ_jΘ_l M] = [Θ_lΘ_j M]` with `l = j + 2`.
pub fn check_tl_relations(module: &PModule, j: i64) -> Result<TlReport> {
    let l = j + 2;
    let tj = theta(module, j)?;
    let cj = tj.character();
    let square_vanishes = theta(&tj, j)?.is_zero();
    let up = theta(&theta(&tj, j + 1)?, j)?.character() == cj;
    let down = theta(&theta(&tj, j - 1)?, j)?.character() == cj;
    let jl = theta(&theta(module, l)?, j)?.character();
    let lj = theta(&tj, l)?.character();
    Ok(TlReport { j, l, square_vanishes, up, down, commutes: jl == lj })
}

/// Integer window `[min − 2, max + 2]` over all `ρ`-shifted coordinates of the
/// weights of `module`: the positions where some `Θ_i` can act nontrivially.
fn letter_window(module: &PModule) -> Vec<i64> {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for block in module.blocks() {
        for (i, w) in block.weight.iter().enumerate() {
            let shifted = w + i as i64;
            lo = lo.min(shifted);
            hi = hi.max(shifted);
        }
    }
    if lo > hi {
        return Vec::new();
    }
    (lo - 2..=hi + 2).collect()
}

/// Breadth-first search for a word `I` such that `Θ_I L(λ)` is nonzero with
/// every constituent in block `sign·n`. Returns the lexicographically
/// smallest word of minimal length, or `None` if no word of length at most
/// `max_depth` works.
pub fn find_typicalizing_word(lambda: &Weight, sign: Sign, max_depth: usize) -> Result<Option<Vec<i64>>> {
    let alg = PnAlgebra::build(lambda.n());
    let mut peeler = Peeler::new(alg.clone());
    let target = sign.value() * lambda.n() as i64;
    let start = simple(alg, lambda)?;
    let mut level: Vec<(Vec<i64>, PModule)> = vec![(Vec::new(), start)];
    for depth in 0..=max_depth {
        let mut hits: Vec<Vec<i64>> = Vec::new();
        for (word, m) in &level {
            let blocks = peeler.constituent_blocks(m)?;
            if blocks.iter().all(|&k| k == target) {
                hits.push(word.clone());
            }
        }
        if let Some(best) = hits.into_iter().min() {
            return Ok(Some(best));
        }
        if depth == max_depth {
            break;
        }
        let mut next = Vec::new();
        for (word, m) in &level {
            for i in letter_window(m) {
                let t = theta(m, i)?;
                if t.is_zero() {
                    continue;
                }
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(word);
                next.push((w, t));
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{block_flow, dominant_weights};

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn natural_module_is_shifted_simple() {
        let alg = PnAlgebra::build(2);
        let got = decompose(&PModule::natural(alg)).unwrap();
        assert_eq!(got, vec![Constituent { weight: w(&[-1, 0]), parity: Parity::Odd, multiplicity: 1 }]);
    }

    #[test]
    fn trivial_module() {
        let alg = PnAlgebra::build(2);
        let t = PModule::trivial(alg);
        assert_eq!(decompose(&t).unwrap(), vec![Constituent { weight: w(&[0, 0]), parity: Parity::Even, multiplicity: 1 }]);
        assert_eq!(constituent_blocks(&t).unwrap(), vec![0]);
    }

    #[test]
    fn natural_square_contains_expected_simples() {
        let alg = PnAlgebra::build(2);
        let v = PModule::natural(alg);
        let got = decompose(&v.tensor(&v).unwrap()).unwrap();
        let has = |l: &[i64]| got.iter().any(|c| c.weight == w(l) && c.parity == Parity::Even);
        assert!(has(&[-2, 0]));
        assert!(has(&[-1, -1]));
        let mut back = Character::zero();
        let mut p = Peeler::new(PnAlgebra::build(2));
        for c in &got {
            let mut ch = p.simple_character(&c.weight).unwrap();
            if c.parity.is_odd() {
                ch = ch.parity_shift();
            }
            back = back.add_scaled(&ch, c.multiplicity as i64);
        }
        assert_eq!(back, v.tensor(&v).unwrap().character());
    }

    #[test]
    fn simples_decompose_to_themselves() {
        for n in 1..=2 {
            let alg = PnAlgebra::build(n);
            let mut p = Peeler::new(alg.clone());
            for l in dominant_weights(n, 2) {
                let m = simple(alg.clone(), &l).unwrap();
                assert_eq!(p.decompose(&m).unwrap(), vec![Constituent { weight: l.clone(), parity: Parity::Even, multiplicity: 1 }]);
                let shifted = m.parity_shift(1);
                assert_eq!(p.decompose(&shifted).unwrap()[0].parity, Parity::Odd);
            }
        }
    }

    #[test]
    fn negative_remainder_is_an_error() {
        let mut c = Character::zero();
        c.add_term(vec![0, 0], Parity::Even, -1);
        let mut p = Peeler::new(PnAlgebra::build(2));
        assert!(matches!(p.decompose_character(&c), Err(Error::NegativeMultiplicity { .. })));
    }

    #[test]
    fn theta_image_lies_in_one_block() {
        let alg = PnAlgebra::build(2);
        let v = PModule::natural(alg);
        let blocks = constituent_blocks(&theta(&v, -1).unwrap()).unwrap();
        assert!(!blocks.is_empty());
        assert!(blocks.iter().all(|&k| k == blocks[0]));
        assert_eq!(constituent_blocks(&v).unwrap(), vec![-2]);
        assert_eq!(Some(blocks[0]), block_flow(-2, &[-1], 2));
    }

    #[test]
    fn tl_relations_small() {
        let alg = PnAlgebra::build(2);
        let v = PModule::natural(alg.clone());
        assert!(check_tl_relations(&v, -1).unwrap().holds());
        assert!(check_tl_relations(&PModule::trivial(alg), 0).unwrap().holds());
    }

    #[test]
    fn typicalizing_words() {
        assert_eq!(kappa(&w(&[-3, -2])), -2);
        assert_eq!(find_typicalizing_word(&w(&[-3, -2]), Sign::Minus, 2).unwrap(), Some(vec![]));
        assert_eq!(find_typicalizing_word(&w(&[0, 0]), Sign::Minus, 0).unwrap(), None);
        let word = find_typicalizing_word(&w(&[0, 0]), Sign::Minus, 3).unwrap().unwrap();
        assert_eq!(word.len(), 1);
    }
}
