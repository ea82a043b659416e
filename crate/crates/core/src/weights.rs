//! Weight combinatorics: ρ-shift, weight diagrams, block labels, the
//! highest-weight order, dual weights and block flow under translation words.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `|λ_i|` accepted by the module constructions.
pub const WEIGHT_BOUND: i64 = 8;

/// A dominant integral weight `λ_1 ≤ … ≤ λ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotDominant(lambda));
        }
        Ok(Weight(lambda))
    }

    /// Like [`Weight::new`], additionally enforcing length `n` and `|λ_i| ≤ WEIGHT_BOUND`.
    pub fn checked(n: usize, lambda: Vec<i64>) -> Result<Self> {
        if lambda.len() != n {
            let found = lambda.len();
            return Err(Error::WeightLength { weight: lambda, expected: n, found });
        }
        if lambda.iter().any(|l| l.abs() > WEIGHT_BOUND) {
            return Err(Error::WeightOutOfRange { weight: lambda, bound: WEIGHT_BOUND });
        }
        Self::new(lambda)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// `|λ| = −Σ λ_i`.
    pub fn size(&self) -> i64 {
        -self.0.iter().sum::<i64>()
    }

    /// `λ̄ = λ + ρ`.
    pub fn shifted(&self) -> Vec<i64> {
        self.0.iter().zip(rho(self.n())).map(|(l, r)| l + r).collect()
    }

    /// The dominant weight whose diagram is `filled`.
    pub fn from_diagram(filled: &BTreeSet<i64>) -> Self {
        Weight(filled.iter().enumerate().map(|(i, j)| j - i as i64).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn rho(n: usize) -> Vec<i64> {
    (0..n as i64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDiagram {
    pub filled: BTreeSet<i64>,
}

impl WeightDiagram {
    /// Two lines: `●`/`○` over the window `[min − 2, max + 2]` (widened to
    /// contain 0), then `^` under position 0.
    pub fn render(&self) -> String {
        let lo = self.filled.first().map_or(0, |m| m - 2).min(0);
        let hi = self.filled.last().map_or(0, |m| m + 2).max(0);
        let balls: String = (lo..=hi).map(|j| if self.filled.contains(&j) { '●' } else { '○' }).collect();
        let marker: String = (lo..=hi).map(|j| if j == 0 { '^' } else { ' ' }).collect();
        format!("{balls}\n{}", marker.trim_end())
    }
}

pub fn diagram(lambda: &Weight) -> WeightDiagram {
    WeightDiagram { filled: lambda.shifted().into_iter().collect() }
}

fn sign_of(j: i64) -> i64 {
    if j.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `κ(λ) = Σ (−1)^{λ̄_i}`, the block label of `L(λ)`.
pub fn kappa(lambda: &Weight) -> i64 {
    lambda.shifted().into_iter().map(sign_of).sum()
}

pub fn is_typical(lambda: &Weight) -> bool {
    kappa(lambda).unsigned_abs() as usize == lambda.n()
}

/// `μ ≥ λ` in the highest-weight order: `μ_i ≤ λ_i` for every `i`.
/// Works on arbitrary integral weights, not only dominant ones.
pub fn dominates(mu: &[i64], lambda: &[i64]) -> Result<bool> {
    if mu.len() != lambda.len() {
        return Err(Error::Dimension(format!("weights of length {} and {}", mu.len(), lambda.len())));
    }
    Ok(mu.iter().zip(lambda).all(|(m, l)| m <= l))
}

/// The dominant weight whose diagram is the reflection of `diagram(λ)` in 0;
/// the highest weight of `∇(λ)*` as a costandard module.
pub fn dual_weight(lambda: &Weight) -> Weight {
    let filled: BTreeSet<i64> = lambda.shifted().into_iter().map(|j| -j).collect();
    Weight::from_diagram(&filled)
}

/// Selects one of the two typical blocks `±n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A typical weight `μ` below `λ` in block `sign·n`: `μ_n` is the largest
/// integer `< λ_1` of the right parity and `μ_k = μ_n − (n − k)`.
pub fn typical_target(lambda: &Weight, sign: Sign) -> Weight {
    let n = lambda.n() as i64;
    if n == 0 {
        return lambda.clone();
    }
    // all μ̄_k share the parity of μ_n − n − 1; even parity gives κ = +n
    let want_odd_mu_minus_n = sign == Sign::Plus;
    let mut top = lambda.entries()[0] - 1;
    while ((top - n).rem_euclid(2) == 1) != want_odd_mu_minus_n {
        top -= 1;
    }
    Weight((0..n).map(|k| top - (n - 1 - k)).collect())
}

/// `t(I) = Σ_s (−1)^{i_s + 1}`.
pub fn t_of(word: &[i64]) -> i64 {
    word.iter().map(|&i| -sign_of(i)).sum()
}

/// Block reached by applying `Θ_I` (rightmost letter first) to a module in
/// block `k`, or `None` once an intermediate label leaves `[−n, n]`.
pub fn block_flow(k: i64, word: &[i64], n: usize) -> Option<i64> {
    let mut k = k;
    for &i in word.iter().rev() {
        k -= 2 * sign_of(i);
        if k.unsigned_abs() as usize > n {
            return None;
        }
    }
    Some(k)
}

/// All dominant weights of length `n` with `|λ_i| ≤ bound`, lexicographic.
pub fn dominant_weights(n: usize, bound: i64) -> Vec<Weight> {
    fn rec(n: usize, lo: i64, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == n {
            out.push(Weight(cur.clone()));
            return;
        }
        for v in lo..=bound {
            cur.push(v);
            rec(n, v, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, -bound, bound, &mut Vec::new(), &mut out);
    out
}

/// JSON form of a weight diagram.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub filled: Vec<i64>,
    pub kappa: i64,
}

impl DiagramReport {
    pub fn new(lambda: &Weight) -> Self {
        DiagramReport {
            n: lambda.n(),
            lambda: lambda.entries().to_vec(),
            filled: diagram(lambda).filled.into_iter().collect(),
            kappa: kappa(lambda),
        }
    }
}
