//! Verification suites: each sweeps the simple modules `L(λ)` with
//! `|λ_i| ≤ bound` (plus a few fixed modules) and records one case per check.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::ds::{self, DSContext};
use crate::error::{Error, Result};
use crate::groth::{check_tl_relations, find_typicalizing_word, Peeler};
use crate::pn::PnAlgebra;
use crate::rep::{costandard, simple, PModule};
use crate::translate::{check_duality_theorem, theta};
use crate::weights::{block_flow, dominant_weights, is_typical, kappa, Sign, Weight, WEIGHT_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kw,
    Tl,
    Adjunction,
    Duality,
    Blockflow,
    Dscommute,
    Typicalize,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Kw, Suite::Tl, Suite::Adjunction, Suite::Duality, Suite::Blockflow, Suite::Dscommute, Suite::Typicalize];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kw => "kw",
            Suite::Tl => "tl",
            Suite::Adjunction => "adjunction",
            Suite::Duality => "duality",
            Suite::Blockflow => "blockflow",
            Suite::Dscommute => "dscommute",
            Suite::Typicalize => "typicalize",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub bound: i64,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    fn push(&mut self, case: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.cases.push(CaseResult { case: case.into(), pass, detail: detail.into() });
    }
}

pub fn run(suite: Suite, n: usize, bound: i64) -> Result<SuiteReport> {
    if n == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    if !(0..=WEIGHT_BOUND).contains(&bound) {
        return Err(Error::WeightOutOfRange { weight: vec![bound], bound: WEIGHT_BOUND });
    }
    let mut report = SuiteReport { suite, n, bound, cases: Vec::new() };
    let alg = PnAlgebra::build(n);
    match suite {
        Suite::Kw => kw(&alg, bound, &mut report)?,
        Suite::Tl => tl(&alg, bound, &mut report)?,
        Suite::Adjunction => adjunction(&alg, bound, &mut report)?,
        Suite::Duality => duality(&alg, bound, &mut report)?,
        Suite::Blockflow => blockflow(&alg, bound, &mut report)?,
        Suite::Dscommute => dscommute(&alg, bound, &mut report)?,
        Suite::Typicalize => typicalize(&alg, bound, &mut report)?,
    }
    Ok(report)
}

fn simples(alg: &Arc<PnAlgebra>, bound: i64) -> Result<Vec<(Weight, PModule)>> {
    dominant_weights(alg.n(), bound).into_iter().map(|l| Ok((l.clone(), simple(alg.clone(), &l)?))).collect()
}

/// `𝟙`, `V_n`, then every nontrivial simple of the sweep.
fn corpus(alg: &Arc<PnAlgebra>, bound: i64) -> Result<Vec<(String, PModule)>> {
    let mut out = vec![("1".to_string(), PModule::trivial(alg.clone())), ("V".to_string(), PModule::natural(alg.clone()))];
    let zero = Weight::zero(alg.n());
    for (l, m) in simples(alg, bound)? {
        if l != zero {
            out.push((format!("L{l}"), m));
        }
    }
    Ok(out)
}

/// `sdim L(λ) = 0` whenever `|κ(λ)| ≥ 2`, plus the control that some
/// `λ` with `|κ(λ)| ≤ 1` has nonzero superdimension.
fn kw(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let mut control = None;
    for (l, m) in simples(alg, bound)? {
        let k = kappa(&l);
        let sdim = m.superdimension();
        let detail = format!("kappa={k} sdim={sdim}");
        if k.abs() >= 2 {
            report.push(format!("L{l}"), sdim == 0, detail);
        } else if sdim != 0 && control.is_none() {
            control = Some(format!("L{l} {detail}"));
        }
    }
    let found = control.is_some();
    report.push("control", found, control.unwrap_or_else(|| "no weight with |kappa|<=1 and sdim!=0".into()));
    Ok(())
}

fn tl(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let n = alg.n() as i64;
    for (name, m) in corpus(alg, bound)? {
        for j in -bound - 2..=bound + n + 1 {
            let r = check_tl_relations(&m, j)?;
            let detail = format!(
                "square={} up={} down={} commute(l={})={}",
                r.square_vanishes, r.up, r.down, r.l, r.commutes
            );
            report.push(format!("{name} j={j}"), r.holds(), detail);
        }
    }
    Ok(())
}

fn adjunction(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let mut mods = corpus(alg, bound)?;
    mods.insert(2, ("Theta_-1 V".to_string(), theta(&PModule::natural(alg.clone()), -1)?));
    let ks = -1..=1;
    let thetas: Vec<Vec<PModule>> =
        mods.iter().map(|(_, m)| (-2..=1).map(|k| theta(m, k)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let at = |i: usize, k: i64| &thetas[i][(k + 2) as usize];
    for (i, (a, m)) in mods.iter().enumerate() {
        for (j, (b, n)) in mods.iter().enumerate() {
            for k in ks.clone() {
                let left = at(i, k).hom_space(n)?.len();
                let right = m.hom_space(at(j, k - 1))?.len();
                report.push(format!("{a} | {b} k={k}"), left == right, format!("{left} vs {right}"));
            }
        }
    }
    Ok(())
}

fn duality(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let mut mods = corpus(alg, bound)?;
    let v = PModule::natural(alg.clone());
    mods.insert(2, ("V⊗V".to_string(), v.tensor(&v)?));
    for (name, m) in &mods {
        for k in -2..=2 {
            let r = check_duality_theorem(m, k)?;
            let detail = format!(
                "characters={} casimir={} eta={}",
                r.characters_agree, r.casimir_identity, r.eta_anticommutes
            );
            report.push(format!("{name} k={k}"), r.holds(), detail);
        }
    }
    Ok(())
}

/// All words of length at most 2 over `{−2, …, 2}`, shortest first.
pub fn short_words() -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for a in -2..=2 {
        out.push(vec![a]);
    }
    for a in -2..=2 {
        for b in -2..=2 {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Constituent blocks of `Θ_I L(λ)` against the block-flow prediction.
pub fn blockflow_case(peeler: &mut Peeler, lambda: &Weight, word: &[i64], image: &PModule) -> Result<(bool, String)> {
    let n = lambda.n();
    let predicted = block_flow(kappa(lambda), word, n);
    let blocks = peeler.constituent_blocks(image)?;
    let pass = match predicted {
        Some(k) => blocks.iter().all(|&b| b == k),
        None => blocks.is_empty(),
    };
    Ok((pass, format!("predicted={predicted:?} blocks={blocks:?}")))
}

fn blockflow(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let mut peeler = Peeler::new(alg.clone());
    for (l, m) in simples(alg, bound)? {
        let singles: Vec<PModule> = (-2..=2).map(|i| theta(&m, i)).collect::<Result<_>>()?;
        for word in short_words() {
            let image = match word.as_slice() {
                [] => m.clone(),
                [i] => singles[(i + 2) as usize].clone(),
                [a, b] => theta(&singles[(b + 2) as usize], *a)?,
                _ => unreachable!(),
            };
            let (pass, detail) = blockflow_case(&mut peeler, &l, &word, &image)?;
            report.push(format!("L{l} I={word:?}"), pass, detail);
        }
    }
    Ok(())
}

fn dscommute(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let n = alg.n();
    if n < 2 {
        return Err(Error::InvalidRank { n, s: 2 });
    }
    let ctx = DSContext::new(alg.clone(), 2)?;
    let small = ctx.small().clone();
    let v = PModule::natural(alg.clone());
    let dv = ds::ds(&v, &ctx)?;
    let target = PModule::natural(small.clone());
    report.push(
        "DS(V) = V_{n-2}",
        dv.character() == target.character(),
        format!("dims {:?} vs {:?}", dv.dims(), target.dims()),
    );
    if small.n() > 0 {
        for k in -1..=1 {
            let r = ds::check_theta_commutation(&v, k, &ctx)?;
            report.push(
                format!("DS Theta_{k} V"),
                r.holds(),
                format!("characters={} casimir={}", r.characters_agree, r.casimir_lemma),
            );
        }
    }
    let fixed = [("1", PModule::trivial(alg.clone())), ("V", v.clone()), ("V⊗V", v.tensor(&v)?)];
    for (name, m) in &fixed {
        let pass = ds::check_sdim_preserved(m, &ctx)?;
        report.push(format!("sdim {name}"), pass, format!("sdim={}", m.superdimension()));
    }
    for (a, m) in &fixed {
        for (b, nn) in &fixed {
            if m.dim() * nn.dim() > 64 {
                continue;
            }
            report.push(format!("monoidal {a} ⊗ {b}"), ds::check_monoidal(m, nn, &ctx)?, "");
        }
    }
    let mut peeler = Peeler::new(small);
    for l in dominant_weights(n, bound) {
        if is_typical(&l) {
            let image = ds::ds(&costandard(alg.clone(), &l)?, &ctx)?;
            report.push(format!("DS costandard{l}"), image.is_zero(), format!("dims {:?}", image.dims()));
        }
        let r = ds::block_preservation(&l, &ctx, &mut peeler)?;
        let detail = format!("kappa={} image blocks={:?} dims={:?}", r.kappa, r.image_blocks, r.image_dims);
        report.push(format!("blocks DS L{l}"), r.holds(n), detail);
    }
    Ok(())
}

fn typicalize(alg: &Arc<PnAlgebra>, bound: i64, report: &mut SuiteReport) -> Result<()> {
    let n = alg.n() as i64;
    for l in dominant_weights(alg.n(), bound) {
        for sign in [Sign::Plus, Sign::Minus] {
            let expected = ((n - sign.value() * kappa(&l)) / 2) as usize;
            // one extra parity-compatible level, so a longer witness is reported
            let word = find_typicalizing_word(&l, sign, expected + 2)?;
            let pass = word.as_ref().is_some_and(|w| w.len() == expected);
            report.push(format!("L{l} sign={sign}"), pass, format!("expected length {expected}, word {word:?}"));
        }
    }
    Ok(())
}
