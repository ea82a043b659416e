//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use periplectic::ds::{self, DSContext};
use periplectic::groth::{check_tl_relations, find_typicalizing_word, Peeler};
use periplectic::pn::{form_violations, super_jacobi_violation};
use periplectic::rep::{costandard, simple, standard};
use periplectic::translate::{check_adjunction, check_duality_theorem, theta, theta_word, Casimir};
use periplectic::verify::{blockflow_case, short_words};
use periplectic::weights::{dominant_weights, dual_weight, is_typical, kappa};
use periplectic::{Character, PModule, Parity, PnAlgebra, Sign};

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }
}

type Criterion = fn() -> Outcome;

/// Weights and parities of the basis of `V_n`: `ε_i` even, `−ε_i` odd.
fn natural_basis(n: usize) -> Vec<(Vec<i64>, bool)> {
    let mut out = Vec::new();
    for odd in [false, true] {
        for i in 0..n {
            let mut w = vec![0; n];
            w[i] = if odd { -1 } else { 1 };
            out.push((w, odd));
        }
    }
    out
}

/// Character of the super symmetric (`sym = true`) or exterior square of
/// `V_n`, from the monomial basis `v_a v_b` (`a ≤ b`): the diagonal term
/// survives in `S²` for even vectors and in `∧²` for odd ones.
fn square_character(n: usize, sym: bool) -> Character {
    let basis = natural_basis(n);
    let mut c = Character::zero();
    for a in 0..basis.len() {
        for b in a..basis.len() {
            let (wa, oa) = &basis[a];
            let (wb, ob) = &basis[b];
            if a == b && (*oa == sym) {
                continue;
            }
            let w: Vec<i64> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            let p = if oa ^ ob { Parity::Odd } else { Parity::Even };
            c.add_term(w, p, 1);
        }
    }
    c
}

fn ac1_kac_wakimoto() -> Outcome {
    let mut o = Outcome::new();
    let mut control = false;
    for (n, typical) in [(2usize, 2i64), (3, 3)] {
        let alg = PnAlgebra::build(n);
        for l in dominant_weights(n, 3) {
            let k = kappa(&l);
            if k.abs() == typical {
                let sdim = simple(alg.clone(), &l).unwrap().superdimension();
                o.check(sdim == 0, format!("n={n} L{l}: sdim {sdim}"));
            } else if k.abs() <= 1 && !control {
                control = simple(alg.clone(), &l).unwrap().superdimension() != 0;
            }
        }
    }
    o.check(control, "no control weight with kappa in {0,±1} and sdim != 0");
    o
}

fn ac2_example() -> Outcome {
    let mut o = Outcome::new();
    let alg = PnAlgebra::build(2);
    let v = PModule::natural(alg);
    let wedge = square_character(2, false);
    let sym = square_character(2, true);
    let t = theta(&v, -1).unwrap();
    o.check(t.dims() == (4, 4), format!("dims Θ_{{-1}}V = {:?}", t.dims()));
    o.check(t.character() == wedge, "ch Θ_{-1}V ≠ ch ∧²V");
    o.check(t.dual().character() == sym, "ch (Θ_{-1}V)* ≠ ch S²V");
    let literal = theta(&v.dual().parity_shift(1), 1).unwrap().parity_shift(1);
    o.check(literal.character() == sym, "ch ΠΘ_1(ΠV*) ≠ ch S²V");
    let same = |c: &Character, d: &Character| if c == d { "equal" } else { "different" };
    o.notes.push(format!("ch Θ_{{-1}}V vs ch Π∧²V: {}", same(&t.character(), &wedge.parity_shift())));
    let pi_theta_pi_v = theta(&v.parity_shift(1), 1).unwrap().parity_shift(1).character();
    o.notes.push(format!("ch ΠΘ_1(ΠV) vs ch S²V: {}", same(&pi_theta_pi_v, &sym)));
    let pi_theta_vdual = theta(&v.dual(), 1).unwrap().parity_shift(1).character();
    o.notes.push(format!("ch ΠΘ_1(V*) vs ch S²V: {}", same(&pi_theta_vdual, &sym)));
    o
}

fn ac3_duality() -> Outcome {
    let mut o = Outcome::new();
    let a2 = PnAlgebra::build(2);
    let v2 = PModule::natural(a2.clone());
    let corpus = [
        ("1", PModule::trivial(a2.clone())),
        ("V2", v2.clone()),
        ("V2⊗V2", v2.tensor(&v2).unwrap()),
        ("V3", PModule::natural(PnAlgebra::build(3))),
    ];
    for (name, m) in &corpus {
        for k in -2..=2 {
            let r = check_duality_theorem(m, k).unwrap();
            o.check(r.holds(), format!("{name} k={k}: {r:?}"));
        }
    }
    o
}

fn ac4_dual_blocks() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=4 {
        for l in dominant_weights(n, 6) {
            let d = dual_weight(&l);
            o.check(kappa(&d) == kappa(&l), format!("{l} ↦ {d}"));
        }
    }
    o
}

fn ac5_temperley_lieb() -> Outcome {
    let mut o = Outcome::new();
    let alg = PnAlgebra::build(2);
    for (name, m) in [("1", PModule::trivial(alg.clone())), ("V2", PModule::natural(alg))] {
        for j in -2..=2 {
            let r = check_tl_relations(&m, j).unwrap();
            o.check(r.holds(), format!("{name} j={j}: {r:?}"));
        }
    }
    o
}

fn ac6_adjunction() -> Outcome {
    let mut o = Outcome::new();
    let alg = PnAlgebra::build(2);
    let v = PModule::natural(alg.clone());
    let corpus = [("1", PModule::trivial(alg)), ("V2", v.clone()), ("Θ_{-1}V2", theta(&v, -1).unwrap())];
    for (a, m) in &corpus {
        for (b, n) in &corpus {
            for k in -1..=1 {
                let r = check_adjunction(m, n, k).unwrap();
                o.check(r.holds(), format!("{a}, {b}, k={k}: {} vs {}", r.left, r.right));
            }
        }
    }
    o
}

fn ac7_block_flow() -> Outcome {
    let mut o = Outcome::new();
    let alg = PnAlgebra::build(2);
    let mut peeler = Peeler::new(alg.clone());
    for l in dominant_weights(2, 3) {
        let m = simple(alg.clone(), &l).unwrap();
        for word in short_words() {
            let image = theta_word(&m, &word).unwrap();
            let (pass, detail) = blockflow_case(&mut peeler, &l, &word, &image).unwrap();
            o.check(pass, format!("L{l} I={word:?}: {detail}"));
        }
    }
    o
}

fn ac8_duflo_serganova() -> Outcome {
    let mut o = Outcome::new();
    let a3 = PnAlgebra::build(3);
    let ctx = DSContext::new(a3.clone(), 2).unwrap();
    let v3 = PModule::natural(a3.clone());
    let dv = ds::ds(&v3, &ctx).unwrap();
    let v1 = PModule::natural(PnAlgebra::build(1));
    o.check(dv.character() == v1.character(), "ch DS(V3) ≠ ch V1");
    o.check(dv.dims() == (1, 1), format!("dims DS(V3) = {:?}", dv.dims()));
    for k in -1..=1 {
        let r = ds::check_theta_commutation(&v3, k, &ctx).unwrap();
        o.check(r.holds(), format!("theta commutation k={k}: {r:?}"));
    }
    let corpus = [PModule::trivial(a3.clone()), v3.clone(), v3.tensor(&v3).unwrap()];
    for m in &corpus {
        o.check(ds::check_sdim_preserved(m, &ctx).unwrap(), format!("sdim, module of dim {}", m.dim()));
    }
    for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 1)] {
        o.check(ds::check_monoidal(&corpus[i], &corpus[j], &ctx).unwrap(), format!("monoidal ({i},{j})"));
    }
    for (n, bound) in [(2usize, 3i64), (3, 2)] {
        let alg = PnAlgebra::build(n);
        let c = DSContext::new(alg.clone(), 2).unwrap();
        for l in dominant_weights(n, bound).into_iter().filter(is_typical) {
            let image = ds::ds(&costandard(alg.clone(), &l).unwrap(), &c).unwrap();
            o.check(image.is_zero(), format!("DS ∇{l} has dims {:?}", image.dims()));
        }
    }
    let mut peeler = Peeler::new(ctx.small().clone());
    for l in dominant_weights(3, 2) {
        let r = ds::block_preservation(&l, &ctx, &mut peeler).unwrap();
        o.check(r.holds(3), format!("blocks of DS L{l}: {r:?}"));
    }
    o
}

fn ac9_typicalization() -> Outcome {
    let mut o = Outcome::new();
    let n = 2i64;
    for l in dominant_weights(2, 3) {
        for sign in [Sign::Plus, Sign::Minus] {
            let expected = ((n - sign.value() * kappa(&l)) / 2) as usize;
            let word = find_typicalizing_word(&l, sign, expected).unwrap();
            let ok = word.as_ref().is_some_and(|w| w.len() == expected);
            if !ok {
                let longer = find_typicalizing_word(&l, sign, expected + 2).unwrap();
                o.check(false, format!("L{l} sign {sign}: no word of length {expected}; shortest {longer:?}"));
            }
        }
    }
    o
}

fn structural_corpus(alg: &Arc<PnAlgebra>) -> Vec<PModule> {
    let v = PModule::natural(alg.clone());
    let mut out = vec![PModule::trivial(alg.clone()), v.clone(), v.dual(), v.tensor(&v).unwrap()];
    for l in dominant_weights(alg.n(), 1) {
        out.push(simple(alg.clone(), &l).unwrap());
        out.push(costandard(alg.clone(), &l).unwrap());
        if alg.n() <= 2 {
            out.push(standard(alg.clone(), &l).unwrap());
        }
    }
    out
}

fn ac10_structural() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=3 {
        let alg = PnAlgebra::build(n);
        o.check(super_jacobi_violation(&alg).is_none(), format!("super-Jacobi n={n}"));
        o.check(form_violations(&alg).is_empty(), format!("β-preservation n={n}"));
        for (i, m) in structural_corpus(&alg).iter().enumerate() {
            if let Err(e) = m.validate() {
                o.check(false, format!("n={n} module #{i}: {e}"));
            }
            let cas = Casimir::new(m).unwrap();
            o.check(cas.equivariance_defect().is_zero(), format!("Ω-equivariance n={n} module #{i}"));
            if let Err(e) = cas.eigenspaces() {
                o.check(false, format!("integrality n={n} module #{i}: {e}"));
            }
        }
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion, Duration); 10] = [
        ("Kac-Wakimoto vanishing", ac1_kac_wakimoto, Duration::from_secs(120)),
        ("∧²/S² example", ac2_example, Duration::from_secs(5)),
        ("duality theorem", ac3_duality, Duration::from_secs(60)),
        ("dual weights keep blocks", ac4_dual_blocks, Duration::from_secs(1)),
        ("Temperley-Lieb relations", ac5_temperley_lieb, Duration::from_secs(120)),
        ("adjunction Θ_k ⊣ Θ_{k-1}", ac6_adjunction, Duration::from_secs(60)),
        ("block flow", ac7_block_flow, Duration::MAX),
        ("Duflo-Serganova suite", ac8_duflo_serganova, Duration::from_secs(180)),
        ("typicalizing words", ac9_typicalization, Duration::MAX),
        ("structural invariants", ac10_structural, Duration::MAX),
    ];
    let mut passed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > *limit {
            outcome.check(false, format!("took {elapsed:.2?}, limit {limit:.0?}"));
        }
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("AC{:<2} {verdict}  {name} ({elapsed:.2?})", i + 1);
        for note in outcome.notes.iter().filter(|_| !outcome.pass) {
            println!("       {note}");
        }
        passed += usize::from(outcome.pass);
    }
    println!("{passed}/{} acceptance criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
