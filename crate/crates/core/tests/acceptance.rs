//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use serde_json::Value;
use tategb::buchberger::{residue_gb, saturate_integral};
use tategb::oracle::{classical_criterion, classical_gb, same_ideal, FpPoly};
use tategb::radii::eta_gb;
use tategb::{
    buchberger, buchberger_criterion, f4, groebner_basis, is_member, parse_series, reduce, AlgebraContext, Algorithm,
    MonomialOrder, RingMode, TateSeries,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_cli(args: &[&str]) -> (Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tategb")).args(args).output().expect("binary runs");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (serde_json::from_slice(&out.stdout).expect("json output"), elapsed)
}

/// Basis elements of a JSON document as maps exponent -> (residue, cap).
fn json_elements(doc: &Value) -> Vec<Vec<(Vec<u64>, i64)>> {
    doc["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            s["terms"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    let exp = t[0].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect();
                    let c: i64 = t[1].as_str().unwrap().parse().expect("integral coefficient");
                    (exp, c)
                })
                .collect()
        })
        .collect()
}

/// Compares a computed basis against expected elements modulo `m`; elements
/// are matched by leading exponent (the first term of each list).
fn residues_match(got: &[Vec<(Vec<u64>, i64)>], want: &[&[(&[u64], i64)]], m: i64) -> Result<(), String> {
    check(got.len() == want.len(), format!("{} elements, expected {}", got.len(), want.len()))?;
    for w in want {
        let lead = w[0].0;
        let g = got
            .iter()
            .find(|g| g[0].0 == lead)
            .ok_or_else(|| format!("no element with leading exponent {lead:?}"))?;
        let mut diff: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
        for (e, c) in g {
            *diff.entry(e.clone()).or_default() += c;
        }
        for (e, c) in w.iter() {
            *diff.entry(e.to_vec()).or_default() -= c;
        }
        if let Some((e, c)) = diff.iter().find(|(_, c)| c.rem_euclid(m) != 0) {
            return Err(format!("element led by {lead:?} differs at {e:?} by {c} mod {m}"));
        }
    }
    Ok(())
}

fn leading_valuations(doc: &Value) -> Vec<(Vec<u64>, u32)> {
    let mut out: Vec<_> = json_elements(doc)
        .iter()
        .map(|g| (g[0].0.clone(), (g[0].1 as u64).trailing_zeros()))
        .collect();
    out.sort();
    out
}

fn criterion_1() -> Outcome {
    let args = ["groebner", "--prime", "2", "--prec", "5", "--ring", "tate", "--format", "json", "-e", DEMO_GENERATORS[0], "-e", DEMO_GENERATORS[1]];
    let (doc, t) = run_cli(&args);
    let got = json_elements(&doc);
    let lts: Vec<Vec<u64>> = { let mut v: Vec<_> = got.iter().map(|g| g[0].0.clone()).collect(); v.sort(); v };
    check(lts == vec![vec![0, 2], vec![2, 1], vec![3, 0]], format!("leading exponents {lts:?}"))?;
    residues_match(
        &got,
        &[&[(&[3, 0], 1), (&[0, 1], 11)], &[(&[2, 1], 1), (&[0, 0], 2)], &[(&[0, 2], 1), (&[1, 0], 10)]],
        8,
    )?;
    check(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("3 elements, residues match mod 2^3, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let args = ["groebner", "--prime", "2", "--prec", "5", "--ring", "integral", "--format", "json", "-e", DEMO_GENERATORS[0], "-e", DEMO_GENERATORS[1]];
    let (doc, t) = run_cli(&args);
    let got = json_elements(&doc);
    let lts = leading_valuations(&doc);
    let want = vec![(vec![0, 2], 2), (vec![1, 2], 0), (vec![2, 1], 1), (vec![3, 0], 2)];
    check(lts == want, format!("leading classes {lts:?}"))?;
    residues_match(
        &got,
        &[
            &[(&[1, 2], 1), (&[2, 0], 26)],
            &[(&[2, 1], 2), (&[0, 0], 4)],
            &[(&[3, 0], 4), (&[0, 1], 44)],
            &[(&[0, 2], 4), (&[1, 0], 40)],
        ],
        16,
    )?;
    check(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("4 elements, residues match mod 2^4, {t:.2?}"))
}

fn criterion_3() -> Outcome {
    let ctx = demo_ctx(5);
    let gens = demo_generators(&ctx);
    let integral = buchberger(&gens, RingMode::Integral).map_err(|e| e.to_string())?;
    let half = parse_series("2 + x^2*y", &ctx).unwrap();
    let m = is_member(&half, &integral.elements, RingMode::Integral).map_err(|e| e.to_string())?;
    check(!m, "g/2 reported as a member of the integral ideal")?;
    let rational = buchberger(&gens, RingMode::Rational).map_err(|e| e.to_string())?;
    let mut r = rng(3);
    for k in 0..10 {
        let h1 = random_poly(&mut r, &ctx, 4, 3, 20, 5);
        let h2 = random_poly(&mut r, &ctx, 4, 3, 20, 5);
        let f = h1.mul(&gens[0]).unwrap().add(&h2.mul(&gens[1]).unwrap()).unwrap();
        let m = is_member(&f, &rational.elements, RingMode::Rational).map_err(|e| e.to_string())?;
        check(m, format!("combination {k} ({f}) not recognised"))?;
    }
    Ok("g/2 not in the integral ideal; 10/10 combinations in the rational ideal".into())
}

fn criterion_4() -> Outcome {
    let ctx = AlgebraContext::new(2, &["x"], &["1/2".parse().unwrap()], MonomialOrder::Grevlex, 5).unwrap();
    let x = parse_series("x", &ctx).unwrap();
    let sat = saturate_integral(&[x]).map_err(|e| e.to_string())?;
    let gb = eta_gb(&sat, RingMode::Integral, Algorithm::Buchberger).map_err(|e| e.to_string())?;
    let shown: Vec<String> = gb.elements.iter().map(|g| g.to_string()).collect();
    check(gb.len() == 2, format!("cardinality {}", gb.len()))?;
    let mut lts: Vec<String> = gb.elements.iter().map(|g| g.leading_term().unwrap().format(&ctx)).collect();
    lts.sort();
    check(lts == ["2*x", "2*x^2"], format!("leading terms {lts:?}"))?;
    check(gb.elements.iter().all(|g| g.len() == 1), format!("basis {shown:?}"))?;
    Ok(format!("{{{}}}", shown.join(", ")))
}

struct Corpus {
    ideals: Vec<RandomIdeal>,
}

fn corpus() -> Corpus {
    Corpus { ideals: (0..50).map(|s| random_ideal(s, 6)).collect() }
}

fn criterion_5(c: &Corpus) -> Outcome {
    let start = Instant::now();
    for ideal in &c.ideals {
        for mode in [RingMode::Rational, RingMode::Integral] {
            let gb = buchberger(&ideal.gens, mode).map_err(|e| format!("seed {}: {e}", ideal.seed))?;
            let ok = buchberger_criterion(&gb.elements, mode).map_err(|e| e.to_string())?;
            check(ok, format!("seed {} {mode:?}: criterion fails", ideal.seed))?;
            for g in &ideal.gens {
                let r = reduce(g, &gb.elements, mode).map_err(|e| e.to_string())?;
                check(r.is_zero(), format!("seed {} {mode:?}: generator {g} leaves {r}", ideal.seed))?;
            }
        }
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!("50 ideals x 2 rings, {t:.2?}"))
}

fn criterion_6(c: &Corpus) -> Outcome {
    for ideal in &c.ideals {
        for mode in [RingMode::Rational, RingMode::Integral] {
            let b = buchberger(&ideal.gens, mode).map_err(|e| e.to_string())?;
            let f = f4(&ideal.gens, mode).map_err(|e| e.to_string())?;
            check(
                same_lt_classes(&b.elements, &f.elements, mode),
                format!("seed {} {mode:?}: {:?} vs {:?}", ideal.seed, lt_classes(&b.elements, mode), lt_classes(&f.elements, mode)),
            )?;
        }
    }
    Ok("50 ideals x 2 rings agree".into())
}

/// Seeds whose cap-10 integral basis has all leading valuations below 5, the
/// hypothesis under which truncation must commute with the computation.
fn stable_seeds() -> Vec<u64> {
    let mut seeds = Vec::new();
    let mut s = 1000;
    while seeds.len() < 10 {
        let mut r = rng(s);
        let ideal = random_ideal_in(s, 2, 2, 10, &mut r);
        if let Ok(gb) = buchberger(&ideal.gens, RingMode::Integral) {
            if gb.elements.iter().all(|g| g.leading_term().unwrap().val(&ideal.ctx) < 5) {
                seeds.push(s);
            }
        }
        s += 1;
    }
    seeds
}

fn criterion_7() -> Outcome {
    let seeds = stable_seeds();
    for &s in &seeds {
        let hi = random_ideal_in(s, 2, 2, 10, &mut rng(s));
        let lo = random_ideal_in(s, 2, 2, 5, &mut rng(s));
        let g10 = buchberger(&hi.gens, RingMode::Integral).map_err(|e| e.to_string())?;
        let g5 = buchberger(&lo.gens, RingMode::Integral).map_err(|e| e.to_string())?;
        let cut: Vec<TateSeries> = g10.elements.iter().map(|g| g.truncate(5)).collect();
        // Truncation happens in the cap-10 context; compare in the cap-5 one.
        let cut: Vec<TateSeries> = cut
            .iter()
            .map(|g| TateSeries::from_terms(&lo.ctx, g.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())), g.cap()).unwrap())
            .collect();
        check(
            same_lt_classes(&cut, &g5.elements, RingMode::Integral),
            format!("seed {s}: {:?} vs {:?}", lt_classes(&cut, RingMode::Integral), lt_classes(&g5.elements, RingMode::Integral)),
        )?;
        for a in &cut {
            let lt = a.leading_term().unwrap();
            let b = g5
                .elements
                .iter()
                .find(|b| b.leading_term().unwrap().exp == lt.exp)
                .unwrap();
            check(a.eq_at_precision(b).unwrap(), format!("seed {s}: {a} vs {b}"))?;
        }
    }
    Ok(format!("seeds {seeds:?}"))
}

fn criterion_8() -> Outcome {
    let ctx = demo_ctx(5);
    let gb = buchberger(&demo_generators(&ctx), RingMode::Rational).map_err(|e| e.to_string())?;
    let residues = residue_gb(&gb.elements).map_err(|e| e.to_string())?;
    let order = MonomialOrder::Grevlex;
    let expected = vec![
        FpPoly::from_terms(2, 2, &[(&[3, 0], 1), (&[0, 1], 1)]),
        FpPoly::from_terms(2, 2, &[(&[2, 1], 1)]),
        FpPoly::from_terms(2, 2, &[(&[0, 2], 1)]),
    ];
    let mut got = residues.clone();
    got.sort_by(|a, b| a.terms.cmp(&b.terms));
    let mut want = expected.clone();
    want.sort_by(|a, b| a.terms.cmp(&b.terms));
    check(got == want, format!("residues {}", residues.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")))?;
    let classical = classical_gb(&residues, order);
    check(same_ideal(&residues, &classical, order), "residue ideal differs from its classical basis")?;
    check(classical_criterion(&residues, order), "classical criterion fails")?;
    Ok("{x^3 + y, x^2*y, y^2} is a Gröbner basis over F_2".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for case in 0..1000 {
        let p = if r.gen_bool(0.5) { 2 } else { 3 };
        let n = r.gen_range(2..=3);
        let ideal = random_ideal_in(case, p, n, 6, &mut r);
        let f = random_poly(&mut r, &ideal.ctx, 6, 4, 100, 6);
        let k = r.gen_range(1..=4);
        let hs: Vec<TateSeries> = (0..k).map(|_| random_poly(&mut r, &ideal.ctx, 6, 3, 30, 6)).collect();
        if hs.iter().any(|h| h.is_zero()) {
            continue;
        }
        let mode = if r.gen_bool(0.5) { RingMode::Rational } else { RingMode::Integral };
        division_contract(&f, &hs, mode).map_err(|e| format!("case {case}: {e}"))?;
    }
    Ok("1000 random divisions".into())
}

fn criterion_10() -> Outcome {
    let ctx = demo_ctx(5);
    let start = Instant::now();
    groebner_basis(&demo_generators(&ctx), RingMode::Integral, Algorithm::F4).map_err(|e| e.to_string())?;
    Ok(format!("informational: no benchmark to reproduce; integral demo via F4 in {:.2?}", start.elapsed()))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (1, "rational demo basis", Box::new(criterion_1)),
        (2, "integral demo basis", Box::new(criterion_2)),
        (3, "membership", Box::new(criterion_3)),
        (4, "rational log-radii", Box::new(criterion_4)),
        (5, "criterion on random corpus", Box::new(|| criterion_5(&corpus))),
        (6, "F4 agrees with Buchberger", Box::new(|| criterion_6(&corpus))),
        (7, "precision stability", Box::new(criterion_7)),
        (8, "residue coherence", Box::new(criterion_8)),
        (9, "division contract", Box::new(criterion_9)),
        (10, "performance note", Box::new(criterion_10)),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    let mut passed = 0;
    for (n, name, run) in &criteria {
        if only.is_some_and(|k| k != *n) {
            continue;
        }
        match run() {
            Ok(msg) => {
                passed += 1;
                println!("criterion {n:>2} PASS  {name}: {msg}");
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {msg}");
            }
        }
    }
    println!("{passed} passed, {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
