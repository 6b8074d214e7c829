//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use pifrac::circuits::{self, gallery};
use pifrac::comb::toffoli;
use pifrac::extract::check_ext;
use pifrac::frac::{id_via_ancilla, reclaim_input, revx};
use pifrac::gen::{self, Limits};
use pifrac::pointed::singleton_laws;
use pifrac::syntax::parse;
use pifrac::{CombD, PtTy, Ty, TyD, Val, ValD};

const CORE_PROGRAMS: usize = 10_000;
const POINTED_PROGRAMS: usize = 10_000;
const PARSED_PROGRAMS: usize = 1_000;
const CORE_BUDGET: Duration = Duration::from_secs(60);
const EXT_BUDGET: Duration = Duration::from_secs(120);
const LAW_MAX_SIZE: u64 = 4;
const LAW_MAX_TY_DEPTH: usize = 3;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn core_corpus() -> Vec<pifrac::Comb> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let lim = Limits::default();
    (0..CORE_PROGRAMS)
        .map(|_| gen::comb(&mut rng, &lim))
        .collect()
}

fn reversibility(corpus: &[pifrac::Comb]) -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut checked = 0usize;
    for c in corpus {
        let (dom, _) = c.infer().expect("generated programs type check");
        let inv = c.invert();
        for v in dom.enumerate() {
            checked += 1;
            let back = c.eval(&v).and_then(|w| inv.eval(&w));
            if back.as_ref() != Ok(&v) {
                failures += 1;
            }
        }
    }
    let took = start.elapsed();
    outcome(
        failures == 0 && took < CORE_BUDGET,
        format!(
            "{} programs, {checked} inputs, {failures} failures, {:.2}s (limit {}s)",
            corpus.len(),
            took.as_secs_f64(),
            CORE_BUDGET.as_secs()
        ),
    )
}

fn bijectivity(corpus: &[pifrac::Comb]) -> Outcome {
    let mut failures = 0;
    for c in corpus {
        let (dom, cod) = c.infer().expect("generated programs type check");
        let outs: Vec<Val> = dom
            .enumerate()
            .iter()
            .map(|v| c.eval(v).expect("typed"))
            .collect();
        let image: HashSet<&Val> = outs.iter().collect();
        let target: HashSet<Val> = cod.enumerate().into_iter().collect();
        let ok = dom.size() == cod.size()
            && image.len() == outs.len()
            && image.len() == target.len()
            && image.iter().all(|v| target.contains(*v));
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0,
        format!("{} programs, {failures} failures", corpus.len()),
    )
}

fn exception_semantics() -> Outcome {
    let c = reclaim_input();
    let on_false = c.eval(&ValD::ff()).expect("typed");
    let on_true = c.eval(&ValD::tt()).expect("typed");
    let ok = on_false == Some(ValD::ff()) && on_true.is_none();
    outcome(
        ok,
        format!("𝔽 ↦ {}, 𝕋 ↦ {}", show(&on_false), show(&on_true)),
    )
}

fn show(v: &Option<ValD>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "exception".into(),
    }
}

fn id_via_ancilla_identity() -> Outcome {
    let c = id_via_ancilla();
    let rows = c.truth_table().expect("typed");
    let good = rows.iter().filter(|(i, o)| o.as_ref() == Some(i)).count();
    outcome(
        good == 2 && rows.len() == 2,
        format!("{good}/2 inputs returned unchanged"),
    )
}

fn revx_behaviour() -> Outcome {
    let c = revx(&ValD::ff(), &TyD::bool(), &ValD::tt(), &TyD::bool());
    let out = c.eval(&ValD::Gc).expect("typed");
    let round = c.clone().seq(c.invert()).eval(&ValD::Gc).expect("typed");
    let ok = out == Some(ValD::pair(ValD::Gc, ValD::Gc)) && round == Some(ValD::Gc);
    outcome(
        ok,
        format!("gc ↦ {}, with inverse ↦ {}", show(&out), show(&round)),
    )
}

/// Every type expression of depth at most `depth` whose subterms all have
/// cardinality at most `max`.
fn small_types(depth: usize, max: u64) -> Vec<Ty> {
    let mut all = vec![Ty::Zero, Ty::One];
    for _ in 0..depth {
        let prev = all.clone();
        let mut next: HashSet<Ty> = prev.iter().cloned().collect();
        for a in &prev {
            for b in &prev {
                for t in [
                    Ty::sum(a.clone(), b.clone()),
                    Ty::prod(a.clone(), b.clone()),
                ] {
                    if t.size() <= max {
                        next.insert(t);
                    }
                }
            }
        }
        all = next.into_iter().collect();
    }
    all.sort_by_key(|t| t.to_string());
    all
}

fn singleton_laws_hold() -> Outcome {
    let types: Vec<Ty> = small_types(LAW_MAX_TY_DEPTH, LAW_MAX_SIZE)
        .into_iter()
        .filter(|t| t.size() > 0)
        .collect();
    let mut points = 0;
    let mut instances = 0;
    let mut failures = Vec::new();
    for t in &types {
        for v in t.enumerate() {
            points += 1;
            let pt = PtTy::point(t.clone(), v).expect("enumerated value");
            for law in singleton_laws(&pt).expect("laws build") {
                instances += 1;
                if !law.holds() {
                    failures.push(format!("{} at {pt}", law.name));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "7 laws × {points} points over {} types (size ≤ {LAW_MAX_SIZE}, depth ≤ {LAW_MAX_TY_DEPTH}): {instances} instances, {} failures",
            types.len(),
            failures.len()
        ),
    )
}

fn pointed_corpus() -> Vec<pifrac::PtComb> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let lim = Limits::default();
    (0..POINTED_PROGRAMS)
        .map(|_| gen::pt_comb(&mut rng, &lim))
        .collect()
}

fn determinism(corpus: &[pifrac::PtComb]) -> Outcome {
    let failures = corpus
        .iter()
        .filter(|c| c.eval(&c.dom().focus()) != Ok(c.cod().focus()))
        .count();
    let allocating = corpus.iter().filter(|c| c.allocates()).count();
    outcome(
        failures == 0,
        format!(
            "{} programs ({allocating} allocating), {failures} failures",
            corpus.len()
        ),
    )
}

fn extraction_never_throws(corpus: &[pifrac::PtComb]) -> Outcome {
    let start = Instant::now();
    let mut members = 0;
    let mut failures = Vec::new();
    for c in gallery() {
        if !c.has_pointed() {
            continue;
        }
        for v in c.dom().enumerate() {
            members += 1;
            match c.pointed(&v).expect("has pointed family") {
                Ok(p) if check_ext(&p) => {}
                Ok(_) => failures.push(format!("{} at {v}", c.name)),
                Err(e) => failures.push(format!("{} at {v}: {e}", c.name)),
            }
        }
    }
    let random_failures = corpus.iter().filter(|c| !check_ext(c)).count();
    let took = start.elapsed();
    outcome(
        failures.is_empty() && random_failures == 0 && took < EXT_BUDGET,
        format!(
            "{members} gallery instances ({} failures), {} generated ({random_failures} failures), {:.2}s (limit {}s)",
            failures.len(),
            corpus.len(),
            took.as_secs_f64(),
            EXT_BUDGET.as_secs()
        ),
    )
}

fn toffoli_tables() -> Outcome {
    let t3 = toffoli();
    let t3_ok = Ty::bits(3).enumerate().into_iter().all(|v| {
        let b = v.as_bits().expect("bits");
        t3.eval(&v).ok() == Some(Val::bits(&[b[0], b[1], b[2] ^ (b[0] && b[1])]))
    });
    let t4 = circuits::toffoli4();
    let mut rows = 0;
    let mut absent = 0;
    for v in Ty::bits(4).enumerate() {
        let b = v.as_bits().expect("bits");
        let want = ValD::from(&Val::bits(&[
            b[0],
            b[1],
            b[2],
            b[3] ^ (b[0] && b[1] && b[2]),
        ]));
        match t4.dynamic.eval(&ValD::from(&v)).expect("typed") {
            Some(out) if out == want => rows += 1,
            Some(_) => {}
            None => absent += 1,
        }
    }
    let extracted: HashSet<String> = Ty::bits(4)
        .enumerate()
        .into_iter()
        .map(|v| {
            let p = circuits::toffoli4_pointed(&v).expect("builds");
            pifrac::extract::ext_comb(&p).to_string()
        })
        .collect();
    let ok = t3_ok && rows == 16 && absent == 0 && extracted.len() == 1;
    outcome(
        ok,
        format!(
            "toffoli 8/8: {t3_ok}; toffoli4 {rows}/16 rows, {absent} absent; {} distinct extraction(s) over 16 instances",
            extracted.len()
        ),
    )
}

fn frontend_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_000a);
    let lim = Limits::default();
    let mut programs: Vec<CombD> = gallery().into_iter().map(|c| c.dynamic).collect();
    let named = programs.len();
    programs.extend((0..PARSED_PROGRAMS).map(|_| gen::comb_d(&mut rng, &lim)));
    let mut trip_failures = 0;
    let mut row_failures = 0;
    for c in &programs {
        match parse(&c.to_string()) {
            Ok(p) if p.comb == *c => {}
            _ => trip_failures += 1,
        }
        let (dom, _) = c.infer().expect("typed");
        let rows = c.truth_table().expect("typed").len() as u64;
        row_failures += usize::from(rows != dom.size());
    }
    outcome(
        trip_failures == 0 && row_failures == 0,
        format!(
            "{named} gallery + {PARSED_PROGRAMS} generated: {trip_failures} round-trip failures, {row_failures} row-count mismatches"
        ),
    )
}

fn main() -> ExitCode {
    let core = core_corpus();
    let pointed = pointed_corpus();
    let criteria: Vec<Criterion> = vec![
        ("reversibility", Box::new(|| reversibility(&core))),
        ("bijectivity", Box::new(|| bijectivity(&core))),
        ("exception semantics", Box::new(exception_semantics)),
        ("identity via ancilla", Box::new(id_via_ancilla_identity)),
        ("revx", Box::new(revx_behaviour)),
        ("singleton (co)monad laws", Box::new(singleton_laws_hold)),
        (
            "pointed evaluation determinism",
            Box::new(|| determinism(&pointed)),
        ),
        (
            "extraction never throws",
            Box::new(|| extraction_never_throws(&pointed)),
        ),
        ("toffoli truth tables", Box::new(toffoli_tables)),
        ("frontend round trip", Box::new(frontend_round_trip)),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.passed;
        println!(
            "{} {:>2} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
