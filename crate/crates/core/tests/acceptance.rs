//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p dimlab --test acceptance`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dimlab::corpus::{corpus_generate, CorpusEntry};
use dimlab::elementarity::{check_absoluteness, skolem_closure, FormulaFamily, WitnessMode};
use dimlab::formula::{at_top, delta_formula, dg_formula, eval, ind_formula, Assignment, Formula};
use dimlab::interval::gen::{random_disjoint_pair, random_set, random_triple};
use dimlab::interval::{
    component_split, default_base, default_depth, is_swelling, make_cut, run_demo, swell_1d,
    verify_cut, verify_partition, Findings, IntervalSet, Swell, EVIDENCE_LABEL,
};
use dimlab::lattice::diamond;
use dimlab::wallman::{duality_report, ultrafilters, wallman_space};
use dimlab::{ElementRef, Exec, Lattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 240;
const CORPUS_GROUND: usize = 6;
const CORPUS_SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn timed(limit: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    Outcome {
        pass,
        detail,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    }
}

fn sentence(l: &Lattice, f: &Formula) -> bool {
    eval(l, f, &Assignment::new()).expect("closed formula")
}

struct Dims {
    delta0: Formula,
    ind0: Formula,
    dg0: Formula,
}

fn dims() -> Dims {
    Dims {
        delta0: delta_formula(0).unwrap(),
        ind0: at_top(&ind_formula(0).unwrap()),
        dg0: at_top(&dg_formula(0).unwrap()),
    }
}

// Separativity straight from the definition, on masks.
fn separative_oracle(l: &Lattice) -> bool {
    let m = l.masks();
    m.iter().all(|&a| {
        m.iter()
            .all(|&b| a & !b == 0 || m.iter().any(|&c| c != 0 && c & !a == 0 && c & b == 0))
    })
}

// Maximal filters, without assuming filters are principal when |L| is small.
fn maximal_filters_oracle(l: &Lattice) -> BTreeSet<Vec<usize>> {
    let n = l.len();
    let is_filter = |s: &[usize]| {
        let has = |i: usize| s.binary_search(&i).is_ok();
        !s.is_empty()
            && !has(l.bottom().0)
            && s.iter().all(|&a| {
                (0..n).all(|b| !l.le(ElementRef(a), ElementRef(b)) || has(b))
                    && s.iter()
                        .all(|&c| has(l.meet(ElementRef(a), ElementRef(c)).0))
            })
    };
    let filters: Vec<Vec<usize>> = if n <= 14 {
        (1u32..1 << n)
            .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| is_filter(s))
            .collect()
    } else {
        // every filter of a finite lattice is the upset of its meet
        (0..n)
            .filter(|&a| a != l.bottom().0)
            .map(|a| {
                (0..n)
                    .filter(|&b| l.le(ElementRef(a), ElementRef(b)))
                    .collect::<Vec<_>>()
            })
            .filter(|s| is_filter(s))
            .collect()
    };
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    filters
        .iter()
        .filter(|f| !filters.iter().any(|g| g.len() > f.len() && subset(f, g)))
        .cloned()
        .collect()
}

fn criterion_1(corpus: &[CorpusEntry]) -> Outcome {
    timed(Some(30), || {
        let mut bad = Vec::new();
        let mut separative = 0;
        for e in corpus {
            let l = e.lattice();
            let r = duality_report(&l);
            let sep = separative_oracle(&l);
            if r.injective != r.separative || sep != r.separative || sep != e.separative {
                bad.push(format!("{}: injectivity", e.name));
            }
            if r.separative {
                separative += 1;
                if r.hausdorff != r.normal {
                    bad.push(format!("{}: hausdorff", e.name));
                }
            }
        }
        (
            bad.is_empty() && corpus.len() >= 200,
            format!(
                "{} lattices, {} separative, {} exceptions {:?}",
                corpus.len(),
                separative,
                bad.len(),
                bad
            ),
        )
    })
}

fn criterion_2(corpus: &[CorpusEntry]) -> Outcome {
    timed(None, || {
        let mut bad = Vec::new();
        for e in corpus {
            let l = e.lattice();
            let got: BTreeSet<Vec<usize>> = ultrafilters(&l)
                .iter()
                .map(|u| u.members().iter().map(|r| r.0).collect())
                .collect();
            let atoms: BTreeSet<Vec<usize>> = l
                .atoms()
                .iter()
                .map(|&a| l.refs().filter(|&b| l.le(a, b)).map(|b| b.0).collect())
                .collect();
            if got != atoms || got != maximal_filters_oracle(&l) {
                bad.push(e.name.clone());
            }
        }
        (
            bad.is_empty(),
            format!(
                "{} lattices, {} mismatches {:?}",
                corpus.len(),
                bad.len(),
                bad
            ),
        )
    })
}

fn criterion_3(corpus: &[CorpusEntry]) -> Outcome {
    timed(None, || {
        let d = dims();
        let mut bad = Vec::new();
        let mut checked = 0;
        for e in corpus.iter().filter(|e| e.separative && e.normal) {
            checked += 1;
            let l = e.lattice();
            let ok = sentence(&l, &d.delta0)
                && sentence(&l, &d.ind0)
                && sentence(&l, &d.dg0)
                && wallman_space(&l).is_discrete();
            if !ok {
                bad.push(e.name.clone());
            }
        }
        (
            bad.is_empty() && checked > 0,
            format!(
                "{checked} separative and normal lattices, {} exceptions {:?}",
                bad.len(),
                bad
            ),
        )
    })
}

fn criterion_4() -> Outcome {
    timed(None, || {
        let d = dims();
        let mut bad = Vec::new();
        let dia = diamond();
        let r = duality_report(&dia);
        let got = (
            sentence(&dia, &d.delta0),
            sentence(&dia, &d.ind0),
            sentence(&dia, &d.dg0),
            ultrafilters(&dia).len(),
            r.injective,
        );
        if got != (false, false, false, 2, false) {
            bad.push(format!("diamond {got:?}"));
        }
        let p3 = Lattice::powerset(3).unwrap();
        let r = duality_report(&p3);
        let got = (
            sentence(&p3, &d.delta0),
            sentence(&p3, &d.ind0),
            sentence(&p3, &d.dg0),
            ultrafilters(&p3).len(),
            r.separative
                && r.injective
                && r.normal
                && r.t1
                && r.hausdorff
                && !r.non_separative_caveat,
        );
        if got != (true, true, true, 3, true) {
            bad.push(format!("powerset(3) {got:?}"));
        }
        (
            bad.is_empty(),
            format!(
                "diamond and powerset(3), {} mismatches {:?}",
                bad.len(),
                bad
            ),
        )
    })
}

fn criterion_5() -> Outcome {
    timed(Some(60), || {
        let family = FormulaFamily::standard();
        let delta0 = delta_formula(0).unwrap();
        let ambients = [Lattice::powerset(5).unwrap(), Lattice::powerset(6).unwrap()];
        let ambient_delta = [
            sentence(&ambients[0], &delta0),
            sentence(&ambients[1], &delta0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut bad = Vec::new();
        let mut exhausted = 0;
        for i in 0..50 {
            let which = i % 2;
            let amb = &ambients[which];
            let k = rng.gen_range(1..=3);
            let seed: Vec<ElementRef> = (0..k)
                .map(|_| ElementRef(rng.gen_range(0..amb.len())))
                .collect();
            let mode = if i % 4 < 2 {
                WitnessMode::Canonical
            } else {
                WitnessMode::Random { seed: rng.gen() }
            };
            let budget = rng.gen_range(20..=amb.len());
            let rep = skolem_closure(amb, &seed, &family, budget, mode).unwrap();
            if rep.budget_exhausted {
                exhausted += 1;
                continue;
            }
            let sub = &rep.sublattice;
            let violations = check_absoluteness(amb, sub, &family).unwrap();
            let ok = violations.is_empty()
                && sub.is_separative()
                && sub.is_normal()
                && sentence(sub, &delta0) == ambient_delta[which];
            if !ok {
                bad.push(format!("closure {i}: {} violations", violations.len()));
            }
        }
        (
            bad.is_empty() && exhausted < 50,
            format!(
                "50 closures, {exhausted} budget-exhausted, {} failures {:?}",
                bad.len(),
                bad
            ),
        )
    })
}

fn criterion_6() -> Outcome {
    timed(Some(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut bad = Vec::new();
        // (a)
        for _ in 0..100 {
            let (x, y) = random_disjoint_pair(&mut rng);
            if !matches!(swell_1d(0, &[x.clone(), y.clone()]), Ok(Swell::NoWitness)) {
                bad.push(format!("a0: {x} / {y}"));
            }
        }
        for _ in 0..100 {
            let xs = random_triple(&mut rng);
            match swell_1d(1, &xs) {
                Ok(Swell::Cover(ys)) if is_swelling(&xs, &ys) => {}
                _ => bad.push(format!("a1: {} / {} / {}", xs[0], xs[1], xs[2])),
            }
        }
        // (b)
        for _ in 0..100 {
            let (x, y) = random_disjoint_pair(&mut rng);
            match make_cut(&x, &y) {
                Ok(u) if u.is_disjoint(&x) && u.is_disjoint(&y) && verify_cut(&u, &x, &y) => {}
                _ => bad.push(format!("b: {x} / {y}")),
            }
        }
        // (c)
        let mut partitions = 0;
        let mut attempts = 0;
        while partitions < 100 && attempts < 20_000 {
            attempts += 1;
            let (x, y) = random_disjoint_pair(&mut rng);
            let mut u = random_set(&mut rng, 3);
            if rng.gen_bool(0.5) {
                u = u.union(&make_cut(&x, &y).unwrap());
            }
            if verify_partition(&u, &x, &y).is_some() {
                partitions += 1;
                if !verify_cut(&u, &x, &y) {
                    bad.push(format!("c: {u} / {x} / {y}"));
                }
            }
        }
        if partitions < 100 {
            bad.push(format!("c: only {partitions} partitions found"));
        }
        // (d)
        for _ in 0..100 {
            let (h, a, b) = (
                random_set(&mut rng, 4),
                random_set(&mut rng, 4),
                random_set(&mut rng, 4),
            );
            // components of h are its segments and its isolated points
            let mixed = !h.intersect(&a).intersect(&b).is_empty()
                || h.segments()
                    .iter()
                    .any(|s| a.meets(&s.span()) && b.meets(&s.span()));
            if component_split(&h, &a, &b).is_err() != mixed {
                bad.push(format!("d: {h} / {a} / {b}"));
            }
        }
        (
            bad.is_empty(),
            format!("700 cases, {} violations {:?}", bad.len(), bad),
        )
    })
}

fn criterion_7() -> Outcome {
    timed(None, || {
        let mut bad = Vec::new();
        let mut notes = Vec::new();
        for kind in ["base32", "base33"] {
            let base = default_base(kind).unwrap();
            let depth = default_depth(&base);
            let a = run_demo(&base, depth, 7, Exec::Parallel).unwrap();
            let b = run_demo(&base, depth, 7, Exec::Sequential).unwrap();
            let (ja, jb) = (
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap(),
            );
            if ja != jb {
                bad.push(format!("{kind}: not deterministic"));
            }
            if a.evidence != EVIDENCE_LABEL || !ja.contains(EVIDENCE_LABEL) {
                bad.push(format!("{kind}: evidence label missing"));
            }
            match &a.findings {
                Findings::Base32 {
                    x,
                    y,
                    zero_partitions,
                    pairs_examined,
                    ind0_top,
                } => {
                    if depth != 3
                        || *x != "[0,1/4]".parse::<IntervalSet>().unwrap()
                        || *y != "[3/4,1]".parse::<IntervalSet>().unwrap()
                    {
                        bad.push("base32: wrong setup".into());
                    }
                    notes.push(format!(
                        "base32 depth {depth}: {} zero-partitions in {pairs_examined} pairs, bounded I0(1)={ind0_top}",
                        zero_partitions.len()
                    ));
                }
                Findings::Base33 {
                    nontrivial_elements,
                    topologically_disconnected,
                    lattice_connected,
                    dg0_top_all_connected,
                    dg0_top_connected_below_top,
                    ..
                } => {
                    if *nontrivial_elements < 50 {
                        bad.push(format!("base33: only {nontrivial_elements} elements"));
                    }
                    notes.push(format!(
                        "base33 depth {depth}: {nontrivial_elements} elements, {topologically_disconnected} disconnected, \
                         {lattice_connected} lattice-connected, bounded Dg0(1)={dg0_top_all_connected}/{dg0_top_connected_below_top}"
                    ));
                }
                Findings::RationalIntervals { .. } => bad.push(format!("{kind}: wrong findings")),
            }
        }
        (bad.is_empty(), format!("{}; {:?}", notes.join("; "), bad))
    })
}

fn main() {
    let corpus_start = Instant::now();
    let corpus = corpus_generate(CORPUS_SIZE, CORPUS_GROUND, CORPUS_SEED).expect("corpus");
    let corpus_time = corpus_start.elapsed();
    let results = [
        ("duality", criterion_1(&corpus)),
        ("ultrafilter oracle", criterion_2(&corpus)),
        ("dimension 0", criterion_3(&corpus)),
        ("known values", criterion_4()),
        ("skolem closures", criterion_5()),
        ("interval suite", criterion_6()),
        ("evidence reports", criterion_7()),
    ];
    println!("corpus: {CORPUS_SIZE} lattices, ground <= {CORPUS_GROUND}, seed {CORPUS_SEED}, built in {corpus_time:.2?}");
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let in_time = o.limit.is_none_or(|l| o.elapsed < l);
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let limit = o
            .limit
            .map(|l| format!(" (limit {l:?})"))
            .unwrap_or_default();
        println!(
            "criterion {} [{}] {name}: {} in {:.2?}{limit}; {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            if o.pass { "ok" } else { "wrong" },
            o.elapsed,
            o.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
