//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p selfsim --test acceptance`.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{corpus, finite_corpus, oracle_nc, oracle_ns};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfsim::builtin;
use selfsim::counting::{
    count_nc, count_ns, cycle_after, decide_g0, max_uc_length, nc_set, product_cycle_after,
    reachable_uc_lengths,
};
use selfsim::paradox::{coin_audit, find_minimal_level};
use selfsim::periodic::{check_lemma1, check_lemma2, period_class_nc_count, primitive_words};
use selfsim::{Alphabet, Automaton, EpWord, Error, Transformation, Word};

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn same_alphabet(a: &Transformation, b: &Transformation) -> bool {
    a.alphabet() == b.alphabet()
}

/// Largest level at which both counts are defined, capped at `cap`.
fn sound_level(g: &Transformation, cap: usize) -> usize {
    g.horizon().map_or(cap, |h| h.min(cap))
}

fn c1_adding_machine() -> Outcome {
    let g = builtin::adding();
    let mut checked = 0usize;
    for l in 0..=12usize {
        let modulus = 1usize << l;
        for n in 0..modulus {
            let image = g
                .apply(&Word::from_rank(n, 2, l))
                .map_err(|e| e.to_string())?;
            ensure!(
                image.rank(2) == (n + 1) % modulus,
                "l={l}, w={n}: got {}",
                image.rank(2)
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} words, l <= 12"))
}

fn c2_oracle_equivalence() -> Outcome {
    let corpus = corpus(100);
    let mut cells = 0usize;
    for g in &corpus {
        let l_max = sound_level(g, 8);
        let ns = count_ns(g, l_max).map_err(|e| e.to_string())?;
        let nc = count_nc(g, l_max).map_err(|e| e.to_string())?;
        for l in 0..=l_max {
            ensure!(*ns.at(l) == big(oracle_ns(g, l)), "NS({}, {l})", g.name());
            ensure!(*nc.at(l) == big(oracle_nc(g, l)), "NC({}, {l})", g.name());
            cells += 2;
        }
        if l_max < 8 {
            ensure!(
                matches!(count_ns(g, l_max + 1), Err(Error::NotMaterializable { .. })),
                "{} counted past its horizon",
                g.name()
            );
        }
    }
    Ok(format!(
        "{} transformations, {cells} (l, kind) cells",
        corpus.len()
    ))
}

fn c3_subadditivity() -> Outcome {
    let corpus = corpus(100);
    let mut ns = HashMap::new();
    let mut nc = HashMap::new();
    for (i, g) in corpus.iter().enumerate() {
        let l = sound_level(g, 8);
        let (a, b) = (
            count_ns(g, l).unwrap().counts,
            count_nc(g, l).unwrap().counts,
        );
        let inv = g.inverse();
        ensure!(
            count_ns(&inv, l).unwrap().counts == a,
            "NS({}^-1) differs",
            g.name()
        );
        ensure!(
            count_nc(&inv, l).unwrap().counts == b,
            "NC({}^-1) differs",
            g.name()
        );
        ns.insert(i, a);
        nc.insert(i, b);
    }
    let mut pairs = 0usize;
    for (i, g) in corpus.iter().enumerate() {
        for (j, h) in corpus.iter().enumerate() {
            if !same_alphabet(g, h) {
                continue;
            }
            let gh = g.then(h).map_err(|e| e.to_string())?;
            let l = sound_level(&gh, 8);
            let (ns_gh, nc_gh) = (count_ns(&gh, l).unwrap(), count_nc(&gh, l).unwrap());
            for lv in 0..=l {
                ensure!(
                    *ns_gh.at(lv) <= &ns[&i][lv] + &ns[&j][lv],
                    "NS({}{}, {lv})",
                    g.name(),
                    h.name()
                );
                ensure!(
                    *nc_gh.at(lv) <= &nc[&i][lv] + &nc[&j][lv],
                    "NC({}{}, {lv})",
                    g.name(),
                    h.name()
                );
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} ordered pairs, {} inverses, l <= 8",
        corpus.len()
    ))
}

/// `(g, h, word, (n, m))`
type ProductCase = (
    Transformation,
    Transformation,
    &'static [usize],
    (usize, usize),
);

fn c4_product_cycles() -> Outcome {
    let delayed = Automaton::from_rows(
        Alphabet::numeric(2).unwrap(),
        &["p", "a", "b"],
        &[&[1, 0], &[2, 2], &[1, 1]],
        &[&[0, 1], &[1, 0], &[0, 1]],
    )
    .unwrap();
    let p = Transformation::new(delayed, "p").unwrap();
    let cases: [ProductCase; 4] = [
        (builtin::adding(), builtin::adding(), &[0, 0], (1, 1)),
        (builtin::adding(), builtin::flip_alternator(), &[0], (1, 2)),
        (p.clone(), builtin::adding(), &[1, 0, 0], (2, 1)),
        (p.clone(), p.clone(), &[1, 0, 1, 0], (2, 2)),
    ];
    for (g, h, w, (n, m)) in &cases {
        ensure!(
            cycle_after(g, w) == Some(*n),
            "{} on {w:?}: cycle length",
            g.name()
        );
        let image = g.apply(w).unwrap();
        ensure!(
            cycle_after(h, &image) == Some(*m),
            "{} on {image}: cycle length",
            h.name()
        );
        let (_, len) = product_cycle_after(g, h, w).map_err(|e| e.to_string())?;
        let lcm = num_integer::lcm(*n, *m);
        ensure!(
            len == Some(lcm),
            "product of {} and {}: {len:?} != {lcm}",
            g.name(),
            h.name()
        );
    }
    Ok("(n, m) in (1,1), (1,2), (2,1), (2,2)".into())
}

fn c5_remark_bounds() -> Outcome {
    let g = Transformation::new(builtin::remark_chain(20, None).unwrap(), "q_1").unwrap();
    let ns = count_ns(&g, 20).map_err(|e| e.to_string())?;
    for l in 0..=20u32 {
        let n = ns.at(l as usize);
        ensure!(
            big(2).pow(l) <= *n && *n <= big(3).pow(l),
            "l={l}: NS = {n}"
        );
    }
    ensure!(
        ns.counts[1..=3] == [big(2), big(6), big(16)],
        "pinned values {:?}",
        &ns.counts[1..=3]
    );
    Ok(format!("l <= 20, NS(q_1, 20) = {}", ns.at(20)))
}

fn c6_certificate_levels() -> Outcome {
    let chain = Transformation::new(builtin::remark_chain(8, None).unwrap(), "q_1").unwrap();
    let level = find_minimal_level(&[chain], 8, 16).map_err(|e| e.to_string())?;
    ensure!(level == Some(3), "remark chain: {level:?}");
    let flip = find_minimal_level(&[builtin::flip_all()], 8, 12).map_err(|e| e.to_string())?;
    ensure!(flip.is_none(), "flip_all certified at {flip:?}");
    let (mut members, mut worst) = (0, 0);
    for g in finite_corpus(100) {
        if decide_g0(&g).map_err(|e| e.to_string())?.member {
            let l =
                find_minimal_level(std::slice::from_ref(&g), 8, 64).map_err(|e| e.to_string())?;
            ensure!(l.is_some(), "member {} has no level <= 64", g.name());
            worst = worst.max(l.unwrap());
            members += 1;
        }
    }
    Ok(format!(
        "remark 3, flip_all none, {members} members all <= {worst}"
    ))
}

fn random_primitive(rng: &mut impl Rng, k: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=4);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
        if selfsim::periodic::is_primitive(&w) {
            return Word::new(w);
        }
    }
}

fn c7_lemmas() -> Outcome {
    let pool = finite_corpus(100);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut applicable, mut not_applicable) = (0, 0);
    for case in 0..1000 {
        let g = pool.choose(&mut rng).unwrap();
        let k = g.alphabet().size();
        let l = rng.gen_range(0..=6);
        let prefix = Word::new((0..l).map(|_| rng.gen_range(0..k)).collect());
        let period = random_primitive(&mut rng, k);
        let w = EpWord::new(prefix.clone(), period.clone()).unwrap();
        let avoids = nc_set(g, l).contains(&prefix);

        match check_lemma1(g, &w, l) {
            Ok(v) => {
                ensure!(!avoids, "case {case}: applicable inside the NC-set");
                ensure!(
                    v.holds,
                    "case {case}: period bound fails for {} on {w}",
                    g.name()
                );
                applicable += 1;
            }
            Err(Error::NotApplicable { .. }) => {
                ensure!(avoids, "case {case}: not applicable outside the NC-set");
                not_applicable += 1;
            }
            Err(e) => return Err(format!("case {case}: {e}")),
        }

        let divisor = reachable_uc_lengths(g, l)
            .into_iter()
            .fold(period.len(), num_integer::lcm);
        let verdict = check_lemma2(g, l, max_uc_length(g, l), divisor, &[w])
            .map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            verdict.holds(),
            "case {case}: class not preserved by {}",
            g.name()
        );
        ensure!(
            verdict.skipped == usize::from(avoids),
            "case {case}: skipped sample disagrees with the NC-set"
        );
    }
    Ok(format!(
        "{applicable} applicable, {not_applicable} not applicable, 0 failures"
    ))
}

fn c8_period_classes() -> Outcome {
    let binary = Alphabet::numeric(2).unwrap();
    let periods = primitive_words(&binary, 6);
    let mut checks = 0;
    for g in finite_corpus(100)
        .iter()
        .filter(|g| g.alphabet() == &binary)
    {
        let nc = count_nc(g, 6).map_err(|e| e.to_string())?;
        for l in 0..=6 {
            for t in &periods {
                let n = period_class_nc_count(g, l, t).map_err(|e| e.to_string())?;
                ensure!(
                    big(n as u64) == *nc.at(l),
                    "{} l={l} T={t}: {n} vs {}",
                    g.name(),
                    nc.at(l)
                );
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{checks} (g, l, T) triples, {} periods",
        periods.len()
    ))
}

fn c9_audits() -> Outcome {
    let pool = finite_corpus(100);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    for audit_no in 0..50 {
        let first = pool.choose(&mut rng).unwrap();
        let same: Vec<&Transformation> = pool.iter().filter(|h| same_alphabet(first, h)).collect();
        let k = first.alphabet().size();
        let level = rng.gen_range(0..=8);
        let d = rng.gen_range(1..=4);
        let hs: Vec<Transformation> = (0..d)
            .map(|_| (*same.choose(&mut rng).unwrap()).clone())
            .collect();
        let mut pieces = vec![Vec::new(); d];
        for rank in 0..k.pow(level as u32) {
            pieces[rng.gen_range(0..d)].push(Word::from_rank(rank, k, level));
        }
        let audit = coin_audit(&hs, level, &pieces).map_err(|e| e.to_string())?;
        ensure!(
            audit.total_coins() == k.pow(level as u32) as u64,
            "audit {audit_no}: coins not conserved"
        );
        ensure!(!audit.deficit.is_empty(), "audit {audit_no}: empty deficit");
    }
    Ok("50 audits, coins conserved, deficit always non-empty".into())
}

fn c10_closure() -> Outcome {
    let members: Vec<Transformation> = finite_corpus(100)
        .into_iter()
        .filter(|g| decide_g0(g).unwrap().member)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 20 {
        attempts += 1;
        ensure!(
            attempts < 10_000,
            "could not draw 20 same-alphabet member pairs"
        );
        let g = members.choose(&mut rng).unwrap();
        let h = members.choose(&mut rng).unwrap();
        if !same_alphabet(g, h) {
            continue;
        }
        let gh = g.then(h).map_err(|e| e.to_string())?;
        for (what, t) in [
            ("gh", &gh),
            ("g^-1", &g.inverse()),
            ("h^-1", &h.inverse()),
            ("(gh)^-1", &gh.inverse()),
        ] {
            ensure!(
                decide_g0(t).map_err(|e| e.to_string())?.member,
                "{what} not in G0 for g={}, h={}",
                g.name(),
                h.name()
            );
        }
        pairs += 1;
    }
    Ok(format!("20 pairs from {} members", members.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        (
            "C1 adding machine adds one",
            c1_adding_machine,
            Some(Duration::from_secs(5)),
        ),
        (
            "C2 counts match enumeration",
            c2_oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        (
            "C3 subadditivity and inverse symmetry",
            c3_subadditivity,
            None,
        ),
        ("C4 product cycle length is lcm", c4_product_cycles, None),
        (
            "C5 remark chain bounds",
            c5_remark_bounds,
            Some(Duration::from_secs(5)),
        ),
        ("C6 certificate levels", c6_certificate_levels, None),
        ("C7 periodicity lemmas", c7_lemmas, None),
        ("C8 period-class identity", c8_period_classes, None),
        ("C9 coin audits", c9_audits, None),
        ("C10 membership closure", c10_closure, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
