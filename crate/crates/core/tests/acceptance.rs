//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails. All comparisons are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use qfano::arith::gcd;
use qfano::fano::{
    chi_t_a, enumerate_small_c2c1, enumerate_windowed, primitive_volume, ExclusionList, SearchConfig, SmallC2c1Config,
    UpperBound,
};
use qfano::hn::{destabilizing_pairs, hn_types, langer_bound, table2, SlopeCap};
use qfano::riemann_roch::{chi_neg_nK, h0_neg_K, hilbert_coeffs, local_term_raw};
use qfano::{Basket, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn classes_of(found: &[qfano::FanoCandidate]) -> BTreeSet<(u32, String, String, String)> {
    found.iter().map(|c| (c.q, c.basket.r_set().to_string(), c.c2c1.to_string(), c.c13.to_string())).collect()
}

fn table1() -> Outcome {
    let expect: BTreeMap<u32, Vec<(u32, u32)>> = [
        (4, vec![(3, 2)]),
        (5, vec![(2, 1), (4, 2)]),
        (6, vec![(5, 2)]),
        (7, vec![(3, 1), (5, 2), (6, 2)]),
        (8, vec![(3, 1), (6, 2), (7, 2)]),
    ]
    .into();
    for (&qq, pairs) in &expect {
        let got = destabilizing_pairs(qq, SlopeCap::Canonical);
        check(&got == pairs, || format!("q={qq}: expected {pairs:?}, got {got:?}"))?;
    }
    for qq in 1..=3 {
        check(hn_types(qq, SlopeCap::Canonical).is_empty(), || format!("q={qq} not empty"))?;
    }
    for qq in 1..=8 {
        check(hn_types(qq, SlopeCap::Canonical).iter().all(|t| t.len() == 2), || format!("length-3 type at q={qq}"))?;
    }
    Ok("pairs for q=4..8 match; q<=3 empty; no length-3 types".into())
}

fn table2_check() -> Outcome {
    let expect: [(u32, Option<&str>, &str); 5] = [
        (4, None, "64/21"),
        (5, Some("100/33"), "25/8"),
        (6, None, "16/5"),
        (7, Some("49/16"), "49/15"),
        (8, Some("256/85"), "256/77"),
    ];
    for (qq, r1, r2) in expect {
        let col = table2(qq).map_err(|e| e.to_string())?;
        let want1 = r1.map(q);
        check(col.get(&1) == want1.as_ref(), || format!("q={qq} r1=1: {:?} vs {want1:?}", col.get(&1)))?;
        check(col.get(&2) == Some(&q(r2)), || format!("q={qq} r1=2: {:?} vs {r2}", col.get(&2)))?;
        check(col.len() == 1 + r1.is_some() as usize, || format!("q={qq}: extra cells {col:?}"))?;
    }
    Ok("all ten cells exact, '/' cells absent".into())
}

fn three_cases() -> Outcome {
    let found = enumerate_windowed(&SearchConfig::paper_window(5..=8)).map_err(|e| e.to_string())?;
    let got = classes_of(&found);
    let want: BTreeSet<_> =
        [(5, "{4,7}", "375/28", "1125/28"), (5, "{3,7^2}", "160/21", "500/21"), (7, "{2^2,8}", "105/8", "343/8")]
            .into_iter()
            .map(|(a, b, c, d)| (a, b.to_string(), c.to_string(), d.to_string()))
            .collect();
    check(got == want, || format!("classes {got:?}"))?;
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/exclusions.txt");
    let list = ExclusionList::load(path).map_err(|e| e.to_string())?;
    let kept = classes_of(&list.apply(found).kept);
    let want_kept: BTreeSet<_> = [(5, "{3,7^2}".to_string(), "160/21".to_string(), "500/21".to_string())].into();
    check(kept == want_kept, || format!("after exclusions {kept:?}"))?;
    Ok("three classes; exclusions leave (160/21, 500/21)".into())
}

fn q4_case() -> Outcome {
    let found = enumerate_windowed(&SearchConfig::remark_window()).map_err(|e| e.to_string())?;
    let got = classes_of(&found);
    let want: BTreeSet<_> = [(4, "{7,13}".to_string(), "384/91".to_string(), "1152/91".to_string())].into();
    check(got == want, || format!("classes {got:?}"))?;
    check(found.iter().all(|c| c.ratio() == q("3")), || "ratio != 3".into())?;
    Ok("R={7,13}, c2c1=384/91, c1^3=1152/91, ratio 3".into())
}

fn small_c2c1() -> Outcome {
    let found = enumerate_small_c2c1(&SmallC2c1Config::new(q("1/10"), q("25/8")));
    let mut got: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for c in &found {
        got.entry((c.r_set.clone(), c.c2c1.to_string())).or_default().insert(c.c13.to_string());
    }
    let want: BTreeMap<(String, String), BTreeSet<String>> =
        [(("{2^2,3^3,13}", "1/13"), vec!["1/13", "3/13"]), (("{2,3,7,13}", "29/546"), vec!["61/546"])]
            .into_iter()
            .map(|((a, b), v)| ((a.to_string(), b.to_string()), v.into_iter().map(String::from).collect()))
            .collect();
    check(got == want, || format!("classes {got:?}"))?;
    let minimal: Vec<_> = found.iter().filter(|c| c.c2c1 == q("29/546")).collect();
    check(minimal.iter().all(|c| c.possible_q == vec![1]), || "possible_q != {1}".into())?;
    Ok("two classes; minimum 29/546 forces q=1".into())
}

fn p1235() -> Outcome {
    let b: Basket = "1/2,1/3,2/5".parse().unwrap();
    let a3 = primitive_volume(11, &b).map_err(|e| e.to_string())?;
    check(a3 == q("1/30"), || format!("A3 = {a3}"))?;
    for t in -10..0 {
        let chi = chi_t_a(11, &b, &a3, t).map_err(|e| e.to_string())?;
        check(chi.is_zero(), || format!("chi(tA) = {chi} at t={t}"))?;
    }
    let c13 = Rational::integer(1331) * &a3;
    check(c13 == q("1331/30"), || format!("c13 = {c13}"))?;
    check(b.c2c1() == q("451/30"), || format!("c2c1 = {}", b.c2c1()))?;
    let ratio = &c13 / &b.c2c1();
    check(ratio == q("121/41"), || format!("ratio = {ratio}"))?;
    Ok("10 vanishings, A3=1/30, c1^3=1331/30, c2c1=451/30, ratio 121/41".into())
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(0..12);
        let mut pairs = Vec::with_capacity(n);
        while pairs.len() < n {
            let r: i64 = rng.gen_range(2..=30);
            let b: i64 = rng.gen_range(1..r);
            if gcd(b as u64, r as u64) == 1 {
                pairs.push((b, r));
            }
        }
        let basket = Basket::from_pairs(&pairs).unwrap();
        check(basket.c2c1() + basket.singularity_sum() == Rational::integer(24), || {
            format!("identity fails on {basket}")
        })?;
        let c13 = Rational::new(rng.gen_range(-500..500), rng.gen_range(1..500));
        check(chi_neg_nK(&basket, &c13, 0) == Rational::one(), || format!("chi(0) != 1 on {basket}"))?;
    }
    for r in 2i64..=30 {
        for b in 1..r {
            if gcd(b as u64, r as u64) != 1 {
                continue;
            }
            for i in 0..r {
                check(local_term_raw(b, r, i) == local_term_raw(r - b, r, i), || {
                    format!("flip fails at {b}/{r}, i={i}")
                })?;
            }
        }
    }
    let mut emitted = enumerate_windowed(&SearchConfig::paper_window(5..=8)).map_err(|e| e.to_string())?;
    emitted.extend(enumerate_windowed(&SearchConfig::remark_window()).map_err(|e| e.to_string())?);
    for c in &emitted {
        check(h0_neg_K(&c.basket, &c.c13).is_nonnegative_integer(), || format!("h0 on {c:?}"))?;
        for chi in hilbert_coeffs(&c.basket, &c.c13, 10) {
            check(chi.is_nonnegative_integer(), || format!("Hilbert coefficient {chi} on {c:?}"))?;
        }
    }
    for c in enumerate_small_c2c1(&SmallC2c1Config::new(q("1/10"), q("25/8"))) {
        check(c.h0.is_nonnegative_integer(), || format!("h0 on {}", c.basket))?;
        for chi in &c.hilbert {
            check(chi.is_nonnegative_integer(), || format!("Hilbert coefficient {chi} on {}", c.basket))?;
        }
    }
    for qq in 4..=8 {
        for (q1, r1) in destabilizing_pairs(qq, SlopeCap::Canonical) {
            let b = langer_bound(qq, q1, r1).map_err(|e| e.to_string())?;
            check(b > Rational::integer(3), || format!("bound {b} at q={qq} ({q1},{r1})"))?;
        }
    }
    for (qq, hi) in [(5u32, q("25/8")), (7, q("49/15"))] {
        for (lo, hi) in [(Rational::zero(), Rational::integer(1000)), (q("121/41"), hi)] {
            let mut cfg = SearchConfig::new([qq], lo.clone(), UpperBound::Fixed(hi.clone()));
            cfg.max_points = 3;
            cfg.allowed_r = Some((2..=8).collect());
            let lib: BTreeSet<String> = enumerate_windowed(&cfg)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|c| format!("{} {}", c.basket, c.a3))
                .collect();
            let to_q = |x: &Rational| common::Q::new(x.numer().try_into().unwrap(), x.denom().try_into().unwrap());
            let oracle: BTreeSet<String> = common::brute_windowed(qq as i128, 8, 3, to_q(&lo), to_q(&hi))
                .into_iter()
                .map(|(_, pts, a3)| {
                    let s: Vec<String> = pts.iter().map(|(b, r)| format!("{b}/{r}")).collect();
                    format!("{} {a3}", s.join(","))
                })
                .collect();
            check(lib == oracle, || format!("q={qq} window ({lo},{hi}]: {lib:?} vs {oracle:?}"))?;
        }
    }
    Ok(format!("1000 random baskets, flip symmetry r<=30, {} candidates integral, oracle agrees", emitted.len()))
}

fn fingerprint() -> Outcome {
    let b: Basket = "1/2,1/3,3/7,6/13".parse().unwrap();
    let got = hilbert_coeffs(&b, &q("61/546"), 2);
    let oracle: Vec<common::Q> =
        (0..=2).map(|n| common::chi_neg(&[(1, 2), (1, 3), (3, 7), (6, 13)], common::Q::new(61, 546), n)).collect();
    let want = vec![q("1"), q("0"), q("1")];
    check(got == want, || format!("{got:?}"))?;
    check(oracle.iter().map(|x| x.to_string()).collect::<Vec<_>>() == ["1", "0", "1"], || {
        format!("oracle {oracle:?}")
    })?;
    Ok("[1, 0, 1]".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 destabilising pairs", Duration::from_secs(1), table1),
        ("2 effective bounds", Duration::from_secs(1), table2_check),
        ("3 windowed enumeration q=5..8", Duration::from_secs(300), three_cases),
        ("4 q=4 enumeration", Duration::from_secs(300), q4_case),
        ("5 small c2c1 search", Duration::from_secs(600), small_c2c1),
        ("6 P(1,2,3,5) cross-check", Duration::from_secs(1), p1235),
        ("7 property suite", Duration::from_secs(120), properties),
        ("8 Hilbert fingerprint", Duration::from_secs(1), fingerprint),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  {name:<32} {:>8.3}s  {msg}", elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {name:<32} {:>8.3}s  {msg}", elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
