//! The reproduction checks behind `qfano verify`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use qfano::fano::{
    chi_t_a, enumerate_small_c2c1, enumerate_windowed, primitive_volume, ExclusionList, SearchConfig, SmallC2c1Config,
};
use qfano::hn::{destabilizing_pairs, table1_json, table1_text, table2, table2_json, table2_text, SlopeCap};
use qfano::riemann_roch::hilbert_coeffs;
use qfano::{Basket, FanoCandidate, Rational};

use crate::report::Verdict;

pub const GOLDEN_INDICES: [u32; 5] = [4, 5, 6, 7, 8];

fn r(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// `q R c2c1 c13`, one per distinct class, sorted.
fn classes(found: &[FanoCandidate]) -> String {
    let set: BTreeSet<_> =
        found.iter().map(|c| format!("q={} R={} c2c1={} c13={}", c.q, c.basket.r_set(), c.c2c1, c.c13)).collect();
    join(set)
}

fn error(check: &str, expected: String, e: impl std::fmt::Display) -> Verdict {
    Verdict::compare(check, expected, format!("error: {e}"))
}

fn tables(out: &mut Vec<Verdict>) {
    let expected = [(4, "(3,2)"), (5, "(2,1) (4,2)"), (6, "(5,2)"), (7, "(3,1) (5,2) (6,2)"), (8, "(3,1) (6,2) (7,2)")];
    for (q, want) in expected {
        let got = destabilizing_pairs(q, SlopeCap::Canonical)
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push(Verdict::compare(&format!("table1 q={q}"), want.into(), got));
    }
    let low: Vec<_> = (1..=3).filter(|&q| !destabilizing_pairs(q, SlopeCap::Canonical).is_empty()).collect();
    out.push(Verdict::compare("table1 q<=3 empty", "[]".into(), format!("{low:?}")));

    let expected = [
        (4, "r1=2: 64/21"),
        (5, "r1=1: 100/33; r1=2: 25/8"),
        (6, "r1=2: 16/5"),
        (7, "r1=1: 49/16; r1=2: 49/15"),
        (8, "r1=1: 256/85; r1=2: 256/77"),
    ];
    for (q, want) in expected {
        let check = format!("table2 q={q}");
        out.push(match table2(q) {
            Ok(col) => Verdict::compare(&check, want.into(), join(col.iter().map(|(r1, b)| format!("r1={r1}: {b}")))),
            Err(e) => error(&check, want.into(), e),
        });
    }
}

fn golden(dir: &Path, out: &mut Vec<Verdict>) {
    let renders: [(&str, Result<String, String>); 4] = [
        ("table1.txt", Ok(table1_text(&GOLDEN_INDICES))),
        ("table1.json", Ok(table1_json(&GOLDEN_INDICES))),
        ("table2.txt", table2_text(&GOLDEN_INDICES).map_err(|e| e.to_string())),
        ("table2.json", table2_json(&GOLDEN_INDICES).map_err(|e| e.to_string())),
    ];
    for (name, rendered) in renders {
        let check = format!("golden {name}");
        let path = dir.join(name);
        let expected = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) => {
                out.push(Verdict::compare(
                    &check,
                    format!("contents of {}", path.display()),
                    format!("unreadable: {e}"),
                ));
                continue;
            }
        };
        let actual = rendered.unwrap_or_else(|e| format!("error: {e}"));
        out.push(Verdict::compare(&check, expected, actual));
    }
}

fn windowed(data_dir: &Path, out: &mut Vec<Verdict>) {
    let want = "q=5 R={3,7^2} c2c1=160/21 c13=500/21; q=5 R={4,7} c2c1=375/28 c13=1125/28; \
                q=7 R={2^2,8} c2c1=105/8 c13=343/8";
    let found = match enumerate_windowed(&SearchConfig::paper_window(5..=8)) {
        Ok(found) => found,
        Err(e) => {
            out.push(error("windowed q=5..8", want.into(), e));
            return;
        }
    };
    out.push(Verdict::compare("windowed q=5..8", want.into(), classes(&found)));

    let path = data_dir.join("exclusions.txt");
    let check = "windowed q=5..8 after exclusions";
    let want = "q=5 R={3,7^2} c2c1=160/21 c13=500/21";
    if !path.exists() {
        out.push(Verdict::skipped(check, format!("{} not found", path.display())));
        return;
    }
    out.push(match ExclusionList::load(&path) {
        Ok(list) => Verdict::compare(check, want.into(), classes(&list.apply(found).kept)),
        Err(e) => error(check, want.into(), e),
    });
}

fn remark(out: &mut Vec<Verdict>) {
    let want = "q=4 R={7,13} c2c1=384/91 c13=1152/91";
    match enumerate_windowed(&SearchConfig::remark_window()) {
        Ok(found) => {
            out.push(Verdict::compare("q=4 window", want.into(), classes(&found)));
            let ratios: BTreeSet<String> = found.iter().map(|c| c.ratio().to_string()).collect();
            out.push(Verdict::compare("q=4 ratio", "3".into(), join(ratios)));
        }
        Err(e) => out.push(error("q=4 window", want.into(), e)),
    }
}

fn small(out: &mut Vec<Verdict>) {
    let found = enumerate_small_c2c1(&SmallC2c1Config::new(r("1/10"), r("25/8")));
    let got: BTreeSet<String> = found.iter().map(|c| format!("R={} c2c1={} c13={}", c.r_set, c.c2c1, c.c13)).collect();
    out.push(Verdict::compare(
        "small c2c1 < 1/10",
        "R={2,3,7,13} c2c1=29/546 c13=61/546; R={2^2,3^3,13} c2c1=1/13 c13=1/13; \
         R={2^2,3^3,13} c2c1=1/13 c13=3/13"
            .into(),
        join(got),
    ));
    let min = found.iter().map(|c| c.c2c1.clone()).min();
    out.push(Verdict::compare("minimal c2c1", "29/546".into(), min.map_or("none".into(), |m| m.to_string())));
    let qs: BTreeSet<String> =
        found.iter().filter(|c| c.c2c1 == r("29/546")).map(|c| format!("{:?}", c.possible_q)).collect();
    out.push(Verdict::compare("minimal c2c1 index", "[1]".into(), join(qs)));
    let tiny = enumerate_small_c2c1(&SmallC2c1Config::new(r("29/546"), r("25/8")));
    out.push(Verdict::compare("small c2c1 < 29/546", "0".into(), tiny.len().to_string()));
}

fn weighted_projective(out: &mut Vec<Verdict>) {
    let basket: Basket = "1/2,1/3,2/5".parse().expect("literal basket");
    let check = "P(1,2,3,5) volume";
    let a3 = match primitive_volume(11, &basket) {
        Ok(a3) => a3,
        Err(e) => {
            out.push(error(check, "1/30".into(), e));
            return;
        }
    };
    out.push(Verdict::compare(check, "1/30".into(), a3.to_string()));
    let chis: Vec<String> = (-10..0)
        .map(|t| chi_t_a(11, &basket, &a3, t).map_or_else(|e| format!("error: {e}"), |c| c.to_string()))
        .collect();
    out.push(Verdict::compare("P(1,2,3,5) vanishing", ["0"; 10].join(" "), chis.join(" ")));
    let ratio = Rational::integer(1331) * &a3 / basket.c2c1();
    out.push(Verdict::compare("P(1,2,3,5) ratio", "121/41".into(), ratio.to_string()));
}

fn fingerprint(out: &mut Vec<Verdict>) {
    let basket: Basket = "1/2,1/3,3/7,6/13".parse().expect("literal basket");
    let got = hilbert_coeffs(&basket, &r("61/546"), 2);
    out.push(Verdict::compare("Hilbert fingerprint", "1 0 1".into(), join(got).replace("; ", " ")));
}

/// Every check, in a fixed order.
pub fn run(data_dir: &Path, golden_dir: &Path) -> Vec<Verdict> {
    let mut out = Vec::new();
    tables(&mut out);
    golden(golden_dir, &mut out);
    windowed(data_dir, &mut out);
    remark(&mut out);
    small(&mut out);
    weighted_projective(&mut out);
    fingerprint(&mut out);
    out
}
