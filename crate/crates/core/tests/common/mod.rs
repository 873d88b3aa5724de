//! Test-only oracle: a straight transcription of the Riemann–Roch formulas on
//! `Ratio<i128>` plus an unpruned basket enumerator. Shares no code with the
//! library's evaluation or search path.

#![allow(dead_code)]

use num_rational::Ratio;

pub type Q = Ratio<i128>;

/// `(q, sorted basket, A³)`.
pub type Hit = (i128, Vec<(i128, i128)>, Q);

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn modp(a: i128, r: i128) -> i128 {
    ((a % r) + r) % r
}

/// `c_Q` for a point `1/r(1,-1,b)` and local index `i`.
pub fn cq(b: i128, r: i128, i: i128) -> Q {
    let mut s = Q::new(-i * (r * r - 1), 12 * r);
    for j in 0..i {
        let x = modp(j * b, r);
        s += Q::new(x * (r - x), 2 * r);
    }
    s
}

pub fn c2c1(pts: &[(i128, i128)]) -> Q {
    let mut s = Q::from_integer(24);
    for &(_, r) in pts {
        s -= Q::new(r * r - 1, r);
    }
    s
}

pub fn r_x(pts: &[(i128, i128)]) -> i128 {
    pts.iter().fold(1, |acc, &(_, r)| acc / gcd(acc, r) * r)
}

/// Local index `i` of `tA`: smallest `i >= 0` with `q i ≡ -t (mod r)`, by search.
pub fn index_t(q: i128, t: i128, r: i128) -> i128 {
    (0..r).find(|&i| modp(q * i + t, r) == 0).expect("q invertible mod r")
}

pub fn chi_t(q: i128, pts: &[(i128, i128)], a3: Q, t: i128) -> Q {
    let mut s = Q::from_integer(1) + Q::new(t * (q + t) * (q + 2 * t), 12) * a3 + Q::new(t, 12 * q) * c2c1(pts);
    for &(b, r) in pts {
        s += cq(b, r, index_t(q, t, r));
    }
    s
}

/// Solve `χ(-A) = 0` for `A³` (the equation is linear in `A³`).
pub fn volume(q: i128, pts: &[(i128, i128)]) -> Q {
    let at_zero = chi_t(q, pts, Q::from_integer(0), -1);
    let slope = Q::new(-(q - 1) * (q - 2), 12);
    -at_zero / slope
}

pub fn l(pts: &[(i128, i128)], m: i128) -> Q {
    let mut s = Q::from_integer(0);
    for &(b, r) in pts {
        for j in 0..m {
            let x = modp(j * b, r);
            s += Q::new(x * (r - x), 2 * r);
        }
    }
    s
}

pub fn chi_neg(pts: &[(i128, i128)], c13: Q, n: i128) -> Q {
    Q::new(n * (n + 1) * (2 * n + 1), 12) * c13 + Q::from_integer(2 * n + 1) - l(pts, n + 1)
}

/// Every point `(b, r)` with `2 <= r <= max_r`, `b <= r/2`, coprime.
pub fn points(max_r: i128) -> Vec<(i128, i128)> {
    let mut v = Vec::new();
    for r in 2..=max_r {
        for b in 1..=r / 2 {
            if gcd(b, r) == 1 {
                v.push((b, r));
            }
        }
    }
    v
}

/// All multisets of at most `k` points (index-nondecreasing tuples), no pruning.
pub fn multisets(pts: &[(i128, i128)], k: usize) -> Vec<Vec<(i128, i128)>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<(usize, Vec<(i128, i128)>)> = vec![(0, vec![])];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, cur) in &frontier {
            for (idx, &p) in pts.iter().enumerate().skip(*start) {
                let mut c = cur.clone();
                c.push(p);
                out.push(c.clone());
                next.push((idx, c));
            }
        }
        frontier = next;
    }
    out
}

/// Brute-force windowed search: `(q, sorted basket, A³)` with
/// `lo < c₁³/c₂c₁ <= hi`.
pub fn brute_windowed(q: i128, max_r: i128, k: usize, lo: Q, hi: Q) -> Vec<Hit> {
    let mut out = Vec::new();
    for mut pts in multisets(&points(max_r), k) {
        if pts.iter().any(|&(_, r)| gcd(r, q) != 1) {
            continue;
        }
        let c2 = c2c1(&pts);
        if c2 <= Q::from_integer(0) {
            continue;
        }
        let a3 = volume(q, &pts);
        if a3 <= Q::from_integer(0) || !(a3 * r_x(&pts)).is_integer() || gcd(r_x(&pts), q) != 1 {
            continue;
        }
        if (1..q).any(|s| chi_t(q, &pts, a3, -s) != Q::from_integer(0)) {
            continue;
        }
        let ratio = a3 * q * q * q / c2;
        if ratio > lo && ratio <= hi {
            pts.sort_by_key(|&(b, r)| (r, b));
            out.push((q, pts, a3));
        }
    }
    out.sort();
    out
}
