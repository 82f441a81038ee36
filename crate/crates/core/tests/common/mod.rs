//! Brute-force oracles. Test code only; none of this shares logic with the
//! library.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Tesler matrices with hook sums `h`, built one row at a time: row `i` must
/// sum to `h_i` plus the column sum above the diagonal, split any way.
pub fn tesler_rows(h: &[i64]) -> Vec<Vec<Vec<u32>>> {
    fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for x in 0..=total {
            prefix.push(x);
            compositions(total - x, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    fn go(h: &[i64], rows: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let n = h.len();
        let i = rows.len();
        if i == n {
            out.push(rows.clone());
            return;
        }
        // rows[k][j - k] is a_kj
        let above: i64 = (0..i).map(|k| rows[k][i - k] as i64).sum();
        let target = h[i] + above;
        if target < 0 {
            return;
        }
        let mut splits = Vec::new();
        compositions(target as u32, n - i, &mut Vec::new(), &mut splits);
        for row in splits {
            rows.push(row);
            go(h, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    go(h, &mut Vec::new(), &mut out);
    out
}

pub fn tesler_count(h: &[i64]) -> u64 {
    tesler_rows(h).len() as u64
}

/// Height vector of a multiplicity vector over loops `[i, j]`, `i <= j`, in
/// row-major order.
pub fn loop_heights(n: usize, mult: &[u32]) -> Vec<i64> {
    let mut eta = vec![0i64; n];
    let mut s = 0;
    for i in 0..n {
        for j in i..n {
            for v in &mut eta[i..=j] {
                *v += mult[s] as i64;
            }
            s += 1;
        }
    }
    eta
}

/// Every multiplicity vector with entries in `0..=max(eta)` whose heights
/// equal `eta`: plain nested counting over the whole box.
pub fn kostant_box(eta: &[i64]) -> BTreeSet<Vec<u32>> {
    let n = eta.len();
    let slots = n * (n + 1) / 2;
    let mut out = BTreeSet::new();
    if eta.iter().any(|&e| e < 0) {
        return out;
    }
    let bound = eta.iter().copied().max().unwrap_or(0) as u32;
    let mut v = vec![0u32; slots];
    loop {
        if loop_heights(n, &v) == eta {
            out.insert(v.clone());
        }
        let mut k = 0;
        while k < slots && v[k] == bound {
            v[k] = 0;
            k += 1;
        }
        if k == slots {
            break;
        }
        v[k] += 1;
    }
    out
}

/// Number of multisets of positive roots `e_i - e_{j+1}` summing to `nu`,
/// by peeling off one root at a time.
pub fn kostant_roots(nu: &[i64]) -> u64 {
    let m = nu.len();
    let mut roots = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            roots.push((i, j));
        }
    }
    fn go(nu: &mut Vec<i64>, roots: &[(usize, usize)], k: usize) -> u64 {
        if k == roots.len() {
            return u64::from(nu.iter().all(|&x| x == 0));
        }
        let (i, j) = roots[k];
        let mut total = 0;
        let mut used = 0;
        loop {
            total += go(nu, roots, k + 1);
            if nu[i] <= 0 {
                break;
            }
            nu[i] -= 1;
            nu[j] += 1;
            used += 1;
        }
        nu[i] += used;
        nu[j] -= used;
        total
    }
    go(&mut nu.to_vec(), &roots, 0)
}

/// Weight `(h_1, ..., h_n, -Σh)`.
pub fn weight_of_hooks(h: &[i64]) -> Vec<i64> {
    let mut v = h.to_vec();
    v.push(-h.iter().sum::<i64>());
    v
}

/// Prefix sums of `h`.
pub fn height_of_hooks(h: &[i64]) -> Vec<i64> {
    h.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Every vector of length `n` with entries in `lo..=hi`.
pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Nonnegative heights with `1..=max_n` entries and sum at most `max_sum`.
pub fn small_heights(max_n: usize, max_sum: i64) -> Vec<Vec<i64>> {
    (1..=max_n)
        .flat_map(|n| grid(n, 0, max_sum))
        .filter(|e| e.iter().sum::<i64>() <= max_sum)
        .collect()
}

/// Reachable from both the core and the cli test trees.
pub const GOLDEN_REGULAR: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../core/tests/golden/regular_tesler_counts.json"
);

/// `(n, |T(1^n)|)` pairs from the committed golden file.
pub fn golden_regular_counts() -> Vec<(usize, u64)> {
    let text =
        std::fs::read_to_string(GOLDEN_REGULAR).unwrap_or_else(|e| panic!("{GOLDEN_REGULAR}: {e}"));
    let v: serde_json::Value = serde_json::from_str(&text).expect("golden file is JSON");
    v["counts"]
        .as_array()
        .expect("counts array")
        .iter()
        .map(|row| {
            (
                row["n"].as_u64().expect("n") as usize,
                row["count"].as_u64().expect("count"),
            )
        })
        .collect()
}
