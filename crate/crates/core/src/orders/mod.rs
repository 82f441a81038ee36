//! Partial orders on partition-function instances.
//!
//! Three of the orders are generated by local "downsteps" on Kostant
//! pictures:
//!
//! * **merge**: two adjacent loops `[i, j]`, `[j+1, k]` become `[i, k]`;
//! * **excess-merge**: merge, plus a properly crossing pair `[i, j]`, `[k, l]`
//!   (`i < k <= j < l`) becomes its intersection `[k, j]` and union `[i, l]`;
//! * **excess-merge-shift** (experimental): excess-merge, plus three
//!   consecutive adjacent loops `[i, a]`, `[a+1, b]`, `[b+1, c]` become
//!   `[i, b']`, `[b'+1, c]` for any `a <= b' <= b`.
//!
//! The fourth, the two-sided dictionary order, compares Lusztig data
//! globally and is evaluated pairwise.

mod export;
mod poset;

pub use export::{poset_to_dot, poset_to_json, LabelStyle};
pub use poset::{
    build_poset, correspondence_by_element, find_order_discrepancy, heights_up_to, is_refinement,
    mobius, rank_function, search_order_discrepancy, transitive_reduction, Discrepancy, Mobius,
    Poset,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{KpfError, Result};
use crate::structures::{KostantPicture, LusztigDatum, TeslerMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Merge,
    ExcessMerge,
    ExcessMergeShift,
    TwoSidedDictionary,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Merge => "merge",
            OrderKind::ExcessMerge => "excess-merge",
            OrderKind::ExcessMergeShift => "excess-merge-shift",
            OrderKind::TwoSidedDictionary => "two-sided-dictionary",
        }
    }

    /// Downstep generator for the local orders; `None` for the dictionary order.
    pub fn downsteps(self) -> Option<fn(&KostantPicture) -> Vec<KostantPicture>> {
        match self {
            OrderKind::Merge => Some(merge_downsteps),
            OrderKind::ExcessMerge => Some(excess_merge_downsteps),
            OrderKind::ExcessMergeShift => Some(excess_merge_shift_downsteps),
            OrderKind::TwoSidedDictionary => None,
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = KpfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "merge" => Ok(OrderKind::Merge),
            "excess-merge" => Ok(OrderKind::ExcessMerge),
            "excess-merge-shift" => Ok(OrderKind::ExcessMergeShift),
            "dictionary" | "two-sided-dictionary" => Ok(OrderKind::TwoSidedDictionary),
            other => Err(KpfError::InvalidInput(format!("unknown order `{other}`"))),
        }
    }
}

fn finish(mut out: Vec<KostantPicture>) -> Vec<KostantPicture> {
    out.sort();
    out.dedup();
    out
}

fn merged(p: &KostantPicture, i: usize, j: usize, k: usize) -> KostantPicture {
    let mut q = p.clone();
    *q.multiplicity_mut(i, j) -= 1;
    *q.multiplicity_mut(j + 1, k) -= 1;
    *q.multiplicity_mut(i, k) += 1;
    q
}

fn push_merges(p: &KostantPicture, out: &mut Vec<KostantPicture>) {
    let n = p.n();
    for (i, j, _) in p.loops() {
        if j + 1 >= n {
            continue;
        }
        for k in j + 1..n {
            if p.multiplicity(j + 1, k) > 0 {
                out.push(merged(p, i, j, k));
            }
        }
    }
}

fn push_crossings(p: &KostantPicture, out: &mut Vec<KostantPicture>) {
    let loops: Vec<_> = p.loops().collect();
    for &(i, j, _) in &loops {
        for &(k, l, _) in &loops {
            if i < k && k <= j && j < l {
                let mut q = p.clone();
                *q.multiplicity_mut(i, j) -= 1;
                *q.multiplicity_mut(k, l) -= 1;
                *q.multiplicity_mut(k, j) += 1;
                *q.multiplicity_mut(i, l) += 1;
                out.push(q);
            }
        }
    }
}

/// Pictures covered by `p` in the merge order. Each has one loop fewer.
pub fn merge_downsteps(p: &KostantPicture) -> Vec<KostantPicture> {
    let mut out = Vec::new();
    push_merges(p, &mut out);
    finish(out)
}

pub fn excess_merge_downsteps(p: &KostantPicture) -> Vec<KostantPicture> {
    let mut out = Vec::new();
    push_merges(p, &mut out);
    push_crossings(p, &mut out);
    finish(out)
}

pub fn excess_merge_shift_downsteps(p: &KostantPicture) -> Vec<KostantPicture> {
    let n = p.n();
    let mut out = Vec::new();
    push_merges(p, &mut out);
    push_crossings(p, &mut out);
    for (i, a, _) in p.loops() {
        for b in a + 1..n {
            if p.multiplicity(a + 1, b) == 0 {
                continue;
            }
            for c in b + 1..n {
                if p.multiplicity(b + 1, c) == 0 {
                    continue;
                }
                for split in a..=b {
                    let mut q = p.clone();
                    *q.multiplicity_mut(i, a) -= 1;
                    *q.multiplicity_mut(a + 1, b) -= 1;
                    *q.multiplicity_mut(b + 1, c) -= 1;
                    *q.multiplicity_mut(i, split) += 1;
                    *q.multiplicity_mut(split + 1, c) += 1;
                    out.push(q);
                }
            }
        }
    }
    finish(out)
}

/// True iff `b` is covered by `a` in the Tesler poset: they agree except
/// `a_ij = b_ij + 1, a_jk = b_jk + 1, a_ik = b_ik − 1` for one triple
/// `i < j < k`, or `a_ij = b_ij + 1, a_jj = b_jj + 1, a_ii = b_ii − 1` for
/// one pair `i < j`.
pub fn tesler_cover(a: &TeslerMatrix, b: &TeslerMatrix) -> Result<bool> {
    if a.n() != b.n() || a.hook_sums() != b.hook_sums() {
        return Err(KpfError::IncomparableInstances(format!(
            "hook sums {:?} and {:?} differ",
            a.hook_sums().entries(),
            b.hook_sums().entries()
        )));
    }
    let n = a.n();
    let mut diffs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let d = a.get(i, j) as i64 - b.get(i, j) as i64;
            if d != 0 {
                if diffs.len() == 3 {
                    return Ok(false);
                }
                diffs.push((i, j, d));
            }
        }
    }
    if diffs.len() != 3 {
        return Ok(false);
    }
    let diff = |i: usize, j: usize| {
        diffs
            .iter()
            .find(|&&(x, y, _)| x == i && y == j)
            .map_or(0, |&(_, _, d)| d)
    };
    let Some(&(i, k, _)) = diffs.iter().find(|&&(_, _, d)| d == -1) else {
        return Ok(false);
    };
    if i == k {
        Ok((i + 1..n).any(|j| diff(i, j) == 1 && diff(j, j) == 1))
    } else {
        Ok((i + 1..k).any(|j| diff(i, j) == 1 && diff(j, k) == 1))
    }
}

/// One step of the two-sided dictionary relation: there are `l <= r` with
/// `upper_l > lower_l`, `upper_r > lower_r` and equality outside `[l, r]`.
/// Equivalently the first and the last differing coordinates both increase.
fn dictionary_step(lower: &[u32], upper: &[u32]) -> bool {
    let first = lower.iter().zip(upper).position(|(x, y)| x != y);
    let last = lower.iter().zip(upper).rposition(|(x, y)| x != y);
    match (first, last) {
        (Some(l), Some(r)) => upper[l] > lower[l] && upper[r] > lower[r],
        _ => false,
    }
}

pub(crate) fn dictionary_lt(lower: &KostantPicture, upper: &KostantPicture) -> bool {
    dictionary_step(lower.multiplicities(), upper.multiplicities())
}

/// `a <= a2` in the two-sided dictionary order.
///
/// The generating relation is already transitive (if the first and last
/// differing coordinates increase from `a` to `b` and from `b` to `c`, they
/// increase from `a` to `c`), so its reflexive closure is the order.
pub fn lusztig_leq(a: &LusztigDatum, a2: &LusztigDatum) -> Result<bool> {
    if a.n() != a2.n() || a.weight() != a2.weight() {
        return Err(KpfError::IncomparableInstances(format!(
            "Lusztig data {:?} and {:?} have different weights",
            a.entries(),
            a2.entries()
        )));
    }
    Ok(a == a2 || dictionary_step(a.entries(), a2.entries()))
}
