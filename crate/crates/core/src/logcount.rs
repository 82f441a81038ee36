//! Exact counts behind the log-cardinality estimates: `L(h) = ln |T(h)|`,
//! rectangular heights, height-diagram dominance and colored-picture maxima.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::enumeration::{kpf_count_height, KostantIter};
use crate::error::{KpfError, Result};
use crate::vectors::{Height, HookSum};

/// An exact count with its natural logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct LogCount {
    pub count: BigUint,
    pub value: f64,
}

impl LogCount {
    pub fn from_count(count: BigUint) -> Result<Self> {
        if count.is_zero() {
            return Err(KpfError::LogOfZero);
        }
        let value = ln_big(&count);
        Ok(LogCount { count, value })
    }
}

/// `ln(x)` for `x >= 1`, accurate to double precision for any size.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |T(h)|` together with the exact count.
pub fn log_count(h: &HookSum) -> Result<LogCount> {
    LogCount::from_count(kpf_count_height(&h.height()))
}

/// Log-count of the rectangular height `[n, m]`, i.e. hook sums
/// `(n, 0^{m-1})`.
pub fn rect_log_count(n: u32, m: usize) -> Result<LogCount> {
    if m == 0 {
        return Err(KpfError::InvalidInput("width must be at least 1".into()));
    }
    let mut hooks = vec![0i64; m];
    hooks[0] = n as i64;
    log_count(&HookSum::new(hooks)?)
}

/// True iff some integer shift `a` makes `eta(i - a) >= eta2(i)` at every
/// position, reading out-of-range entries as 0.
pub fn height_dominates(eta: &Height, eta2: &Height) -> bool {
    let a = eta.entries();
    let b = eta2.entries();
    let at = |v: &[i64], i: i64| {
        if i >= 0 && (i as usize) < v.len() {
            v[i as usize]
        } else {
            0
        }
    };
    // Shifts outside this window put every nonzero entry of `eta2` over zeros.
    let lo = -(a.len() as i64);
    let hi = b.len() as i64;
    (lo..=hi).any(|shift| (0..b.len() as i64).all(|i| at(a, i - shift) >= b[i as usize]))
}

/// Maximum over `p ∈ K[eta]` of the number of ways to color the loops of
/// `p` with `k` colors, equal loops being indistinguishable:
/// `Π binom(c_ij + k − 1, k − 1)`.
pub fn max_colorings(eta: &Height, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(KpfError::InvalidInput(
            "at least one color is required".into(),
        ));
    }
    if eta.is_empty_instance() {
        return Err(KpfError::EmptyInstance(eta.entries().to_vec()));
    }
    let mut cache: Vec<BigUint> = Vec::new();
    let mut best = BigUint::zero();
    for p in KostantIter::new(eta) {
        let mut ways = BigUint::one();
        for &c in p.multiplicities() {
            if c == 0 {
                continue;
            }
            while cache.len() <= c as usize {
                let next = multichoose(k, cache.len() as u32);
                cache.push(next);
            }
            ways *= &cache[c as usize];
        }
        if ways > best {
            best = ways;
        }
    }
    Ok(best)
}

/// `binom(c + k − 1, k − 1)`.
fn multichoose(k: u32, c: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=c as u64 {
        acc = acc * BigUint::from(k as u64 - 1 + i) / BigUint::from(i);
    }
    acc
}

/// Outcome of comparing partition-function counts under dominance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceVerdict {
    /// `eta` dominates `eta2` and `KPF(eta) >= KPF(eta2)`.
    Holds {
        count: BigUint,
        count2: BigUint,
    },
    /// `eta` dominates `eta2` but the counts are in the wrong order.
    Violated {
        count: BigUint,
        count2: BigUint,
    },
    NotApplicable,
}

pub fn dominance_monotonicity_check(eta: &Height, eta2: &Height) -> DominanceVerdict {
    if !height_dominates(eta, eta2) {
        return DominanceVerdict::NotApplicable;
    }
    let count = kpf_count_height(eta);
    let count2 = kpf_count_height(eta2);
    if count >= count2 {
        DominanceVerdict::Holds { count, count2 }
    } else {
        DominanceVerdict::Violated { count, count2 }
    }
}
