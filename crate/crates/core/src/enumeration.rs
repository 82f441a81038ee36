//! Exhaustive generation and exact counting of Kostant pictures of a given
//! height, and of the Tesler matrices, flows and Lusztig data in bijection
//! with them.
//!
//! Pictures are produced depth-first over the multiplicities `c_ij` in
//! standard order, which yields them in lexicographic order of the flattened
//! tuple. At slot `(i, j)` the residual height `r` (height not yet covered)
//! bounds the choice:
//!
//! * `c_ij <= r_i`,
//! * `c_ij >= r_i - r_{j+1}`, since the loops `[i, j']` with `j' > j` that
//!   must absorb the rest of `r_i` all cover vertex `j + 1`,
//! * the last slot of a row takes exactly `r_i`.
//!
//! With these bounds no branch dead-ends, so the cost per picture is linear
//! in the picture size.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::structures::{
    kostant_to_flow, kostant_to_lusztig, kostant_to_tesler, tri_len, tri_positions, IntegralFlow,
    KostantPicture, LusztigDatum, TeslerMatrix,
};
use crate::vectors::{height_from_weight, Height, HookSum, Weight};

/// All pictures of one height, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet {
    pub height: Height,
    pub pictures: Vec<KostantPicture>,
}

impl InstanceSet {
    pub fn len(&self) -> usize {
        self.pictures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pictures.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KostantPicture> {
        self.pictures.iter()
    }

    /// Position of `p` in the canonical order.
    pub fn index_of(&self, p: &KostantPicture) -> Option<usize> {
        self.pictures.binary_search(p).ok()
    }
}

/// Streaming generator over `K[η]` in lexicographic order.
#[derive(Debug, Clone)]
pub struct KostantIter {
    n: usize,
    slots: Vec<(usize, usize)>,
    c: Vec<u32>,
    residual: Vec<i64>,
    // Slots below `frozen` are pinned and never advanced.
    frozen: usize,
    started: bool,
    done: bool,
    first: Option<u32>,
}

impl KostantIter {
    pub fn new(eta: &Height) -> Self {
        let n = eta.len();
        KostantIter {
            n,
            slots: tri_positions(n).collect(),
            c: vec![0; tri_len(n)],
            residual: eta.entries().to_vec(),
            frozen: 0,
            started: false,
            done: eta.is_empty_instance(),
            first: None,
        }
    }

    /// Only the pictures whose first multiplicity `c_11` equals `first`.
    pub fn with_first(eta: &Height, first: u32) -> Self {
        let mut it = KostantIter::new(eta);
        it.first = Some(first);
        it.frozen = 1;
        it
    }

    /// Admissible range for slot `slot`, given a residual that excludes it
    /// and every later slot.
    fn bounds(&self, slot: usize) -> (i64, i64) {
        let (i, j) = self.slots[slot];
        let ri = self.residual[i];
        if j + 1 == self.n {
            (ri, ri)
        } else {
            ((ri - self.residual[j + 1]).max(0), ri)
        }
    }

    fn place(&mut self, slot: usize, value: u32) {
        let (i, j) = self.slots[slot];
        self.c[slot] = value;
        for r in &mut self.residual[i..=j] {
            *r -= value as i64;
        }
    }

    fn remove(&mut self, slot: usize) {
        let (i, j) = self.slots[slot];
        let value = self.c[slot];
        for r in &mut self.residual[i..=j] {
            *r += value as i64;
        }
        self.c[slot] = 0;
    }

    fn fill_from(&mut self, start: usize) {
        for slot in start..self.slots.len() {
            let (lo, hi) = self.bounds(slot);
            debug_assert!(lo <= hi, "dead end at slot {slot}");
            self.place(slot, lo as u32);
        }
    }

    fn current(&self) -> KostantPicture {
        KostantPicture::new(self.n, self.c.clone()).expect("layout matches n")
    }
}

impl Iterator for KostantIter {
    type Item = KostantPicture;

    fn next(&mut self) -> Option<KostantPicture> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            match self.first {
                Some(x) => {
                    let (lo, hi) = self.bounds(0);
                    if (x as i64) < lo || (x as i64) > hi {
                        self.done = true;
                        return None;
                    }
                    self.place(0, x);
                    self.fill_from(1);
                }
                None => self.fill_from(0),
            }
            return Some(self.current());
        }
        for slot in (self.frozen..self.slots.len()).rev() {
            let value = self.c[slot];
            self.remove(slot);
            let (_, hi) = self.bounds(slot);
            if (value as i64) < hi {
                self.place(slot, value + 1);
                self.fill_from(slot + 1);
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

/// Every Kostant picture of height `eta`; empty when any entry is negative.
pub fn enumerate_kostant(eta: &Height) -> InstanceSet {
    InstanceSet {
        height: eta.clone(),
        pictures: KostantIter::new(eta).collect(),
    }
}

/// Same result as [`enumerate_kostant`], splitting the search on the first
/// multiplicity across the rayon pool.
pub fn enumerate_kostant_par(eta: &Height) -> InstanceSet {
    if eta.is_empty_instance() {
        return InstanceSet {
            height: eta.clone(),
            pictures: Vec::new(),
        };
    }
    let top = eta.entries()[0] as u32;
    let chunks: Vec<Vec<KostantPicture>> = (0..=top)
        .into_par_iter()
        .map(|x| KostantIter::with_first(eta, x).collect())
        .collect();
    InstanceSet {
        height: eta.clone(),
        pictures: chunks.into_iter().flatten().collect(),
    }
}

pub fn stream_tesler(h: &HookSum) -> impl Iterator<Item = TeslerMatrix> {
    KostantIter::new(&h.height()).map(|p| kostant_to_tesler(&p))
}

/// `T(h)`, listed in the order of the corresponding pictures.
pub fn enumerate_tesler(h: &HookSum) -> Vec<TeslerMatrix> {
    stream_tesler(h).collect()
}

pub fn enumerate_flows(h: &HookSum) -> Vec<IntegralFlow> {
    KostantIter::new(&h.height())
        .map(|p| kostant_to_flow(&p))
        .collect()
}

pub fn enumerate_lusztig(v: &Weight) -> Vec<LusztigDatum> {
    KostantIter::new(&height_from_weight(v))
        .map(|p| kostant_to_lusztig(&p))
        .collect()
}

/// Kostant partition function of `v`.
pub fn kpf_count(v: &Weight) -> BigUint {
    kpf_count_height(&height_from_weight(v))
}

/// Number of pictures of height `eta`, by memoized recursion over the same
/// slot bounds the generator uses.
pub fn kpf_count_height(eta: &Height) -> BigUint {
    if eta.is_empty_instance() {
        return BigUint::zero();
    }
    let mut counter = Counter {
        n: eta.len(),
        slots: tri_positions(eta.len()).collect(),
        memo: HashMap::new(),
    };
    let mut residual = eta.entries().to_vec();
    counter.count(0, &mut residual)
}

struct Counter {
    n: usize,
    slots: Vec<(usize, usize)>,
    memo: HashMap<(usize, Vec<i64>), BigUint>,
}

impl Counter {
    fn count(&mut self, slot: usize, residual: &mut [i64]) -> BigUint {
        if slot == self.slots.len() {
            return BigUint::one();
        }
        let (i, j) = self.slots[slot];
        let key = (slot, residual[i..].to_vec());
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let ri = residual[i];
        let (lo, hi) = if j + 1 == self.n {
            (ri, ri)
        } else {
            ((ri - residual[j + 1]).max(0), ri)
        };
        let mut total = BigUint::zero();
        for x in lo..=hi {
            for r in &mut residual[i..=j] {
                *r -= x;
            }
            total += self.count(slot + 1, residual);
            for r in &mut residual[i..=j] {
                *r += x;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}
