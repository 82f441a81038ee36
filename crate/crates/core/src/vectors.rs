//! Indexing vectors for a partition-function instance.
//!
//! An instance on `n` vertices can be named three ways: by its hook sums
//! `h` (length `n`), by its weight `ν = (h, -Σh)` (length `n + 1`, zero sum),
//! or by its height `η` (the prefix sums of `ν`, length `n`). Negative
//! entries are allowed everywhere; an instance whose height has a negative
//! entry is simply empty.

use serde::{Deserialize, Serialize};

use crate::error::{KpfError, Result};

/// Hook sum vector `(h_1, ..., h_n)` of a (generalized) Tesler matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HookSumRepr", into = "HookSumRepr")]
pub struct HookSum(Vec<i64>);

/// A zero-sum vector `(ν_1, ..., ν_{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr", into = "WeightRepr")]
pub struct Weight(Vec<i64>);

/// Number of loops covering each vertex of a Kostant picture.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HeightRepr", into = "HeightRepr")]
pub struct Height(Vec<i64>);

#[derive(Serialize, Deserialize)]
struct HookSumRepr {
    hooks: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    weight: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct HeightRepr {
    height: Vec<i64>,
}

impl HookSum {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(KpfError::InvalidInput(
                "hook sum vector must be non-empty".into(),
            ));
        }
        Ok(HookSum(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn height(&self) -> Height {
        Height(prefix_sums(&self.0))
    }

    pub fn weight(&self) -> Weight {
        weight_from_hooks(self)
    }

    /// True when the instance has no Tesler matrices.
    pub fn is_empty_instance(&self) -> bool {
        self.height().is_empty_instance()
    }
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(KpfError::InvalidInput(
                "weight needs at least two coordinates".into(),
            ));
        }
        let sum: i64 = entries.iter().sum();
        if sum != 0 {
            return Err(KpfError::InvalidWeight(sum));
        }
        Ok(Weight(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Number of picture vertices, one less than the coordinate count.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn hooks(&self) -> HookSum {
        HookSum(self.0[..self.0.len() - 1].to_vec())
    }
}

impl Height {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(KpfError::InvalidInput(
                "height vector must be non-empty".into(),
            ));
        }
        Ok(Height(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty_instance(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn hooks(&self) -> HookSum {
        HookSum(differences(&self.0))
    }

    /// Fewest loops any picture of this height can have: every rise of the
    /// profile must be the left end of a new loop.
    pub fn min_loops(&self) -> i64 {
        let mut prev = 0;
        let mut total = 0;
        for &e in &self.0 {
            total += (e - prev).max(0);
            prev = e;
        }
        total
    }

    /// Loop count of the all-simple-roots picture.
    pub fn max_loops(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// `(h_1, ..., h_n) -> (h_1, ..., h_n, -Σh)`.
pub fn weight_from_hooks(h: &HookSum) -> Weight {
    let mut v = h.0.clone();
    v.push(-h.total());
    Weight(v)
}

pub fn height_from_weight(v: &Weight) -> Height {
    let n = v.rank();
    Height(prefix_sums(&v.0[..n]))
}

pub fn weight_from_height(eta: &Height) -> Weight {
    let mut v = differences(&eta.0);
    v.push(-eta.0.last().copied().unwrap_or(0));
    Weight(v)
}

fn prefix_sums(xs: &[i64]) -> Vec<i64> {
    xs.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

fn differences(xs: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    xs.iter()
        .map(|&x| {
            let d = x - prev;
            prev = x;
            d
        })
        .collect()
}

impl TryFrom<HookSumRepr> for HookSum {
    type Error = KpfError;
    fn try_from(r: HookSumRepr) -> Result<Self> {
        HookSum::new(r.hooks)
    }
}

impl From<HookSum> for HookSumRepr {
    fn from(h: HookSum) -> Self {
        HookSumRepr { hooks: h.0 }
    }
}

impl TryFrom<WeightRepr> for Weight {
    type Error = KpfError;
    fn try_from(r: WeightRepr) -> Result<Self> {
        Weight::new(r.weight)
    }
}

impl From<Weight> for WeightRepr {
    fn from(w: Weight) -> Self {
        WeightRepr { weight: w.0 }
    }
}

impl TryFrom<HeightRepr> for Height {
    type Error = KpfError;
    fn try_from(r: HeightRepr) -> Result<Self> {
        Height::new(r.height)
    }
}

impl From<Height> for HeightRepr {
    fn from(h: Height) -> Self {
        HeightRepr { height: h.0 }
    }
}
