use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enumeration::enumerate_kostant;
use crate::error::{KpfError, Result};
use crate::structures::KostantPicture;
use crate::vectors::Height;

use super::{dictionary_lt, OrderKind};

/// Rows of a square bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitRows {
            words,
            bits: vec![0; n * words],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    /// `row(dst) |= row(src)`.
    fn union_into(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }
}

/// Strict order relation of a finite DAG, with a topological order.
struct Closure {
    topo: Vec<usize>,
    above: BitRows,
}

/// Topological sort plus strict up-sets. Any cycle is reported as a pair of
/// elements related both ways.
fn closure(m: usize, edges: &[(usize, usize)]) -> Result<Closure> {
    let mut succ = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for &(lo, hi) in edges {
        if lo == hi {
            return Err(KpfError::NotAPartialOrder(lo, hi));
        }
        succ[lo].push(hi);
        indeg[hi] += 1;
    }
    let mut stack: Vec<usize> = (0..m).rev().filter(|&x| indeg[x] == 0).collect();
    let mut topo = Vec::with_capacity(m);
    while let Some(x) = stack.pop() {
        topo.push(x);
        for &y in succ[x].iter().rev() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if topo.len() < m {
        let x = (0..m)
            .find(|&x| indeg[x] > 0)
            .expect("a node is left on a cycle");
        let y = succ[x].iter().copied().find(|&y| indeg[y] > 0).unwrap_or(x);
        return Err(KpfError::NotAPartialOrder(x, y));
    }
    let mut above = BitRows::new(m);
    for &x in topo.iter().rev() {
        for &y in &succ[x] {
            above.set(x, y);
            above.union_into(x, y);
        }
    }
    Ok(Closure { topo, above })
}

fn reduce(m: usize, c: &Closure) -> Vec<(usize, usize)> {
    let mut below = BitRows::new(m);
    for x in 0..m {
        for y in 0..m {
            if c.above.get(x, y) {
                below.set(y, x);
            }
        }
    }
    let mut covers = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if !c.above.get(x, y) {
                continue;
            }
            let between = c
                .above
                .row(x)
                .iter()
                .zip(below.row(y))
                .any(|(a, b)| a & b != 0);
            if !between {
                covers.push((x, y));
            }
        }
    }
    covers
}

/// Cover relation of the order generated by `edges` (pairs `(lower, upper)`):
/// an edge survives iff no path of length at least two joins its ends.
pub fn transitive_reduction(m: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let c = closure(m, edges)?;
    Ok(reduce(m, &c))
}

/// A finite poset on the Kostant pictures of one height.
#[derive(Clone)]
pub struct Poset {
    pub height: Height,
    pub kind: OrderKind,
    /// Ground set in canonical enumeration order.
    pub elements: Vec<KostantPicture>,
    /// Cover pairs `(lower, upper)`, sorted.
    pub covers: Vec<(usize, usize)>,
    pub ranked: bool,
    pub unique_min: bool,
    pub unique_max: bool,
    topo: Vec<usize>,
    above: BitRows,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("height", &self.height)
            .field("kind", &self.kind)
            .field("elements", &self.elements.len())
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    fn from_edges(
        height: Height,
        kind: OrderKind,
        elements: Vec<KostantPicture>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let m = elements.len();
        let c = closure(m, edges)?;
        let mut covers = reduce(m, &c);
        covers.sort_unstable();
        let mut poset = Poset {
            height,
            kind,
            elements,
            covers,
            ranked: false,
            unique_min: false,
            unique_max: false,
            topo: c.topo,
            above: c.above,
        };
        poset.unique_min = poset.minimal_elements().len() == 1;
        poset.unique_max = poset.maximal_elements().len() == 1;
        poset.ranked = poset.compute_ranks().is_some();
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &KostantPicture) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Strict comparison `x < y`.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above.get(x, y)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements in a linear extension, bottom first.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.1 == x)
            .map(|c| c.0)
            .collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|c| c.0 == x)
            .map(|c| c.1)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.len()];
        for &(_, hi) in &self.covers {
            has_lower[hi] = true;
        }
        (0..self.len()).filter(|&x| !has_lower[x]).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        let mut has_upper = vec![false; self.len()];
        for &(lo, _) in &self.covers {
            has_upper[lo] = true;
        }
        (0..self.len()).filter(|&x| !has_upper[x]).collect()
    }

    /// Rank 1 at every minimal element and +1 along every cover, if such a
    /// function exists.
    fn compute_ranks(&self) -> Option<Vec<u32>> {
        let mut lower = vec![Vec::new(); self.len()];
        for &(lo, hi) in &self.covers {
            lower[hi].push(lo);
        }
        let mut rank = vec![0u32; self.len()];
        for &x in &self.topo {
            rank[x] = match lower[x].split_first() {
                None => 1,
                Some((&first, rest)) => {
                    let r = rank[first];
                    if rest.iter().any(|&y| rank[y] != r) {
                        return None;
                    }
                    r + 1
                }
            };
        }
        Some(rank)
    }
}

/// Builds the poset of `kind` on `K[eta]`.
///
/// Local orders take one edge per downstep and reduce; the dictionary order
/// is evaluated on every ordered pair. In both cases a relation that fails to
/// be antisymmetric is reported, never repaired.
pub fn build_poset(eta: &Height, kind: OrderKind) -> Result<Poset> {
    let set = enumerate_kostant(eta);
    if set.is_empty() {
        return Err(KpfError::EmptyInstance(eta.entries().to_vec()));
    }
    let elements = set.pictures;
    let mut edges = Vec::new();
    match kind.downsteps() {
        Some(down) => {
            for (hi, p) in elements.iter().enumerate() {
                for q in down(p) {
                    let lo = elements
                        .binary_search(&q)
                        .expect("downsteps preserve the height");
                    edges.push((lo, hi));
                }
            }
        }
        None => {
            for (x, p) in elements.iter().enumerate() {
                for (y, q) in elements.iter().enumerate() {
                    if x != y && dictionary_lt(p, q) {
                        edges.push((x, y));
                    }
                }
            }
        }
    }
    Poset::from_edges(eta.clone(), kind, elements, &edges)
}

/// `rank(x)`: 1 on minimal elements, +1 per cover.
///
/// For merge posets this is `loops(x) - min loops + 1`, which for
/// nonnegative hook sums is the walk's `entry_sum - Σh + 1`.
pub fn rank_function(p: &Poset) -> Result<Vec<u32>> {
    p.compute_ranks().ok_or(KpfError::NotRanked)
}

/// Möbius values `μ(0̂, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub values: Vec<BigInt>,
    /// The unique minimum, or `None` when `0̂` was adjoined.
    pub bottom: Option<usize>,
}

impl Mobius {
    pub fn synthetic_bottom(&self) -> bool {
        self.bottom.is_none()
    }

    pub fn max_abs(&self) -> BigInt {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// `μ(0̂, x)` for every element by `μ(0̂, x) = −Σ_{0̂ <= y < x} μ(0̂, y)`,
/// adjoining a formal bottom when the minimum is not unique.
pub fn mobius(p: &Poset) -> Mobius {
    let minima = p.minimal_elements();
    let bottom = if minima.len() == 1 {
        Some(minima[0])
    } else {
        None
    };
    let m = p.len();
    let mut values = vec![BigInt::zero(); m];
    for &x in p.topological_order() {
        if Some(x) == bottom {
            values[x] = BigInt::one();
            continue;
        }
        let mut s = if bottom.is_none() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        for (y, v) in values.iter().enumerate() {
            if p.less(y, x) {
                s += v;
            }
        }
        values[x] = -s;
    }
    Mobius { values, bottom }
}

/// Maps each element of `coarse` to the index of the same picture in `fine`.
pub fn correspondence_by_element(fine: &Poset, coarse: &Poset) -> Result<Vec<usize>> {
    if fine.len() != coarse.len() {
        return Err(KpfError::CardinalityMismatch(fine.len(), coarse.len()));
    }
    coarse
        .elements
        .iter()
        .map(|e| {
            fine.index_of(e).ok_or_else(|| {
                KpfError::InvalidInput(format!("{e} is missing from the finer poset"))
            })
        })
        .collect()
}

/// True iff every strict relation of `coarse` holds, in the same direction,
/// in `fine`. `correspondence[x]` is the index in `fine` of element `x` of
/// `coarse`.
pub fn is_refinement(fine: &Poset, coarse: &Poset, correspondence: &[usize]) -> Result<bool> {
    if fine.len() != coarse.len() || correspondence.len() != coarse.len() {
        return Err(KpfError::CardinalityMismatch(fine.len(), coarse.len()));
    }
    let mut hit = vec![false; fine.len()];
    for &c in correspondence {
        if c >= fine.len() || std::mem::replace(&mut hit[c], true) {
            return Err(KpfError::InvalidInput(
                "correspondence is not a bijection".into(),
            ));
        }
    }
    for x in 0..coarse.len() {
        for y in 0..coarse.len() {
            if coarse.less(x, y) && !fine.less(correspondence[x], correspondence[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An ordered pair related in exactly one of two orders on the same ground
/// set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub height: Height,
    pub kind: OrderKind,
    pub lower: KostantPicture,
    pub upper: KostantPicture,
    /// Whether `lower < upper` holds in the candidate order; the dictionary
    /// order says the opposite.
    pub in_candidate: bool,
}

/// First ordered pair `(x, y)`, in canonical index order, with `x < y` in
/// exactly one of `kind` and the two-sided dictionary order.
pub fn find_order_discrepancy(eta: &Height, kind: OrderKind) -> Result<Option<Discrepancy>> {
    if eta.is_empty_instance() {
        return Ok(None);
    }
    let cand = build_poset(eta, kind)?;
    let dict = if kind == OrderKind::TwoSidedDictionary {
        cand.clone()
    } else {
        build_poset(eta, OrderKind::TwoSidedDictionary)?
    };
    for x in 0..cand.len() {
        for y in 0..cand.len() {
            if x != y && cand.less(x, y) != dict.less(x, y) {
                return Ok(Some(Discrepancy {
                    height: eta.clone(),
                    kind,
                    lower: cand.elements[x].clone(),
                    upper: cand.elements[y].clone(),
                    in_candidate: cand.less(x, y),
                }));
            }
        }
    }
    Ok(None)
}

/// Every height with `1..=max_n` entries, all nonnegative, summing to at most
/// `max_sum`; ordered by length, then total, then lexicographically.
pub fn heights_up_to(max_n: usize, max_sum: u32) -> Vec<Height> {
    fn compositions(n: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Height>) {
        if prefix.len() + 1 == n {
            prefix.push(total);
            out.push(Height::new(prefix.clone()).expect("n >= 1"));
            prefix.pop();
            return;
        }
        for x in 0..=total {
            prefix.push(x);
            compositions(n, total - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for total in 0..=max_sum as i64 {
            compositions(n, total, &mut Vec::new(), &mut out);
        }
    }
    out
}

/// Runs [`find_order_discrepancy`] over [`heights_up_to`] and returns the
/// first witness, if any.
pub fn search_order_discrepancy(
    kind: OrderKind,
    max_n: usize,
    max_sum: u32,
) -> Result<Option<Discrepancy>> {
    for eta in heights_up_to(max_n, max_sum) {
        if let Some(d) = find_order_discrepancy(&eta, kind)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
