//! The four encodings of a partition-function instance and the bijections
//! among them.
//!
//! All four share one storage layout: a flattened upper triangle of `n(n+1)/2`
//! nonnegative integers in row-major order `(0,0), (0,1), ..., (0,n-1), (1,1),
//! ..., (n-1,n-1)`. For pictures and Lusztig data slot `(i, j)` is the
//! multiplicity of the root `α_ij` (a loop over vertices `i..=j`). Flows use
//! slot `(i, j - 1)` for the edge `i -> j`. Tesler matrices are the only
//! encoding whose slots mean something else: off-diagonal `a_ij` is the edge
//! `i -> j`, and the diagonal `a_ii` is the edge `i -> n`.
//!
//! Indices in the Rust API are 0-based; JSON encodings are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KpfError, Result};
use crate::vectors::{weight_from_height, Height, HookSum, Weight};

pub(crate) fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Row-major offset of `(i, j)`, `i <= j < n`.
#[inline]
pub(crate) fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// `(i, j)` pairs in storage order.
pub(crate) fn tri_positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(KpfError::InvalidInput("n must be positive".into()));
    }
    if len != tri_len(n) {
        return Err(KpfError::DimensionMismatch {
            expected: tri_len(n),
            actual: len,
        });
    }
    Ok(())
}

/// A multiset of loops `[i, j]` on `n` ordered vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KostantRepr", into = "KostantRepr")]
pub struct KostantPicture {
    n: usize,
    mult: Vec<u32>,
}

impl KostantPicture {
    pub fn new(n: usize, mult: Vec<u32>) -> Result<Self> {
        check_len(n, mult.len())?;
        Ok(KostantPicture { n, mult })
    }

    pub fn empty(n: usize) -> Self {
        KostantPicture {
            n,
            mult: vec![0; tri_len(n)],
        }
    }

    /// Builds a picture from a list of loops; repeated loops add up.
    pub fn from_loops(n: usize, loops: &[(usize, usize)]) -> Result<Self> {
        let mut p = KostantPicture::empty(n);
        for &(i, j) in loops {
            if i > j || j >= n {
                return Err(KpfError::InvalidInput(format!(
                    "loop [{i}, {j}] out of range for n = {n}"
                )));
            }
            p.mult[tri_index(n, i, j)] += 1;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[tri_index(self.n, i, j)]
    }

    pub(crate) fn multiplicity_mut(&mut self, i: usize, j: usize) -> &mut u32 {
        &mut self.mult[tri_index(self.n, i, j)]
    }

    /// Flattened multiplicities in standard order.
    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Nonzero loops as `(i, j, multiplicity)`, lexicographically sorted.
    pub fn loops(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        tri_positions(self.n)
            .zip(self.mult.iter())
            .filter(|(_, &m)| m > 0)
            .map(|((i, j), &m)| (i, j, m))
    }

    pub fn loop_count(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    pub fn height(&self) -> Height {
        let mut eta = vec![0i64; self.n];
        for (i, j, m) in self.loops() {
            for e in &mut eta[i..=j] {
                *e += m as i64;
            }
        }
        Height::new(eta).expect("n > 0")
    }

    pub fn weight(&self) -> Weight {
        weight_from_height(&self.height())
    }
}

impl fmt::Display for KostantPicture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, j, m) in self.loops() {
            for _ in 0..m {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                if i == j {
                    write!(f, "a{}", i + 1)?;
                } else {
                    write!(f, "a{},{}", i + 1, j + 1)?;
                }
            }
        }
        write!(f, "}}")
    }
}

/// Root multiplicities listed in the standard reduced-word order
/// `(a_11, a_12, ..., a_1n, a_22, ..., a_nn)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LusztigRepr", into = "LusztigRepr")]
pub struct LusztigDatum {
    n: usize,
    a: Vec<u32>,
}

impl LusztigDatum {
    pub fn new(n: usize, a: Vec<u32>) -> Result<Self> {
        check_len(n, a.len())?;
        Ok(LusztigDatum { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.a
    }

    pub fn weight(&self) -> Weight {
        lusztig_to_kostant(self).weight()
    }
}

/// Upper-triangular nonnegative integer matrix, upper triangle only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TeslerRepr", into = "TeslerRepr")]
pub struct TeslerMatrix {
    n: usize,
    upper: Vec<u32>,
}

impl TeslerMatrix {
    pub fn new(n: usize, upper: Vec<u32>) -> Result<Self> {
        check_len(n, upper.len())?;
        Ok(TeslerMatrix { n, upper })
    }

    /// Builds from full rows; entries below the diagonal must be zero.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut upper = Vec::with_capacity(tri_len(n));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(KpfError::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            if row[..i].iter().any(|&x| x != 0) {
                return Err(KpfError::InvalidInput(
                    "nonzero entry below the diagonal".into(),
                ));
            }
            upper.extend_from_slice(&row[i..]);
        }
        TeslerMatrix::new(n, upper)
    }

    pub fn zero(n: usize) -> Self {
        TeslerMatrix {
            n,
            upper: vec![0; tri_len(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`; zero below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i > j {
            0
        } else {
            self.upper[tri_index(self.n, i, j)]
        }
    }

    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut u32 {
        &mut self.upper[tri_index(self.n, i, j)]
    }

    pub fn upper(&self) -> &[u32] {
        &self.upper
    }

    pub fn entry_sum(&self) -> u64 {
        self.upper.iter().map(|&x| x as u64).sum()
    }

    pub fn hook_sums(&self) -> HookSum {
        hook_sums(self)
    }

    pub fn weight(&self) -> Weight {
        self.hook_sums().weight()
    }
}

impl fmt::Display for TeslerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (i..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Nonnegative integer flow on the complete DAG over `n + 1` ordered vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FlowRepr", into = "FlowRepr")]
pub struct IntegralFlow {
    // Slot (i, j - 1) holds the flow on edge i -> j.
    n: usize,
    flow: Vec<u32>,
}

impl IntegralFlow {
    pub fn zero(vertices: usize) -> Result<Self> {
        if vertices < 2 {
            return Err(KpfError::InvalidFlow(
                "at least two vertices are required".into(),
            ));
        }
        let n = vertices - 1;
        Ok(IntegralFlow {
            n,
            flow: vec![0; tri_len(n)],
        })
    }

    /// Builds a flow from `(from, to, value)` triples over 0-based vertices.
    /// Missing edges carry zero flow.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let mut f = IntegralFlow::zero(vertices)?;
        let mut seen = vec![false; f.flow.len()];
        for &(i, j, v) in edges {
            if i >= j || j >= vertices {
                return Err(KpfError::InvalidFlow(format!(
                    "edge {i} -> {j} is not a forward edge"
                )));
            }
            if v < 0 || v > u32::MAX as i64 {
                return Err(KpfError::InvalidFlow(format!(
                    "edge {i} -> {j} carries {v}"
                )));
            }
            let k = tri_index(f.n, i, j - 1);
            if seen[k] {
                return Err(KpfError::InvalidFlow(format!(
                    "edge {i} -> {j} listed twice"
                )));
            }
            seen[k] = true;
            f.flow[k] = v as u32;
        }
        Ok(f)
    }

    pub fn vertices(&self) -> usize {
        self.n + 1
    }

    /// Flow on edge `i -> j`, `i < j`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i < j && j <= self.n, "edge {i} -> {j} out of range");
        self.flow[tri_index(self.n, i, j - 1)]
    }

    /// All edges `(i, j, flow)` in lexicographic order, zeros included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        tri_positions(self.n)
            .zip(self.flow.iter())
            .map(|((i, j), &v)| (i, j + 1, v))
    }

    /// Out-flow minus in-flow at every vertex.
    pub fn net_flow(&self) -> Vec<i64> {
        let mut net = vec![0i64; self.n + 1];
        for (i, j, v) in self.edges() {
            net[i] += v as i64;
            net[j] -= v as i64;
        }
        net
    }

    /// Net flow at the first `n` vertices.
    pub fn hooks(&self) -> HookSum {
        let net = self.net_flow();
        HookSum::new(net[..self.n].to_vec()).expect("n > 0")
    }

    pub fn weight(&self) -> Weight {
        Weight::new(self.net_flow()).expect("net flow always sums to zero")
    }
}

/// `h_k = Σ_{i ≥ k} a_ki − Σ_{i < k} a_ik`.
pub fn hook_sums(m: &TeslerMatrix) -> HookSum {
    let n = m.n;
    let h = (0..n)
        .map(|k| {
            let row: i64 = (k..n).map(|i| m.get(k, i) as i64).sum();
            let col: i64 = (0..k).map(|i| m.get(i, k) as i64).sum();
            row - col
        })
        .collect();
    HookSum::new(h).expect("n > 0")
}

/// Off-diagonal `a_ij` becomes edge `i -> j`; diagonal `a_ii` becomes edge
/// `i -> n`.
pub fn tesler_to_flow(m: &TeslerMatrix) -> IntegralFlow {
    let n = m.n;
    let mut flow = vec![0; tri_len(n)];
    for (i, j) in tri_positions(n) {
        let v = m.get(i, j);
        let slot = if i == j {
            tri_index(n, i, n - 1)
        } else {
            tri_index(n, i, j - 1)
        };
        flow[slot] = v;
    }
    IntegralFlow { n, flow }
}

/// Inverse of [`tesler_to_flow`]. Fails unless the flow's net-flow vector is
/// `(h, −Σh)`.
pub fn flow_to_tesler(f: &IntegralFlow, hooks: &HookSum) -> Result<TeslerMatrix> {
    let expected = hooks.weight();
    let net = f.net_flow();
    if net != expected.entries() {
        return Err(KpfError::InvalidFlow(format!(
            "net flow {net:?} does not match {:?}",
            expected.entries()
        )));
    }
    Ok(flow_to_tesler_unchecked(f))
}

pub(crate) fn flow_to_tesler_unchecked(f: &IntegralFlow) -> TeslerMatrix {
    let n = f.n;
    let mut upper = vec![0; tri_len(n)];
    for (i, j) in tri_positions(n) {
        let v = if i == j { f.get(i, n) } else { f.get(i, j) };
        upper[tri_index(n, i, j)] = v;
    }
    TeslerMatrix { n, upper }
}

/// Flow on edge `i -> j` becomes the multiplicity of loop `[i, j - 1]`.
pub fn flow_to_kostant(f: &IntegralFlow) -> KostantPicture {
    KostantPicture {
        n: f.n,
        mult: f.flow.clone(),
    }
}

pub fn kostant_to_flow(p: &KostantPicture) -> IntegralFlow {
    IntegralFlow {
        n: p.n,
        flow: p.mult.clone(),
    }
}

pub fn kostant_to_lusztig(p: &KostantPicture) -> LusztigDatum {
    LusztigDatum {
        n: p.n,
        a: p.mult.clone(),
    }
}

pub fn lusztig_to_kostant(a: &LusztigDatum) -> KostantPicture {
    KostantPicture {
        n: a.n,
        mult: a.a.clone(),
    }
}

pub fn tesler_to_kostant(m: &TeslerMatrix) -> KostantPicture {
    flow_to_kostant(&tesler_to_flow(m))
}

pub fn kostant_to_tesler(p: &KostantPicture) -> TeslerMatrix {
    flow_to_tesler_unchecked(&kostant_to_flow(p))
}

/// The all-simple-roots picture `Σ η_i α_i`, the unique maximum of the merge
/// order.
pub fn max_kostant(eta: &Height) -> Result<KostantPicture> {
    if eta.is_empty_instance() {
        return Err(KpfError::EmptyInstance(eta.entries().to_vec()));
    }
    let n = eta.len();
    let mut p = KostantPicture::empty(n);
    for (i, &e) in eta.entries().iter().enumerate() {
        *p.multiplicity_mut(i, i) = e as u32;
    }
    Ok(p)
}

/// Merge-order maximum of `T(h)`: `a_{i,i+1} = η_i` for `i < n - 1`,
/// `a_nn = η_n`, everything else zero.
pub fn max_tesler(h: &HookSum) -> Result<TeslerMatrix> {
    Ok(kostant_to_tesler(&max_kostant(&h.height())?))
}

/// Which of the four encodings a value uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Tesler,
    Kostant,
    Lusztig,
    Flow,
}

impl std::str::FromStr for Representation {
    type Err = KpfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tesler" => Ok(Representation::Tesler),
            "kostant" => Ok(Representation::Kostant),
            "lusztig" => Ok(Representation::Lusztig),
            "flow" => Ok(Representation::Flow),
            other => Err(KpfError::InvalidInput(format!(
                "unknown representation `{other}`"
            ))),
        }
    }
}

/// A value in any of the four encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Tesler(TeslerMatrix),
    Kostant(KostantPicture),
    Lusztig(LusztigDatum),
    Flow(IntegralFlow),
}

impl Structure {
    pub fn from_kostant(p: &KostantPicture, repr: Representation) -> Self {
        match repr {
            Representation::Tesler => Structure::Tesler(kostant_to_tesler(p)),
            Representation::Kostant => Structure::Kostant(p.clone()),
            Representation::Lusztig => Structure::Lusztig(kostant_to_lusztig(p)),
            Representation::Flow => Structure::Flow(kostant_to_flow(p)),
        }
    }

    pub fn to_kostant(&self) -> KostantPicture {
        match self {
            Structure::Tesler(m) => tesler_to_kostant(m),
            Structure::Kostant(p) => p.clone(),
            Structure::Lusztig(a) => lusztig_to_kostant(a),
            Structure::Flow(f) => flow_to_kostant(f),
        }
    }

    pub fn weight(&self) -> Weight {
        match self {
            Structure::Tesler(m) => m.weight(),
            Structure::Kostant(p) => p.weight(),
            Structure::Lusztig(a) => a.weight(),
            Structure::Flow(f) => f.weight(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Structure::Tesler(m) => serde_json::to_string(m),
            Structure::Kostant(p) => serde_json::to_string(p),
            Structure::Lusztig(a) => serde_json::to_string(a),
            Structure::Flow(f) => serde_json::to_string(f),
        }
        .expect("plain integer encodings always serialize")
    }

    pub fn from_json(repr: Representation, line: &str) -> Result<Self> {
        let err = |e: serde_json::Error| KpfError::InvalidInput(e.to_string());
        Ok(match repr {
            Representation::Tesler => Structure::Tesler(serde_json::from_str(line).map_err(err)?),
            Representation::Kostant => Structure::Kostant(serde_json::from_str(line).map_err(err)?),
            Representation::Lusztig => Structure::Lusztig(serde_json::from_str(line).map_err(err)?),
            Representation::Flow => Structure::Flow(serde_json::from_str(line).map_err(err)?),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct KostantRepr {
    n: usize,
    loops: Vec<[u64; 3]>,
}

impl From<KostantPicture> for KostantRepr {
    fn from(p: KostantPicture) -> Self {
        let loops = p
            .loops()
            .map(|(i, j, m)| [i as u64 + 1, j as u64 + 1, m as u64])
            .collect();
        KostantRepr { n: p.n, loops }
    }
}

impl TryFrom<KostantRepr> for KostantPicture {
    type Error = KpfError;
    fn try_from(r: KostantRepr) -> Result<Self> {
        check_len(r.n, tri_len(r.n))?;
        let mut p = KostantPicture::empty(r.n);
        for [i, j, m] in r.loops {
            if i < 1 || i > j || j > r.n as u64 || m > u32::MAX as u64 {
                return Err(KpfError::InvalidInput(format!(
                    "bad loop [{i}, {j}] x{m} for n = {}",
                    r.n
                )));
            }
            *p.multiplicity_mut(i as usize - 1, j as usize - 1) += m as u32;
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct LusztigRepr {
    n: usize,
    a: Vec<u32>,
}

impl From<LusztigDatum> for LusztigRepr {
    fn from(a: LusztigDatum) -> Self {
        LusztigRepr { n: a.n, a: a.a }
    }
}

impl TryFrom<LusztigRepr> for LusztigDatum {
    type Error = KpfError;
    fn try_from(r: LusztigRepr) -> Result<Self> {
        LusztigDatum::new(r.n, r.a)
    }
}

#[derive(Serialize, Deserialize)]
struct TeslerRepr {
    n: usize,
    upper: Vec<u32>,
}

impl From<TeslerMatrix> for TeslerRepr {
    fn from(m: TeslerMatrix) -> Self {
        TeslerRepr {
            n: m.n,
            upper: m.upper,
        }
    }
}

impl TryFrom<TeslerRepr> for TeslerMatrix {
    type Error = KpfError;
    fn try_from(r: TeslerRepr) -> Result<Self> {
        TeslerMatrix::new(r.n, r.upper)
    }
}

#[derive(Serialize, Deserialize)]
struct FlowRepr {
    vertices: usize,
    edges: Vec<[i64; 3]>,
}

impl From<IntegralFlow> for FlowRepr {
    fn from(f: IntegralFlow) -> Self {
        let edges = f
            .edges()
            .map(|(i, j, v)| [i as i64 + 1, j as i64 + 1, v as i64])
            .collect();
        FlowRepr {
            vertices: f.n + 1,
            edges,
        }
    }
}

impl TryFrom<FlowRepr> for IntegralFlow {
    type Error = KpfError;
    fn try_from(r: FlowRepr) -> Result<Self> {
        let mut edges = Vec::with_capacity(r.edges.len());
        for [i, j, v] in r.edges {
            if i < 1 || j < 1 {
                return Err(KpfError::InvalidFlow(format!(
                    "vertex index in edge [{i}, {j}] must be >= 1"
                )));
            }
            edges.push((i as usize - 1, j as usize - 1, v));
        }
        IntegralFlow::from_edges(r.vertices, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hooks(v: &[i64]) -> HookSum {
        HookSum::new(v.to_vec()).unwrap()
    }

    fn tesler(rows: &[&[u32]]) -> TeslerMatrix {
        TeslerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triangle_index_is_row_major() {
        let n = 4;
        for (k, (i, j)) in tri_positions(n).enumerate() {
            assert_eq!(tri_index(n, i, j), k);
        }
        assert_eq!(tri_positions(n).count(), tri_len(n));
    }

    #[test]
    fn hook_sums_examples() {
        assert_eq!(hook_sums(&tesler(&[&[1, 0], &[0, 1]])), hooks(&[1, 1]));
        assert_eq!(hook_sums(&tesler(&[&[0, 1], &[0, 2]])), hooks(&[1, 1]));
        assert_eq!(hook_sums(&TeslerMatrix::zero(3)), hooks(&[0, 0, 0]));
    }

    #[test]
    fn tesler_flow_examples() {
        let f = tesler_to_flow(&tesler(&[&[1, 0], &[0, 1]]));
        assert_eq!((f.get(0, 2), f.get(1, 2), f.get(0, 1)), (1, 1, 0));
        let f = tesler_to_flow(&tesler(&[&[0, 1], &[0, 2]]));
        assert_eq!((f.get(0, 1), f.get(1, 2), f.get(0, 2)), (1, 2, 0));
        assert_eq!(
            flow_to_tesler(&f, &hooks(&[1, 1])).unwrap(),
            tesler(&[&[0, 1], &[0, 2]])
        );
    }

    #[test]
    fn flow_with_wrong_net_flow_is_rejected() {
        let f = IntegralFlow::from_edges(3, &[(0, 1, 1)]).unwrap();
        assert!(matches!(
            flow_to_tesler(&f, &hooks(&[1, 1])),
            Err(KpfError::InvalidFlow(_))
        ));
        assert!(IntegralFlow::from_edges(3, &[(1, 0, 1)]).is_err());
        assert!(IntegralFlow::from_edges(3, &[(0, 1, -1)]).is_err());
        assert!(IntegralFlow::from_edges(3, &[(0, 1, 1), (0, 1, 2)]).is_err());
    }

    #[test]
    fn flow_to_kostant_examples() {
        let f = IntegralFlow::from_edges(3, &[(0, 2, 1), (1, 2, 1), (0, 1, 0)]).unwrap();
        let p = flow_to_kostant(&f);
        assert_eq!(p, KostantPicture::from_loops(2, &[(0, 1), (1, 1)]).unwrap());
        assert_eq!(p.height().entries(), &[1, 2]);

        let f = IntegralFlow::from_edges(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        assert_eq!(
            flow_to_kostant(&f),
            KostantPicture::from_loops(2, &[(0, 0), (1, 1), (1, 1)]).unwrap()
        );
        assert_eq!(
            flow_to_kostant(&IntegralFlow::zero(4).unwrap()),
            KostantPicture::empty(3)
        );
    }

    #[test]
    fn small_pictures_to_lusztig() {
        type Case<'a> = (&'a [(usize, usize)], [u32; 6]);
        let cases: [Case; 3] = [
            (&[(0, 0), (1, 1), (1, 1), (2, 2)], [1, 0, 0, 2, 0, 1]),
            (&[(0, 2), (1, 1)], [0, 0, 1, 1, 0, 0]),
            (&[(0, 1), (1, 2)], [0, 1, 0, 0, 1, 0]),
        ];
        for (loops, a) in cases {
            let p = KostantPicture::from_loops(3, loops).unwrap();
            let l = kostant_to_lusztig(&p);
            assert_eq!(l.entries(), &a);
            assert_eq!(lusztig_to_kostant(&l), p);
            assert_eq!(l.weight().entries(), &[1, 1, -1, -1]);
        }
    }

    #[test]
    fn max_tesler_examples() {
        assert_eq!(
            max_tesler(&hooks(&[1, 1])).unwrap(),
            tesler(&[&[0, 1], &[0, 2]])
        );
        assert_eq!(
            max_tesler(&hooks(&[1, 1, 1])).unwrap(),
            tesler(&[&[0, 1, 0], &[0, 0, 2], &[0, 0, 3]])
        );
        assert_eq!(
            max_tesler(&hooks(&[1, 0])).unwrap(),
            tesler(&[&[0, 1], &[0, 1]])
        );
        assert!(matches!(
            max_tesler(&hooks(&[1, -2])),
            Err(KpfError::EmptyInstance(_))
        ));
    }

    #[test]
    fn json_encodings() {
        let m = tesler(&[&[0, 1], &[0, 2]]);
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"n":2,"upper":[0,1,2]}"#
        );
        let p = tesler_to_kostant(&m);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"n":2,"loops":[[1,1,1],[2,2,2]]}"#
        );
        let f = tesler_to_flow(&m);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"vertices":3,"edges":[[1,2,1],[1,3,0],[2,3,2]]}"#
        );
        let a = kostant_to_lusztig(&p);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"n":2,"a":[1,0,2]}"#);
        assert!(serde_json::from_str::<TeslerMatrix>(r#"{"n":2,"upper":[0,1]}"#).is_err());
        assert!(serde_json::from_str::<KostantPicture>(r#"{"n":2,"loops":[[2,1,1]]}"#).is_err());
    }

    #[test]
    fn display_forms() {
        let p = KostantPicture::from_loops(3, &[(0, 1), (2, 2)]).unwrap();
        assert_eq!(p.to_string(), "{a1,2, a3}");
        assert_eq!(tesler(&[&[0, 1], &[0, 2]]).to_string(), "[0 1; 2]");
    }
}
