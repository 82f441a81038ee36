//! Dense row-stochastic matrices: evolution of state vectors, equilibrium by
//! repeated squaring, and absorbing-chain analysis.

use nalgebra::{DMatrix, DVector};

use crate::error::{KpfError, Result};

const ROW_SUM_TOL: f64 = 1e-12;

/// Row-stochastic `n × n` matrix; `rows[i][j]` is the probability of moving
/// from state `i` to state `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(KpfError::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            if row.iter().any(|&p| p.is_nan() || p < 0.0) {
                return Err(KpfError::InvalidInput(format!(
                    "row {i} has a negative or NaN entry"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(KpfError::InvalidInput(format!("row {i} sums to {sum}")));
            }
            data.extend(row);
        }
        Ok(TransitionMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        TransitionMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    fn mul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        TransitionMatrix { n, data }
    }

    fn left_mul(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(&self.data[i * n..(i + 1) * n]) {
                *o += vi * t;
            }
        }
        out
    }

    fn max_diff(&self, other: &TransitionMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `v0 · T^steps`.
pub fn evolve(v0: &[f64], t: &TransitionMatrix, steps: u64) -> Result<Vec<f64>> {
    if v0.len() != t.n {
        return Err(KpfError::DimensionMismatch {
            expected: t.n,
            actual: v0.len(),
        });
    }
    let mut v = v0.to_vec();
    if steps <= t.n as u64 {
        for _ in 0..steps {
            v = t.left_mul(&v);
        }
        return Ok(v);
    }
    let mut power = t.clone();
    let mut s = steps;
    loop {
        if s & 1 == 1 {
            v = power.left_mul(&v);
        }
        s >>= 1;
        if s == 0 {
            break;
        }
        power = power.mul(&power);
    }
    Ok(v)
}

/// Limit of `T^(2^k)`. Converges when successive squares differ by less than
/// `tol` in max-norm and the limit `E` satisfies `‖E − E·T‖ < 10·tol`;
/// periodic chains fail the second test.
pub fn equilibrium(
    t: &TransitionMatrix,
    tol: f64,
    max_squarings: usize,
) -> Result<TransitionMatrix> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(KpfError::InvalidInput("tolerance must be positive".into()));
    }
    let mut p = t.clone();
    for _ in 0..max_squarings {
        let q = p.mul(&p);
        if q.max_diff(&p) < tol {
            if q.max_diff(&q.mul(t)) < 10.0 * tol {
                return Ok(q);
            }
            return Err(KpfError::NoConvergence(max_squarings));
        }
        p = q;
    }
    Err(KpfError::NoConvergence(max_squarings))
}

/// Fundamental-matrix quantities of an absorbing chain started at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct Absorption {
    /// Expected visits to each state before absorption (zero for absorbing
    /// states).
    pub expected_visits: Vec<f64>,
    /// Expected number of self-loop transitions taken before absorption.
    pub expected_self_loops: f64,
    /// Probability of ending in each state (zero for transient states).
    pub absorption_probabilities: Vec<f64>,
}

/// Solves `x (I − Q) = e_start` over the transient states, where `Q` is `t`
/// restricted to states with `absorbing[i] == false`.
pub fn absorbing_analysis(
    t: &TransitionMatrix,
    start: usize,
    absorbing: &[bool],
) -> Result<Absorption> {
    let n = t.n;
    if absorbing.len() != n {
        return Err(KpfError::DimensionMismatch {
            expected: n,
            actual: absorbing.len(),
        });
    }
    if start >= n {
        return Err(KpfError::InvalidInput(format!(
            "start state {start} out of range"
        )));
    }
    let transient: Vec<usize> = (0..n).filter(|&i| !absorbing[i]).collect();
    let mut expected_visits = vec![0.0; n];
    let mut absorption_probabilities = vec![0.0; n];
    if absorbing[start] {
        absorption_probabilities[start] = 1.0;
        return Ok(Absorption {
            expected_visits,
            expected_self_loops: 0.0,
            absorption_probabilities,
        });
    }
    let m = transient.len();
    // (I − Q)^T x = e_start
    let a = DMatrix::from_fn(m, m, |r, c| {
        let id = if r == c { 1.0 } else { 0.0 };
        id - t.get(transient[c], transient[r])
    });
    let mut b = DVector::zeros(m);
    let pos = transient
        .iter()
        .position(|&s| s == start)
        .expect("start is transient");
    b[pos] = 1.0;
    let x = a.lu().solve(&b).ok_or(KpfError::SingularSystem)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(KpfError::SingularSystem);
    }
    let mut expected_self_loops = 0.0;
    for (k, &s) in transient.iter().enumerate() {
        expected_visits[s] = x[k];
        expected_self_loops += x[k] * t.get(s, s);
        for j in 0..n {
            if absorbing[j] {
                absorption_probabilities[j] += x[k] * t.get(s, j);
            }
        }
    }
    Ok(Absorption {
        expected_visits,
        expected_self_loops,
        absorption_probabilities,
    })
}
