//! Exact transition kernel of the random walk over `T(h)`.

use std::collections::HashMap;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::enumeration::enumerate_tesler;
use crate::error::{KpfError, Result};
use crate::structures::{max_tesler, tri_positions, TeslerMatrix};
use crate::vectors::HookSum;

use super::chain::{absorbing_analysis, evolve, Absorption, TransitionMatrix};
use super::walk::{apply_down, partner_choices, proposal, Proposal};

/// The walk as a Markov chain on the enumerated Tesler matrices.
#[derive(Debug, Clone)]
pub struct WalkKernel {
    pub hooks: HookSum,
    /// State space in enumeration order.
    pub states: Vec<TeslerMatrix>,
    /// `exact[x][y]`: probability that one step from `x` lands on `y`.
    pub exact: Vec<Vec<Rational64>>,
    pub matrix: TransitionMatrix,
    /// Index of the maximum, where every walk starts.
    pub top: usize,
    /// Entry sum shared by every minimal element.
    pub bottom_sum: u64,
}

impl WalkKernel {
    pub fn rank(&self, state: usize) -> usize {
        (self.states[state].entry_sum() - self.bottom_sum) as usize + 1
    }

    pub fn levels(&self) -> usize {
        self.rank(self.top)
    }

    /// Exact distribution of the rank after `steps` steps from the top.
    pub fn rank_distribution(&self, steps: u64) -> Result<Vec<f64>> {
        let mut v0 = vec![0.0; self.states.len()];
        v0[self.top] = 1.0;
        let v = evolve(&v0, &self.matrix, steps)?;
        let mut out = vec![0.0; self.levels()];
        for (x, p) in v.iter().enumerate() {
            out[self.rank(x) - 1] += p;
        }
        Ok(out)
    }

    pub fn is_bottom(&self, state: usize) -> bool {
        self.states[state].entry_sum() == self.bottom_sum
    }
}

/// Builds the exact one-step kernel: each of the `s(s+1)/2` cells is equally
/// likely, then each partner draw is equally likely; failed proposals and
/// every step at the bottom stay in place.
pub fn walk_transition_matrix(h: &HookSum) -> Result<WalkKernel> {
    let eta = h.height();
    if eta.is_empty_instance() {
        return Err(KpfError::EmptyInstance(eta.entries().to_vec()));
    }
    let states = enumerate_tesler(h);
    let index: HashMap<&TeslerMatrix, usize> =
        states.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let s = h.len();
    let cells: Vec<(usize, usize)> = tri_positions(s).collect();
    let cell_p = Rational64::new(1, cells.len() as i64);
    let bottom_sum = eta.min_loops() as u64;
    let n = states.len();

    let mut exact = vec![vec![Rational64::zero(); n]; n];
    for (x, m) in states.iter().enumerate() {
        if m.entry_sum() == bottom_sum {
            exact[x][x] = Rational64::from_integer(1);
            continue;
        }
        for &cell in &cells {
            let choices = partner_choices(s, cell);
            let outcomes: Vec<(Proposal, Rational64)> = if choices == 0 {
                vec![(Proposal::Nothing, cell_p)]
            } else {
                let p = cell_p / Rational64::from_integer(choices as i64);
                (0..choices).map(|u| (proposal(cell, u), p)).collect()
            };
            for (prop, p) in outcomes {
                let mut next = m.clone();
                let y = if apply_down(&mut next, prop) {
                    index[&next]
                } else {
                    x
                };
                exact[x][y] += p;
            }
        }
    }
    let rows = exact
        .iter()
        .map(|row| {
            row.iter()
                .map(|r| r.to_f64().expect("small rational"))
                .collect()
        })
        .collect();
    let matrix = TransitionMatrix::new(rows)?;
    let top = index[&max_tesler(h)?];
    Ok(WalkKernel {
        hooks: h.clone(),
        states,
        exact,
        matrix,
        top,
        bottom_sum,
    })
}

/// Expected rejections of a walk run to absorption, from the fundamental
/// matrix of the kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectionReport {
    pub expected_rejections: f64,
    /// Down-moves from the top to any minimal element.
    pub useful_steps: u64,
    /// `useful / (useful + E[rejections])`; 1 when both vanish.
    pub plug_in_ratio: f64,
    /// `E[useful / (useful + rejections)]` over walks run to absorption,
    /// the long-run value of the simulated average step efficiency. Never
    /// below `plug_in_ratio`, since the ratio is convex in the rejections.
    pub expected_step_efficiency: f64,
    pub absorption: Absorption,
}

pub fn expected_rejections(h: &HookSum) -> Result<RejectionReport> {
    let k = walk_transition_matrix(h)?;
    let absorbing: Vec<bool> = (0..k.states.len()).map(|x| k.is_bottom(x)).collect();
    let absorption = absorbing_analysis(&k.matrix, k.top, &absorbing)?;
    let useful_steps = k.states[k.top].entry_sum() - k.bottom_sum;
    let expected = absorption.expected_self_loops;
    let denom = useful_steps as f64 + expected;
    let plug_in_ratio = if denom == 0.0 {
        1.0
    } else {
        useful_steps as f64 / denom
    };
    let expected_step_efficiency = efficiency_of_ratio(&k, useful_steps)?;
    Ok(RejectionReport {
        expected_rejections: expected,
        useful_steps,
        plug_in_ratio,
        expected_step_efficiency,
        absorption,
    })
}

/// Tail mass below which a geometric run of self-loops is cut off.
const TAIL: f64 = 1e-17;

/// Pushes the law of the rejection count down the walk. Every move lowers
/// the entry sum by one, so states are processed by decreasing entry sum;
/// the self-loops spent at a state add a geometric number of rejections.
fn efficiency_of_ratio(k: &WalkKernel, useful: u64) -> Result<f64> {
    if useful == 0 {
        return Ok(1.0);
    }
    let m = k.states.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(k.states[x].entry_sum()));
    // law[x][r]: probability of entering x after exactly r rejections.
    let mut law: Vec<Vec<f64>> = vec![Vec::new(); m];
    law[k.top] = vec![1.0];
    let mut efficiency = 0.0;
    for x in order {
        let arrived = std::mem::take(&mut law[x]);
        if arrived.is_empty() {
            continue;
        }
        if k.is_bottom(x) {
            for (r, p) in arrived.iter().enumerate() {
                efficiency += p * useful as f64 / (useful + r as u64) as f64;
            }
            continue;
        }
        let stay = k.matrix.get(x, x);
        if stay >= 1.0 {
            return Err(KpfError::SingularSystem);
        }
        let extra = if stay > 0.0 {
            (TAIL.ln() / stay.ln()).ceil() as usize
        } else {
            0
        };
        let mut leave = vec![0.0; arrived.len() + extra];
        let mut acc = 0.0;
        for (r, slot) in leave.iter_mut().enumerate() {
            acc = acc * stay + arrived.get(r).copied().unwrap_or(0.0);
            *slot = acc * (1.0 - stay);
        }
        for (y, &t) in k.matrix.row(x).iter().enumerate() {
            if y == x || t == 0.0 {
                continue;
            }
            let w = t / (1.0 - stay);
            let target = &mut law[y];
            if target.len() < leave.len() {
                target.resize(leave.len(), 0.0);
            }
            for (dst, src) in target.iter_mut().zip(&leave) {
                *dst += src * w;
            }
        }
    }
    Ok(efficiency)
}
