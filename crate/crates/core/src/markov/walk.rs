//! The one-way random Tesler walk.
//!
//! Each step proposes one cover move and performs it when the two entries it
//! decrements are positive:
//!
//! 1. If the entry sum is already minimal the walk is at the bottom and the
//!    step does nothing.
//! 2. Draw an upper-triangle cell `(i, j)`, `i <= j`, uniformly.
//! 3. Diagonal cell: draw a second diagonal index uniformly among the other
//!    `s - 1`; with `(i, j)` the sorted pair try `a_ij -= 1, a_jj -= 1,
//!    a_ii += 1`.
//! 4. Off-diagonal cell: draw `k` uniformly from the `s - 2` indices other
//!    than `i, j`; with `x < y < z` the sorted triple try `a_xy -= 1,
//!    a_yz -= 1, a_xz += 1`. With `s = 2` there is no `k` and the proposal
//!    fails.
//!
//! A failed proposal off the bottom counts as an unsuccessful attempt.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{KpfError, Result};
use crate::structures::{max_tesler, tri_positions, TeslerMatrix};
use crate::vectors::HookSum;

/// Trials per work unit; results are combined in unit order.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    Rejected,
    AtBottom,
}

/// A proposed cover move, in 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Proposal {
    Pair { i: usize, j: usize },
    Triple { i: usize, j: usize, k: usize },
    Nothing,
}

/// Index among `0..s` with `skip` removed.
fn nth_skipping(u: usize, skip: &[usize]) -> usize {
    let mut v = u;
    let mut sorted = skip.to_vec();
    sorted.sort_unstable();
    for s in sorted {
        if v >= s {
            v += 1;
        }
    }
    v
}

/// Number of partner draws that follow choosing `cell`.
pub(crate) fn partner_choices(s: usize, cell: (usize, usize)) -> usize {
    if cell.0 == cell.1 {
        s.saturating_sub(1)
    } else {
        s.saturating_sub(2)
    }
}

/// The move proposed by `cell` and the `u`-th partner draw.
pub(crate) fn proposal(cell: (usize, usize), u: usize) -> Proposal {
    let (i, j) = cell;
    if i == j {
        let d = nth_skipping(u, &[i]);
        Proposal::Pair {
            i: i.min(d),
            j: i.max(d),
        }
    } else {
        let k = nth_skipping(u, &[i, j]);
        let mut t = [i, j, k];
        t.sort_unstable();
        Proposal::Triple {
            i: t[0],
            j: t[1],
            k: t[2],
        }
    }
}

/// Applies a down-move in place; false (and `m` untouched) when it is not
/// available.
pub(crate) fn apply_down(m: &mut TeslerMatrix, p: Proposal) -> bool {
    let (dec1, dec2, inc) = match p {
        Proposal::Pair { i, j } => ((i, j), (j, j), (i, i)),
        Proposal::Triple { i, j, k } => ((i, j), (j, k), (i, k)),
        Proposal::Nothing => return false,
    };
    if m.get(dec1.0, dec1.1) == 0 || m.get(dec2.0, dec2.1) == 0 {
        return false;
    }
    *m.get_mut(dec1.0, dec1.1) -= 1;
    *m.get_mut(dec2.0, dec2.1) -= 1;
    *m.get_mut(inc.0, inc.1) += 1;
    true
}

struct Walker {
    cells: Vec<(usize, usize)>,
    s: usize,
    bottom: u64,
}

impl Walker {
    fn new(s: usize, bottom: u64) -> Self {
        Walker {
            cells: tri_positions(s).collect(),
            s,
            bottom,
        }
    }

    fn step<R: Rng>(&self, m: &mut TeslerMatrix, sum: &mut u64, rng: &mut R) -> StepOutcome {
        if *sum == self.bottom {
            return StepOutcome::AtBottom;
        }
        let cell = self.cells[rng.random_range(0..self.cells.len())];
        let choices = partner_choices(self.s, cell);
        let p = if choices == 0 {
            Proposal::Nothing
        } else {
            proposal(cell, rng.random_range(0..choices))
        };
        if apply_down(m, p) {
            *sum -= 1;
            StepOutcome::Moved
        } else {
            StepOutcome::Rejected
        }
    }
}

/// One iteration of the walk from `m`.
pub fn walk_step<R: Rng>(m: &TeslerMatrix, rng: &mut R) -> (TeslerMatrix, StepOutcome) {
    let bottom = m.hook_sums().height().min_loops() as u64;
    let walker = Walker::new(m.n(), bottom);
    let mut next = m.clone();
    let mut sum = m.entry_sum();
    let outcome = walker.step(&mut next, &mut sum, rng);
    (next, outcome)
}

/// Parameters of a simulation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkConfig {
    pub hooks: HookSum,
    /// Random steps per trial.
    pub steps: u64,
    pub trials: u64,
    pub seed: u64,
}

impl WalkConfig {
    pub fn size(&self) -> usize {
        self.hooks.len()
    }
}

/// Aggregated statistics of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    /// Probability of ending at rank `k + 1`, for `k` in `0..levels`.
    pub rank_distribution: Vec<f64>,
    pub rank_counts: Vec<u64>,
    pub average_rank: f64,
    pub average_rank_ratio: f64,
    pub average_step_efficiency: f64,
    pub trials: u64,
    pub steps: u64,
    pub seed: u64,
}

impl SimReport {
    /// `rank,probability` rows followed by the summary block.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rank,probability\n");
        for (k, p) in self.rank_distribution.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k + 1, p));
        }
        out.push('\n');
        out.push_str("average_rank,average_rank_ratio,average_step_efficiency,trials,steps,seed\n");
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            self.average_rank,
            self.average_rank_ratio,
            self.average_step_efficiency,
            self.trials,
            self.steps,
            self.seed
        ));
        out
    }
}

/// One row per report: rank-ratio-vs-steps data.
pub fn sweep_to_csv(reports: &[SimReport]) -> String {
    let mut out =
        String::from("steps,average_rank,average_rank_ratio,average_step_efficiency,trials,seed\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.steps,
            r.average_rank,
            r.average_rank_ratio,
            r.average_step_efficiency,
            r.trials,
            r.seed
        ));
    }
    out
}

#[derive(Default)]
struct Tally {
    rank_counts: Vec<u64>,
    efficiency_sum: f64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `trials` independent walks of `steps` steps from the top of `T(h)`.
///
/// Each trial draws from its own ChaCha8 stream keyed by `(seed, trial)`, and
/// partial sums are combined in a fixed order, so the report is identical for
/// any thread count.
pub fn simulate(cfg: &WalkConfig) -> Result<SimReport> {
    let eta = cfg.hooks.height();
    if eta.is_empty_instance() {
        return Err(KpfError::EmptyInstance(eta.entries().to_vec()));
    }
    if cfg.trials == 0 {
        return Err(KpfError::InvalidInput(
            "at least one trial is required".into(),
        ));
    }
    let top = max_tesler(&cfg.hooks)?;
    let max_sum = top.entry_sum();
    let bottom = eta.min_loops() as u64;
    let levels = (max_sum - bottom + 1) as usize;
    let walker = Walker::new(cfg.size(), bottom);

    let chunks = cfg.trials.div_ceil(CHUNK);
    let tallies: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally {
                rank_counts: vec![0; levels],
                efficiency_sum: 0.0,
            };
            for t in c * CHUNK..((c + 1) * CHUNK).min(cfg.trials) {
                let mut rng = trial_rng(cfg.seed, t);
                let mut m = top.clone();
                let mut sum = max_sum;
                let mut rejected = 0u64;
                for _ in 0..cfg.steps {
                    match walker.step(&mut m, &mut sum, &mut rng) {
                        StepOutcome::AtBottom => break,
                        StepOutcome::Rejected => rejected += 1,
                        StepOutcome::Moved => {}
                    }
                }
                let useful = max_sum - sum;
                tally.efficiency_sum += if useful + rejected == 0 {
                    1.0
                } else {
                    useful as f64 / (useful + rejected) as f64
                };
                tally.rank_counts[(sum - bottom) as usize] += 1;
            }
            tally
        })
        .collect();

    let mut rank_counts = vec![0u64; levels];
    let mut efficiency_sum = 0.0;
    for t in &tallies {
        for (a, b) in rank_counts.iter_mut().zip(&t.rank_counts) {
            *a += b;
        }
        efficiency_sum += t.efficiency_sum;
    }
    let n = cfg.trials as f64;
    let rank_distribution: Vec<f64> = rank_counts.iter().map(|&c| c as f64 / n).collect();
    let average_rank = rank_counts
        .iter()
        .enumerate()
        .map(|(k, &c)| (k + 1) as f64 * c as f64)
        .sum::<f64>()
        / n;
    let average_rank_ratio = if levels > 1 {
        (average_rank - 1.0) / (levels - 1) as f64
    } else {
        0.0
    };
    Ok(SimReport {
        rank_distribution,
        rank_counts,
        average_rank,
        average_rank_ratio,
        average_step_efficiency: efficiency_sum / n,
        trials: cfg.trials,
        steps: cfg.steps,
        seed: cfg.seed,
    })
}

/// [`simulate`] at each step count, same seed.
pub fn sweep(hooks: &HookSum, steps: &[u64], trials: u64, seed: u64) -> Result<Vec<SimReport>> {
    steps
        .iter()
        .map(|&r| {
            simulate(&WalkConfig {
                hooks: hooks.clone(),
                steps: r,
                trials,
                seed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::tesler_cover;

    fn hooks(v: &[i64]) -> HookSum {
        HookSum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bottom_matrix_stays_put() {
        let m = TeslerMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let mut rng = trial_rng(7, 0);
        for _ in 0..50 {
            assert_eq!(walk_step(&m, &mut rng), (m.clone(), StepOutcome::AtBottom));
        }
    }

    #[test]
    fn top_of_11_only_moves_to_the_bottom() {
        let top = TeslerMatrix::from_rows(&[vec![0, 1], vec![0, 2]]).unwrap();
        let bottom = TeslerMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let mut rng = trial_rng(1, 0);
        let mut moved = 0;
        for _ in 0..300 {
            match walk_step(&top, &mut rng) {
                (m, StepOutcome::Moved) => {
                    assert_eq!(m, bottom);
                    moved += 1;
                }
                (m, StepOutcome::Rejected) => assert_eq!(m, top),
                (_, StepOutcome::AtBottom) => panic!("top is not minimal"),
            }
        }
        // two of the three cells propose the only move
        assert!((150..250).contains(&moved), "{moved}");
    }

    #[test]
    fn successful_steps_are_covers() {
        let h = hooks(&[1, 1, 1]);
        let mut rng = trial_rng(3, 0);
        for _ in 0..200 {
            let mut m = max_tesler(&h).unwrap();
            loop {
                let (next, outcome) = walk_step(&m, &mut rng);
                match outcome {
                    StepOutcome::AtBottom => break,
                    StepOutcome::Rejected => assert_eq!(next, m),
                    StepOutcome::Moved => {
                        assert_eq!(next.entry_sum() + 1, m.entry_sum());
                        assert!(tesler_cover(&m, &next).unwrap());
                        m = next;
                    }
                }
            }
        }
    }

    #[test]
    fn proposals_cover_all_partner_draws() {
        assert_eq!(proposal((1, 1), 0), Proposal::Pair { i: 0, j: 1 });
        assert_eq!(proposal((1, 1), 1), Proposal::Pair { i: 1, j: 2 });
        assert_eq!(proposal((0, 2), 0), Proposal::Triple { i: 0, j: 1, k: 2 });
        assert_eq!(proposal((1, 2), 0), Proposal::Triple { i: 0, j: 1, k: 2 });
        assert_eq!(partner_choices(2, (0, 1)), 0);
        assert_eq!(partner_choices(3, (0, 0)), 2);
    }

    #[test]
    fn zero_steps_stay_at_the_top() {
        let cfg = WalkConfig {
            hooks: hooks(&[1, 2, 1]),
            steps: 0,
            trials: 100,
            seed: 5,
        };
        let r = simulate(&cfg).unwrap();
        assert_eq!(*r.rank_distribution.last().unwrap(), 1.0);
        assert_eq!(r.average_rank_ratio, 1.0);
        assert_eq!(r.rank_distribution.len(), 8 - 4 + 1);
    }

    #[test]
    fn simulation_is_deterministic() {
        let cfg = WalkConfig {
            hooks: hooks(&[3, 1, 2]),
            steps: 12,
            trials: 10_000,
            seed: 99,
        };
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| simulate(&cfg).unwrap());
        assert_eq!(a, c);
        assert!((a.rank_distribution.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&a.average_rank_ratio));
        assert!((0.0..=1.0).contains(&a.average_step_efficiency));
    }

    #[test]
    fn empty_instance_is_an_error() {
        let cfg = WalkConfig {
            hooks: hooks(&[1, -2]),
            steps: 1,
            trials: 1,
            seed: 0,
        };
        assert!(matches!(simulate(&cfg), Err(KpfError::EmptyInstance(_))));
    }

    #[test]
    fn csv_layout() {
        let cfg = WalkConfig {
            hooks: hooks(&[1, 1]),
            steps: 0,
            trials: 4,
            seed: 1,
        };
        let r = simulate(&cfg).unwrap();
        assert_eq!(
            r.to_csv(),
            "rank,probability\n1,0\n2,1\n\naverage_rank,average_rank_ratio,average_step_efficiency,trials,steps,seed\n2,1,1,4,0,1\n"
        );
    }
}
