//! Exact k-median by enumerating up to `d` moves on the input multiset.
//!
//! Iterative deepening over the move budget makes the first success optimal.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::oracles::verify_median_solution;
use crate::par;
use crate::perm::{neighbours, within, Instance, Permutation};

/// Distinct permutations with multiplicities, sorted.
type State = Vec<(Permutation, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XpConfig {
    /// A warning is emitted when `(m n^2)^d` exceeds this.
    pub work_bound: u128,
}

impl Default for XpConfig {
    fn default() -> Self {
        Self { work_bound: 1_000_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedianSolution {
    pub medians: Vec<Permutation>,
    pub assignment: Vec<usize>,
    pub cost: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MedianVerdict {
    Yes(MedianSolution),
    No,
}

impl MedianVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, MedianVerdict::Yes(_))
    }

    pub fn cost(&self) -> Option<usize> {
        match self {
            MedianVerdict::Yes(s) => Some(s.cost),
            MedianVerdict::No => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XpOutcome {
    pub verdict: MedianVerdict,
    pub nodes_expanded: u64,
    pub warning: Option<String>,
}

/// Estimated search size `(m n^2)^d`, saturating.
pub fn xp_work_estimate(m: usize, n: usize, d: usize) -> u128 {
    let step = (m as u128).saturating_mul((n as u128).saturating_mul(n as u128));
    (0..d).fold(1u128, |acc, _| acc.saturating_mul(step.max(1)))
}

pub fn xp_solve(inst: &Instance) -> XpOutcome {
    xp_solve_with(inst, &XpConfig::default())
}

pub fn xp_solve_with(inst: &Instance, cfg: &XpConfig) -> XpOutcome {
    let estimate = xp_work_estimate(inst.m(), inst.n(), inst.d);
    let warning = (estimate > cfg.work_bound).then(|| {
        format!(
            "move enumeration may explore up to {estimate} states (bound {})",
            cfg.work_bound
        )
    });
    let search = Xp {
        k: inst.k,
        nodes: AtomicU64::new(0),
    };
    let start = multiset(&inst.perms);
    let found = (0..=inst.d).find_map(|budget| search.root(&start, budget));
    let verdict = match found {
        Some(state) => {
            let medians: Vec<Permutation> = state.into_iter().map(|(p, _)| p).collect();
            let check = verify_median_solution(inst, &medians).expect("medians share the alphabet");
            debug_assert!(check.ok);
            MedianVerdict::Yes(MedianSolution {
                medians,
                assignment: check.assignment,
                cost: check.value,
            })
        }
        None => MedianVerdict::No,
    };
    XpOutcome {
        verdict,
        nodes_expanded: search.nodes.load(Ordering::Relaxed),
        warning,
    }
}

fn multiset(perms: &[Permutation]) -> State {
    let mut sorted = perms.to_vec();
    sorted.sort();
    let mut out: State = Vec::new();
    for p in sorted {
        match out.last_mut() {
            Some((q, c)) if *q == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Moves one copy of `state[from]` to `to`.
fn shift(state: &State, from: usize, to: Permutation) -> State {
    let mut next = state.clone();
    next[from].1 -= 1;
    if next[from].1 == 0 {
        next.remove(from);
    }
    match next.binary_search_by(|(p, _)| p.cmp(&to)) {
        Ok(i) => next[i].1 += 1,
        Err(i) => next.insert(i, (to, 1)),
    }
    next
}

struct Xp {
    k: usize,
    nodes: AtomicU64,
}

impl Xp {
    fn root(&self, state: &State, budget: usize) -> Option<State> {
        if state.len() <= self.k {
            return Some(state.clone());
        }
        if budget == 0 || state.len() - self.k > budget {
            return None;
        }
        let children = self.children(state, budget);
        par::find_map_first(&children, |child| self.reach(child, budget - 1))
    }

    fn reach(&self, state: &State, budget: usize) -> Option<State> {
        if state.len() <= self.k {
            return Some(state.clone());
        }
        if budget == 0 || state.len() - self.k > budget {
            return None;
        }
        self.children(state, budget)
            .iter()
            .find_map(|child| self.reach(child, budget - 1))
    }

    fn children(&self, state: &State, budget: usize) -> Vec<State> {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if state.len() - self.k == budget {
            // Every remaining move has to merge a singleton into another
            // permutation one move away.
            let mut out = Vec::new();
            for (a, (p, count)) in state.iter().enumerate() {
                if *count != 1 {
                    continue;
                }
                for (b, (q, _)) in state.iter().enumerate() {
                    if a != b && within(p, q, 1) {
                        out.push(shift(state, a, q.clone()));
                    }
                }
            }
            return out;
        }
        state
            .iter()
            .enumerate()
            .flat_map(|(a, (p, _))| neighbours(p).into_iter().map(move |q| shift(state, a, q)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_kmedian, OracleLimits};
    use crate::perm::SymbolTable;

    fn inst(rows: &[&str], k: usize, d: usize) -> Instance {
        let t = SymbolTable::numbered(rows[0].split_whitespace().count());
        let perms = rows.iter().map(|r| t.parse_permutation(r).unwrap()).collect();
        Instance::new(t, perms, k, d).unwrap()
    }

    #[test]
    fn copies_cost_nothing() {
        let out = xp_solve(&inst(&["2 1 3"; 3], 1, 0));
        let MedianVerdict::Yes(sol) = out.verdict else { panic!() };
        assert_eq!(sol.cost, 0);
        assert_eq!(sol.medians.len(), 1);
    }

    #[test]
    fn one_move_merges_two() {
        let out = xp_solve(&inst(&["1 2 3", "2 1 3"], 1, 1));
        assert_eq!(out.verdict.cost(), Some(1));
    }

    #[test]
    fn far_apart_is_no() {
        let i = inst(&["1 2 3 4", "2 1 4 3", "3 4 1 2", "4 3 2 1"], 1, 2);
        assert_eq!(xp_solve(&i).verdict, MedianVerdict::No);
    }

    #[test]
    fn optimal_cost_matches_oracle() {
        let cases = [
            (vec!["1 2 3 4", "2 1 4 3", "3 4 1 2"], 1, 4),
            (vec!["1 2 3 4", "2 1 4 3", "3 4 1 2"], 2, 2),
            (vec!["1 2 3 4", "1 3 2 4", "4 1 2 3", "1 2 4 3"], 2, 2),
            (vec!["1 2 3", "3 2 1", "2 3 1"], 1, 3),
        ];
        for (rows, k, d) in cases {
            let i = inst(&rows, k, d);
            let want = brute_kmedian(&i, &OracleLimits::default()).unwrap();
            let got = xp_solve(&i).verdict;
            assert_eq!(got.cost(), want.witness.filter(|_| want.feasible).map(|w| w.value), "{rows:?}");
        }
    }

    #[test]
    fn work_warning() {
        let i = inst(&["1 2 3 4 5 6", "6 5 4 3 2 1"], 1, 6);
        assert!(xp_solve_with(&i, &XpConfig { work_bound: 10 }).warning.is_some());
        assert_eq!(xp_work_estimate(2, 3, 2), 324);
    }
}
