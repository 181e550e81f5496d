//! Budgeted branching search for k-center under the Ulam metric.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::oracles::verify_center_solution;
use crate::par;
use crate::perm::{within, Instance, Permutation};

use super::coloring::{coloring_family, ColoringFamily, ColoringFamilyConfig};
use super::guide::guide_set;

/// Candidate centers with their remaining improvement budgets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchState {
    pub centers: Vec<Permutation>,
    pub budgets: Vec<usize>,
}

impl SearchState {
    pub fn measure(&self, k: usize, d: usize) -> usize {
        (k - self.centers.len()) * (d + 1) + self.budgets.iter().sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSolution {
    pub centers: Vec<Permutation>,
    pub assignment: Vec<usize>,
    pub radius: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterVerdict {
    Yes(CenterSolution),
    /// `probabilistic` is set when a sampled coloring family may have missed
    /// a solution.
    No { probabilistic: bool },
}

impl CenterVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CenterVerdict::Yes(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub guide_calls: u64,
    pub family_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCenterOutcome {
    pub verdict: CenterVerdict,
    pub stats: SearchStats,
}

pub fn solve_kcenter(inst: &Instance, cfg: &ColoringFamilyConfig) -> Result<KCenterOutcome> {
    let (k, d) = (inst.k, inst.d);
    let done = |centers: Vec<Permutation>| -> Result<KCenterOutcome> {
        let check = verify_center_solution(inst, &centers)?;
        debug_assert!(check.ok);
        Ok(KCenterOutcome {
            verdict: CenterVerdict::Yes(CenterSolution {
                centers,
                assignment: check.assignment,
                radius: check.value,
            }),
            stats: SearchStats::default(),
        })
    };
    let certain_no = KCenterOutcome {
        verdict: CenterVerdict::No { probabilistic: false },
        stats: SearchStats::default(),
    };
    if inst.m() == 0 {
        return done(Vec::new());
    }
    let distinct = inst.distinct();
    if distinct.len() <= k {
        return done(distinct);
    }
    if d == 0 || k == 0 {
        return Ok(certain_no);
    }
    if k >= inst.m() {
        return done(distinct);
    }
    let family = coloring_family(inst.n(), d, cfg)?;
    let search = Search {
        inst,
        family: &family,
        cache: Mutex::new(HashMap::new()),
        nodes: AtomicU64::new(0),
        guide_calls: AtomicU64::new(0),
    };
    let root = SearchState {
        centers: vec![inst.perms[0].clone()],
        budgets: vec![d],
    };
    let found = search.explore(&root)?;
    let stats = SearchStats {
        nodes_expanded: search.nodes.load(Ordering::Relaxed),
        guide_calls: search.guide_calls.load(Ordering::Relaxed),
        family_size: family.len(),
    };
    let mut out = match found {
        Some(centers) => done(centers)?,
        None => KCenterOutcome {
            verdict: CenterVerdict::No {
                probabilistic: !family.is_exhaustive(),
            },
            stats,
        },
    };
    out.stats = stats;
    Ok(out)
}

type GuideCache = Mutex<HashMap<(Permutation, Permutation), Arc<Vec<Permutation>>>>;

struct Search<'a> {
    inst: &'a Instance,
    family: &'a ColoringFamily,
    cache: GuideCache,
    nodes: AtomicU64,
    guide_calls: AtomicU64,
}

impl Search<'_> {
    fn guide(&self, pc: &Permutation, pg: &Permutation) -> Result<Arc<Vec<Permutation>>> {
        let key = (pc.clone(), pg.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        self.guide_calls.fetch_add(1, Ordering::Relaxed);
        let set = Arc::new(guide_set(pc, pg, self.inst.d, self.family)?);
        self.cache.lock().unwrap().insert(key, set.clone());
        Ok(set)
    }

    fn explore(&self, state: &SearchState) -> Result<Option<Vec<Permutation>>> {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let (k, d) = (self.inst.k, self.inst.d);
        let Some(uncovered) = self
            .inst
            .perms
            .iter()
            .find(|p| !state.centers.iter().any(|c| within(p, c, d)))
        else {
            return Ok(Some(state.centers.clone()));
        };

        let mut children = Vec::new();
        for (i, center) in state.centers.iter().enumerate() {
            if state.budgets[i] == 0 || !within(uncovered, center, 2 * d) {
                continue;
            }
            for next in self.guide(center, uncovered)?.iter() {
                let mut child = state.clone();
                child.centers[i] = next.clone();
                child.budgets[i] -= 1;
                children.push(child);
            }
        }
        if state.centers.len() < k {
            let mut child = state.clone();
            child.centers.push(uncovered.clone());
            child.budgets.push(d);
            children.push(child);
        }
        debug_assert!(children
            .iter()
            .all(|c| c.measure(k, d) + 1 == state.measure(k, d)));

        par::find_map_first(&children, |child| self.explore(child).transpose())
            .transpose()
    }
}
