//! Brute-force references and solution verifiers.
//!
//! Everything here is deliberately naive: exhaustive enumeration over the
//! permutation space or over move-neighbourhoods, guarded by hard size limits.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{self, Instance, Permutation};

/// Outcome of a verifier: whether the value meets the instance's `d`, the
/// radius (center) or total cost (median), and the nearest-center assignment
/// with ties broken toward the lowest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub value: usize,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub perms: Vec<Permutation>,
    pub assignment: Vec<usize>,
    /// Radius for center problems, total cost for median problems.
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub feasible: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn no() -> Self {
        Self {
            feasible: false,
            witness: None,
        }
    }
}

/// Size guards for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub center_max_n: usize,
    pub median_max_n: usize,
    pub max_k: usize,
    pub bfs_max_n: usize,
    pub bfs_max_cap: usize,
    /// When set, replaces the `n`/`k` caps by a bound on enumerated candidates.
    pub work_limit: Option<u128>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            center_max_n: 6,
            median_max_n: 5,
            max_k: 2,
            bfs_max_n: 8,
            bfs_max_cap: 4,
            work_limit: None,
        }
    }
}

impl OracleLimits {
    fn check_enumeration(&self, what: &str, n: usize, k: usize, max_n: usize) -> Result<()> {
        match self.work_limit {
            Some(limit) => {
                let work = factorial(n).saturating_pow(k as u32);
                if work > limit {
                    return Err(Error::Guard(format!(
                        "{what}: (n!)^k = {work} exceeds work limit {limit}"
                    )));
                }
            }
            None => {
                if n > max_n || k > self.max_k {
                    return Err(Error::Guard(format!(
                        "{what} needs n <= {max_n} and k <= {}, got n = {n}, k = {k}",
                        self.max_k
                    )));
                }
            }
        }
        Ok(())
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Breadth-first search over single moves from `a`; the depth at which `b`
/// is first reached, or `None` beyond `cap`.
pub fn bfs_ulam_distance(
    a: &Permutation,
    b: &Permutation,
    cap: usize,
    limits: &OracleLimits,
) -> Result<Option<usize>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() > limits.bfs_max_n || cap > limits.bfs_max_cap {
        return Err(Error::Guard(format!(
            "bfs oracle needs n <= {} and cap <= {}",
            limits.bfs_max_n, limits.bfs_max_cap
        )));
    }
    let mut seen = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([(a.clone(), 0usize)]);
    while let Some((cur, depth)) = queue.pop_front() {
        if &cur == b {
            return Ok(Some(depth));
        }
        if depth == cap {
            continue;
        }
        for from in 0..cur.len() {
            for to in 0..cur.len() {
                let next = perm::moved(&cur, from, to);
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    Ok(None)
}

/// Every permutation within `radius` moves of `p`, found by BFS.
pub fn move_ball(p: &Permutation, radius: usize) -> HashSet<Permutation> {
    let mut ball = HashSet::from([p.clone()]);
    let mut frontier = vec![p.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for cur in &frontier {
            for q in perm::neighbours(cur) {
                if ball.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    ball
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![Permutation::new(cur.clone()).expect("identity")];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::new(cur.clone()).expect("valid"));
    }
}

fn nearest(p: &Permutation, centers: &[Permutation]) -> (usize, usize) {
    let mut best = (usize::MAX, 0);
    for (i, c) in centers.iter().enumerate() {
        let dist = perm::dist(p, c);
        if dist < best.0 {
            best = (dist, i);
        }
    }
    best
}

fn check_alphabet(inst: &Instance, sol: &[Permutation]) -> Result<()> {
    match sol.iter().find(|c| c.len() != inst.n()) {
        Some(c) => Err(Error::LengthMismatch(c.len(), inst.n())),
        None => Ok(()),
    }
}

/// Radius of `centers` on `inst` and whether it is at most `inst.d`.
///
/// With no centers and a non-empty input the radius is reported as
/// `usize::MAX`.
pub fn verify_center_solution(inst: &Instance, centers: &[Permutation]) -> Result<Check> {
    check_alphabet(inst, centers)?;
    let mut radius = 0;
    let mut assignment = Vec::with_capacity(inst.m());
    for p in &inst.perms {
        let (dist, idx) = nearest(p, centers);
        radius = radius.max(dist);
        assignment.push(idx);
    }
    Ok(Check {
        ok: radius <= inst.d,
        value: radius,
        assignment,
    })
}

/// Total nearest-median cost of `medians` on `inst` and whether it is at
/// most `inst.d`.
pub fn verify_median_solution(inst: &Instance, medians: &[Permutation]) -> Result<Check> {
    check_alphabet(inst, medians)?;
    let mut cost = 0usize;
    let mut assignment = Vec::with_capacity(inst.m());
    for p in &inst.perms {
        let (dist, idx) = nearest(p, medians);
        cost = cost.saturating_add(dist);
        assignment.push(idx);
    }
    Ok(Check {
        ok: cost <= inst.d,
        value: cost,
        assignment,
    })
}

/// Coverage bitmask over the inputs.
type Mask = u128;

fn check_mask_width(m: usize) -> Result<()> {
    if m > Mask::BITS as usize {
        return Err(Error::Guard(format!("at most {} input permutations", Mask::BITS)));
    }
    Ok(())
}

fn full_mask(m: usize) -> Mask {
    if m == Mask::BITS as usize {
        Mask::MAX
    } else {
        (1 << m) - 1
    }
}

/// Picks at most `k` masks (by index) covering `full`.
fn cover_with(masks: &[Mask], full: Mask, k: usize) -> Option<Vec<usize>> {
    fn go(masks: &[Mask], covered: Mask, full: Mask, k: usize, picked: &mut Vec<usize>) -> bool {
        if covered == full {
            return true;
        }
        if k == 0 {
            return false;
        }
        let first = (!covered & full).trailing_zeros();
        for (i, &m) in masks.iter().enumerate() {
            if m >> first & 1 == 1 {
                picked.push(i);
                if go(masks, covered | m, full, k - 1, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::new();
    go(masks, 0, full, k, &mut picked).then_some(picked)
}

fn center_verdict(inst: &Instance, masks: Vec<(Mask, Permutation)>) -> Result<Verdict> {
    let full = full_mask(inst.m());
    let bits: Vec<Mask> = masks.iter().map(|(m, _)| *m).collect();
    let Some(picked) = cover_with(&bits, full, inst.k) else {
        return Ok(Verdict::no());
    };
    let centers: Vec<Permutation> = picked.into_iter().map(|i| masks[i].1.clone()).collect();
    let check = verify_center_solution(inst, &centers)?;
    debug_assert!(check.ok);
    Ok(Verdict {
        feasible: true,
        witness: Some(Witness {
            perms: centers,
            assignment: check.assignment,
            value: check.value,
        }),
    })
}

/// Keeps one representative per distinct mask, dropping masks strictly
/// contained in another.
fn maximal_masks(mut masks: Vec<(Mask, Permutation)>) -> Vec<(Mask, Permutation)> {
    masks.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));
    let mut kept: Vec<(Mask, Permutation)> = Vec::new();
    for (m, p) in masks {
        if m != 0 && !kept.iter().any(|(k, _)| k & m == m) {
            kept.push((m, p));
        }
    }
    kept
}

/// Decides k-center by enumerating every permutation of the alphabet as a
/// candidate center.
pub fn brute_kcenter(inst: &Instance, limits: &OracleLimits) -> Result<Verdict> {
    limits.check_enumeration("brute_kcenter", inst.n(), inst.k, limits.center_max_n)?;
    check_mask_width(inst.m())?;
    let candidates = all_permutations(inst.n());
    let masks = par::map(&candidates, |c| {
        let mask = inst
            .perms
            .iter()
            .enumerate()
            .filter(|(_, p)| perm::within(c, p, inst.d))
            .fold(0 as Mask, |acc, (j, _)| acc | 1 << j);
        (mask, c.clone())
    });
    center_verdict(inst, maximal_masks(masks))
}

/// Candidate centers, one representative per maximal coverage mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCandidates {
    masks: Vec<(Mask, Permutation)>,
}

impl CenterCandidates {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }
}

/// Candidate centers within `d` moves of some input (a center covering
/// nothing can be dropped). The `k` of `inst` is ignored.
///
/// Balls are walked move by move without being stored, so this scales to
/// the larger alphabets of the reduction instances as long as `d` is tiny.
pub fn ball_candidates(inst: &Instance, max_ball_work: u128) -> Result<CenterCandidates> {
    check_mask_width(inst.m())?;
    let n = inst.n() as u128;
    let work = (n.saturating_sub(1))
        .saturating_pow(2 * inst.d as u32)
        .saturating_mul(inst.m() as u128);
    if work > max_ball_work {
        return Err(Error::Guard(format!(
            "ball oracle work {work} exceeds limit {max_ball_work}"
        )));
    }
    let perms = &inst.perms;
    let d = inst.d;
    let per_input = par::map_range(perms.len(), |i| {
        // Inputs further than 2d from perms[i] cannot share a center with it.
        let near: Vec<usize> = (0..perms.len())
            .filter(|&j| perm::within(&perms[i], &perms[j], 2 * d))
            .collect();
        let mut best: std::collections::HashMap<Mask, Permutation> = Default::default();
        walk(&perms[i], d, &mut |c| {
            let mask = near
                .iter()
                .filter(|&&j| perm::within(c, &perms[j], d))
                .fold(0 as Mask, |acc, &j| acc | 1 << j);
            match best.get_mut(&mask) {
                Some(rep) if *rep <= *c => {}
                Some(rep) => *rep = c.clone(),
                None => {
                    best.insert(mask, c.clone());
                }
            }
        });
        best.into_iter().collect::<Vec<_>>()
    });
    let mut all: Vec<(Mask, Permutation)> = per_input.into_iter().flatten().collect();
    all.sort();
    all.dedup_by(|a, b| a.0 == b.0);
    Ok(CenterCandidates {
        masks: maximal_masks(all),
    })
}

fn walk(p: &Permutation, depth: usize, visit: &mut impl FnMut(&Permutation)) {
    visit(p);
    if depth > 0 {
        for q in perm::neighbours(p) {
            walk(&q, depth - 1, visit);
        }
    }
}

/// Decides k-center for `inst.k` from precomputed candidates.
pub fn decide_kcenter(inst: &Instance, candidates: &CenterCandidates) -> Result<Verdict> {
    center_verdict(inst, candidates.masks.clone())
}

/// Exact k-center decision over the candidates of [`ball_candidates`].
pub fn ball_kcenter(inst: &Instance, max_ball_work: u128) -> Result<Verdict> {
    decide_kcenter(inst, &ball_candidates(inst, max_ball_work)?)
}

/// Minimum-cost k-median by enumerating every k-multiset of permutations.
pub fn brute_kmedian(inst: &Instance, limits: &OracleLimits) -> Result<Verdict> {
    limits.check_enumeration("brute_kmedian", inst.n(), inst.k, limits.median_max_n)?;
    if inst.m() == 0 {
        return Ok(Verdict {
            feasible: true,
            witness: Some(Witness {
                perms: Vec::new(),
                assignment: Vec::new(),
                value: 0,
            }),
        });
    }
    let candidates = all_permutations(inst.n());
    let table: Vec<Vec<usize>> = par::map(&candidates, |c| {
        inst.perms.iter().map(|p| perm::dist(c, p)).collect()
    });
    let k = inst.k.min(candidates.len());
    // Best total over multisets whose smallest index is `first`.
    let best = par::map_range(candidates.len(), |first| {
        let mut best = (usize::MAX, Vec::new());
        let mut chosen = vec![first];
        let mut mins = table[first].clone();
        extend_multiset(&table, &mut chosen, &mut mins, k, &mut best);
        best
    })
    .into_iter()
    .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
    .expect("at least one candidate");
    let medians: Vec<Permutation> = best.1.iter().map(|&i| candidates[i].clone()).collect();
    let check = verify_median_solution(inst, &medians)?;
    debug_assert_eq!(check.value, best.0);
    let feasible = best.0 <= inst.d;
    Ok(Verdict {
        feasible,
        witness: feasible.then_some(Witness {
            perms: medians,
            assignment: check.assignment,
            value: check.value,
        }),
    })
}

fn extend_multiset(
    table: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    mins: &mut Vec<usize>,
    k: usize,
    best: &mut (usize, Vec<usize>),
) {
    let cost: usize = mins.iter().sum();
    if cost < best.0 {
        *best = (cost, chosen.clone());
    }
    if chosen.len() == k {
        return;
    }
    let last = *chosen.last().expect("non-empty");
    for next in last..table.len() {
        let saved = mins.clone();
        for (m, &t) in mins.iter_mut().zip(&table[next]) {
            *m = (*m).min(t);
        }
        chosen.push(next);
        extend_multiset(table, chosen, mins, k, best);
        chosen.pop();
        *mins = saved;
    }
}

/// Minimum vertex cover size of a graph by subset enumeration.
pub fn brute_min_vertex_cover(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    if vertex_count > 24 {
        return Err(Error::Guard("vertex cover oracle needs at most 24 vertices".into()));
    }
    let mut best: Option<u32> = None;
    for set in 0u32..(1 << vertex_count) {
        if best.is_some_and(|b| b.count_ones() <= set.count_ones()) {
            continue;
        }
        if edges.iter().all(|&(u, v)| set >> u & 1 == 1 || set >> v & 1 == 1) {
            best = Some(set);
        }
    }
    let best = best.unwrap_or(0);
    Ok((0..vertex_count).filter(|&v| best >> v & 1 == 1).collect())
}

/// Minimum Hamming radius over all `len`-bit centers.
pub fn brute_closest_string(strings: &[Vec<bool>]) -> Result<usize> {
    closest_string_center(strings).map(|(radius, _)| radius)
}

/// Minimum Hamming radius and the first center (by binary value) attaining it.
pub fn closest_string_center(strings: &[Vec<bool>]) -> Result<(usize, Vec<bool>)> {
    let len = strings.first().map_or(0, Vec::len);
    if len > 20 {
        return Err(Error::Guard("closest string oracle needs length <= 20".into()));
    }
    if let Some(s) = strings.iter().find(|s| s.len() != len) {
        return Err(Error::LengthMismatch(len, s.len()));
    }
    let radius = |c: u32| {
        strings
            .iter()
            .map(|s| s.iter().enumerate().filter(|&(i, &b)| (c >> i & 1 == 1) != b).count())
            .max()
            .unwrap_or(0)
    };
    let best = (0u32..1 << len)
        .min_by_key(|&c| (radius(c), c))
        .unwrap_or(0);
    Ok((radius(best), (0..len).map(|i| best >> i & 1 == 1).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::SymbolTable;

    fn p(seq: &[u32]) -> Permutation {
        Permutation::new(seq.to_vec()).unwrap()
    }

    fn inst(perms: &[&[u32]], k: usize, d: usize) -> Instance {
        let n = perms.first().map_or(3, |q| q.len());
        Instance::new(SymbolTable::numbered(n), perms.iter().map(|q| p(q)).collect(), k, d)
            .unwrap()
    }

    #[test]
    fn bfs_examples() {
        let lim = OracleLimits::default();
        let abc = p(&[0, 1, 2]);
        assert_eq!(bfs_ulam_distance(&abc, &abc, 0, &lim).unwrap(), Some(0));
        assert_eq!(bfs_ulam_distance(&abc, &p(&[1, 2, 0]), 2, &lim).unwrap(), Some(1));
        assert_eq!(
            bfs_ulam_distance(&p(&[0, 1, 2, 3]), &p(&[3, 2, 1, 0]), 4, &lim).unwrap(),
            Some(3)
        );
        assert_eq!(
            bfs_ulam_distance(&p(&[0, 1, 2, 3]), &p(&[3, 2, 1, 0]), 2, &lim).unwrap(),
            None
        );
        assert!(bfs_ulam_distance(&Permutation::identity(9), &Permutation::identity(9), 1, &lim)
            .is_err());
    }

    #[test]
    fn enumerates_all_permutations() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 24);
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn brute_kmedian_examples() {
        let lim = OracleLimits::default();
        let v = brute_kmedian(&inst(&[&[0, 1, 2], &[0, 1, 2]], 1, 0), &lim).unwrap();
        assert!(v.feasible);
        assert_eq!(v.witness.unwrap().value, 0);
        // ABC, BAC, BCA: ABC costs 0 + 1 + 1.
        let v = brute_kmedian(&inst(&[&[0, 1, 2], &[1, 0, 2], &[1, 2, 0]], 1, 5), &lim).unwrap();
        assert_eq!(v.witness.unwrap().value, 2);
        let v = brute_kmedian(&inst(&[&[0, 1, 2], &[2, 1, 0]], 2, 0), &lim).unwrap();
        assert!(v.feasible);
        assert!(brute_kmedian(&inst(&[&[0, 1, 2, 3, 4, 5]], 1, 0), &lim).is_err());
    }

    #[test]
    fn brute_kcenter_examples() {
        let lim = OracleLimits::default();
        assert!(brute_kcenter(&inst(&[], 1, 0), &lim).unwrap().feasible);
        let two = inst(&[&[0, 1, 2, 3], &[3, 2, 1, 0]], 1, 1);
        assert!(!brute_kcenter(&two, &lim).unwrap().feasible);
        let two = inst(&[&[0, 1, 2, 3], &[3, 2, 1, 0]], 1, 2);
        let v = brute_kcenter(&two, &lim).unwrap();
        assert!(v.feasible);
        assert!(verify_center_solution(&two, &v.witness.unwrap().perms).unwrap().ok);
        assert!(brute_kcenter(&inst(&[&[0, 1, 2], &[0, 2, 1]], 3, 1), &lim).is_err());
    }

    #[test]
    fn ball_oracle_matches_brute_force_on_small_inputs() {
        let lim = OracleLimits::default();
        let cases: [(&[&[u32]], usize, usize); 4] = [
            (&[&[0, 1, 2, 3], &[3, 2, 1, 0]], 1, 1),
            (&[&[0, 1, 2, 3], &[3, 2, 1, 0]], 1, 2),
            (&[&[0, 1, 2, 3, 4], &[4, 3, 2, 1, 0], &[1, 0, 3, 2, 4]], 2, 1),
            (&[&[0, 1, 2, 3, 4], &[4, 3, 2, 1, 0], &[1, 0, 3, 2, 4]], 1, 2),
        ];
        for (perms, k, d) in cases {
            let i = inst(perms, k, d);
            assert_eq!(
                ball_kcenter(&i, 1 << 30).unwrap().feasible,
                brute_kcenter(&i, &lim).unwrap().feasible
            );
        }
    }

    #[test]
    fn verifier_conventions() {
        let i = inst(&[&[0, 1, 2]], 1, 0);
        let c = verify_median_solution(&i, &[]).unwrap();
        assert!(!c.ok);
        let c = verify_center_solution(&i, &[p(&[2, 1, 0]), p(&[0, 1, 2])]).unwrap();
        assert!(c.ok);
        assert_eq!(c.assignment, vec![1]);
        assert!(verify_center_solution(&i, &[p(&[0, 1])]).is_err());
    }

    #[test]
    fn small_graph_and_string_oracles() {
        // Triangle needs two vertices.
        assert_eq!(brute_min_vertex_cover(3, &[(0, 1), (1, 2), (0, 2)]).unwrap().len(), 2);
        assert_eq!(brute_min_vertex_cover(3, &[]).unwrap().len(), 0);
        let s = |x: &str| x.chars().map(|c| c == '1').collect::<Vec<_>>();
        assert_eq!(brute_closest_string(&[s("0000"), s("1111")]).unwrap(), 2);
        assert_eq!(brute_closest_string(&[s("00"), s("11")]).unwrap(), 1);
        // 0001 is the smallest string within distance 1 of all three.
        assert_eq!(
            closest_string_center(&[s("0011"), s("0101"), s("1001")]).unwrap(),
            (1, s("0001"))
        );
        assert!(closest_string_center(&[s("01"), s("011")]).is_err());
    }
}
