//! Kernelization for k-median: drop surplus copies, split into connectivity
//! components, contract long shared substrings, and tag each component with
//! a distinct prefix.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracles::verify_median_solution;
use crate::perm::{dist, Instance, Permutation, Symbol, SymbolTable};

use super::components::connectivity_components;
use super::pairscheme::{encode, PairSchemeString};
use super::substrings::maximal_common_substrings;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub component: usize,
    /// Original symbol ids of the shared substring.
    pub original: Vec<Symbol>,
    /// Kernel symbol ids standing in for it.
    pub replacement: Vec<Symbol>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BodySymbol {
    Original(Symbol),
    /// Offset into the contraction with the given index.
    Chain(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub original_n: usize,
    pub reduced_n: usize,
    pub original_m: usize,
    pub reduced_m: usize,
    /// Too many distinct permutations: the kernel is a fixed no-instance.
    pub trivial_no: bool,
    /// `(input index, copies removed)` for every permutation that lost copies.
    pub removed_duplicates: Vec<(usize, usize)>,
    /// Input index each kernel permutation came from.
    pub kept: Vec<usize>,
    /// Kernel permutation indices per connectivity component.
    pub components: Vec<Vec<usize>>,
    pub contracted: Vec<Contraction>,
    /// First body token (1-based) when substrings were contracted.
    pub relabel_base: Option<usize>,
    /// Bitstring whose encoding prefixes each component.
    pub prefixes: Vec<String>,
    /// Padding symbols appended to each kernel permutation.
    pub suffix_ids: Vec<Vec<Symbol>>,
    #[serde(skip)]
    body_maps: Vec<Vec<BodySymbol>>,
}

impl KernelReport {
    /// Whether the alphabet was rewritten.
    pub fn relabelled(&self) -> bool {
        self.relabel_base.is_some()
    }

    /// Kernel permutations of each component with prefix and padding
    /// stripped, over local ids `0..body_len`.
    pub fn bodies(&self, kernel: &Instance) -> Vec<Vec<Permutation>> {
        let base = self.relabel_base.map_or(0, |b| b - 1);
        self.components
            .iter()
            .enumerate()
            .map(|(ci, members)| {
                let len = self.body_maps.get(ci).map_or(kernel.n(), Vec::len);
                members
                    .iter()
                    .map(|&i| {
                        let seq = kernel.perms[i]
                            .seq()
                            .iter()
                            .filter(|&&s| (base..base + len).contains(&(s as usize)))
                            .map(|&s| s - base as Symbol)
                            .collect();
                        Permutation::new(seq).expect("body is a permutation")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Constant-size no-instance.
fn trivial_no_instance() -> Instance {
    let t = SymbolTable::numbered(2);
    let perms = vec![Permutation::identity(2), Permutation::new(vec![1, 0]).unwrap()];
    Instance::new(t, perms, 1, 0).unwrap()
}

pub fn kernelize(inst: &Instance) -> Result<(Instance, KernelReport)> {
    let (k, d) = (inst.k, inst.d);
    let mut report = KernelReport {
        original_n: inst.n(),
        reduced_n: inst.n(),
        original_m: inst.m(),
        reduced_m: inst.m(),
        trivial_no: false,
        removed_duplicates: Vec::new(),
        kept: Vec::new(),
        components: Vec::new(),
        contracted: Vec::new(),
        relabel_base: None,
        prefixes: Vec::new(),
        suffix_ids: Vec::new(),
        body_maps: Vec::new(),
    };

    if inst.distinct().len() > k + d {
        let out = trivial_no_instance();
        report.trivial_no = true;
        report.reduced_n = out.n();
        report.reduced_m = out.m();
        return Ok((out, report));
    }

    // Keep the first d + 1 copies of every permutation.
    let mut seen: std::collections::HashMap<&Permutation, (usize, usize)> = Default::default();
    for (i, p) in inst.perms.iter().enumerate() {
        let entry = seen.entry(p).or_insert((i, 0));
        entry.1 += 1;
        if entry.1 <= d + 1 {
            report.kept.push(i);
        }
    }
    let mut removed: Vec<(usize, usize)> = seen
        .values()
        .filter(|(_, count)| *count > d + 1)
        .map(|&(first, count)| (first, count - d - 1))
        .collect();
    removed.sort_unstable();
    report.removed_duplicates = removed;
    let perms: Vec<Permutation> = report.kept.iter().map(|&i| inst.perms[i].clone()).collect();
    report.reduced_m = perms.len();

    let partition = connectivity_components(&perms, d);
    report.components = partition.components.clone();
    let r = partition.r();
    let chains: Vec<Vec<Vec<Symbol>>> = partition
        .components
        .iter()
        .map(|c| {
            let members: Vec<Permutation> = c.iter().map(|&i| perms[i].clone()).collect();
            maximal_common_substrings(&members)
        })
        .collect::<Result<_>>()?;
    if chains.iter().flatten().all(|c| c.len() <= d + 1) {
        let out = Instance::new(inst.table.clone(), perms, k, d)?;
        return Ok((out, report));
    }

    let base = 2 * (d + 1) * r;
    let mut bodies: Vec<Vec<Vec<Symbol>>> = Vec::with_capacity(r);
    for (ci, members) in partition.components.iter().enumerate() {
        // Local id per original symbol, in order of the component's first
        // permutation; chain interiors share their head's slot.
        let mut head_of: Vec<Option<usize>> = vec![None; inst.n()];
        let mut skip = vec![false; inst.n()];
        for chain in chains[ci].iter().filter(|c| c.len() > d + 1) {
            head_of[chain[0] as usize] = Some(report.contracted.len());
            for &s in &chain[1..] {
                skip[s as usize] = true;
            }
            report.contracted.push(Contraction {
                component: ci,
                original: chain.clone(),
                replacement: Vec::new(),
            });
        }
        let mut local: Vec<Option<Vec<Symbol>>> = vec![None; inst.n()];
        let mut map = Vec::new();
        for &s in perms[members[0]].seq() {
            if skip[s as usize] {
                continue;
            }
            let start = map.len() as Symbol;
            match head_of[s as usize] {
                Some(c) => {
                    for off in 0..=d {
                        map.push(BodySymbol::Chain(c, off));
                    }
                    let ids: Vec<Symbol> = (start..start + d as Symbol + 1).collect();
                    report.contracted[c].replacement = ids.iter().map(|&l| l + base as Symbol).collect();
                    local[s as usize] = Some(ids);
                }
                None => {
                    map.push(BodySymbol::Original(s));
                    local[s as usize] = Some(vec![start]);
                }
            }
        }
        let body = members
            .iter()
            .map(|&i| {
                perms[i]
                    .seq()
                    .iter()
                    .filter_map(|&s| local[s as usize].as_ref())
                    .flatten()
                    .map(|&l| l + base as Symbol)
                    .collect()
            })
            .collect();
        bodies.push(body);
        report.body_maps.push(map);
    }

    let width = report.body_maps.iter().map(Vec::len).max().unwrap_or(0);
    let total = base + width;
    let mut out_perms = vec![Permutation::identity(0); perms.len()];
    report.suffix_ids = vec![Vec::new(); perms.len()];
    for (ci, members) in partition.components.iter().enumerate() {
        let bits: Vec<bool> = (0..(d + 1) * r).map(|b| b / (d + 1) == ci).collect();
        let prefix = PairSchemeString::new(bits);
        report.prefixes.push(prefix.to_string());
        let prefix = encode(&prefix);
        let own = report.body_maps[ci].len();
        let suffix: Vec<Symbol> = ((base + own) as Symbol..total as Symbol).collect();
        for (slot, &i) in members.iter().enumerate() {
            let seq: Vec<Symbol> = prefix
                .seq()
                .iter()
                .chain(&bodies[ci][slot])
                .chain(&suffix)
                .copied()
                .collect();
            out_perms[i] = Permutation::new(seq)?;
            report.suffix_ids[i] = suffix.clone();
        }
    }
    report.relabel_base = Some(base + 1);
    report.reduced_n = total;
    let out = Instance::new(SymbolTable::numbered(total), out_perms, k, d)?;
    Ok((out, report))
}

/// Maps kernel medians back to the original alphabet. Medians serving no
/// kernel permutation are dropped.
pub fn lift_medians(kernel: &Instance, report: &KernelReport, medians: &[Permutation]) -> Result<Vec<Permutation>> {
    if report.trivial_no {
        return Err(Error::Input("a trivial no-instance has no medians to lift".into()));
    }
    if !report.relabelled() {
        return Ok(medians.to_vec());
    }
    let check = verify_median_solution(kernel, medians)?;
    let component_of = {
        let mut out = vec![0; kernel.m()];
        for (c, members) in report.components.iter().enumerate() {
            for &i in members {
                out[i] = c;
            }
        }
        out
    };
    let base = report.relabel_base.expect("relabelled") - 1;
    let mut lifted = Vec::new();
    for (j, median) in medians.iter().enumerate() {
        let served: Vec<usize> = (0..kernel.m()).filter(|&i| check.assignment[i] == j).collect();
        let Some(&first) = served.first() else {
            continue;
        };
        let ci = component_of[first];
        let map = &report.body_maps[ci];
        let in_body = |s: Symbol| (base..base + map.len()).contains(&(s as usize));
        let body_of = |p: &Permutation| -> Vec<Symbol> {
            p.seq().iter().copied().filter(|&s| in_body(s)).map(|s| s - base as Symbol).collect()
        };
        let targets: Vec<Permutation> = served
            .iter()
            .map(|&i| Permutation::new(body_of(&kernel.perms[i])))
            .collect::<Result<_>>()?;
        let mut body = body_of(median);

        for (c, contraction) in report.contracted.iter().enumerate() {
            if contraction.component != ci {
                continue;
            }
            let ids: Vec<Symbol> = contraction.replacement.iter().map(|&s| s - base as Symbol).collect();
            body = make_contiguous(&body, &ids, &targets)?;
            debug_assert!(map[ids[0] as usize] == BodySymbol::Chain(c, 0));
        }

        let mut seq = Vec::with_capacity(kernel.n());
        for &l in &body {
            match map[l as usize] {
                BodySymbol::Original(s) => seq.push(s),
                BodySymbol::Chain(c, 0) => seq.extend(&report.contracted[c].original),
                BodySymbol::Chain(_, _) => {}
            }
        }
        lifted.push(Permutation::new(seq)?);
    }
    Ok(lifted)
}

/// Regroups `ids` as one contiguous run, anchored where the best-scoring
/// member of `ids` sits, scored by total distance to `targets`.
fn make_contiguous(body: &[Symbol], ids: &[Symbol], targets: &[Permutation]) -> Result<Vec<Symbol>> {
    let rest: Vec<Symbol> = body.iter().copied().filter(|s| !ids.contains(s)).collect();
    let mut best: Option<(usize, Vec<Symbol>)> = None;
    for &anchor in ids {
        let at = body
            .iter()
            .take_while(|&&s| s != anchor)
            .filter(|s| !ids.contains(s))
            .count();
        let mut candidate = rest[..at].to_vec();
        candidate.extend(ids);
        candidate.extend(&rest[at..]);
        let p = Permutation::new(candidate.clone())?;
        let cost: usize = targets.iter().map(|t| dist(&p, t)).sum();
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, candidate));
        }
    }
    Ok(best.map_or_else(|| body.to_vec(), |(_, b)| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmedian::substrings::longest_common_substring;

    fn inst(rows: &[&str], k: usize, d: usize) -> Instance {
        let t = SymbolTable::numbered(rows[0].split_whitespace().count());
        let perms = rows.iter().map(|r| t.parse_permutation(r).unwrap()).collect();
        Instance::new(t, perms, k, d).unwrap()
    }

    #[test]
    fn too_many_distinct_is_a_fixed_no() {
        let i = inst(&["1 2 3", "2 1 3", "1 3 2", "3 2 1"], 1, 2);
        let (out, report) = kernelize(&i).unwrap();
        assert!(report.trivial_no);
        assert_eq!(out.n(), 2);
        assert_eq!(out.m(), 2);
        assert_eq!((out.k, out.d), (1, 0));
    }

    #[test]
    fn multiplicity_cap() {
        let mut rows = vec!["1 2 3 4"; 6];
        rows.push("2 1 4 3");
        let (out, report) = kernelize(&inst(&rows, 1, 2)).unwrap();
        assert_eq!(out.m(), 4);
        assert_eq!(report.removed_duplicates, vec![(0, 3)]);
        assert_eq!(report.kept, vec![0, 1, 2, 6]);
        assert!(report.contracted.is_empty());
    }

    #[test]
    fn reduced_instance_is_unchanged() {
        let i = inst(&["1 2 3 4", "2 1 3 4", "1 2 4 3"], 2, 1);
        let (out, report) = kernelize(&i).unwrap();
        assert_eq!(out, i);
        assert!(report.contracted.is_empty());
        assert!(!report.relabelled());
    }

    #[test]
    fn two_components_with_long_shared_runs() {
        // d = 2: a run of length 6 in each component shrinks to 3 ids.
        let i = inst(
            &[
                "1 2 3 4 5 6 7 8",
                "2 1 3 4 5 6 7 8",
                "8 7 3 4 5 6 2 1",
                "7 8 3 4 5 6 2 1",
            ],
            2,
            2,
        );
        let (out, report) = kernelize(&i).unwrap();
        assert_eq!(report.components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(report.contracted.len(), 2);
        for c in &report.contracted {
            assert_eq!(c.original.len(), 6);
            assert_eq!(c.replacement.len(), 3);
        }
        assert_eq!(report.relabel_base, Some(13));
        assert_eq!(report.prefixes, vec!["111000".to_string(), "000111".to_string()]);
        for a in &out.perms[..2] {
            for b in &out.perms[2..] {
                assert!(dist(a, b) > 2);
            }
        }
        for bodies in report.bodies(&out) {
            assert!(longest_common_substring(&bodies).unwrap() <= 3);
        }
        // Lifting the kernel inputs themselves restores the originals.
        let lifted = lift_medians(&out, &report, &out.perms).unwrap();
        assert_eq!(lifted, i.perms);
    }
}
