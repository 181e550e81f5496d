//! One improvement step for a candidate center, steered by an uncovered
//! guide permutation.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{dist, moved, permutation_graph, Permutation, Symbol};

use super::blocks::normalize_in_place;
use super::coloring::{ColoringFamily, ColoringPair};
use super::cover::minimal_vertex_covers;

/// Lowest-id symbol of `cover` that is red for the candidate and blue for the
/// guide.
pub fn pick_witness_symbol(cover: &[Symbol], pair: &ColoringPair) -> Option<Symbol> {
    cover
        .iter()
        .copied()
        .filter(|&x| pair.cand.is_red(x) && !pair.guide.is_red(x))
        .min()
}

fn witness_in(cover: &[Symbol], cand_red: &[bool], guide_red: &[bool]) -> Option<Symbol> {
    cover
        .iter()
        .copied()
        .filter(|&x| cand_red[x as usize] && !guide_red[x as usize])
        .min()
}

/// Inclusive range of insertion slots for `x` in `pc` with `x` removed, or
/// `None` when the anchors leave no room.
fn slot_window(pc: &Permutation, pg: &Permutation, x: Symbol, blue_both: impl Fn(Symbol) -> bool, d: usize) -> Option<(usize, usize)> {
    let n = pc.len();
    let gx = pg.position(x);
    let left = pg.seq()[..gx].iter().rev().copied().find(|&s| blue_both(s));
    let right = pg.seq()[gx + 1..].iter().copied().find(|&s| blue_both(s));
    let cx = pc.position(x);
    // Index in `pc` with `x` removed.
    let rest_index = |s: Symbol| {
        let p = pc.position(s);
        if p > cx {
            p - 1
        } else {
            p
        }
    };
    let lo = left.map_or(0, |s| rest_index(s) + 1);
    let hi = right.map_or(n - 1, rest_index);
    if lo > hi {
        return None;
    }
    let cap = 6 * d + 2;
    if hi - lo < cap {
        return Some((lo, hi));
    }
    // Keep the `cap` slots nearest the original slot, ties to the left.
    let centre = cx.clamp(lo, hi);
    let mut a = centre;
    let mut b = centre;
    while b - a + 1 < cap {
        let left_gap = if a > lo { cx.abs_diff(a - 1) } else { usize::MAX };
        let right_gap = if b < hi { cx.abs_diff(b + 1) } else { usize::MAX };
        if left_gap <= right_gap {
            a -= 1;
        } else {
            b += 1;
        }
    }
    Some((a, b))
}

/// Moves of `x` within `pc` to every slot strictly between the nearest
/// symbols around `x` in `pg` that are blue under both colorings.
pub fn progress_candidates(
    pc: &Permutation,
    pg: &Permutation,
    x: Symbol,
    pair: &ColoringPair,
    d: usize,
) -> Result<Vec<Permutation>> {
    let n = pc.len();
    if pg.len() != n {
        return Err(Error::LengthMismatch(pc.len(), pg.len()));
    }
    if pair.cand.len() != n || pair.guide.len() != n {
        return Err(Error::LengthMismatch(pair.cand.len(), n));
    }
    if x as usize >= n {
        return Err(Error::UnknownSymbol(x));
    }
    let blue_both = |s: Symbol| !pair.cand.is_red(s) && !pair.guide.is_red(s);
    Ok(match slot_window(pc, pg, x, blue_both, d) {
        Some((lo, hi)) => (lo..=hi).map(|s| moved(pc, pc.position(x), s)).collect(),
        None => Vec::new(),
    })
}

/// Union of progress candidates over every family member and every minimal
/// vertex cover of size at most `2d`, sorted and deduplicated.
pub fn guide_set(pc: &Permutation, pg: &Permutation, d: usize, family: &ColoringFamily) -> Result<Vec<Permutation>> {
    let n = pc.len();
    if pg.len() != n {
        return Err(Error::LengthMismatch(n, pg.len()));
    }
    if family.n() != n {
        return Err(Error::LengthMismatch(family.n(), n));
    }
    let gap = dist(pc, pg);
    if !(d < gap && gap <= 2 * d) {
        return Err(Error::Precondition(format!(
            "guide set needs d < dist <= 2d, got d = {d}, dist = {gap}"
        )));
    }
    let graph = permutation_graph(pc, pg)?;
    let covers = minimal_vertex_covers(&graph, 2 * d);

    let windows = par::fold_range(
        family.len(),
        || (HashSet::new(), vec![false; n], vec![false; n]),
        |(mut acc, mut cand, mut guide), i| {
            family.fill(i, &mut cand, &mut guide);
            normalize_in_place(pc, &mut cand, d);
            normalize_in_place(pg, &mut guide, d);
            for cover in &covers {
                let Some(x) = witness_in(cover, &cand, &guide) else {
                    continue;
                };
                let blue_both = |s: Symbol| !cand[s as usize] && !guide[s as usize];
                if let Some((lo, hi)) = slot_window(pc, pg, x, blue_both, d) {
                    acc.insert((x, lo, hi));
                }
            }
            (acc, cand, guide)
        },
        |(mut a, c, g), (b, _, _)| {
            if a.len() < b.len() {
                return (merge(b, a), c, g);
            }
            a.extend(b);
            (a, c, g)
        },
    )
    .0;

    let mut out = BTreeSet::new();
    for (x, lo, hi) in windows {
        let from = pc.position(x);
        for s in lo..=hi {
            out.insert(moved(pc, from, s));
        }
    }
    Ok(out.into_iter().collect())
}

fn merge<T: std::hash::Hash + Eq>(mut big: HashSet<T>, small: HashSet<T>) -> HashSet<T> {
    big.extend(small);
    big
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcenter::coloring::{coloring_family, Coloring, ColoringFamilyConfig};
    use crate::perm::SymbolTable;

    fn abc() -> SymbolTable {
        SymbolTable::new(["A", "B", "C"]).unwrap()
    }

    #[test]
    fn witness_symbol() {
        let pair = |cand: &[Symbol], guide: &[Symbol]| ColoringPair {
            cand: Coloring::with_red(4, cand.iter().copied()),
            guide: Coloring::with_red(4, guide.iter().copied()),
        };
        assert_eq!(pick_witness_symbol(&[], &pair(&[0], &[])), None);
        assert_eq!(pick_witness_symbol(&[2], &pair(&[2], &[])), Some(2));
        assert_eq!(pick_witness_symbol(&[0, 3], &pair(&[0, 3], &[0])), Some(3));
        assert_eq!(pick_witness_symbol(&[1, 3], &pair(&[1, 3], &[])), Some(1));
    }

    #[test]
    fn equal_permutations_include_themselves() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let pair = ColoringPair {
            cand: Coloring::with_red(4, [0]),
            guide: Coloring::all_blue(4),
        };
        let got = progress_candidates(&p, &p, 0, &pair, 1).unwrap();
        assert!(got.contains(&p));
    }

    #[test]
    fn nearest_blue_anchors_bound_the_slots() {
        let t = abc();
        let pc = t.parse_permutation("B A C").unwrap();
        let pg = t.parse_permutation("A B C").unwrap();
        let b = t.id("B").unwrap();
        let pair = ColoringPair {
            cand: Coloring::with_red(3, [b]),
            guide: Coloring::all_blue(3),
        };
        let got = progress_candidates(&pc, &pg, b, &pair, 1).unwrap();
        assert_eq!(got, vec![pg.clone()]);
        // With no blue anchors every slot qualifies.
        let all_red = ColoringPair {
            cand: Coloring::with_red(3, [0, 1, 2]),
            guide: Coloring::all_blue(3),
        };
        let got: BTreeSet<_> = progress_candidates(&pc, &pg, b, &all_red, 1).unwrap().into_iter().collect();
        let want: BTreeSet<_> = ["B A C", "A B C", "A C B"]
            .iter()
            .map(|s| t.parse_permutation(s).unwrap())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn window_is_capped_near_the_original_slot() {
        // No blue anchors in a length-20 permutation: 20 slots, cap 8 at d = 1.
        let n = 20;
        let pc = Permutation::identity(n);
        let pair = ColoringPair {
            cand: Coloring::with_red(n, 0..n as Symbol),
            guide: Coloring::all_blue(n),
        };
        let got = progress_candidates(&pc, &pc, 10, &pair, 1).unwrap();
        assert_eq!(got.len(), 8);
        let slots: Vec<usize> = got.iter().map(|p| p.position(10)).collect();
        assert_eq!(slots, (6..=13).collect::<Vec<_>>());
        let edge = progress_candidates(&pc, &pc, 0, &pair, 1).unwrap();
        assert_eq!(edge.iter().map(|p| p.position(0)).collect::<Vec<_>>(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn unknown_symbol() {
        let p = Permutation::identity(3);
        let pair = ColoringPair {
            cand: Coloring::all_blue(3),
            guide: Coloring::all_blue(3),
        };
        assert!(matches!(progress_candidates(&p, &p, 3, &pair, 1), Err(Error::UnknownSymbol(3))));
    }

    #[test]
    fn guide_set_precondition() {
        let p = Permutation::identity(4);
        let fam = coloring_family(4, 1, &ColoringFamilyConfig::exhaustive()).unwrap();
        assert!(matches!(guide_set(&p, &p, 1, &fam), Err(Error::Precondition(_))));
    }

    #[test]
    fn planted_progress_and_size_bound() {
        let sigma = Permutation::identity(5);
        let mut ball: Vec<_> = crate::oracles::move_ball(&sigma, 2).into_iter().collect();
        ball.sort();
        let pc = ball.iter().find(|p| dist(p, &sigma) == 2).unwrap();
        let pg = ball.iter().find(|p| dist(p, pc) == 3).unwrap();
        let fam = coloring_family(5, 2, &ColoringFamilyConfig::exhaustive()).unwrap();
        let got = guide_set(pc, pg, 2, &fam).unwrap();
        assert!(got.iter().any(|p| dist(p, &sigma) == 1));
        assert!(got.len() <= fam.len() * 16 * 14);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }
}
