//! Blocks: maximal red-delimited substrings with fewer than `3d` consecutive
//! blues anywhere inside.

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::coloring::Coloring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub red_count: usize,
}

/// Blocks of `p` under `c` in left-to-right order.
pub fn compute_blocks(p: &Permutation, c: &Coloring, d: usize) -> Result<Vec<Block>> {
    if c.len() != p.len() {
        return Err(Error::LengthMismatch(c.len(), p.len()));
    }
    let red: Vec<bool> = p.seq().iter().map(|&s| c.is_red(s)).collect();
    Ok(blocks_of(&red, d))
}

/// Blocks over a positional red mask.
pub(crate) fn blocks_of(red_at: &[bool], d: usize) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    let mut last_red: Option<usize> = None;
    for (pos, _) in red_at.iter().enumerate().filter(|(_, &r)| r) {
        match (last_red, out.last_mut()) {
            (Some(prev), Some(block)) if pos - prev - 1 < 3 * d => {
                block.end = pos;
                block.red_count += 1;
            }
            _ => out.push(Block {
                start: pos,
                end: pos,
                red_count: 1,
            }),
        }
        last_red = Some(pos);
    }
    out
}

/// Recolors every block holding more than `d` reds entirely blue.
pub fn normalize_blocks(p: &Permutation, c: &Coloring, d: usize) -> Result<Coloring> {
    if c.len() != p.len() {
        return Err(Error::LengthMismatch(c.len(), p.len()));
    }
    let mut red = c.to_bools();
    normalize_in_place(p, &mut red, d);
    Ok(Coloring::from_bools(&red))
}

/// Same as [`normalize_blocks`] on a red flag per symbol id.
pub(crate) fn normalize_in_place(p: &Permutation, red: &mut [bool], d: usize) {
    let mut run_start = 0;
    let mut reds = 0;
    let mut last_red: Option<usize> = None;
    let seq = p.seq();
    let flush = |start: usize, end: usize, reds: usize, red: &mut [bool]| {
        if reds > d {
            for &s in &seq[start..=end] {
                red[s as usize] = false;
            }
        }
    };
    for pos in 0..seq.len() {
        if !red[seq[pos] as usize] {
            continue;
        }
        match last_red {
            Some(prev) if pos - prev - 1 < 3 * d => reds += 1,
            Some(prev) => {
                flush(run_start, prev, reds, red);
                run_start = pos;
                reds = 1;
            }
            None => {
                run_start = pos;
                reds = 1;
            }
        }
        last_red = Some(pos);
    }
    if let Some(prev) = last_red {
        flush(run_start, prev, reds, red);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(p: &Permutation, pattern: &str) -> Coloring {
        Coloring::with_red(
            p.len(),
            pattern
                .chars()
                .enumerate()
                .filter(|(_, ch)| *ch == 'R')
                .map(|(i, _)| p.symbol_at(i)),
        )
    }

    #[test]
    fn all_blue_has_no_blocks() {
        let p = Permutation::identity(6);
        assert!(compute_blocks(&p, &Coloring::all_blue(6), 2).unwrap().is_empty());
        assert_eq!(normalize_blocks(&p, &Coloring::all_blue(6), 1).unwrap(), Coloring::all_blue(6));
    }

    #[test]
    fn single_red() {
        let p = Permutation::new(vec![3, 1, 0, 5, 4, 2, 6]).unwrap();
        let c = mask(&p, "BBBBBRB");
        assert_eq!(
            compute_blocks(&p, &c, 1).unwrap(),
            vec![Block { start: 5, end: 5, red_count: 1 }]
        );
    }

    #[test]
    fn two_blues_stay_inside_for_d1() {
        let p = Permutation::identity(4);
        let c = mask(&p, "RBBR");
        assert_eq!(
            compute_blocks(&p, &c, 1).unwrap(),
            vec![Block { start: 0, end: 3, red_count: 2 }]
        );
        let c = mask(&Permutation::identity(5), "RBBBR");
        assert_eq!(compute_blocks(&Permutation::identity(5), &c, 1).unwrap().len(), 2);
    }

    #[test]
    fn zero_radius_splits_every_red() {
        let p = Permutation::identity(3);
        assert_eq!(compute_blocks(&p, &mask(&p, "RRR"), 0).unwrap().len(), 3);
    }

    #[test]
    fn normalization_thresholds() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let c = mask(&p, "RBRB");
        assert_eq!(normalize_blocks(&p, &c, 1).unwrap(), Coloring::all_blue(4));
        assert_eq!(normalize_blocks(&p, &c, 2).unwrap(), c);
        // The lone red two blocks away survives.
        let p = Permutation::identity(8);
        let c = mask(&p, "RBRBBBBR");
        assert_eq!(normalize_blocks(&p, &c, 1).unwrap(), mask(&p, "BBBBBBBR"));
    }

    #[test]
    fn length_mismatch() {
        let p = Permutation::identity(3);
        assert!(compute_blocks(&p, &Coloring::all_blue(4), 1).is_err());
    }
}
