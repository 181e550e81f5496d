//! Maximal substrings shared by a set of permutations.
//!
//! Since each symbol occurs once, a substring is common to all permutations
//! exactly when every adjacent pair inside it is adjacent in all of them.

use crate::error::{Error, Result};
use crate::perm::{Permutation, Symbol};

/// Partition of the alphabet into maximal common substrings, ordered by
/// position in the first permutation. Empty for an empty input.
pub fn maximal_common_substrings(perms: &[Permutation]) -> Result<Vec<Vec<Symbol>>> {
    let Some(first) = perms.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if let Some(p) = perms.iter().find(|p| p.len() != n) {
        return Err(Error::LengthMismatch(n, p.len()));
    }
    let successor_agrees = |pos: usize| {
        let (a, b) = (first.symbol_at(pos), first.symbol_at(pos + 1));
        perms.iter().all(|p| {
            let i = p.position(a);
            i + 1 < n && p.symbol_at(i + 1) == b
        })
    };
    let mut out: Vec<Vec<Symbol>> = Vec::new();
    for pos in 0..n {
        if pos > 0 && successor_agrees(pos - 1) {
            out.last_mut().expect("chain in progress").push(first.symbol_at(pos));
        } else {
            out.push(vec![first.symbol_at(pos)]);
        }
    }
    Ok(out)
}

/// Length of the longest common substring.
pub fn longest_common_substring(perms: &[Permutation]) -> Result<usize> {
    Ok(maximal_common_substrings(perms)?
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::SymbolTable;

    #[test]
    fn chains() {
        let t = SymbolTable::new(["A", "B", "C", "D"]).unwrap();
        let ps: Vec<_> = ["A B C D", "A B D C"].iter().map(|r| t.parse_permutation(r).unwrap()).collect();
        let names: Vec<Vec<&str>> = maximal_common_substrings(&ps)
            .unwrap()
            .iter()
            .map(|c| c.iter().map(|&s| t.name(s)).collect())
            .collect();
        assert_eq!(names, vec![vec!["A", "B"], vec!["C"], vec!["D"]]);
    }

    #[test]
    fn single_permutation_is_one_chain() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(maximal_common_substrings(&[p]).unwrap(), vec![vec![2, 0, 1]]);
        assert!(maximal_common_substrings(&[]).unwrap().is_empty());
    }

    #[test]
    fn reversed_pairs_do_not_chain() {
        let a = Permutation::identity(3);
        let b = Permutation::new(vec![2, 1, 0]).unwrap();
        assert_eq!(longest_common_substring(&[a, b]).unwrap(), 1);
    }
}
