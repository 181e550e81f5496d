//! Connectivity components: classes of the "within distance `d`" relation
//! closed under chaining.

use std::collections::{HashMap, VecDeque};

use crate::perm::{within, Permutation};

/// Components as lists of input indices. Equal permutations always share a
/// component. Components are ordered by their smallest index and each list
/// is increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityPartition {
    pub components: Vec<Vec<usize>>,
}

impl ConnectivityPartition {
    pub fn r(&self) -> usize {
        self.components.len()
    }

    /// Component index of every input position.
    pub fn component_of(&self, m: usize) -> Vec<usize> {
        let mut out = vec![0; m];
        for (c, members) in self.components.iter().enumerate() {
            for &i in members {
                out[i] = c;
            }
        }
        out
    }
}

pub fn connectivity_components(perms: &[Permutation], d: usize) -> ConnectivityPartition {
    let mut index: HashMap<&Permutation, usize> = HashMap::new();
    let mut distinct: Vec<&Permutation> = Vec::new();
    let rep_of: Vec<usize> = perms
        .iter()
        .map(|p| {
            *index.entry(p).or_insert_with(|| {
                distinct.push(p);
                distinct.len() - 1
            })
        })
        .collect();

    let mut label = vec![usize::MAX; distinct.len()];
    let mut count = 0;
    for start in 0..distinct.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in 0..distinct.len() {
                if label[v] == usize::MAX && within(distinct[u], distinct[v], d) {
                    label[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    let mut components = vec![Vec::new(); count];
    for (i, &r) in rep_of.iter().enumerate() {
        components[label[r]].push(i);
    }
    ConnectivityPartition { components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{dist, SymbolTable};

    fn perms(rows: &[&str]) -> Vec<Permutation> {
        let t = SymbolTable::numbered(rows[0].split_whitespace().count());
        rows.iter().map(|r| t.parse_permutation(r).unwrap()).collect()
    }

    #[test]
    fn threshold() {
        let ps = perms(&["1 2 3 4", "2 1 4 3"]);
        assert_eq!(dist(&ps[0], &ps[1]), 2);
        assert_eq!(connectivity_components(&ps, 2).r(), 1);
        assert_eq!(connectivity_components(&ps, 1).components, vec![vec![0], vec![1]]);
        assert_eq!(connectivity_components(&ps[..1], 0).r(), 1);
    }

    #[test]
    fn chaining_and_duplicates() {
        let ps = perms(&["4 3 2 1", "1 2 3 4", "2 1 3 4", "4 3 2 1", "2 3 1 4"]);
        let part = connectivity_components(&ps, 1);
        assert_eq!(part.components, vec![vec![0, 3], vec![1, 2, 4]]);
        assert_eq!(part.component_of(5), vec![0, 1, 1, 0, 1]);
    }
}
