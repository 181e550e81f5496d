//! Permutations over a dense alphabet, the Ulam metric and the permutation graph.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense symbol id.
pub type Symbol = u32;

/// Names for the dense symbol ids `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (id, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSymbolTable(format!("bad token {name:?}")));
            }
            if index.insert(name.clone(), id as Symbol).is_some() {
                return Err(Error::InvalidSymbolTable(format!("duplicate token {name:?}")));
            }
        }
        Ok(Self { names, index })
    }

    /// Table whose tokens are the 1-based integers `1..=n`.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string())).expect("integer tokens are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: Symbol) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Parses a whitespace-separated token line into a permutation.
    pub fn parse_permutation(&self, line: &str) -> Result<Permutation> {
        let seq = line
            .split_whitespace()
            .map(|tok| {
                self.id(tok)
                    .ok_or_else(|| Error::InvalidPermutation(format!("unknown token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if seq.len() != self.len() {
            return Err(Error::LengthMismatch(seq.len(), self.len()));
        }
        Permutation::new(seq)
    }

    pub fn render(&self, p: &Permutation) -> String {
        p.seq()
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A bijection from positions `0..n` onto symbol ids `0..n`, stored together
/// with its inverse.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct Permutation {
    seq: Box<[Symbol]>,
    inv: Box<[u32]>,
}

impl Permutation {
    pub fn new(seq: Vec<Symbol>) -> Result<Self> {
        let n = seq.len();
        let mut inv = vec![u32::MAX; n];
        for (pos, &s) in seq.iter().enumerate() {
            let slot = inv
                .get_mut(s as usize)
                .ok_or_else(|| Error::InvalidPermutation(format!("symbol {s} out of range {n}")))?;
            if *slot != u32::MAX {
                return Err(Error::InvalidPermutation(format!("symbol {s} repeated")));
            }
            *slot = pos as u32;
        }
        Ok(Self {
            seq: seq.into_boxed_slice(),
            inv: inv.into_boxed_slice(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n as Symbol).collect()).expect("identity is a permutation")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[Symbol] {
        &self.seq
    }

    pub fn symbol_at(&self, pos: usize) -> Symbol {
        self.seq[pos]
    }

    pub fn position(&self, s: Symbol) -> usize {
        self.inv[s as usize] as usize
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.seq.into_vec()
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.seq.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.seq.cmp(&other.seq)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.seq.iter()).finish()
    }
}

impl TryFrom<Vec<Symbol>> for Permutation {
    type Error = Error;

    fn try_from(seq: Vec<Symbol>) -> Result<Self> {
        Self::new(seq)
    }
}

impl From<Permutation> for Vec<Symbol> {
    fn from(p: Permutation) -> Self {
        p.into_vec()
    }
}

/// Alphabet, multiset of input permutations and the two parameters.
///
/// The same structure serves k-center (`d` is the radius) and k-median (`d`
/// is the total cost budget).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub table: SymbolTable,
    pub perms: Vec<Permutation>,
    pub k: usize,
    pub d: usize,
}

impl Instance {
    pub fn new(table: SymbolTable, perms: Vec<Permutation>, k: usize, d: usize) -> Result<Self> {
        if let Some(p) = perms.iter().find(|p| p.len() != table.len()) {
            return Err(Error::LengthMismatch(p.len(), table.len()));
        }
        Ok(Self { table, perms, k, d })
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }

    pub fn m(&self) -> usize {
        self.perms.len()
    }

    /// Distinct input permutations in order of first occurrence.
    pub fn distinct(&self) -> Vec<Permutation> {
        distinct(&self.perms)
    }
}

pub(crate) fn distinct(perms: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    perms
        .iter()
        .filter(|p| seen.insert(*p))
        .cloned()
        .collect()
}

/// Graph on the symbols with an edge for every pair ordered differently by
/// two permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGraph {
    n: usize,
    /// Sorted `(lo, hi)` pairs with `lo < hi`.
    edges: Vec<(Symbol, Symbol)>,
}

impl PermutationGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Symbol, Symbol)>) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Symbol, Symbol)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_edge(&self, a: Symbol, b: Symbol) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

fn check_same_len(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch(a.len(), b.len()))
    }
}

/// Length of a longest strictly increasing subsequence (patience sorting).
pub(crate) fn lis_length(values: impl IntoIterator<Item = u32>) -> usize {
    let mut tails: Vec<u32> = Vec::new();
    for v in values {
        let at = tails.partition_point(|&t| t < v);
        if at == tails.len() {
            tails.push(v);
        } else {
            tails[at] = v;
        }
    }
    tails.len()
}

/// Relabels `b` so that `a` reads as the identity.
fn relabeled<'a>(a: &'a Permutation, b: &'a Permutation) -> impl Iterator<Item = u32> + 'a {
    b.seq.iter().map(move |&s| a.inv[s as usize])
}

pub fn lcs_length(a: &Permutation, b: &Permutation) -> Result<usize> {
    check_same_len(a, b)?;
    Ok(lis_length(relabeled(a, b)))
}

/// Minimum number of moves turning `a` into `b`, i.e. `n - LCS(a, b)`.
pub fn ulam_distance(a: &Permutation, b: &Permutation) -> Result<usize> {
    Ok(a.len() - lcs_length(a, b)?)
}

/// Unchecked variant for hot loops where lengths are known to agree.
#[inline]
pub(crate) fn dist(a: &Permutation, b: &Permutation) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.len() - lis_length(relabeled(a, b))
}

/// Whether `ulam_distance(a, b) <= t`, stopping as soon as the answer is known.
pub fn distance_at_most(a: &Permutation, b: &Permutation, t: usize) -> Result<bool> {
    check_same_len(a, b)?;
    Ok(within(a, b, t))
}

#[inline]
pub(crate) fn within(a: &Permutation, b: &Permutation, t: usize) -> bool {
    let n = a.len();
    let need = n.saturating_sub(t);
    if need == 0 {
        return true;
    }
    let mut tails: Vec<u32> = Vec::with_capacity(need);
    for (seen, v) in relabeled(a, b).enumerate() {
        // Even extending the current best by every remaining element falls short.
        if tails.len() + (n - seen) < need {
            return false;
        }
        let at = tails.partition_point(|&x| x < v);
        if at == tails.len() {
            tails.push(v);
            if tails.len() >= need {
                return true;
            }
        } else {
            tails[at] = v;
        }
    }
    tails.len() >= need
}

/// Removes the symbol at `from` and reinserts it so that it ends up at index
/// `to` of the result.
///
/// ```
/// use ulam_core::perm::{apply_move, Permutation};
/// let abc = Permutation::new(vec![0, 1, 2]).unwrap();
/// assert_eq!(apply_move(&abc, 0, 2).unwrap().seq(), &[1, 2, 0]);
/// assert_eq!(apply_move(&abc, 2, 0).unwrap().seq(), &[2, 0, 1]);
/// ```
pub fn apply_move(p: &Permutation, from: usize, to: usize) -> Result<Permutation> {
    let n = p.len();
    for pos in [from, to] {
        if pos >= n {
            return Err(Error::PositionOutOfRange { pos, len: n });
        }
    }
    Ok(moved(p, from, to))
}

pub(crate) fn moved(p: &Permutation, from: usize, to: usize) -> Permutation {
    let mut seq = p.seq.to_vec();
    let s = seq.remove(from);
    seq.insert(to, s);
    let mut inv = p.inv.to_vec();
    let (lo, hi) = (from.min(to), from.max(to));
    for (pos, &sym) in seq.iter().enumerate().take(hi + 1).skip(lo) {
        inv[sym as usize] = pos as u32;
    }
    Permutation {
        seq: seq.into_boxed_slice(),
        inv: inv.into_boxed_slice(),
    }
}

/// All distinct permutations one move away from `p` (excluding `p`).
pub(crate) fn neighbours(p: &Permutation) -> Vec<Permutation> {
    let n = p.len();
    let mut out = Vec::with_capacity(n.saturating_sub(1).pow(2));
    for from in 0..n {
        for to in 0..n {
            // Moving a symbol one step right equals moving its right
            // neighbour one step left; keep only the latter.
            if to == from || to == from + 1 {
                continue;
            }
            out.push(moved(p, from, to));
        }
    }
    out
}

pub fn permutation_graph(a: &Permutation, b: &Permutation) -> Result<PermutationGraph> {
    check_same_len(a, b)?;
    let n = a.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a.seq[i], a.seq[j]);
            if b.position(x) > b.position(y) {
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    Ok(PermutationGraph::from_edges(n, edges))
}
