//! Red/blue colorings of the alphabet and the families of coloring pairs the
//! guide-set construction iterates over.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

/// One color per symbol id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    red: SmallVec<[u64; 2]>,
}

impl Coloring {
    pub fn all_blue(n: usize) -> Self {
        Self {
            n,
            red: SmallVec::from_elem(0, n.div_ceil(64)),
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(Symbol) -> Color) -> Self {
        let mut c = Self::all_blue(n);
        for s in 0..n as Symbol {
            c.set(s, f(s));
        }
        c
    }

    /// Colors the listed symbols red and everything else blue.
    pub fn with_red(n: usize, red: impl IntoIterator<Item = Symbol>) -> Self {
        let mut c = Self::all_blue(n);
        for s in red {
            c.set(s, Color::Red);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn is_red(&self, s: Symbol) -> bool {
        self.red[s as usize / 64] >> (s % 64) & 1 == 1
    }

    pub fn color(&self, s: Symbol) -> Color {
        if self.is_red(s) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn set(&mut self, s: Symbol, color: Color) {
        let (word, bit) = (s as usize / 64, s % 64);
        match color {
            Color::Red => self.red[word] |= 1 << bit,
            Color::Blue => self.red[word] &= !(1 << bit),
        }
    }

    pub fn red_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.n as Symbol).filter(|&s| self.is_red(s))
    }

    pub(crate) fn to_bools(&self) -> Vec<bool> {
        (0..self.n as Symbol).map(|s| self.is_red(s)).collect()
    }

    pub(crate) fn from_bools(red: &[bool]) -> Self {
        Self::with_red(
            red.len(),
            red.iter().enumerate().filter(|(_, &r)| r).map(|(s, _)| s as Symbol),
        )
    }
}

/// Coloring of the candidate permutation together with one of the guide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoringPair {
    pub cand: Coloring,
    pub guide: Coloring,
}

impl ColoringPair {
    pub fn new(cand: Coloring, guide: Coloring) -> Result<Self> {
        if cand.len() != guide.len() {
            return Err(Error::LengthMismatch(cand.len(), guide.len()));
        }
        Ok(Self { cand, guide })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyMode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringFamilyConfig {
    pub mode: FamilyMode,
    pub seed: u64,
    /// Per (coordinate set, pattern) miss probability is at most `2^-lambda`.
    pub failure_exponent: u32,
    /// Largest `2n` for which the full cube may be enumerated.
    pub exhaustive_limit: usize,
    /// Hard cap on the number of sampled pairs in randomized mode.
    pub sample_cap: u64,
}

impl Default for ColoringFamilyConfig {
    fn default() -> Self {
        Self {
            mode: FamilyMode::Exhaustive,
            seed: 0,
            failure_exponent: 20,
            exhaustive_limit: 22,
            sample_cap: 1 << 22,
        }
    }
}

impl ColoringFamilyConfig {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn randomized(seed: u64, failure_exponent: u32) -> Self {
        Self {
            mode: FamilyMode::Randomized,
            seed,
            failure_exponent,
            ..Self::default()
        }
    }

    /// Rejects exhaustive mode on alphabets whose cube exceeds the limit.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.mode == FamilyMode::Exhaustive && 2 * n > self.exhaustive_limit {
            return Err(Error::Config(format!(
                "exhaustive coloring family needs 2n <= {}, got 2n = {}",
                self.exhaustive_limit,
                2 * n
            )));
        }
        Ok(())
    }
}

/// Number of coordinates a consistent fitting pair has to get right.
pub fn coverage_size(d: usize) -> usize {
    12 * d * d + 4 * d
}

/// Union-bound sample count `2^b (b ln 2 + lambda ln 2 + b ln a)` for an
/// `(a, b)`-universal family with per-target miss probability `2^-lambda`.
pub fn randomized_sample_count(a: usize, b: usize, lambda: u32) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let b = b as f64;
    (2f64.powf(b) * (b * ln2 + lambda as f64 * ln2 + b * (a as f64).ln())).ceil()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Members {
    /// Every bitstring of length `2n`; member `i` is the binary expansion of `i`.
    Cube,
    /// Packed bitstrings, `words` u64s per member.
    Sampled { words: usize, bits: Vec<u64> },
}

/// A family of coloring pairs over bitstrings of length `2n`: the first `n`
/// bits color the candidate, the last `n` the guide, `1` meaning red.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFamily {
    n: usize,
    members: Members,
}

impl ColoringFamily {
    /// The full cube `{0,1}^{2n}`.
    pub fn cube(n: usize) -> Result<Self> {
        if 2 * n >= 63 {
            return Err(Error::Config(format!("cube over 2n = {} bits is too large", 2 * n)));
        }
        Ok(Self {
            n,
            members: Members::Cube,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Members::Cube => 1 << (2 * self.n),
            Members::Sampled { words, bits } => bits.len() / words,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether this is the full cube (coverage is then unconditional).
    pub fn is_exhaustive(&self) -> bool {
        matches!(self.members, Members::Cube)
    }

    #[inline]
    fn bit(&self, i: usize, coord: usize) -> bool {
        match &self.members {
            Members::Cube => (i as u64) >> coord & 1 == 1,
            Members::Sampled { words, bits } => bits[i * words + coord / 64] >> (coord % 64) & 1 == 1,
        }
    }

    /// Writes member `i` into two red-flag buffers of length `n`.
    #[inline]
    pub(crate) fn fill(&self, i: usize, cand: &mut [bool], guide: &mut [bool]) {
        for s in 0..self.n {
            cand[s] = self.bit(i, s);
            guide[s] = self.bit(i, self.n + s);
        }
    }

    pub fn get(&self, i: usize) -> ColoringPair {
        let mut cand = vec![false; self.n];
        let mut guide = vec![false; self.n];
        self.fill(i, &mut cand, &mut guide);
        ColoringPair {
            cand: Coloring::from_bools(&cand),
            guide: Coloring::from_bools(&guide),
        }
    }

    pub fn pairs(&self) -> Vec<ColoringPair> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Member `i` read as a bitstring of length `2n`.
    pub fn bitstring(&self, i: usize) -> Vec<bool> {
        (0..2 * self.n).map(|c| self.bit(i, c)).collect()
    }
}

/// Builds the family of coloring pairs for alphabet size `n` and radius `d`.
pub fn coloring_family(n: usize, d: usize, cfg: &ColoringFamilyConfig) -> Result<ColoringFamily> {
    if n == 0 || d == 0 {
        return Err(Error::Input("coloring family needs n >= 1 and d >= 1".into()));
    }
    family_for_coverage(n, coverage_size(d), cfg)
}

/// Same as [`coloring_family`] with an explicit coverage size `b`.
pub fn family_for_coverage(n: usize, b: usize, cfg: &ColoringFamilyConfig) -> Result<ColoringFamily> {
    cfg.validate(n)?;
    let a = 2 * n;
    match cfg.mode {
        FamilyMode::Exhaustive => ColoringFamily::cube(n),
        FamilyMode::Randomized => {
            let wanted = randomized_sample_count(a, b.min(a), cfg.failure_exponent);
            let cube_fits = a < 63 && (1u64 << a) as f64 <= wanted;
            // When b covers every coordinate only the full cube works.
            if (b >= a || cube_fits) && a <= cfg.exhaustive_limit.max(22) {
                return ColoringFamily::cube(n);
            }
            let count = (wanted.min(cfg.sample_cap as f64) as usize).max(1);
            let words = a.div_ceil(64);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut bits = Vec::with_capacity(count * words);
            for _ in 0..count {
                for w in 0..words {
                    let mut word: u64 = rng.gen();
                    let used = a - 64 * w;
                    if used < 64 {
                        word &= (1u64 << used) - 1;
                    }
                    bits.push(word);
                }
            }
            Ok(ColoringFamily {
                n,
                members: Members::Sampled { words, bits },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_sizes() {
        let f = coloring_family(2, 1, &ColoringFamilyConfig::exhaustive()).unwrap();
        assert_eq!(f.len(), 16);
        let distinct: std::collections::HashSet<_> = f.pairs().into_iter().collect();
        assert_eq!(distinct.len(), 16);
        assert_eq!(coloring_family(1, 3, &ColoringFamilyConfig::exhaustive()).unwrap().len(), 4);
    }

    #[test]
    fn bit_layout() {
        let f = ColoringFamily::cube(3).unwrap();
        // 0b100_001: candidate symbol 0 red, guide symbol 2 red.
        let pair = f.get(0b100_001);
        assert_eq!(pair.cand.red_symbols().collect::<Vec<_>>(), vec![0]);
        assert_eq!(pair.guide.red_symbols().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn exhaustive_limit_is_enforced() {
        let cfg = ColoringFamilyConfig::exhaustive();
        assert!(matches!(coloring_family(12, 1, &cfg), Err(Error::Config(_))));
        assert!(coloring_family(11, 1, &cfg).is_ok());
    }

    #[test]
    fn randomized_uses_the_cube_when_b_covers_everything() {
        // a = 12, b = 16.
        let f = coloring_family(6, 1, &ColoringFamilyConfig::randomized(3, 20)).unwrap();
        assert!(f.is_exhaustive());
        assert_eq!(f.len(), 1 << 12);
    }

    #[test]
    fn randomized_sampling_is_seeded() {
        let cfg = ColoringFamilyConfig::randomized(9, 10);
        let a = family_for_coverage(20, 2, &cfg).unwrap();
        let b = family_for_coverage(20, 2, &cfg).unwrap();
        assert!(!a.is_exhaustive());
        assert_eq!(a, b);
        assert_eq!(a.len() as f64, randomized_sample_count(40, 2, 10));
    }

    #[test]
    fn coloring_basics() {
        let mut c = Coloring::all_blue(70);
        c.set(65, Color::Red);
        assert!(c.is_red(65));
        assert_eq!(c.color(3), Color::Blue);
        assert_eq!(c.red_symbols().collect::<Vec<_>>(), vec![65]);
        assert!(ColoringPair::new(Coloring::all_blue(2), Coloring::all_blue(3)).is_err());
    }
}
