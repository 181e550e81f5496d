//! Binary strings as permutations: bit `i` becomes the adjacent pair
//! `(2i, 2i+1)` in order for `0` and swapped for `1`.

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSchemeString {
    bits: Vec<bool>,
}

impl PairSchemeString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a string over `0`/`1`.
    pub fn parse(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Input(format!("bitstring contains {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count())
    }
}

impl std::fmt::Display for PairSchemeString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.bits
            .iter()
            .try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

/// Permutation over `2 * s.len()` ids that respects the pair scheme.
///
/// ```
/// use ulam_core::kmedian::pairscheme::{encode, PairSchemeString};
/// let s = PairSchemeString::parse("00101").unwrap();
/// assert_eq!(encode(&s).seq(), &[0, 1, 2, 3, 5, 4, 6, 7, 9, 8]);
/// ```
pub fn encode(s: &PairSchemeString) -> Permutation {
    let seq = s
        .bits
        .iter()
        .enumerate()
        .flat_map(|(i, &bit)| {
            let (a, b) = (2 * i as u32, 2 * i as u32 + 1);
            if bit {
                [b, a]
            } else {
                [a, b]
            }
        })
        .collect();
    Permutation::new(seq).expect("pair scheme yields a permutation")
}

/// Inverse of [`encode`]; `None` when `p` does not respect the pair scheme.
pub fn decode(p: &Permutation) -> Result<Option<PairSchemeString>> {
    if p.len() % 2 == 1 {
        return Err(Error::Input(format!("pair scheme needs an even length, got {}", p.len())));
    }
    let mut bits = Vec::with_capacity(p.len() / 2);
    for (i, pair) in p.seq().chunks(2).enumerate() {
        let (a, b) = (2 * i as u32, 2 * i as u32 + 1);
        match pair {
            [x, y] if (*x, *y) == (a, b) => bits.push(false),
            [x, y] if (*x, *y) == (b, a) => bits.push(true),
            _ => return Ok(None),
        }
    }
    Ok(Some(PairSchemeString::new(bits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::dist;

    #[test]
    fn round_trip_and_distance() {
        let all: Vec<_> = (0u32..16)
            .map(|m| PairSchemeString::new((0..4).map(|i| m >> i & 1 == 1).collect()))
            .collect();
        for s in &all {
            assert_eq!(decode(&encode(s)).unwrap().as_ref(), Some(s));
            for t in &all {
                assert_eq!(dist(&encode(s), &encode(t)), s.hamming(t).unwrap());
            }
        }
    }

    #[test]
    fn rejects() {
        assert!(decode(&Permutation::identity(3)).is_err());
        let p = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(decode(&p).unwrap(), None);
        assert!(PairSchemeString::parse("012").is_err());
        assert_eq!(PairSchemeString::parse("0110").unwrap().to_string(), "0110");
    }
}
