//! Random instances with a known feasible solution.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracles::{verify_center_solution, verify_median_solution};
use crate::perm::{moved, Instance, Permutation, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlantedMode {
    /// Every permutation within `d` moves of its center.
    Center,
    /// At most `d` moves in total.
    Median,
}

/// Letters for alphabets up to 26, decimal tokens beyond.
pub fn default_table(n: usize) -> SymbolTable {
    if n <= 26 {
        SymbolTable::new((0..n).map(|i| ((b'A' + i as u8) as char).to_string())).expect("distinct letters")
    } else {
        SymbolTable::numbered(n)
    }
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut seq: Vec<u32> = (0..n as u32).collect();
    seq.shuffle(rng);
    Permutation::new(seq).expect("shuffle keeps a permutation")
}

pub fn random_move(p: &Permutation, rng: &mut impl Rng) -> Permutation {
    let n = p.len();
    moved(p, rng.gen_range(0..n), rng.gen_range(0..n))
}

/// `m` permutations around `k` random centers; every center is used.
pub fn gen_planted(
    n: usize,
    m: usize,
    k: usize,
    d: usize,
    seed: u64,
    mode: PlantedMode,
) -> Result<(Instance, Vec<Permutation>)> {
    if n == 0 || k == 0 || k > m {
        return Err(Error::Input(format!(
            "planted instances need n >= 1 and 1 <= k <= m, got n = {n}, k = {k}, m = {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Permutation> = (0..k).map(|_| random_permutation(n, &mut rng)).collect();
    let mut perms: Vec<Permutation> = (0..m)
        .map(|i| {
            let c = if i < k { i } else { rng.gen_range(0..k) };
            centers[c].clone()
        })
        .collect();
    match mode {
        PlantedMode::Center => {
            for p in &mut perms {
                for _ in 0..rng.gen_range(0..=d) {
                    *p = random_move(p, &mut rng);
                }
            }
        }
        PlantedMode::Median => {
            for _ in 0..d {
                let i = rng.gen_range(0..m);
                perms[i] = random_move(&perms[i], &mut rng);
            }
        }
    }
    let inst = Instance::new(default_table(n), perms, k, d)?;
    let ok = match mode {
        PlantedMode::Center => verify_center_solution(&inst, &centers)?.ok,
        PlantedMode::Median => verify_median_solution(&inst, &centers)?.ok,
    };
    debug_assert!(ok);
    Ok((inst, centers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_centers_verify() {
        for seed in 0..20 {
            let (inst, centers) = gen_planted(5, 3, 1, 2, seed, PlantedMode::Center).unwrap();
            assert!(verify_center_solution(&inst, &centers).unwrap().ok);
            let (inst, centers) = gen_planted(6, 5, 2, 2, seed, PlantedMode::Median).unwrap();
            assert!(verify_median_solution(&inst, &centers).unwrap().ok);
        }
    }

    #[test]
    fn zero_budget_copies_centers() {
        let (inst, centers) = gen_planted(4, 4, 2, 0, 1, PlantedMode::Center).unwrap();
        assert!(inst.perms.iter().all(|p| centers.contains(p)));
    }

    #[test]
    fn deterministic() {
        let a = gen_planted(7, 4, 2, 2, 11, PlantedMode::Center).unwrap();
        let b = gen_planted(7, 4, 2, 2, 11, PlantedMode::Center).unwrap();
        assert_eq!(a, b);
        assert!(gen_planted(3, 1, 2, 1, 0, PlantedMode::Center).is_err());
    }
}
