//! Closest string to 1-center through the pair scheme.

use crate::error::{Error, Result};
use crate::kmedian::pairscheme::{encode, PairSchemeString};
use crate::perm::{Instance, SymbolTable};

pub fn gen_center_from_closest_string(strings: &[PairSchemeString], d: usize) -> Result<Instance> {
    let len = strings.first().map_or(0, PairSchemeString::len);
    if let Some(s) = strings.iter().find(|s| s.len() != len) {
        return Err(Error::LengthMismatch(len, s.len()));
    }
    let perms = strings.iter().map(encode).collect();
    Instance::new(SymbolTable::numbered(2 * len), perms, 1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_kcenter, OracleLimits};

    fn solve(strings: &[&str], d: usize) -> bool {
        let ss: Vec<_> = strings.iter().map(|s| PairSchemeString::parse(s).unwrap()).collect();
        let inst = gen_center_from_closest_string(&ss, d).unwrap();
        let limits = OracleLimits {
            center_max_n: 8,
            ..OracleLimits::default()
        };
        brute_kcenter(&inst, &limits).unwrap().feasible
    }

    #[test]
    fn small_cases() {
        assert!(solve(&["00", "00"], 0));
        assert!(!solve(&["0000", "1111"], 1));
        assert!(solve(&["00", "11"], 1));
    }

    #[test]
    fn length_mismatch() {
        let ss = [PairSchemeString::parse("01").unwrap(), PairSchemeString::parse("0").unwrap()];
        assert!(gen_center_from_closest_string(&ss, 1).is_err());
    }
}
