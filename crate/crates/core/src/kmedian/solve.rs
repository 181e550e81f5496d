//! k-median through the kernel: reduce, search the kernel, lift back.

use crate::error::Result;
use crate::oracles::verify_median_solution;
use crate::perm::Instance;

use super::kernel::{kernelize, lift_medians, KernelReport};
use super::xp::{xp_solve_with, MedianSolution, MedianVerdict, XpConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMedianOutcome {
    pub verdict: MedianVerdict,
    pub kernel: KernelReport,
    pub nodes_expanded: u64,
    /// Set when lifted medians failed to verify and the original instance
    /// was searched directly.
    pub lift_fallback: bool,
    pub warning: Option<String>,
}

pub fn solve_kmedian(inst: &Instance) -> Result<KMedianOutcome> {
    solve_kmedian_with(inst, &XpConfig::default())
}

pub fn solve_kmedian_with(inst: &Instance, cfg: &XpConfig) -> Result<KMedianOutcome> {
    let (kernel, report) = kernelize(inst)?;
    let reduced = xp_solve_with(&kernel, cfg);
    let mut out = KMedianOutcome {
        verdict: MedianVerdict::No,
        kernel: report,
        nodes_expanded: reduced.nodes_expanded,
        lift_fallback: false,
        warning: reduced.warning,
    };
    let MedianVerdict::Yes(sol) = reduced.verdict else {
        return Ok(out);
    };
    let medians = lift_medians(&kernel, &out.kernel, &sol.medians)?;
    let check = verify_median_solution(inst, &medians)?;
    if check.ok {
        out.verdict = MedianVerdict::Yes(MedianSolution {
            medians,
            assignment: check.assignment,
            cost: check.value,
        });
        return Ok(out);
    }
    let direct = xp_solve_with(inst, cfg);
    out.lift_fallback = true;
    out.nodes_expanded += direct.nodes_expanded;
    out.verdict = direct.verdict;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmedian::xp::xp_solve;
    use crate::perm::SymbolTable;

    fn inst(rows: &[&str], k: usize, d: usize) -> Instance {
        let t = SymbolTable::numbered(rows[0].split_whitespace().count());
        let perms = rows.iter().map(|r| t.parse_permutation(r).unwrap()).collect();
        Instance::new(t, perms, k, d).unwrap()
    }

    #[test]
    fn copies() {
        let out = solve_kmedian(&inst(&["3 1 2"; 3], 1, 0)).unwrap();
        let MedianVerdict::Yes(sol) = out.verdict else { panic!() };
        assert_eq!(sol.medians, vec![inst(&["3 1 2"], 1, 0).perms[0].clone()]);
    }

    #[test]
    fn fixed_no_from_too_many_distinct() {
        let out = solve_kmedian(&inst(&["1 2 3", "2 1 3", "1 3 2", "3 2 1"], 1, 1)).unwrap();
        assert!(out.kernel.trivial_no);
        assert_eq!(out.verdict, MedianVerdict::No);
    }

    #[test]
    fn contracted_instance_lifts() {
        let i = inst(
            &["1 2 3 4 5 6 7 8", "2 1 3 4 5 6 7 8", "8 7 3 4 5 6 2 1", "7 8 3 4 5 6 2 1"],
            2,
            2,
        );
        let out = solve_kmedian(&i).unwrap();
        assert!(out.kernel.relabelled());
        assert!(!out.lift_fallback);
        assert_eq!(out.verdict.cost(), xp_solve(&i).verdict.cost());
        assert_eq!(out.verdict.cost(), Some(2));
    }
}
