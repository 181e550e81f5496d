//! JSON result document printed by `solve --json`.

use serde::Serialize;

use ulam_core::{Instance, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Center,
    Median,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    Yes,
    No,
    NoProbabilistic,
}

impl VerdictTag {
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictTag::Yes => 0,
            VerdictTag::No | VerdictTag::NoProbabilistic => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VerdictTag::Yes => "yes",
            VerdictTag::No => "no",
            VerdictTag::NoProbabilistic => "no (probabilistic)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessDoc {
    Center {
        centers: Vec<Vec<String>>,
        assignment: Vec<usize>,
        radius: usize,
    },
    Median {
        medians: Vec<Vec<String>>,
        assignment: Vec<usize>,
        cost: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub family_size: usize,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub problem: Problem,
    pub verdict: VerdictTag,
    pub parameters: Parameters,
    pub witness: Option<WitnessDoc>,
    pub stats: Stats,
    /// `exhaustive`, `random`, `oracle` or `kernel+xp`.
    pub mode: String,
    pub seed: Option<u64>,
    pub lambda: Option<u32>,
    pub threads: usize,
}

pub fn tokens(inst: &Instance, perms: &[Permutation]) -> Vec<Vec<String>> {
    perms
        .iter()
        .map(|p| p.seq().iter().map(|&s| inst.table.name(s).to_string()).collect())
        .collect()
}

pub fn parameters(inst: &Instance) -> Parameters {
    Parameters {
        n: inst.n(),
        m: inst.m(),
        k: inst.k,
        d: inst.d,
    }
}

impl ResultDocument {
    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = match (self.verdict, self.lambda) {
            (VerdictTag::NoProbabilistic, Some(l)) => {
                format!("no (probabilistic, failure <= 2^-{l} per guide-set call)\n")
            }
            (v, _) => format!("{}\n", v.label()),
        };
        let lines = |perms: &[Vec<String>]| perms.iter().map(|p| p.join(" ")).collect::<Vec<_>>().join("\n");
        match &self.witness {
            Some(WitnessDoc::Center {
                centers,
                assignment,
                radius,
            }) => {
                out += &format!("radius {radius}\ncenters:\n{}\n", lines(centers));
                out += &format!("assignment {assignment:?}\n");
            }
            Some(WitnessDoc::Median {
                medians,
                assignment,
                cost,
            }) => {
                out += &format!("cost {cost}\nmedians:\n{}\n", lines(medians));
                out += &format!("assignment {assignment:?}\n");
            }
            None => {}
        }
        if let Some(w) = &self.stats.warning {
            out += &format!("warning: {w}\n");
        }
        out
    }
}
