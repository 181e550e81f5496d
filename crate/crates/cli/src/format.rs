//! Instance and solution files.
//!
//! An instance file holds a `u <n> <m> <k> <d>` header, a line of `n` symbol
//! tokens and `m` permutation lines. A solution file is a list of permutation
//! lines. Lines starting with `#` and blank lines are ignored everywhere.

use std::fmt::Write as _;
use std::path::Path;

use ulam_core::{Instance, Permutation, SymbolTable};

use crate::error::{CliError, Result};

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_instance(text: &str, origin: &str) -> Result<Instance> {
    let err = |line: usize, message: String| CliError::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty instance file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "u" {
        return Err(err(hline, "expected header `u <n> <m> <k> <d>`".into()));
    }
    let nums: Vec<usize> = fields[1..]
        .iter()
        .map(|f| f.parse().map_err(|_| err(hline, format!("{f:?} is not a count"))))
        .collect::<Result<_>>()?;
    let (n, m, k, d) = (nums[0], nums[1], nums[2], nums[3]);
    let (sline, symbols) = lines.next().ok_or_else(|| err(hline, "missing symbol line".into()))?;
    let table = SymbolTable::new(symbols.split_whitespace()).map_err(|e| err(sline, e.to_string()))?;
    if table.len() != n {
        return Err(err(sline, format!("header announces {n} symbols, found {}", table.len())));
    }
    let mut perms = Vec::with_capacity(m);
    for (no, line) in lines {
        perms.push(table.parse_permutation(line).map_err(|e| err(no, e.to_string()))?);
    }
    if perms.len() != m {
        return Err(err(0, format!("header announces {m} permutations, found {}", perms.len())));
    }
    Ok(Instance::new(table, perms, k, d)?)
}

pub fn emit_instance(inst: &Instance) -> String {
    let mut out = format!("u {} {} {} {}\n", inst.n(), inst.m(), inst.k, inst.d);
    out.push_str(&inst.table.names().join(" "));
    out.push('\n');
    for p in &inst.perms {
        writeln!(out, "{}", inst.table.render(p)).unwrap();
    }
    out
}

pub fn parse_solution(text: &str, table: &SymbolTable, origin: &str) -> Result<Vec<Permutation>> {
    content_lines(text)
        .map(|(no, line)| {
            table.parse_permutation(line).map_err(|e| CliError::Parse {
                path: origin.to_string(),
                line: no,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Solution file with leading comment lines.
pub fn emit_solution(table: &SymbolTable, perms: &[Permutation], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    for p in perms {
        writeln!(out, "{}", table.render(p)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# two permutations\nu 3 2 1 1\nA B C\n\nA B C\n# inline note\nB A C\n";

    #[test]
    fn round_trip() {
        let inst = parse_instance(SAMPLE, "sample").unwrap();
        assert_eq!((inst.n(), inst.m(), inst.k, inst.d), (3, 2, 1, 1));
        let text = emit_instance(&inst);
        assert_eq!(parse_instance(&text, "emitted").unwrap(), inst);
        assert_eq!(text, "u 3 2 1 1\nA B C\nA B C\nB A C\n");
    }

    #[test]
    fn header_and_count_errors() {
        assert!(parse_instance("u 3 2 1\nA B C\n", "x").is_err());
        assert!(parse_instance("u 3 1 1 0\nA B\nA B\n", "x").is_err());
        assert!(parse_instance("u 3 2 1 0\nA B C\nA B C\n", "x").is_err());
        let err = parse_instance("u 3 1 1 0\nA B C\nA B D\n", "f.inst").unwrap_err();
        assert!(err.to_string().starts_with("f.inst, line 3"), "{err}");
    }

    #[test]
    fn solutions() {
        let inst = parse_instance(SAMPLE, "sample").unwrap();
        let sol = parse_solution("# c\nC B A\n", &inst.table, "s").unwrap();
        let text = emit_solution(&inst.table, &sol, &["c".into()]);
        assert_eq!(text, "# c\nC B A\n");
        assert!(parse_solution("A B\n", &inst.table, "s").is_err());
    }
}
