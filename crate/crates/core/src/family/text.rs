//! Plain-text family files.
//!
//! ```text
//! # comment
//! n=4 mod=2
//! 0000
//! 1100
//! ```
//!
//! The header carries the ground-set size and the modulus the family is meant
//! to be read over. Each further line is one member as an `n`-character 0/1
//! string (`-` for the empty string when `n = 0`). Lines starting with `#`
//! and blank lines are ignored. Output is canonical: members sorted
//! lexicographically, no duplicates.

use crate::error::{Error, Result};
use crate::linalg::ModVector;

use super::SetFamily;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFile {
    pub family: SetFamily,
    pub modulus: u32,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a `n=<int> mod=<int>` header line.
pub fn parse_header(line_no: usize, line: &str) -> Result<(usize, u32)> {
    let mut n = None;
    let mut modulus = None;
    for token in line.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            parse_err(
                line_no,
                format!("expected key=value in header, found `{token}`"),
            )
        })?;
        let parsed: u64 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{value}` is not a non-negative integer")))?;
        match key {
            "n" => n = Some(parsed as usize),
            "mod" => {
                let m = crate::arith::check_modulus(parsed)
                    .map_err(|e| parse_err(line_no, e.to_string()))?;
                modulus = Some(m);
            }
            other => return Err(parse_err(line_no, format!("unknown header key `{other}`"))),
        }
    }
    match (n, modulus) {
        (Some(n), Some(m)) => Ok((n, m)),
        _ => Err(parse_err(line_no, "header must be `n=<int> mod=<int>`")),
    }
}

pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n=<int> mod=<int>` header"))?;
    let (n, modulus) = parse_header(line_no, header)?;
    let mut members = Vec::new();
    for (line_no, line) in lines {
        let body = if n == 0 && line == "-" { "" } else { line };
        if body.chars().count() != n {
            return Err(parse_err(
                line_no,
                format!(
                    "member has {} characters, expected {n}",
                    body.chars().count()
                ),
            ));
        }
        let mut support = Vec::new();
        for (i, ch) in body.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => support.push(i),
                other => {
                    return Err(parse_err(
                        line_no,
                        format!("unexpected character `{other}` in member"),
                    ))
                }
            }
        }
        members.push(ModVector::indicator(2, n, support)?);
    }
    Ok(FamilyFile {
        family: SetFamily::new(n, members)?,
        modulus,
    })
}

pub fn format_family(family: &SetFamily, modulus: u32) -> String {
    let mut out = format!("n={} mod={}\n", family.ground_size(), modulus);
    for m in family.members() {
        if m.is_empty() {
            out.push('-');
        } else {
            out.push_str(&m.to_digit_string());
        }
        out.push('\n');
    }
    out
}

/// Reads a file of general residue vectors: the same header, then one vector
/// per line, either as a digit string (moduli up to 10) or as
/// whitespace-separated residues.
pub fn parse_vectors(text: &str) -> Result<(usize, u32, Vec<ModVector>)> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `n=<int> mod=<int>` header"))?;
    let (n, modulus) = parse_header(line_no, header)?;
    let mut out = Vec::new();
    for (line_no, line) in lines {
        let entries: Vec<u64> = if line.contains(char::is_whitespace) {
            line.split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| parse_err(line_no, format!("`{t}` is not a residue")))
                })
                .collect::<Result<_>>()?
        } else {
            line.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| parse_err(line_no, format!("unexpected character `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        if entries.len() != n {
            return Err(parse_err(
                line_no,
                format!("vector has {} entries, expected {n}", entries.len()),
            ));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= modulus as u64) {
            return Err(parse_err(
                line_no,
                format!("residue {bad} is not below {modulus}"),
            ));
        }
        let residues: Vec<u32> = entries.into_iter().map(|e| e as u32).collect();
        out.push(ModVector::from_residues(modulus, &residues)?);
    }
    Ok((n, modulus, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_canonical() {
        let text = "# a comment\nn=4 mod=2\n1100\n0000\n\n# more\n0011\n1100\n";
        let f = parse_family(text).unwrap();
        assert_eq!(f.modulus, 2);
        assert_eq!(f.family.len(), 3);
        assert_eq!(
            format_family(&f.family, f.modulus),
            "n=4 mod=2\n0000\n0011\n1100\n"
        );
    }

    #[test]
    fn parse_errors_report_lines() {
        let err = parse_family("n=3 mod=2\n010\n01\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                message: "member has 2 characters, expected 3".into()
            }
        );
        assert!(matches!(
            parse_family("n=3 mod=2\n012\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_family("n=3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_family(""),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_family("n=3 mod=1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn zero_ground_set() {
        let f = SetFamily::empty_set_only(0);
        let text = format_family(&f, 3);
        assert_eq!(text, "n=0 mod=3\n-\n");
        assert_eq!(parse_family(&text).unwrap().family, f);
    }

    #[test]
    fn vectors_file() {
        let (n, m, vs) = parse_vectors("n=3 mod=3\n120\n2 2 1\n").unwrap();
        assert_eq!((n, m, vs.len()), (3, 3, 2));
        assert_eq!(vs[1].to_residues(), vec![2, 2, 1]);
        assert!(parse_vectors("n=2 mod=3\n13\n").is_err());
    }
}
