use crate::error::{Error, Result};

use super::instance::{Clause, SatInstance};

/// Parses either the DIMACS-like format or the inline notation.
///
/// DIMACS-like: `c` comment lines, an optional `p cnf V C` header, then clauses
/// of three signed integers each terminated by `0`. Inline: `(x1 | x3 | -x7) & (...)`,
/// where `¬` or `~` may replace `-` and `∨`, `∧` may replace `|`, `&`.
pub fn parse_instance(text: &str) -> Result<SatInstance> {
    if text.trim_start().starts_with('(') {
        parse_inline(text)
    } else {
        parse_dimacs(text)
    }
}

pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut clauses = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    let mut last = (1, 1);
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let t = line.trim_start();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" || f[2..].iter().any(|x| x.parse::<u64>().is_err()) {
                return Err(Error::parse(line_no, 1, "expected `p cnf <vars> <clauses>`"));
            }
            continue;
        }
        let mut col = 1;
        for tok in line.split(|c: char| c.is_whitespace()) {
            if tok.is_empty() {
                col += 1;
                continue;
            }
            last = (line_no, col);
            let z: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, col, format!("expected an integer, found `{tok}`")))?;
            if z == 0 {
                if cur.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("clause has {} literals, expected 3", cur.len()),
                    ));
                }
                clauses.push([cur[0], cur[1], cur[2]]);
                cur.clear();
            } else {
                if cur.len() == 3 {
                    return Err(Error::parse(line_no, col, "clause has more than 3 literals"));
                }
                cur.push(z);
            }
            col += tok.chars().count() + 1;
        }
    }
    if !cur.is_empty() {
        return Err(Error::parse(last.0, last.1, "clause is missing its terminating 0"));
    }
    SatInstance::new(clauses)
}

pub fn parse_inline(text: &str) -> Result<SatInstance> {
    let chars: Vec<(usize, usize, char)> = text
        .lines()
        .enumerate()
        .flat_map(|(l, s)| s.chars().enumerate().map(move |(c, ch)| (l + 1, c + 1, ch)))
        .filter(|t| !t.2.is_whitespace())
        .collect();
    let end = chars.last().map(|t| (t.0, t.1 + 1)).unwrap_or((1, 1));
    let mut at = 0;
    let mut clauses: Vec<Clause> = Vec::new();
    let here = |at: usize| chars.get(at).map(|t| (t.0, t.1)).unwrap_or(end);
    let expect = |at: &mut usize, want: &[char], what: &str| -> Result<()> {
        match chars.get(*at) {
            Some(t) if want.contains(&t.2) => {
                *at += 1;
                Ok(())
            }
            _ => {
                let (l, c) = here(*at);
                Err(Error::parse(l, c, format!("expected {what}")))
            }
        }
    };
    loop {
        expect(&mut at, &['('], "`(`")?;
        let mut lits = Vec::with_capacity(3);
        for k in 0..3 {
            if k > 0 {
                expect(&mut at, &['|', '∨'], "`|`")?;
            }
            let neg = matches!(chars.get(at), Some(t) if matches!(t.2, '-' | '~' | '¬'));
            if neg {
                at += 1;
            }
            expect(&mut at, &['x'], "a variable `x<n>`")?;
            let (l, c) = here(at);
            let mut v: u64 = 0;
            let mut digits = 0;
            while let Some(t) = chars.get(at).filter(|t| t.2.is_ascii_digit()) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(t.2 as u64 - '0' as u64))
                    .ok_or_else(|| Error::parse(l, c, "variable index overflows"))?;
                digits += 1;
                at += 1;
            }
            if digits == 0 || v == 0 || v > i64::MAX as u64 {
                return Err(Error::parse(l, c, "expected a positive variable index"));
            }
            lits.push(if neg { -(v as i64) } else { v as i64 });
        }
        expect(&mut at, &[')'], "`)`")?;
        clauses.push([lits[0], lits[1], lits[2]]);
        if at == chars.len() {
            break;
        }
        expect(&mut at, &['&', '∧'], "`&`")?;
    }
    SatInstance::new(clauses)
}

/// DIMACS-like text for `eta`.
pub fn to_dimacs(eta: &SatInstance) -> String {
    let mut s = format!("p cnf {} {}\n", eta.max_variable(), eta.clauses().len());
    for c in eta.clauses() {
        s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats_agree() {
        let a = parse_instance("(x1 | x3 | -x7) & (-x4 | x7 | x11) & (x1 | x7 | -x9) & (-x3 | x4 | x9)").unwrap();
        let b = parse_instance("c running example\np cnf 11 4\n1 3 -7 0\n-4 7 11 0\n1 7 -9 0 -3 4 9 0\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_instance(&to_dimacs(&a)).unwrap(), a);
        assert_eq!(parse_instance(&a.to_inline()).unwrap(), a);
    }

    #[test]
    fn diagnostics() {
        match parse_instance("1 2 0\n") {
            Err(Error::Parse { line: 1, column: 5, .. }) => {}
            e => panic!("{e:?}"),
        }
        match parse_instance("(x1 | x2 x3)") {
            Err(Error::Parse { line: 1, .. }) => {}
            e => panic!("{e:?}"),
        }
        assert!(parse_instance("1 2 3").is_err());
        assert!(matches!(parse_instance("1 0 2 0"), Err(Error::Parse { .. })));
    }
}
