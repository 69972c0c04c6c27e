//! Text formats for table algebras.
//!
//! Three line-oriented formats are understood, each identified by its first
//! non-comment line:
//!
//! * `tba 1`: native structure constants (`dim`, `degrees`, `involution`,
//!   sparse `lambda a b c p/q` lines).
//! * `scheme`: an association scheme as an `n x n` relation matrix with
//!   color 0 exactly on the diagonal; its adjacency algebra is loaded.
//! * `group`: a Cayley table with identity 0; its group algebra is loaded.
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{rational, validate, Rational, RawAlgebra, TableAlgebra, ValidateOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Native,
    Scheme,
    Group,
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn detect_format(text: &str) -> Result<Format> {
    match content_lines(text).next() {
        Some((_, "tba 1")) => Ok(Format::Native),
        Some((_, "scheme")) => Ok(Format::Scheme),
        Some((_, "group")) => Ok(Format::Group),
        Some((n, other)) => Err(Error::parse(
            n,
            format!("unknown header {other:?}; expected `tba 1`, `scheme` or `group`"),
        )),
        None => Err(Error::parse(1, "empty file")),
    }
}

/// Load any of the three formats, dispatching on the header line.
pub fn load(path: impl AsRef<Path>, opts: ValidateOptions) -> Result<TableAlgebra> {
    let text = std::fs::read_to_string(path)?;
    load_str(&text, opts)
}

pub fn load_str(text: &str, opts: ValidateOptions) -> Result<TableAlgebra> {
    match detect_format(text)? {
        Format::Native => parse_native_str(text, opts),
        Format::Scheme => parse_scheme_str(text, opts),
        Format::Group => parse_group_str(text, opts),
    }
}

pub fn parse_native(path: impl AsRef<Path>) -> Result<TableAlgebra> {
    parse_native_str(&std::fs::read_to_string(path)?, ValidateOptions::default())
}

pub fn parse_scheme(path: impl AsRef<Path>) -> Result<TableAlgebra> {
    parse_scheme_str(&std::fs::read_to_string(path)?, ValidateOptions::default())
}

pub fn parse_group(path: impl AsRef<Path>) -> Result<TableAlgebra> {
    parse_group_str(&std::fs::read_to_string(path)?, ValidateOptions::default())
}

pub fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    let bad = || Error::parse(line, format!("invalid rational {token:?}"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if !den.is_positive() {
        return Err(Error::parse(
            line,
            format!("denominator must be positive in {token:?}"),
        ));
    }
    Ok(Rational::new(num, den))
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid index {token:?}")))
}

pub fn parse_native_str(text: &str, opts: ValidateOptions) -> Result<TableAlgebra> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "tba 1")) => {}
        Some((n, _)) => return Err(Error::parse(n, "expected header `tba 1`")),
        None => return Err(Error::parse(1, "empty file")),
    }
    let mut dim: Option<usize> = None;
    let mut degrees: Option<Vec<Rational>> = None;
    let mut star: Option<Vec<usize>> = None;
    let mut entries = Vec::new();
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        let mut tokens = line.split_whitespace();
        let key = tokens.next().unwrap_or_default();
        let rest: Vec<&str> = tokens.collect();
        if key != "dim" && dim.is_none() {
            return Err(Error::parse(n, "`dim` must precede all other records"));
        }
        match key {
            "dim" => {
                if dim.is_some() {
                    return Err(Error::parse(n, "duplicate `dim` record"));
                }
                let [d] = rest[..] else {
                    return Err(Error::parse(n, "`dim` takes one value"));
                };
                let d = parse_index(d, n)?;
                if d == 0 {
                    return Err(Error::parse(n, "dimension must be positive"));
                }
                dim = Some(d);
            }
            "degrees" => {
                if degrees.is_some() {
                    return Err(Error::parse(n, "duplicate `degrees` record"));
                }
                let v = rest
                    .iter()
                    .map(|t| parse_rational(t, n))
                    .collect::<Result<Vec<_>>>()?;
                if Some(v.len()) != dim {
                    return Err(Error::parse(
                        n,
                        format!("expected {} degrees", dim.unwrap_or(0)),
                    ));
                }
                degrees = Some(v);
            }
            "involution" => {
                if star.is_some() {
                    return Err(Error::parse(n, "duplicate `involution` record"));
                }
                let v = rest
                    .iter()
                    .map(|t| parse_index(t, n))
                    .collect::<Result<Vec<_>>>()?;
                if Some(v.len()) != dim {
                    return Err(Error::parse(
                        n,
                        format!("expected {} indices", dim.unwrap_or(0)),
                    ));
                }
                star = Some(v);
            }
            "lambda" => {
                let [a, b, c, x] = rest[..] else {
                    return Err(Error::parse(n, "`lambda` takes a b c value"));
                };
                let d = dim.unwrap_or(0);
                let (a, b, c) = (parse_index(a, n)?, parse_index(b, n)?, parse_index(c, n)?);
                if a >= d || b >= d || c >= d {
                    return Err(Error::parse(
                        n,
                        format!("index out of range for dimension {d}"),
                    ));
                }
                entries.push((a, b, c, parse_rational(x, n)?));
            }
            other => return Err(Error::parse(n, format!("unknown record {other:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(last_line, "missing `dim` record"))?;
    let degrees = degrees.ok_or_else(|| Error::parse(last_line, "missing `degrees` record"))?;
    let star = star.ok_or_else(|| Error::parse(last_line, "missing `involution` record"))?;
    validate(
        RawAlgebra {
            dim,
            entries,
            star,
            degrees,
        },
        opts,
    )
}

/// Serialize to the native format. Structure constants are written in
/// increasing `(a, b, c)` order, so equal algebras produce identical text.
pub fn write_native(alg: &TableAlgebra) -> String {
    let mut out = String::from("tba 1\n");
    let _ = writeln!(out, "dim {}", alg.dim());
    let degrees: Vec<String> = alg.degrees().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "degrees {}", degrees.join(" "));
    let star: Vec<String> = alg.involution().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "involution {}", star.join(" "));
    for (a, b, c, x) in alg.entries() {
        let _ = writeln!(out, "lambda {a} {b} {c} {x}");
    }
    out
}

fn parse_square_matrix(text: &str, header: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, h)) if h == header => {}
        Some((n, _)) => return Err(Error::parse(n, format!("expected header `{header}`"))),
        None => return Err(Error::parse(1, "empty file")),
    }
    let (n_line, n) = match lines.next() {
        Some((l, t)) => (l, parse_index(t, l)?),
        None => return Err(Error::parse(1, "missing size line")),
    };
    if n == 0 {
        return Err(Error::parse(n_line, "size must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = n_line;
    for (l, line) in lines {
        last = l;
        if rows.len() == n {
            return Err(Error::parse(l, format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_index(t, l))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(
                l,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(
            last,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    Ok(rows)
}

pub fn parse_scheme_str(text: &str, opts: ValidateOptions) -> Result<TableAlgebra> {
    let colors = parse_square_matrix(text, "scheme")?;
    scheme_algebra(&colors, opts)
}

pub fn parse_group_str(text: &str, opts: ValidateOptions) -> Result<TableAlgebra> {
    let table = parse_square_matrix(text, "group")?;
    group_algebra(&table, opts)
}

/// Adjacency algebra of an association scheme given by its relation matrix.
///
/// `lambda(i, j, k)` is the intersection number `p^k_ij`, which must not
/// depend on the chosen pair of color `k`.
pub fn scheme_algebra(colors: &[Vec<usize>], opts: ValidateOptions) -> Result<TableAlgebra> {
    let n = colors.len();
    for (x, row) in colors.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            if (x == y) != (c == 0) {
                return Err(Error::NotASchemeRelation(format!(
                    "color 0 must appear exactly on the diagonal; ({x},{y}) has color {c}"
                )));
            }
        }
    }
    let d = colors.iter().flatten().copied().max().unwrap_or(0) + 1;
    let mut used = vec![false; d];
    colors.iter().flatten().for_each(|&c| used[c] = true);
    if let Some(c) = used.iter().position(|u| !u) {
        return Err(Error::NotASchemeRelation(format!(
            "color {c} is never used"
        )));
    }

    let mut star = vec![usize::MAX; d];
    for x in 0..n {
        for y in 0..n {
            let (i, j) = (colors[x][y], colors[y][x]);
            if star[i] == usize::MAX {
                star[i] = j;
            } else if star[i] != j {
                return Err(Error::NotASchemeRelation(format!(
                    "the transpose of relation {i} is not a single relation"
                )));
            }
        }
    }

    // p[k] is set from the first pair of color k and checked against every other.
    let mut p: Vec<Option<Vec<usize>>> = vec![None; d];
    let mut counts = vec![0usize; d * d];
    for x in 0..n {
        for z in 0..n {
            let k = colors[x][z];
            counts.iter_mut().for_each(|c| *c = 0);
            for y in 0..n {
                counts[colors[x][y] * d + colors[y][z]] += 1;
            }
            match &p[k] {
                None => p[k] = Some(counts.clone()),
                Some(prev) => {
                    if let Some(idx) = (0..d * d).find(|&t| prev[t] != counts[t]) {
                        return Err(Error::NotAScheme {
                            k,
                            i: idx / d,
                            j: idx % d,
                            first: prev[idx],
                            second: counts[idx],
                        });
                    }
                }
            }
        }
    }
    let p: Vec<Vec<usize>> = p.into_iter().map(|v| v.unwrap_or_default()).collect();

    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, pk) in p.iter().enumerate() {
                let v = pk[i * d + j];
                if v != 0 {
                    entries.push((i, j, k, rational(v as i64)));
                }
            }
        }
    }
    let degrees = (0..d)
        .map(|i| rational(colors[0].iter().filter(|&&c| c == i).count() as i64))
        .collect();
    validate(
        RawAlgebra {
            dim: d,
            entries,
            star,
            degrees,
        },
        opts,
    )
}

/// Group algebra of a group given by its Cayley table (`table[g][h] = g h`, identity 0).
pub fn group_algebra(table: &[Vec<usize>], opts: ValidateOptions) -> Result<TableAlgebra> {
    let n = table.len();
    if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
        return Err(Error::NotAGroup(format!("entry {bad} out of range")));
    }
    for g in 0..n {
        if table[0][g] != g || table[g][0] != g {
            return Err(Error::NotAGroup(format!("0 is not an identity for {g}")));
        }
    }
    let mut star = vec![usize::MAX; n];
    for g in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for h in 0..n {
            seen_row[table[g][h]] = true;
            seen_col[table[h][g]] = true;
        }
        if seen_row.contains(&false) || seen_col.contains(&false) {
            return Err(Error::NotAGroup(format!(
                "row or column {g} is not a permutation"
            )));
        }
        star[g] = (0..n).find(|&h| table[g][h] == 0).unwrap_or(0);
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
    }
    let entries = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| (g, h, table[g][h], Rational::one()))
        .collect();
    validate(
        RawAlgebra {
            dim: n,
            entries,
            star,
            degrees: vec![Rational::one(); n],
        },
        opts,
    )
}

/// Render a Cayley table in the group format.
pub fn write_group(table: &[Vec<usize>]) -> String {
    let mut out = format!("group\n{}\n", table.len());
    for row in table {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", r.join(" "));
    }
    out
}

/// Render a relation matrix in the scheme format.
pub fn write_scheme(colors: &[Vec<usize>]) -> String {
    let mut out = format!("scheme\n{}\n", colors.len());
    for row in colors {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", r.join(" "));
    }
    out
}
