//! Line-oriented text format for matrices.
//!
//! ```text
//! field 2 3 [1 1 0 1]
//! size 3
//! [0 1] [1]   []
//! []    [1]   [1 1]
//! [1]   []    [0 0 1]
//! ```
//!
//! A polynomial is written as its ascending coefficient codes in brackets;
//! `[]` is zero. The modulus after `field p m` is optional. Blank lines and
//! text after `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matrix::SqMatrix;
use crate::poly::Poly;

#[derive(Debug)]
enum Tok<'a> {
    Word(&'a str),
    /// Coefficient tokens with their columns.
    List(Vec<(&'a str, usize)>),
}

/// Tokens of one line with 1-based columns.
fn tokenize(line: &str, lineno: usize) -> Result<Vec<(Tok<'_>, usize)>> {
    let line = line.split('#').next().unwrap_or("");
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch == b'[' {
            let start = i;
            let mut items = Vec::new();
            i += 1;
            loop {
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(Error::parse(lineno, start + 1, "unclosed '['"));
                }
                if bytes[i] == b']' {
                    i += 1;
                    break;
                }
                if bytes[i] == b'[' {
                    return Err(Error::parse(lineno, i + 1, "nested '['"));
                }
                let s = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b']' && bytes[i] != b'[' {
                    i += 1;
                }
                items.push((&line[s..i], s + 1));
            }
            out.push((Tok::List(items), start + 1));
        } else if ch == b']' {
            return Err(Error::parse(lineno, i + 1, "unexpected ']'"));
        } else {
            let s = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'[' && bytes[i] != b']' {
                i += 1;
            }
            out.push((Tok::Word(&line[s..i]), s + 1));
        }
    }
    Ok(out)
}

fn parse_int<T: std::str::FromStr>(s: &str, line: usize, col: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, col, format!("expected {what}, found '{s}'")))
}

fn codes(items: &[(&str, usize)], line: usize) -> Result<Vec<u32>> {
    items
        .iter()
        .map(|&(s, col)| parse_int(s, line, col, "a coefficient code"))
        .collect()
}

fn list_to_poly(field: &FieldSpec, items: &[(&str, usize)], line: usize) -> Result<Poly> {
    let q = field.q();
    for &(s, col) in items {
        let c: u32 = parse_int(s, line, col, "a coefficient code")?;
        if c >= q {
            return Err(Error::parse(line, col, format!("coefficient code {c} is not below q = {q}")));
        }
    }
    Poly::from_codes(field, &codes(items, line)?)
}

/// Parses a single polynomial literal such as `[1 0 1]`.
pub fn parse_poly(field: &FieldSpec, text: &str) -> Result<Poly> {
    let toks = tokenize(text, 1)?;
    match toks.as_slice() {
        [(Tok::List(items), _)] => list_to_poly(field, items, 1),
        [] => Err(Error::parse(1, 1, "expected a polynomial literal like [1 0 1]")),
        [(_, col), ..] => Err(Error::parse(1, *col, "expected a single polynomial literal like [1 0 1]")),
    }
}

pub fn format_poly(p: &Poly) -> String {
    let codes: Vec<String> = p.codes().iter().map(u32::to_string).collect();
    format!("[{}]", codes.join(" "))
}

fn field_header(toks: &[(Tok<'_>, usize)], line: usize) -> Result<FieldSpec> {
    let words: Vec<(&str, usize)> = toks
        .iter()
        .take(3)
        .map(|(t, col)| match t {
            Tok::Word(w) => Ok((*w, *col)),
            Tok::List(_) => Err(Error::parse(line, *col, "expected 'field p m [modulus]'")),
        })
        .collect::<Result<_>>()?;
    if words.len() < 3 || words[0].0 != "field" {
        let col = words.first().map_or(1, |w| w.1);
        return Err(Error::parse(line, col, "expected 'field p m [modulus]'"));
    }
    let p: u32 = parse_int(words[1].0, line, words[1].1, "the characteristic p")?;
    let m: u32 = parse_int(words[2].0, line, words[2].1, "the extension degree m")?;
    let modulus = match toks.get(3) {
        None => None,
        Some((Tok::List(items), _)) => Some(codes(items, line)?),
        Some((Tok::Word(_), col)) => return Err(Error::parse(line, *col, "expected a modulus literal")),
    };
    if let Some((_, col)) = toks.get(4) {
        return Err(Error::parse(line, *col, "unexpected token after the modulus"));
    }
    FieldSpec::with_modulus(p, m, modulus).map_err(|e| Error::parse(line, words[0].1, e.to_string()))
}

fn size_header(toks: &[(Tok<'_>, usize)], line: usize) -> Result<usize> {
    match toks {
        [(Tok::Word("size"), _), (Tok::Word(n), col)] => {
            let n: usize = parse_int(n, line, *col, "the matrix size")?;
            if n == 0 {
                return Err(Error::parse(line, *col, "size must be positive"));
            }
            Ok(n)
        }
        [.., (_, col)] => Err(Error::parse(line, *col, "expected 'size n'")),
        [] => Err(Error::parse(line, 1, "expected 'size n'")),
    }
}

/// Parses a matrix file. Only the shape and field are checked; the
/// determinant is left to the caller.
pub fn parse_matrix(text: &str) -> Result<SqMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.split('#').next().unwrap_or("").trim().is_empty());

    let (ln, l) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let field = field_header(&tokenize(l, ln)?, ln)?;
    let (ln, l) = lines.next().ok_or_else(|| Error::parse(ln + 1, 1, "missing 'size n' line"))?;
    let n = size_header(&tokenize(l, ln)?, ln)?;

    let mut rows = Vec::with_capacity(n);
    let mut last = ln;
    for (ln, l) in lines {
        last = ln;
        if rows.len() == n {
            return Err(Error::parse(ln, 1, format!("more than {n} matrix rows")));
        }
        let toks = tokenize(l, ln)?;
        let mut row = Vec::with_capacity(n);
        for (tok, col) in &toks {
            match tok {
                Tok::List(items) => row.push(list_to_poly(&field, items, ln)?),
                Tok::Word(w) => {
                    return Err(Error::parse(ln, *col, format!("expected a polynomial literal like [1 0 1], found '{w}'")))
                }
            }
        }
        if row.len() != n {
            return Err(Error::parse(ln, 1, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(last + 1, 1, format!("expected {n} matrix rows, found {}", rows.len())));
    }
    SqMatrix::from_rows(rows)
}

pub fn format_matrix(m: &SqMatrix) -> String {
    let f = m.field();
    let mut out = format!("field {} {}", f.p(), f.m());
    if f.m() > 1 {
        let codes: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        write!(out, " [{}]", codes.join(" ")).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "size {}", m.n()).unwrap();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(format_poly).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}
