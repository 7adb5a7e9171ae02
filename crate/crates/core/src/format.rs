//! Text formats.
//!
//! `vbf1`: a line `n m`, then the `2^n` values `F(0) … F(2^n - 1)` in hex,
//! whitespace separated (written on one line). `lin1`: a line `n`, then
//! lines `i c` giving the coefficient `c` of `x^{2^i}`; omitted terms are
//! zero. Elements are hex (`0x` optional) or `g^k`. Blank lines and lines
//! starting with `#` are ignored in both.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::vbf::{LinearMap, Vbf};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ElementFormat {
    #[default]
    Hex,
    /// `g^k`, with `0` for zero.
    Power,
}

pub fn format_element(field: &Field, x: u32, fmt: ElementFormat) -> String {
    match (fmt, field.log(x)) {
        (ElementFormat::Power, Some(k)) => format!("g^{k}"),
        (ElementFormat::Power, None) => "0".into(),
        (ElementFormat::Hex, _) => format!("{x:#x}"),
    }
}

fn parse_hex(token: &str) -> Option<u32> {
    let digits = token
        .strip_prefix("0x")
        .or_else(|| token.strip_prefix("0X"))
        .unwrap_or(token);
    u32::from_str_radix(digits, 16).ok()
}

/// Parses a hex element, or `g^k` when a field is given.
pub fn parse_element(field: Option<&Field>, token: &str) -> std::result::Result<u32, String> {
    if let Some(k) = token.strip_prefix("g^") {
        let field = field.ok_or_else(|| format!("`{token}` needs a field"))?;
        let k: u64 = k.parse().map_err(|_| format!("bad exponent in `{token}`"))?;
        return Ok(field.gen_pow(k));
    }
    parse_hex(token).ok_or_else(|| format!("`{token}` is not a hex value"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_vbf1(text: &str) -> Result<Vbf> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "expected header `n m`"))?;
    let dims: Vec<u32> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(hl, "expected header `n m`"))?;
    let [n, m] = dims[..] else {
        return Err(parse_err(hl, "expected header `n m`"));
    };
    if n > crate::vbf::MAX_DIM || m == 0 || m > 31 {
        return Err(parse_err(hl, format!("unsupported dimensions {n} {m}")));
    }
    let size = 1usize << n;
    let mut table = Vec::with_capacity(size);
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        for token in line.split_whitespace() {
            let v = parse_hex(token).ok_or_else(|| parse_err(ln, format!("`{token}` is not a hex value")))?;
            if v >> m != 0 {
                return Err(parse_err(ln, format!("value {v:#x} has more than {m} bits")));
            }
            if table.len() == size {
                return Err(parse_err(ln, format!("more than {size} values")));
            }
            table.push(v);
        }
    }
    if table.len() != size {
        return Err(parse_err(last, format!("expected {size} values, found {}", table.len())));
    }
    Vbf::from_table(n, m, table)
}

pub fn write_vbf1(f: &Vbf) -> String {
    let mut out = format!("{} {}\n", f.n(), f.m());
    for (i, v) in f.table().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v:x}").expect("writing to a String");
    }
    out.push('\n');
    out
}

/// Coefficients `c_0 … c_{n-1}` of a `lin1` file.
pub fn parse_lin1_coefficients(text: &str, field: &Field) -> Result<Vec<u32>> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "expected header `n`"))?;
    let n: u32 = header.parse().map_err(|_| parse_err(hl, "expected header `n`"))?;
    if n != field.degree() {
        return Err(parse_err(hl, format!("file is for n = {n}, field has n = {}", field.degree())));
    }
    let mut coeffs = vec![0u32; n as usize];
    let mut seen = vec![false; n as usize];
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, c] = parts[..] else {
            return Err(parse_err(ln, "expected `i coeff`"));
        };
        let i: usize = i.parse().map_err(|_| parse_err(ln, format!("bad index `{i}`")))?;
        if i >= n as usize {
            return Err(parse_err(ln, format!("index {i} out of range 0..{n}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(parse_err(ln, format!("index {i} given twice")));
        }
        let c = parse_element(Some(field), c).map_err(|m| parse_err(ln, m))?;
        if c >> n != 0 {
            return Err(parse_err(ln, format!("coefficient {c:#x} is not a field element")));
        }
        coeffs[i] = c;
    }
    Ok(coeffs)
}

pub fn parse_lin1(text: &str, field: &Field) -> Result<LinearMap> {
    LinearMap::from_linearized(field, &parse_lin1_coefficients(text, field)?)
}

/// Writes the nonzero coefficients of `l` as a `lin1` file.
pub fn write_lin1(l: &LinearMap, field: &Field, fmt: ElementFormat) -> Result<String> {
    let coeffs = l.linearized_coefficients(field)?;
    let mut out = format!("{}\n", field.degree());
    for (i, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        writeln!(out, "{i} {}", format_element(field, c, fmt)).expect("writing to a String");
    }
    Ok(out)
}
