//! Input and output formats.
//!
//! Plain files hold one string; every byte is a symbol, and the alphabet of
//! a pair of files is the set of bytes used by either, ranked by value. One
//! trailing newline (`\n` or `\r\n`) is ignored.
//!
//! RLE files hold one run per line as `<token> <count>`. Tokens are any
//! non-space strings; the alphabet of a pair of files is the set of tokens
//! used by either, sorted. Text after `#` and blank lines are ignored.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::parikh::PlainString;
use crate::rle::{Run, RleString};

fn strip_newline(bytes: &[u8]) -> &[u8] {
    let b = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if b.len() < bytes.len() {
        b.strip_suffix(b"\r").unwrap_or(b)
    } else {
        b
    }
}

/// Two plain strings over their joint byte alphabet. `sigma` widens the
/// alphabet and must cover every byte in use.
pub fn parse_plain_pair(
    a: &[u8],
    b: &[u8],
    sigma: Option<usize>,
) -> Result<(PlainString, PlainString, Vec<u8>)> {
    let (a, b) = (strip_newline(a), strip_newline(b));
    let alphabet: Vec<u8> = a
        .iter()
        .chain(b)
        .copied()
        .collect::<BTreeSet<u8>>()
        .into_iter()
        .collect();
    let used = alphabet.len();
    let sigma = match sigma {
        Some(0) => return Err(Error::InvalidParameter("--sigma must be positive".into())),
        Some(s) if s < used => {
            return Err(Error::InvalidParameter(format!(
                "--sigma {s} is smaller than the {used} symbols in use"
            )))
        }
        Some(s) => s,
        None => used.max(1),
    };
    let mut rank = [0u32; 256];
    for (k, &c) in alphabet.iter().enumerate() {
        rank[c as usize] = k as u32;
    }
    let encode = |u: &[u8]| {
        let ranks: Vec<u32> = u.iter().map(|&c| rank[c as usize]).collect();
        PlainString::from_ranks(&ranks, sigma)
    };
    Ok((encode(a)?, encode(b)?, alphabet))
}

/// `(token, count)` lines of an RLE file.
pub fn parse_rle_lines(text: &str) -> Result<Vec<(String, u64)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let (Some(token), Some(count), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `<symbol> <count>`, got `{content}`"),
            });
        };
        let count: u64 = count.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("run length `{count}` is not a positive integer"),
        })?;
        if count == 0 {
            return Err(Error::Parse {
                line: line_no,
                msg: "run length must be positive".into(),
            });
        }
        out.push((token.to_string(), count));
    }
    Ok(out)
}

/// Two RLE strings over their joint token alphabet.
pub fn parse_rle_pair(a: &str, b: &str) -> Result<(RleString, RleString, Vec<String>)> {
    let (la, lb) = (parse_rle_lines(a)?, parse_rle_lines(b)?);
    let alphabet: Vec<String> = la
        .iter()
        .chain(&lb)
        .map(|(t, _)| t.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let sigma = alphabet.len().max(1);
    let build = |lines: &[(String, u64)]| {
        let runs = lines
            .iter()
            .map(|(t, c)| {
                let k = alphabet.binary_search(t).expect("collected above");
                Run::new(k as u32, *c)
            })
            .collect();
        RleString::from_runs(runs, sigma)
    };
    Ok((build(&la)?, build(&lb)?, alphabet))
}

/// Token of symbol `k` in generated files: letters while they last.
pub fn symbol_token(k: usize, sigma: usize) -> String {
    if sigma <= 26 {
        char::from(b'a' + k as u8).to_string()
    } else {
        format!("s{k}")
    }
}

/// Byte of symbol `k` in generated plain files.
pub fn symbol_byte(k: usize, sigma: usize) -> Result<u8> {
    match sigma {
        0..=26 => Ok(b'a' + k as u8),
        27..=94 => Ok(b'!' + k as u8),
        _ => Err(Error::InvalidParameter(format!(
            "plain files support at most 94 printable symbols, got sigma={sigma}"
        ))),
    }
}

pub fn format_plain(u: &PlainString) -> Result<String> {
    let mut out = String::with_capacity(u.len() + 1);
    for s in u.symbols() {
        out.push(char::from(symbol_byte(s.index(), u.sigma())?));
    }
    out.push('\n');
    Ok(out)
}

pub fn format_rle(v: &RleString) -> String {
    v.runs()
        .iter()
        .map(|r| format!("{} {}\n", symbol_token(r.symbol.index(), v.sigma()), r.len))
        .collect()
}
