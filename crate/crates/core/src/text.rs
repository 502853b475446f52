//! Textual dot syntax used by the CLI and test fixtures.
//!
//! `D(n,m)` is the lean dyadic interval `[n/2^m, (n+2)/2^m]`, `TOP` the
//! maximal dot, `N(b,n,m)` the n-ary interval `[n/b^m, (n+1)/b^m]`, and
//! `(k1 k2 ... kj)` a Baire sequence dot. Rendering is the `Display` impl of
//! each dot type; this module provides the parsers.

use crate::error::{Error, Result};
use crate::spaces::baire::BaireDot;
use crate::spaces::lean::LeanDyadicDot;
use crate::spaces::nary::NAryDot;

fn args_of<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

/// Parses "D(n,m)" or "TOP".
pub fn parse_lean_dot(s: &str) -> Result<LeanDyadicDot> {
    let s = s.trim();
    if s == "TOP" {
        return Ok(LeanDyadicDot::Top);
    }
    let body = args_of(s, "D").ok_or_else(|| Error::Parse(format!("bad lean dot {s:?}")))?;
    let (n, m) = body
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad lean dot {s:?}")))?;
    let n: i128 = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lean dot {s:?}")))?;
    let m: u32 = m
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lean dot {s:?}")))?;
    Ok(LeanDyadicDot::dot(n, m))
}

/// Parses "N(b,n,m)".
pub fn parse_nary_dot(s: &str) -> Result<NAryDot> {
    let s = s.trim();
    let body = args_of(s, "N").ok_or_else(|| Error::Parse(format!("bad n-ary dot {s:?}")))?;
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("bad n-ary dot {s:?}")));
    }
    let base: u32 = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad n-ary dot {s:?}")))?;
    let n: i128 = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad n-ary dot {s:?}")))?;
    let m: u32 = parts[2]
        .parse()
        .map_err(|_| Error::Parse(format!("bad n-ary dot {s:?}")))?;
    Ok(NAryDot::interval(base, n, m))
}

/// Parses "(k1 k2 ... kj)"; "()" is the empty (maximal) dot.
pub fn parse_baire_dot(s: &str) -> Result<BaireDot> {
    let s = s.trim();
    let body = s
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad sequence dot {s:?}")))?;
    let mut entries = Vec::new();
    for tok in body.split_whitespace() {
        let k: u32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad sequence dot {s:?}")))?;
        entries.push(k);
    }
    Ok(BaireDot(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lean_roundtrip() {
        for s in ["TOP", "D(0,3)", "D(-17,5)"] {
            let dot = parse_lean_dot(s).unwrap();
            assert_eq!(dot.to_string(), s);
        }
        assert!(parse_lean_dot("D(1)").is_err());
        assert!(parse_lean_dot("X(1,2)").is_err());
    }

    #[test]
    fn nary_roundtrip() {
        for s in ["N(2,0,1)", "N(10,-3,2)"] {
            let dot = parse_nary_dot(s).unwrap();
            assert_eq!(dot.to_string(), s);
        }
        assert!(parse_nary_dot("N(2,0)").is_err());
    }

    #[test]
    fn baire_roundtrip() {
        for s in ["()", "(1 2 3)", "(0)"] {
            let dot = parse_baire_dot(s).unwrap();
            assert_eq!(dot.to_string(), s);
        }
        assert!(parse_baire_dot("(a)").is_err());
        assert!(parse_baire_dot("1 2").is_err());
    }
}
