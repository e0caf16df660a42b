//! Line-oriented text format for point sets.
//!
//! One rational per line, written `p/q` or `p` when `q = 1`, strictly
//! ascending. Lines beginning with `#` are comments. UTF-8 with LF endings.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::PointSet;

pub fn to_string(s: &PointSet) -> String {
    let mut out = String::with_capacity(s.len() * 8);
    for x in s {
        writeln!(out, "{x}").expect("writing to a String cannot fail");
    }
    out
}

/// Like [`to_string`] with leading `# ...` comment lines.
pub fn to_string_with_header(s: &PointSet, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        for part in line.lines() {
            out.push_str("# ");
            out.push_str(part);
            out.push('\n');
        }
    }
    out.push_str(&to_string(s));
    out
}

pub fn write<W: Write>(s: &PointSet, mut w: W) -> io::Result<()> {
    for x in s {
        writeln!(w, "{x}")?;
    }
    w.flush()
}

pub fn parse(text: &str) -> Result<PointSet> {
    parse_lines(text.split_terminator('\n').map(|l| Ok(l.to_string())))
}

pub fn read<R: BufRead>(r: R) -> Result<PointSet> {
    parse_lines(r.lines().map(|l| {
        l.map_err(|e| Error::Parse {
            line: 0,
            reason: e.to_string(),
        })
    }))
}

fn parse_lines<I>(lines: I) -> Result<PointSet>
where
    I: Iterator<Item = Result<String>>,
{
    let mut elems: Vec<Rational> = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| match e {
            Error::Parse { reason, .. } => Error::Parse {
                line: lineno,
                reason,
            },
            other => other,
        })?;
        if line.starts_with('#') {
            continue;
        }
        let x: Rational = line.parse().map_err(|e: crate::rational::ParseRationalError| {
            Error::Parse {
                line: lineno,
                reason: e.0,
            }
        })?;
        if let Some(prev) = elems.last() {
            if *prev == x {
                return Err(Error::Parse {
                    line: lineno,
                    reason: format!("duplicate element {x}"),
                });
            }
            if *prev > x {
                return Err(Error::Parse {
                    line: lineno,
                    reason: format!("not ascending: {x} after {prev}"),
                });
            }
        }
        elems.push(x);
    }
    PointSet::new(elems)
}
