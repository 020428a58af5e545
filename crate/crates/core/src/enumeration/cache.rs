//! On-disk cache of one enumerated level: a versioned header line followed by
//! one hex-encoded canonical form per line.
//!
//! ```text
//! indeco-level v1 n=4 count=16
//! 04....
//! ```

use std::io::{self, BufRead, Write};

use super::canonical::{canonical_form, CanonicalForm};
use crate::poset::Poset;

pub const CACHE_VERSION: u32 = 1;

pub fn write_level<W: Write>(mut w: W, n: usize, posets: &[Poset]) -> io::Result<()> {
    writeln!(
        w,
        "indeco-level v{CACHE_VERSION} n={n} count={}",
        posets.len()
    )?;
    for p in posets {
        let form = canonical_form(p).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        writeln!(w, "{form}")?;
    }
    Ok(())
}

fn invalid(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

/// Reads a level written by [`write_level`], checking version, sizes and count.
pub fn read_level<R: BufRead>(r: R) -> io::Result<(usize, Vec<Poset>)> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| invalid("empty cache file"))??;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("indeco-level") {
        return Err(invalid("not a level cache"));
    }
    if fields.next() != Some(&format!("v{CACHE_VERSION}")) {
        return Err(invalid("unsupported cache version"));
    }
    let mut field = |key: &str| -> io::Result<usize> {
        fields
            .next()
            .and_then(|f| f.strip_prefix(key))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| invalid(format!("missing {key}")))
    };
    let n = field("n=")?;
    let count = field("count=")?;
    let mut out = Vec::with_capacity(count);
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let form = CanonicalForm::from_hex(line).ok_or_else(|| invalid("bad canonical form"))?;
        if form.size() != n {
            return Err(invalid("form of the wrong size"));
        }
        out.push(form.to_poset());
    }
    if out.len() != count {
        return Err(invalid(format!(
            "expected {count} entries, found {}",
            out.len()
        )));
    }
    Ok((n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::all_posets;

    #[test]
    fn level_round_trip() {
        let level = all_posets(4).unwrap();
        let mut buf = Vec::new();
        write_level(&mut buf, 4, &level).unwrap();
        let (n, back) = read_level(buf.as_slice()).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, level);
    }

    #[test]
    fn rejects_wrong_version_and_count() {
        let bad = b"indeco-level v9 n=1 count=1\n0100\n";
        assert!(read_level(&bad[..]).is_err());
        let short = b"indeco-level v1 n=1 count=2\n0100\n";
        assert!(read_level(&short[..]).is_err());
    }
}
