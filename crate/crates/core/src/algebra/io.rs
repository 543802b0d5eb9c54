//! Text format for structure constants.
//!
//! ```text
//! # killing-algebra n=<n> dim=<d>
//! x y z p q
//! ```
//!
//! One line per nonzero `c_{xy}^z = p/q` with `x < y` (zero-based indices),
//! sorted lexicographically by `(x, y, z)`.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use super::{block_dims, KillingAlgebra};
use crate::error::{Error, Result};
use crate::Rational;

pub fn format_structure_constants(ka: &KillingAlgebra) -> String {
    let dim = ka.dim();
    let mut out = format!("# killing-algebra n={} dim={}\n", ka.sphere(), dim);
    for x in 0..dim {
        for y in x + 1..dim {
            for (z, c) in ka.structure_constants(x, y) {
                writeln!(out, "{x} {y} {z} {} {}", c.numer(), c.denom()).expect("string write");
            }
        }
    }
    out
}

pub fn export_structure_constants(ka: &KillingAlgebra, destination: &Path) -> Result<()> {
    std::fs::write(destination, format_structure_constants(ka)).map_err(|source| Error::Io {
        path: destination.to_path_buf(),
        source,
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_structure_constants(text: &str) -> Result<KillingAlgebra> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, dim) = match fields.as_slice() {
        ["#", "killing-algebra", n, d] => {
            let n = n
                .strip_prefix("n=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| parse_err(1, "bad n= field"))?;
            let d = d
                .strip_prefix("dim=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| parse_err(1, "bad dim= field"))?;
            (n, d)
        }
        _ => return Err(parse_err(1, "missing `# killing-algebra n=.. dim=..` header")),
    };
    let (d0, d1) = block_dims(n)?;
    if d0 + d1 != dim {
        return Err(parse_err(1, format!("dim={dim} does not match sphere n={n}")));
    }
    let mut table = vec![Vec::new(); dim * dim];
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [x, y, z, p, q] = parts.as_slice() else {
            return Err(parse_err(line_no, "expected `x y z p q`"));
        };
        let index = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|v| *v < dim)
                .ok_or_else(|| parse_err(line_no, format!("bad index `{s}`")))
        };
        let (x, y, z) = (index(x)?, index(y)?, index(z)?);
        if x >= y {
            return Err(parse_err(line_no, "entries must have x < y"));
        }
        let p: BigInt = p.parse().map_err(|_| parse_err(line_no, "bad numerator"))?;
        let q: BigInt = q.parse().map_err(|_| parse_err(line_no, "bad denominator"))?;
        if q == BigInt::from(0) {
            return Err(parse_err(line_no, "zero denominator"));
        }
        let c = Rational::new(p, q);
        if c == Rational::from_integer(BigInt::from(0)) {
            continue;
        }
        table[x * dim + y].push((z, c.clone()));
        table[y * dim + x].push((z, -c));
    }
    for row in &mut table {
        row.sort_by_key(|(z, _)| *z);
        let before = row.len();
        row.dedup_by_key(|(z, _)| *z);
        if row.len() != before {
            return Err(parse_err(0, "duplicate (x, y, z) entry"));
        }
    }
    KillingAlgebra::from_parts(n, table)
}

pub fn import_structure_constants(source: &Path) -> Result<KillingAlgebra> {
    let text = std::fs::read_to_string(source).map_err(|e| Error::Io {
        path: source.to_path_buf(),
        source: e,
    })?;
    parse_structure_constants(&text)
}
