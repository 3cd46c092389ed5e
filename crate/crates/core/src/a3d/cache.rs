//! Text files holding one computed component each.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::Component;
use crate::error::{Error, Result};
use crate::field::{CoeffField, Field};
use crate::linalg::{Echelon, SparseVec};
use crate::word::{Multidegree, Word};

const HEADER: &str = "a3d-component 1";

pub(crate) fn path(dir: &Path, d: usize, delta: &Multidegree, field: &CoeffField) -> PathBuf {
    let field: String = field.to_string().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let delta = delta.entries().iter().map(|k| k.to_string()).collect::<Vec<_>>().join("-");
    dir.join(format!("d{d}_{field}_{delta}.txt"))
}

pub(crate) fn save<F: Field>(path: &Path, d: usize, comp: &Component<F>) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "{HEADER}").unwrap();
    writeln!(s, "d {d}").unwrap();
    writeln!(s, "field {}", F::descriptor()).unwrap();
    writeln!(s, "delta {}", comp.delta).unwrap();
    writeln!(s, "candidates {}", comp.candidates.len()).unwrap();
    for w in &comp.candidates {
        writeln!(s, "{w}").unwrap();
    }
    writeln!(s, "rows {}", comp.echelon.rank()).unwrap();
    for r in comp.echelon.rows() {
        let line: Vec<String> = r.iter().map(|(c, v)| format!("{c}:{v}")).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, s)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// The stored echelon form, or `None` when there is no file. A file that
/// disagrees with the freshly derived candidate list is an error.
pub(crate) fn load<F: Field>(path: &Path, d: usize, comp: &Component<F>) -> Result<Option<Echelon<F>>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |what: &str| Error::Cache(format!("{}: {what}", path.display()));
    let mut lines = text.lines();
    let mut expect = |want: String| -> Result<()> {
        match lines.next() {
            Some(l) if l == want => Ok(()),
            _ => Err(bad(&format!("expected `{want}`"))),
        }
    };
    expect(HEADER.to_string())?;
    expect(format!("d {d}"))?;
    expect(format!("field {}", F::descriptor()))?;
    expect(format!("delta {}", comp.delta))?;
    expect(format!("candidates {}", comp.candidates.len()))?;
    for w in &comp.candidates {
        let got: Word = lines.next().ok_or_else(|| bad("truncated"))?.parse().map_err(|_| bad("bad word"))?;
        if &got != w {
            return Err(bad("candidate list changed"));
        }
    }
    let nrows: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("rows "))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| bad("missing row count"))?;
    let mut ech = Echelon::new(comp.candidates.len());
    for _ in 0..nrows {
        let line = lines.next().ok_or_else(|| bad("truncated"))?;
        let row: SparseVec<F> = line
            .split_whitespace()
            .map(|e| {
                let (c, v) = e.split_once(':')?;
                Some((c.parse::<u32>().ok()?, v.parse::<F>().ok()?))
            })
            .collect::<Option<_>>()
            .ok_or_else(|| bad("bad row"))?;
        if row.iter().any(|(c, _)| *c as usize >= comp.candidates.len()) {
            return Err(bad("column out of range"));
        }
        if ech.push_reduced(row, None).is_none() {
            return Err(bad("empty row"));
        }
    }
    Ok(Some(ech))
}
