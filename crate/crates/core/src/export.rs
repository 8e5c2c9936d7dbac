//! JSON export of built representations and atomic file output.
//!
//! Keys appear in a fixed order and scalars are written as `[a, b]` for
//! `a + b√δ`, so the same inputs always produce the same bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::field::Scalar;
use crate::linalg::SparseMatrix;
use crate::sergeev::SergeevRep;
use crate::symrep::SymRep;

fn scalar(s: Scalar) -> Value {
    json!([s.a, s.b])
}

fn dense(m: &SparseMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(scalar).collect()))
            .collect(),
    )
}

fn named(prefix: &str, mats: &[SparseMatrix], out: &mut Map<String, Value>) {
    for (i, m) in mats.iter().enumerate() {
        out.insert(format!("{prefix}{}", i + 1), dense(m));
    }
}

pub fn sym_document(rep: &SymRep) -> Value {
    let mut gens = Map::new();
    named("s", &rep.gens, &mut gens);
    json!({
        "p": rep.p(),
        "delta": rep.field.delta(),
        "algebra": "sym",
        "lambda": rep.lambda.parts(),
        "dim": rep.dim(),
        "basis": rep.basis,
        "generators": gens,
    })
}

pub fn sergeev_document(rep: &SergeevRep) -> Value {
    let mut gens = Map::new();
    named("c", &rep.c, &mut gens);
    named("s", &rep.s, &mut gens);
    named("x", &rep.x, &mut gens);
    json!({
        "p": rep.p(),
        "delta": rep.field.delta(),
        "algebra": "sergeev",
        "xi": rep.xi.parts(),
        "dim": rep.dim(),
        "type": rep.module_type.to_string(),
        "blocks": rep.blocks,
        "parity": rep.parities(),
        "generators": gens,
    })
}

/// Compact JSON with one trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
