//! Alcove sets as JSON lines: one manifest line, then one alcove per line.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::alcove::{Alcove, HypersimplexSpec};
use crate::enumerate::Strategy;
use crate::error::{ensure, Error, Result};
use crate::sorted::LatticePoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub r: u32,
    pub i: u32,
    pub d: usize,
    pub strategy: Strategy,
    pub count: usize,
}

impl Manifest {
    pub fn new(spec: &HypersimplexSpec, strategy: Strategy, count: usize) -> Self {
        Manifest {
            schema_version: crate::SCHEMA_VERSION,
            r: spec.dilation(),
            i: spec.level(),
            d: spec.dim(),
            strategy,
            count,
        }
    }

    pub fn spec(&self) -> Result<HypersimplexSpec> {
        HypersimplexSpec::new(self.r, self.i, self.d)
    }
}

#[derive(Serialize)]
struct Line<'a> {
    id: usize,
    vertices: &'a Alcove,
}

#[derive(Deserialize)]
struct OwnedLine {
    id: usize,
    vertices: Vec<LatticePoint>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed JSON: {e}"))
}

pub fn write_alcove_lines<W: Write>(
    mut out: W,
    spec: &HypersimplexSpec,
    strategy: Strategy,
    alcoves: &[Alcove],
) -> std::io::Result<()> {
    serde_json::to_writer(&mut out, &Manifest::new(spec, strategy, alcoves.len()))?;
    out.write_all(b"\n")?;
    for (id, alcove) in alcoves.iter().enumerate() {
        serde_json::to_writer(&mut out, &Line { id, vertices: alcove })?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Reads and validates an alcove set written by [`write_alcove_lines`].
pub fn read_alcove_lines<R: BufRead>(input: R) -> Result<(Manifest, Vec<Alcove>)> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty alcove file".into()))?
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let manifest: Manifest = serde_json::from_str(&first).map_err(json_error)?;
    ensure!(
        manifest.schema_version == crate::SCHEMA_VERSION,
        InvalidInput,
        "unsupported schema version {}",
        manifest.schema_version
    );
    let spec = manifest.spec()?;
    let mut alcoves = Vec::with_capacity(manifest.count);
    for line in lines {
        let line = line.map_err(|e| Error::InvalidInput(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: OwnedLine = serde_json::from_str(&line).map_err(json_error)?;
        ensure!(parsed.id == alcoves.len(), InvalidInput, "alcove ids out of sequence at {}", parsed.id);
        alcoves.push(Alcove::new(parsed.vertices, spec)?);
    }
    ensure!(
        alcoves.len() == manifest.count,
        InvalidInput,
        "manifest promises {} alcoves, found {}",
        manifest.count,
        alcoves.len()
    );
    Ok((manifest, alcoves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_dilated_alcoves;

    #[test]
    fn roundtrip() {
        let spec = HypersimplexSpec::new(2, 2, 3).unwrap();
        let alcoves = enumerate_dilated_alcoves(&spec, Strategy::Pairs).unwrap();
        let mut buf = Vec::new();
        write_alcove_lines(&mut buf, &spec, Strategy::Pairs, &alcoves).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 33);
        assert!(text.starts_with(r#"{"schema_version":1,"r":2,"i":2,"d":3,"strategy":"pairs","count":32}"#));
        let (manifest, back) = read_alcove_lines(buf.as_slice()).unwrap();
        assert_eq!(manifest.count, 32);
        assert_eq!(back, alcoves);
    }

    #[test]
    fn rejects_tampering() {
        let spec = HypersimplexSpec::new(1, 2, 3).unwrap();
        let alcoves = enumerate_dilated_alcoves(&spec, Strategy::Words).unwrap();
        let mut buf = Vec::new();
        write_alcove_lines(&mut buf, &spec, Strategy::Words, &alcoves).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let short: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(read_alcove_lines(short.as_bytes()).is_err());
        let broken = text.replacen("[1,1,0,0]", "[2,0,0,0]", 1);
        assert!(read_alcove_lines(broken.as_bytes()).is_err());
        assert!(read_alcove_lines("".as_bytes()).is_err());
    }
}
