//! Binary cache for [`RepTable`]s.
//!
//! Layout (little endian): magic `ISG7REPS`, version `u32`, bound `u64`,
//! entry count `u64`, then `(m: u64, a: i64, b: i64)` per entry.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use isog7_core::normform::{build_rep_table, RepTable};

use crate::CliError;

const MAGIC: &[u8; 8] = b"ISG7REPS";
const VERSION: u32 = 1;
const HEADER: usize = 8 + 4 + 8 + 8;
const ENTRY: usize = 24;

pub fn save(path: &Path, table: &RepTable) -> Result<(), CliError> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&table.bound().to_le_bytes())?;
    w.write_all(&(table.len() as u64).to_le_bytes())?;
    for (m, a, b) in table.entries() {
        w.write_all(&m.to_le_bytes())?;
        w.write_all(&a.to_le_bytes())?;
        w.write_all(&b.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn word(bytes: &[u8], at: usize) -> [u8; 8] {
    bytes[at..at + 8].try_into().expect("8 bytes")
}

pub fn load(path: &Path) -> Result<RepTable, CliError> {
    let bytes = fs::read(path)?;
    let corrupt = |why: &str| CliError::Cache(format!("{}: {why}", path.display()));
    if bytes.len() < HEADER || &bytes[..8] != MAGIC {
        return Err(corrupt("not a table cache"));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(corrupt("unsupported version"));
    }
    let bound = u64::from_le_bytes(word(&bytes, 12));
    let n = u64::from_le_bytes(word(&bytes, 20)) as usize;
    if bytes.len() != HEADER + n * ENTRY {
        return Err(corrupt("truncated"));
    }
    let entries: Vec<(u64, i64, i64)> = bytes[HEADER..]
        .chunks_exact(ENTRY)
        .map(|c| {
            (
                u64::from_le_bytes(word(c, 0)),
                i64::from_le_bytes(word(c, 8)),
                i64::from_le_bytes(word(c, 16)),
            )
        })
        .collect();
    let table = RepTable::from_entries(bound, &entries).ok_or_else(|| corrupt("invalid entry"))?;
    if table.len() != n {
        return Err(corrupt("duplicate entries"));
    }
    Ok(table)
}

/// Loads the cached table when it is large enough, else builds one of
/// bound `need` and (re)writes the cache.
pub fn load_or_build(path: &Path, need: u64) -> Result<RepTable, CliError> {
    if path.exists() {
        let t = load(path)?;
        if t.bound() >= need {
            return Ok(t);
        }
    }
    let t = build_rep_table(need);
    save(path, &t)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.bin");
        let t = build_rep_table(5000);
        save(&p, &t).unwrap();
        assert_eq!(load(&p).unwrap(), t);
    }

    #[test]
    fn rejects_damage() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.bin");
        save(&p, &build_rep_table(500)).unwrap();
        let mut bytes = fs::read(&p).unwrap();
        // flip b of the last entry
        let k = bytes.len() - 1;
        bytes[k] ^= 0x40;
        fs::write(&p, &bytes).unwrap();
        assert!(load(&p).is_err());
        fs::write(&p, &bytes[..bytes.len() - 3]).unwrap();
        assert!(load(&p).is_err());
        fs::write(&p, b"junk").unwrap();
        assert!(load(&p).is_err());
    }

    #[test]
    fn grows_when_too_small() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.bin");
        assert_eq!(load_or_build(&p, 100).unwrap().bound(), 100);
        assert_eq!(load_or_build(&p, 50).unwrap().bound(), 100);
        assert_eq!(load_or_build(&p, 400).unwrap().bound(), 400);
        assert_eq!(load(&p).unwrap().bound(), 400);
    }
}
