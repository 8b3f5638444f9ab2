//! On-disk persistence of the component memo.
//!
//! Layout: magic `KMPCACHE`, `u32` version, `u64` entry count, then per entry
//! a length-prefixed key, a finite-label tag (`0xff` for none) and rank byte,
//! and the numerator and denominator as length-prefixed lists of
//! length-prefixed signed little-endian integers.

use std::fs;
use std::io::{Cursor, Read};
use std::path::Path;

use num_bigint::BigInt;

use super::graph::{finite_label_code, finite_label_decode, BondKey};
use super::{ComponentEntry, PoincareEngine};
use crate::error::{Error, Result};
use crate::ratfunc::{IntPoly, RatFunc};

/// Environment variable naming the cache directory used by the CLI.
pub const CACHE_ENV: &str = "KMP_CACHE_DIR";

const MAGIC: &[u8; 8] = b"KMPCACHE";
const VERSION: u32 = 1;

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_poly(out: &mut Vec<u8>, p: &IntPoly) {
    put_u32(out, p.coeffs().len() as u32);
    for c in p.coeffs() {
        let bytes = c.to_signed_bytes_le();
        put_u32(out, bytes.len() as u32);
        out.extend_from_slice(&bytes);
    }
}

pub fn save_cache(engine: &PoincareEngine, path: &Path) -> Result<()> {
    let entries = engine.entries();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, VERSION);
    out.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for e in entries {
        let key = e.key.as_bytes();
        put_u32(&mut out, key.len() as u32);
        out.extend_from_slice(key);
        let (tag, rank) = e.finite.map(finite_label_code).unwrap_or((0xff, 0));
        out.push(tag);
        out.push(rank);
        put_poly(&mut out, e.series.num());
        put_poly(&mut out, e.series.den());
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, out)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

struct Reader(Cursor<Vec<u8>>);

impl Reader {
    fn bytes(&mut self, n: usize) -> Result<Vec<u8>> {
        let mut buf = vec![0; n];
        self.0
            .read_exact(&mut buf)
            .map_err(|_| Error::Parse("truncated cache file".into()))?;
        Ok(buf)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }

    fn poly(&mut self) -> Result<IntPoly> {
        let len = self.u32()? as usize;
        let mut coeffs = Vec::with_capacity(len.min(1 << 16));
        for _ in 0..len {
            let k = self.u32()? as usize;
            coeffs.push(BigInt::from_signed_bytes_le(&self.bytes(k)?));
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Loads entries into `engine`; returns how many were read. A missing file
/// is not an error.
pub fn load_cache(engine: &PoincareEngine, path: &Path) -> Result<usize> {
    let data = match fs::read(path) {
        Ok(d) => d,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    let mut r = Reader(Cursor::new(data));
    if r.bytes(8)? != MAGIC {
        return Err(Error::Parse("not a cache file".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported cache version {version}")));
    }
    let count = r.u64()?;
    for _ in 0..count {
        let klen = r.u32()? as usize;
        let key = BondKey::from_bytes(r.bytes(klen)?).ok_or_else(|| Error::Parse("bad cache key".into()))?;
        let tag = r.bytes(2)?;
        let finite = if tag[0] == 0xff {
            None
        } else {
            Some(finite_label_decode(tag[0], tag[1]).ok_or_else(|| Error::Parse("bad cache label".into()))?)
        };
        let num = r.poly()?;
        let den = r.poly()?;
        let series = RatFunc::new(num, den).map_err(|_| Error::Parse("zero denominator in cache".into()))?;
        engine.insert(ComponentEntry { key, series, finite });
    }
    Ok(count as usize)
}
