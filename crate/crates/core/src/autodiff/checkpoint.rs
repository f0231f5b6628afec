//! Binary parameter archive: name → shape + row-major 32-bit values.
//!
//! Parameters are written sorted by name so identical stores always produce
//! identical bytes. Loading widens values back to f64; a load/save cycle is
//! byte-stable.

use std::io::{Read, Write};

use crate::error::{Error, Result};

use super::params::ParamStore;

pub(crate) fn write_u32<W: Write>(w: &mut W, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

pub(crate) fn write_u64<W: Write>(w: &mut W, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

pub(crate) fn write_str<W: Write>(w: &mut W, s: &str) -> Result<()> {
    write_u32(w, s.len() as u32)?;
    w.write_all(s.as_bytes())?;
    Ok(())
}

pub(crate) fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

pub(crate) fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

pub(crate) fn read_str<R: Read>(r: &mut R) -> Result<String> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::usage(format!("invalid utf-8 in archive: {e}")))
}

/// Write all parameters of `store`, sorted by name.
pub fn write_params<W: Write>(w: &mut W, store: &ParamStore) -> Result<()> {
    let names = store.sorted_names();
    write_u32(w, names.len() as u32)?;
    for name in names {
        let id = store.id(name).unwrap();
        let p = store.get(id);
        write_str(w, name)?;
        write_u32(w, p.shape.len() as u32)?;
        for &d in &p.shape {
            write_u32(w, d as u32)?;
        }
        for &v in &p.values {
            w.write_all(&(v as f32).to_le_bytes())?;
        }
    }
    Ok(())
}

/// Read a parameter archive written by [`write_params`].
pub fn read_params<R: Read>(r: &mut R) -> Result<ParamStore> {
    let count = read_u32(r)? as usize;
    let mut store = ParamStore::new();
    for _ in 0..count {
        let name = read_str(r)?;
        let ndim = read_u32(r)? as usize;
        let mut shape = Vec::with_capacity(ndim);
        for _ in 0..ndim {
            shape.push(read_u32(r)? as usize);
        }
        let numel: usize = shape.iter().product();
        let mut values = Vec::with_capacity(numel);
        for _ in 0..numel {
            let mut buf = [0u8; 4];
            r.read_exact(&mut buf)?;
            values.push(f32::from_le_bytes(buf) as f64);
        }
        store.add(name, shape, values)?;
    }
    Ok(store)
}
