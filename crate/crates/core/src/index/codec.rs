//! Little-endian binary layout of a built index.
//!
//! Keys are written in ascending order so equal indexes encode to equal bytes.

use std::collections::HashMap;

use super::{AnnIndex, IndexParams, Variant};
use crate::candidates::GridKey;
use crate::coord::{Coord, Rational};
use crate::curve::Curve1;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"TSFI";
pub const FORMAT_VERSION: u32 = 1;

pub(super) fn encode(index: &AnnIndex) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    put_u32(&mut out, FORMAT_VERSION);
    let p = &index.params;
    put_i64(&mut out, p.delta.units());
    put_i64(&mut out, *p.eps.numer());
    put_i64(&mut out, *p.eps.denom());
    put_u32(&mut out, p.k as u32);
    out.push(p.variant.code());
    put_u64(&mut out, index.scale);

    put_u32(&mut out, index.inputs.len() as u32);
    for (curve, label) in index.inputs.iter().zip(&index.labels) {
        put_u32(&mut out, label.len() as u32);
        out.extend_from_slice(label.as_bytes());
        put_u32(&mut out, curve.len() as u32);
        for x in curve.vertices() {
            put_i64(&mut out, x.units());
        }
    }

    put_u32(&mut out, index.skipped.len() as u32);
    for &id in &index.skipped {
        put_u32(&mut out, id);
    }

    let keys = index.sorted_keys();
    put_u64(&mut out, keys.len() as u64);
    for (key, id) in keys {
        put_u32(&mut out, key.len() as u32);
        for &c in key.cells() {
            put_i64(&mut out, c);
        }
        put_u32(&mut out, id);
    }
    out
}

pub(super) fn decode(bytes: &[u8]) -> Result<AnnIndex> {
    let mut r = Reader { bytes, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::decode("not an index file"));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::decode(format!("unsupported format version {version}")));
    }
    let delta = Coord::checked(r.i64()?).map_err(|e| Error::decode(e.to_string()))?;
    let (numer, denom) = (r.i64()?, r.i64()?);
    if denom <= 0 {
        return Err(Error::decode("bad eps denominator"));
    }
    let k = r.u32()? as usize;
    let code = r.u8()?;
    let variant = Variant::from_code(code).ok_or_else(|| Error::decode(format!("unknown variant code {code}")))?;
    let params = IndexParams::new(delta, Rational::new(numer, denom), k, variant)
        .map_err(|e| Error::decode(e.to_string()))?;
    let scale = r.u64()?;

    let n = r.u32()? as usize;
    let mut inputs = Vec::with_capacity(n.min(r.remaining() / 12));
    let mut labels = Vec::with_capacity(inputs.capacity());
    for _ in 0..n {
        let len = r.u32()? as usize;
        let label = std::str::from_utf8(r.take(len)?)
            .map_err(|_| Error::decode("label is not utf-8"))?
            .to_owned();
        let m = r.u32()? as usize;
        let mut units = Vec::with_capacity(m.min(r.remaining() / 8));
        for _ in 0..m {
            units.push(r.i64()?);
        }
        let curve = Curve1::from_units(&units).map_err(|e| Error::decode(e.to_string()))?;
        if curve.len() != m || m < 2 {
            return Err(Error::decode("stored curve is not normalized"));
        }
        inputs.push(curve);
        labels.push(label);
    }

    let s = r.u32()? as usize;
    let mut skipped = Vec::with_capacity(s.min(r.remaining() / 4));
    for _ in 0..s {
        skipped.push(r.id(n)?);
    }

    let keys = r.u64()?;
    let mut dictionary = HashMap::with_capacity((keys as usize).min(r.remaining() / 16));
    for _ in 0..keys {
        let len = r.u32()? as usize;
        let mut cells = Vec::with_capacity(len.min(r.remaining() / 8));
        for _ in 0..len {
            cells.push(r.i64()?);
        }
        let key = GridKey::from_cells(&cells).map_err(|e| Error::decode(e.to_string()))?;
        if key.len() != len {
            return Err(Error::decode("stored key is not normalized"));
        }
        let id = r.id(n)?;
        if dictionary.insert(key, id).is_some() {
            return Err(Error::decode("duplicate key"));
        }
    }
    if r.remaining() != 0 {
        return Err(Error::decode(format!("{} trailing bytes", r.remaining())));
    }
    let mut index = AnnIndex { params, inputs, labels, dictionary, skipped, scale, prefixes: Default::default() };
    index.index_prefixes();
    Ok(index)
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_i64(out: &mut Vec<u8>, v: i64) {
    out.extend_from_slice(&v.to_le_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn remaining(&self) -> usize {
        self.bytes.len() - self.at
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::decode(format!("truncated at byte {}", self.at)));
        }
        let out = &self.bytes[self.at..self.at + n];
        self.at += n;
        Ok(out)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        self.array().map(u32::from_le_bytes)
    }

    fn u64(&mut self) -> Result<u64> {
        self.array().map(u64::from_le_bytes)
    }

    fn i64(&mut self) -> Result<i64> {
        self.array().map(i64::from_le_bytes)
    }

    fn id(&mut self, inputs: usize) -> Result<u32> {
        let id = self.u32()?;
        if id as usize >= inputs {
            return Err(Error::decode(format!("input id {id} out of range")));
        }
        Ok(id)
    }
}
