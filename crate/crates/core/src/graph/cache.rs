//! Binary graph cache.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic      8 bytes  "TNETCSR\0"
//! version    u32
//! n_nodes    u64
//! n_adj      u64
//! offsets    (n_nodes + 1) x u64
//! adjacency  n_adj x u32
//! checksum   u32      CRC-32 of every preceding byte
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{CollabGraph, NodeId};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"TNETCSR\0";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 8 + 8;

pub fn write_graph(g: &CollabGraph) -> Vec<u8> {
    let mut buf = Vec::with_capacity(HEADER_LEN + 8 * g.offsets().len() + 4 * g.adjacency().len() + 4);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.n_nodes() as u64).to_le_bytes());
    buf.extend_from_slice(&(g.adjacency().len() as u64).to_le_bytes());
    for &o in g.offsets() {
        buf.extend_from_slice(&(o as u64).to_le_bytes());
    }
    for &v in g.adjacency() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let crc = crc32fast::hash(&buf);
    buf.extend_from_slice(&crc.to_le_bytes());
    buf
}

pub fn read_graph(bytes: &[u8]) -> Result<CollabGraph> {
    if bytes.len() < 8 || &bytes[..8] != MAGIC {
        return Err(Error::Format("graph cache: bad magic bytes".into()));
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format("graph cache: truncated header".into()));
    }
    let u32_at = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
    let u64_at = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let version = u32_at(8);
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let n_nodes = u64_at(12);
    let n_adj = u64_at(20);
    let expected_len = (n_nodes.checked_add(1))
        .and_then(|k| k.checked_mul(8))
        .and_then(|k| k.checked_add(n_adj.checked_mul(4)?))
        .and_then(|k| k.checked_add((HEADER_LEN + 4) as u64));
    if expected_len != Some(bytes.len() as u64) {
        return Err(Error::Format(format!(
            "graph cache: file is {} bytes, header implies {}",
            bytes.len(),
            expected_len.map_or("overflow".to_string(), |l| l.to_string())
        )));
    }
    let body_end = bytes.len() - 4;
    let stored = u32_at(body_end);
    if crc32fast::hash(&bytes[..body_end]) != stored {
        return Err(Error::Format("graph cache: checksum mismatch".into()));
    }
    let n_nodes = n_nodes as usize;
    let mut at = HEADER_LEN;
    let mut offsets = Vec::with_capacity(n_nodes + 1);
    for _ in 0..=n_nodes {
        offsets.push(u64_at(at) as usize);
        at += 8;
    }
    let mut adjacency: Vec<NodeId> = Vec::with_capacity(n_adj as usize);
    for _ in 0..n_adj {
        adjacency.push(u32_at(at));
        at += 4;
    }
    CollabGraph::from_csr(offsets, adjacency)
}

pub fn save_graph(g: &CollabGraph, path: &Path) -> Result<()> {
    fs::write(path, write_graph(g)).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: &Path) -> Result<CollabGraph> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    read_graph(&bytes)
}

/// Plain-text edge list, one `u v` per line with `u < v`.
pub fn write_edge_list<W: Write>(g: &CollabGraph, mut out: W) -> std::io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
