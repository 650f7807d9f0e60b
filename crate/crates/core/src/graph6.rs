//! graph6 and sparse6 codecs.
//!
//! Both formats pack bits six at a time into printable bytes `63..=126`.
//! Vertex counts use the shared `N(n)` prefix: one byte for `n < 63`,
//! `~` plus three bytes for `n < 258048`, `~~` plus six bytes beyond that.

use thiserror::Error;

use crate::graph::MultiGraph;

/// Largest vertex count accepted on input.
pub const MAX_VERTICES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("illegal character {byte:#04x} at byte {offset}")]
    IllegalChar { offset: usize, byte: u8 },
    #[error("truncated record at byte {offset}: {what}")]
    Truncated { offset: usize, what: &'static str },
    #[error("trailing data at byte {offset}")]
    Trailing { offset: usize },
    #[error("vertex count {count} at byte {offset} exceeds the limit of {MAX_VERTICES}")]
    Overflow { offset: usize, count: u64 },
    #[error("loop at vertex {vertex} (sparse6 data ending at byte {offset})")]
    Loop { offset: usize, vertex: usize },
    #[error("graph6 cannot encode parallel edges")]
    NotSimple,
}

/// Parses one graph6 (`...`) or sparse6 (`:...`) record.
///
/// An optional `>>graph6<<` / `>>sparse6<<` header and surrounding
/// whitespace are ignored. Offsets in errors refer to `text` as given.
pub fn parse_graph6(text: &str) -> Result<MultiGraph, Graph6Error> {
    let bytes = text.as_bytes();
    let mut start = bytes.iter().position(|b| !b.is_ascii_whitespace()).unwrap_or(bytes.len());
    let end = bytes.iter().rposition(|b| !b.is_ascii_whitespace()).map_or(start, |p| p + 1);
    for header in [&b">>graph6<<"[..], &b">>sparse6<<"[..]] {
        if bytes[start..end].starts_with(header) {
            start += header.len();
        }
    }
    if start >= end {
        return Err(Graph6Error::Empty);
    }
    let body = &bytes[start..end];
    if body[0] == b':' {
        parse_sparse6(body, start + 1)
    } else {
        parse_dense(body, start)
    }
}

fn check_chars(body: &[u8], base: usize) -> Result<(), Graph6Error> {
    match body.iter().position(|b| !(63..=126).contains(b)) {
        Some(i) => Err(Graph6Error::IllegalChar { offset: base + i, byte: body[i] }),
        None => Ok(()),
    }
}

/// Decodes `N(n)`, returning `n` and the number of bytes consumed.
fn decode_count(body: &[u8], base: usize) -> Result<(usize, usize), Graph6Error> {
    let take = |len: usize, skip: usize| -> Result<u64, Graph6Error> {
        if body.len() < skip + len {
            return Err(Graph6Error::Truncated { offset: base + body.len(), what: "vertex count" });
        }
        Ok(body[skip..skip + len].iter().fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64))
    };
    let (count, used) = match body.first() {
        None => return Err(Graph6Error::Truncated { offset: base, what: "vertex count" }),
        Some(&126) if body.get(1) == Some(&126) => (take(6, 2)?, 8),
        Some(&126) => (take(3, 1)?, 4),
        Some(&b) => ((b - 63) as u64, 1),
    };
    if count > MAX_VERTICES as u64 {
        return Err(Graph6Error::Overflow { offset: base, count });
    }
    Ok((count as usize, used))
}

fn encode_count(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
}

fn parse_dense(body: &[u8], base: usize) -> Result<MultiGraph, Graph6Error> {
    check_chars(body, base)?;
    let (n, used) = decode_count(body, base)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[used..];
    if data.len() < need {
        return Err(Graph6Error::Truncated { offset: base + body.len(), what: "adjacency bits" });
    }
    if data.len() > need {
        return Err(Graph6Error::Trailing { offset: base + used + need });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(MultiGraph::from_edges(n, edges).expect("graph6 edges are in range and loopless"))
}

fn parse_sparse6(body: &[u8], base: usize) -> Result<MultiGraph, Graph6Error> {
    let body = &body[1..];
    check_chars(body, base)?;
    let (n, used) = decode_count(body, base)?;
    let k = bits_for(n);
    let data = &body[used..];
    let mut bits = BitReader { data, pos: 0 };
    let mut edges = Vec::new();
    let mut v = 0usize;
    while let (Some(b), Some(x)) = (bits.next_bits(1), bits.next_bits(k)) {
        if b == 1 {
            v += 1;
        }
        // Padding with one-bits lands here.
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(Graph6Error::Loop { offset: base + used + bits.pos.div_ceil(6), vertex: v });
        } else {
            edges.push((x, v));
        }
    }
    Ok(MultiGraph::from_edges(n, edges).expect("sparse6 edges are in range and loopless"))
}

/// Bits per vertex index in sparse6: the smallest `k >= 1` with `2^k >= n`.
fn bits_for(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn next_bits(&mut self, count: usize) -> Option<usize> {
        if self.pos + count > self.data.len() * 6 {
            return None;
        }
        let mut x = 0;
        for _ in 0..count {
            let byte = self.data[self.pos / 6] - 63;
            x = (x << 1) | ((byte >> (5 - self.pos % 6)) & 1) as usize;
            self.pos += 1;
        }
        Some(x)
    }
}

fn pack(bits: &[u8], out: &mut Vec<u8>) {
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            byte |= b << (5 - i);
        }
        out.push(byte + 63);
    }
}

/// Encodes a simple graph as graph6 (no header, no newline).
pub fn to_graph6(g: &MultiGraph) -> Result<String, Graph6Error> {
    if !g.is_simple() {
        return Err(Graph6Error::NotSimple);
    }
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for (_, u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j] as u8);
        }
    }
    bits.resize(bits.len().div_ceil(6) * 6, 0);
    let mut out = Vec::new();
    encode_count(n, &mut out);
    pack(&bits, &mut out);
    Ok(String::from_utf8(out).expect("printable ascii"))
}

/// Encodes any loopless multigraph as sparse6 (leading `:`, no newline).
pub fn to_sparse6(g: &MultiGraph) -> String {
    let n = g.vertex_count();
    let k = bits_for(n);
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (u.max(v), u.min(v))).collect();
    edges.sort_unstable();
    let mut bits: Vec<u8> = Vec::new();
    let push = |bits: &mut Vec<u8>, x: usize| {
        bits.extend((0..k).rev().map(|i| ((x >> i) & 1) as u8));
    };
    let mut cur = 0;
    for (v, u) in edges {
        if v == cur {
            bits.push(0);
            push(&mut bits, u);
        } else if v == cur + 1 {
            cur = v;
            bits.push(1);
            push(&mut bits, u);
        } else {
            cur = v;
            bits.push(1);
            push(&mut bits, v);
            bits.push(0);
            push(&mut bits, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == 1 << k && pad >= k && cur + 1 < n {
        // One-bit padding would otherwise decode as an edge to vertex n-1.
        bits.push(0);
    }
    bits.resize(bits.len().div_ceil(6) * 6, 1);
    let mut out = vec![b':'];
    encode_count(n, &mut out);
    pack(&bits, &mut out);
    String::from_utf8(out).expect("printable ascii")
}
