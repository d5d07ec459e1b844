//! graph6 short form (orders up to 62).
//!
//! Byte 0 is `n + 63`. The upper triangle of the adjacency matrix is read
//! column by column (`(0,1), (0,2), (1,2), (0,3), …`), packed big-endian into
//! 6-bit groups, zero padded, each group offset by 63.

use super::{Graph, GraphError};

pub const MAX_GRAPH6_ORDER: usize = 62;

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| GraphError::MalformedGraph6("empty string".into()))?;
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::MalformedGraph6(format!(
            "byte {b} outside 63..=126"
        )));
    }
    if head == 126 {
        return Err(GraphError::OrderTooLarge(decode_long_order(body)));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(GraphError::InvalidOrder { min: 1, got: 0 });
    }
    if body.len() != body_len(n) {
        return Err(GraphError::MalformedGraph6(format!(
            "order {n} needs {} data bytes, found {}",
            body_len(n),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

// Only used to report the offending order in the error.
fn decode_long_order(body: &[u8]) -> usize {
    let digits = if body.first() == Some(&126) {
        &body[1..]
    } else {
        body
    };
    let take = if body.first() == Some(&126) { 6 } else { 3 };
    digits.iter().take(take).fold(0usize, |acc, &b| {
        (acc << 6) | (b.saturating_sub(63) as usize)
    })
}

pub fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n > MAX_GRAPH6_ORDER {
        return Err(GraphError::OrderTooLarge(n));
    }
    if n == 0 {
        return Err(GraphError::InvalidOrder { min: 1, got: 0 });
    }
    let mut body = vec![0u8; body_len(n)];
    for &(i, j) in g.edges() {
        let k = j * (j - 1) / 2 + i;
        body[k / 6] |= 1 << (5 - k % 6);
    }
    let mut out = String::with_capacity(body.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(body.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Parses one graph per non-empty line; lines starting with `#` are skipped.
/// Errors carry the 1-based line number.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, GraphError)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty() && !line.trim_start().starts_with('#'))
        .map(|(i, line)| parse_graph6(line.trim()).map_err(|e| (i + 1, e)))
        .collect()
}
