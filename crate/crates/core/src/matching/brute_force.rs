//! Exhaustive maximum-matching oracle for small graphs.

use crate::error::{Error, Result};
use crate::graph::DirectedMultigraph;

pub const BRUTE_FORCE_MAX_EDGES: usize = 24;

/// Maximum directed matching size by subset search over the edge list with
/// feasibility pruning. Intentionally independent of the augmenting-path
/// matchers so it can serve as their oracle.
pub fn brute_force_max_matching(g: &DirectedMultigraph) -> Result<usize> {
    let ne = g.edge_count();
    if ne > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::capacity(format!(
            "brute force accepts at most {BRUTE_FORCE_MAX_EDGES} edges, got {ne}"
        )));
    }
    // Dense bit positions for the tails and heads that actually occur.
    let mut tail_bit = std::collections::HashMap::new();
    let mut head_bit = std::collections::HashMap::new();
    let masks: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(t, h)| {
            let nt = tail_bit.len();
            let tb = *tail_bit.entry(t).or_insert(nt);
            let nh = head_bit.len();
            let hb = *head_bit.entry(h).or_insert(nh);
            (1u32 << tb, 1u32 << hb)
        })
        .collect();

    let mut best = 0usize;
    search(&masks, 0, 0, 0, 0, &mut best);
    Ok(best)
}

fn search(masks: &[(u32, u32)], i: usize, tails: u32, heads: u32, cur: usize, best: &mut usize) {
    if cur > *best {
        *best = cur;
    }
    if i == masks.len() || cur + (masks.len() - i) <= *best {
        return;
    }
    let (tm, hm) = masks[i];
    if tails & tm == 0 && heads & hm == 0 {
        search(masks, i + 1, tails | tm, heads | hm, cur + 1, best);
    }
    search(masks, i + 1, tails, heads, cur, best);
}
