use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Smallest number of strictly increasing lists over `1..=k` such that every
/// pair `i < j` is consecutive in one of them. Breadth-first search over the
/// set of covered pairs, so only practical for `k <= 7`.
pub fn minimum_covering_size(k: usize) -> Result<usize> {
    if !(2..=7).contains(&k) {
        return Err(Error::InvalidParameter(format!("exhaustive covering search supports 2 <= k <= 7, got {k}")));
    }
    let pair_bit = |i: usize, j: usize| {
        // 0-based i < j, row-major over the upper triangle
        let before: usize = (0..i).map(|r| k - 1 - r).sum();
        1u32 << (before + j - i - 1)
    };
    let full: u32 = (1u32 << (k * (k - 1) / 2)) - 1;

    let mut lists: Vec<u32> = (0u32..1 << k)
        .filter(|s| s.count_ones() >= 2)
        .map(|subset| {
            let members: Vec<usize> = (0..k).filter(|&i| subset >> i & 1 == 1).collect();
            members.windows(2).fold(0, |acc, w| acc | pair_bit(w[0], w[1]))
        })
        .collect();
    lists.sort_unstable();
    lists.dedup();

    let mut depth = vec![u8::MAX; full as usize + 1];
    depth[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(state) = queue.pop_front() {
        let d = depth[state as usize];
        if state == full {
            return Ok(d as usize);
        }
        for &l in &lists {
            let next = state | l;
            if depth[next as usize] == u8::MAX {
                depth[next as usize] = d + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("the full pair set is always coverable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_minimums() {
        assert_eq!(minimum_covering_size(2).unwrap(), 1);
        assert_eq!(minimum_covering_size(3).unwrap(), 2);
        assert_eq!(minimum_covering_size(4).unwrap(), 4);
        assert!(minimum_covering_size(8).is_err());
    }
}
