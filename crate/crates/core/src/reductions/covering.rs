use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing lists over `1..=k` in which every pair `i < j`
/// occurs as consecutive members of some list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringFamily {
    pub k: usize,
    pub lists: Vec<Vec<usize>>,
}

/// The arithmetic progressions `a, a+d, a+2d, ... <= k` for `d` in `1..k`
/// and `a <= min(d, k-d)`: `⌊k²/4⌋` lists.
pub fn covering_family(k: usize) -> Result<CoveringFamily> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("covering family needs k >= 2, got {k}")));
    }
    let mut lists = Vec::with_capacity(k * k / 4);
    for d in 1..k {
        for a in 1..=d.min(k - d) {
            lists.push((a..=k).step_by(d).collect());
        }
    }
    Ok(CoveringFamily { k, lists })
}

impl CoveringFamily {
    /// Number of lists containing `i` (1-based).
    pub fn occurrences(&self, i: usize) -> usize {
        self.lists.iter().filter(|l| l.contains(&i)).count()
    }

    /// Check strictness, coverage, size `⌊k²/4⌋` and that every element is in fewer than `k` lists.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let k = self.k;
        let mut covered = vec![false; (k + 1) * (k + 1)];
        for list in &self.lists {
            if list.iter().any(|&x| x == 0 || x > k) {
                return Err(format!("list {list:?} leaves 1..={k}"));
            }
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("list {list:?} is not strictly increasing"));
                }
                covered[w[0] * (k + 1) + w[1]] = true;
            }
        }
        for i in 1..=k {
            for j in i + 1..=k {
                if !covered[i * (k + 1) + j] {
                    return Err(format!("pair ({i}, {j}) is not consecutive in any list"));
                }
            }
        }
        if self.lists.len() != k * k / 4 {
            return Err(format!("{} lists, expected {}", self.lists.len(), k * k / 4));
        }
        if let Some(i) = (1..=k).find(|&i| self.occurrences(i) >= k) {
            return Err(format!("element {i} appears in {} lists", self.occurrences(i)));
        }
        Ok(())
    }
}
