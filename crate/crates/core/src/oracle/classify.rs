use serde::{Deserialize, Serialize};

/// How two shortest paths overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Disjoint,
    SingleIntersection,
    Agree,
    Reversing,
}

impl PairClass {
    pub fn is_intersecting(self) -> bool {
        self != PairClass::Disjoint
    }

    /// Intersecting but not agreeing.
    pub fn is_disagreeing(self) -> bool {
        matches!(self, PairClass::SingleIntersection | PairClass::Reversing)
    }
}

/// Classify by the first vertex `v` of `p1` that also lies on `p2`: agree if
/// `v` is also the first shared vertex along `p2`, reversing if it is the last.
///
/// # Panics
/// If the pair fits none of the classes, which cannot happen for two
/// shortest paths of one graph.
pub fn classify_pair(p1: &[usize], p2: &[usize]) -> PairClass {
    let shared_along_p2: Vec<usize> = p2.iter().copied().filter(|v| p1.contains(v)).collect();
    match shared_along_p2.len() {
        0 => PairClass::Disjoint,
        1 => PairClass::SingleIntersection,
        _ => {
            let first = *p1.iter().find(|v| p2.contains(v)).expect("intersection is nonempty");
            if shared_along_p2[0] == first {
                PairClass::Agree
            } else if *shared_along_p2.last().unwrap() == first {
                PairClass::Reversing
            } else {
                panic!("paths {p1:?} and {p2:?} match no intersection type")
            }
        }
    }
}
