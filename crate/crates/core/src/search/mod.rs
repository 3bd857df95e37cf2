//! Circuit recording, reverse-mode partial derivatives and solution extraction.

mod circuit;
mod find;

pub use circuit::{eval_all_partials, record_circuit, Circuit, Gate, GradientMap, Tape, Wire};
pub use find::{find_2dsp, find_2dsp_with, verify_solution, SearchOptions, SearchOutcome, SearchStats};

use crate::dsp2::{Evaluator, TwoPairInstance};
use crate::error::Result;
use crate::graph::Graph;

/// The `F_disj` circuit of a graph with two terminal pairs.
pub fn build_circuit(g: &Graph) -> Result<Circuit> {
    let inst = TwoPairInstance::new(g)?;
    Ok(record_circuit(&Evaluator::new(inst.scope()), g.m()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp2::{eval_fdisj, Assignment};
    use crate::field::Gf64;
    use crate::fixtures::{cross, para, share};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circuits_agree_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in [para(), cross(), share()] {
            let c = build_circuit(&g).unwrap();
            assert_eq!(c.inputs(), g.m());
            for _ in 0..20 {
                let a = Assignment::random(g.m(), &mut rng);
                assert_eq!(c.evaluate(&a), eval_fdisj(&g, &a).unwrap());
            }
        }
        let c = build_circuit(&cross()).unwrap();
        let a = Assignment::random(4, &mut rng);
        assert_eq!(c.evaluate(&a), Gf64::ZERO);
    }
}
