use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use crate::dsp2::{Assignment, Evaluator};
use crate::error::{Error, Result};
use crate::field::Gf64;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// The variable of one edge.
    Input(usize),
    Const(Gf64),
    Add(u32, u32),
    Mul(u32, u32),
}

/// Gates in topological order; gate `e` is the input of edge `e` for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: u32,
    inputs: usize,
}

impl Circuit {
    /// Check that the first `inputs` gates are `Input(0..inputs)`, that no
    /// other input gates exist and that operands precede their consumers.
    pub fn from_gates(gates: Vec<Gate>, inputs: usize, output: u32) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        if output as usize >= gates.len() {
            return invalid(format!("output gate {output} out of range"));
        }
        for (idx, gate) in gates.iter().enumerate() {
            match *gate {
                Gate::Input(e) if idx < inputs && e == idx => {}
                Gate::Input(e) => return invalid(format!("gate {idx}: stray input for edge {e}")),
                _ if idx < inputs => return invalid(format!("gate {idx} must be an input")),
                Gate::Const(_) => {}
                Gate::Add(x, y) | Gate::Mul(x, y) => {
                    if x as usize >= idx || y as usize >= idx {
                        return invalid(format!("gate {idx} reads a later gate"));
                    }
                }
            }
        }
        Ok(Circuit { gates, output, inputs })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn output(&self) -> u32 {
        self.output
    }

    /// Forward evaluation over any scalar that embeds the field constants.
    pub fn evaluate<S: Scalar + From<Gf64>>(&self, a: &Assignment<S>) -> S {
        let vals = self.forward(a);
        vals[self.output as usize]
    }

    fn forward<S: Scalar + From<Gf64>>(&self, a: &Assignment<S>) -> Vec<S> {
        let mut vals: Vec<S> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match *gate {
                Gate::Input(e) => a[e],
                Gate::Const(c) => S::from(c),
                Gate::Add(x, y) => vals[x as usize] + vals[y as usize],
                Gate::Mul(x, y) => vals[x as usize] * vals[y as usize],
            };
            vals.push(v);
        }
        vals
    }

    /// Random circuit over `inputs` variables with `extra` further gates.
    pub fn random<R: Rng + ?Sized>(inputs: usize, extra: usize, rng: &mut R) -> Self {
        let mut gates: Vec<Gate> = (0..inputs).map(Gate::Input).collect();
        for _ in 0..extra {
            let len = gates.len() as u32;
            let gate = match rng.gen_range(0..10) {
                0 => Gate::Const(Gf64::random(rng)),
                1..=4 => Gate::Add(rng.gen_range(0..len), rng.gen_range(0..len)),
                _ => Gate::Mul(rng.gen_range(0..len), rng.gen_range(0..len)),
            };
            gates.push(gate);
        }
        let output = gates.len() as u32 - 1;
        Circuit { gates, output, inputs }
    }
}

/// Output value and the partial derivative for every edge variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientMap {
    pub value: Gf64,
    pub partials: Vec<Gf64>,
}

/// One forward sweep, then one reverse sweep propagating adjoints. A
/// product gate passes `adjoint · other operand` to each operand, so `x·x`
/// contributes `2x = 0`.
pub fn eval_all_partials(c: &Circuit, a: &Assignment<Gf64>) -> GradientMap {
    let vals = c.forward(a);
    let mut adj = vec![Gf64::ZERO; c.gates.len()];
    adj[c.output as usize] = Gf64::ONE;
    for (idx, gate) in c.gates.iter().enumerate().rev() {
        let g = adj[idx];
        if g == Gf64::ZERO {
            continue;
        }
        match *gate {
            Gate::Add(x, y) => {
                adj[x as usize] += g;
                adj[y as usize] += g;
            }
            Gate::Mul(x, y) => {
                adj[x as usize] += g * vals[y as usize];
                adj[y as usize] += g * vals[x as usize];
            }
            Gate::Input(_) | Gate::Const(_) => {}
        }
    }
    adj.truncate(c.inputs);
    GradientMap { value: vals[c.output as usize], partials: adj }
}

/// Gate recorder behind [`Wire`].
#[derive(Debug)]
pub struct Tape {
    gates: RefCell<Vec<Gate>>,
    inputs: usize,
}

impl Tape {
    pub fn new(inputs: usize) -> Self {
        Tape { gates: RefCell::new((0..inputs).map(Gate::Input).collect()), inputs }
    }

    pub fn input(&self, edge: usize) -> Wire<'_> {
        assert!(edge < self.inputs, "edge {edge} has no input gate");
        Wire::Node(self, edge as u32)
    }

    fn push(&self, gate: Gate) -> u32 {
        let mut gates = self.gates.borrow_mut();
        gates.push(gate);
        (gates.len() - 1) as u32
    }

    /// Gate index carrying `w`, materializing a constant if needed.
    pub fn gate_of(&self, w: Wire<'_>) -> u32 {
        match w {
            Wire::Const(c) => self.push(Gate::Const(c)),
            Wire::Node(t, i) => {
                assert!(std::ptr::eq(t, self), "wire from another tape");
                i
            }
        }
    }

    pub fn into_circuit(self, output: u32) -> Circuit {
        Circuit { gates: self.gates.into_inner(), output, inputs: self.inputs }
    }
}

/// A scalar that records arithmetic on a [`Tape`]. Constants fold without
/// touching the tape, so `zero()` and `one()` need no tape.
#[derive(Clone, Copy)]
pub enum Wire<'t> {
    Const(Gf64),
    Node(&'t Tape, u32),
}

impl fmt::Debug for Wire<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::Const(c) => write!(f, "Const({c})"),
            Wire::Node(_, i) => write!(f, "Node({i})"),
        }
    }
}

impl PartialEq for Wire<'_> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Wire::Const(a), Wire::Const(b)) => a == b,
            (Wire::Node(t, i), Wire::Node(u, j)) => std::ptr::eq(*t, *u) && i == j,
            _ => false,
        }
    }
}

impl<'t> Wire<'t> {
    fn binary(self, rhs: Self, make: fn(u32, u32) -> Gate) -> Self {
        let tape = match (self, rhs) {
            (Wire::Node(t, _), _) | (_, Wire::Node(t, _)) => t,
            _ => unreachable!("constant pairs are folded by the caller"),
        };
        let x = tape.gate_of(self);
        let y = tape.gate_of(rhs);
        Wire::Node(tape, tape.push(make(x, y)))
    }
}

impl Add for Wire<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Wire::Const(a), Wire::Const(b)) => Wire::Const(a + b),
            (Wire::Const(Gf64::ZERO), w) | (w, Wire::Const(Gf64::ZERO)) => w,
            _ => self.binary(rhs, Gate::Add),
        }
    }
}

impl Sub for Wire<'_> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Mul for Wire<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Wire::Const(a), Wire::Const(b)) => Wire::Const(a * b),
            (Wire::Const(Gf64::ZERO), _) | (_, Wire::Const(Gf64::ZERO)) => Wire::Const(Gf64::ZERO),
            (Wire::Const(Gf64::ONE), w) | (w, Wire::Const(Gf64::ONE)) => w,
            _ => self.binary(rhs, Gate::Mul),
        }
    }
}

impl Zero for Wire<'_> {
    fn zero() -> Self {
        Wire::Const(Gf64::ZERO)
    }
    fn is_zero(&self) -> bool {
        *self == Wire::Const(Gf64::ZERO)
    }
}

impl One for Wire<'_> {
    fn one() -> Self {
        Wire::Const(Gf64::ONE)
    }
}

impl Scalar for Wire<'_> {}

/// Record the `F_disj` pipeline of `eval` over `m` edge variables.
pub fn record_circuit(eval: &Evaluator<'_>, m: usize) -> Circuit {
    let tape = Tape::new(m);
    let output = {
        let inputs = Assignment::from_fn(m, |e| tape.input(e));
        let out = eval.fdisj(&inputs);
        tape.gate_of(out)
    };
    tape.into_circuit(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn product_rule_and_square() {
        let c = Circuit::from_gates(vec![Gate::Input(0), Gate::Input(1), Gate::Mul(0, 1)], 2, 2).unwrap();
        let a = Assignment(vec![Gf64(3), Gf64(5)]);
        let g = eval_all_partials(&c, &a);
        assert_eq!(g.value, Gf64(3) * Gf64(5));
        assert_eq!(g.partials, vec![Gf64(5), Gf64(3)]);

        let sq = Circuit::from_gates(vec![Gate::Input(0), Gate::Mul(0, 0)], 1, 1).unwrap();
        assert_eq!(eval_all_partials(&sq, &Assignment(vec![Gf64(7)])).partials, vec![Gf64::ZERO]);
    }

    #[test]
    fn rejects_malformed_gate_lists() {
        assert!(Circuit::from_gates(vec![Gate::Input(0), Gate::Add(0, 2), Gate::Const(Gf64::ONE)], 1, 2).is_err());
        assert!(Circuit::from_gates(vec![Gate::Input(0), Gate::Input(0)], 1, 1).is_err());
        assert!(Circuit::from_gates(vec![Gate::Const(Gf64::ONE)], 1, 0).is_err());
    }

    #[test]
    fn wires_fold_constants() {
        let tape = Tape::new(1);
        let x = tape.input(0);
        assert_eq!(x * Wire::one(), x);
        assert_eq!(x + Wire::zero(), x);
        assert_eq!(x * Wire::zero(), Wire::zero());
        assert_eq!(Wire::Const(Gf64(2)) * Wire::Const(Gf64(3)), Wire::Const(Gf64(6)));
        let y = x * Wire::Const(Gf64(9));
        let out = tape.gate_of(y);
        let c = tape.into_circuit(out);
        assert_eq!(c.size(), 3);
        assert_eq!(c.evaluate(&Assignment(vec![Gf64(1)])), Gf64(9));
    }

    #[test]
    fn reverse_matches_forward_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let c = Circuit::random(5, 60, &mut rng);
            let a = Assignment::random(5, &mut rng);
            let g = eval_all_partials(&c, &a);
            for var in 0..5 {
                let dual =
                    Assignment::from_fn(5, |e| if e == var { Dual::variable(a[e]) } else { Dual::constant(a[e]) });
                let out = c.evaluate(&dual);
                assert_eq!(out.re, g.value);
                assert_eq!(out.eps, g.partials[var]);
            }
        }
    }
}
