//! Scalar types the enumeration pipeline can be evaluated over.
//!
//! Every enumerating-polynomial identity used by the 2-DSP algorithms holds
//! modulo two, so the pipeline is generic over commutative rings of
//! characteristic two. Concrete scalars:
//!
//! * [`Gf64`](crate::field::Gf64): the evaluation field for randomized tests.
//! * [`Gf2`]: parity arithmetic; evaluating at the all-ones point yields the
//!   parity of the number of enumerated objects.
//! * [`Dual`]: forward-mode derivatives, `a + εb` with `ε² = 0`.
//! * [`Wire`](crate::search::Wire): records the computation as a circuit.

// addition and subtraction in characteristic 2 are both XOR
#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub, SubAssign};

use num_traits::{One, Zero};

/// A commutative ring of characteristic two.
///
/// Implementors must satisfy `x + x == 0`; `Sub` is then the same operation
/// as `Add`, but generic code keeps writing `-` where the formulas subtract.
pub trait Scalar:
    Copy + PartialEq + Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn square(self) -> Self {
        self * self
    }
}

/// The two-element field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gf2(pub bool);

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2(true)
    }
}

impl Scalar for Gf2 {}

/// Dual number `re + ε·eps` over a characteristic-two scalar.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn constant(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }

    pub fn variable(re: S) -> Self {
        Dual { re, eps: S::one() }
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual { re: self.re + rhs.re, eps: self.eps + rhs.eps }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual { re: self.re - rhs.re, eps: self.eps - rhs.eps }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual { re: self.re * rhs.re, eps: self.re * rhs.eps + self.eps * rhs.re }
    }
}

impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::constant(S::one())
    }
}

impl<S: Scalar> Scalar for Dual<S> {}

impl<S: Scalar> AddAssign for Dual<S> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<S: Scalar> SubAssign for Dual<S> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<S: Scalar> MulAssign for Dual<S> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Sum of an iterator of scalars.
pub fn sum<S: Scalar>(items: impl IntoIterator<Item = S>) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc + x)
}

/// Product of an iterator of scalars.
pub fn product<S: Scalar>(items: impl IntoIterator<Item = S>) -> S {
    items.into_iter().fold(S::one(), |acc, x| acc * x)
}
