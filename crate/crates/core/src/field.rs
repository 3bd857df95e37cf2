//! GF(2^64) with reduction polynomial `t^64 + t^4 + t^3 + t + 1`.

// addition and subtraction in characteristic 2 are both XOR
#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub, SubAssign};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Low word of the reduction polynomial: `t^4 + t^3 + t + 1`.
pub const MODULUS_LOW: u64 = 0x1B;

/// An element of GF(2^64), bit `i` holding the coefficient of `t^i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Gf64(pub u64);

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf64(rng.gen::<u64>())
    }

    /// Product computed with the portable shift-and-xor routine.
    pub fn mul_portable(self, rhs: Gf64) -> Gf64 {
        let (lo, hi) = clmul_portable(self.0, rhs.0);
        Gf64(reduce(lo, hi))
    }

    /// Product computed with the carry-less multiply instruction, if the CPU has one.
    pub fn mul_hardware(self, rhs: Gf64) -> Option<Gf64> {
        hw::clmul(self.0, rhs.0).map(|(lo, hi)| Gf64(reduce(lo, hi)))
    }
}

/// Whether [`Gf64`] multiplication is using the hardware instruction.
pub fn hardware_clmul_available() -> bool {
    hw::available()
}

fn clmul_portable(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            lo ^= a << i;
            if i > 0 {
                hi ^= a >> (64 - i);
            }
        }
    }
    (lo, hi)
}

/// Reduce `hi·t^64 + lo`, using `t^64 ≡ t^4 + t^3 + t + 1` twice.
fn reduce(lo: u64, hi: u64) -> u64 {
    // Bits of hi·(t^4+t^3+t+1) that spill past t^63.
    let spill = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    let folded = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
    let refolded = spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4);
    lo ^ folded ^ refolded
}

#[cfg(target_arch = "x86_64")]
mod hw {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_set_epi64x, _mm_srli_si128};

    #[inline]
    pub fn available() -> bool {
        std::arch::is_x86_feature_detected!("pclmulqdq")
    }

    #[inline]
    pub fn clmul(a: u64, b: u64) -> Option<(u64, u64)> {
        if available() {
            // SAFETY: the required CPU feature was detected at runtime.
            Some(unsafe { clmul_pclmul(a, b) })
        } else {
            None
        }
    }

    #[target_feature(enable = "pclmulqdq,sse2")]
    unsafe fn clmul_pclmul(a: u64, b: u64) -> (u64, u64) {
        let x = _mm_set_epi64x(0, a as i64);
        let y = _mm_set_epi64x(0, b as i64);
        let p = _mm_clmulepi64_si128(x, y, 0x00);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_srli_si128(p, 8)) as u64;
        (lo, hi)
    }
}

#[cfg(not(target_arch = "x86_64"))]
mod hw {
    pub fn available() -> bool {
        false
    }

    pub fn clmul(_a: u64, _b: u64) -> Option<(u64, u64)> {
        None
    }
}

impl fmt::Debug for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf64({:#018x})", self.0)
    }
}

impl fmt::Display for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#018x}", self.0)
    }
}

impl Add for Gf64 {
    type Output = Gf64;
    #[inline]
    fn add(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl Sub for Gf64 {
    type Output = Gf64;
    #[inline]
    fn sub(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl Mul for Gf64 {
    type Output = Gf64;
    #[inline]
    fn mul(self, rhs: Gf64) -> Gf64 {
        let (lo, hi) = hw::clmul(self.0, rhs.0).unwrap_or_else(|| clmul_portable(self.0, rhs.0));
        Gf64(reduce(lo, hi))
    }
}

impl AddAssign for Gf64 {
    fn add_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for Gf64 {
    fn sub_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl MulAssign for Gf64 {
    fn mul_assign(&mut self, rhs: Gf64) {
        *self = *self * rhs;
    }
}

impl Sum for Gf64 {
    fn sum<I: Iterator<Item = Gf64>>(iter: I) -> Gf64 {
        iter.fold(Gf64::ZERO, Add::add)
    }
}

impl Product for Gf64 {
    fn product<I: Iterator<Item = Gf64>>(iter: I) -> Gf64 {
        iter.fold(Gf64::ONE, Mul::mul)
    }
}

impl Zero for Gf64 {
    fn zero() -> Self {
        Gf64::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Gf64 {
    fn one() -> Self {
        Gf64::ONE
    }
}

impl Scalar for Gf64 {}

impl From<Gf64> for crate::scalar::Dual<Gf64> {
    fn from(c: Gf64) -> Self {
        crate::scalar::Dual::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Schoolbook product as a 128-bit polynomial followed by long division
    /// by the full degree-64 modulus.
    fn oracle_mul(a: u64, b: u64) -> u64 {
        let mut prod: u128 = 0;
        for i in 0..64 {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u128) << i;
            }
        }
        let modulus: u128 = (1u128 << 64) | MODULUS_LOW as u128;
        for deg in (64..128).rev() {
            if (prod >> deg) & 1 == 1 {
                prod ^= modulus << (deg - 64);
            }
        }
        prod as u64
    }

    #[test]
    fn known_products() {
        let t = Gf64(2);
        let t63 = Gf64(1 << 63);
        assert_eq!(t63 * t, Gf64(MODULUS_LOW));
        assert_eq!(Gf64(1 << 32) * Gf64(1 << 32), Gf64(MODULUS_LOW));
        assert_eq!(Gf64(u64::MAX) * Gf64::ONE, Gf64(u64::MAX));
        assert_eq!(Gf64(0xdead_beef) * Gf64::ZERO, Gf64::ZERO);
    }

    #[test]
    fn sampling_is_seeded() {
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        let draw = |seed| Gf64::random(&mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn sampled_bits_are_balanced() {
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let samples = 1_000_000;
        let mut counts = [0u32; 64];
        for _ in 0..samples {
            let x = Gf64::random(&mut rng).bits();
            for (bit, c) in counts.iter_mut().enumerate() {
                *c += ((x >> bit) & 1) as u32;
            }
        }
        for c in counts {
            let freq = c as f64 / samples as f64;
            assert!((freq - 0.5).abs() < 0.01, "bit frequency {freq}");
        }
    }

    #[test]
    fn square_of_t_is_t_squared() {
        assert_eq!(Gf64(2) * Gf64(2), Gf64(4));
        assert_eq!(Gf64(3) + Gf64(5), Gf64(6));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn matches_long_division(a: u64, b: u64) {
            prop_assert_eq!((Gf64(a) * Gf64(b)).0, oracle_mul(a, b));
            prop_assert_eq!(Gf64(a).mul_portable(Gf64(b)).0, oracle_mul(a, b));
        }

        #[test]
        fn hardware_agrees_with_portable(a: u64, b: u64) {
            if let Some(p) = Gf64(a).mul_hardware(Gf64(b)) {
                prop_assert_eq!(p, Gf64(a).mul_portable(Gf64(b)));
            }
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]

        #[test]
        fn field_axioms(a: u64, b: u64, c: u64) {
            let (a, b, c) = (Gf64(a), Gf64(b), Gf64(c));
            prop_assert_eq!(a + a, Gf64::ZERO);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * Gf64::ONE, a);
            prop_assert_eq!(a + Gf64::ZERO, a);
        }
    }
}
