//! Arithmetic in `GF(2^n)` for `2 <= n <= 16`.
//!
//! Elements are `u32` bitmasks in the polynomial basis: bit `i` is the
//! coordinate of `α^i`, where `α` is a root of the modulus. Addition is XOR.
//! Multiplication goes through log/antilog tables built once at construction.

use crate::error::{Error, Result};

/// Modulus used for `n = 6`: `α^6 + α^4 + α^3 + α + 1`.
pub const MODULUS_6: u32 = 0b101_1011;
/// Modulus used for `n = 8`: `α^8 + α^4 + α^3 + α^2 + 1`.
pub const MODULUS_8: u32 = 0x11d;

/// A concrete construction of `GF(2^n)`.
#[derive(Clone)]
pub struct Field {
    n: u32,
    modulus: u32,
    generator: u32,
    trace_mask: u32,
    // exp has length 2 * order so that exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &format_args!("{:#x}", self.generator))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for Field {}

/// Carry-less product of two polynomials reduced modulo `modulus` (degree `n`).
pub fn poly_mulmod(mut a: u32, mut b: u32, modulus: u32, n: u32) -> u32 {
    let top = 1u32 << n;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Exhaustive divisor test; adequate for degrees up to 16.
pub fn is_irreducible(modulus: u32, n: u32) -> bool {
    if poly_degree(modulus) != n as i32 || modulus & 1 == 0 {
        return false;
    }
    for deg in 1..=n / 2 {
        for d in (1u32 << deg)..(1u32 << (deg + 1)) {
            if poly_rem(modulus, d) == 0 {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn poly_powmod(base: u32, mut e: u64, modulus: u32, n: u32) -> u32 {
    let mut acc = 1u32;
    let mut b = base;
    while e != 0 {
        if e & 1 != 0 {
            acc = poly_mulmod(acc, b, modulus, n);
        }
        b = poly_mulmod(b, b, modulus, n);
        e >>= 1;
    }
    acc
}

fn has_full_order(x: u32, modulus: u32, n: u32) -> bool {
    let order = (1u32 << n) - 1;
    if x == 0 || poly_powmod(x, order as u64, modulus, n) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| poly_powmod(x, (order / p) as u64, modulus, n) != 1)
}

/// Whether `modulus` is irreducible of degree `n` with `α` primitive.
pub fn is_primitive_polynomial(modulus: u32, n: u32) -> bool {
    is_irreducible(modulus, n) && has_full_order(0b10, modulus, n)
}

/// The numerically smallest primitive polynomial of degree `n`.
pub fn smallest_primitive_polynomial(n: u32) -> Result<u32> {
    check_degree(n)?;
    ((1u32 << n)..(1u32 << (n + 1)))
        .find(|&p| is_primitive_polynomial(p, n))
        .ok_or(Error::UnsupportedDegree(n))
}

fn check_degree(n: u32) -> Result<()> {
    if (2..=16).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(n))
    }
}

impl Field {
    /// Builds `GF(2)[x]/(modulus)`. The generator is `α` when the modulus is
    /// primitive, otherwise the smallest element of full multiplicative order.
    pub fn new(n: u32, modulus: u32) -> Result<Self> {
        check_degree(n)?;
        if !is_irreducible(modulus, n) {
            return Err(Error::ReducibleModulus { n, modulus });
        }
        let generator = (2..(1u32 << n))
            .find(|&x| has_full_order(x, modulus, n))
            .expect("multiplicative group of a finite field is cyclic");
        Self::build(n, modulus, generator)
    }

    /// Like [`Field::new`] with an explicit primitive element.
    pub fn with_generator(n: u32, modulus: u32, generator: u32) -> Result<Self> {
        check_degree(n)?;
        if !is_irreducible(modulus, n) {
            return Err(Error::ReducibleModulus { n, modulus });
        }
        if generator >= (1 << n) || !has_full_order(generator, modulus, n) {
            return Err(Error::NotPrimitive(generator));
        }
        Self::build(n, modulus, generator)
    }

    /// Standard field of degree `n`: the fixed moduli for `n = 6, 8`, the
    /// smallest primitive polynomial otherwise.
    pub fn preset(n: u32) -> Result<Self> {
        let modulus = match n {
            6 => MODULUS_6,
            8 => MODULUS_8,
            _ => smallest_primitive_polynomial(n)?,
        };
        Self::new(n, modulus)
    }

    fn build(n: u32, modulus: u32, generator: u32) -> Result<Self> {
        let size = 1usize << n;
        let order = size - 1;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; size];
        let mut x = 1u32;
        for (k, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = x;
            log[x as usize] = k as u32;
            x = poly_mulmod(x, generator, modulus, n);
        }
        if x != 1 {
            return Err(Error::NotPrimitive(generator));
        }
        for k in order..2 * order {
            exp[k] = exp[k - order];
        }
        let mut field = Field {
            n,
            modulus,
            generator,
            trace_mask: 0,
            exp,
            log,
        };
        field.trace_mask = (0..n)
            .filter(|&i| field.trace_slow(1 << i) == 1)
            .fold(0, |m, i| m | (1 << i));
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn order(&self) -> u32 {
        (1 << self.n) - 1
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..(1 << self.n)
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            0
        } else {
            self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
        }
    }

    /// Reference multiplication by shift-and-reduce, without tables.
    pub fn mul_direct(&self, x: u32, y: u32) -> u32 {
        poly_mulmod(x, y, self.modulus, self.n)
    }

    #[inline]
    pub fn square(&self, x: u32) -> u32 {
        self.mul(x, x)
    }

    pub fn inv(&self, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[x as usize];
        Ok(self.exp[((self.order() - l) % self.order()) as usize])
    }

    /// Inverse with the convention `0 ↦ 0`.
    #[inline]
    pub fn inv_or_zero(&self, x: u32) -> u32 {
        self.inv(x).unwrap_or(0)
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k` with `0^0 = 1`.
    pub fn pow(&self, x: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = self.order() as u64;
        let e = (self.log[x as usize] as u64 * (k % order)) % order;
        self.exp[e as usize]
    }

    /// `g^k` for the field's generator `g`.
    pub fn gen_pow(&self, k: u64) -> u32 {
        self.exp[(k % self.order() as u64) as usize]
    }

    /// Discrete logarithm to the base of the generator.
    pub fn log(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    /// Absolute trace as a linear functional: `Tr(x) = parity(x & mask)`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        (x & self.trace_mask).count_ones() & 1
    }

    fn trace_slow(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n {
            acc ^= y;
            y = self.mul_direct(y, y);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Relative trace `Tr^n_m(x) = Σ_{i < n/m} x^{2^{im}}` onto `GF(2^m)`.
    pub fn trace_to_subfield(&self, x: u32, m: u32) -> Result<u32> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::NotASubfield { n: self.n, m });
        }
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n / m {
            acc ^= y;
            for _ in 0..m {
                y = self.square(y);
            }
        }
        Ok(acc)
    }

    /// `{1, ω, ω²}` with `ω = g^{(2^n - 1)/3}`.
    pub fn cube_roots_of_unity(&self) -> Result<[u32; 3]> {
        if self.n % 2 != 0 {
            return Err(Error::OddDegree(self.n));
        }
        let k = (self.order() / 3) as u64;
        Ok([1, self.gen_pow(k), self.gen_pow(2 * k)])
    }

    /// The smallest encoding with absolute trace 1.
    pub fn trace_one_element(&self) -> u32 {
        self.trace_mask & self.trace_mask.wrapping_neg()
    }

    /// Whether `x` lies in the subfield `GF(2^m)`.
    pub fn in_subfield(&self, x: u32, m: u32) -> bool {
        self.n % m == 0 && self.pow(x, 1 << m) == x
    }
}
