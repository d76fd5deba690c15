//! Arithmetic in the binary fields GF(2^d), 1 <= d <= 24.
//!
//! Elements are stored in the polynomial basis `1, x, ..., x^{d-1}` of
//! `GF(2)[x] / (modulus)`. The integer index of an element is the
//! little-endian integer of its coordinates: bit `i` is the coefficient of
//! `x^i`. Every truth table, codebook row and sequence in this crate is laid
//! out in that order.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// Degrees up to this bound get discrete-log tables.
pub const LOG_TABLE_MAX_DEGREE: u32 = 20;

/// Default primitive polynomials, indexed by degree (index 0 unused).
/// Bit `i` is the coefficient of `x^i`. Entries are re-verified by
/// [`FieldCtx::new`]; the table is not trusted.
const DEFAULT_MODULI: [u32; 25] = [
    0,
    0x3,        // x + 1
    0x7,        // x^2 + x + 1
    0xb,        // x^3 + x + 1
    0x13,       // x^4 + x + 1
    0x25,       // x^5 + x^2 + 1
    0x43,       // x^6 + x + 1
    0x83,       // x^7 + x + 1
    0x11d,      // x^8 + x^4 + x^3 + x^2 + 1
    0x211,      // x^9 + x^4 + 1
    0x409,      // x^10 + x^3 + 1
    0x805,      // x^11 + x^2 + 1
    0x1053,     // x^12 + x^6 + x^4 + x + 1
    0x201b,     // x^13 + x^4 + x^3 + x + 1
    0x4443,     // x^14 + x^10 + x^6 + x + 1
    0x8003,     // x^15 + x + 1
    0x1100b,    // x^16 + x^12 + x^3 + x + 1
    0x20009,    // x^17 + x^3 + 1
    0x40081,    // x^18 + x^7 + 1
    0x80027,    // x^19 + x^5 + x^2 + x + 1
    0x100009,   // x^20 + x^3 + 1
    0x200005,   // x^21 + x^2 + 1
    0x400003,   // x^22 + x + 1
    0x800021,   // x^23 + x^5 + 1
    0x1000087,  // x^24 + x^7 + x^2 + x + 1
];

/// Returns the embedded default modulus for degree `d`.
pub fn default_modulus(d: u32) -> Result<u32> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    Ok(DEFAULT_MODULI[d as usize])
}

/// Shared default-modulus field GF(2^d), built once per degree.
pub fn default_field(d: u32) -> Result<Arc<FieldCtx>> {
    static CACHE: [OnceLock<Arc<FieldCtx>>; 25] = [const { OnceLock::new() }; 25];
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    let slot = &CACHE[d as usize];
    if let Some(f) = slot.get() {
        return Ok(f.clone());
    }
    let built = Arc::new(FieldCtx::new(d)?);
    Ok(slot.get_or_init(|| built).clone())
}

/// A field element, identified by its polynomial-basis index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({:#x})", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElem {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

#[derive(Clone)]
struct LogTables {
    /// `exp[k] = β^k` for `0 <= k < 2(2^d - 1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// An explicit binary field GF(2^d) with a validated modulus and a fixed
/// primitive element `β`.
///
/// Immutable after construction and cheap to share behind an `Arc`.
#[derive(Clone)]
pub struct FieldCtx {
    degree: u32,
    modulus: u32,
    generator: FieldElem,
    /// Absolute trace of each basis element `x^i`, packed as a mask.
    trace_mask: u32,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// Carry-less product of two polynomials of degree < 32.
#[inline]
pub fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `p` modulo `modulus` in `GF(2)[x]`.
#[inline]
fn poly_rem(mut p: u64, modulus: u32) -> u32 {
    let d = 31 - modulus.leading_zeros();
    let m = modulus as u64;
    while p >> d != 0 {
        let top = 63 - p.leading_zeros();
        p ^= m << (top - d);
    }
    p as u32
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            let da = 63 - a.leading_zeros();
            a ^= b << (da - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Distinct prime factors of `n` by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds GF(2^d) from the embedded default table, with `β = x`.
    ///
    /// A default entry that is reducible or not primitive is an error.
    pub fn new(d: u32) -> Result<FieldCtx> {
        let ctx = Self::with_modulus(d, default_modulus(d)?)?;
        if ctx.generator != ctx.x_element() {
            return Err(Error::NonPrimitiveDefault(ctx.modulus));
        }
        Ok(ctx)
    }

    /// Builds GF(2^d) with an explicit modulus (bit `i` = coefficient of `x^i`).
    ///
    /// The modulus must be irreducible. If `x` is not primitive modulo it, the
    /// smallest-index primitive element is used as the generator.
    pub fn with_modulus(d: u32, modulus: u32) -> Result<FieldCtx> {
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(d));
        }
        if 31 - modulus.leading_zeros() != d {
            return Err(Error::ModulusDegree { degree: d, modulus });
        }
        if !is_irreducible(modulus, d) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut ctx = FieldCtx {
            degree: d,
            modulus,
            generator: FieldElem::ONE,
            trace_mask: 0,
            tables: None,
        };
        let order = (1u64 << d) - 1;
        let x = if d == 1 { FieldElem::ONE } else { FieldElem(2) };
        let generator = if ctx.slow_order_is_full(x, order) {
            x
        } else {
            (2..(1u32 << d))
                .map(FieldElem)
                .find(|&g| ctx.slow_order_is_full(g, order))
                .ok_or(Error::NoPrimitiveElement(modulus))?
        };
        ctx.generator = generator;
        ctx.trace_mask = (0..d)
            .filter(|&i| ctx.slow_trace(FieldElem(1 << i)))
            .fold(0u32, |acc, i| acc | (1 << i));
        if d <= LOG_TABLE_MAX_DEGREE {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn x_element(&self) -> FieldElem {
        if self.degree == 1 {
            FieldElem::ONE
        } else {
            FieldElem(2)
        }
    }

    fn slow_order_is_full(&self, g: FieldElem, order: u64) -> bool {
        if g.is_zero() {
            return false;
        }
        if self.clmul_pow(g, order) != FieldElem::ONE {
            return false;
        }
        prime_factors(order)
            .into_iter()
            .all(|p| self.clmul_pow(g, order / p) != FieldElem::ONE)
    }

    fn clmul_pow(&self, mut base: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.clmul_mul(acc, base);
            }
            base = self.clmul_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn slow_trace(&self, x: FieldElem) -> bool {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.degree {
            acc += y;
            y = self.clmul_mul(y, y);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    fn build_tables(&self) -> LogTables {
        let order = (1usize << self.degree) - 1;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; order + 1];
        let mut y = FieldElem::ONE;
        for (k, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = y.0;
            log[y.0 as usize] = k as u32;
            y = self.clmul_mul(y, self.generator);
        }
        for k in order..2 * order {
            exp[k] = exp[k - order];
        }
        LogTables { exp, log }
    }

    #[inline]
    fn clmul_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(poly_rem(clmul(a.0, b.0), self.modulus))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The fixed primitive element `β`.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// Number of field elements, `2^d`.
    pub fn size(&self) -> usize {
        1usize << self.degree
    }

    /// Order of the multiplicative group, `2^d - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.size() as u32).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.size() as u32).map(FieldElem)
    }

    /// Validates an index as an element of this field.
    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if (index as u64) < (1u64 << self.degree) {
            Ok(FieldElem(index))
        } else {
            Err(Error::NotAnElement {
                index,
                degree: self.degree,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElem::ZERO
                } else {
                    let k = t.log[a.0 as usize] + t.log[b.0 as usize];
                    FieldElem(t.exp[k as usize])
                }
            }
            None => self.clmul_mul(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.tables {
            Some(t) => {
                let order = self.order() as u32;
                let k = (order - t.log[a.0 as usize]) % order;
                FieldElem(t.exp[k as usize])
            }
            None => self.pow(a, self.order() - 1),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        match &self.tables {
            Some(t) => {
                let order = self.order();
                let k = (t.log[a.0 as usize] as u64 * (e % order)) % order;
                FieldElem(t.exp[k as usize])
            }
            None => self.clmul_pow(a, e),
        }
    }

    /// `β^k` for any integer exponent, reduced modulo `2^d - 1`.
    pub fn gen_pow(&self, k: i64) -> FieldElem {
        let order = self.order() as i64;
        let e = k.rem_euclid(order) as u64;
        match &self.tables {
            Some(t) => FieldElem(t.exp[e as usize]),
            None => self.clmul_pow(self.generator, e),
        }
    }

    /// Discrete log to base `β` of a nonzero element.
    pub fn log(&self, a: FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroLog);
        }
        match &self.tables {
            Some(t) => Ok(t.log[a.0 as usize] as u64),
            None => {
                let mut y = FieldElem::ONE;
                for k in 0..self.order() {
                    if y == a {
                        return Ok(k);
                    }
                    y = self.clmul_mul(y, self.generator);
                }
                unreachable!("generator is primitive")
            }
        }
    }

    /// `x^{2^k}`.
    pub fn frobenius(&self, mut x: FieldElem, k: u32) -> FieldElem {
        for _ in 0..(k % self.degree) {
            x = self.square(x);
        }
        x
    }

    /// Absolute trace `tr_1^d(x)` as a bit.
    #[inline]
    pub fn abs_trace(&self, x: FieldElem) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Basis mask of the absolute trace: `tr(x) = parity(x & mask)`.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// `tr_r^d(x) = Σ_{i < d/r} x^{2^{ir}}`, an element of the subfield GF(2^r).
    pub fn trace(&self, r: u32, x: FieldElem) -> Result<FieldElem> {
        self.check_divisor(r)?;
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.degree / r {
            acc += y;
            y = self.frobenius(y, r);
        }
        Ok(acc)
    }

    fn check_divisor(&self, r: u32) -> Result<()> {
        if r == 0 || !self.degree.is_multiple_of(r) {
            return Err(Error::NotADivisor {
                r,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// True iff `x` lies in the subfield GF(2^r), i.e. `x^{2^r} = x`.
    pub fn in_subfield(&self, r: u32, x: FieldElem) -> Result<bool> {
        self.check_divisor(r)?;
        Ok(self.frobenius(x, r) == x)
    }

    /// All elements of the subfield GF(2^r), in increasing index order.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<FieldElem>> {
        self.check_divisor(r)?;
        let step = self.order() / ((1u64 << r) - 1);
        let mut out: Vec<FieldElem> = std::iter::once(FieldElem::ZERO)
            .chain((0..(1u64 << r) - 1).map(|k| self.gen_pow((k * step) as i64)))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Embeds an element of `small` into this field.
    ///
    /// The image of the small field's polynomial variable is the
    /// smallest-index root of the small modulus inside this field, so the
    /// embedding is a field homomorphism and deterministic.
    pub fn embed_from(&self, small: &FieldCtx, x: FieldElem) -> Result<FieldElem> {
        self.check_divisor(small.degree)?;
        small.elem(x.0)?;
        let root = self.modulus_root(small)?;
        let mut acc = FieldElem::ZERO;
        let mut power = FieldElem::ONE;
        for i in 0..small.degree {
            if (x.0 >> i) & 1 == 1 {
                acc += power;
            }
            power = self.mul(power, root);
        }
        Ok(acc)
    }

    fn modulus_root(&self, small: &FieldCtx) -> Result<FieldElem> {
        let candidates = self.subfield_elements(small.degree)?;
        candidates
            .into_iter()
            .find(|&y| {
                let mut acc = FieldElem::ZERO;
                let mut power = FieldElem::ONE;
                for i in 0..=small.degree {
                    if (small.modulus >> i) & 1 == 1 {
                        acc += power;
                    }
                    power = self.mul(power, y);
                }
                acc.is_zero()
            })
            .ok_or(Error::NotADivisor {
                r: small.degree,
                degree: self.degree,
            })
    }

    /// The `d x d` matrix over GF(2) of a GF(2)-linear map, as column images of
    /// the basis `x^i`.
    pub fn linear_map_columns(&self, f: impl Fn(FieldElem) -> FieldElem) -> Vec<u32> {
        (0..self.degree).map(|i| f(FieldElem(1 << i)).0).collect()
    }
}

/// Ben-Or style irreducibility test: `gcd(p, x^{2^i} - x) = 1` for `i <= d/2`.
fn is_irreducible(modulus: u32, d: u32) -> bool {
    if d == 1 {
        return true;
    }
    if modulus & 1 == 0 {
        return false;
    }
    // x^{2^i} mod p by repeated squaring in GF(2)[x]/(p).
    let mut xp: u32 = 2;
    for _ in 1..=d / 2 {
        xp = poly_rem(clmul(xp, xp), modulus);
        let diff = (xp ^ 2) as u64;
        if poly_gcd(modulus as u64, diff) != 1 {
            return false;
        }
    }
    true
}

/// Rank over GF(2) of a set of row vectors packed into `u32`s.
pub fn gf2_rank(rows: &[u32]) -> u32 {
    let mut rows: Vec<u32> = rows.to_vec();
    let mut rank = 0;
    for bit in (0..32).rev() {
        let pivot = rows
            .iter()
            .enumerate()
            .skip(rank)
            .find(|(_, &r)| (r >> bit) & 1 == 1)
            .map(|(i, _)| i);
        if let Some(p) = pivot {
            rows.swap(rank, p);
            let pr = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && (*r >> bit) & 1 == 1 {
                    *r ^= pr;
                }
            }
            rank += 1;
        }
    }
    rank as u32
}
