//! Truth-table Boolean functions, the fast Walsh transform, and bent /
//! semi-bent classification.
//!
//! Two domains are supported:
//!
//! * [`Domain::Field`]: functions on GF(2^d); index of `x` is its field index.
//! * [`Domain::FieldTimesBit`]: functions on GF(2^{m-1}) x GF(2); the point
//!   `(x1, x2)` has index `x2 * 2^{m-1} + index(x1)`.
//!
//! Walsh spectra use the trace inner product `tr(λ x)` (plus `ν x2` on the
//! product domain) and are indexed the same way, so `values[λ + ν 2^{m-1}]`
//! is `W_f(λ, ν)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf2::{gf2_rank, FieldCtx, FieldElem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Field(Arc<FieldCtx>),
    FieldTimesBit(Arc<FieldCtx>),
}

impl Domain {
    pub fn field(&self) -> &Arc<FieldCtx> {
        match self {
            Domain::Field(f) | Domain::FieldTimesBit(f) => f,
        }
    }

    pub fn n_vars(&self) -> u32 {
        match self {
            Domain::Field(f) => f.degree(),
            Domain::FieldTimesBit(f) => f.degree() + 1,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Domain::Field(_) => "field",
            Domain::FieldTimesBit(_) => "field_x_bit",
        }
    }
}

/// A Boolean function stored as a packed truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolFun {
    domain: Domain,
    words: Vec<u64>,
}

impl BoolFun {
    /// The constant zero function on `domain`.
    pub fn zero(domain: Domain) -> BoolFun {
        let len = 1usize << domain.n_vars();
        BoolFun {
            domain,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Builds a function from its value at every canonical index.
    pub fn from_index_fn(domain: Domain, f: impl Fn(usize) -> u8) -> BoolFun {
        let mut out = BoolFun::zero(domain);
        for i in 0..out.len() {
            if f(i) & 1 == 1 {
                out.words[i >> 6] |= 1 << (i & 63);
            }
        }
        out
    }

    /// `g(x)` on GF(2^d).
    pub fn on_field(ctx: Arc<FieldCtx>, g: impl Fn(FieldElem) -> u8) -> BoolFun {
        BoolFun::from_index_fn(Domain::Field(ctx), |i| g(FieldElem(i as u32)))
    }

    /// `f(x1, x2)` on GF(2^{m-1}) x GF(2), where `ctx` is GF(2^{m-1}).
    pub fn on_pair(ctx: Arc<FieldCtx>, f: impl Fn(FieldElem, u8) -> u8) -> BoolFun {
        let half = ctx.size();
        BoolFun::from_index_fn(Domain::FieldTimesBit(ctx), |i| {
            f(FieldElem((i % half) as u32), (i / half) as u8)
        })
    }

    /// Builds a function from explicit 0/1 values.
    pub fn from_bits(domain: Domain, bits: &[u8]) -> Result<BoolFun> {
        let expected = 1usize << domain.n_vars();
        if bits.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: bits.len(),
            });
        }
        Ok(BoolFun::from_index_fn(domain, |i| bits[i]))
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.domain.field()
    }

    pub fn n_vars(&self) -> u32 {
        self.domain.n_vars()
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> usize {
        1usize << self.n_vars()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        ((self.words[i >> 6] >> (i & 63)) & 1) as u8
    }

    /// Value at `x` on a field domain.
    #[inline]
    pub fn at(&self, x: FieldElem) -> u8 {
        self.get(x.0 as usize)
    }

    /// Value at `(x1, x2)` on a product domain.
    #[inline]
    pub fn at_pair(&self, x1: FieldElem, x2: u8) -> u8 {
        self.get(((x2 as usize) << self.field().degree()) | x1.0 as usize)
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// `(-1)^{f(x)}` for every index.
    pub fn signs(&self) -> Vec<i64> {
        (0..self.len()).map(|i| 1 - 2 * self.get(i) as i64).collect()
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn require_pair(&self) -> Result<&Arc<FieldCtx>> {
        match &self.domain {
            Domain::FieldTimesBit(f) => Ok(f),
            Domain::Field(_) => Err(Error::DomainMismatch(
                "operation needs a GF(2^{m-1}) x GF(2) domain".into(),
            )),
        }
    }

    fn require_field(&self) -> Result<&Arc<FieldCtx>> {
        match &self.domain {
            Domain::Field(f) => Ok(f),
            Domain::FieldTimesBit(_) => Err(Error::DomainMismatch(
                "operation needs a plain field domain".into(),
            )),
        }
    }

    /// Pointwise sum mod 2.
    pub fn xor(&self, other: &BoolFun) -> Result<BoolFun> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch("xor of functions on different domains".into()));
        }
        Ok(BoolFun {
            domain: self.domain.clone(),
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// `f + 1`.
    pub fn complement(&self) -> BoolFun {
        let mut out = BoolFun::from_index_fn(self.domain.clone(), |i| self.get(i) ^ 1);
        out.mask_tail();
        out
    }

    fn mask_tail(&mut self) {
        let len = self.len();
        if len < 64 {
            self.words[0] &= (1u64 << len) - 1;
        }
    }

    /// `(x1, x2) -> f(a x1, x2 + eps)`.
    pub fn scale_compose(&self, a: FieldElem, eps: u8) -> Result<BoolFun> {
        let ctx = self.require_pair()?.clone();
        let k = ctx.clone();
        Ok(BoolFun::on_pair(ctx, |x1, x2| self.at_pair(k.mul(a, x1), x2 ^ (eps & 1))))
    }

    /// `x -> g(a x)` on a field domain.
    pub fn scale(&self, a: FieldElem) -> Result<BoolFun> {
        let ctx = self.require_field()?.clone();
        let k = ctx.clone();
        Ok(BoolFun::on_field(ctx, |x| self.at(k.mul(a, x))))
    }

    /// Fixes `x2 = eps`, giving an (m-1)-variable function on GF(2^{m-1}).
    pub fn restrict(&self, eps: u8) -> Result<BoolFun> {
        let ctx = self.require_pair()?.clone();
        Ok(BoolFun::on_field(ctx, |x| self.at_pair(x, eps & 1)))
    }

    /// Walsh spectrum under the trace inner product.
    pub fn walsh(&self) -> WalshSpectrum {
        let raw = fwht(&self.signs());
        let ctx = self.field();
        let d = ctx.degree();
        let dual = trace_dual_map(ctx);
        let values = match &self.domain {
            Domain::Field(_) => dual.iter().map(|&u| raw[u as usize]).collect(),
            Domain::FieldTimesBit(_) => (0..2usize)
                .flat_map(|nu| dual.iter().map(move |&u| (u as usize) | (nu << d)))
                .map(|u| raw[u])
                .collect(),
        };
        WalshSpectrum::new(self.n_vars(), values)
    }

    /// Algebraic degree from the algebraic normal form.
    pub fn algebraic_degree(&self) -> u32 {
        let mut anf = self.bits();
        let n = anf.len();
        let mut h = 1;
        while h < n {
            for i in 0..n {
                if i & h != 0 {
                    anf[i] ^= anf[i ^ h];
                }
            }
            h <<= 1;
        }
        anf.iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| i.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// `dim ker B_f` of the bilinear form `B_f(x,y) = f(x+y)+f(x)+f(y)+f(0)`
    /// of a function of degree at most 2, by GF(2) rank.
    pub fn quadratic_kernel_dim(&self) -> Result<u32> {
        let deg = self.algebraic_degree();
        if deg > 2 {
            return Err(Error::NotQuadratic(deg));
        }
        let n = self.n_vars();
        let f0 = self.get(0);
        let rows: Vec<u32> = (0..n)
            .map(|i| {
                (0..n).fold(0u32, |row, j| {
                    let (x, y) = (1usize << i, 1usize << j);
                    let b = self.get(x ^ y) ^ self.get(x) ^ self.get(y) ^ f0;
                    row | ((b as u32) << j)
                })
            })
            .collect();
        Ok(n - gf2_rank(&rows))
    }

    /// Serializable form: `{n, domain, modulus, table}` with a hex-packed table.
    pub fn to_json(&self) -> BoolFunJson {
        let mut bytes = vec![0u8; self.len().div_ceil(8)];
        for i in 0..self.len() {
            bytes[i >> 3] |= self.get(i) << (i & 7);
        }
        BoolFunJson {
            n: self.n_vars(),
            domain: self.domain.tag().to_string(),
            modulus: self.field().modulus(),
            table: hex::encode(bytes),
        }
    }

    pub fn from_json(j: &BoolFunJson) -> Result<BoolFun> {
        let d = match j.domain.as_str() {
            "field" => j.n,
            "field_x_bit" => j.n.checked_sub(1).ok_or(Error::Parse("n = 0".into()))?,
            other => return Err(Error::Parse(format!("unknown domain tag {other:?}"))),
        };
        let ctx = Arc::new(FieldCtx::with_modulus(d, j.modulus)?);
        let domain = if j.domain == "field" {
            Domain::Field(ctx)
        } else {
            Domain::FieldTimesBit(ctx)
        };
        let bytes = hex::decode(&j.table).map_err(|e| Error::Parse(e.to_string()))?;
        let len = 1usize << j.n;
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::TableLength {
                expected: len,
                got: bytes.len() * 8,
            });
        }
        Ok(BoolFun::from_index_fn(domain, |i| (bytes[i >> 3] >> (i & 7)) & 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolFunJson {
    pub n: u32,
    pub domain: String,
    pub modulus: u32,
    pub table: String,
}

/// Unnormalized in-place Walsh-Hadamard butterfly on a `±1` (or any integer)
/// vector: `out[u] = Σ_x v[x] (-1)^{u·x}`.
pub fn fwht(v: &[i64]) -> Vec<i64> {
    let mut a = v.to_vec();
    let n = a.len();
    assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, t) = (*x + *y, *x - *y);
                *x = s;
                *y = t;
            }
        }
        h <<= 1;
    }
    a
}

/// Inverse of [`fwht`]: applies the butterfly and divides by the length.
pub fn inverse_fwht(v: &[i64]) -> Vec<i64> {
    let n = v.len() as i64;
    fwht(v).into_iter().map(|x| x / n).collect()
}

/// For every `λ`, the bit vector `u` with `u·x = tr(λ x)` for all `x`.
pub fn trace_dual_map(ctx: &FieldCtx) -> Vec<u32> {
    let d = ctx.degree();
    // columns[j] = T(x^j): bit i is tr(x^{i+j})
    let basis: Vec<u32> = (0..d)
        .map(|j| {
            (0..d).fold(0u32, |acc, i| {
                let prod = ctx.mul(FieldElem(1 << i), FieldElem(1 << j));
                acc | ((ctx.abs_trace(prod) as u32) << i)
            })
        })
        .collect();
    let mut out = vec![0u32; ctx.size()];
    for lam in 1..ctx.size() {
        let low = lam.trailing_zeros() as usize;
        out[lam] = out[lam & (lam - 1)] ^ basis[low];
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumClass {
    Bent,
    SemiBent,
    Neither,
}

/// Exact Walsh spectrum with its bent / semi-bent classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshSpectrum {
    pub n_vars: u32,
    pub values: Vec<i64>,
    pub class: SpectrumClass,
}

impl WalshSpectrum {
    pub fn new(n_vars: u32, values: Vec<i64>) -> WalshSpectrum {
        let class = classify(n_vars, &values);
        WalshSpectrum {
            n_vars,
            values,
            class,
        }
    }

    /// `W(λ, ν)` on a product-domain spectrum.
    pub fn at_pair(&self, lambda: FieldElem, nu: u8) -> i64 {
        self.values[((nu as usize) << (self.n_vars - 1)) | lambda.0 as usize]
    }

    pub fn at(&self, lambda: FieldElem) -> i64 {
        self.values[lambda.0 as usize]
    }

    /// `Σ W² = 2^{2n}`.
    pub fn parseval_holds(&self) -> bool {
        let sum: i128 = self.values.iter().map(|&v| (v as i128) * (v as i128)).sum();
        sum == 1i128 << (2 * self.n_vars)
    }

    /// Multiset of values as sorted `(value, count)` pairs.
    pub fn distribution(&self) -> Vec<(i64, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for &v in &self.values {
            *map.entry(v).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }
}

/// Exact bent / semi-bent membership of a spectrum of an `n`-variable function.
pub fn classify(n: u32, values: &[i64]) -> SpectrumClass {
    if n.is_multiple_of(2) {
        let mag = 1i64 << (n / 2);
        if values.iter().all(|v| v.abs() == mag) {
            return SpectrumClass::Bent;
        }
    } else {
        let mag = 1i64 << n.div_ceil(2);
        if values.iter().all(|&v| v == 0 || v.abs() == mag) {
            return SpectrumClass::SemiBent;
        }
    }
    SpectrumClass::Neither
}

/// `#J_{g,h}(ε1, ε2)`: the number of `μ` with `W_g(μ,0) = (-1)^{ε1} 2^{m/2}`
/// and `W_h(μ,1) = (-1)^{ε2} 2^{m/2}`, for spectra on GF(2^{m-1}) x GF(2).
pub fn j_count(g: &WalshSpectrum, h: &WalshSpectrum, eps1: u8, eps2: u8) -> usize {
    let m = g.n_vars;
    let mag = 1i64 << (m / 2);
    let target = |e: u8| if e & 1 == 0 { mag } else { -mag };
    let half = 1u32 << (m - 1);
    (0..half)
        .map(FieldElem)
        .filter(|&mu| g.at_pair(mu, 0) == target(eps1) && h.at_pair(mu, 1) == target(eps2))
        .count()
}
