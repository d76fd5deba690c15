//! Linearized polynomials `L(x) = Σ a_i x^{2^i}` over GF(2^m), their adjoints,
//! the twisted polynomial ring GF(2^m)[x; σ] with `x a = a^2 x`, and the
//! characterization of quadratic cyclic semi-bent functions `tr(x L(x))`.
//!
//! Composition of linearized polynomials corresponds to multiplication of
//! their associated skew polynomials, so `deg gcrd(l, x^m - 1)` is the
//! GF(2)-dimension of `ker L`. Both that route and a direct GF(2) rank
//! computation are available; callers choose one with [`KernelPath`].

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfun::BoolFun;
use crate::gf2::{gf2_rank, FieldCtx, FieldElem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl LinPoly {
    pub fn new(ctx: Arc<FieldCtx>, coeffs: Vec<FieldElem>) -> Result<LinPoly> {
        let degree = ctx.degree();
        if coeffs.len() != degree as usize {
            return Err(Error::LinPolyLength { degree, got: coeffs.len() });
        }
        for c in &coeffs {
            ctx.elem(c.0)?;
        }
        Ok(LinPoly { ctx, coeffs })
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> LinPoly {
        let m = ctx.degree() as usize;
        LinPoly { ctx, coeffs: vec![FieldElem::ZERO; m] }
    }

    /// `x^{2^i}` (exponent taken mod `m`).
    pub fn monomial(ctx: Arc<FieldCtx>, i: u32) -> LinPoly {
        let m = ctx.degree();
        let mut p = LinPoly::zero(ctx);
        p.coeffs[(i % m) as usize] = FieldElem::ONE;
        p
    }

    /// Parses `x^4 + b3*x^2 + x` style input, where `b<k>` is `β^k` and a bare
    /// integer is an element index. Exponents must be powers of two.
    pub fn parse(ctx: Arc<FieldCtx>, s: &str) -> Result<LinPoly> {
        let bad = |why: &str| Error::Parse(format!("{why} in linearized polynomial {s:?}"));
        let mut p = LinPoly::zero(ctx.clone());
        let m = ctx.degree();
        for term in s.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, mono) = match term.rsplit_once('*') {
                Some((c, x)) => (Some(c.trim()), x.trim()),
                None if term.starts_with('x') => (None, term),
                None => return Err(bad("missing x")),
            };
            let exp: u64 = match mono {
                "x" => 1,
                _ => mono
                    .strip_prefix("x^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| bad("bad monomial"))?,
            };
            if !exp.is_power_of_two() {
                return Err(bad("exponent is not a power of two"));
            }
            let i = exp.trailing_zeros() % m;
            let c = match coef {
                None => FieldElem::ONE,
                Some(c) => match c.strip_prefix('b') {
                    Some(k) => ctx.gen_pow(k.parse().map_err(|_| bad("bad power of b"))?),
                    None => ctx.elem(c.parse().map_err(|_| bad("bad coefficient"))?)?,
                },
            };
            p.coeffs[i as usize] += c;
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn m(&self) -> u32 {
        self.ctx.degree()
    }

    pub fn evaluate(&self, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut pow = x;
        for &a in &self.coeffs {
            acc += self.ctx.mul(a, pow);
            pow = self.ctx.square(pow);
        }
        acc
    }

    /// `q(x) = tr(x L(x))`.
    pub fn quad_form(&self) -> BoolFun {
        BoolFun::on_field(self.ctx.clone(), |x| self.ctx.abs_trace(self.ctx.mul(x, self.evaluate(x))))
    }

    /// `L*` with `tr(x L(y)) = tr(y L*(x))`:
    /// `L*(x) = a_0 x + Σ_{i≥1} a_{m-i}^{2^i} x^{2^i}`.
    pub fn adjoint(&self) -> LinPoly {
        let m = self.coeffs.len();
        let coeffs = (0..m)
            .map(|i| {
                if i == 0 {
                    self.coeffs[0]
                } else {
                    self.ctx.frobenius(self.coeffs[m - i], i as u32)
                }
            })
            .collect();
        LinPoly { ctx: self.ctx.clone(), coeffs }
    }

    pub fn add(&self, other: &LinPoly) -> LinPoly {
        LinPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `L + L*`, the linear map of the bilinear form of `tr(x L(x))`.
    pub fn symmetrized(&self) -> LinPoly {
        self.add(&self.adjoint())
    }

    /// `dim ker L` by GF(2) rank of its matrix.
    pub fn kernel_dim(&self) -> u32 {
        kernel_dim_of(&self.ctx, |x| self.evaluate(x))
    }

    /// The associated skew polynomial `Σ a_i x^i`.
    pub fn assoc(&self) -> SkewPoly {
        SkewPoly::new(self.ctx.clone(), self.coeffs.clone())
    }

    /// `φ_{L,τ}` with coefficients `(a_i + a_{m-i}^{2^i})(1 + τ^{2^i + 1})`.
    pub fn phi_l_tau(&self, tau: FieldElem) -> Result<LinPoly> {
        if tau.0 <= 1 {
            return Err(Error::TauInPrimeField);
        }
        let s = self.symmetrized();
        let coeffs = s
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let t = self.ctx.mul(self.ctx.frobenius(tau, i as u32), tau);
                self.ctx.mul(c, FieldElem::ONE + t)
            })
            .collect();
        Ok(LinPoly { ctx: self.ctx.clone(), coeffs })
    }

    /// `L(x) + L*(x) + τ (L(τx) + L*(τx))`, evaluated directly.
    pub fn phi_eval(&self, tau: FieldElem, x: FieldElem) -> FieldElem {
        let s = self.symmetrized();
        s.evaluate(x) + self.ctx.mul(tau, s.evaluate(self.ctx.mul(tau, x)))
    }

    /// `[index(a_0), ..., index(a_{m-1})]`.
    pub fn to_indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn from_indices(ctx: Arc<FieldCtx>, idx: &[u32]) -> Result<LinPoly> {
        LinPoly::new(ctx, idx.iter().map(|&i| FieldElem(i)).collect())
    }
}

impl std::fmt::Display for LinPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = if i == 0 { "x".to_string() } else { format!("x^{}", 1u64 << i) };
                if *c == FieldElem::ONE {
                    mono
                } else {
                    format!("{}*{mono}", c.0)
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// GF(2)-dimension of the kernel of a linear map on the field.
pub fn kernel_dim_of(ctx: &FieldCtx, map: impl Fn(FieldElem) -> FieldElem) -> u32 {
    ctx.degree() - gf2_rank(&ctx.linear_map_columns(map))
}

/// Polynomial in the twisted ring GF(2^m)[x; σ], `(a x^i)(b x^j) = a b^{2^i} x^{i+j}`.
/// Stored trimmed: the last coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl SkewPoly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { ctx, coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(ctx: Arc<FieldCtx>, n: usize) -> SkewPoly {
        let mut c = vec![FieldElem::ZERO; n + 1];
        c[0] = FieldElem::ONE;
        c[n] += FieldElem::ONE;
        SkewPoly::new(ctx, c)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> FieldElem {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::new(self.ctx.clone(), vec![]);
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += self.ctx.mul(a, self.ctx.frobenius(b, i as u32));
            }
        }
        SkewPoly::new(self.ctx.clone(), out)
    }

    /// `(q, r)` with `self = q * d + r` and `deg r < deg d`.
    pub fn right_div_rem(&self, d: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        if d.is_zero() {
            return Err(Error::SkewDivByZero);
        }
        let ctx = &self.ctx;
        let k = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![FieldElem::ZERO; r.len().saturating_sub(k).max(1)];
        let dl = d.lead();
        while r.len() > k && !r.is_empty() {
            let n = r.len() - 1;
            let lead = r[n];
            if lead.is_zero() {
                r.pop();
                continue;
            }
            let shift = n - k;
            // s x^shift * d has leading coefficient s * dl^{2^shift}
            let s = ctx.div(lead, ctx.frobenius(dl, shift as u32))?;
            q[shift] += s;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[shift + j] += ctx.mul(s, ctx.frobenius(b, shift as u32));
            }
            debug_assert!(r[n].is_zero());
            r.pop();
        }
        Ok((SkewPoly::new(ctx.clone(), q), SkewPoly::new(ctx.clone(), r)))
    }

    /// Left-multiplies by the inverse of the leading coefficient.
    pub fn monic(&self) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ctx.inv(self.lead()).expect("nonzero lead");
        SkewPoly::new(self.ctx.clone(), self.coeffs.iter().map(|&c| self.ctx.mul(inv, c)).collect())
    }

    /// Monic greatest common right divisor by the right Euclidean algorithm.
    pub fn gcrd(&self, other: &SkewPoly) -> Result<SkewPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::SkewDivByZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.right_div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

pub fn skew_gcrd(p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly> {
    p.gcrd(q)
}

/// How kernel dimensions are computed for a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum KernelPath {
    /// `deg gcrd(l, x^m - 1)` in the twisted ring.
    #[default]
    Gcrd,
    /// GF(2) rank of the matrix of the map.
    Rank,
}

fn kdim(p: &LinPoly, path: KernelPath) -> u32 {
    match path {
        KernelPath::Rank => p.kernel_dim(),
        KernelPath::Gcrd => {
            let xm = SkewPoly::x_pow_minus_one(p.ctx.clone(), p.m() as usize);
            p.assoc().gcrd(&xm).expect("x^m - 1 is nonzero").degree().unwrap_or(0) as u32
        }
    }
}

/// Verdict of the quadratic cyclic semi-bent test on `tr(x L(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadReport {
    pub m: u32,
    pub path: KernelPath,
    /// Kernel dimension of `L + L*`.
    pub base_kernel_dim: u32,
    /// First `τ` (by index) with kernel dimension of `φ_{l,τ}` other than 1.
    pub failing_tau: Option<(u32, u32)>,
    pub taus_checked: u64,
    pub cyclic_semibent: bool,
}

/// `tr(x L(x))` is cyclic semi-bent iff `L + L*` and every `φ_{l,τ}`,
/// `τ ∉ GF(2)`, have one-dimensional kernels. `m` must be odd.
pub fn is_cyclic_semibent_quadratic(l: &LinPoly, path: KernelPath) -> Result<QuadReport> {
    let m = l.m();
    if m.is_multiple_of(2) {
        return Err(Error::EvenDegree(m));
    }
    let base = kdim(&l.symmetrized(), path);
    let mut report = QuadReport {
        m,
        path,
        base_kernel_dim: base,
        failing_tau: None,
        taus_checked: 0,
        cyclic_semibent: false,
    };
    if base != 1 {
        return Ok(report);
    }
    let size = l.ctx.size() as u32;
    let fail = (2..size).into_par_iter().find_map_first(|t| {
        let phi = l.phi_l_tau(FieldElem(t)).expect("tau outside GF(2)");
        let d = kdim(&phi, path);
        (d != 1).then_some((t, d))
    });
    report.taus_checked = match fail {
        Some((t, _)) => (t - 1) as u64,
        None => (size - 2) as u64,
    };
    report.failing_tau = fail;
    report.cyclic_semibent = fail.is_none();
    Ok(report)
}
