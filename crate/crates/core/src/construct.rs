//! Cyclic bent functions on GF(2^{m-1}) x GF(2) and cyclic semi-bent
//! functions on GF(2^n): the divisor-chain construction, the Kerdock
//! function, and exhaustive or reduced certification of the cyclic property.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfun::{fwht, BoolFun, Domain, SpectrumClass};
use crate::gf2::{default_field, FieldCtx, FieldElem};
use crate::{Error, Result};

/// Largest `m` certified in full mode unless overridden.
pub const FULL_MODE_CAP: u32 = 8;
/// Largest `m` certified in reduced mode unless overridden.
pub const REDUCED_MODE_CAP: u32 = 16;

fn check_even_m(m: u32) -> Result<()> {
    if m < 4 || !m.is_multiple_of(2) || m - 1 > crate::gf2::MAX_DEGREE {
        return Err(Error::BadEvenM(m));
    }
    Ok(())
}

/// Parameters `(e_0, ..., e_l; γ_0, ..., γ_{l-1})` of a divisor-chain cyclic
/// bent function on GF(2^{m-1}) x GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    m: u32,
    e: Vec<u32>,
    gamma: Vec<FieldElem>,
}

impl ChainSpec {
    /// Validates a chain: `e_0 = 1`, `e_l = m-1`, strictly increasing with
    /// `e_i | e_{i+1}`, `γ_j ∈ GF(2^{e_j})`, and every partial sum of the `γ`
    /// nonzero. Elements are indices in the default GF(2^{m-1}).
    pub fn new(m: u32, e: Vec<u32>, gamma: Vec<FieldElem>) -> Result<ChainSpec> {
        check_even_m(m)?;
        let bad = |msg: String| Err(Error::InvalidChain(msg));
        if e.len() < 2 {
            return bad(format!("need at least e_0 and e_l, got {e:?}"));
        }
        if e[0] != 1 {
            return bad(format!("e_0 must be 1, got {}", e[0]));
        }
        if *e.last().unwrap() != m - 1 {
            return bad(format!("e_l must be m-1 = {}, got {}", m - 1, e.last().unwrap()));
        }
        for w in e.windows(2) {
            if w[0] == w[1] || w[1] % w[0] != 0 {
                return bad(format!("{} -> {} is not a proper divisor step", w[0], w[1]));
            }
        }
        if gamma.len() != e.len() - 1 {
            return bad(format!("expected {} gamma values, got {}", e.len() - 1, gamma.len()));
        }
        let ctx = default_field(m - 1)?;
        let mut partial = FieldElem::ZERO;
        for (j, (&g, &ej)) in gamma.iter().zip(&e).enumerate() {
            ctx.elem(g.0)?;
            if !ctx.in_subfield(ej, g)? {
                return bad(format!("gamma_{j} = {g} is not in GF(2^{ej})"));
            }
            partial += g;
            if partial.is_zero() {
                return bad(format!("partial sum gamma_0 + ... + gamma_{j} is zero"));
            }
        }
        Ok(ChainSpec { m, e, gamma })
    }

    /// The length-one chain `(1, m-1)` with `γ_0 = 1`.
    pub fn kerdock(m: u32) -> Result<ChainSpec> {
        ChainSpec::new(m, vec![1, m - 1], vec![FieldElem::ONE])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn gamma(&self) -> &[FieldElem] {
        &self.gamma
    }

    /// Cofactors `f_i = (m-1) / e_i`.
    pub fn cofactors(&self) -> Vec<u32> {
        self.e.iter().map(|&ei| (self.m - 1) / ei).collect()
    }

    /// Every divisor chain from 1 to `m-1`.
    pub fn divisor_chains(m: u32) -> Vec<Vec<u32>> {
        fn extend(cur: Vec<u32>, top: u32, out: &mut Vec<Vec<u32>>) {
            let last = *cur.last().unwrap();
            if last == top {
                out.push(cur);
                return;
            }
            for next in (last + 1..=top).filter(|n| n % last == 0 && top.is_multiple_of(*n)) {
                let mut c = cur.clone();
                c.push(next);
                extend(c, top, out);
            }
        }
        let mut out = Vec::new();
        extend(vec![1], m - 1, &mut out);
        out
    }

    /// Every admissible `(e, γ)` for `m`.
    pub fn enumerate(m: u32) -> Result<Vec<ChainSpec>> {
        check_even_m(m)?;
        let ctx = default_field(m - 1)?;
        let mut out = Vec::new();
        for e in ChainSpec::divisor_chains(m) {
            let l = e.len() - 1;
            let mut stack: Vec<(Vec<FieldElem>, FieldElem)> = vec![(vec![], FieldElem::ZERO)];
            for &ej in e.iter().take(l) {
                let sub = ctx.subfield_elements(ej)?;
                stack = stack
                    .into_iter()
                    .flat_map(|(g, sum)| {
                        sub.iter()
                            .filter(move |&&c| c != sum)
                            .map(move |&c| {
                                let mut g2 = g.clone();
                                g2.push(c);
                                (g2, sum + c)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            for (g, _) in stack {
                out.push(ChainSpec::new(m, e.clone(), g)?);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ChainSpecJson {
        ChainSpecJson {
            m: self.m,
            e: self.e.clone(),
            gamma: self.gamma.iter().map(|g| g.0).collect(),
        }
    }

    pub fn from_json(j: &ChainSpecJson) -> Result<ChainSpec> {
        ChainSpec::new(j.m, j.e.clone(), j.gamma.iter().map(|&g| FieldElem(g)).collect())
    }
}

/// `{m, e: [...], gamma: [indices]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpecJson {
    pub m: u32,
    pub e: Vec<u32>,
    pub gamma: Vec<u32>,
}

/// `Q_j(y) = tr(Σ_{i=1}^{(f_j-1)/2} y^{2^{i e_j} + 1})`, by direct monomial evaluation.
fn q_term(ctx: &FieldCtx, ej: u32, fj: u32, y: FieldElem) -> u8 {
    let mut inner = FieldElem::ZERO;
    let mut frob = y;
    for _ in 1..=(fj - 1) / 2 {
        frob = ctx.frobenius(frob, ej);
        inner += ctx.mul(frob, y);
    }
    ctx.abs_trace(inner)
}

/// `f(x1, x2) = Σ_j Q_j(γ_j x1) + x2 tr(x1)`.
pub fn chain_fn(spec: &ChainSpec) -> Result<BoolFun> {
    let ctx = default_field(spec.m - 1)?;
    let cof = spec.cofactors();
    let k = ctx.clone();
    let quad: Vec<u8> = (0..ctx.size() as u32)
        .into_par_iter()
        .map(|x| {
            let x1 = FieldElem(x);
            spec.gamma
                .iter()
                .zip(&spec.e)
                .zip(&cof)
                .fold(0u8, |acc, ((&g, &ej), &fj)| acc ^ q_term(&k, ej, fj, k.mul(g, x1)))
        })
        .collect();
    Ok(BoolFun::on_pair(ctx.clone(), |x1, x2| {
        quad[x1.0 as usize] ^ (x2 & ctx.abs_trace(x1))
    }))
}

/// `K(x1, x2) = Σ_{i=1}^{(m-2)/2} tr(x1^{2^i + 1}) + x2 tr(x1)`.
pub fn kerdock_fn(m: u32) -> Result<BoolFun> {
    check_even_m(m)?;
    let ctx = default_field(m - 1)?;
    let k = ctx.clone();
    Ok(BoolFun::on_pair(ctx, |x1, x2| {
        let mut t = 0u8;
        for i in 1..=(m - 2) / 2 {
            t ^= k.abs_trace(k.pow(x1, (1u64 << i) + 1));
        }
        t ^ (x2 & k.abs_trace(x1))
    }))
}

/// `f'(x1, x2) = f(x1, x2) + f(0, x2)`.
pub fn normalize_zero(f: &BoolFun) -> Result<BoolFun> {
    let ctx = pair_field(f)?;
    Ok(BoolFun::on_pair(ctx, |x1, x2| {
        f.at_pair(x1, x2) ^ f.at_pair(FieldElem::ZERO, x2)
    }))
}

fn pair_field(f: &BoolFun) -> Result<Arc<FieldCtx>> {
    match f.domain() {
        Domain::FieldTimesBit(c) => Ok(c.clone()),
        Domain::Field(_) => Err(Error::DomainMismatch(
            "expected a function on GF(2^{m-1}) x GF(2)".into(),
        )),
    }
}

fn plain_field(g: &BoolFun) -> Result<Arc<FieldCtx>> {
    match g.domain() {
        Domain::Field(c) => Ok(c.clone()),
        Domain::FieldTimesBit(_) => Err(Error::DomainMismatch(
            "expected a function on GF(2^n)".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertKind {
    Bent,
    SemiBent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum VerifyMode {
    Full,
    #[default]
    Reduced,
}

/// A failing case: `f(a x1, x2) + f(b x1, x2 + eps)` (or `g(ax) + g(bx)`) is
/// not bent (semi-bent). `a = b = 0` flags the base function itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: u32,
    pub b: u32,
    pub eps: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCertificate {
    pub kind: CertKind,
    pub mode: VerifyMode,
    /// Cases checked and passed, in canonical order, before any failure.
    pub verified_pairs: u64,
    pub witness_of_failure: Option<Witness>,
}

impl CyclicCertificate {
    pub fn passed(&self) -> bool {
        self.witness_of_failure.is_none()
    }
}

/// Caller-controlled certification limits.
#[derive(Clone, Copy, Debug, Default)]
pub struct CertifyOptions {
    /// Lift the default `m` caps.
    pub allow_large: bool,
}

fn check_cap(m: u32, mode: VerifyMode, opts: CertifyOptions) -> Result<()> {
    let (cap, name) = match mode {
        VerifyMode::Full => (FULL_MODE_CAP, "full"),
        VerifyMode::Reduced => (REDUCED_MODE_CAP, "reduced"),
    };
    if m > cap && !opts.allow_large {
        return Err(Error::CertificationCap { m, mode: name, cap });
    }
    Ok(())
}

/// Sign table of `x -> f(a x1, x2)` for every `a`, as ±1 vectors.
fn scaled_tables(f: &BoolFun, ctx: &FieldCtx) -> Vec<Vec<u8>> {
    ctx.elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            (0..f.len())
                .map(|i| {
                    let x1 = FieldElem((i % ctx.size()) as u32);
                    let x2 = (i / ctx.size()) as u8;
                    f.at_pair(ctx.mul(a, x1), x2)
                })
                .collect()
        })
        .collect()
}

fn is_bent_bits(bits: impl Iterator<Item = u8>, n: u32) -> bool {
    let signs: Vec<i64> = bits.map(|b| 1 - 2 * b as i64).collect();
    let mag = 1i64 << (n / 2);
    fwht(&signs).iter().all(|v| v.abs() == mag)
}

fn is_semibent_bits(bits: impl Iterator<Item = u8>, n: u32) -> bool {
    let signs: Vec<i64> = bits.map(|b| 1 - 2 * b as i64).collect();
    let mag = 1i64 << n.div_ceil(2);
    fwht(&signs).iter().all(|&v| v == 0 || v.abs() == mag)
}

fn certificate(kind: CertKind, mode: VerifyMode, cases: &[Witness], first_fail: Option<usize>) -> CyclicCertificate {
    CyclicCertificate {
        kind,
        mode,
        verified_pairs: first_fail.unwrap_or(cases.len()) as u64,
        witness_of_failure: first_fail.map(|i| cases[i]),
    }
}

/// Checks `f(a x1, x2) + f(b x1, x2 + ε)` bent for every ordered `a != b` and `ε`.
pub fn is_cyclic_bent_full(f: &BoolFun, opts: CertifyOptions) -> Result<CyclicCertificate> {
    let ctx = pair_field(f)?;
    let m = f.n_vars();
    check_cap(m, VerifyMode::Full, opts)?;
    let half = ctx.size();
    let tables = scaled_tables(f, &ctx);
    let cases: Vec<Witness> = (0..half as u32)
        .flat_map(|a| {
            (0..half as u32)
                .filter(move |&b| b != a)
                .flat_map(move |b| (0..2u8).map(move |eps| Witness { a, b, eps }))
        })
        .collect();
    let first_fail = cases.par_iter().position_first(|w| {
        let (ta, tb) = (&tables[w.a as usize], &tables[w.b as usize]);
        // f(b x1, x2 + 1) flips the x2 half of the table
        let flip = (w.eps as usize) * half;
        !is_bent_bits((0..2 * half).map(|i| ta[i] ^ tb[i ^ flip]), m)
    });
    Ok(certificate(CertKind::Bent, VerifyMode::Full, &cases, first_fail))
}

/// `(λ, ν)` with `f(x1, x2+1) + f(x1, x2) = tr(λ x1) + ν`, if any.
pub fn affine_difference(f: &BoolFun) -> Result<Option<(FieldElem, u8)>> {
    let ctx = pair_field(f)?;
    let diff = BoolFun::on_field(ctx.clone(), |x| f.at_pair(x, 0) ^ f.at_pair(x, 1));
    let w = diff.walsh();
    let full = ctx.size() as i64;
    Ok(w.values
        .iter()
        .position(|v| v.abs() == full)
        .map(|lam| (FieldElem(lam as u32), u8::from(w.values[lam] < 0))))
}

/// Verifies `f` bent and `f(x1,x2) + f(b x1, x2)` bent for all `b ∉ GF(2)`,
/// after checking the affine-difference hypothesis under which this is
/// equivalent to the full definition.
pub fn is_cyclic_bent_reduced(f: &BoolFun, opts: CertifyOptions) -> Result<CyclicCertificate> {
    let ctx = pair_field(f)?;
    let m = f.n_vars();
    check_cap(m, VerifyMode::Reduced, opts)?;
    if affine_difference(f)?.is_none() {
        return Err(Error::HypothesisViolation);
    }
    let half = ctx.size();
    let mut cases = vec![Witness { a: 0, b: 0, eps: 0 }];
    cases.extend((2..half as u32).map(|b| Witness { a: 1, b, eps: 0 }));
    let first_fail = cases.par_iter().position_first(|w| {
        if w.b == 0 {
            return !is_bent_bits((0..2 * half).map(|i| f.get(i)), m);
        }
        let b = FieldElem(w.b);
        !is_bent_bits(
            (0..2 * half).map(|i| {
                let x1 = FieldElem((i % half) as u32);
                let x2 = (i / half) as u8;
                f.get(i) ^ f.at_pair(ctx.mul(b, x1), x2)
            }),
            m,
        )
    });
    Ok(certificate(CertKind::Bent, VerifyMode::Reduced, &cases, first_fail))
}

/// Checks `g(ax) + g(bx)` semi-bent for all `a != b` (full) or, using
/// homogeneity, `g` and `g(x) + g(cx)` for `c ∉ GF(2)` (reduced).
pub fn is_cyclic_semibent(g: &BoolFun, mode: VerifyMode, opts: CertifyOptions) -> Result<CyclicCertificate> {
    let ctx = plain_field(g)?;
    let n = ctx.degree();
    if n % 2 == 0 || n < 3 {
        return Err(Error::BadOddN(n));
    }
    // caps are stated for m = n + 1
    check_cap(n + 1, mode, opts)?;
    let size = ctx.size();
    let scaled = |a: FieldElem| -> Vec<u8> {
        (0..size).map(|x| g.at(ctx.mul(a, FieldElem(x as u32)))).collect()
    };
    let (cases, first_fail) = match mode {
        VerifyMode::Full => {
            let tables: Vec<Vec<u8>> = ctx
                .elements()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&a| scaled(a))
                .collect();
            let cases: Vec<Witness> = (0..size as u32)
                .flat_map(|a| {
                    (0..size as u32)
                        .filter(move |&b| b != a)
                        .map(move |b| Witness { a, b, eps: 0 })
                })
                .collect();
            let ff = cases.par_iter().position_first(|w| {
                let (ta, tb) = (&tables[w.a as usize], &tables[w.b as usize]);
                !is_semibent_bits((0..size).map(|i| ta[i] ^ tb[i]), n)
            });
            (cases, ff)
        }
        VerifyMode::Reduced => {
            let mut cases = vec![Witness { a: 0, b: 0, eps: 0 }];
            cases.extend((2..size as u32).map(|b| Witness { a: 1, b, eps: 0 }));
            let ff = cases.par_iter().position_first(|w| {
                if w.b == 0 {
                    return !is_semibent_bits((0..size).map(|i| g.get(i)), n);
                }
                let tb = scaled(FieldElem(w.b));
                !is_semibent_bits((0..size).map(|i| g.get(i) ^ tb[i]), n)
            });
            (cases, ff)
        }
    };
    Ok(certificate(CertKind::SemiBent, mode, &cases, first_fail))
}

/// A function certified cyclic bent. Constructors that consume cyclic bent
/// functions take this type.
#[derive(Clone, Debug)]
pub struct CyclicBent {
    f: BoolFun,
    certificate: CyclicCertificate,
}

impl CyclicBent {
    /// Certifies `f`, preferring reduced mode when its hypothesis holds.
    pub fn certify(f: BoolFun, opts: CertifyOptions) -> Result<CyclicBent> {
        pair_field(&f)?;
        if !f.n_vars().is_multiple_of(2) {
            return Err(Error::BadEvenM(f.n_vars()));
        }
        let certificate = if affine_difference(&f)?.is_some() {
            is_cyclic_bent_reduced(&f, opts)?
        } else {
            is_cyclic_bent_full(&f, opts)?
        };
        if !certificate.passed() {
            return Err(Error::NotCertified(Box::new(certificate)));
        }
        Ok(CyclicBent { f, certificate })
    }

    /// Certifies with an explicitly chosen mode.
    pub fn certify_with(f: BoolFun, mode: VerifyMode, opts: CertifyOptions) -> Result<CyclicBent> {
        let certificate = match mode {
            VerifyMode::Full => is_cyclic_bent_full(&f, opts)?,
            VerifyMode::Reduced => is_cyclic_bent_reduced(&f, opts)?,
        };
        if !certificate.passed() {
            return Err(Error::NotCertified(Box::new(certificate)));
        }
        Ok(CyclicBent { f, certificate })
    }

    /// Builds and certifies the chain function of `spec`.
    pub fn from_chain(spec: &ChainSpec) -> Result<CyclicBent> {
        CyclicBent::certify(chain_fn(spec)?, CertifyOptions::default())
    }

    pub fn function(&self) -> &BoolFun {
        &self.f
    }

    pub fn certificate(&self) -> &CyclicCertificate {
        &self.certificate
    }

    /// `m`, the number of variables.
    pub fn m(&self) -> u32 {
        self.f.n_vars()
    }

    /// GF(2^{m-1}).
    pub fn field(&self) -> &Arc<FieldCtx> {
        self.f.field()
    }

    /// The zero-normalized version; still cyclic bent.
    pub fn normalized(&self) -> CyclicBent {
        CyclicBent {
            f: normalize_zero(&self.f).expect("product domain"),
            certificate: self.certificate.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.f.at_pair(FieldElem::ZERO, 0) == 0 && self.f.at_pair(FieldElem::ZERO, 1) == 0
    }
}

fn check_eps(ctx: &FieldCtx, eps: &[u8]) -> Result<()> {
    let expected = ctx.size() - 1;
    if eps.len() != expected {
        return Err(Error::EpsLength {
            expected,
            got: eps.len(),
        });
    }
    Ok(())
}

/// `{f(a x1, x2 + ε_a) : a ∈ GF(2^{m-1})*}`; `eps[i]` is `ε_a` for `a = i + 1`.
pub fn bent_family(f: &CyclicBent, eps: &[u8]) -> Result<Vec<BoolFun>> {
    check_eps(f.field(), eps)?;
    f.field()
        .nonzero_elements()
        .zip(eps)
        .map(|(a, &e)| f.function().scale_compose(a, e))
        .collect()
}

/// `x1 -> f(x1, ε)`, a cyclic semi-bent function on GF(2^{m-1}).
pub fn derive_semibent(f: &CyclicBent, eps: u8) -> BoolFun {
    f.function().restrict(eps).expect("product domain")
}

/// `{f(a x1, ε_a) : a ∈ GF(2^{m-1})*}`.
pub fn semibent_family(f: &CyclicBent, eps: &[u8]) -> Result<Vec<BoolFun>> {
    check_eps(f.field(), eps)?;
    f.field()
        .nonzero_elements()
        .zip(eps)
        .map(|(a, &e)| f.function().scale_compose(a, e).and_then(|h| h.restrict(0)))
        .collect()
}

/// A function certified cyclic semi-bent on GF(2^n), `n` odd.
#[derive(Clone, Debug)]
pub struct CyclicSemiBent {
    g: BoolFun,
    certificate: CyclicCertificate,
}

impl CyclicSemiBent {
    pub fn certify(g: BoolFun, opts: CertifyOptions) -> Result<CyclicSemiBent> {
        CyclicSemiBent::certify_with(g, VerifyMode::Reduced, opts)
    }

    pub fn certify_with(g: BoolFun, mode: VerifyMode, opts: CertifyOptions) -> Result<CyclicSemiBent> {
        let certificate = is_cyclic_semibent(&g, mode, opts)?;
        if !certificate.passed() {
            return Err(Error::NotCertified(Box::new(certificate)));
        }
        Ok(CyclicSemiBent { g, certificate })
    }

    pub fn function(&self) -> &BoolFun {
        &self.g
    }

    pub fn certificate(&self) -> &CyclicCertificate {
        &self.certificate
    }

    pub fn n(&self) -> u32 {
        self.g.n_vars()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.g.field()
    }
}

/// `tr_1^n(x^{2^i + 1})` on the default GF(2^n).
pub fn gold_fn(n: u32, i: u32) -> Result<BoolFun> {
    let ctx = default_field(n)?;
    let k = ctx.clone();
    Ok(BoolFun::on_field(ctx, move |x| k.abs_trace(k.pow(x, (1u64 << i) + 1))))
}

/// Walsh classification helper used by tests and reports.
pub fn class_of(f: &BoolFun) -> SpectrumClass {
    f.walsh().class
}
