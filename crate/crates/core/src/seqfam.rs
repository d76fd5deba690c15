//! Periodic sequence families from cyclic bent and cyclic semi-bent functions,
//! with exact correlation distributions.
//!
//! `β` is always the generator of the field context, so raw sequences depend
//! on the modulus while distributions do not.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codebook::mub_entry;
use crate::construct::{CyclicBent, CyclicSemiBent};
use crate::gauss::Gaussian;
use crate::gf2::FieldElem;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alphabet {
    Quaternary,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqLabel {
    Lambda(u32),
    LambdaNu(u32, u8),
    Infinity,
}

impl std::fmt::Display for SeqLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeqLabel::Lambda(l) => write!(f, "{l}"),
            SeqLabel::LambdaNu(l, n) => write!(f, "{l}:{n}"),
            SeqLabel::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFamily {
    alphabet: Alphabet,
    period: usize,
    members: Vec<(SeqLabel, Vec<Gaussian>)>,
}

/// Histogram of every `R_{s,s'}(τ)` over ordered member pairs and shifts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrDist {
    pub counts: BTreeMap<Gaussian, u64>,
    pub total: u64,
}

impl CorrDist {
    /// Builds a histogram, adding counts of repeated values.
    pub fn from_counts(entries: impl IntoIterator<Item = (Gaussian, u64)>) -> CorrDist {
        let mut counts = BTreeMap::new();
        for (v, c) in entries.into_iter().filter(|(_, c)| *c > 0) {
            *counts.entry(v).or_insert(0) += c;
        }
        let total = counts.values().sum();
        CorrDist { counts, total }
    }

    fn merge(mut self, other: CorrDist) -> CorrDist {
        for (v, c) in other.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, v: Gaussian) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// `[{"value": "a+bi", "count": c}, ...]` in value order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.counts
                .iter()
                .map(|(v, c)| serde_json::json!({ "value": v.to_string(), "count": c }))
                .collect(),
        )
    }
}

/// `R_{s0,s1}(τ) = Σ_t s0(t + τ) conj(s1(t))`.
pub fn correlate(s0: &[Gaussian], s1: &[Gaussian], tau: usize) -> Result<Gaussian> {
    if s0.len() != s1.len() {
        return Err(Error::PeriodMismatch(s0.len(), s1.len()));
    }
    if tau >= s0.len() {
        return Err(Error::ShiftOutOfRange { tau, period: s0.len() });
    }
    Ok(correlate_unchecked(s0, s1, tau))
}

fn correlate_unchecked(s0: &[Gaussian], s1: &[Gaussian], tau: usize) -> Gaussian {
    let k = s0.len();
    let (mut re, mut im) = (0i64, 0i64);
    for t in 0..k {
        let (x, y) = (s0[(t + tau) % k], s1[t]);
        re += x.re * y.re + x.im * y.im;
        im += x.im * y.re - x.re * y.im;
    }
    Gaussian::new(re, im)
}

fn sign(bit: u8) -> i64 {
    1 - 2 * (bit & 1) as i64
}

impl SequenceFamily {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn members(&self) -> &[(SeqLabel, Vec<Gaussian>)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sequence(&self, label: SeqLabel) -> Option<&[Gaussian]> {
        self.members.iter().find(|(l, _)| *l == label).map(|(_, s)| s.as_slice())
    }

    /// Correlations of members `i` and `j` at every shift.
    pub fn correlation_profile(&self, i: usize, j: usize) -> Vec<Gaussian> {
        let (a, b) = (&self.members[i].1, &self.members[j].1);
        (0..self.period).map(|tau| correlate_unchecked(a, b, tau)).collect()
    }

    /// Exact histogram over all `(s, s', τ)`, including in-phase peaks.
    pub fn full_distribution(&self) -> CorrDist {
        let n = self.len();
        (0..n * n)
            .into_par_iter()
            .map(|p| {
                let mut d = CorrDist::default();
                for v in self.correlation_profile(p / n, p % n) {
                    *d.counts.entry(v).or_insert(0) += 1;
                    d.total += 1;
                }
                d
            })
            .reduce(CorrDist::default, CorrDist::merge)
    }

    /// `R_max^2`: the largest `|R|^2` over all triples other than a sequence
    /// against itself at shift 0.
    pub fn r_max_sq(&self) -> i64 {
        self.nontrivial_values().iter().map(|v| v.norm()).max().unwrap_or(0)
    }

    /// Distinct correlation values over nontrivial triples.
    pub fn nontrivial_values(&self) -> Vec<Gaussian> {
        let n = self.len();
        let mut vals: Vec<Gaussian> = (0..n * n)
            .into_par_iter()
            .flat_map_iter(|p| {
                let (i, j) = (p / n, p % n);
                self.correlation_profile(i, j)
                    .into_iter()
                    .enumerate()
                    .filter(move |(tau, _)| !(i == j && *tau == 0))
                    .map(|(_, v)| v)
            })
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// One line per member: `label,s(0),s(1),...` with symbols `1, i, -1, -i`.
    pub fn to_csv(&self) -> String {
        let sym = |z: &Gaussian| match (z.re, z.im) {
            (1, 0) => "1",
            (-1, 0) => "-1",
            (0, 1) => "i",
            (0, -1) => "-i",
            _ => "?",
        };
        let mut out = String::new();
        for (label, s) in &self.members {
            let body: Vec<&str> = s.iter().map(sym).collect();
            let _ = writeln!(out, "{label},{}", body.join(","));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alphabet": self.alphabet,
            "period": self.period,
            "members": self.members.iter().map(|(l, s)| serde_json::json!({
                "label": l.to_string(),
                "values": s.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `s_∞(t) = (-1)^{tr(β^t)}` over GF(2^d).
fn m_sequence(ctx: &crate::gf2::FieldCtx) -> Vec<Gaussian> {
    (0..ctx.order())
        .map(|t| Gaussian::real(sign(ctx.abs_trace(ctx.gen_pow(t as i64)))))
        .collect()
}

/// Quaternary family `{s_λ : λ ∈ GF(2^{m-1})} ∪ {s_∞}` with
/// `s_λ(t) = A(1, β^t) (-1)^{tr(λ β^t)}`; period `2^{m-1} - 1`.
pub fn quaternary_family(f: &CyclicBent) -> Result<SequenceFamily> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ctx = f.field();
    let k = ctx.order() as usize;
    let powers: Vec<FieldElem> = (0..k).map(|t| ctx.gen_pow(t as i64)).collect();
    let base: Vec<Gaussian> = powers.iter().map(|&x| mub_entry(f, FieldElem::ONE, x)).collect();
    let mut members: Vec<(SeqLabel, Vec<Gaussian>)> = ctx
        .elements()
        .map(|lam| {
            let s = powers
                .iter()
                .zip(&base)
                .map(|(&x, &a)| a.scale(sign(ctx.abs_trace(ctx.mul(lam, x)))))
                .collect();
            (SeqLabel::Lambda(lam.0), s)
        })
        .collect();
    members.push((SeqLabel::Infinity, m_sequence(ctx)));
    Ok(SequenceFamily {
        alphabet: Alphabet::Quaternary,
        period: k,
        members,
    })
}

/// Binary interleaved family `{s_{λ,ν} : tr(λ) = 0, ν ∈ GF(2)}` of period
/// `2(2^{m-1} - 1)`. Requires `f` normalized with `f(x1,0) + f(x1,1) = tr(x1)`.
pub fn binary_family(f: &CyclicBent) -> Result<SequenceFamily> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ctx = f.field();
    let fun = f.function();
    if ctx.elements().any(|x| fun.at_pair(x, 0) ^ fun.at_pair(x, 1) != ctx.abs_trace(x)) {
        return Err(Error::TraceDifference);
    }
    let k0 = ctx.order() as usize;
    let m = f.m();
    let shift = ctx.gen_pow(1i64 << (m - 2));
    let mut members = Vec::new();
    for nu in 0..2u8 {
        for lam in ctx.elements().filter(|&l| ctx.abs_trace(l) == 0) {
            let mut s = Vec::with_capacity(2 * k0);
            for t0 in 0..k0 {
                let x = ctx.gen_pow(t0 as i64);
                let even = fun.at_pair(x, 0) ^ ctx.abs_trace(ctx.mul(lam, x));
                let y = ctx.mul(shift, x);
                let odd = fun.at_pair(y, 1) ^ ctx.abs_trace(ctx.mul(lam, y)) ^ nu;
                s.push(Gaussian::real(sign(even)));
                s.push(Gaussian::real(sign(odd)));
            }
            members.push((SeqLabel::LambdaNu(lam.0, nu), s));
        }
    }
    Ok(SequenceFamily {
        alphabet: Alphabet::Binary,
        period: 2 * k0,
        members,
    })
}

/// Binary family `{s_λ : λ ∈ GF(2^n)} ∪ {s_∞}` with
/// `s_λ(t) = (-1)^{g(β^t) + tr(λ β^t)}`. Requires `g(0) = 0`.
pub fn semibent_family(g: &CyclicSemiBent) -> Result<SequenceFamily> {
    let fun = g.function();
    if fun.at(FieldElem::ZERO) != 0 {
        return Err(Error::NotNormalized);
    }
    let ctx = g.field();
    let k = ctx.order() as usize;
    let powers: Vec<FieldElem> = (0..k).map(|t| ctx.gen_pow(t as i64)).collect();
    let mut members: Vec<(SeqLabel, Vec<Gaussian>)> = ctx
        .elements()
        .map(|lam| {
            let s = powers
                .iter()
                .map(|&x| Gaussian::real(sign(fun.at(x) ^ ctx.abs_trace(ctx.mul(lam, x)))))
                .collect();
            (SeqLabel::Lambda(lam.0), s)
        })
        .collect();
    members.push((SeqLabel::Infinity, m_sequence(ctx)));
    Ok(SequenceFamily {
        alphabet: Alphabet::Binary,
        period: k,
        members,
    })
}

fn pow2(e: u32) -> u64 {
    1u64 << e
}

/// Closed-form correlation distribution of the quaternary family, `m` even.
pub fn quaternary_table(m: u32) -> Result<CorrDist> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::BadEvenM(m));
    }
    let h = 1i64 << ((m - 2) / 2);
    let base = pow2(2 * m - 2) - 2;
    let (plus, minus) = (pow2(m - 3) + pow2((m - 4) / 2), pow2(m - 3) - pow2((m - 4) / 2));
    let g = |re: i64, im: i64| Gaussian::new(re, im);
    Ok(CorrDist::from_counts([
        (g((1i64 << (m - 1)) - 1, 0), pow2(m - 1) + 1),
        (g(-1, 0), base),
        (g(-1 + h, h), base * plus),
        (g(-1 + h, -h), base * plus),
        (g(-1 - h, h), base * minus),
        (g(-1 - h, -h), base * minus),
    ]))
}

/// Closed-form correlation distribution of the interleaved binary family.
pub fn binary_table(m: u32) -> Result<CorrDist> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(Error::BadEvenM(m));
    }
    let r = 1i64 << (m / 2);
    let q = pow2(m - 1) - 2;
    let (plus, minus) = (pow2(m - 3) + pow2((m - 4) / 2), pow2(m - 3) - pow2((m - 4) / 2));
    let g = Gaussian::real;
    Ok(CorrDist::from_counts([
        (g(2 * ((1i64 << (m - 1)) - 1)), pow2(m - 1)),
        (g(-2), pow2(m - 1) * (3 * pow2(m - 3) - 1)),
        (g(0), pow2(2 * m - 2)),
        (g(2), pow2(2 * m - 4)),
        (g(r - 2), 3 * pow2(m - 2) * q * plus),
        (g(r), pow2(2 * m - 3) * q),
        (g(r + 2), pow2(m - 2) * q * minus),
        (g(-r - 2), 3 * pow2(m - 2) * q * minus),
        (g(-r), pow2(2 * m - 3) * q),
        (g(-r + 2), pow2(m - 2) * q * plus),
    ]))
}

/// Closed-form correlation distribution of the semi-bent family, `n` odd.
pub fn semibent_table(n: u32) -> Result<CorrDist> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadOddN(n));
    }
    let r = 1i64 << n.div_ceil(2);
    let base = pow2(2 * n) - 2;
    let g = Gaussian::real;
    Ok(CorrDist::from_counts([
        (g((1i64 << n) - 1), pow2(n) + 1),
        (g(-1), pow2(n + 1) * (pow2(n) - 1) + (pow2(n) - 2) * (pow2(2 * n - 1) + 1)),
        (g(r - 1), base * (pow2(n - 2) + pow2((n - 3) / 2))),
        (g(-r - 1), base * (pow2(n - 2) - pow2((n - 3) / 2))),
    ]))
}
