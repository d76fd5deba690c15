//! Real and complex codebooks and complete sets of mutually unbiased bases.
//!
//! Vectors are stored unnormalized with Gaussian-integer entries and a
//! per-row squared norm; the unit vector is `row / sqrt(norm_sq)`. Every
//! correlation is an exact rational.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{CyclicBent, CyclicSemiBent};
use crate::gauss::Gaussian;
use crate::gf2::{FieldCtx, FieldElem};
use crate::{Error, Result};

/// Squared real Levenshtein bound `(3N - K^2 - 2K) / ((N - K)(K + 2))`,
/// defined for `N > K(K+1)/2`.
pub fn levenshtein_real_sq(n: i64, k: i64) -> Result<Rational64> {
    if k < 1 || 2 * n <= k * (k + 1) {
        return Err(Error::BoundInapplicable { n, k });
    }
    Ok(Rational64::new(3 * n - k * k - 2 * k, (n - k) * (k + 2)))
}

/// Squared complex Levenshtein bound `(2N - K^2 - K) / ((N - K)(K + 1))`,
/// defined for `N > K^2`.
pub fn levenshtein_complex_sq(n: i64, k: i64) -> Result<Rational64> {
    if k < 1 || n <= k * k {
        return Err(Error::BoundInapplicable { n, k });
    }
    Ok(Rational64::new(2 * n - k * k - k, (n - k) * (k + 1)))
}

/// A set of `N` vectors in `C^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    k: usize,
    rows: Vec<Vec<Gaussian>>,
    norm_sq: Vec<i64>,
}

impl Codebook {
    /// Builds a codebook, checking that each row has the stated squared norm.
    pub fn new(k: usize, rows: Vec<Vec<Gaussian>>, norm_sq: Vec<i64>) -> Result<Codebook> {
        if rows.len() != norm_sq.len() {
            return Err(Error::TableLength {
                expected: rows.len(),
                got: norm_sq.len(),
            });
        }
        for (r, &ns) in rows.iter().zip(&norm_sq) {
            if r.len() != k {
                return Err(Error::TableLength { expected: k, got: r.len() });
            }
            let actual: i64 = r.iter().map(|z| z.norm()).sum();
            if actual != ns || ns == 0 {
                return Err(Error::Parse(format!("row norm {actual} does not match {ns}")));
            }
        }
        Ok(Codebook { k, rows, norm_sq })
    }

    /// Number of vectors, `N`.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Dimension, `K`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<Gaussian>] {
        &self.rows
    }

    pub fn norm_sq(&self) -> &[i64] {
        &self.norm_sq
    }

    /// Unnormalized inner product `<c_i, c_j> = Σ c_i[t] conj(c_j[t])`.
    pub fn inner(&self, i: usize, j: usize) -> Gaussian {
        inner(&self.rows[i], &self.rows[j])
    }

    /// `|<c_i, c_j>|^2` for the normalized vectors.
    pub fn corr_sq(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.inner(i, j).norm(), self.norm_sq[i] * self.norm_sq[j])
    }

    /// Number of distinct normalized entry values over all rows.
    pub fn alphabet_size(&self) -> usize {
        let mut seen = BTreeSet::new();
        for (r, &ns) in self.rows.iter().zip(&self.norm_sq) {
            for z in r {
                // entries here are 0 or units, so (z, norm) identifies z / sqrt(norm)
                seen.insert(if *z == Gaussian::ZERO { (0, 0, 1) } else { (z.re, z.im, ns) });
            }
        }
        seen.len()
    }

    /// True when every entry is real.
    pub fn is_real(&self) -> bool {
        self.rows.iter().flatten().all(|z| z.im == 0)
    }

    /// `I_max^2 = max_{i<j} |<c_i, c_j>|^2`.
    pub fn imax_sq(&self) -> Result<Rational64> {
        if self.n() < 2 {
            return Err(Error::TooFewRows);
        }
        let best = (0..self.n())
            .into_par_iter()
            .filter_map(|i| {
                (i + 1..self.n())
                    .map(|j| (self.inner(i, j).norm() as i128, (self.norm_sq[i] * self.norm_sq[j]) as i128))
                    .reduce(|a, b| if a.0 * b.1 >= b.0 * a.1 { a } else { b })
            })
            .reduce_with(|a, b| if a.0 * b.1 >= b.0 * a.1 { a } else { b })
            .expect("at least one pair");
        Ok(Rational64::new(best.0 as i64, best.1 as i64))
    }

    pub fn to_json(&self) -> CodebookJson {
        CodebookJson {
            n: self.n(),
            k: self.k,
            norm_sq: self.norm_sq.clone(),
            rows: self.rows.clone(),
        }
    }

    pub fn from_json(j: &CodebookJson) -> Result<Codebook> {
        if j.rows.len() != j.n {
            return Err(Error::TableLength { expected: j.n, got: j.rows.len() });
        }
        Codebook::new(j.k, j.rows.clone(), j.norm_sq.clone())
    }

    /// One line per vector, normalized entries with 12 significant digits.
    /// Complex entries are written as `a+bi`.
    pub fn to_csv(&self) -> String {
        let real = self.is_real();
        let mut out = String::new();
        for (r, &ns) in self.rows.iter().zip(&self.norm_sq) {
            let s = (ns as f64).sqrt();
            let cells: Vec<String> = r
                .iter()
                .map(|z| {
                    let (re, im) = (z.re as f64 / s, z.im as f64 / s);
                    if real {
                        fmt_float(re)
                    } else {
                        format!("{}{}{}i", fmt_float(re), if im < 0.0 { "" } else { "+" }, fmt_float(im))
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

fn fmt_float(x: f64) -> String {
    format!("{:.11e}", x).parse::<f64>().map(|v| v.to_string()).unwrap_or_default()
}

/// `{n, k, norm_sq: [...], rows: [["a+bi", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookJson {
    pub n: usize,
    pub k: usize,
    pub norm_sq: Vec<i64>,
    pub rows: Vec<Vec<Gaussian>>,
}

#[inline]
fn inner(a: &[Gaussian], b: &[Gaussian]) -> Gaussian {
    let (mut re, mut im) = (0i64, 0i64);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.im * y.re - x.re * y.im;
    }
    Gaussian::new(re, im)
}

fn sign(bit: u8) -> i64 {
    1 - 2 * (bit & 1) as i64
}

fn standard_basis(k: usize) -> Vec<Vec<Gaussian>> {
    (0..k)
        .map(|i| {
            let mut r = vec![Gaussian::ZERO; k];
            r[i] = Gaussian::ONE;
            r
        })
        .collect()
}

/// Linear-phase rows `(-1)^{tr(λ x1) + ν x2 + h(x1, x2)}` over all `(λ, ν)`
/// in canonical order; `pair` selects the product domain.
fn hadamard_rows(ctx: &FieldCtx, pair: bool, h: impl Fn(usize) -> u8 + Sync) -> Vec<Vec<Gaussian>> {
    let half = ctx.size();
    let len = if pair { 2 * half } else { half };
    let tr_tab: Vec<u8> = (0..half as u32).map(|x| ctx.abs_trace(FieldElem(x))).collect();
    let base: Vec<u8> = (0..len).map(&h).collect();
    (0..len)
        .into_par_iter()
        .map(|row| {
            let lam = FieldElem((row % half) as u32);
            let nu = (row / half) as u8;
            (0..len)
                .map(|i| {
                    let x1 = FieldElem((i % half) as u32);
                    let x2 = (i / half) as u8;
                    let e = base[i] ^ tr_tab[ctx.mul(lam, x1).0 as usize] ^ (nu & x2);
                    Gaussian::real(sign(e))
                })
                .collect()
        })
        .collect()
}

/// The real `(2^{2m-1} + 2^m, 2^m)` codebook: standard basis, the Hadamard
/// basis `B_0`, and for each `a ≠ 0` the basis of
/// `(-1)^{f(a x1, x2 + ε_a) + tr(λ x1) + ν x2}`. `eps[i]` is `ε_a` for `a = i + 1`.
pub fn build_real_codebook(f: &CyclicBent, eps: &[u8]) -> Result<Codebook> {
    let ctx = f.field();
    if eps.len() != ctx.size() - 1 {
        return Err(Error::EpsLength { expected: ctx.size() - 1, got: eps.len() });
    }
    let k = 2 * ctx.size();
    let mut rows = standard_basis(k);
    let mut norm_sq = vec![1; k];
    let fun = f.function();
    let half = ctx.size();
    rows.extend(hadamard_rows(ctx, true, |_| 0));
    for (a, &e) in ctx.nonzero_elements().zip(eps) {
        rows.extend(hadamard_rows(ctx, true, |i| {
            fun.at_pair(ctx.mul(a, FieldElem((i % half) as u32)), (i / half) as u8 ^ e)
        }));
    }
    norm_sq.resize(rows.len(), k as i64);
    Codebook::new(k, rows, norm_sq)
}

/// The real `(2^{2n} + 2^n, 2^n)` codebook of a cyclic semi-bent `g`: standard
/// basis, `B_0`, and `(-1)^{g(a x) + tr(λ x)}` for `a ≠ 0`.
pub fn build_semibent_codebook(g: &CyclicSemiBent) -> Result<Codebook> {
    let ctx = g.field();
    let fun = g.function();
    semibent_style_codebook(ctx, |a, x| fun.at(ctx.mul(a, x)))
}

/// The same layout built from a cyclic bent `f` through the restrictions
/// `f(a x1, ε_a)`.
pub fn build_restricted_codebook(f: &CyclicBent, eps: &[u8]) -> Result<Codebook> {
    let ctx = f.field();
    if eps.len() != ctx.size() - 1 {
        return Err(Error::EpsLength { expected: ctx.size() - 1, got: eps.len() });
    }
    let fun = f.function();
    semibent_style_codebook(ctx, |a, x| fun.at_pair(ctx.mul(a, x), eps[a.0 as usize - 1]))
}

fn semibent_style_codebook(ctx: &FieldCtx, h: impl Fn(FieldElem, FieldElem) -> u8 + Sync) -> Result<Codebook> {
    let k = ctx.size();
    let mut rows = standard_basis(k);
    rows.extend(hadamard_rows(ctx, false, |_| 0));
    for a in ctx.nonzero_elements() {
        rows.extend(hadamard_rows(ctx, false, |i| h(a, FieldElem(i as u32))));
    }
    let mut norm_sq = vec![1; k];
    norm_sq.resize(rows.len(), k as i64);
    Codebook::new(k, rows, norm_sq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    Infinity,
    Field(u32),
}

/// One orthonormal basis of a [`MubSet`], unnormalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub label: BasisLabel,
    pub vectors: Vec<Vec<Gaussian>>,
    pub norm_sq: i64,
}

/// `2^{m-1} + 1` bases of `C^{2^{m-1}}`: the standard basis and
/// `B_a = {A(a, x) (-1)^{tr(λ x)}}_λ` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Basis>,
}

/// Outcome of checking every inner product in a [`MubSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MubReport {
    pub bases: usize,
    pub dim: usize,
    pub orthonormal: bool,
    pub unbiased: bool,
    pub vector_pairs_checked: u64,
}

impl MubReport {
    pub fn passed(&self) -> bool {
        self.orthonormal && self.unbiased && self.bases == self.dim + 1
    }
}

/// `A(a, x) = ϱ0 (-1)^{f(ax,0)} + ϱ1 (-1)^{f(ax,1)}` with `ϱ0 = (1+i)/2`,
/// `ϱ1 = (1-i)/2`; always one of `±1, ±i`.
pub fn mub_entry(f: &CyclicBent, a: FieldElem, x: FieldElem) -> Gaussian {
    let ax = f.field().mul(a, x);
    let s0 = sign(f.function().at_pair(ax, 0));
    let s1 = sign(f.function().at_pair(ax, 1));
    Gaussian::new((s0 + s1) / 2, (s0 - s1) / 2)
}

pub fn build_mub(f: &CyclicBent) -> MubSet {
    let ctx = f.field();
    let dim = ctx.size();
    let tr_tab: Vec<i64> = (0..dim as u32).map(|x| sign(ctx.abs_trace(FieldElem(x)))).collect();
    let mut bases = vec![Basis {
        label: BasisLabel::Infinity,
        vectors: standard_basis(dim),
        norm_sq: 1,
    }];
    let field_bases: Vec<Basis> = ctx
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| {
            let col: Vec<Gaussian> = ctx.elements().map(|x| mub_entry(f, a, x)).collect();
            let vectors = ctx
                .elements()
                .map(|lam| {
                    ctx.elements()
                        .map(|x| col[x.0 as usize].scale(tr_tab[ctx.mul(lam, x).0 as usize]))
                        .collect()
                })
                .collect();
            Basis {
                label: BasisLabel::Field(a.0),
                vectors,
                norm_sq: dim as i64,
            }
        })
        .collect();
    bases.extend(field_bases);
    MubSet { dim, bases }
}

impl MubSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    /// Checks orthonormality of each basis and `|<u, v>|^2 = 1/dim` across bases.
    pub fn verify(&self) -> MubReport {
        let nb = self.bases.len();
        let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (i..nb).map(move |j| (i, j))).collect();
        let dim = self.dim as i64;
        let (ortho, unbiased, count) = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (bi, bj) = (&self.bases[i], &self.bases[j]);
                let mut ok = true;
                let mut count = 0u64;
                for (p, u) in bi.vectors.iter().enumerate() {
                    for (q, v) in bj.vectors.iter().enumerate() {
                        count += 1;
                        let z = inner(u, v).norm();
                        let denom = bi.norm_sq * bj.norm_sq;
                        ok &= if i != j {
                            z * dim == denom
                        } else if p == q {
                            z == denom
                        } else {
                            z == 0
                        };
                    }
                }
                if i == j {
                    (ok, true, count)
                } else {
                    (true, ok, count)
                }
            })
            .reduce(|| (true, true, 0), |a, b| (a.0 && b.0, a.1 && b.1, a.2 + b.2));
        MubReport {
            bases: nb,
            dim: self.dim,
            orthonormal: ortho,
            unbiased,
            vector_pairs_checked: count,
        }
    }

    /// All vectors of all bases as one `(dim(dim+1), dim)` codebook.
    pub fn to_codebook(&self) -> Codebook {
        let mut rows = Vec::new();
        let mut norm_sq = Vec::new();
        for b in &self.bases {
            rows.extend(b.vectors.iter().cloned());
            norm_sq.extend(std::iter::repeat_n(b.norm_sq, b.vectors.len()));
        }
        Codebook::new(self.dim, rows, norm_sq).expect("bases have consistent norms")
    }
}

pub fn mub_to_codebook(mubs: &MubSet) -> Codebook {
    mubs.to_codebook()
}
