//! Nonlinear binary codes `C(f)` and `C(g)`, their weight and distance
//! distributions, and support designs checked by direct coverage counting.

use std::collections::{BTreeMap, HashSet};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{CyclicBent, CyclicSemiBent};
use crate::gf2::FieldElem;
use crate::{rational_string, Error, Result};

/// Codeword label: `(a, λ, u, v)`; `v` is always 0 for `C(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeLabel {
    pub a: u32,
    pub lambda: u32,
    pub u: u8,
    pub v: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonlinearCode {
    length: usize,
    words: Vec<Vec<u64>>,
    labels: Vec<CodeLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionReport {
    pub weight: BTreeMap<usize, u64>,
    /// `B_i = |{(c, c') : d(c, c') = i}| / M`.
    pub distance: BTreeMap<usize, Rational64>,
}

impl DistributionReport {
    /// Minimum nonzero distance.
    pub fn min_distance(&self) -> Option<usize> {
        self.distance.keys().copied().find(|&d| d > 0)
    }

    /// True when every `B_i` is an integer equal to `A_i`.
    pub fn distance_equals_weight(&self) -> bool {
        self.distance.len() == self.weight.len()
            && self
                .distance
                .iter()
                .all(|(i, b)| self.weight.get(i).map(|&a| Rational64::from_integer(a as i64)) == Some(*b))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight.iter().map(|(i, a)| (i.to_string(), serde_json::json!(a))).collect::<serde_json::Map<_, _>>(),
            "distance": self.distance.iter().map(|(i, b)| (i.to_string(), serde_json::json!(rational_string(b)))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Outcome of a support-design check. On failure `witness` holds a
/// `t`-subset whose coverage differs from that of `{0, ..., t-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignResult {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub lambda: Option<u64>,
    pub witness: Option<(Vec<usize>, u64)>,
}

impl DesignResult {
    pub fn is_design(&self) -> bool {
        self.lambda.is_some()
    }

    /// `λ C(v, t) = b C(k, t)`.
    pub fn identity_holds(&self) -> bool {
        self.lambda
            .is_some_and(|l| l as u128 * binom(self.v, self.t) == self.b as u128 * binom(self.k, self.t))
    }
}

/// Closed-form weight distribution of `C(f)` for an `m`-variable cyclic bent `f`.
pub fn code_f_weights(m: u32) -> Result<BTreeMap<usize, u64>> {
    if m < 4 || !m.is_multiple_of(2) || m > 30 {
        return Err(Error::BadEvenM(m));
    }
    let v = 1usize << m;
    let (h, s) = (v / 2, 1usize << ((m - 2) / 2));
    let side = (1u64 << m) * ((1u64 << (m - 1)) - 1);
    Ok(BTreeMap::from([(0, 1), (h - s, side), (h, (1u64 << (m + 1)) - 2), (h + s, side), (v, 1)]))
}

/// Closed-form weight distribution of `C(g)` for a cyclic semi-bent `g` on GF(2^n).
pub fn code_g_weights(n: u32) -> Result<BTreeMap<usize, u64>> {
    if n < 3 || n.is_multiple_of(2) || n > 29 {
        return Err(Error::BadOddN(n));
    }
    let v = 1usize << n;
    let (h, s) = (v / 2, 1usize << ((n - 1) / 2));
    let side = (1u64 << (2 * n - 1)) - (1u64 << (n - 1));
    let mid = (1u64 << (2 * n)) + (1u64 << n) - 2;
    Ok(BTreeMap::from([(0, 1), (h - s, side), (h, mid), (h + s, side), (v, 1)]))
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pack(bits: impl Iterator<Item = u8>, len: usize) -> Vec<u64> {
    let mut w = vec![0u64; len.div_ceil(64)];
    for (i, b) in bits.enumerate() {
        w[i >> 6] |= ((b & 1) as u64) << (i & 63);
    }
    w
}

fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn xor_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}

/// `C(f) = {f(a x1, x2) + tr(λ x1) + u x2 + v}`, a `(2^m, 2^{2m})` code.
pub fn build_code_f(f: &CyclicBent) -> Result<NonlinearCode> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let ctx = f.field();
    let fun = f.function();
    let half = ctx.size();
    let len = 2 * half;
    let tr: Vec<u8> = (0..half as u32).map(|x| ctx.abs_trace(FieldElem(x))).collect();
    let mut labels = Vec::with_capacity(len * len);
    for a in ctx.elements() {
        for lambda in ctx.elements() {
            for u in 0..2u8 {
                for v in 0..2u8 {
                    labels.push(CodeLabel { a: a.0, lambda: lambda.0, u, v });
                }
            }
        }
    }
    let words = labels
        .par_iter()
        .map(|l| {
            let (a, lam) = (FieldElem(l.a), FieldElem(l.lambda));
            pack(
                (0..len).map(|i| {
                    let x1 = FieldElem((i % half) as u32);
                    let x2 = (i / half) as u8;
                    fun.at_pair(ctx.mul(a, x1), x2) ^ tr[ctx.mul(lam, x1).0 as usize] ^ (l.u & x2) ^ l.v
                }),
                len,
            )
        })
        .collect();
    Ok(NonlinearCode { length: len, words, labels })
}

/// `C(g) = {g(a x) + tr(λ x) + u}`, a `(2^n, 2^{2n+1})` code.
pub fn build_code_g(g: &CyclicSemiBent) -> Result<NonlinearCode> {
    let fun = g.function();
    if fun.at(FieldElem::ZERO) != 0 {
        return Err(Error::NotNormalized);
    }
    let ctx = g.field();
    let len = ctx.size();
    let tr: Vec<u8> = (0..len as u32).map(|x| ctx.abs_trace(FieldElem(x))).collect();
    let mut labels = Vec::with_capacity(2 * len * len);
    for a in ctx.elements() {
        for lambda in ctx.elements() {
            for u in 0..2u8 {
                labels.push(CodeLabel { a: a.0, lambda: lambda.0, u, v: 0 });
            }
        }
    }
    let words = labels
        .par_iter()
        .map(|l| {
            let (a, lam) = (FieldElem(l.a), FieldElem(l.lambda));
            pack(
                ctx.elements().map(|x| fun.at(ctx.mul(a, x)) ^ tr[ctx.mul(lam, x).0 as usize] ^ l.u),
                len,
            )
        })
        .collect();
    Ok(NonlinearCode { length: len, words, labels })
}

impl NonlinearCode {
    /// Builds a code from explicit 0/1 codewords with sequential labels.
    pub fn from_words(length: usize, words: &[Vec<u8>]) -> Result<NonlinearCode> {
        for w in words {
            if w.len() != length {
                return Err(Error::TableLength { expected: length, got: w.len() });
            }
        }
        Ok(NonlinearCode {
            length,
            words: words.iter().map(|w| pack(w.iter().copied(), length)).collect(),
            labels: (0..words.len() as u32)
                .map(|i| CodeLabel { a: i, lambda: 0, u: 0, v: 0 })
                .collect(),
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of codewords, `M`.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn labels(&self) -> &[CodeLabel] {
        &self.labels
    }

    pub fn codeword(&self, i: usize) -> Vec<u8> {
        (0..self.length).map(|j| ((self.words[i][j >> 6] >> (j & 63)) & 1) as u8).collect()
    }

    /// True when no two labels give the same codeword.
    pub fn all_distinct(&self) -> bool {
        let set: HashSet<&Vec<u64>> = self.words.iter().collect();
        set.len() == self.words.len()
    }

    /// True when the complement of every codeword is a codeword.
    pub fn is_self_complementary(&self) -> bool {
        let set: HashSet<&Vec<u64>> = self.words.iter().collect();
        let ones = pack(std::iter::repeat_n(1, self.length), self.length);
        self.words.par_iter().all(|w| {
            let c: Vec<u64> = w.iter().zip(&ones).map(|(a, b)| a ^ b).collect();
            set.contains(&c)
        })
    }

    /// True when the codeword set is closed under addition.
    pub fn is_linear(&self) -> bool {
        let set: HashSet<&Vec<u64>> = self.words.iter().collect();
        let zero = vec![0u64; self.length.div_ceil(64)];
        set.contains(&zero)
            && self.words.par_iter().enumerate().all(|(i, a)| {
                self.words[i + 1..].iter().all(|b| {
                    let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| x ^ y).collect();
                    set.contains(&s)
                })
            })
    }

    /// Exact weight distribution and full pairwise distance distribution.
    pub fn distributions(&self) -> DistributionReport {
        let mut weight = BTreeMap::new();
        for w in &self.words {
            *weight.entry(popcount(w)).or_insert(0u64) += 1;
        }
        let pairs = self
            .words
            .par_iter()
            .map(|a| {
                let mut h = vec![0u64; self.length + 1];
                for b in &self.words {
                    h[xor_popcount(a, b)] += 1;
                }
                h
            })
            .reduce(
                || vec![0u64; self.length + 1],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                    x
                },
            );
        let m = self.size() as i64;
        let distance = pairs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(i, c)| (i, Rational64::new(c as i64, m)))
            .collect();
        DistributionReport { weight, distance }
    }

    /// Distinct supports of the codewords of weight `k`.
    pub fn blocks(&self, k: usize) -> Vec<Vec<usize>> {
        let mut seen: Vec<&Vec<u64>> = self.words.iter().filter(|w| popcount(w) == k).collect();
        seen.sort();
        seen.dedup();
        seen.into_iter()
            .map(|w| (0..self.length).filter(|&j| (w[j >> 6] >> (j & 63)) & 1 == 1).collect())
            .collect()
    }

    /// Checks whether the weight-`k` supports form a `t`-design by counting
    /// how often each `t`-subset of coordinates is covered.
    pub fn support_design(&self, k: usize, t: usize) -> Result<DesignResult> {
        if t == 0 || t > k {
            return Err(Error::BadStrength { t, k });
        }
        let blocks = self.blocks(k);
        if blocks.is_empty() {
            return Err(Error::EmptyBlocks(k));
        }
        let v = self.length;
        let slots = binom(v, t) as usize;
        let coverage = blocks
            .par_chunks(64)
            .map(|chunk| {
                let mut c = vec![0u64; slots];
                let mut idx: Vec<usize> = (0..t).collect();
                for block in chunk {
                    idx.iter_mut().enumerate().for_each(|(i, x)| *x = i);
                    loop {
                        let subset = idx.iter().map(|&i| block[i]);
                        c[rank_subset(subset, v)] += 1;
                        if !next_combination(&mut idx, block.len()) {
                            break;
                        }
                    }
                }
                c
            })
            .reduce(
                || vec![0u64; slots],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                    x
                },
            );
        let first = coverage[0];
        let deviant = coverage.iter().position(|&c| c != first);
        Ok(DesignResult {
            t,
            v,
            k,
            b: blocks.len(),
            lambda: deviant.is_none().then_some(first),
            witness: deviant.map(|r| (unrank_subset(r, v, t), coverage[r])),
        })
    }

    /// Codewords as hex strings, bit `j` in byte `j / 8`, position `j % 8`.
    pub fn to_hex(&self) -> Vec<String> {
        (0..self.size())
            .map(|i| {
                let bits = self.codeword(i);
                let mut bytes = vec![0u8; self.length.div_ceil(8)];
                for (j, b) in bits.iter().enumerate() {
                    bytes[j >> 3] |= b << (j & 7);
                }
                hex::encode(bytes)
            })
            .collect()
    }
}

pub fn weight_distance_distributions(code: &NonlinearCode) -> DistributionReport {
    code.distributions()
}

pub fn support_design(code: &NonlinearCode, k: usize, t: usize) -> Result<DesignResult> {
    code.support_design(k, t)
}

/// Lexicographic rank of a sorted subset of `{0, ..., v-1}` among subsets of
/// the same size.
fn rank_subset(subset: impl Iterator<Item = usize>, v: usize) -> usize {
    let s: Vec<usize> = subset.collect();
    let t = s.len();
    let mut rank = 0u128;
    let mut prev = 0usize;
    for (i, &x) in s.iter().enumerate() {
        for y in prev..x {
            rank += binom(v - y - 1, t - i - 1);
        }
        prev = x + 1;
    }
    rank as usize
}

fn unrank_subset(mut rank: usize, v: usize, t: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t);
    let mut x = 0;
    for i in 0..t {
        loop {
            let c = binom(v - x - 1, t - i - 1) as usize;
            if rank < c {
                break;
            }
            rank -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let t = idx.len();
    for i in (0..t).rev() {
        if idx[i] < n - t + i {
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{gold_fn, kerdock_fn, CertifyOptions};

    #[test]
    fn closed_form_weights() {
        assert_eq!(code_f_weights(4).unwrap(), BTreeMap::from([(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)]));
        assert_eq!(code_g_weights(3).unwrap(), BTreeMap::from([(0, 1), (2, 28), (4, 70), (6, 28), (8, 1)]));
        let w5 = code_g_weights(5).unwrap();
        assert_eq!((w5[&12], w5[&16], w5[&20]), (496, 1054, 496));
        assert!(code_f_weights(5).is_err() && code_g_weights(4).is_err());
    }

    #[test]
    fn two_word_code() {
        let code = NonlinearCode::from_words(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        let d = code.distributions();
        assert_eq!(d.weight, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(
            d.distance,
            BTreeMap::from([(0, Rational64::from_integer(1)), (2, Rational64::from_integer(1))])
        );
        assert!(d.distance_equals_weight());
        assert!(code.is_linear());
        assert!(code.is_self_complementary());
    }

    #[test]
    fn subset_ranking_is_a_bijection() {
        let (v, t) = (9, 3);
        let mut idx: Vec<usize> = (0..t).collect();
        let mut r = 0;
        loop {
            assert_eq!(rank_subset(idx.iter().copied(), v), r);
            assert_eq!(unrank_subset(r, v, t), idx);
            r += 1;
            if !next_combination(&mut idx, v) {
                break;
            }
        }
        assert_eq!(r as u128, binom(v, t));
    }

    #[test]
    fn fano_plane_is_a_2_design() {
        let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
        let words: Vec<Vec<u8>> = lines
            .iter()
            .map(|l| (0..7).map(|j| u8::from(l.contains(&j))).collect())
            .collect();
        let code = NonlinearCode::from_words(7, &words).unwrap();
        let d = code.support_design(3, 2).unwrap();
        assert_eq!(d.lambda, Some(1));
        assert!(d.identity_holds());
        let d3 = code.support_design(3, 3).unwrap();
        assert!(!d3.is_design());
        let (w, c) = d3.witness.unwrap();
        assert_eq!((w, c), (vec![0, 1, 3], 1));
        assert!(matches!(code.support_design(4, 2), Err(Error::EmptyBlocks(4))));
        assert!(matches!(code.support_design(3, 0), Err(Error::BadStrength { .. })));
    }

    #[test]
    fn kerdock_code_m4() {
        let f = CyclicBent::certify(kerdock_fn(4).unwrap(), CertifyOptions::default()).unwrap();
        let code = build_code_f(&f).unwrap();
        assert_eq!((code.length(), code.size()), (16, 256));
        assert!(code.all_distinct());
        assert!(code.is_self_complementary());
        let d = code.distributions();
        assert_eq!(d.weight, BTreeMap::from([(0, 1), (6, 112), (8, 30), (10, 112), (16, 1)]));
        assert!(d.distance_equals_weight());
        assert_eq!(d.min_distance(), Some(6));
        for (k, lambda) in [(6, 4), (8, 3), (10, 24)] {
            let r = code.support_design(k, 3).unwrap();
            assert_eq!(r.lambda, Some(lambda));
            assert!(r.identity_holds());
        }
    }

    #[test]
    fn gold_code_n3() {
        let g = CyclicSemiBent::certify(gold_fn(3, 1).unwrap(), CertifyOptions::default()).unwrap();
        let code = build_code_g(&g).unwrap();
        assert_eq!((code.length(), code.size()), (8, 128));
        assert!(code.all_distinct());
        assert!(code.is_linear());
        let d = code.distributions();
        assert_eq!(d.weight, BTreeMap::from([(0, 1), (2, 28), (4, 70), (6, 28), (8, 1)]));
        assert_eq!(d.min_distance(), Some(2));
        let hex = code.to_hex();
        assert_eq!(hex[0], "00");
        assert_eq!(hex.len(), 128);
    }
}
