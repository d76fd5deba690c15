//! Independent oracles shared by the integration tests: Walsh-spectrum
//! expressions for correlations and inner products, and the counting sets
//! used to derive the correlation distributions.

#![allow(dead_code)]

use std::sync::Arc;

use cyclicbent::boolfun::BoolFun;
use cyclicbent::construct::{chain_fn, CertifyOptions, ChainSpec, CyclicBent};
use cyclicbent::gf2::{FieldCtx, FieldElem};
use cyclicbent::{Gaussian, WalshSpectrum};

pub fn certified_chain(spec: &ChainSpec) -> CyclicBent {
    CyclicBent::certify(chain_fn(spec).unwrap(), CertifyOptions::default()).unwrap()
}

/// Every admissible chain function for `m`, certified.
pub fn chain_functions(m: u32) -> Vec<CyclicBent> {
    ChainSpec::enumerate(m).unwrap().iter().map(certified_chain).collect()
}

/// `f_{1,b,ε}(x1, x2) = f(x1, x2) + f(b x1, x2 + ε)`.
pub fn f_1_b(f: &BoolFun, b: FieldElem, eps: u8) -> BoolFun {
    f.xor(&f.scale_compose(b, eps).unwrap()).unwrap()
}

/// `f_{a,a',ε}(x1, x2) = f(a x1, x2) + f(a' x1, x2 + ε)`.
pub fn f_a_b(f: &BoolFun, a: FieldElem, b: FieldElem, eps: u8) -> BoolFun {
    f.scale_compose(a, 0).unwrap().xor(&f.scale_compose(b, eps).unwrap()).unwrap()
}

/// `f_b(x1, x2) = f(b x1, x2)`.
pub fn f_b(f: &BoolFun, b: FieldElem) -> BoolFun {
    f.scale_compose(b, 0).unwrap()
}

fn half(w: i64) -> i64 {
    assert_eq!(w % 2, 0, "Walsh value {w} is odd");
    w / 2
}

/// Quaternary-family correlation predicted from Walsh spectra. `None` is `∞`.
pub fn quaternary_corr_oracle(
    f: &BoolFun,
    ctx: &FieldCtx,
    lam: Option<FieldElem>,
    lam2: Option<FieldElem>,
    tau: i64,
) -> Gaussian {
    let bt = ctx.gen_pow(tau);
    let k = ctx.order() as i64;
    match (lam, lam2) {
        (Some(l), Some(l2)) => {
            let mu = ctx.mul(l, bt) + l2;
            let w0 = f_1_b(f, bt, 0).walsh().at_pair(mu, 0);
            let w1 = f_1_b(f, bt, 1).walsh().at_pair(mu, 1);
            Gaussian::new(half(w0) - 1, -half(w1))
        }
        (Some(l), None) => {
            let w = f_b(f, bt).walsh();
            let mu = ctx.mul(l, bt) + FieldElem::ONE;
            Gaussian::new(half(w.at_pair(mu, 0)) - 1, half(w.at_pair(mu, 1)))
        }
        (None, Some(l2)) => {
            let w = f.walsh();
            let mu = l2 + bt;
            Gaussian::new(half(w.at_pair(mu, 0)) - 1, -half(w.at_pair(mu, 1)))
        }
        (None, None) => Gaussian::real(if tau == 0 { k } else { -1 }),
    }
}

fn pm(bit: u8) -> i64 {
    1 - 2 * (bit & 1) as i64
}

/// Interleaved binary-family correlation predicted from Walsh spectra.
pub fn binary_corr_oracle(
    f: &BoolFun,
    ctx: &FieldCtx,
    (lam, nu): (FieldElem, u8),
    (lam2, nu2): (FieldElem, u8),
    tau: usize,
) -> i64 {
    let m = ctx.degree() + 1;
    let t0 = (tau / 2) as i64;
    if tau % 2 == 1 {
        let b = ctx.gen_pow(t0 + (1i64 << (m - 2)));
        let mu = ctx.mul(lam, b) + lam2;
        pm(nu) * f_1_b(f, b, 1).walsh().at_pair(mu, nu ^ nu2) - pm(nu) - pm(nu2)
    } else {
        let b = ctx.gen_pow(t0);
        let mu = ctx.mul(lam, b) + lam2;
        f_1_b(f, b, 0).walsh().at_pair(mu, nu ^ nu2) - 1 - pm(nu ^ nu2)
    }
}

/// Semi-bent-family correlation predicted from Walsh spectra.
pub fn semibent_corr_oracle(
    g: &BoolFun,
    ctx: &Arc<FieldCtx>,
    lam: Option<FieldElem>,
    lam2: Option<FieldElem>,
    tau: i64,
) -> i64 {
    let bt = ctx.gen_pow(tau);
    match (lam, lam2) {
        (Some(l), Some(l2)) => {
            let sum = g.xor(&g.scale(bt).unwrap()).unwrap();
            sum.walsh().at(ctx.mul(l, bt) + l2) - 1
        }
        (Some(l), None) => g.walsh().at(l + ctx.gen_pow(-tau)) - 1,
        (None, Some(l2)) => g.walsh().at(l2 + bt) - 1,
        (None, None) => {
            if tau == 0 {
                ctx.order() as i64
            } else {
                -1
            }
        }
    }
}

/// `2 <u, v>` for MUB vectors `u ∈ B_a` (index `λ`) and `v ∈ B_a'` (index `λ'`):
/// `W_{f_{a,a',0}}(λ+λ', 0) + i W_{f_{a,a',1}}(λ+λ', 1)`.
pub fn mub_inner_oracle(f: &BoolFun, a: FieldElem, b: FieldElem, lam: FieldElem, lam2: FieldElem) -> Gaussian {
    let mu = lam + lam2;
    Gaussian::new(
        f_a_b(f, a, b, 0).walsh().at_pair(mu, 0),
        f_a_b(f, a, b, 1).walsh().at_pair(mu, 1),
    )
}

/// `N_{g,ε}` (`nu = 0`) or `N'_{g,ε}` (`nu = 1`).
pub fn n_count(w: &WalshSpectrum, nu: u8, eps: u8) -> usize {
    let m = w.n_vars;
    let target = pm(eps) << (m / 2);
    (0..1u32 << (m - 1)).filter(|&mu| w.at_pair(FieldElem(mu), nu) == target).count()
}

/// `#T_{u,ε} = #{(λ1, λ2) ∈ H × H : W_g(b λ1 + λ2, u) = (-1)^ε 2^{m/2}}`.
pub fn t_count(w: &WalshSpectrum, ctx: &FieldCtx, b: FieldElem, u: u8, eps: u8) -> usize {
    let m = w.n_vars;
    let target = pm(eps) << (m / 2);
    let h: Vec<FieldElem> = ctx.elements().filter(|&l| ctx.abs_trace(l) == 0).collect();
    h.iter()
        .flat_map(|&l1| h.iter().map(move |&l2| (l1, l2)))
        .filter(|&(l1, l2)| w.at_pair(ctx.mul(b, l1) + l2, u) == target)
        .count()
}

/// `(Σ_μ W_g(μ,0), Σ_μ W_h(μ,1), Σ_μ W_g(μ,0) W_h(μ,1))`.
pub fn walsh_sums(g: &WalshSpectrum, h: &WalshSpectrum) -> (i64, i64, i64) {
    let half = 1u32 << (g.n_vars - 1);
    (0..half).map(FieldElem).fold((0, 0, 0), |(a, b, c), mu| {
        let (x, y) = (g.at_pair(mu, 0), h.at_pair(mu, 1));
        (a + x, b + y, c + x * y)
    })
}

/// Walsh values of `x -> g(x, ε)` on GF(2^{m-1}).
pub fn restricted_walsh(f: &BoolFun, eps: u8) -> Vec<i64> {
    f.restrict(eps).unwrap().walsh().values
}
