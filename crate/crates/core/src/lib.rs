//! Exact construction and certification of cyclic bent and cyclic semi-bent
//! Boolean functions, and of the objects built from them: optimal real and
//! complex codebooks, complete sets of mutually unbiased bases, low-correlation
//! sequence families, Kerdock-like nonlinear codes with their support designs,
//! and the skew-polynomial test for quadratic cyclic semi-bent functions.
//!
//! All arithmetic is exact (integers, Gaussian integers, rationals). Floating
//! point only appears in human-readable renderings.

pub mod boolfun;
pub mod codebook;
pub mod codes;
pub mod construct;
mod error;
pub mod gauss;
pub mod gf2;
pub mod linpoly;
pub mod seqfam;

pub use boolfun::{BoolFun, Domain, SpectrumClass, WalshSpectrum};
pub use codebook::{Codebook, MubSet};
pub use codes::{DesignResult, DistributionReport, NonlinearCode};
pub use construct::{ChainSpec, CyclicBent, CyclicCertificate, CyclicSemiBent, VerifyMode};
pub use error::{Error, Result};
pub use gauss::Gaussian;
pub use gf2::{FieldCtx, FieldElem};
pub use linpoly::{LinPoly, SkewPoly};
pub use num_rational::Rational64;
pub use seqfam::{CorrDist, SequenceFamily};

/// Renders an exact rational as `"num/den"` (or `"num"` when integral).
pub fn rational_string(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Float rendering of a rational with 12 significant digits.
pub fn rational_float(r: &Rational64) -> String {
    let v = *r.numer() as f64 / *r.denom() as f64;
    format!("{:.11e}", v)
        .parse::<f64>()
        .map(|x| format!("{}", x))
        .unwrap_or_default()
}
