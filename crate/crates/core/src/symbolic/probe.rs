use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::expr::Expr;
use super::rat::{frac, Rat};
use super::symbol::Symbol;

/// Outcome of a zero test that may fall back to random evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroProbe {
    /// The canonical form is the zero expression.
    Zero,
    /// A rational point where the expression is defined and nonzero.
    NonZero { witness: BTreeMap<Symbol, Rat>, value: Rat },
    /// Kernel-bearing and no rational witness found.
    Inconclusive,
}

pub(crate) fn random_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    let n = rng.gen_range(-9i64..=9);
    let d = rng.gen_range(1i64..=4);
    frac(n, d)
}

/// Structural zero test backed by evaluation at random rational points.
pub fn probe_zero<R: Rng + ?Sized>(e: &Expr, rng: &mut R, trials: usize) -> ZeroProbe {
    if e.is_zero() {
        return ZeroProbe::Zero;
    }
    let syms: Vec<Symbol> = e.free_symbols().into_iter().collect();
    for _ in 0..trials.max(1) * 4 {
        let point: BTreeMap<Symbol, Rat> = syms.iter().map(|s| (s.clone(), random_rat(rng))).collect();
        if let Ok(Some(v)) = e.eval(&point) {
            if !v.is_zero() {
                return ZeroProbe::NonZero { witness: point, value: v };
            }
        }
    }
    ZeroProbe::Inconclusive
}
