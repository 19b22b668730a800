//! Exact rational linear-inequality engine: Fourier–Motzkin elimination
//! (numeric and symbolic right-hand sides), redundancy pruning, vertex
//! enumeration for two-variable systems, and the constraint text format.

mod eliminate;
mod lp;
mod prune;
mod simplex;
mod symbolic;
mod system;
mod textio;
mod vertices;

pub use eliminate::eliminate;
pub use lp::{maximize, MaxOutcome};
pub use prune::prune_redundant;
pub use simplex::feasible;
pub use symbolic::{eliminate_symbolic_region, prune_symbolic, region_template};
pub use system::{LinRow, LinearSystem, RhsVal, SymbolicRhs};
pub use textio::{parse_system, write_system};
pub use vertices::{hull_ccw, vertices_2d};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{ToPrimitive, Zero};
use thiserror::Error;

pub type Rat = BigRational;

/// Abort threshold for intermediate row counts during elimination.
pub const ROW_EXPLOSION_LIMIT: usize = 100_000;

/// Largest denominator produced when snapping floats to rationals.
pub const SNAP_MAX_DEN: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FmError {
    #[error("row count {0} exceeds the elimination guard ({ROW_EXPLOSION_LIMIT})")]
    RowExplosion(usize),
    #[error("system is infeasible")]
    EmptyRegion,
    #[error("system is unbounded")]
    Unbounded,
    #[error("operation requires numeric right-hand sides")]
    NonNumericRhs,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, FmError>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued-fraction convergents. Exact for representable values.
pub fn snap_f64(x: f64, max_den: u64) -> Rat {
    assert!(x.is_finite(), "cannot snap {x}");
    if x == 0.0 {
        return Rat::zero();
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    // convergents p/q of the continued fraction of x
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let max_den = max_den as u128;
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e30 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int.saturating_mul(p1).saturating_add(p0);
        let q2 = a_int.saturating_mul(q1).saturating_add(q0);
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a;
        if frac < 1e-18 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        // first convergent already exceeded the cap
        p1 = p0;
        q1 = q0.max(1);
    }
    let mut r = Rat::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        r = -r;
    }
    r
}

/// Snap at the module default denominator cap.
pub fn snap(x: f64) -> Rat {
    snap_f64(x, SNAP_MAX_DEN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snap_recovers_simple_fractions() {
        assert_eq!(snap(0.5), rat(1, 2));
        assert_eq!(snap(0.75), rat(3, 4));
        assert_eq!(snap(-2.0), rat_int(-2));
        assert_eq!(snap(0.0), Rat::zero());
        assert_eq!(snap_f64(1.0 / 3.0, 1 << 32), rat(1, 3));
    }

    #[test]
    fn snap_error_is_tiny() {
        for &x in &[0.2780719051126377, 0.4689955935892812, 1.234e-4, 17.25] {
            let r = snap(x);
            assert!((rat_to_f64(&r) - x).abs() < 1e-9, "{x}");
        }
    }
}
