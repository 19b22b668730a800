//! Vertex enumeration for two-variable systems: pairwise line
//! intersections filtered by feasibility, then hull-ordered.

use num::{Signed, Zero};

use super::lp::{maximize, MaxOutcome};
use super::system::LinearSystem;
use super::{FmError, Rat, Result};

/// All vertices of the (bounded, non-empty) polygon described by `sys`,
/// counter-clockwise starting from the lexicographically smallest point.
/// Degenerate regions yield one or two points.
pub fn vertices_2d(sys: &LinearSystem) -> Result<Vec<(Rat, Rat)>> {
    assert_eq!(sys.vars.len(), 2, "vertices_2d expects a 2-variable system");

    for dir in [[1i64, 0], [-1, 0], [0, 1], [0, -1]] {
        let obj: Vec<Rat> = dir.iter().map(|&d| super::rat_int(d)).collect();
        match maximize(sys, &obj)? {
            MaxOutcome::Infeasible => return Err(FmError::EmptyRegion),
            MaxOutcome::Unbounded => return Err(FmError::Unbounded),
            MaxOutcome::Bounded(_) => {}
        }
    }

    let mut points: Vec<(Rat, Rat)> = Vec::new();
    let n = sys.rows.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a1, b1) = (&sys.rows[i].coeffs[0], &sys.rows[i].coeffs[1]);
            let (a2, b2) = (&sys.rows[j].coeffs[0], &sys.rows[j].coeffs[1]);
            let det = a1 * b2 - b1 * a2;
            if det.is_zero() {
                continue;
            }
            let c1 = sys.rows[i].rhs.as_num()?;
            let c2 = sys.rows[j].rhs.as_num()?;
            let x = (c1 * b2 - b1 * c2) / &det;
            let y = (a1 * c2 - c1 * a2) / &det;
            let p = vec![x, y];
            if sys.contains_point(&p)? {
                let mut it = p.into_iter();
                let pt = (it.next().unwrap(), it.next().unwrap());
                if !points.contains(&pt) {
                    points.push(pt);
                }
            }
        }
    }

    if points.is_empty() {
        // bounded and feasible but no pairwise intersection is feasible:
        // cannot happen for a pointed polygon
        return Err(FmError::EmptyRegion);
    }
    Ok(hull_ccw(points))
}

/// Monotone-chain convex hull with exact predicates; collinear interior
/// points are dropped, so segments keep only their endpoints.
pub fn hull_ccw(mut points: Vec<(Rat, Rat)>) -> Vec<(Rat, Rat)> {
    points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    points.dedup();
    if points.len() <= 2 {
        return points;
    }
    let cross = |o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)| -> Rat {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<(Rat, Rat)> = Vec::new();
    for p in &points {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Rat, Rat)> = Vec::new();
    for p in points.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
