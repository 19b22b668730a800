//! Redundancy removal for numeric systems: a row is deleted exactly when
//! the remaining rows already imply it, decided by an exact rational
//! optimization of the row's left-hand side over the others.

use num::{Signed, Zero};

use super::lp::{maximize, MaxOutcome};
use super::system::LinearSystem;
use super::{Rat, Result};

/// Removes every row implied by the others; the solution set is unchanged.
/// Rows are examined in order, so among duplicates the last one survives.
pub fn prune_redundant(sys: &LinearSystem) -> Result<LinearSystem> {
    let mut work = sys.clone();
    for row in &mut work.rows {
        row.canonicalize();
    }
    let mut keep = vec![true; work.rows.len()];

    for i in 0..work.rows.len() {
        let others: Vec<usize> = (0..work.rows.len())
            .filter(|&j| j != i && keep[j])
            .collect();
        if is_implied(&work, i, &others)? {
            keep[i] = false;
        }
    }

    let rows = work
        .rows
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect();
    Ok(LinearSystem { vars: sys.vars.clone(), rows })
}

fn is_implied(sys: &LinearSystem, target: usize, others: &[usize]) -> Result<bool> {
    let row = &sys.rows[target];
    let b = row.rhs.as_num()?.clone();

    if row.is_zero() {
        if !b.is_negative() {
            return Ok(true);
        }
        // 0 <= negative: infeasibility marker, implied only if the others
        // are already infeasible; fall through to the exact test.
    }

    // Parallel domination: identical direction with a rhs at most ours.
    for &j in others {
        let other = &sys.rows[j];
        if other.coeffs == row.coeffs && other.rhs.as_num()? <= &b {
            return Ok(true);
        }
    }

    // Ray certificate: if the origin is feasible for the others, walk along
    // the row's own normal; passing the rhs proves the row irredundant.
    let origin_feasible = others
        .iter()
        .all(|&j| !sys.rows[j].rhs.as_num().map(|r| r.is_negative()).unwrap_or(true));
    if origin_feasible && !row.is_zero() {
        let d = &row.coeffs;
        let d_norm: Rat = d.iter().map(|c| c * c).fold(Rat::zero(), |a, x| a + x);
        let mut t_max: Option<Rat> = None; // min over binding rows
        for &j in others {
            let other = &sys.rows[j];
            let proj: Rat = other
                .coeffs
                .iter()
                .zip(d)
                .map(|(c, x)| c * x)
                .fold(Rat::zero(), |a, x| a + x);
            if proj.is_positive() {
                let t = other.rhs.as_num()? / &proj;
                t_max = Some(match t_max {
                    None => t,
                    Some(cur) if t < cur => t,
                    Some(cur) => cur,
                });
            }
        }
        match t_max {
            None => return Ok(false), // unbounded along the normal
            Some(t) => {
                if t * &d_norm > b {
                    return Ok(false);
                }
            }
        }
    }

    // Exact decision.
    let mut reduced = LinearSystem::new(sys.vars.clone());
    for &j in others {
        reduced.rows.push(sys.rows[j].clone());
    }
    Ok(match maximize(&reduced, &row.coeffs)? {
        MaxOutcome::Infeasible => true,
        MaxOutcome::Unbounded => false,
        MaxOutcome::Bounded(m) => m <= b,
    })
}
