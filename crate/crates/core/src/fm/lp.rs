//! Exact linear optimization over a numeric system, implemented by
//! adjoining an objective variable and eliminating everything else.
//! Suited to the small systems this crate works with; the elimination
//! guard catches misuse.

use num::{Signed, Zero};

use super::eliminate::eliminate;
use super::system::LinearSystem;
use super::{Rat, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum MaxOutcome {
    Infeasible,
    Unbounded,
    Bounded(Rat),
}

/// Maximum of `objective · x` over the solution set of `sys` (variables are
/// free unless the rows bound them). Exact.
pub fn maximize(sys: &LinearSystem, objective: &[Rat]) -> Result<MaxOutcome> {
    assert_eq!(objective.len(), sys.vars.len());
    let mut vars = sys.vars.clone();
    let obj_name = fresh_name(&vars);
    vars.push(obj_name.clone());

    let mut work = LinearSystem::new(vars);
    for row in &sys.rows {
        let mut coeffs = row.coeffs.clone();
        coeffs.push(Rat::zero());
        work.push(coeffs, row.rhs.clone(), None);
    }
    // t - objective . x <= 0
    let mut t_row: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
    t_row.push(Rat::from(num::BigInt::from(1)));
    work.push_num(t_row, Rat::zero(), None);

    let names: Vec<String> = sys.vars.clone();
    let mut cur = work;
    for name in &names {
        cur = eliminate(&cur, name)?;
    }

    // All remaining rows involve only t with non-negative coefficients.
    let mut best: Option<Rat> = None;
    for row in &cur.rows {
        let c = &row.coeffs[0];
        let b = row.rhs.as_num()?;
        if c.is_zero() {
            if b.is_negative() {
                return Ok(MaxOutcome::Infeasible);
            }
        } else {
            debug_assert!(c.is_positive(), "objective variable only enters upper bounds");
            let bound = b / c;
            best = Some(match best {
                None => bound,
                Some(cur) if bound < cur => bound,
                Some(cur) => cur,
            });
        }
    }
    Ok(match best {
        None => MaxOutcome::Unbounded,
        Some(v) => MaxOutcome::Bounded(v),
    })
}

fn fresh_name(vars: &[String]) -> String {
    let mut name = "__obj".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::super::rat_int;
    use super::*;

    #[test]
    fn triangle_max() {
        // x + y <= 1, x >= 0, y >= 0: max x + y = 1, max x = 1
        let mut s = LinearSystem::new(vec!["x".into(), "y".into()]);
        s.push_num(vec![rat_int(1), rat_int(1)], rat_int(1), None);
        s.push_num(vec![rat_int(-1), rat_int(0)], rat_int(0), None);
        s.push_num(vec![rat_int(0), rat_int(-1)], rat_int(0), None);
        assert_eq!(
            maximize(&s, &[rat_int(1), rat_int(1)]).unwrap(),
            MaxOutcome::Bounded(rat_int(1))
        );
        assert_eq!(
            maximize(&s, &[rat_int(1), rat_int(0)]).unwrap(),
            MaxOutcome::Bounded(rat_int(1))
        );
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let mut s = LinearSystem::new(vec!["x".into()]);
        s.push_num(vec![rat_int(-1)], rat_int(0), None);
        assert_eq!(maximize(&s, &[rat_int(1)]).unwrap(), MaxOutcome::Unbounded);

        let mut s = LinearSystem::new(vec!["x".into()]);
        s.push_num(vec![rat_int(1)], rat_int(-1), None);
        s.push_num(vec![rat_int(-1)], rat_int(0), None);
        assert_eq!(maximize(&s, &[rat_int(1)]).unwrap(), MaxOutcome::Infeasible);
    }
}
