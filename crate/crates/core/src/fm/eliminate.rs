//! Classic Fourier–Motzkin variable elimination.

use num::{Signed, Zero};

use super::system::{LinRow, LinearSystem, RhsVal};
use super::{FmError, Rat, Result, ROW_EXPLOSION_LIMIT};

/// Removes `var` from the system by pairing every lower bound with every
/// upper bound. The projection of the solution set onto the remaining
/// variables is preserved exactly.
///
/// Trivially true rows (all-zero coefficients, numeric rhs >= 0) are
/// dropped; all-zero rows with negative or symbolic rhs are kept, since
/// they record infeasibility or a side condition on the symbols.
pub fn eliminate(sys: &LinearSystem, var: &str) -> Result<LinearSystem> {
    let col = sys.var_index(var)?;
    let mut out_vars = sys.vars.clone();
    out_vars.remove(col);
    let mut out = LinearSystem::new(out_vars);

    let strip = |row: &LinRow| -> Vec<Rat> {
        let mut c = row.coeffs.clone();
        c.remove(col);
        c
    };

    let mut uppers: Vec<&LinRow> = Vec::new();
    let mut lowers: Vec<&LinRow> = Vec::new();
    for row in &sys.rows {
        let c = &row.coeffs[col];
        if c.is_zero() {
            push_reduced(&mut out, strip(row), row.rhs.clone(), row.tag.clone());
        } else if c.is_positive() {
            uppers.push(row);
        } else {
            lowers.push(row);
        }
    }

    for up in &uppers {
        for lo in &lowers {
            let cu = &up.coeffs[col];
            let cl = &lo.coeffs[col];
            // |cl| * up + cu * lo cancels the eliminated column
            let wu = -cl.clone();
            let wl = cu.clone();
            let mut coeffs = Vec::with_capacity(sys.vars.len() - 1);
            for (i, (a, b)) in up.coeffs.iter().zip(&lo.coeffs).enumerate() {
                if i != col {
                    coeffs.push(a * &wu + b * &wl);
                }
            }
            let rhs = up.rhs.scaled(&wu).plus(&lo.rhs.scaled(&wl));
            push_reduced(&mut out, coeffs, rhs, None);
            if out.rows.len() > ROW_EXPLOSION_LIMIT {
                return Err(FmError::RowExplosion(out.rows.len()));
            }
        }
    }

    out.dedupe_dominated();
    Ok(out)
}

fn push_reduced(out: &mut LinearSystem, coeffs: Vec<Rat>, rhs: RhsVal, tag: Option<String>) {
    let zero = coeffs.iter().all(|c| c.is_zero());
    if zero {
        if let RhsVal::Num(ref r) = rhs {
            if !r.is_negative() {
                return; // 0 <= nonnegative constant carries no information
            }
        }
    }
    out.rows.push(LinRow { coeffs, rhs, tag });
}

/// Eliminates several variables in sequence.
pub fn eliminate_all(sys: &LinearSystem, vars: &[&str]) -> Result<LinearSystem> {
    let mut cur = sys.clone();
    for v in vars {
        cur = eliminate(&cur, v)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, RhsVal};
    use super::*;

    fn sys2() -> LinearSystem {
        // x + y <= 2 ; x - y <= 0 ; -x <= 0
        let mut s = LinearSystem::new(vec!["x".into(), "y".into()]);
        s.push_num(vec![rat_int(1), rat_int(1)], rat_int(2), None);
        s.push_num(vec![rat_int(1), rat_int(-1)], rat_int(0), None);
        s.push_num(vec![rat_int(-1), rat_int(0)], rat_int(0), None);
        s
    }

    #[test]
    fn hand_elimination() {
        let out = eliminate(&sys2(), "x").unwrap();
        assert_eq!(out.vars, vec!["y".to_string()]);
        // expect y <= 2 and -y <= 0 (the 0 <= 2 combination is dropped)
        let mut rows: Vec<(String, String)> = out
            .rows
            .iter()
            .map(|r| {
                (
                    r.coeffs[0].to_string(),
                    r.rhs.as_num().unwrap().to_string(),
                )
            })
            .collect();
        rows.sort();
        assert_eq!(
            rows,
            vec![
                ("-1".to_string(), "0".to_string()),
                ("1".to_string(), "2".to_string())
            ]
        );
    }

    #[test]
    fn untouched_variable_passes_through() {
        let mut s = LinearSystem::new(vec!["x".into(), "y".into()]);
        s.push_num(vec![rat_int(0), rat_int(1)], rat_int(3), Some("a"));
        s.push_num(vec![rat_int(0), rat_int(-2)], rat_int(1), Some("b"));
        let out = eliminate(&s, "x").unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[0].tag.as_deref(), Some("a"));
    }

    #[test]
    fn infeasible_marker_is_kept() {
        // x <= -1 and -x <= 0 combine into 0 <= -1
        let mut s = LinearSystem::new(vec!["x".into()]);
        s.push_num(vec![rat_int(1)], rat_int(-1), None);
        s.push_num(vec![rat_int(-1)], rat_int(0), None);
        let out = eliminate(&s, "x").unwrap();
        assert_eq!(out.rows.len(), 1);
        assert!(matches!(&out.rows[0].rhs, RhsVal::Num(r) if r == &rat_int(-1)));
    }
}
