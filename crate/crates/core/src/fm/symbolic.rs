//! Symbolic region projection: eliminates the public-rate split variables
//! from the tagged constraint templates while keeping right-hand sides as
//! linear combinations of named mutual-information symbols, then prunes
//! rows that are implied for every non-negative symbol assignment.

use num::Zero;

use crate::theorems::{ConstraintSpec, Scheme};

use super::eliminate::eliminate_all;
use super::simplex::feasible;
use super::system::{LinearSystem, RhsVal, SymbolicRhs};
use super::{Rat, Result};

/// The 4-variable template over `(R10, R20, R1, R2)` obtained from a
/// constraint set by substituting `R11 = R1 - R10`, `R22 = R2 - R20` and
/// adding the split bounds `0 <= R10 <= R1`, `0 <= R20 <= R2`.
pub fn region_template(scheme: Scheme) -> LinearSystem {
    template_from_specs(scheme.constraints())
}

pub fn template_from_specs(specs: &[ConstraintSpec]) -> LinearSystem {
    let vars: Vec<String> = ["R10", "R20", "R1", "R2"].map(str::to_string).to_vec();
    let mut sys = LinearSystem::new(vars);
    for spec in specs {
        let [r10, r11, r20, r22] = spec.rates.map(i64::from);
        let coeffs = vec![
            super::rat_int(r10 - r11),
            super::rat_int(r20 - r22),
            super::rat_int(r11),
            super::rat_int(r22),
        ];
        let mut rhs = SymbolicRhs::constant(Rat::zero());
        for term in spec.terms {
            rhs.add_term(&term.symbol(), &super::rat_int(term.sign as i64));
        }
        sys.push(coeffs, RhsVal::Sym(rhs), Some(spec.tag));
    }
    let zero = Rat::zero;
    let one = || Rat::from(num::BigInt::from(1));
    let neg = || -Rat::from(num::BigInt::from(1));
    sys.push(
        vec![neg(), zero(), zero(), zero()],
        RhsVal::Sym(SymbolicRhs::constant(zero())),
        Some("nn-R10"),
    );
    sys.push(
        vec![one(), zero(), neg(), zero()],
        RhsVal::Sym(SymbolicRhs::constant(zero())),
        Some("split-1"),
    );
    sys.push(
        vec![zero(), neg(), zero(), zero()],
        RhsVal::Sym(SymbolicRhs::constant(zero())),
        Some("nn-R20"),
    );
    sys.push(
        vec![zero(), one(), zero(), neg()],
        RhsVal::Sym(SymbolicRhs::constant(zero())),
        Some("split-2"),
    );
    sys
}

/// Projects a theorem's template onto `(R1, R2)` with symbolic right-hand
/// sides, producing the explicit two-dimensional description.
pub fn eliminate_symbolic_region(scheme: Scheme) -> Result<LinearSystem> {
    let sys = region_template(scheme);
    let projected = eliminate_all(&sys, &["R10", "R20"])?;
    prune_symbolic(&projected)
}

/// Removes rows implied by the others for **every** non-negative symbol
/// assignment, certified by a Farkas multiplier found with an exact LP.
pub fn prune_symbolic(sys: &LinearSystem) -> Result<LinearSystem> {
    let mut work = sys.clone();
    work.dedupe_dominated();
    let mut keep = vec![true; work.rows.len()];
    for i in 0..work.rows.len() {
        let others: Vec<usize> = (0..work.rows.len())
            .filter(|&j| j != i && keep[j])
            .collect();
        if implied_for_all_symbols(&work, i, &others) {
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

/// Farkas test: does some `lambda >= 0` over the other rows reproduce the
/// target's coefficients exactly while its combined rhs is dominated by the
/// target's, coordinate-wise in the symbol space (constant included)?
fn implied_for_all_symbols(sys: &LinearSystem, target: usize, others: &[usize]) -> bool {
    let row = &sys.rows[target];
    let (t_const, t_terms) = split_rhs(&row.rhs);

    // symbol universe
    let mut symbols: Vec<String> = Vec::new();
    let mut collect = |rhs: &RhsVal| {
        if let RhsVal::Sym(s) = rhs {
            for name in s.terms.keys() {
                if !symbols.contains(name) {
                    symbols.push(name.clone());
                }
            }
        }
    };
    collect(&row.rhs);
    for &j in others {
        collect(&sys.rows[j].rhs);
    }

    // Feasibility in lambda >= 0 of:
    //   sum_j lambda_j a_j  = a_target        (per variable, two inequalities)
    //   sum_j lambda_j b_j(sigma) <= b_target(sigma) for all sigma >= 0
    //     <=> per-symbol and constant coordinates dominate.
    let nvars = sys.vars.len();
    let mut mat: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();

    for v in 0..nvars {
        let coeffs: Vec<Rat> = others.iter().map(|&j| sys.rows[j].coeffs[v].clone()).collect();
        mat.push(coeffs.clone());
        rhs.push(row.coeffs[v].clone());
        mat.push(coeffs.into_iter().map(|c| -c).collect());
        rhs.push(-row.coeffs[v].clone());
    }
    {
        let consts: Vec<Rat> = others
            .iter()
            .map(|&j| split_rhs(&sys.rows[j].rhs).0)
            .collect();
        mat.push(consts);
        rhs.push(t_const.clone());
    }
    for sym in &symbols {
        let coefs: Vec<Rat> = others
            .iter()
            .map(|&j| {
                let (_, terms) = split_rhs(&sys.rows[j].rhs);
                terms.get(sym.as_str()).cloned().unwrap_or_else(Rat::zero)
            })
            .collect();
        mat.push(coefs);
        rhs.push(t_terms.get(sym.as_str()).cloned().unwrap_or_else(Rat::zero));
    }

    feasible(&mat, &rhs)
}

fn split_rhs(rhs: &RhsVal) -> (Rat, std::collections::BTreeMap<String, Rat>) {
    match rhs {
        RhsVal::Num(r) => (r.clone(), Default::default()),
        RhsVal::Sym(s) => (s.constant.clone(), s.terms.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat_int, snap};
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn hand_symbolic_elimination() {
        // { R10 <= A, R1 - R10 <= B, -R10 <= 0, R10 - R1 <= 0 }, eliminate R10.
        let mut s = LinearSystem::new(vec!["R10".into(), "R1".into()]);
        let sym = |name: &str| {
            RhsVal::Sym(SymbolicRhs::from_terms(
                Rat::zero(),
                [(name.to_string(), rat_int(1))],
            ))
        };
        s.push(vec![rat_int(1), rat_int(0)], sym("A"), None);
        s.push(vec![rat_int(-1), rat_int(1)], sym("B"), None);
        s.push(
            vec![rat_int(-1), rat_int(0)],
            RhsVal::Sym(SymbolicRhs::constant(Rat::zero())),
            None,
        );
        s.push(
            vec![rat_int(1), rat_int(-1)],
            RhsVal::Sym(SymbolicRhs::constant(Rat::zero())),
            None,
        );
        let out = eliminate_all(&s, &["R10"]).unwrap();

        // Expected rows over R1: R1 <= A + B, -R1 <= 0, 0 <= A, 0 <= B.
        assert_eq!(out.rows.len(), 4);
        let mut seen_ab = false;
        let mut seen_zero_a = false;
        for row in &out.rows {
            if let RhsVal::Sym(sy) = &row.rhs {
                if row.coeffs[0] == rat_int(1) {
                    assert_eq!(sy.terms.len(), 2);
                    seen_ab = true;
                } else if row.coeffs[0].is_zero() && sy.terms.contains_key("A") {
                    seen_zero_a = true;
                }
            }
        }
        assert!(seen_ab && seen_zero_a);

        // Numeric instantiation agreement at 100 random non-negative (A, B).
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 33) as f64) / ((1u64 << 31) as f64)
        };
        for _ in 0..100 {
            let a = snap(next());
            let b = snap(next());
            let vals: BTreeMap<String, Rat> =
                [("A".to_string(), a.clone()), ("B".to_string(), b.clone())].into();
            let inst_first = super::super::eliminate(&s.instantiate(&vals), "R10").unwrap();
            let elim_first = out.instantiate(&vals);
            // both systems must agree on membership along a grid of R1 values
            for k in 0..=20 {
                let r1 = super::super::rat(k, 10);
                let p = vec![r1];
                assert_eq!(
                    inst_first.contains_point(&p).unwrap(),
                    elim_first.contains_point(&p).unwrap()
                );
            }
        }
    }

    #[test]
    fn superposition_user1_sum_row_survives_verbatim() {
        // Only T2-11 and T2-12 with R20 = 0: after elimination the sum row
        // R1 <= rhs(T2-12) must appear unchanged.
        let specs: Vec<ConstraintSpec> = crate::theorems::THEOREM2[..2].to_vec();
        let sys = template_from_specs(&specs);
        let projected = eliminate_all(&sys, &["R10", "R20"]).unwrap();
        let t2_12_rhs = {
            let mut rhs = SymbolicRhs::constant(Rat::zero());
            for t in crate::theorems::THEOREM2[1].terms {
                rhs.add_term(&t.symbol(), &rat_int(t.sign as i64));
            }
            rhs
        };
        let found = projected.rows.iter().any(|r| {
            r.coeffs == vec![rat_int(1), rat_int(0)]
                && matches!(&r.rhs, RhsVal::Sym(s) if *s == t2_12_rhs)
        });
        assert!(found, "projected system: {projected:?}");
    }

    #[test]
    fn all_symbols_zero_gives_origin() {
        let out = eliminate_symbolic_region(Scheme::Superposition).unwrap();
        let zero_vals: BTreeMap<String, Rat> = BTreeMap::new();
        let inst = out.instantiate(&zero_vals);
        let verts = super::super::vertices_2d(&inst).unwrap();
        assert_eq!(verts, vec![(Rat::zero(), Rat::zero())]);
    }
}
