//! Phase-one exact simplex, used to decide feasibility of small rational
//! systems `M x <= m`, `x >= 0` (Farkas certificates for symbolic pruning).

use num::{Signed, Zero};

use super::Rat;

/// Returns true iff `{ x >= 0 : mat · x <= rhs }` is non-empty. Exact;
/// Bland's rule guarantees termination.
pub fn feasible(mat: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let m = mat.len();
    assert_eq!(rhs.len(), m);
    if m == 0 {
        return true;
    }
    let n = mat[0].len();

    // Standard form with one slack per row; rows with negative rhs get an
    // artificial variable, and phase one minimizes the artificial total.
    let negatives: Vec<usize> = (0..m).filter(|&i| rhs[i].is_negative()).collect();
    if negatives.is_empty() {
        return true; // x = 0 works
    }
    let k = negatives.len();
    let cols = n + m + k; // structurals, slacks, artificials
    let mut t = vec![vec![Rat::zero(); cols + 1]; m];
    let mut basis = vec![0usize; m];

    let mut art = 0usize;
    for i in 0..m {
        let flip = rhs[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -mat[i][j].clone() } else { mat[i][j].clone() };
        }
        t[i][n + i] = if flip { -Rat::from(num::BigInt::from(1)) } else { Rat::from(num::BigInt::from(1)) };
        t[i][cols] = if flip { -rhs[i].clone() } else { rhs[i].clone() };
        if flip {
            t[i][n + m + art] = Rat::from(num::BigInt::from(1));
            basis[i] = n + m + art;
            art += 1;
        } else {
            basis[i] = n + i;
        }
    }

    // objective row: minimize sum of artificials == maximize -sum
    let mut obj = vec![Rat::zero(); cols + 1];
    for i in 0..m {
        if basis[i] >= n + m {
            for j in 0..=cols {
                let v = t[i][j].clone();
                obj[j] += v;
            }
        }
    }
    // obj now holds sum of artificial rows; reduced costs are obj[j] for
    // non-artificial j, and the current artificial total is obj[cols].

    loop {
        // Bland: entering column = smallest index with positive reduced cost
        // among non-artificial columns.
        let mut enter = None;
        for j in 0..n + m {
            if obj[j].is_positive() {
                enter = Some(j);
                break;
            }
        }
        let Some(e) = enter else { break };

        // ratio test, Bland tie-break on basis variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &t[i][cols] / &t[i][e];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            // unbounded phase-one objective cannot happen (bounded above by 0)
            break;
        };

        // pivot on (l, e)
        let pivot = t[l][e].clone();
        for j in 0..=cols {
            t[l][j] = &t[l][j] / &pivot;
        }
        for i in 0..m {
            if i != l && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..=cols {
                    let d = &t[l][j] * &f;
                    t[i][j] -= d;
                }
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..=cols {
                let d = &t[l][j] * &f;
                obj[j] -= d;
            }
        }
        basis[l] = e;
    }

    obj[cols].is_zero()
}
