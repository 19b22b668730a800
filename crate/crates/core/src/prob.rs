//! Dense probability tensors over named finite variables, plus the exact
//! information measures (entropy, conditional mutual information) that the
//! rate-region layer consumes.
//!
//! Everything here is a pure function over immutable values; results are
//! safe to share across threads.

use thiserror::Error;

/// Hard cap on tensor size: product of cardinalities must stay below this.
pub const MAX_CELLS: usize = 100_000_000;

/// Tolerance at which a mass total is accepted as exactly normalized.
pub const NORM_TOL: f64 = 1e-12;
/// Deviations below this are silently renormalized; larger ones are rejected.
pub const RENORM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbError {
    #[error("mass sums to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("negative weight {value} at flat index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("shape mismatch: expected {expected} cells, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("factor conditions on `{0}` before it is produced")]
    DanglingVariable(String),
    #[error("variable sets overlap on `{0}`")]
    OverlappingSets(String),
    #[error("tensor would need {0} cells (cap {MAX_CELLS})")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, ProbError>;

/// A named finite variable together with its alphabet size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub card: usize,
}

impl Var {
    pub fn new(name: impl Into<String>, card: usize) -> Self {
        let v = Var { name: name.into(), card };
        assert!(v.card >= 1, "cardinality must be >= 1");
        v
    }
}

/// A joint pmf stored as a dense tensor, indexed lexicographically by the
/// variable order (last variable fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    vars: Vec<Var>,
    weights: Vec<f64>,
}

impl JointPmf {
    /// Builds and validates a joint pmf. Mass within [`NORM_TOL`] of 1 is
    /// accepted as-is; deviations below [`RENORM_TOL`] are renormalized;
    /// anything larger is rejected.
    pub fn new(vars: Vec<Var>, weights: Vec<f64>) -> Result<Self> {
        let expected: usize = vars.iter().map(|v| v.card).product();
        if expected > MAX_CELLS {
            return Err(ProbError::TooLarge(expected));
        }
        if weights.len() != expected {
            return Err(ProbError::ShapeMismatch { expected, got: weights.len() });
        }
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                if vars[i].name == vars[j].name {
                    return Err(ProbError::DuplicateVariable(vars[i].name.clone()));
                }
            }
        }
        let mut joint = JointPmf { vars, weights };
        joint.check_and_renormalize()?;
        Ok(joint)
    }

    fn check_and_renormalize(&mut self) -> Result<()> {
        for (index, &w) in self.weights.iter().enumerate() {
            if w < 0.0 || !w.is_finite() {
                return Err(ProbError::NegativeWeight { index, value: w });
            }
        }
        let sum: f64 = self.weights.iter().sum();
        let dev = (sum - 1.0).abs();
        if dev <= NORM_TOL {
            return Ok(());
        }
        if dev < RENORM_TOL {
            for w in &mut self.weights {
                *w /= sum;
            }
            return Ok(());
        }
        Err(ProbError::NotNormalized { sum })
    }

    /// Re-checks the construction invariants on an existing value.
    pub fn validate(&self) -> Result<()> {
        let expected: usize = self.vars.iter().map(|v| v.card).product();
        if self.weights.len() != expected {
            return Err(ProbError::ShapeMismatch { expected, got: self.weights.len() });
        }
        for (index, &w) in self.weights.iter().enumerate() {
            if w < 0.0 || !w.is_finite() {
                return Err(ProbError::NegativeWeight { index, value: w });
            }
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > RENORM_TOL {
            return Err(ProbError::NotNormalized { sum });
        }
        Ok(())
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| ProbError::UnknownVariable(name.to_string()))
    }

    /// Strides for flat indexing (last variable fastest).
    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.vars.len()];
        for i in (0..self.vars.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.vars[i + 1].card;
        }
        strides
    }

    /// Sums out every variable not in `keep`. The kept variables stay in
    /// their original relative order; `keep` order does not matter.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        let mut keep_mask = vec![false; self.vars.len()];
        for name in keep {
            keep_mask[self.var_index(name)?] = true;
        }
        let kept: Vec<Var> = self
            .vars
            .iter()
            .zip(&keep_mask)
            .filter(|(_, &k)| k)
            .map(|(v, _)| v.clone())
            .collect();
        let out_len: usize = kept.iter().map(|v| v.card).product();
        let mut out = vec![0.0f64; out_len];

        let strides = self.strides();
        let mut out_strides = Vec::with_capacity(self.vars.len());
        {
            let mut s = out_len;
            for (v, &k) in self.vars.iter().zip(&keep_mask) {
                if k {
                    s /= v.card;
                    out_strides.push(s);
                } else {
                    out_strides.push(0);
                }
            }
        }
        for (flat, &w) in self.weights.iter().enumerate() {
            let mut o = 0usize;
            for (i, v) in self.vars.iter().enumerate() {
                let digit = (flat / strides[i]) % v.card;
                o += digit * out_strides[i];
            }
            out[o] += w;
        }
        JointPmf::new(kept, out)
    }

    /// Conditional entropy H(A | C) in bits; pass an empty `given` for H(A).
    pub fn entropy(&self, a: &[&str], given: &[&str]) -> Result<f64> {
        check_disjoint(&[a, given])?;
        let mac = self.marginalize(&union(&[a, given]))?;
        let mc = mac.marginalize(given)?;
        let pc = mac.project_onto(&mc)?;
        let mut h = 0.0;
        for (i, &p) in mac.weights.iter().enumerate() {
            if p > 0.0 {
                let c = pc[i];
                debug_assert!(c > 0.0, "conditioning mass must dominate");
                h += p * (c / p).log2();
            }
        }
        Ok(h)
    }

    /// Conditional mutual information I(A ; B | C) in bits, by direct
    /// summation over the (A,B,C) marginal with 0 log 0 taken as 0.
    pub fn cond_mutual_info(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        check_disjoint(&[a, b, c])?;
        let mabc = self.marginalize(&union(&[a, b, c]))?;
        let pac = mabc.project_onto(&mabc.marginalize(&union(&[a, c]))?)?;
        let pbc = mabc.project_onto(&mabc.marginalize(&union(&[b, c]))?)?;
        let pc = mabc.project_onto(&mabc.marginalize(c)?)?;
        let mut mi = 0.0;
        for (i, &p) in mabc.weights.iter().enumerate() {
            if p > 0.0 {
                debug_assert!(pac[i] > 0.0 && pbc[i] > 0.0 && pc[i] > 0.0);
                mi += p * (p * pc[i] / (pac[i] * pbc[i])).log2();
            }
        }
        Ok(mi)
    }

    /// For each cell of `self`, the value of `marginal` at the projection of
    /// that cell. `marginal`'s variables must be a subset of `self`'s.
    fn project_onto(&self, marginal: &JointPmf) -> Result<Vec<f64>> {
        let strides = self.strides();
        let m_strides = marginal.strides();
        // position of each marginal var inside self
        let mut pos = Vec::with_capacity(marginal.vars.len());
        for v in &marginal.vars {
            pos.push(self.var_index(&v.name)?);
        }
        let mut out = vec![0.0f64; self.weights.len()];
        for flat in 0..self.weights.len() {
            let mut m = 0usize;
            for (k, &p) in pos.iter().enumerate() {
                let digit = (flat / strides[p]) % self.vars[p].card;
                m += digit * m_strides[k];
            }
            out[flat] = marginal.weights[m];
        }
        Ok(out)
    }

    /// Probability of a single cell given by per-variable symbol indices in
    /// variable order.
    pub fn prob(&self, symbols: &[usize]) -> f64 {
        assert_eq!(symbols.len(), self.vars.len());
        let strides = self.strides();
        let mut flat = 0usize;
        for (i, &s) in symbols.iter().enumerate() {
            assert!(s < self.vars[i].card);
            flat += s * strides[i];
        }
        self.weights[flat]
    }
}

/// Ordered union of name sets, first occurrence wins.
pub fn union<'a>(sets: &[&[&'a str]]) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for set in sets {
        for name in *set {
            if !out.contains(name) {
                out.push(name);
            }
        }
    }
    out
}

fn check_disjoint(sets: &[&[&str]]) -> Result<()> {
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            for name in sets[i] {
                if sets[j].contains(name) {
                    return Err(ProbError::OverlappingSets(name.to_string()));
                }
            }
        }
    }
    Ok(())
}

/// A conditional pmf over `targets` given `given`, stored as one pmf row per
/// conditioning cell. Row index runs over `given` in declared order (last
/// fastest); within a row, targets in declared order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPmf {
    targets: Vec<Var>,
    given: Vec<Var>,
    table: Vec<f64>,
}

impl ConditionalPmf {
    pub fn new(targets: Vec<Var>, given: Vec<Var>, table: Vec<f64>) -> Result<Self> {
        let t: usize = targets.iter().map(|v| v.card).product();
        let g: usize = given.iter().map(|v| v.card).product();
        if t.checked_mul(g).map_or(true, |n| n > MAX_CELLS) {
            return Err(ProbError::TooLarge(t.saturating_mul(g)));
        }
        if table.len() != t * g {
            return Err(ProbError::ShapeMismatch { expected: t * g, got: table.len() });
        }
        let mut cp = ConditionalPmf { targets, given, table };
        for row in 0..g {
            let cells = &mut cp.table[row * t..(row + 1) * t];
            for (index, &w) in cells.iter().enumerate() {
                if w < 0.0 || !w.is_finite() {
                    return Err(ProbError::NegativeWeight { index: row * t + index, value: w });
                }
            }
            let sum: f64 = cells.iter().sum();
            let dev = (sum - 1.0).abs();
            if dev > NORM_TOL {
                if dev < RENORM_TOL {
                    for w in cells.iter_mut() {
                        *w /= sum;
                    }
                } else {
                    return Err(ProbError::NotNormalized { sum });
                }
            }
        }
        Ok(cp)
    }

    /// An unconditional factor (empty conditioning set).
    pub fn from_pmf(target: Var, pmf: Vec<f64>) -> Result<Self> {
        ConditionalPmf::new(vec![target], vec![], pmf)
    }

    /// Deterministic factor: `target = f(given cell)`.
    pub fn deterministic(target: Var, given: Vec<Var>, map: &[usize]) -> Result<Self> {
        let g: usize = given.iter().map(|v| v.card).product();
        if map.len() != g {
            return Err(ProbError::ShapeMismatch { expected: g, got: map.len() });
        }
        let t = target.card;
        let mut table = vec![0.0f64; t * g];
        for (row, &x) in map.iter().enumerate() {
            if x >= t {
                return Err(ProbError::ShapeMismatch { expected: t, got: x + 1 });
            }
            table[row * t + x] = 1.0;
        }
        ConditionalPmf::new(vec![target], given, table)
    }

    pub fn targets(&self) -> &[Var] {
        &self.targets
    }

    pub fn given(&self) -> &[Var] {
        &self.given
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }
}

/// Multiplies a factorization into a single joint. Factors are applied in
/// order; each factor may condition only on variables produced by earlier
/// factors, and each variable must be produced exactly once.
pub fn product_join(factors: &[ConditionalPmf]) -> Result<JointPmf> {
    let mut vars: Vec<Var> = Vec::new();
    for f in factors {
        for g in &f.given {
            match vars.iter().find(|v| v.name == g.name) {
                None => return Err(ProbError::DanglingVariable(g.name.clone())),
                Some(v) if v.card != g.card => {
                    return Err(ProbError::ShapeMismatch { expected: v.card, got: g.card })
                }
                _ => {}
            }
        }
        for t in &f.targets {
            if vars.iter().any(|v| v.name == t.name) {
                return Err(ProbError::DuplicateVariable(t.name.clone()));
            }
            vars.push(t.clone());
        }
    }
    let total: usize = vars.iter().map(|v| v.card).product();
    if total > MAX_CELLS {
        return Err(ProbError::TooLarge(total));
    }

    // Precompute, per factor, the positions of its given/target vars in the
    // final variable order.
    struct FactorIndex {
        given_pos: Vec<usize>,
        given_card: Vec<usize>,
        target_pos: Vec<usize>,
        target_card: Vec<usize>,
        t_size: usize,
    }
    let position = |name: &str| vars.iter().position(|v| v.name == name).unwrap();
    let idx: Vec<FactorIndex> = factors
        .iter()
        .map(|f| FactorIndex {
            given_pos: f.given.iter().map(|v| position(&v.name)).collect(),
            given_card: f.given.iter().map(|v| v.card).collect(),
            target_pos: f.targets.iter().map(|v| position(&v.name)).collect(),
            target_card: f.targets.iter().map(|v| v.card).collect(),
            t_size: f.targets.iter().map(|v| v.card).product(),
        })
        .collect();

    let mut strides = vec![1usize; vars.len()];
    for i in (0..vars.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * vars[i + 1].card;
    }
    let digits_of = |flat: usize, digits: &mut Vec<usize>| {
        digits.clear();
        for i in 0..vars.len() {
            digits.push((flat / strides[i]) % vars[i].card);
        }
    };

    let mut weights = vec![0.0f64; total];
    let mut digits: Vec<usize> = Vec::with_capacity(vars.len());
    for flat in 0..total {
        digits_of(flat, &mut digits);
        let mut w = 1.0f64;
        for (f, fi) in factors.iter().zip(&idx) {
            let mut row = 0usize;
            for (k, &p) in fi.given_pos.iter().enumerate() {
                row = row * fi.given_card[k] + digits[p];
            }
            let mut col = 0usize;
            for (k, &p) in fi.target_pos.iter().enumerate() {
                col = col * fi.target_card[k] + digits[p];
            }
            w *= f.table[row * fi.t_size + col];
            if w == 0.0 {
                break;
            }
        }
        weights[flat] = w;
    }
    JointPmf::new(vars, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bern(name: &str, p: f64) -> ConditionalPmf {
        ConditionalPmf::from_pmf(Var::new(name, 2), vec![1.0 - p, p]).unwrap()
    }

    #[test]
    fn validate_uniform_ok() {
        let j = JointPmf::new(
            vec![Var::new("A", 2), Var::new("B", 2)],
            vec![0.25, 0.25, 0.25, 0.25],
        );
        assert!(j.is_ok());
    }

    #[test]
    fn validate_rejects_unnormalized() {
        let e = JointPmf::new(vec![Var::new("A", 2)], vec![0.5, 0.6]).unwrap_err();
        assert!(matches!(e, ProbError::NotNormalized { .. }));
    }

    #[test]
    fn validate_rejects_negative() {
        let e = JointPmf::new(vec![Var::new("A", 2)], vec![-0.1, 1.1]).unwrap_err();
        assert!(matches!(e, ProbError::NegativeWeight { .. }));
    }

    #[test]
    fn validate_rejects_shape_mismatch() {
        let e = JointPmf::new(vec![Var::new("A", 2)], vec![0.5, 0.25, 0.25]).unwrap_err();
        assert!(matches!(e, ProbError::ShapeMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn renormalizes_tiny_deviation() {
        let j = JointPmf::new(vec![Var::new("A", 2)], vec![0.5, 0.5 + 3e-10]).unwrap();
        let sum: f64 = j.weights().iter().sum();
        assert!((sum - 1.0).abs() <= NORM_TOL);
    }

    #[test]
    fn join_deterministic_copy() {
        let a = bern("A", 0.5);
        let b = ConditionalPmf::deterministic(Var::new("B", 2), vec![Var::new("A", 2)], &[0, 1])
            .unwrap();
        let j = product_join(&[a, b]).unwrap();
        assert_eq!(j.weights(), &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn join_independent_pair() {
        let j = product_join(&[bern("A", 0.5), bern("B", 0.5)]).unwrap();
        assert_eq!(j.weights(), &[0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn join_correlated_state() {
        let s = bern("S", 0.5);
        let u = ConditionalPmf::new(
            vec![Var::new("U", 2)],
            vec![Var::new("S", 2)],
            vec![0.9, 0.1, 0.1, 0.9],
        )
        .unwrap();
        let j = product_join(&[s, u]).unwrap();
        let w = j.weights();
        for (got, want) in w.iter().zip([0.45, 0.05, 0.05, 0.45]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn join_rejects_dangling() {
        let u = ConditionalPmf::new(
            vec![Var::new("U", 2)],
            vec![Var::new("S", 2)],
            vec![0.9, 0.1, 0.1, 0.9],
        )
        .unwrap();
        let e = product_join(&[u]).unwrap_err();
        assert!(matches!(e, ProbError::DanglingVariable(ref n) if n == "S"));
    }

    #[test]
    fn marginalize_row_sums() {
        let j = JointPmf::new(
            vec![Var::new("S", 2), Var::new("U", 2)],
            vec![0.45, 0.05, 0.05, 0.45],
        )
        .unwrap();
        let m = j.marginalize(&["S"]).unwrap();
        assert_eq!(m.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn marginalize_keep_all_is_identity() {
        let j = JointPmf::new(
            vec![Var::new("S", 2), Var::new("U", 2)],
            vec![0.45, 0.05, 0.05, 0.45],
        )
        .unwrap();
        let m = j.marginalize(&["S", "U"]).unwrap();
        assert_eq!(m, j);
    }

    #[test]
    fn marginalize_empty_keeps_total_mass() {
        let j = JointPmf::new(vec![Var::new("S", 3)], vec![0.2, 0.3, 0.5]).unwrap();
        let m = j.marginalize(&[]).unwrap();
        assert_eq!(m.vars().len(), 0);
        assert_eq!(m.weights(), &[1.0]);
    }

    #[test]
    fn marginalize_unknown_var() {
        let j = JointPmf::new(vec![Var::new("S", 2)], vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            j.marginalize(&["T"]).unwrap_err(),
            ProbError::UnknownVariable(_)
        ));
    }

    #[test]
    fn mi_frozen_value() {
        // I(X;Y) of [[0.4,0.1],[0.1,0.4]] = 0.8*log2(1.6) + 0.2*log2(0.4)
        let j = JointPmf::new(
            vec![Var::new("X", 2), Var::new("Y", 2)],
            vec![0.4, 0.1, 0.1, 0.4],
        )
        .unwrap();
        let mi = j.cond_mutual_info(&["X"], &["Y"], &[]).unwrap();
        assert!((mi - 0.2780719051126377).abs() < 1e-12, "{mi}");
    }

    #[test]
    fn mi_independent_is_zero() {
        let j = product_join(&[bern("X", 0.5), bern("Y", 0.5)]).unwrap();
        let mi = j.cond_mutual_info(&["X"], &["Y"], &[]).unwrap();
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn mi_copy_channel_is_one_bit() {
        let x = bern("X", 0.5);
        let y = ConditionalPmf::deterministic(Var::new("Y", 2), vec![Var::new("X", 2)], &[0, 1])
            .unwrap();
        let j = product_join(&[x, y]).unwrap();
        let mi = j.cond_mutual_info(&["X"], &["Y"], &[]).unwrap();
        assert!((mi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mi_rejects_overlap() {
        let j = product_join(&[bern("X", 0.5), bern("Y", 0.5)]).unwrap();
        assert!(matches!(
            j.cond_mutual_info(&["X"], &["X"], &[]).unwrap_err(),
            ProbError::OverlappingSets(_)
        ));
    }

    #[test]
    fn entropy_fair_coin() {
        let j = product_join(&[bern("X", 0.5)]).unwrap();
        assert!((j.entropy(&["X"], &[]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_bern_09() {
        let j = product_join(&[bern("X", 0.9)]).unwrap();
        // -0.9 log2 0.9 - 0.1 log2 0.1
        assert!((j.entropy(&["X"], &[]).unwrap() - 0.4689955935892812).abs() < 1e-12);
    }

    #[test]
    fn entropy_point_mass_is_zero() {
        let j = JointPmf::new(vec![Var::new("X", 3)], vec![0.0, 1.0, 0.0]).unwrap();
        assert!(j.entropy(&["X"], &[]).unwrap().abs() < 1e-12);
    }

    fn arb_joint(max_vars: usize) -> impl Strategy<Value = JointPmf> {
        (1..=max_vars)
            .prop_flat_map(|k| {
                let cells = 1usize << k;
                proptest::collection::vec(0.01f64..1.0, cells).prop_map(move |raw| {
                    let sum: f64 = raw.iter().sum();
                    let w: Vec<f64> = raw.iter().map(|x| x / sum).collect();
                    let names = ["A", "B", "C", "D"];
                    let vars = (0..k).map(|i| Var::new(names[i], 2)).collect();
                    JointPmf::new(vars, w).unwrap()
                })
            })
            .prop_filter("need >= 2 vars", |j| j.vars().len() >= 2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cmi_nonnegative(j in arb_joint(4)) {
            let names: Vec<&str> = j.vars().iter().map(|v| v.name.as_str()).collect();
            let mi = j.cond_mutual_info(&[names[0]], &[names[1]], &names[2..]).unwrap();
            prop_assert!(mi >= -1e-12);
        }

        #[test]
        fn cmi_symmetric(j in arb_joint(4)) {
            let names: Vec<&str> = j.vars().iter().map(|v| v.name.as_str()).collect();
            let ab = j.cond_mutual_info(&[names[0]], &[names[1]], &names[2..]).unwrap();
            let ba = j.cond_mutual_info(&[names[1]], &[names[0]], &names[2..]).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
        }

        #[test]
        fn cmi_chain_rule(j in arb_joint(4)) {
            prop_assume!(j.vars().len() >= 3);
            let names: Vec<&str> = j.vars().iter().map(|v| v.name.as_str()).collect();
            let (a, b, d) = (names[0], names[1], names[2]);
            let c = &names[3..];
            let lhs = j.cond_mutual_info(&[a], &[b, d], c).unwrap();
            let rhs = j.cond_mutual_info(&[a], &[b], c).unwrap()
                + j.cond_mutual_info(&[a], &[d], &union(&[&[b], c])).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }

        #[test]
        fn entropy_difference_equals_cmi(j in arb_joint(4)) {
            let names: Vec<&str> = j.vars().iter().map(|v| v.name.as_str()).collect();
            let c = &names[2..];
            let h1 = j.entropy(&[names[0]], c).unwrap();
            let h2 = j.entropy(&[names[0]], &union(&[&[names[1]], c])).unwrap();
            let mi = j.cond_mutual_info(&[names[0]], &[names[1]], c).unwrap();
            prop_assert!((h1 - h2 - mi).abs() < 1e-9);
        }

        #[test]
        fn join_then_marginalize_recovers_factors(pa in 0.05f64..0.95, pb in 0.05f64..0.95) {
            let j = product_join(&[bern("A", pa), bern("B", pb)]).unwrap();
            let ma = j.marginalize(&["A"]).unwrap();
            let mb = j.marginalize(&["B"]).unwrap();
            prop_assert!((ma.weights()[1] - pa).abs() < 1e-12);
            prop_assert!((mb.weights()[1] - pb).abs() < 1e-12);
        }
    }
}
