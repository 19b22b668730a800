//! Evaluates the two constraint sets on a joint distribution, producing
//! 4-D rate polytopes and their exact 2-D projections.

use num::Zero;
use thiserror::Error;

use crate::fm::{self, LinearSystem, Rat, RhsVal};
use crate::prob::{JointPmf, ProbError};
use crate::theorems::{ConstraintSpec, Scheme, RATE_NAMES};

/// Absolute slack for floating-point membership checks.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;
/// A per-distribution region is declared empty below this rhs.
pub const EMPTY_RHS_TOL: f64 = -1e-9;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("joint is missing variable `{0}`")]
    MissingVariable(String),
    #[error("region is empty")]
    EmptyRegion,
    #[error("region is unbounded")]
    Unbounded,
    #[error(transparent)]
    Fm(#[from] fm::FmError),
}

pub type Result<T> = std::result::Result<T, RegionError>;

/// A rate split `(R10, R11, R20, R22)` in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTuple {
    pub r10: f64,
    pub r11: f64,
    pub r20: f64,
    pub r22: f64,
}

impl RateTuple {
    pub fn new(r10: f64, r11: f64, r20: f64, r22: f64) -> Self {
        RateTuple { r10, r11, r20, r22 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.r10, self.r11, self.r20, self.r22]
    }

    pub fn pair(&self) -> (f64, f64) {
        (self.r10 + self.r11, self.r20 + self.r22)
    }
}

/// One evaluated mutual-information term of a constraint's rhs.
#[derive(Debug, Clone)]
pub struct EvaluatedTerm {
    pub sign: i8,
    pub symbol: String,
    pub value_bits: f64,
}

/// One evaluated inequality `coeffs . (R10,R11,R20,R22) <= rhs`.
#[derive(Debug, Clone)]
pub struct RateConstraint {
    pub tag: String,
    pub coeffs: [u8; 4],
    pub terms: Vec<EvaluatedTerm>,
    pub rhs: f64,
}

/// The per-distribution 4-D polytope (non-negativity is implicit).
#[derive(Debug, Clone)]
pub struct RatePolytope {
    pub scheme: Scheme,
    pub constraints: Vec<RateConstraint>,
}

fn evaluate_specs(joint: &JointPmf, specs: &[ConstraintSpec]) -> Result<Vec<RateConstraint>> {
    // every scheme variable must be present
    for name in crate::channel::JOINT_VARS {
        if joint.var_index(name).is_err() {
            return Err(RegionError::MissingVariable(name.to_string()));
        }
    }
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let mut rhs = 0.0;
        let mut terms = Vec::with_capacity(spec.terms.len());
        for t in spec.terms {
            let v = joint
                .cond_mutual_info(t.a, t.b, t.c)
                .map_err(|e| match e {
                    ProbError::UnknownVariable(n) => RegionError::MissingVariable(n),
                    other => RegionError::MissingVariable(other.to_string()),
                })?;
            rhs += f64::from(t.sign) * v;
            terms.push(EvaluatedTerm { sign: t.sign, symbol: t.symbol(), value_bits: v });
        }
        out.push(RateConstraint { tag: spec.tag.to_string(), coeffs: spec.rates, terms, rhs });
    }
    Ok(out)
}

/// The twelve simultaneous-encoding inequalities evaluated on `joint`.
pub fn theorem1_constraints(joint: &JointPmf) -> Result<Vec<RateConstraint>> {
    evaluate_specs(joint, &crate::theorems::THEOREM1)
}

/// The eight superposition-encoding inequalities evaluated on `joint`.
pub fn theorem2_constraints(joint: &JointPmf) -> Result<Vec<RateConstraint>> {
    evaluate_specs(joint, &crate::theorems::THEOREM2)
}

pub fn polytope_for(scheme: Scheme, joint: &JointPmf) -> Result<RatePolytope> {
    let constraints = evaluate_specs(joint, scheme.constraints())?;
    Ok(RatePolytope { scheme, constraints })
}

impl RatePolytope {
    /// Empty when some rhs is meaningfully negative (the rates are
    /// non-negative, so such a row cannot be satisfied).
    pub fn is_empty(&self) -> bool {
        self.constraints.iter().any(|c| c.rhs < EMPTY_RHS_TOL)
    }

    pub fn constraint(&self, tag: &str) -> Option<&RateConstraint> {
        self.constraints.iter().find(|c| c.tag == tag)
    }
}

/// True iff `t` is componentwise non-negative and satisfies every
/// constraint within [`MEMBERSHIP_SLACK`].
pub fn membership(poly: &RatePolytope, t: RateTuple) -> bool {
    let rates = t.as_array();
    if rates.iter().any(|&r| r < -MEMBERSHIP_SLACK) {
        return false;
    }
    poly.constraints.iter().all(|c| {
        let lhs: f64 = c
            .coeffs
            .iter()
            .zip(rates)
            .map(|(&k, r)| f64::from(k) * r)
            .sum();
        lhs <= c.rhs + MEMBERSHIP_SLACK
    })
}

/// The exact 2-D projection of a rate polytope onto `(R1, R2)`.
#[derive(Debug, Clone)]
pub struct Region2D {
    pub system: LinearSystem,
}

impl Region2D {
    pub fn contains(&self, r1: f64, r2: f64) -> bool {
        self.system
            .contains_point_f64(&[r1, r2], MEMBERSHIP_SLACK)
            .unwrap_or(false)
    }

    /// Polygon vertices, counter-clockwise, as floats.
    pub fn vertices(&self) -> Result<Vec<(f64, f64)>> {
        let vs = fm::vertices_2d(&self.system).map_err(map_fm)?;
        Ok(vs
            .into_iter()
            .map(|(x, y)| (fm::rat_to_f64(&x), fm::rat_to_f64(&y)))
            .collect())
    }

    pub fn vertices_exact(&self) -> Result<Vec<(Rat, Rat)>> {
        fm::vertices_2d(&self.system).map_err(map_fm)
    }
}

fn map_fm(e: fm::FmError) -> RegionError {
    match e {
        fm::FmError::EmptyRegion => RegionError::EmptyRegion,
        fm::FmError::Unbounded => RegionError::Unbounded,
        other => RegionError::Fm(other),
    }
}

/// Builds the 4-variable system over `(R10, R20, R1, R2)` with the
/// substitutions `R11 = R1 - R10`, `R22 = R2 - R20` and the split bounds,
/// rhs snapped to rationals.
fn substituted_system(poly: &RatePolytope) -> LinearSystem {
    let vars: Vec<String> = ["R10", "R20", "R1", "R2"].map(str::to_string).to_vec();
    let mut sys = LinearSystem::new(vars);
    for c in &poly.constraints {
        let [r10, r11, r20, r22] = c.coeffs.map(i64::from);
        let coeffs = vec![
            fm::rat_int(r10 - r11),
            fm::rat_int(r20 - r22),
            fm::rat_int(r11),
            fm::rat_int(r22),
        ];
        sys.push_num(coeffs, fm::snap(c.rhs), Some(&c.tag));
    }
    let z = Rat::zero;
    sys.push_num(vec![fm::rat_int(-1), z(), z(), z()], z(), Some("nn-R10"));
    sys.push_num(vec![fm::rat_int(1), z(), fm::rat_int(-1), z()], z(), Some("split-1"));
    sys.push_num(vec![z(), fm::rat_int(-1), z(), z()], z(), Some("nn-R20"));
    sys.push_num(vec![z(), fm::rat_int(1), z(), fm::rat_int(-1)], z(), Some("split-2"));
    sys
}

/// Projects the 4-D polytope to the achievable `(R1, R2) = (R10+R11,
/// R20+R22)` pairs via Fourier–Motzkin elimination, pruning redundant rows.
pub fn project_to_pairs(poly: &RatePolytope) -> Result<Region2D> {
    if poly.is_empty() {
        return Err(RegionError::EmptyRegion);
    }
    let sys = substituted_system(poly);
    let step1 = fm::eliminate(&sys, "R10")?;
    let step2 = fm::eliminate(&step1, "R20")?;
    let pruned = fm::prune_redundant(&step2)?;
    // infeasibility shows up as a 0 <= negative row
    for row in &pruned.rows {
        if row.is_zero() {
            if let RhsVal::Num(r) = &row.rhs {
                if r < &Rat::zero() {
                    return Err(RegionError::EmptyRegion);
                }
            }
        }
    }
    Ok(Region2D { system: pruned })
}

/// `max lambda*R1 + (1-lambda)*R2` over the projected region, via vertex
/// enumeration.
pub fn max_weighted_sum(region: &Region2D, lambda: f64) -> Result<f64> {
    assert!((0.0..=1.0).contains(&lambda), "lambda must lie in [0,1]");
    let vs = region.vertices()?;
    vs.iter()
        .map(|&(r1, r2)| lambda * r1 + (1.0 - lambda) * r2)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
        .ok_or(RegionError::EmptyRegion)
}

/// Same objective together with the achieving vertex.
pub fn max_weighted_sum_point(region: &Region2D, lambda: f64) -> Result<(f64, (f64, f64))> {
    let vs = region.vertices()?;
    let mut best: Option<(f64, (f64, f64))> = None;
    for &(r1, r2) in &vs {
        let v = lambda * r1 + (1.0 - lambda) * r2;
        if best.map_or(true, |(b, _)| v > b) {
            best = Some((v, (r1, r2)));
        }
    }
    best.ok_or(RegionError::EmptyRegion)
}

/// Projects a parsed 4-variable rate system (over `R10, R11, R20, R22`)
/// exactly, without a float round trip. Used by the constraint-file path.
pub fn project_rate_system(sys: &LinearSystem) -> Result<Region2D> {
    let vars: Vec<String> = ["R10", "R20", "R1", "R2"].map(str::to_string).to_vec();
    let mut sub = LinearSystem::new(vars);
    let pos = |name: &str| sys.vars.iter().position(|v| v == name);
    let (p10, p11, p20, p22) = (pos("R10"), pos("R11"), pos("R20"), pos("R22"));
    for row in &sys.rows {
        let get = |p: Option<usize>| p.map(|i| row.coeffs[i].clone()).unwrap_or_else(Rat::zero);
        let (c10, c11, c20, c22) = (get(p10), get(p11), get(p20), get(p22));
        let coeffs = vec![&c10 - &c11, &c20 - &c22, c11, c22];
        sub.push(coeffs, row.rhs.clone(), row.tag.as_deref());
    }
    let z = Rat::zero;
    sub.push_num(vec![fm::rat_int(-1), z(), z(), z()], z(), Some("nn-R10"));
    sub.push_num(vec![fm::rat_int(1), z(), fm::rat_int(-1), z()], z(), Some("split-1"));
    sub.push_num(vec![z(), fm::rat_int(-1), z(), z()], z(), Some("nn-R20"));
    sub.push_num(vec![z(), fm::rat_int(1), z(), fm::rat_int(-1)], z(), Some("split-2"));
    let step1 = fm::eliminate(&sub, "R10")?;
    let step2 = fm::eliminate(&step1, "R20")?;
    let pruned = fm::prune_redundant(&step2)?;
    for row in &pruned.rows {
        if row.is_zero() {
            if let RhsVal::Num(r) = &row.rhs {
                if r < &Rat::zero() {
                    return Err(RegionError::EmptyRegion);
                }
            }
        }
    }
    Ok(Region2D { system: pruned })
}

/// Writes the 4-D constraint set in the text format.
pub fn write_polytope(poly: &RatePolytope) -> String {
    let vars: Vec<String> = RATE_NAMES.map(str::to_string).to_vec();
    let mut sys = LinearSystem::new(vars);
    for c in &poly.constraints {
        let coeffs = c.coeffs.iter().map(|&k| fm::rat_int(i64::from(k))).collect();
        sys.push_num(coeffs, fm::snap(c.rhs), Some(&c.tag));
    }
    fm::write_system(&sys)
}
