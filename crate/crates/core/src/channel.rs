//! The state-dependent interference channel and the two schemes' input
//! factorizations; assembles the full joint distribution consumed by the
//! region and simulator layers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prob::{product_join, ConditionalPmf, JointPmf, ProbError, Var};

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("{context}: {source}")]
    Prob {
        context: String,
        #[source]
        source: ProbError,
    },
    #[error("alphabet mismatch for {what}: expected {expected}, got {got}")]
    AlphabetMismatch { what: String, expected: usize, got: usize },
    #[error("encoder map output {got} outside alphabet of size {card}")]
    MapRange { got: usize, card: usize },
    #[error("invalid channel file: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, ChannelError>;

fn prob_err(context: &str) -> impl FnOnce(ProbError) -> ChannelError + '_ {
    move |source| ChannelError::Prob { context: context.to_string(), source }
}

/// Canonical variable names of the full scheme joint, in tensor order.
pub const JOINT_VARS: [&str; 10] =
    ["Q", "S", "U1", "V1", "U2", "V2", "X1", "X2", "Y1", "Y2"];

/// Channel law `p(y1, y2 | x1, x2, s)` plus the state pmf.
#[derive(Debug, Clone)]
pub struct ChannelSpec {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    pub s: usize,
    pub state_pmf: Vec<f64>,
    /// Flat law indexed `[s][x1][x2][y1][y2]`, each `(s,x1,x2)` cell a pmf.
    pub law: Vec<f64>,
}

impl ChannelSpec {
    pub fn new(
        (x1, x2, y1, y2, s): (usize, usize, usize, usize, usize),
        state_pmf: Vec<f64>,
        law: Vec<f64>,
    ) -> Result<Self> {
        let spec = ChannelSpec { x1, x2, y1, y2, s, state_pmf, law };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.state_pmf.len() != self.s {
            return Err(ChannelError::AlphabetMismatch {
                what: "state_pmf".into(),
                expected: self.s,
                got: self.state_pmf.len(),
            });
        }
        let expected = self.s * self.x1 * self.x2 * self.y1 * self.y2;
        if self.law.len() != expected {
            return Err(ChannelError::AlphabetMismatch {
                what: "law".into(),
                expected,
                got: self.law.len(),
            });
        }
        // normalization is enforced by the factor constructors below
        self.state_factor()?;
        self.law_factor()?;
        Ok(())
    }

    pub fn state_factor(&self) -> Result<ConditionalPmf> {
        ConditionalPmf::from_pmf(Var::new("S", self.s), self.state_pmf.clone())
            .map_err(prob_err("state_pmf"))
    }

    /// Factor with targets (Y1, Y2) given (S, X1, X2), matching the flat
    /// law layout.
    pub fn law_factor(&self) -> Result<ConditionalPmf> {
        ConditionalPmf::new(
            vec![Var::new("Y1", self.y1), Var::new("Y2", self.y2)],
            vec![
                Var::new("S", self.s),
                Var::new("X1", self.x1),
                Var::new("X2", self.x2),
            ],
            self.law.clone(),
        )
        .map_err(prob_err("law"))
    }

    /// Law cell `(s, x1, x2)` as a pmf slice over `(y1, y2)`, y1-major.
    pub fn law_cell(&self, s: usize, x1: usize, x2: usize) -> &[f64] {
        let cell = (s * self.x1 + x1) * self.x2 + x2;
        let width = self.y1 * self.y2;
        &self.law[cell * width..(cell + 1) * width]
    }
}

/// Deterministic per-symbol encoder table `F : U x V x S -> X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderMap {
    pub u: usize,
    pub v: usize,
    pub s: usize,
    pub x: usize,
    /// Flat table indexed `[u][v][s]`.
    pub table: Vec<usize>,
}

impl EncoderMap {
    pub fn new(u: usize, v: usize, s: usize, x: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != u * v * s {
            return Err(ChannelError::AlphabetMismatch {
                what: "encoder map".into(),
                expected: u * v * s,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= x) {
            return Err(ChannelError::MapRange { got: bad, card: x });
        }
        Ok(EncoderMap { u, v, s, x, table })
    }

    /// `x = v mod |X|`, the identity when `|V| = |X|`.
    pub fn identity_on_v(u: usize, v: usize, s: usize, x: usize) -> Self {
        let mut table = Vec::with_capacity(u * v * s);
        for _u in 0..u {
            for vv in 0..v {
                for _s in 0..s {
                    table.push(vv % x);
                }
            }
        }
        EncoderMap { u, v, s, x, table }
    }

    #[inline]
    pub fn apply(&self, u: usize, v: usize, s: usize) -> usize {
        self.table[(u * self.v + v) * self.s + s]
    }

    fn factor(&self, x_name: &str, u_name: &str, v_name: &str) -> Result<ConditionalPmf> {
        ConditionalPmf::deterministic(
            Var::new(x_name, self.x),
            vec![
                Var::new(u_name, self.u),
                Var::new(v_name, self.v),
                Var::new("S", self.s),
            ],
            &self.table,
        )
        .map_err(prob_err("encoder map"))
    }
}

/// Conditional table `[q][s] -> pmf over the target alphabet`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxTable {
    pub card: usize,
    /// Flat weights indexed `[q][s][target]`.
    pub weights: Vec<f64>,
}

impl AuxTable {
    pub fn constant(card: usize, q: usize, s: usize) -> Self {
        let mut weights = vec![0.0; q * s * card];
        for cell in 0..q * s {
            weights[cell * card] = 1.0;
        }
        AuxTable { card, weights }
    }

    fn factor(&self, name: &str, q: usize, s: usize) -> Result<ConditionalPmf> {
        ConditionalPmf::new(
            vec![Var::new(name, self.card)],
            vec![Var::new("Q", q), Var::new("S", s)],
            self.weights.clone(),
        )
        .map_err(prob_err(name))
    }
}

/// Conditional table `[u][q][s] -> pmf` for superposition private layers.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperposedTable {
    pub card: usize,
    /// Flat weights indexed `[u][q][s][target]`.
    pub weights: Vec<f64>,
}

impl SuperposedTable {
    pub fn constant(card: usize, u: usize, q: usize, s: usize) -> Self {
        let mut weights = vec![0.0; u * q * s * card];
        for cell in 0..u * q * s {
            weights[cell * card] = 1.0;
        }
        SuperposedTable { card, weights }
    }

    /// Lifts a state-conditioned table by ignoring the public layer.
    pub fn from_aux(aux: &AuxTable, u: usize) -> Self {
        let mut weights = Vec::with_capacity(u * aux.weights.len());
        for _ in 0..u {
            weights.extend_from_slice(&aux.weights);
        }
        SuperposedTable { card: aux.card, weights }
    }

    fn factor(&self, name: &str, u_name: &str, u: usize, q: usize, s: usize) -> Result<ConditionalPmf> {
        ConditionalPmf::new(
            vec![Var::new(name, self.card)],
            vec![Var::new(u_name, u), Var::new("Q", q), Var::new("S", s)],
            self.weights.clone(),
        )
        .map_err(prob_err(name))
    }
}

/// Simultaneous-encoding input distribution:
/// `p(q) p(u1|q,s) p(v1|q,s) p(u2|q,s) p(v2|q,s)` plus the encoder maps.
#[derive(Debug, Clone)]
pub struct Scheme1Distribution {
    pub q: Vec<f64>,
    pub u1: AuxTable,
    pub v1: AuxTable,
    pub u2: AuxTable,
    pub v2: AuxTable,
    pub f1: EncoderMap,
    pub f2: EncoderMap,
}

/// Superposition input distribution:
/// `p(q) p(u1|s,q) p(v1|u1,s,q) p(u2|s,q) p(v2|u2,s,q)` plus maps.
#[derive(Debug, Clone)]
pub struct Scheme2Distribution {
    pub q: Vec<f64>,
    pub u1: AuxTable,
    pub v1: SuperposedTable,
    pub u2: AuxTable,
    pub v2: SuperposedTable,
    pub g1: EncoderMap,
    pub g2: EncoderMap,
}

fn check_map(map: &EncoderMap, u: usize, v: usize, s: usize, x: usize, what: &str) -> Result<()> {
    if map.u != u || map.v != v || map.s != s || map.x != x {
        return Err(ChannelError::AlphabetMismatch {
            what: what.into(),
            expected: u * v * s,
            got: map.u * map.v * map.s,
        });
    }
    Ok(())
}

/// Joint over `(Q,S,U1,V1,U2,V2,X1,X2,Y1,Y2)` for the simultaneous scheme.
pub fn build_joint_scheme1(channel: &ChannelSpec, dist: &Scheme1Distribution) -> Result<JointPmf> {
    let q = dist.q.len();
    let s = channel.s;
    check_map(&dist.f1, dist.u1.card, dist.v1.card, s, channel.x1, "F1")?;
    check_map(&dist.f2, dist.u2.card, dist.v2.card, s, channel.x2, "F2")?;
    let factors = vec![
        ConditionalPmf::from_pmf(Var::new("Q", q), dist.q.clone()).map_err(prob_err("p(q)"))?,
        channel.state_factor()?,
        dist.u1.factor("U1", q, s)?,
        dist.v1.factor("V1", q, s)?,
        dist.u2.factor("U2", q, s)?,
        dist.v2.factor("V2", q, s)?,
        dist.f1.factor("X1", "U1", "V1")?,
        dist.f2.factor("X2", "U2", "V2")?,
        channel.law_factor()?,
    ];
    product_join(&factors).map_err(prob_err("scheme-1 joint"))
}

/// Joint over the same variables for the superposition scheme.
pub fn build_joint_scheme2(channel: &ChannelSpec, dist: &Scheme2Distribution) -> Result<JointPmf> {
    let q = dist.q.len();
    let s = channel.s;
    check_map(&dist.g1, dist.u1.card, dist.v1.card, s, channel.x1, "G1")?;
    check_map(&dist.g2, dist.u2.card, dist.v2.card, s, channel.x2, "G2")?;
    let factors = vec![
        ConditionalPmf::from_pmf(Var::new("Q", q), dist.q.clone()).map_err(prob_err("p(q)"))?,
        channel.state_factor()?,
        dist.u1.factor("U1", q, s)?,
        dist.v1.factor("V1", "U1", dist.u1.card, q, s)?,
        dist.u2.factor("U2", q, s)?,
        dist.v2.factor("V2", "U2", dist.u2.card, q, s)?,
        dist.g1.factor("X1", "U1", "V1")?,
        dist.g2.factor("X2", "U2", "V2")?,
        channel.law_factor()?,
    ];
    product_join(&factors).map_err(prob_err("scheme-2 joint"))
}

/// Reads a simultaneous-encoding distribution as a superposition one whose
/// private layers ignore the public codeword; the joint is unchanged.
pub fn embed_scheme1_in_scheme2(dist: &Scheme1Distribution) -> Scheme2Distribution {
    Scheme2Distribution {
        q: dist.q.clone(),
        u1: dist.u1.clone(),
        v1: SuperposedTable::from_aux(&dist.v1, dist.u1.card),
        u2: dist.u2.clone(),
        v2: SuperposedTable::from_aux(&dist.v2, dist.u2.card),
        g1: dist.f1.clone(),
        g2: dist.f2.clone(),
    }
}

// ---------------------------------------------------------------------------
// JSON schema

/// On-disk channel description. `law` is indexed `[s][x1][x2]` and each
/// leaf is a flat pmf over `(y1, y2)` in y1-major order.
#[derive(Debug, Serialize, Deserialize)]
pub struct ChannelFile {
    pub alphabets: ChannelAlphabets,
    pub state_pmf: Vec<f64>,
    pub law: Vec<Vec<Vec<Vec<f64>>>>,
}

#[derive(Debug, Serialize, Deserialize, Clone, Copy)]
#[allow(non_snake_case)]
pub struct ChannelAlphabets {
    pub X1: usize,
    pub X2: usize,
    pub Y1: usize,
    pub Y2: usize,
    pub S: usize,
}

impl ChannelFile {
    pub fn into_spec(self) -> Result<ChannelSpec> {
        let a = self.alphabets;
        let mut law = Vec::with_capacity(a.S * a.X1 * a.X2 * a.Y1 * a.Y2);
        if self.law.len() != a.S {
            return Err(ChannelError::Schema(format!(
                "law: expected {} state slices, got {}",
                a.S,
                self.law.len()
            )));
        }
        for (s, slice) in self.law.iter().enumerate() {
            if slice.len() != a.X1 {
                return Err(ChannelError::Schema(format!(
                    "law[{s}]: expected {} x1 entries, got {}",
                    a.X1,
                    slice.len()
                )));
            }
            for (x1, row) in slice.iter().enumerate() {
                if row.len() != a.X2 {
                    return Err(ChannelError::Schema(format!(
                        "law[{s}][{x1}]: expected {} x2 entries, got {}",
                        a.X2,
                        row.len()
                    )));
                }
                for (x2, cell) in row.iter().enumerate() {
                    if cell.len() != a.Y1 * a.Y2 {
                        return Err(ChannelError::Schema(format!(
                            "law[{s}][{x1}][{x2}]: expected {} outputs, got {}",
                            a.Y1 * a.Y2,
                            cell.len()
                        )));
                    }
                    law.extend_from_slice(cell);
                }
            }
        }
        ChannelSpec::new((a.X1, a.X2, a.Y1, a.Y2, a.S), self.state_pmf, law)
    }

    pub fn from_spec(spec: &ChannelSpec) -> Self {
        let mut law = Vec::with_capacity(spec.s);
        for s in 0..spec.s {
            let mut x1v = Vec::with_capacity(spec.x1);
            for x1 in 0..spec.x1 {
                let mut x2v = Vec::with_capacity(spec.x2);
                for x2 in 0..spec.x2 {
                    x2v.push(spec.law_cell(s, x1, x2).to_vec());
                }
                x1v.push(x2v);
            }
            law.push(x1v);
        }
        ChannelFile {
            alphabets: ChannelAlphabets {
                X1: spec.x1,
                X2: spec.x2,
                Y1: spec.y1,
                Y2: spec.y2,
                S: spec.s,
            },
            state_pmf: spec.state_pmf.clone(),
            law,
        }
    }
}

/// On-disk auxiliary-distribution description for either scheme.
/// Scheme 1 tables are indexed `[q][s]`; scheme-2 private tables add a
/// leading public index: `[u][q][s]`. Maps are indexed `[u][v][s]` and may
/// be omitted when `|V| = |X|` (identity on `v` is used).
#[derive(Debug, Serialize, Deserialize)]
pub struct DistFile {
    pub scheme: u8,
    pub cards: DistCards,
    pub q: Vec<f64>,
    pub u1: Vec<Vec<f64>>,
    pub v1: serde_json::Value,
    pub u2: Vec<Vec<f64>>,
    pub v2: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<Vec<Vec<Vec<usize>>>>,
}

#[derive(Debug, Serialize, Deserialize, Clone, Copy)]
#[allow(non_snake_case)]
pub struct DistCards {
    pub Q: usize,
    pub U1: usize,
    pub V1: usize,
    pub U2: usize,
    pub V2: usize,
}

fn parse_aux(raw: &[Vec<f64>], card: usize, q: usize, s: usize, what: &str) -> Result<AuxTable> {
    if raw.len() != q * s {
        return Err(ChannelError::Schema(format!(
            "{what}: expected {} rows ([q][s] flattened q-major), got {}",
            q * s,
            raw.len()
        )));
    }
    let mut weights = Vec::with_capacity(q * s * card);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != card {
            return Err(ChannelError::Schema(format!(
                "{what}[{i}]: expected pmf of length {card}, got {}",
                row.len()
            )));
        }
        weights.extend_from_slice(row);
    }
    Ok(AuxTable { card, weights })
}

fn parse_map(
    raw: Option<&Vec<Vec<Vec<usize>>>>,
    u: usize,
    v: usize,
    s: usize,
    x: usize,
    what: &str,
) -> Result<EncoderMap> {
    match raw {
        None => Ok(EncoderMap::identity_on_v(u, v, s, x)),
        Some(t) => {
            let mut table = Vec::with_capacity(u * v * s);
            if t.len() != u {
                return Err(ChannelError::Schema(format!("{what}: expected {u} u-slices")));
            }
            for uu in t {
                if uu.len() != v {
                    return Err(ChannelError::Schema(format!("{what}: expected {v} v-rows")));
                }
                for vv in uu {
                    if vv.len() != s {
                        return Err(ChannelError::Schema(format!("{what}: expected {s} s-cells")));
                    }
                    table.extend_from_slice(vv);
                }
            }
            EncoderMap::new(u, v, s, x, table)
        }
    }
}

/// Either scheme's parsed distribution.
#[derive(Debug, Clone)]
pub enum SchemeDistribution {
    Scheme1(Scheme1Distribution),
    Scheme2(Scheme2Distribution),
}

impl SchemeDistribution {
    pub fn build_joint(&self, channel: &ChannelSpec) -> Result<JointPmf> {
        match self {
            SchemeDistribution::Scheme1(d) => build_joint_scheme1(channel, d),
            SchemeDistribution::Scheme2(d) => build_joint_scheme2(channel, d),
        }
    }
}

impl DistFile {
    pub fn into_distribution(self, channel: &ChannelSpec) -> Result<SchemeDistribution> {
        let c = self.cards;
        let q = c.Q;
        let s = channel.s;
        if self.q.len() != q {
            return Err(ChannelError::Schema(format!(
                "q: expected pmf of length {q}, got {}",
                self.q.len()
            )));
        }
        let u1 = parse_aux(&self.u1, c.U1, q, s, "u1")?;
        let u2 = parse_aux(&self.u2, c.U2, q, s, "u2")?;
        let f1 = parse_map(self.f1.as_ref(), c.U1, c.V1, s, channel.x1, "f1")?;
        let f2 = parse_map(self.f2.as_ref(), c.U2, c.V2, s, channel.x2, "f2")?;
        match self.scheme {
            1 => {
                let v1 = parse_aux(&from_json2(&self.v1, "v1")?, c.V1, q, s, "v1")?;
                let v2 = parse_aux(&from_json2(&self.v2, "v2")?, c.V2, q, s, "v2")?;
                Ok(SchemeDistribution::Scheme1(Scheme1Distribution {
                    q: self.q,
                    u1,
                    v1,
                    u2,
                    v2,
                    f1,
                    f2,
                }))
            }
            2 => {
                let v1 = parse_super(&self.v1, c.V1, c.U1, q, s, "v1")?;
                let v2 = parse_super(&self.v2, c.V2, c.U2, q, s, "v2")?;
                Ok(SchemeDistribution::Scheme2(Scheme2Distribution {
                    q: self.q,
                    u1,
                    v1,
                    u2,
                    v2,
                    g1: f1,
                    g2: f2,
                }))
            }
            n => Err(ChannelError::Schema(format!("scheme must be 1 or 2, got {n}"))),
        }
    }
}

fn from_json2(v: &serde_json::Value, what: &str) -> Result<Vec<Vec<f64>>> {
    serde_json::from_value(v.clone())
        .map_err(|e| ChannelError::Schema(format!("{what}: {e}")))
}

fn parse_super(
    v: &serde_json::Value,
    card: usize,
    u: usize,
    q: usize,
    s: usize,
    what: &str,
) -> Result<SuperposedTable> {
    let raw: Vec<Vec<f64>> = from_json2(v, what)?;
    if raw.len() != u * q * s {
        return Err(ChannelError::Schema(format!(
            "{what}: expected {} rows ([u][q][s] flattened), got {}",
            u * q * s,
            raw.len()
        )));
    }
    let mut weights = Vec::with_capacity(u * q * s * card);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != card {
            return Err(ChannelError::Schema(format!(
                "{what}[{i}]: expected pmf of length {card}, got {}",
                row.len()
            )));
        }
        weights.extend_from_slice(row);
    }
    Ok(SuperposedTable { card, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn identity_channel() -> ChannelSpec {
        // Y1 = X1, Y2 = X2, |S| = 1
        let mut law = Vec::new();
        for x1 in 0..2 {
            for x2 in 0..2 {
                let mut cell = vec![0.0; 4];
                cell[x1 * 2 + x2] = 1.0;
                law.extend(cell);
            }
        }
        ChannelSpec::new((2, 2, 2, 2, 1), vec![1.0], law).unwrap()
    }

    fn constant_dist(channel: &ChannelSpec, v1_card: usize) -> Scheme1Distribution {
        Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable::constant(1, 1, channel.s),
            v1: AuxTable::constant(v1_card, 1, channel.s),
            u2: AuxTable::constant(1, 1, channel.s),
            v2: AuxTable::constant(1, 1, channel.s),
            f1: EncoderMap::identity_on_v(1, v1_card, channel.s, channel.x1),
            f2: EncoderMap::identity_on_v(1, 1, channel.s, channel.x2),
        }
    }

    #[test]
    fn degenerate_factors_reduce_to_channel_law() {
        let ch = identity_channel();
        let dist = constant_dist(&ch, 1);
        let joint = build_joint_scheme1(&ch, &dist).unwrap();
        // all inputs pinned to symbol 0, so Y1=0, Y2=0 with probability 1
        let m = joint.marginalize(&["Y1", "Y2"]).unwrap();
        assert_eq!(m.weights()[0], 1.0);
    }

    #[test]
    fn copy_channel_private_rate_is_one_bit() {
        let ch = identity_channel();
        let mut dist = constant_dist(&ch, 2);
        dist.v1 = AuxTable { card: 2, weights: vec![0.5, 0.5] };
        let joint = build_joint_scheme1(&ch, &dist).unwrap();
        let mi = joint
            .cond_mutual_info(&["V1"], &["Y1"], &["U1", "U2", "Q"])
            .unwrap();
        assert!((mi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stuck_at_marginal_matches_direct_product() {
        // binary state, p(u1|s) 0.9-correlated
        let mut law = Vec::new();
        for _s in 0..2 {
            for x1 in 0..2 {
                for _x2 in 0..1 {
                    let mut cell = vec![0.0; 2];
                    cell[x1] = 1.0;
                    law.extend(cell);
                }
            }
        }
        let ch = ChannelSpec::new((2, 1, 2, 1, 2), vec![0.5, 0.5], law).unwrap();
        let dist = Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable { card: 2, weights: vec![0.9, 0.1, 0.1, 0.9] },
            v1: AuxTable::constant(2, 1, 2),
            u2: AuxTable::constant(1, 1, 2),
            v2: AuxTable::constant(1, 1, 2),
            f1: EncoderMap::identity_on_v(2, 2, 2, 2),
            f2: EncoderMap::identity_on_v(1, 1, 2, 1),
        };
        let joint = build_joint_scheme1(&ch, &dist).unwrap();
        let m = joint.marginalize(&["S", "U1"]).unwrap();
        for (got, want) in m.weights().iter().zip([0.45, 0.05, 0.05, 0.45]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn state_marginal_is_preserved() {
        let mut law = Vec::new();
        for _s in 0..3 {
            for x1 in 0..2 {
                for _x2 in 0..1 {
                    let mut cell = vec![0.0; 2];
                    cell[x1] = 1.0;
                    law.extend(cell);
                }
            }
        }
        let ch = ChannelSpec::new((2, 1, 2, 1, 3), vec![0.25, 0.25, 0.5], law).unwrap();
        let dist = Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable { card: 2, weights: vec![0.9, 0.1, 0.2, 0.8, 0.5, 0.5] },
            v1: AuxTable::constant(2, 1, 3),
            u2: AuxTable::constant(1, 1, 3),
            v2: AuxTable::constant(1, 1, 3),
            f1: EncoderMap::identity_on_v(2, 2, 3, 2),
            f2: EncoderMap::identity_on_v(1, 1, 3, 1),
        };
        let joint = build_joint_scheme1(&ch, &dist).unwrap();
        let m = joint.marginalize(&["S"]).unwrap();
        for (got, want) in m.weights().iter().zip([0.25, 0.25, 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn scheme1_conditional_independence_certificates() {
        let ch = identity_channel();
        let mut dist = constant_dist(&ch, 2);
        dist.u1 = AuxTable { card: 2, weights: vec![0.3, 0.7] };
        dist.v1 = AuxTable { card: 2, weights: vec![0.6, 0.4] };
        dist.f1 = EncoderMap::identity_on_v(2, 2, 1, 2);
        let joint = build_joint_scheme1(&ch, &dist).unwrap();
        let a = joint.cond_mutual_info(&["U1"], &["V1"], &["Q", "S"]).unwrap();
        let b = joint
            .cond_mutual_info(&["U1", "V1"], &["U2", "V2"], &["Q", "S"])
            .unwrap();
        assert!(a.abs() < 1e-9);
        assert!(b.abs() < 1e-9);
    }

    #[test]
    fn embedding_preserves_the_joint_exactly() {
        let ch = identity_channel();
        let mut dist = constant_dist(&ch, 2);
        dist.u1 = AuxTable { card: 2, weights: vec![0.3, 0.7] };
        dist.v1 = AuxTable { card: 2, weights: vec![0.6, 0.4] };
        dist.f1 = EncoderMap::identity_on_v(2, 2, 1, 2);
        let j1 = build_joint_scheme1(&ch, &dist).unwrap();
        let embedded = embed_scheme1_in_scheme2(&dist);
        let j2 = build_joint_scheme2(&ch, &embedded).unwrap();
        assert_eq!(j1.vars(), j2.vars());
        for (a, b) in j1.weights().iter().zip(j2.weights()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn scheme2_copy_private_layer_kills_private_information() {
        // v1 = u1 deterministically: I(V1;Y1|U1,U2,Q) must vanish
        let ch = identity_channel();
        let u1 = AuxTable { card: 2, weights: vec![0.5, 0.5] };
        let mut v1_weights = vec![0.0; 2 * 1 * 1 * 2];
        v1_weights[0] = 1.0; // u=0 -> v=0
        v1_weights[3] = 1.0; // u=1 -> v=1
        let dist = Scheme2Distribution {
            q: vec![1.0],
            u1,
            v1: SuperposedTable { card: 2, weights: v1_weights },
            u2: AuxTable::constant(1, 1, 1),
            v2: SuperposedTable::constant(1, 1, 1, 1),
            g1: EncoderMap::identity_on_v(2, 2, 1, 2),
            g2: EncoderMap::identity_on_v(1, 1, 1, 1),
        };
        let joint = build_joint_scheme2(&ch, &dist).unwrap();
        let mi = joint
            .cond_mutual_info(&["V1"], &["Y1"], &["U1", "U2", "Q"])
            .unwrap();
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn channel_file_roundtrip_and_schema_errors() {
        let ch = identity_channel();
        let file = ChannelFile::from_spec(&ch);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ChannelFile = serde_json::from_str(&json).unwrap();
        let spec = parsed.into_spec().unwrap();
        assert_eq!(spec.law, ch.law);

        let mut bad: ChannelFile = serde_json::from_str(&json).unwrap();
        bad.law[0][0][0].pop();
        assert!(matches!(bad.into_spec(), Err(ChannelError::Schema(_))));
    }
}
