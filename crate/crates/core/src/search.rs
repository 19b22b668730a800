//! Explores auxiliary-distribution space to approximate the union
//! achievable regions of both schemes and to test the per-distribution
//! inclusion of the simultaneous region in the superposition region.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{
    build_joint_scheme2, embed_scheme1_in_scheme2, AuxTable, ChannelSpec, EncoderMap,
    Scheme1Distribution,
};
use crate::fm::hull_ccw;
use crate::regions::{self, max_weighted_sum_point, polytope_for, project_to_pairs, Region2D};
use crate::theorems::Scheme;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error("grid enumeration would produce {0} combinations (cap {GRID_CAP})")]
    GridTooLarge(usize),
    #[error(transparent)]
    Channel(#[from] crate::channel::ChannelError),
    #[error(transparent)]
    Region(#[from] crate::regions::RegionError),
}

pub type Result<T> = std::result::Result<T, SearchError>;

pub const GRID_CAP: usize = 200_000;

/// Auxiliary alphabet sizes; defaults follow `|Q| = 1`, `|Uj| = |Vj| = |Xj|`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct AuxCards {
    pub q: usize,
    pub u1: usize,
    pub v1: usize,
    pub u2: usize,
    pub v2: usize,
}

impl AuxCards {
    pub fn default_for(channel: &ChannelSpec) -> Self {
        AuxCards { q: 1, u1: channel.x1, v1: channel.x1, u2: channel.x2, v2: channel.x2 }
    }
}

/// Search configuration. The stream always starts with the all-constant
/// distribution; a grid step adds a lattice sweep of every conditional
/// cell; the remaining samples are Dirichlet(1,..,1) draws.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SearchConfig {
    pub cards: AuxCards,
    pub grid_step: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub lambda_count: usize,
    /// Random encoder maps paired with each sampled conditional when the
    /// private alphabet differs from the input alphabet.
    pub maps_per_sample: usize,
}

impl SearchConfig {
    pub fn new(cards: AuxCards, samples: usize, seed: u64) -> Self {
        SearchConfig {
            cards,
            grid_step: None,
            samples,
            seed,
            lambda_count: 33,
            maps_per_sample: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.cards;
        if c.q < 1 || c.u1 < 1 || c.v1 < 1 || c.u2 < 1 || c.v2 < 1 {
            return Err(SearchError::Config("cardinalities must be >= 1".into()));
        }
        if let Some(step) = self.grid_step {
            if !(step > 0.0 && step <= 1.0) {
                return Err(SearchError::Config("grid step must lie in (0, 1]".into()));
            }
        }
        if self.samples < 1 {
            return Err(SearchError::Config("sample count must be >= 1".into()));
        }
        if self.lambda_count < 1 {
            return Err(SearchError::Config("lambda sweep needs >= 1 point".into()));
        }
        Ok(())
    }

    pub fn lambdas(&self) -> Vec<f64> {
        if self.lambda_count == 1 {
            return vec![0.5];
        }
        (0..self.lambda_count)
            .map(|i| i as f64 / (self.lambda_count - 1) as f64)
            .collect()
    }
}

/// One support-function optimum with the distribution that achieved it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportPoint {
    pub lambda: f64,
    pub value: f64,
    pub r1: f64,
    pub r2: f64,
    pub dist_id: usize,
}

/// Union-region approximation: best support points per angle, the convex
/// hull of everything seen, and the raw per-distribution polygons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionApproximation {
    pub points: Vec<SupportPoint>,
    pub hull: Vec<(f64, f64)>,
    pub raw_union: Vec<(usize, Vec<(f64, f64)>)>,
}

impl RegionApproximation {
    pub fn max_r1(&self) -> f64 {
        self.hull.iter().map(|p| p.0).fold(0.0, f64::max)
    }

    pub fn max_r2(&self) -> f64 {
        self.hull.iter().map(|p| p.1).fold(0.0, f64::max)
    }
}

fn derive_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16] = 0x5d;
    ChaCha12Rng::from_seed(key)
}

/// Dirichlet(1,...,1): normalized unit exponentials.
fn sample_simplex(rng: &mut ChaCha12Rng, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..k)
        .map(|_| {
            let u: f64 = rng.random::<f64>().max(1e-12);
            -u.ln()
        })
        .collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v
}

/// All lattice points of the k-simplex with resolution `step = 1/m`
/// (compositions of m into k parts, scaled).
fn simplex_lattice(k: usize, step: f64) -> Vec<Vec<f64>> {
    let m = (1.0 / step).round().max(1.0) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(out: &mut Vec<Vec<f64>>, cur: &mut Vec<usize>, idx: usize, left: usize, m: usize) {
        if idx == cur.len() - 1 {
            cur[idx] = left;
            out.push(cur.iter().map(|&c| c as f64 / m as f64).collect());
            return;
        }
        for c in 0..=left {
            cur[idx] = c;
            rec(out, cur, idx + 1, left - c, m);
        }
    }
    rec(&mut out, &mut cur, 0, m, m);
    out
}

fn random_aux(rng: &mut ChaCha12Rng, card: usize, q: usize, s: usize) -> AuxTable {
    let mut weights = Vec::with_capacity(q * s * card);
    for _ in 0..q * s {
        weights.extend(sample_simplex(rng, card));
    }
    AuxTable { card, weights }
}

fn random_map(rng: &mut ChaCha12Rng, u: usize, v: usize, s: usize, x: usize) -> EncoderMap {
    let table = (0..u * v * s).map(|_| rng.random_range(0..x)).collect();
    EncoderMap { u, v, s, x, table }
}

fn constant_scheme1(channel: &ChannelSpec, cards: AuxCards) -> Scheme1Distribution {
    let mut q = vec![0.0; cards.q];
    q[0] = 1.0;
    Scheme1Distribution {
        q,
        u1: AuxTable::constant(cards.u1, cards.q, channel.s),
        v1: AuxTable::constant(cards.v1, cards.q, channel.s),
        u2: AuxTable::constant(cards.u2, cards.q, channel.s),
        v2: AuxTable::constant(cards.v2, cards.q, channel.s),
        f1: EncoderMap::identity_on_v(cards.u1, cards.v1, channel.s, channel.x1),
        f2: EncoderMap::identity_on_v(cards.u2, cards.v2, channel.s, channel.x2),
    }
}

/// Deterministic sample stream for scheme 1. The first entry is always the
/// all-constant distribution; grid entries (if configured) come next, then
/// Dirichlet draws, each paired with the default map and, when `|V| != |X|`,
/// extra random maps.
pub fn sample_distributions(
    channel: &ChannelSpec,
    cfg: &SearchConfig,
) -> Result<Vec<Scheme1Distribution>> {
    cfg.validate()?;
    let cards = cfg.cards;
    let s = channel.s;
    let mut out = Vec::new();
    out.push(constant_scheme1(channel, cards));

    if let Some(step) = cfg.grid_step {
        let grids: Vec<Vec<Vec<f64>>> = [
            (cards.u1, channel.x1),
            (cards.v1, channel.x1),
            (cards.u2, channel.x2),
            (cards.v2, channel.x2),
        ]
        .iter()
        .map(|&(card, _)| {
            let per_cell = simplex_lattice(card, step);
            cross_cells(&per_cell, cards.q * s)
        })
        .collect();
        let combos = grids.iter().map(Vec::len).try_fold(1usize, |a, b| {
            a.checked_mul(b).filter(|&n| n <= GRID_CAP)
        });
        let Some(total) = combos else {
            return Err(SearchError::GridTooLarge(
                grids.iter().map(Vec::len).product(),
            ));
        };
        let mut map_rng = derive_rng(cfg.seed, 0xffff_0001);
        for idx in 0..total {
            let mut rem = idx;
            let mut tables = Vec::with_capacity(4);
            for g in &grids {
                tables.push(g[rem % g.len()].clone());
                rem /= g.len();
            }
            let mk = |card: usize, w: &Vec<f64>| AuxTable { card, weights: w.clone() };
            let base = Scheme1Distribution {
                q: constant_scheme1(channel, cards).q,
                u1: mk(cards.u1, &tables[0]),
                v1: mk(cards.v1, &tables[1]),
                u2: mk(cards.u2, &tables[2]),
                v2: mk(cards.v2, &tables[3]),
                f1: EncoderMap::identity_on_v(cards.u1, cards.v1, s, channel.x1),
                f2: EncoderMap::identity_on_v(cards.u2, cards.v2, s, channel.x2),
            };
            out.push(base.clone());
            if cards.v1 != channel.x1 || cards.v2 != channel.x2 {
                for _ in 0..cfg.maps_per_sample {
                    let mut d = base.clone();
                    d.f1 = random_map(&mut map_rng, cards.u1, cards.v1, s, channel.x1);
                    d.f2 = random_map(&mut map_rng, cards.u2, cards.v2, s, channel.x2);
                    out.push(d);
                }
            }
        }
    }

    for i in 1..cfg.samples {
        let mut rng = derive_rng(cfg.seed, i as u64);
        let mut d = Scheme1Distribution {
            q: if cards.q == 1 {
                vec![1.0]
            } else {
                sample_simplex(&mut rng, cards.q)
            },
            u1: random_aux(&mut rng, cards.u1, cards.q, s),
            v1: random_aux(&mut rng, cards.v1, cards.q, s),
            u2: random_aux(&mut rng, cards.u2, cards.q, s),
            v2: random_aux(&mut rng, cards.v2, cards.q, s),
            f1: EncoderMap::identity_on_v(cards.u1, cards.v1, s, channel.x1),
            f2: EncoderMap::identity_on_v(cards.u2, cards.v2, s, channel.x2),
        };
        let needs_maps = cards.v1 != channel.x1 || cards.v2 != channel.x2;
        if needs_maps && i % 2 == 0 {
            d.f1 = random_map(&mut rng, cards.u1, cards.v1, s, channel.x1);
            d.f2 = random_map(&mut rng, cards.u2, cards.v2, s, channel.x2);
        }
        out.push(d);
    }
    Ok(out)
}

/// Cross product of one simplex lattice over `cells` conditioning cells,
/// flattened into `[cell][symbol]` weight rows.
fn cross_cells(per_cell: &[Vec<f64>], cells: usize) -> Vec<Vec<f64>> {
    let mut combos: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..cells {
        let mut next = Vec::with_capacity(combos.len() * per_cell.len());
        for existing in &combos {
            for cell in per_cell {
                let mut row = existing.clone();
                row.extend_from_slice(cell);
                next.push(row);
            }
        }
        combos = next;
        if combos.len() > GRID_CAP {
            return combos; // caller re-checks the cap
        }
    }
    combos
}

/// Per-distribution projection outcome.
struct Projected {
    id: usize,
    region: Option<Region2D>,
}

fn project_sample(
    channel: &ChannelSpec,
    scheme: Scheme,
    id: usize,
    dist: &Scheme1Distribution,
) -> Result<Projected> {
    let joint = match scheme {
        Scheme::Simultaneous => crate::channel::build_joint_scheme1(channel, dist)?,
        Scheme::Superposition => {
            build_joint_scheme2(channel, &embed_scheme1_in_scheme2(dist))?
        }
    };
    let poly = polytope_for(scheme, &joint)?;
    if poly.is_empty() {
        return Ok(Projected { id, region: None });
    }
    match project_to_pairs(&poly) {
        Ok(region) => Ok(Projected { id, region: Some(region) }),
        Err(regions::RegionError::EmptyRegion) => Ok(Projected { id, region: None }),
        Err(e) => Err(e.into()),
    }
}

/// Approximates the union achievable region of a scheme over the sampled
/// distributions. For scheme 2 the samples are scheme-1 draws carried over
/// by the embedding, which preserves each joint.
pub fn union_region(
    channel: &ChannelSpec,
    scheme: Scheme,
    cfg: &SearchConfig,
) -> Result<RegionApproximation> {
    let dists = sample_distributions(channel, cfg)?;
    let lambdas = cfg.lambdas();

    let projected: Vec<Projected> = dists
        .par_iter()
        .enumerate()
        .map(|(id, d)| project_sample(channel, scheme, id, d))
        .collect::<Result<Vec<_>>>()?;

    let mut best: Vec<Option<SupportPoint>> = vec![None; lambdas.len()];
    let mut all_vertices: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    let mut raw_union = Vec::new();

    for p in &projected {
        let Some(region) = &p.region else { continue };
        let verts = region.vertices()?;
        raw_union.push((p.id, verts.clone()));
        all_vertices.extend(&verts);
        for (k, &lambda) in lambdas.iter().enumerate() {
            let (value, (r1, r2)) = max_weighted_sum_point(region, lambda)?;
            let better = match &best[k] {
                None => true,
                Some(b) => value > b.value + 1e-15,
            };
            if better {
                best[k] = Some(SupportPoint { lambda, value, r1, r2, dist_id: p.id });
            }
        }
    }

    let points: Vec<SupportPoint> = best
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            b.unwrap_or(SupportPoint {
                lambda: lambdas[k],
                value: 0.0,
                r1: 0.0,
                r2: 0.0,
                dist_id: 0,
            })
        })
        .collect();

    let hull = hull_f64(all_vertices);
    Ok(RegionApproximation { points, hull, raw_union })
}

/// Convex hull of float points via exact hulling of snapped rationals.
fn hull_f64(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let rats: Vec<(crate::fm::Rat, crate::fm::Rat)> = points
        .iter()
        .map(|&(x, y)| (crate::fm::snap(x), crate::fm::snap(y)))
        .collect();
    hull_ccw(rats)
        .into_iter()
        .map(|(x, y)| (crate::fm::rat_to_f64(&x), crate::fm::rat_to_f64(&y)))
        .collect()
}

/// Per-pair inclusion report entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairReport {
    pub id: usize,
    pub contained: bool,
    pub max_violation_bits: f64,
}

/// Inclusion report for the simultaneous-vs-superposition comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub pairs: Vec<PairReport>,
    pub union_contained: bool,
    pub union_max_violation_bits: f64,
    pub counterexample_ids: Vec<usize>,
}

/// Slack for vertex containment checks, in bits.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

/// For every scheme-1 sample, compares its projected polygon with the
/// polygon of its superposition embedding, and compares the union hulls.
/// A violation is reported, never asserted away.
pub fn compare_regions(channel: &ChannelSpec, cfg: &SearchConfig) -> Result<CompareReport> {
    let dists = sample_distributions(channel, cfg)?;

    let outcomes: Vec<(usize, PairReport, Vec<(f64, f64)>, Vec<(f64, f64)>)> = dists
        .par_iter()
        .enumerate()
        .map(|(id, d)| -> Result<_> {
            let p1 = project_sample(channel, Scheme::Simultaneous, id, d)?;
            let p2 = project_sample(channel, Scheme::Superposition, id, d)?;
            let (verts1, verts2) = match (&p1.region, &p2.region) {
                (Some(r1), Some(r2)) => (r1.vertices()?, r2.vertices()?),
                (None, _) => (vec![(0.0, 0.0)], Vec::new()), // empty: trivially contained
                (Some(_), None) => {
                    // scheme-1 region non-empty but the embedding's empty:
                    // a genuine counterexample, reported below
                    (p1.region.as_ref().unwrap().vertices()?, Vec::new())
                }
            };
            let (contained, max_violation) = match (&p1.region, &p2.region) {
                (None, _) => (true, 0.0),
                (Some(_), None) => (false, f64::INFINITY),
                (Some(_), Some(r2)) => polygon_containment(&verts1, r2),
            };
            Ok((
                id,
                PairReport { id, contained, max_violation_bits: max_violation },
                verts1,
                verts2,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::with_capacity(outcomes.len());
    let mut counterexample_ids = Vec::new();
    let mut hull1_pts = vec![(0.0, 0.0)];
    let mut hull2_pts = vec![(0.0, 0.0)];
    for (id, pair, v1, v2) in outcomes {
        if !pair.contained {
            counterexample_ids.push(id);
        }
        hull1_pts.extend(v1);
        hull2_pts.extend(v2);
        pairs.push(pair);
    }

    let hull1 = hull_f64(hull1_pts);
    let hull2 = hull_f64(hull2_pts);
    let (union_contained, union_max_violation_bits) = hull_containment(&hull1, &hull2);

    Ok(CompareReport { pairs, union_contained, union_max_violation_bits, counterexample_ids })
}

fn polygon_containment(verts: &[(f64, f64)], region: &Region2D) -> (bool, f64) {
    let mut max_violation = 0.0f64;
    for &(r1, r2) in verts {
        let v = region_violation(region, r1, r2);
        max_violation = max_violation.max(v);
    }
    (max_violation <= CONTAINMENT_SLACK, max_violation)
}

fn region_violation(region: &Region2D, r1: f64, r2: f64) -> f64 {
    let mut worst = 0.0f64;
    for row in &region.system.rows {
        let lhs = crate::fm::rat_to_f64(&row.coeffs[0]) * r1
            + crate::fm::rat_to_f64(&row.coeffs[1]) * r2;
        if let crate::fm::RhsVal::Num(b) = &row.rhs {
            worst = worst.max(lhs - crate::fm::rat_to_f64(b));
        }
    }
    worst
}

/// Vertex-in-hull check via the hull's edge half-planes.
fn hull_containment(inner: &[(f64, f64)], outer: &[(f64, f64)]) -> (bool, f64) {
    if outer.is_empty() {
        let trivial = inner.iter().all(|&(x, y)| x.abs() < 1e-12 && y.abs() < 1e-12);
        return (trivial, if trivial { 0.0 } else { f64::INFINITY });
    }
    if outer.len() <= 2 {
        // degenerate outer hull: accept only points on it (within slack)
        let mut worst = 0.0f64;
        for &p in inner {
            let d = if outer.len() == 1 {
                dist(p, outer[0])
            } else {
                segment_distance(p, outer[0], outer[1])
            };
            worst = worst.max(d);
        }
        return (worst <= 1e-9, worst);
    }
    let mut worst = 0.0f64;
    for &p in inner {
        let mut v = f64::NEG_INFINITY;
        for i in 0..outer.len() {
            let a = outer[i];
            let b = outer[(i + 1) % outer.len()];
            // signed distance to the edge line; positive = outside for CCW
            let nx = b.1 - a.1;
            let ny = a.0 - b.0;
            let len = (nx * nx + ny * ny).sqrt().max(1e-300);
            let d = ((p.0 - a.0) * nx + (p.1 - a.1) * ny) / len;
            v = v.max(d);
        }
        worst = worst.max(v.max(0.0));
    }
    (worst <= CONTAINMENT_SLACK, worst)
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let len2 = vx * vx + vy * vy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p.0 - a.0) * vx + (p.1 - a.1) * vy) / len2).clamp(0.0, 1.0);
    dist(p, (a.0 + t * vx, a.1 + t * vy))
}

/// CSV rows `lambda,R1,R2,dist_id` followed by a `hull,R1,R2` section.
pub fn region_csv(approx: &RegionApproximation) -> String {
    let mut out = String::from("lambda,R1,R2,dist_id\n");
    for p in &approx.points {
        out.push_str(&format!(
            "{:.6},{:.9},{:.9},{}\n",
            p.lambda, p.r1, p.r2, p.dist_id
        ));
    }
    for (x, y) in &approx.hull {
        out.push_str(&format!("hull,{x:.9},{y:.9}\n"));
    }
    out
}
