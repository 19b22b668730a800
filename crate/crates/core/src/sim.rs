//! Desk-scale Monte Carlo implementation of both random-coding schemes:
//! codebook generation, Gel'fand–Pinsker index search, memoryless channel
//! transmission, joint-typicality decoding, and error-event accounting.
//!
//! Codewords are regenerated on demand from per-index derived streams, so
//! large bins cost no memory and every run is reproducible from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{ChannelSpec, EncoderMap, SchemeDistribution};
use crate::prob::JointPmf;
use crate::theorems::Scheme;

/// Decoder search cap: tuples scanned per receiver per trial.
pub const SEARCH_CAP_LOG2: f64 = 24.0;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("sequence length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("search cap exceeded: 2^{exponent:.2} tuples at receiver {receiver} (cap 2^{SEARCH_CAP_LOG2})")]
    CapExceeded { receiver: u8, exponent: f64 },
    #[error("invalid sim config: {0}")]
    Config(String),
    #[error(transparent)]
    Channel(#[from] crate::channel::ChannelError),
    #[error(transparent)]
    Prob(#[from] crate::prob::ProbError),
}

pub type Result<T> = std::result::Result<T, SimError>;

/// Monte Carlo run description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub epsilon: f64,
    /// `(R10, R11, R20, R22)` in bits per use.
    pub rates: [f64; 4],
    /// `(R10', R11', R20', R22')` binning rates in bits per use.
    pub bin_rates: [f64; 4],
    pub trials: u64,
    pub seed: u64,
    pub scheme: u8,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(SimError::Config("block length must be >= 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(SimError::Config("epsilon must lie in (0, 1)".into()));
        }
        if self
            .rates
            .iter()
            .chain(self.bin_rates.iter())
            .any(|&r| r < 0.0 || !r.is_finite())
        {
            return Err(SimError::Config("rates must be non-negative".into()));
        }
        if Scheme::from_number(self.scheme).is_none() {
            return Err(SimError::Config(format!("scheme must be 1 or 2, got {}", self.scheme)));
        }
        // receiver search caps
        let n = self.n as f64;
        let r = &self.rates;
        let rp = &self.bin_rates;
        let rx1 = n * (r[0] + rp[0] + r[2] + rp[2] + r[1] + rp[1]);
        let rx2 = n * (r[2] + rp[2] + r[0] + rp[0] + r[3] + rp[3]);
        if rx1 > SEARCH_CAP_LOG2 {
            return Err(SimError::CapExceeded { receiver: 1, exponent: rx1 });
        }
        if rx2 > SEARCH_CAP_LOG2 {
            return Err(SimError::CapExceeded { receiver: 2, exponent: rx2 });
        }
        Ok(())
    }

    /// `ceil(2^(n r))`, at least one codeword.
    pub fn index_count(&self, rate: f64) -> u64 {
        let count = (self.n as f64 * rate).exp2().ceil();
        (count as u64).max(1)
    }
}

/// Alphabet-index sequences use u8 symbols; alphabets here are tiny.
pub type Seq = Vec<u8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum User {
    One,
    Two,
}

impl User {
    fn idx(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }
}

/// Robust typicality: every joint symbol's empirical frequency sits within
/// `epsilon * p` of its probability, and zero-probability symbols do not
/// occur. Sequences are given in the reference marginal's variable order.
pub fn typical(seqs: &[&[u8]], reference: &JointPmf, epsilon: f64) -> Result<bool> {
    let n = seqs.first().map_or(0, |s| s.len());
    for s in seqs {
        if s.len() != n {
            return Err(SimError::LengthMismatch { expected: n, got: s.len() });
        }
    }
    assert_eq!(seqs.len(), reference.vars().len(), "tuple arity");
    let cards: Vec<usize> = reference.vars().iter().map(|v| v.card).collect();
    let mut counts = vec![0u32; reference.weights().len()];
    for i in 0..n {
        let mut idx = 0usize;
        for (k, s) in seqs.iter().enumerate() {
            idx = idx * cards[k] + s[i] as usize;
        }
        counts[idx] += 1;
    }
    let nf = n as f64;
    for (cell, &p) in reference.weights().iter().enumerate() {
        let freq = f64::from(counts[cell]) / nf;
        if p == 0.0 {
            if counts[cell] != 0 {
                return Ok(false);
            }
        } else if (freq - p).abs() > epsilon * p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conditional sampling table `[row][symbol] -> cumulative probability`.
#[derive(Debug, Clone)]
struct CumTable {
    card: usize,
    rows: Vec<f64>,
}

impl CumTable {
    fn new(card: usize, probs: &[f64]) -> Self {
        let mut rows = probs.to_vec();
        for row in rows.chunks_mut(card) {
            let mut acc = 0.0;
            for p in row.iter_mut() {
                acc += *p;
                *p = acc;
            }
        }
        CumTable { card, rows }
    }

    #[inline]
    fn sample(&self, row: usize, rng: &mut ChaCha12Rng) -> u8 {
        let u: f64 = rng.random();
        let cells = &self.rows[row * self.card..(row + 1) * self.card];
        for (i, &c) in cells.iter().enumerate() {
            if u < c {
                return i as u8;
            }
        }
        (self.card - 1) as u8
    }
}

/// Precomputed scheme context: the full joint, codebook sampling tables,
/// and the typicality reference marginals for encoders and decoders.
pub struct SimContext {
    pub scheme: Scheme,
    pub joint: JointPmf,
    channel: ChannelSpec,
    maps: [EncoderMap; 2],
    q_card: usize,
    p_q: CumTable,
    p_s: CumTable,
    /// `p(u_j | q)`, rows indexed by q.
    p_u: [CumTable; 2],
    /// scheme 1: `p(v_j | q)` rows by q; scheme 2: `p(v_j | u, q)` rows by `u * q_card + q`.
    p_v: [CumTable; 2],
    law: CumTable,
    /// `(Q, S, U_j)` marginals in joint order.
    enc_u_ref: [JointPmf; 2],
    /// scheme 1: `(Q, S, V_j)`; scheme 2: `(Q, S, U_j, V_j)`.
    enc_v_ref: [JointPmf; 2],
    /// receiver 1: `(Q, U1, V1, U2, Y1)`; receiver 2: `(Q, U1, U2, V2, Y2)`,
    /// both in joint variable order.
    dec_ref: [JointPmf; 2],
}

/// `p(target | given)` as flat rows indexed by the caller's `given` order
/// (mixed radix, last fastest), each row a pmf over the target alphabet.
/// Unreachable conditioning cells get a point mass on symbol 0.
fn conditional_rows(joint: &JointPmf, target: &str, given: &[&str]) -> Result<Vec<f64>> {
    let mut keep: Vec<&str> = given.to_vec();
    keep.push(target);
    let m = joint.marginalize(&keep)?;
    let mg = m.marginalize(given)?;

    let names: Vec<&str> = m.vars().iter().map(|v| v.name.as_str()).collect();
    let cards: Vec<usize> = m.vars().iter().map(|v| v.card).collect();
    let t_pos = names.iter().position(|n| *n == target).unwrap();
    let t_card = cards[t_pos];
    let g_pos: Vec<usize> = given
        .iter()
        .map(|g| names.iter().position(|n| n == g).unwrap())
        .collect();

    let mut strides = vec![1usize; cards.len()];
    for i in (0..cards.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * cards[i + 1];
    }
    let rows_count: usize = mg.weights().len().max(1);
    let mut out = vec![0.0f64; rows_count * t_card];
    for (flat, &w) in m.weights().iter().enumerate() {
        let digit = |pos: usize| (flat / strides[pos]) % cards[pos];
        let mut row = 0usize;
        for &gp in &g_pos {
            row = row * cards[gp] + digit(gp);
        }
        let mut mg_flat = 0usize;
        for gv in mg.vars() {
            let pos_in_m = names.iter().position(|n| *n == gv.name).unwrap();
            mg_flat = mg_flat * gv.card + digit(pos_in_m);
        }
        let denom = mg.weights()[mg_flat];
        if denom > 0.0 {
            out[row * t_card + digit(t_pos)] += w / denom;
        }
    }
    for row in out.chunks_mut(t_card) {
        let s: f64 = row.iter().sum();
        if s <= 0.0 {
            row[0] = 1.0;
        }
    }
    Ok(out)
}

impl SimContext {
    pub fn new(channel: &ChannelSpec, dist: &SchemeDistribution) -> Result<SimContext> {
        let joint = dist.build_joint(channel)?;
        let scheme = match dist {
            SchemeDistribution::Scheme1(_) => Scheme::Simultaneous,
            SchemeDistribution::Scheme2(_) => Scheme::Superposition,
        };
        let (maps, u_card, v_card, q_card) = match dist {
            SchemeDistribution::Scheme1(d) => (
                [d.f1.clone(), d.f2.clone()],
                [d.u1.card, d.u2.card],
                [d.v1.card, d.v2.card],
                d.q.len(),
            ),
            SchemeDistribution::Scheme2(d) => (
                [d.g1.clone(), d.g2.clone()],
                [d.u1.card, d.u2.card],
                [d.v1.card, d.v2.card],
                d.q.len(),
            ),
        };

        let p_q = CumTable::new(q_card, joint.marginalize(&["Q"])?.weights());
        let p_s = CumTable::new(channel.s, &channel.state_pmf);
        let p_u = [
            CumTable::new(u_card[0], &conditional_rows(&joint, "U1", &["Q"])?),
            CumTable::new(u_card[1], &conditional_rows(&joint, "U2", &["Q"])?),
        ];
        let p_v = match scheme {
            Scheme::Simultaneous => [
                CumTable::new(v_card[0], &conditional_rows(&joint, "V1", &["Q"])?),
                CumTable::new(v_card[1], &conditional_rows(&joint, "V2", &["Q"])?),
            ],
            Scheme::Superposition => [
                CumTable::new(v_card[0], &conditional_rows(&joint, "V1", &["U1", "Q"])?),
                CumTable::new(v_card[1], &conditional_rows(&joint, "V2", &["U2", "Q"])?),
            ],
        };
        let law = CumTable::new(channel.y1 * channel.y2, &channel.law);

        let enc_u_ref = [
            joint.marginalize(&["Q", "S", "U1"])?,
            joint.marginalize(&["Q", "S", "U2"])?,
        ];
        let enc_v_ref = match scheme {
            Scheme::Simultaneous => [
                joint.marginalize(&["Q", "S", "V1"])?,
                joint.marginalize(&["Q", "S", "V2"])?,
            ],
            Scheme::Superposition => [
                joint.marginalize(&["Q", "S", "U1", "V1"])?,
                joint.marginalize(&["Q", "S", "U2", "V2"])?,
            ],
        };
        let dec_ref = [
            joint.marginalize(&["Q", "U1", "V1", "U2", "Y1"])?,
            joint.marginalize(&["Q", "U1", "U2", "V2", "Y2"])?,
        ];

        Ok(SimContext {
            scheme,
            joint,
            channel: channel.clone(),
            maps,
            q_card,
            p_q,
            p_s,
            p_u,
            p_v,
            law,
            enc_u_ref,
            enc_v_ref,
            dec_ref,
        })
    }

    pub fn decoder_reference(&self, receiver: User) -> &JointPmf {
        &self.dec_ref[receiver.idx()]
    }
}

/// Codebook index ranges for one run.
#[derive(Debug, Clone, Copy)]
pub struct BookSizes {
    pub m: [u64; 4],
    pub l: [u64; 4],
}

impl BookSizes {
    fn from_config(cfg: &SimConfig) -> Self {
        BookSizes {
            m: [
                cfg.index_count(cfg.rates[0]),
                cfg.index_count(cfg.rates[1]),
                cfg.index_count(cfg.rates[2]),
                cfg.index_count(cfg.rates[3]),
            ],
            l: [
                cfg.index_count(cfg.bin_rates[0]),
                cfg.index_count(cfg.bin_rates[1]),
                cfg.index_count(cfg.bin_rates[2]),
                cfg.index_count(cfg.bin_rates[3]),
            ],
        }
    }

    /// message/bin slot for (user, public?) pairs: 0=m10,1=m11,2=m20,3=m22
    fn slot(user: User, private: bool) -> usize {
        match (user, private) {
            (User::One, false) => 0,
            (User::One, true) => 1,
            (User::Two, false) => 2,
            (User::Two, true) => 3,
        }
    }
}

/// Lazy per-trial codebook: the shared time-sharing sequence plus
/// deterministic codeword streams derived from `(seed, trial, book, index)`.
pub struct Codebook<'a> {
    pub ctx: &'a SimContext,
    pub n: usize,
    pub sizes: BookSizes,
    seed: u64,
    trial: u64,
    pub q_seq: Seq,
}

fn stream_rng(seed: u64, trial: u64, book: u8, a: u64, b: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16] = book;
    key[17..25].copy_from_slice(&a.to_le_bytes());
    key[25..32].copy_from_slice(&b.to_le_bytes()[..7]);
    ChaCha12Rng::from_seed(key)
}

const BOOK_Q: u8 = 0;
const BOOK_STATE: u8 = 1;
const BOOK_CHAN: u8 = 2;
const BOOK_U: [u8; 2] = [3, 4];
const BOOK_V: [u8; 2] = [5, 6];

/// Draws the time-sharing sequence and returns a handle that regenerates
/// any codeword on demand. Deterministic in `(cfg.seed, trial)`.
pub fn generate_codebooks<'a>(
    ctx: &'a SimContext,
    cfg: &SimConfig,
    trial: u64,
) -> Result<Codebook<'a>> {
    cfg.validate()?;
    let mut qrng = stream_rng(cfg.seed, trial, BOOK_Q, 0, 0);
    let q_seq: Seq = (0..cfg.n).map(|_| ctx.p_q.sample(0, &mut qrng)).collect();
    Ok(Codebook {
        ctx,
        n: cfg.n,
        sizes: BookSizes::from_config(cfg),
        seed: cfg.seed,
        trial,
        q_seq,
    })
}

impl<'a> Codebook<'a> {
    pub fn state_rng(&self) -> ChaCha12Rng {
        stream_rng(self.seed, self.trial, BOOK_STATE, 0, 0)
    }

    pub fn channel_rng(&self) -> ChaCha12Rng {
        stream_rng(self.seed, self.trial, BOOK_CHAN, 0, 0)
    }

    pub fn sample_state(&self) -> Seq {
        let mut rng = self.state_rng();
        (0..self.n)
            .map(|_| self.ctx.p_s.sample(0, &mut rng))
            .collect()
    }

    /// `u_j^n(m, l)`, drawn i.i.d. from `p(u_j | q_i)`.
    pub fn u_seq(&self, user: User, m: u64, l: u64) -> Seq {
        let j = user.idx();
        let mut rng = stream_rng(self.seed, self.trial, BOOK_U[j], m, l);
        let table = &self.ctx.p_u[j];
        self.q_seq
            .iter()
            .map(|&q| table.sample(q as usize, &mut rng))
            .collect()
    }

    /// Scheme 1: `v_j^n(m, l)` drawn i.i.d. from `p(v_j | q_i)`.
    pub fn v_seq_simultaneous(&self, user: User, m: u64, l: u64) -> Seq {
        debug_assert_eq!(self.ctx.scheme, Scheme::Simultaneous);
        let j = user.idx();
        let mut rng = stream_rng(self.seed, self.trial, BOOK_V[j], m, l);
        let table = &self.ctx.p_v[j];
        self.q_seq
            .iter()
            .map(|&q| table.sample(q as usize, &mut rng))
            .collect()
    }

    /// Scheme 2: `v_j^n(m0, l0, m, l)` drawn i.i.d. from
    /// `p(v_j | u_ji(m0, l0), q_i)`.
    pub fn v_seq_superposed(&self, user: User, m0: u64, l0: u64, m: u64, l: u64) -> Seq {
        debug_assert_eq!(self.ctx.scheme, Scheme::Superposition);
        let j = user.idx();
        let u = self.u_seq(user, m0, l0);
        // index packing is collision-free under the search caps
        let a = (m0 << 32) | (l0 & 0xffff_ffff);
        let b = (m << 28) | (l & 0x0fff_ffff);
        let mut rng = stream_rng(self.seed, self.trial, BOOK_V[j], a, b);
        let table = &self.ctx.p_v[j];
        self.q_seq
            .iter()
            .zip(&u)
            .map(|(&q, &u)| table.sample(u as usize * self.ctx.q_card + q as usize, &mut rng))
            .collect()
    }

    fn v_for_indices(&self, user: User, m0: u64, l0: u64, m: u64, l: u64) -> Seq {
        match self.ctx.scheme {
            Scheme::Simultaneous => self.v_seq_simultaneous(user, m, l),
            Scheme::Superposition => self.v_seq_superposed(user, m0, l0, m, l),
        }
    }
}

/// Which encoder search failed, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeOutcome {
    /// Transmitted bin indices after any fallback.
    pub l_u: u64,
    pub l_v: u64,
    /// Public-layer search failed (no typical `l_{j0}`).
    pub xi_u: bool,
    /// Private-layer search failed (no typical `l_{jj}`).
    pub xi_v: bool,
}

/// Gel'fand–Pinsker bin search. Scheme 1 searches the two layers
/// independently; scheme 2 searches the private layer conditioned on the
/// public index found first. Any failure falls back to index 0 on both
/// layers, mirroring the schemes' fallback transmissions.
pub fn gp_encode(
    book: &Codebook,
    s_seq: &[u8],
    user: User,
    msg: (u64, u64),
    cfg: &SimConfig,
) -> Result<EncodeOutcome> {
    if s_seq.len() != book.n {
        return Err(SimError::LengthMismatch { expected: book.n, got: s_seq.len() });
    }
    let j = user.idx();
    let (m0, mjj) = msg;
    let slot_pub = BookSizes::slot(user, false);
    let slot_priv = BookSizes::slot(user, true);
    let l_pub_range = book.sizes.l[slot_pub];
    let l_priv_range = book.sizes.l[slot_priv];
    let eps = cfg.epsilon;

    let enc_u_ref = &book.ctx.enc_u_ref[j];
    let mut found_u: Option<u64> = None;
    for l in 0..l_pub_range {
        let u = book.u_seq(user, m0, l);
        if typical(&[&book.q_seq, s_seq, &u], enc_u_ref, eps)? {
            found_u = Some(l);
            break;
        }
    }

    match book.ctx.scheme {
        Scheme::Simultaneous => {
            let enc_v_ref = &book.ctx.enc_v_ref[j];
            let mut found_v: Option<u64> = None;
            for l in 0..l_priv_range {
                let v = book.v_seq_simultaneous(user, mjj, l);
                if typical(&[&book.q_seq, s_seq, &v], enc_v_ref, eps)? {
                    found_v = Some(l);
                    break;
                }
            }
            let ok = found_u.is_some() && found_v.is_some();
            Ok(EncodeOutcome {
                l_u: if ok { found_u.unwrap() } else { 0 },
                l_v: if ok { found_v.unwrap() } else { 0 },
                xi_u: found_u.is_none(),
                xi_v: found_v.is_none(),
            })
        }
        Scheme::Superposition => {
            let Some(l0) = found_u else {
                return Ok(EncodeOutcome { l_u: 0, l_v: 0, xi_u: true, xi_v: false });
            };
            let u = book.u_seq(user, m0, l0);
            let enc_v_ref = &book.ctx.enc_v_ref[j];
            let mut found_v: Option<u64> = None;
            for l in 0..l_priv_range {
                let v = book.v_seq_superposed(user, m0, l0, mjj, l);
                if typical(&[&book.q_seq, s_seq, &u, &v], enc_v_ref, eps)? {
                    found_v = Some(l);
                    break;
                }
            }
            match found_v {
                Some(lv) => Ok(EncodeOutcome { l_u: l0, l_v: lv, xi_u: false, xi_v: false }),
                None => Ok(EncodeOutcome { l_u: 0, l_v: 0, xi_u: false, xi_v: true }),
            }
        }
    }
}

/// Per-element encoder maps and memoryless channel sampling.
pub fn transmit(
    book: &Codebook,
    s_seq: &[u8],
    msg1: (u64, u64),
    enc1: &EncodeOutcome,
    msg2: (u64, u64),
    enc2: &EncodeOutcome,
) -> Result<(Seq, Seq)> {
    let ctx = book.ctx;
    let n = book.n;
    if s_seq.len() != n {
        return Err(SimError::LengthMismatch { expected: n, got: s_seq.len() });
    }
    let u1 = book.u_seq(User::One, msg1.0, enc1.l_u);
    let v1 = book.v_for_indices(User::One, msg1.0, enc1.l_u, msg1.1, enc1.l_v);
    let u2 = book.u_seq(User::Two, msg2.0, enc2.l_u);
    let v2 = book.v_for_indices(User::Two, msg2.0, enc2.l_u, msg2.1, enc2.l_v);

    let mut rng = book.channel_rng();
    let mut y1 = Vec::with_capacity(n);
    let mut y2 = Vec::with_capacity(n);
    let ch = &ctx.channel;
    for i in 0..n {
        let s = s_seq[i] as usize;
        let x1 = ctx.maps[0].apply(u1[i] as usize, v1[i] as usize, s);
        let x2 = ctx.maps[1].apply(u2[i] as usize, v2[i] as usize, s);
        let row = (s * ch.x1 + x1) * ch.x2 + x2;
        let y = ctx.law.sample(row, &mut rng) as usize;
        y1.push((y / ch.y2) as u8);
        y2.push((y % ch.y2) as u8);
    }
    Ok((y1, y2))
}

/// Deterministic inputs of the transmitted codewords, mostly for tests.
pub fn channel_inputs(
    book: &Codebook,
    s_seq: &[u8],
    msg1: (u64, u64),
    enc1: &EncodeOutcome,
    msg2: (u64, u64),
    enc2: &EncodeOutcome,
) -> (Seq, Seq) {
    let ctx = book.ctx;
    let u1 = book.u_seq(User::One, msg1.0, enc1.l_u);
    let v1 = book.v_for_indices(User::One, msg1.0, enc1.l_u, msg1.1, enc1.l_v);
    let u2 = book.u_seq(User::Two, msg2.0, enc2.l_u);
    let v2 = book.v_for_indices(User::Two, msg2.0, enc2.l_u, msg2.1, enc2.l_v);
    let x1 = (0..book.n)
        .map(|i| ctx.maps[0].apply(u1[i] as usize, v1[i] as usize, s_seq[i] as usize) as u8)
        .collect();
    let x2 = (0..book.n)
        .map(|i| ctx.maps[1].apply(u2[i] as usize, v2[i] as usize, s_seq[i] as usize) as u8)
        .collect();
    (x1, x2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(u64, u64),
    /// No message pair was jointly typical.
    Empty,
    /// Two or more distinct message pairs were jointly typical.
    Ambiguous,
}

/// Exhaustive joint-typicality decoding at one receiver. The interfering
/// user's public message is searched existentially over its u-book only.
/// Succeeds iff exactly one `(m_{j0}, m_{jj})` pair has a typical witness.
pub fn jt_decode(
    book: &Codebook,
    receiver: User,
    y_seq: &[u8],
    cfg: &SimConfig,
) -> Result<DecodeOutcome> {
    if y_seq.len() != book.n {
        return Err(SimError::LengthMismatch { expected: book.n, got: y_seq.len() });
    }
    let j = receiver.idx();
    let other = match receiver {
        User::One => User::Two,
        User::Two => User::One,
    };
    let slot_pub = BookSizes::slot(receiver, false);
    let slot_priv = BookSizes::slot(receiver, true);
    let slot_int = BookSizes::slot(other, false);
    let (m_pub, l_pub) = (book.sizes.m[slot_pub], book.sizes.l[slot_pub]);
    let (m_priv, l_priv) = (book.sizes.m[slot_priv], book.sizes.l[slot_priv]);
    let (m_int, l_int) = (book.sizes.m[slot_int], book.sizes.l[slot_int]);

    let tuples = (m_pub * l_pub) as f64 * (m_priv * l_priv) as f64 * (m_int * l_int) as f64;
    if tuples.log2() > SEARCH_CAP_LOG2 {
        return Err(SimError::CapExceeded {
            receiver: if receiver == User::One { 1 } else { 2 },
            exponent: tuples.log2(),
        });
    }

    // interferer public codewords, materialized once
    let int_book: Vec<Seq> = (0..m_int)
        .flat_map(|m| (0..l_int).map(move |l| (m, l)))
        .map(|(m, l)| book.u_seq(other, m, l))
        .collect();

    let reference = &book.ctx.dec_ref[j];
    let eps = cfg.epsilon;
    let mut found: Option<(u64, u64)> = None;

    for m0 in 0..m_pub {
        for l0 in 0..l_pub {
            let u_own = book.u_seq(receiver, m0, l0);
            for mp in 0..m_priv {
                if let Some(pair) = found {
                    if pair == (m0, mp) {
                        continue; // already witnessed
                    }
                }
                'witness: for lp in 0..l_priv {
                    let v_own = book.v_for_indices(receiver, m0, l0, mp, lp);
                    for u_int in &int_book {
                        // tuple order mirrors the joint: (Q, U1, V1, U2, Y1)
                        // for receiver 1, (Q, U1, U2, V2, Y2) for receiver 2
                        let ok = match receiver {
                            User::One => typical(
                                &[&book.q_seq, &u_own, &v_own, u_int, y_seq],
                                reference,
                                eps,
                            )?,
                            User::Two => typical(
                                &[&book.q_seq, u_int, &u_own, &v_own, y_seq],
                                reference,
                                eps,
                            )?,
                        };
                        if ok {
                            match found {
                                None => {
                                    found = Some((m0, mp));
                                    break 'witness;
                                }
                                Some(pair) if pair != (m0, mp) => {
                                    return Ok(DecodeOutcome::Ambiguous);
                                }
                                Some(_) => break 'witness,
                            }
                        }
                    }
                }
            }
        }
    }

    match found {
        Some((m0, mp)) => Ok(DecodeOutcome::Decoded(m0, mp)),
        None => Ok(DecodeOutcome::Empty),
    }
}

/// Per-event tallies over a Monte Carlo run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SimReport {
    pub trials: u64,
    /// Encoder GP failures per user and layer.
    pub enc1_xi1: u64,
    pub enc1_xi2: u64,
    pub enc2_xi1: u64,
    pub enc2_xi2: u64,
    pub dec1_err: u64,
    pub dec2_err: u64,
    pub overall_err: u64,
    pub enc1_xi1_rate: f64,
    pub enc1_xi2_rate: f64,
    pub enc2_xi1_rate: f64,
    pub enc2_xi2_rate: f64,
    pub dec1_err_rate: f64,
    pub dec2_err_rate: f64,
    pub overall_err_rate: f64,
    /// 95% normal-approximation half-width on the overall error rate.
    pub ci95_half_width: f64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    enc1_xi1: u64,
    enc1_xi2: u64,
    enc2_xi1: u64,
    enc2_xi2: u64,
    dec1_err: u64,
    dec2_err: u64,
    overall_err: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.enc1_xi1 += other.enc1_xi1;
        self.enc1_xi2 += other.enc1_xi2;
        self.enc2_xi1 += other.enc2_xi1;
        self.enc2_xi2 += other.enc2_xi2;
        self.dec1_err += other.dec1_err;
        self.dec2_err += other.dec2_err;
        self.overall_err += other.overall_err;
        self
    }
}

/// Runs the full encode–transmit–decode pipeline `cfg.trials` times with
/// fresh codebooks and state per trial. The transmitted messages are fixed
/// to the first pair; the error probability does not depend on this choice
/// because messages enter the codebooks symmetrically.
pub fn run_trials(
    channel: &ChannelSpec,
    dist: &SchemeDistribution,
    cfg: &SimConfig,
) -> Result<SimReport> {
    cfg.validate()?;
    let ctx = SimContext::new(channel, dist)?;
    let msg = (0u64, 0u64);

    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Tally> {
            let book = generate_codebooks(&ctx, cfg, trial)?;
            let s_seq = book.sample_state();
            let enc1 = gp_encode(&book, &s_seq, User::One, msg, cfg)?;
            let enc2 = gp_encode(&book, &s_seq, User::Two, msg, cfg)?;
            let (y1, y2) = transmit(&book, &s_seq, msg, &enc1, msg, &enc2)?;
            let d1 = jt_decode(&book, User::One, &y1, cfg)?;
            let d2 = jt_decode(&book, User::Two, &y2, cfg)?;
            let dec1_err = d1 != DecodeOutcome::Decoded(msg.0, msg.1);
            let dec2_err = d2 != DecodeOutcome::Decoded(msg.0, msg.1);
            Ok(Tally {
                enc1_xi1: enc1.xi_u as u64,
                enc1_xi2: enc1.xi_v as u64,
                enc2_xi1: enc2.xi_u as u64,
                enc2_xi2: enc2.xi_v as u64,
                dec1_err: dec1_err as u64,
                dec2_err: dec2_err as u64,
                overall_err: (dec1_err || dec2_err) as u64,
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    let t = cfg.trials;
    let rate = |c: u64| if t == 0 { 0.0 } else { c as f64 / t as f64 };
    let p = rate(tally.overall_err);
    let ci = if t == 0 {
        0.0
    } else {
        1.96 * (p * (1.0 - p) / t as f64).sqrt()
    };
    Ok(SimReport {
        trials: t,
        enc1_xi1: tally.enc1_xi1,
        enc1_xi2: tally.enc1_xi2,
        enc2_xi1: tally.enc2_xi1,
        enc2_xi2: tally.enc2_xi2,
        dec1_err: tally.dec1_err,
        dec2_err: tally.dec2_err,
        overall_err: tally.overall_err,
        enc1_xi1_rate: rate(tally.enc1_xi1),
        enc1_xi2_rate: rate(tally.enc1_xi2),
        enc2_xi1_rate: rate(tally.enc2_xi1),
        enc2_xi2_rate: rate(tally.enc2_xi2),
        dec1_err_rate: rate(tally.dec1_err),
        dec2_err_rate: rate(tally.dec2_err),
        overall_err_rate: p,
        ci95_half_width: ci,
    })
}

/// Encoder-only trials: measures the GP failure rates for user 1 without
/// running the decoders. Used for threshold studies on large bins.
pub fn encoder_failure_rates(
    channel: &ChannelSpec,
    dist: &SchemeDistribution,
    cfg: &SimConfig,
) -> Result<(f64, f64)> {
    if cfg.n < 1 {
        return Err(SimError::Config("block length must be >= 1".into()));
    }
    let ctx = SimContext::new(channel, dist)?;
    let msg = (0u64, 0u64);
    let fails = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<(u64, u64)> {
            let book = generate_codebooks_uncapped(&ctx, cfg, trial);
            let s_seq = book.sample_state();
            let enc = gp_encode(&book, &s_seq, User::One, msg, cfg)?;
            Ok((enc.xi_u as u64, enc.xi_v as u64))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let t = cfg.trials.max(1) as f64;
    Ok((fails.0 as f64 / t, fails.1 as f64 / t))
}

/// Like [`generate_codebooks`] but skips the receiver-side cap check;
/// encoder searches are linear in the bin size.
fn generate_codebooks_uncapped<'a>(
    ctx: &'a SimContext,
    cfg: &SimConfig,
    trial: u64,
) -> Codebook<'a> {
    let mut qrng = stream_rng(cfg.seed, trial, BOOK_Q, 0, 0);
    let q_seq: Seq = (0..cfg.n).map(|_| ctx.p_q.sample(0, &mut qrng)).collect();
    Codebook {
        ctx,
        n: cfg.n,
        sizes: BookSizes::from_config(cfg),
        seed: cfg.seed,
        trial,
        q_seq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{AuxTable, Scheme1Distribution};
    use crate::prob::{JointPmf, Var};

    fn single_user_channel() -> ChannelSpec {
        // Y1 = X1 noiselessly, user 2 degenerate, no state
        let mut law = Vec::new();
        for x1 in 0..2 {
            let mut cell = vec![0.0; 2];
            cell[x1] = 1.0;
            law.extend(cell);
        }
        ChannelSpec::new((2, 1, 2, 1, 1), vec![1.0], law).unwrap()
    }

    fn single_user_dist(ch: &ChannelSpec) -> SchemeDistribution {
        SchemeDistribution::Scheme1(Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable::constant(1, 1, ch.s),
            v1: AuxTable { card: 2, weights: vec![0.5, 0.5] },
            u2: AuxTable::constant(1, 1, ch.s),
            v2: AuxTable::constant(1, 1, ch.s),
            f1: crate::channel::EncoderMap::identity_on_v(1, 2, ch.s, 2),
            f2: crate::channel::EncoderMap::identity_on_v(1, 1, ch.s, 1),
        })
    }

    fn binary_state_channel() -> ChannelSpec {
        // Y1 = X1, binary state that the law ignores
        let mut law = Vec::new();
        for _s in 0..2 {
            for x1 in 0..2 {
                let mut cell = vec![0.0; 2];
                cell[x1] = 1.0;
                law.extend(cell);
            }
        }
        ChannelSpec::new((2, 1, 2, 1, 2), vec![0.5, 0.5], law).unwrap()
    }

    fn correlated_state_dist(ch: &ChannelSpec) -> SchemeDistribution {
        SchemeDistribution::Scheme1(Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable { card: 2, weights: vec![0.9, 0.1, 0.1, 0.9] },
            v1: AuxTable { card: 2, weights: vec![0.5, 0.5, 0.5, 0.5] },
            u2: AuxTable::constant(1, 1, ch.s),
            v2: AuxTable::constant(1, 1, ch.s),
            f1: crate::channel::EncoderMap::identity_on_v(2, 2, ch.s, 2),
            f2: crate::channel::EncoderMap::identity_on_v(1, 1, ch.s, 1),
        })
    }

    fn base_cfg(n: usize, scheme: u8) -> SimConfig {
        SimConfig {
            n,
            epsilon: 0.5,
            rates: [0.0; 4],
            bin_rates: [0.0; 4],
            trials: 1,
            seed: 7,
            scheme,
        }
    }

    #[test]
    fn typicality_iid_draws_pass_at_large_n() {
        let j = JointPmf::new(vec![Var::new("X", 2)], vec![0.5, 0.5]).unwrap();
        let mut pass = 0;
        for trial in 0..1000u64 {
            let mut rng = stream_rng(1, trial, 9, 0, 0);
            let seq: Seq = (0..10_000).map(|_| rng.random_range(0..2u8)).collect();
            if typical(&[&seq], &j, 0.2).unwrap() {
                pass += 1;
            }
        }
        assert!(pass >= 990, "passed {pass}/1000");
    }

    #[test]
    fn typicality_rejects_skewed_sequence() {
        let j = JointPmf::new(vec![Var::new("X", 2)], vec![0.5, 0.5]).unwrap();
        let zeros = vec![0u8; 100];
        assert!(!typical(&[&zeros], &j, 0.1).unwrap());
    }

    #[test]
    fn typicality_point_mass_always_passes() {
        let j = JointPmf::new(vec![Var::new("X", 2)], vec![1.0, 0.0]).unwrap();
        let zeros = vec![0u8; 17];
        assert!(typical(&[&zeros], &j, 0.05).unwrap());
    }

    #[test]
    fn typicality_length_mismatch() {
        let j = JointPmf::new(
            vec![Var::new("X", 2), Var::new("Y", 2)],
            vec![0.25, 0.25, 0.25, 0.25],
        )
        .unwrap();
        let a = vec![0u8; 4];
        let b = vec![0u8; 5];
        assert!(matches!(
            typical(&[&a, &b], &j, 0.1),
            Err(SimError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn zero_rates_give_single_codewords() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let cfg = base_cfg(8, 1);
        let book = generate_codebooks(&ctx, &cfg, 0).unwrap();
        assert_eq!(book.sizes.m, [1, 1, 1, 1]);
        assert_eq!(book.sizes.l, [1, 1, 1, 1]);
    }

    #[test]
    fn deterministic_conditional_gives_identical_codewords() {
        let ch = binary_state_channel();
        let dist = SchemeDistribution::Scheme1(Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable { card: 2, weights: vec![1.0, 0.0, 1.0, 0.0] },
            v1: AuxTable { card: 2, weights: vec![0.5, 0.5, 0.5, 0.5] },
            u2: AuxTable::constant(1, 1, 2),
            v2: AuxTable::constant(1, 1, 2),
            f1: crate::channel::EncoderMap::identity_on_v(2, 2, 2, 2),
            f2: crate::channel::EncoderMap::identity_on_v(1, 1, 2, 1),
        });
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(16, 1);
        cfg.bin_rates = [0.25, 0.0, 0.0, 0.0];
        let book = generate_codebooks(&ctx, &cfg, 3).unwrap();
        let a = book.u_seq(User::One, 0, 0);
        let b = book.u_seq(User::One, 0, 1);
        assert_eq!(a, b);
        assert!(a.iter().all(|&s| s == 0));
    }

    #[test]
    fn codebooks_reproducible_from_seed() {
        let ch = binary_state_channel();
        let dist = correlated_state_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(16, 1);
        cfg.bin_rates = [0.5, 0.0, 0.0, 0.0];
        let b1 = generate_codebooks(&ctx, &cfg, 5).unwrap();
        let b2 = generate_codebooks(&ctx, &cfg, 5).unwrap();
        assert_eq!(b1.q_seq, b2.q_seq);
        assert_eq!(b1.u_seq(User::One, 0, 3), b2.u_seq(User::One, 0, 3));
        assert_eq!(b1.sample_state(), b2.sample_state());
    }

    #[test]
    fn trivial_state_search_always_succeeds() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(64, 1);
        cfg.epsilon = 0.35;
        let mut failures = 0;
        for trial in 0..50 {
            let book = generate_codebooks(&ctx, &cfg, trial).unwrap();
            let s_seq = book.sample_state();
            let enc = gp_encode(&book, &s_seq, User::One, (0, 0), &cfg).unwrap();
            if enc.xi_u {
                failures += 1;
            }
        }
        // |S| = 1 and |U1| = 1: the joint (q, s, u) is a point mass
        assert_eq!(failures, 0);
    }

    #[test]
    fn bin_rate_thresholds_bracket_the_state_information() {
        // I(U1;S) ~ 0.531 bits for the 0.9-correlated pair
        let ch = binary_state_channel();
        let dist = correlated_state_dist(&ch);
        let n = 32;
        let mut below = base_cfg(n, 1);
        below.trials = 60;
        below.epsilon = 0.5;
        below.bin_rates = [0.0, 0.0, 0.0, 0.0];
        let (xi_low, _) = encoder_failure_rates(&ch, &dist, &below).unwrap();

        let mut above = below.clone();
        above.bin_rates = [0.531 + 0.2, 0.0, 0.0, 0.0];
        let (xi_high, _) = encoder_failure_rates(&ch, &dist, &above).unwrap();

        assert!(xi_low >= 0.9, "failure below threshold: {xi_low}");
        assert!(xi_high <= 0.1, "failure above threshold: {xi_high}");
    }

    #[test]
    fn noiseless_transmission_reproduces_x() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let cfg = base_cfg(32, 1);
        let book = generate_codebooks(&ctx, &cfg, 1).unwrap();
        let s_seq = book.sample_state();
        let enc = EncodeOutcome { l_u: 0, l_v: 0, xi_u: false, xi_v: false };
        let (y1, _y2) = transmit(&book, &s_seq, (0, 0), &enc, (0, 0), &enc).unwrap();
        let (x1, _x2) = channel_inputs(&book, &s_seq, (0, 0), &enc, (0, 0), &enc);
        assert_eq!(y1, x1);
    }

    #[test]
    fn input_ignoring_law_gives_iid_outputs() {
        let mut law = Vec::new();
        for _x1 in 0..2 {
            law.extend([0.25, 0.75]);
        }
        let ch = ChannelSpec::new((2, 1, 2, 1, 1), vec![1.0], law).unwrap();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let cfg = base_cfg(4000, 1);
        let book = generate_codebooks(&ctx, &cfg, 2).unwrap();
        let s_seq = book.sample_state();
        let enc = EncodeOutcome { l_u: 0, l_v: 0, xi_u: false, xi_v: false };
        let (y1, _) = transmit(&book, &s_seq, (0, 0), &enc, (0, 0), &enc).unwrap();
        let ones = y1.iter().filter(|&&y| y == 1).count() as f64 / 4000.0;
        assert!((ones - 0.75).abs() < 0.05, "{ones}");
    }

    #[test]
    fn stuck_at_law_is_a_table_lookup() {
        // s=0: y=x, s=1: y=0, s=2: y=1
        let mut law = Vec::new();
        for s in 0..3 {
            for x1 in 0..2 {
                let y = match s {
                    0 => x1,
                    1 => 0,
                    _ => 1,
                };
                let mut cell = vec![0.0; 2];
                cell[y] = 1.0;
                law.extend(cell);
            }
        }
        let ch = ChannelSpec::new((2, 1, 2, 1, 3), vec![0.5, 0.25, 0.25], law).unwrap();
        let dist = SchemeDistribution::Scheme1(Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable::constant(1, 1, 3),
            v1: AuxTable { card: 2, weights: vec![0.5, 0.5, 0.5, 0.5, 0.5, 0.5] },
            u2: AuxTable::constant(1, 1, 3),
            v2: AuxTable::constant(1, 1, 3),
            f1: crate::channel::EncoderMap::identity_on_v(1, 2, 3, 2),
            f2: crate::channel::EncoderMap::identity_on_v(1, 1, 3, 1),
        });
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let cfg = base_cfg(64, 1);
        let book = generate_codebooks(&ctx, &cfg, 4).unwrap();
        let s_seq = book.sample_state();
        let enc = EncodeOutcome { l_u: 0, l_v: 0, xi_u: false, xi_v: false };
        let (y1, _) = transmit(&book, &s_seq, (0, 0), &enc, (0, 0), &enc).unwrap();
        let (x1, _) = channel_inputs(&book, &s_seq, (0, 0), &enc, (0, 0), &enc);
        for i in 0..64 {
            let want = match s_seq[i] {
                0 => x1[i],
                1 => 0,
                _ => 1,
            };
            assert_eq!(y1[i], want);
        }
    }

    #[test]
    fn decode_zero_rates_returns_first_pair() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(64, 1);
        cfg.epsilon = 0.4;
        let book = generate_codebooks(&ctx, &cfg, 6).unwrap();
        let s_seq = book.sample_state();
        let enc = gp_encode(&book, &s_seq, User::One, (0, 0), &cfg).unwrap();
        let enc2 = gp_encode(&book, &s_seq, User::Two, (0, 0), &cfg).unwrap();
        let (y1, _) = transmit(&book, &s_seq, (0, 0), &enc, (0, 0), &enc2).unwrap();
        assert_eq!(
            jt_decode(&book, User::One, &y1, &cfg).unwrap(),
            DecodeOutcome::Decoded(0, 0)
        );
    }

    #[test]
    fn decode_fresh_noise_is_empty() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(200, 1);
        cfg.epsilon = 0.1;
        let book = generate_codebooks(&ctx, &cfg, 8).unwrap();
        // a constant output is far from the (V1, Y1) diagonal reference
        let y = vec![0u8; 200];
        assert_eq!(
            jt_decode(&book, User::One, &y, &cfg).unwrap(),
            DecodeOutcome::Empty
        );
    }

    #[test]
    fn decode_planted_duplicate_is_ambiguous() {
        // deterministic v-книга: all codewords identical, two message values
        let ch = single_user_channel();
        let dist = SchemeDistribution::Scheme1(Scheme1Distribution {
            q: vec![1.0],
            u1: AuxTable::constant(1, 1, 1),
            v1: AuxTable { card: 2, weights: vec![1.0, 0.0] },
            u2: AuxTable::constant(1, 1, 1),
            v2: AuxTable::constant(1, 1, 1),
            f1: crate::channel::EncoderMap::identity_on_v(1, 2, 1, 2),
            f2: crate::channel::EncoderMap::identity_on_v(1, 1, 1, 1),
        });
        let ctx = SimContext::new(&ch, &dist).unwrap();
        let mut cfg = base_cfg(16, 1);
        cfg.rates = [0.0, 1.0 / 16.0, 0.0, 0.0]; // two private messages
        let book = generate_codebooks(&ctx, &cfg, 9).unwrap();
        assert_eq!(book.sizes.m[1], 2);
        let y = vec![0u8; 16];
        assert_eq!(
            jt_decode(&book, User::One, &y, &cfg).unwrap(),
            DecodeOutcome::Ambiguous
        );
    }

    #[test]
    fn zero_trials_report_is_empty() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let mut cfg = base_cfg(8, 1);
        cfg.trials = 0;
        let report = run_trials(&ch, &dist, &cfg).unwrap();
        assert_eq!(report.overall_err, 0);
        assert_eq!(report.trials, 0);
        assert_eq!(report.overall_err_rate, 0.0);
    }

    #[test]
    fn run_trials_deterministic_in_seed() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let mut cfg = base_cfg(12, 1);
        cfg.rates = [0.0, 0.25, 0.0, 0.0];
        cfg.trials = 40;
        cfg.epsilon = 0.6;
        let a = run_trials(&ch, &dist, &cfg).unwrap();
        let b = run_trials(&ch, &dist, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let ch = single_user_channel();
        let dist = single_user_dist(&ch);
        let mut cfg = base_cfg(64, 1);
        cfg.rates = [0.0, 0.5, 0.0, 0.0]; // 2^32 candidates at receiver 1
        let err = run_trials(&ch, &dist, &cfg).unwrap_err();
        assert!(matches!(err, SimError::CapExceeded { receiver: 1, .. }));
    }

    #[test]
    fn scheme2_sequential_encoder_reports_private_failures() {
        // private layer correlated with state; zero private bin rate fails often
        let ch = binary_state_channel();
        let u1 = AuxTable { card: 2, weights: vec![0.5, 0.5, 0.5, 0.5] };
        let mut v1_weights = Vec::new();
        for _u in 0..2 {
            // v strongly tracks s regardless of u
            v1_weights.extend([0.95, 0.05, 0.05, 0.95]);
        }
        let dist = SchemeDistribution::Scheme2(crate::channel::Scheme2Distribution {
            q: vec![1.0],
            u1,
            v1: crate::channel::SuperposedTable { card: 2, weights: v1_weights },
            u2: AuxTable::constant(1, 1, 2),
            v2: crate::channel::SuperposedTable::constant(1, 1, 1, 2),
            g1: crate::channel::EncoderMap::identity_on_v(2, 2, 2, 2),
            g2: crate::channel::EncoderMap::identity_on_v(1, 1, 2, 1),
        });
        let mut low = base_cfg(32, 2);
        low.trials = 40;
        low.epsilon = 0.5;
        let (_, xi2_low) = encoder_failure_rates(&ch, &dist, &low).unwrap();
        let mut high = low.clone();
        high.bin_rates = [0.0, 1.0, 0.0, 0.0];
        let (_, xi2_high) = encoder_failure_rates(&ch, &dist, &high).unwrap();
        assert!(
            xi2_low > xi2_high + 0.2,
            "xi2 low-bin {xi2_low} vs high-bin {xi2_high}"
        );
    }
}
