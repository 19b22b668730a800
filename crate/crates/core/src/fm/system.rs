//! Linear inequality systems over named variables with exact rational
//! coefficients. Right-hand sides are either rational constants or linear
//! expressions in non-negative named symbols.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::{FmError, Rat, Result};

/// `constant + Σ coeff · symbol`, kept canonical (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicRhs {
    pub constant: Rat,
    pub terms: BTreeMap<String, Rat>,
}

impl SymbolicRhs {
    pub fn constant(c: Rat) -> Self {
        SymbolicRhs { constant: c, terms: BTreeMap::new() }
    }

    pub fn from_terms(constant: Rat, terms: impl IntoIterator<Item = (String, Rat)>) -> Self {
        let mut rhs = SymbolicRhs { constant, terms: BTreeMap::new() };
        for (name, coeff) in terms {
            rhs.add_term(&name, &coeff);
        }
        rhs
    }

    pub fn add_term(&mut self, name: &str, coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(name.to_string()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn scaled(&self, k: &Rat) -> SymbolicRhs {
        if k.is_zero() {
            return SymbolicRhs::constant(Rat::zero());
        }
        SymbolicRhs {
            constant: &self.constant * k,
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * k)).collect(),
        }
    }

    pub fn plus(&self, other: &SymbolicRhs) -> SymbolicRhs {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (n, c) in &other.terms {
            out.add_term(n, c);
        }
        out
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate at a symbol assignment; missing symbols default to zero.
    pub fn instantiate(&self, values: &BTreeMap<String, Rat>) -> Rat {
        let mut v = self.constant.clone();
        for (n, c) in &self.terms {
            if let Some(x) = values.get(n) {
                v += c * x;
            }
        }
        v
    }
}

impl fmt::Display for SymbolicRhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::rat_to_f64(&self.constant))?;
        for (name, coeff) in &self.terms {
            write!(f, " + {}*{}", coeff, name)?;
        }
        Ok(())
    }
}

/// Right-hand side of a row.
#[derive(Debug, Clone, PartialEq)]
pub enum RhsVal {
    Num(Rat),
    Sym(SymbolicRhs),
}

impl RhsVal {
    pub fn as_num(&self) -> Result<&Rat> {
        match self {
            RhsVal::Num(r) => Ok(r),
            RhsVal::Sym(_) => Err(FmError::NonNumericRhs),
        }
    }

    pub fn scaled(&self, k: &Rat) -> RhsVal {
        match self {
            RhsVal::Num(r) => RhsVal::Num(r * k),
            RhsVal::Sym(s) => RhsVal::Sym(s.scaled(k)),
        }
    }

    pub fn plus(&self, other: &RhsVal) -> RhsVal {
        match (self, other) {
            (RhsVal::Num(a), RhsVal::Num(b)) => RhsVal::Num(a + b),
            (RhsVal::Sym(a), RhsVal::Sym(b)) => RhsVal::Sym(a.plus(b)),
            (RhsVal::Num(a), RhsVal::Sym(b)) | (RhsVal::Sym(b), RhsVal::Num(a)) => {
                let mut s = b.clone();
                s.constant += a;
                RhsVal::Sym(s)
            }
        }
    }
}

/// One inequality `coeffs · x <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinRow {
    pub coeffs: Vec<Rat>,
    pub rhs: RhsVal,
    pub tag: Option<String>,
}

impl LinRow {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Scale so the coefficients become coprime integers with the first
    /// nonzero coefficient's sign preserved. Zero rows are left untouched.
    pub fn canonicalize(&mut self) {
        if self.is_zero() {
            return;
        }
        let mut lcm = num::BigInt::one();
        for c in &self.coeffs {
            if !c.is_zero() {
                lcm = num::integer::lcm(lcm, c.denom().clone());
            }
        }
        let mut gcd = num::BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                let n = (c * Rat::from(lcm.clone())).numer().abs();
                gcd = num::integer::gcd(gcd, n);
            }
        }
        let scale = Rat::new(lcm, gcd);
        if scale.is_one() {
            return;
        }
        for c in &mut self.coeffs {
            *c *= &scale;
        }
        self.rhs = self.rhs.scaled(&scale);
    }

    /// Canonical direction key (string of the canonicalized coefficients).
    pub fn direction_key(&self) -> String {
        let mut r = self.clone();
        r.canonicalize();
        r.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A conjunction of `<=` rows over an ordered variable list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearSystem {
    pub vars: Vec<String>,
    pub rows: Vec<LinRow>,
}

impl LinearSystem {
    pub fn new(vars: Vec<String>) -> Self {
        LinearSystem { vars, rows: Vec::new() }
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| FmError::UnknownVariable(name.to_string()))
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rhs: RhsVal, tag: Option<&str>) {
        assert_eq!(coeffs.len(), self.vars.len(), "coefficient arity");
        self.rows.push(LinRow { coeffs, rhs, tag: tag.map(str::to_string) });
    }

    pub fn push_num(&mut self, coeffs: Vec<Rat>, rhs: Rat, tag: Option<&str>) {
        self.push(coeffs, RhsVal::Num(rhs), tag);
    }

    pub fn is_numeric(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.rhs, RhsVal::Num(_)))
    }

    /// Exact check of one point against every row (numeric systems).
    pub fn contains_point(&self, point: &[Rat]) -> Result<bool> {
        assert_eq!(point.len(), self.vars.len());
        for row in &self.rows {
            let lhs: Rat = row
                .coeffs
                .iter()
                .zip(point)
                .map(|(c, x)| c * x)
                .fold(Rat::zero(), |a, b| a + b);
            if &lhs > row.rhs.as_num()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same check in floating point with absolute slack.
    pub fn contains_point_f64(&self, point: &[f64], slack: f64) -> Result<bool> {
        for row in &self.rows {
            let lhs: f64 = row
                .coeffs
                .iter()
                .zip(point)
                .map(|(c, x)| super::rat_to_f64(c) * x)
                .sum();
            if lhs > super::rat_to_f64(row.rhs.as_num()?) + slack {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonicalize rows, drop exact duplicates, and for parallel numeric
    /// rows keep only the tightest. Symbolic rows are deduplicated exactly.
    pub fn dedupe_dominated(&mut self) {
        for row in &mut self.rows {
            row.canonicalize();
        }
        let mut best: BTreeMap<String, usize> = BTreeMap::new();
        let mut keep = vec![true; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let key = match &row.rhs {
                RhsVal::Num(_) => row
                    .coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                RhsVal::Sym(s) => format!(
                    "{}|{}",
                    row.coeffs
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    s
                ),
            };
            match best.get(&key) {
                None => {
                    best.insert(key, i);
                }
                Some(&j) => match (&self.rows[j].rhs, &row.rhs) {
                    (RhsVal::Num(a), RhsVal::Num(b)) => {
                        if b < a {
                            keep[j] = false;
                            best.insert(key, i);
                        } else {
                            keep[i] = false;
                        }
                    }
                    _ => {
                        // identical symbolic rows (rhs folded into the key)
                        keep[i] = false;
                    }
                },
            }
        }
        let mut idx = 0;
        self.rows.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
    }

    /// Instantiate symbolic right-hand sides at a symbol assignment.
    pub fn instantiate(&self, values: &BTreeMap<String, Rat>) -> LinearSystem {
        let rows = self
            .rows
            .iter()
            .map(|r| LinRow {
                coeffs: r.coeffs.clone(),
                rhs: match &r.rhs {
                    RhsVal::Num(x) => RhsVal::Num(x.clone()),
                    RhsVal::Sym(s) => RhsVal::Num(s.instantiate(values)),
                },
                tag: r.tag.clone(),
            })
            .collect();
        LinearSystem { vars: self.vars.clone(), rows }
    }
}
