//! Constraint-set text format: one inequality per line,
//! `tag: c1*VAR1 + c2*VAR2 + ... <= rhs`, `#` comments allowed.
//! Symbolic right-hand sides append `+ c*I(...)` tokens after the constant.

use num::{BigInt, One, Zero};

use super::system::{LinRow, LinearSystem, RhsVal};
use super::{FmError, Rat, Result};

pub fn write_system(sys: &LinearSystem) -> String {
    let mut out = String::new();
    for (i, row) in sys.rows.iter().enumerate() {
        let tag = row.tag.clone().unwrap_or_else(|| format!("row{i}"));
        let lhs = sys
            .vars
            .iter()
            .zip(&row.coeffs)
            .map(|(v, c)| format!("{}*{}", rat_display(c), v))
            .collect::<Vec<_>>()
            .join(" + ");
        let rhs = match &row.rhs {
            RhsVal::Num(r) => format!("{:.9}", super::rat_to_f64(r)),
            RhsVal::Sym(s) => {
                let mut txt = format!("{:.9}", super::rat_to_f64(&s.constant));
                for (name, coeff) in &s.terms {
                    txt.push_str(&format!(" + {}*{}", rat_display(coeff), name));
                }
                txt
            }
        };
        out.push_str(&format!("{tag}: {lhs} <= {rhs}\n"));
    }
    out
}

fn rat_display(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a numeric constraint file. Variables are collected in order of
/// first appearance unless `expected_vars` pins the layout.
pub fn parse_system(text: &str, expected_vars: Option<&[&str]>) -> Result<LinearSystem> {
    let mut vars: Vec<String> = expected_vars
        .map(|v| v.iter().map(|s| s.to_string()).collect())
        .unwrap_or_default();
    let fixed = expected_vars.is_some();
    let mut parsed: Vec<(String, Vec<(String, Rat)>, Rat)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| FmError::Parse { line: lineno + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (tag, rest) = line.split_once(':').ok_or_else(|| err("missing `tag:`"))?;
        let (lhs, rhs) = rest.split_once("<=").ok_or_else(|| err("missing `<=`"))?;
        let rhs_val = parse_decimal(rhs.trim()).ok_or_else(|| err("bad rhs"))?;

        let mut terms: Vec<(String, Rat)> = Vec::new();
        for piece in split_terms(lhs) {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (coef_txt, var) = piece
                .split_once('*')
                .ok_or_else(|| err("term must look like c*VAR"))?;
            let coef = parse_coeff(coef_txt.trim()).ok_or_else(|| err("bad coefficient"))?;
            let var = var.trim().to_string();
            if !vars.contains(&var) {
                if fixed {
                    return Err(err(&format!("unknown variable `{var}`")));
                }
                vars.push(var.clone());
            }
            terms.push((var, coef));
        }
        if terms.is_empty() {
            return Err(err("empty left-hand side"));
        }
        parsed.push((tag.trim().to_string(), terms, rhs_val));
    }

    let mut sys = LinearSystem::new(vars.clone());
    for (tag, terms, rhs) in parsed {
        let mut coeffs = vec![Rat::zero(); vars.len()];
        for (var, c) in terms {
            let idx = vars.iter().position(|v| *v == var).unwrap();
            coeffs[idx] += c;
        }
        sys.rows.push(LinRow { coeffs, rhs: RhsVal::Num(rhs), tag: Some(tag) });
    }
    Ok(sys)
}

/// Splits on `+` while honoring a leading `-` on each term.
fn split_terms(lhs: &str) -> Vec<String> {
    lhs.split('+').map(|s| s.to_string()).collect()
}

fn parse_coeff(txt: &str) -> Option<Rat> {
    if let Some((n, d)) = txt.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(super::rat(n, d));
    }
    parse_decimal(txt)
}

/// Exact decimal to rational: `-12.345` becomes `-12345/1000`.
pub fn parse_decimal(txt: &str) -> Option<Rat> {
    let txt = txt.trim();
    if txt.is_empty() {
        return None;
    }
    let (neg, digits) = match txt.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, txt.strip_prefix('+').unwrap_or(txt)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut numer = BigInt::zero();
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer * 10 + (c as u8 - b'0');
    }
    let mut denom = BigInt::one();
    for _ in 0..frac_part.len() {
        denom *= 10;
    }
    let mut r = Rat::new(numer, denom);
    if neg {
        r = -r;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    #[test]
    fn roundtrip_numeric() {
        let mut s = LinearSystem::new(vec!["R10".into(), "R11".into()]);
        s.push_num(vec![rat_int(1), rat_int(1)], rat(3, 4), Some("T1-13"));
        s.push_num(vec![rat_int(0), rat_int(1)], rat(1, 2), Some("T1-11"));
        let text = write_system(&s);
        let back = parse_system(&text, Some(&["R10", "R11"])).unwrap();
        assert_eq!(back.rows.len(), 2);
        assert_eq!(back.rows[0].rhs.as_num().unwrap(), &rat(3, 4));
        assert_eq!(back.rows[0].tag.as_deref(), Some("T1-13"));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let text = "ok: 1*R1 <= 0.5\nbroken line\n";
        match parse_system(text, None) {
            Err(FmError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_decimal("0.75").unwrap(), rat(3, 4));
        assert_eq!(parse_decimal("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_decimal("2").unwrap(), rat_int(2));
        assert!(parse_decimal("abc").is_none());
    }
}
