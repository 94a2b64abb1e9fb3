//! Text rendering shared by serialized outputs: exact rationals as `p/q`,
//! reals with 12 significant digits.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::arith::{rat_to_string, LogExpr, Place, Rat};

pub const SIG_DIGITS: usize = 12;

/// Decimal rendering with 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    if (-6..21).contains(&mag) {
        let decimals = (SIG_DIGITS as i32 - 1 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(s)
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mant, exp) = s.split_once('e').expect("scientific");
        format!("{}e{exp}", trim_zeros(mant.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Round to 12 significant digits, for JSON numbers.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn ser_place_rats<S: Serializer>(v: &[(Place, Rat)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (p, r) in v {
        seq.serialize_element(&(p.to_string(), rat_to_string(r)))?;
    }
    seq.end()
}

/// `[[prime, coefficient], ...]` with both entries as strings.
pub fn log_terms(e: &LogExpr) -> Vec<[String; 2]> {
    e.terms()
        .map(|(p, c)| [p.to_string(), rat_to_string(c)])
        .collect()
}

pub fn ser_log<S: Serializer>(e: &LogExpr, s: S) -> Result<S::Ok, S::Error> {
    let terms = log_terms(e);
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for t in &terms {
        seq.serialize_element(t)?;
    }
    seq.end()
}
