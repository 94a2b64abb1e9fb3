//! Empirical harness for the weighted gcd bound
//!
//! ```text
//! wgcd(f_1(x), …, f_t(x)) ≤ max_i |x_i|^{ε/q_i} · |x_0⋯x_n|'_S^{1/(q(r-1+δ))}
//! ```
//!
//! over a finite domain of normalized integral points, and the audit of
//! points with vanishing `log hwgcd` against the singular locus.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime_u64, ln_bigint, rat_to_string, s_part, Place, Rat};
use crate::error::{Error, Result};
use crate::format::{fmt_sig, log_terms};
use crate::gcdops::{log_hwgcd, wgcd, Subscheme};
use crate::heights::point_places;
use crate::localheights::Metric;
use crate::points::WPoint;
use crate::singular::{component_membership, is_singular, support_gcd, valuation_table};
use crate::weights::Weights;

const CHUNK: usize = 2048;
const MAX_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// `|x_i| ≤ bounds[i]`.
    Box(Vec<u64>),
    /// `x_0 = 1` and every other coordinate a positive integer `≤ max`
    /// whose prime factors lie in `primes`.
    SUnitGrid { primes: Vec<u64>, max: u64 },
}

impl Domain {
    /// `box:B`, `box:B0,B1,…` or `sunit:P1,P2,…:MAX`.
    pub fn parse(s: &str, len: usize) -> Result<Domain> {
        let bad = || Error::Parse(format!("invalid domain `{s}`"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["box", b] => {
                let bounds = b.split(',').map(num).collect::<Result<Vec<_>>>()?;
                match bounds.len() {
                    1 => Ok(Domain::Box(vec![bounds[0]; len])),
                    l if l == len => Ok(Domain::Box(bounds)),
                    got => Err(Error::ArityMismatch { expected: len, got }),
                }
            }
            ["sunit", ps, max] => {
                let primes = if ps.trim().is_empty() {
                    Vec::new()
                } else {
                    ps.split(',').map(num).collect::<Result<Vec<_>>>()?
                };
                Ok(Domain::SUnitGrid {
                    primes,
                    max: num(max)?,
                })
            }
            _ => Err(bad()),
        }
    }

    fn describe(&self) -> String {
        match self {
            Domain::Box(b) => format!(
                "box:{}",
                b.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
            Domain::SUnitGrid { primes, max } => format!(
                "sunit:{}:{max}",
                primes
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    fn points(&self, len: usize) -> Result<Vec<Vec<i64>>> {
        match self {
            Domain::Box(bounds) => {
                if bounds.len() != len {
                    return Err(Error::ArityMismatch {
                        expected: len,
                        got: bounds.len(),
                    });
                }
                let ranges: Vec<Vec<i64>> = bounds
                    .iter()
                    .map(|&b| {
                        let b = i64::try_from(b)
                            .map_err(|_| Error::InvalidConfig("box bound too large".into()))?;
                        Ok((-b..=b).collect())
                    })
                    .collect::<Result<_>>()?;
                let mut pts = cartesian(&ranges);
                pts.retain(|c| c.iter().any(|&v| v != 0));
                Ok(pts)
            }
            Domain::SUnitGrid { primes, max } => {
                if *max < 1 {
                    return Err(Error::InvalidConfig(
                        "S-unit bound must be at least 1".into(),
                    ));
                }
                for &p in primes {
                    if !is_prime_u64(p) {
                        return Err(Error::NotPrime(p.to_string()));
                    }
                }
                let units: Vec<i64> = s_units(primes, *max)
                    .into_iter()
                    .map(|u| u as i64)
                    .collect();
                let mut ranges = vec![vec![1i64]];
                ranges.extend(std::iter::repeat(units).take(len.saturating_sub(1)));
                Ok(cartesian(&ranges))
            }
        }
    }
}

/// Positive integers `≤ max` supported on `primes`, ascending.
pub fn s_units(primes: &[u64], max: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &u in &out {
            let mut v = u;
            loop {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) if w <= max => v = w,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn cartesian(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                r.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub weights: Weights,
    pub generators: Subscheme,
    pub epsilon: Rat,
    pub delta: Rat,
    pub s_primes: BTreeSet<BigInt>,
    pub domain: Domain,
    /// Overrides `r`, which otherwise is the number of generators.
    pub codim: Option<u64>,
    /// Echoed in the report; the bound itself does not use a metric.
    pub metric: Metric,
}

impl ScanConfig {
    /// `w = (1, q1, q2)`, generators `x1 - x0`, `x2 - x0` with gcd weights
    /// `(q1, q2)`, `S = {2, 3}`, positive `S`-units up to `max`, `δ = 0`.
    pub fn s_unit_pairs(q1: u64, q2: u64, max: u64, epsilon: Rat) -> Result<ScanConfig> {
        let weights = Weights::new(vec![1, q1, q2])?;
        let generators = Subscheme::parse(
            "x1 - x0; x2 - x0",
            &weights,
            Some(Weights::new(vec![q1, q2])?),
        )?;
        Ok(ScanConfig {
            weights,
            generators,
            epsilon,
            delta: Rat::zero(),
            s_primes: [2, 3].into_iter().map(BigInt::from).collect(),
            domain: Domain::SUnitGrid {
                primes: vec![2, 3],
                max,
            },
            codim: None,
            metric: Metric::Paper,
        })
    }

    pub fn r(&self) -> u64 {
        self.codim
            .unwrap_or(self.generators.generators().len() as u64)
    }

    fn validate(&self) -> Result<Exponents> {
        if self.generators.weights() != &self.weights {
            return Err(Error::WeightMismatch);
        }
        if !self.epsilon.is_positive() {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if self.delta.is_negative() {
            return Err(Error::InvalidConfig("delta must be non-negative".into()));
        }
        for p in &self.s_primes {
            if !crate::arith::is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
        }
        let r = self.r();
        if r == 0 {
            return Err(Error::InvalidConfig("codimension must be positive".into()));
        }
        let shift = Rat::from_integer(BigInt::from(r - 1)) + &self.delta;
        if !shift.is_positive() {
            return Err(Error::InvalidConfig(
                "r - 1 + delta must be positive".into(),
            ));
        }
        let m = BigInt::from(self.weights.m());
        let q = BigInt::from(self.weights.qprod());
        let on_a = &self.epsilon / Rat::from_integer(m);
        let on_t = Rat::from_integer(BigInt::one()) / (shift * Rat::from_integer(q));
        let l = on_a.denom().lcm(on_t.denom());
        let to_u64 = |r: Rat| -> Result<u64> {
            (r * Rat::from_integer(l.clone()))
                .to_integer()
                .to_u64()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| {
                    Error::InvalidConfig("exponents too large for an exact comparison".into())
                })
        };
        let l_u = l.to_u64().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
            Error::InvalidConfig("exponents too large for an exact comparison".into())
        })?;
        Ok(Exponents {
            a_float: on_a.to_f64().unwrap_or(f64::NAN),
            t_float: on_t.to_f64().unwrap_or(f64::NAN),
            l: l_u,
            a: to_u64(on_a)?,
            t: to_u64(on_t)?,
        })
    }
}

/// `rhs = A^{a/l} T^{t/l}` with `A = max_i |x_i|^{m/q_i}`, `T = |x_0⋯x_n|'_S`.
#[derive(Debug, Clone, Copy)]
struct Exponents {
    a_float: f64,
    t_float: f64,
    l: u64,
    a: u64,
    t: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub point: WPoint,
    #[serde(serialize_with = "ser_bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::format::ser_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "crate::format::ser_f64")]
    pub ratio: f64,
    pub exceptional: bool,
}

fn ser_bigint<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub candidates: usize,
    pub evaluated: usize,
    pub skipped_not_normalized: usize,
    pub skipped_zero_coordinate: usize,
    pub skipped_on_subscheme: usize,
    pub exceptional: usize,
    #[serde(serialize_with = "crate::format::ser_f64")]
    pub max_ratio: f64,
    pub max_ratio_point: Option<WPoint>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub weights: Weights,
    pub generators: Vec<String>,
    pub gcd_weights: Weights,
    pub epsilon: String,
    pub delta: String,
    pub r: u64,
    pub s_primes: Vec<String>,
    pub domain: String,
    pub metric: Metric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub config: ConfigEcho,
    pub summary: ScanSummary,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("point,lhs,rhs,ratio,exceptional\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.point,
                r.lhs,
                fmt_sig(r.rhs),
                fmt_sig(r.ratio),
                r.exceptional
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

enum Outcome {
    Row(ScanRow),
    NotNormalized,
    ZeroCoordinate,
    OnSubscheme,
}

/// The scan bound at an integral point: `(lhs, A, T)`.
pub fn scan_terms(x: &WPoint, config: &ScanConfig) -> Result<(BigInt, BigInt, BigInt)> {
    let ints = x
        .integer_coords()
        .ok_or(Error::HypothesisViolated("point is not integral".into()))?;
    let values = config.generators.values(x.coords())?;
    if values.iter().all(Zero::is_zero) {
        return Err(Error::PointOnSubscheme);
    }
    let values: Vec<BigInt> = values.into_iter().map(|v| v.to_integer()).collect();
    let lhs = wgcd(&values, config.generators.gcd_weights())?;
    let w = &config.weights;
    let a = ints
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs().pow((w.m() / w.get(i)) as u32))
        .max()
        .expect("nonempty");
    let prod: BigInt = ints.iter().product();
    let t = s_part(&prod, &config.s_primes)?;
    Ok((lhs, a, t))
}

fn evaluate(coords: &[i64], config: &ScanConfig, e: Exponents) -> Result<Outcome> {
    let x = WPoint::from_ints(coords, &config.weights)?;
    if !x.is_normalized() {
        return Ok(Outcome::NotNormalized);
    }
    if coords.contains(&0) {
        return Ok(Outcome::ZeroCoordinate);
    }
    if !config
        .generators
        .generators()
        .iter()
        .all(|g| g.weights() == &config.weights)
    {
        return Err(Error::WeightMismatch);
    }
    let (lhs, a, t) = match scan_terms(&x, config) {
        Ok(v) => v,
        Err(Error::PointOnSubscheme) => return Ok(Outcome::OnSubscheme),
        Err(err) => return Err(err),
    };
    let ln_rhs = e.a_float * ln_bigint(&a) + e.t_float * ln_bigint(&t);
    let rhs = ln_rhs.exp();
    let ratio = (ln_bigint(&lhs) - ln_rhs).exp();
    let exceptional = lhs.pow(e.l as u32) > a.pow(e.a as u32) * t.pow(e.t as u32);
    Ok(Outcome::Row(ScanRow {
        point: x,
        lhs,
        rhs,
        ratio,
        exceptional,
    }))
}

/// Evaluate the bound at every normalized point of the domain with all
/// coordinates nonzero and off the subscheme. Rows are sorted by
/// coordinate tuple; the exceptional flag is decided exactly.
pub fn vojta_scan(config: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    let e = config.validate()?;
    let points = config.domain.points(config.weights.len())?;
    if points.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let chunks: Vec<Vec<Outcome>> = points
        .par_chunks(CHUNK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|c| evaluate(c, config, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut summary = ScanSummary {
        candidates: points.len(),
        evaluated: 0,
        skipped_not_normalized: 0,
        skipped_zero_coordinate: 0,
        skipped_on_subscheme: 0,
        exceptional: 0,
        max_ratio: 0.0,
        max_ratio_point: None,
        elapsed: Duration::ZERO,
    };
    for outcome in chunks.into_iter().flatten() {
        match outcome {
            Outcome::Row(r) => rows.push(r),
            Outcome::NotNormalized => summary.skipped_not_normalized += 1,
            Outcome::ZeroCoordinate => summary.skipped_zero_coordinate += 1,
            Outcome::OnSubscheme => summary.skipped_on_subscheme += 1,
        }
    }
    if rows.is_empty() && summary.skipped_on_subscheme > 0 {
        return Err(Error::DegenerateGenerators(
            "generators vanish at every admissible point".into(),
        ));
    }
    rows.sort_by(|a, b| a.point.coords().cmp(b.point.coords()));
    summary.evaluated = rows.len();
    summary.exceptional = rows.iter().filter(|r| r.exceptional).count();
    for r in &rows {
        if summary.max_ratio_point.is_none() || r.ratio > summary.max_ratio {
            summary.max_ratio = r.ratio;
            summary.max_ratio_point = Some(r.point.clone());
        }
    }
    summary.elapsed = start.elapsed();
    Ok(ScanReport {
        config: ConfigEcho {
            weights: config.weights.clone(),
            generators: config
                .generators
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect(),
            gcd_weights: config.generators.gcd_weights().clone(),
            epsilon: rat_to_string(&config.epsilon),
            delta: rat_to_string(&config.delta),
            r: config.r(),
            s_primes: config.s_primes.iter().map(BigInt::to_string).collect(),
            domain: config.domain.describe(),
            metric: config.metric,
        },
        summary,
        rows,
    })
}

/// A normalized point with `log hwgcd = 0` together with the data needed
/// to judge it against the singular locus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub point: WPoint,
    pub log_hwgcd_finite: Vec<[String; 2]>,
    #[serde(serialize_with = "crate::format::ser_f64")]
    pub log_hwgcd_archimedean: f64,
    pub support_gcd: u64,
    pub singular: bool,
    /// Primes `p | m` with `x ∈ S_w(p)`.
    pub strata: Vec<u64>,
    /// `(p, [ord_p x_i])` for `p | m` and the primes dividing a coordinate;
    /// `null` marks a zero coordinate.
    pub valuations: Vec<(String, Vec<Option<i64>>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub weights: Weights,
    pub bound: u64,
    pub points_checked: usize,
    pub zero_log_hwgcd: usize,
    /// Points with `log hwgcd = 0` outside the singular locus.
    pub counterexamples: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn find(&self, x: &WPoint) -> Option<&AuditEntry> {
        self.counterexamples
            .iter()
            .find(|e| e.point.coords() == x.coords())
    }
}

fn audit_entry(x: &WPoint) -> Result<AuditEntry> {
    let w = x.weights();
    let h = log_hwgcd(x.coords(), w, true)?;
    let m_primes: Vec<u64> = crate::arith::prime_divisors(&BigInt::from(w.m()))?
        .into_iter()
        .filter_map(|p| p.to_u64())
        .collect();
    let strata = m_primes
        .iter()
        .copied()
        .filter(|&p| component_membership(x, p).unwrap_or(false))
        .collect();
    let mut places: BTreeSet<Place> = point_places(x.coords()).into_iter().collect();
    places.extend(m_primes.iter().map(|&p| Place::Finite(BigInt::from(p))));
    let places: Vec<Place> = places.into_iter().collect();
    Ok(AuditEntry {
        point: x.clone(),
        log_hwgcd_finite: log_terms(&h.finite),
        log_hwgcd_archimedean: h.archimedean.as_ref().map_or(0.0, |a| a.value()),
        support_gcd: support_gcd(x),
        singular: is_singular(x),
        strata,
        valuations: valuation_table(x, &places)
            .into_iter()
            .map(|(p, v)| (p.to_string(), v))
            .collect(),
    })
}

/// Enumerate normalized integral points with `|x_i| ≤ bound` and report
/// those with `log hwgcd = 0` (archimedean term included) that are not
/// singular.
pub fn sing1_audit(weights: &Weights, bound: u64) -> Result<AuditReport> {
    if !weights.is_well_formed() {
        return Err(Error::IllFormedWeights);
    }
    let b = i64::try_from(bound).map_err(|_| Error::InvalidConfig("bound too large".into()))?;
    let ranges = vec![(-b..=b).collect::<Vec<i64>>(); weights.len()];
    let mut report = AuditReport {
        weights: weights.clone(),
        bound,
        points_checked: 0,
        zero_log_hwgcd: 0,
        counterexamples: Vec::new(),
    };
    for c in cartesian(&ranges) {
        if c.iter().all(|&v| v == 0) {
            continue;
        }
        let x = WPoint::from_ints(&c, weights)?;
        if !x.is_normalized() {
            continue;
        }
        report.points_checked += 1;
        if !log_hwgcd(x.coords(), weights, true)?.total().is_zero() {
            continue;
        }
        report.zero_log_hwgcd += 1;
        if !is_singular(&x) {
            report.counterexamples.push(audit_entry(&x)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcdops::hwgcd;

    fn w(q: &[u64]) -> Weights {
        Weights::new(q.to_vec()).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn diag_config(bound: u64) -> ScanConfig {
        let weights = w(&[1, 1, 1]);
        ScanConfig {
            generators: Subscheme::parse("x1 - x0; x2 - x0", &weights, None).unwrap(),
            weights,
            epsilon: rat(1),
            delta: rat(0),
            s_primes: BTreeSet::new(),
            domain: Domain::Box(vec![bound; 3]),
            codim: None,
            metric: Metric::Paper,
        }
    }

    #[test]
    fn s_units_up_to_bound() {
        assert_eq!(s_units(&[2, 3], 12), vec![1, 2, 3, 4, 6, 8, 9, 12]);
        assert_eq!(s_units(&[], 100), vec![1]);
        assert_eq!(s_units(&[2, 3], 1_000_000).len(), 142);
    }

    #[test]
    fn domain_parsing() {
        assert_eq!(
            Domain::parse("box:20", 3).unwrap(),
            Domain::Box(vec![20; 3])
        );
        assert_eq!(
            Domain::parse("box:1,2", 2).unwrap(),
            Domain::Box(vec![1, 2])
        );
        assert_eq!(
            Domain::parse("sunit:2,3:1000000", 3).unwrap(),
            Domain::SUnitGrid {
                primes: vec![2, 3],
                max: 1_000_000
            }
        );
        assert!(Domain::parse("ball:3", 3).unwrap_err().is_parse());
    }

    #[test]
    fn hand_computed_rows() {
        let report = vojta_scan(&diag_config(20)).unwrap();
        let row = |c: &[i64]| {
            report
                .rows
                .iter()
                .find(|r| {
                    r.point.coords() == WPoint::from_ints(c, &w(&[1, 1, 1])).unwrap().coords()
                })
                .cloned()
                .unwrap()
        };
        // lhs = gcd(x1 - x0, x2 - x0), rhs = max|x_i| · |x0 x1 x2|
        let cases: [(&[i64], i64, f64); 5] = [
            (&[1, 4, 7], 3, 196.0),
            (&[1, 2, 3], 1, 18.0),
            (&[1, 3, 5], 2, 75.0),
            (&[2, 5, 7], 1, 490.0),
            (&[1, 11, 1], 10, 121.0),
        ];
        for (c, lhs, rhs) in cases {
            let r = row(c);
            assert_eq!(r.lhs, BigInt::from(lhs), "{c:?}");
            assert!((r.rhs - rhs).abs() < 1e-9 * rhs, "{c:?}");
            assert!(!r.exceptional);
        }
        // exceptional rows against a float oracle
        for r in &report.rows {
            let c: Vec<f64> = r
                .point
                .coords()
                .iter()
                .map(|v| v.to_integer().to_f64().unwrap())
                .collect();
            let g =
                num_integer::Integer::gcd(&((c[1] - c[0]) as i64), &((c[2] - c[0]) as i64)) as f64;
            let rhs = c.iter().fold(0f64, |a, v| a.max(v.abs())) * (c[0] * c[1] * c[2]).abs();
            assert_eq!(r.exceptional, g > rhs, "{}", r.point);
        }
        let minus = report
            .rows
            .iter()
            .find(|r| r.point.to_string() == "[1:-1:1]")
            .unwrap();
        assert!(minus.exceptional);
        // sign canon keeps exactly one of ±x
        assert!(report
            .rows
            .iter()
            .all(|r| r.point.coords()[0].is_positive()));
    }

    #[test]
    fn exceptional_rows_with_small_epsilon() {
        let mut config = diag_config(6);
        config.epsilon = Rat::new(1.into(), 10.into());
        config.delta = rat(20);
        let report = vojta_scan(&config).unwrap();
        // [1:6:6]: lhs 5 against 6^{1/10} (36)^{1/21}
        let r = report
            .rows
            .iter()
            .find(|r| r.point.to_string() == "[1:6:6]")
            .unwrap();
        assert_eq!(r.lhs, BigInt::from(5));
        let rhs = 6f64.powf(0.1) * 36f64.powf(1.0 / 21.0);
        assert!((r.rhs - rhs).abs() < 1e-9);
        assert!(r.exceptional);
        for r in &report.rows {
            if (r.ratio - 1.0).abs() > 1e-9 {
                assert_eq!(r.exceptional, r.ratio > 1.0);
            }
        }
    }

    #[test]
    fn unit_values_give_no_exceptions() {
        let weights = w(&[1, 1]);
        let config = ScanConfig {
            generators: Subscheme::parse("x0", &weights, None).unwrap(),
            weights,
            epsilon: rat(1),
            delta: rat(1),
            s_primes: BTreeSet::new(),
            domain: Domain::Box(vec![1, 5]),
            codim: None,
            metric: Metric::Paper,
        };
        let report = vojta_scan(&config).unwrap();
        assert!(report
            .rows
            .iter()
            .all(|r| r.lhs == BigInt::one() && !r.exceptional));
    }

    #[test]
    fn config_errors() {
        let mut c = diag_config(2);
        c.epsilon = rat(0);
        assert!(matches!(vojta_scan(&c), Err(Error::InvalidConfig(_))));
        let mut c = diag_config(2);
        c.codim = Some(1);
        assert!(matches!(vojta_scan(&c), Err(Error::InvalidConfig(_))));
        let mut c = diag_config(2);
        c.domain = Domain::SUnitGrid {
            primes: vec![4],
            max: 10,
        };
        assert!(matches!(vojta_scan(&c), Err(Error::NotPrime(_))));
        assert_eq!(vojta_scan(&diag_config(0)), Err(Error::EmptyDomain));
    }

    #[test]
    fn s_unit_pairs_small_grid_against_oracle() {
        let config = ScanConfig::s_unit_pairs(2, 3, 100, rat(1)).unwrap();
        let report = vojta_scan(&config).unwrap();
        let units = s_units(&[2, 3], 100);
        assert_eq!(report.summary.candidates, units.len() * units.len());
        assert_eq!(report.summary.skipped_on_subscheme, 1);
        for r in &report.rows {
            let x1 = r.point.coords()[1].to_integer().to_i64().unwrap();
            let x2 = r.point.coords()[2].to_integer().to_i64().unwrap();
            // largest g with g^2 | x1 - 1 and g^3 | x2 - 1
            let (a, b) = ((x1 - 1).abs(), (x2 - 1).abs());
            let g = (1..=100i64)
                .filter(|g| (a == 0 || a % (g * g) == 0) && (b == 0 || b % (g * g * g) == 0))
                .max()
                .unwrap();
            assert_eq!(r.lhs, BigInt::from(g));
            let rhs = (x1 as f64).sqrt().max((x2 as f64).cbrt());
            assert!((r.rhs - rhs).abs() < 1e-9 * rhs);
            assert_eq!(r.exceptional, (g as f64) > rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let c = ScanConfig::s_unit_pairs(2, 3, 1000, rat(1)).unwrap();
        let a = vojta_scan(&c).unwrap();
        let b = vojta_scan(&c).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_csv().starts_with("point,lhs,rhs,ratio,exceptional\n"));
    }

    #[test]
    fn audit_reports_unit_point() {
        let weights = w(&[2, 3, 5]);
        let report = sing1_audit(&weights, 3).unwrap();
        let one = WPoint::from_ints(&[1, 1, 1], &weights).unwrap();
        let e = report.find(&one).expect("[1:1:1] is reported");
        assert!(!e.singular);
        assert_eq!(e.support_gcd, 1);
        assert!(e.log_hwgcd_finite.is_empty());
        assert_eq!(hwgcd(one.coords(), &weights).unwrap(), BigInt::one());
        // every normalized point has log hwgcd 0
        assert_eq!(report.zero_log_hwgcd, report.points_checked);
        for e in &report.counterexamples {
            assert!(!is_singular(&e.point));
        }
        assert!(sing1_audit(&weights, 0).unwrap().counterexamples.is_empty());
        assert_eq!(sing1_audit(&w(&[2, 2, 1]), 3), Err(Error::IllFormedWeights));
        let ones = sing1_audit(&w(&[1, 1]), 5).unwrap();
        assert_eq!(ones.counterexamples.len(), ones.points_checked);
    }
}
